"""
Oráculos de fuerza bruta a escala de escritorio. Sirven para contrastar los
algoritmos exactos: enumeración de palabras que conmutan, búsqueda en cajas de
la retícula y una representación fiel de ℤ₂ ⋆ ℤ₃ en PSL₂(ℤ).
"""
import itertools
import logging
from dataclasses import dataclass, field

from sympy import ImmutableMatrix, eye

from .conf import oracle_exponent, oracle_radius
from .exceptions import UnsupportedContextError
from .manifold_groups import (
    SemidirectElement,
    fixed_lattice,
    lattice_contains,
    matrix_power,
    semidirect_commutes,
)
from .words import GroupWord, centralizer_free_product, commutes, format_word

logger = logging.getLogger(__name__)


def _syllables(group, previous, exponent):
    for gid, order in zip(group.generators, group.orders):
        if gid == previous:
            continue
        if order is None:
            exponents = [e for e in range(-exponent, exponent + 1) if e]
        else:
            exponents = range(1, order)
        for e in exponents:
            yield gid, e


def enumerate_reduced_words(group, radius, exponent=None):
    """Todas las palabras reducidas de longitud silábica <= radius."""
    exponent = oracle_exponent() if exponent is None else exponent
    frontier = [()]
    yield GroupWord((), group)
    for _ in range(radius):
        next_frontier = []
        for letters in frontier:
            previous = letters[-1][0] if letters else None
            for syllable in _syllables(group, previous, exponent):
                word = letters + (syllable,)
                next_frontier.append(word)
                yield GroupWord(word, group)
        frontier = next_frontier


@dataclass
class OracleComparison:
    agrees: bool
    checked: int
    outside: list = field(default_factory=list)
    unsound: list = field(default_factory=list)

    def as_dict(self):
        return {
            'agrees': self.agrees,
            'checked': self.checked,
            'outside': [format_word(w) for w in self.outside],
            'unsound': [format_word(w) for w in self.unsound],
        }


def centralizer_oracle(g, radius=None, exponent=None, description=None):
    """
    Compara el centralizador reportado con la enumeración exhaustiva:
    ninguna palabra que conmute queda fuera (completitud) y todo elemento
    muestreado del centralizador conmuta (solidez).
    """
    radius = oracle_radius() if radius is None else radius
    description = description or centralizer_free_product(g)
    outside = []
    checked = 0
    for h in enumerate_reduced_words(g.group, radius, exponent):
        checked += 1
        if commutes(g, h) and not description.contains(h):
            outside.append(h)
    unsound = [h for h in description.sample() if not commutes(g, h)]
    logger.debug(f'oráculo de centralizador para {g}: {checked} palabras')
    return OracleComparison(not outside and not unsound, checked, outside, unsound)


def box_vectors(radius):
    return itertools.product(range(-radius, radius + 1), repeat=2)


def fixed_lattice_oracle(D, k, radius=10):
    """True si la base de fixed_lattice genera exactamente los vectores fijos de la caja."""
    basis = fixed_lattice(D, k)
    power = matrix_power(D, k)
    for v in box_vectors(radius):
        if (power.apply(v) == v) != lattice_contains(basis, v):
            return False
    return True


def semidirect_centralizer_oracle(description, radius=3, fiber_radius=6):
    """Lista de contraejemplos (a′, q) donde la descripción y la conmutación difieren."""
    K = description.element
    D = description.monodromy
    mismatches = []
    for a in box_vectors(radius):
        for q in range(-fiber_radius, fiber_radius + 1):
            h = SemidirectElement(a, q)
            if semidirect_commutes(K, h, D) != description.contains(h):
                mismatches.append(h)
    return mismatches


# ℤ₂ ⋆ ℤ₃ ≅ PSL₂(ℤ): c1 ↦ S, c2 ↦ ST
_PSL_IMAGES = (
    ImmutableMatrix([[0, -1], [1, 0]]),
    ImmutableMatrix([[0, -1], [1, 1]]),
)


def psl2_image(letters, group):
    if group.orders != (2, 3):
        raise UnsupportedContextError(f'La representación en PSL₂(ℤ) es para Z2 * Z3, no {group}')
    result = eye(2)
    for gid, e in letters:
        result = result * _PSL_IMAGES[gid.factor] ** e
    return result


def psl2_is_identity(letters, group):
    """Problema de la palabra resuelto por matrices, independiente de las formas normales."""
    image = psl2_image(letters, group)
    return image == eye(2) or image == -eye(2)
