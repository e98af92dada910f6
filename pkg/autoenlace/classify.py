"""
Clasificación de marcos: cuántas clases de isotopía |K| tienen los nudos
enmarcados K_f^i de un mismo nudo K, a partir de descriptores declarativos de
la variedad y del nudo.
"""
import logging
from dataclasses import dataclass
from enum import Enum

from .exceptions import InconsistentDescriptorError
from .loop_calculus import GAMMA2, EvaluationContext, Unavailable, delta, make_loop_word
from .words import free_product

logger = logging.getLogger(__name__)


class FramingCount(str, Enum):
    INFINITE = 'infinite'
    EXACTLY_TWO = 'exactly-2'
    UNKNOWN = 'unknown'


class Rule(str, Enum):
    NO_NONSEPARATING_SPHERE = 'no-nonseparating-sphere'
    SPHERE_CROSSING_ONCE = 'sphere-crossing-once'
    ORIENTATION_REVERSING_LOOP = 'orientation-reversing-loop'
    ORIENTABLE_DOUBLE_COVER = 'orientable-double-cover'
    OPEN_CASE = 'open-case'


ANCHORS = {
    Rule.NO_NONSEPARATING_SPHERE: (
        'variedad orientable que no es M′ # (S¹×S²): |K| = ∞'
    ),
    Rule.SPHERE_CROSSING_ONCE: (
        'K cruza una sola vez una esfera no separante t × S²: |K| = 2'
    ),
    Rule.ORIENTATION_REVERSING_LOOP: (
        'variedad no orientable y K realiza un lazo que invierte la orientación: |K| = 2'
    ),
    Rule.ORIENTABLE_DOUBLE_COVER: (
        'el cubriente doble orientable no tiene sumandos S¹×S² y K preserva la orientación: |K| = ∞'
    ),
    Rule.OPEN_CASE: 'caso abierto: no se extrapola',
}


@dataclass(frozen=True)
class KnotDescriptor:
    pi1: object = None
    gauss: object = None
    crosses_nonseparating_sphere_once: bool = False
    orientation_reversing: bool = False


@dataclass(frozen=True)
class FramingVerdict:
    count: FramingCount
    rule: Rule

    @property
    def anchor(self):
        return ANCHORS[self.rule]

    def as_dict(self):
        return {'count': self.count.value, 'rule': self.rule.value, 'anchor': self.anchor}


def validate_descriptors(m, k):
    if k.crosses_nonseparating_sphere_once and m.without_s1xs2:
        raise InconsistentDescriptorError(
            'El nudo cruza una esfera no separante pero no hay sumandos S¹×S²'
        )
    if k.orientation_reversing and m.orientable:
        raise InconsistentDescriptorError(
            'Un lazo que invierte la orientación requiere una variedad no orientable'
        )
    if m.double_cover is not None:
        if m.orientable:
            raise InconsistentDescriptorError('Sólo una variedad no orientable lleva cubriente doble')
        if not m.double_cover.orientable:
            raise InconsistentDescriptorError('El cubriente doble debe ser orientable')


def framing_classes(m, k):
    validate_descriptors(m, k)
    if m.orientable and m.without_s1xs2:
        verdict = FramingVerdict(FramingCount.INFINITE, Rule.NO_NONSEPARATING_SPHERE)
    elif k.crosses_nonseparating_sphere_once:
        verdict = FramingVerdict(FramingCount.EXACTLY_TWO, Rule.SPHERE_CROSSING_ONCE)
    elif not m.orientable and k.orientation_reversing:
        verdict = FramingVerdict(FramingCount.EXACTLY_TWO, Rule.ORIENTATION_REVERSING_LOOP)
    elif not m.orientable and m.double_cover is not None and m.double_cover.without_s1xs2:
        verdict = FramingVerdict(FramingCount.INFINITE, Rule.ORIENTABLE_DOUBLE_COVER)
    else:
        verdict = FramingVerdict(FramingCount.UNKNOWN, Rule.OPEN_CASE)
    logger.debug(f'{m}: {verdict.count.value} ({verdict.rule.value})')
    return verdict


def spin_parity_distinct(i, j):
    """Marcos con diferencia impar nunca son isotópicos (ni homotópicos como curvas enmarcadas)."""
    return (i - j) % 2 == 1


@dataclass(frozen=True)
class FramingClass:
    residue: int
    members: tuple

    def as_dict(self):
        return {'residue': self.residue, 'members': list(self.members)}


def even_collapse_classes(twists, step=2):
    """Agrupa los giros cuando K_f^i y K_f^{i+step} son isotópicos."""
    if step <= 0 or step % 2:
        raise InconsistentDescriptorError(f'El paso de colapso debe ser par y positivo: {step}')
    groups = {}
    for twist in sorted(set(twists)):
        groups.setdefault(twist % step, []).append(twist)
    return tuple(FramingClass(residue, tuple(members)) for residue, members in sorted(groups.items()))


def framing_class_of(twist, classes):
    """Índice de la clase que contiene al giro, o None."""
    for index, framing_class in enumerate(classes):
        if twist in framing_class.members:
            return index
    return None


def _trivial_context():
    group = free_product(())
    return EvaluationContext(group=group, K=group.identity(), contractible=True)


def aslk_gap(i, j, context=None):
    """aslk(K_f^j) − aslk(K_f^i) = δ(γ₂^k) con j − i = 2k."""
    if (j - i) % 2:
        raise InconsistentDescriptorError(f'La diferencia {j - i} es impar: use la paridad de spin')
    context = context or _trivial_context()
    return delta(make_loop_word([(GAMMA2, (j - i) // 2)], context))


def aslk_separates(i, j, m, k, context=None):
    """
    True si la brecha de autoenlace afín certifica que K_f^i y K_f^j no son
    isotópicos. Una diferencia impar separa siempre por la paridad de spin.
    Sin el invariante en el contexto se devuelve Unavailable: no es una
    prueba de isotopía.
    """
    if (j - i) % 2:
        validate_descriptors(m, k)
        return spin_parity_distinct(i, j)
    verdict = framing_classes(m, k)
    if verdict.count is not FramingCount.INFINITE:
        return Unavailable(f'sin certificado: regla {verdict.rule.value}')
    return aslk_gap(i, j, context) != 0
