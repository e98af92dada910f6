"""
Grupos fundamentales de las variedades con las que trabaja el cálculo:

- presentaciones de Seifert sobre una esfera con m agujeros y su cociente por
  la fibra;
- clasificación exacta de grupos triangulares;
- grupos ℤ² ⋊ ℤ de los fibrados en toros, con matrices de monodromía A, B, C.

Todo es aritmética exacta (enteros, Fraction y matrices de sympy).
"""
import logging
import math
import re
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from fractions import Fraction

from sympy import ImmutableMatrix, eye
from sympy.core.intfunc import igcdex

from .exceptions import (
    ClosedSeifertError,
    IdentityElementError,
    InvalidSeifertDataError,
    NonUnimodularError,
    UnsupportedContextError,
    WordSyntaxError,
)
from .words import checked, fiber_extension, free_product

logger = logging.getLogger(__name__)


# --- Presentaciones de Seifert ---

@dataclass(frozen=True)
class SeifertPresentation:
    """
    Datos orbitales: fibras excepcionales (α_j, β_j) con 0 < β_j < α_j,
    número de agujeros m y la torsión total b que sale de normalizar β_j.
    """
    fibers: tuple
    holes: int
    twist: int = 0

    @classmethod
    def from_invariants(cls, pairs, holes=1):
        if int(holes) != holes or holes < 0:
            raise InvalidSeifertDataError(f'Número de agujeros inválido: {holes}')
        fibers = []
        twist = 0
        for pair in pairs:
            try:
                alpha, beta = (int(x) for x in pair)
            except (TypeError, ValueError):
                raise InvalidSeifertDataError(f'Fibra excepcional inválida: {pair!r}') from None
            if alpha < 2:
                raise InvalidSeifertDataError(f'El índice α debe ser >= 2: {pair!r}')
            if math.gcd(alpha, beta) != 1:
                raise InvalidSeifertDataError(f'α y β deben ser coprimos: {pair!r}')
            q, r = divmod(beta, alpha)
            twist += q
            fibers.append((alpha, r))
        return cls(fibers=tuple(fibers), holes=int(holes), twist=twist)

    @property
    def alphas(self):
        return tuple(alpha for alpha, _ in self.fibers)

    @property
    def symbols(self):
        return (
            tuple(f'c{j + 1}' for j in range(len(self.fibers)))
            + tuple(f'd{j + 1}' for j in range(self.holes - 1))
        )


def seifert_group(p):
    """
    π₁ con borde: c_j f = f c_j, d_j f = f d_j, c_j^{α_j} = f^{β_j}.
    La base es ℤ_{α₁} ⋆ … ⋆ ℤ_{α_l} ⋆ F_{m−1}.
    """
    if p.holes == 0:
        raise ClosedSeifertError(
            'Sin agujeros no hay presentación libre: use closed_seifert_route '
            '(espacios lente, grupos triangulares o fibrados en toros)'
        )
    base = quotient_by_fiber(p)
    twists = tuple(beta for _, beta in p.fibers) + (0,) * (p.holes - 1)
    return fiber_extension(base, twists=twists)


def quotient_by_fiber(p):
    if p.holes == 0:
        raise ClosedSeifertError('El cociente por la fibra sólo se construye con borde')
    orders = p.alphas + (None,) * (p.holes - 1)
    return free_product(orders, symbols=p.symbols)


def euler_number(p):
    return -(p.twist + sum(Fraction(beta, alpha) for alpha, beta in p.fibers))


# --- Matrices enteras ---

@dataclass(frozen=True)
class IntMatrix2:
    a: int
    b: int
    c: int
    d: int

    def __str__(self):
        return f'[[{self.a},{self.b}],[{self.c},{self.d}]]'

    @classmethod
    def identity(cls):
        return cls(1, 0, 0, 1)

    @classmethod
    def from_sympy(cls, m):
        return cls(*(checked(int(x)) for x in (m[0, 0], m[0, 1], m[1, 0], m[1, 1])))

    @classmethod
    def from_value(cls, value):
        """Acepta 'A', 'B', 'C' o cuatro enteros en orden de renglones."""
        if isinstance(value, str):
            try:
                return MONODROMY[value]
            except KeyError:
                raise InvalidSeifertDataError(f'Monodromía desconocida: {value!r}') from None
        entries = list(value)
        if len(entries) != 4 or any(int(x) != x for x in entries):
            raise InvalidSeifertDataError(f'Se esperaban cuatro enteros: {value!r}')
        return cls(*(int(x) for x in entries))

    def to_sympy(self):
        return ImmutableMatrix([[self.a, self.b], [self.c, self.d]])

    def as_list(self):
        return [self.a, self.b, self.c, self.d]

    @property
    def det(self):
        return self.a * self.d - self.b * self.c

    @property
    def trace(self):
        return self.a + self.d

    @property
    def is_unimodular(self):
        return self.det in (1, -1)

    def apply(self, v):
        x, y = v
        return (checked(self.a * x + self.b * y), checked(self.c * x + self.d * y))


MONODROMY = {
    'A': IntMatrix2(0, -1, 1, 1),
    'B': IntMatrix2(0, 1, -1, 0),
    'C': IntMatrix2(0, -1, 1, -1),
}

# Órdenes de elementos de orden finito en GL₂(ℤ) dividen a 12
FINITE_ORDER_CAP = 12


@lru_cache(maxsize=4096)
def matrix_power(D, k):
    if k < 0 and not D.is_unimodular:
        raise NonUnimodularError(f'{D} no es invertible sobre los enteros')
    return IntMatrix2.from_sympy(D.to_sympy() ** k)


def matrix_order(D):
    """Menor k >= 1 con D^k = I, o None si el orden es infinito."""
    if D.det == 1 and abs(D.trace) >= 3:
        return None
    identity = IntMatrix2.identity()
    power = identity
    for k in range(1, FINITE_ORDER_CAP + 1):
        power = IntMatrix2.from_sympy(power.to_sympy() * D.to_sympy())
        if power == identity:
            return k
    return None


# --- ℤ² ⋊ ℤ ---

@dataclass(frozen=True)
class SemidirectElement:
    """(a, f^k) con a = m^i l^j codificado como el vector (i, j)."""
    a: tuple
    k: int

    @classmethod
    def identity(cls):
        return cls((0, 0), 0)

    @property
    def is_identity(self):
        return self.a == (0, 0) and self.k == 0


def _add(u, v):
    return (checked(u[0] + v[0]), checked(u[1] + v[1]))


def _neg(u):
    return (-u[0], -u[1])


def semidirect_mul(g, h, D):
    return SemidirectElement(
        _add(g.a, matrix_power(D, g.k).apply(h.a)),
        checked(g.k + h.k),
    )


def semidirect_inverse(g, D):
    return SemidirectElement(_neg(matrix_power(D, -g.k).apply(g.a)), -g.k)


def semidirect_power(g, n, D):
    if n < 0:
        return semidirect_power(semidirect_inverse(g, D), -n, D)
    result = SemidirectElement.identity()
    base = g
    while n:
        if n & 1:
            result = semidirect_mul(result, base, D)
        base = semidirect_mul(base, base, D)
        n >>= 1
    return result


def semidirect_conjugate(g, by, D):
    """by · g · by⁻¹"""
    return semidirect_mul(semidirect_mul(by, g, D), semidirect_inverse(by, D), D)


def semidirect_commutes(g, h, D):
    return semidirect_mul(g, h, D) == semidirect_mul(h, g, D)


def _primitive(vector):
    """Vector entero primitivo proporcional a un vector racional, primera entrada no nula positiva."""
    denominators = [x.q for x in vector]
    scale = math.lcm(*(int(q) for q in denominators))
    ints = [int(x * scale) for x in vector]
    g = math.gcd(*ints)
    ints = [x // g for x in ints]
    if next(x for x in ints if x) < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def fixed_lattice(D, k):
    """Base entera de ker(D^k − I): cero, uno o dos vectores."""
    M = matrix_power(D, k).to_sympy() - eye(2)
    if M.is_zero_matrix:
        return ((1, 0), (0, 1))
    if M.rank() == 2:
        return ()
    return (_primitive(M.nullspace()[0]),)


def lattice_contains(basis, v):
    """Pertenencia de v al subgrupo generado por `basis`."""
    v = tuple(v)
    if not basis:
        return v == (0, 0)
    if len(basis) == 1:
        (x, y), = basis
        if x * v[1] - y * v[0]:
            return False
        pivot, target = (x, v[0]) if x else (y, v[1])
        return target % pivot == 0
    (x1, y1), (x2, y2) = basis
    det = x1 * y2 - x2 * y1
    s = Fraction(v[0] * y2 - x2 * v[1], det)
    t = Fraction(x1 * v[1] - y1 * v[0], det)
    return s.denominator == 1 and t.denominator == 1


def solve_integer(M, rhs):
    """Solución entera particular de M x = rhs (M de 2x2), o None."""
    rhs = tuple(int(x) for x in rhs)
    if M.is_zero_matrix:
        return (0, 0) if rhs == (0, 0) else None
    if M.rank() == 2:
        x = M.inv() * ImmutableMatrix(rhs)
        if all(entry.is_integer for entry in x):
            return (int(x[0]), int(x[1]))
        return None
    # Rango 1: M = w ⊗ u con u renglón primitivo
    row = next(M.row(i) for i in range(2) if any(M.row(i)))
    u = _primitive(list(row))
    w = [Fraction(int(M[i, 0] if u[0] else M[i, 1]), u[0] if u[0] else u[1]) for i in range(2)]
    s = None
    for wi, ri in zip(w, rhs):
        if wi:
            candidate = Fraction(ri) / wi
            if s is not None and candidate != s:
                return None
            s = candidate
        elif ri:
            return None
    if s is None or s.denominator != 1:
        return None
    x0, y0, _ = igcdex(u[0], u[1])
    return (int(s) * int(x0), int(s) * int(y0))


@dataclass(frozen=True)
class ResidueConstraint:
    """Elementos (a′, f^q) con q ≡ residue que conmutan: a′ ∈ particular + retícula."""
    residue: int
    fixed_basis: tuple
    particular: tuple | None

    @property
    def is_empty(self):
        return self.particular is None

    def admits(self, a):
        if self.particular is None:
            return False
        return lattice_contains(self.fixed_basis, (a[0] - self.particular[0], a[1] - self.particular[1]))

    def as_dict(self):
        return {
            'residue': self.residue,
            'fixed_basis': [list(v) for v in self.fixed_basis],
            'particular': list(self.particular) if self.particular is not None else None,
        }


@dataclass(frozen=True)
class SemidirectCentralizer:
    element: SemidirectElement
    monodromy: IntMatrix2
    order: int
    constraints: tuple

    def contains(self, h):
        return self.constraints[h.k % self.order].admits(h.a)

    def certificate(self):
        return {
            'shape': 'residue-constraints',
            'query': format_semidirect(self.element),
            'monodromy': self.monodromy.as_list(),
            'order': self.order,
            'constraints': [c.as_dict() for c in self.constraints],
        }


def centralizer_semidirect(K, D):
    """
    Restricciones sobre los (a′, f^q) que conmutan con K = (a, f^p):
    (D^p − I) a′ = (D^q − I) a, una por cada residuo de q módulo el orden de D.
    """
    if K.is_identity:
        raise IdentityElementError('El centralizador de la identidad es todo el grupo')
    order = matrix_order(D)
    if order is None:
        raise UnsupportedContextError(f'La monodromía {D} tiene orden infinito')
    M = matrix_power(D, K.k).to_sympy() - eye(2)
    basis = fixed_lattice(D, K.k)
    constraints = []
    for r in range(order):
        rhs = (matrix_power(D, r).to_sympy() - eye(2)) * ImmutableMatrix(K.a)
        constraints.append(ResidueConstraint(r, basis, solve_integer(M, rhs)))
    logger.debug(f'centralizador semidirecto de {K}: {len(constraints)} residuos')
    return SemidirectCentralizer(K, D, order, tuple(constraints))


def torus_cover_liftable(K, D):
    """K = (a, f^p) se levanta al cubriente finito por el toro sii orden(D) | p."""
    order = matrix_order(D)
    if order is None:
        raise UnsupportedContextError(f'La monodromía {D} tiene orden infinito')
    return K.k % order == 0


_SEMI_TOKEN = re.compile(r'(?P<sym>[mlf])(?:\^\(?(?P<exp>[+-]?\d+)\)?)?')


def parse_semidirect(text, D):
    result = SemidirectElement.identity()
    units = {'m': SemidirectElement((1, 0), 0), 'l': SemidirectElement((0, 1), 0),
             'f': SemidirectElement((0, 0), 1)}
    for token in text.split():
        if token in ('e', '1'):
            continue
        match = _SEMI_TOKEN.fullmatch(token)
        if not match:
            raise WordSyntaxError(f'Token inválido en ℤ²⋊ℤ: {token!r}')
        exp = int(match.group('exp')) if match.group('exp') is not None else 1
        result = semidirect_mul(result, semidirect_power(units[match.group('sym')], exp, D), D)
    return result


def format_semidirect(g):
    parts = []
    for sym, e in (('m', g.a[0]), ('l', g.a[1]), ('f', g.k)):
        if e:
            parts.append(sym if e == 1 else f'{sym}^{e}')
    return ' '.join(parts) or 'e'


@dataclass(frozen=True)
class SemidirectGroup:
    """ℤ² ⋊_D ℤ con el mismo protocolo que PresentedGroup."""
    monodromy: IntMatrix2
    kind: str = 'torus-bundle'

    def __str__(self):
        return f'Z2 x| Z ({self.monodromy})'

    @property
    def is_fibered(self):
        return True

    @property
    def order(self):
        return matrix_order(self.monodromy)

    def identity(self):
        return SemidirectElement.identity()

    def generator(self, symbol):
        return parse_semidirect(symbol, self.monodromy)

    def fiber(self):
        return SemidirectElement((0, 0), 1)

    def multiply(self, u, v):
        return semidirect_mul(u, v, self.monodromy)

    def invert(self, u):
        return semidirect_inverse(u, self.monodromy)

    def power(self, u, n):
        return semidirect_power(u, n, self.monodromy)

    def parse(self, text):
        return parse_semidirect(text, self.monodromy)

    def format(self, u):
        return format_semidirect(u)


def random_semidirect(rng, radius=5):
    return SemidirectElement(
        (rng.randint(-radius, radius), rng.randint(-radius, radius)),
        rng.randint(-radius, radius),
    )


# --- Grupos triangulares y variedades cerradas ---

class Geometry(str, Enum):
    SPHERICAL = 'spherical'
    EUCLIDEAN = 'euclidean'
    HYPERBOLIC = 'hyperbolic'


@dataclass(frozen=True)
class TriangleType:
    r: int
    s: int
    t: int
    geometry: Geometry


def triangle_classify(r, s, t):
    for value in (r, s, t):
        if int(value) != value or value < 2:
            raise InvalidSeifertDataError(f'Los índices del triángulo deben ser >= 2: {(r, s, t)}')
    excess = Fraction(1, r) + Fraction(1, s) + Fraction(1, t) - 1
    if excess > 0:
        geometry = Geometry.SPHERICAL
    elif excess == 0:
        geometry = Geometry.EUCLIDEAN
    else:
        geometry = Geometry.HYPERBOLIC
    return TriangleType(int(r), int(s), int(t), geometry)


# Variedades de Seifert cerradas con número de Euler cero y base euclidiana
EUCLIDEAN_BUNDLES = {
    SeifertPresentation.from_invariants([(2, 1), (3, -1), (6, -1)], holes=0): 'A',
    SeifertPresentation.from_invariants([(2, 1), (4, -1), (4, -1)], holes=0): 'B',
    SeifertPresentation.from_invariants([(3, 1), (3, 1), (3, -2)], holes=0): 'C',
}


@dataclass(frozen=True)
class ClosedRoute:
    route: str
    euler: Fraction
    triangle: TriangleType | None = None
    monodromy: str | None = None

    def as_dict(self):
        data = {'route': self.route, 'euler_number': str(self.euler)}
        if self.triangle is not None:
            data['triangle'] = [self.triangle.r, self.triangle.s, self.triangle.t]
            data['geometry'] = self.triangle.geometry.value
        if self.monodromy is not None:
            data['monodromy'] = self.monodromy
        return data


def closed_seifert_route(p):
    if p.holes:
        raise InvalidSeifertDataError('La variedad tiene borde: use seifert_group')
    euler = euler_number(p)
    if len(p.fibers) <= 2:
        return ClosedRoute('finite-cyclic', euler)
    if len(p.fibers) == 3:
        triangle = triangle_classify(*sorted(p.alphas))
        key = SeifertPresentation(tuple(sorted(p.fibers)), 0, p.twist)
        return ClosedRoute('triangle', euler, triangle, EUCLIDEAN_BUNDLES.get(key))
    return ClosedRoute('vertical-torus', euler)


# --- Sumas conexas ---

class SummandKind(str, Enum):
    S3 = 's3'
    LENS = 'lens'
    SEIFERT = 'seifert'
    TORUS_BUNDLE = 'torus-bundle'
    S1XS2 = 's1xs2'
    OPAQUE_IRREDUCIBLE = 'opaque-irreducible'
    OPAQUE_PRIME = 'opaque-prime'


@dataclass(frozen=True)
class Summand:
    kind: SummandKind
    lens: tuple | None = None
    seifert: SeifertPresentation | None = None
    monodromy: IntMatrix2 | None = None

    def __str__(self):
        if self.kind is SummandKind.LENS:
            return f'L({self.lens[0]},{self.lens[1]})'
        if self.kind is SummandKind.TORUS_BUNDLE:
            return f'T({self.monodromy})'
        return self.kind.value


@dataclass(frozen=True)
class ConnectedSumDescriptor:
    summands: tuple
    orientable: bool = True
    double_cover: 'ConnectedSumDescriptor | None' = None

    def __post_init__(self):
        if not self.summands:
            raise InvalidSeifertDataError('Una suma conexa necesita al menos un sumando')

    def __str__(self):
        return ' # '.join(str(s) for s in self.summands)

    @property
    def s1xs2_count(self):
        return sum(1 for s in self.summands if s.kind is SummandKind.S1XS2)

    @property
    def may_hide_s1xs2(self):
        """Un sumando primo opaco puede ser S¹×S² o el fibrado no orientable."""
        return any(s.kind is SummandKind.OPAQUE_PRIME for s in self.summands)

    @property
    def without_s1xs2(self):
        return self.s1xs2_count == 0 and not self.may_hide_s1xs2
