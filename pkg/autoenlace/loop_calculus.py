"""
Homomorfismos δ, Δ_aslk y Δ̃_aslk y la traza t sobre palabras en los lazos
generadores γ₁, γ₂, γ₃, γ_s, γ_{α²} del espacio de curvas.

Los valores de los homomorfismos a ℤ salen de tablas por generador; la traza
t se evalúa en el grupo del contexto (PresentedGroup o SemidirectGroup, que
comparten protocolo: identity, multiply, invert, power, parse, format).
"""
import logging
import math
import re
from dataclasses import dataclass, field
from enum import Enum

from .exceptions import (
    ContextMismatchError,
    DecompositionError,
    InconsistentDescriptorError,
    NotInCentralizerError,
    UnknownGeneratorError,
    UnsupportedContextError,
    WordSyntaxError,
)
from .manifold_groups import IntMatrix2, SemidirectGroup
from .words import (
    CentralizerShape,
    GroupKind,
    PresentedGroup,
    centralizer_free_product,
    cyclic_reduce,
    fiber_normal_form,
    project_to_base,
)

logger = logging.getLogger(__name__)


class LoopKind(str, Enum):
    GAMMA1 = 'g1'
    GAMMA2 = 'g2'
    GAMMA3 = 'g3'
    GAMMA_S = 'gs'
    GAMMA_ALPHA_SQ = 'gA2'


@dataclass(frozen=True, order=True)
class LoopGenerator:
    kind: LoopKind
    index: int | None = None

    def __str__(self):
        if self.kind in (LoopKind.GAMMA3, LoopKind.GAMMA_S):
            return f'{self.kind.value}({self.index})'
        return self.kind.value


GAMMA1 = LoopGenerator(LoopKind.GAMMA1)
GAMMA2 = LoopGenerator(LoopKind.GAMMA2)
GAMMA_ALPHA_SQ = LoopGenerator(LoopKind.GAMMA_ALPHA_SQ)


def gamma3(fibration=0):
    return LoopGenerator(LoopKind.GAMMA3, fibration)


def gamma_s(sphere):
    return LoopGenerator(LoopKind.GAMMA_S, sphere)


@dataclass(frozen=True)
class Unavailable:
    """Valor no establecido para el generador o el contexto; no es un error."""
    reason: str

    def __str__(self):
        return f'unavailable ({self.reason})'


@dataclass(frozen=True)
class EvaluationContext:
    group: object
    K: object
    in_irreducible_summand: bool = False
    fiber_orientation_preserving: bool = False
    contractible: bool = False
    spheres: tuple = ()
    alpha_sq: object = None

    def __post_init__(self):
        if self.K.is_identity and not self.contractible:
            raise InconsistentDescriptorError(
                'K es trivial en π₁: márquelo como contractible'
            )
        if self.contractible and not self.K.is_identity:
            raise InconsistentDescriptorError('K está marcado contractible pero no es trivial')

    @property
    def is_torus_cover(self):
        return (
            isinstance(self.group, SemidirectGroup)
            and self.group.monodromy == IntMatrix2.identity()
        )

    def fibrations(self):
        if self.is_torus_cover:
            return (0, 1, 2)
        if self.group.is_fibered:
            return (0,)
        return ()

    def check(self, gen):
        if gen.kind is LoopKind.GAMMA3 and gen.index not in self.fibrations():
            raise UnsupportedContextError(f'{gen} requiere una fibración del contexto')
        if gen.kind is LoopKind.GAMMA_S and gen.index not in self.spheres:
            raise UnsupportedContextError(f'{gen} requiere la esfera {gen.index} en la suma conexa')
        if gen.kind is LoopKind.GAMMA_ALPHA_SQ and self.alpha_sq is None:
            raise UnsupportedContextError('gA2 requiere el valor t(α²) del manifiesto')


@dataclass(frozen=True)
class LoopWord:
    letters: tuple
    context: EvaluationContext

    def __str__(self):
        return format_loop_word(self)

    def __mul__(self, other):
        if self.context != other.context:
            raise ContextMismatchError('Palabras de lazos en contextos distintos')
        return make_loop_word(self.letters + other.letters, self.context)

    def __invert__(self):
        return make_loop_word([(g, -e) for g, e in reversed(self.letters)], self.context)


def make_loop_word(raw, context):
    stack = []
    for gen, e in raw:
        context.check(gen)
        if not e:
            continue
        if stack and stack[-1][0] == gen:
            total = stack.pop()[1] + e
            if total:
                stack.append((gen, total))
        else:
            stack.append((gen, e))
    return LoopWord(tuple(stack), context)


def cyclic_normal_form(w):
    """Representante de la clase de conjugación: reducción cíclica y rotación mínima."""
    letters = list(w.letters)
    while len(letters) >= 2 and letters[0][0] == letters[-1][0]:
        gen = letters[0][0]
        total = letters.pop()[1] + letters.pop(0)[1]
        if total:
            letters.insert(0, (gen, total))
    if not letters:
        return w
    best = min(
        (letters[i:] + letters[:i] for i in range(len(letters))),
        key=lambda seq: [(str(g), e) for g, e in seq],
    )
    return LoopWord(tuple(best), w.context)


# --- Tablas por generador ---

DELTA_TABLE = {
    LoopKind.GAMMA1: 0,
    LoopKind.GAMMA2: 2,
    LoopKind.GAMMA3: 0,
    LoopKind.GAMMA_S: 0,
    LoopKind.GAMMA_ALPHA_SQ: 0,
}

ASLK_TABLE = {
    LoopKind.GAMMA1: 0,
    LoopKind.GAMMA2: 2,
    LoopKind.GAMMA_S: 0,
}


def _aslk_value(gen, context):
    try:
        return ASLK_TABLE[gen.kind]
    except KeyError:
        return Unavailable(f'Δ_aslk({gen}) no está establecido')


def _aslk_tilde_value(gen, context):
    if gen.kind is LoopKind.GAMMA_S and not context.in_irreducible_summand:
        return Unavailable(f'Δ̃_aslk({gen}) requiere K en un sumando irreducible')
    if gen.kind is LoopKind.GAMMA3 and not (
        context.fiber_orientation_preserving or context.is_torus_cover
    ):
        return Unavailable(f'Δ̃_aslk({gen}) requiere que p(K) preserve la orientación de la fibra')
    return DELTA_TABLE[gen.kind]


def _evaluate(w, value_of):
    total = 0
    for gen, e in w.letters:
        value = value_of(gen, w.context)
        if isinstance(value, Unavailable):
            return value
        total += value * e
    return total


def delta(w):
    return _evaluate(w, lambda gen, context: DELTA_TABLE[gen.kind])


def delta_aslk(w):
    return _evaluate(w, _aslk_value)


def delta_aslk_tilde(w):
    return _evaluate(w, _aslk_tilde_value)


@dataclass(frozen=True)
class HomomorphismValue:
    delta: int
    aslk: object
    aslk_tilde: object

    def as_dict(self):
        return {
            'delta': self.delta,
            'aslk': _json_value(self.aslk),
            'aslk_tilde': _json_value(self.aslk_tilde),
        }


def _json_value(value):
    if isinstance(value, Unavailable):
        return {'unavailable': value.reason}
    return value


def evaluate(w):
    return HomomorphismValue(delta(w), delta_aslk(w), delta_aslk_tilde(w))


def _trace_of(gen, context):
    group = context.group
    if gen.kind is LoopKind.GAMMA1:
        return context.K
    if gen.kind is LoopKind.GAMMA3:
        if context.is_torus_cover:
            return group.generator('mlf'[gen.index])
        return group.fiber()
    if gen.kind is LoopKind.GAMMA_ALPHA_SQ:
        return context.alpha_sq
    return group.identity()


def t_value(w):
    group = w.context.group
    result = group.identity()
    for gen, e in w.letters:
        result = group.multiply(result, group.power(_trace_of(gen, w.context), e))
    return result


# --- Registros de caminos ---

@dataclass(frozen=True)
class PathCrossing:
    sign: int
    loop_word: object

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise InconsistentDescriptorError(f'σ_j debe ser ±1: {self.sign}')


@dataclass(frozen=True)
class PathRecord:
    crossings: tuple = field(default_factory=tuple)

    @property
    def signs(self):
        return tuple(c.sign for c in self.crossings)


def path_delta_aslk(rec):
    return sum(2 * c.sign for c in rec.crossings)


def path_delta_aslk_tilde(rec, group):
    """Suma 2σ_j sólo sobre los cruces cuyo lazo es contractible."""
    if not isinstance(group, (PresentedGroup, SemidirectGroup)):
        raise UnsupportedContextError(f'Grupo sin problema de la palabra soportado: {group!r}')
    total = 0
    for crossing in rec.crossings:
        word = crossing.loop_word
        if isinstance(group, PresentedGroup) and word.group != group:
            raise ContextMismatchError(f'El lazo {word} no pertenece a {group}')
        if word.is_identity:
            total += 2 * crossing.sign
    return total


# --- Descomposición t(α^i) = K^j f^k ---

@dataclass(frozen=True)
class Decomposition:
    i: int
    j: int
    k: int

    def as_dict(self):
        return {'i': self.i, 'j': self.j, 'k': self.k}


def _torsion_order(g):
    """Orden de g en un producto libre de cíclicos, o None si es infinito."""
    if g.is_identity:
        return 1
    core, _ = cyclic_reduce(g)
    if len(core.letters) != 1:
        return None
    gid, e = core.letters[0]
    n = g.group.order_of(gid)
    if n is None:
        return None
    return n // math.gcd(n, e)


def _decompose_free(t_alpha, K):
    group = K.group
    if K.is_identity:
        order = _torsion_order(t_alpha)
        if order is None:
            raise DecompositionError(f'K es trivial y t(α) = {t_alpha} tiene orden infinito')
        return Decomposition(order, 0, 0)
    description = centralizer_free_product(K)
    if description.shape is CentralizerShape.INFINITE_CYCLIC:
        d = description.exponent_of(K)
        e = description.exponent_of(t_alpha)
        if e is None:
            raise NotInCentralizerError(f'{t_alpha} no es potencia de la raíz de K')
        if e == 0:
            return Decomposition(1, 0, 0)
        g = math.gcd(d, e)
        if d < 0:
            g = -g
        return Decomposition(d // g, e // g, 0)
    # K de torsión: el centralizador es un factor cíclico finito (conjugado)
    bound = group.orders[description.factor or 0]
    for i in range(1, bound + 1):
        target = group.power(t_alpha, i)
        for j in range(bound):
            if group.power(K, j) == target:
                return Decomposition(i, j, 0)
    raise DecompositionError(f'No se encontró t(α^i) = K^j para {t_alpha}')


def _decompose_fibered(t_alpha, K):
    base = _decompose_free(project_to_base(t_alpha), project_to_base(K))
    group = K.group
    remainder = group.multiply(group.power(t_alpha, base.i), group.power(K, -base.j))
    rest, k = fiber_normal_form(remainder)
    if not rest.is_identity:
        raise DecompositionError(f't(α^{base.i}) K^{-base.j} = {remainder} no es potencia de la fibra')
    return Decomposition(base.i, base.j, k)


def _decompose_semidirect(t_alpha, K, group):
    if K.k == 0:
        raise DecompositionError(
            'K vive en la retícula: use las fibraciones del cubriente por el toro'
        )
    order = group.order
    if order is None:
        raise UnsupportedContextError(f'Monodromía de orden infinito: {group.monodromy}')
    for i in range(1, order * abs(K.k) + 1):
        target = group.power(t_alpha, i)
        if target.k % K.k:
            continue
        j = target.k // K.k
        if group.power(K, j) == target:
            return Decomposition(i, j, 0)
    raise DecompositionError(f'No se encontró t(α^i) = K^j para {group.format(t_alpha)}')


def decompose_power(t_alpha, ctx):
    """(i, j, k) con t(α^i) = K^j f^k, verificado por aritmética de palabras."""
    group = ctx.group
    K = ctx.K
    if group.multiply(t_alpha, K) != group.multiply(K, t_alpha):
        raise NotInCentralizerError(
            f't(α) = {group.format(t_alpha)} no conmuta con K = {group.format(K)}'
        )
    if t_alpha == K:
        return Decomposition(1, 1, 0)
    if t_alpha.is_identity:
        return Decomposition(1, 0, 0)
    if isinstance(group, SemidirectGroup):
        result = _decompose_semidirect(t_alpha, K, group)
    elif group.kind is GroupKind.FIBER_EXTENSION:
        result = _decompose_fibered(t_alpha, K)
    else:
        result = _decompose_free(t_alpha, K)
    logger.debug(f'descomposición de {group.format(t_alpha)}: {result}')
    return result


def reassemble(decomposition, ctx):
    """K^j f^k en el grupo del contexto."""
    group = ctx.group
    result = group.power(ctx.K, decomposition.j)
    if decomposition.k:
        result = group.multiply(result, group.power(group.fiber(), decomposition.k))
    return result


def check_decomposition(t_alpha, decomposition, ctx):
    group = ctx.group
    return group.power(t_alpha, decomposition.i) == reassemble(decomposition, ctx)


# --- Verificación de la igualdad δ = Δ ---

class IdentityStatus(str, Enum):
    HOLDS = 'holds'
    FAILS = 'fails'
    INCONCLUSIVE = 'inconclusive'


@dataclass(frozen=True)
class IdentityReport:
    status: IdentityStatus
    word: str
    value: HomomorphismValue
    compared: tuple

    def as_dict(self):
        return {
            'status': self.status.value,
            'word': self.word,
            'compared': list(self.compared),
            **self.value.as_dict(),
        }


def verify_identity(w):
    value = evaluate(w)
    compared = []
    status = IdentityStatus.HOLDS
    for name, other in (('aslk', value.aslk), ('aslk_tilde', value.aslk_tilde)):
        if isinstance(other, Unavailable):
            continue
        compared.append(name)
        if other != value.delta:
            status = IdentityStatus.FAILS
    if not compared:
        status = IdentityStatus.INCONCLUSIVE
    return IdentityReport(status, format_loop_word(w), value, tuple(compared))


# --- Sintaxis ---

_LOOP_TOKEN = re.compile(
    r'(?P<name>g1|g2|g3|gs|gA2)(?:\((?P<index>\d+)\))?(?:\^\(?(?P<exp>[+-]?\d+)\)?)?'
)


def parse_loop_word(text, context):
    raw = []
    for token in text.split():
        if token == 'e':
            continue
        match = _LOOP_TOKEN.fullmatch(token)
        if not match:
            raise WordSyntaxError(f'Lazo generador inválido: {token!r}')
        kind = LoopKind(match.group('name'))
        index = match.group('index')
        if kind is LoopKind.GAMMA_S and index is None:
            raise WordSyntaxError(f'gs necesita el índice de la esfera: {token!r}')
        if kind in (LoopKind.GAMMA1, LoopKind.GAMMA2, LoopKind.GAMMA_ALPHA_SQ) and index is not None:
            raise WordSyntaxError(f'{kind.value} no lleva índice: {token!r}')
        if kind is LoopKind.GAMMA3:
            index = index or 0
        gen = LoopGenerator(kind, int(index) if index is not None else None)
        exp = int(match.group('exp')) if match.group('exp') is not None else 1
        raw.append((gen, exp))
    return make_loop_word(raw, context)


def format_loop_word(w):
    if not w.letters:
        return 'e'
    return ' '.join(str(g) if e == 1 else f'{g}^{e}' for g, e in w.letters)


def context_alphabet(context, kinds=None):
    """Generadores válidos en el contexto (opcionalmente restringidos por tipo)."""
    alphabet = [GAMMA1, GAMMA2]
    alphabet += [gamma3(i) for i in context.fibrations()]
    alphabet += [gamma_s(s) for s in context.spheres]
    if context.alpha_sq is not None:
        alphabet.append(GAMMA_ALPHA_SQ)
    if kinds is not None:
        alphabet = [g for g in alphabet if g.kind in kinds]
    if not alphabet:
        raise UnknownGeneratorError('El contexto no admite ningún lazo generador pedido')
    return alphabet


def random_loop_word(rng, context, length, alphabet=None, max_exponent=3):
    alphabet = alphabet or context_alphabet(context)
    raw = [
        (rng.choice(alphabet), rng.randint(1, max_exponent) * rng.choice((1, -1)))
        for _ in range(length)
    ]
    return make_loop_word(raw, context)
