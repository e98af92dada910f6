"""
Aritmética exacta de palabras en grupos presentados.

Tres tipos de grupo tienen problema de la palabra resuelto por formas normales:

- grupos libres (todos los generadores en el factor 0);
- productos libres de grupos cíclicos (un generador por factor, orden finito
  n >= 2 o infinito);
- extensiones por una fibra f sobre cualquiera de los anteriores, con la
  relación g f = f^{w(g)} g y, opcionalmente, g^n = f^b para generadores de
  orden finito (así quedan las relaciones c_j^{α_j} = f^{β_j} de un espacio de
  Seifert).

Las palabras se guardan siempre en forma normal: reducidas, con exponentes de
generadores de orden n en [1, n-1] y, en extensiones, con la fibra al final.
Así la igualdad de elementos es igualdad sintáctica.
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from enum import Enum
from functools import cached_property

from .conf import exponent_bound
from .exceptions import (
    ContextMismatchError,
    ExponentOverflowError,
    IdentityElementError,
    TorsionElementError,
    UnknownGeneratorError,
    UnsupportedContextError,
    WordSyntaxError,
)

logger = logging.getLogger(__name__)

IDENTITY_TOKENS = ('e', '1')


class GroupKind(str, Enum):
    FREE = 'free'
    FREE_PRODUCT = 'free-product-of-cyclics'
    FIBER_EXTENSION = 'fiber-extension'


@dataclass(frozen=True, order=True)
class GeneratorId:
    factor: int
    name: int


# La fibra vive fuera de todos los factores de la base
FIBER = GeneratorId(factor=-1, name=0)


def checked(value):
    """Aritmética acotada: un desbordamiento es un error, nunca se trunca."""
    if abs(value) > exponent_bound():
        raise ExponentOverflowError(f'Exponente fuera de rango: {value}')
    return value


@dataclass(frozen=True)
class PresentedGroup:
    kind: GroupKind
    generators: tuple
    orders: tuple
    symbols: tuple
    base: PresentedGroup | None = None
    orientation: tuple = ()
    twists: tuple = ()
    fiber_symbol: str = 'f'

    def __str__(self):
        if self.kind is GroupKind.FREE:
            return f"F({', '.join(self.symbols)})"
        if self.kind is GroupKind.FREE_PRODUCT:
            if not self.orders:
                return '1'
            return ' * '.join('Z' if n is None else f'Z{n}' for n in self.orders)
        return f'{self.base} ext {self.fiber_symbol}'

    @property
    def is_fibered(self):
        return self.kind is GroupKind.FIBER_EXTENSION

    @cached_property
    def _index(self):
        return {gid: i for i, gid in enumerate(self.generators)}

    @cached_property
    def _by_symbol(self):
        table = {sym: gid for gid, sym in zip(self.generators, self.symbols)}
        if self.is_fibered:
            table[self.fiber_symbol] = FIBER
        return table

    def position(self, gid):
        try:
            return self._index[gid]
        except KeyError:
            raise UnknownGeneratorError(f'Generador desconocido {gid} en {self}') from None

    def order_of(self, gid):
        """Orden del generador (None = infinito)."""
        if gid == FIBER and self.is_fibered:
            return None
        return self.orders[self.position(gid)]

    def symbol_of(self, gid):
        if gid == FIBER and self.is_fibered:
            return self.fiber_symbol
        return self.symbols[self.position(gid)]

    def lookup(self, symbol):
        try:
            return self._by_symbol[symbol]
        except KeyError:
            raise UnknownGeneratorError(f"Símbolo desconocido '{symbol}' en {self}") from None

    def w(self, gid):
        """Carácter de orientación del generador de la base (±1)."""
        if not self.is_fibered:
            return 1
        return self.orientation[self.position(gid)]

    def twist(self, gid):
        if not self.is_fibered:
            return 0
        return self.twists[self.position(gid)]

    def factor_generator(self, factor):
        for gid in self.generators:
            if gid.factor == factor:
                return gid
        raise UnknownGeneratorError(f'Factor {factor} inexistente en {self}')

    # Protocolo común con los grupos semidirectos (ver loop_calculus)

    def identity(self):
        return GroupWord((), self)

    def generator(self, symbol):
        return reduce([(self.lookup(symbol), 1)], self)

    def fiber(self):
        if not self.is_fibered:
            raise UnsupportedContextError(f'{self} no tiene fibra')
        return reduce([(FIBER, 1)], self)

    def multiply(self, u, v):
        return multiply(u, v)

    def invert(self, u):
        return invert(u)

    def power(self, u, n):
        return power(u, n)

    def parse(self, text):
        return parse_word(text, self)

    def format(self, u):
        return format_word(u)


@dataclass(frozen=True)
class GroupWord:
    letters: tuple
    group: PresentedGroup

    def __str__(self):
        return format_word(self)

    def __len__(self):
        return len(self.letters)

    @property
    def is_identity(self):
        return not self.letters

    def __mul__(self, other):
        return multiply(self, other)

    def __invert__(self):
        return invert(self)

    def __pow__(self, n):
        return power(self, n)


# --- Constructores de grupos ---

def free_group(symbols):
    symbols = tuple(symbols)
    _check_symbols(symbols)
    return PresentedGroup(
        kind=GroupKind.FREE,
        generators=tuple(GeneratorId(0, i) for i in range(len(symbols))),
        orders=(None,) * len(symbols),
        symbols=symbols,
    )


def free_product(orders, symbols=None):
    """Producto libre de cíclicos; None en `orders` es un factor infinito."""
    orders = tuple(orders)
    for n in orders:
        if n is not None and (int(n) != n or n < 2):
            raise UnknownGeneratorError(f'Orden de factor inválido: {n}')
    if symbols is None:
        symbols = tuple(f'c{i + 1}' for i in range(len(orders)))
    symbols = tuple(symbols)
    if len(symbols) != len(orders):
        raise UnknownGeneratorError('Debe haber un símbolo por factor')
    _check_symbols(symbols)
    return PresentedGroup(
        kind=GroupKind.FREE_PRODUCT,
        generators=tuple(GeneratorId(i, 0) for i in range(len(orders))),
        orders=orders,
        symbols=symbols,
    )


def fiber_extension(base, orientation=None, twists=None, fiber_symbol='f'):
    if base.kind is GroupKind.FIBER_EXTENSION:
        raise UnsupportedContextError('La base de una extensión no puede ser otra extensión')
    n = len(base.generators)
    orientation = tuple(orientation) if orientation is not None else (1,) * n
    twists = tuple(twists) if twists is not None else (0,) * n
    if len(orientation) != n or len(twists) != n:
        raise UnknownGeneratorError('Se requiere un valor de orientación y de torsión por generador')
    if any(value not in (1, -1) for value in orientation):
        raise UnknownGeneratorError(f'El carácter de orientación debe ser ±1: {orientation}')
    for order, w, twist in zip(base.orders, orientation, twists):
        if twist and order is None:
            raise UnknownGeneratorError('Sólo los generadores de orden finito llevan torsión')
        # g^n = f^b con g f g⁻¹ = f^w sólo es consistente si w^n = 1 y, para w = -1, b = 0
        if w == -1 and order is not None and order % 2:
            raise UnknownGeneratorError(f'Un generador de orden impar ({order}) no invierte la fibra')
        if w == -1 and twist:
            raise UnknownGeneratorError('Un generador que invierte la fibra no lleva torsión')
    if fiber_symbol in base.symbols:
        raise UnknownGeneratorError(f"El símbolo de fibra '{fiber_symbol}' ya está en uso")
    return PresentedGroup(
        kind=GroupKind.FIBER_EXTENSION,
        generators=base.generators,
        orders=base.orders,
        symbols=base.symbols,
        base=base,
        orientation=orientation,
        twists=twists,
        fiber_symbol=fiber_symbol,
    )


def _check_symbols(symbols):
    if len(set(symbols)) != len(symbols):
        raise UnknownGeneratorError(f'Símbolos repetidos: {symbols}')
    for sym in symbols:
        if not re.fullmatch(r'[A-Za-z][A-Za-z0-9]*', sym) or sym in IDENTITY_TOKENS:
            raise UnknownGeneratorError(f'Símbolo inválido: {sym!r}')


# --- Forma normal ---

def _normal_form(letters, group):
    """Reduce libremente y empuja la fibra a la derecha: base · f^k."""
    fibered = group.is_fibered
    stack = []
    k = 0
    for gid, e in letters:
        e = checked(int(e))
        if gid == FIBER:
            if not fibered:
                raise UnknownGeneratorError(f'{group} no tiene generador de fibra')
            k = checked(k + e)
            continue
        order = group.order_of(gid)
        if e == 0:
            continue
        w = group.w(gid)
        # f^k g^e = g^e f^{k w(g)^e}
        if w == -1 and e % 2:
            k = -k
        if stack and stack[-1][0] == gid:
            total = checked(stack.pop()[1] + e)
        else:
            total = e
        if order is not None:
            q, total = divmod(total, order)
            if q and fibered:
                # g^{qn} = f^{bq}, que queda a la izquierda de g^r
                k = checked(k + q * group.twist(gid))
        if total:
            stack.append((gid, total))
    return stack, k


def reduce(raw_letters, group):
    """Palabra reducida y normalizada a partir de letras (GeneratorId, exponente)."""
    base, k = _normal_form(raw_letters, group)
    if k:
        base.append((FIBER, k))
    return GroupWord(tuple(base), group)


def _same_context(u, v):
    if u.group != v.group:
        raise ContextMismatchError(f'Palabras de grupos distintos: {u.group} y {v.group}')


def multiply(u, v):
    _same_context(u, v)
    return reduce(u.letters + v.letters, u.group)


def invert(u):
    return reduce([(gid, -e) for gid, e in reversed(u.letters)], u.group)


def power(u, n):
    if n < 0:
        return power(invert(u), -n)
    result = u.group.identity()
    base = u
    while n:
        if n & 1:
            result = multiply(result, base)
        base = multiply(base, base)
        n >>= 1
    return result


def conjugate(u, by):
    """by · u · by⁻¹"""
    return multiply(multiply(by, u), invert(by))


def commutes(u, v):
    return multiply(u, v) == multiply(v, u)


def fiber_normal_form(w):
    """Devuelve (parte de la base, exponente de la fibra) con w = base · f^k."""
    if not w.group.is_fibered:
        raise UnsupportedContextError(f'{w.group} no es una extensión por fibra')
    if w.letters and w.letters[-1][0] == FIBER:
        return GroupWord(w.letters[:-1], w.group), w.letters[-1][1]
    return w, 0


def project_to_base(w, target=None):
    """Imagen de w al matar la fibra (por defecto en el grupo base)."""
    if not w.group.is_fibered:
        raise UnsupportedContextError(f'{w.group} no es una extensión por fibra')
    target = target or w.group.base
    return reduce([(gid, e) for gid, e in w.letters if gid != FIBER], target)


# --- Conjugación ---

def _require_free_kind(w, *kinds):
    kinds = kinds or (GroupKind.FREE, GroupKind.FREE_PRODUCT)
    if w.group.kind not in kinds:
        raise UnsupportedContextError(
            f'Operación no soportada en grupos de tipo {w.group.kind.value}'
        )


def cyclic_reduce(w):
    """
    Devuelve (núcleo, conjugador) con w = conjugador · núcleo · conjugador⁻¹
    y el núcleo cíclicamente reducido (primera y última sílaba en factores
    distintos).
    """
    _require_free_kind(w)
    core = w
    conjugator = w.group.identity()
    while len(core.letters) >= 2 and core.letters[0][0] == core.letters[-1][0]:
        piece = GroupWord(core.letters[:1], w.group)
        core = multiply(multiply(invert(piece), core), piece)
        conjugator = multiply(conjugator, piece)
    return core, conjugator


def are_conjugate(u, v):
    """
    Decide conjugación por rotación de palabras cíclicas. Devuelve h con
    h · u · h⁻¹ = v, o None.
    """
    _same_context(u, v)
    cu, c1 = cyclic_reduce(u)
    cv, c2 = cyclic_reduce(v)
    if len(cu.letters) != len(cv.letters):
        return None
    if len(cu.letters) <= 1:
        if cu == cv:
            return multiply(c2, invert(c1))
        return None
    n = len(cu.letters)
    for i in range(n):
        if cu.letters[i:] + cu.letters[:i] == cv.letters:
            prefix = GroupWord(cu.letters[:i], u.group)
            return multiply(multiply(c2, invert(prefix)), invert(c1))
    return None


def primitive_root(w):
    """
    Raíz primitiva: (raíz, exponente) con w = raíz^exponente, exponente máximo.
    La periodicidad se busca en el núcleo cíclico y la raíz se reconjuga.
    """
    if w.is_identity:
        raise IdentityElementError('La identidad no tiene raíz primitiva')
    core, conjugator = cyclic_reduce(w)
    letters = core.letters
    if len(letters) == 1:
        gid, e = letters[0]
        if w.group.order_of(gid) is not None:
            raise TorsionElementError(f'{w} es de torsión')
        root_core = reduce([(gid, 1 if e > 0 else -1)], w.group)
        exponent = abs(e)
    else:
        n = len(letters)
        period = next(
            p for p in range(1, n + 1)
            if n % p == 0 and letters == letters[:p] * (n // p)
        )
        root_core = GroupWord(letters[:period], w.group)
        exponent = n // period
    return conjugate(root_core, conjugator), exponent


def is_conjugate_into_factor(g):
    """
    Testigo (factor, h) con h⁻¹ g h dentro de un solo factor, o None.
    La identidad no tiene factor distinguido y también devuelve None.
    """
    _require_free_kind(g, GroupKind.FREE_PRODUCT)
    if g.is_identity:
        return None
    core, conjugator = cyclic_reduce(g)
    if len(core.letters) == 1:
        return core.letters[0][0].factor, conjugator
    return None


class CentralizerShape(str, Enum):
    INFINITE_CYCLIC = 'infinite-cyclic'
    CONJUGATED_FACTOR = 'conjugated-factor'
    WHOLE_GROUP = 'whole-group'


@dataclass(frozen=True)
class CentralizerDescription:
    shape: CentralizerShape
    query: GroupWord
    conjugator: GroupWord
    root_core: GroupWord | None = None
    root_exponent: int | None = None
    factor: int | None = None

    @property
    def group(self):
        return self.query.group

    @property
    def root(self):
        if self.root_core is None:
            return None
        return conjugate(self.root_core, self.conjugator)

    def generators(self):
        if self.shape is CentralizerShape.INFINITE_CYCLIC:
            return [self.root]
        if self.shape is CentralizerShape.CONJUGATED_FACTOR:
            gid = self.group.factor_generator(self.factor)
            return [conjugate(reduce([(gid, 1)], self.group), self.conjugator)]
        return [reduce([(gid, 1)], self.group) for gid in self.group.generators]

    def _pull_back(self, h):
        return multiply(multiply(invert(self.conjugator), h), self.conjugator)

    def exponent_of(self, h):
        """n con h = raíz^n en el caso cíclico infinito, o None si h no es potencia."""
        if self.shape is not CentralizerShape.INFINITE_CYCLIC:
            return None
        inner = self._pull_back(h)
        if inner.is_identity:
            return 0
        step = len(self.root_core.letters)
        if step == 1:
            (gid, e), = self.root_core.letters
            if len(inner.letters) == 1 and inner.letters[0][0] == gid:
                return inner.letters[0][1] * e
            return None
        if len(inner.letters) % step:
            return None
        n = len(inner.letters) // step
        for candidate in (n, -n):
            if power(self.root_core, candidate) == inner:
                return candidate
        return None

    def contains(self, h):
        if self.shape is CentralizerShape.WHOLE_GROUP:
            return True
        if self.shape is CentralizerShape.INFINITE_CYCLIC:
            return self.exponent_of(h) is not None
        inner = self._pull_back(h)
        return inner.is_identity or (
            len(inner.letters) == 1 and inner.letters[0][0].factor == self.factor
        )

    def sample(self, radius=4):
        """Elementos del centralizador: potencias de la raíz o el factor conjugado."""
        if self.shape is CentralizerShape.INFINITE_CYCLIC:
            root = self.root
            return [power(root, n) for n in range(-radius, radius + 1)]
        if self.shape is CentralizerShape.CONJUGATED_FACTOR:
            gid = self.group.factor_generator(self.factor)
            order = self.group.order_of(gid)
            exponents = range(order) if order else range(-radius, radius + 1)
            return [conjugate(reduce([(gid, e)], self.group), self.conjugator) for e in exponents]
        return [reduce([(gid, 1)], self.group) for gid in self.group.generators]

    def certificate(self):
        data = {
            'shape': self.shape.value,
            'query': format_word(self.query),
            'generators': [format_word(g) for g in self.generators()],
        }
        if self.shape is CentralizerShape.INFINITE_CYCLIC:
            data['root'] = format_word(self.root)
            data['root_exponent'] = self.root_exponent
        if self.shape is CentralizerShape.CONJUGATED_FACTOR:
            data['conjugator'] = format_word(self.conjugator)
            data['factor'] = self.factor
            data['factor_order'] = self.group.orders[self.factor]
        return data


def centralizer_free_product(g):
    """
    Centralizador en un producto libre de cíclicos.

    Caso a (g no es conjugado a un factor): cíclico infinito generado por la
    raíz primitiva. Caso b: el factor completo conjugado (los factores son
    cíclicos, luego abelianos).
    """
    _require_free_kind(g)
    if g.is_identity:
        raise IdentityElementError('El centralizador de la identidad es todo el grupo')
    if len(g.group.generators) == 1 and g.group.orders[0] is not None:
        return CentralizerDescription(
            shape=CentralizerShape.WHOLE_GROUP, query=g, conjugator=g.group.identity(),
        )
    witness = None if g.group.kind is GroupKind.FREE else is_conjugate_into_factor(g)
    if witness is not None and g.group.orders[witness[0]] is not None:
        factor, conjugator = witness
        logger.debug(f'centralizador caso b: {g} conjugado al factor {factor}')
        return CentralizerDescription(
            shape=CentralizerShape.CONJUGATED_FACTOR, query=g,
            conjugator=conjugator, factor=factor,
        )
    core, conjugator = cyclic_reduce(g)
    _, exponent = primitive_root(g)
    root_core, _ = primitive_root(core)
    logger.debug(f'centralizador caso a: {g} = raíz^{exponent}')
    return CentralizerDescription(
        shape=CentralizerShape.INFINITE_CYCLIC, query=g, conjugator=conjugator,
        root_core=root_core, root_exponent=exponent,
    )


# --- Sintaxis ---

_TOKEN = re.compile(r'(?P<body>[A-Za-z0-9]+)(?:\^\(?(?P<exp>[+-]?\d+)\)?)?')


def _split_symbols(body, group):
    """Separa 'ab' en símbolos conocidos, prefiriendo el prefijo más largo."""
    known = sorted(group._by_symbol, key=len, reverse=True)
    pieces = []
    rest = body
    while rest:
        for sym in known:
            if rest.startswith(sym):
                pieces.append(sym)
                rest = rest[len(sym):]
                break
        else:
            raise WordSyntaxError(f"No se reconoce '{rest}' en '{body}'")
    return pieces


def parse_word(text, group):
    letters = []
    for token in text.split():
        match = _TOKEN.fullmatch(token)
        if not match:
            raise WordSyntaxError(f'Token inválido: {token!r}')
        body = match.group('body')
        exp = int(match.group('exp')) if match.group('exp') is not None else 1
        if body in IDENTITY_TOKENS and body not in group._by_symbol:
            continue
        pieces = _split_symbols(body, group)
        for sym in pieces[:-1]:
            letters.append((group.lookup(sym), 1))
        letters.append((group.lookup(pieces[-1]), exp))
    return reduce(letters, group)


def format_word(w):
    if w.is_identity:
        return 'e'
    parts = []
    for gid, e in w.letters:
        sym = w.group.symbol_of(gid)
        parts.append(sym if e == 1 else f'{sym}^{e}')
    return ' '.join(parts)


def random_word(group, rng, length, max_exponent=2):
    """Palabra aleatoria (ya reducida) con `length` letras crudas."""
    gens = list(group.generators)
    if group.is_fibered:
        gens.append(FIBER)
    if not gens:
        return group.identity()
    letters = []
    for _ in range(length):
        e = rng.randint(1, max_exponent) * rng.choice((1, -1))
        letters.append((rng.choice(gens), e))
    return reduce(letters, group)
