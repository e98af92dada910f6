"""
Nudos enmarcados en S³ como códigos de Gauss con signos y un entero de marco.

Formato de texto: pasos separados por espacios y el marco al final,
``O1+ U2+ O3+ U1+ O2+ U3+ ; framing=0``. Los puntos dobles de un código
singular se escriben ``D1a`` (primera visita) y ``D1b`` (segunda).

Se aceptan códigos virtuales: no se comprueba planaridad.
"""
import itertools
import logging
import re
from collections import defaultdict
from dataclasses import dataclass, replace
from enum import Enum

from .exceptions import InvalidGaussCodeError, MoveNotApplicableError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Passage:
    crossing: int
    over: bool
    sign: int

    def __str__(self):
        return f"{'O' if self.over else 'U'}{self.crossing}{'+' if self.sign > 0 else '-'}"


@dataclass(frozen=True)
class DoublePoint:
    point: int
    first: bool

    def __str__(self):
        return f"D{self.point}{'a' if self.first else 'b'}"


@dataclass(frozen=True)
class FramedGaussCode:
    passages: tuple = ()
    framing: int = 0

    def __str__(self):
        return format_gauss(self)

    @property
    def crossing_ids(self):
        return sorted({p.crossing for p in self.passages if isinstance(p, Passage)})

    @property
    def double_point_ids(self):
        return sorted({p.point for p in self.passages if isinstance(p, DoublePoint)})

    def passages_of(self, crossing):
        return [i for i, p in enumerate(self.passages)
                if isinstance(p, Passage) and p.crossing == crossing]


@dataclass(frozen=True)
class SingularGaussCode(FramedGaussCode):
    """Código con puntos dobles transversales; los puntos dobles no llevan signo."""


@dataclass(frozen=True)
class Resolution:
    assignment: tuple
    sign: int

    def as_dict(self):
        return {
            'assignment': {str(point): value for point, value in self.assignment},
            'sign': self.sign,
        }


# --- Sintaxis ---

_PASSAGE = re.compile(r'(?P<kind>[OU])(?P<id>\d+)(?P<sign>[+-])')
_DOUBLE = re.compile(r'D(?P<id>\d+)(?P<visit>[ab])')
_FRAMING = re.compile(r'framing\s*=\s*(?P<value>[+-]?\d+)')


def parse_gauss(text):
    body, _, tail = text.partition(';')
    framing = 0
    if tail.strip():
        match = _FRAMING.fullmatch(tail.strip())
        if not match:
            raise InvalidGaussCodeError([f'Marco ilegible: {tail.strip()!r}'])
        framing = int(match.group('value'))
    passages = []
    for token in body.split():
        match = _PASSAGE.fullmatch(token)
        if match:
            passages.append(Passage(
                int(match.group('id')), match.group('kind') == 'O',
                1 if match.group('sign') == '+' else -1,
            ))
            continue
        match = _DOUBLE.fullmatch(token)
        if match:
            passages.append(DoublePoint(int(match.group('id')), match.group('visit') == 'a'))
            continue
        raise InvalidGaussCodeError([f'Paso ilegible: {token!r}'])
    cls = SingularGaussCode if any(isinstance(p, DoublePoint) for p in passages) else FramedGaussCode
    return cls(tuple(passages), framing)


def format_gauss(code):
    body = ' '.join(str(p) for p in code.passages)
    tail = f'; framing={code.framing}'
    return f'{body} {tail}' if body else tail


# --- Validación ---

def validate(code):
    """Lista de diagnósticos; vacía si el código está bien formado."""
    diagnostics = []
    crossings = defaultdict(list)
    points = defaultdict(list)
    for position, p in enumerate(code.passages):
        if isinstance(p, Passage):
            crossings[p.crossing].append(p)
            if p.sign not in (1, -1):
                diagnostics.append(f'signo inválido en el cruce {p.crossing}')
        else:
            points[p.point].append((position, p))
    for cid, pair in sorted(crossings.items()):
        if len(pair) != 2:
            diagnostics.append(f'cruce {cid} sin pareja ({len(pair)} pasos)')
            continue
        first, second = pair
        if first.over == second.over:
            kind = 'over/over' if first.over else 'under/under'
            diagnostics.append(f'emparejamiento {kind} en el cruce {cid}')
        if first.sign != second.sign:
            diagnostics.append(f'signos distintos en el cruce {cid}')
    for pid, visits in sorted(points.items()):
        if len(visits) != 2:
            diagnostics.append(f'punto doble {pid} sin pareja ({len(visits)} visitas)')
            continue
        (_, first), (_, second) = visits
        if not (first.first and not second.first):
            diagnostics.append(f'el punto doble {pid} debe visitarse primero como a y luego como b')
    if points and not isinstance(code, SingularGaussCode):
        diagnostics.append('un código enmarcado no lleva puntos dobles')
    return diagnostics


def ensure_valid(code):
    diagnostics = validate(code)
    if diagnostics:
        raise InvalidGaussCodeError(diagnostics)
    return code


# --- Invariantes ---

def writhe(code):
    ensure_valid(code)
    return sum(p.sign for p in code.passages if isinstance(p, Passage) and p.over)


def slk(code):
    """Autoenlace con marco de pizarra más giros extra: slk = writhe + framing."""
    return writhe(code) + code.framing


@dataclass(frozen=True)
class LinkPassage:
    """Paso de una componente (K o P) por un cruce del diagrama duplicado."""
    crossing: tuple
    over: bool
    sign: int


def _left(d):
    return (-d[1], d[0])


def _local_model(sign):
    """
    Vecindad de un cruce: la rama de arriba avanza por (1, 0), la de abajo por
    (0, sign) y la copia P de cada rama va a su izquierda, a distancia 1.
    Devuelve las rectas (punto, dirección) de cada copia y el signo de los
    cruces entre copias, det(arriba, abajo).
    """
    over_dir, under_dir = (1, 0), (0, sign)
    over = {'K': ((0, 0), over_dir), 'P': (_left(over_dir), over_dir)}
    under = {'K': ((0, 0), under_dir), 'P': (_left(under_dir), under_dir)}
    det = over_dir[0] * under_dir[1] - over_dir[1] * under_dir[0]
    return over, under, det


def _meeting_order(line, others):
    """Orden en que la recta `line` corta a las rectas `others` (perpendiculares)."""
    (px, py), (dx, dy) = line

    def parameter(item):
        (qx, qy), _ = item[1]
        return (qx - px) * dx + (qy - py) * dy

    return [name for name, _ in sorted(others.items(), key=parameter)]


def pushoff_diagram(code):
    """
    Diagrama de dos componentes K ∪ P, con P la copia de K desplazada por el
    marco de pizarra y `framing` broches de giro al inicio. Cada cruce de K se
    abre en cuatro, uno por par de copias, en el orden en que cada copia
    recorre la vecindad.
    """
    ensure_valid(code)
    if isinstance(code, SingularGaussCode):
        raise InvalidGaussCodeError(['el diagrama duplicado requiere un código sin puntos dobles'])
    twist = 1 if code.framing > 0 else -1
    sequences = {'K': [], 'P': []}
    for t in range(abs(code.framing)):
        for component in 'KP':
            sequences[component].append(LinkPassage(('giro', t, 'K'), component == 'K', twist))
            sequences[component].append(LinkPassage(('giro', t, 'P'), component == 'P', twist))
    for p in code.passages:
        over, under, det = _local_model(p.sign)
        for component in 'KP':
            if p.over:
                order = _meeting_order(over[component], under)
                sequences[component].extend(
                    LinkPassage((p.crossing, component, other), True, det) for other in order
                )
            else:
                order = _meeting_order(under[component], over)
                sequences[component].extend(
                    LinkPassage((p.crossing, other, component), False, det) for other in order
                )
    return tuple(sequences['K']), tuple(sequences['P'])


def linking_number(first, second):
    """
    Número de enlace de un diagrama de dos componentes: suma de los signos de
    los cruces donde `second` pasa por encima de `first`. Se comprueba que la
    cuenta del otro lado coincida.
    """
    seen = defaultdict(list)
    for name, sequence in (('first', first), ('second', second)):
        for p in sequence:
            seen[p.crossing].append((name, p))
    diagnostics = [
        f'cruce {crossing} con {len(visits)} pasos'
        for crossing, visits in seen.items() if len(visits) != 2
    ]
    if diagnostics:
        raise InvalidGaussCodeError(diagnostics)
    above = below = 0
    for visits in seen.values():
        (name_a, a), (name_b, b) = visits
        if name_a == name_b:
            continue
        if a.over == b.over or a.sign != b.sign:
            raise InvalidGaussCodeError([f'cruce {a.crossing} mal emparejado'])
        top = name_a if a.over else name_b
        if top == 'second':
            above += a.sign
        else:
            below += a.sign
    if above != below:
        raise InvalidGaussCodeError([f'las cuentas por arriba ({above}) y por abajo ({below}) difieren'])
    return above


def pushoff_linking(code):
    """Enlace de K con su copia desplazada a lo largo del marco."""
    return linking_number(*pushoff_diagram(code))


def switch_crossing(code, crossing):
    positions = code.passages_of(crossing)
    if not positions:
        raise MoveNotApplicableError(f'El cruce {crossing} no está en el código')
    passages = list(code.passages)
    for i in positions:
        p = passages[i]
        passages[i] = Passage(p.crossing, not p.over, -p.sign)
    return replace(code, passages=tuple(passages))


# --- Resoluciones y defecto de Vassiliev ---

def resolutions(code):
    """
    Las 2^(n+1) resoluciones de un código singular. Convención: en la
    resolución positiva la primera visita (a) pasa por encima; la negativa es
    el cambio de cruce de la positiva.
    """
    ensure_valid(code)
    points = code.double_point_ids
    if not points:
        raise InvalidGaussCodeError(['el código no tiene puntos dobles'])
    offset = max(code.crossing_ids, default=0)
    result = []
    for values in itertools.product((1, -1), repeat=len(points)):
        assignment = dict(zip(points, values))
        passages = []
        for p in code.passages:
            if isinstance(p, DoublePoint):
                value = assignment[p.point]
                over = p.first if value > 0 else not p.first
                passages.append(Passage(offset + p.point, over, value))
            else:
                passages.append(p)
        sign = -1 if values.count(-1) % 2 else 1
        resolved = FramedGaussCode(tuple(passages), code.framing)
        result.append((Resolution(tuple(assignment.items()), sign), resolved))
    return result


def vassiliev_defect(invariant, code):
    return sum(resolution.sign * invariant(resolved) for resolution, resolved in resolutions(code))


# --- Movimientos de Reidemeister enmarcados ---

class Move(str, Enum):
    R1 = 'framed-R1'
    R2 = 'R2'
    R3 = 'R3'


@dataclass(frozen=True)
class MoveSite:
    move: Move
    action: str
    data: tuple


def _next_id(code):
    return max(code.crossing_ids + code.double_point_ids, default=0) + 1


def _adjacent(i, j, n):
    return (i + 1) % n == j or (j + 1) % n == i


def _insert_sites_r1(code):
    for gap in range(len(code.passages) + 1):
        for sign in (1, -1):
            for over_first in (True, False):
                yield MoveSite(Move.R1, 'insert', (gap, sign, over_first))


def _delete_sites_r1(code):
    n = len(code.passages)
    for cid in code.crossing_ids:
        i, j = code.passages_of(cid)
        if _adjacent(i, j, n):
            yield MoveSite(Move.R1, 'delete', (cid,))


def _insert_sites_r2(code):
    gaps = range(len(code.passages) + 1)
    for i, j in itertools.combinations_with_replacement(gaps, 2):
        for sign, over_first, reverse in itertools.product((1, -1), (True, False), (False, True)):
            yield MoveSite(Move.R2, 'insert', (i, j, sign, over_first, reverse))


def _r2_pairs(code, x, y):
    """Las dos parejas adyacentes (mismo tipo encima/debajo) formadas por x e y, o None."""
    n = len(code.passages)
    xs, ys = code.passages_of(x), code.passages_of(y)
    for ya, yb in (ys, ys[::-1]):
        pairs = ((xs[0], ya), (xs[1], yb))
        if all(
            _adjacent(a, b, n) and code.passages[a].over == code.passages[b].over
            for a, b in pairs
        ):
            return pairs
    return None


def _delete_sites_r2(code):
    ids = code.crossing_ids
    for x, y in itertools.combinations(ids, 2):
        if code.passages[code.passages_of(x)[0]].sign == code.passages[code.passages_of(y)[0]].sign:
            continue
        if _r2_pairs(code, x, y):
            yield MoveSite(Move.R2, 'delete', (x, y))


def _adjacent_pair(code, first, second):
    """Posiciones (i, j) adyacentes de los pasos dados, o None."""
    n = len(code.passages)
    try:
        i = code.passages.index(first)
        j = code.passages.index(second)
    except ValueError:
        return None
    return (i, j) if _adjacent(i, j, n) else None


def _r3_pairs(code, x, y, z):
    """Parejas del triángulo: {O_x, O_y} arriba, {U_x, O_z} en medio, {U_y, U_z} abajo."""
    sign = {cid: code.passages[code.passages_of(cid)[0]].sign for cid in (x, y, z)}
    top = _adjacent_pair(code, Passage(x, True, sign[x]), Passage(y, True, sign[y]))
    middle = _adjacent_pair(code, Passage(x, False, sign[x]), Passage(z, True, sign[z]))
    bottom = _adjacent_pair(code, Passage(y, False, sign[y]), Passage(z, False, sign[z]))
    if top and middle and bottom:
        return top, middle, bottom
    return None


def _sites_r3(code):
    passages = code.passages
    n = len(passages)
    position = {p: i for i, p in enumerate(passages)}
    found = set()
    for i in range(n):
        a, b = passages[i], passages[(i + 1) % n]
        if not (isinstance(a, Passage) and isinstance(b, Passage) and a.over and b.over):
            continue
        for x, y in ((a, b), (b, a)):
            under_x = position.get(Passage(x.crossing, False, x.sign))
            if under_x is None:
                continue
            for k in ((under_x - 1) % n, (under_x + 1) % n):
                z = passages[k]
                if not (isinstance(z, Passage) and z.over) or z.crossing in (x.crossing, y.crossing):
                    continue
                triple = (x.crossing, y.crossing, z.crossing)
                if triple not in found and _r3_pairs(code, *triple):
                    found.add(triple)
                    yield MoveSite(Move.R3, 'slide', triple)


def move_sites(code, move):
    """Todos los sitios donde el movimiento es aplicable."""
    ensure_valid(code)
    move = Move(move)
    if move is Move.R1:
        return list(_insert_sites_r1(code)) + list(_delete_sites_r1(code))
    if move is Move.R2:
        return list(_insert_sites_r2(code)) + list(_delete_sites_r2(code))
    return list(_sites_r3(code))


def apply_move(code, move, site):
    ensure_valid(code)
    move = Move(move)
    if site.move is not move:
        raise MoveNotApplicableError(f'El sitio {site} no corresponde a {move.value}')
    handler = _HANDLERS.get((move, site.action))
    if handler is None:
        raise MoveNotApplicableError(f'Acción desconocida {site.action!r} para {move.value}')
    result = handler(code, *site.data)
    logger.debug(f'{move.value} {site.action} {site.data}: {result}')
    return result


def _check_gap(code, gap):
    if not 0 <= gap <= len(code.passages):
        raise MoveNotApplicableError(f'Posición fuera del código: {gap}')


def _r1_insert(code, gap, sign, over_first):
    _check_gap(code, gap)
    cid = _next_id(code)
    kink = (Passage(cid, over_first, sign), Passage(cid, not over_first, sign))
    passages = code.passages[:gap] + kink + code.passages[gap:]
    return replace(code, passages=passages, framing=code.framing - sign)


def _r1_delete(code, cid):
    positions = code.passages_of(cid)
    n = len(code.passages)
    if len(positions) != 2 or not _adjacent(*positions, n):
        raise MoveNotApplicableError(f'El cruce {cid} no es un rizo')
    sign = code.passages[positions[0]].sign
    passages = tuple(p for i, p in enumerate(code.passages) if i not in positions)
    return replace(code, passages=passages, framing=code.framing + sign)


def _r2_insert(code, i, j, sign, over_first, reverse):
    _check_gap(code, i)
    _check_gap(code, j)
    if i > j:
        raise MoveNotApplicableError(f"Se requieren posiciones ordenadas: {i}, {j}")
    x = _next_id(code)
    y = x + 1
    first = (Passage(x, over_first, sign), Passage(y, over_first, -sign))
    second = (Passage(x, not over_first, sign), Passage(y, not over_first, -sign))
    if reverse:
        second = second[::-1]
    p = code.passages
    return replace(code, passages=p[:i] + first + p[i:j] + second + p[j:])


def _r2_delete(code, x, y):
    if x not in code.crossing_ids or y not in code.crossing_ids:
        raise MoveNotApplicableError(f'Cruces inexistentes: {x}, {y}')
    signs = {code.passages[code.passages_of(c)[0]].sign for c in (x, y)}
    if len(signs) != 2 or _r2_pairs(code, x, y) is None:
        raise MoveNotApplicableError(f'Los cruces {x}, {y} no forman un bigono')
    passages = tuple(p for p in code.passages if not (isinstance(p, Passage) and p.crossing in (x, y)))
    return replace(code, passages=passages)


def _r3_slide(code, x, y, z):
    if len({x, y, z}) != 3 or not set((x, y, z)) <= set(code.crossing_ids):
        raise MoveNotApplicableError(f'Triángulo inválido: {x}, {y}, {z}')
    pairs = _r3_pairs(code, x, y, z)
    if pairs is None:
        raise MoveNotApplicableError(f'Los cruces {x}, {y}, {z} no forman un triángulo')
    passages = list(code.passages)
    for a, b in pairs:
        passages[a], passages[b] = passages[b], passages[a]
    return replace(code, passages=tuple(passages))


_HANDLERS = {
    (Move.R1, 'insert'): _r1_insert,
    (Move.R1, 'delete'): _r1_delete,
    (Move.R2, 'insert'): _r2_insert,
    (Move.R2, 'delete'): _r2_delete,
    (Move.R3, 'slide'): _r3_slide,
}


def random_site(code, move, rng, max_length=16):
    """
    Sitio aleatorio sin enumerar todas las inserciones. Por encima de
    `max_length` pasos se prefieren las eliminaciones.
    """
    move = Move(move)
    if move is Move.R3:
        sites = list(_sites_r3(code))
        return rng.choice(sites) if sites else None
    deletions = list(_delete_sites_r1(code) if move is Move.R1 else _delete_sites_r2(code))
    prefer_delete = len(code.passages) >= max_length or rng.random() < 0.4
    if deletions and prefer_delete:
        return rng.choice(deletions)
    n = len(code.passages)
    if move is Move.R1:
        return MoveSite(Move.R1, 'insert', (rng.randint(0, n), rng.choice((1, -1)), rng.random() < 0.5))
    i, j = sorted((rng.randint(0, n), rng.randint(0, n)))
    return MoveSite(Move.R2, 'insert', (
        i, j, rng.choice((1, -1)), rng.random() < 0.5, rng.random() < 0.5,
    ))


def random_move_walk(code, rng, steps):
    """Aplica `steps` movimientos aleatorios; devuelve la lista de (sitio, código)."""
    trail = []
    for _ in range(steps):
        move = rng.choice(list(Move))
        site = random_site(code, move, rng)
        if site is None:
            continue
        code = apply_move(code, site.move, site)
        trail.append((site, code))
    return trail


# --- Enumeración ---

def _matchings(positions):
    if not positions:
        yield []
        return
    first, rest = positions[0], positions[1:]
    for k, partner in enumerate(rest):
        for tail in _matchings(rest[:k] + rest[k + 1:]):
            yield [(first, partner)] + tail


def enumerate_singular_codes(max_crossings, double_points, anchored=True):
    """
    Todos los códigos singulares con hasta `max_crossings` cruces y exactamente
    `double_points` puntos dobles, etiquetados por orden de aparición. Con
    `anchored` el código empieza en la primera visita de un punto doble (una
    rotación por clase).
    """
    for crossings in range(max_crossings + 1):
        chords = crossings + double_points
        length = 2 * chords
        for matching in _matchings(list(range(length))):
            if anchored and double_points:
                choices = [
                    (0,) + rest
                    for rest in itertools.combinations(range(1, chords), double_points - 1)
                ]
            else:
                choices = list(itertools.combinations(range(chords), double_points))
            for point_chords in choices:
                yield from _decorate(matching, set(point_chords), length)


def _decorate(matching, point_chords, length):
    crossing_chords = [c for c in range(len(matching)) if c not in point_chords]
    for overs in itertools.product((True, False), repeat=len(crossing_chords)):
        for signs in itertools.product((1, -1), repeat=len(crossing_chords)):
            slots = [None] * length
            point_id = crossing_id = 0
            for index, (a, b) in enumerate(matching):
                if index in point_chords:
                    point_id += 1
                    slots[a] = DoublePoint(point_id, True)
                    slots[b] = DoublePoint(point_id, False)
                else:
                    k = crossing_chords.index(index)
                    crossing_id += 1
                    slots[a] = Passage(crossing_id, overs[k], signs[k])
                    slots[b] = Passage(crossing_id, not overs[k], signs[k])
            cls = SingularGaussCode if point_chords else FramedGaussCode
            yield cls(tuple(slots), 0)


UNKNOT = FramedGaussCode((), 0)
TREFOIL = parse_gauss('O1+ U2+ O3+ U1+ O2+ U3+ ; framing=0')
FIGURE_EIGHT = parse_gauss('O1+ U2+ O3- U1+ O4- U3- O2+ U4- ; framing=0')
