"""
Suites de verificación que ejecuta `manage.py verify <suite>`.

Cada suite recibe una semilla y devuelve un SuiteReport con un caso por
propiedad comprobada. Las suites aleatorias usan random.Random(seed), así que
la misma semilla da el mismo reporte.
"""
import logging
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .classify import (
    FramingCount,
    KnotDescriptor,
    aslk_separates,
    even_collapse_classes,
    framing_classes,
    spin_parity_distinct,
)
from .conf import oracle_radius, random_cases
from .exceptions import UnknownSuiteError
from .framed_gauss import (
    FIGURE_EIGHT,
    TREFOIL,
    enumerate_singular_codes,
    pushoff_linking,
    random_move_walk,
    resolutions,
    slk,
    switch_crossing,
    validate,
    vassiliev_defect,
)
from .loop_calculus import (
    GAMMA2,
    EvaluationContext,
    IdentityStatus,
    LoopKind,
    PathCrossing,
    PathRecord,
    Unavailable,
    check_decomposition,
    context_alphabet,
    cyclic_normal_form,
    decompose_power,
    delta,
    delta_aslk,
    delta_aslk_tilde,
    make_loop_word,
    path_delta_aslk,
    path_delta_aslk_tilde,
    random_loop_word,
    t_value,
    verify_identity,
)
from .manifold_groups import (
    EUCLIDEAN_BUNDLES,
    MONODROMY,
    ConnectedSumDescriptor,
    Geometry,
    IntMatrix2,
    SeifertPresentation,
    SemidirectElement,
    Summand,
    SummandKind,
    centralizer_semidirect,
    closed_seifert_route,
    fixed_lattice,
    matrix_order,
    matrix_power,
    random_semidirect,
    semidirect_conjugate,
    semidirect_inverse,
    semidirect_mul,
    semidirect_power,
    seifert_group,
    triangle_classify,
)
from .oracles import (
    centralizer_oracle,
    fixed_lattice_oracle,
    psl2_is_identity,
    semidirect_centralizer_oracle,
)
from .words import free_product, parse_word, random_word, reduce

logger = logging.getLogger(__name__)


@dataclass
class CaseResult:
    name: str
    passed: bool
    detail: str = ''

    def as_dict(self):
        return {'name': self.name, 'passed': self.passed, 'detail': self.detail}


@dataclass
class SuiteReport:
    suite: str
    seed: int
    cases: list = field(default_factory=list)
    elapsed: float = 0.0

    def check(self, name, passed, detail=''):
        self.cases.append(CaseResult(name, bool(passed), detail))

    @property
    def passed(self):
        return sum(1 for case in self.cases if case.passed)

    @property
    def failed(self):
        return len(self.cases) - self.passed

    @property
    def ok(self):
        return self.failed == 0

    def summary(self):
        return {'suite': self.suite, 'seed': self.seed, 'passed': self.passed, 'failed': self.failed}

    def as_dict(self):
        return {**self.summary(), 'cases': [case.as_dict() for case in self.cases]}


SUITES = {}


def suite(name):
    def register(func):
        SUITES[name] = func
        return func
    return register


def run_suite(name, seed, **options):
    try:
        func = SUITES[name]
    except KeyError:
        raise UnknownSuiteError(
            f"Suite desconocida '{name}'. Opciones: {', '.join(sorted(SUITES))}"
        ) from None
    report = SuiteReport(name, seed)
    started = time.perf_counter()
    func(report, random.Random(seed), **options)
    report.elapsed = time.perf_counter() - started
    logger.info(f'suite {name}: {report.passed} ok, {report.failed} fallidos en {report.elapsed:.2f}s')
    return report


# --- Matrices de monodromía y ℤ²⋊ℤ ---

@suite('matrices')
def matrices_suite(report, rng, samples=100):
    A, B, C = MONODROMY['A'], MONODROMY['B'], MONODROMY['C']
    for name, D, expected in (('A', A, 6), ('B', B, 4), ('C', C, 3)):
        order = matrix_order(D)
        report.check(f'orden de {name}', order == expected, f'{order} (esperado {expected})')
    total = (IntMatrix2.identity().to_sympy() + C.to_sympy() + matrix_power(C, 2).to_sympy())
    report.check('I + C + C² = 0', total.is_zero_matrix, str(total.tolist()))
    report.check('C³ = I', matrix_power(C, 3) == IntMatrix2.identity())
    report.check('[[1,1],[0,1]] de orden infinito', matrix_order(IntMatrix2(1, 1, 0, 1)) is None)

    failures = 0
    for _ in range(samples):
        a = (rng.randint(-20, 20), rng.randint(-20, 20))
        p = rng.choice((1, 2, 4, 5))
        cube = semidirect_power(SemidirectElement(a, p), 3, C)
        if cube.a != (0, 0) or cube.k != 3 * p:
            failures += 1
    report.check('K³ sin parte en la retícula', not failures, f'{failures} de {samples} fallan')

    for name, D in (('A', A), ('B', B), ('C', C)):
        law_failures = 0
        for _ in range(samples):
            g, h, k = (random_semidirect(rng) for _ in range(3))
            left = semidirect_mul(semidirect_mul(g, h, D), k, D)
            right = semidirect_mul(g, semidirect_mul(h, k, D), D)
            identity = SemidirectElement.identity()
            if (
                left != right
                or semidirect_mul(identity, g, D) != g
                or semidirect_mul(g, semidirect_inverse(g, D), D) != identity
            ):
                law_failures += 1
            a = (rng.randint(-9, 9), rng.randint(-9, 9))
            i = rng.randint(-6, 6)
            conjugated = semidirect_conjugate(SemidirectElement(a, 0), SemidirectElement((0, 0), i), D)
            if conjugated != SemidirectElement(matrix_power(D, i).apply(a), 0):
                law_failures += 1
        report.check(f'leyes de grupo y automorfismo con {name}', not law_failures,
                     f'{law_failures} fallas en {samples} muestras')


# --- Grupos triangulares ---

@suite('triangle')
def triangle_suite(report, rng, bound=12):
    for triple, geometry in (((2, 3, 5), Geometry.SPHERICAL), ((2, 3, 6), Geometry.EUCLIDEAN),
                             ((2, 3, 7), Geometry.HYPERBOLIC)):
        result = triangle_classify(*triple).geometry
        report.check(f'{triple}', result is geometry, result.value)
    euclidean = {
        (r, s, t)
        for r in range(2, bound + 1) for s in range(r, bound + 1) for t in range(s, bound + 1)
        if triangle_classify(r, s, t).geometry is Geometry.EUCLIDEAN
    }
    expected = {(2, 3, 6), (2, 4, 4), (3, 3, 3)}
    report.check(f'triángulos euclidianos hasta {bound}', euclidean == expected, str(sorted(euclidean)))
    for presentation, name in EUCLIDEAN_BUNDLES.items():
        route = closed_seifert_route(presentation)
        ok = route.euler == Fraction(0) and route.monodromy == name
        ok = ok and matrix_order(MONODROMY[name]) == max(presentation.alphas)
        report.check(f'fibrado euclidiano {name}', ok, str(route.as_dict()))


# --- Centralizadores ---

def _random_nontrivial(group, rng, max_length):
    while True:
        word = random_word(group, rng, rng.randint(1, max_length))
        if not word.is_identity:
            return word


@suite('centralizer')
def centralizer_suite(report, rng, samples=50, radius=None, max_length=4):
    radius = oracle_radius() if radius is None else radius
    for orders in ((2, 3), (2, 2, None)):
        group = free_product(orders)
        disagreements = []
        for _ in range(samples):
            g = _random_nontrivial(group, rng, max_length)
            comparison = centralizer_oracle(g, radius)
            if not comparison.agrees:
                disagreements.append(str(g))
        report.check(
            f'centralizadores en {group} (radio {radius})', not disagreements,
            f'{samples} elementos; desacuerdos: {disagreements[:5]}',
        )
    group = free_product((2, 3))
    root = parse_word('c1 c2', group)
    failures = []
    for d in range(1, 7):
        for e in range(1, 7):
            K, t_alpha = group.power(root, d), group.power(root, e)
            ctx = EvaluationContext(group=group, K=K)
            if not check_decomposition(t_alpha, decompose_power(t_alpha, ctx), ctx):
                failures.append((d, e))
    report.check('descomposición t(α^i) = K^j en Z2 * Z3 (1 <= d, e <= 6)', not failures, str(failures))


# --- Identidades del cálculo de lazos ---

def _loop_context():
    presentation = SeifertPresentation.from_invariants([(2, 1), (3, 1)], holes=1)
    group = seifert_group(presentation)
    K = parse_word('c1 c2', group)
    return EvaluationContext(
        group=group, K=K, in_irreducible_summand=True, fiber_orientation_preserving=True,
        spheres=(0, 1), alpha_sq=group.power(K, 2),
    )


@suite('loop-identities')
def loop_identities_suite(report, rng, cases=None, max_length=8):
    cases = random_cases() if cases is None else cases
    ctx = _loop_context()
    restricted = context_alphabet(ctx, kinds={LoopKind.GAMMA1, LoopKind.GAMMA2, LoopKind.GAMMA_S})
    full = context_alphabet(ctx)

    mismatches = 0
    for _ in range(cases):
        w = random_loop_word(rng, ctx, rng.randint(0, max_length), restricted)
        if delta(w) != delta_aslk(w) or delta(w) % 2:
            mismatches += 1
    report.check('δ = Δ_aslk en {γ₁, γ₂, γ_s}', not mismatches, f'{mismatches} de {cases}')

    mismatches = inconclusive = 0
    for _ in range(cases):
        w = random_loop_word(rng, ctx, rng.randint(0, max_length), full)
        identity = verify_identity(w)
        if delta(w) != delta_aslk_tilde(w) or identity.status is IdentityStatus.FAILS:
            mismatches += 1
        if isinstance(delta_aslk_tilde(w), Unavailable):
            inconclusive += 1
    report.check('δ = Δ̃_aslk con todos los generadores', not mismatches and not inconclusive,
                 f'{mismatches} diferencias, {inconclusive} sin valor, de {cases}')

    failures = 0
    group = ctx.group
    for _ in range(cases):
        u = random_loop_word(rng, ctx, rng.randint(0, max_length), full)
        v = random_loop_word(rng, ctx, rng.randint(0, max_length), full)
        uv = u * v
        if (
            delta(uv) != delta(u) + delta(v)
            or delta_aslk_tilde(uv) != delta_aslk_tilde(u) + delta_aslk_tilde(v)
            or delta(~u) != -delta(u)
            or t_value(uv) != group.multiply(t_value(u), t_value(v))
            or delta(cyclic_normal_form(uv)) != delta(uv)
        ):
            failures += 1
    report.check('leyes de homomorfismo y traza', not failures, f'{failures} de {cases}')

    _path_cases(report, rng, cases)


def _path_cases(report, rng, cases):
    group = free_product((2, 3))
    gamma_ctx = EvaluationContext(group=group, K=parse_word('c1 c2', group))
    failures = 0
    for _ in range(cases):
        crossings = []
        independent = 0
        for _ in range(rng.randint(0, 6)):
            raw = [(rng.choice(group.generators), rng.choice((1, -1, 2, 3)))
                   for _ in range(rng.randint(0, 6))]
            sign = rng.choice((1, -1))
            crossings.append(PathCrossing(sign, reduce(raw, group)))
            if psl2_is_identity(raw, group):
                independent += 2 * sign
        rec = PathRecord(tuple(crossings))
        total = sum(rec.signs)
        if (
            path_delta_aslk(rec) != 2 * total
            or path_delta_aslk(rec) != delta_aslk(make_loop_word([(GAMMA2, total)], gamma_ctx))
            or path_delta_aslk_tilde(rec, group) != independent
        ):
            failures += 1
    report.check('sumas de caminos Δ_aslk y Δ̃_aslk', not failures, f'{failures} de {cases}')


# --- Códigos de Gauss enmarcados ---

@suite('gauss')
def gauss_suite(report, rng, max_crossings=3, moves=10_000, walk_length=20):
    nonzero = checked = 0
    for code in enumerate_singular_codes(max_crossings, 2):
        checked += 1
        if vassiliev_defect(slk, code):
            nonzero += 1
    report.check(f'defecto de slk nulo con 2 puntos dobles (<= {max_crossings} cruces)',
                 not nonzero, f'{nonzero} de {checked} códigos')

    wrong = checked = 0
    for code in enumerate_singular_codes(max_crossings, 1):
        checked += 1
        entries = resolutions(code)
        if abs(vassiliev_defect(slk, code)) != 2 or len(entries) != 2 or sum(r.sign for r, _ in entries):
            wrong += 1
    report.check('defecto ±2 con 1 punto doble (slk de orden exactamente 1)',
                 not wrong, f'{wrong} de {checked} códigos')

    failures = []
    applied = 0
    while applied < moves:
        seed_code = rng.choice((TREFOIL, FIGURE_EIGHT))
        expected = slk(seed_code)
        for site, code in random_move_walk(seed_code, rng, min(walk_length, moves - applied)):
            applied += 1
            if validate(code) or slk(code) != expected or pushoff_linking(code) != expected:
                failures.append(f'{site.move.value} {site.action} {site.data}')
            if code.crossing_ids:
                crossing = rng.choice(code.crossing_ids)
                sign = code.passages[code.passages_of(crossing)[0]].sign
                if slk(switch_crossing(code, crossing)) - slk(code) != -2 * sign:
                    failures.append(f'cambio de cruce {crossing}')
    report.check(f'slk invariante en {applied} movimientos aleatorios', not failures, '; '.join(failures[:5]))


# --- Retículas fijas y centralizadores en ℤ²⋊ℤ ---

@suite('fixed-lattice')
def fixed_lattice_suite(report, rng, radius=10):
    C = MONODROMY['C']
    report.check('fixed_lattice(C, 1) = 0', fixed_lattice(C, 1) == ())
    report.check('fixed_lattice(C, 2) = 0', fixed_lattice(C, 2) == ())
    report.check('fixed_lattice(C, 3) = ℤ²', len(fixed_lattice(C, 3)) == 2)
    report.check('fixed_lattice(B, 2) = 0', fixed_lattice(MONODROMY['B'], 2) == ())
    disagreements = [
        f'{name}^{k}'
        for name, D in sorted(MONODROMY.items())
        for k in range(-6, 7)
        if not fixed_lattice_oracle(D, k, radius)
    ]
    report.check(f'fixed_lattice contra la caja [-{radius}, {radius}]²', not disagreements, str(disagreements))
    for K in (SemidirectElement((1, 0), 1), SemidirectElement((0, 0), 3), SemidirectElement((1, 0), 0)):
        description = centralizer_semidirect(K, C)
        mismatches = semidirect_centralizer_oracle(description)
        report.check(f'centralizador de {K.a}, f^{K.k} con C', not mismatches, str(mismatches[:5]))


# --- Clasificación de marcos ---

@suite('classify')
def classify_suite(report, rng):
    lens = Summand(SummandKind.LENS, lens=(5, 1))
    bundle = Summand(SummandKind.TORUS_BUNDLE, monodromy=MONODROMY['C'])
    s1xs2 = Summand(SummandKind.S1XS2)
    opaque = Summand(SummandKind.OPAQUE_IRREDUCIBLE)
    knot = KnotDescriptor()
    crossing = KnotDescriptor(crosses_nonseparating_sphere_once=True)
    cases = (
        (ConnectedSumDescriptor((lens, bundle)), knot, FramingCount.INFINITE),
        (ConnectedSumDescriptor((Summand(SummandKind.S3),)), knot, FramingCount.INFINITE),
        (ConnectedSumDescriptor((s1xs2, opaque)), crossing, FramingCount.EXACTLY_TWO),
        (ConnectedSumDescriptor((s1xs2, opaque)), knot, FramingCount.UNKNOWN),
        (ConnectedSumDescriptor((Summand(SummandKind.OPAQUE_PRIME), lens)), knot, FramingCount.UNKNOWN),
        (ConnectedSumDescriptor((opaque,), orientable=False),
         KnotDescriptor(orientation_reversing=True), FramingCount.EXACTLY_TWO),
    )
    for m, k, expected in cases:
        verdict = framing_classes(m, k)
        report.check(f'{m}: {expected.value}', verdict.count is expected, verdict.rule.value)
    classes = even_collapse_classes(range(-6, 7))
    report.check('colapso par = clases de paridad', [c.residue for c in classes] == [0, 1])
    report.check('paridad de spin (0, 1)', spin_parity_distinct(0, 1))
    separated = all(
        aslk_separates(i, j, ConnectedSumDescriptor((lens,)), knot)
        for i in range(-4, 5) for j in range(-4, 5) if i != j
    )
    report.check('aslk y paridad de spin separan marcos distintos', separated)
