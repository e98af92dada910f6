import random

from django.test import SimpleTestCase

from autoenlace.exceptions import (
    InconsistentDescriptorError,
    NotInCentralizerError,
    UnsupportedContextError,
    WordSyntaxError,
)
from autoenlace.loop_calculus import (
    Decomposition,
    EvaluationContext,
    IdentityStatus,
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
    evaluate,
    parse_loop_word,
    path_delta_aslk,
    path_delta_aslk_tilde,
    random_loop_word,
    t_value,
    verify_identity,
)
from autoenlace.manifold_groups import (
    MONODROMY,
    IntMatrix2,
    SeifertPresentation,
    SemidirectElement,
    SemidirectGroup,
    seifert_group,
)
from autoenlace.words import format_word, free_product, parse_word


def trivial_context():
    group = free_product(())
    return EvaluationContext(group=group, K=group.identity(), contractible=True)


def seifert_context(**flags):
    group = seifert_group(SeifertPresentation.from_invariants([(2, 1), (3, 1)], holes=1))
    K = parse_word('c1 c2', group)
    return EvaluationContext(group=group, K=K, spheres=(0, 1), alpha_sq=group.power(K, 2), **flags)


class HomomorphismTests(SimpleTestCase):

    def test_doble_giro(self):
        w = parse_loop_word('g2^3', trivial_context())
        self.assertEqual(evaluate(w).as_dict(), {'delta': 6, 'aslk': 6, 'aslk_tilde': 6})

    def test_lazo_de_fibra_sin_aslk(self):
        ctx = seifert_context(fiber_orientation_preserving=True)
        w = parse_loop_word('g3(0)', ctx)
        self.assertEqual(delta(w), 0)
        self.assertIsInstance(delta_aslk(w), Unavailable)
        self.assertEqual(delta_aslk_tilde(w), 0)

    def test_compuertas_de_aslk_tilde(self):
        ctx = seifert_context()
        self.assertIsInstance(delta_aslk_tilde(parse_loop_word('g3', ctx)), Unavailable)
        self.assertIsInstance(delta_aslk_tilde(parse_loop_word('gs(1)', ctx)), Unavailable)
        self.assertEqual(delta_aslk(parse_loop_word('gs(1)', ctx)), 0)
        irreducible = seifert_context(in_irreducible_summand=True)
        self.assertEqual(delta_aslk_tilde(parse_loop_word('gs(1) g2', irreducible)), 2)

    def test_generadores_fuera_del_contexto(self):
        with self.assertRaises(UnsupportedContextError):
            parse_loop_word('gs(5)', seifert_context())
        with self.assertRaises(UnsupportedContextError):
            parse_loop_word('g3(0)', trivial_context())
        with self.assertRaises(UnsupportedContextError):
            parse_loop_word('gA2', trivial_context())

    def test_sintaxis(self):
        ctx = seifert_context()
        self.assertEqual(str(parse_loop_word('g1 g1 g2^-1 e', ctx)), 'g1^2 g2^-1')
        for text in ('gs', 'g1(2)', 'gx'):
            with self.assertRaises(WordSyntaxError):
                parse_loop_word(text, ctx)

    def test_identidad_y_homomorfismo_aleatorios(self):
        ctx = seifert_context(in_irreducible_summand=True, fiber_orientation_preserving=True)
        rng = random.Random(5)
        alphabet = context_alphabet(ctx)
        for _ in range(200):
            u = random_loop_word(rng, ctx, rng.randint(0, 6), alphabet)
            v = random_loop_word(rng, ctx, rng.randint(0, 6), alphabet)
            self.assertEqual(delta(u * v), delta(u) + delta(v))
            self.assertEqual(delta(u), delta_aslk_tilde(u))
            self.assertEqual(delta(u) % 2, 0)
            self.assertEqual(delta(cyclic_normal_form(u)), delta(u))
            self.assertIsNot(verify_identity(u).status, IdentityStatus.FAILS)

    def test_reporte_de_identidad(self):
        report = verify_identity(parse_loop_word('g2 g1', trivial_context()))
        self.assertIs(report.status, IdentityStatus.HOLDS)
        self.assertEqual(report.compared, ('aslk', 'aslk_tilde'))
        inconclusive = verify_identity(parse_loop_word('g3', seifert_context()))
        self.assertIs(inconclusive.status, IdentityStatus.INCONCLUSIVE)


class TraceTests(SimpleTestCase):

    def test_trazas(self):
        ctx = seifert_context()
        group = ctx.group
        self.assertEqual(t_value(parse_loop_word('g1^2', ctx)), group.power(ctx.K, 2))
        self.assertEqual(format_word(t_value(parse_loop_word('g3', ctx))), 'f')
        self.assertEqual(t_value(parse_loop_word('gA2', ctx)), ctx.alpha_sq)
        self.assertTrue(t_value(parse_loop_word('g2 gs(0)', ctx)).is_identity)

    def test_fibraciones_del_toro(self):
        group = SemidirectGroup(IntMatrix2.identity())
        ctx = EvaluationContext(group=group, K=SemidirectElement((1, 0), 0))
        self.assertEqual(ctx.fibrations(), (0, 1, 2))
        w = parse_loop_word('g3(1)', ctx)
        self.assertEqual(t_value(w), SemidirectElement((0, 1), 0))
        self.assertEqual(delta_aslk_tilde(w), 0)

    def test_contexto_inconsistente(self):
        group = free_product((2, 3))
        with self.assertRaises(InconsistentDescriptorError):
            EvaluationContext(group=group, K=group.identity())
        with self.assertRaises(InconsistentDescriptorError):
            EvaluationContext(group=group, K=group.generator('c1'), contractible=True)


class PathRecordTests(SimpleTestCase):

    def test_suma_filtrada_por_contractibilidad(self):
        group = free_product((2, 3))
        record = PathRecord((
            PathCrossing(1, group.identity()),
            PathCrossing(-1, group.generator('c1')),
        ))
        self.assertEqual(path_delta_aslk(record), 0)
        self.assertEqual(path_delta_aslk_tilde(record, group), 2)

    def test_signo_invalido(self):
        group = free_product((2, 3))
        with self.assertRaises(InconsistentDescriptorError):
            PathCrossing(2, group.identity())


class DecompositionTests(SimpleTestCase):

    def setUp(self):
        self.group = free_product((2, 3))
        self.root = parse_word('c1 c2', self.group)

    def test_familia_de_potencias(self):
        for d in range(1, 7):
            for e in range(1, 7):
                ctx = EvaluationContext(group=self.group, K=self.group.power(self.root, d))
                t_alpha = self.group.power(self.root, e)
                result = decompose_power(t_alpha, ctx)
                self.assertTrue(check_decomposition(t_alpha, result, ctx), (d, e, result))

    def test_casos_directos(self):
        ctx = EvaluationContext(group=self.group, K=self.group.power(self.root, 2))
        self.assertEqual(decompose_power(self.group.power(self.root, 3), ctx), Decomposition(2, 3, 0))
        self.assertEqual(decompose_power(ctx.K, ctx), Decomposition(1, 1, 0))
        self.assertEqual(decompose_power(self.group.identity(), ctx), Decomposition(1, 0, 0))

    def test_no_conmuta(self):
        ctx = EvaluationContext(group=self.group, K=self.root)
        with self.assertRaises(NotInCentralizerError):
            decompose_power(self.group.generator('c1'), ctx)

    def test_fibrado_con_fibra(self):
        ctx = seifert_context()
        group = ctx.group
        t_alpha = group.multiply(ctx.K, group.fiber())
        result = decompose_power(t_alpha, ctx)
        self.assertEqual(result, Decomposition(1, 1, 1))
        self.assertTrue(check_decomposition(t_alpha, result, ctx))

    def test_semidirecto(self):
        group = SemidirectGroup(MONODROMY['C'])
        ctx = EvaluationContext(group=group, K=SemidirectElement((1, 0), 1))
        t_alpha = SemidirectElement((0, 0), 3)
        result = decompose_power(t_alpha, ctx)
        self.assertEqual(result, Decomposition(1, 3, 0))
        self.assertTrue(check_decomposition(t_alpha, result, ctx))
