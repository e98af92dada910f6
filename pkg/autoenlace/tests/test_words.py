import random

from django.test import SimpleTestCase

from autoenlace.exceptions import (
    ContextMismatchError,
    ExponentOverflowError,
    IdentityElementError,
    TorsionElementError,
    UnknownGeneratorError,
    UnsupportedContextError,
    WordSyntaxError,
)
from autoenlace.words import (
    CentralizerShape,
    are_conjugate,
    centralizer_free_product,
    checked,
    conjugate,
    cyclic_reduce,
    fiber_extension,
    fiber_normal_form,
    format_word,
    free_group,
    free_product,
    is_conjugate_into_factor,
    parse_word,
    primitive_root,
    project_to_base,
    random_word,
    reduce,
)


class NormalFormTests(SimpleTestCase):

    def setUp(self):
        self.G = free_product((2, 3))
        self.F = free_group(('a', 'b'))

    def test_formato_y_lectura(self):
        self.assertEqual(format_word(parse_word('c1 c2', self.G)), 'c1 c2')
        self.assertEqual(format_word(parse_word('c1^3', self.G)), 'c1')
        self.assertEqual(format_word(parse_word('c2^-1', self.G)), 'c2^2')
        self.assertEqual(format_word(parse_word('ab', self.F)), 'a b')
        self.assertEqual(format_word(parse_word('e', self.G)), 'e')

    def test_exponentes_finitos_se_reducen(self):
        c1 = self.G.generator('c1')
        self.assertTrue((c1 * c1).is_identity)
        self.assertTrue((self.G.generator('c2') ** 3).is_identity)

    def test_inverso(self):
        u = parse_word('a b^2', self.F)
        self.assertEqual(format_word(~u), 'b^-2 a^-1')
        self.assertTrue((u * ~u).is_identity)

    def test_errores_de_sintaxis(self):
        with self.assertRaises(WordSyntaxError):
            parse_word('c1^x', self.G)
        with self.assertRaises(WordSyntaxError):
            parse_word('z', self.G)

    def test_grupos_distintos(self):
        with self.assertRaises(ContextMismatchError):
            self.G.generator('c1') * self.F.generator('a')

    def test_desborde(self):
        with self.assertRaises(ExponentOverflowError):
            checked(2 ** 63)

    def test_leyes_de_grupo_aleatorias(self):
        rng = random.Random(7)
        for group in (self.G, free_product((2, 2, None)), self.F):
            for _ in range(50):
                u, v, w = (random_word(group, rng, rng.randint(0, 6)) for _ in range(3))
                self.assertEqual((u * v) * w, u * (v * w))
                self.assertTrue((u * ~u).is_identity)
                self.assertEqual(u * group.identity(), u)

    def test_reduccion_idempotente(self):
        rng = random.Random(8)
        for group in (self.G, self.F, fiber_extension(self.G, twists=(1, 1))):
            for _ in range(50):
                w = random_word(group, rng, rng.randint(0, 8))
                self.assertEqual(reduce(w.letters, group), w)


class FiberExtensionTests(SimpleTestCase):

    def setUp(self):
        self.base = free_product((2, 3))
        self.S = fiber_extension(self.base, twists=(1, 1))

    def test_relacion_de_torsion(self):
        self.assertEqual(format_word(parse_word('c1 c1', self.S)), 'f')
        self.assertEqual(format_word(parse_word('c2^3', self.S)), 'f')

    def test_fibra_a_la_derecha(self):
        self.assertEqual(format_word(parse_word('f c1', self.S)), 'c1 f')

    def test_orientacion_invertida(self):
        twisted = fiber_extension(free_group(('a',)), orientation=(-1,))
        self.assertEqual(format_word(parse_word('f a', twisted)), 'a f^-1')

    def test_forma_normal_que_invierte_la_fibra(self):
        twisted = fiber_extension(free_group(('g',)), orientation=(-1,))
        base_part, k = fiber_normal_form(parse_word('f g f', twisted))
        self.assertEqual((format_word(base_part), k), ('g', 0))
        base_part, k = fiber_normal_form(parse_word('g f^2 g', twisted))
        self.assertEqual((format_word(base_part), k), ('g^2', -2))

    def test_reensamblado_y_producto_por_piezas(self):
        twisted = fiber_extension(free_product((4, None)), orientation=(-1, -1))
        fiber = twisted.fiber()
        rng = random.Random(12)
        for _ in range(100):
            pieces = [
                parse_word(f"{rng.choice(('c1', 'c2', 'f'))}^{rng.randint(-5, 5)}", twisted)
                for _ in range(rng.randint(1, 6))
            ]
            w = twisted.identity()
            for piece in pieces:
                w = w * piece
            letters = [letter for piece in pieces for letter in piece.letters]
            self.assertEqual(reduce(letters, twisted), w)
            base_part, k = fiber_normal_form(w)
            self.assertEqual(base_part * fiber ** k, w)

    def test_caracter_de_orientacion_inconsistente(self):
        with self.assertRaises(UnknownGeneratorError):
            fiber_extension(free_product((3,)), orientation=(-1,))
        with self.assertRaises(UnknownGeneratorError):
            fiber_extension(free_product((2,)), orientation=(-1,), twists=(1,))
        fiber_extension(free_product((2, 3)), orientation=(-1, 1), twists=(0, 1))

    def test_forma_normal_de_fibra_y_proyeccion(self):
        w = parse_word('c1 c2 f^3', self.S)
        base_part, k = fiber_normal_form(w)
        self.assertEqual(k, 3)
        self.assertEqual(format_word(base_part), 'c1 c2')
        self.assertEqual(project_to_base(w), parse_word('c1 c2', self.base))

    def test_proyeccion_fuera_de_extension(self):
        with self.assertRaises(UnsupportedContextError):
            project_to_base(self.base.generator('c1'))


class ConjugacyTests(SimpleTestCase):

    def setUp(self):
        self.G = free_product((2, 3))
        self.F = free_group(('a', 'b'))

    def test_reduccion_ciclica(self):
        w = parse_word('a b a^-1', self.F)
        core, conjugator = cyclic_reduce(w)
        self.assertEqual(format_word(core), 'b')
        self.assertEqual(conjugate(core, conjugator), w)

    def test_conjugados_por_rotacion(self):
        u = parse_word('a b', self.F)
        v = parse_word('b a', self.F)
        h = are_conjugate(u, v)
        self.assertIsNotNone(h)
        self.assertEqual(conjugate(u, h), v)
        self.assertIsNone(are_conjugate(self.F.generator('a'), self.F.generator('b')))

    def test_raiz_primitiva(self):
        root, exponent = primitive_root(parse_word('a b a b', self.F))
        self.assertEqual(format_word(root), 'a b')
        self.assertEqual(exponent, 2)
        with self.assertRaises(TorsionElementError):
            primitive_root(self.G.generator('c1'))

    def test_conjugado_a_un_factor(self):
        factor, conjugator = is_conjugate_into_factor(parse_word('c2 c1 c2^2', self.G))
        self.assertEqual(factor, 0)
        self.assertEqual(conjugate(self.G.generator('c1'), conjugator), parse_word('c2 c1 c2^2', self.G))
        self.assertIsNone(is_conjugate_into_factor(parse_word('c1 c2', self.G)))
        self.assertIsNone(is_conjugate_into_factor(self.G.identity()))


class CentralizerTests(SimpleTestCase):

    def setUp(self):
        self.G = free_product((2, 3))

    def test_caso_ciclico_infinito(self):
        description = centralizer_free_product(parse_word('c1 c2', self.G))
        self.assertIs(description.shape, CentralizerShape.INFINITE_CYCLIC)
        self.assertEqual(format_word(description.root), 'c1 c2')
        self.assertEqual(description.certificate()['shape'], 'infinite-cyclic')

    def test_potencia_comparte_raiz(self):
        g = parse_word('c1 c2', self.G) ** 3
        description = centralizer_free_product(g)
        self.assertEqual(description.root_exponent, 3)
        self.assertTrue(description.contains(parse_word('c1 c2', self.G)))
        self.assertEqual(description.exponent_of(parse_word('c2^2 c1', self.G)), -1)
        self.assertFalse(description.contains(self.G.generator('c1')))

    def test_factor_conjugado(self):
        description = centralizer_free_product(self.G.generator('c1'))
        self.assertIs(description.shape, CentralizerShape.CONJUGATED_FACTOR)
        self.assertEqual(description.factor, 0)
        self.assertEqual([format_word(g) for g in description.generators()], ['c1'])
        self.assertTrue(description.contains(self.G.generator('c1')))
        self.assertFalse(description.contains(self.G.generator('c2')))

    def test_identidad(self):
        with self.assertRaises(IdentityElementError):
            centralizer_free_product(self.G.identity())

    def test_muestras_conmutan(self):
        for text in ('c1 c2', 'c2', 'c1 c2 c1 c2^2'):
            g = parse_word(text, self.G)
            for h in centralizer_free_product(g).sample():
                self.assertEqual(g * h, h * g)
