import random
from fractions import Fraction

from django.test import SimpleTestCase
from sympy import ImmutableMatrix

from autoenlace.exceptions import (
    ClosedSeifertError,
    IdentityElementError,
    InvalidSeifertDataError,
)
from autoenlace.manifold_groups import (
    MONODROMY,
    Geometry,
    IntMatrix2,
    SeifertPresentation,
    SemidirectElement,
    SemidirectGroup,
    centralizer_semidirect,
    closed_seifert_route,
    euler_number,
    fixed_lattice,
    format_semidirect,
    lattice_contains,
    matrix_order,
    matrix_power,
    parse_semidirect,
    quotient_by_fiber,
    random_semidirect,
    seifert_group,
    semidirect_inverse,
    semidirect_mul,
    semidirect_power,
    solve_integer,
    torus_cover_liftable,
    triangle_classify,
)
from autoenlace.oracles import fixed_lattice_oracle, semidirect_centralizer_oracle
from autoenlace.words import format_word, parse_word

C = MONODROMY['C']


class SeifertTests(SimpleTestCase):

    def test_normaliza_beta(self):
        p = SeifertPresentation.from_invariants([(2, 3), (3, -1)], holes=1)
        self.assertEqual(p.fibers, ((2, 1), (3, 2)))
        self.assertEqual(p.twist, 0)

    def test_datos_invalidos(self):
        with self.assertRaises(InvalidSeifertDataError):
            SeifertPresentation.from_invariants([(1, 0)])
        with self.assertRaises(InvalidSeifertDataError):
            SeifertPresentation.from_invariants([(4, 2)])

    def test_grupo_con_borde(self):
        p = SeifertPresentation.from_invariants([(2, 1), (3, 1)], holes=2)
        group = seifert_group(p)
        self.assertEqual(group.symbols, ('c1', 'c2', 'd1'))
        self.assertEqual(format_word(parse_word('c1^2', group)), 'f')
        self.assertEqual(format_word(parse_word('c2^3', group)), 'f')
        self.assertEqual(str(quotient_by_fiber(p)), 'Z2 * Z3 * Z')

    def test_cerrado_no_tiene_presentacion_libre(self):
        p = SeifertPresentation.from_invariants([(2, 1), (3, 1)], holes=0)
        with self.assertRaises(ClosedSeifertError):
            seifert_group(p)

    def test_numero_de_euler_y_rutas(self):
        for pairs, name in (
            ([(2, 1), (3, -1), (6, -1)], 'A'),
            ([(2, 1), (4, -1), (4, -1)], 'B'),
            ([(3, 1), (3, 1), (3, -2)], 'C'),
        ):
            p = SeifertPresentation.from_invariants(pairs, holes=0)
            self.assertEqual(euler_number(p), Fraction(0))
            route = closed_seifert_route(p)
            self.assertEqual(route.route, 'triangle')
            self.assertIs(route.triangle.geometry, Geometry.EUCLIDEAN)
            self.assertEqual(route.monodromy, name)

    def test_rutas_cerradas(self):
        lens = SeifertPresentation.from_invariants([(2, 1), (3, 1)], holes=0)
        self.assertEqual(closed_seifert_route(lens).route, 'finite-cyclic')
        four = SeifertPresentation.from_invariants([(2, 1)] * 4, holes=0)
        self.assertEqual(closed_seifert_route(four).route, 'vertical-torus')


class TriangleTests(SimpleTestCase):

    def test_geometrias(self):
        self.assertIs(triangle_classify(2, 3, 5).geometry, Geometry.SPHERICAL)
        self.assertIs(triangle_classify(2, 3, 6).geometry, Geometry.EUCLIDEAN)
        self.assertIs(triangle_classify(2, 3, 7).geometry, Geometry.HYPERBOLIC)

    def test_euclidianos_hasta_doce(self):
        euclidean = {
            (r, s, t)
            for r in range(2, 13) for s in range(r, 13) for t in range(s, 13)
            if triangle_classify(r, s, t).geometry is Geometry.EUCLIDEAN
        }
        self.assertEqual(euclidean, {(2, 3, 6), (2, 4, 4), (3, 3, 3)})

    def test_indices_invalidos(self):
        with self.assertRaises(InvalidSeifertDataError):
            triangle_classify(1, 3, 5)


class MonodromyTests(SimpleTestCase):

    def test_ordenes(self):
        self.assertEqual(matrix_order(MONODROMY['A']), 6)
        self.assertEqual(matrix_order(MONODROMY['B']), 4)
        self.assertEqual(matrix_order(C), 3)
        self.assertIsNone(matrix_order(IntMatrix2(2, 1, 1, 1)))

    def test_suma_de_potencias_de_C(self):
        total = IntMatrix2.identity().to_sympy() + C.to_sympy() + matrix_power(C, 2).to_sympy()
        self.assertTrue(total.is_zero_matrix)

    def test_from_value(self):
        self.assertEqual(IntMatrix2.from_value([0, -1, 1, -1]), C)
        with self.assertRaises(InvalidSeifertDataError):
            IntMatrix2.from_value('Z')

    def test_reticula_fija_de_C(self):
        self.assertEqual(fixed_lattice(C, 1), ())
        self.assertEqual(fixed_lattice(C, 2), ())
        self.assertEqual(fixed_lattice(C, 3), ((1, 0), (0, 1)))
        for k in range(-4, 5):
            self.assertTrue(fixed_lattice_oracle(C, k, radius=6))

    def test_reticula_de_rango_uno(self):
        shear = IntMatrix2(1, 2, 0, 1)
        self.assertEqual(fixed_lattice(shear, 1), ((1, 0),))
        self.assertTrue(lattice_contains(((1, 0),), (5, 0)))
        self.assertFalse(lattice_contains(((1, 0),), (5, 1)))

    def test_solucion_entera_de_rango_uno(self):
        M = ImmutableMatrix([[2, 4], [1, 2]])
        x = solve_integer(M, (6, 3))
        self.assertEqual(M * ImmutableMatrix(x), ImmutableMatrix([6, 3]))
        self.assertIsNone(solve_integer(M, (6, 4)))
        self.assertIsNone(solve_integer(ImmutableMatrix([[2, 0], [0, 2]]), (1, 0)))


class SemidirectTests(SimpleTestCase):

    def test_cubo_sin_parte_de_reticula(self):
        rng = random.Random(3)
        for _ in range(100):
            a = (rng.randint(-20, 20), rng.randint(-20, 20))
            p = rng.choice((1, 2, 4, 5))
            cube = semidirect_power(SemidirectElement(a, p), 3, C)
            self.assertEqual(cube, SemidirectElement((0, 0), 3 * p))

    def test_leyes_de_grupo(self):
        rng = random.Random(11)
        for _ in range(50):
            g, h, k = (random_semidirect(rng) for _ in range(3))
            self.assertEqual(
                semidirect_mul(semidirect_mul(g, h, C), k, C),
                semidirect_mul(g, semidirect_mul(h, k, C), C),
            )
            self.assertTrue(semidirect_mul(g, semidirect_inverse(g, C), C).is_identity)

    def test_sintaxis(self):
        g = parse_semidirect('m l^2 f', C)
        self.assertEqual(g, SemidirectElement((1, 2), 1))
        self.assertEqual(format_semidirect(g), 'm l^2 f')
        self.assertEqual(format_semidirect(SemidirectElement.identity()), 'e')

    def test_protocolo_de_grupo(self):
        group = SemidirectGroup(C)
        self.assertEqual(group.order, 3)
        self.assertEqual(group.power(group.fiber(), 3), SemidirectElement((0, 0), 3))
        self.assertEqual(group.format(group.generator('l')), 'l')

    def test_centralizador_contra_oraculo(self):
        for K in (SemidirectElement((1, 0), 1), SemidirectElement((0, 0), 3), SemidirectElement((2, -1), 2)):
            description = centralizer_semidirect(K, C)
            self.assertTrue(description.contains(K))
            self.assertEqual(semidirect_centralizer_oracle(description, radius=2, fiber_radius=4), [])

    def test_centralizador_de_la_identidad(self):
        with self.assertRaises(IdentityElementError):
            centralizer_semidirect(SemidirectElement.identity(), C)

    def test_levantamiento_al_toro(self):
        self.assertTrue(torus_cover_liftable(SemidirectElement((1, 0), 3), C))
        self.assertFalse(torus_cover_liftable(SemidirectElement((1, 0), 1), C))
