import random

from django.test import SimpleTestCase

from autoenlace.exceptions import InvalidGaussCodeError, MoveNotApplicableError
from autoenlace.framed_gauss import (
    FIGURE_EIGHT,
    TREFOIL,
    UNKNOT,
    LinkPassage,
    Move,
    MoveSite,
    SingularGaussCode,
    apply_move,
    enumerate_singular_codes,
    ensure_valid,
    format_gauss,
    linking_number,
    move_sites,
    parse_gauss,
    pushoff_diagram,
    pushoff_linking,
    random_move_walk,
    resolutions,
    slk,
    switch_crossing,
    validate,
    vassiliev_defect,
    writhe,
)


class GaussCodeTests(SimpleTestCase):

    def test_formato(self):
        self.assertEqual(format_gauss(TREFOIL), 'O1+ U2+ O3+ U1+ O2+ U3+ ; framing=0')
        self.assertEqual(format_gauss(UNKNOT), '; framing=0')
        self.assertEqual(parse_gauss('O1- U1- ; framing=3').framing, 3)

    def test_invariantes_de_semillas(self):
        self.assertEqual(writhe(TREFOIL), 3)
        self.assertEqual(slk(TREFOIL), 3)
        self.assertEqual(slk(FIGURE_EIGHT), 0)
        self.assertEqual(slk(parse_gauss('O1+ U2+ O3+ U1+ O2+ U3+ ; framing=-2')), 1)

    def test_enlace_con_la_copia(self):
        for code in (TREFOIL, FIGURE_EIGHT, parse_gauss('O1- U1- ; framing=4')):
            self.assertEqual(pushoff_linking(code), slk(code))

    def test_diagrama_duplicado(self):
        knot, copy = pushoff_diagram(parse_gauss('O1+ U2+ O3+ U1+ O2+ U3+ ; framing=2'))
        self.assertEqual((len(knot), len(copy)), (16, 16))
        # el broche de giro va primero; luego O1+ cruza la copia de abajo antes que K
        self.assertEqual(knot[4].crossing, (1, 'K', 'P'))
        self.assertEqual(knot[5].crossing, (1, 'K', 'K'))
        crossings = {p.crossing for p in knot + copy}
        self.assertEqual(len(crossings), 4 * 3 + 2 * 2)

    def test_enlace_de_codigo_virtual(self):
        code = parse_gauss('O1+ U2- O2- U1+ ; framing=3')
        self.assertEqual(pushoff_linking(code), 3)
        self.assertEqual(pushoff_linking(switch_crossing(code, 2)), 5)

    def test_cuentas_por_ambos_lados(self):
        first = (LinkPassage('x', True, 1), LinkPassage('y', False, -1))
        second = (LinkPassage('x', False, 1), LinkPassage('y', True, -1))
        with self.assertRaises(InvalidGaussCodeError):
            linking_number(first, second)
        balanced = (LinkPassage('x', False, 1), LinkPassage('y', True, 1))
        self.assertEqual(linking_number((LinkPassage('x', True, 1), LinkPassage('y', False, 1)), balanced), 1)
        with self.assertRaises(InvalidGaussCodeError):
            linking_number(first[:1], second)

    def test_diagnosticos(self):
        self.assertTrue(any('over/over' in d for d in validate(parse_gauss('O1+ O1+'))))
        self.assertTrue(any('signos distintos' in d for d in validate(parse_gauss('O1+ U1-'))))
        self.assertTrue(any('sin pareja' in d for d in validate(parse_gauss('O1+'))))
        self.assertTrue(validate(parse_gauss('D1b D1a')))
        with self.assertRaises(InvalidGaussCodeError) as ctx:
            ensure_valid(parse_gauss('O1+ O1+'))
        self.assertTrue(ctx.exception.diagnostics)

    def test_tokens_ilegibles(self):
        with self.assertRaises(InvalidGaussCodeError):
            parse_gauss('X1')
        with self.assertRaises(InvalidGaussCodeError):
            parse_gauss('O1+ U1+ ; marco=2')

    def test_cambio_de_cruce(self):
        self.assertEqual(slk(switch_crossing(TREFOIL, 1)), 1)
        with self.assertRaises(MoveNotApplicableError):
            switch_crossing(TREFOIL, 9)


class VassilievTests(SimpleTestCase):

    def test_un_punto_doble(self):
        code = parse_gauss('O1+ D1a U1+ D1b')
        self.assertIsInstance(code, SingularGaussCode)
        entries = resolutions(code)
        self.assertEqual(len(entries), 2)
        self.assertEqual(vassiliev_defect(slk, code), 2)

    def test_orden_uno_por_enumeracion(self):
        for code in enumerate_singular_codes(1, 1):
            self.assertEqual(abs(vassiliev_defect(slk, code)), 2, format_gauss(code))
        for code in enumerate_singular_codes(1, 2):
            self.assertEqual(vassiliev_defect(slk, code), 0, format_gauss(code))

    def test_sin_puntos_dobles(self):
        with self.assertRaises(InvalidGaussCodeError):
            resolutions(TREFOIL)


class MoveTests(SimpleTestCase):

    def test_rizo_ida_y_vuelta(self):
        kinked = apply_move(TREFOIL, Move.R1, MoveSite(Move.R1, 'insert', (0, 1, True)))
        self.assertEqual(len(kinked.passages), 8)
        self.assertEqual(kinked.framing, -1)
        self.assertEqual(slk(kinked), slk(TREFOIL))
        restored = apply_move(kinked, Move.R1, MoveSite(Move.R1, 'delete', (4,)))
        self.assertEqual(restored, TREFOIL)

    def test_movimiento_no_aplicable(self):
        with self.assertRaises(MoveNotApplicableError):
            apply_move(TREFOIL, Move.R1, MoveSite(Move.R1, 'delete', (1,)))
        with self.assertRaises(MoveNotApplicableError):
            apply_move(TREFOIL, Move.R2, MoveSite(Move.R1, 'delete', (1,)))

    def test_sitios(self):
        self.assertTrue(move_sites(TREFOIL, Move.R1))
        self.assertTrue(move_sites(UNKNOT, Move.R2))

    def test_deslizamiento_de_triangulo(self):
        # O1 O2 arriba, U1 O3 en medio, U2 U3 abajo
        code = parse_gauss('O1+ O2+ U1+ O3+ U2+ U3+ ; framing=1')
        sites = move_sites(code, Move.R3)
        self.assertIn(MoveSite(Move.R3, 'slide', (1, 2, 3)), sites)
        for site in sites:
            slid = apply_move(code, Move.R3, site)
            self.assertEqual(validate(slid), [], site)
            self.assertEqual(slk(slid), slk(code), site)
            self.assertEqual(pushoff_linking(slid), slk(code), site)
        slid = apply_move(code, Move.R3, MoveSite(Move.R3, 'slide', (1, 2, 3)))
        self.assertEqual(format_gauss(slid), 'O2+ O1+ O3+ U1+ U3+ U2+ ; framing=1')
        self.assertEqual(apply_move(slid, Move.R3, MoveSite(Move.R3, 'slide', (1, 2, 3))), code)

    def test_caminatas_aleatorias(self):
        rng = random.Random(2)
        for seed_code in (TREFOIL, FIGURE_EIGHT):
            expected = slk(seed_code)
            for site, code in random_move_walk(seed_code, rng, 300):
                self.assertEqual(validate(code), [], site)
                self.assertEqual(slk(code), expected, site)
                self.assertEqual(pushoff_linking(code), expected, site)
