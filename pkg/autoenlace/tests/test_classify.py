from django.test import SimpleTestCase

from autoenlace.classify import (
    FramingCount,
    KnotDescriptor,
    Rule,
    aslk_gap,
    aslk_separates,
    even_collapse_classes,
    framing_class_of,
    framing_classes,
    spin_parity_distinct,
)
from autoenlace.exceptions import InconsistentDescriptorError
from autoenlace.loop_calculus import Unavailable
from autoenlace.manifold_groups import MONODROMY, ConnectedSumDescriptor, Summand, SummandKind

LENS = Summand(SummandKind.LENS, lens=(7, 2))
BUNDLE = Summand(SummandKind.TORUS_BUNDLE, monodromy=MONODROMY['C'])
S1XS2 = Summand(SummandKind.S1XS2)
OPAQUE = Summand(SummandKind.OPAQUE_IRREDUCIBLE)


class FramingClassesTests(SimpleTestCase):

    def test_sin_esfera_no_separante(self):
        verdict = framing_classes(ConnectedSumDescriptor((LENS, BUNDLE)), KnotDescriptor())
        self.assertIs(verdict.count, FramingCount.INFINITE)
        self.assertIs(verdict.rule, Rule.NO_NONSEPARATING_SPHERE)
        self.assertEqual(verdict.as_dict()['count'], 'infinite')

    def test_esfera_cruzada_una_vez(self):
        verdict = framing_classes(
            ConnectedSumDescriptor((S1XS2,)), KnotDescriptor(crosses_nonseparating_sphere_once=True),
        )
        self.assertIs(verdict.count, FramingCount.EXACTLY_TWO)

    def test_lazo_que_invierte_la_orientacion(self):
        verdict = framing_classes(
            ConnectedSumDescriptor((OPAQUE,), orientable=False), KnotDescriptor(orientation_reversing=True),
        )
        self.assertIs(verdict.count, FramingCount.EXACTLY_TWO)
        self.assertIs(verdict.rule, Rule.ORIENTATION_REVERSING_LOOP)

    def test_cubriente_doble_orientable(self):
        cover = ConnectedSumDescriptor((OPAQUE, OPAQUE))
        m = ConnectedSumDescriptor((OPAQUE,), orientable=False, double_cover=cover)
        self.assertIs(framing_classes(m, KnotDescriptor()).rule, Rule.ORIENTABLE_DOUBLE_COVER)

    def test_caso_abierto(self):
        verdict = framing_classes(ConnectedSumDescriptor((S1XS2, OPAQUE)), KnotDescriptor())
        self.assertIs(verdict.count, FramingCount.UNKNOWN)
        self.assertIs(verdict.rule, Rule.OPEN_CASE)

    def test_sumandos_sin_s1xs2_son_infinitos(self):
        s3 = Summand(SummandKind.S3)
        for summands in ((LENS,), (BUNDLE,), (s3,), (LENS, BUNDLE, OPAQUE)):
            verdict = framing_classes(ConnectedSumDescriptor(summands), KnotDescriptor(pi1='c1'))
            self.assertIs(verdict.count, FramingCount.INFINITE)

    def test_primo_opaco_puede_ser_s1xs2(self):
        prime = Summand(SummandKind.OPAQUE_PRIME)
        verdict = framing_classes(ConnectedSumDescriptor((prime, LENS)), KnotDescriptor())
        self.assertIs(verdict.count, FramingCount.UNKNOWN)
        self.assertIs(verdict.rule, Rule.OPEN_CASE)
        crossing = framing_classes(
            ConnectedSumDescriptor((prime,)), KnotDescriptor(crosses_nonseparating_sphere_once=True),
        )
        self.assertIs(crossing.count, FramingCount.EXACTLY_TWO)
        cover = ConnectedSumDescriptor((prime,))
        m = ConnectedSumDescriptor((OPAQUE,), orientable=False, double_cover=cover)
        self.assertIs(framing_classes(m, KnotDescriptor()).rule, Rule.OPEN_CASE)

    def test_descriptores_inconsistentes(self):
        with self.assertRaises(InconsistentDescriptorError):
            framing_classes(
                ConnectedSumDescriptor((LENS,)), KnotDescriptor(crosses_nonseparating_sphere_once=True),
            )
        with self.assertRaises(InconsistentDescriptorError):
            framing_classes(ConnectedSumDescriptor((LENS,)), KnotDescriptor(orientation_reversing=True))
        with self.assertRaises(InconsistentDescriptorError):
            framing_classes(
                ConnectedSumDescriptor((LENS,), double_cover=ConnectedSumDescriptor((LENS,))),
                KnotDescriptor(),
            )


class ParityTests(SimpleTestCase):

    def test_paridad_de_spin(self):
        self.assertTrue(spin_parity_distinct(0, 1))
        self.assertFalse(spin_parity_distinct(0, 2))
        for i in range(-5, 6):
            for j in range(-5, 6):
                self.assertEqual(spin_parity_distinct(i, j), spin_parity_distinct(j, i))
                self.assertEqual(spin_parity_distinct(i, j), spin_parity_distinct(i + 7, j + 7))
                self.assertEqual(spin_parity_distinct(i, j), (i - j) % 2 != 0)

    def test_colapso_par(self):
        classes = even_collapse_classes(range(-4, 5))
        self.assertEqual([c.residue for c in classes], [0, 1])
        self.assertEqual(framing_class_of(3, classes), 1)
        self.assertEqual(framing_class_of(-4, classes), 0)
        self.assertIsNone(framing_class_of(9, classes))
        with self.assertRaises(InconsistentDescriptorError):
            even_collapse_classes(range(3), step=3)

    def test_brecha_de_aslk(self):
        self.assertEqual(aslk_gap(0, 4), 4)
        self.assertEqual(aslk_gap(3, -1), -4)
        with self.assertRaises(InconsistentDescriptorError):
            aslk_gap(0, 1)

    def test_separacion(self):
        m = ConnectedSumDescriptor((LENS,))
        self.assertTrue(aslk_separates(0, 2, m, KnotDescriptor()))
        self.assertFalse(aslk_separates(2, 2, m, KnotDescriptor()))
        self.assertIs(aslk_separates(0, 3, m, KnotDescriptor()), True)
        self.assertIs(aslk_separates(1, 0, ConnectedSumDescriptor((S1XS2,)), KnotDescriptor()), True)
        open_case = aslk_separates(0, 2, ConnectedSumDescriptor((S1XS2,)), KnotDescriptor())
        self.assertIsInstance(open_case, Unavailable)
