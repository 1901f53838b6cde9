import unittest

import numpy as np

from ringlab.constructions import (
    DorrohAction, DorrohRing, MatrixRing, MatrixShape, NagataRing,
    NonUnitalCarrier, TrivialExtension, closure, closure_ring, corner,
    dorroh_product, elementary, iso_candidate, matrix_ring, shape_soundness,
    trivial_extension, verify_iso
)
from ringlab.endo import SwapEndo, TableEndo
from ringlab.errors import ConstructionError, ElementError
from ringlab.rings import IntegersMod, ProductRing

from tests import mockrings


Z2 = IntegersMod(2)


class MatrixShapeTest(unittest.TestCase):
    def test_sizes(self):
        cases = [
            (MatrixShape.full(2), 16, 'M(2, Z2)'),
            (MatrixShape.upper_triangular(3), 64, 'T(3, Z2)'),
            (MatrixShape.constant_diagonal(3), 16, 'D(3, Z2)'),
            (MatrixShape.banded(3), 8, 'V(3, Z2)'),
            (MatrixShape.s3(), 32, 'S3(Z2)'),
            (MatrixShape.s4(), 256, 'S4(Z2)'),
        ]
        for shape, size, expr in cases:
            ring = MatrixRing(shape, Z2)
            self.assertEqual(len(ring), size)
            self.assertEqual(ring.id, expr)

    def test_factory(self):
        ring = matrix_ring(MatrixShape.upper_triangular(2), Z2)
        self.assertIsInstance(ring, MatrixRing)
        self.assertEqual(ring.id, 'T(2, Z2)')

    def test_invalid_order(self):
        with self.assertRaises(ConstructionError) as context:
            MatrixShape.full(0)
        self.assertEqual(
            'Matrix order must be positive, got 0', str(context.exception)
        )

    def test_invalid_blocks(self):
        with self.assertRaises(ConstructionError):
            MatrixShape(3, upper=True, blocks=[[0, 1]])

    def test_from_tag(self):
        self.assertEqual(MatrixShape.from_tag('D', 4).blocks, ((0, 1, 2, 3),))
        self.assertEqual(MatrixShape.from_tag('S4').n, 4)
        with self.assertRaises(ConstructionError) as context:
            MatrixShape.from_tag('Q', 2)
        self.assertEqual(
            'Unknown matrix shape `Q`', str(context.exception)
        )

    def test_band_entries(self):
        ring = MatrixRing(MatrixShape.banded(3), Z2)
        x = ring._from_free([1, 0, 1])
        self.assertEqual(x, ((1, 0, 1), (0, 1, 0), (0, 0, 1)))
        self.assertEqual(
            ring.element_at(ring._index_of(x)).payload, x
        )

    def test_soundness(self):
        shape_soundness(MatrixRing(MatrixShape.s3(), Z2))
        shape_soundness(MatrixRing(MatrixShape.banded(3), Z2))
        # full 2x2 matrices with equal diagonal entries are not closed
        loose = MatrixShape(2, upper=False, blocks=[[0, 1]], tag='X')
        with self.assertRaises(ConstructionError) as context:
            shape_soundness(MatrixRing(loose, Z2))
        self.assertIn('leaves the shape of `X(2, Z2)`', str(context.exception))


class MatrixRingTest(unittest.TestCase):
    def test_literals(self):
        ring = mockrings.t2z2()
        a = ring.parse('[[1, 1], [0, 0]]')
        self.assertEqual(str(a * a), '[[1, 1], [0, 0]]')
        with self.assertRaises(ElementError) as context:
            ring.parse('[[0, 0], [1, 0]]')
        self.assertEqual(
            '[[0, 0], [1, 0]] is not an element of `T(2, Z2)`',
            str(context.exception)
        )
        with self.assertRaises(ElementError):
            ring.parse('[[1]]')

    def test_indices(self):
        ring = MatrixRing(MatrixShape.constant_diagonal(3), Z2)
        for index in range(len(ring)):
            self.assertEqual(ring.index_of(ring.element_at(index)), index)

    def test_vectorised_product(self):
        ring = MatrixRing(MatrixShape.s3(), Z2)
        size = len(ring)
        np.testing.assert_array_equal(
            ring.multiplication_table(),
            ring._generic_idx(
                ring._mul, np.arange(size)[:, None], np.arange(size)[None, :]
            )
        )

    def test_elementary(self):
        ring = MatrixRing(MatrixShape.upper_triangular(3), Z2)
        e12 = elementary(ring, 1, 2)
        e23 = elementary(ring, 2, 3)
        self.assertEqual(e12 * e23, elementary(ring, 1, 3))
        self.assertTrue((e23 * e12).is_zero())
        with self.assertRaises(ConstructionError) as context:
            elementary(ring, 2, 1)
        self.assertEqual(
            'E21 is not an element of `T(3, Z2)`', str(context.exception)
        )
        with self.assertRaises(ConstructionError) as context:
            elementary(ring, 4, 1)
        self.assertEqual(
            'E41 is outside the 3x3 matrices', str(context.exception)
        )
        with self.assertRaises(ConstructionError):
            elementary(MatrixRing(MatrixShape.constant_diagonal(3), Z2), 1, 1)

    def test_characteristic(self):
        ring = MatrixRing(MatrixShape.upper_triangular(2), IntegersMod(4))
        self.assertEqual(ring.characteristic, 4)
        self.assertEqual(len(ring), 64)


class ExtensionTest(unittest.TestCase):
    def test_trivial_extension_factory(self):
        ring = trivial_extension(IntegersMod(4))
        self.assertIsInstance(ring, TrivialExtension)
        self.assertEqual((ring.id, len(ring)), ('triv(Z4)', 16))
        self.assertTrue(ring.is_commutative)
        self.assertFalse(ring.is_reduced)

    def test_trivial_extension(self):
        ring = mockrings.trivz4()
        self.assertEqual(ring.id, 'triv(Z4)')
        self.assertEqual(len(ring), 16)
        self.assertEqual(str(ring.parse('(2, 1)') * ring.parse('(2, 3)')), '(0, 0)')
        self.assertEqual(str(ring.parse('(1, 1)') ** 2), '(1, 2)')
        self.assertEqual(str(ring.one), '(1, 0)')
        self.assertTrue(ring.is_commutative)

    def test_nagata(self):
        base = mockrings.z2xz2()
        ring = NagataRing(base, SwapEndo(base))
        self.assertEqual(ring.id, 'nagata(prod(Z2, Z2), swap)')
        self.assertEqual(len(ring), 16)
        a = ring.parse('((1, 0), (0, 0))')
        m = ring.parse('((0, 0), (1, 0))')
        self.assertEqual(str(a * m), '((0, 0), (0, 0))')
        self.assertEqual(str(m * a), '((0, 0), (1, 0))')
        self.assertFalse(ring.is_commutative)

    def test_nagata_identity_is_trivial_extension(self):
        ring = NagataRing(Z2, TableEndo(Z2, [0, 1], 'id'))
        triv = TrivialExtension(Z2)
        np.testing.assert_array_equal(
            ring.multiplication_table(), triv.multiplication_table()
        )

    def test_nagata_checks(self):
        with self.assertRaises(ConstructionError):
            NagataRing(IntegersMod(3), TableEndo(IntegersMod(3), [0, 1, 1]))
        with self.assertRaises(ConstructionError) as context:
            t2 = mockrings.t2z2()
            NagataRing(t2, TableEndo(t2, list(range(8))))
        self.assertIn('need a commutative ring', str(context.exception))


class SubsetTest(unittest.TestCase):
    def test_closure(self):
        ring = mockrings.m2z2()
        e12 = elementary(ring, 1, 2)
        members = closure(ring, [e12])
        self.assertEqual(len(members), 4)
        self.assertIn(e12 + 1, members)
        sub = closure_ring(ring, [e12])
        self.assertEqual(sub.id, 'closure(M(2, Z2), [[0, 1], [0, 0]])')
        self.assertEqual(len(sub), 4)
        self.assertTrue(sub.is_commutative)
        self.assertFalse(sub.is_reduced)

    def test_closure_generates_everything(self):
        ring = mockrings.m2z2()
        gens = [elementary(ring, 1, 2), elementary(ring, 2, 1)]
        self.assertEqual(len(closure(ring, gens)), 16)

    def test_corner(self):
        ring = mockrings.t2z2()
        e11 = elementary(ring, 1, 1)
        sub = corner(ring, e11)
        self.assertEqual(len(sub), 2)
        self.assertEqual(sub.one.payload, e11.payload)
        self.assertEqual(sub.id, 'corner(T(2, Z2), [[1, 0], [0, 0]])')
        with self.assertRaises(ConstructionError) as context:
            corner(ring, elementary(ring, 1, 2))
        self.assertIn('is not an idempotent', str(context.exception))

    def test_subset_literal(self):
        ring = mockrings.t2z2()
        sub = corner(ring, elementary(ring, 1, 1))
        with self.assertRaises(ElementError):
            sub.parse('[[0, 1], [0, 0]]')

    def test_non_unital(self):
        carrier = NonUnitalCarrier(IntegersMod(4), [IntegersMod(4).element(2)])
        self.assertEqual(carrier.kind, 'rng')
        self.assertEqual(carrier.id, 'rng(Z4, 2)')
        self.assertEqual(len(carrier), 2)
        with self.assertRaises(ElementError):
            carrier.element(1)
        with self.assertRaises(ConstructionError):
            carrier.one


class DorrohTest(unittest.TestCase):
    def test_hom(self):
        ring = DorrohRing(DorrohAction(Z2, Z2, 'hom'))
        self.assertEqual(ring.id, 'dorroh(Z2, Z2, hom)')
        self.assertEqual(len(ring), 4)
        self.assertEqual(str(ring.one), '(0, 1)')
        x = ring.parse('(1, 0)')
        self.assertEqual(x * x, x)
        self.assertEqual(x * ring.one, x)
        self.assertEqual(dorroh_product(ring).id, 'prod(Z2, Z2)')

    def test_char(self):
        z4 = IntegersMod(4)
        carrier = NonUnitalCarrier(z4, [z4.element(2)])
        ring = DorrohRing(DorrohAction(carrier, Z2, 'char'))
        self.assertEqual(ring.id, 'dorroh(rng(Z4, 2), Z2, char)')
        self.assertEqual(len(ring), 4)
        x = ring.value((2, 1))
        self.assertEqual(str(x * x), '(0, 1)')

    def test_char_needs_annihilation(self):
        with self.assertRaises(ConstructionError) as context:
            DorrohAction(Z2, IntegersMod(3), 'char')
        self.assertEqual(
            'The char action of Z3 needs 3r = 0, fails for r = 1',
            str(context.exception)
        )

    def test_hom_law(self):
        with self.assertRaises(ConstructionError) as context:
            DorrohAction(Z2, IntegersMod(3), 'hom')
        self.assertEqual(
            'Dorroh action law `(s1 + s2).r = s1.r + s2.r` fails for (1, 1)',
            str(context.exception)
        )

    def test_bad_input(self):
        with self.assertRaises(ConstructionError) as context:
            DorrohAction(Z2, Z2, 'twisted')
        self.assertEqual(
            'Unknown Dorroh action `twisted`, use hom or char',
            str(context.exception)
        )
        with self.assertRaises(ConstructionError):
            DorrohAction(Z2, mockrings.gf4(), 'hom')
        z4 = IntegersMod(4)
        with self.assertRaises(ConstructionError) as context:
            DorrohAction(NonUnitalCarrier(z4, [z4.element(2)]), Z2, 'hom')
        self.assertIn('use the char action', str(context.exception))

    def test_hom_with_phi(self):
        pair = ProductRing(Z2, Z2)
        action = DorrohAction(pair, pair, 'hom', phi=lambda s: s)
        ring = DorrohRing(action)
        self.assertEqual(ring.id, 'dorroh(prod(Z2, Z2), prod(Z2, Z2), hom)')
        self.assertEqual(len(ring), 16)
        self.assertEqual(str(ring.one), '((0, 0), (1, 1))')
        x = ring.value(((1, 0), (0, 1)))
        self.assertEqual(x * ring.one, x)

    def test_phi_scalars(self):
        pair = ProductRing(Z2, Z2)
        with self.assertRaises(ConstructionError) as context:
            DorrohAction(pair, pair, 'hom')
        self.assertEqual(
            'Dorroh scalars must be a residue ring, got `prod(Z2, Z2)`. '
            'Other scalar rings need an explicit phi',
            str(context.exception)
        )
        with self.assertRaises(ConstructionError) as context:
            DorrohAction(pair, pair, 'char', phi=lambda s: s)
        self.assertEqual(
            'A custom phi needs the hom action', str(context.exception)
        )
        m2 = MatrixRing(MatrixShape.full(2), Z2)
        with self.assertRaises(ConstructionError) as context:
            DorrohAction(m2, m2, 'hom', phi=lambda s: s)
        self.assertEqual(
            'Dorroh scalars must be commutative, `M(2, Z2)` is not',
            str(context.exception)
        )

    def test_phi_must_be_unital(self):
        pair = ProductRing(Z2, Z2)
        with self.assertRaises(ConstructionError) as context:
            DorrohAction(
                pair, pair, 'hom', phi=lambda s: pair.value((s.payload[0], 0))
            )
        self.assertIn('1.r = r', str(context.exception))

    def test_phi_must_be_central(self):
        t2 = MatrixRing(MatrixShape.upper_triangular(2), Z2)
        pair = ProductRing(Z2, Z2)

        def diagonal(s):
            return t2.parse('[[{}, 0], [0, {}]]'.format(*s.payload))

        with self.assertRaises(ConstructionError) as context:
            DorrohAction(t2, pair, 'hom', phi=diagonal)
        self.assertIn('s.(r1 r2) = r1 (s.r2)', str(context.exception))


class IsoTest(unittest.TestCase):
    def test_dorroh_split(self):
        source = DorrohRing(DorrohAction(IntegersMod(3), IntegersMod(3), 'hom'))
        target = ProductRing(IntegersMod(3), IntegersMod(3))
        verdict = verify_iso(iso_candidate('dorroh-split', source, target))
        self.assertTrue(verdict.holds)
        self.assertEqual(verdict.detail, {
            'map': 'dorroh-split', 'target': 'prod(Z3, Z3)'
        })

    def test_triv_band(self):
        source = TrivialExtension(Z2)
        target = MatrixRing(MatrixShape.banded(2), Z2)
        self.assertTrue(
            verify_iso(iso_candidate('triv-band', source, target)).holds
        )

    def test_unit_violation(self):
        source = TrivialExtension(Z2)
        verdict = verify_iso(
            iso_candidate('pair-identity', source, mockrings.z2xz2())
        )
        self.assertFalse(verdict.holds)
        self.assertEqual(verdict.witness.kind, 'isomorphism-violation')
        self.assertEqual(verdict.witness.detail['law'], 'unit')

    def test_size_violation(self):
        verdict = verify_iso(iso_candidate(
            'pair-identity', TrivialExtension(Z2), IntegersMod(3)
        ))
        self.assertEqual(verdict.witness.detail['law'], 'size')

    def test_unknown(self):
        with self.assertRaises(KeyError):
            iso_candidate('fourier', Z2, Z2)
        with self.assertRaises(ConstructionError):
            iso_candidate('band-poly', mockrings.t2z2(), Z2)
