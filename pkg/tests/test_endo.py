import unittest

from ringlab.config import default_settings
from ringlab.endo import (
    ComponentwiseEndo, DiagProjectionEndo, FrobeniusEndo, IdentityEndo,
    ShiftEndo, SwapEndo, TableEndo, require_valid, unital_endomorphisms,
    validate_endo
)
from ringlab.errors import BudgetExceeded, ConstructionError
from ringlab.rings import Integers, IntegersMod, ProductRing, SequenceRing

from tests import mockrings


class SwapTest(unittest.TestCase):
    def test_apply(self):
        ring = ProductRing(IntegersMod(3), IntegersMod(3))
        sigma = SwapEndo(ring)
        self.assertEqual(str(sigma(ring.parse('(1, 2)'))), '(2, 1)')
        self.assertTrue(sigma.fixes(ring.parse('(2, 2)')))
        self.assertFalse(sigma.is_identity())
        self.assertTrue(sigma.is_injective())
        self.assertTrue(validate_endo(sigma).holds)

    def test_needs_product(self):
        with self.assertRaises(ConstructionError) as context:
            SwapEndo(IntegersMod(6))
        self.assertEqual(
            '`swap` needs a product ring, got `Z6`', str(context.exception)
        )

    def test_needs_equal_factors(self):
        with self.assertRaises(ConstructionError) as context:
            SwapEndo(ProductRing(IntegersMod(2), IntegersMod(3)))
        self.assertEqual(
            '`swap` needs equal factors, got `Z2` and `Z3`',
            str(context.exception)
        )

    def test_json(self):
        sigma = SwapEndo(mockrings.z2xz2())
        self.assertEqual(
            sigma.toJSON(), {'endo': 'swap', 'ring': 'prod(Z2, Z2)'}
        )
        self.assertEqual(str(sigma), 'swap')
        self.assertEqual(repr(sigma), '<SwapEndo `swap` on `prod(Z2, Z2)`>')


class FrobeniusTest(unittest.TestCase):
    def test_gf4(self):
        ring = mockrings.gf4()
        sigma = FrobeniusEndo(ring)
        self.assertEqual(sigma.index_map().tolist(), [0, 1, 3, 2])
        self.assertTrue(validate_endo(sigma).holds)
        self.assertEqual(
            [m.tolist() for m in sigma.power_maps(2)],
            [[0, 1, 2, 3], [0, 1, 3, 2], [0, 1, 2, 3]]
        )

    def test_prime_field_is_identity(self):
        self.assertTrue(FrobeniusEndo(mockrings.gf(5)).is_identity())

    def test_composite_characteristic(self):
        with self.assertRaises(ConstructionError) as context:
            FrobeniusEndo(IntegersMod(6))
        self.assertEqual(
            '`frob` needs prime characteristic, `Z6` has 6',
            str(context.exception)
        )

    def test_noncommutative(self):
        # (a + b)^2 = a^2 + ab + ba + b^2 differs when ab != ba
        verdict = validate_endo(FrobeniusEndo(mockrings.t2z2()))
        self.assertFalse(verdict.holds)
        self.assertEqual(verdict.witness.kind, 'endomorphism-violation')
        self.assertEqual(verdict.witness.detail['law'], 'additive')
        self.assertEqual(verdict.witness.endo, 'frob')


class OtherVariantsTest(unittest.TestCase):
    def test_shift(self):
        ring = SequenceRing(IntegersMod(2), 3)
        sigma = ShiftEndo(ring)
        self.assertEqual(str(sigma(ring.parse('(1, 0, 1)'))), '(0, 1, 1)')
        self.assertTrue(validate_endo(sigma).holds)
        self.assertFalse(sigma.is_injective())
        with self.assertRaises(ConstructionError):
            ShiftEndo(IntegersMod(2))

    def test_diag_projection(self):
        ring = mockrings.trivz4()
        sigma = DiagProjectionEndo(ring)
        self.assertEqual(str(sigma(ring.parse('(3, 2)'))), '(3, 0)')
        self.assertTrue(validate_endo(sigma).holds)
        self.assertFalse(sigma.is_injective())
        with self.assertRaises(ConstructionError):
            DiagProjectionEndo(IntegersMod(4))

    def test_componentwise(self):
        gf4 = mockrings.gf4()
        z2 = IntegersMod(2)
        ring = ProductRing(gf4, z2)
        sigma = ComponentwiseEndo(ring, FrobeniusEndo(gf4), IdentityEndo(z2))
        self.assertEqual(sigma.expr, 'cw(frob, id)')
        self.assertEqual(str(sigma(ring.value((2, 1)))), '(3, 1)')
        self.assertTrue(validate_endo(sigma).holds)
        with self.assertRaises(ConstructionError):
            ComponentwiseEndo(
                ring, IdentityEndo(IntegersMod(3)), IdentityEndo(z2)
            )

    def test_identity_on_integers(self):
        sigma = IdentityEndo(Integers())
        self.assertTrue(sigma.is_identity())
        self.assertTrue(sigma.is_injective())
        verdict = validate_endo(sigma)
        self.assertTrue(verdict.holds)
        self.assertEqual(verdict.proxy_note, 'checked on a sample set')


class TableEndoTest(unittest.TestCase):
    def test_expr(self):
        sigma = TableEndo(mockrings.gf4(), [0, 1, 3, 2])
        self.assertEqual(sigma.expr, 'etable([0, 1, 3, 2])')
        self.assertEqual(sigma.images, [0, 1, 3, 2])

    def test_not_total(self):
        with self.assertRaises(ConstructionError) as context:
            TableEndo(IntegersMod(3), [0, 1])
        self.assertEqual(
            'Endomorphism table of `Z3` must map all 3 indices into 0..2',
            str(context.exception)
        )
        with self.assertRaises(ConstructionError):
            TableEndo(IntegersMod(3), [0, 1, 3])

    def test_require_valid(self):
        ring = IntegersMod(3)
        sigma = TableEndo(ring, [0, 1, 2])
        self.assertIs(require_valid(sigma), sigma)
        with self.assertRaises(ConstructionError) as context:
            require_valid(TableEndo(ring, [0, 1, 1]))
        self.assertEqual(
            '`etable([0, 1, 1])` is not a unital endomorphism of `Z3`: '
            'additive law fails for (1, 1)',
            str(context.exception)
        )
        self.assertFalse(context.exception.verdict.holds)

    def test_unit_law(self):
        verdict = validate_endo(TableEndo(IntegersMod(3), [0, 2, 1]))
        self.assertFalse(verdict.holds)
        self.assertEqual(verdict.witness.detail['law'], 'unit')
        self.assertEqual(verdict.witness.elements, [])


class SearchTest(unittest.TestCase):
    def test_gf4(self):
        maps = unital_endomorphisms(mockrings.gf4())
        self.assertEqual(
            sorted(m.images for m in maps), [[0, 1, 2, 3], [0, 1, 3, 2]]
        )

    def test_residues(self):
        maps = unital_endomorphisms(IntegersMod(6))
        self.assertEqual(len(maps), 1)
        self.assertTrue(maps[0].is_identity())

    def test_boolean_square(self):
        # one endomorphism per idempotent image of (1, 0)
        self.assertEqual(len(unital_endomorphisms(mockrings.z2xz2())), 4)

    def test_budget(self):
        settings = default_settings().with_overrides(max_pairs=10)
        with self.assertRaises(BudgetExceeded) as context:
            unital_endomorphisms(IntegersMod(6), settings)
        self.assertEqual(context.exception.required, 6 ** 4)
