import unittest

import numpy as np

from ringlab.endo import FrobeniusEndo, SwapEndo
from ringlab.errors import ConstructionError, ElementError
from ringlab.poly import (
    LaurentPolynomialRing, SkewPolynomialRing, TruncatedSkewRing,
    bounded_laurent, bounded_polynomials, coefficient_arrays,
    laurent_mul, poly_is_idempotent, polynomial_ring, skew_convolve,
    skew_mul, trunc_ring
)
from ringlab.rings import IntegersMod

from tests import mockrings


class SkewPolynomialTest(unittest.TestCase):
    def setUp(self):
        self.base = mockrings.z2xz2()
        self.sigma = SwapEndo(self.base)

    def test_left_convention(self):
        ring = SkewPolynomialRing(self.base, self.sigma)
        self.assertEqual(ring.id, 'skew(prod(Z2, Z2), swap, left)')
        f = ring.parse('(1, 0)*x')
        g = ring.parse('(1, 0)')
        self.assertEqual(f * g, ring.zero)
        self.assertEqual(str(g * f), '(1, 0)*x')
        self.assertEqual(str(ring.parse('x') * g), '(0, 1)*x')

    def test_right_convention(self):
        ring = SkewPolynomialRing(self.base, self.sigma, 'right')
        f = ring.parse('x*(1, 0)')
        g = ring.parse('(1, 0)')
        self.assertEqual(str(f), 'x*(1, 0)')
        self.assertEqual(g * f, ring.zero)
        self.assertEqual(f * g, f)

    def test_skew_mul(self):
        ring = SkewPolynomialRing(self.base, self.sigma)
        x = ring.parse('x')
        self.assertEqual(str(skew_mul(x, x)), 'x^2')
        with self.assertRaises(TypeError):
            skew_mul(self.base.one, self.base.one)

    def test_degree_and_coefficients(self):
        ring = SkewPolynomialRing(self.base, self.sigma)
        f = ring.parse('(1, 1) + (0, 1)*x^2')
        self.assertEqual(ring.degree(f), 2)
        self.assertEqual(ring.degree(ring.zero), -1)
        self.assertEqual(str(ring.coefficient(f, 2)), '(0, 1)')
        self.assertTrue(ring.coefficient(f, 7).is_zero())
        self.assertEqual(
            ring.from_coefficients([self.base.one, self.base.zero]),
            ring.one
        )
        self.assertEqual(ring.constant(self.base.one), ring.one)

    def test_negative_power(self):
        ring = SkewPolynomialRing(self.base, self.sigma)
        with self.assertRaises(ElementError):
            ring.parse('x^-1')

    def test_checks(self):
        with self.assertRaises(ConstructionError) as context:
            SkewPolynomialRing(self.base, self.sigma, 'middle')
        self.assertEqual(
            'Unknown convention `middle`, use left or right',
            str(context.exception)
        )
        with self.assertRaises(ConstructionError):
            SkewPolynomialRing(IntegersMod(2), self.sigma)

    def test_polynomial_ring(self):
        ring = polynomial_ring(IntegersMod(4))
        f = ring.parse('1 + 2*x')
        self.assertEqual(f * f, ring.one)
        self.assertFalse(poly_is_idempotent(f))
        self.assertTrue(poly_is_idempotent(ring.one))
        self.assertEqual(ring.characteristic, 4)

    def test_bounded(self):
        ring = polynomial_ring(IntegersMod(2))
        self.assertEqual(
            [str(f) for f in bounded_polynomials(ring, 1)],
            ['0', 'x', '1', '1 + x']
        )


class TruncatedTest(unittest.TestCase):
    def setUp(self):
        base = mockrings.z2xz2()
        self.ring = trunc_ring(base, SwapEndo(base), 2)

    def test_id(self):
        self.assertEqual(self.ring.id, 'skewtrunc(prod(Z2, Z2), swap, 2, left)')
        self.assertEqual(len(self.ring), 16)

    def test_truncation(self):
        ring = self.ring
        self.assertEqual(ring.parse('x^2'), ring.zero)
        x = ring.parse('x')
        self.assertEqual(x * x, ring.zero)
        self.assertFalse(ring.is_commutative)

    def test_vectorised_product(self):
        ring = self.ring
        size = len(ring)
        np.testing.assert_array_equal(
            ring.multiplication_table(),
            ring._generic_idx(
                ring._mul, np.arange(size)[:, None], np.arange(size)[None, :]
            )
        )

    def test_frobenius(self):
        base = mockrings.gf4()
        ring = TruncatedSkewRing(base, FrobeniusEndo(base), 3, 'right')
        self.assertEqual(len(ring), 64)
        size = len(ring)
        np.testing.assert_array_equal(
            ring.multiplication_table(),
            ring._generic_idx(
                ring._mul, np.arange(size)[:, None], np.arange(size)[None, :]
            )
        )

    def test_order(self):
        base = mockrings.z2xz2()
        with self.assertRaises(ConstructionError) as context:
            TruncatedSkewRing(base, SwapEndo(base), 0)
        self.assertEqual(
            'Truncation order must be at least 1, got 0',
            str(context.exception)
        )

    def test_validate(self):
        with self.assertRaises(ElementError):
            self.ring.value(((0, 0),))


class LaurentTest(unittest.TestCase):
    def setUp(self):
        self.ring = LaurentPolynomialRing(IntegersMod(3))

    def test_inverse_of_x(self):
        ring = self.ring
        x = ring.parse('x')
        inverse = x ** -1
        self.assertEqual(x * inverse, ring.one)
        self.assertEqual(str(inverse), 'x^-1')
        self.assertEqual(laurent_mul(inverse, x), ring.one)

    def test_format_and_coefficients(self):
        ring = self.ring
        x = ring.parse('x')
        f = x ** -1 + 2 + x
        self.assertEqual(f.payload, (-1, (1, 2, 1)))
        self.assertEqual(str(f), 'x^-1 + 2 + x')
        self.assertEqual(str(ring.coefficient(f, 0)), '2')
        self.assertTrue(ring.coefficient(f, 5).is_zero())

    def test_cancellation(self):
        ring = self.ring
        x = ring.parse('x')
        self.assertEqual((x + 1) - x, ring.one)
        self.assertEqual(ring.from_indices([0, 1], low=-2), x ** -1)

    def test_only_monomials_invert(self):
        with self.assertRaises(ElementError):
            (self.ring.parse('x') + 1) ** -1

    def test_bounded(self):
        ring = LaurentPolynomialRing(IntegersMod(2))
        values = list(bounded_laurent(ring, 1))
        self.assertEqual(len(values), 8)
        self.assertEqual(len(set(values)), 8)

    def test_laurent_mul_type(self):
        with self.assertRaises(TypeError):
            laurent_mul(IntegersMod(2).one, IntegersMod(2).one)


class ConvolutionTest(unittest.TestCase):
    def test_coefficient_arrays(self):
        self.assertEqual(
            coefficient_arrays(2, 2).tolist(),
            [[0, 0], [0, 1], [1, 0], [1, 1]]
        )

    def test_square(self):
        z2 = IntegersMod(2)
        identity = np.arange(2)
        out = skew_convolve(
            z2.multiplication_table(), z2.addition_table(),
            [identity, identity], np.array([1, 1]), np.array([1, 1])
        )
        self.assertEqual(out.tolist(), [1, 0, 1])
