import unittest

import numpy as np

from ringlab.errors import (
    ElementError, NotEnumerableError, RingMismatchError
)
from ringlab.ring import mixed_radix_join, mixed_radix_split, ring_ops
from ringlab.rings import Integers

from tests import mockrings


class RingValueTest(unittest.TestCase):
    def setUp(self):
        self.ring = mockrings.z(6)

    def test_operators(self):
        a = self.ring.element(4)
        b = self.ring.element(5)
        self.assertEqual(str(a + b), '3')
        self.assertEqual(str(a - b), '5')
        self.assertEqual(str(a * b), '2')
        self.assertEqual(str(-a), '2')
        self.assertEqual(str(a ** 2), '4')
        self.assertEqual(str(a ** 0), '1')

    def test_int_coercion(self):
        a = self.ring.element(3)
        self.assertEqual(a * 2, self.ring.zero)
        self.assertEqual(2 + a, self.ring.element(5))
        self.assertEqual(1 - a, self.ring.element(4))

    def test_no_float_coercion(self):
        with self.assertRaises(TypeError):
            self.ring.element(1) * 1.5

    def test_no_bool(self):
        with self.assertRaises(TypeError):
            self.ring.element(True)

    def test_negative_power(self):
        with self.assertRaises(ElementError):
            self.ring.element(5) ** -1

    def test_mismatch(self):
        other = mockrings.z(4)
        with self.assertRaises(RingMismatchError) as context:
            self.ring.element(1) + other.element(1)
        self.assertIn('Z6', str(context.exception))
        self.assertIn('Z4', str(context.exception))

    def test_equality_and_hash(self):
        a = self.ring.element(3)
        b = self.ring.parse('9')
        self.assertEqual(a, b)
        self.assertEqual(len({a, b}), 1)
        self.assertNotEqual(a, mockrings.z(4).element(3))

    def test_index(self):
        self.assertEqual(self.ring.element(4).index, 4)
        self.assertTrue(self.ring.zero.is_zero())
        self.assertTrue(self.ring.one.is_one())

    def test_repr(self):
        self.assertEqual(
            repr(self.ring.element(2)),
            'RingValue(`Z6`: 2)'
        )

    def test_contains(self):
        self.assertIn(self.ring.element(2), self.ring)
        self.assertNotIn(mockrings.z(4).element(2), self.ring)
        self.assertNotIn(2, self.ring)


class RingEnumerationTest(unittest.TestCase):
    def test_size(self):
        ring = mockrings.z2xz2()
        self.assertEqual(len(ring), 4)
        self.assertEqual(ring.size, 4)
        self.assertTrue(ring.is_finite)
        self.assertEqual(
            [str(x) for x in ring],
            ['(0, 0)', '(0, 1)', '(1, 0)', '(1, 1)']
        )

    def test_element_at(self):
        ring = mockrings.z2xz2()
        self.assertEqual(str(ring.element_at(2)), '(1, 0)')
        with self.assertRaises(IndexError):
            ring.element_at(4)
        self.assertEqual(ring.index_of(ring.parse('(1, 1)')), 3)

    def test_integers_not_enumerable(self):
        ring = Integers()
        self.assertFalse(ring.is_finite)
        self.assertIsNone(ring.size)
        with self.assertRaises(NotEnumerableError):
            len(ring)
        with self.assertRaises(NotEnumerableError):
            list(ring.elements())
        self.assertEqual(len(ring.sample_elements()), 6)
        self.assertEqual(ring.characteristic, 0)

    def test_value_validation(self):
        ring = mockrings.z2xz2()
        self.assertEqual(str(ring.value((1, 0))), '(1, 0)')
        with self.assertRaises(ElementError):
            ring.value((1, 0, 1))
        with self.assertRaises(ElementError):
            ring.value(3)


class RingTableTest(unittest.TestCase):
    def test_multiplication_table(self):
        ring = mockrings.z(4)
        table = ring.multiplication_table()
        self.assertEqual(table.shape, (4, 4))
        self.assertEqual(int(table[2, 3]), 2)
        self.assertEqual(int(table[2, 2]), 0)
        self.assertIs(ring.multiplication_table(), table)

    def test_parallel_table(self):
        ring = mockrings.t2z2()
        np.testing.assert_array_equal(
            ring._table(ring._mul_idx, jobs=3),
            ring.multiplication_table()
        )

    def test_addition_and_negation(self):
        ring = mockrings.z(6)
        self.assertEqual(int(ring.addition_table()[4, 5]), 3)
        self.assertEqual(ring.negation_table().tolist(), [0, 5, 4, 3, 2, 1])

    def test_indices(self):
        ring = mockrings.gf4()
        self.assertEqual(ring.zero_index, 0)
        self.assertEqual(ring.one_index, 1)


class RingStructureTest(unittest.TestCase):
    def test_idempotents(self):
        ring = mockrings.z(6)
        self.assertEqual([str(e) for e in ring.idempotents()], ['0', '1', '3', '4'])
        self.assertTrue(ring.is_idempotent(ring.element(3)))
        self.assertFalse(ring.is_idempotent(ring.element(2)))
        self.assertEqual(len(ring.central_idempotents()), 4)

    def test_noncentral(self):
        ring = mockrings.t2z2()
        e = ring.parse('[[1, 0], [0, 0]]')
        self.assertTrue(ring.is_idempotent(e))
        self.assertFalse(ring.is_central(e))
        self.assertIsNotNone(ring.find_noncentral_idempotent())
        self.assertFalse(ring.is_abelian)
        self.assertFalse(ring.is_commutative)

    def test_flags(self):
        ring = mockrings.z(6)
        self.assertTrue(ring.is_commutative)
        self.assertTrue(ring.is_abelian)
        self.assertTrue(ring.is_reduced)
        self.assertFalse(mockrings.z(4).is_reduced)

    def test_nilpotents(self):
        ring = mockrings.z(8)
        self.assertEqual(
            [str(x) for x in ring.nilpotents_of_index_two()], ['4']
        )

    def test_noncommuting_pair(self):
        ring = mockrings.t2z2()
        i, j = ring.find_noncommuting_pair()
        a, b = ring.element_at(i), ring.element_at(j)
        self.assertNotEqual(a * b, b * a)
        self.assertIsNone(mockrings.z(6).find_noncommuting_pair())

    def test_characteristic(self):
        self.assertEqual(mockrings.z(6).characteristic, 6)
        self.assertEqual(mockrings.gf4().characteristic, 2)
        self.assertEqual(mockrings.trivz4().characteristic, 4)

    def test_ring_ops(self):
        ops = ring_ops(mockrings.z(5))
        two = ops.add(ops.one, ops.one)
        self.assertTrue(ops.eq(ops.mul(two, ops.add(two, ops.one)), ops.one))
        self.assertEqual(ops.neg(ops.zero), ops.zero)

    def test_identity(self):
        self.assertEqual(mockrings.z(6), mockrings.z(6))
        self.assertEqual(hash(mockrings.z(6)), hash(mockrings.z(6)))
        self.assertEqual(str(mockrings.z(6)), 'Z6')
        self.assertEqual(repr(mockrings.z(6)), '<IntegersMod `Z6`>')
        self.assertEqual(
            mockrings.z(6).toJSON(),
            {'id': 'Z6', 'kind': 'residue', 'size': 6}
        )


class MixedRadixTest(unittest.TestCase):
    def test_split_join(self):
        indices = np.arange(24)
        digits = mixed_radix_split(indices, [2, 3, 4])
        self.assertEqual(
            [int(d[23]) for d in digits], [1, 2, 3]
        )
        self.assertEqual(
            [int(d[5]) for d in digits], [0, 1, 1]
        )
        np.testing.assert_array_equal(
            mixed_radix_join(digits, [2, 3, 4]), indices
        )
