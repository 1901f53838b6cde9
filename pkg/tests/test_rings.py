import os
import tempfile
import unittest

from hypothesis import given, settings as hsettings, strategies as st

from ringlab.errors import ConstructionError, ElementError
from ringlab.matrix import Matrix, table_text
from ringlab.rings import (
    Integers, IntegersMod, PrimeField, ProductRing, QuaternionRing,
    SequenceRing, TableRing, data_file, is_prime, validate_ring_axioms
)

from tests import mockrings


FINITE_RINGS = [
    mockrings.z(1),
    mockrings.z(6),
    mockrings.gf(5),
    mockrings.z2xz2(),
    mockrings.gf4(),
    mockrings.t2z2(),
    mockrings.trivz4(),
    QuaternionRing(IntegersMod(3)),
    SequenceRing(IntegersMod(2), 3),
]


@st.composite
def triples(draw):
    ring = draw(st.sampled_from(FINITE_RINGS))
    index = st.integers(min_value=0, max_value=len(ring) - 1)
    return ring, [ring.element_at(draw(index)) for _ in range(3)]


class RingAxiomTest(unittest.TestCase):
    @hsettings(max_examples=300, deadline=None)
    @given(triples())
    def test_axioms(self, data):
        ring, (a, b, c) = data
        self.assertEqual(a + b, b + a)
        self.assertEqual((a + b) + c, a + (b + c))
        self.assertEqual(a + ring.zero, a)
        self.assertEqual(a + (-a), ring.zero)
        self.assertEqual((a * b) * c, a * (b * c))
        self.assertEqual(a * (b + c), a * b + a * c)
        self.assertEqual((a + b) * c, a * c + b * c)
        self.assertEqual(a * ring.one, a)
        self.assertEqual(ring.one * a, a)

    @hsettings(max_examples=100, deadline=None)
    @given(triples())
    def test_tables_match_arithmetic(self, data):
        ring, (a, b, _) = data
        table = ring.multiplication_table()
        self.assertEqual(
            ring.element_at(int(table[a.index, b.index])), a * b
        )
        self.assertEqual(
            ring.element_at(int(ring.addition_table()[a.index, b.index])),
            a + b
        )

    @hsettings(max_examples=100, deadline=None)
    @given(st.integers(-50, 50), st.integers(-50, 50))
    def test_integers(self, x, y):
        ring = Integers()
        a, b = ring.element(x), ring.element(y)
        self.assertEqual((a * b).payload, x * y)
        self.assertEqual((a - b).payload, x - y)


class ResidueTest(unittest.TestCase):
    def test_modulus(self):
        ring = IntegersMod(6)
        self.assertEqual(ring.id, 'Z6')
        self.assertEqual(len(ring), 6)
        self.assertEqual(str(ring.element(-1)), '5')

    def test_zero_ring(self):
        ring = IntegersMod(1)
        self.assertEqual(len(ring), 1)
        self.assertEqual(ring.zero, ring.one)
        self.assertEqual(ring.characteristic, 1)

    def test_invalid_modulus(self):
        with self.assertRaises(ConstructionError) as context:
            IntegersMod(0)
        self.assertEqual(
            'Modulus must be positive, got 0', str(context.exception)
        )

    def test_prime_field(self):
        self.assertEqual(PrimeField(7).id, 'GF7')
        self.assertEqual(PrimeField(7).kind, 'prime-field')
        with self.assertRaises(ConstructionError) as context:
            PrimeField(4)
        self.assertEqual(
            'GF(4) is not a prime field', str(context.exception)
        )

    def test_is_prime(self):
        self.assertEqual(
            [n for n in range(20) if is_prime(n)],
            [2, 3, 5, 7, 11, 13, 17, 19]
        )


class ProductTest(unittest.TestCase):
    def test_id_and_format(self):
        ring = ProductRing(IntegersMod(6), IntegersMod(4))
        self.assertEqual(ring.id, 'prod(Z6, Z4)')
        self.assertEqual(len(ring), 24)
        self.assertEqual(str(ring.parse('(3, 2)') * 2), '(0, 0)')
        self.assertEqual(ring.characteristic, 12)

    def test_wrong_arity(self):
        ring = mockrings.z2xz2()
        with self.assertRaises(ElementError):
            ring.parse('(1, 0, 1)')

    def test_infinite_factor(self):
        ring = ProductRing(Integers(), IntegersMod(2))
        self.assertFalse(ring.is_finite)
        self.assertEqual(str(ring.parse('(-3, 1)') * 2), '(-6, 0)')


class ValidateAxiomsTest(unittest.TestCase):
    def test_gf4(self):
        add = Matrix.from_rows(mockrings.GF4_ADD)
        mul = Matrix.from_rows(mockrings.GF4_MUL)
        self.assertEqual(validate_ring_axioms(add, mul), (0, 1))

    def test_not_distributive(self):
        add = Matrix.from_rows(mockrings.Z4_ADD)
        mul = Matrix.from_rows(mockrings.BROKEN_MUL)
        with self.assertRaises(ConstructionError) as context:
            validate_ring_axioms(add, mul)
        self.assertEqual(
            'Left distributivity fails for the triple (2, 1, 1)',
            str(context.exception)
        )

    def test_no_unity(self):
        add = Matrix.from_rows(mockrings.Z4_ADD)
        mul = Matrix(4, 4)
        with self.assertRaises(ConstructionError) as context:
            validate_ring_axioms(add, mul)
        self.assertEqual(
            'Multiplication has no two-sided unity', str(context.exception)
        )

    def test_not_commutative(self):
        add = Matrix.from_rows([[0, 1], [0, 1]])
        mul = Matrix.from_rows([[0, 0], [0, 1]])
        with self.assertRaises(ConstructionError) as context:
            validate_ring_axioms(add, mul)
        self.assertIn('Additive commutativity', str(context.exception))

    def test_shapes(self):
        with self.assertRaises(ConstructionError):
            validate_ring_axioms(Matrix(2, 2), Matrix(3, 3))
        with self.assertRaises(ConstructionError):
            validate_ring_axioms(
                Matrix.from_rows([[0, 2], [2, 0]]), Matrix(2, 2)
            )


class TableRingTest(unittest.TestCase):
    def test_gf4(self):
        ring = mockrings.gf4()
        self.assertEqual(ring.id, 'table(gf4)')
        a = ring.element(2)
        self.assertEqual(a * a, ring.element(3))
        self.assertEqual(a * a * a, ring.one)
        self.assertEqual(-a, a)
        self.assertTrue(ring.is_commutative)
        self.assertTrue(ring.is_reduced)

    def test_literal_is_index(self):
        ring = mockrings.gf4()
        with self.assertRaises(ElementError) as context:
            ring.element(4)
        self.assertEqual(
            'Index 4 out of range for `table(gf4)`', str(context.exception)
        )

    def test_bundled_file(self):
        ring = TableRing.from_file('gf4')
        self.assertEqual(ring.id, 'table(gf4)')
        self.assertEqual(len(ring), 4)
        self.assertEqual(ring.characteristic, 2)

    def test_file_roundtrip(self):
        add = Matrix.from_rows(mockrings.GF4_ADD)
        mul = Matrix.from_rows(mockrings.GF4_MUL)
        with tempfile.TemporaryDirectory() as folder:
            path = os.path.join(folder, 'field.table')
            with open(path, 'w') as fh:
                fh.write(table_text(add, mul))
            ring = TableRing.from_file(path, 'table(field)')
            self.assertEqual(ring.id, 'table(field)')
            self.assertEqual(ring.mul_matrix, mul)

    def test_missing_file(self):
        with self.assertRaises(ConstructionError) as context:
            data_file('no-such-ring', '.table')
        self.assertEqual(
            'File `no-such-ring` not found', str(context.exception)
        )

    def test_invalid_file(self):
        with tempfile.TemporaryDirectory() as folder:
            path = os.path.join(folder, 'broken.table')
            with open(path, 'w') as fh:
                fh.write('order 2\n0 1\n1 0\n')
            with self.assertRaises(ConstructionError) as context:
                TableRing.from_file(path)
            self.assertIn('Invalid table file', str(context.exception))


class QuaternionTest(unittest.TestCase):
    def test_units(self):
        ring = QuaternionRing(Integers())
        i, j, k = ring.parse('i'), ring.parse('j'), ring.parse('k')
        self.assertEqual(i * j, k)
        self.assertEqual(j * i, -k)
        self.assertEqual(j * k, i)
        self.assertEqual(k * i, j)
        self.assertEqual(i * i, ring.element(-1))
        self.assertEqual(ring.parse('i^2'), ring.element(-1))

    def test_format(self):
        ring = QuaternionRing(Integers())
        self.assertEqual(str(ring.parse('1 + i')), '1+i')
        self.assertEqual(str(ring.parse('-i')), '-i')
        self.assertEqual(str(ring.parse('2 - 3j + k')), '2-3j+k')
        self.assertEqual(str(ring.zero), '0')

    def test_finite_base(self):
        ring = QuaternionRing(IntegersMod(3))
        self.assertEqual(ring.id, 'H(Z3)')
        self.assertEqual(len(ring), 81)
        self.assertEqual(ring.characteristic, 3)
        self.assertFalse(ring.is_commutative)

    def test_tuple_literal(self):
        ring = QuaternionRing(Integers())
        self.assertEqual(ring.parse('(1, 0, 1, 0)'), ring.parse('1 + j'))
        with self.assertRaises(ElementError):
            ring.parse('(1, 0)')

    def test_noncommutative_base(self):
        with self.assertRaises(ConstructionError) as context:
            QuaternionRing(mockrings.t2z2())
        self.assertIn('commutative base', str(context.exception))

    def test_unknown_unit(self):
        with self.assertRaises(ElementError):
            QuaternionRing(Integers()).parse('q')


class SequenceTest(unittest.TestCase):
    def setUp(self):
        self.ring = SequenceRing(IntegersMod(2), 3)

    def test_id(self):
        self.assertEqual(self.ring.id, 'ecseq(Z2, 3)')
        self.assertEqual(len(self.ring), 8)

    def test_canonical(self):
        ring = self.ring
        self.assertEqual(ring.canonical([1, 0]), (1, 0, 0))
        self.assertEqual(ring.canonical([1, 0, 1, 1, 1]), (1, 0, 1))
        with self.assertRaises(ElementError) as context:
            ring.canonical([1, 0, 1, 0])
        self.assertEqual(
            'Sequence is not constant from position 3',
            str(context.exception)
        )
        with self.assertRaises(ElementError):
            ring.canonical([])

    def test_pointwise(self):
        ring = self.ring
        a = ring.parse('(1, 0)')
        b = ring.parse('(1, 1, 0)')
        self.assertEqual(str(a * b), '(1, 0, 0)')
        self.assertEqual(str(a + b), '(0, 1, 0)')
        self.assertEqual(str(ring.one), '(1, 1, 1)')

    def test_window(self):
        with self.assertRaises(ConstructionError):
            SequenceRing(IntegersMod(2), 1)

    def test_idempotents(self):
        # every element of a boolean sequence ring is idempotent
        self.assertEqual(len(self.ring.idempotents()), 8)
        self.assertTrue(self.ring.is_abelian)
