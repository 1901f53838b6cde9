import unittest

import numpy as np

from ringlab import dsl
from ringlab.config import default_settings
from ringlab.errors import (
    BudgetExceeded, ConstructionError, InconclusiveError
)
from ringlab.properties import verify_witness
from ringlab.subrings import (
    SubringBasis, certify_not_i_reversible, check_maximal_i_reversible,
    diagonal_patterns, extract_diagonal_idempotents, field_order,
    intermediate_subrings, linear_closure, shape_basis, subring_basis,
    weight_three_pattern
)
from ringlab.witness import Witness


IDENTITY_2 = '[[1, 0], [0, 1]]'
E12 = '[[0, 1], [0, 0]]'
E21 = '[[0, 0], [1, 0]]'
E12_4 = '[[0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]'
E11_5 = (
    '[[1, 0, 0, 0, 0], [0, 0, 0, 0, 0], [0, 0, 0, 0, 0], '
    '[0, 0, 0, 0, 0], [0, 0, 0, 0, 0]]'
)


class SubringBasisTest(unittest.TestCase):
    def setUp(self):
        self.m2 = dsl.build('M(2, GF2)')
        self.t2 = dsl.build('T(2, GF2)')

    def test_field_order(self):
        self.assertEqual(field_order(self.m2), 2)
        self.assertEqual(field_order(dsl.build('T(2, Z3)')), 3)
        with self.assertRaises(ConstructionError) as context:
            field_order(dsl.build('T(2, Z4)'))
        self.assertEqual(
            'Subring analysis needs a matrix ring over a prime field, '
            'got `T(2, Z4)`',
            str(context.exception)
        )
        with self.assertRaises(ConstructionError):
            field_order(dsl.build('Z2'))

    def test_span(self):
        S = SubringBasis.from_matrices(self.m2, [IDENTITY_2, E12])
        self.assertEqual(S.dimension, 2)
        self.assertEqual(S.size, 4)
        self.assertTrue(S.contains('[[1, 1], [0, 1]]'))
        self.assertFalse(S.contains(E21))
        self.assertTrue(S.contains_unity)
        self.assertTrue(S.is_closed())
        self.assertEqual(S.certificate.shape, (2, 2, 2))
        self.assertTrue(S.recheck())

    def test_equal_spans(self):
        one = SubringBasis.from_matrices(self.m2, [IDENTITY_2, E12])
        other = SubringBasis.from_matrices(
            self.m2, ['[[1, 1], [0, 1]]', E12, IDENTITY_2]
        )
        self.assertEqual(one, other)
        self.assertEqual(hash(one), hash(other))
        self.assertEqual(len({one, other}), 1)

    def test_without_unity(self):
        S = SubringBasis.from_matrices(self.m2, [E12])
        self.assertTrue(S.is_closed())
        self.assertFalse(S.contains_unity)
        self.assertFalse(S.recheck())

    def test_not_closed(self):
        S = SubringBasis.from_matrices(self.m2, [IDENTITY_2, E12, E21])
        self.assertIsNone(S.certificate)
        self.assertFalse(S.is_closed())

    def test_as_ring(self):
        S = SubringBasis.from_matrices(self.m2, [IDENTITY_2, E12])
        ring = S.as_ring()
        self.assertEqual(len(ring), 4)
        self.assertEqual(
            ring.id, 'closure(M(2, GF2), [[1, 0], [0, 1]], [[0, 1], [0, 0]])'
        )
        self.assertTrue(ring.is_commutative)
        self.assertEqual(len(dsl.build(ring.id)), 4)

    def test_json(self):
        S = SubringBasis.from_matrices(self.t2, [IDENTITY_2], expr='GF2')
        self.assertEqual(S.toJSON(), {
            'ambient': 'T(2, GF2)',
            'expr': 'GF2',
            'dimension': 1,
            'basis': [IDENTITY_2],
        })
        self.assertEqual(repr(S), '<SubringBasis dim=1 in `T(2, GF2)`>')


class ShapeBasisTest(unittest.TestCase):
    def test_dimensions(self):
        for expr, dimension in (
            ('T(3, GF2)', 6), ('S3(GF2)', 5), ('D(3, GF2)', 4),
            ('S4(GF2)', 8), ('M(2, GF3)', 4)
        ):
            S = shape_basis(dsl.build(expr))
            self.assertEqual(S.dimension, dimension, expr)
            self.assertEqual(S.expr, expr)
            self.assertTrue(S.recheck(), expr)

    def test_default_ambient(self):
        self.assertEqual(
            shape_basis(dsl.build('S3(GF2)')).ambient.id, 'T(3, GF2)'
        )
        self.assertEqual(
            shape_basis(dsl.build('M(2, GF2)')).ambient.id, 'M(2, GF2)'
        )

    def test_subring_basis_of_closure(self):
        ambient = dsl.build('T(2, GF2)')
        ring = dsl.build('closure(T(2, GF2), [[0, 1], [0, 0]])')
        S = subring_basis(ring, ambient)
        self.assertEqual(S.dimension, 2)
        self.assertEqual(S.expr, ring.id)


class LinearClosureTest(unittest.TestCase):
    def test_nilpotent_generator(self):
        S = linear_closure(dsl.build('M(2, GF2)'), [E12])
        self.assertEqual(S.dimension, 2)
        self.assertTrue(S.contains_unity)

    def test_generates_everything(self):
        S = linear_closure(dsl.build('M(2, GF2)'), [E12, E21])
        self.assertEqual(S.dimension, 4)

    def test_agrees_with_set_closure(self):
        ambient = dsl.build('M(2, GF3)')
        gens = ['[[1, 1], [0, 2]]']
        S = linear_closure(ambient, gens)
        ring = dsl.build('closure(M(2, GF3), [[1, 1], [0, 2]])')
        self.assertEqual(S.size, len(ring))


class DiagonalIdempotentTest(unittest.TestCase):
    def test_three_values(self):
        ambient = dsl.build('T(3, GF3)')
        family = extract_diagonal_idempotents(
            ambient, None, '[[0, 0, 0], [0, 1, 0], [0, 0, 2]]'
        )
        self.assertEqual(family.values, [0, 1, 2])
        self.assertEqual(
            [str(e) for e in family.idempotents],
            [
                '[[1, 0, 0], [0, 0, 0], [0, 0, 0]]',
                '[[0, 0, 0], [0, 1, 0], [0, 0, 0]]',
                '[[0, 0, 0], [0, 0, 0], [0, 0, 1]]',
            ]
        )
        self.assertTrue(family.check())
        self.assertEqual(len(family.toJSON()['coefficients']), 3)

    def test_repeated_values(self):
        ambient = dsl.build('T(5, GF3)')
        family = extract_diagonal_idempotents(
            ambient, None,
            '[[0, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0], '
            '[0, 0, 0, 0, 0], [0, 0, 0, 0, 2]]'
        )
        self.assertEqual(family.values, [0, 1, 2])
        self.assertEqual(
            str(family.idempotents[1]),
            '[[0, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0], '
            '[0, 0, 0, 0, 0], [0, 0, 0, 0, 0]]'
        )
        self.assertTrue(family.check())

    def test_single_value(self):
        ambient = dsl.build('T(2, GF2)')
        with self.assertLogs('ringlab.subrings', level='WARNING'):
            family = extract_diagonal_idempotents(ambient, None, IDENTITY_2)
        self.assertEqual(family.values, [1])
        self.assertTrue(family.check())

    def test_not_diagonal(self):
        ambient = dsl.build('T(2, GF2)')
        with self.assertRaises(ConstructionError) as context:
            extract_diagonal_idempotents(ambient, None, '[[1, 1], [0, 0]]')
        self.assertEqual(
            '[[1, 1], [0, 0]] is not diagonal', str(context.exception)
        )

    def test_outside_base(self):
        base = shape_basis(dsl.build('S3(GF2)'))
        with self.assertRaises(ConstructionError) as context:
            extract_diagonal_idempotents(
                base.ambient, base, '[[1, 0, 0], [0, 0, 0], [0, 0, 0]]'
            )
        self.assertEqual(
            '[[1, 0, 0], [0, 0, 0], [0, 0, 0]] is not in the subring `S3(GF2)`',
            str(context.exception)
        )


class IntermediateTest(unittest.TestCase):
    def setUp(self):
        self.t2 = dsl.build('T(2, GF2)')
        self.scalars = SubringBasis.from_matrices(self.t2, [IDENTITY_2])

    def test_above_scalars(self):
        found = intermediate_subrings(self.t2, self.scalars)
        self.assertEqual(
            sorted(S.dimension for S in found), [2, 2, 2, 3]
        )
        self.assertEqual(found[-1].expr, 'T(2, GF2)')
        for S in found:
            self.assertTrue(S.recheck(self.scalars))

    def test_above_s3(self):
        t3 = dsl.build('T(3, GF2)')
        base = shape_basis(dsl.build('S3(GF2)'), t3)
        found = intermediate_subrings(t3, base)
        self.assertEqual([S.dimension for S in found], [6])

    def test_above_d3_matches_generated_closures(self):
        t3 = dsl.build('T(3, GF2)')
        base = shape_basis(dsl.build('D(3, GF2)'), t3)
        gens = base.matrices()
        # every subring above base is a join of closures base + <x>
        closures = {linear_closure(t3, gens + [x]) for x in t3.elements()}
        while True:
            joins = {
                linear_closure(t3, A.matrices() + B.matrices())
                for A in closures for B in closures
            }
            if joins <= closures:
                break
            closures |= joins
        closures.discard(base)
        found = intermediate_subrings(t3, base)
        self.assertEqual(len(closures), 4)
        self.assertEqual(len(found), len(closures))
        self.assertEqual(set(found), closures)

    def test_budget(self):
        settings = default_settings().with_overrides(max_quotient_dim=1)
        with self.assertRaises(BudgetExceeded) as context:
            intermediate_subrings(self.t2, self.scalars, settings)
        self.assertEqual(context.exception.required, 2)
        self.assertEqual(context.exception.flag, '--max-quotient-dim')

    def test_base_must_be_a_subring(self):
        base = SubringBasis.from_matrices(self.t2, [E12])
        with self.assertRaises(ConstructionError) as context:
            intermediate_subrings(self.t2, base)
        self.assertIn('is not a subring with identity', str(context.exception))

    def test_base_must_be_inside(self):
        m2 = dsl.build('M(2, GF2)')
        base = SubringBasis.from_matrices(m2, [IDENTITY_2, E21])
        with self.assertRaises(ConstructionError):
            intermediate_subrings(self.t2, base)


class CertificateTest(unittest.TestCase):
    def test_patterns(self):
        S = shape_basis(dsl.build('T(3, GF2)'))
        self.assertEqual(len(diagonal_patterns(S)), 8)
        self.assertIsNone(weight_three_pattern(S))
        S = shape_basis(dsl.build('S3(GF2)'))
        self.assertEqual(
            diagonal_patterns(S),
            [(0, 0, 0), (0, 0, 1), (1, 1, 0), (1, 1, 1)]
        )
        self.assertIsNone(weight_three_pattern(S))

    def test_weight_three_route(self):
        S = shape_basis(dsl.build('T(4, GF2)'))
        self.assertEqual(weight_three_pattern(S), (1, 1, 1, 0))
        witness = certify_not_i_reversible(S)
        self.assertEqual(witness.detail['route'], 'weight-three-pattern')
        self.assertEqual(witness.ring, 'T(4, GF2)')
        self.assertEqual(witness.elements, [
            '[[0, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 0], [0, 0, 0, 1]]',
            '[[0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 1]]',
        ])
        self.assertTrue(verify_witness(witness))

    def test_certificate_names_the_subring(self):
        S = shape_basis(dsl.build('T(4, GF2)'))
        witness = certify_not_i_reversible(S)
        self.assertEqual(witness.detail['subring'], S.literals())
        self.assertTrue(verify_witness(Witness.loads(witness.dumps())))

        witness.detail['subring'] = shape_basis(
            dsl.build('D(4, GF2)'), dsl.build('T(4, GF2)')
        ).literals()
        self.assertFalse(verify_witness(witness))

        witness.detail['subring'] = [E12_4]
        self.assertFalse(verify_witness(witness))

    def test_pair_outside_the_subring_does_not_replay(self):
        t5 = dsl.build('T(5, GF2)')
        d5 = shape_basis(dsl.build('D(5, GF2)'), t5)
        S = linear_closure(t5, d5.matrices() + [E11_5])
        a = ('[[1, 0, 0, 0, 0], [0, 0, 0, 0, 0], [0, 0, 0, 1, 0], '
             '[0, 0, 0, 0, 0], [0, 0, 0, 0, 1]]')
        b = ('[[1, 0, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 0, 0], '
             '[0, 0, 0, 0, 0], [0, 0, 0, 0, 1]]')
        self.assertFalse(S.contains(a))
        self.assertFalse(S.contains(b))
        witness = Witness(
            kind='i-reversibility-violation',
            ring='T(5, GF2)',
            elements=[a, b],
        )
        self.assertTrue(verify_witness(witness))
        witness.detail = {'route': 'exhaustive', 'subring': S.literals()}
        self.assertFalse(verify_witness(witness))

    def test_exhaustive_route(self):
        witness = certify_not_i_reversible(shape_basis(dsl.build('T(3, GF2)')))
        self.assertEqual(witness.detail['route'], 'exhaustive')
        self.assertTrue(verify_witness(witness))

    def test_i_reversible_subring(self):
        self.assertIsNone(
            certify_not_i_reversible(shape_basis(dsl.build('S3(GF2)')))
        )

    def test_inconclusive(self):
        settings = default_settings().with_overrides(max_pairs=100)
        with self.assertRaises(InconclusiveError):
            certify_not_i_reversible(
                shape_basis(dsl.build('T(3, GF2)')), settings
            )


class MaximalityTest(unittest.TestCase):
    def test_s3_in_t3(self):
        verdict = check_maximal_i_reversible(
            dsl.build('S3(GF2)'), dsl.build('T(3, GF2)')
        )
        self.assertTrue(verdict.holds)
        self.assertEqual(verdict.property, 'maximal-i-reversible')
        self.assertTrue(verdict.detail['maximal'])
        self.assertEqual(len(verdict.detail['subrings']), 1)
        self.assertEqual(len(verdict.witnesses), 1)
        self.assertTrue(all(verify_witness(w) for w in verdict.witnesses))

    def test_scalars_are_not_maximal(self):
        t2 = dsl.build('T(2, GF2)')
        base = SubringBasis.from_matrices(t2, [IDENTITY_2])
        verdict = check_maximal_i_reversible(base, t2)
        self.assertFalse(verdict.holds)
        self.assertEqual(
            verdict.witness.kind, 'intermediate-i-reversible-subring'
        )
        self.assertEqual(verdict.witness.base, 'closure(T(2, GF2), {})'.format(
            IDENTITY_2
        ))
        self.assertTrue(verify_witness(verdict.witness))

    def test_base_not_i_reversible(self):
        verdict = check_maximal_i_reversible(
            dsl.build('T(3, GF2)'), dsl.build('T(3, GF2)')
        )
        self.assertFalse(verdict.holds)
        self.assertEqual(verdict.detail['reason'], 'base-not-i-reversible')
        self.assertTrue(verify_witness(verdict.witness))

    def test_parallel(self):
        t2 = dsl.build('T(2, GF2)')
        base = SubringBasis.from_matrices(t2, [IDENTITY_2])
        settings = default_settings().with_overrides(jobs=2)
        single = check_maximal_i_reversible(base, t2)
        parallel = check_maximal_i_reversible(base, t2, settings)
        self.assertEqual(single.detail, parallel.detail)

    def test_tampered_subring_witness(self):
        t2 = dsl.build('T(2, GF2)')
        base = SubringBasis.from_matrices(t2, [IDENTITY_2])
        witness = check_maximal_i_reversible(base, t2).witness
        witness.elements = witness.elements + [E12]
        self.assertFalse(verify_witness(witness))

    def test_vectors_are_flat(self):
        S = shape_basis(dsl.build('D(3, GF2)'))
        self.assertEqual(S.basis.shape, (4, 9))
        self.assertTrue(np.all(S.basis < 2))
