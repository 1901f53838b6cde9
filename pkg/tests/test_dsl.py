import unittest

from ringlab import dsl
from ringlab import literal as lit
from ringlab.endo import TableEndo
from ringlab.errors import ConstructionError, DSLSyntaxError
from ringlab.rings import Integers, IntegersMod, PrimeField

from tests import mockrings


CANONICAL = [
    'Z', 'Z6', 'GF5', 'prod(Z2, Z3)', 'M(2, Z2)', 'T(3, GF2)', 'D(3, Z4)',
    'V(3, Z2)', 'S3(Z2)', 'S4(GF2)', 'triv(Z4)', 'H(Z3)', 'laurent(Z2)',
    'dorroh(Z3, Z3, char)', 'dorroh(rng(Z4, 2), Z2, char)',
    'nagata(prod(Z3, Z3), swap)', 'skew(prod(Z2, Z2), swap, right)',
    'skewtrunc(table(gf4), frob, 2, left)', 'corner(T(2, Z2), [[1, 0], [0, 0]])',
    'closure(M(2, Z2), [[0, 1], [0, 0]], [[0, 0], [1, 0]])', 'ecseq(Z2, 3)',
    'nagata(prod(Z2, Z2), cw(id, id))', 'nagata(Z3, etable([0, 1, 2]))',
    'Z1', 'Z8', 'GF3', 'GF7', 'table(gf4)', 'prod(Z2, Z2)', 'prod(Z3, GF5)',
    'prod(prod(Z2, Z2), Z2)', 'M(2, GF3)', 'M(3, Z2)', 'M(2, table(gf4))',
    'T(2, Z6)', 'T(4, GF2)', 'T(2, triv(Z2))', 'D(4, Z2)', 'D(5, GF2)',
    'D(3, table(gf4))', 'V(4, Z4)', 'V(3, Z6)', 'S3(GF3)', 'S3(Z4)',
    'S4(Z2)', 'triv(triv(Z2))', 'triv(prod(Z2, Z3))', 'triv(M(2, Z2))',
    'H(Z5)', 'H(GF7)', 'laurent(GF3)', 'dorroh(Z2, Z2, char)',
    'dorroh(Z4, Z4, hom)', 'dorroh(prod(Z2, Z2), Z2, hom)',
    'dorroh(M(2, Z2), Z2, hom)', 'dorroh(rng(Z4, 2), Z4, char)',
    'nagata(Z4, id)', 'nagata(table(gf4), frob)',
    'nagata(prod(prod(Z2, Z2), Z2), cw(swap, id))',
    'nagata(GF5, etable([0, 1, 2, 3, 4]))', 'skew(Z3, id, left)',
    'skew(table(gf4), frob, right)', 'skew(prod(Z2, Z2), cw(id, id), left)',
    'skewtrunc(Z4, id, 3, right)', 'skewtrunc(prod(Z2, Z2), swap, 2, right)',
    'ecseq(Z3, 2)', 'ecseq(GF2, 4)', 'corner(M(2, Z2), [[1, 0], [0, 0]])',
    'corner(T(3, Z2), [[0, 0, 0], [0, 1, 0], [0, 0, 0]])',
    'closure(T(3, GF2), [[1, 0, 0], [0, 0, 0], [0, 0, 0]])',
    'closure(M(2, Z3), [[1, 1], [0, 1]])',
]


class ParseTest(unittest.TestCase):
    def test_canonical_roundtrip(self):
        self.assertGreaterEqual(len(CANONICAL), 50)
        for text in CANONICAL:
            expr = dsl.parse(text)
            self.assertEqual(dsl.format_expr(expr), text)
            self.assertEqual(dsl.parse(dsl.format_expr(expr)), expr)

    def test_normalisation(self):
        self.assertEqual(
            dsl.format_expr(dsl.parse('nagata( prod(Z 3,Z3) ,swap )')),
            'nagata(prod(Z3, Z3), swap)'
        )
        self.assertEqual(dsl.format_expr(dsl.parse('GF 7')), 'GF7')

    def test_positions_do_not_matter(self):
        self.assertEqual(dsl.parse('prod(Z2,Z2)'), dsl.parse('prod( Z2, Z2 )'))

    def test_paths(self):
        expr = dsl.parse('table("my tables/x.tbl")')
        self.assertEqual(expr.args[0].path, 'my tables/x.tbl')
        self.assertEqual(dsl.format_expr(expr), 'table("my tables/x.tbl")')
        expr = dsl.parse('table(data/gf4.tbl)')
        self.assertEqual(dsl.format_expr(expr), 'table(data/gf4.tbl)')

    def test_endo_text(self):
        expr = dsl.parse_endo_text('cw(frob, etable([0, 1]))')
        self.assertEqual(expr.op, 'cw')
        self.assertEqual(dsl.format_endo(expr), 'cw(frob, etable([0, 1]))')


class SyntaxErrorTest(unittest.TestCase):
    def test_non_prime_field(self):
        with self.assertRaises(DSLSyntaxError) as context:
            dsl.parse('GF4')
        self.assertEqual(
            'GF4 is not a prime field at line 1, column 1\nGF4\n^',
            str(context.exception)
        )

    def test_missing_comma(self):
        with self.assertRaises(DSLSyntaxError) as context:
            dsl.parse('prod(Z2 Z3)')
        self.assertEqual(
            'Expected `,` but found `Z3` at line 1, column 9\n'
            'prod(Z2 Z3)\n'
            '        ^',
            str(context.exception)
        )
        self.assertEqual(context.exception.line, 1)
        self.assertEqual(context.exception.column, 9)

    def test_multiline(self):
        with self.assertRaises(DSLSyntaxError) as context:
            dsl.parse('prod(Z2,\n  Q3)')
        err = context.exception
        self.assertEqual((err.line, err.column), (2, 3))
        self.assertEqual(err.source_line, '  Q3)')
        self.assertEqual(
            'Unknown ring `Q3` at line 2, column 3\n  Q3)\n  ^', str(err)
        )

    def test_keywords(self):
        with self.assertRaises(DSLSyntaxError) as context:
            dsl.parse('dorroh(Z2, Z2, left)')
        self.assertTrue(str(context.exception).startswith(
            'Expected an action (hom | char) but found `left` '
            'at line 1, column 16'
        ))
        with self.assertRaises(DSLSyntaxError):
            dsl.parse('skew(Z2, id, middle)')

    def test_other_errors(self):
        for text in ('Z0', 'Q(2)', 'Z2 Z3', 'prod(Z2)', 'M(Z2, 2)',
                     'nagata(Z2, twist)', 'T(2, Z2', ''):
            with self.assertRaises(DSLSyntaxError, msg=text):
                dsl.parse(text)

    def test_unknown_endomorphism(self):
        with self.assertRaises(DSLSyntaxError) as context:
            dsl.build_endo('twist', IntegersMod(2))
        self.assertIn('Unknown endomorphism `twist`', str(context.exception))


class BuildTest(unittest.TestCase):
    def test_residues(self):
        self.assertIsInstance(dsl.build('Z'), Integers)
        self.assertEqual(dsl.build('Z 6'), IntegersMod(6))
        self.assertIsInstance(dsl.build('GF5'), PrimeField)

    def test_ids_are_canonical(self):
        for text in CANONICAL:
            if text.startswith('dorroh(rng') or text == 'Z':
                continue
            self.assertEqual(dsl.build(text).id, text, text)

    def test_sizes(self):
        for text, size in (
            ('nagata(prod(Z3, Z3), swap)', 81),
            ('T(3, GF2)', 64),
            ('S4(GF2)', 256),
            ('dorroh(Z3, Z3, char)', 9),
            ('corner(T(2, Z2), [[1, 0], [0, 0]])', 2),
            ('closure(M(2, Z2), [[0, 1], [0, 0]])', 4),
            ('skewtrunc(table(gf4), frob, 2, left)', 16),
        ):
            self.assertEqual(len(dsl.build(text)), size, text)

    def test_element_literals_are_normalised(self):
        ring = dsl.build('corner(T(2, Z2), [[1,0],[0,0]])')
        self.assertEqual(ring.id, 'corner(T(2, Z2), [[1, 0], [0, 0]])')

    def test_construction_error_names_the_site(self):
        with self.assertRaises(ConstructionError) as context:
            dsl.build('nagata(T(2, Z2), id)')
        self.assertEqual(
            'Nagata extensions need a commutative ring, `T(2, Z2)` is not '
            '(in `nagata(T(2, Z2), id)`)',
            str(context.exception)
        )

    def test_nested_site(self):
        with self.assertRaises(ConstructionError) as context:
            dsl.build('prod(Z2, nagata(T(2, Z2), id))')
        self.assertTrue(
            str(context.exception).endswith('(in `nagata(T(2, Z2), id)`)')
        )

    def test_bad_element(self):
        with self.assertRaises(ConstructionError) as context:
            dsl.build('corner(T(2, Z2), [[0, 0], [1, 0]])')
        self.assertIn('is not an element of `T(2, Z2)`', str(context.exception))

    def test_rng(self):
        with self.assertRaises(ConstructionError):
            dsl.build('rng(Z4, 2)')
        with self.assertRaises(ConstructionError) as context:
            dsl.build('dorroh(rng(Z4, 2), Z2, hom)')
        self.assertTrue(str(context.exception).startswith(
            'A ring without unity only admits the char action'
        ))
        ring = dsl.build('dorroh(rng(Z4, 2), Z2, char)')
        self.assertEqual(len(ring), 4)

    def test_swap_needs_equal_factors(self):
        with self.assertRaises(ConstructionError):
            dsl.build('nagata(prod(Z2, Z3), swap)')


class BuildEndoTest(unittest.TestCase):
    def test_componentwise(self):
        ring = dsl.build('prod(table(gf4), Z2)')
        sigma = dsl.build_endo('cw(frob, id)', ring)
        self.assertEqual(sigma.expr, 'cw(frob, id)')

    def test_cw_needs_product(self):
        with self.assertRaises(ConstructionError) as context:
            dsl.build_endo('cw(id, id)', IntegersMod(6))
        self.assertEqual(
            '`cw` needs a product ring, got `Z6`', str(context.exception)
        )

    def test_validation(self):
        with self.assertRaises(ConstructionError):
            dsl.build_endo('etable([0, 2, 1])', IntegersMod(3))
        sigma = dsl.build_endo(
            'etable([0, 2, 1])', IntegersMod(3), validate=False
        )
        self.assertIsInstance(sigma, TableEndo)
        sigma = dsl.build_endo('etable([0, 1, 3, 2])', mockrings.gf4())
        self.assertEqual(sigma.index_map().tolist(), [0, 1, 3, 2])


class LiteralTest(unittest.TestCase):
    def test_juxtaposition(self):
        self.assertEqual(
            lit.parse_literal('2i'), lit.Mul(lit.Num(2), lit.Name('i', 1))
        )

    def test_call_needs_adjacent_parenthesis(self):
        node = lit.parse_literal('coeff(f, 0)')
        self.assertIsInstance(node, lit.Call)
        self.assertEqual(node.args[1], lit.Num(0))
        with self.assertRaises(DSLSyntaxError):
            lit.parse_literal('coeff (f, 0)')

    def test_powers(self):
        self.assertEqual(
            lit.parse_literal('x^-2'), lit.Pow(lit.Name('x', 0), -2)
        )
        self.assertEqual(
            lit.parse_literal('-x^2'), lit.Neg(lit.Pow(lit.Name('x', 1), 2))
        )

    def test_subtraction(self):
        self.assertEqual(
            lit.parse_literal('1 - 2'),
            lit.Add(lit.Num(1), lit.Neg(lit.Num(2)))
        )

    def test_tuples_and_grids(self):
        self.assertEqual(
            lit.parse_literal('(1, 0)'), lit.TupleLit((lit.Num(1), lit.Num(0)))
        )
        self.assertEqual(lit.parse_literal('(3)'), lit.Num(3))
        grid = lit.parse_literal('[[1, 0], [0, 1]]')
        self.assertEqual(len(grid.rows), 2)

    def test_ragged(self):
        with self.assertRaises(DSLSyntaxError) as context:
            lit.parse_literal('[[1, 0], [1]]')
        self.assertTrue(
            str(context.exception).startswith('Ragged matrix literal')
        )

    def test_unexpected_character(self):
        with self.assertRaises(DSLSyntaxError) as context:
            lit.parse_literal('2 $ 3')
        self.assertTrue(
            str(context.exception).startswith('Unexpected character `$`')
        )

    def test_claims(self):
        left, op, right = lit.parse_claim('a*b != 0')
        self.assertEqual(op, '!=')
        self.assertEqual(right, lit.Num(0))
        with self.assertRaises(DSLSyntaxError) as context:
            lit.parse_claim('a*b')
        self.assertTrue(str(context.exception).startswith(
            'Expected `=` or `!=` but found end of input'
        ))

    def test_needs_parentheses(self):
        self.assertTrue(lit.needs_parentheses('1 + x'))
        self.assertFalse(lit.needs_parentheses('(1, 0)'))
        self.assertFalse(lit.needs_parentheses('-1'))
        self.assertFalse(lit.needs_parentheses('[[1, 0], [0, 1]]'))
