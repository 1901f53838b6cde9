"""
Ring expression language

Grammar::

    ring   := 'Z' | 'Z' INT | 'GF' INT          (also glued: Z6, GF2)
            | 'prod(' ring ',' ring ')'
            | ('M' | 'T' | 'D' | 'V') '(' INT ',' ring ')'
            | ('S3' | 'S4' | 'triv' | 'H' | 'laurent') '(' ring ')'
            | 'dorroh(' ring ',' ring ',' action ')'
            | 'nagata(' ring ',' endo ')'
            | 'skew(' ring ',' endo ',' conv ')'
            | 'skewtrunc(' ring ',' endo ',' INT ',' conv ')'
            | 'corner(' ring ',' elem ')'
            | ('closure' | 'rng') '(' ring (',' elem)+ ')'
            | 'ecseq(' ring ',' INT ')'
            | 'table(' path ')'
    endo   := 'id' | 'swap' | 'frob' | 'shift' | 'diagproj'
            | 'cw(' endo ',' endo ')'
            | 'etable(' path | '[' INT (',' INT)* ']' ')'
    action := 'hom' | 'char'
    conv   := 'left' | 'right'
    elem   := element literal, see :mod:`ringlab.literal`
    path   := quoted string or bare path

``rng(...)`` is only valid as the first argument of a ``char`` Dorroh
extension. Paths that do not exist are looked up among the bundled
files (``table(gf4)``).

The canonical text of an expression (:func:`format_expr`) is the id of
the ring it builds.
"""

import re
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple, Union

from ringlab import literal as lit
from ringlab.config import Settings
from ringlab.constructions import (
    DorrohAction, DorrohRing, MatrixRing, MatrixShape, NagataRing,
    NonUnitalCarrier, TrivialExtension, closure_ring, corner
)
from ringlab.endo import (
    ComponentwiseEndo, DiagProjectionEndo, Endomorphism, FrobeniusEndo,
    IdentityEndo, ShiftEndo, SwapEndo, TableEndo, require_valid
)
from ringlab.errors import (
    ConstructionError, DSLSyntaxError, ElementError
)
from ringlab.matrix import read_map_file
from ringlab.poly import (
    LaurentPolynomialRing, SkewPolynomialRing, TruncatedSkewRing
)
from ringlab.ring import Ring
from ringlab.rings import (
    Integers, IntegersMod, PrimeField, ProductRing, QuaternionRing,
    SequenceRing, TableRing, data_file, is_prime
)


logger = logging.getLogger(__name__)

# constructor -> argument kinds
SIGNATURES: Dict[str, Tuple[str, ...]] = {
    'prod': ('ring', 'ring'),
    'M': ('int', 'ring'),
    'T': ('int', 'ring'),
    'D': ('int', 'ring'),
    'V': ('int', 'ring'),
    'S3': ('ring',),
    'S4': ('ring',),
    'triv': ('ring',),
    'H': ('ring',),
    'laurent': ('ring',),
    'dorroh': ('ring', 'ring', 'action'),
    'nagata': ('ring', 'endo'),
    'skew': ('ring', 'endo', 'conv'),
    'skewtrunc': ('ring', 'endo', 'int', 'conv'),
    'corner': ('ring', 'elem'),
    'closure': ('ring', 'elems'),
    'rng': ('ring', 'elems'),
    'ecseq': ('ring', 'int'),
    'table': ('path',),
}

SIMPLE_ENDOS = ('id', 'swap', 'frob', 'shift', 'diagproj')
ACTIONS = ('hom', 'char')
CONVENTIONS = ('left', 'right')

RESIDUE_RE = re.compile(r'^(Z|GF)(\d+)$')
BARE_PATH_RE = re.compile(r'^[A-Za-z0-9_./~+-]+$')


@dataclass(frozen=True)
class Elem:
    """An element literal, kept as written"""
    text: str
    position: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Path:
    path: str
    position: int = field(default=0, compare=False)


@dataclass(frozen=True)
class EndoExpr:
    """
    Endomorphism syntax tree

    ``args`` holds nested :class:`EndoExpr` for ``cw``, a :class:`Path`
    or a tuple of image indices for ``etable``.
    """
    op: str
    args: Tuple[Any, ...] = ()
    position: int = field(default=0, compare=False)


@dataclass(frozen=True)
class RingExpr:
    """
    Ring syntax tree

    ``op`` is a constructor name or ``Z`` / ``GF``. ``args`` holds
    :class:`RingExpr`, :class:`EndoExpr`, :class:`Elem`, :class:`Path`,
    integers and the action / convention keywords.
    """
    op: str
    args: Tuple[Any, ...] = ()
    position: int = field(default=0, compare=False)


# ----------------------------------------------------------------------
# Parser
# ----------------------------------------------------------------------
def _int(scanner: lit.Scanner) -> int:
    return int(scanner.expect_kind('int').text)


def _keyword(scanner: lit.Scanner, choices: Tuple[str, ...], what: str) -> str:
    token = scanner.peek()
    if token.kind != 'name' or token.text not in choices:
        raise scanner.error(
            'Expected {} ({}) but found {}'.format(
                what, ' | '.join(choices), lit.describe(token)
            ),
            token.position
        )
    return scanner.next().text


def _elem(scanner: lit.Scanner) -> Elem:
    start = scanner.peek().position
    lit.parse_expr(scanner)
    scanner.peek()
    return Elem(scanner.text[start:scanner.pos].strip(), start)


def _path(scanner: lit.Scanner) -> Path:
    if scanner.lookahead() == '"':
        token = scanner.expect_kind('string')
        return Path(token.text[1:-1], token.position)
    raw, start = scanner.raw_until(',)')
    return Path(raw, start)


def _residue(op: str, n: int, scanner: lit.Scanner, position: int) -> RingExpr:
    if op == 'GF' and not is_prime(n):
        raise scanner.error('GF{} is not a prime field'.format(n), position)
    if n < 1:
        raise scanner.error('Z{} is not a residue ring'.format(n), position)
    return RingExpr(op, (n,), position)


def parse_ring(scanner: lit.Scanner) -> RingExpr:
    token = scanner.expect_kind('name')
    name, position = token.text, token.position

    match = RESIDUE_RE.match(name)
    if match:
        return _residue(match.group(1), int(match.group(2)), scanner, position)
    if name in ('Z', 'GF') and scanner.peek().kind == 'int':
        return _residue(name, _int(scanner), scanner, position)
    if name == 'Z':
        return RingExpr('Z', (), position)
    if name not in SIGNATURES:
        raise scanner.error('Unknown ring `{}`'.format(name), position)

    scanner.expect('(')
    args: List[Any] = []
    for number, kind in enumerate(SIGNATURES[name]):
        if number:
            scanner.expect(',')
        if kind == 'ring':
            args.append(parse_ring(scanner))
        elif kind == 'int':
            args.append(_int(scanner))
        elif kind == 'endo':
            args.append(parse_endo(scanner))
        elif kind == 'action':
            args.append(_keyword(scanner, ACTIONS, 'an action'))
        elif kind == 'conv':
            args.append(_keyword(scanner, CONVENTIONS, 'a convention'))
        elif kind == 'elem':
            args.append(_elem(scanner))
        elif kind == 'elems':
            args.append(_elem(scanner))
            while scanner.accept(','):
                args.append(_elem(scanner))
        elif kind == 'path':
            args.append(_path(scanner))
    scanner.expect(')')
    return RingExpr(name, tuple(args), position)


def parse_endo(scanner: lit.Scanner) -> EndoExpr:
    token = scanner.expect_kind('name')
    name, position = token.text, token.position
    if name in SIMPLE_ENDOS:
        return EndoExpr(name, (), position)
    if name == 'cw':
        scanner.expect('(')
        alpha = parse_endo(scanner)
        scanner.expect(',')
        beta = parse_endo(scanner)
        scanner.expect(')')
        return EndoExpr('cw', (alpha, beta), position)
    if name == 'etable':
        scanner.expect('(')
        if scanner.lookahead() == '[':
            scanner.expect('[')
            images = [_int(scanner)]
            while scanner.accept(','):
                images.append(_int(scanner))
            scanner.expect(']')
            arg: Any = tuple(images)
        else:
            arg = _path(scanner)
        scanner.expect(')')
        return EndoExpr('etable', (arg,), position)
    raise scanner.error('Unknown endomorphism `{}`'.format(name), position)


def parse(text: str) -> RingExpr:
    """
    Parses a ring expression

    Raises
    ------
    :class:`ringlab.errors.DSLSyntaxError`
        With line and column of the offending token

    Examples
    --------
        parse('nagata(prod(Z3,Z3), swap)')
        # >> RingExpr(op='nagata', args=(RingExpr(op='prod', ...), EndoExpr(op='swap')))

    """
    scanner = lit.Scanner(text)
    expr = parse_ring(scanner)
    scanner.expect_end()
    return expr


def parse_endo_text(text: str) -> EndoExpr:
    scanner = lit.Scanner(text)
    expr = parse_endo(scanner)
    scanner.expect_end()
    return expr


# ----------------------------------------------------------------------
# Printer
# ----------------------------------------------------------------------
def _format_path(path: Path) -> str:
    if BARE_PATH_RE.match(path.path):
        return path.path
    return '"{}"'.format(path.path)


def format_endo(expr: EndoExpr) -> str:
    if expr.op == 'cw':
        return 'cw({}, {})'.format(*(format_endo(a) for a in expr.args))
    if expr.op == 'etable':
        arg = expr.args[0]
        if isinstance(arg, Path):
            return 'etable({})'.format(_format_path(arg))
        return 'etable([{}])'.format(', '.join(str(i) for i in arg))
    return expr.op


def _format_arg(arg: Any) -> str:
    if isinstance(arg, RingExpr):
        return format_expr(arg)
    if isinstance(arg, EndoExpr):
        return format_endo(arg)
    if isinstance(arg, Elem):
        return arg.text
    if isinstance(arg, Path):
        return _format_path(arg)
    return str(arg)


def format_expr(expr: RingExpr) -> str:
    """
    Canonical text of a ring expression

    ``parse(format_expr(e)) == e`` for every parsed expression ``e``.
    """
    if expr.op in ('Z', 'GF'):
        return '{}{}'.format(expr.op, expr.args[0] if expr.args else '')
    return '{}({})'.format(
        expr.op, ', '.join(_format_arg(a) for a in expr.args)
    )


# ----------------------------------------------------------------------
# Builder
# ----------------------------------------------------------------------
def _site(err: ConstructionError, expr: RingExpr) -> ConstructionError:
    if '(in `' in str(err):
        return err
    return ConstructionError(
        '{} (in `{}`)'.format(err, format_expr(expr)), err.verdict
    )


def _elements(ring: Ring, args: Tuple[Any, ...]) -> List[Any]:
    values = []
    for arg in args:
        try:
            values.append(ring.parse(arg.text))
        except (ElementError, DSLSyntaxError) as err:
            raise ConstructionError(
                '`{}` is not an element of `{}`: {}'.format(
                    arg.text, ring.id, err
                )
            )
    return values


def build_endo(
    text: Union[str, EndoExpr],
    ring: Ring,
    validate: bool = True,
    settings: Optional[Settings] = None
) -> Endomorphism:
    """
    Builds an endomorphism of ``ring``

    Parameters
    ----------
    text: str or :class:`EndoExpr`
        e.g. ``"swap"``, ``"cw(id, frob)"``, ``"etable([0, 2, 1])"``
    ring: :class:`ringlab.ring.Ring`
    validate: bool, default ``True``
        Check the endomorphism laws, see :func:`ringlab.endo.require_valid`

    Raises
    ------
    :class:`ringlab.errors.ConstructionError`
    :class:`ringlab.errors.DSLSyntaxError`
    """
    expr = parse_endo_text(text) if isinstance(text, str) else text
    sigma = _build_endo(expr, ring)
    if validate:
        require_valid(sigma, settings)
    return sigma


def _build_endo(expr: EndoExpr, ring: Ring) -> Endomorphism:
    if expr.op == 'id':
        return IdentityEndo(ring)
    if expr.op == 'swap':
        return SwapEndo(ring)
    if expr.op == 'frob':
        return FrobeniusEndo(ring)
    if expr.op == 'shift':
        return ShiftEndo(ring)
    if expr.op == 'diagproj':
        return DiagProjectionEndo(ring)
    if expr.op == 'cw':
        if not isinstance(ring, ProductRing):
            raise ConstructionError(
                '`cw` needs a product ring, got `{}`'.format(ring.id)
            )
        alpha, beta = expr.args
        return ComponentwiseEndo(
            ring, _build_endo(alpha, ring.left), _build_endo(beta, ring.right)
        )
    if expr.op == 'etable':
        arg = expr.args[0]
        if isinstance(arg, Path):
            path = data_file(arg.path, '.endo')
            try:
                images = read_map_file(path)
            except (OSError, RuntimeError) as err:
                raise ConstructionError(
                    'Invalid endomorphism table `{}`: {}'.format(arg.path, err)
                )
            return TableEndo(ring, images, format_endo(expr))
        return TableEndo(ring, list(arg))
    raise ConstructionError('Unknown endomorphism `{}`'.format(expr.op))


def build(
    expr: Union[str, RingExpr],
    settings: Optional[Settings] = None
) -> Ring:
    """
    Builds the ring of an expression

    Parameters
    ----------
    expr: str or :class:`RingExpr`
        e.g. ``"D(5, Z2)"``
    settings: :class:`ringlab.config.Settings`, default ``None``
        Budget for validating endomorphisms and actions

    Returns
    -------
    :class:`ringlab.ring.Ring`
        Its ``id`` is the canonical text of ``expr``

    Raises
    ------
    :class:`ringlab.errors.DSLSyntaxError`
    :class:`ringlab.errors.ConstructionError`
        Semantic errors name the failing sub-expression

    Examples
    --------
        ring = build('nagata(prod(Z3,Z3), swap)')
        ring.id
        # >> 'nagata(prod(Z3, Z3), swap)'
        len(ring)
        # >> 81

    """
    if isinstance(expr, str):
        expr = parse(expr)
    try:
        return _build(expr, settings)
    except ConstructionError as err:
        raise _site(err, expr)


def _build(expr: RingExpr, settings: Optional[Settings]) -> Ring:
    op, args = expr.op, expr.args
    if op == 'Z':
        return IntegersMod(args[0]) if args else Integers()
    if op == 'GF':
        return PrimeField(args[0])
    if op == 'table':
        return TableRing.from_file(args[0].path, format_expr(expr))
    if op == 'rng':
        raise ConstructionError(
            '`rng(...)` is only valid as the first argument of a char '
            'Dorroh extension'
        )

    def sub(node: RingExpr) -> Ring:
        try:
            return _build(node, settings)
        except ConstructionError as err:
            raise _site(err, node)

    if op == 'dorroh':
        carrier_expr, scalars_expr, mode = args
        if carrier_expr.op == 'rng':
            if mode != 'char':
                raise ConstructionError(
                    'A ring without unity only admits the char action'
                )
            ambient = sub(carrier_expr.args[0])
            carrier: Ring = NonUnitalCarrier(
                ambient, _elements(ambient, carrier_expr.args[1:])
            )
        else:
            carrier = sub(carrier_expr)
        scalars = sub(scalars_expr)
        return DorrohRing(DorrohAction(carrier, scalars, mode))

    if op in ('M', 'T', 'D', 'V'):
        return MatrixRing(MatrixShape.from_tag(op, args[0]), sub(args[1]))

    base = sub(args[0])
    if op == 'prod':
        return ProductRing(base, sub(args[1]))
    if op in ('S3', 'S4'):
        return MatrixRing(MatrixShape.from_tag(op), base)
    if op == 'triv':
        return TrivialExtension(base)
    if op == 'H':
        return QuaternionRing(base)
    if op == 'laurent':
        return LaurentPolynomialRing(base)
    if op == 'nagata':
        return NagataRing(base, _build_endo(args[1], base), settings)
    if op == 'skew':
        return SkewPolynomialRing(
            base, _build_endo(args[1], base), args[2], settings
        )
    if op == 'skewtrunc':
        return TruncatedSkewRing(
            base, _build_endo(args[1], base), args[2], args[3], settings
        )
    if op == 'corner':
        return corner(base, _elements(base, args[1:])[0])
    if op == 'closure':
        return closure_ring(base, _elements(base, args[1:]))
    if op == 'ecseq':
        return SequenceRing(base, args[1])
    raise ConstructionError('Unknown ring constructor `{}`'.format(op))
