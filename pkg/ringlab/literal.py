"""
Scanner and element-literal grammar

Element literals mirror the payload variants of the rings::

    3                   integer (n times the unity)
    (1, 0)              tuple (products, pairs, sequences)
    [[1, 1], [0, 1]]    matrix
    1-2i+k              quaternion
    (1, 0)*x + (4, 4)   polynomial, ``x^-1`` for Laurent polynomials

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor (['*'] factor)*
    factor := '-' factor | power
    power  := atom ['^' ['-'] INT]
    atom   := INT | NAME ['(' expr (',' expr)* ')']
            | '(' expr (',' expr)* ')' | '[' row (',' row)* ']'
    row    := '[' expr (',' expr)* ']'

Juxtaposition (``2i``, ``(1, 0)x``) is multiplication when the right
factor is a name. Names are resolved by the ring that evaluates the
literal (units ``i``, ``j``, ``k``, ``x``) or by the variables of a
witness claim.
"""

import re
from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

from ringlab.errors import DSLSyntaxError


TOKEN_RE = re.compile(
    r'(?P<int>\d+)'
    r'|(?P<name>[A-Za-z_][A-Za-z0-9_.]*)'
    r'|(?P<string>"[^"\n]*")'
    r'|(?P<op>!=|[()\[\],+\-*^=])'
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


class Scanner:
    """
    Lazy tokenizer shared by the element and ring-expression grammars

    Tokens are produced on demand, so a grammar can switch to raw
    reading (e.g. bare file paths) at any point.
    """
    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0
        self._end = 0
        self._peeked: Optional[Token] = None

    def _skip_space(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> Token:
        if self._peeked is None:
            self._skip_space()
            if self.pos >= len(self.text):
                self._peeked = Token('end', '', self.pos)
            else:
                match = TOKEN_RE.match(self.text, self.pos)
                if match is None:
                    raise self.error(
                        'Unexpected character `{}`'.format(
                            self.text[self.pos]
                        ),
                        self.pos
                    )
                kind = match.lastgroup or 'op'
                self._peeked = Token(kind, match.group(0), self.pos)
        return self._peeked

    def next(self) -> Token:
        token = self.peek()
        self._peeked = None
        self.pos = token.position + len(token.text)
        self._end = self.pos
        return token

    def accept(self, text: str) -> bool:
        if self.peek().text == text and self.peek().kind != 'string':
            self.next()
            return True
        return False

    def expect(self, text: str) -> Token:
        token = self.peek()
        if token.text != text or token.kind == 'string':
            raise self.error(
                'Expected `{}` but found {}'.format(text, describe(token)),
                token.position
            )
        return self.next()

    def expect_kind(self, kind: str) -> Token:
        token = self.peek()
        if token.kind != kind:
            raise self.error(
                'Expected {} but found {}'.format(kind, describe(token)),
                token.position
            )
        return self.next()

    def expect_end(self) -> None:
        token = self.peek()
        if token.kind != 'end':
            raise self.error(
                'Unexpected trailing input {}'.format(describe(token)),
                token.position
            )

    def lookahead(self) -> str:
        """The next non-space character, without tokenizing it"""
        if self._peeked is not None:
            return self.text[self._peeked.position:self._peeked.position + 1]
        self._skip_space()
        return self.text[self.pos:self.pos + 1]

    def adjacent(self) -> bool:
        """``True`` if the next token follows without whitespace"""
        return self.peek().position == self._end

    def raw_until(self, stops: str = ',)') -> Tuple[str, int]:
        """
        Reads raw text up to the next stop character at bracket depth 0
        """
        self._peeked = None
        self._skip_space()
        start = self.pos
        depth = 0
        while self.pos < len(self.text):
            char = self.text[self.pos]
            if char in '([':
                depth += 1
            elif char in ')]':
                if depth == 0 and char in stops:
                    break
                depth -= 1
            elif char in stops and depth == 0:
                break
            self.pos += 1
        raw = self.text[start:self.pos].strip()
        if not raw:
            raise self.error('Expected a path', start)
        return raw, start

    def error(self, message: str, position: int) -> DSLSyntaxError:
        return DSLSyntaxError(message, self.text, position)


def describe(token: Token) -> str:
    if token.kind == 'end':
        return 'end of input'
    return '`{}`'.format(token.text)


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Name:
    name: str
    position: int = 0


@dataclass(frozen=True)
class TupleLit:
    items: Tuple['Node', ...]


@dataclass(frozen=True)
class Grid:
    rows: Tuple[Tuple['Node', ...], ...]


@dataclass(frozen=True)
class Neg:
    operand: 'Node'


@dataclass(frozen=True)
class Add:
    left: 'Node'
    right: 'Node'


@dataclass(frozen=True)
class Mul:
    left: 'Node'
    right: 'Node'


@dataclass(frozen=True)
class Pow:
    base: 'Node'
    exponent: int


@dataclass(frozen=True)
class Call:
    name: str
    args: Tuple['Node', ...]


Node = Union[Num, Name, TupleLit, Grid, Neg, Add, Mul, Pow, Call]


def parse_expr(scanner: Scanner) -> Node:
    node = parse_term(scanner)
    while True:
        if scanner.accept('+'):
            node = Add(node, parse_term(scanner))
        elif scanner.accept('-'):
            node = Add(node, Neg(parse_term(scanner)))
        else:
            return node


def parse_term(scanner: Scanner) -> Node:
    node = parse_factor(scanner)
    while True:
        if scanner.accept('*'):
            node = Mul(node, parse_factor(scanner))
        elif scanner.peek().kind == 'name':
            # juxtaposition: 2i, (1, 0)x
            node = Mul(node, parse_factor(scanner))
        else:
            return node


def parse_factor(scanner: Scanner) -> Node:
    if scanner.accept('-'):
        return Neg(parse_factor(scanner))
    node = parse_atom(scanner)
    if scanner.accept('^'):
        negative = scanner.accept('-')
        exponent = int(scanner.expect_kind('int').text)
        node = Pow(node, -exponent if negative else exponent)
    return node


def _parse_list(scanner: Scanner, close: str) -> List[Node]:
    items = [parse_expr(scanner)]
    while scanner.accept(','):
        items.append(parse_expr(scanner))
    scanner.expect(close)
    return items


def parse_atom(scanner: Scanner) -> Node:
    token = scanner.peek()
    if token.kind == 'int':
        scanner.next()
        return Num(int(token.text))
    if token.kind == 'name':
        scanner.next()
        if scanner.peek().text == '(' and scanner.adjacent():
            scanner.next()
            return Call(token.text, tuple(_parse_list(scanner, ')')))
        return Name(token.text, token.position)
    if scanner.accept('('):
        items = _parse_list(scanner, ')')
        if len(items) == 1:
            return items[0]
        return TupleLit(tuple(items))
    if scanner.accept('['):
        rows = []
        while True:
            scanner.expect('[')
            rows.append(tuple(_parse_list(scanner, ']')))
            if not scanner.accept(','):
                break
        scanner.expect(']')
        width = len(rows[0])
        if any(len(row) != width for row in rows):
            raise scanner.error('Ragged matrix literal', token.position)
        return Grid(tuple(rows))
    raise scanner.error(
        'Expected an element but found {}'.format(describe(token)),
        token.position
    )


def parse_literal(text: str) -> Node:
    """
    Parses a complete element literal

    Parameters
    ----------
    text: str
        The literal, e.g. ``"(1, 0)*x + (4, 4)"``

    Returns
    -------
    Node
        The literal syntax tree. Use :meth:`ringlab.ring.Ring.element`
        to evaluate it in a ring.

    Raises
    ------
    :class:`ringlab.errors.DSLSyntaxError`
    """
    scanner = Scanner(text)
    node = parse_expr(scanner)
    scanner.expect_end()
    return node


def parse_claim(text: str) -> Tuple[Node, str, Node]:
    """
    Parses a claim equation ``lhs = rhs`` or ``lhs != rhs``
    """
    scanner = Scanner(text)
    left = parse_expr(scanner)
    token = scanner.peek()
    if token.text not in ('=', '!='):
        raise scanner.error(
            'Expected `=` or `!=` but found {}'.format(describe(token)),
            token.position
        )
    scanner.next()
    right = parse_expr(scanner)
    scanner.expect_end()
    return left, token.text, right


def needs_parentheses(text: str) -> bool:
    """
    ``True`` if a formatted element must be wrapped before it is
    used as a coefficient
    """
    depth = 0
    for position, char in enumerate(text):
        if char in "([":
            depth += 1
        elif char in ")]":
            depth -= 1
        elif depth == 0 and position > 0 and char in "+- ":
            return True
    return False
