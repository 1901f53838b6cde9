"""
Base rings: residues, prime fields, integers, products, table rings,
quaternion algebras and eventually-constant sequences
"""

import os
import logging
from itertools import product
from math import gcd
from typing import Iterator, List, Optional, Tuple

import numpy as np

from ringlab.errors import ConstructionError, ElementError
from ringlab.literal import Node, needs_parentheses
from ringlab.matrix import Matrix, read_table_file
from ringlab.ring import (
    Payload, Ring, mixed_radix_join, mixed_radix_split
)


logger = logging.getLogger(__name__)

DATA_FOLDER = os.path.join(os.path.dirname(__file__), 'data')


def data_file(name: str, suffix: str) -> str:
    """
    Resolves a table or map file

    An existing path is returned unchanged, otherwise ``name`` is looked
    up among the files bundled in ``ringlab/data``.
    """
    if os.path.exists(name):
        return name
    bundled = os.path.join(DATA_FOLDER, '{}{}'.format(name, suffix))
    if os.path.exists(bundled):
        return bundled
    raise ConstructionError('File `{}` not found'.format(name))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n ** 0.5) + 1))


class IntegersMod(Ring):
    """
    The residue ring Z_n

    Parameters
    ----------
    modulus: int
        n >= 1. ``Z1`` is the zero ring.
    """
    kind = 'residue'
    prefix = 'Z'

    def __init__(self, modulus: int) -> None:
        if modulus < 1:
            raise ConstructionError(
                'Modulus must be positive, got {}'.format(modulus)
            )
        super().__init__('{}{}'.format(self.prefix, modulus))
        self.modulus = modulus
        self._commutative = True

    def _zero(self) -> int:
        return 0

    def _one(self) -> int:
        return 1 % self.modulus

    def _add(self, a: int, b: int) -> int:
        return (a + b) % self.modulus

    def _neg(self, a: int) -> int:
        return (-a) % self.modulus

    def _mul(self, a: int, b: int) -> int:
        return (a * b) % self.modulus

    def _from_int(self, n: int) -> int:
        return n % self.modulus

    def _cardinality(self) -> int:
        return self.modulus

    def _enumerate_payloads(self) -> Iterator[int]:
        return iter(range(self.modulus))

    def _payload_at(self, index: int) -> int:
        return index

    def _index_of(self, payload: int) -> int:
        if not isinstance(payload, (int, np.integer)) or \
                not 0 <= payload < self.modulus:
            raise KeyError(payload)
        return int(payload)

    def _compute_characteristic(self) -> int:
        return self.modulus

    def _mul_idx(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return (np.asarray(a, dtype=np.int64) * b % self.modulus).astype(
            np.int32
        )

    def _add_idx(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return (np.asarray(a, dtype=np.int64) + b) % self.modulus

    def _neg_idx(self, a: np.ndarray) -> np.ndarray:
        return (-np.asarray(a, dtype=np.int64)) % self.modulus


class PrimeField(IntegersMod):
    """
    The prime field GF(p)

    Raises
    ------
    :class:`ringlab.errors.ConstructionError`
        ``p`` is not prime
    """
    kind = 'prime-field'
    prefix = 'GF'

    def __init__(self, p: int) -> None:
        if not is_prime(p):
            raise ConstructionError('GF({}) is not a prime field'.format(p))
        super().__init__(p)

    @property
    def p(self) -> int:
        return self.modulus


class Integers(Ring):
    """The integers, arithmetic-only"""
    kind = 'integers'

    def __init__(self) -> None:
        super().__init__('Z')
        self._commutative = True
        self._char = 0

    def _zero(self) -> int:
        return 0

    def _one(self) -> int:
        return 1

    def _add(self, a: int, b: int) -> int:
        return a + b

    def _neg(self, a: int) -> int:
        return -a

    def _mul(self, a: int, b: int) -> int:
        return a * b

    def _from_int(self, n: int) -> int:
        return n

    def _validate(self, payload: Payload) -> int:
        if not isinstance(payload, int):
            raise ElementError('`{!r}` is not an integer'.format(payload))
        return payload

    def _sample_payloads(self) -> List[int]:
        return [0, 1, -1, 2, -2, 3]


class ProductRing(Ring):
    """
    The direct product R x S with componentwise operations
    """
    kind = 'product'

    def __init__(self, left: Ring, right: Ring) -> None:
        super().__init__('prod({}, {})'.format(left.id, right.id))
        self.left = left
        self.right = right

    def _zero(self) -> Tuple[Payload, Payload]:
        return (self.left._zero(), self.right._zero())

    def _one(self) -> Tuple[Payload, Payload]:
        return (self.left._one(), self.right._one())

    def _add(self, a: Tuple, b: Tuple) -> Tuple:
        return (self.left._add(a[0], b[0]), self.right._add(a[1], b[1]))

    def _neg(self, a: Tuple) -> Tuple:
        return (self.left._neg(a[0]), self.right._neg(a[1]))

    def _mul(self, a: Tuple, b: Tuple) -> Tuple:
        return (self.left._mul(a[0], b[0]), self.right._mul(a[1], b[1]))

    def _from_int(self, n: int) -> Tuple:
        return (self.left._from_int(n), self.right._from_int(n))

    def _from_tuple(self, items: Tuple[Node, ...]) -> Tuple:
        if len(items) != 2:
            raise ElementError(
                'Elements of `{}` are pairs, got {} entries'.format(
                    self.id, len(items)
                )
            )
        return (
            self.left._evaluate(items[0], {}),
            self.right._evaluate(items[1], {})
        )

    def _validate(self, payload: Payload) -> Tuple:
        if not isinstance(payload, tuple) or len(payload) != 2:
            raise ElementError(
                '`{!r}` is not an element of `{}`'.format(payload, self.id)
            )
        return (
            self.left._validate(payload[0]),
            self.right._validate(payload[1])
        )

    def _format(self, a: Tuple) -> str:
        return '({}, {})'.format(
            self.left._format(a[0]), self.right._format(a[1])
        )

    def _cardinality(self) -> Optional[int]:
        left, right = self.left._cardinality(), self.right._cardinality()
        if left is None or right is None:
            return None
        return left * right

    def _enumerate_payloads(self) -> Iterator[Tuple]:
        return product(
            self.left._payloads(), self.right._payloads()
        )

    def _payload_at(self, index: int) -> Tuple:
        i, j = divmod(index, self.right.require_finite())
        return (self.left._payload_at(i), self.right._payload_at(j))

    def _index_of(self, payload: Tuple) -> int:
        return (
            self.left._index_of(payload[0]) * self.right.require_finite() +
            self.right._index_of(payload[1])
        )

    def _split(self, a: np.ndarray) -> List[np.ndarray]:
        return mixed_radix_split(a, [len(self.left), len(self.right)])

    def _join(self, left: np.ndarray, right: np.ndarray) -> np.ndarray:
        return mixed_radix_join([left, right], [len(self.left), len(self.right)])

    def _mul_idx(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a0, a1 = self._split(a)
        b0, b1 = self._split(b)
        return self._join(
            self.left._mul_idx(a0, b0), self.right._mul_idx(a1, b1)
        )

    def _add_idx(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a0, a1 = self._split(a)
        b0, b1 = self._split(b)
        return self._join(
            self.left._add_idx(a0, b0), self.right._add_idx(a1, b1)
        )

    def _neg_idx(self, a: np.ndarray) -> np.ndarray:
        a0, a1 = self._split(a)
        return self._join(self.left._neg_idx(a0), self.right._neg_idx(a1))

    def _compute_characteristic(self) -> int:
        left, right = self.left.characteristic, self.right.characteristic
        if left == 0 or right == 0:
            return 0
        return left * right // gcd(left, right)

    def _sample_payloads(self) -> List[Tuple]:
        return list(product(
            self.left._sample_payloads(), self.right._sample_payloads()
        ))


def validate_ring_axioms(add: Matrix, mul: Matrix) -> Tuple[int, int]:
    """
    Checks that two Cayley tables define a unital ring

    All n^3 triples are checked for associativity and distributivity.

    Parameters
    ----------
    add: :class:`ringlab.matrix.Matrix`
        Addition table
    mul: :class:`ringlab.matrix.Matrix`
        Multiplication table

    Returns
    -------
    tuple of int
        Index of the zero and index of the unity

    Raises
    ------
    :class:`ringlab.errors.ConstructionError`
        The message names the first violated axiom and its triple
    """
    if not (add.is_square and mul.is_square and add.n_rows == mul.n_rows):
        raise ConstructionError('Tables must be square and of equal order')
    n = add.n_rows
    if n == 0:
        raise ConstructionError('Tables must not be empty')
    if not (add.is_total(n) and mul.is_total(n)):
        raise ConstructionError('Table entries must lie in 0..{}'.format(n - 1))

    A = add.to_array()
    M = mul.to_array()
    idx = np.arange(n)
    a = idx[:, None, None]
    b = idx[None, :, None]
    c = idx[None, None, :]

    def fail(axiom: str, mask: np.ndarray) -> None:
        hit = np.argwhere(mask)
        if len(hit):
            raise ConstructionError(
                '{} fails for the triple {}'.format(
                    axiom, tuple(int(x) for x in hit[0])
                )
            )

    fail('Additive commutativity', (A != A.T)[:, :, None])
    fail('Additive associativity', A[A[a, b], c] != A[a, A[b, c]])

    zeros = [z for z in range(n) if (A[z] == idx).all() and (A[:, z] == idx).all()]
    if not zeros:
        raise ConstructionError('Addition has no neutral element')
    zero = zeros[0]
    missing = [x for x in range(n) if zero not in A[x]]
    if missing:
        raise ConstructionError(
            'Element {} has no additive inverse'.format(missing[0])
        )

    fail('Multiplicative associativity', M[M[a, b], c] != M[a, M[b, c]])
    fail('Left distributivity', M[a, A[b, c]] != A[M[a, b], M[a, c]])
    fail('Right distributivity', M[A[a, b], c] != A[M[a, c], M[b, c]])

    ones = [u for u in range(n) if (M[u] == idx).all() and (M[:, u] == idx).all()]
    if not ones:
        raise ConstructionError('Multiplication has no two-sided unity')
    return zero, ones[0]


class TableRing(Ring):
    """
    A finite ring given by its Cayley tables

    Elements are the 0-based table indices, and an integer literal is
    read as a table index.

    Parameters
    ----------
    add: :class:`ringlab.matrix.Matrix`
        Addition table
    mul: :class:`ringlab.matrix.Matrix`
        Multiplication table
    expr: str
        Ring id, e.g. ``table(gf4)``
    """
    kind = 'table'

    def __init__(self, add: Matrix, mul: Matrix, expr: str) -> None:
        super().__init__(expr)
        self.zero_idx, self.one_idx = validate_ring_axioms(add, mul)
        self.add_matrix = add
        self.mul_matrix = mul
        self._A = add.to_array()
        self._M = mul.to_array()
        self._N = np.array(
            [int(np.flatnonzero(row == self.zero_idx)[0]) for row in self._A],
            dtype=np.int32
        )
        self._mul_table = self._M
        self._add_table = self._A

    @classmethod
    def from_file(cls, name: str, expr: Optional[str] = None) -> 'TableRing':
        path = data_file(name, '.table')
        try:
            add, mul = read_table_file(path)
        except RuntimeError as err:
            raise ConstructionError('Invalid table file `{}`: {}'.format(
                name, err
            ))
        logger.debug('Read table ring from %s', path)
        return cls(add, mul, expr or 'table({})'.format(name))

    def _zero(self) -> int:
        return self.zero_idx

    def _one(self) -> int:
        return self.one_idx

    def _add(self, a: int, b: int) -> int:
        return int(self._A[a, b])

    def _neg(self, a: int) -> int:
        return int(self._N[a])

    def _mul(self, a: int, b: int) -> int:
        return int(self._M[a, b])

    def _from_int(self, n: int) -> int:
        if not 0 <= n < self.add_matrix.n_rows:
            raise ElementError(
                'Index {} out of range for `{}`'.format(n, self.id)
            )
        return n

    def _cardinality(self) -> int:
        return self.add_matrix.n_rows

    def _enumerate_payloads(self) -> Iterator[int]:
        return iter(range(self.add_matrix.n_rows))

    def _payload_at(self, index: int) -> int:
        return index

    def _index_of(self, payload: int) -> int:
        if not isinstance(payload, (int, np.integer)) or \
                not 0 <= payload < self.add_matrix.n_rows:
            raise KeyError(payload)
        return int(payload)

    def _mul_idx(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self._M[a, b]

    def _add_idx(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self._A[a, b]

    def _neg_idx(self, a: np.ndarray) -> np.ndarray:
        return self._N[a]


class QuaternionRing(Ring):
    """
    Quaternions a + bi + cj + dk over a commutative base ring

    i^2 = j^2 = k^2 = -1, ij = k = -ji, jk = i = -kj, ki = j = -ik.
    Arithmetic-only when the base is infinite.
    """
    kind = 'quaternion'
    UNITS = {'i': 1, 'j': 2, 'k': 3}

    def __init__(self, base: Ring) -> None:
        if not base.is_commutative:
            raise ConstructionError(
                'Quaternions need a commutative base, `{}` is not'.format(
                    base.id
                )
            )
        super().__init__('H({})'.format(base.id))
        self.base = base

    def _zero(self) -> Tuple:
        z = self.base._zero()
        return (z, z, z, z)

    def _one(self) -> Tuple:
        z = self.base._zero()
        return (self.base._one(), z, z, z)

    def _add(self, x: Tuple, y: Tuple) -> Tuple:
        add = self.base._add
        return tuple(add(a, b) for a, b in zip(x, y))

    def _neg(self, x: Tuple) -> Tuple:
        return tuple(self.base._neg(a) for a in x)

    def _mul(self, x: Tuple, y: Tuple) -> Tuple:
        B = self.base
        add, sub, mul = B._add, B._sub, B._mul
        a1, b1, c1, d1 = x
        a2, b2, c2, d2 = y
        return (
            sub(sub(sub(mul(a1, a2), mul(b1, b2)), mul(c1, c2)), mul(d1, d2)),
            sub(add(add(mul(a1, b2), mul(b1, a2)), mul(c1, d2)), mul(d1, c2)),
            add(add(sub(mul(a1, c2), mul(b1, d2)), mul(c1, a2)), mul(d1, b2)),
            add(sub(add(mul(a1, d2), mul(b1, c2)), mul(c1, b2)), mul(d1, a2)),
        )

    def _from_int(self, n: int) -> Tuple:
        z = self.base._zero()
        return (self.base._from_int(n), z, z, z)

    def _from_tuple(self, items: Tuple[Node, ...]) -> Tuple:
        if len(items) != 4:
            raise ElementError(
                'Quaternion tuples have 4 coefficients, got {}'.format(
                    len(items)
                )
            )
        return tuple(self.base._evaluate(item, {}) for item in items)

    def _unit(self, name: str, exponent: int) -> Tuple:
        if name not in self.UNITS:
            return super()._unit(name, exponent)
        z = self.base._zero()
        unit = [z, z, z, z]
        unit[self.UNITS[name]] = self.base._one()
        return self._power(tuple(unit), exponent)

    def _validate(self, payload: Payload) -> Tuple:
        if not isinstance(payload, tuple) or len(payload) != 4:
            raise ElementError(
                '`{!r}` is not a quaternion'.format(payload)
            )
        return tuple(self.base._validate(p) for p in payload)

    def _format(self, x: Tuple) -> str:
        terms = []
        one = self.base._one()
        minus_one = self.base._neg(one)
        for coefficient, suffix in zip(x, ('', 'i', 'j', 'k')):
            if coefficient == self.base._zero():
                continue
            text = self.base._format(coefficient)
            if not suffix:
                term = '({})'.format(text) if needs_parentheses(text) else text
            elif coefficient == one:
                term = suffix
            elif coefficient == minus_one and text == '-1':
                term = '-' + suffix
            elif text[:1] in '([' or needs_parentheses(text):
                wrapped = text if text[:1] in '([' else '({})'.format(text)
                term = '{}*{}'.format(wrapped, suffix)
            else:
                term = text + suffix
            terms.append(term)
        if not terms:
            return '0'
        out = terms[0]
        for term in terms[1:]:
            out += term if term.startswith('-') else '+' + term
        return out

    def _cardinality(self) -> Optional[int]:
        size = self.base._cardinality()
        return None if size is None else size ** 4

    def _enumerate_payloads(self) -> Iterator[Tuple]:
        return product(self.base._payloads(), repeat=4)

    def _compute_characteristic(self) -> int:
        return self.base.characteristic

    def _sample_payloads(self) -> List[Tuple]:
        return list(product(self.base._sample_payloads()[:3], repeat=4))


class SequenceRing(Ring):
    """
    Eventually-constant sequences over a base ring

    A payload is a tuple ``(a_1, ..., a_L)`` standing for the sequence
    with ``a_i = a_L`` for all ``i >= L``. Operations are pointwise.
    The ring is enumerable when the base is finite.

    Parameters
    ----------
    base: :class:`ringlab.ring.Ring`
    length: int
        The window L, at least 2
    """
    kind = 'sequence'

    def __init__(self, base: Ring, length: int) -> None:
        if length < 2:
            raise ConstructionError(
                'Sequence window must be at least 2, got {}'.format(length)
            )
        super().__init__('ecseq({}, {})'.format(base.id, length))
        self.base = base
        self.length = length

    def _zero(self) -> Tuple:
        return (self.base._zero(),) * self.length

    def _one(self) -> Tuple:
        return (self.base._one(),) * self.length

    def _add(self, x: Tuple, y: Tuple) -> Tuple:
        return tuple(self.base._add(a, b) for a, b in zip(x, y))

    def _neg(self, x: Tuple) -> Tuple:
        return tuple(self.base._neg(a) for a in x)

    def _mul(self, x: Tuple, y: Tuple) -> Tuple:
        return tuple(self.base._mul(a, b) for a, b in zip(x, y))

    def _from_int(self, n: int) -> Tuple:
        return (self.base._from_int(n),) * self.length

    def canonical(self, entries: List[Payload]) -> Tuple:
        """
        Trims or pads a sequence to the window length

        Raises
        ------
        :class:`ringlab.errors.ElementError`
            The entries beyond the window are not constant
        """
        if not entries:
            raise ElementError('Empty sequence')
        if len(entries) > self.length:
            tail = entries[self.length - 1:]
            if any(x != tail[0] for x in tail):
                raise ElementError(
                    'Sequence is not constant from position {}'.format(
                        self.length
                    )
                )
            return tuple(entries[:self.length])
        padding = [entries[-1]] * (self.length - len(entries))
        return tuple(list(entries) + padding)

    def _from_tuple(self, items: Tuple[Node, ...]) -> Tuple:
        return self.canonical(
            [self.base._evaluate(item, {}) for item in items]
        )

    def _validate(self, payload: Payload) -> Tuple:
        if not isinstance(payload, tuple):
            raise ElementError('`{!r}` is not a sequence'.format(payload))
        return self.canonical([self.base._validate(p) for p in payload])

    def _format(self, x: Tuple) -> str:
        return '({})'.format(', '.join(self.base._format(a) for a in x))

    def _cardinality(self) -> Optional[int]:
        size = self.base._cardinality()
        return None if size is None else size ** self.length

    def _enumerate_payloads(self) -> Iterator[Tuple]:
        return product(self.base._payloads(), repeat=self.length)

    def _split(self, a: np.ndarray) -> List[np.ndarray]:
        return mixed_radix_split(a, [len(self.base)] * self.length)

    def _join(self, digits: List[np.ndarray]) -> np.ndarray:
        return mixed_radix_join(digits, [len(self.base)] * self.length)

    def _mul_idx(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self._join([
            self.base._mul_idx(x, y)
            for x, y in zip(self._split(a), self._split(b))
        ])

    def _add_idx(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self._join([
            self.base._add_idx(x, y)
            for x, y in zip(self._split(a), self._split(b))
        ])

    def _neg_idx(self, a: np.ndarray) -> np.ndarray:
        return self._join([self.base._neg_idx(x) for x in self._split(a)])

    def _compute_characteristic(self) -> int:
        return self.base.characteristic

    def _sample_payloads(self) -> List[Tuple]:
        values = self.base._sample_payloads()[:2]
        return list(product(values, repeat=self.length))
