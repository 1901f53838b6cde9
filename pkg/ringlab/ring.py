"""
Ring abstraction and element model

A :class:`Ring` bundles exact arithmetic on *payloads* (plain, hashable
Python data: ints and nested tuples) with an optional enumeration of a
finite carrier. :class:`RingValue` tags a payload with the id of its
ring, so elements of different rings never mix silently.

Finite rings additionally expose their arithmetic on element indices as
numpy arrays. Subclasses override the vectorised ``_mul_idx`` /
``_add_idx`` hooks where they can; the generic fallback loops over
payloads.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import (
    Any, Callable, Dict, Iterator, List, NamedTuple, Optional, Tuple, Union
)

import numpy as np

from ringlab.errors import (
    ElementError, NotEnumerableError, RingMismatchError
)
from ringlab import literal as lit


logger = logging.getLogger(__name__)

Payload = Any
Env = Dict[str, Any]

# Table rows per block so that one block holds about a million entries
BLOCK_ENTRIES = 1 << 20


@dataclass(frozen=True)
class RingValue:
    """
    An element of a ring

    Attributes
    ----------
    ring_id: str
        The id (canonical expression) of the owning ring
    payload:
        The canonical payload. Residues and table indices are ``int``,
        all other variants are nested tuples.
    ring: :class:`Ring`
        The owning ring. Not part of equality or hashing.
    """
    ring_id: str
    payload: Payload
    ring: 'Ring' = field(compare=False, repr=False, hash=False)

    def _other(self, other: Any) -> 'RingValue':
        if isinstance(other, RingValue):
            return other
        if isinstance(other, int):
            return self.ring.element(other)
        raise TypeError(
            'Cannot combine RingValue with {}'.format(type(other).__name__)
        )

    def __add__(self, other: Any) -> 'RingValue':
        return self.ring.add(self, self._other(other))

    def __radd__(self, other: Any) -> 'RingValue':
        return self.ring.add(self._other(other), self)

    def __sub__(self, other: Any) -> 'RingValue':
        return self.ring.sub(self, self._other(other))

    def __rsub__(self, other: Any) -> 'RingValue':
        return self.ring.sub(self._other(other), self)

    def __mul__(self, other: Any) -> 'RingValue':
        return self.ring.mul(self, self._other(other))

    def __rmul__(self, other: Any) -> 'RingValue':
        return self.ring.mul(self._other(other), self)

    def __neg__(self) -> 'RingValue':
        return self.ring.neg(self)

    def __pow__(self, exponent: int) -> 'RingValue':
        return self.ring.power(self, exponent)

    def __str__(self) -> str:
        return self.ring.format(self)

    def __repr__(self) -> str:
        return 'RingValue(`{}`: {})'.format(self.ring_id, str(self))

    @property
    def index(self) -> int:
        return self.ring.index_of(self)

    def is_zero(self) -> bool:
        return self.payload == self.ring._zero()

    def is_one(self) -> bool:
        return self.payload == self.ring._one()


class RingOps(NamedTuple):
    """The arithmetic contract of a ring"""
    zero: RingValue
    one: RingValue
    add: Callable[[RingValue, RingValue], RingValue]
    neg: Callable[[RingValue], RingValue]
    mul: Callable[[RingValue, RingValue], RingValue]
    eq: Callable[[RingValue, RingValue], bool]


def ring_ops(ring: 'Ring') -> RingOps:
    return RingOps(ring.zero, ring.one, ring.add, ring.neg, ring.mul, ring.eq)


class Ring:
    """
    Base class of all rings

    Subclasses implement the payload primitives ``_zero``, ``_one``,
    ``_add``, ``_neg``, ``_mul`` and ``_format``. Finite rings also
    implement ``_cardinality`` and either ``_enumerate_payloads`` or the
    pair ``_payload_at`` / ``_index_of``.

    Parameters
    ----------
    expr: str
        The canonical ring expression. It is used as the ring id.

    Attributes
    ----------
    id: str
        The canonical ring expression, e.g. ``"T(3, Z2)"``
    kind: str
        Construction tag
    """
    kind = 'ring'

    def __init__(self, expr: str) -> None:
        self.id = expr
        self._payload_list: Optional[List[Payload]] = None
        self._payload_index: Optional[Dict[Payload, int]] = None
        self._mul_table: Optional[np.ndarray] = None
        self._add_table: Optional[np.ndarray] = None
        self._idempotent_mask: Optional[np.ndarray] = None
        self._commutative: Optional[bool] = None
        self._abelian: Optional[bool] = None
        self._reduced: Optional[bool] = None
        self._char: Optional[int] = None

    # ------------------------------------------------------------------
    # Payload primitives
    # ------------------------------------------------------------------
    def _zero(self) -> Payload:
        raise NotImplementedError

    def _one(self) -> Payload:
        raise NotImplementedError

    def _add(self, a: Payload, b: Payload) -> Payload:
        raise NotImplementedError

    def _neg(self, a: Payload) -> Payload:
        raise NotImplementedError

    def _mul(self, a: Payload, b: Payload) -> Payload:
        raise NotImplementedError

    def _format(self, a: Payload) -> str:
        return str(a)

    def _cardinality(self) -> Optional[int]:
        """Number of elements, ``None`` for arithmetic-only rings"""
        return None

    def _enumerate_payloads(self) -> Iterator[Payload]:
        raise NotEnumerableError(self.id)

    def _sample_payloads(self) -> List[Payload]:
        """Generator/sample set used for checks on infinite rings"""
        return [self._zero(), self._one()]

    def _sub(self, a: Payload, b: Payload) -> Payload:
        return self._add(a, self._neg(b))

    def _power(self, a: Payload, exponent: int) -> Payload:
        if exponent < 0:
            raise ElementError(
                'Negative power in ring `{}`'.format(self.id)
            )
        result = self._one()
        base = a
        while exponent:
            if exponent & 1:
                result = self._mul(result, base)
            base = self._mul(base, base)
            exponent >>= 1
        return result

    def _from_int(self, n: int) -> Payload:
        char = self.characteristic if self.is_finite else 0
        if char:
            n %= char
        negative = n < 0
        n = abs(n)
        result = self._zero()
        step = self._one()
        while n:
            if n & 1:
                result = self._add(result, step)
            step = self._add(step, step)
            n >>= 1
        return self._neg(result) if negative else result

    def _from_tuple(self, items: Tuple[lit.Node, ...]) -> Payload:
        raise ElementError(
            'Ring `{}` has no tuple elements'.format(self.id)
        )

    def _from_grid(self, rows: Tuple[Tuple[lit.Node, ...], ...]) -> Payload:
        raise ElementError(
            'Ring `{}` has no matrix elements'.format(self.id)
        )

    def _unit(self, name: str, exponent: int) -> Payload:
        raise ElementError(
            'Unknown name `{}` in ring `{}`'.format(name, self.id)
        )

    def _validate(self, payload: Payload) -> Payload:
        """
        Returns the canonical form of ``payload`` or raises
        :class:`ringlab.errors.ElementError`
        """
        if self.is_finite:
            try:
                self._index_of(payload)
            except (KeyError, TypeError, IndexError, ValueError):
                raise ElementError(
                    '`{!r}` is not an element of `{}`'.format(payload, self.id)
                )
        return payload

    # ------------------------------------------------------------------
    # Enumeration
    # ------------------------------------------------------------------
    def _payloads(self) -> List[Payload]:
        if self._payload_list is None:
            if not self.is_finite:
                raise NotEnumerableError(self.id)
            self._payload_list = list(self._enumerate_payloads())
        return self._payload_list

    def _payload_at(self, index: int) -> Payload:
        return self._payloads()[index]

    def _index_of(self, payload: Payload) -> int:
        if self._payload_index is None:
            self._payload_index = {
                p: i for i, p in enumerate(self._payloads())
            }
        return self._payload_index[payload]

    @property
    def size(self) -> Optional[int]:
        """
        Number of elements, ``None`` if the ring is arithmetic-only
        """
        return self._cardinality()

    @property
    def is_finite(self) -> bool:
        return self._cardinality() is not None

    def require_finite(self) -> int:
        size = self._cardinality()
        if size is None:
            raise NotEnumerableError(self.id)
        return size

    def __len__(self) -> int:
        return self.require_finite()

    def elements(self) -> Iterator[RingValue]:
        """
        All elements in index order

        Raises
        ------
        :class:`ringlab.errors.NotEnumerableError`
            The ring is arithmetic-only
        """
        self.require_finite()
        for payload in self._payloads():
            yield RingValue(self.id, payload, self)

    def __iter__(self) -> Iterator[RingValue]:
        return self.elements()

    def element_at(self, index: int) -> RingValue:
        size = self.require_finite()
        if not 0 <= index < size:
            raise IndexError(
                'Index {} out of range for `{}` of size {}'.format(
                    index, self.id, size
                )
            )
        return RingValue(self.id, self._payload_at(int(index)), self)

    def index_of(self, value: RingValue) -> int:
        self.require_finite()
        self._check(value)
        return self._index_of(value.payload)

    def __contains__(self, value: object) -> bool:
        return isinstance(value, RingValue) and value.ring_id == self.id

    # ------------------------------------------------------------------
    # Public arithmetic on RingValues
    # ------------------------------------------------------------------
    def _check(self, value: RingValue) -> Payload:
        if not isinstance(value, RingValue):
            raise TypeError('Expected a RingValue, got {}'.format(
                type(value).__name__
            ))
        if value.ring_id != self.id:
            raise RingMismatchError(self.id, value.ring_id)
        return value.payload

    def value(self, payload: Payload) -> RingValue:
        """Wraps a payload after validating it"""
        return RingValue(self.id, self._validate(payload), self)

    def _wrap(self, payload: Payload) -> RingValue:
        return RingValue(self.id, payload, self)

    @property
    def zero(self) -> RingValue:
        return self._wrap(self._zero())

    @property
    def one(self) -> RingValue:
        return self._wrap(self._one())

    def add(self, a: RingValue, b: RingValue) -> RingValue:
        return self._wrap(self._add(self._check(a), self._check(b)))

    def sub(self, a: RingValue, b: RingValue) -> RingValue:
        return self._wrap(self._sub(self._check(a), self._check(b)))

    def neg(self, a: RingValue) -> RingValue:
        return self._wrap(self._neg(self._check(a)))

    def mul(self, a: RingValue, b: RingValue) -> RingValue:
        return self._wrap(self._mul(self._check(a), self._check(b)))

    def eq(self, a: RingValue, b: RingValue) -> bool:
        return self._check(a) == self._check(b)

    def power(self, a: RingValue, exponent: int) -> RingValue:
        return self._wrap(self._power(self._check(a), exponent))

    def format(self, a: RingValue) -> str:
        return self._format(self._check(a))

    def element(
        self,
        value: Union[RingValue, int, str, lit.Node],
        env: Optional[Env] = None
    ) -> RingValue:
        """
        Coerces a literal into an element of this ring

        Parameters
        ----------
        value: RingValue, int, str or literal node
            * ``RingValue``: must belong to this ring
            * ``int``: ``n`` times the unity
            * ``str``: an element literal, see :mod:`ringlab.literal`
        env: dict, default ``None``
            Named values (``RingValue``) and functions available to
            the literal

        Returns
        -------
        :class:`RingValue`

        Examples
        --------
            ring = build('prod(Z6, Z6)')
            ring.element('(3, 0)') * 2
            # >> RingValue(`prod(Z6, Z6)`: (0, 0))

        """
        if isinstance(value, RingValue):
            self._check(value)
            return value
        if isinstance(value, bool):
            raise TypeError('Booleans are not ring elements')
        if isinstance(value, int):
            return self._wrap(self._from_int(value))
        if isinstance(value, str):
            value = lit.parse_literal(value)
        return self._wrap(self._evaluate(value, env or {}))

    def parse(self, text: str) -> RingValue:
        return self.element(lit.parse_literal(text))

    def _evaluate(self, node: lit.Node, env: Env) -> Payload:
        if isinstance(node, lit.Num):
            return self._from_int(node.value)
        if isinstance(node, lit.Name):
            if node.name in env:
                return self._check(env[node.name])
            return self._unit(node.name, 1)
        if isinstance(node, lit.Neg):
            return self._neg(self._evaluate(node.operand, env))
        if isinstance(node, lit.Add):
            return self._add(
                self._evaluate(node.left, env),
                self._evaluate(node.right, env)
            )
        if isinstance(node, lit.Mul):
            return self._mul(
                self._evaluate(node.left, env),
                self._evaluate(node.right, env)
            )
        if isinstance(node, lit.Pow):
            base = node.base
            if isinstance(base, lit.Name) and base.name not in env:
                return self._unit(base.name, node.exponent)
            return self._power(self._evaluate(base, env), node.exponent)
        if isinstance(node, lit.TupleLit):
            return self._from_tuple(node.items)
        if isinstance(node, lit.Grid):
            return self._from_grid(node.rows)
        if isinstance(node, lit.Call):
            if node.name not in env or not callable(env[node.name]):
                raise ElementError(
                    'Unknown function `{}`'.format(node.name)
                )
            args = [
                arg.value if isinstance(arg, lit.Num)
                else self._wrap(self._evaluate(arg, env))
                for arg in node.args
            ]
            return self._check(env[node.name](*args))
        raise ElementError('Cannot evaluate `{!r}`'.format(node))

    # ------------------------------------------------------------------
    # Vectorised index arithmetic (finite rings)
    # ------------------------------------------------------------------
    def _mul_idx(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self._generic_idx(self._mul, a, b)

    def _add_idx(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self._generic_idx(self._add, a, b)

    def _neg_idx(self, a: np.ndarray) -> np.ndarray:
        payloads = self._payloads()
        a = np.asarray(a)
        out = np.empty(a.shape, dtype=np.int32)
        for pos in np.ndindex(a.shape):
            out[pos] = self._index_of(self._neg(payloads[a[pos]]))
        return out

    def _generic_idx(
        self,
        op: Callable[[Payload, Payload], Payload],
        a: np.ndarray,
        b: np.ndarray
    ) -> np.ndarray:
        a, b = np.broadcast_arrays(np.asarray(a), np.asarray(b))
        payloads = self._payloads()
        out = np.empty(a.shape, dtype=np.int32)
        for pos in np.ndindex(a.shape):
            out[pos] = self._index_of(op(payloads[a[pos]], payloads[b[pos]]))
        return out

    def _table(
        self,
        op: Callable[[np.ndarray, np.ndarray], np.ndarray],
        jobs: int
    ) -> np.ndarray:
        size = self.require_finite()
        columns = np.arange(size, dtype=np.int32)[None, :]
        step = max(1, BLOCK_ENTRIES // max(size, 1))
        starts = list(range(0, size, step))

        def block(start: int) -> np.ndarray:
            rows = np.arange(
                start, min(start + step, size), dtype=np.int32
            )[:, None]
            return op(rows, columns).astype(np.int32)

        if jobs > 1 and len(starts) > 1:
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                blocks = list(pool.map(block, starts))
        else:
            blocks = [block(start) for start in starts]
        if not blocks:
            return np.zeros((0, 0), dtype=np.int32)
        return np.concatenate(blocks, axis=0)

    def multiplication_table(self, jobs: int = 1) -> np.ndarray:
        """
        ``table[i, j]`` is the index of ``element_at(i) * element_at(j)``

        The table is computed once and cached.
        """
        if self._mul_table is None:
            logger.debug(
                'Computing multiplication table of `%s` (%d elements)',
                self.id, self.require_finite()
            )
            self._mul_table = self._table(self._mul_idx, jobs)
        return self._mul_table

    def addition_table(self, jobs: int = 1) -> np.ndarray:
        if self._add_table is None:
            self._add_table = self._table(self._add_idx, jobs)
        return self._add_table

    def negation_table(self) -> np.ndarray:
        size = self.require_finite()
        return self._neg_idx(np.arange(size, dtype=np.int32))

    @property
    def zero_index(self) -> int:
        return self._index_of(self._zero())

    @property
    def one_index(self) -> int:
        return self._index_of(self._one())

    def squares(self) -> np.ndarray:
        size = self.require_finite()
        indices = np.arange(size, dtype=np.int32)
        return self._mul_idx(indices, indices)

    def idempotent_mask(self) -> np.ndarray:
        """
        Boolean array, ``True`` at the index of every idempotent
        """
        if self._idempotent_mask is None:
            size = self.require_finite()
            self._idempotent_mask = (
                self.squares() == np.arange(size, dtype=np.int32)
            )
        return self._idempotent_mask

    # ------------------------------------------------------------------
    # Structure
    # ------------------------------------------------------------------
    @property
    def characteristic(self) -> int:
        """Additive order of the unity, 0 if it has infinite order"""
        if self._char is None:
            self._char = self._compute_characteristic()
        return self._char

    def _compute_characteristic(self) -> int:
        size = self.require_finite()
        one = self._one()
        total = one
        for n in range(1, size + 1):
            if total == self._zero():
                return n
            total = self._add(total, one)
        return size

    def sample_elements(self) -> List[RingValue]:
        """
        The full carrier of a finite ring, a fixed sample otherwise
        """
        if self.is_finite:
            return list(self.elements())
        return [self._wrap(p) for p in self._sample_payloads()]

    def is_idempotent(self, a: RingValue) -> bool:
        payload = self._check(a)
        return self._mul(payload, payload) == payload

    def idempotents(self) -> List[RingValue]:
        """
        All idempotents in enumeration order
        """
        mask = self.idempotent_mask()
        return [self.element_at(int(i)) for i in np.flatnonzero(mask)]

    def is_central(self, a: RingValue) -> bool:
        """
        ``True`` if ``a`` commutes with every element (exhaustive)
        """
        size = self.require_finite()
        index = self.index_of(a)
        others = np.arange(size, dtype=np.int32)
        return bool(np.array_equal(
            self._mul_idx(np.int32(index), others),
            self._mul_idx(others, np.int32(index))
        ))

    def central_idempotents(self) -> List[RingValue]:
        return [e for e in self.idempotents() if self.is_central(e)]

    def find_noncommuting_pair(self) -> Optional[Tuple[int, int]]:
        """
        The row-major first pair ``(i, j)`` with ``ij != ji``
        """
        if not self.is_finite:
            # indices into sample_elements()
            samples = self._sample_payloads()
            for i, a in enumerate(samples):
                for j, b in enumerate(samples):
                    if self._mul(a, b) != self._mul(b, a):
                        return i, j
            return None
        table = self.multiplication_table()
        bad = np.argwhere(table != table.T)
        if len(bad):
            return int(bad[0][0]), int(bad[0][1])
        return None

    def find_noncentral_idempotent(self) -> Optional[Tuple[int, int]]:
        """
        ``(e, x)`` with ``e`` idempotent and ``ex != xe``
        """
        size = self.require_finite()
        others = np.arange(size, dtype=np.int32)
        for e in np.flatnonzero(self.idempotent_mask()):
            left = self._mul_idx(np.int32(e), others)
            right = self._mul_idx(others, np.int32(e))
            bad = np.flatnonzero(left != right)
            if len(bad):
                return int(e), int(bad[0])
        return None

    def nilpotents_of_index_two(self) -> List[RingValue]:
        """
        All nonzero ``a`` with ``a^2 = 0``
        """
        zero = self.zero_index
        squares = self.squares()
        return [
            self.element_at(int(i))
            for i in np.flatnonzero(squares == zero) if i != zero
        ]

    @property
    def is_commutative(self) -> bool:
        if self._commutative is None:
            self._commutative = self.find_noncommuting_pair() is None
        return self._commutative

    @property
    def is_abelian(self) -> bool:
        if self._abelian is None:
            self._abelian = self.find_noncentral_idempotent() is None
        return self._abelian

    @property
    def is_reduced(self) -> bool:
        if self._reduced is None:
            self._reduced = not self.nilpotents_of_index_two()
        return self._reduced

    def __str__(self) -> str:
        return self.id

    def __repr__(self) -> str:
        return '<{} `{}`>'.format(type(self).__name__, self.id)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Ring) and other.id == self.id

    def __hash__(self) -> int:
        return hash(self.id)

    def toJSON(self) -> Dict[str, Any]:
        return {
            'id': self.id,
            'kind': self.kind,
            'size': self.size,
        }


def mixed_radix_split(
    index: np.ndarray,
    radices: List[int]
) -> List[np.ndarray]:
    """
    Splits indices into digits, the first radix being most significant
    """
    digits = []
    rest = np.asarray(index, dtype=np.int64)
    for radix in reversed(radices):
        digits.append((rest % radix).astype(np.int32))
        rest = rest // radix
    return digits[::-1]


def mixed_radix_join(digits: List[np.ndarray], radices: List[int]) -> np.ndarray:
    total: Any = np.int64(0)
    for digit, radix in zip(digits, radices):
        total = total * radix + np.asarray(digit, dtype=np.int64)
    return np.asarray(total).astype(np.int32)
