"""
Derived rings: patterned matrix rings, trivial, Dorroh and Nagata
extensions, corner and closure rings, and isomorphism verification
"""

import time
import logging
from dataclasses import dataclass
from itertools import product
from typing import (
    Callable, Dict, Iterator, List, Optional, Sequence, Tuple
)

import numpy as np

from ringlab.config import Settings, default_settings
from ringlab.endo import Endomorphism, require_valid
from ringlab.errors import ConstructionError, ElementError
from ringlab.literal import Node
from ringlab.ring import (
    Payload, Ring, RingValue, mixed_radix_join, mixed_radix_split
)
from ringlab.rings import IntegersMod, ProductRing
from ringlab.witness import ScanStats, Verdict, Witness


logger = logging.getLogger(__name__)


class MatrixShape:
    """
    A family of patterned n x n matrices

    Parameters
    ----------
    n: int
        Matrix order
    upper: bool
        Entries below the diagonal are zero
    blocks: tuple of tuples, default ``None``
        Partition of the 0-based diagonal positions. Diagonal entries
        within one block are equal. ``None`` means singleton blocks.
    band: bool, default ``False``
        Entries are constant along every diagonal (a_ij = a_(i+1)(j+1))
    tag: str
        Name used in ring expressions (``M``, ``T``, ``D``, ``V``,
        ``S3``, ``S4``)

    Attributes
    ----------
    free_positions: list of tuple
        The positions whose entries are free; all other entries are
        zero or copies of a free entry
    """
    def __init__(
        self,
        n: int,
        upper: bool,
        blocks: Optional[Sequence[Sequence[int]]] = None,
        band: bool = False,
        tag: str = 'T'
    ) -> None:
        if n < 1:
            raise ConstructionError(
                'Matrix order must be positive, got {}'.format(n)
            )
        self.n = n
        self.upper = upper or band
        self.band = band
        if blocks is None:
            blocks = [[i] for i in range(n)]
        self.blocks = tuple(tuple(sorted(b)) for b in blocks)
        if sorted(i for b in self.blocks for i in b) != list(range(n)):
            raise ConstructionError(
                'Diagonal blocks {} do not partition 1..{}'.format(
                    self.blocks, n
                )
            )
        self.tag = tag
        self._representative = {i: b[0] for b in self.blocks for i in b}
        self.free_positions = self._free_positions()
        lookup = {pos: k for k, pos in enumerate(self.free_positions)}
        self.sources = [
            [lookup.get(self._source(i, j), -1) for j in range(n)]
            for i in range(n)
        ]

    @classmethod
    def full(cls, n: int) -> 'MatrixShape':
        return cls(n, upper=False, tag='M')

    @classmethod
    def upper_triangular(cls, n: int) -> 'MatrixShape':
        return cls(n, upper=True, tag='T')

    @classmethod
    def constant_diagonal(cls, n: int) -> 'MatrixShape':
        return cls(n, upper=True, blocks=[list(range(n))], tag='D')

    @classmethod
    def banded(cls, n: int) -> 'MatrixShape':
        return cls(n, upper=True, blocks=[list(range(n))], band=True, tag='V')

    @classmethod
    def s3(cls) -> 'MatrixShape':
        return cls(3, upper=True, blocks=[[0, 1], [2]], tag='S3')

    @classmethod
    def s4(cls) -> 'MatrixShape':
        return cls(4, upper=True, blocks=[[0, 1], [2, 3]], tag='S4')

    @classmethod
    def from_tag(cls, tag: str, n: Optional[int] = None) -> 'MatrixShape':
        if tag == 'S3':
            return cls.s3()
        if tag == 'S4':
            return cls.s4()
        factories = {
            'M': cls.full,
            'T': cls.upper_triangular,
            'D': cls.constant_diagonal,
            'V': cls.banded,
        }
        if tag not in factories or n is None:
            raise ConstructionError('Unknown matrix shape `{}`'.format(tag))
        return factories[tag](n)

    def _free_positions(self) -> List[Tuple[int, int]]:
        if self.band:
            return [(0, d) for d in range(self.n)]
        positions = []
        for i in range(self.n):
            for j in range(self.n):
                if i == j:
                    if self._representative[i] == i:
                        positions.append((i, i))
                elif i < j or not self.upper:
                    positions.append((i, j))
        return positions

    def _source(self, i: int, j: int) -> Optional[Tuple[int, int]]:
        if self.upper and i > j:
            return None
        if self.band:
            return (0, j - i)
        if i == j:
            rep = self._representative[i]
            return (rep, rep)
        return (i, j)

    def contains(
        self,
        grid: Sequence[Sequence[Payload]],
        zero: Payload
    ) -> bool:
        """Membership predicate on a payload grid"""
        if len(grid) != self.n or any(len(row) != self.n for row in grid):
            return False
        for i in range(self.n):
            for j in range(self.n):
                source = self._source(i, j)
                if source is None:
                    if grid[i][j] != zero:
                        return False
                elif grid[i][j] != grid[source[0]][source[1]]:
                    return False
        return True

    @property
    def expr_prefix(self) -> str:
        if self.tag in ('S3', 'S4'):
            return self.tag
        return '{}({}, '.format(self.tag, self.n)

    def __repr__(self) -> str:
        return '<MatrixShape {} n={} blocks={}>'.format(
            self.tag, self.n, self.blocks
        )


class MatrixRing(Ring):
    """
    Matrices of a given shape over a base ring

    The ring is enumerable when the base is. Indices encode the free
    entries in mixed radix, the first free position being the most
    significant digit.

    Parameters
    ----------
    shape: :class:`MatrixShape`
    base: :class:`ringlab.ring.Ring`
    """
    kind = 'matrix'

    def __init__(self, shape: MatrixShape, base: Ring) -> None:
        if shape.tag in ('S3', 'S4'):
            expr = '{}({})'.format(shape.tag, base.id)
        else:
            expr = '{}({}, {})'.format(shape.tag, shape.n, base.id)
        super().__init__(expr)
        self.shape = shape
        self.base = base
        self.n = shape.n

    def _grid(self, fill: Callable[[int, int], Payload]) -> Tuple:
        return tuple(
            tuple(fill(i, j) for j in range(self.n)) for i in range(self.n)
        )

    def _zero(self) -> Tuple:
        z = self.base._zero()
        return self._grid(lambda i, j: z)

    def _one(self) -> Tuple:
        z, o = self.base._zero(), self.base._one()
        return self._grid(lambda i, j: o if i == j else z)

    def _add(self, a: Tuple, b: Tuple) -> Tuple:
        return self._grid(lambda i, j: self.base._add(a[i][j], b[i][j]))

    def _neg(self, a: Tuple) -> Tuple:
        return self._grid(lambda i, j: self.base._neg(a[i][j]))

    def _mul(self, a: Tuple, b: Tuple) -> Tuple:
        base = self.base

        def entry(i: int, j: int) -> Payload:
            total = base._zero()
            for k in range(self.n):
                total = base._add(total, base._mul(a[i][k], b[k][j]))
            return total
        return self._grid(entry)

    def _from_int(self, n: int) -> Tuple:
        z, c = self.base._zero(), self.base._from_int(n)
        return self._grid(lambda i, j: c if i == j else z)

    def _from_grid(self, rows: Tuple[Tuple[Node, ...], ...]) -> Tuple:
        if len(rows) != self.n or any(len(row) != self.n for row in rows):
            raise ElementError(
                'Elements of `{}` are {}x{} matrices'.format(
                    self.id, self.n, self.n
                )
            )
        grid = tuple(
            tuple(self.base._evaluate(node, {}) for node in row)
            for row in rows
        )
        return self._validate(grid)

    def _validate(self, payload: Payload) -> Tuple:
        try:
            grid = tuple(
                tuple(self.base._validate(x) for x in row) for row in payload
            )
        except TypeError:
            raise ElementError('`{!r}` is not a matrix'.format(payload))
        if not self.shape.contains(grid, self.base._zero()):
            raise ElementError(
                '{} is not an element of `{}`'.format(
                    self._format(grid), self.id
                )
            )
        return grid

    def _format(self, a: Tuple) -> str:
        return '[{}]'.format(', '.join(
            '[{}]'.format(', '.join(self.base._format(x) for x in row))
            for row in a
        ))

    @property
    def radices(self) -> List[int]:
        return [len(self.base)] * len(self.shape.free_positions)

    def _cardinality(self) -> Optional[int]:
        size = self.base._cardinality()
        if size is None:
            return None
        return size ** len(self.shape.free_positions)

    def _from_free(self, values: Sequence[Payload]) -> Tuple:
        z = self.base._zero()
        sources = self.shape.sources
        return self._grid(
            lambda i, j: values[sources[i][j]] if sources[i][j] >= 0 else z
        )

    def _enumerate_payloads(self) -> Iterator[Tuple]:
        for values in product(
            self.base._payloads(), repeat=len(self.shape.free_positions)
        ):
            yield self._from_free(values)

    def _payload_at(self, index: int) -> Tuple:
        digits = mixed_radix_split(np.int64(index), self.radices)
        return self._from_free(
            [self.base._payload_at(int(d)) for d in digits]
        )

    def _index_of(self, payload: Tuple) -> int:
        if not self.shape.contains(payload, self.base._zero()):
            raise KeyError(payload)
        digits = [
            self.base._index_of(payload[i][j])
            for i, j in self.shape.free_positions
        ]
        return int(mixed_radix_join(digits, self.radices))

    def _entries(self, a: np.ndarray) -> List[List[np.ndarray]]:
        digits = mixed_radix_split(a, self.radices)
        zero = np.int32(self.base.zero_index)
        return [
            [digits[s] if s >= 0 else zero for s in row]
            for row in self.shape.sources
        ]

    def _mul_idx(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        A = self._entries(a)
        B = self._entries(b)
        sources = self.shape.sources
        base = self.base
        out = []
        for i, j in self.shape.free_positions:
            total = None
            for k in range(self.n):
                if sources[i][k] < 0 or sources[k][j] < 0:
                    continue
                term = base._mul_idx(A[i][k], B[k][j])
                total = term if total is None else base._add_idx(total, term)
            out.append(total if total is not None else np.int32(
                base.zero_index
            ))
        return mixed_radix_join(out, self.radices)

    def _add_idx(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return mixed_radix_join([
            self.base._add_idx(x, y) for x, y in zip(
                mixed_radix_split(a, self.radices),
                mixed_radix_split(b, self.radices)
            )
        ], self.radices)

    def _neg_idx(self, a: np.ndarray) -> np.ndarray:
        return mixed_radix_join([
            self.base._neg_idx(x)
            for x in mixed_radix_split(a, self.radices)
        ], self.radices)

    def _compute_characteristic(self) -> int:
        return self.base.characteristic

    def _sample_payloads(self) -> List[Tuple]:
        one = self.base._one()
        z = self.base._zero()
        samples = [self._zero(), self._one()]
        for k in range(len(self.shape.free_positions)):
            values = [z] * len(self.shape.free_positions)
            values[k] = one
            samples.append(self._from_free(values))
        return samples


def matrix_ring(shape: MatrixShape, base: Ring) -> MatrixRing:
    return MatrixRing(shape, base)


def elementary(ring: MatrixRing, i: int, j: int) -> RingValue:
    """
    The matrix unit E_ij (1-based) of a matrix ring

    Raises
    ------
    :class:`ringlab.errors.ConstructionError`
        E_ij does not have the shape of ``ring``
    """
    n = ring.n
    if not (1 <= i <= n and 1 <= j <= n):
        raise ConstructionError(
            'E{}{} is outside the {}x{} matrices'.format(i, j, n, n)
        )
    z, o = ring.base._zero(), ring.base._one()
    grid = ring._grid(lambda r, c: o if (r, c) == (i - 1, j - 1) else z)
    if not ring.shape.contains(grid, z):
        raise ConstructionError(
            'E{}{} is not an element of `{}`'.format(i, j, ring.id)
        )
    return ring._wrap(grid)


def shape_soundness(
    ring: MatrixRing,
    settings: Optional[Settings] = None
) -> None:
    """
    Checks exhaustively that products of shape elements keep the shape

    Raises
    ------
    :class:`ringlab.errors.ConstructionError`
        Names the first pair whose product leaves the shape
    """
    settings = settings or default_settings()
    size = len(ring)
    settings.require('max_pairs', size * size)
    payloads = ring._payloads()
    zero = ring.base._zero()
    for a in payloads:
        for b in payloads:
            if not ring.shape.contains(ring._mul(a, b), zero):
                raise ConstructionError(
                    'Product of {} and {} leaves the shape of `{}`'.format(
                        ring._format(a), ring._format(b), ring.id
                    )
                )


class PairRing(Ring):
    """
    Common carrier of the extensions on R x R

    Payloads are pairs ``(r, m)``; addition is componentwise.
    """
    def __init__(self, expr: str, base: Ring) -> None:
        super().__init__(expr)
        self.base = base

    def _zero(self) -> Tuple:
        return (self.base._zero(), self.base._zero())

    def _one(self) -> Tuple:
        return (self.base._one(), self.base._zero())

    def _add(self, a: Tuple, b: Tuple) -> Tuple:
        return (self.base._add(a[0], b[0]), self.base._add(a[1], b[1]))

    def _neg(self, a: Tuple) -> Tuple:
        return (self.base._neg(a[0]), self.base._neg(a[1]))

    def _from_int(self, n: int) -> Tuple:
        return (self.base._from_int(n), self.base._zero())

    def _from_tuple(self, items: Tuple[Node, ...]) -> Tuple:
        if len(items) != 2:
            raise ElementError(
                'Elements of `{}` are pairs, got {} entries'.format(
                    self.id, len(items)
                )
            )
        return (
            self.base._evaluate(items[0], {}),
            self.base._evaluate(items[1], {})
        )

    def _validate(self, payload: Payload) -> Tuple:
        if not isinstance(payload, tuple) or len(payload) != 2:
            raise ElementError(
                '`{!r}` is not an element of `{}`'.format(payload, self.id)
            )
        return (
            self.base._validate(payload[0]),
            self.base._validate(payload[1])
        )

    def _format(self, a: Tuple) -> str:
        return '({}, {})'.format(
            self.base._format(a[0]), self.base._format(a[1])
        )

    def _cardinality(self) -> Optional[int]:
        size = self.base._cardinality()
        return None if size is None else size * size

    def _enumerate_payloads(self) -> Iterator[Tuple]:
        return product(self.base._payloads(), repeat=2)

    def _payload_at(self, index: int) -> Tuple:
        r, m = divmod(index, len(self.base))
        return (self.base._payload_at(r), self.base._payload_at(m))

    def _index_of(self, payload: Tuple) -> int:
        return (
            self.base._index_of(payload[0]) * len(self.base) +
            self.base._index_of(payload[1])
        )

    def _split(self, a: np.ndarray) -> List[np.ndarray]:
        return mixed_radix_split(a, [len(self.base)] * 2)

    def _join(self, r: np.ndarray, m: np.ndarray) -> np.ndarray:
        return mixed_radix_join([r, m], [len(self.base)] * 2)

    def _add_idx(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        r1, m1 = self._split(a)
        r2, m2 = self._split(b)
        return self._join(
            self.base._add_idx(r1, r2), self.base._add_idx(m1, m2)
        )

    def _neg_idx(self, a: np.ndarray) -> np.ndarray:
        r, m = self._split(a)
        return self._join(self.base._neg_idx(r), self.base._neg_idx(m))

    def _compute_characteristic(self) -> int:
        return self.base.characteristic

    def _sample_payloads(self) -> List[Tuple]:
        return list(product(self.base._sample_payloads()[:4], repeat=2))


class TrivialExtension(PairRing):
    """
    T(R, R): pairs with (r1, m1)(r2, m2) = (r1 r2, r1 m2 + m1 r2)
    """
    kind = 'trivial-extension'

    def __init__(self, base: Ring) -> None:
        super().__init__('triv({})'.format(base.id), base)

    def _mul(self, a: Tuple, b: Tuple) -> Tuple:
        B = self.base
        return (
            B._mul(a[0], b[0]),
            B._add(B._mul(a[0], b[1]), B._mul(a[1], b[0]))
        )

    def _mul_idx(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        B = self.base
        r1, m1 = self._split(a)
        r2, m2 = self._split(b)
        return self._join(
            B._mul_idx(r1, r2),
            B._add_idx(B._mul_idx(r1, m2), B._mul_idx(m1, r2))
        )


def trivial_extension(base: Ring) -> TrivialExtension:
    return TrivialExtension(base)


class NagataRing(PairRing):
    """
    Nagata extension of a commutative ring R by R and sigma:
    (r1, m1)(r2, m2) = (r1 r2, sigma(r1) m2 + r2 m1)

    Raises
    ------
    :class:`ringlab.errors.ConstructionError`
        R is not commutative or sigma is not a valid endomorphism of R
    """
    kind = 'nagata'

    def __init__(
        self,
        base: Ring,
        sigma: Endomorphism,
        settings: Optional[Settings] = None
    ) -> None:
        if not base.is_commutative:
            raise ConstructionError(
                'Nagata extensions need a commutative ring, `{}` is '
                'not'.format(base.id)
            )
        if sigma.ring.id != base.id:
            raise ConstructionError(
                '`{}` acts on `{}`, not on `{}`'.format(
                    sigma.expr, sigma.ring.id, base.id
                )
            )
        require_valid(sigma, settings)
        super().__init__('nagata({}, {})'.format(base.id, sigma.expr), base)
        self.sigma = sigma

    def _mul(self, a: Tuple, b: Tuple) -> Tuple:
        B = self.base
        return (
            B._mul(a[0], b[0]),
            B._add(B._mul(self.sigma._apply(a[0]), b[1]), B._mul(b[0], a[1]))
        )

    def _mul_idx(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        B = self.base
        S = self.sigma.index_map()
        r1, m1 = self._split(a)
        r2, m2 = self._split(b)
        return self._join(
            B._mul_idx(r1, r2),
            B._add_idx(B._mul_idx(S[r1], m2), B._mul_idx(r2, m1))
        )


def nagata(
    base: Ring,
    sigma: Endomorphism,
    settings: Optional[Settings] = None
) -> NagataRing:
    return NagataRing(base, sigma, settings)


class SubsetRing(Ring):
    """
    A ring on a subset of a finite ambient ring

    The subset must be closed under the ambient operations; the unity
    may differ from the ambient one (corner rings).

    Parameters
    ----------
    ambient: :class:`ringlab.ring.Ring`
    indices: sequence of int
        Ambient indices of the members
    unity: int or ``None``
        Ambient index of the unity. ``None`` for a carrier without unity.
    expr: str
        Ring id
    """
    kind = 'subset'

    def __init__(
        self,
        ambient: Ring,
        indices: Sequence[int],
        unity: Optional[int],
        expr: str
    ) -> None:
        super().__init__(expr)
        self.ambient = ambient
        self.members = np.array(sorted(set(int(i) for i in indices)),
                                dtype=np.int32)
        self.local_of = np.full(len(ambient), -1, dtype=np.int32)
        self.local_of[self.members] = np.arange(len(self.members))
        self.unity = unity
        if unity is not None and self.local_of[unity] < 0:
            raise ConstructionError('The unity must be a member')

    def _zero(self) -> Payload:
        return self.ambient._zero()

    def _one(self) -> Payload:
        if self.unity is None:
            raise ConstructionError('`{}` has no unity'.format(self.id))
        return self.ambient._payload_at(self.unity)

    def _add(self, a: Payload, b: Payload) -> Payload:
        return self.ambient._add(a, b)

    def _neg(self, a: Payload) -> Payload:
        return self.ambient._neg(a)

    def _mul(self, a: Payload, b: Payload) -> Payload:
        return self.ambient._mul(a, b)

    def _format(self, a: Payload) -> str:
        return self.ambient._format(a)

    def _member(self, payload: Payload) -> Payload:
        try:
            ok = self.local_of[self.ambient._index_of(payload)] >= 0
        except (KeyError, TypeError, IndexError):
            ok = False
        if not ok:
            raise ElementError('{} is not an element of `{}`'.format(
                self.ambient._format(payload), self.id
            ))
        return payload

    def _from_tuple(self, items: Tuple[Node, ...]) -> Payload:
        return self._member(self.ambient._from_tuple(items))

    def _from_grid(self, rows: Tuple[Tuple[Node, ...], ...]) -> Payload:
        return self._member(self.ambient._from_grid(rows))

    def _unit(self, name: str, exponent: int) -> Payload:
        return self._member(self.ambient._unit(name, exponent))

    def _validate(self, payload: Payload) -> Payload:
        return self._member(self.ambient._validate(payload))

    def _cardinality(self) -> int:
        return len(self.members)

    def _enumerate_payloads(self) -> Iterator[Payload]:
        for index in self.members:
            yield self.ambient._payload_at(int(index))

    def _index_of(self, payload: Payload) -> int:
        local = int(self.local_of[self.ambient._index_of(payload)])
        if local < 0:
            raise KeyError(payload)
        return local

    def _local(self, ambient_indices: np.ndarray) -> np.ndarray:
        local = self.local_of[ambient_indices]
        if (local < 0).any():
            raise ConstructionError(
                '`{}` is not closed under the ring operations'.format(self.id)
            )
        return local

    def _mul_idx(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self._local(self.ambient._mul_idx(
            self.members[a], self.members[b]
        ))

    def _add_idx(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self._local(self.ambient._add_idx(
            self.members[a], self.members[b]
        ))

    def _neg_idx(self, a: np.ndarray) -> np.ndarray:
        return self._local(self.ambient._neg_idx(self.members[a]))


class NonUnitalCarrier(SubsetRing):
    """
    The closure of some elements under +, - and * without unity

    Only used as the algebra of a Dorroh extension.
    """
    kind = 'rng'

    def __init__(self, ambient: Ring, gens: Sequence[RingValue]) -> None:
        indices = _saturate(ambient, [ambient.index_of(g) for g in gens],
                            unital=False)
        expr = 'rng({})'.format(', '.join(
            [ambient.id] + [str(g) for g in gens]
        ))
        super().__init__(ambient, indices, None, expr)

    def _from_int(self, n: int) -> Payload:
        if n == 0:
            return self._zero()
        raise ElementError(
            '`{}` has no unity, only 0 is an integer literal'.format(self.id)
        )

    def _compute_characteristic(self) -> int:
        raise ConstructionError('`{}` has no unity'.format(self.id))


def _saturate(
    ambient: Ring,
    seeds: Sequence[int],
    unital: bool = True
) -> np.ndarray:
    size = ambient.require_finite()
    members = np.zeros(size, dtype=bool)
    start = [ambient.zero_index] + list(seeds)
    if unital:
        start.append(ambient.one_index)
    frontier = np.unique(np.array(start, dtype=np.int32))
    members[frontier] = True
    rounds = 0
    while len(frontier):
        current = np.flatnonzero(members).astype(np.int32)
        found = np.concatenate([
            ambient._mul_idx(frontier[:, None], current[None, :]).ravel(),
            ambient._mul_idx(current[:, None], frontier[None, :]).ravel(),
            ambient._add_idx(frontier[:, None], current[None, :]).ravel(),
            ambient._neg_idx(frontier).ravel(),
        ]).astype(np.int32)
        frontier = np.unique(found[~members[found]])
        members[frontier] = True
        rounds += 1
    logger.debug(
        'Saturation in `%s` reached %d elements after %d rounds',
        ambient.id, int(members.sum()), rounds
    )
    return np.flatnonzero(members)


def closure(ambient: Ring, gens: Sequence[RingValue]) -> List[RingValue]:
    """
    The smallest subring containing ``gens``, 0 and 1

    Computed by worklist saturation under +, - and *.

    Parameters
    ----------
    ambient: :class:`ringlab.ring.Ring`
        An enumerable ring
    gens: list of :class:`ringlab.ring.RingValue`

    Returns
    -------
    list of :class:`ringlab.ring.RingValue`
        In index order
    """
    indices = _saturate(ambient, [ambient.index_of(g) for g in gens])
    return [ambient.element_at(int(i)) for i in indices]


def closure_ring(ambient: Ring, gens: Sequence[RingValue]) -> SubsetRing:
    indices = _saturate(ambient, [ambient.index_of(g) for g in gens])
    expr = 'closure({})'.format(', '.join(
        [ambient.id] + [str(g) for g in gens]
    ))
    return SubsetRing(ambient, indices, ambient.one_index, expr)


def corner(ring: Ring, e: RingValue) -> SubsetRing:
    """
    The corner ring eRe with unity e

    Raises
    ------
    :class:`ringlab.errors.ConstructionError`
        ``e`` is not idempotent
    """
    if not ring.is_idempotent(e):
        raise ConstructionError(
            '{} is not an idempotent of `{}`'.format(e, ring.id)
        )
    size = len(ring)
    index = np.int32(ring.index_of(e))
    everything = np.arange(size, dtype=np.int32)
    carrier = ring._mul_idx(ring._mul_idx(index, everything), index)
    return SubsetRing(
        ring,
        np.unique(carrier),
        int(index),
        'corner({}, {})'.format(ring.id, e)
    )


class DorrohAction:
    """
    An action of a commutative unital ring S on an algebra R

    Parameters
    ----------
    carrier: :class:`ringlab.ring.Ring`
        The algebra R. It may be a :class:`NonUnitalCarrier`.
    scalars: :class:`ringlab.ring.Ring`
        A finite commutative ring S. Without ``phi`` it must be Z_m.
    mode: str
        ``hom``: s.r = phi(s) r with phi(s) = s 1_R (or a given ``phi``).
        ``char``: s.r = r + ... + r (s times), valid iff m r = 0.
    phi: callable, default ``None``
        Custom map S -> R for the ``hom`` mode. The action laws
        force it to be a unital ring hom with central image.

    Raises
    ------
    :class:`ringlab.errors.ConstructionError`
        An action law fails; the message names the triple
    """
    MODES = ('hom', 'char')

    def __init__(
        self,
        carrier: Ring,
        scalars: Ring,
        mode: str,
        phi: Optional[Callable[[RingValue], RingValue]] = None
    ) -> None:
        if mode not in self.MODES:
            raise ConstructionError(
                'Unknown Dorroh action `{}`, use hom or char'.format(mode)
            )
        if phi is not None and mode != 'hom':
            raise ConstructionError('A custom phi needs the hom action')
        if phi is None and not isinstance(scalars, IntegersMod):
            raise ConstructionError(
                'Dorroh scalars must be a residue ring, got `{}`. '
                'Other scalar rings need an explicit phi'.format(scalars.id)
            )
        if not scalars.is_commutative:
            raise ConstructionError(
                'Dorroh scalars must be commutative, `{}` is not'.format(
                    scalars.id
                )
            )
        self.carrier = carrier
        self.scalars = scalars
        self.mode = mode
        self.table = self._action_table(phi)
        self.validate()

    def _action_table(
        self,
        phi: Optional[Callable[[RingValue], RingValue]]
    ) -> np.ndarray:
        R, S = self.carrier, self.scalars
        everything = np.arange(len(R), dtype=np.int32)
        if self.mode == 'hom':
            if R.kind == 'rng':
                raise ConstructionError(
                    '`{}` has no unity, use the char action'.format(R.id)
                )
            images = [
                R.index_of(phi(s)) if phi else R._index_of(R._from_int(s.payload))
                for s in S.elements()
            ]
            return np.stack([
                R._mul_idx(np.int32(image), everything) for image in images
            ]).astype(np.int32)
        rows = [np.full(len(R), R.zero_index, dtype=np.int32)]
        for _ in range(1, len(S) + 1):
            rows.append(R._add_idx(rows[-1], everything).astype(np.int32))
        multiple = rows.pop()
        bad = np.flatnonzero(multiple != R.zero_index)
        if len(bad):
            raise ConstructionError(
                'The char action of Z{} needs {}r = 0, fails for r = {}'.format(
                    len(S), len(S), R.element_at(int(bad[0]))
                )
            )
        return np.stack(rows)

    def validate(self) -> None:
        R, S, act = self.carrier, self.scalars, self.table
        n = len(R)
        rs = np.arange(n)
        A, M = R.addition_table(), R.multiplication_table()
        SA, SM = S.addition_table(), S.multiplication_table()

        def fail(law: str, s: int, r1: int, r2: Optional[int] = None) -> None:
            names = [str(S.element_at(s)), str(R.element_at(r1))]
            if r2 is not None:
                names.append(str(R.element_at(r2)))
            raise ConstructionError(
                'Dorroh action law `{}` fails for ({})'.format(
                    law, ', '.join(names)
                )
            )

        bad = np.flatnonzero(act[S.one_index] != rs)
        if len(bad):
            fail('1.r = r', S.one_index, int(bad[0]))
        for s in range(len(S)):
            sr = act[s]
            checks = (
                ('s.(r1 r2) = (s.r1) r2', sr[M], M[sr[:, None], rs[None, :]]),
                ('s.(r1 r2) = r1 (s.r2)', sr[M], M[rs[:, None], sr[None, :]]),
                ('s.(r1 + r2) = s.r1 + s.r2', sr[A],
                 A[sr[:, None], sr[None, :]]),
            )
            for law, left, right in checks:
                hit = np.argwhere(left != right)
                if len(hit):
                    fail(law, s, int(hit[0][0]), int(hit[0][1]))
            for t in range(len(S)):
                hit = np.flatnonzero(act[SM[s, t]] != act[s][act[t]])
                if len(hit):
                    fail('(s1 s2).r = s1.(s2.r)', s, int(hit[0]))
                hit = np.flatnonzero(act[SA[s, t]] != A[act[s], act[t]])
                if len(hit):
                    fail('(s1 + s2).r = s1.r + s2.r', s, int(hit[0]))

    @property
    def expr(self) -> str:
        return 'dorroh({}, {}, {})'.format(
            self.carrier.id, self.scalars.id, self.mode
        )


class DorrohRing(Ring):
    """
    Dorroh extension R x S with
    (r1, s1)(r2, s2) = (r1 r2 + s1.r2 + s2.r1, s1 s2) and unity (0, 1)
    """
    kind = 'dorroh'

    def __init__(self, action: DorrohAction) -> None:
        super().__init__(action.expr)
        self.action = action
        self.carrier = action.carrier
        self.scalars = action.scalars
        self._act = action.table

    def _act_payload(self, s: Payload, r: Payload) -> Payload:
        R = self.carrier
        return R._payload_at(int(self._act[
            self.scalars._index_of(s), R._index_of(r)
        ]))

    def _zero(self) -> Tuple:
        return (self.carrier._zero(), self.scalars._zero())

    def _one(self) -> Tuple:
        return (self.carrier._zero(), self.scalars._one())

    def _add(self, a: Tuple, b: Tuple) -> Tuple:
        return (
            self.carrier._add(a[0], b[0]), self.scalars._add(a[1], b[1])
        )

    def _neg(self, a: Tuple) -> Tuple:
        return (self.carrier._neg(a[0]), self.scalars._neg(a[1]))

    def _mul(self, a: Tuple, b: Tuple) -> Tuple:
        R = self.carrier
        r = R._add(
            R._add(R._mul(a[0], b[0]), self._act_payload(a[1], b[0])),
            self._act_payload(b[1], a[0])
        )
        return (r, self.scalars._mul(a[1], b[1]))

    def _from_int(self, n: int) -> Tuple:
        return (self.carrier._zero(), self.scalars._from_int(n))

    def _from_tuple(self, items: Tuple[Node, ...]) -> Tuple:
        if len(items) != 2:
            raise ElementError(
                'Elements of `{}` are pairs (r, s)'.format(self.id)
            )
        return (
            self.carrier._evaluate(items[0], {}),
            self.scalars._evaluate(items[1], {})
        )

    def _validate(self, payload: Payload) -> Tuple:
        if not isinstance(payload, tuple) or len(payload) != 2:
            raise ElementError(
                '`{!r}` is not an element of `{}`'.format(payload, self.id)
            )
        return (
            self.carrier._validate(payload[0]),
            self.scalars._validate(payload[1])
        )

    def _format(self, a: Tuple) -> str:
        return '({}, {})'.format(
            self.carrier._format(a[0]), self.scalars._format(a[1])
        )

    @property
    def radices(self) -> List[int]:
        return [len(self.carrier), len(self.scalars)]

    def _cardinality(self) -> int:
        return len(self.carrier) * len(self.scalars)

    def _enumerate_payloads(self) -> Iterator[Tuple]:
        return product(self.carrier._payloads(), self.scalars._payloads())

    def _payload_at(self, index: int) -> Tuple:
        r, s = divmod(index, len(self.scalars))
        return (self.carrier._payload_at(r), self.scalars._payload_at(s))

    def _index_of(self, payload: Tuple) -> int:
        return (
            self.carrier._index_of(payload[0]) * len(self.scalars) +
            self.scalars._index_of(payload[1])
        )

    def _mul_idx(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        R, S = self.carrier, self.scalars
        r1, s1 = mixed_radix_split(a, self.radices)
        r2, s2 = mixed_radix_split(b, self.radices)
        r = R._add_idx(
            R._add_idx(R._mul_idx(r1, r2), self._act[s1, r2]),
            self._act[s2, r1]
        )
        return mixed_radix_join([r, S._mul_idx(s1, s2)], self.radices)

    def _add_idx(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        R, S = self.carrier, self.scalars
        r1, s1 = mixed_radix_split(a, self.radices)
        r2, s2 = mixed_radix_split(b, self.radices)
        return mixed_radix_join(
            [R._add_idx(r1, r2), S._add_idx(s1, s2)], self.radices
        )

    def _neg_idx(self, a: np.ndarray) -> np.ndarray:
        r, s = mixed_radix_split(a, self.radices)
        return mixed_radix_join(
            [self.carrier._neg_idx(r), self.scalars._neg_idx(s)],
            self.radices
        )


def dorroh(action: DorrohAction) -> DorrohRing:
    return DorrohRing(action)


@dataclass
class IsoCandidate:
    """
    A proposed ring isomorphism between two finite rings

    Attributes
    ----------
    source: :class:`ringlab.ring.Ring`
    target: :class:`ringlab.ring.Ring`
    forward: callable
        Element map source -> target
    inverse: callable
        The declared inverse target -> source
    name: str
        Registry name of the map
    """
    source: Ring
    target: Ring
    forward: Callable[[RingValue], RingValue]
    inverse: Callable[[RingValue], RingValue]
    name: str = 'custom'


def _iso_violation(
    candidate: IsoCandidate,
    law: str,
    elements: Sequence[RingValue]
) -> Witness:
    return Witness(
        kind='isomorphism-violation',
        ring=candidate.source.id,
        elements=[str(x) for x in elements],
        detail={
            'law': law,
            'map': candidate.name,
            'target': candidate.target.id,
        },
    )


def verify_iso(
    candidate: IsoCandidate,
    settings: Optional[Settings] = None
) -> Verdict:
    """
    Checks exhaustively that ``forward`` is a ring isomorphism

    The laws are checked in the order ``size``, ``injective``,
    ``inverse``, ``unit``, ``additive``, ``multiplicative`` and the
    first violated law is reported with its inputs.

    Returns
    -------
    :class:`ringlab.witness.Verdict`
    """
    settings = settings or default_settings()
    start = time.perf_counter()
    src, dst = candidate.source, candidate.target
    n = len(src)

    def verdict(
        law: Optional[str] = None,
        elements: Sequence[RingValue] = ()
    ) -> Verdict:
        witness = None
        if law is not None:
            witness = _iso_violation(candidate, law, elements)
            logger.info('`%s` is not an isomorphism: %s', candidate.name, law)
        return Verdict(
            property='isomorphism',
            ring=src.id,
            holds=witness is None,
            witness=witness,
            stats=ScanStats(n * n, time.perf_counter() - start),
            detail={'map': candidate.name, 'target': dst.id},
        )

    if len(dst) != n:
        return verdict('size')
    settings.require('max_pairs', n * n)
    F = np.array(
        [dst.index_of(candidate.forward(x)) for x in src.elements()],
        dtype=np.int32
    )
    G = np.array(
        [src.index_of(candidate.inverse(y)) for y in dst.elements()],
        dtype=np.int32
    )
    values, first, counts = np.unique(F, return_index=True, return_counts=True)
    if (counts > 1).any():
        image = values[counts > 1][0]
        a, b = np.flatnonzero(F == image)[:2]
        return verdict('injective', [src.element_at(int(a)),
                                     src.element_at(int(b))])
    bad = np.flatnonzero(G[F] != np.arange(n))
    if len(bad):
        return verdict('inverse', [src.element_at(int(bad[0]))])
    if F[src.one_index] != dst.one_index:
        return verdict('unit')
    for law, s_table, d_table in (
        ('additive', src.addition_table(settings.jobs),
         dst.addition_table(settings.jobs)),
        ('multiplicative', src.multiplication_table(settings.jobs),
         dst.multiplication_table(settings.jobs)),
    ):
        hit = np.argwhere(F[s_table] != d_table[F[:, None], F[None, :]])
        if len(hit):
            return verdict(law, [src.element_at(int(x)) for x in hit[0]])
    return verdict()


def _band_poly(source: Ring, target: Ring) -> IsoCandidate:
    if not (isinstance(source, MatrixRing) and source.shape.band):
        raise ConstructionError('`band-poly` needs V(n, R) as source')

    def forward(m: RingValue) -> RingValue:
        return target.value(tuple(m.payload[0]))

    def inverse(f: RingValue) -> RingValue:
        return source.value(source._from_free(list(f.payload)))
    return IsoCandidate(source, target, forward, inverse, 'band-poly')


def _dorroh_split(source: Ring, target: Ring) -> IsoCandidate:
    if not isinstance(source, DorrohRing) or source.action.mode != 'hom':
        raise ConstructionError('`dorroh-split` needs a hom Dorroh ring')
    R, S = source.carrier, source.scalars

    def phi(s: Payload) -> Payload:
        return R._from_int(s)

    def forward(x: RingValue) -> RingValue:
        r, s = x.payload
        return target.value((s, R._add(r, phi(s))))

    def inverse(y: RingValue) -> RingValue:
        s, t = y.payload
        return source.value((R._sub(t, phi(s)), s))
    return IsoCandidate(source, target, forward, inverse, 'dorroh-split')


def _same_payload(name: str) -> Callable[[Ring, Ring], IsoCandidate]:
    def factory(source: Ring, target: Ring) -> IsoCandidate:
        return IsoCandidate(
            source,
            target,
            lambda x: target.value(tuple(x.payload)),
            lambda y: source.value(tuple(y.payload)),
            name
        )
    return factory


def _triv_band(source: Ring, target: Ring) -> IsoCandidate:
    if not (isinstance(target, MatrixRing) and target.n == 2):
        raise ConstructionError('`triv-band` needs a 2x2 matrix target')
    z = target.base._zero()

    def forward(x: RingValue) -> RingValue:
        r, m = x.payload
        return target.value(((r, m), (z, r)))

    def inverse(y: RingValue) -> RingValue:
        return source.value((y.payload[0][0], y.payload[0][1]))
    return IsoCandidate(source, target, forward, inverse, 'triv-band')


ISO_MAPS: Dict[str, Callable[[Ring, Ring], IsoCandidate]] = {
    'band-poly': _band_poly,
    'dorroh-split': _dorroh_split,
    'skew-nagata': _same_payload('skew-nagata'),
    'pair-identity': _same_payload('pair-identity'),
    'triv-band': _triv_band,
}


def iso_candidate(name: str, source: Ring, target: Ring) -> IsoCandidate:
    """
    Builds a registered isomorphism candidate

    Raises
    ------
    KeyError
        ``name`` is not registered in :data:`ISO_MAPS`
    """
    if name not in ISO_MAPS:
        raise KeyError('Unknown isomorphism `{}`, choose from {}'.format(
            name, ', '.join(sorted(ISO_MAPS))
        ))
    return ISO_MAPS[name](source, target)


def dorroh_product(ring: DorrohRing) -> ProductRing:
    """The product S x R a unital Dorroh extension splits into"""
    return ProductRing(ring.scalars, ring.carrier)
