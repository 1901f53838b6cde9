"""
Subrings of matrix rings over prime fields

Over GF(p) every subring containing the identity is a vector subspace
of the ambient matrix ring, so subrings are handled as subspaces: a
:class:`SubringBasis` is an RREF basis of flattened n x n matrices. The
subrings between a base subring and its ambient ring are the
multiplicatively closed lifts of the subspaces of the quotient space.
"""

import time
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from ringlab import linalg
from ringlab.config import Settings, default_settings
from ringlab.constructions import MatrixRing, MatrixShape, SubsetRing
from ringlab.errors import (
    BudgetExceeded, ConstructionError, ElementError, DSLSyntaxError,
    InconclusiveError, WitnessError
)
from ringlab.properties import check_i_reversible
from ringlab.ring import Payload, Ring, RingValue, mixed_radix_join
from ringlab.rings import IntegersMod, is_prime
from ringlab.witness import ScanStats, Verdict, Witness


logger = logging.getLogger(__name__)

MatrixLike = Union[RingValue, Payload, str]


def field_order(ring: Ring) -> int:
    """
    The prime p of a matrix ring over GF(p) (or Z_p)

    Raises
    ------
    :class:`ringlab.errors.ConstructionError`
        ``ring`` is not a matrix ring over a prime field
    """
    base = getattr(ring, 'base', None)
    if not isinstance(ring, MatrixRing) or \
            not isinstance(base, IntegersMod) or \
            not is_prime(base.modulus):
        raise ConstructionError(
            'Subring analysis needs a matrix ring over a prime field, '
            'got `{}`'.format(ring.id)
        )
    return base.modulus


class SubringBasis:
    """
    A GF(p)-subspace of a matrix ring, kept as an RREF basis

    Equal subspaces have equal bases, so instances compare by value.

    Parameters
    ----------
    ambient: :class:`ringlab.constructions.MatrixRing`
        Matrix ring over a prime field
    vectors: numpy.ndarray
        Spanning vectors, one flattened n x n matrix per row
    expr: str, default ``None``
        Ring expression of the subring, if it has one

    Attributes
    ----------
    basis: numpy.ndarray
        ``(dimension, n*n)`` RREF basis
    pivots: list of int
    """
    def __init__(
        self,
        ambient: MatrixRing,
        vectors: np.ndarray,
        expr: Optional[str] = None
    ) -> None:
        self.p = field_order(ambient)
        self.ambient = ambient
        self.n = ambient.n
        vectors = np.array(vectors, dtype=np.int64).reshape(-1, self.n ** 2)
        reduced = linalg.row_reduce(vectors, self.p)
        self.basis = reduced.rref
        self.pivots = reduced.pivots
        self.expr = expr
        self._certificate: Optional[np.ndarray] = None
        self._ring: Optional[SubsetRing] = None

    @classmethod
    def from_matrices(
        cls,
        ambient: MatrixRing,
        matrices: Sequence[MatrixLike],
        expr: Optional[str] = None
    ) -> 'SubringBasis':
        """
        The span of some matrices

        Parameters
        ----------
        matrices: list
            ``RingValue`` of ``ambient``, payload grids or literals
        """
        p = field_order(ambient)
        vectors = [_vector(ambient, m, p) for m in matrices]
        if not vectors:
            vectors = [np.zeros(ambient.n ** 2, dtype=np.int64)]
        return cls(ambient, np.array(vectors), expr)

    @property
    def dimension(self) -> int:
        return len(self.pivots)

    @property
    def size(self) -> int:
        return self.p ** self.dimension

    def matrix(self, vector: np.ndarray) -> RingValue:
        v = np.asarray(vector).reshape(self.n, self.n) % self.p
        return self.ambient._wrap(tuple(
            tuple(int(x) for x in row) for row in v
        ))

    def matrices(self) -> List[RingValue]:
        """The basis as ambient elements"""
        return [self.matrix(row) for row in self.basis]

    def literals(self) -> List[str]:
        return [str(m) for m in self.matrices()]

    def coordinates(self, m: MatrixLike) -> Optional[np.ndarray]:
        """Coordinates of ``m`` in the basis, ``None`` if ``m`` is outside"""
        return linalg.coordinates(
            _vector(self.ambient, m, self.p), self.basis, self.pivots, self.p
        )

    def contains(self, m: MatrixLike) -> bool:
        return self.coordinates(m) is not None

    def contains_space(self, other: 'SubringBasis') -> bool:
        return not linalg.residual(
            other.basis, self.basis, self.pivots, self.p
        ).any()

    @property
    def contains_unity(self) -> bool:
        return self.contains(self.ambient.one)

    def _products(self) -> np.ndarray:
        """``out[u, v]`` is the flattened product of basis rows u and v"""
        d, n = self.dimension, self.n
        M = self.basis.reshape(d, n, n)
        return np.einsum('aik,bkj->abij', M, M).reshape(d * d, n * n) % self.p

    @property
    def certificate(self) -> Optional[np.ndarray]:
        """
        Closure certificate: ``certificate[u, v]`` holds the coordinates
        of the product of basis matrices u and v. ``None`` if some
        product leaves the span.
        """
        if self._certificate is None:
            products = self._products()
            if linalg.residual(products, self.basis, self.pivots, self.p).any():
                return None
            d = self.dimension
            self._certificate = products[:, self.pivots].reshape(d, d, d)
        return self._certificate

    def is_closed(self) -> bool:
        return self.certificate is not None

    def recheck(self, base: Optional['SubringBasis'] = None) -> bool:
        """
        Re-validates the subring from scratch

        The closure certificate is recombined with the basis and
        compared with freshly computed products; the unity and, if
        given, the base subring must be contained.
        """
        certificate = self.certificate
        if certificate is None or not self.contains_unity:
            return False
        d = self.dimension
        recombined = (certificate.reshape(d * d, d) @ self.basis) % self.p
        if not np.array_equal(recombined, self._products()):
            return False
        return base is None or self.contains_space(base)

    def as_ring(self) -> SubsetRing:
        """
        The subring as an enumerable ring

        Elements keep the ambient index order. The ring id is a
        ``closure(...)`` expression, so witnesses found in it can be replayed.
        """
        if self._ring is None:
            coefficients = np.array(
                list(product(range(self.p), repeat=self.dimension)),
                dtype=np.int64
            ).reshape(-1, self.dimension)
            elements = (coefficients @ self.basis) % self.p
            free = [i * self.n + j
                    for i, j in self.ambient.shape.free_positions]
            digits = [elements[:, k] for k in free]
            indices = mixed_radix_join(digits, self.ambient.radices)
            unity = self.ambient.one_index if self.contains_unity else None
            self._ring = SubsetRing(self.ambient, indices, unity, self.ring_expr)
        return self._ring

    @property
    def ring_expr(self) -> str:
        if self.expr is not None:
            return self.expr
        return 'closure({})'.format(
            ', '.join([self.ambient.id] + self.literals())
        )

    def toJSON(self) -> Dict[str, Any]:
        return {
            'ambient': self.ambient.id,
            'expr': self.expr,
            'dimension': self.dimension,
            'basis': self.literals(),
        }

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SubringBasis) and \
            other.ambient.id == self.ambient.id and \
            np.array_equal(other.basis, self.basis)

    def __hash__(self) -> int:
        return hash((self.ambient.id, self.basis.tobytes()))

    def __repr__(self) -> str:
        return '<SubringBasis dim={} in `{}`>'.format(
            self.dimension, self.ambient.id
        )


def _vector(ambient: MatrixRing, m: MatrixLike, p: int) -> np.ndarray:
    if isinstance(m, str):
        m = ambient.parse(m)
    if isinstance(m, RingValue):
        m = ambient._check(m)
    return np.array(m, dtype=np.int64).ravel() % p


def shape_basis(
    ring: MatrixRing,
    ambient: Optional[MatrixRing] = None
) -> SubringBasis:
    """
    The basis of a patterned matrix ring over GF(p)

    One basis matrix per free position of the shape.

    Parameters
    ----------
    ring: :class:`ringlab.constructions.MatrixRing`
        e.g. ``D(5, GF2)`` or ``S4(GF2)``
    ambient: :class:`ringlab.constructions.MatrixRing`, default ``None``
        The ring the subspace lives in. Default is T(n, base) for
        upper triangular shapes and M(n, base) otherwise.
    """
    field_order(ring)
    if ambient is None:
        shape = MatrixShape.upper_triangular(ring.n) if ring.shape.upper \
            else MatrixShape.full(ring.n)
        ambient = MatrixRing(shape, ring.base)
    count = len(ring.shape.free_positions)
    z, o = ring.base._zero(), ring.base._one()
    matrices = []
    for k in range(count):
        values = [z] * count
        values[k] = o
        matrices.append(ring._from_free(values))
    return SubringBasis.from_matrices(ambient, matrices, ring.id)


def subring_basis(ring: Ring, ambient: MatrixRing) -> SubringBasis:
    """
    The basis of any ring whose elements are matrices of ``ambient``
    """
    if isinstance(ring, MatrixRing):
        return shape_basis(ring, ambient)
    return SubringBasis.from_matrices(
        ambient, [x.payload for x in ring.elements()], ring.id
    )


def linear_closure(
    ambient: MatrixRing,
    gens: Sequence[MatrixLike]
) -> SubringBasis:
    """
    The smallest subring with identity containing ``gens``

    The span of ``gens`` and I is extended by all products of basis
    pairs until it stops growing.
    """
    p = field_order(ambient)
    vectors = [_vector(ambient, ambient.one, p)] + \
        [_vector(ambient, g, p) for g in gens]
    current = SubringBasis(ambient, np.array(vectors))
    while True:
        grown = SubringBasis(
            ambient, np.vstack([current.basis, current._products()])
        )
        if grown.dimension == current.dimension:
            return current
        current = grown


@dataclass
class DiagonalIdempotentFamily:
    """
    Indicator idempotents of the distinct diagonal values of a matrix

    Attributes
    ----------
    source: RingValue
        The diagonal matrix B
    values: list of int
        Distinct diagonal values in order of first appearance
    idempotents: list of RingValue
        ``idempotents[m]`` has a 1 wherever B has ``values[m]``
    coefficients: list of numpy.ndarray
        ``idempotents[m] = sum_t coefficients[m][t] B^t``
    """
    source: RingValue
    values: List[int]
    idempotents: List[RingValue]
    coefficients: List[np.ndarray] = field(default_factory=list)

    def check(self) -> bool:
        """
        The idempotents sum to I, are pairwise orthogonal and equal
        their polynomial expressions in B
        """
        ring = self.source.ring
        total = ring.zero
        for e in self.idempotents:
            total = total + e
        if total != ring.one:
            return False
        for m, e in enumerate(self.idempotents):
            if e * e != e:
                return False
            for m2, f in enumerate(self.idempotents):
                if m != m2 and e * f != ring.zero:
                    return False
        for e, coefficients in zip(self.idempotents, self.coefficients):
            power = ring.one
            combination = ring.zero
            for c in coefficients:
                combination = combination + power * int(c)
                power = power * self.source
            if combination != e:
                return False
        return True

    def toJSON(self) -> Dict[str, Any]:
        return {
            'source': str(self.source),
            'values': list(self.values),
            'idempotents': [str(e) for e in self.idempotents],
            'coefficients': [[int(c) for c in cs] for cs in self.coefficients],
        }


def extract_diagonal_idempotents(
    ambient: MatrixRing,
    base: Optional[SubringBasis],
    B: MatrixLike
) -> DiagonalIdempotentFamily:
    """
    Splits a diagonal matrix into the indicator idempotents of its values

    Each indicator is written as a polynomial in B by solving the
    Vandermonde system of the distinct values, which proves that it
    lies in every subring containing B.

    Parameters
    ----------
    ambient: :class:`ringlab.constructions.MatrixRing`
    base: :class:`SubringBasis` or ``None``
        If given, B must lie in it
    B: diagonal matrix

    Examples
    --------
        T = build('T(5, GF3)')
        family = extract_diagonal_idempotents(
            T, None, '[[0,0,0,0,0],[0,1,0,0,0],[0,0,1,0,0],'
                     '[0,0,0,0,0],[0,0,0,0,2]]'
        )
        family.values
        # >> [0, 1, 2]
        str(family.idempotents[2])
        # >> [[0, 0, 0, 0, 0], [0, 0, 0, 0, 0], [0, 0, 0, 0, 0], [0, 0, 0, 0, 0], [0, 0, 0, 0, 1]]

    """
    p = field_order(ambient)
    grid = np.array(_vector(ambient, B, p)).reshape(ambient.n, ambient.n)
    if np.count_nonzero(grid - np.diag(np.diag(grid))):
        raise ConstructionError('{} is not diagonal'.format(
            ambient._format(tuple(tuple(int(x) for x in r) for r in grid))
        ))
    source = ambient.value(tuple(tuple(int(x) for x in r) for r in grid))
    if base is not None and not base.contains(source):
        raise ConstructionError(
            '{} is not in the subring `{}`'.format(source, base.ring_expr)
        )
    diagonal = [int(x) for x in np.diag(grid)]
    values: List[int] = []
    for x in diagonal:
        if x not in values:
            values.append(x)
    if len(values) == 1:
        logger.warning(
            '%s has a single diagonal value, no nontrivial idempotent arises',
            source
        )
    k = len(values)
    vandermonde = np.array(
        [[pow(x, t, p) for t in range(k)] for x in diagonal], dtype=np.int64
    )
    idempotents = []
    coefficients = []
    for value in values:
        indicator = np.array([int(x == value) for x in diagonal])
        solution = linalg.solve(vandermonde, indicator, p)
        if solution is None:
            raise ConstructionError(
                'Indicator of {} is not a polynomial in {}'.format(
                    value, source
                )
            )
        idempotents.append(ambient.value(tuple(
            tuple(int(indicator[i]) if i == j else 0
                  for j in range(ambient.n))
            for i in range(ambient.n)
        )))
        coefficients.append(solution)
    return DiagonalIdempotentFamily(source, values, idempotents, coefficients)


def _complement(
    ambient_basis: SubringBasis,
    base: SubringBasis
) -> np.ndarray:
    chosen = list(base.basis)
    complement = []
    for row in ambient_basis.basis:
        if not linalg.in_span(row, np.array(chosen), base.p):
            chosen.append(row)
            complement.append(row)
    return np.array(complement, dtype=np.int64).reshape(-1, base.n ** 2)


def intermediate_subrings(
    ambient: MatrixRing,
    base: SubringBasis,
    settings: Optional[Settings] = None
) -> List[SubringBasis]:
    """
    All subrings strictly above ``base`` inside ``ambient``

    Every subspace W of the quotient ambient/base is lifted to
    base + W; the lift is kept when it is closed under multiplication.
    The zero subspace (``base`` itself) is skipped; the ambient ring is
    part of the result.

    Parameters
    ----------
    ambient: :class:`ringlab.constructions.MatrixRing`
        Matrix ring over a prime field
    base: :class:`SubringBasis`
        Must contain the identity
    settings: :class:`ringlab.config.Settings`, default ``None``
        The quotient dimension is limited by ``max_quotient_dim``

    Raises
    ------
    :class:`ringlab.errors.ConstructionError`
        Non-prime-field ambient, or ``base`` is not a subring of it
    :class:`ringlab.errors.BudgetExceeded`
        The quotient dimension is above ``max_quotient_dim``
    """
    settings = settings or default_settings()
    p = field_order(ambient)
    full = shape_basis(ambient, ambient)
    if not full.contains_space(base):
        raise ConstructionError('`{}` is not inside `{}`'.format(
            base.ring_expr, ambient.id
        ))
    if not base.contains_unity or not base.is_closed():
        raise ConstructionError(
            '`{}` is not a subring with identity'.format(base.ring_expr)
        )
    C = _complement(full, base)
    q = len(C)
    settings.require('max_quotient_dim', q)
    start = time.perf_counter()
    found = []
    for W in linalg.enumerate_subspaces(q, p):
        if not len(W):
            continue
        lift = SubringBasis(ambient, np.vstack([base.basis, (W @ C) % p]))
        if lift.is_closed():
            if lift == full:
                lift.expr = ambient.id
            found.append(lift)
    logger.debug(
        '%d of %d quotient subspaces of `%s` over `%s` are subrings (%.3fs)',
        len(found), linalg.count_subspaces(q, p) - 1,
        ambient.id, base.ring_expr, time.perf_counter() - start
    )
    return found


def diagonal_patterns(S: SubringBasis) -> List[Tuple[int, ...]]:
    """
    All 0/1 diagonal matrices in ``S``, as their diagonals

    Ordered by the diagonal read as a binary number, first entry most
    significant.
    """
    n = S.n
    patterns = []
    for diagonal in product((0, 1), repeat=n):
        vector = np.diag(np.array(diagonal, dtype=np.int64)).ravel()
        if not linalg.residual(vector, S.basis, S.pivots, S.p).any():
            patterns.append(diagonal)
    return patterns


def weight_three_pattern(S: SubringBasis) -> Optional[Tuple[int, ...]]:
    """
    A diagonal idempotent pattern of ``S`` with at least three ones
    that is not the identity

    A pattern of smaller weight qualifies through its complement
    I - pattern, which lies in ``S`` as well.
    """
    n = S.n
    for diagonal in diagonal_patterns(S):
        weight = sum(diagonal)
        if weight in (0, n):
            continue
        if weight >= 3:
            return diagonal
        if n - weight >= 3:
            return tuple(1 - x for x in diagonal)
    return None


def _pattern_pair(
    S: SubringBasis,
    pattern: Tuple[int, ...]
) -> Optional[Tuple[RingValue, RingValue]]:
    """
    a = E_(i2 i3) + (I - alpha), b = E_(i1 i2) + (I - alpha) for the
    first three ones i1 < i2 < i3 of the pattern alpha.
    ab = I - alpha is a nonzero idempotent, ba = E_(i1 i3) + (I - alpha)
    is not idempotent.
    """
    n = S.n
    i1, i2, i3 = [i for i, x in enumerate(pattern) if x][:3]

    def matrix(i: int, j: int) -> RingValue:
        grid = np.diag(np.array([1 - x for x in pattern], dtype=np.int64))
        grid[i, j] = 1
        return S.matrix(grid.ravel())

    a, b = matrix(i2, i3), matrix(i1, i2)
    if not (S.contains(a) and S.contains(b)):
        return None
    ab, ba = a * b, b * a
    if ab == S.ambient.zero or ab * ab != ab or ba * ba == ba:
        return None
    return a, b


def certify_not_i_reversible(
    S: SubringBasis,
    settings: Optional[Settings] = None
) -> Optional[Witness]:
    """
    Finds an i-reversibility violation inside ``S``

    The constructive route builds the pair from a diagonal pattern of
    weight at least three; otherwise all pairs of ``S`` are scanned.
    The witness is stated in the ambient ring. Its ``subring`` detail
    carries the basis of ``S``, so replay also checks that both
    elements lie in ``S``.

    Returns
    -------
    :class:`ringlab.witness.Witness` or ``None``
        ``None`` means the exhaustive scan found no violation, i.e.
        ``S`` is i-reversible

    Raises
    ------
    :class:`ringlab.errors.InconclusiveError`
        No constructive pair and the exhaustive scan is over budget
    """
    settings = settings or default_settings()
    pattern = weight_three_pattern(S)
    if pattern is not None:
        pair = _pattern_pair(S, pattern)
        if pair is not None:
            return Witness(
                kind='i-reversibility-violation',
                ring=S.ambient.id,
                elements=[str(x) for x in pair],
                detail={'route': 'weight-three-pattern',
                        'pattern': list(pattern),
                        'subring': S.literals()},
            )
    try:
        verdict = check_i_reversible(S.as_ring(), settings)
    except BudgetExceeded as err:
        logger.warning(
            'No certificate for the %d-dimensional subring %s: %s',
            S.dimension, S.ring_expr, err
        )
        raise InconclusiveError(
            'Cannot decide i-reversibility of `{}`: {}'.format(
                S.ring_expr, err
            )
        )
    if verdict.witness is None:
        return None
    return Witness(
        kind='i-reversibility-violation',
        ring=S.ambient.id,
        elements=list(verdict.witness.elements),
        detail={'route': 'exhaustive', 'subring': S.literals()},
    )


@dataclass
class MaximalityEntry:
    subring: SubringBasis
    witness: Optional[Witness]

    @property
    def i_reversible(self) -> bool:
        return self.witness is None or \
            self.witness.kind == 'intermediate-i-reversible-subring'

    def toJSON(self) -> Dict[str, Any]:
        return {
            'basis': self.subring.literals(),
            'dimension': self.subring.dimension,
            'i_reversible': self.i_reversible,
            'witness': self.witness.toJSON() if self.witness else None,
        }


@dataclass
class MaximalityReport:
    """
    Outcome of a maximality analysis, one entry per subring strictly
    above the base
    """
    base: str
    ambient: str
    entries: List[MaximalityEntry] = field(default_factory=list)

    @property
    def maximal(self) -> bool:
        return not any(e.i_reversible for e in self.entries)

    @property
    def dimensions(self) -> List[int]:
        return sorted(e.subring.dimension for e in self.entries)

    def toJSON(self) -> Dict[str, Any]:
        return {
            'base': self.base,
            'ambient': self.ambient,
            'maximal': self.maximal,
            'subrings': [e.toJSON() for e in self.entries],
        }


def _subring_witness(
    S: SubringBasis,
    base: SubringBasis
) -> Witness:
    return Witness(
        kind='intermediate-i-reversible-subring',
        ring=S.ambient.id,
        elements=S.literals(),
        base=base.ring_expr,
        detail={'dimension': S.dimension},
    )


def check_maximal_i_reversible(
    base: Union[SubringBasis, MatrixRing],
    ambient: MatrixRing,
    settings: Optional[Settings] = None
) -> Verdict:
    """
    Is ``base`` a maximal i-reversible subring of ``ambient``?

    Every subring strictly above ``base`` (the ambient ring included)
    must receive a non-i-reversibility certificate. Subrings are
    certified in parallel when ``settings.jobs > 1``.

    Parameters
    ----------
    base: :class:`SubringBasis` or matrix ring
        e.g. ``build('S4(GF2)')``
    ambient: :class:`ringlab.constructions.MatrixRing`
        e.g. ``build('T(4, GF2)')``

    Returns
    -------
    :class:`ringlab.witness.Verdict`
        ``witnesses`` holds one certificate per intermediate subring;
        the report is in ``detail``. A failing verdict names an
        i-reversible intermediate subring, or the base's own violation
        if the base is not i-reversible.

    Raises
    ------
    :class:`ringlab.errors.InconclusiveError`
        Some intermediate subring could not be certified within budget

    Examples
    --------
        check_maximal_i_reversible(
            build('S3(GF2)'), build('T(3, GF2)')
        ).holds
        # >> True

    """
    settings = settings or default_settings()
    start = time.perf_counter()
    if isinstance(base, MatrixRing):
        base = shape_basis(base, ambient)
    report = MaximalityReport(base.ring_expr, ambient.id)

    def verdict(witness: Optional[Witness], witnesses: List[Witness],
                detail: Dict[str, Any]) -> Verdict:
        return Verdict(
            property='maximal-i-reversible',
            ring=ambient.id,
            holds=witness is None,
            witness=witness,
            stats=ScanStats(
                len(report.entries), time.perf_counter() - start,
                settings.jobs
            ),
            witnesses=witnesses,
            detail=detail,
        )

    base_verdict = check_i_reversible(base.as_ring(), settings)
    if base_verdict.witness is not None:
        logger.info('`%s` is not i-reversible itself', base.ring_expr)
        witness = Witness(
            kind='i-reversibility-violation',
            ring=ambient.id,
            elements=list(base_verdict.witness.elements),
        )
        return verdict(witness, [], {'base': base.ring_expr,
                                     'reason': 'base-not-i-reversible'})

    candidates = intermediate_subrings(ambient, base, settings)

    def certify(S: SubringBasis) -> Optional[Witness]:
        return certify_not_i_reversible(S, settings)

    if settings.jobs > 1 and len(candidates) > 1:
        with ThreadPoolExecutor(max_workers=settings.jobs) as pool:
            certificates = list(pool.map(certify, candidates))
    else:
        certificates = [certify(S) for S in candidates]

    for S, certificate in zip(candidates, certificates):
        if certificate is None:
            certificate = _subring_witness(S, base)
        report.entries.append(MaximalityEntry(S, certificate))
    found = [e.witness for e in report.entries if e.i_reversible]
    logger.debug(
        '`%s` in `%s`: %d intermediate subrings, %d i-reversible',
        base.ring_expr, ambient.id, len(report.entries), len(found)
    )
    first = found[0] if found else None
    return verdict(
        first,
        [e.witness for e in report.entries
         if e.witness is not None and e.witness is not first],
        report.toJSON()
    )


def verify_subring_witness(
    witness: Witness,
    ring: Ring,
    settings: Optional[Settings] = None
) -> bool:
    """
    Replays an ``intermediate-i-reversible-subring`` witness

    The basis is re-read from its literals and checked to be closed,
    to contain the base ring, to differ from the ambient ring and to
    be i-reversible.

    Raises
    ------
    :class:`ringlab.errors.WitnessError`
        The ambient is not a matrix ring over a prime field, or the
        base or a basis literal does not build
    """
    from ringlab import dsl

    if not isinstance(ring, MatrixRing):
        raise WitnessError('`{}` is not a matrix ring'.format(ring.id))
    if witness.base is None:
        raise WitnessError('Subring witness without a base ring')
    try:
        S = SubringBasis.from_matrices(ring, witness.elements)
        base = subring_basis(dsl.build(witness.base), ring)
    except (ConstructionError, ElementError, DSLSyntaxError) as err:
        raise WitnessError('Cannot rebuild the subring: {}'.format(err))
    dimension = witness.detail.get('dimension')
    if dimension is not None and dimension != S.dimension:
        logger.info('Subring has dimension %d, not %s',
                    S.dimension, dimension)
        return False
    full = shape_basis(ring, ring)
    checks = [
        S.recheck(base),
        full.contains_space(S),
        S.dimension < full.dimension,
    ]
    if not all(checks):
        logger.info('Subring witness fails structural checks %s', checks)
        return False
    return check_i_reversible(S.as_ring(), settings).holds


def verify_subring_membership(witness: Witness, ring: Ring) -> bool:
    """
    ``True`` iff the witness elements lie in the subring named by its
    ``subring`` detail, and that basis spans a subring with identity

    Raises
    ------
    :class:`ringlab.errors.WitnessError`
        The ring is not a matrix ring over a prime field, or a basis
        literal or element does not parse
    """
    if not isinstance(ring, MatrixRing):
        raise WitnessError('`{}` is not a matrix ring'.format(ring.id))
    try:
        S = SubringBasis.from_matrices(ring, witness.detail['subring'])
        outside = [x for x in witness.elements if not S.contains(x)]
    except (ConstructionError, ElementError, DSLSyntaxError) as err:
        raise WitnessError('Cannot rebuild the subring: {}'.format(err))
    if not S.recheck():
        logger.info('The subring basis of the witness is not a subring')
        return False
    if outside:
        logger.info('Witness elements %s are outside the subring', outside)
        return False
    return True
