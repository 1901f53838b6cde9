"""
Linear algebra over prime fields GF(p)

Vectors and matrices are integer numpy arrays with entries in
``0..p-1``. All functions return fresh arrays reduced mod p.
"""

import logging
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterator, List, Optional

import numpy as np


logger = logging.getLogger(__name__)


def inverse(x: int, p: int) -> int:
    """Multiplicative inverse of a nonzero residue mod a prime"""
    x = int(x) % p
    if x == 0:
        raise ZeroDivisionError('0 has no inverse mod {}'.format(p))
    return pow(x, p - 2, p)


@dataclass
class RowReduceResult:
    """
    Attributes
    ----------
    rref: numpy.ndarray
        The nonzero rows of the reduced row echelon form
    pivots: list of int
        Pivot column of every row of ``rref``
    """
    rref: np.ndarray
    pivots: List[int]

    @property
    def rank(self) -> int:
        return len(self.pivots)


def row_reduce(matrix: np.ndarray, p: int) -> RowReduceResult:
    """
    Reduced row echelon form over GF(p)

    Parameters
    ----------
    matrix: numpy.ndarray
        2-dimensional, any integer entries
    p: int
        A prime

    Returns
    -------
    :class:`RowReduceResult`

    Examples
    --------
        row_reduce(np.array([[1, 1, 0], [1, 0, 1]]), 2).rref
        # >> array([[1, 0, 1],
        # >>        [0, 1, 1]])

    """
    A = np.array(matrix, dtype=np.int64, ndmin=2) % p
    rows, cols = A.shape
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        candidates = np.flatnonzero(A[r:, c])
        if not len(candidates):
            continue
        pivot = r + int(candidates[0])
        if pivot != r:
            A[[r, pivot]] = A[[pivot, r]]
        A[r] = (A[r] * inverse(A[r, c], p)) % p
        others = np.flatnonzero(A[:, c])
        others = others[others != r]
        if len(others):
            A[others] = (A[others] - np.outer(A[others, c], A[r])) % p
        pivots.append(c)
        r += 1
    return RowReduceResult(A[:r].copy(), pivots)


def rank(matrix: np.ndarray, p: int) -> int:
    return row_reduce(matrix, p).rank


def residual(
    vectors: np.ndarray,
    rref: np.ndarray,
    pivots: List[int],
    p: int
) -> np.ndarray:
    """
    What is left of each row of ``vectors`` after clearing the pivot
    columns of an RREF basis. A row is in the span iff its residual is 0.
    """
    V = np.array(vectors, dtype=np.int64, ndmin=2) % p
    if not pivots:
        return V
    return (V - V[:, pivots] @ rref) % p


def in_span(vector: np.ndarray, rows: np.ndarray, p: int) -> bool:
    """``True`` if ``vector`` is a GF(p) combination of ``rows``"""
    reduced = row_reduce(rows, p)
    return not residual(vector, reduced.rref, reduced.pivots, p).any()


def coordinates(
    vector: np.ndarray,
    rref: np.ndarray,
    pivots: List[int],
    p: int
) -> Optional[np.ndarray]:
    """
    Coordinates of ``vector`` in an RREF basis, ``None`` if it is not
    in the span
    """
    v = np.array(vector, dtype=np.int64).ravel() % p
    if residual(v, rref, pivots, p).any():
        return None
    return v[pivots].copy()


def solve(A: np.ndarray, b: np.ndarray, p: int) -> Optional[np.ndarray]:
    """
    A solution ``x`` of ``A x = b`` over GF(p), ``None`` if there is none

    Free variables are set to 0.
    """
    A = np.array(A, dtype=np.int64, ndmin=2) % p
    b = np.array(b, dtype=np.int64).reshape(-1, 1) % p
    cols = A.shape[1]
    reduced = row_reduce(np.hstack([A, b]), p)
    if cols in reduced.pivots:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for row, c in zip(reduced.rref, reduced.pivots):
        x[c] = row[cols]
    return x


def count_subspaces(dim: int, p: int) -> int:
    """Number of subspaces of GF(p)^dim, all dimensions"""
    total = 0
    for k in range(dim + 1):
        num, den = 1, 1
        for i in range(k):
            num *= p ** (dim - i) - 1
            den *= p ** (i + 1) - 1
        total += num // den
    return total


def enumerate_subspaces(
    dim: int,
    p: int,
    k: Optional[int] = None
) -> Iterator[np.ndarray]:
    """
    Yields every subspace of GF(p)^dim once, as its RREF basis

    Subspaces come ordered by dimension, then by pivot set, then by
    the free entries. The zero subspace is a ``(0, dim)`` array.

    Parameters
    ----------
    dim: int
        Dimension of the ambient space
    p: int
        A prime
    k: int, default ``None``
        Only subspaces of this dimension
    """
    dimensions = range(dim + 1) if k is None else [k]
    for size in dimensions:
        for pivots in combinations(range(dim), size):
            free = [
                (row, col)
                for row, pivot in enumerate(pivots)
                for col in range(pivot + 1, dim)
                if col not in pivots
            ]
            for values in product(range(p), repeat=len(free)):
                basis = np.zeros((size, dim), dtype=np.int64)
                for row, pivot in enumerate(pivots):
                    basis[row, pivot] = 1
                for (row, col), value in zip(free, values):
                    basis[row, col] = value
                yield basis
