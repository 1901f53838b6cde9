"""
Skew polynomial, truncated skew polynomial and Laurent polynomial rings

Polynomials are payload tuples of base coefficients, lowest degree first.
The exact rings never truncate; finite quotients R[x;sigma]/(x^k) are
the separate :class:`TruncatedSkewRing`.

Conventions
-----------
``left``: coefficients to the left of x, ``x b = sigma(b) x``,
so (a x^i)(b x^j) = a sigma^i(b) x^(i+j).

``right``: coefficients to the right of x, ``b x = x sigma(b)``,
so (x^i a)(x^j b) = x^(i+j) sigma^j(a) b.
"""

import logging
from itertools import product
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ringlab import literal as lit
from ringlab.config import Settings
from ringlab.endo import Endomorphism, IdentityEndo, require_valid
from ringlab.errors import ConstructionError, ElementError
from ringlab.ring import (
    Payload, Ring, RingValue, mixed_radix_join, mixed_radix_split
)


logger = logging.getLogger(__name__)

CONVENTIONS = ('left', 'right')
VARIABLE = 'x'


def _coefficient_text(base: Ring, c: Payload) -> str:
    text = base._format(c)
    if lit.needs_parentheses(text):
        return '({})'.format(text)
    return text


def _power_text(exponent: int) -> str:
    if exponent == 1:
        return VARIABLE
    return '{}^{}'.format(VARIABLE, exponent)


def _term_text(
    base: Ring,
    c: Payload,
    exponent: int,
    convention: str = 'left'
) -> str:
    if exponent == 0:
        return base._format(c)
    if c == base._one():
        return _power_text(exponent)
    if convention == 'right':
        return '{}*{}'.format(_power_text(exponent), _coefficient_text(base, c))
    return '{}*{}'.format(_coefficient_text(base, c), _power_text(exponent))


def coefficient_arrays(size: int, length: int) -> np.ndarray:
    """
    All coefficient index vectors of the given length

    Row ``p`` holds the coefficient indices of the ``p``-th polynomial,
    the constant coefficient being the most significant digit.
    """
    indices = np.arange(size ** length, dtype=np.int64)
    return np.stack(
        mixed_radix_split(indices, [size] * length), axis=-1
    ).astype(np.int32)


def skew_convolve(
    mul: np.ndarray,
    add: np.ndarray,
    powers: Sequence[np.ndarray],
    A: np.ndarray,
    B: np.ndarray,
    convention: str = 'left'
) -> np.ndarray:
    """
    Products of coefficient index vectors in R[x;sigma]

    Parameters
    ----------
    mul, add: numpy.ndarray
        Cayley tables of the base ring
    powers: list of numpy.ndarray
        Index maps of sigma^0, sigma^1, ... covering every degree of
        ``A`` and ``B``
    A, B: numpy.ndarray
        Coefficient vectors along the last axis; the leading axes
        broadcast

    Returns
    -------
    numpy.ndarray
        Coefficient vectors of length ``len(A) + len(B) - 1``
    """
    la, lb = A.shape[-1], B.shape[-1]
    out: List[Optional[np.ndarray]] = [None] * (la + lb - 1)
    for i in range(la):
        for j in range(lb):
            if convention == 'left':
                term = mul[A[..., i], powers[i][B[..., j]]]
            else:
                term = mul[powers[j][A[..., i]], B[..., j]]
            k = i + j
            out[k] = term if out[k] is None else add[out[k], term]
    return np.stack(out, axis=-1)  # type: ignore


class SkewPolynomialRing(Ring):
    """
    The exact skew polynomial ring R[x;sigma]

    The ring is arithmetic-only; bounded families of its elements are
    produced by :func:`bounded_polynomials`.

    Parameters
    ----------
    base: :class:`ringlab.ring.Ring`
    sigma: :class:`ringlab.endo.Endomorphism`, default identity
    convention: str, default ``left``
    settings: :class:`ringlab.config.Settings`, default ``None``
        Budget for validating ``sigma``

    Examples
    --------
        R = build('prod(Z2, Z2)')
        P = SkewPolynomialRing(R, SwapEndo(R))
        f = P.parse('(1, 0)*x')
        g = P.parse('(1, 0)')
        f * g
        # >> RingValue(`skew(prod(Z2, Z2), swap, left)`: ())
        g * f
        # >> RingValue(`skew(prod(Z2, Z2), swap, left)`: ((0, 0), (1, 0)))

    """
    kind = 'skew-polynomial'

    def __init__(
        self,
        base: Ring,
        sigma: Optional[Endomorphism] = None,
        convention: str = 'left',
        settings: Optional[Settings] = None
    ) -> None:
        sigma = sigma or IdentityEndo(base)
        _check_sigma(base, sigma, convention, settings)
        super().__init__('skew({}, {}, {})'.format(
            base.id, sigma.expr, convention
        ))
        self.base = base
        self.sigma = sigma
        self.convention = convention

    def _trim(self, coeffs: Sequence[Payload]) -> Tuple:
        zero = self.base._zero()
        coeffs = list(coeffs)
        while coeffs and coeffs[-1] == zero:
            coeffs.pop()
        return tuple(coeffs)

    def _zero(self) -> Tuple:
        return ()

    def _one(self) -> Tuple:
        return self._trim([self.base._one()])

    def _add(self, f: Tuple, g: Tuple) -> Tuple:
        B = self.base
        size = max(len(f), len(g))
        f = f + (B._zero(),) * (size - len(f))
        g = g + (B._zero(),) * (size - len(g))
        return self._trim([B._add(a, b) for a, b in zip(f, g)])

    def _neg(self, f: Tuple) -> Tuple:
        return tuple(self.base._neg(a) for a in f)

    def _mul(self, f: Tuple, g: Tuple) -> Tuple:
        if not f or not g:
            return ()
        B = self.base
        out = [B._zero()] * (len(f) + len(g) - 1)
        for i, a in enumerate(f):
            for j, b in enumerate(g):
                if self.convention == 'left':
                    term = B._mul(a, self.sigma.apply_power(b, i))
                else:
                    term = B._mul(self.sigma.apply_power(a, j), b)
                out[i + j] = B._add(out[i + j], term)
        return self._trim(out)

    def _from_int(self, n: int) -> Tuple:
        return self._trim([self.base._from_int(n)])

    def _from_tuple(self, items: Tuple[lit.Node, ...]) -> Tuple:
        return self._trim([self.base._from_tuple(items)])

    def _from_grid(self, rows: Tuple[Tuple[lit.Node, ...], ...]) -> Tuple:
        return self._trim([self.base._from_grid(rows)])

    def _unit(self, name: str, exponent: int) -> Tuple:
        if name != VARIABLE:
            return self._trim([self.base._unit(name, exponent)])
        if exponent < 0:
            raise ElementError(
                'Negative power of x in `{}`'.format(self.id)
            )
        return self._trim([self.base._zero()] * exponent + [self.base._one()])

    def _validate(self, payload: Payload) -> Tuple:
        if not isinstance(payload, tuple):
            raise ElementError(
                '`{!r}` is not a coefficient tuple'.format(payload)
            )
        return self._trim([self.base._validate(c) for c in payload])

    def _format(self, f: Tuple) -> str:
        terms = [
            _term_text(self.base, c, i, self.convention)
            for i, c in enumerate(f) if c != self.base._zero()
        ]
        return ' + '.join(terms) if terms else '0'

    def _compute_characteristic(self) -> int:
        return self.base.characteristic

    def _sample_payloads(self) -> List[Tuple]:
        samples = self.base._sample_payloads()[:3]
        one = self.base._one()
        out = [self._trim([c]) for c in samples]
        out += [self._trim([self.base._zero(), c]) for c in samples]
        out.append(self._trim([one, one]))
        return list(dict.fromkeys(out))

    def degree(self, f: RingValue) -> int:
        """Degree of ``f``, -1 for the zero polynomial"""
        return len(self._check(f)) - 1

    def coefficient(self, f: RingValue, i: int) -> RingValue:
        coeffs = self._check(f)
        if 0 <= i < len(coeffs):
            return self.base._wrap(coeffs[i])
        return self.base.zero

    def constant(self, c: RingValue) -> RingValue:
        return self._wrap(self._trim([self.base._check(c)]))

    def from_coefficients(self, coeffs: Sequence[RingValue]) -> RingValue:
        return self._wrap(self._trim([self.base._check(c) for c in coeffs]))

    def from_indices(self, indices: Sequence[int], low: int = 0) -> RingValue:
        if low:
            raise ElementError('Polynomials start at degree 0')
        return self._wrap(self._trim(
            [self.base._payload_at(int(i)) for i in indices]
        ))


def _check_sigma(
    base: Ring,
    sigma: Endomorphism,
    convention: str,
    settings: Optional[Settings]
) -> None:
    if convention not in CONVENTIONS:
        raise ConstructionError(
            'Unknown convention `{}`, use left or right'.format(convention)
        )
    if sigma.ring.id != base.id:
        raise ConstructionError(
            '`{}` acts on `{}`, not on `{}`'.format(
                sigma.expr, sigma.ring.id, base.id
            )
        )
    require_valid(sigma, settings)


def polynomial_ring(base: Ring) -> SkewPolynomialRing:
    """The ordinary polynomial ring R[x]"""
    return SkewPolynomialRing(base)


def skew_mul(f: RingValue, g: RingValue) -> RingValue:
    """
    Exact product in R[x;sigma]

    Raises
    ------
    :class:`ringlab.errors.RingMismatchError`
        ``f`` and ``g`` belong to skew rings with different sigma,
        convention or base
    """
    ring = f.ring
    if not isinstance(ring, (SkewPolynomialRing, TruncatedSkewRing)):
        raise TypeError('`{}` is not a skew polynomial ring'.format(ring.id))
    return ring.mul(f, g)


def poly_is_idempotent(f: RingValue) -> bool:
    return f.ring.is_idempotent(f)


class TruncatedSkewRing(Ring):
    """
    R[x;sigma]/(x^k)

    Payloads are coefficient tuples of length exactly ``k``. The ring
    is enumerable when the base is; indices encode the coefficients
    with the constant coefficient most significant.

    Raises
    ------
    :class:`ringlab.errors.ConstructionError`
        ``k < 1``, an unknown convention or an invalid ``sigma``
    """
    kind = 'truncated-skew'

    def __init__(
        self,
        base: Ring,
        sigma: Endomorphism,
        k: int,
        convention: str = 'left',
        settings: Optional[Settings] = None
    ) -> None:
        if k < 1:
            raise ConstructionError(
                'Truncation order must be at least 1, got {}'.format(k)
            )
        _check_sigma(base, sigma, convention, settings)
        super().__init__('skewtrunc({}, {}, {}, {})'.format(
            base.id, sigma.expr, k, convention
        ))
        self.base = base
        self.sigma = sigma
        self.k = k
        self.convention = convention
        self._powers: Optional[List[np.ndarray]] = None

    def _pad(self, coeffs: Sequence[Payload]) -> Tuple:
        coeffs = list(coeffs)[:self.k]
        return tuple(coeffs + [self.base._zero()] * (self.k - len(coeffs)))

    def _zero(self) -> Tuple:
        return self._pad([])

    def _one(self) -> Tuple:
        return self._pad([self.base._one()])

    def _add(self, f: Tuple, g: Tuple) -> Tuple:
        return tuple(self.base._add(a, b) for a, b in zip(f, g))

    def _neg(self, f: Tuple) -> Tuple:
        return tuple(self.base._neg(a) for a in f)

    def _mul(self, f: Tuple, g: Tuple) -> Tuple:
        B = self.base
        out = [B._zero()] * self.k
        for i, a in enumerate(f):
            for j, b in enumerate(g[:self.k - i]):
                if self.convention == 'left':
                    term = B._mul(a, self.sigma.apply_power(b, i))
                else:
                    term = B._mul(self.sigma.apply_power(a, j), b)
                out[i + j] = B._add(out[i + j], term)
        return tuple(out)

    def _from_int(self, n: int) -> Tuple:
        return self._pad([self.base._from_int(n)])

    def _from_tuple(self, items: Tuple[lit.Node, ...]) -> Tuple:
        return self._pad([self.base._from_tuple(items)])

    def _from_grid(self, rows: Tuple[Tuple[lit.Node, ...], ...]) -> Tuple:
        return self._pad([self.base._from_grid(rows)])

    def _unit(self, name: str, exponent: int) -> Tuple:
        if name != VARIABLE:
            return self._pad([self.base._unit(name, exponent)])
        if exponent < 0:
            raise ElementError(
                'Negative power of x in `{}`'.format(self.id)
            )
        return self._pad([self.base._zero()] * exponent + [self.base._one()])

    def _validate(self, payload: Payload) -> Tuple:
        if not isinstance(payload, tuple) or len(payload) != self.k:
            raise ElementError(
                'Elements of `{}` have {} coefficients'.format(self.id, self.k)
            )
        return tuple(self.base._validate(c) for c in payload)

    def _format(self, f: Tuple) -> str:
        terms = [
            _term_text(self.base, c, i, self.convention)
            for i, c in enumerate(f) if c != self.base._zero()
        ]
        return ' + '.join(terms) if terms else '0'

    @property
    def radices(self) -> List[int]:
        return [len(self.base)] * self.k

    def _cardinality(self) -> Optional[int]:
        size = self.base._cardinality()
        return None if size is None else size ** self.k

    def _enumerate_payloads(self) -> Iterator[Tuple]:
        return product(self.base._payloads(), repeat=self.k)

    def _payload_at(self, index: int) -> Tuple:
        return tuple(
            self.base._payload_at(int(d))
            for d in mixed_radix_split(np.int64(index), self.radices)
        )

    def _index_of(self, payload: Tuple) -> int:
        if len(payload) != self.k:
            raise KeyError(payload)
        digits = [self.base._index_of(c) for c in payload]
        return int(mixed_radix_join(digits, self.radices))

    def _mul_idx(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self._powers is None:
            self._powers = self.sigma.power_maps(self.k)
        A = np.stack(mixed_radix_split(a, self.radices), axis=-1)
        B = np.stack(mixed_radix_split(b, self.radices), axis=-1)
        A, B = np.broadcast_arrays(A, B)
        product_ = skew_convolve(
            self.base.multiplication_table(),
            self.base.addition_table(),
            self._powers, A, B, self.convention
        )
        return mixed_radix_join(
            [product_[..., i] for i in range(self.k)], self.radices
        )

    def _add_idx(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        add = self.base.addition_table()
        return mixed_radix_join([
            add[x, y] for x, y in zip(
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
        samples = self.base._sample_payloads()[:3]
        out = [self._pad([c]) for c in samples]
        out += [self._pad([self.base._zero(), c]) for c in samples]
        return list(dict.fromkeys(out))


def trunc_ring(
    base: Ring,
    sigma: Endomorphism,
    k: int,
    convention: str = 'left',
    settings: Optional[Settings] = None
) -> TruncatedSkewRing:
    return TruncatedSkewRing(base, sigma, k, convention, settings)


class LaurentPolynomialRing(Ring):
    """
    The Laurent polynomial ring R[x, x^-1]

    Payloads are ``(low, coeffs)``: the lowest exponent and the
    coefficients from there on, with no zero coefficient at either end.
    The zero polynomial is ``(0, ())``.
    """
    kind = 'laurent'

    def __init__(self, base: Ring) -> None:
        super().__init__('laurent({})'.format(base.id))
        self.base = base

    def _canonical(self, low: int, coeffs: Sequence[Payload]) -> Tuple:
        zero = self.base._zero()
        coeffs = list(coeffs)
        while coeffs and coeffs[-1] == zero:
            coeffs.pop()
        while coeffs and coeffs[0] == zero:
            coeffs.pop(0)
            low += 1
        if not coeffs:
            return (0, ())
        return (low, tuple(coeffs))

    def _zero(self) -> Tuple:
        return (0, ())

    def _one(self) -> Tuple:
        return self._canonical(0, [self.base._one()])

    def _add(self, f: Tuple, g: Tuple) -> Tuple:
        if not f[1]:
            return g
        if not g[1]:
            return f
        B = self.base
        low = min(f[0], g[0])
        high = max(f[0] + len(f[1]), g[0] + len(g[1]))
        out = [B._zero()] * (high - low)
        for start, coeffs in (f, g):
            for i, c in enumerate(coeffs):
                out[start - low + i] = B._add(out[start - low + i], c)
        return self._canonical(low, out)

    def _neg(self, f: Tuple) -> Tuple:
        return (f[0], tuple(self.base._neg(c) for c in f[1]))

    def _mul(self, f: Tuple, g: Tuple) -> Tuple:
        if not f[1] or not g[1]:
            return (0, ())
        B = self.base
        out = [B._zero()] * (len(f[1]) + len(g[1]) - 1)
        for i, a in enumerate(f[1]):
            for j, b in enumerate(g[1]):
                out[i + j] = B._add(out[i + j], B._mul(a, b))
        return self._canonical(f[0] + g[0], out)

    def _from_int(self, n: int) -> Tuple:
        return self._canonical(0, [self.base._from_int(n)])

    def _from_tuple(self, items: Tuple[lit.Node, ...]) -> Tuple:
        return self._canonical(0, [self.base._from_tuple(items)])

    def _from_grid(self, rows: Tuple[Tuple[lit.Node, ...], ...]) -> Tuple:
        return self._canonical(0, [self.base._from_grid(rows)])

    def _unit(self, name: str, exponent: int) -> Tuple:
        if name != VARIABLE:
            return self._canonical(0, [self.base._unit(name, exponent)])
        return self._canonical(exponent, [self.base._one()])

    def _power(self, f: Tuple, exponent: int) -> Tuple:
        if exponent < 0:
            if len(f[1]) != 1 or f[1][0] != self.base._one():
                raise ElementError(
                    'Only powers of x may be inverted in `{}`'.format(self.id)
                )
            return self._canonical(f[0] * exponent, [self.base._one()])
        return super()._power(f, exponent)

    def _validate(self, payload: Payload) -> Tuple:
        try:
            low, coeffs = payload
            return self._canonical(
                int(low), [self.base._validate(c) for c in coeffs]
            )
        except (TypeError, ValueError):
            raise ElementError(
                '`{!r}` is not a Laurent polynomial'.format(payload)
            )

    def _format(self, f: Tuple) -> str:
        low, coeffs = f
        terms = []
        for i, c in enumerate(coeffs):
            if c == self.base._zero():
                continue
            exponent = low + i
            if exponent == 0:
                terms.append(self.base._format(c))
            elif c == self.base._one():
                terms.append(_power_text(exponent))
            else:
                terms.append('{}*{}'.format(
                    _coefficient_text(self.base, c), _power_text(exponent)
                ))
        return ' + '.join(terms) if terms else '0'

    def _compute_characteristic(self) -> int:
        return self.base.characteristic

    def _sample_payloads(self) -> List[Tuple]:
        one = self.base._one()
        samples = [
            self._canonical(0, [c]) for c in self.base._sample_payloads()[:3]
        ]
        samples += [self._canonical(-1, [one]), self._canonical(1, [one])]
        return list(dict.fromkeys(samples))

    def coefficient(self, f: RingValue, i: int) -> RingValue:
        low, coeffs = self._check(f)
        if 0 <= i - low < len(coeffs):
            return self.base._wrap(coeffs[i - low])
        return self.base.zero

    def constant(self, c: RingValue) -> RingValue:
        return self._wrap(self._canonical(0, [self.base._check(c)]))

    def from_indices(self, indices: Sequence[int], low: int = 0) -> RingValue:
        return self._wrap(self._canonical(
            low, [self.base._payload_at(int(i)) for i in indices]
        ))


def laurent_mul(f: RingValue, g: RingValue) -> RingValue:
    if not isinstance(f.ring, LaurentPolynomialRing):
        raise TypeError('`{}` is not a Laurent ring'.format(f.ring.id))
    return f.ring.mul(f, g)


def bounded_polynomials(
    ring: SkewPolynomialRing,
    degree: int
) -> Iterator[RingValue]:
    """
    All polynomials of degree at most ``degree``

    The order is the index order of the coefficient vectors, the
    constant coefficient being most significant.
    """
    for coeffs in product(ring.base._payloads(), repeat=degree + 1):
        yield ring._wrap(ring._trim(coeffs))


def bounded_laurent(
    ring: LaurentPolynomialRing,
    degree: int
) -> Iterator[RingValue]:
    """
    All Laurent polynomials with support in [-degree, degree]
    """
    for coeffs in product(ring.base._payloads(), repeat=2 * degree + 1):
        yield ring._wrap(ring._canonical(-degree, coeffs))
