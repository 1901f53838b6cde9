"""
Unital ring endomorphisms

Every variant is a plain map on payloads. Validity is not assumed:
:func:`validate_endo` checks the unit, additivity and multiplicativity
laws, and :func:`require_valid` turns a failing verdict into a
:class:`ringlab.errors.ConstructionError`.
"""

import time
import logging
from itertools import product
from typing import Dict, List, Optional, Sequence

import numpy as np

from ringlab.config import Settings, default_settings
from ringlab.errors import ConstructionError
from ringlab.ring import Payload, Ring, RingValue
from ringlab.rings import ProductRing, SequenceRing
from ringlab.witness import ScanStats, Verdict, Witness


logger = logging.getLogger(__name__)


class Endomorphism:
    """
    Base class of all endomorphism variants

    Parameters
    ----------
    ring: :class:`ringlab.ring.Ring`
        Domain (and codomain)
    expr: str
        DSL expression of the endomorphism, e.g. ``swap``

    Examples
    --------
        ring = build('prod(Z3, Z3)')
        sigma = SwapEndo(ring)
        sigma(ring.parse('(1, 2)'))
        # >> RingValue(`prod(Z3, Z3)`: (2, 1))

    """
    variant = 'endo'

    def __init__(self, ring: Ring, expr: str) -> None:
        self.ring = ring
        self.expr = expr
        self._index_map: Optional[np.ndarray] = None

    def _apply(self, payload: Payload) -> Payload:
        raise NotImplementedError

    def __call__(self, value: RingValue) -> RingValue:
        return self.ring._wrap(self._apply(self.ring._check(value)))

    def apply_power(self, payload: Payload, k: int) -> Payload:
        for _ in range(k):
            payload = self._apply(payload)
        return payload

    def index_map(self) -> np.ndarray:
        """
        ``index_map()[i]`` is the index of the image of element ``i``
        """
        if self._index_map is None:
            ring = self.ring
            self._index_map = np.array(
                [ring._index_of(self._apply(p)) for p in ring._payloads()],
                dtype=np.int32
            )
        return self._index_map

    def power_maps(self, k: int) -> List[np.ndarray]:
        """
        Index maps of sigma^0 ... sigma^k
        """
        size = self.ring.require_finite()
        maps = [np.arange(size, dtype=np.int32)]
        sigma = self.index_map()
        for _ in range(k):
            maps.append(sigma[maps[-1]])
        return maps

    def is_identity(self) -> bool:
        if self.ring.is_finite:
            size = len(self.ring)
            return bool((self.index_map() == np.arange(size)).all())
        return all(self._apply(p) == p for p in self.ring._sample_payloads())

    def is_injective(self) -> bool:
        """
        Exhaustive on finite rings, a collision search on the sample
        set otherwise
        """
        if self.ring.is_finite:
            return len(np.unique(self.index_map())) == len(self.ring)
        images = [self._apply(p) for p in self.ring._sample_payloads()]
        return len(set(images)) == len(images)

    def fixes(self, value: RingValue) -> bool:
        return self(value) == value

    def toJSON(self) -> Dict[str, str]:
        return {'endo': self.expr, 'ring': self.ring.id}

    def __str__(self) -> str:
        return self.expr

    def __repr__(self) -> str:
        return '<{} `{}` on `{}`>'.format(
            type(self).__name__, self.expr, self.ring.id
        )


class IdentityEndo(Endomorphism):
    variant = 'identity'

    def __init__(self, ring: Ring) -> None:
        super().__init__(ring, 'id')

    def _apply(self, payload: Payload) -> Payload:
        return payload

    def index_map(self) -> np.ndarray:
        return np.arange(self.ring.require_finite(), dtype=np.int32)


def _require_product(ring: Ring, variant: str) -> ProductRing:
    if not isinstance(ring, ProductRing):
        raise ConstructionError(
            '`{}` needs a product ring, got `{}`'.format(variant, ring.id)
        )
    return ring


class SwapEndo(Endomorphism):
    """(a, b) -> (b, a) on R x R"""
    variant = 'swap'

    def __init__(self, ring: Ring) -> None:
        prod = _require_product(ring, 'swap')
        if prod.left.id != prod.right.id:
            raise ConstructionError(
                '`swap` needs equal factors, got `{}` and `{}`'.format(
                    prod.left.id, prod.right.id
                )
            )
        super().__init__(ring, 'swap')

    def _apply(self, payload: Payload) -> Payload:
        return (payload[1], payload[0])


class ComponentwiseEndo(Endomorphism):
    """(a, b) -> (alpha(a), beta(b)) on R x S"""
    variant = 'componentwise'

    def __init__(
        self,
        ring: Ring,
        alpha: Endomorphism,
        beta: Endomorphism
    ) -> None:
        prod = _require_product(ring, 'cw')
        if alpha.ring.id != prod.left.id or beta.ring.id != prod.right.id:
            raise ConstructionError(
                '`cw` components act on `{}` and `{}`, not on the '
                'factors of `{}`'.format(alpha.ring.id, beta.ring.id, ring.id)
            )
        super().__init__(ring, 'cw({}, {})'.format(alpha.expr, beta.expr))
        self.alpha = alpha
        self.beta = beta

    def _apply(self, payload: Payload) -> Payload:
        return (self.alpha._apply(payload[0]), self.beta._apply(payload[1]))


class FrobeniusEndo(Endomorphism):
    """
    x -> x^p on a ring of prime characteristic p

    It is a unital endomorphism on commutative rings; :func:`validate_endo`
    decides the general case.
    """
    variant = 'frobenius'

    def __init__(self, ring: Ring) -> None:
        p = ring.characteristic
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise ConstructionError(
                '`frob` needs prime characteristic, `{}` has {}'.format(
                    ring.id, p
                )
            )
        super().__init__(ring, 'frob')
        self.p = p

    def _apply(self, payload: Payload) -> Payload:
        return self.ring._power(payload, self.p)


class ShiftEndo(Endomorphism):
    """(a_1, a_2, ..., a_L) -> (a_2, ..., a_L, a_L)"""
    variant = 'shift'

    def __init__(self, ring: Ring) -> None:
        if not isinstance(ring, SequenceRing):
            raise ConstructionError(
                '`shift` needs a sequence ring, got `{}`'.format(ring.id)
            )
        super().__init__(ring, 'shift')

    def _apply(self, payload: Payload) -> Payload:
        return tuple(payload[1:]) + (payload[-1],)


class DiagProjectionEndo(Endomorphism):
    """(a, m) -> (a, 0) on a trivial extension T(R, R)"""
    variant = 'diag-projection'

    def __init__(self, ring: Ring) -> None:
        if ring.kind != 'trivial-extension':
            raise ConstructionError(
                '`diagproj` needs a trivial extension, got `{}`'.format(
                    ring.id
                )
            )
        super().__init__(ring, 'diagproj')
        self._base_zero = ring.base._zero()  # type: ignore

    def _apply(self, payload: Payload) -> Payload:
        return (payload[0], self._base_zero)


class TableEndo(Endomorphism):
    """
    An endomorphism given by the images of all element indices

    Raises
    ------
    :class:`ringlab.errors.ConstructionError`
        The map is not total on the carrier
    """
    variant = 'table'

    def __init__(
        self,
        ring: Ring,
        images: Sequence[int],
        expr: Optional[str] = None
    ) -> None:
        size = ring.require_finite()
        images = [int(x) for x in images]
        if len(images) != size or any(not 0 <= x < size for x in images):
            raise ConstructionError(
                'Endomorphism table of `{}` must map all {} indices into '
                '0..{}'.format(ring.id, size, size - 1)
            )
        super().__init__(ring, expr or 'etable([{}])'.format(
            ', '.join(str(x) for x in images)
        ))
        self.images = images
        self._index_map = np.array(images, dtype=np.int32)

    def _apply(self, payload: Payload) -> Payload:
        return self.ring._payload_at(self.images[self.ring._index_of(payload)])


def _violation(
    sigma: Endomorphism,
    law: str,
    elements: List[str]
) -> Witness:
    return Witness(
        kind='endomorphism-violation',
        ring=sigma.ring.id,
        elements=elements,
        endo=sigma.expr,
        detail={'law': law},
    )


def validate_endo(
    sigma: Endomorphism,
    settings: Optional[Settings] = None
) -> Verdict:
    """
    Checks the laws of a unital endomorphism

    sigma(1) = 1, sigma(a + b) = sigma(a) + sigma(b) and
    sigma(ab) = sigma(a)sigma(b). The check is exhaustive over all
    pairs of a finite ring and uses the sample set otherwise.

    Parameters
    ----------
    sigma: :class:`Endomorphism`
    settings: :class:`ringlab.config.Settings`, default ``None``

    Returns
    -------
    :class:`ringlab.witness.Verdict`
        Failing verdicts carry an ``endomorphism-violation`` witness
    """
    settings = settings or default_settings()
    ring = sigma.ring
    start = time.perf_counter()

    def verdict(witness: Optional[Witness], pairs: int) -> Verdict:
        return Verdict(
            property='endomorphism',
            ring=ring.id,
            holds=witness is None,
            witness=witness,
            proxy_note=None if ring.is_finite else 'checked on a sample set',
            stats=ScanStats(pairs, time.perf_counter() - start),
            detail={'endo': sigma.expr},
        )

    if sigma._apply(ring._one()) != ring._one():
        return verdict(_violation(sigma, 'unit', []), 0)

    if ring.is_finite:
        size = len(ring)
        settings.require('max_pairs', size * size)
        S = sigma.index_map()
        for law, table in (
            ('additive', ring.addition_table(settings.jobs)),
            ('multiplicative', ring.multiplication_table(settings.jobs)),
        ):
            bad = np.argwhere(S[table] != table[S[:, None], S[None, :]])
            if len(bad):
                a, b = (ring.element_at(int(x)) for x in bad[0])
                return verdict(
                    _violation(sigma, law, [str(a), str(b)]), size * size
                )
        return verdict(None, size * size)

    samples = ring._sample_payloads()
    for a in samples:
        for b in samples:
            if sigma._apply(ring._add(a, b)) != \
                    ring._add(sigma._apply(a), sigma._apply(b)):
                return verdict(_violation(
                    sigma, 'additive', [ring._format(a), ring._format(b)]
                ), len(samples) ** 2)
            if sigma._apply(ring._mul(a, b)) != \
                    ring._mul(sigma._apply(a), sigma._apply(b)):
                return verdict(_violation(
                    sigma, 'multiplicative',
                    [ring._format(a), ring._format(b)]
                ), len(samples) ** 2)
    return verdict(None, len(samples) ** 2)


def require_valid(
    sigma: Endomorphism,
    settings: Optional[Settings] = None
) -> Endomorphism:
    """
    Returns ``sigma`` if it validates, raises otherwise

    Raises
    ------
    :class:`ringlab.errors.ConstructionError`
        Carries the failing verdict
    """
    verdict = validate_endo(sigma, settings)
    if not verdict.holds:
        witness = verdict.witness
        raise ConstructionError(
            '`{}` is not a unital endomorphism of `{}`: {} law fails {}'.format(
                sigma.expr,
                sigma.ring.id,
                witness.detail['law'] if witness else '?',
                'for ({})'.format(', '.join(witness.elements))
                if witness and witness.elements else ''
            ).rstrip(),
            verdict
        )
    return sigma


def unital_endomorphisms(
    ring: Ring,
    settings: Optional[Settings] = None
) -> List[Endomorphism]:
    """
    All unital endomorphisms of a small finite ring

    Maps are searched exhaustively with 0 -> 0 and 1 -> 1 fixed, so the
    search visits |R|^(|R|-2) maps.

    Raises
    ------
    :class:`ringlab.errors.BudgetExceeded`
        The map count is above ``max_pairs``
    """
    settings = settings or default_settings()
    size = len(ring)
    zero, one = ring.zero_index, ring.one_index
    free = [i for i in range(size) if i not in (zero, one)]
    settings.require('max_pairs', size ** len(free))
    A = ring.addition_table()
    M = ring.multiplication_table()
    found: List[Endomorphism] = []
    for images in product(range(size), repeat=len(free)):
        S = np.arange(size, dtype=np.int32)
        S[zero] = zero
        S[one] = one
        S[free] = images
        if (S[A] == A[S[:, None], S[None, :]]).all() and \
                (S[M] == M[S[:, None], S[None, :]]).all():
            found.append(TableEndo(ring, S.tolist()))
    logger.debug(
        'Found %d unital endomorphisms of `%s`', len(found), ring.id
    )
    return found
