"""
Verdicts and replayable witness certificates
"""

import json
import hashlib
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from ringlab.errors import WitnessError


# kind -> (element variable names, claim equations)
CLAIMS: Dict[str, Tuple[Tuple[str, ...], Tuple[str, ...]]] = {
    'i-reversibility-violation': (
        ('a', 'b'),
        ('(a*b)^2 = a*b', 'a*b != 0', '(b*a)^2 != b*a'),
    ),
    'reversibility-violation': (
        ('a', 'b'),
        ('a*b = 0', 'b*a != 0'),
    ),
    'nontrivial-idempotent': (
        ('e',),
        ('e^2 = e', 'e != 0', 'e != 1'),
    ),
    'noncentral-idempotent': (
        ('e', 'a'),
        ('e^2 = e', 'e*a != a*e'),
    ),
    'nilpotent': (
        ('a',),
        ('a != 0', 'a^2 = 0'),
    ),
    'noncommuting-pair': (
        ('a', 'b'),
        ('a*b != b*a',),
    ),
    'armendariz-violation': (
        ('f', 'g'),
        ('f*g = 0', 'coeff(f, {i})*coeff(g, {j}) != 0'),
    ),
    'sigma-rigid-violation': (
        ('a',),
        ('a*sigma(a) = 0', 'a != 0'),
    ),
    'idempotent-degree-violation': (
        ('f',),
        ('f^2 = f', 'f != coeff(f, 0)'),
    ),
}

ENDO_CLAIMS: Dict[str, Tuple[Tuple[str, ...], Tuple[str, ...]]] = {
    'unit': ((), ('sigma(1) != 1',)),
    'additive': (('a', 'b'), ('sigma(a+b) != sigma(a)+sigma(b)',)),
    'multiplicative': (('a', 'b'), ('sigma(a*b) != sigma(a)*sigma(b)',)),
}

ISO_CLAIMS: Dict[str, Tuple[Tuple[str, ...], Tuple[str, ...]]] = {
    'size': ((), ('size(source) != size(target)',)),
    'injective': (('a', 'b'), ('a != b', 'phi(a) = phi(b)')),
    'inverse': (('a',), ('psi(phi(a)) != a',)),
    'unit': ((), ('phi(1) != 1',)),
    'additive': (('a', 'b'), ('phi(a+b) != phi(a)+phi(b)',)),
    'multiplicative': (('a', 'b'), ('phi(a*b) != phi(a)*phi(b)',)),
}

SUBRING_CLAIMS = (
    'span(elements) is closed under multiplication',
    'span(elements) contains base',
    'span(elements) != ring',
    'span(elements) is i-reversible',
)

WITNESS_KINDS = tuple(CLAIMS) + (
    'endomorphism-violation',
    'intermediate-i-reversible-subring',
    'isomorphism-violation',
)


def claims_for(
    kind: str,
    detail: Optional[Dict[str, Any]] = None
) -> Tuple[Tuple[str, ...], List[str]]:
    """
    The variable names and claim equations a witness of ``kind`` carries

    Parameters
    ----------
    kind: str
        One of :data:`WITNESS_KINDS`
    detail: dict, default ``None``
        Kind specific data: ``law`` for endomorphism and isomorphism violations,
        ``i`` and ``j`` for Armendariz violations

    Returns
    -------
    tuple
        ``(variables, claims)``
    """
    detail = detail or {}
    if kind == 'endomorphism-violation':
        try:
            variables, claims = ENDO_CLAIMS[detail['law']]
        except KeyError:
            raise WitnessError('Unknown endomorphism law in {}'.format(detail))
        return variables, list(claims)
    if kind == 'isomorphism-violation':
        try:
            variables, claims = ISO_CLAIMS[detail['law']]
        except KeyError:
            raise WitnessError('Unknown isomorphism law in {}'.format(detail))
        return variables, list(claims)
    if kind == 'intermediate-i-reversible-subring':
        return (), list(SUBRING_CLAIMS)
    if kind not in CLAIMS:
        raise WitnessError('Unknown witness kind `{}`'.format(kind))
    variables, claims = CLAIMS[kind]
    try:
        return variables, [c.format(**detail) for c in claims]
    except KeyError as err:
        raise WitnessError(
            'Witness of kind `{}` needs detail {}'.format(kind, err)
        )


@dataclass
class Witness:
    """
    A certificate that a property fails

    The certificate is self-contained: the ring expression and the
    element literals are enough to replay it with
    :func:`ringlab.properties.verify_witness`.

    Attributes
    ----------
    kind: str
        One of :data:`WITNESS_KINDS`
    ring: str
        Ring expression in which the claims are evaluated
    elements: list of str
        Element literals, bound in order to the variables of the kind
    claim: list of str
        The equations the replay must confirm
    endo: str, default ``None``
        Endomorphism expression, for claims that use ``sigma``
    base: str, default ``None``
        Base subring expression, for subring witnesses
    detail: dict
        Kind specific data
    """
    kind: str
    ring: str
    elements: List[str]
    claim: List[str] = field(default_factory=list)
    endo: Optional[str] = None
    base: Optional[str] = None
    detail: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.claim:
            self.claim = claims_for(self.kind, self.detail)[1]

    @property
    def variables(self) -> Tuple[str, ...]:
        return claims_for(self.kind, self.detail)[0]

    def toJSON(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            'kind': self.kind,
            'ring': self.ring,
            'elements': list(self.elements),
            'claim': list(self.claim),
        }
        if self.endo is not None:
            data['endo'] = self.endo
        if self.base is not None:
            data['base'] = self.base
        if self.detail:
            data['detail'] = dict(self.detail)
        return data

    def dumps(self) -> str:
        return json.dumps(self.toJSON(), indent=2, sort_keys=True) + '\n'

    def digest(self) -> str:
        """
        First 16 hex digits of the sha256 of the canonical JSON form
        """
        canonical = json.dumps(
            self.toJSON(), sort_keys=True, separators=(',', ':')
        )
        return hashlib.sha256(canonical.encode('utf-8')).hexdigest()[:16]

    @classmethod
    def from_json(cls, data: Any) -> 'Witness':
        if not isinstance(data, dict):
            raise WitnessError('A witness must be a JSON object')
        missing = [
            key for key in ('kind', 'ring', 'elements', 'claim')
            if key not in data
        ]
        if missing:
            raise WitnessError(
                'Witness is missing the fields {}'.format(', '.join(missing))
            )
        if not isinstance(data['elements'], list) or \
                not isinstance(data['claim'], list):
            raise WitnessError('`elements` and `claim` must be lists')
        return cls(
            kind=data['kind'],
            ring=data['ring'],
            elements=[str(x) for x in data['elements']],
            claim=[str(x) for x in data['claim']],
            endo=data.get('endo'),
            base=data.get('base'),
            detail=dict(data.get('detail', {})),
        )

    @classmethod
    def loads(cls, text: str) -> 'Witness':
        try:
            data = json.loads(text)
        except ValueError as err:
            raise WitnessError('Witness is not valid JSON: {}'.format(err))
        return cls.from_json(data)

    @classmethod
    def load(cls, path: str) -> 'Witness':
        try:
            with open(path) as fh:
                return cls.loads(fh.read())
        except OSError as err:
            raise WitnessError('Cannot read witness file: {}'.format(err))

    def save(self, path: str) -> None:
        with open(path, 'w') as fh:
            fh.write(self.dumps())


@dataclass
class ScanStats:
    pairs: int = 0
    seconds: float = 0.0
    jobs: int = 1

    def toJSON(self, timings: bool = True) -> Dict[str, Any]:
        if not timings:
            return {'pairs': self.pairs}
        return {
            'pairs': self.pairs,
            'millis': int(round(self.seconds * 1000)),
            'jobs': self.jobs,
        }


@dataclass
class Verdict:
    """
    Outcome of a property check

    ``holds`` is ``False`` exactly when a witness is attached. Checks of
    bounded analogs of infinite statements carry a ``proxy_note``.

    Attributes
    ----------
    property: str
        Name of the checked property, e.g. ``i-reversible``
    ring: str
        The checked ring expression
    holds: bool
    witness: :class:`Witness`, default ``None``
    proxy_note: str, default ``None``
    stats: :class:`ScanStats`
    witnesses: list of :class:`Witness`
        Additional certificates, e.g. one per intermediate subring of
        a maximality check
    detail: dict
        Check specific data
    """
    property: str
    ring: str
    holds: bool
    witness: Optional[Witness] = None
    proxy_note: Optional[str] = None
    stats: ScanStats = field(default_factory=ScanStats)
    witnesses: List[Witness] = field(default_factory=list)
    detail: Dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.holds

    def all_witnesses(self) -> List[Witness]:
        out = [self.witness] if self.witness is not None else []
        return out + list(self.witnesses)

    def toJSON(self, timings: bool = True) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            'property': self.property,
            'ring': self.ring,
            'holds': self.holds,
            'proxy': self.proxy_note,
            'stats': self.stats.toJSON(timings),
        }
        if self.witness is not None:
            data['witness'] = self.witness.toJSON()
        if self.witnesses:
            data['witnesses'] = [w.toJSON() for w in self.witnesses]
        if self.detail:
            data['detail'] = dict(self.detail)
        return data

    def __str__(self) -> str:
        status = 'holds' if self.holds else 'fails'
        out = '{} {} for `{}`'.format(self.property, status, self.ring)
        if self.proxy_note:
            out += ' ({})'.format(self.proxy_note)
        if self.witness is not None:
            out += '\nwitness: {}'.format(', '.join(self.witness.elements))
        return out
