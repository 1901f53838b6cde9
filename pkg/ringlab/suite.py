"""
Executable registry of the i-reversibility results

Every anchor (``Thm-2.6``, ``Eg-2.4``, ...) maps to a :class:`ClaimCheck`:
a list of named assertions on concrete finite rings, each with the
verdict it is expected to produce. Statements about infinite rings are
checked on finite stand-ins or up to a polynomial degree; such claims
carry a proxy note.

Examples
--------
    from ringlab.suite import run_suite

    report = run_suite('Thm-3.*')
    print(report.summary())
    report.passed
    # >> True

"""

import os
import json
import time
import fnmatch
import logging
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

try:
    import pandas as pd
except ImportError:
    warnings.warn(
        'Some functionality requires pandas, which is currently not available',
        UserWarning
    )

from ringlab import dsl
from ringlab.config import Settings, default_settings
from ringlab.constructions import MatrixRing, elementary, iso_candidate, verify_iso
from ringlab.endo import unital_endomorphisms
from ringlab.errors import (
    BudgetExceeded, ConstructionError, DSLSyntaxError, InconclusiveError,
    RingLabError
)
from ringlab.properties import (
    check_i_reversible, check_property, check_reversible,
    i_reversible_oracle, scan_poly_idempotents, verify_witness
)
from ringlab.rings import DATA_FOLDER
from ringlab.subrings import (
    certify_not_i_reversible, check_maximal_i_reversible, diagonal_patterns,
    extract_diagonal_idempotents, intermediate_subrings, linear_closure,
    shape_basis, weight_three_pattern
)
from ringlab.witness import Verdict, Witness


logger = logging.getLogger(__name__)

GOLDEN_FOLDER = os.path.join(DATA_FOLDER, 'goldens')

STATUSES = ('pass', 'fail', 'error', 'out-of-scope')

# (expression, largest residue modulus involved)
CATALOG: Tuple[Tuple[str, int], ...] = (
    ('Z1', 1),
    ('Z2', 2),
    ('Z3', 3),
    ('Z4', 4),
    ('Z6', 6),
    ('Z8', 8),
    ('Z9', 9),
    ('GF5', 5),
    ('GF7', 7),
    ('table(gf4)', 2),
    ('prod(Z2, Z2)', 2),
    ('prod(Z2, Z3)', 3),
    ('prod(Z3, Z3)', 3),
    ('T(2, Z2)', 2),
    ('T(2, Z3)', 3),
    ('M(2, Z2)', 2),
    ('D(3, Z2)', 2),
    ('triv(Z4)', 4),
    ('triv(triv(Z2))', 2),
    ('H(Z3)', 3),
    ('nagata(prod(Z2, Z2), swap)', 2),
    ('dorroh(prod(Z2, Z2), Z2, hom)', 2),
    ('dorroh(M(2, Z2), Z2, hom)', 2),
    ('skewtrunc(table(gf4), frob, 2, left)', 2),
    ('ecseq(Z2, 3)', 2),
    ('S3(GF2)', 2),
    ('T(3, Z2)', 2),
    ('D(4, Z2)', 2),
    ('V(3, Z6)', 6),
    ('T(2, Z6)', 6),
    ('D(5, Z2)', 2),
)

ORACLE_LIMIT = 64


def catalog(settings: Optional[Settings] = None) -> List[str]:
    """Catalog expressions whose moduli are within ``max_modulus``"""
    settings = settings or default_settings()
    return [
        expr for expr, modulus in CATALOG
        if modulus <= settings.max_modulus
    ]


def load_golden(name: str) -> Witness:
    """A bundled golden witness, e.g. ``load_golden('eg2_4')``"""
    return Witness.load(os.path.join(GOLDEN_FOLDER, '{}.json'.format(name)))


def tamper(witness: Witness) -> Witness:
    """A copy of ``witness`` whose last element is replaced by zero"""
    elements = list(witness.elements)
    elements[-1] = '0'
    return Witness(
        kind=witness.kind,
        ring=witness.ring,
        elements=elements,
        claim=list(witness.claim),
        endo=witness.endo,
        base=witness.base,
        detail=dict(witness.detail),
    )


# ----------------------------------------------------------------------
# Assertions
# ----------------------------------------------------------------------
@dataclass
class Assertion:
    """
    A named check with the verdict it is expected to produce

    ``run`` builds its rings from expressions when it is called, so
    parse and construction errors surface at run time.
    """
    name: str
    expected: bool
    run: Callable[[Settings], Verdict]


@dataclass
class AssertionResult:
    name: str
    expected: bool
    observed: Optional[bool] = None
    proxy: Optional[str] = None
    witnesses: List[str] = field(default_factory=list)
    error: Optional[str] = None

    @property
    def met(self) -> bool:
        return self.error is None and self.observed == self.expected

    def toJSON(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            'name': self.name,
            'expected': self.expected,
            'observed': self.observed,
        }
        if self.proxy:
            data['proxy'] = self.proxy
        if self.witnesses:
            data['witnesses'] = list(self.witnesses)
        if self.error:
            data['error'] = self.error
        return data


def _replayed(verdict: Verdict, settings: Settings) -> Verdict:
    for witness in verdict.all_witnesses():
        if not verify_witness(witness, settings):
            raise InconclusiveError(
                'Witness of `{}` does not replay: {}'.format(
                    verdict.ring, ', '.join(witness.elements)
                )
            )
    return verdict


def prop(
    name: str,
    expr: str,
    expected: bool = True,
    endo: Optional[str] = None,
    degree: Optional[int] = None
) -> Assertion:
    """Runs the property check ``name`` on the ring ``expr``"""
    def run(settings: Settings) -> Verdict:
        ring = dsl.build(expr, settings)
        sigma = dsl.build_endo(endo, ring, settings=settings) \
            if endo else None
        verdict = check_property(name, ring, sigma, degree, settings)
        return _replayed(verdict, settings)

    label = '{} {}'.format(expr, name)
    if endo:
        label += ' [{}]'.format(endo)
    if degree is not None:
        label += ' d={}'.format(degree)
    return Assertion(label, expected, run)


def replay(golden: str, expected: bool = True, tampered: bool = False) -> Assertion:
    """Replays a bundled golden witness"""
    def run(settings: Settings) -> Verdict:
        witness = load_golden(golden)
        if tampered:
            witness = tamper(witness)
        ok = verify_witness(witness, settings)
        return Verdict(
            'witness-replay', witness.ring, ok,
            detail={'digest': witness.digest()}
        )

    label = 'replay {}{}'.format(golden, ' (tampered)' if tampered else '')
    return Assertion(label, expected, run)


def iso(map_name: str, source: str, target: str, expected: bool = True) -> Assertion:
    """Checks a registered isomorphism candidate exhaustively"""
    def run(settings: Settings) -> Verdict:
        candidate = iso_candidate(
            map_name, dsl.build(source, settings), dsl.build(target, settings)
        )
        return _replayed(verify_iso(candidate, settings), settings)

    return Assertion(
        '{}: {} ~ {}'.format(map_name, source, target), expected, run
    )


def load_golden_report(name: str) -> Dict[str, Any]:
    """A bundled maximality golden: base, ambient, verdict and dimensions"""
    with open(os.path.join(GOLDEN_FOLDER, '{}.json'.format(name))) as fh:
        return json.load(fh)


def compare_report(verdict: Verdict, golden: Dict[str, Any]) -> List[str]:
    """Differences between a maximality verdict and its golden"""
    subrings = verdict.detail.get('subrings', [])
    observed = {
        'base': verdict.detail.get('base'),
        'ambient': verdict.ring,
        'maximal': verdict.holds,
        'dimensions': sorted(s['dimension'] for s in subrings),
    }
    return [
        '{}: expected {}, got {}'.format(key, golden[key], observed[key])
        for key in ('base', 'ambient', 'maximal', 'dimensions')
        if key in golden and golden[key] != observed[key]
    ]


def maximal(
    base: str,
    ambient: str,
    expected: bool = True,
    golden: Optional[str] = None
) -> Assertion:
    """
    Maximality of ``base`` among the i-reversible subrings of ``ambient``;
    with ``golden``, the report must also match the bundled report
    """
    def run(settings: Settings) -> Verdict:
        B = dsl.build(base, settings)
        A = dsl.build(ambient, settings)
        if not isinstance(B, MatrixRing) or not isinstance(A, MatrixRing):
            raise ConstructionError('Maximality needs matrix rings')
        verdict = check_maximal_i_reversible(B, A, settings)
        if golden:
            differences = compare_report(verdict, load_golden_report(golden))
            if differences:
                raise InconclusiveError('Report differs from {}: {}'.format(
                    golden, '; '.join(differences)
                ))
        return _replayed(verdict, settings)

    return Assertion(
        '{} maximal i-reversible in {}'.format(base, ambient), expected, run
    )


def custom(
    name: str,
    run: Callable[[Settings], Verdict],
    expected: bool = True
) -> Assertion:
    return Assertion(name, expected, run)


def _fact(name: str, ring: str, holds: bool, **detail: Any) -> Verdict:
    return Verdict(name, ring, bool(holds), detail=detail)


# ----------------------------------------------------------------------
# Custom checks
# ----------------------------------------------------------------------
def _catalog_inclusion(settings: Settings) -> Verdict:
    """reversible => i-reversible on every catalog ring"""
    exceptions = []
    rings = catalog(settings)
    for expr in rings:
        ring = dsl.build(expr, settings)
        if check_reversible(ring, settings) and \
                not check_i_reversible(ring, settings):
            exceptions.append(expr)
    return _fact(
        'reversible-implies-i-reversible', 'catalog', not exceptions,
        rings=len(rings), exceptions=exceptions
    )


def _oracle_agreement(settings: Settings) -> Verdict:
    """The pair scan and the definition transcription agree"""
    disagreements = []
    checked = 0
    for expr in catalog(settings):
        ring = dsl.build(expr, settings)
        if len(ring) > ORACLE_LIMIT:
            continue
        checked += 1
        if bool(check_i_reversible(ring, settings)) != \
                i_reversible_oracle(ring):
            disagreements.append(expr)
    return _fact(
        'oracle-agreement', 'catalog', not disagreements,
        rings=checked, disagreements=disagreements
    )


def _matrix(expr: str, settings: Settings) -> MatrixRing:
    ring = dsl.build(expr, settings)
    if not isinstance(ring, MatrixRing):
        raise ConstructionError('`{}` is not a matrix ring'.format(expr))
    return ring


def _certified(ambient: str, base: str, extra: Sequence[Tuple[int, int]]) -> Callable[[Settings], Verdict]:
    """
    Certifies that the subring generated by ``base`` and the given
    diagonal matrix units is not i-reversible
    """
    def run(settings: Settings) -> Verdict:
        A = _matrix(ambient, settings)
        B = _matrix(base, settings)
        gens = shape_basis(B, A).matrices() + \
            [elementary(A, i, i) for i, _ in extra]
        S = linear_closure(A, gens)
        witness = certify_not_i_reversible(S, settings)
        if witness is None:
            return _fact('not-i-reversible', S.ring_expr, False)
        verdict = Verdict(
            'not-i-reversible', S.ring_expr, True,
            detail=dict(witness.detail, dimension=S.dimension)
        )
        verdict.witnesses.append(witness)
        return _replayed(verdict, settings)
    return run


def _all_certified(base: str, ambient: str, weights: Sequence[int]) -> Callable[[Settings], Verdict]:
    """
    Every intermediate subring with a diagonal idempotent of one of the
    given weights has a replayable non-i-reversibility certificate
    """
    def run(settings: Settings) -> Verdict:
        A = _matrix(ambient, settings)
        D = shape_basis(_matrix(base, settings), A)
        subrings = [
            S for S in intermediate_subrings(A, D, settings)
            if any(sum(d) in weights for d in diagonal_patterns(S))
        ]
        witnesses: List[Witness] = []
        uncertified: List[str] = []
        for S in subrings:
            witness = certify_not_i_reversible(S, settings)
            if witness is None:
                uncertified.append(S.ring_expr)
            else:
                witnesses.append(witness)
        verdict = Verdict(
            'not-i-reversible', A.id, bool(subrings) and not uncertified,
            detail={'subrings': len(subrings), 'uncertified': uncertified}
        )
        verdict.witnesses.extend(witnesses)
        return _replayed(verdict, settings)
    return run


def _diagonal_idempotents(base: str, ambient: str) -> Callable[[Settings], Verdict]:
    """Every intermediate subring holds a nontrivial diagonal idempotent"""
    def run(settings: Settings) -> Verdict:
        A = _matrix(ambient, settings)
        D = shape_basis(_matrix(base, settings), A)
        missing = []
        subrings = intermediate_subrings(A, D, settings)
        for S in subrings:
            family = None
            for m in S.matrices():
                diagonal = [m.payload[i][i] for i in range(A.n)]
                if len(set(diagonal)) > 1:
                    B = tuple(
                        tuple(diagonal[i] if i == j else 0 for j in range(A.n))
                        for i in range(A.n)
                    )
                    family = extract_diagonal_idempotents(A, S, B)
                    break
            if family is None or len(family.values) < 2 or \
                    not family.check() or \
                    not all(S.contains(e) for e in family.idempotents):
                missing.append(S.ring_expr)
        return _fact(
            'diagonal-idempotents', A.id, not missing,
            subrings=len(subrings), missing=missing
        )
    return run


def _weight_three(base: str, ambient: str) -> Callable[[Settings], Verdict]:
    """Every intermediate subring has a diagonal pattern of weight >= 3"""
    def run(settings: Settings) -> Verdict:
        A = _matrix(ambient, settings)
        D = shape_basis(_matrix(base, settings), A)
        subrings = intermediate_subrings(A, D, settings)
        missing = [
            S.ring_expr for S in subrings if weight_three_pattern(S) is None
        ]
        return _fact(
            'weight-three-pattern', A.id, not missing,
            subrings=len(subrings),
            dimensions=sorted(S.dimension for S in subrings),
        )
    return run


def _intermediate_count(base: str, ambient: str, count: int) -> Callable[[Settings], Verdict]:
    def run(settings: Settings) -> Verdict:
        A = _matrix(ambient, settings)
        D = shape_basis(_matrix(base, settings), A)
        subrings = intermediate_subrings(A, D, settings)
        return _fact(
            'intermediate-count', A.id, len(subrings) == count,
            found=len(subrings), expected=count
        )
    return run


def _dorroh_unity(settings: Settings) -> Verdict:
    ring = dsl.build('dorroh(prod(Z2, Z2), Z2, hom)', settings)
    unity = ring.parse('((0, 0), 1)')
    return _fact('unity', ring.id, unity == ring.one, unity=str(ring.one))


def _skew_rule(expr: str, lhs: str, rhs: str) -> Callable[[Settings], Verdict]:
    """An identity between two literals of a skew polynomial ring"""
    def run(settings: Settings) -> Verdict:
        ring = dsl.build(expr, settings)
        left, right = ring.parse(lhs), ring.parse(rhs)
        return _fact(
            'commutation', ring.id, left == right,
            lhs=str(left), rhs=str(right)
        )
    return run


def _only_identity(expr: str) -> Callable[[Settings], Verdict]:
    def run(settings: Settings) -> Verdict:
        ring = dsl.build(expr, settings)
        maps = unital_endomorphisms(ring, settings)
        return _fact(
            'only-identity-endomorphism', ring.id,
            len(maps) == 1 and maps[0].is_identity(),
            endomorphisms=[m.expr for m in maps]
        )
    return run


def _sigma_idempotents(expr: str, endo: str, degree: int) -> Callable[[Settings], Verdict]:
    def run(settings: Settings) -> Verdict:
        ring = dsl.build(expr, settings)
        sigma = dsl.build_endo(endo, ring, settings=settings)
        return _replayed(
            scan_poly_idempotents(ring, degree, sigma, settings), settings
        )
    return run


def _non_injective(expr: str, endo: str) -> Callable[[Settings], Verdict]:
    def run(settings: Settings) -> Verdict:
        ring = dsl.build(expr, settings)
        sigma = dsl.build_endo(endo, ring, settings=settings)
        return _fact('non-injective', ring.id, not sigma.is_injective())
    return run


# ----------------------------------------------------------------------
# Registry
# ----------------------------------------------------------------------
@dataclass
class ClaimCheck:
    """
    Attributes
    ----------
    anchor: str
        Result id, e.g. ``Thm-2.6``
    title: str
        One line statement of the checked instance
    assertions: list of :class:`Assertion`
    proxy: str, default ``None``
        How the check stands in for an infinite statement
    out_of_scope: str, default ``None``
        Reason the result is not verified
    """
    anchor: str
    title: str
    assertions: List[Assertion] = field(default_factory=list)
    proxy: Optional[str] = None
    out_of_scope: Optional[str] = None

    def toJSON(self) -> Dict[str, Any]:
        return {
            'anchor': self.anchor,
            'title': self.title,
            'status': 'out-of-scope' if self.out_of_scope else 'in-scope',
            'proxy': self.proxy,
            'reason': self.out_of_scope,
            'assertions': [a.name for a in self.assertions],
        }


BOUNDED = 'bounded-degree proxy'
FINITE = 'finite analog'
GF2_INSTANCE = 'instance-check-over-GF(2)'


CLAIMS: Tuple[ClaimCheck, ...] = (
    ClaimCheck('Def-1.1', 'reversible rings are i-reversible', [
        custom('catalog: reversible => i-reversible', _catalog_inclusion),
        custom('catalog: pair scan agrees with the oracle', _oracle_agreement),
    ], proxy=FINITE),
    ClaimCheck('Def-2.1', 'T(R, R) is the ring of matrices [[r, m], [0, r]]', [
        iso('triv-band', 'triv(Z4)', 'V(2, Z4)'),
        iso('triv-band', 'triv(Z6)', 'V(2, Z6)'),
    ]),
    ClaimCheck('Rem-2.2', 'easy observations on T(R, R)', [
        prop('i-reversible', 'Z4'),
        prop('i-reversible', 'triv(Z4)'),
        prop('commutative', 'triv(Z6)'),
        prop('i-reversible', 'triv(Z6)'),
        prop('reduced', 'Z6'),
        prop('reversible', 'triv(Z6)'),
        prop('reversible', 'triv(prod(Z2, Z2))'),
    ]),
    ClaimCheck(
        'Eg-2.3', 'T(R, R) with a noncentral idempotent is not i-reversible',
        out_of_scope='the contradiction route relies on a witness that is '
                     'only cited; the quaternion arithmetic is covered by Eg-2.4',
    ),
    ClaimCheck('Eg-2.4', 'alpha*beta is a nonzero idempotent, beta*alpha is not', [
        replay('eg2_4'),
        replay('eg2_4', expected=False, tampered=True),
    ]),
    ClaimCheck('Thm-2.6', 'trivial idempotents in R give an i-reversible T(R, R)', [
        prop('trivial-idempotents', 'Z4'),
        prop('trivial-idempotents', 'triv(Z4)'),
        prop('i-reversible', 'triv(Z4)'),
        prop('trivial-idempotents', 'triv(Z9)'),
        prop('i-reversible', 'triv(Z9)'),
        prop('trivial-idempotents', 'triv(table(gf4))'),
        prop('i-reversible', 'triv(table(gf4))'),
    ]),
    ClaimCheck('Eg-2.7', 'T(S + S, S + S) is reversible for reduced S', [
        prop('reduced', 'prod(Z3, Z3)'),
        prop('trivial-idempotents', 'prod(Z3, Z3)', expected=False),
        prop('reversible', 'triv(prod(Z3, Z3))'),
        prop('i-reversible', 'triv(prod(Z3, Z3))'),
    ], proxy=FINITE),
    ClaimCheck('Cor-2.8', 'T(T(S, S), T(S, S)) is i-reversible', [
        prop('trivial-idempotents', 'triv(Z4)'),
        prop('trivial-idempotents', 'triv(triv(Z4))'),
        prop('i-reversible', 'triv(triv(Z4))'),
    ]),
    ClaimCheck('Thm-2.9', 'a central idempotent and i-reversible T(R, R) force R reversible', [
        prop('abelian', 'Z6'),
        prop('i-reversible', 'triv(Z6)'),
        prop('reversible', 'Z6'),
        prop('reversible', 'prod(Z2, T(2, Z2))', expected=False),
        prop('i-reversible', 'triv(prod(Z2, T(2, Z2)))', expected=False),
    ]),
    ClaimCheck('Cor-2.10', 'abelian R with i-reversible T(R, R) is reversible or has trivial idempotents', [
        prop('abelian', 'prod(Z2, D(3, Z2))'),
        prop('reversible', 'prod(Z2, D(3, Z2))', expected=False),
        prop('trivial-idempotents', 'prod(Z2, D(3, Z2))', expected=False),
        prop('i-reversible', 'triv(prod(Z2, D(3, Z2)))', expected=False),
    ]),
    ClaimCheck('Thm-2.11', 'abelian, non-reversible R: T(R, R) i-reversible iff trivial idempotents', [
        prop('abelian', 'D(3, Z2)'),
        prop('reversible', 'D(3, Z2)', expected=False),
        prop('trivial-idempotents', 'D(3, Z2)'),
        prop('i-reversible', 'triv(D(3, Z2))'),
    ]),
    ClaimCheck('Thm-3.1', 'D_n(R) is i-reversible iff R has only trivial idempotents', [
        prop('i-reversible', 'D(3, Z2)'),
        prop('i-reversible', 'D(4, Z2)'),
        prop('i-reversible', 'D(5, Z2)'),
        prop('i-reversible', 'D(3, Z4)'),
        prop('i-reversible', 'D(3, table(gf4))'),
        prop('i-reversible', 'D(3, Z6)', expected=False),
        replay('thm3_1_corner'),
    ], proxy=(
        'instance-check: n = 3..5 over Z_2, n = 3 over Z_4 and GF(4); '
        'D_4, D_5 over Z_4 and GF(4) exceed the pair budget'
    )),
    ClaimCheck('Rem-3.2', 'D_1(R) = R and D_2(R) = T(R, R)', [
        prop('i-reversible', 'D(1, Z4)'),
        iso('triv-band', 'triv(Z4)', 'D(2, Z4)'),
        prop('i-reversible', 'D(2, Z4)'),
    ]),
    ClaimCheck('Cor-3.3', 'V_n(R) is i-reversible; V_n(R) ~ R[x]/(x^n)', [
        prop('i-reversible', 'V(3, Z4)'),
        prop('i-reversible', 'V(4, Z2)'),
        iso('band-poly', 'V(3, Z6)', 'skewtrunc(Z6, id, 3, left)'),
        prop('reversible', 'V(3, Z6)'),
    ]),
    ClaimCheck('Thm-3.4', 'T(D_n(R), D_n(R)) is i-reversible iff R has only trivial idempotents', [
        prop('abelian', 'D(3, Z2)'),
        prop('reversible', 'D(3, Z2)', expected=False),
        prop('i-reversible', 'triv(D(3, Z2))'),
        prop('i-reversible', 'D(3, Z6)', expected=False),
    ]),
    ClaimCheck('Thm-3.6', 'a subring above D_5 with a nontrivial idempotent is not i-reversible', [
        custom(
            'closure(D5, E11) in T(5, GF2) is not i-reversible',
            _certified('T(5, GF2)', 'D(5, GF2)', [(1, 1)])
        ),
        custom(
            'closure(D5, E22) in T(5, GF2) is not i-reversible',
            _certified('T(5, GF2)', 'D(5, GF2)', [(2, 2)])
        ),
    ], proxy=GF2_INSTANCE),
    ClaimCheck('Rem-3.6', 'a diagonal idempotent of weight 3 rules out i-reversibility', [
        custom(
            'closure(D4, E11 + E22 + E33) in T(4, GF2) is not i-reversible',
            _certified('T(4, GF2)', 'D(4, GF2)', [(1, 1), (2, 2), (3, 3)])
        ),
        custom(
            'closure(D4, E11) in T(4, GF2) is not i-reversible',
            _certified('T(4, GF2)', 'D(4, GF2)', [(1, 1)])
        ),
        custom(
            'every intermediate of D(4, GF2) in T(4, GF2) with an idempotent of weight 1 or 3',
            _all_certified('D(4, GF2)', 'T(4, GF2)', (1, 3))
        ),
    ], proxy=GF2_INSTANCE),
    ClaimCheck('Thm-3.7', 'every subring strictly above D_n(F) has a nontrivial idempotent', [
        custom(
            'intermediates of D(5, GF2) in T(5, GF2)',
            _diagonal_idempotents('D(5, GF2)', 'T(5, GF2)')
        ),
        custom(
            'intermediates of D(3, GF3) in T(3, GF3)',
            _diagonal_idempotents('D(3, GF3)', 'T(3, GF3)')
        ),
    ], proxy='instance-check-over-GF(2), GF(3)'),
    ClaimCheck('Thm-3.8', 'no subring strictly above D_n(F) is i-reversible (n >= 5)', [
        custom(
            '51 intermediates of D(5, GF2) in T(5, GF2)',
            _intermediate_count('D(5, GF2)', 'T(5, GF2)', 51)
        ),
        custom(
            'each has a diagonal pattern of weight >= 3',
            _weight_three('D(5, GF2)', 'T(5, GF2)')
        ),
    ], proxy=GF2_INSTANCE),
    ClaimCheck('Thm-3.9', 'D_n(F) is a maximal i-reversible subring of T_n(F) (n >= 5)', [
        prop('i-reversible', 'D(5, GF2)'),
        maximal('D(5, GF2)', 'T(5, GF2)', golden='maximal_d5_t5'),
    ], proxy=GF2_INSTANCE),
    ClaimCheck('Eg-3.10', 'D_3(F) is not maximal: S_3(F) is i-reversible', [
        prop('i-reversible', 'S3(GF2)'),
        prop('i-reversible', 'S3(GF3)'),
        maximal('D(3, GF2)', 'T(3, GF2)', expected=False),
        custom(
            '4 intermediates of D(3, GF2) in T(3, GF2)',
            _intermediate_count('D(3, GF2)', 'T(3, GF2)', 4)
        ),
    ], proxy=GF2_INSTANCE),
    ClaimCheck('Eg-3.11', 'D_4(F) is not maximal: S_4(F) is i-reversible', [
        prop('i-reversible', 'S4(GF2)'),
        maximal('D(4, GF2)', 'T(4, GF2)', expected=False),
        custom(
            '14 intermediates of D(4, GF2) in T(4, GF2)',
            _intermediate_count('D(4, GF2)', 'T(4, GF2)', 14)
        ),
    ], proxy=GF2_INSTANCE),
    ClaimCheck('Thm-3.13', 'S_3(F) is a maximal i-reversible subring of T_3(F)', [
        maximal('S3(GF2)', 'T(3, GF2)', golden='maximal_s3_t3'),
        maximal('S3(GF3)', 'T(3, GF3)'),
    ], proxy='instance-check-over-GF(2), GF(3)'),
    ClaimCheck('Thm-3.15', 'S_4(F) is a maximal i-reversible subring of T_4(F)', [
        maximal('S4(GF2)', 'T(4, GF2)', golden='maximal_s4_t4'),
    ], proxy=GF2_INSTANCE),
    ClaimCheck('Def-4.1', 'the Dorroh extension has unity (0, 1)', [
        custom('dorroh(prod(Z2, Z2), Z2, hom) has unity ((0, 0), 1)', _dorroh_unity),
        prop('i-reversible', 'dorroh(Z4, Z4, hom)'),
    ]),
    ClaimCheck('Thm-4.2', 'with a central idempotent in R, D is i-reversible iff reversible', [
        prop('i-reversible', 'dorroh(rng(prod(Z2, Z2), (1, 0)), Z2, char)'),
        prop('reversible', 'dorroh(rng(prod(Z2, Z2), (1, 0)), Z2, char)'),
        prop(
            'i-reversible',
            'dorroh(rng(prod(Z2, T(2, Z2)), (1, 0), (0, [[1, 0], [0, 0]]), '
            '(0, [[0, 1], [0, 0]])), Z2, char)',
            expected=False
        ),
        prop(
            'reversible',
            'dorroh(rng(prod(Z2, T(2, Z2)), (1, 0), (0, [[1, 0], [0, 0]]), '
            '(0, [[0, 1], [0, 0]])), Z2, char)',
            expected=False
        ),
    ]),
    ClaimCheck('Thm-4.3', 'D is i-reversible iff R is reversible; D ~ S x R', [
        prop('reversible', 'M(2, Z2)', expected=False),
        prop('i-reversible', 'dorroh(M(2, Z2), Z2, hom)', expected=False),
        iso('dorroh-split', 'dorroh(M(2, Z2), Z2, hom)', 'prod(Z2, M(2, Z2))'),
        prop('i-reversible', 'dorroh(prod(Z2, Z2), Z2, hom)'),
        iso('dorroh-split', 'dorroh(prod(Z2, Z2), Z2, hom)', 'prod(Z2, prod(Z2, Z2))'),
    ]),
    ClaimCheck('Def-4.4', 'the Nagata extension of R by R and sigma', [
        iso('pair-identity', 'nagata(Z4, id)', 'triv(Z4)'),
        prop('commutative', 'nagata(prod(Z2, Z2), swap)', expected=False),
    ]),
    ClaimCheck('Thm-4.6', 'trivial idempotents in R give an i-reversible Nagata extension', [
        prop('i-reversible', 'nagata(Z4, id)'),
        prop('i-reversible', 'nagata(table(gf4), frob)'),
        prop('trivial-idempotents', 'nagata(table(gf4), frob)'),
    ]),
    ClaimCheck('Rem-4.7', 'the converse of Thm-4.6 fails', [
        prop('trivial-idempotents', 'Z6', expected=False),
        iso('pair-identity', 'nagata(Z6, id)', 'triv(Z6)'),
        prop('i-reversible', 'nagata(Z6, id)'),
    ]),
    ClaimCheck('Eg-4.8', 'Nagata(D + D, swap) is i-reversible', [
        prop('i-reversible', 'nagata(prod(Z2, Z2), swap)'),
        prop('i-reversible', 'nagata(prod(Z3, Z3), swap)'),
    ], proxy='finite analog: Z_p x Z_p replaces a char-0 domain'),
    ClaimCheck('Prop-5.1', 'T_n(R) is i-reversible iff n = 2 and R is reversible with trivial idempotents', [
        prop('i-reversible', 'T(2, Z2)'),
        prop('i-reversible', 'T(2, Z3)'),
        prop('i-reversible', 'T(2, Z6)', expected=False),
        prop('i-reversible', 'T(3, Z2)', expected=False),
        prop('i-reversible', 'T(4, Z2)', expected=False),
        prop('reversible', 'T(2, Z2)', expected=False),
    ]),
    ClaimCheck(
        'Eg-5.2', 'an i-reversible, non-reversible S with S[x] not i-reversible',
        out_of_scope='depends on a ring construction given only by citation',
    ),
    ClaimCheck('Thm-5.3', 'R is abelian iff R[x] has only the idempotents of R', [
        prop('abelian', 'Z6'),
        prop('poly-idempotents', 'Z6', degree=2),
        prop('laurent-idempotents', 'Z6', degree=1),
        prop('abelian', 'T(2, Z2)', expected=False),
        prop('poly-idempotents', 'T(2, Z2)', degree=2, expected=False),
    ], proxy=BOUNDED),
    ClaimCheck('Thm-5.4', 'trivial idempotents make R[x] and R[x, 1/x] i-reversible', [
        prop('poly-i-reversible', 'Z4', degree=2),
        prop('poly-i-reversible', 'table(gf4)', degree=2),
        prop('laurent-i-reversible', 'Z4', degree=1),
        prop('poly-idempotents', 'Z4', degree=2),
    ], proxy=BOUNDED),
    ClaimCheck('Thm-5.5', 'for abelian R, R[x] is i-reversible iff R[x, 1/x] is', [
        prop('poly-i-reversible', 'Z6', degree=1),
        prop('laurent-i-reversible', 'Z6', degree=1),
        prop('abelian', 'prod(Z2, D(3, Z2))'),
        prop('poly-i-reversible', 'prod(Z2, D(3, Z2))', degree=1, expected=False),
        prop('laurent-i-reversible', 'prod(Z2, D(3, Z2))', degree=0, expected=False),
    ], proxy='bounded-degree proxy: only consistency of the bounded scans is checked'),
    ClaimCheck('Thm-5.6', 'for Armendariz R: R, R[x], R[x, 1/x] i-reversible together', [
        prop('armendariz', 'Z6', degree=2),
        prop('i-reversible', 'Z6'),
        prop('poly-i-reversible', 'Z6', degree=1),
        prop('laurent-i-reversible', 'Z6', degree=1),
    ], proxy=BOUNDED),
    ClaimCheck('Eg-5.8', 'T_2(S) is not Armendariz but T_2(S)[x] is i-reversible', [
        prop('armendariz', 'T(2, Z2)', degree=1, expected=False),
        prop('poly-i-reversible', 'T(2, Z2)', degree=1),
    ], proxy=BOUNDED),
    ClaimCheck('Eg-5.9', 'T(S, S) is Armendariz with nontrivial idempotents', [
        prop('armendariz', 'triv(Z6)', degree=2),
        prop('trivial-idempotents', 'triv(Z6)', expected=False),
    ], proxy=BOUNDED),
    ClaimCheck('Eg-5.10', 'T(T(D, D), T(D, D)) has trivial idempotents but is not Armendariz', [
        prop('trivial-idempotents', 'triv(triv(Z2))'),
        prop('armendariz', 'triv(triv(Z2))', degree=2, expected=False),
    ], proxy='finite analog: Z_2 replaces a domain'),
    ClaimCheck('Def-6.1', 'skew polynomials: x*b = sigma(b)*x', [
        custom(
            'x*(1, 0) = (0, 1)*x in skew(prod(Z2, Z2), swap, left)',
            _skew_rule('skew(prod(Z2, Z2), swap, left)', 'x*(1, 0)', '(0, 1)*x')
        ),
        custom(
            '(1, 0)*x = x*(0, 1) in skew(prod(Z2, Z2), swap, right)',
            _skew_rule('skew(prod(Z2, Z2), swap, right)', '(1, 0)*x', 'x*(0, 1)')
        ),
    ]),
    ClaimCheck('Rem-6.2', 'right R[x; sigma]/(x^2) ~ Nagata(R, sigma); Z_n has only sigma = id', [
        iso(
            'skew-nagata', 'skewtrunc(prod(Z3, Z3), swap, 2, right)',
            'nagata(prod(Z3, Z3), swap)'
        ),
        iso(
            'skew-nagata', 'skewtrunc(table(gf4), frob, 2, right)',
            'nagata(table(gf4), frob)'
        ),
        custom('Z6 has only the identity', _only_identity('Z6')),
    ]),
    ClaimCheck('Lem-6.3', 'an idempotent with central constant term e fixed by sigma is e', [
        prop('trivial-idempotents', 'skewtrunc(table(gf4), frob, 3, left)'),
        prop('i-reversible', 'skewtrunc(table(gf4), frob, 3, left)'),
        custom(
            'table(gf4)[x; frob] idempotents d=2',
            _sigma_idempotents('table(gf4)', 'frob', 2)
        ),
    ], proxy=BOUNDED),
    ClaimCheck('Thm-6.4', 'trivial idempotents make R[x; sigma] i-reversible', [
        prop('poly-i-reversible', 'table(gf4)', endo='frob', degree=2),
        prop('poly-i-reversible', 'Z4', endo='id', degree=2),
    ], proxy=BOUNDED),
    ClaimCheck('Thm-6.5', 'a non-injective sigma fixing a central idempotent breaks R[x; sigma]', [
        prop('i-reversible', 'prod(Z2, prod(Z2, Z2))'),
        custom(
            'cw(id, etable([0, 0, 3, 3])) is not injective',
            _non_injective('prod(Z2, prod(Z2, Z2))', 'cw(id, etable([0, 0, 3, 3]))')
        ),
        prop(
            'poly-i-reversible', 'prod(Z2, prod(Z2, Z2))',
            endo='cw(id, etable([0, 0, 3, 3]))', degree=1, expected=False
        ),
    ]),
    ClaimCheck('Eg-6.6', 'the shift on sequences fixes no nontrivial idempotent yet R[x; shift] fails', [
        custom('shift is not injective', _non_injective('ecseq(Z2, 4)', 'shift')),
        replay('seq_ring'),
        prop('poly-i-reversible', 'ecseq(Z2, 4)', endo='shift', degree=1, expected=False),
    ], proxy='finite analog: eventually constant Z_2 sequences replace real sequences'),
    ClaimCheck('Eg-6.7', 'swap on S x S with a central idempotent: R[x; swap] is not i-reversible', [
        replay('eg6_7'),
        replay('z6xz6_swap'),
        prop('i-reversible', 'prod(Z6, Z6)'),
        prop('poly-i-reversible', 'prod(Z6, Z6)', endo='swap', degree=1, expected=False),
    ], proxy=FINITE),
    ClaimCheck('Eg-6.8', 'T(S, S) with the diagonal projection: R[x; sigma] is not i-reversible', [
        prop('reversible', 'triv(Z6)'),
        prop('armendariz', 'triv(Z6)', degree=1),
        replay('eg6_8'),
        prop('poly-i-reversible', 'triv(Z6)', endo='diagproj', degree=1, expected=False),
    ], proxy=FINITE),
    ClaimCheck('Thm-6.10', 'i-reversible and sigma-Armendariz make R[x; sigma] i-reversible', [
        prop('sigma-armendariz', 'prod(Z2, Z2)', endo='cw(id, id)', degree=2),
        prop('poly-i-reversible', 'prod(Z2, Z2)', endo='cw(id, id)', degree=2),
        prop('sigma-armendariz', 'prod(Z3, Z3)', endo='cw(id, id)', degree=1),
        prop('poly-i-reversible', 'prod(Z3, Z3)', endo='cw(id, id)', degree=1),
    ], proxy=BOUNDED),
    ClaimCheck('Eg-6.12', 'S x S with a componentwise rigid sigma is sigma-rigid', [
        prop('sigma-rigid', 'prod(Z2, Z2)', endo='cw(id, id)'),
        prop('sigma-armendariz', 'prod(Z2, Z2)', endo='cw(id, id)', degree=2),
        prop('trivial-idempotents', 'prod(Z2, Z2)', expected=False),
        prop('sigma-rigid', 'prod(Z2, Z2)', endo='swap', expected=False),
    ], proxy=BOUNDED),
    ClaimCheck('Eg-6.13', 'the ring of Eg-5.10 is not Id-Armendariz', [
        prop('trivial-idempotents', 'triv(triv(Z2))'),
        prop('sigma-armendariz', 'triv(triv(Z2))', endo='id', degree=2, expected=False),
    ], proxy=BOUNDED),
)

# expectations that are deliberately wrong
CONTROLS: Tuple[ClaimCheck, ...] = (
    ClaimCheck('NC-1', 'D_3(Z_6) claimed i-reversible', [
        prop('i-reversible', 'D(3, Z6)'),
    ]),
    ClaimCheck('NC-2', 'T_2(Z_2) claimed reversible', [
        prop('reversible', 'T(2, Z2)'),
    ]),
    ClaimCheck('NC-3', 'D_3(GF(2)) claimed maximal in T_3(GF(2))', [
        maximal('D(3, GF2)', 'T(3, GF2)'),
    ]),
    ClaimCheck('NC-4', 'tampered Eg-2.4 witness claimed to replay', [
        replay('eg2_4', tampered=True),
    ]),
    ClaimCheck('NC-5', 'T(T(Z_2, Z_2), T(Z_2, Z_2)) claimed Armendariz', [
        prop('armendariz', 'triv(triv(Z2))', degree=2),
    ]),
)


def _registry(controls: bool) -> Tuple[ClaimCheck, ...]:
    return CONTROLS if controls else CLAIMS


def get_claim(anchor: str) -> ClaimCheck:
    """
    Raises
    ------
    KeyError
        No claim or control has this anchor
    """
    for claim in CLAIMS + CONTROLS:
        if claim.anchor == anchor:
            return claim
    raise KeyError('Unknown claim `{}`'.format(anchor))


def list_claims(controls: bool = False) -> List[Dict[str, Any]]:
    """The claim catalog with anchors, proxy status and scope"""
    return [claim.toJSON() for claim in _registry(controls)]


# ----------------------------------------------------------------------
# Report
# ----------------------------------------------------------------------
@dataclass
class ClaimOutcome:
    anchor: str
    title: str
    status: str
    proxy: Optional[str] = None
    assertions: List[AssertionResult] = field(default_factory=list)
    seconds: float = 0.0
    error: Optional[str] = None
    control: bool = False

    @property
    def witnesses(self) -> List[str]:
        return [d for a in self.assertions for d in a.witnesses]

    @property
    def passed(self) -> bool:
        """Controls pass when their claim fails"""
        if self.status == 'out-of-scope':
            return True
        if self.control:
            return self.status == 'fail'
        return self.status == 'pass'

    def toJSON(self, timings: bool = True) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            'claim': self.title,
            'anchor': self.anchor,
            'status': self.status,
            'proxy': self.proxy,
            'witnesses': self.witnesses,
            'assertions': [a.toJSON() for a in self.assertions],
        }
        if timings:
            data['millis'] = int(round(self.seconds * 1000))
        if self.error:
            data['error'] = self.error
        return data


@dataclass
class SuiteReport:
    """
    Outcome of a suite run

    ``passed`` is ``True`` iff every claim met its expectations (and
    every control failed).
    """
    outcomes: List[ClaimOutcome]
    settings: Settings = field(default_factory=Settings)
    controls: bool = False

    @property
    def passed(self) -> bool:
        return all(o.passed for o in self.outcomes)

    def counts(self) -> Dict[str, int]:
        counts = {status: 0 for status in STATUSES}
        for outcome in self.outcomes:
            counts[outcome.status] += 1
        return counts

    def toJSON(self) -> Dict[str, Any]:
        timings = not self.settings.deterministic
        return {
            'passed': self.passed,
            'controls': self.controls,
            'counts': self.counts(),
            'claims': [o.toJSON(timings) for o in self.outcomes],
        }

    def summary(self) -> str:
        """Text table, one line per claim"""
        width = max([len(o.anchor) for o in self.outcomes] + [6])
        lines = ['{:<{w}}  {:<12}  {:>8}  {}'.format(
            'anchor', 'status', 'millis', 'claim', w=width
        )]
        for o in self.outcomes:
            millis = '-' if self.settings.deterministic \
                else str(int(round(o.seconds * 1000)))
            status = o.status
            if o.proxy and status != 'out-of-scope':
                status += '*'
            lines.append('{:<{w}}  {:<12}  {:>8}  {}'.format(
                o.anchor, status, millis, o.title, w=width
            ))
            if o.error:
                lines.append('{:<{w}}  error: {}'.format('', o.error, w=width))
            for a in o.assertions:
                if not a.met and o.status != 'error':
                    lines.append('{:<{w}}  unmet: {}'.format('', a.name, w=width))
        counts = self.counts()
        lines.append('')
        lines.append(', '.join(
            '{} {}'.format(counts[s], s) for s in STATUSES
        ) + ' (* proxy)')
        lines.append('suite {}'.format('PASSED' if self.passed else 'FAILED'))
        return '\n'.join(lines)

    def to_dataframe(self) -> 'pd.DataFrame':
        """
        One row per assertion

        Raises
        ------
        ImportError
            pandas is not installed
        """
        rows = []
        for o in self.outcomes:
            for a in o.assertions or [AssertionResult('', False)]:
                rows.append({
                    'anchor': o.anchor,
                    'status': o.status,
                    'proxy': o.proxy,
                    'assertion': a.name,
                    'expected': a.expected,
                    'observed': a.observed,
                    'millis': int(round(o.seconds * 1000)),
                })
        try:
            return pd.DataFrame(rows).set_index(['anchor', 'assertion'])
        except NameError:
            raise ImportError('to_dataframe requires pandas')


def _evaluate(assertion: Assertion, settings: Settings) -> AssertionResult:
    result = AssertionResult(assertion.name, assertion.expected)
    try:
        verdict = assertion.run(settings)
    except (DSLSyntaxError, ConstructionError, BudgetExceeded,
            InconclusiveError) as err:
        result.error = '{}: {}'.format(type(err).__name__, err)
        return result
    result.observed = bool(verdict.holds)
    result.proxy = verdict.proxy_note
    result.witnesses = [w.digest() for w in verdict.all_witnesses()]
    if 'digest' in verdict.detail:
        result.witnesses.append(verdict.detail['digest'])
    return result


def run_claim(
    claim: ClaimCheck,
    settings: Optional[Settings] = None,
    control: bool = False
) -> ClaimOutcome:
    """Runs all assertions of a single claim"""
    settings = settings or default_settings()
    outcome = ClaimOutcome(
        claim.anchor, claim.title, 'out-of-scope', claim.proxy,
        control=control
    )
    if claim.out_of_scope:
        outcome.error = claim.out_of_scope
        return outcome

    start = time.perf_counter()
    for assertion in claim.assertions:
        logger.debug('%s: %s', claim.anchor, assertion.name)
        try:
            outcome.assertions.append(_evaluate(assertion, settings))
        except RingLabError as err:
            outcome.assertions.append(AssertionResult(
                assertion.name, assertion.expected,
                error='{}: {}'.format(type(err).__name__, err)
            ))
    outcome.seconds = time.perf_counter() - start

    errors = [a.error for a in outcome.assertions if a.error]
    if errors:
        outcome.status = 'error'
        outcome.error = errors[0]
    elif all(a.met for a in outcome.assertions):
        outcome.status = 'pass'
    else:
        outcome.status = 'fail'
    logger.info(
        '%s %s in %.2fs', claim.anchor, outcome.status, outcome.seconds
    )
    return outcome


def run_suite(
    filter: Optional[str] = None,
    controls: bool = False,
    settings: Optional[Settings] = None
) -> SuiteReport:
    """
    Runs the claims whose anchor matches ``filter``

    Parameters
    ----------
    filter: str, default ``None``
        Shell-style pattern on the anchor (``Thm-3.*``), all claims if
        ``None``
    controls: bool, default ``False``
        Run the negative controls instead of the claims
    settings: :class:`ringlab.config.Settings`, default ``None``
        ``jobs`` claims run in parallel; the report keeps registry order

    Returns
    -------
    :class:`SuiteReport`
    """
    settings = settings or default_settings()
    selected = [
        claim for claim in _registry(controls)
        if filter is None or fnmatch.fnmatchcase(claim.anchor, filter)
    ]
    logger.info(
        'Running %d %s with %d worker(s)', len(selected),
        'controls' if controls else 'claims', settings.jobs
    )
    # nested scans stay sequential when claims run in parallel
    inner = settings.with_overrides(jobs=1) if settings.jobs > 1 else settings

    def run(claim: ClaimCheck) -> ClaimOutcome:
        return run_claim(claim, inner, controls)

    if settings.jobs > 1:
        with ThreadPoolExecutor(max_workers=settings.jobs) as pool:
            outcomes = list(pool.map(run, selected))
    else:
        outcomes = [run(claim) for claim in selected]
    return SuiteReport(outcomes, settings, controls)
