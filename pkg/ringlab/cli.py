"""
The ``ringlab`` console command

Exit codes: 0 when the checked statement holds (or the report passes),
1 when it fails, 2 on errors and budget refusals.

Examples
--------
    ringlab check i-reversible "T(3, Z2)" --witness t3.json
    ringlab maximal "S4(GF 2)" "T(4, GF 2)"
    ringlab witness replay goldens/eg2_4.json
    ringlab --jobs 4 --deterministic suite --filter 'Thm-3.*' --json -

"""

import os
import sys
import json
import logging
import argparse
from typing import Any, Callable, Dict, List, Optional

from ringlab import __version__, dsl
from ringlab.config import Settings, load_settings
from ringlab.constructions import ISO_MAPS, MatrixRing, iso_candidate, verify_iso
from ringlab.errors import BudgetExceeded, RingLabError
from ringlab.properties import PROPERTIES, check_property, verify_witness
from ringlab.rings import DATA_FOLDER
from ringlab.subrings import check_maximal_i_reversible
from ringlab.suite import list_claims, run_suite
from ringlab.witness import Verdict, Witness


logger = logging.getLogger('ringlab')

EXIT_OK = 0
EXIT_FAILS = 1
EXIT_ERROR = 2


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format='%(asctime)s %(levelname)s %(name)s: %(message)s'
    )


def _emit_json(data: Any, path: Optional[str]) -> None:
    if not path:
        return
    text = json.dumps(data, sort_keys=True, indent=2) + '\n'
    if path == '-':
        sys.stdout.write(text)
        return
    with open(path, 'w') as fh:
        fh.write(text)
    logger.info('Wrote %s', path)


def _say(args: argparse.Namespace, text: str) -> None:
    """Human readable output, suppressed when JSON goes to stdout"""
    if args.json != '-':
        print(text)


def _verdict_code(verdict: Verdict) -> int:
    return EXIT_OK if verdict.holds else EXIT_FAILS


def _witness_path(path: str) -> str:
    if os.path.exists(path):
        return path
    bundled = os.path.join(DATA_FOLDER, path)
    if os.path.exists(bundled):
        return bundled
    return path


# ----------------------------------------------------------------------
# Commands
# ----------------------------------------------------------------------
def cmd_check(args: argparse.Namespace, settings: Settings) -> int:
    """Property check; ``--witness`` saves the counterexample of a failure"""
    ring = dsl.build(args.ring, settings)
    sigma = dsl.build_endo(args.endo, ring, settings=settings) \
        if args.endo else None
    verdict = check_property(args.property, ring, sigma, args.degree, settings)
    _say(args, str(verdict))
    if verdict.witness is not None and args.witness:
        verdict.witness.save(args.witness)
        _say(args, 'witness written to {}'.format(args.witness))
    _emit_json(verdict.toJSON(timings=not settings.deterministic), args.json)
    return _verdict_code(verdict)


def cmd_idempotents(args: argparse.Namespace, settings: Settings) -> int:
    ring = dsl.build(args.ring, settings)
    settings.require('max_pairs', len(ring) ** 2)
    central = set(ring.central_idempotents())
    rows = [
        {'element': str(e), 'central': e in central}
        for e in ring.idempotents()
    ]
    for row in rows:
        _say(args, '{}{}'.format(
            row['element'], '' if row['central'] else '  (not central)'
        ))
    _say(args, '{} idempotents in `{}`'.format(len(rows), ring.id))
    _emit_json({'ring': ring.id, 'idempotents': rows}, args.json)
    return EXIT_OK


def cmd_replay(args: argparse.Namespace, settings: Settings) -> int:
    witness = Witness.load(_witness_path(args.file))
    ok = verify_witness(witness, settings)
    _say(args, '{} `{}`: {}'.format(
        witness.kind, witness.ring, 'replays' if ok else 'does NOT replay'
    ))
    _emit_json({
        'ring': witness.ring,
        'kind': witness.kind,
        'digest': witness.digest(),
        'replays': ok,
    }, args.json)
    return EXIT_OK if ok else EXIT_FAILS


def cmd_maximal(args: argparse.Namespace, settings: Settings) -> int:
    base = dsl.build(args.base, settings)
    ambient = dsl.build(args.ambient, settings)
    if not isinstance(ambient, MatrixRing):
        raise RingLabError('`{}` is not a matrix ring'.format(ambient.id))
    if not isinstance(base, MatrixRing):
        raise RingLabError('`{}` is not a matrix ring'.format(base.id))
    verdict = check_maximal_i_reversible(base, ambient, settings)
    for entry in verdict.detail.get('subrings', []):
        _say(args, 'dim {:>3}  {}'.format(
            entry['dimension'],
            'i-reversible' if entry['i_reversible'] else 'not i-reversible'
        ))
    _say(args, str(verdict))
    _emit_json(verdict.toJSON(timings=not settings.deterministic), args.json)
    return _verdict_code(verdict)


def cmd_suite(args: argparse.Namespace, settings: Settings) -> int:
    if args.list:
        claims = list_claims(controls=args.controls)
        for claim in claims:
            note = claim['reason'] and 'OUT-OF-SCOPE: {}'.format(
                claim['reason']
            ) or claim['proxy'] or ''
            _say(args, '{:<10} {}{}'.format(
                claim['anchor'], claim['title'],
                '  [{}]'.format(note) if note else ''
            ))
        _emit_json(claims, args.json)
        return EXIT_OK
    report = run_suite(args.filter, controls=args.controls, settings=settings)
    _say(args, report.summary())
    _emit_json(report.toJSON(), args.json)
    return EXIT_OK if report.passed else EXIT_FAILS


def cmd_iso(args: argparse.Namespace, settings: Settings) -> int:
    candidate = iso_candidate(
        args.map, dsl.build(args.source, settings),
        dsl.build(args.target, settings)
    )
    verdict = verify_iso(candidate, settings)
    _say(args, str(verdict))
    _emit_json(verdict.toJSON(timings=not settings.deterministic), args.json)
    return _verdict_code(verdict)


# ----------------------------------------------------------------------
# Parser
# ----------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='ringlab',
        description='Exact checks of reversibility-type ring properties'
    )
    parser.add_argument(
        '--version', action='version', version='%(prog)s ' + __version__
    )
    parser.add_argument(
        '-v', '--verbose', action='count', default=0,
        help='INFO logging, -vv for DEBUG'
    )
    parser.add_argument('--config', metavar='PATH', help='INI config file')
    parser.add_argument('--max-pairs', type=int, help='pair scan budget')
    parser.add_argument('--max-degree', type=int, help='polynomial degree budget')
    parser.add_argument(
        '--max-quotient-dim', type=int,
        help='quotient dimension budget of subring enumeration'
    )
    parser.add_argument(
        '--max-modulus', type=int, help='largest modulus of the suite catalog'
    )
    parser.add_argument('--jobs', type=int, help='worker threads')
    parser.add_argument(
        '--deterministic', action='store_true', default=None,
        help='index order scans, minimal witnesses, no timings in JSON'
    )
    parser.add_argument(
        '--json', metavar='PATH', help='write a JSON report, - for stdout'
    )

    commands = parser.add_subparsers(dest='command', metavar='command')
    commands.required = True

    check = commands.add_parser(
        'check', help='check a ring property, --witness saves a failing pair',
        description='Checks a property on a finite ring. When it fails, '
        '--witness PATH writes the counterexample as a replayable JSON file.',
        epilog='e.g. ringlab check i-reversible "T(3, Z2)" --witness t3.json'
    )
    check.add_argument('property', choices=PROPERTIES)
    check.add_argument('ring', help='ring expression, e.g. "T(3, Z2)"')
    check.add_argument('--endo', help='endomorphism expression, e.g. swap')
    check.add_argument('--degree', type=int, help='polynomial degree bound')
    check.add_argument(
        '--witness', metavar='PATH',
        help='write the witness of a failing check to PATH (JSON), replay '
        'it with `ringlab witness replay PATH`'
    )
    check.set_defaults(func=cmd_check)

    idem = commands.add_parser('idempotents', help='list all idempotents')
    idem.add_argument('ring')
    idem.set_defaults(func=cmd_idempotents)

    witness = commands.add_parser('witness', help='witness files')
    actions = witness.add_subparsers(dest='action', metavar='action')
    actions.required = True
    replay = actions.add_parser('replay', help='replay a witness file')
    replay.add_argument('file')
    replay.set_defaults(func=cmd_replay)

    maximal = commands.add_parser(
        'maximal', help='is base a maximal i-reversible subring of ambient'
    )
    maximal.add_argument('base')
    maximal.add_argument('ambient')
    maximal.set_defaults(func=cmd_maximal)

    suite = commands.add_parser('suite', help='run the claim suite')
    suite.add_argument('--filter', help="anchor pattern, e.g. 'Thm-3.*'")
    suite.add_argument(
        '--controls', action='store_true', help='run the negative controls'
    )
    suite.add_argument(
        '--list', action='store_true', help='list claims without running'
    )
    suite.set_defaults(func=cmd_suite)

    iso = commands.add_parser('iso', help='verify a named isomorphism')
    iso.add_argument('source')
    iso.add_argument('target')
    iso.add_argument('map', choices=sorted(ISO_MAPS))
    iso.set_defaults(func=cmd_iso)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)

    flags: Dict[str, Any] = {
        'max_pairs': args.max_pairs,
        'max_degree': args.max_degree,
        'max_quotient_dim': args.max_quotient_dim,
        'max_modulus': args.max_modulus,
        'jobs': args.jobs,
        'deterministic': args.deterministic,
    }
    func: Callable[[argparse.Namespace, Settings], int] = args.func
    try:
        settings = load_settings(args.config, **flags)
        return func(args, settings)
    except BudgetExceeded as err:
        print(err, file=sys.stderr)
        return EXIT_ERROR
    except (RingLabError, FileNotFoundError, KeyError) as err:
        print('error: {}'.format(err), file=sys.stderr)
        return EXIT_ERROR


if __name__ == '__main__':
    sys.exit(main())
