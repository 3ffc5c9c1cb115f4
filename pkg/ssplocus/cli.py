"""Command line interface: one subcommand per module, JSON on stdout."""
import argparse
import json
import logging
import re
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence

from ssplocus import affine_weyl, finite_geometry, global_forms, mass_formula, padic_invariants, zp_lattices
from ssplocus import serialize
from ssplocus.argparse import node_set, odd_prime, place, rational, rational_list, sign
from ssplocus.errors import DomainError, ResourceError
from ssplocus.filesystem import read_document
from ssplocus.finite_field import field

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_RESOURCE = 3

_NEGATIVE_VALUE = re.compile(r'^-\d[\d/,.+-]*$')
_SWITCHES = frozenset({'--verbose', '--describe'})

SCHEMAS: Dict[str, Dict[str, Any]] = {
    'invariants': {
        'input': 'a diagonal form ["num/den", ...] via --in, or --form',
        'actions': {
            'symbol': '--a --b --p -> {"symbol": ±1}',
            'oracle': '--a --b --p [--depth] -> {"symbol": ±1}',
            'class': '--a --p -> {"class": "square"|"nonsquare"|"p*square"|"p*nonsquare"|"positive"|"negative"}',
            'hasse': '--form --p -> {"hasse": ±1}',
            'local': '--form --p -> {"place", "dim", "det", "hasse", ["signature"]}',
            'isometric': '--form --form2 --p -> {"isometric": bool}',
        },
    },
    'lattice': {
        'input': 'Gram matrix as [["num/den", ...], ...] via --in, or a diagonal via --form',
        'actions': {
            'jordan': '-> {"blocks": [{"scale", "gram"}], "witness"}',
            'dual': '-> {"valuations": [int], "dual_gram"}',
            'vertex': '-> {"is_vertex", "t", "quotient": "anisotropic"|"split"|null, "quotient_form", '
                      '"self_dual", "almost_self_dual"}',
            'tmax': '--n --det square|nonsquare --p -> {"t_max": int}',
            'construct': '--n --det --eps --kind --p -> {"gram"}',
        },
    },
    'global': {
        'input': 'a profile {"dim", "signature", ["det"], "primes": {"3": {"det", "eps"}}} via --in, or --form',
        'actions': {
            'profile': '--form [--p ...] -> profile',
            'reciprocity': '-> {"reciprocal": bool}',
            'nearby': '--p -> profile',
            'realize': '[--bound] -> {"form": ["num/den", ...]}',
        },
    },
    'eo': {
        'actions': {
            'adm': '-> [{"word", "omega", "length"}] sorted by (length, word)',
            'eo': '-> [{"word", "omega", "length", "sigma", "t"}]',
            'list-cox': '-> [{"word", "omega", "length", "sigma", "t"}]',
            'jset': '-> [[node, ...]]',
            'table': '-> [{"sigma", "word", "omega", "length", "t"}]',
        },
    },
    'dl': {
        'actions': {
            'count': '-> {"points": int, "orbits": [int]}',
            'points': '-> {"points": [[[coefficients]]], "orbits": [int]}',
            'orientations': '-> {"lines": [[[coefficients]]]}',
        },
    },
    'mass': {
        'actions': {
            'value': '--n --p [--vol] [--disc] [--variant] -> {"value", "abs_value"}',
            'bernoulli': '--index -> {"value"}',
            'zeta': '--index r -> {"value": ζ(1-2r)}',
            'l': '--index m --disc -> {"value": L(1-m, χ)}',
            'deuring': '--p -> {"value"}',
        },
    },
}


def _require(args: argparse.Namespace, *names: str) -> None:
    missing = [name for name in names if getattr(args, name, None) is None]
    if missing:
        flags = ', '.join('--' + name.replace('_', '-') for name in missing)
        raise DomainError(f"{args.command} {args.action} needs {flags}", code='missing-argument')


def _form(args: argparse.Namespace, name: str = 'form') -> padic_invariants.DiagonalForm:
    _require(args, name)
    return padic_invariants.DiagonalForm(getattr(args, name))


def _form_input(args: argparse.Namespace) -> padic_invariants.DiagonalForm:
    if args.form is None and args.input is not None:
        return serialize.form_from_json(read_document(args.input))
    return _form(args)


def _invariants(args: argparse.Namespace) -> Any:
    action = args.action
    if action == 'class':
        _require(args, 'a', 'p')
        return {'class': padic_invariants.square_class(args.a, args.p).token()}
    if action in ('symbol', 'oracle'):
        _require(args, 'a', 'b', 'p')
        if action == 'oracle':
            return {'symbol': padic_invariants.solvable_oracle(args.a, args.b, args.p, args.depth)}
        return {'symbol': padic_invariants.hilbert_symbol(args.a, args.b, args.p)}
    _require(args, 'p')
    if action == 'hasse':
        return {'hasse': padic_invariants.hasse_invariant(_form_input(args), args.p)}
    if action == 'local':
        return serialize.local_invariants_to_json(padic_invariants.local_invariants(_form_input(args), args.p))
    return {'isometric': padic_invariants.is_isometric_local(_form_input(args), _form(args, 'form2'), args.p)}


def _lattice_input(args: argparse.Namespace) -> zp_lattices.GramLattice:
    _require(args, 'p')
    if args.input is not None:
        return zp_lattices.GramLattice(serialize.matrix_from_json(read_document(args.input)), args.p)
    return zp_lattices.GramLattice.diagonal(_form(args).entries, args.p)


def _lattice(args: argparse.Namespace) -> Any:
    action = args.action
    if action == 'tmax':
        _require(args, 'n', 'det', 'p')
        return {'t_max': zp_lattices.t_max(args.n, zp_lattices.unit_class(args.det, args.p))}
    if action == 'construct':
        _require(args, 'n', 'det', 'eps', 'kind', 'p')
        lat = zp_lattices.construct_lattice(args.p, args.n, zp_lattices.unit_class(args.det, args.p), args.eps,
                                            zp_lattices.LatticeKind(args.kind))
        return {'gram': serialize.matrix_to_json(lat.gram)}
    lat = _lattice_input(args)
    if action == 'jordan':
        return serialize.jordan_to_json(zp_lattices.jordan_decompose(lat))
    if action == 'dual':
        return {'valuations': list(zp_lattices.dual_quotient(lat)),
                'dual_gram': serialize.matrix_to_json(zp_lattices.dual_gram(lat).gram)}
    document = serialize.vertex_report_to_json(zp_lattices.vertex_report(lat))
    document['self_dual'] = zp_lattices.is_self_dual(lat)
    document['almost_self_dual'] = zp_lattices.is_almost_self_dual(lat)
    return document


def _profile_input(args: argparse.Namespace) -> global_forms.InvariantProfile:
    if args.input is not None:
        return serialize.profile_from_json(read_document(args.input))
    return global_forms.profile_of(_form(args))


def _global(args: argparse.Namespace) -> Any:
    action = args.action
    if action == 'profile':
        extra = [] if args.p is None else [args.p]
        return serialize.profile_to_json(global_forms.profile_of(_form(args), extra))
    profile = _profile_input(args)
    if action == 'reciprocity':
        return {'reciprocal': global_forms.reciprocity_check(profile)}
    if action == 'nearby':
        _require(args, 'p')
        return serialize.profile_to_json(global_forms.nearby_profile(profile, args.p))
    return {'form': serialize.form_to_json(global_forms.realize_form(profile, args.bound))}


def _eo(args: argparse.Namespace) -> Any:
    _require(args, 'family', 'm')
    datum = affine_weyl.build_datum(affine_weyl.Family(args.family), args.m, affine_weyl.SigmaChoice(args.sigma),
                                    args.parahoric)
    action = args.action
    if action == 'adm':
        return serialize.elements_to_json(datum, affine_weyl.adm_set(datum))
    if action == 'eo':
        return serialize.elements_to_json(datum, affine_weyl.eo_set(datum), with_label=True)
    if action == 'list-cox':
        return serialize.elements_to_json(datum, affine_weyl.eo_cox_set(datum), with_label=True)
    if action == 'jset':
        return serialize.node_sets_to_json(affine_weyl.j_set(datum))
    rows = []
    for label, w in affine_weyl.table_rows(datum):
        row = serialize.element_to_json(datum, w)
        row['sigma'] = sorted(label)
        row['t'] = affine_weyl.t_of(w)
        rows.append(row)
    return rows


def _dl(args: argparse.Namespace) -> Any:
    _require(args, 't', 'kind', 'p')
    modulus = None if args.modulus is None else tuple(int(c) for c in args.modulus.split(','))
    if args.action == 'orientations':
        space = finite_geometry.build_space(args.t, finite_geometry.SpaceKind(args.kind), args.p)
        f = field(args.p, 2, modulus)
        return {'lines': [serialize.subspace_to_json(f, line) for line in finite_geometry.orientations(space, modulus)]}
    points = finite_geometry.s_lambda_points(args.t, finite_geometry.SpaceKind(args.kind), args.p, args.k, modulus)
    space = finite_geometry.build_space(args.t, finite_geometry.SpaceKind(args.kind), args.p)
    orbits = finite_geometry.orbit_profile(finite_geometry.frobenius_orbits(points, space, args.k, modulus))
    if args.action == 'count':
        return {'points': len(points), 'orbits': orbits}
    f = field(args.p, args.k, modulus)
    return {'points': [serialize.subspace_to_json(f, point) for point in points], 'orbits': orbits}


def _mass(args: argparse.Namespace) -> Any:
    action = args.action
    if action == 'bernoulli':
        _require(args, 'index')
        value = mass_formula.bernoulli(args.index)
    elif action == 'zeta':
        _require(args, 'index')
        value = mass_formula.zeta_neg(args.index)
    elif action == 'l':
        _require(args, 'index', 'disc')
        value = mass_formula.l_neg(args.index, args.disc)
    elif action == 'deuring':
        _require(args, 'p')
        value = mass_formula.deuring(args.p)
    else:
        _require(args, 'n', 'p')
        output = mass_formula.mass(mass_formula.MassInput(args.n, args.p, args.vol, args.disc,
                                                          mass_formula.EvenVariant(args.variant)))
        return serialize.mass_output_to_json(output)
    return {'value': serialize.rationals_to_json([value])[0]}


HANDLERS: Dict[str, Callable[[argparse.Namespace], Any]] = {
    'invariants': _invariants,
    'lattice': _lattice,
    'global': _global,
    'eo': _eo,
    'dl': _dl,
    'mass': _mass,
}


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser with one subparser per module."""
    parser = argparse.ArgumentParser(prog='ssplocus', description=__doc__)
    parser.add_argument('--verbose', '-v', action='store_true', help="log DEBUG messages to stderr")
    parser.add_argument('--describe', action='store_true', help="print the JSON schema of a subcommand")
    commands = parser.add_subparsers(dest='command')

    def subcommand(name: str, default: Optional[str] = None, reads_input: bool = False) -> argparse.ArgumentParser:
        """Add a subparser with its action choices and the common flags."""
        sub = commands.add_parser(name)
        actions = list(SCHEMAS[name]['actions'])
        sub.add_argument('action', nargs='?', default=default, choices=actions)
        sub.add_argument('--describe', action='store_true', default=argparse.SUPPRESS,
                         help="print the JSON schema of this subcommand")
        if reads_input:
            sub.add_argument('--in', dest='input', help="read the input document from a file, or '-' for stdin")
        return sub

    invariants = subcommand('invariants', reads_input=True)
    invariants.add_argument('--a', type=rational)
    invariants.add_argument('--b', type=rational)
    invariants.add_argument('--p', type=place)
    invariants.add_argument('--depth', type=int, default=3)
    invariants.add_argument('--form', type=rational_list)
    invariants.add_argument('--form2', type=rational_list)

    lattice = subcommand('lattice', reads_input=True)
    lattice.add_argument('--p', type=odd_prime)
    lattice.add_argument('--form', type=rational_list)
    lattice.add_argument('--n', type=int)
    lattice.add_argument('--det', choices=[padic_invariants.SQUARE, padic_invariants.NONSQUARE])
    lattice.add_argument('--eps', type=sign)
    lattice.add_argument('--kind', choices=[kind.value for kind in zp_lattices.LatticeKind])

    global_ = subcommand('global', reads_input=True)
    global_.add_argument('--form', type=rational_list)
    global_.add_argument('--p', type=odd_prime)
    global_.add_argument('--bound', type=int, default=30)

    eo = subcommand('eo')
    eo.add_argument('--family', choices=[family.value for family in affine_weyl.Family])
    eo.add_argument('--m', type=int)
    eo.add_argument('--sigma', choices=[choice.value for choice in affine_weyl.SigmaChoice],
                    default=affine_weyl.SigmaChoice.IDENTITY.value)
    eo.add_argument('--K', dest='parahoric', type=node_set, default=None,
                    help="comma-separated nodes, or 'default' for all but 0")

    dl = subcommand('dl')
    dl.add_argument('--t', type=int)
    dl.add_argument('--kind', choices=[kind.value for kind in finite_geometry.SpaceKind])
    dl.add_argument('--p', type=odd_prime)
    dl.add_argument('--k', type=int, default=1)
    dl.add_argument('--modulus', help="comma-separated coefficients of a monic irreducible, constant term first")

    mass = subcommand('mass', default='value')
    mass.add_argument('--n', type=int)
    mass.add_argument('--p', type=odd_prime)
    mass.add_argument('--vol', type=rational, default=1)
    mass.add_argument('--disc', type=int)
    mass.add_argument('--variant', choices=[variant.value for variant in mass_formula.EvenVariant],
                      default=mass_formula.EvenVariant.CORRECTED.value)
    mass.add_argument('--index', type=int)
    return parser


def attach_negative_values(argv: Sequence[str]) -> List[str]:
    """Join `--flag -1,2` into `--flag=-1,2` so that negative values reach their flag."""
    joined: List[str] = []
    for token in argv:
        previous = joined[-1] if joined else ''
        if _NEGATIVE_VALUE.match(token) and previous.startswith('--') and '=' not in previous \
                and previous not in _SWITCHES:
            joined[-1] = f"{previous}={token}"
        else:
            joined.append(token)
    return joined


def _emit(document: Any) -> None:
    print(json.dumps(document, sort_keys=True))


def _error(e: Exception) -> Dict[str, Any]:
    return {'error': type(e).__name__, 'code': getattr(e, 'code', None), 'message': str(e)}


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse `argv`, dispatch, print one JSON document; return the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(attach_negative_values(sys.argv[1:] if argv is None else argv))
    except SystemExit as e:
        return int(e.code or 0)
    logging.basicConfig(stream=sys.stderr, level=logging.DEBUG if args.verbose else logging.WARNING,
                        format='%(levelname)s %(name)s: %(message)s')
    if args.describe:
        _emit(SCHEMAS if args.command is None else {args.command: SCHEMAS[args.command]})
        return EXIT_OK
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_DOMAIN
    log.debug("running %s %s", args.command, args.action)
    try:
        if args.action is None:
            raise DomainError(f"{args.command} needs an action: {', '.join(SCHEMAS[args.command]['actions'])}",
                              code='missing-action')
        document = HANDLERS[args.command](args)
    except ResourceError as e:
        _emit(_error(e))
        return EXIT_RESOURCE
    except (DomainError, OSError, json.JSONDecodeError) as e:
        _emit(_error(e))
        return EXIT_DOMAIN
    _emit(document)
    return EXIT_OK


def main() -> None:
    """Console script entry point."""
    sys.exit(run())
