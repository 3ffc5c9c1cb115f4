"""JSON codecs: rationals as "num/den", signs as ±1, sets sorted."""
from typing import Any, Dict, Iterable, List, Optional, Sequence

from ssplocus.affine_weyl import CoxeterDatum, NodeSet, WeylElement, from_word, label_of, length, reduced_word, \
    sort_key, t_of
from ssplocus.errors import DomainError
from ssplocus.finite_field import FiniteField
from ssplocus.finite_geometry import Subspace, coefficient_vectors
from ssplocus.global_forms import InvariantProfile, determinant_from_classes
from ssplocus.mass_formula import MassOutput
from ssplocus.padic_invariants import DiagonalForm, LocalInvariants, SquareClass
from ssplocus.rational import Rational, format_rational, parse_rational
from ssplocus.zp_lattices import JordanDecomposition, Matrix, VertexReport, as_matrix


def _expect(condition: bool, message: str) -> None:
    if not condition:
        raise DomainError(message, code='bad-document')


def rationals_to_json(values: Iterable[Rational]) -> List[str]:
    """Rationals as "num/den" strings."""
    return [format_rational(x) for x in values]


def form_to_json(form: DiagonalForm) -> List[str]:
    """A diagonal form as a JSON array."""
    return rationals_to_json(form.entries)


def form_from_json(document: Any) -> DiagonalForm:
    """Read a diagonal form from a JSON array."""
    _expect(isinstance(document, list), "a form is a JSON array of \"num/den\" strings")
    return DiagonalForm(tuple(parse_rational(str(x)) for x in document))


def matrix_to_json(matrix: Matrix) -> List[List[str]]:
    """A matrix as a JSON array of rows."""
    return [rationals_to_json(row) for row in matrix]


def matrix_from_json(document: Any) -> Matrix:
    """Read a matrix from a JSON array of rows."""
    _expect(isinstance(document, list) and all(isinstance(row, list) for row in document),
            "a Gram matrix is a JSON array of arrays of \"num/den\" strings")
    return as_matrix([[parse_rational(str(x)) for x in row] for row in document])


def square_class_to_json(value: SquareClass) -> str:
    """A square class as its token."""
    return value.token()


def local_invariants_to_json(invariants: LocalInvariants) -> Dict[str, Any]:
    """Local invariants as a JSON object."""
    document: Dict[str, Any] = {
        'place': invariants.place,
        'dim': invariants.dim,
        'det': square_class_to_json(invariants.det),
        'hasse': invariants.hasse,
    }
    if invariants.signature is not None:
        document['signature'] = list(invariants.signature)
    return document


def jordan_to_json(decomposition: JordanDecomposition) -> Dict[str, Any]:
    """Jordan blocks and the witness matrix."""
    return {
        'blocks': [{'scale': block.scale, 'gram': matrix_to_json(block.gram)} for block in decomposition.blocks],
        'witness': matrix_to_json(decomposition.witness),
    }


def vertex_report_to_json(report: VertexReport) -> Dict[str, Any]:
    """A vertex report as a JSON object."""
    return {
        'is_vertex': report.is_vertex,
        't': report.t,
        'quotient': report.quotient_kind,
        'quotient_form': None if report.quotient_form is None else list(report.quotient_form),
    }


def profile_to_json(profile: InvariantProfile) -> Dict[str, Any]:
    """A profile as a JSON object."""
    primes = {}
    for prime, (det, eps) in profile.finite.items():
        primes[str(prime)] = {'det': None if det is None else square_class_to_json(det), 'eps': eps}
    return {
        'dim': profile.dim,
        'signature': list(profile.signature),
        'det': format_rational(profile.det),
        'primes': primes,
    }


def profile_from_json(document: Any) -> InvariantProfile:
    """Read a profile.

    Without a "det" key the global determinant is the least squarefree integer
    of the sign the signature fixes whose class matches every listed odd prime.
    """
    _expect(isinstance(document, dict), "a profile is a JSON object")
    try:
        dim = int(document['dim'])
        r, s = (int(x) for x in document['signature'])
        primes = document.get('primes', {})
        eps = tuple((int(prime), int(entry['eps'])) for prime, entry in primes.items())
        tokens = {int(prime): entry.get('det') for prime, entry in primes.items()}
        given = parse_rational(str(document['det'])) if 'det' in document else None
    except (AttributeError, KeyError, TypeError, ValueError) as e:
        raise DomainError(f"malformed profile document: {e}", code='bad-document') from e
    classes = {prime: SquareClass.from_token(token, prime) for prime, token in tokens.items()
               if token is not None and prime != 2}
    if given is None:
        det = determinant_from_classes(-1 if s % 2 else 1, classes)
    else:
        det = given.numerator * given.denominator
    profile = InvariantProfile(dim, (r, s), det, eps)
    for prime, local in classes.items():
        _expect(profile.det_at(prime) == local,
                f"the determinant class at {prime} disagrees with the global determinant")
    return profile


def element_to_json(datum: CoxeterDatum, w: WeylElement, with_label: bool = False) -> Dict[str, Any]:
    """An element as its reduced word, component and length."""
    document: Dict[str, Any] = {'word': list(reduced_word(w)), 'omega': w.component, 'length': length(w)}
    if with_label:
        label: Optional[NodeSet] = label_of(datum, w)
        document['sigma'] = None if label is None else sorted(label)
        document['t'] = t_of(w)
    return document


def elements_to_json(datum: CoxeterDatum, elements: Iterable[WeylElement],
                     with_label: bool = False) -> List[Dict[str, Any]]:
    """Elements sorted by (length, word)."""
    return [element_to_json(datum, w, with_label) for w in sorted(elements, key=sort_key)]


def element_from_json(datum: CoxeterDatum, document: Any) -> WeylElement:
    """Read an element from its word and component."""
    _expect(isinstance(document, dict) and isinstance(document.get('word'), list),
            "an element is a JSON object with a \"word\" array")
    return from_word(datum.family, datum.m, (int(i) for i in document['word']), int(document.get('omega', 0)))


def node_sets_to_json(sets: Sequence[NodeSet]) -> List[List[int]]:
    """Node sets as sorted lists."""
    return [sorted(nodes) for nodes in sets]


def subspace_to_json(f: FiniteField, subspace: Subspace) -> List[List[List[int]]]:
    """Rows of a subspace as coefficient vectors."""
    return coefficient_vectors(f, subspace)


def mass_output_to_json(output: MassOutput) -> Dict[str, str]:
    """A mass as signed and absolute "num/den" strings."""
    return {'value': format_rational(output.value), 'abs_value': format_rational(output.abs_value)}
