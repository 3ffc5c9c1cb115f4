"""Square classes, Hilbert symbols and Hasse-Witt invariants over Q_p (p odd) and R."""
import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import List, Optional, Sequence, Tuple, Union

from sympy import legendre_symbol

from ssplocus.constant import REAL
from ssplocus.errors import ConsistencyError, DomainError, InconclusiveError
from ssplocus.rational import Rational, check_odd_prime, to_fraction, unit_residue, valuation

log = logging.getLogger(__name__)

Place = Union[int, str]

SQUARE = 'square'
NONSQUARE = 'nonsquare'
POSITIVE = 'positive'
NEGATIVE = 'negative'


def check_place(place: Place) -> Place:
    """Return `place` if it is the real place or an odd prime."""
    if place == REAL:
        return REAL
    if isinstance(place, int):
        return check_odd_prime(place)
    raise DomainError(f"expected an odd prime or '{REAL}', not {place!r}", code='bad-place')


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a|p) for p an odd prime."""
    return int(legendre_symbol(a % p, p))


def least_nonsquare(p: int) -> int:
    """The least positive quadratic nonresidue mod p."""
    return next(c for c in range(2, p) if legendre(c, p) == -1)


@dataclass(frozen=True)
class DiagonalForm:
    """A diagonal quadratic form a_1 x_1^2 + ... + a_n x_n^2 with nonzero rational coefficients."""
    entries: Tuple[Fraction, ...]

    def __post_init__(self) -> None:
        entries = tuple(to_fraction(a) for a in self.entries)
        if not entries:
            raise DomainError("a diagonal form needs at least one entry", code='empty-form')
        if any(a == 0 for a in entries):
            raise DomainError("diagonal entries must be nonzero", code='zero-entry')
        object.__setattr__(self, 'entries', entries)

    @classmethod
    def of(cls, *entries: Union[Rational, str]) -> 'DiagonalForm':
        """Build a form from its diagonal entries."""
        return cls(tuple(to_fraction(a) for a in entries))

    @property
    def dim(self) -> int:
        """Number of variables."""
        return len(self.entries)

    @property
    def det(self) -> Fraction:
        """Product of the entries."""
        result = Fraction(1)
        for a in self.entries:
            result *= a
        return result


@dataclass(frozen=True)
class SquareClass:
    """An element of Q_p^x / Q_p^x2 (p odd) or R^x / R^x2.

    At an odd prime: the parity of the valuation and the Legendre class of the
    unit part. At R: parity 0 and the sign.
    """
    place: Place
    parity: int
    residue: str

    @property
    def is_unit(self) -> bool:
        """Whether the class has even valuation."""
        return self.parity == 0

    def representative(self) -> Fraction:
        """Least positive rational of the form p^parity * u in this class (u = 1 or the least nonsquare)."""
        if self.place == REAL:
            return Fraction(1 if self.residue == POSITIVE else -1)
        p = int(self.place)
        unit = 1 if self.residue == SQUARE else least_nonsquare(p)
        return Fraction(p ** self.parity * unit)

    def token(self) -> str:
        """"square", "nonsquare", "p*square" or "p*nonsquare"; the sign at R."""
        return self.residue if self.parity == 0 else f"p*{self.residue}"

    @classmethod
    def from_token(cls, token: str, place: Place) -> 'SquareClass':
        """Parse a token such as "p*nonsquare" at `place`."""
        place = check_place(place)
        parity, residue = (1, token[2:]) if token.startswith('p*') else (0, token)
        allowed = (POSITIVE, NEGATIVE) if place == REAL else (SQUARE, NONSQUARE)
        if residue not in allowed or (place == REAL and parity):
            raise DomainError(f"not a square class token at {place}: '{token}'", code='bad-square-class')
        return cls(place, parity, residue)


def square_class(a: Rational, place: Place) -> SquareClass:
    """Square class of a nonzero rational at an odd prime or at R."""
    a = to_fraction(a)
    if a == 0:
        raise DomainError("0 has no square class", code='zero')
    place = check_place(place)
    if place == REAL:
        return SquareClass(REAL, 0, POSITIVE if a > 0 else NEGATIVE)
    p = int(place)
    residue = SQUARE if legendre(unit_residue(a, p), p) == 1 else NONSQUARE
    return SquareClass(p, valuation(a, p) % 2, residue)


def hilbert_symbol(a: Rational, b: Rational, place: Place) -> int:
    """(a, b) at an odd prime or at R.

    At odd p with a = p^α u and b = p^β v:
    (a, b)_p = (-1)^(αβ(p-1)/2) (u|p)^β (v|p)^α.
    """
    a, b = to_fraction(a), to_fraction(b)
    if a == 0 or b == 0:
        raise DomainError("Hilbert symbol arguments must be nonzero", code='zero')
    place = check_place(place)
    if place == REAL:
        return -1 if a < 0 and b < 0 else 1
    p = int(place)
    alpha, beta = valuation(a, p), valuation(b, p)
    sign = -1 if (alpha * beta * (p - 1) // 2) % 2 else 1
    if beta % 2:
        sign *= legendre(unit_residue(a, p), p)
    if alpha % 2:
        sign *= legendre(unit_residue(b, p), p)
    return sign


def _integral_representative(a: Fraction, p: int) -> int:
    """An integer in the square class of a with p-adic valuation 0 or 1."""
    n = a.numerator * a.denominator
    while n % (p * p) == 0:
        n //= p * p
    return n


def _int_valuation_capped(n: int, p: int, cap: int) -> int:
    if n == 0:
        return cap
    v = 0
    while n % p == 0 and v < cap:
        n //= p
        v += 1
    return v


def solvable_oracle(a: Rational, b: Rational, p: int, depth: int = 3) -> int:
    """Decide whether z^2 = a x^2 + b y^2 has a nontrivial solution over Q_p by search.

    Primitive solutions are grown one p-adic digit at a time up to p^depth.
    A solution v mod p^k is certified by Hensel's lemma when some partial
    derivative has valuation e with 2e + 1 <= k. If no primitive solution
    survives at some level, there is none over Q_p.
    """
    a, b = to_fraction(a), to_fraction(b)
    if a == 0 or b == 0:
        raise DomainError("oracle arguments must be nonzero", code='zero')
    p = check_odd_prime(p)
    if depth < 3:
        raise DomainError(f"oracle depth must be at least 3, not {depth}", code='depth')
    big_a, big_b = _integral_representative(a, p), _integral_representative(b, p)

    def f(x: int, y: int, z: int) -> int:
        """a x^2 + b y^2 - z^2"""
        return big_a * x * x + big_b * y * y - z * z

    def certified(v: Tuple[int, ...], k: int) -> bool:
        """Whether Hensel's lemma lifts v from mod p^k."""
        x, y, z = v
        partials = (2 * big_a * x, 2 * big_b * y, 2 * z)
        e = min(_int_valuation_capped(d, p, k) for d in partials)
        return 2 * e + 1 <= k

    # Projective representatives mod p: the first coordinate which is a unit is 1.
    stack: List[Tuple[Tuple[int, ...], int, int]] = []
    for lead in range(3):
        for tail in product(range(p), repeat=2 - lead):
            v = (0,) * lead + (1,) + tail
            if f(*v) % p == 0:
                stack.append((v, lead, 1))
    reached_depth = False
    while stack:
        v, lead, k = stack.pop()
        if certified(v, k):
            log.debug("oracle: %s certified mod %d^%d for (%s, %s)", v, p, k, a, b)
            return 1
        if k == depth:
            reached_depth = True
            continue
        modulus = p ** (k + 1)
        step = p ** k
        for w in product(range(p), repeat=2):
            digits = list(w)
            digits.insert(lead, 0)
            u = tuple(c + step * d for c, d in zip(v, digits))
            if f(*u) % modulus == 0:
                stack.append((u, lead, k + 1))
    if reached_depth:
        raise InconclusiveError(f"depth {depth} cannot certify solvability of ({a}, {b}) at {p}")
    return -1


def hasse_invariant(form: DiagonalForm, place: Place) -> int:
    """Product over i < j of the Hilbert symbols (a_i, a_j); +1 in dimension 1."""
    result = 1
    for a, b in combinations(form.entries, 2):
        result *= hilbert_symbol(a, b, place)
    return result


def signature(form: DiagonalForm) -> Tuple[int, int]:
    """(number of positive entries, number of negative entries)"""
    s = sum(1 for a in form.entries if a < 0)
    return form.dim - s, s


@dataclass(frozen=True)
class LocalInvariants:
    """Complete isometry invariants of a form at one place."""
    place: Place
    dim: int
    det: SquareClass
    hasse: int
    signature: Optional[Tuple[int, int]] = None


def local_invariants(form: DiagonalForm, place: Place) -> LocalInvariants:
    """dim, det class and Hasse-Witt invariant; at R also the signature."""
    place = check_place(place)
    det = square_class(form.det, place)
    hasse = hasse_invariant(form, place)
    if place != REAL:
        return LocalInvariants(place, form.dim, det, hasse)
    r, s = signature(form)
    expected = -1 if (s * (s - 1) // 2) % 2 else 1
    if hasse != expected:
        raise ConsistencyError(f"real Hasse invariant {hasse} disagrees with signature ({r}, {s})")
    return LocalInvariants(place, form.dim, det, hasse, (r, s))


def is_isometric_local(f1: DiagonalForm, f2: DiagonalForm, place: Place) -> bool:
    """Whether two forms are isometric over Q_p (resp. R)."""
    return local_invariants(f1, place) == local_invariants(f2, place)


def diagonalize(gram: Sequence[Sequence[Rational]]) -> DiagonalForm:
    """Diagonalize a nonsingular symmetric rational matrix by congruence over Q."""
    m = [[to_fraction(x) for x in row] for row in gram]
    n = len(m)
    if any(len(row) != n for row in m) or any(m[i][j] != m[j][i] for i in range(n) for j in range(n)):
        raise DomainError("a Gram matrix must be square and symmetric", code='not-symmetric')
    entries = []
    for i in range(n):
        if m[i][i] == 0:
            j = next((j for j in range(i + 1, n) if m[j][j] != 0), None)
            if j is not None:
                m[i], m[j] = m[j], m[i]
                for row in m:
                    row[i], row[j] = row[j], row[i]
            else:
                j = next((j for j in range(i + 1, n) if m[i][j] != 0), None)
                if j is None:
                    raise DomainError("the Gram matrix is singular", code='singular')
                # e_i += e_j, so the new diagonal entry is 2[e_i, e_j]
                m[i] = [x + y for x, y in zip(m[i], m[j])]
                for row in m:
                    row[i] += row[j]
        pivot = m[i][i]
        entries.append(pivot)
        for j in range(i + 1, n):
            c = m[j][i] / pivot
            if c:
                m[j] = [x - c * y for x, y in zip(m[j], m[i])]
                for row in m:
                    row[j] -= c * row[i]
    return DiagonalForm(tuple(entries))


def orientation_field(form: DiagonalForm) -> Fraction:
    """For a plane V, the d = -det(V) with K = F[t]/(t^2 + det V) = F(sqrt d)."""
    if form.dim != 2:
        raise DomainError("orientations are defined for planes only", code='not-a-plane')
    return -form.det


def has_rational_isotropic_line(form: DiagonalForm, place: Place) -> bool:
    """A plane is isotropic over Q_p (resp. R) iff -det is a square there."""
    d = square_class(orientation_field(form), place)
    return d.parity == 0 and d.residue in (SQUARE, POSITIVE)

