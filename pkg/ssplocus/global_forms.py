"""Local-invariant profiles of rational quadratic forms, Hilbert reciprocity and the nearby space."""
import logging
from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

from sympy import isprime

from ssplocus.constant import DET_SEARCH_BOUND
from ssplocus.errors import DomainError, NotFoundError
from ssplocus.padic_invariants import DiagonalForm, SquareClass, hasse_invariant, signature, square_class
from ssplocus.rational import check_odd_prime, odd_prime_support, squarefree_part

log = logging.getLogger(__name__)


def _sign_product(signs: Iterable[int]) -> int:
    result = 1
    for s in signs:
        result *= s
    return result


@dataclass(frozen=True)
class InvariantProfile:
    """Local invariants of a rational quadratic space at every place.

    `det` is the squarefree integer in the global determinant class, so the
    local determinant is known at every prime. `eps` lists Hasse invariants at
    finitely many primes, 2 included; every other prime has eps = +1. The
    entry at 2 is never computed 2-adically: profile_of sets it to the value
    the product formula forces.
    """
    dim: int
    signature: Tuple[int, int]
    det: int
    eps: Tuple[Tuple[int, int], ...]

    def __post_init__(self) -> None:
        r, s = self.signature
        if r < 0 or s < 0 or r + s != self.dim or self.dim < 1:
            raise DomainError(f"signature {self.signature} does not match dimension {self.dim}", code='signature')
        if self.det == 0:
            raise DomainError("the determinant class must be nonzero", code='zero')
        if (self.det < 0) != (s % 2 == 1):
            raise DomainError(f"determinant {self.det} has the wrong sign for signature {self.signature}",
                              code='signature')
        eps = dict(self.eps)
        eps.setdefault(2, 1)
        for prime, sign in eps.items():
            if sign not in (1, -1) or not isprime(prime):
                raise DomainError(f"bad local invariant ({prime}, {sign})", code='bad-eps')
        object.__setattr__(self, 'det', squarefree_part(self.det))
        object.__setattr__(self, 'eps', tuple(sorted(eps.items())))

    @property
    def primes(self) -> Tuple[int, ...]:
        """Primes with an explicit eps entry."""
        return tuple(prime for prime, _ in self.eps)

    @property
    def eps_infinity(self) -> int:
        """Hasse invariant at R, fixed by the signature."""
        s = self.signature[1]
        return -1 if (s * (s - 1) // 2) % 2 else 1

    def eps_at(self, prime: int) -> int:
        """Hasse invariant at a prime, +1 when not listed."""
        return dict(self.eps).get(prime, 1)

    def det_at(self, p: int) -> SquareClass:
        """Local determinant class at an odd prime."""
        return square_class(Fraction(self.det), check_odd_prime(p))

    @property
    def finite(self) -> Dict[int, Tuple[Optional[SquareClass], int]]:
        """prime -> (det class, eps); the det class at 2 is not modelled."""
        return {prime: (None if prime == 2 else self.det_at(prime), sign) for prime, sign in self.eps}

    def with_eps(self, prime: int, sign: int) -> 'InvariantProfile':
        """A copy with eps at `prime` replaced."""
        eps = dict(self.eps)
        eps[prime] = sign
        return replace(self, eps=tuple(eps.items()))

    def agrees_with(self, other: 'InvariantProfile') -> bool:
        """Same local invariants at every place."""
        if (self.dim, self.signature, self.det) != (other.dim, other.signature, other.det):
            return False
        return all(self.eps_at(q) == other.eps_at(q) for q in set(self.primes) | set(other.primes))


def determinant_from_classes(sign: int, classes: Dict[int, SquareClass], bound: int = DET_SEARCH_BOUND) -> int:
    """Least squarefree d = sign * a with a <= bound and the given determinant class at each odd prime."""
    if sign not in (1, -1):
        raise DomainError(f"the sign of a determinant is +1 or -1, not {sign}", code='bad-sign')
    for a in range(1, bound + 1):
        if squarefree_part(a) != a:
            continue
        if all(square_class(Fraction(sign * a), check_odd_prime(p)) == c for p, c in classes.items()):
            log.debug("determinant %d fits the classes at %s", sign * a, sorted(classes))
            return sign * a
    raise NotFoundError(f"no squarefree determinant of size <= {bound} fits the classes at {sorted(classes)}",
                        code='undetermined-det')


def profile_of(form: DiagonalForm, extra_primes: Iterable[int] = ()) -> InvariantProfile:
    """Invariants of a diagonal form at R, at every odd prime dividing an entry, and at 2.

    An odd prime dividing no numerator or denominator sees only units, and a
    form with unit entries at odd p has eps = +1, so those primes are omitted.
    """
    primes = set(check_odd_prime(q) for q in extra_primes)
    for a in form.entries:
        primes |= odd_prime_support(a)
    eps = {q: hasse_invariant(form, q) for q in sorted(primes)}
    r, s = signature(form)
    eps_infinity = -1 if (s * (s - 1) // 2) % 2 else 1
    eps[2] = eps_infinity * _sign_product(eps.values())
    return InvariantProfile(form.dim, (r, s), squarefree_part(form.det), tuple(eps.items()))


def reciprocity_check(profile: InvariantProfile) -> bool:
    """Hilbert reciprocity: the product of eps over all places is +1."""
    return profile.eps_infinity * _sign_product(sign for _, sign in profile.eps) == 1


def nearby_profile(profile: InvariantProfile, p: int) -> InvariantProfile:
    """The profile of V': eps flipped at p and at R, positive definite, the same determinant."""
    p = check_odd_prime(p)
    n = profile.dim
    if profile.signature != (n - 2, 2):
        raise DomainError(f"the nearby space needs signature ({n - 2}, 2), not {profile.signature}",
                          code='signature')
    if profile.eps_at(p) != 1:
        raise DomainError(f"the nearby space needs eps = +1 at {p}", code='eps')
    if not profile.det_at(p).is_unit:
        raise DomainError(f"the nearby space needs a unit determinant at {p}", code='non-unit-det')
    nearby = replace(profile.with_eps(p, -1), signature=(n, 0))
    log.debug("nearby profile at %d: %s", p, nearby)
    return nearby


def _candidates(profile: InvariantProfile, height: int) -> Iterator[Tuple[int, ...]]:
    """Sorted diagonal candidates of exact height with squarefree entries supported on the profile's primes."""
    allowed = set(profile.primes) | odd_prime_support(Fraction(profile.det))
    magnitudes = [a for a in range(1, height + 1)
                  if squarefree_part(a) == a and odd_prime_support(Fraction(a)) <= allowed]
    r, s = profile.signature
    found: List[Tuple[int, ...]] = []
    for positive in combinations_with_replacement(magnitudes, r):
        for negative in combinations_with_replacement(magnitudes, s):
            if max(positive + negative) == height:
                found.append(positive + tuple(-a for a in reversed(negative)))
    return iter(sorted(found))


def realize_form(profile: InvariantProfile, bound: int) -> DiagonalForm:
    """First diagonal form, in (height, entries) order, whose profile agrees with `profile`."""
    if not reciprocity_check(profile):
        raise DomainError("the profile violates Hilbert reciprocity", code='reciprocity')
    if bound < 1:
        raise DomainError(f"the search bound must be positive, not {bound}", code='bound')
    for height in range(1, bound + 1):
        for entries in _candidates(profile, height):
            det = 1
            for a in entries:
                det *= a
            if squarefree_part(det) != profile.det:
                continue
            form = DiagonalForm.of(*entries)
            if profile_of(form, profile.primes[1:]).agrees_with(profile):
                log.debug("realized profile at height %d by %s", height, entries)
                return form
    raise NotFoundError(f"no diagonal form of height <= {bound} realizes the profile", code='not-found')
