"""Table-driven finite fields F_{p^k} = F_p[x] / (f)."""
import logging
from functools import lru_cache
from itertools import product
from typing import Iterator, List, Optional, Sequence, Tuple

from ssplocus.errors import DomainError
from ssplocus.rational import check_odd_prime

log = logging.getLogger(__name__)

Polynomial = Tuple[int, ...]  # coefficients, constant term first


def _trim(a: List[int]) -> List[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod(a: Sequence[int], f: Sequence[int], p: int) -> List[int]:
    """Remainder of a modulo a monic f over F_p."""
    r = _trim([c % p for c in a])
    while len(r) >= len(f):
        lead, shift = r[-1], len(r) - len(f)
        for i, c in enumerate(f):
            r[shift + i] = (r[shift + i] - lead * c) % p
        _trim(r)
    return r


def _monic_polynomials(p: int, degree: int) -> Iterator[Polynomial]:
    for tail in product(range(p), repeat=degree):
        yield tuple(reversed(tail)) + (1,)


def is_irreducible(f: Polynomial, p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg(f)/2."""
    degree = len(f) - 1
    if degree < 1 or f[-1] != 1:
        return False
    for d in range(1, degree // 2 + 1):
        for g in _monic_polynomials(p, d):
            if not poly_mod(f, g, p):
                return False
    return True


def irreducible_polynomials(p: int, k: int) -> Iterator[Polynomial]:
    """Monic irreducibles of degree k, ordered by the integer whose base-p digits are the lower coefficients."""
    for c in range(p ** k):
        digits = tuple((c // p ** i) % p for i in range(k))
        f = digits + (1,)
        if is_irreducible(f, p):
            yield f


class FiniteField:
    """F_{p^k} with elements encoded as 0..q-1: the base-p digits of an element are its coefficients."""

    def __init__(self, p: int, k: int = 1, modulus: Optional[Sequence[int]] = None) -> None:
        check_odd_prime(p)
        if k < 1:
            raise DomainError(f"extension degree must be positive, not {k}", code='degree')
        self.p = p
        self.k = k
        self.q = p ** k
        if modulus is None:
            modulus = next(irreducible_polynomials(p, k))
        self.modulus: Polynomial = tuple(c % p for c in modulus)
        if len(self.modulus) != k + 1 or not is_irreducible(self.modulus, p):
            raise DomainError(f"{list(self.modulus)} is not a monic irreducible of degree {k} over F_{p}",
                              code='reducible')
        q = self.q
        coefficients = [self.to_coefficients(a) for a in range(q)]
        self._add = [[self.from_coefficients([(x + y) % p for x, y in zip(coefficients[a], coefficients[b])])
                      for b in range(q)] for a in range(q)]
        self._mul = [[self._multiply(coefficients[a], coefficients[b]) for b in range(q)] for a in range(q)]
        self._neg = [self.from_coefficients([-x % p for x in coefficients[a]]) for a in range(q)]
        self._inv = [0] * q
        for a in range(1, q):
            self._inv[a] = next(b for b in range(1, q) if self._mul[a][b] == 1)
        self._frob = [self.power(a, p) for a in range(q)]
        log.debug("built F_%d with modulus %s", q, list(self.modulus))

    def __repr__(self) -> str:
        return f"FiniteField(p={self.p}, k={self.k}, modulus={list(self.modulus)})"

    def to_coefficients(self, a: int) -> Tuple[int, ...]:
        """Base-p digits of an element, constant term first."""
        return tuple((a // self.p ** i) % self.p for i in range(self.k))

    def from_coefficients(self, coefficients: Sequence[int]) -> int:
        """The element with these coefficients, reduced mod p."""
        return sum((c % self.p) * self.p ** i for i, c in enumerate(coefficients))

    def _multiply(self, a: Sequence[int], b: Sequence[int]) -> int:
        product_ = [0] * (2 * self.k)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                product_[i + j] += x * y
        return self.from_coefficients(poly_mod(product_, self.modulus, self.p))

    def add(self, a: int, b: int) -> int:
        """a + b"""
        return self._add[a][b]

    def sub(self, a: int, b: int) -> int:
        """a - b"""
        return self._add[a][self._neg[b]]

    def neg(self, a: int) -> int:
        """-a"""
        return self._neg[a]

    def mul(self, a: int, b: int) -> int:
        """a * b"""
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        """1 / a; raises ZeroDivisionError for 0."""
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self._inv[a]

    def power(self, a: int, e: int) -> int:
        """a ** e for e >= 0"""
        result = 1
        for _ in range(e):
            result = self._mul[result][a]
        return result

    def frobenius(self, a: int) -> int:
        """a -> a^p"""
        return self._frob[a]

    def embed(self, c: int) -> int:
        """The image of an integer in the prime field."""
        return c % self.p


@lru_cache(maxsize=32)
def field(p: int, k: int, modulus: Optional[Tuple[int, ...]] = None) -> FiniteField:
    """F_{p^k}, shared between calls with the same modulus."""
    return FiniteField(p, k, modulus)
