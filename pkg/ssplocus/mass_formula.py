"""Bernoulli numbers, ζ(1-2r), L(1-m, χ) and the closed-form superspecial mass."""
import logging
import threading
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import comb
from typing import List, Optional

from sympy import factorint, jacobi_symbol

from ssplocus.errors import DomainError
from ssplocus.rational import Rational, check_odd_prime, to_fraction

log = logging.getLogger(__name__)

_bernoulli_cache: List[Fraction] = [Fraction(1)]
_bernoulli_lock = threading.Lock()


def bernoulli(n: int) -> Fraction:
    """B_n from sum_{j<=n} C(n+1, j) B_j = 0, with B_1 = -1/2."""
    if n < 0:
        raise DomainError(f"Bernoulli numbers need n >= 0, not {n}", code='negative')
    if n < len(_bernoulli_cache):
        return _bernoulli_cache[n]
    with _bernoulli_lock:
        while len(_bernoulli_cache) <= n:
            m = len(_bernoulli_cache)
            total = sum((comb(m + 1, j) * b for j, b in enumerate(_bernoulli_cache)), Fraction(0))
            _bernoulli_cache.append(-total / (m + 1))
    return _bernoulli_cache[n]


def bernoulli_triangle(n: int) -> Fraction:
    """B_n by the Akiyama-Tanigawa triangle, converted to B_1 = -1/2."""
    if n < 0:
        raise DomainError(f"Bernoulli numbers need n >= 0, not {n}", code='negative')
    row = [Fraction(0)] * (n + 1)
    for m in range(n + 1):
        row[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            row[j - 1] = j * (row[j - 1] - row[j])
    return -row[0] if n == 1 else row[0]


def bernoulli_polynomial(n: int, x: Rational) -> Fraction:
    """B_n(x) = sum_j C(n, j) B_j x^(n-j)"""
    x = to_fraction(x)
    return sum((comb(n, j) * bernoulli(j) * x ** (n - j) for j in range(n + 1)), Fraction(0))


def zeta_neg(r: int) -> Fraction:
    """ζ(1 - 2r) = -B_2r / 2r"""
    if r < 1:
        raise DomainError(f"zeta_neg needs r >= 1, not {r}", code='negative')
    return -bernoulli(2 * r) / (2 * r)


def _is_squarefree(n: int) -> bool:
    return all(e == 1 for e in factorint(abs(n)).values())


def is_fundamental_discriminant(d: int) -> bool:
    """Whether d is the discriminant of a quadratic field."""
    if d in (0, 1):
        return False
    if d % 4 == 1:
        return _is_squarefree(d)
    if d % 4 == 0:
        return (d // 4) % 4 in (2, 3) and _is_squarefree(d // 4)
    return False


def kronecker(d: int, n: int) -> int:
    """Kronecker symbol (d|n) for n >= 1."""
    if n < 1:
        raise DomainError(f"kronecker needs n >= 1, not {n}", code='negative')
    result = 1
    while n % 2 == 0:
        n //= 2
        if d % 2 == 0:
            return 0
        result *= 1 if d % 8 in (1, 7) else -1
    if n == 1:
        return result
    return result * int(jacobi_symbol(d % n, n))


def generalized_bernoulli(m: int, disc: int) -> Fraction:
    """B_{m,χ} = f^(m-1) sum_{a=1}^{f} χ(a) B_m(a/f) with f = |disc| and χ = (disc|.)"""
    if not is_fundamental_discriminant(disc):
        raise DomainError(f"{disc} is not a fundamental discriminant", code='not-fundamental')
    f = abs(disc)
    total = sum((kronecker(disc, a) * bernoulli_polynomial(m, Fraction(a, f)) for a in range(1, f + 1)),
                Fraction(0))
    return Fraction(f) ** (m - 1) * total


def l_neg(m: int, disc: int) -> Fraction:
    """L(1 - m, χ_disc) = -B_{m,χ} / m"""
    if m < 1:
        raise DomainError(f"l_neg needs m >= 1, not {m}", code='negative')
    return -generalized_bernoulli(m, disc) / m


class EvenVariant(str, Enum):
    """Local factor used for even n."""
    AS_PRINTED = 'as_printed'
    CORRECTED = 'corrected'


@dataclass(frozen=True)
class MassInput:
    """Parameters of the mass formula."""
    n: int
    p: int
    vol: Fraction = Fraction(1)
    disc: Optional[int] = None
    variant: EvenVariant = EvenVariant.CORRECTED

    def __post_init__(self) -> None:
        if self.n < 3:
            raise DomainError(f"the mass formula needs n >= 3, not {self.n}", code='small-dimension')
        check_odd_prime(self.p)
        vol = to_fraction(self.vol)
        if vol <= 0:
            raise DomainError(f"Vol(U) must be positive, not {vol}", code='bad-volume')
        object.__setattr__(self, 'vol', vol)
        object.__setattr__(self, 'variant', EvenVariant(self.variant))
        if self.n % 2 == 0 and self.disc is None:
            raise DomainError("even n needs the discriminant of χ", code='missing-disc')
        if self.disc is not None and not is_fundamental_discriminant(self.disc):
            raise DomainError(f"{self.disc} is not a fundamental discriminant", code='not-fundamental')


@dataclass(frozen=True)
class MassOutput:
    """Signed mass and its absolute value."""
    value: Fraction
    abs_value: Fraction


def _even_local_factor(m: int, p: int, variant: EvenVariant) -> Fraction:
    if variant == EvenVariant.AS_PRINTED:
        return Fraction((p ** (m - 1) + 1) * p ** (m + 1), 2 * (p + 1))
    return Fraction((p ** (m - 1) + 1) * (p ** m + 1), 2 * (p + 1))


def mass(data: MassInput) -> MassOutput:
    """Vol(U) prod_{r=1}^{m} ζ(1-2r) [L(1-m, χ)] 2^(1-m) times the p-local factor, with m = floor(n/2)."""
    n, p = data.n, data.p
    m = n // 2
    value = data.vol / Fraction(2) ** (m - 1)
    for r in range(1, m + 1):
        value *= zeta_neg(r)
    if n % 2:
        value *= Fraction(p ** (2 * m) - 1, 2 * (p + 1))
    elif data.disc is None:
        raise DomainError("even n needs the discriminant of χ", code='missing-disc')
    else:
        value *= l_neg(m, data.disc) * _even_local_factor(m, p, data.variant)
    log.debug("mass(n=%d, p=%d, vol=%s, variant=%s) = %s", n, p, data.vol, data.variant.value, value)
    return MassOutput(value, abs(value))


def mass_variant_ratio(n: int, p: int) -> Fraction:
    """as_printed / corrected for even n = 2m: p^(m+1) / (p^m + 1)"""
    if n % 2 or n < 4:
        raise DomainError(f"the variants differ only for even n >= 4, not {n}", code='odd-dimension')
    m = n // 2
    return Fraction(p ** (m + 1), p ** m + 1)


def deuring(p: int) -> Fraction:
    """(p - 1) / 24"""
    return Fraction(check_odd_prime(p) - 1, 24)
