"""Exact rational helpers: parsing, formatting and p-adic valuations."""
from fractions import Fraction
from functools import lru_cache
from typing import Union

from sympy import factorint, isprime

from ssplocus.errors import DomainError

Rational = Union[int, Fraction]


def to_fraction(x: Union[Rational, str]) -> Fraction:
    """Coerce an int, Fraction or "num/den" string to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return parse_rational(x)


def parse_rational(s: str) -> Fraction:
    """Parse "num/den" (or a bare integer) exactly."""
    try:
        return Fraction(s.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise DomainError(f"not a rational number: '{s}'", code='bad-rational') from e


def format_rational(x: Rational) -> str:
    """Format as "num/den", always with an explicit denominator."""
    x = to_fraction(x)
    return f"{x.numerator}/{x.denominator}"


@lru_cache(maxsize=1024)
def _is_odd_prime(p: int) -> bool:
    return p > 2 and bool(isprime(p))


def check_odd_prime(p: int) -> int:
    """Return `p` if it is an odd prime, else raise DomainError."""
    if not isinstance(p, int) or isinstance(p, bool) or not _is_odd_prime(p):
        raise DomainError(f"expected an odd prime, not {p!r}", code='not-odd-prime')
    return p


def _int_valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def valuation(x: Rational, p: int) -> int:
    """p-adic valuation of a nonzero rational."""
    x = to_fraction(x)
    if x == 0:
        raise DomainError("the valuation of 0 is undefined", code='zero')
    return _int_valuation(x.numerator, p) - _int_valuation(x.denominator, p)


def unit_part(x: Rational, p: int) -> Fraction:
    """x / p^v_p(x)"""
    x = to_fraction(x)
    return x / Fraction(p) ** valuation(x, p)


def unit_residue(x: Rational, p: int) -> int:
    """Residue mod p of the unit part of a nonzero rational."""
    u = unit_part(x, p)
    return u.numerator * pow(u.denominator, -1, p) % p


def squarefree_part(x: Rational) -> int:
    """The squarefree integer in the class of x in Q^x / Q^x2."""
    x = to_fraction(x)
    if x == 0:
        raise DomainError("0 has no square class", code='zero')
    n = x.numerator * x.denominator
    sign = -1 if n < 0 else 1
    core = 1
    for q, e in factorint(abs(n)).items():
        if e % 2:
            core *= q
    return sign * core


def odd_prime_support(x: Rational) -> frozenset:
    """Odd primes dividing the numerator or denominator of x."""
    x = to_fraction(x)
    primes = set(factorint(abs(x.numerator))) | set(factorint(x.denominator))
    return frozenset(q for q in primes if q > 2)
