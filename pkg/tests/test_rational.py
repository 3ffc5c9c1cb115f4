"""Unit tests"""
from fractions import Fraction

import pytest

from ssplocus.errors import DomainError
from ssplocus.rational import check_odd_prime, format_rational, odd_prime_support, parse_rational, \
    squarefree_part, unit_part, unit_residue, valuation


class TestParseRational:
    """Unit tests for parse_rational() and format_rational()"""

    @staticmethod
    def test_parse() -> None:
        """It should parse integers and "num/den" strings exactly."""
        assert parse_rational("3") == Fraction(3)
        assert parse_rational("-6/4") == Fraction(-3, 2)
        assert parse_rational(" 1/3 ") == Fraction(1, 3)

    @staticmethod
    def test_reject() -> None:
        """It should reject text and a zero denominator."""
        for s in ("x", "1/0", "", "1//2"):
            with pytest.raises(DomainError) as e:
                parse_rational(s)
            assert e.value.code == 'bad-rational'

    @staticmethod
    def test_format() -> None:
        """It should always write the denominator."""
        assert format_rational(5) == "5/1"
        assert format_rational(Fraction(-2, 6)) == "-1/3"
        assert format_rational(0) == "0/1"


class TestCheckOddPrime:
    """Unit tests for check_odd_prime()"""

    @staticmethod
    def test_odd_primes() -> None:
        """It should return odd primes unchanged."""
        for p in (3, 5, 7, 101, 7919):
            assert check_odd_prime(p) == p

    @staticmethod
    def test_reject() -> None:
        """It should reject 2, composites, units and booleans."""
        for p in (2, 1, 0, -3, 9, 91, True):
            with pytest.raises(DomainError):
                check_odd_prime(p)


class TestValuation:
    """Unit tests for valuation() and friends"""

    @staticmethod
    def test_valuation() -> None:
        """It should count p in the numerator minus p in the denominator."""
        assert valuation(Fraction(18), 3) == 2
        assert valuation(Fraction(2, 27), 3) == -3
        assert valuation(7, 3) == 0

    @staticmethod
    def test_zero() -> None:
        """It should refuse the valuation of zero."""
        with pytest.raises(DomainError):
            valuation(0, 3)

    @staticmethod
    def test_unit_part() -> None:
        """It should strip the power of p and reduce the unit mod p."""
        assert unit_part(Fraction(-45, 2), 3) == Fraction(-5, 2)
        # -5/2 = -5 * 2^-1 = -5 * 2 = -10 = 2 mod 3
        assert unit_residue(Fraction(-45, 2), 3) == 2


class TestSquarefreePart:
    """Unit tests for squarefree_part() and odd_prime_support()"""

    @staticmethod
    def test_square_class() -> None:
        """It should map a rational to the squarefree integer in its class."""
        assert squarefree_part(12) == 3
        assert squarefree_part(Fraction(-1, 8)) == -2
        assert squarefree_part(Fraction(4, 9)) == 1

    @staticmethod
    def test_support() -> None:
        """It should list odd primes of numerator and denominator."""
        assert odd_prime_support(Fraction(10, 21)) == frozenset({3, 5, 7})
        assert odd_prime_support(8) == frozenset()
