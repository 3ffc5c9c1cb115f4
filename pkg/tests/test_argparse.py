"""Unit tests"""
import argparse
from fractions import Fraction

import pytest

from ssplocus.argparse import node_set, odd_prime, place, rational, rational_list, sign
from ssplocus.constant import REAL


class TestRational:
    """Unit tests for rational() and rational_list()"""

    @staticmethod
    def test_rational() -> None:
        """It should read integers and fractions exactly."""
        assert rational("7") == 7
        assert rational("-2/6") == Fraction(-1, 3)
        assert rational_list("1,-1,1/3") == (Fraction(1), Fraction(-1), Fraction(1, 3))

    @staticmethod
    def test_reject() -> None:
        """It should raise ArgumentTypeError on malformed input."""
        for s in ("", "x", "1/0", "1/2/3"):
            with pytest.raises(argparse.ArgumentTypeError):
                rational(s)
        with pytest.raises(argparse.ArgumentTypeError):
            rational_list("1,,2")


class TestPrimesAndPlaces:
    """Unit tests for odd_prime() and place()"""

    @staticmethod
    def test_odd_prime() -> None:
        """It should accept odd primes only."""
        assert odd_prime("3") == 3
        for s in ("2", "9", "-3", "three"):
            with pytest.raises(argparse.ArgumentTypeError):
                odd_prime(s)

    @staticmethod
    def test_place() -> None:
        """It should map the spellings of the real place to R."""
        for s in ("R", "r", "real", "inf"):
            assert place(s) == REAL
        assert place("5") == 5
        with pytest.raises(argparse.ArgumentTypeError):
            place("4")


class TestSignAndNodeSet:
    """Unit tests for sign() and node_set()"""

    @staticmethod
    def test_sign() -> None:
        """It should read +1 and -1 in their usual spellings."""
        assert [sign(s) for s in ("1", "+1", "+", "-1", "-")] == [1, 1, 1, -1, -1]
        with pytest.raises(argparse.ArgumentTypeError):
            sign("0")

    @staticmethod
    def test_node_set() -> None:
        """It should distinguish the default from the empty set."""
        assert node_set("default") is None
        assert node_set("") == frozenset()
        assert node_set("0,2,2") == frozenset({0, 2})
        with pytest.raises(argparse.ArgumentTypeError):
            node_set("0,a")


class TestArgparse:
    """Unit tests for the types applied to argparse"""

    @staticmethod
    def test_parser() -> None:
        """It should provide converted values when applied to argparse."""
        parser = argparse.ArgumentParser()
        parser.add_argument("--form", type=rational_list)
        parser.add_argument("--p", type=place)
        parser.add_argument("--K", type=node_set)
        args = parser.parse_args(["--form", "1,1/2", "--p", "R", "--K", "1,3"])
        assert args.form == (Fraction(1), Fraction(1, 2))
        assert args.p == REAL
        assert args.K == frozenset({1, 3})

    @staticmethod
    def test_parser_error() -> None:
        """It should turn a bad value into a usage error."""
        parser = argparse.ArgumentParser()
        parser.add_argument("--p", type=odd_prime)
        with pytest.raises(SystemExit):
            parser.parse_args(["--p", "4"])
