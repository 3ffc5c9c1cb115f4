"""Argparse value types"""
import argparse
from fractions import Fraction
from typing import FrozenSet, Optional, Tuple, Union

from ssplocus.constant import REAL
from ssplocus.errors import DomainError
from ssplocus.padic_invariants import check_place
from ssplocus.rational import check_odd_prime, parse_rational


def rational(s: str) -> Fraction:
    """Interpret "num/den" or an integer as an exact rational."""
    try:
        return parse_rational(s)
    except DomainError as e:
        raise argparse.ArgumentTypeError(f"rational value expected, not {type(s)}: '{s}'") from e


def rational_list(s: str) -> Tuple[Fraction, ...]:
    """Comma-separated rationals, e.g. "1,-1,1/3"."""
    return tuple(rational(part) for part in s.split(','))


def odd_prime(s: str) -> int:
    """Interpret a string as an odd prime."""
    try:
        return check_odd_prime(int(s))
    except (ValueError, DomainError) as e:
        raise argparse.ArgumentTypeError(f"odd prime expected, not {type(s)}: '{s}'") from e


def place(s: str) -> Union[int, str]:
    """An odd prime, or R (also "real", "inf") for the real place."""
    if s.lower() in ('r', 'real', 'inf'):
        return REAL
    try:
        return check_place(int(s))
    except (ValueError, DomainError) as e:
        raise argparse.ArgumentTypeError(f"odd prime or '{REAL}' expected, not {type(s)}: '{s}'") from e


def sign(s: str) -> int:
    """Interpret a string as a sign +1 or -1."""
    if s in ('1', '+1', '+'):
        return 1
    if s in ('-1', '-'):
        return -1
    raise argparse.ArgumentTypeError(f"sign +1 or -1 expected, not {type(s)}: '{s}'")


def node_set(s: str) -> Optional[FrozenSet[int]]:
    """Comma-separated node numbers; "default" (None) or "" (the empty set)."""
    if s.lower() == 'default':
        return None
    if s.strip() == '':
        return frozenset()
    try:
        return frozenset(int(part) for part in s.split(','))
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"node list expected, not {type(s)}: '{s}'") from e
