"""Unit tests"""
from fractions import Fraction
from itertools import combinations
from random import Random
from typing import List

import pytest

from ssplocus.errors import DomainError, NotFoundError
from ssplocus.global_forms import InvariantProfile, determinant_from_classes, nearby_profile, profile_of, \
    realize_form, reciprocity_check
from ssplocus.padic_invariants import DiagonalForm, SquareClass, square_class
from ssplocus.rational import squarefree_part


def _hilbert_at_2(a: Fraction, b: Fraction) -> int:
    """(a, b)_2 = (-1)^(ε(u)ε(v) + α ω(v) + β ω(u)) for a = 2^α u and b = 2^β v."""
    def split(x: Fraction) -> List[int]:
        """Split x into (alpha, u) with x = 2^alpha u up to squares."""
        n, alpha = x.numerator * x.denominator, 0
        while n % 2 == 0:
            n //= 2
            alpha += 1
        return [alpha, n]

    def epsilon(u: int) -> int:
        """(u - 1) / 2 mod 2"""
        return ((u - 1) // 2) % 2

    def omega(u: int) -> int:
        """(u^2 - 1) / 8 mod 2"""
        return ((u * u - 1) // 8) % 2

    alpha, u = split(a)
    beta, v = split(b)
    return -1 if (epsilon(u) * epsilon(v) + alpha * omega(v) + beta * omega(u)) % 2 else 1


def _random_form(rng: Random, dim: int) -> DiagonalForm:
    entries = []
    while len(entries) < dim:
        a = Fraction(rng.randint(-60, 60), rng.choice((1, 1, 2, 3, 5, 9)))
        if a:
            entries.append(a)
    return DiagonalForm(tuple(entries))


class TestInvariantProfile:
    """Unit tests for InvariantProfile"""

    @staticmethod
    def test_normalize() -> None:
        """It should reduce det to its squarefree class and default eps at 2."""
        profile = InvariantProfile(2, (2, 0), 12, ((5, -1),))
        assert profile.det == 3
        assert profile.eps == ((2, 1), (5, -1))
        assert profile.eps_at(7) == 1
        assert profile.det_at(3).token() == "p*square"

    @staticmethod
    def test_reject() -> None:
        """It should reject inconsistent signatures and bad signs."""
        with pytest.raises(DomainError):
            InvariantProfile(3, (1, 1), 1, ())
        with pytest.raises(DomainError):
            InvariantProfile(3, (1, 2), -1, ())
        with pytest.raises(DomainError):
            InvariantProfile(2, (2, 0), 1, ((9, -1),))
        with pytest.raises(DomainError):
            InvariantProfile(2, (2, 0), 1, ((3, 0),))

    @staticmethod
    def test_agrees_with() -> None:
        """It should compare every place, implicit +1 entries included."""
        a = InvariantProfile(3, (3, 0), 1, ((3, 1),))
        b = InvariantProfile(3, (3, 0), 1, ())
        assert a.agrees_with(b)
        assert not a.with_eps(3, -1).agrees_with(b)


class TestDeterminantFromClasses:
    """Unit tests for determinant_from_classes()"""

    @staticmethod
    def test_least() -> None:
        """It should return the least squarefree determinant with the given local classes."""
        assert determinant_from_classes(1, {}) == 1
        assert determinant_from_classes(1, {3: SquareClass.from_token('nonsquare', 3)}) == 2
        assert determinant_from_classes(-1, {5: SquareClass.from_token('p*nonsquare', 5)}) == -10
        classes = {3: SquareClass.from_token('p*square', 3), 7: SquareClass.from_token('nonsquare', 7)}
        d = determinant_from_classes(1, classes)
        assert d == squarefree_part(d)
        assert all(square_class(d, p) == c for p, c in classes.items())

    @staticmethod
    def test_reject() -> None:
        """It should give up past the bound and refuse a bad sign."""
        with pytest.raises(NotFoundError) as e:
            determinant_from_classes(1, {3: SquareClass.from_token('p*square', 3)}, bound=2)
        assert e.value.code == 'undetermined-det'
        with pytest.raises(DomainError):
            determinant_from_classes(0, {})


class TestProfileOf:
    """Unit tests for profile_of() and reciprocity_check()"""

    @staticmethod
    def test_forced_eps_at_2() -> None:
        """The product formula should force the 2-adic Hasse invariant computed 2-adically."""
        rng = Random(20240917)
        for _ in range(1000):
            form = _random_form(rng, rng.randint(3, 7))
            expected = 1
            for a, b in combinations(form.entries, 2):
                expected *= _hilbert_at_2(a, b)
            profile = profile_of(form)
            assert profile.eps_at(2) == expected, form
            assert reciprocity_check(profile)
            assert profile.det == squarefree_part(form.det)

    @staticmethod
    def test_extra_primes() -> None:
        """It should record requested primes even when the form is a unit there."""
        profile = profile_of(DiagonalForm.of(1, 1, 1), [7])
        assert profile.primes == (2, 7)
        assert profile.eps_at(7) == 1

    @staticmethod
    def test_violation() -> None:
        """Flipping one sign should break reciprocity."""
        profile = profile_of(DiagonalForm.of(1, 3, 3))
        assert reciprocity_check(profile)
        assert not reciprocity_check(profile.with_eps(5, -1))


class TestNearbyProfile:
    """Unit tests for nearby_profile()"""

    @staticmethod
    def test_flip() -> None:
        """It should flip eps at p and at R and make the space definite."""
        profile = profile_of(DiagonalForm.of(1, -1, -1))
        nearby = nearby_profile(profile, 3)
        assert nearby.signature == (3, 0)
        assert nearby.eps_at(3) == -1
        assert nearby.eps_infinity == 1
        assert nearby.det == profile.det
        assert reciprocity_check(nearby)

    @staticmethod
    def test_reject() -> None:
        """It should name the failing hypothesis."""
        cases = [
            (DiagonalForm.of(1, 1, -1), 3, 'signature'),
            (DiagonalForm.of(1, -3, -3), 3, 'eps'),
            (DiagonalForm.of(1, -1, -5), 5, 'non-unit-det'),
        ]
        for form, p, code in cases:
            with pytest.raises(DomainError) as e:
                nearby_profile(profile_of(form), p)
            assert e.value.code == code


class TestRealizeForm:
    """Unit tests for realize_form()"""

    @staticmethod
    def test_nearby() -> None:
        """It should find the first form in (height, entries) order."""
        nearby = nearby_profile(profile_of(DiagonalForm.of(1, -1, -1)), 3)
        assert realize_form(nearby, 30) == DiagonalForm.of(1, 3, 3)
        nearby = nearby_profile(profile_of(DiagonalForm.of(1, 1, 1, -1, -1)), 3)
        assert realize_form(nearby, 30) == DiagonalForm.of(1, 1, 1, 3, 3)

    @staticmethod
    def test_round_trip() -> None:
        """The realized form should carry the requested profile."""
        rng = Random(7)
        for _ in range(20):
            dim = rng.randint(1, 4)
            entries = [rng.choice((1, 2, 3, 5, 6, 7, 10, 15)) * rng.choice((1, -1)) for _ in range(dim)]
            profile = profile_of(DiagonalForm.of(*entries))
            realized = realize_form(profile, 15)
            assert profile_of(realized, profile.primes[1:]).agrees_with(profile)

    @staticmethod
    def test_reject() -> None:
        """It should refuse profiles violating reciprocity and report exhausted searches."""
        with pytest.raises(DomainError) as e:
            realize_form(profile_of(DiagonalForm.of(1, 1, 1)).with_eps(3, -1), 30)
        assert e.value.code == 'reciprocity'
        nearby = nearby_profile(profile_of(DiagonalForm.of(1, -1, -1)), 3)
        with pytest.raises(NotFoundError):
            realize_form(nearby, 2)
