"""Unit tests"""
from fractions import Fraction
from itertools import product
from random import Random
from typing import List

import pytest

from ssplocus.constant import REAL
from ssplocus.errors import DomainError
from ssplocus.padic_invariants import DiagonalForm, LocalInvariants, SquareClass, diagonalize, \
    has_rational_isotropic_line, hasse_invariant, hilbert_symbol, is_isometric_local, least_nonsquare, \
    local_invariants, orientation_field, signature, solvable_oracle, square_class

_grid = [Fraction(x) for x in (1, -1, 2, 3, -3, 5, 6, 7, 9, 18)] + [Fraction(1, 3), Fraction(-2, 15)]


def _random_unimodular(rng: Random, n: int) -> List[List[int]]:
    """Product of random elementary integer matrices."""
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(2 * n + 2):
        i, j = rng.sample(range(n), 2)
        c = rng.choice((-2, -1, 1, 2))
        u[i] = [x + c * y for x, y in zip(u[i], u[j])]
        if rng.random() < 0.3:
            u[i], u[j] = u[j], u[i]
    return u


class TestDiagonalForm:
    """Unit tests for DiagonalForm"""

    @staticmethod
    def test_coerce() -> None:
        """It should coerce entries to fractions."""
        form = DiagonalForm.of(1, "-1/3", Fraction(5))
        assert form.entries == (Fraction(1), Fraction(-1, 3), Fraction(5))
        assert form.dim == 3
        assert form.det == Fraction(-5, 3)

    @staticmethod
    def test_reject() -> None:
        """It should reject empty forms and zero entries."""
        with pytest.raises(DomainError):
            DiagonalForm(())
        with pytest.raises(DomainError):
            DiagonalForm.of(1, 0)


class TestSquareClass:
    """Unit tests for square_class() and SquareClass"""

    @staticmethod
    def test_odd_prime() -> None:
        """It should record the valuation parity and the Legendre class of the unit part."""
        assert square_class(1, 3).token() == "square"
        assert square_class(2, 3).token() == "nonsquare"
        assert square_class(6, 3).token() == "p*nonsquare"
        assert square_class(Fraction(1, 3), 3).token() == "p*square"
        assert square_class(9, 3) == square_class(1, 3)

    @staticmethod
    def test_real() -> None:
        """It should record the sign at R."""
        assert square_class(Fraction(-1, 7), REAL).token() == "negative"
        assert square_class(3, REAL).token() == "positive"

    @staticmethod
    def test_token() -> None:
        """It should recover a class from its token and pick the least representative."""
        for token in ("square", "nonsquare", "p*square", "p*nonsquare"):
            c = SquareClass.from_token(token, 7)
            assert c.token() == token
            assert square_class(c.representative(), 7) == c
        assert SquareClass.from_token("p*nonsquare", 7).representative() == Fraction(21)
        with pytest.raises(DomainError):
            SquareClass.from_token("p*positive", REAL)
        with pytest.raises(DomainError):
            SquareClass.from_token("cube", 7)

    @staticmethod
    def test_least_nonsquare() -> None:
        """It should find the least quadratic nonresidue."""
        assert least_nonsquare(3) == 2
        assert least_nonsquare(7) == 3
        assert least_nonsquare(17) == 3


class TestHilbertSymbol:
    """Unit tests for hilbert_symbol()"""

    @staticmethod
    def test_values() -> None:
        """It should match known symbols."""
        assert hilbert_symbol(1, 7, 5) == 1
        assert hilbert_symbol(3, 3, 3) == -1
        assert hilbert_symbol(2, 3, 3) == -1
        assert hilbert_symbol(2, 5, 3) == 1
        assert hilbert_symbol(5, 5, 5) == 1
        assert hilbert_symbol(-1, -1, REAL) == -1
        assert hilbert_symbol(-1, 2, REAL) == 1

    @staticmethod
    def test_symmetric_bimultiplicative() -> None:
        """It should be symmetric, bimultiplicative, and trivial on (a, -a)."""
        for p in (3, 5, 7, REAL):
            for a, b, c in product(_grid[:6], repeat=3):
                assert hilbert_symbol(a, b, p) == hilbert_symbol(b, a, p)
                assert hilbert_symbol(a, b * c, p) == hilbert_symbol(a, b, p) * hilbert_symbol(a, c, p)
            for a in _grid:
                assert hilbert_symbol(a, -a, p) == 1

    @staticmethod
    def test_norm_identity() -> None:
        """(a, 1 - a) should be +1 at every place."""
        for p in (3, 5, 7, REAL):
            for a in _grid + [Fraction(-1, 2), Fraction(4, 3), Fraction(10, 7)]:
                if a != 1:
                    assert hilbert_symbol(a, 1 - a, p) == 1, (a, p)

    @staticmethod
    def test_reject() -> None:
        """It should reject zero arguments and the prime 2."""
        with pytest.raises(DomainError):
            hilbert_symbol(0, 1, 3)
        with pytest.raises(DomainError):
            hilbert_symbol(1, 1, 2)


class TestSolvableOracle:
    """Unit tests for solvable_oracle()"""

    @staticmethod
    def test_agrees_with_formula() -> None:
        """It should agree with the closed formula on a grid of classes."""
        for p in (3, 5, 7):
            for a, b in product(_grid, repeat=2):
                assert solvable_oracle(a, b, p) == hilbert_symbol(a, b, p), (a, b, p)

    @staticmethod
    def test_signed_grid() -> None:
        """It should agree on {±1, ±2, ±3, ±5, ±p, ±2p}^2."""
        for p in (3, 5, 7):
            values = [s * x for x in (1, 2, 3, 5, p, 2 * p) for s in (1, -1)]
            for a, b in product(values, repeat=2):
                assert solvable_oracle(a, b, p) == hilbert_symbol(a, b, p), (a, b, p)

    @staticmethod
    def test_depth() -> None:
        """It should refuse a depth below 3."""
        with pytest.raises(DomainError):
            solvable_oracle(1, 1, 3, depth=2)


class TestLocalInvariants:
    """Unit tests for local_invariants() and is_isometric_local()"""

    @staticmethod
    def test_hasse() -> None:
        """It should multiply the pairwise symbols."""
        assert hasse_invariant(DiagonalForm.of(5), 5) == 1
        assert hasse_invariant(DiagonalForm.of(1, 3, 3), 3) == -1
        assert hasse_invariant(DiagonalForm.of(1, 1, 1), 3) == 1

    @staticmethod
    def test_real() -> None:
        """It should report the signature at R."""
        invariants = local_invariants(DiagonalForm.of(1, -1, -1), REAL)
        assert invariants == LocalInvariants(REAL, 3, square_class(1, REAL), -1, (1, 2))
        assert signature(DiagonalForm.of(-2, 3, -5, 7)) == (2, 2)

    @staticmethod
    def test_isometric() -> None:
        """It should decide local isometry by dim, det and Hasse invariant."""
        assert is_isometric_local(DiagonalForm.of(1, 1), DiagonalForm.of(2, 2), 3)
        assert not is_isometric_local(DiagonalForm.of(1, 1), DiagonalForm.of(3, 3), 3)
        assert not is_isometric_local(DiagonalForm.of(1, 1), DiagonalForm.of(1, 2), 3)
        assert is_isometric_local(DiagonalForm.of(1, 2), DiagonalForm.of(3, 6), REAL)

    @staticmethod
    def test_hasse_symmetries() -> None:
        """eps should not see the order of the entries or a square factor on one entry."""
        rng = Random(30)
        for _ in range(60):
            entries = [rng.choice(_grid) for _ in range(rng.randint(2, 5))]
            form = DiagonalForm.of(*entries)
            shuffled = list(entries)
            rng.shuffle(shuffled)
            i = rng.randrange(len(entries))
            c = Fraction(rng.choice((1, -1, 2, 3, 5)), rng.choice((1, 3, 7)))
            scaled = entries[:i] + [entries[i] * c * c] + entries[i + 1:]
            for p in (3, 5, 7, REAL):
                assert hasse_invariant(DiagonalForm.of(*shuffled), p) == hasse_invariant(form, p)
                assert hasse_invariant(DiagonalForm.of(*scaled), p) == hasse_invariant(form, p)

    @staticmethod
    def test_real_hasse_follows_signature() -> None:
        """The real Hasse invariant should be (-1)^(s(s-1)/2) for every signature."""
        for s in range(6):
            form = DiagonalForm.of(*([1] * (5 - s) + [-1] * s))
            invariants = local_invariants(form, REAL)
            assert invariants.signature == (5 - s, s)
            assert invariants.hasse == (-1) ** (s * (s - 1) // 2)


class TestDiagonalize:
    """Unit tests for diagonalize()"""

    @staticmethod
    def test_hyperbolic_plane() -> None:
        """It should diagonalize a matrix with a zero diagonal."""
        form = diagonalize([[0, 1], [1, 0]])
        assert form.det == -1
        assert is_isometric_local(form, DiagonalForm.of(1, -1), 3)

    @staticmethod
    def test_congruence() -> None:
        """It should preserve the determinant and every local invariant."""
        gram = [[2, 1, 0], [1, 2, 1], [0, 1, 2]]
        form = diagonalize(gram)
        assert form.det == 4
        for p in (3, 5, REAL):
            assert local_invariants(form, p).det == square_class(4, p)

    @staticmethod
    def test_basis_change() -> None:
        """Re-diagonalizing U^T D U for a random integral U of det ±1 should keep every local invariant."""
        rng = Random(31)
        for _ in range(40):
            n = rng.randint(2, 4)
            entries = [rng.choice(_grid) for _ in range(n)]
            u = _random_unimodular(rng, n)
            gram = [[sum(u[k][i] * entries[k] * u[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
            form = diagonalize(gram)
            original = DiagonalForm.of(*entries)
            for p in (3, 5, 7, REAL):
                assert local_invariants(form, p) == local_invariants(original, p), (entries, u, p)

    @staticmethod
    def test_singular() -> None:
        """It should reject singular and nonsymmetric matrices."""
        with pytest.raises(DomainError):
            diagonalize([[1, 1], [1, 1]])
        with pytest.raises(DomainError):
            diagonalize([[1, 2], [0, 1]])


class TestOrientation:
    """Unit tests for orientation_field() and has_rational_isotropic_line()"""

    @staticmethod
    def test_plane() -> None:
        """A plane should have an isotropic line iff -det is a square."""
        assert orientation_field(DiagonalForm.of(1, -1)) == 1
        assert has_rational_isotropic_line(DiagonalForm.of(1, 1), 5)
        assert not has_rational_isotropic_line(DiagonalForm.of(1, 1), 3)
        assert not has_rational_isotropic_line(DiagonalForm.of(1, 1), REAL)
        assert has_rational_isotropic_line(DiagonalForm.of(1, -1), REAL)

    @staticmethod
    def test_not_a_plane() -> None:
        """It should reject a form which is not a plane."""
        with pytest.raises(DomainError):
            orientation_field(DiagonalForm.of(1, 1, 1))
