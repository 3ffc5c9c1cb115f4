"""Z_p-lattices given by Gram matrices: duals, Jordan splittings, vertex types and self-dual constructions.

Convention: a Gram matrix G defines Q(x) = x^T G x, so the bilinear form is
[x, y] = 2 x^T G y. As p is odd, 2 is a unit and the factor never changes a
dual lattice.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import product
from typing import Any, List, Optional, Sequence, Tuple

import sympy

from ssplocus.errors import ConsistencyError, DomainError
from ssplocus.padic_invariants import (NONSQUARE, SQUARE, DiagonalForm, SquareClass, diagonalize, least_nonsquare,
                                       local_invariants, square_class)
from ssplocus.rational import Rational, check_odd_prime, to_fraction, unit_residue, valuation

log = logging.getLogger(__name__)

Matrix = Tuple[Tuple[Fraction, ...], ...]

ANISOTROPIC = 'anisotropic'
SPLIT = 'split'


def as_matrix(rows: Sequence[Sequence[Rational]]) -> Matrix:
    """Convert rows of rationals to a Matrix."""
    return tuple(tuple(to_fraction(x) for x in row) for row in rows)


def diagonal_matrix(entries: Sequence[Rational]) -> Matrix:
    """Diagonal matrix with these entries."""
    n = len(entries)
    return tuple(tuple(to_fraction(entries[i]) if i == j else Fraction(0) for j in range(n)) for i in range(n))


def identity_matrix(n: int) -> Matrix:
    """n × n identity"""
    return diagonal_matrix([1] * n)


def transpose(a: Matrix) -> Matrix:
    """Transpose of a matrix."""
    return tuple(zip(*a))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    """Matrix product a b."""
    columns = transpose(b)
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in columns) for row in a)


def _to_sympy(a: Matrix) -> Any:
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in a])


def _from_sympy(value: Any) -> Fraction:
    rational = sympy.Rational(value)
    return Fraction(int(rational.p), int(rational.q))


def determinant(a: Matrix) -> Fraction:
    """Exact determinant."""
    return _from_sympy(_to_sympy(a).det())


def inverse(a: Matrix) -> Matrix:
    """Exact inverse of a nonsingular rational matrix."""
    m = _to_sympy(a)
    if m.det() == 0:
        raise DomainError("the matrix is singular", code='singular')
    inv = m.inv()
    return tuple(tuple(_from_sympy(inv[i, j]) for j in range(inv.cols)) for i in range(inv.rows))


@dataclass(frozen=True)
class GramLattice:
    """A Z_p-lattice, given by the Gram matrix of one of its bases."""
    gram: Matrix
    p: int

    def __post_init__(self) -> None:
        gram = as_matrix(self.gram)
        n = len(gram)
        if n == 0 or any(len(row) != n for row in gram):
            raise DomainError("a Gram matrix must be square and nonempty", code='not-square')
        if any(gram[i][j] != gram[j][i] for i in range(n) for j in range(i + 1, n)):
            raise DomainError("a Gram matrix must be symmetric", code='not-symmetric')
        check_odd_prime(self.p)
        if determinant(gram) == 0:
            raise DomainError("the Gram matrix is singular", code='singular')
        object.__setattr__(self, 'gram', gram)

    @classmethod
    def diagonal(cls, entries: Sequence[Rational], p: int) -> 'GramLattice':
        """Lattice with a diagonal Gram matrix."""
        return cls(diagonal_matrix(entries), p)

    @property
    def n(self) -> int:
        """Rank of the lattice."""
        return len(self.gram)


@dataclass(frozen=True)
class JordanBlock:
    """p^scale times a Gram block of unit determinant."""
    scale: int
    gram: Matrix


@dataclass(frozen=True)
class JordanDecomposition:
    """Jordan splitting with its base change: witness^T * gram * witness == block_form()."""
    p: int
    blocks: Tuple[JordanBlock, ...]
    witness: Matrix

    def block_form(self) -> Matrix:
        """diag(p^s_1 B_1, p^s_2 B_2, ...)"""
        entries: List[Fraction] = []
        for block in self.blocks:
            entries.extend(Fraction(self.p) ** block.scale * block.gram[i][i] for i in range(len(block.gram)))
        return diagonal_matrix(entries)

    def scales(self) -> Tuple[int, ...]:
        """Scales of the Jordan blocks, in order."""
        return tuple(block.scale for block in self.blocks)


def _valuation_or_none(x: Fraction, p: int) -> Optional[int]:
    return None if x == 0 else valuation(x, p)


def _swap(m: List[List[Fraction]], u: List[List[Fraction]], i: int, j: int) -> None:
    m[i], m[j] = m[j], m[i]
    for row in m:
        row[i], row[j] = row[j], row[i]
    for row in u:
        row[i], row[j] = row[j], row[i]


def jordan_decompose(lat: GramLattice) -> JordanDecomposition:
    """Diagonalize the Gram matrix over Z_p, grouping the diagonal by scale.

    Pivots are chosen of minimal valuation, so every elimination multiplier is
    p-integral and the witness stays in GL_n(Z_p).
    """
    p, n = lat.p, lat.n
    m = [list(row) for row in lat.gram]
    u = [list(row) for row in identity_matrix(n)]
    for i in range(n):
        best: Optional[Tuple[int, int, int]] = None
        for r in range(i, n):
            for c in range(r, n):
                v = _valuation_or_none(m[r][c], p)
                # prefer diagonal entries on ties
                if v is not None and (best is None or (v, r != c) < (best[0], best[1] != best[2])):
                    best = (v, r, c)
        if best is None:
            raise DomainError("the Gram matrix is singular", code='singular')
        _, r, c = best
        if r != c:
            # e_r += e_c: the new diagonal entry has the minimal valuation
            m[r] = [x + y for x, y in zip(m[r], m[c])]
            for row in m:
                row[r] += row[c]
            for row in u:
                row[r] += row[c]
        if r != i:
            _swap(m, u, i, r)
        pivot = m[i][i]
        for j in range(i + 1, n):
            q = m[j][i] / pivot
            if q:
                m[j] = [x - q * y for x, y in zip(m[j], m[i])]
                for row in m:
                    row[j] -= q * row[i]
                for row in u:
                    row[j] -= q * row[i]
    diagonal = [m[i][i] for i in range(n)]
    blocks: List[JordanBlock] = []
    start = 0
    while start < n:
        scale = valuation(diagonal[start], p)
        end = start
        while end < n and valuation(diagonal[end], p) == scale:
            end += 1
        unit = diagonal_matrix([d / Fraction(p) ** scale for d in diagonal[start:end]])
        blocks.append(JordanBlock(scale, unit))
        start = end
    log.debug("jordan scales at p=%d: %s", p, [b.scale for b in blocks])
    return JordanDecomposition(p, tuple(blocks), tuple(tuple(row) for row in u))


def dual_quotient(lat: GramLattice) -> Tuple[int, ...]:
    """Valuations of the elementary divisors of the Gram matrix, from a Smith form over Z_(p)."""
    p = lat.p
    m = [list(row) for row in lat.gram]
    n = len(m)
    valuations = []
    for i in range(n):
        best: Optional[Tuple[int, int, int]] = None
        for r in range(i, n):
            for c in range(i, n):
                v = _valuation_or_none(m[r][c], p)
                if v is not None and (best is None or v < best[0]):
                    best = (v, r, c)
        if best is None:
            raise DomainError("the Gram matrix is singular", code='singular')
        v, r, c = best
        m[i], m[r] = m[r], m[i]
        for row in m:
            row[i], row[c] = row[c], row[i]
        pivot = m[i][i]
        for r in range(i + 1, n):
            q = m[r][i] / pivot
            if q:
                m[r] = [x - q * y for x, y in zip(m[r], m[i])]
        for c in range(i + 1, n):
            q = m[i][c] / pivot
            if q:
                for row in m:
                    row[c] -= q * row[i]
        valuations.append(v)
    return tuple(sorted(valuations))


def dual_gram(lat: GramLattice) -> GramLattice:
    """Gram matrix of the dual lattice in the dual basis."""
    return GramLattice(inverse(lat.gram), lat.p)


def ambient_form(lat: GramLattice) -> DiagonalForm:
    """The quadratic space Q(x) = x^T G x spanned by the lattice, diagonalized over Q."""
    return diagonalize(lat.gram)


def _is_isotropic_mod_p(coefficients: Sequence[int], p: int) -> bool:
    t = len(coefficients)
    for x in product(range(p), repeat=t):
        if any(x) and sum(c * xi * xi for c, xi in zip(coefficients, x)) % p == 0:
            return True
    return False


@dataclass(frozen=True)
class VertexReport:
    """Whether p*L ⊆ L^∨ ⊆ L, the type t = dim L/L^∨ and the quadratic space L/L^∨."""
    is_vertex: bool
    t: int
    quotient_form: Optional[Tuple[int, ...]] = None
    anisotropic: Optional[bool] = None

    @property
    def quotient_kind(self) -> Optional[str]:
        """"split" or "anisotropic" for a vertex lattice of positive type, else None."""
        if self.anisotropic is None:
            return None
        return ANISOTROPIC if self.anisotropic else SPLIT


def vertex_report(lat: GramLattice) -> VertexReport:
    """Vertex test and type from the elementary divisors; the quotient form from the scale -1 Jordan block.

    The quotient space L/L^∨ carries x -> p Q(x) mod p, a diagonal form over F_p.
    """
    valuations = dual_quotient(lat)
    is_vertex = all(v in (0, -1) for v in valuations)
    t = sum(1 for v in valuations if v == -1)
    if not is_vertex:
        return VertexReport(False, t)
    if t == 0:
        return VertexReport(True, 0)
    decomposition = jordan_decompose(lat)
    block = next(b for b in decomposition.blocks if b.scale == -1)
    coefficients = tuple(unit_residue(block.gram[i][i], lat.p) for i in range(len(block.gram)))
    anisotropic = not _is_isotropic_mod_p(coefficients, lat.p)
    return VertexReport(True, t, coefficients, anisotropic)


def is_self_dual(lat: GramLattice) -> bool:
    """L = L^∨"""
    return all(v == 0 for v in dual_quotient(lat))


def is_almost_self_dual(lat: GramLattice) -> bool:
    """L/L^∨ is an anisotropic plane over F_p."""
    report = vertex_report(lat)
    return report.is_vertex and report.t == 2 and bool(report.anisotropic)


def t_max(n: int, det: SquareClass) -> int:
    """Largest type of a vertex lattice in a space of dimension n and unit determinant det (ε = -1)."""
    if n < 3:
        raise DomainError(f"t_max needs n >= 3, not {n}", code='small-dimension')
    if not det.is_unit or not isinstance(det.place, int):
        raise DomainError("t_max needs a unit determinant class at an odd prime", code='non-unit-det')
    if n % 2:
        return n - 1
    if det == square_class(Fraction((-1) ** (n // 2)), det.place):
        return n - 2
    return n


class LatticeKind(str, Enum):
    """Self-dual or almost self-dual."""
    SELF_DUAL = 'self_dual'
    ALMOST_SELF_DUAL = 'almost_self_dual'


def construct_lattice(p: int, n: int, det: SquareClass, eps: int, kind: LatticeKind) -> GramLattice:
    """A self-dual (eps = +1) or almost-self-dual (eps = -1) lattice in the space of dimension n with det and eps."""
    p = check_odd_prime(p)
    if not det.is_unit or det.place != p:
        raise DomainError(f"the determinant must be a unit class at {p}", code='non-unit-det')
    if eps not in (1, -1):
        raise DomainError(f"eps must be +1 or -1, not {eps}", code='bad-sign')
    if (kind == LatticeKind.SELF_DUAL) != (eps == 1):
        raise DomainError(
            f"a {kind.value} lattice exists only when eps = {1 if kind == LatticeKind.SELF_DUAL else -1}",
            code='kind-eps-mismatch')
    delta = least_nonsquare(p)
    if kind == LatticeKind.SELF_DUAL:
        if n < 1:
            raise DomainError("a lattice needs n >= 1", code='small-dimension')
        entries = [Fraction(1)] * (n - 1) + [det.representative()]
    else:
        if n < 2:
            raise DomainError("an almost-self-dual lattice needs n >= 2", code='small-dimension')
        # (1/p) diag(1, -delta) is anisotropic mod p; one unit entry absorbs the determinant.
        if n == 2:
            if square_class(Fraction(-delta), p) != det:
                raise DomainError(f"an almost-self-dual plane at {p} has determinant class of {-delta}",
                                  code='kind-eps-mismatch')
            entries = [Fraction(1, p), Fraction(-delta, p)]
        else:
            adjust = square_class(det.representative() * -delta, p).representative()
            entries = [Fraction(1)] * (n - 3) + [adjust, Fraction(1, p), Fraction(-delta, p)]
    lat = GramLattice.diagonal(entries, p)
    invariants = local_invariants(ambient_form(lat), p)
    check = is_self_dual(lat) if kind == LatticeKind.SELF_DUAL else is_almost_self_dual(lat)
    if invariants.det != det or invariants.hasse != eps or invariants.dim != n or not check:
        raise ConsistencyError(f"constructed lattice {entries} misses ({n}, {det.token()}, {eps}, {kind.value})")
    log.debug("constructed %s lattice %s", kind.value, entries)
    return lat


def unit_class(token: str, p: int) -> SquareClass:
    """The unit square class "square" or "nonsquare" at p."""
    if token not in (SQUARE, NONSQUARE):
        raise DomainError(f"expected 'square' or 'nonsquare', not '{token}'", code='bad-square-class')
    return SquareClass(check_odd_prime(p), 0, token)

