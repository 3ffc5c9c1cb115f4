"""Quadratic spaces over F_{p^k}: isotropic subspaces, the point sets S_Λ and their Frobenius orbits."""
import logging
import os
from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Dict, List, Optional, Sequence, Set, Tuple

from ssplocus.constant import (DEFAULT_MAX_DIM, DEFAULT_MAX_FIELD_ORDER, DEFAULT_MAX_POINTS, ENV_MAX_DIM,
                               ENV_MAX_FIELD_ORDER, ENV_MAX_POINTS)
from ssplocus.errors import ConsistencyError, DomainError, ResourceError
from ssplocus.finite_field import FiniteField, field
from ssplocus.padic_invariants import least_nonsquare
from ssplocus.rational import check_odd_prime

log = logging.getLogger(__name__)

Vector = Tuple[int, ...]
Rows = Tuple[Vector, ...]


@dataclass(frozen=True)
class ResourceCaps:
    """Desk-scale limits on enumerations."""
    max_field_order: int
    max_dim: int
    max_points: int


def _env_int(name: str, default: int) -> int:
    value = os.environ.get(name)
    if value is None:
        return default
    try:
        return int(value)
    except ValueError as e:
        raise DomainError(f"{name} must be an integer, not '{value}'", code='bad-config') from e


def resource_caps() -> ResourceCaps:
    """Enumeration caps, read from the environment on every call."""
    return ResourceCaps(
        _env_int(ENV_MAX_FIELD_ORDER, DEFAULT_MAX_FIELD_ORDER),
        _env_int(ENV_MAX_DIM, DEFAULT_MAX_DIM),
        _env_int(ENV_MAX_POINTS, DEFAULT_MAX_POINTS),
    )


def _check_caps(t: int, q: int) -> None:
    caps = resource_caps()
    if t > caps.max_dim:
        raise ResourceError(f"dimension {t} exceeds the cap {caps.max_dim} ({ENV_MAX_DIM})")
    if q > caps.max_field_order:
        raise ResourceError(f"field order {q} exceeds the cap {caps.max_field_order} ({ENV_MAX_FIELD_ORDER})")
    points = (q ** t - 1) // (q - 1)
    if points > caps.max_points:
        raise ResourceError(f"{points} projective points over F_{q}^{t} exceed the cap {caps.max_points} "
                            f"({ENV_MAX_POINTS})")


class SpaceKind(str, Enum):
    """Whether a quadratic space over F_p has maximal Witt index."""
    SPLIT = 'split'
    NONSPLIT = 'nonsplit'


@dataclass(frozen=True)
class FiniteQuadSpace:
    """A quadratic space over F_p of even dimension t, given by its bilinear Gram matrix.

    Q(v) = [v, v] / 2. The same matrix defines the space over every F_{p^k}.
    """
    t: int
    kind: SpaceKind
    p: int
    gram: Tuple[Tuple[int, ...], ...]

    def terms(self) -> List[Tuple[int, int, int]]:
        """Nonzero Gram entries as (i, j, g)."""
        return [(i, j, g) for i, row in enumerate(self.gram) for j, g in enumerate(row) if g]


def build_space(t: int, kind: SpaceKind, p: int) -> FiniteQuadSpace:
    """Hyperbolic planes, with the norm plane x^2 - δ y^2 (δ a nonsquare) last when nonsplit."""
    p = check_odd_prime(p)
    kind = SpaceKind(kind)
    if t < 2 or t % 2:
        raise DomainError(f"the dimension must be even and at least 2, not {t}", code='bad-dimension')
    _check_caps(t, p)
    gram = [[0] * t for _ in range(t)]
    planes = t // 2 if kind == SpaceKind.SPLIT else t // 2 - 1
    for i in range(planes):
        gram[2 * i][2 * i + 1] = gram[2 * i + 1][2 * i] = 1
    if kind == SpaceKind.NONSPLIT:
        gram[t - 2][t - 2] = 2 % p
        gram[t - 1][t - 1] = -2 * least_nonsquare(p) % p
    space = FiniteQuadSpace(t, kind, p, tuple(tuple(row) for row in gram))
    _verify_kind(space)
    return space


def quadratic_value(f: FiniteField, space: FiniteQuadSpace, v: Sequence[int]) -> int:
    """Q(v) = sum_i (g_ii / 2) v_i^2 + sum_{i<j} g_ij v_i v_j"""
    half = f.inv(2 % f.p)
    total = 0
    for i, j, g in space.terms():
        if i == j:
            total = f.add(total, f.mul(f.mul(half, g), f.mul(v[i], v[i])))
        elif i < j:
            total = f.add(total, f.mul(g, f.mul(v[i], v[j])))
    return total


def bilinear(f: FiniteField, terms: Sequence[Tuple[int, int, int]], v: Sequence[int], w: Sequence[int]) -> int:
    """Evaluate sum g v_i w_j over the nonzero Gram entries."""
    total = 0
    for i, j, g in terms:
        total = f.add(total, f.mul(g, f.mul(v[i], w[j])))
    return total


def _verify_kind(space: FiniteQuadSpace) -> None:
    """Count isotropic vectors over F_p: p^(t-1) ± (p^(t/2) - p^(t/2-1)) with + exactly when split."""
    f = field(space.p, 1)
    p, t = space.p, space.t
    count = sum(1 for v in product(range(p), repeat=t) if quadratic_value(f, space, v) == 0)
    sign = 1 if space.kind == SpaceKind.SPLIT else -1
    expected = p ** (t - 1) + sign * (p ** (t // 2) - p ** (t // 2 - 1))
    if count != expected:
        raise ConsistencyError(f"{space.kind.value} space of dimension {t} over F_{p} has {count} isotropic "
                               f"vectors, expected {expected}")


@dataclass(frozen=True, order=True)
class Subspace:
    """A subspace of F_q^t in reduced row echelon form."""
    rows: Rows

    @property
    def dim(self) -> int:
        """Dimension of the subspace."""
        return len(self.rows)


def rref(f: FiniteField, rows: Sequence[Sequence[int]]) -> Rows:
    """Reduced row echelon form with leading entries 1, zero rows dropped."""
    m = [list(row) for row in rows]
    if not m:
        return ()
    lead = 0
    for col in range(len(m[0])):
        pivot = next((r for r in range(lead, len(m)) if m[r][col]), None)
        if pivot is None:
            continue
        m[lead], m[pivot] = m[pivot], m[lead]
        scale = f.inv(m[lead][col])
        m[lead] = [f.mul(scale, x) for x in m[lead]]
        for r in range(len(m)):
            if r != lead and m[r][col]:
                c = m[r][col]
                m[r] = [f.sub(x, f.mul(c, y)) for x, y in zip(m[r], m[lead])]
        lead += 1
        if lead == len(m):
            break
    return tuple(tuple(row) for row in m[:lead])


def _normalized_vectors(q: int, t: int) -> List[Vector]:
    """One vector per line of F_q^t: the first nonzero coordinate is 1."""
    vectors = []
    for lead in range(t):
        for tail in product(range(q), repeat=t - lead - 1):
            vectors.append((0,) * lead + (1,) + tail)
    return vectors


def _span_points(f: FiniteField, rows: Rows) -> List[Vector]:
    """Normalized vectors of the span of echelon rows: the first nonzero coefficient is 1."""
    points = []
    n, t = len(rows), len(rows[0])
    for first in range(n):
        for tail in product(range(f.q), repeat=n - first - 1):
            coefficients = (0,) * first + (1,) + tail
            v = [0] * t
            for c, row in zip(coefficients, rows):
                if c:
                    v = [f.add(x, f.mul(c, y)) for x, y in zip(v, row)]
            points.append(tuple(v))
    return points


def enumerate_isotropic(space: FiniteQuadSpace, d: int, k: int = 1,
                        modulus: Optional[Tuple[int, ...]] = None) -> List[Subspace]:
    """All totally isotropic d-dimensional subspaces over F_{p^k}, sorted.

    Flags grow one isotropic point at a time. Each partial flag keeps the
    isotropic points orthogonal to it; after adding a point, every point of
    the new span is dropped from the candidates of the old flag.
    """
    if not 1 <= d <= space.t // 2:
        raise DomainError(f"d must be between 1 and {space.t // 2}, not {d}", code='bad-dimension')
    f = field(space.p, k, modulus)
    _check_caps(space.t, f.q)
    terms = space.terms()
    points = [v for v in _normalized_vectors(f.q, space.t) if quadratic_value(f, space, v) == 0]
    index = {v: i for i, v in enumerate(points)}
    level: Dict[Rows, Set[int]] = {}
    for v in points:
        level[(v,)] = {i for i, w in enumerate(points) if bilinear(f, terms, v, w) == 0}
    for _ in range(d - 1):
        following: Dict[Rows, Set[int]] = {}
        for rows, candidates in level.items():
            remaining = candidates - {index[v] for v in _span_points(f, rows)}
            while remaining:
                w = points[min(remaining)]
                bigger = rref(f, rows + (w,))
                remaining -= {index[v] for v in _span_points(f, bigger)}
                if bigger not in following:
                    following[bigger] = {i for i in candidates if bilinear(f, terms, w, points[i]) == 0}
        level = following
    log.debug("%d isotropic %d-spaces in the %s space of dimension %d over F_%d", len(level), d, space.kind.value,
              space.t, f.q)
    return sorted(Subspace(rows) for rows in level)


def frobenius_image(f: FiniteField, subspace: Subspace) -> Subspace:
    """The subspace spanned by the Frobenius images of the rows."""
    return Subspace(rref(f, [[f.frobenius(x) for x in row] for row in subspace.rows]))


def _sum_dimension(f: FiniteField, a: Subspace, b: Subspace) -> int:
    return len(rref(f, a.rows + b.rows))


def s_lambda_points(t: int, kind: SpaceKind, p: int, k: int,
                    modulus: Optional[Tuple[int, ...]] = None) -> List[Subspace]:
    """Lagrangians L over F_{p^k} with dim(L + Φ L) = t/2 + 1."""
    space = build_space(t, kind, p)
    f = field(p, k, modulus)
    lagrangians = enumerate_isotropic(space, t // 2, k, modulus)
    return [lag for lag in lagrangians if _sum_dimension(f, lag, frobenius_image(f, lag)) == t // 2 + 1]


def frobenius_orbits(points: Sequence[Subspace], space: FiniteQuadSpace, k: int,
                     modulus: Optional[Tuple[int, ...]] = None) -> List[Tuple[Subspace, ...]]:
    """Partition of a Φ-stable point set into Φ-orbits, each starting from its least point."""
    f = field(space.p, k, modulus)
    remaining = set(points)
    orbits = []
    for start in sorted(points):
        if start not in remaining:
            continue
        orbit = [start]
        remaining.discard(start)
        image = frobenius_image(f, start)
        while image != start:
            if image not in remaining:
                raise ConsistencyError(f"Frobenius maps {start} outside the point set")
            orbit.append(image)
            remaining.discard(image)
            image = frobenius_image(f, image)
        orbits.append(tuple(orbit))
    return orbits


def orbit_profile(orbits: Sequence[Tuple[Subspace, ...]]) -> List[int]:
    """Sorted orbit sizes."""
    return sorted(len(orbit) for orbit in orbits)


def orientations(space: FiniteQuadSpace, modulus: Optional[Tuple[int, ...]] = None) -> Tuple[Subspace, Subspace]:
    """The two isotropic lines over F_{p^2} of an anisotropic plane."""
    if space.t != 2 or space.kind != SpaceKind.NONSPLIT:
        raise DomainError("orientations are defined for the anisotropic plane only", code='not-anisotropic')
    lines = enumerate_isotropic(space, 1, 2, modulus)
    if len(lines) != 2:
        raise ConsistencyError(f"an anisotropic plane has {len(lines)} isotropic lines over F_{space.p}^2")
    return lines[0], lines[1]


def witt_index(space: FiniteQuadSpace) -> int:
    """Dimension of a maximal isotropic subspace over F_p, by enumeration."""
    index = 0
    for d in range(1, space.t // 2 + 1):
        if not enumerate_isotropic(space, d):
            break
        index = d
    return index


def count_lagrangians_split(q: int, d: int) -> int:
    """Number of Lagrangians of the split space of dimension 2d over F_q: 2 prod_{i<d} (q^i + 1)."""
    count = 2
    for i in range(1, d):
        count *= q ** i + 1
    return count


def coefficient_vectors(f: FiniteField, subspace: Subspace) -> List[List[List[int]]]:
    """Echelon rows with each field element written as its coefficient vector over F_p."""
    return [[list(f.to_coefficients(x)) for x in row] for row in subspace.rows]
