"""Extended affine Weyl groups of types B~_m and D~_m and their Ekedahl-Oort combinatorics.

An element t_λ x acts on R^m by v -> x(v) + λ, with λ in Z^m and x a signed
permutation (with an even number of sign changes for D). Signed permutations
are stored in one-line notation: x[i] = ±j means x(e_{i+1}) = ±e_j.

Nodes follow the tables: 1..m-1 are e_i - e_{i+1}, node m is e_m (B) or
e_{m-1} + e_m (D), and node 0 is the affine reflection in <e_1 + e_2, v> = 1.
"""
import logging
from collections import deque
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import combinations, permutations, product
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from ssplocus.errors import ConsistencyError, DomainError

log = logging.getLogger(__name__)

SignedPermutation = Tuple[int, ...]
Vector = Tuple[int, ...]
NodeSet = FrozenSet[int]


class Family(str, Enum):
    """Affine root system families."""
    B = 'B'
    D = 'D'


class SigmaChoice(str, Enum):
    """Frobenius action on the affine Dynkin diagram."""
    IDENTITY = 'identity'
    SWAP_LAST_PAIR = 'swap_last_pair'


def apply_signed(x: SignedPermutation, v: Sequence[int]) -> Vector:
    """Act by a signed permutation on an integer vector."""
    result = [0] * len(v)
    for i, image in enumerate(x):
        result[abs(image) - 1] = v[i] if image > 0 else -v[i]
    return tuple(result)


def compose_signed(x: SignedPermutation, y: SignedPermutation) -> SignedPermutation:
    """x ∘ y"""
    return tuple(x[abs(image) - 1] if image > 0 else -x[abs(image) - 1] for image in y)


def invert_signed(x: SignedPermutation) -> SignedPermutation:
    """Inverse of a signed permutation."""
    result = [0] * len(x)
    for i, image in enumerate(x):
        result[abs(image) - 1] = i + 1 if image > 0 else -(i + 1)
    return tuple(result)


@dataclass(frozen=True, order=True)
class WeylElement:
    """t_translation * finite, an element of the extended affine Weyl group of `family` and rank m."""
    family: Family
    translation: Vector
    finite: SignedPermutation

    @property
    def m(self) -> int:
        """Rank of the finite root system."""
        return len(self.translation)

    @property
    def component(self) -> int:
        """Image in Ω ≅ Z^m / Q^∨ ≅ Z/2."""
        return sum(self.translation) % 2

    def __mul__(self, other: 'WeylElement') -> 'WeylElement':
        return multiply(self, other)


def _check_same_group(w1: WeylElement, w2: WeylElement) -> None:
    if (w1.family, w1.m) != (w2.family, w2.m):
        raise DomainError(f"elements of {w1.family.value}~{w1.m} and {w2.family.value}~{w2.m} cannot be combined",
                          code='cross-datum')


def multiply(w1: WeylElement, w2: WeylElement) -> WeylElement:
    """(t_λ x)(t_μ y) = t_{λ + x(μ)} xy"""
    _check_same_group(w1, w2)
    shifted = apply_signed(w1.finite, w2.translation)
    return WeylElement(w1.family, tuple(a + b for a, b in zip(w1.translation, shifted)),
                       compose_signed(w1.finite, w2.finite))


def inverse(w: WeylElement) -> WeylElement:
    """Inverse of w in the extended affine Weyl group."""
    x_inv = invert_signed(w.finite)
    return WeylElement(w.family, tuple(-a for a in apply_signed(x_inv, w.translation)), x_inv)


def identity(family: Family, m: int) -> WeylElement:
    """The unit element of the extended affine Weyl group of rank m."""
    return WeylElement(family, (0,) * m, tuple(range(1, m + 1)))


def translation(family: Family, vector: Sequence[int]) -> WeylElement:
    """The translation t_v."""
    return WeylElement(family, tuple(vector), tuple(range(1, len(vector) + 1)))


def _check_rank(family: Family, m: int) -> None:
    lowest = 2 if family == Family.B else 3
    if m < lowest:
        raise DomainError(f"{family.value}~_m needs m >= {lowest}, not {m}", code='rank')


@lru_cache(maxsize=None)
def positive_roots(family: Family, m: int) -> Tuple[Vector, ...]:
    """Positive roots e_i ± e_j, and e_i for type B, as integer vectors."""
    roots: List[Vector] = []
    for i, j in combinations(range(m), 2):
        for sign in (-1, 1):
            root = [0] * m
            root[i], root[j] = 1, sign
            roots.append(tuple(root))
    if family == Family.B:
        for i in range(m):
            root = [0] * m
            root[i] = 1
            roots.append(tuple(root))
    return tuple(roots)


def _is_positive(root: Vector) -> bool:
    return next(c for c in root if c) > 0


@lru_cache(maxsize=None)
def length(w: WeylElement) -> int:
    """Iwahori-Matsumoto length of t_λ x.

    Sum over positive roots α of |<λ, α>| when x^{-1}α > 0 and of |<λ, α> - 1|
    otherwise.
    """
    x_inv = invert_signed(w.finite)
    total = 0
    for alpha in positive_roots(w.family, w.m):
        pairing = sum(a * b for a, b in zip(w.translation, alpha))
        if _is_positive(apply_signed(x_inv, alpha)):
            total += abs(pairing)
        else:
            total += abs(pairing - 1)
    return total


@lru_cache(maxsize=None)
def simple_reflections(family: Family, m: int) -> Tuple[WeylElement, ...]:
    """s_0, s_1, ..., s_m"""
    _check_rank(family, m)
    base = list(range(1, m + 1))
    s0 = base.copy()
    s0[0], s0[1] = -2, -1
    theta = (1, 1) + (0,) * (m - 2)
    reflections = [WeylElement(family, theta, tuple(s0))]
    for i in range(1, m):
        x = base.copy()
        x[i - 1], x[i] = i + 1, i
        reflections.append(WeylElement(family, (0,) * m, tuple(x)))
    last = base.copy()
    if family == Family.B:
        last[m - 1] = -m
    else:
        last[m - 2], last[m - 1] = -m, -(m - 1)
    reflections.append(WeylElement(family, (0,) * m, tuple(last)))
    return tuple(reflections)


def reflection(family: Family, m: int, node: int) -> WeylElement:
    """The simple reflection s_node."""
    if not 0 <= node <= m:
        raise DomainError(f"{family.value}~{m} has no node {node}", code='bad-node')
    return simple_reflections(family, m)[node]


@lru_cache(maxsize=None)
def finite_weyl_group(family: Family, m: int) -> Tuple[SignedPermutation, ...]:
    """All signed permutations (with an even number of sign changes for D)."""
    elements = []
    for perm in permutations(range(1, m + 1)):
        for signs in product((1, -1), repeat=m):
            if family == Family.D and signs.count(-1) % 2:
                continue
            elements.append(tuple(s * i for s, i in zip(signs, perm)))
    return tuple(sorted(elements))


@lru_cache(maxsize=None)
def tau(family: Family, m: int) -> WeylElement:
    """The length-zero element t_{e_1} x in the Ω-component of t_{e_1}."""
    _check_rank(family, m)
    lam = (1,) + (0,) * (m - 1)
    candidates = [WeylElement(family, lam, x) for x in finite_weyl_group(family, m)]
    zero = [w for w in candidates if length(w) == 0]
    if len(zero) != 1:
        raise ConsistencyError(f"expected one length-zero element over t_e1, found {len(zero)}")
    return zero[0]


def left_descents(w: WeylElement) -> Tuple[int, ...]:
    """Nodes s with l(s w) < l(w)."""
    lw = length(w)
    return tuple(i for i, s in enumerate(simple_reflections(w.family, w.m)) if length(multiply(s, w)) < lw)


def right_descents(w: WeylElement) -> Tuple[int, ...]:
    """Nodes s with l(w s) < l(w)."""
    lw = length(w)
    return tuple(i for i, s in enumerate(simple_reflections(w.family, w.m)) if length(multiply(w, s)) < lw)


def omega_part(w: WeylElement) -> WeylElement:
    """The length-zero element ω with w ∈ W_a ω."""
    if w.component == 0:
        return identity(w.family, w.m)
    return tau(w.family, w.m)


@lru_cache(maxsize=None)
def reduced_word(w: WeylElement) -> Tuple[int, ...]:
    """Lexicographically least reduced word of the W_a-part of w, found by greedy left descent."""
    word: List[int] = []
    current = w
    while length(current) > 0:
        s = left_descents(current)[0]
        word.append(s)
        current = multiply(reflection(w.family, w.m, s), current)
    if current != omega_part(w):
        raise ConsistencyError(f"descent from {w} ended at {current}")
    return tuple(word)


def reduced_word_right(w: WeylElement) -> Tuple[int, ...]:
    """A reduced word of the W_a-part of w found by peeling the largest right descent of w ω^{-1}."""
    word: List[int] = []
    current = multiply(w, inverse(omega_part(w)))
    while length(current) > 0:
        s = right_descents(current)[-1]
        word.append(s)
        current = multiply(current, reflection(w.family, w.m, s))
    return tuple(reversed(word))


def from_word(family: Family, m: int, word: Iterable[int], omega: int = 0) -> WeylElement:
    """s_{i_1} ... s_{i_k} ω, with ω = τ when omega is 1."""
    result = identity(family, m)
    for node in word:
        result = multiply(result, reflection(family, m, node))
    if omega % 2:
        result = multiply(result, tau(family, m))
    return result


@lru_cache(maxsize=None)
def _bruhat_leq(u: WeylElement, w: WeylElement) -> bool:
    lw, lu = length(w), length(u)
    if lu > lw:
        return False
    if lw == 0:
        return u == w
    s = reflection(w.family, w.m, left_descents(w)[0])
    su = multiply(s, u)
    if length(su) < lu:
        return _bruhat_leq(su, multiply(s, w))
    return _bruhat_leq(u, multiply(s, w))


def bruhat_leq(u: WeylElement, w: WeylElement) -> bool:
    """Bruhat order: u ω ≤ w ω' iff ω = ω' and the W_a-parts compare."""
    _check_same_group(u, w)
    if u.component != w.component:
        return False
    return _bruhat_leq(u, w)


@lru_cache(maxsize=None)
def lower_interval(w: WeylElement) -> FrozenSet[WeylElement]:
    """{u : u ≤ w}, via L(w) = L(s w) ∪ s L(s w) for a left descent s."""
    if length(w) == 0:
        return frozenset({w})
    s = reflection(w.family, w.m, left_descents(w)[0])
    below = lower_interval(multiply(s, w))
    return below | frozenset(multiply(s, u) for u in below)


def sort_key(w: WeylElement) -> Tuple[int, Tuple[int, ...], int]:
    """Order elements by (length, reduced word, component)."""
    return length(w), reduced_word(w), w.component


@dataclass(frozen=True)
class CoxeterDatum:
    """An affine Dynkin diagram of type B~_m or D~_m with Frobenius σ, λ = ω_1^∨ and parahoric type K."""
    family: Family
    m: int
    sigma: Tuple[int, ...]
    parahoric: NodeSet

    @property
    def nodes(self) -> Tuple[int, ...]:
        """Node numbers 0..m of the affine diagram."""
        return tuple(range(self.m + 1))

    @property
    def lam(self) -> Vector:
        """The minuscule coweight e_1."""
        return (1,) + (0,) * (self.m - 1)

    @property
    def tau(self) -> WeylElement:
        """The length-zero element over t_{e_1}."""
        return tau(self.family, self.m)

    def reflection(self, node: int) -> WeylElement:
        """The simple reflection s_node of this datum."""
        return reflection(self.family, self.m, node)

    def tau_sigma(self, node: int) -> int:
        """Image of a node under τσ."""
        return tau_action(self.family, self.m)[self.sigma[node]]


@lru_cache(maxsize=None)
def coxeter_matrix(family: Family, m: int) -> Tuple[Tuple[int, ...], ...]:
    """Orders of s_i s_j."""
    reflections = simple_reflections(family, m)
    one = identity(family, m)
    matrix = []
    for si in reflections:
        row = []
        for sj in reflections:
            product_ = multiply(si, sj)
            power, order = product_, 1
            while power != one:
                power = multiply(power, product_)
                order += 1
                if order > 6:
                    raise ConsistencyError("s_i s_j has order above 6")
            row.append(order)
        matrix.append(tuple(row))
    return tuple(matrix)


def diagram_automorphism(family: Family, m: int, omega: WeylElement) -> Tuple[int, ...]:
    """Node permutation i -> j with ω s_i ω^{-1} = s_j, for a length-zero ω."""
    if length(omega) != 0:
        raise DomainError("only length-zero elements act on the diagram", code='not-length-zero')
    reflections = simple_reflections(family, m)
    omega_inv = inverse(omega)
    images = []
    for s in reflections:
        conjugate = multiply(multiply(omega, s), omega_inv)
        images.append(reflections.index(conjugate))
    return tuple(images)


@lru_cache(maxsize=None)
def tau_action(family: Family, m: int) -> Tuple[int, ...]:
    """Node permutation induced by conjugation with τ."""
    return diagram_automorphism(family, m, tau(family, m))


def build_datum(family: Family, m: int, sigma_choice: SigmaChoice = SigmaChoice.IDENTITY,
                parahoric: Optional[Iterable[int]] = None) -> CoxeterDatum:
    """Validate σ and K; K defaults to all nodes but 0."""
    family, sigma_choice = Family(family), SigmaChoice(sigma_choice)
    _check_rank(family, m)
    sigma = list(range(m + 1))
    if sigma_choice == SigmaChoice.SWAP_LAST_PAIR:
        sigma[m - 1], sigma[m] = m, m - 1
    matrix = coxeter_matrix(family, m)
    if any(matrix[sigma[i]][sigma[j]] != matrix[i][j] for i in range(m + 1) for j in range(m + 1)):
        raise DomainError(f"{sigma_choice.value} is not a diagram automorphism of {family.value}~{m}",
                          code='not-automorphism')
    nodes = frozenset(range(1, m + 1) if parahoric is None else parahoric)
    if not nodes <= set(range(m + 1)):
        raise DomainError(f"K = {sorted(nodes)} is not a set of nodes of {family.value}~{m}", code='bad-node')
    if frozenset(sigma[i] for i in nodes) != nodes:
        raise DomainError(f"K = {sorted(nodes)} is not σ-stable", code='sigma-unstable')
    datum = CoxeterDatum(family, m, tuple(sigma), nodes)
    log.debug("datum %s~%d sigma=%s K=%s tau acts by %s", family.value, m, datum.sigma, sorted(nodes),
              tau_action(family, m))
    return datum


@lru_cache(maxsize=None)
def _adm(family: Family, m: int) -> FrozenSet[WeylElement]:
    elements: FrozenSet[WeylElement] = frozenset()
    for i in range(m):
        for sign in (1, -1):
            vector = [0] * m
            vector[i] = sign
            elements |= lower_interval(translation(family, vector))
    log.debug("Adm(ω_1) of %s~%d has %d elements", family.value, m, len(elements))
    return elements


def adm_set(datum: CoxeterDatum) -> List[WeylElement]:
    """Adm(μ): everything below some t_{x(λ)}, x ∈ W_0; the orbit of λ = e_1 is ±e_i."""
    return sorted(_adm(datum.family, datum.m), key=sort_key)


def is_min_rep(datum: CoxeterDatum, w: WeylElement) -> bool:
    """w ∈ ^K W~: l(s w) > l(w) for every s ∈ K."""
    lw = length(w)
    return all(length(multiply(datum.reflection(s), w)) > lw for s in datum.parahoric)


def min_reps(datum: CoxeterDatum) -> List[WeylElement]:
    """^K W~ restricted to Adm(μ)."""
    return [w for w in adm_set(datum) if is_min_rep(datum, w)]


def eo_set(datum: CoxeterDatum) -> List[WeylElement]:
    """EO^K(μ) = Adm(μ) ∩ ^K W~"""
    return min_reps(datum)


def sigma_support(datum: CoxeterDatum, w: WeylElement) -> NodeSet:
    """Union of (τσ)^n(supp(w))."""
    support = set(reduced_word(w))
    frontier = list(support)
    while frontier:
        image = datum.tau_sigma(frontier.pop())
        if image not in support:
            support.add(image)
            frontier.append(image)
    return frozenset(support)


def _orbit_count(datum: CoxeterDatum, nodes: NodeSet) -> int:
    seen: set = set()
    count = 0
    for node in sorted(nodes):
        if node in seen:
            continue
        count += 1
        while node not in seen:
            seen.add(node)
            node = datum.tau_sigma(node)
    return count


def is_sigma_coxeter(datum: CoxeterDatum, w: WeylElement) -> bool:
    """l(w) equals the number of <τσ>-orbits on supp_σ(w)."""
    return length(w) == _orbit_count(datum, sigma_support(datum, w))


def eo_cox_set(datum: CoxeterDatum) -> List[WeylElement]:
    """σ-Coxeter elements of EO^K(μ) whose σ-support is a proper subset of the nodes."""
    everything = frozenset(datum.nodes)
    return [w for w in eo_set(datum) if is_sigma_coxeter(datum, w) and sigma_support(datum, w) != everything]


def table_rows(datum: CoxeterDatum) -> List[Tuple[NodeSet, WeylElement]]:
    """(Σ, w_Σ) rows of the EO table for this datum.

    B~_m: τ, s_0 τ, s_0 s_2 τ, ..., s_0 s_2 ... s_{m-1} τ.
    D~_m with σ = id: the same chain up to s_0 s_2 ... s_{m-2} τ.
    D~_m with σ swapping m-1 and m: that chain, then s_0 s_2 ... s_{m-2} s_m τ
    labelled {m-1} and s_0 s_2 ... s_{m-2} s_{m-1} τ labelled {m}.
    """
    m = datum.m
    top = m - 1 if datum.family == Family.B else m - 2
    rows: List[Tuple[Tuple[int, ...], Tuple[int, ...]]] = [((0, 1), ()), ((2,), (0,))]
    for i in range(2, top + 1):
        rows.append(((i + 1,), (0,) + tuple(range(2, i + 1))))
    if datum.family == Family.D and datum.sigma[m] != m:
        chain = (0,) + tuple(range(2, m - 1))
        rows.append(((m - 1,), chain + (m,)))
        rows.append(((m,), chain + (m - 1,)))
    return [(frozenset(label), from_word(datum.family, m, word, omega=1)) for label, word in rows]


def table_w_sigma(datum: CoxeterDatum, label: Iterable[int]) -> WeylElement:
    """w_Σ for a table label Σ."""
    label = frozenset(label)
    matches = [w for sigma_label, w in table_rows(datum) if sigma_label == label]
    if not matches:
        raise DomainError(f"{sorted(label)} is not a table label of {datum.family.value}~{datum.m}",
                          code='bad-label')
    if len(matches) > 1:
        raise DomainError(f"{sorted(label)} labels {len(matches)} rows of {datum.family.value}~{datum.m}",
                          code='ambiguous-label')
    return matches[0]


def label_of(datum: CoxeterDatum, w: WeylElement) -> Optional[NodeSet]:
    """The table label of w, or None when w heads no row."""
    return next((label for label, element in table_rows(datum) if element == w), None)


def t_of(w: WeylElement) -> int:
    """t = 2 (l(w) + 1)"""
    return 2 * (length(w) + 1)


def t_sigma(datum: CoxeterDatum, label: Iterable[int]) -> int:
    """t_Σ = 2(l(w_Σ) + 1)"""
    return t_of(table_w_sigma(datum, label))


def _distances(datum: CoxeterDatum, source: int) -> Dict[int, int]:
    matrix = coxeter_matrix(datum.family, datum.m)
    distance = {source: 0}
    queue = deque([source])
    while queue:
        node = queue.popleft()
        for other in datum.nodes:
            if matrix[node][other] >= 3 and other not in distance:
                distance[other] = distance[node] + 1
                queue.append(other)
    return distance


def j_set(datum: CoxeterDatum) -> List[NodeSet]:
    """Nonempty τσ-stable node sets equidistant from the unique node outside K."""
    excluded = [node for node in datum.nodes if node not in datum.parahoric]
    if len(excluded) != 1:
        raise DomainError(f"J needs exactly one node outside K, found {excluded}", code='bad-k')
    distance = _distances(datum, excluded[0])
    found = []
    for size in range(1, datum.m + 2):
        for subset in combinations(datum.nodes, size):
            nodes = frozenset(subset)
            if frozenset(datum.tau_sigma(v) for v in nodes) != nodes:
                continue
            if len({distance[v] for v in nodes}) == 1:
                found.append(nodes)
    return found
