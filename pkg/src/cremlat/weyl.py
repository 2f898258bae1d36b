"""Words in the generators of the infinite Weyl group and their matrices.

The group acts on the plane lattice of :mod:`cremlat.lattice`, is generated
by permutations of bubble points together with the quadratic involutions
sigma0(a, b, c), and preserves both the intersection form and the canonical
form omega.  An element is represented in two ways:

* a :class:`WeylWord`, an ordered tuple of generator letters applied
  right-to-left (composition order), and
* a :class:`WeylElement`, an exact integer matrix on the finite basis
  (e0, e(p_1), ..., e(p_n)) spanned by its support, acting as the identity
  on every other basis class.

Realized matrices are checked on construction: M^T J M = J with
J = diag(1, -1, ..., -1), omega-invariance, and positive degree.  The group
here is the finite-support part of the full symmetric-group completion;
every algorithm in the package only ever touches finitely many points, so
nothing is lost by the restriction.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from . import intmat
from .lattice import (
    BubblePoint,
    ClassVector,
    canonical_form,
    e,
    e0,
    intersect,
    point,
)

# ---------------------------------------------------------------------------
# generators


@dataclass(frozen=True)
class Permutation:
    """A finite-support permutation letter: disjoint transpositions."""

    pairs: tuple

    def __post_init__(self):
        seen = set()
        for a, b in self.pairs:
            if a == b:
                raise ValueError("transposition with equal points")
            for x in (a, b):
                if x in seen:
                    raise ValueError("transpositions must be disjoint")
                seen.add(x)

    def mapping(self) -> dict:
        m = {}
        for a, b in self.pairs:
            m[a] = b
            m[b] = a
        return m

    def __repr__(self):
        return "s" + "".join(f"({a!r} {b!r})" for a, b in self.pairs) if self.pairs else "s()"


@dataclass(frozen=True)
class Sigma0:
    """The quadratic involution with base points (p1, p2, p3)."""

    p1: BubblePoint
    p2: BubblePoint
    p3: BubblePoint

    def __post_init__(self):
        if len({self.p1, self.p2, self.p3}) != 3:
            raise ValueError("sigma0 needs three distinct points")

    def __repr__(self):
        return f"q({self.p1!r},{self.p2!r},{self.p3!r})"


@dataclass(frozen=True)
class Tau:
    """The reflection swapping e(p) and e(q): the transposition (p q)."""

    p: BubblePoint
    q: BubblePoint

    def __post_init__(self):
        if self.p == self.q:
            raise ValueError("tau needs two distinct points")

    def __repr__(self):
        return f"t({self.p!r},{self.q!r})"


def permutation(pairs: Iterable) -> Permutation:
    return Permutation(tuple(tuple(p) for p in pairs))


def sigma0(p1: BubblePoint, p2: BubblePoint, p3: BubblePoint) -> Sigma0:
    return Sigma0(p1, p2, p3)


def tau(p: BubblePoint, q: BubblePoint) -> Tau:
    return Tau(p, q)


def gen_support(g) -> set:
    if isinstance(g, Permutation):
        return {x for pair in g.pairs for x in pair}
    if isinstance(g, Sigma0):
        return {g.p1, g.p2, g.p3}
    if isinstance(g, Tau):
        return {g.p, g.q}
    raise TypeError(f"not a generator: {g!r}")


def gen_apply(g, v: ClassVector) -> ClassVector:
    """Action of a single generator on a class vector."""
    if isinstance(g, Permutation):
        m = g.mapping()
        return ClassVector(v.e0, {m.get(p, p): c for p, c in v.point_coeffs.items()})
    if isinstance(g, Tau):
        pts = v.point_coeffs
        cp, cq = pts.pop(g.p, 0), pts.pop(g.q, 0)
        if cq:
            pts[g.p] = cq
        if cp:
            pts[g.q] = cp
        return ClassVector(v.e0, pts)
    if isinstance(g, Sigma0):
        # reflection in w = e0 - e(p1) - e(p2) - e(p3), of self-intersection -2
        w = e0() - e(g.p1) - e(g.p2) - e(g.p3)
        return v + intersect(v, w) * w
    raise TypeError(f"not a generator: {g!r}")


# ---------------------------------------------------------------------------
# words


@dataclass(frozen=True)
class WeylWord:
    """An ordered tuple of generator letters, applied right-to-left."""

    letters: tuple

    def __mul__(self, other: "WeylWord") -> "WeylWord":
        return WeylWord(self.letters + other.letters)

    def __len__(self):
        return len(self.letters)

    def support(self) -> set:
        s = set()
        for g in self.letters:
            s |= gen_support(g)
        return s

    def apply(self, v: ClassVector) -> ClassVector:
        for g in reversed(self.letters):
            v = gen_apply(g, v)
        return v

    def inverse(self) -> "WeylWord":
        # every letter is an involution
        return WeylWord(tuple(reversed(self.letters)))

    def __repr__(self):
        return " * ".join(repr(g) for g in self.letters) if self.letters else "s()"


def word(*letters) -> WeylWord:
    return WeylWord(tuple(letters))


# ---------------------------------------------------------------------------
# realized elements


class WeylElement:
    """A finite-support lattice isometry as an exact integer matrix.

    ``matrix[i][j]`` is the coefficient of basis vector i in the image of
    basis vector j, over the basis (e0, e(p) for p in support).  Off the
    support the element acts as the identity.
    """

    __slots__ = ("support", "matrix")

    def __init__(self, support: Sequence[BubblePoint], matrix, validate: bool = True):
        support = tuple(sorted(support))
        matrix = tuple(tuple(int(x) for x in row) for row in matrix)
        if validate:
            n = len(support) + 1
            if len(matrix) != n or any(len(r) != n for r in matrix):
                raise ValueError("matrix size does not match support")
            if not intmat.preserves_form([list(r) for r in matrix]):
                raise ValueError("matrix does not preserve the intersection form")
            omega = [3] + [1] * len(support)
            if intmat.mat_vec(intmat.transpose([list(r) for r in matrix]), omega) != omega:
                raise ValueError("matrix does not preserve the canonical form")
            if matrix[0][0] < 1:
                raise ValueError("image of e0 must have positive degree")
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "matrix", matrix)

    def __setattr__(self, name, value):
        raise AttributeError("WeylElement is immutable")

    # -- basic structure

    @property
    def dim(self) -> int:
        return len(self.support) + 1

    def column(self, j: int) -> ClassVector:
        col = [self.matrix[i][j] for i in range(self.dim)]
        return ClassVector(col[0], {p: col[i + 1] for i, p in enumerate(self.support)})

    def image_e0(self) -> ClassVector:
        return self.column(0)

    def __eq__(self, other):
        return (
            isinstance(other, WeylElement)
            and self.support == other.support
            and self.matrix == other.matrix
        )

    def __hash__(self):
        return hash((self.support, self.matrix))

    def __repr__(self):
        return f"<WeylElement deg={degree(self)} on {len(self.support)} points>"


def _prune(support, matrix):
    """Drop support points whose basis column is the unit vector."""
    n = len(support)
    keep = []
    for i in range(n):
        col = [matrix[r][i + 1] for r in range(n + 1)]
        unit = all(c == (1 if r == i + 1 else 0) for r, c in enumerate(col))
        if not unit:
            keep.append(i)
    if len(keep) == n:
        return support, matrix
    idx = [0] + [i + 1 for i in keep]
    new_matrix = [[matrix[r][c] for c in idx] for r in idx]
    return [support[i] for i in keep], new_matrix


def element_from_images(images: dict) -> WeylElement:
    """Build a WeylElement from explicit images of e0 and of some e(p).

    ``images`` maps the key ``"e0"`` to a ClassVector and bubble points to
    ClassVectors.  Points appearing in images but without an explicit image
    are assumed fixed; the result is validated as a form- and omega-
    preserving integer matrix.
    """
    pts = set(p for p in images if p != "e0")
    for v in images.values():
        pts |= set(v.point_coeffs)
    support = sorted(pts)
    idx = {p: i + 1 for i, p in enumerate(support)}
    n = len(support) + 1
    matrix = [[0] * n for _ in range(n)]

    def emplace(col, v):
        matrix[0][col] = v.e0
        for p, c in v.point_coeffs.items():
            matrix[idx[p]][col] = c

    emplace(0, images["e0"])
    for p in support:
        if p in images:
            emplace(idx[p], images[p])
        else:
            matrix[idx[p]][idx[p]] = 1
    support2, matrix2 = _prune(support, matrix)
    return WeylElement(support2, matrix2)


def identity_element() -> WeylElement:
    return WeylElement((), ((1,),), validate=False)


@lru_cache(maxsize=4096)
def realize(w: WeylWord) -> WeylElement:
    """The integer matrix of a word, on the minimal support it moves."""
    support = sorted(w.support())
    images = {"e0": w.apply(e0())}
    for p in support:
        images[p] = w.apply(e(p))
    return element_from_images(images)


def apply(h: WeylElement, v: ClassVector) -> ClassVector:
    """h(v): matrix action on the support, identity elsewhere."""
    coords = [v.e0] + [v.coeff(p) for p in h.support]
    out = intmat.mat_vec([list(r) for r in h.matrix], coords)
    pts = {p: c for p, c in v.point_coeffs.items() if p not in set(h.support)}
    for i, p in enumerate(h.support):
        if out[i + 1]:
            pts[p] = pts.get(p, 0) + out[i + 1]
    return ClassVector(out[0], pts)


def compose(h1: WeylElement, h2: WeylElement) -> WeylElement:
    """Matrix product h1 h2 on the union of supports, pruned."""
    support = sorted(set(h1.support) | set(h2.support))
    m1 = _embed(h1, support)
    m2 = _embed(h2, support)
    support2, matrix = _prune(support, intmat.mat_mul(m1, m2))
    return WeylElement(support2, matrix, validate=False)


def _embed(h: WeylElement, support):
    idx = {p: i + 1 for i, p in enumerate(support)}
    own = {p: i + 1 for i, p in enumerate(h.support)}
    n = len(support) + 1
    m = [[0] * n for _ in range(n)]
    m[0][0] = h.matrix[0][0]
    for p in support:
        if p in own:
            m[idx[p]][0] = h.matrix[own[p]][0]
            m[0][idx[p]] = h.matrix[0][own[p]]
            for q in support:
                if q in own:
                    m[idx[p]][idx[q]] = h.matrix[own[p]][own[q]]
        else:
            m[idx[p]][idx[p]] = 1
    return m


def inverse(h: WeylElement) -> WeylElement:
    """h^{-1} = J h^T J, exact."""
    m = intmat.form_inverse([list(r) for r in h.matrix])
    support, m = _prune(list(h.support), m)
    return WeylElement(support, m, validate=False)


def conjugate(g: WeylElement, h: WeylElement) -> WeylElement:
    """g h g^{-1}."""
    return compose(compose(g, h), inverse(g))


def degree(h: WeylElement) -> int:
    """deg(h) = e0 . h(e0)."""
    return h.matrix[0][0]


# ---------------------------------------------------------------------------
# multiplicities and the degree identities


@dataclass(frozen=True)
class MultiplicityProfile:
    """Base-point multiplicities of h and h^{-1} over their common support.

    Conventions: a_i = e(p_i) . h(e0) (the base points of h^{-1} are the p_i
    with a_i != 0), b_i = e(p_i) . h^{-1}(e0), and c_i = (a_i + b_i)/2.
    """

    degree: int
    points: tuple
    a: tuple
    b: tuple
    c: tuple

    def sorted_by_c(self):
        order = sorted(range(len(self.points)), key=lambda i: (-self.c[i], self.points[i].id))
        return [(self.points[i], self.a[i], self.b[i], self.c[i]) for i in order]


def multiplicity_profile(h: WeylElement) -> MultiplicityProfile:
    d = degree(h)
    hinv = inverse(h)
    av = {p: -c for p, c in apply(h, e0()).point_coeffs.items()}
    bv = {p: -c for p, c in apply(hinv, e0()).point_coeffs.items()}
    pts = sorted(set(av) | set(bv))
    a = tuple(int(av.get(p, 0)) for p in pts)
    b = tuple(int(bv.get(p, 0)) for p in pts)
    if any(x < 0 for x in a) or any(x < 0 for x in b):
        raise ValueError("negative multiplicity: input is not in the Weyl group orbit of e0")
    c = tuple(Fraction(x + y, 2) for x, y in zip(a, b))
    # the degree identities are forced by form and omega invariance
    assert sum(x * x for x in a) == d * d - 1 and sum(a) == 3 * d - 3
    assert sum(x * x for x in b) == d * d - 1 and sum(b) == 3 * d - 3
    return MultiplicityProfile(d, tuple(pts), a, b, c)


@dataclass(frozen=True)
class NoetherReport:
    degree: int
    applicable: bool
    equalities_ok: bool = True
    identity_ok: bool = True
    pair_bound_ok: bool = True
    triple_bound_ok: bool = True
    witness: Optional[str] = None

    @property
    def ok(self):
        return self.equalities_ok and self.identity_ok and self.pair_bound_ok and self.triple_bound_ok


def noether_report(h: WeylElement) -> NoetherReport:
    """Check the degree/multiplicity identities and inequalities for h.

    Verifies, with the a_i sorted in decreasing order:
      * sum a_i^2 = d^2 - 1 and sum a_i = 3d - 3,
      * the exact identity
        (d-1)(a1 + a2 + a3 - (d+1)) = (a1-a3)(d-1-a1) + (a2-a3)(d-1-a2)
                                      + sum_{i>=4} a_i (a3 - a_i),
      * a_i + a_j <= d for all pairs, and
      * a1 + a2 + a3 >= d + 1.

    Degree-1 elements get an inapplicable report.
    """
    d = degree(h)
    if d < 2:
        return NoetherReport(d, applicable=False)
    prof = multiplicity_profile(h)
    a = sorted(prof.a, reverse=True)
    while len(a) < 3:
        a.append(0)
    eq_ok = sum(x * x for x in a) == d * d - 1 and sum(a) == 3 * d - 3
    lhs = (d - 1) * (a[0] + a[1] + a[2] - (d + 1))
    rhs = (a[0] - a[2]) * (d - 1 - a[0]) + (a[1] - a[2]) * (d - 1 - a[1])
    rhs += sum(ai * (a[2] - ai) for ai in a[3:])
    identity_ok = lhs == rhs
    pair_ok = a[0] + a[1] <= d
    triple_ok = a[0] + a[1] + a[2] >= d + 1
    witness = None
    if not (eq_ok and identity_ok and pair_ok and triple_ok):
        witness = f"d={d}, a={a}"
    return NoetherReport(d, True, eq_ok, identity_ok, pair_ok, triple_ok, witness)


# ---------------------------------------------------------------------------
# special families


def sigma_omega(p1: BubblePoint, omega: Iterable[BubblePoint]) -> WeylElement:
    """The involution rooted at p1 with an even satellite set omega.

    With 2m - 2 = len(omega) it sends e0 to m e0 - (m-1) e(p1) - sum e(q),
    e(p1) to (m-1) e0 - (m-2) e(p1) - sum e(q), and e(q) to
    e0 - e(p1) - e(q) for q in omega; everything else is fixed.  It is the
    product of the commuting half-integer reflections attached to the points
    of omega, which is an integer map exactly because len(omega) is even.
    """
    omega = sorted(set(omega))
    if p1 in omega:
        raise ValueError("the root point cannot belong to omega")
    if len(omega) % 2 != 0:
        raise ValueError("omega must contain an even number of points")
    if not omega:
        return identity_element()
    m = len(omega) // 2 + 1
    s_om = sum((e(q) for q in omega), ClassVector(0, {}))
    images = {
        "e0": ClassVector(m, {}) - (m - 1) * e(p1) - s_om,
        p1: ClassVector(m - 1, {}) - (m - 2) * e(p1) - s_om,
    }
    for q in omega:
        images[q] = e0() - e(p1) - e(q)
    return element_from_images(images)


def sigma_omega_word(p1: BubblePoint, omega: Iterable[BubblePoint]) -> WeylWord:
    """A word realizing sigma_omega: two letters per satellite pair."""
    omega = sorted(set(omega))
    if len(omega) % 2 != 0 or p1 in omega:
        raise ValueError("omega must be even and avoid the root")
    letters = []
    for i in range(0, len(omega), 2):
        a, b = omega[i], omega[i + 1]
        letters += [Sigma0(p1, a, b), Tau(a, b)]
    return WeylWord(tuple(letters))


def jonquieres_center(h: WeylElement) -> Optional[BubblePoint]:
    """A point p with h(e0 - e(p)) = e0 - e(p), smallest id first, or None."""
    for p in h.support:
        v = e0() - e(p)
        if apply(h, v) == v:
            return p
    return None


def halphen_class(points9: Sequence[BubblePoint]) -> ClassVector:
    pts = sorted(set(points9))
    if len(pts) != 9:
        raise ValueError("a Halphen class needs nine distinct points")
    return ClassVector(3, {p: -1 for p in pts})


def halphen_test(h: WeylElement, candidate: Optional[Sequence[BubblePoint]] = None) -> Optional[ClassVector]:
    """Search for an isotropic class K = 3 e0 - sum of nine e(p) fixed by h.

    With an explicit nine-point candidate this is a single exact check.
    Without one, nine-point subsets of the base points are tried, limited to
    the twelve points of largest average multiplicity c_i (a fixed K needs
    almost all the multiplicity mass on its nine points, so the cap is
    harmless in practice).  Subsets satisfying the sufficient numeric
    criterion

        d/3 >= 3 + (3 + sum_out b_j) (max_in |3 a_i - d| + sum_out a_j)

    are tried first; every candidate is confirmed by the exact identity
    h(K) = K before being returned.
    """
    if candidate is not None:
        K = halphen_class(candidate)
        return K if apply(h, K) == K else None
    if degree(h) < 2:
        return None
    prof = multiplicity_profile(h)
    ranked = [p for p, _, _, _ in prof.sorted_by_c()]
    pool = ranked[:12]
    if len(pool) < 9:
        return None
    d = Fraction(degree(h))
    amap = dict(zip(prof.points, prof.a))
    bmap = dict(zip(prof.points, prof.b))

    def criterion(subset):
        outside = [p for p in prof.points if p not in subset]
        rest_a = sum(amap[p] for p in outside)
        rest_b = sum(bmap[p] for p in outside)
        spread = max(abs(3 * amap[p] - d) for p in subset)
        return d / 3 >= 3 + (3 + rest_b) * (spread + rest_a)

    subsets = [frozenset(s) for s in itertools.combinations(pool, 9)]
    subsets.sort(key=lambda s: (not criterion(s), sorted(p.id for p in s)))
    for subset in subsets:
        K = halphen_class(sorted(subset))
        if apply(h, K) == K:
            return K
    return None


def coxeter_generators(n: int) -> list[WeylWord]:
    """The n standard involutions on n fresh points.

    s0 is the quadratic involution on the first three points and s_i swaps
    points i and i+1; the realized matrices satisfy the Coxeter relations of
    the T(2, 3, n-3) diagram.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    pts = [point(label=f"c{i + 1}") for i in range(n)]
    gens = [WeylWord((Sigma0(pts[0], pts[1], pts[2]),))]
    for i in range(n - 1):
        gens.append(WeylWord((Tau(pts[i], pts[i + 1]),)))
    return gens


def quadratic_decompose(h: WeylElement):
    """Write a degree-2 element as s . sigma0 . s' with s, s' of degree 1.

    Returns (s, sigma0_letter, s_prime) as (WeylElement, Sigma0, WeylElement);
    the three recompose to h exactly.
    """
    if degree(h) != 2:
        raise ValueError(f"quadratic decomposition needs degree 2, got {degree(h)}")
    img = apply(h, e0())
    base = sorted(img.point_coeffs)
    assert len(base) == 3 and all(img.coeff(p) == -1 for p in base)
    sig = Sigma0(base[0], base[1], base[2])
    sig_elem = realize(WeylWord((sig,)))
    s_prime = compose(sig_elem, h)
    assert degree(s_prime) == 1
    return identity_element(), sig, s_prime


# ---------------------------------------------------------------------------
# the increasing normal form


_ALLOWED_SHAPES = ("e0", "e(q)", "e0-e(q)", "3e0-sum")


def _shape_of(v: ClassVector) -> str:
    pts = v.point_coeffs
    if v.e0 == 1 and not pts:
        return "e0"
    if v.e0 == 0 and len(pts) == 1 and next(iter(pts.values())) == 1:
        return "e(q)"
    if v.e0 == 1 and len(pts) == 1 and next(iter(pts.values())) == -1:
        return "e0-e(q)"
    if v.e0 == 3 and pts and all(c == -1 for c in pts.values()):
        return "3e0-sum"
    raise ValueError(
        "normalize_increasing only handles e0, e(q), e0 - e(q) and 3e0 - sum of distinct e(q_i)"
    )


def _descent_triple(u: ClassVector, pool):
    """Top three multiplicity points of u, padded from pool, ties by id."""
    mult = {p: -c for p, c in u.point_coeffs.items()}
    ranked = sorted(mult, key=lambda p: (-mult[p], p.id))
    triple = ranked[:3]
    it = iter(pool)
    while len(triple) < 3:
        cand = next(it, None)
        if cand is None:
            cand = point()
        if cand not in triple:
            triple.append(cand)
    gain = sum(mult.get(p, 0) for p in triple)
    return triple, gain


def _involution_pair(mapping: dict):
    """Split a finite permutation into at most two disjoint-transposition letters."""
    # cycle decomposition
    seen = set()
    r1, r2 = [], []
    for start in sorted(mapping):
        if start in seen or mapping[start] == start:
            seen.add(start)
            continue
        cycle = [start]
        nxt = mapping[start]
        while nxt != start:
            cycle.append(nxt)
            nxt = mapping[nxt]
        seen |= set(cycle)
        k = len(cycle)
        # rotation by one = r2 . r1 with two reversals of the cycle:
        # r1 swaps i with -i (mod k), r2 swaps i with 1-i (mod k)
        for i in range(1, (k + 1) // 2):
            r1.append((cycle[i], cycle[k - i]))
        r2.append((cycle[0], cycle[1]))
        i = 2
        while i < k + 1 - i:
            r2.append((cycle[i], cycle[k + 1 - i]))
            i += 1
    letters = []
    if r2:
        letters.append(Permutation(tuple(r2)))
    if r1:
        letters.append(Permutation(tuple(r1)))
    return letters


def _match_permutation(v: ClassVector, target: ClassVector) -> dict:
    """A finite permutation mapping with s(v) = target, for same-shape pairs."""
    src = sorted(v.point_coeffs)
    dst = sorted(target.point_coeffs)
    if v.e0 != target.e0 or len(src) != len(dst):
        raise ValueError("shape mismatch between start vector and descent endpoint")
    mapping = dict(zip(src, dst))
    # complete to a genuine permutation of the union
    missing_src = [p for p in dst if p not in mapping]
    missing_dst = [p for p in src if p not in set(mapping.values())]
    mapping.update(dict(zip(missing_src, missing_dst)))
    return {k: w for k, w in mapping.items() if k != w}


def normalize_increasing(w: WeylWord, v: ClassVector) -> WeylWord:
    """Rewrite a word, relative to v, so partial degrees strictly increase.

    The returned word w' satisfies realize(w')(v) = realize(w)(v) and its
    quadratic letters, applied right to left, pass through images of v of
    strictly increasing e0-degree (permutation letters in between leave the
    degree unchanged).  In particular the final image is some e(q) or has
    non-negative multiplicities.

    The construction runs the degree descent backwards: starting from the
    target image, quadratic involutions on the three points of largest
    multiplicity strictly decrease the degree until a permutation image of
    v remains; reversing the chain gives the increasing word.
    """
    _shape_of(v)
    target = w.apply(v)
    pool = sorted(w.support() | set(v.point_coeffs) | set(target.point_coeffs))
    chain = []
    cur = target
    guard = 0
    while True:
        if any(c > 0 for c in cur.point_coeffs.values()) and _shape_quick(cur) != "e(q)":
            raise AssertionError("descent produced a negative multiplicity")
        d = cur.e0
        triple, gain = _descent_triple(cur, pool)
        if d <= 0 or gain <= d:
            break
        sig = Sigma0(*triple)
        chain.append(sig)
        cur = gen_apply(sig, cur)
        for p in triple:
            if p not in pool:
                pool.append(p)
        guard += 1
        if guard > 10000:
            raise RuntimeError("descent did not terminate")
    mapping = _match_permutation(v, cur)
    letters = tuple(chain) + tuple(_involution_pair(mapping))
    if not letters:
        letters = (Permutation(()),)
    out = WeylWord(letters)
    assert out.apply(v) == target
    return out


def _shape_quick(u: ClassVector):
    pts = u.point_coeffs
    if u.e0 == 0 and len(pts) == 1 and next(iter(pts.values())) == 1:
        return "e(q)"
    return None


def increasing_degrees(w: WeylWord, v: ClassVector) -> list:
    """The e0-degrees of the partial images of v after each quadratic letter."""
    degs = []
    cur = v
    for g in reversed(w.letters):
        cur = gen_apply(g, cur)
        if isinstance(g, Sigma0):
            degs.append(cur.e0)
    return degs


# ---------------------------------------------------------------------------
# word grammar


_TOKEN = re.compile(r"\s*(?:(?P<op>\*)|(?P<kind>[qts])\s*(?P<args>(?:\([^()]*\))+))")
_GROUP = re.compile(r"\(([^()]*)\)")


class WordSyntaxError(ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def parse_word(text: str, names: Optional[dict] = None):
    """Parse the word grammar; returns (WeylWord, name -> point mapping).

    Grammar: ``q(p1,p2,p3)`` for the quadratic involution, ``t(p,q)`` for a
    transposition reflection, ``s(p1 p2)(p3 p4)`` for a permutation given by
    disjoint transpositions, with ``*`` composing right-to-left.
    """
    names = dict(names) if names else {}

    def lookup(tok, pos):
        tok = tok.strip()
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", tok):
            raise WordSyntaxError(f"bad point name {tok!r}", pos)
        if tok not in names:
            names[tok] = point(label=tok)
        return names[tok]

    letters = []
    pos = 0
    expecting_term = True
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            raise WordSyntaxError("unrecognized token", pos)
        if m.group("op"):
            if expecting_term:
                raise WordSyntaxError("misplaced '*'", pos)
            expecting_term = True
            pos = m.end()
            continue
        if not expecting_term:
            raise WordSyntaxError("missing '*' between letters", pos)
        kind, args = m.group("kind"), m.group("args")
        groups = _GROUP.findall(args)
        if kind == "q":
            if len(groups) != 1:
                raise WordSyntaxError("q takes one group", pos)
            parts = [s for s in re.split(r"[,\s]+", groups[0].strip()) if s]
            if len(parts) != 3:
                raise WordSyntaxError("q needs three points", pos)
            try:
                letters.append(Sigma0(*(lookup(t, pos) for t in parts)))
            except ValueError as exc:
                raise WordSyntaxError(str(exc), pos) from None
        elif kind == "t":
            if len(groups) != 1:
                raise WordSyntaxError("t takes one group", pos)
            parts = [s for s in re.split(r"[,\s]+", groups[0].strip()) if s]
            if len(parts) != 2:
                raise WordSyntaxError("t needs two points", pos)
            try:
                letters.append(Tau(*(lookup(t, pos) for t in parts)))
            except ValueError as exc:
                raise WordSyntaxError(str(exc), pos) from None
        else:
            pairs = []
            for g in groups:
                parts = [s for s in re.split(r"[,\s]+", g.strip()) if s]
                if parts:
                    if len(parts) != 2:
                        raise WordSyntaxError("each s(...) group needs two points", pos)
                    pairs.append((lookup(parts[0], pos), lookup(parts[1], pos)))
            try:
                letters.append(Permutation(tuple(pairs)))
            except ValueError as exc:
                raise WordSyntaxError(str(exc), pos) from None
        expecting_term = False
        pos = m.end()
    if expecting_term and letters:
        raise WordSyntaxError("dangling '*'", len(text))
    return WeylWord(tuple(letters)), names


def print_word(w: WeylWord) -> str:
    """Inverse of parse_word for words over labelled points."""
    if not w.letters:
        return "s()"
    out = []
    for g in w.letters:
        if isinstance(g, Sigma0):
            out.append(f"q({g.p1!r},{g.p2!r},{g.p3!r})")
        elif isinstance(g, Tau):
            out.append(f"t({g.p!r},{g.q!r})")
        else:
            out.append("s" + ("".join(f"({a!r} {b!r})" for a, b in g.pairs) or "()"))
    return " * ".join(out)
