"""Monic integer polynomials: roots, cyclotomic stripping, Salem/Pisot tests.

Everything that certifies a classification is exact: cyclotomic factors are
removed by trial division over Z, real-root counting uses Sturm sequences
over Q, and circle roots of reciprocal polynomials are located through the
substitution y = x + 1/x (a root lies on the unit circle exactly when the
transformed polynomial has a real root in (-2, 2)).  Floating point is used
only to polish root values to a requested tolerance, never to decide a
classification of a reciprocal factor.
"""

from __future__ import annotations

import cmath
import itertools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence


class IntPolynomial:
    """A monic polynomial with integer coefficients, degree >= 1.

    Coefficients are stored in ascending order; ``coeffs[-1] == 1``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[int]):
        coeffs = [int(c) for c in coeffs]
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        if len(coeffs) < 2:
            raise ValueError("degree must be at least 1")
        if coeffs[-1] != 1:
            raise ValueError("polynomial must be monic")
        self.coeffs = tuple(coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def is_reciprocal(self) -> bool:
        return self.coeffs == self.coeffs[::-1]

    def reciprocal(self) -> "IntPolynomial":
        rev = self.coeffs[::-1]
        if rev[-1] == -1:
            rev = tuple(-c for c in rev)
        if rev[-1] != 1:
            raise ValueError("reversal is not monic up to sign")
        return IntPolynomial(rev)

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        return IntPolynomial(_mul(self.coeffs, other.coeffs))

    def __repr__(self):
        return format_poly(self)


# -- raw coefficient helpers (ascending int/Fraction lists) -----------------

def _mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _divmod_monic(a, b):
    """Divide by a monic divisor; exact integer arithmetic."""
    a = list(a)
    db = len(b) - 1
    q = [0] * max(1, len(a) - db)
    for i in range(len(a) - db - 1, -1, -1):
        f = a[i + db]
        if f:
            q[i] = f
            for j, y in enumerate(b):
                a[i + j] -= f * y
    return q, a[:db] if db else [0]


def divides(b: IntPolynomial, a: IntPolynomial) -> bool:
    if b.degree > a.degree:
        return False
    _, r = _divmod_monic(a.coeffs, b.coeffs)
    return all(c == 0 for c in r)


def exact_div(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    q, r = _divmod_monic(a.coeffs, b.coeffs)
    if any(c != 0 for c in r):
        raise ValueError("division is not exact")
    return IntPolynomial(q)


def _deriv(a):
    return [i * c for i, c in enumerate(a)][1:] or [0]


def _gcd_q(a, b):
    """Monic gcd over Q of ascending Fraction/int coefficient lists."""
    a = [Fraction(c) for c in a]
    b = [Fraction(c) for c in b]

    def trim(p):
        while len(p) > 1 and p[-1] == 0:
            p.pop()
        return p

    a, b = trim(a), trim(b)
    while len(b) > 1 or b[0] != 0:
        if len(b) == 1:
            a, b = b, [Fraction(0)]
            break
        # remainder of a by b
        r = a[:]
        db = len(b) - 1
        inv = 1 / b[-1]
        for i in range(len(r) - db - 1, -1, -1):
            f = r[i + db] * inv
            if f:
                for j, y in enumerate(b):
                    r[i + j] -= f * y
        a, b = b, trim(r[:db] or [Fraction(0)])
    lead = a[-1]
    return [c / lead for c in a]


def squarefree_part(p: IntPolynomial) -> IntPolynomial:
    g = _gcd_q(p.coeffs, _deriv(p.coeffs))
    if len(g) == 1:
        return p
    q, r = _divmod_fraction(p.coeffs, g)
    assert all(c == 0 for c in r)
    lead = q[-1]
    return IntPolynomial([int(c / lead) for c in q])


def _divmod_fraction(a, b):
    a = [Fraction(c) for c in a]
    b = [Fraction(c) for c in b]
    db = len(b) - 1
    q = [Fraction(0)] * max(1, len(a) - db)
    inv = 1 / b[-1]
    for i in range(len(a) - db - 1, -1, -1):
        f = a[i + db] * inv
        if f:
            q[i] = f
            for j, y in enumerate(b):
                a[i + j] -= f * y
    return q, a[:db] if db else [Fraction(0)]


# -- cyclotomic polynomials --------------------------------------------------

_cyclotomic_cache: dict[int, IntPolynomial] = {}


def cyclotomic(n: int) -> IntPolynomial:
    """The n-th cyclotomic polynomial, by recursive exact division."""
    if n in _cyclotomic_cache:
        return _cyclotomic_cache[n]
    xn_minus_1 = IntPolynomial([-1] + [0] * (n - 1) + [1])
    result = xn_minus_1
    for d in range(1, n):
        if n % d == 0:
            result = exact_div(result, cyclotomic(d))
    _cyclotomic_cache[n] = result
    return result


def _euler_phi(n: int) -> int:
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _cyclotomic_indices(max_phi: int):
    # phi(n) >= sqrt(n/2), so n <= 2 max_phi^2 bounds the search
    for n in range(1, 2 * max_phi * max_phi + 3):
        if _euler_phi(n) <= max_phi:
            yield n


def strip_cyclotomic(p: IntPolynomial) -> Optional[IntPolynomial]:
    """Divide out every cyclotomic factor, repeatedly; None if nothing is left.

    Returns the cyclotomic-free part, or None when p is a product of
    cyclotomic polynomials (constant quotient).
    """
    coeffs = list(p.coeffs)
    changed = True
    while changed and len(coeffs) > 1:
        changed = False
        deg = len(coeffs) - 1
        for n in _cyclotomic_indices(deg):
            phi = cyclotomic(n)
            while len(coeffs) - 1 >= phi.degree:
                q, r = _divmod_monic(coeffs, phi.coeffs)
                if all(c == 0 for c in r):
                    coeffs = q
                    changed = True
                else:
                    break
            if len(coeffs) == 1:
                break
    if len(coeffs) == 1:
        return None
    return IntPolynomial(coeffs)


# -- Sturm sequences and exact real-root location ---------------------------

def _sturm_chain(coeffs):
    chain = [[Fraction(c) for c in coeffs]]
    d = [Fraction(c) for c in _deriv(coeffs)]
    if len(d) > 1 or d[0] != 0:
        chain.append(d)
    while True:
        a, b = chain[-2], chain[-1]
        if len(b) == 1 and b[0] == 0:
            chain.pop()
            break
        _, r = _divmod_fraction(a, b)
        r = list(r)
        while len(r) > 1 and r[-1] == 0:
            r.pop()
        if len(r) == 1 and r[0] == 0:
            break
        chain.append([-c for c in r])
        if len(r) == 1:
            break
    return chain


def _sign_changes(chain, x):
    signs = []
    for p in chain:
        acc = Fraction(0)
        for c in reversed(p):
            acc = acc * x + c
        if acc != 0:
            signs.append(1 if acc > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _sign_changes_inf(chain, positive: bool):
    signs = []
    for p in chain:
        lead = p[-1]
        if lead == 0:
            continue
        s = 1 if lead > 0 else -1
        if not positive and (len(p) - 1) % 2 == 1:
            s = -s
        signs.append(s)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(p: IntPolynomial, lo=None, hi=None) -> int:
    """Distinct real roots in (lo, hi]; None endpoints mean +-infinity."""
    sf = squarefree_part(p)
    chain = _sturm_chain(sf.coeffs)
    va = _sign_changes(chain, Fraction(lo)) if lo is not None else _sign_changes_inf(chain, False)
    vb = _sign_changes(chain, Fraction(hi)) if hi is not None else _sign_changes_inf(chain, True)
    return va - vb


def cauchy_bound(p: IntPolynomial) -> Fraction:
    return 1 + max(abs(Fraction(c)) for c in p.coeffs[:-1])


def dominant_real_root(p: IntPolynomial, tol: float = 1e-12) -> Optional[float]:
    """The largest real root > 1, to within tol, or None.

    Located by exact sign bisection on the squarefree part (a Sturm count
    isolates the largest root when the polynomial does not change sign at 1).
    """
    sf = squarefree_part(p)
    bound = cauchy_bound(sf)
    n_gt1 = count_real_roots(sf, 1, bound)
    if n_gt1 == 0:
        return None
    lo, hi = Fraction(1), bound
    if n_gt1 > 1:
        # shrink until (lo, hi] holds exactly the largest root
        while count_real_roots(sf, lo, hi) > 1:
            mid = (lo + hi) / 2
            if count_real_roots(sf, mid, hi) >= 1:
                lo = mid
            else:
                hi = mid
    # now exactly one simple root in (lo, hi]: certified sign bisection
    if sf(hi) == 0:
        return float(hi)
    flo = sf(lo)
    if flo == 0:
        lo += min(Fraction(1, 10 ** 6), (hi - lo) / 4)
        flo = sf(lo)
    while hi - lo > Fraction(tol).limit_denominator(10 ** 15) / 4:
        mid = (lo + hi) / 2
        fm = sf(mid)
        if fm == 0:
            return float(mid)
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
        if float(hi - lo) < tol / 4:
            break
    return float((lo + hi) / 2)


# -- Aberth-Ehrlich simultaneous root finding --------------------------------

def _aberth(coeffs, tol):
    n = len(coeffs) - 1
    scale = max(abs(c) for c in coeffs)
    cs = [c / scale for c in coeffs]
    ds = _deriv(cs)

    def ev(poly, z):
        acc = 0j
        for c in reversed(poly):
            acc = acc * z + c
        return acc

    radius = 1 + max(abs(c) for c in cs[:-1]) / abs(cs[-1])
    roots = [radius * 0.7 * cmath.exp(2j * math.pi * (k + 0.35) / n) for k in range(n)]
    for _ in range(400):
        moved = 0.0
        for i in range(n):
            z = roots[i]
            pv = ev(cs, z)
            dv = ev(ds, z)
            if dv == 0:
                roots[i] = z + (0.01 + 0.01j)
                moved = math.inf
                continue
            newton = pv / dv
            rep = sum(1 / (z - roots[j]) for j in range(n) if j != i)
            denom = 1 - newton * rep
            step = newton / denom if denom != 0 else newton
            roots[i] = z - step
            moved = max(moved, abs(step))
        if moved < tol * 1e-3:
            break
    return roots


def yun_decomposition(p: IntPolynomial) -> list[tuple[IntPolynomial, int]]:
    """Squarefree factors with multiplicities (Yun's algorithm, exact)."""
    a = [Fraction(c) for c in p.coeffs]
    g = _gcd_q(a, _deriv(a))
    if len(g) == 1:
        return [(p, 1)]
    parts = []
    w, _ = _divmod_fraction(a, g)
    y, _ = _divmod_fraction(_deriv(a), g)
    k = 1
    while len(w) > 1:
        z = [yy - dd for yy, dd in
             itertools.zip_longest(y, _deriv(w), fillvalue=Fraction(0))]
        while len(z) > 1 and z[-1] == 0:
            z.pop()
        f = _gcd_q(w, z)
        if len(f) > 1:
            assert all(c.denominator == 1 for c in f)
            parts.append((IntPolynomial([int(c) for c in f]), k))
        w, _ = _divmod_fraction(w, f)
        y, _ = _divmod_fraction(z, f)
        k += 1
    return parts


def roots(p: IntPolynomial, tol: float = 1e-10) -> list[tuple[complex, int]]:
    """All complex roots with multiplicities, residual below tol at scale.

    Multiplicities come from exact squarefree decomposition; the dominant
    real root, when present, is replaced by its certified bisection value.
    """
    parts = yun_decomposition(p)
    out = []
    for fac, mult in parts:
        if fac.degree == 0:
            continue
        rs = _aberth(list(fac.coeffs), tol)
        dom = dominant_real_root(fac, tol)
        if dom is not None:
            best = min(range(len(rs)), key=lambda i: abs(rs[i] - dom))
            rs[best] = complex(dom, 0.0)
        for z in rs:
            if abs(z.imag) < tol * max(1.0, abs(z.real)):
                z = complex(z.real, 0.0)
            out.append((z, mult))
    return out


# -- the y = x + 1/x transform for reciprocal polynomials --------------------

def to_trace_poly(p: IntPolynomial) -> IntPolynomial:
    """For palindromic p of even degree 2n, the monic Q with p = x^n Q(x+1/x)."""
    if not p.is_reciprocal() or p.degree % 2 != 0:
        raise ValueError("trace transform needs a palindromic polynomial of even degree")
    n = p.degree // 2
    c = p.coeffs
    # Dickson basis: x^k + x^{-k} = D_k(y) with D_0 = 2, D_1 = y, and
    # D_k = y D_{k-1} - D_{k-2}
    d_prev, d_cur = [2], [0, 1]
    q = [0] * (n + 1)
    q[0] = c[n]
    for k in range(1, n + 1):
        if k > 1:
            d_next = [a - b for a, b in itertools.zip_longest(
                [0] + d_cur, d_prev, fillvalue=0)]
            d_prev, d_cur = d_cur, d_next
        for j, dc in enumerate(d_cur):
            q[j] += c[n + k] * dc
    assert q[n] == 1
    return IntPolynomial(q)


def from_trace_poly(q: IntPolynomial) -> IntPolynomial:
    """Inverse transform: the palindromic p(x) = x^n q(x + 1/x)."""
    n = q.degree
    out = [0] * (2 * n + 1)
    # x^{n-j} (x^2+1)^j expanded
    for j, c in enumerate(q.coeffs):
        if c == 0:
            continue
        for t in range(j + 1):
            out[(n - j) + 2 * t] += c * math.comb(j, t)
    return IntPolynomial(out)


# -- classification -----------------------------------------------------------

KINDS = (
    "cyclotomic_product",
    "reciprocal_quadratic",
    "pisot",
    "salem",
    "other_perron",
    "no_root_gt_one",
)


@dataclass(frozen=True)
class NumberClass:
    kind: str
    dominant_root: float
    stripped: Optional[IntPolynomial]
    notes: tuple = ()


def classify_number(p: IntPolynomial, tol: float = 1e-10) -> NumberClass:
    """Classify the dominant root of p after removing cyclotomic factors.

    Salem and circle-root decisions on the reciprocal part are exact (Sturm
    counts through the y = x + 1/x transform); only the root value itself is
    a floating approximation.  Reciprocal quadratic integers are reported as
    their own kind; by the usual convention they count as Pisot numbers.
    """
    notes = []
    stripped = strip_cyclotomic(p)
    if stripped is None:
        return NumberClass("cyclotomic_product", 1.0, None)
    if stripped != p:
        notes.append("cyclotomic factors removed")
    sf = squarefree_part(stripped)
    if sf != stripped:
        notes.append("repeated factors; classifying the squarefree part")
    # pull off x^k (roots at the origin are inside the disk)
    core = list(sf.coeffs)
    shift = 0
    while core[0] == 0:
        core.pop(0)
        shift += 1
    if shift:
        notes.append(f"root at 0 with multiplicity {shift} ignored")
    if len(core) == 1:
        return NumberClass("no_root_gt_one", 1.0, stripped, tuple(notes))
    sf = IntPolynomial(core)
    lam = dominant_real_root(sf, tol)
    if lam is None or lam <= 1:
        return NumberClass("no_root_gt_one", 1.0, stripped, tuple(notes))
    if sf.degree == 2 and sf.is_reciprocal():
        return NumberClass("reciprocal_quadratic", lam, stripped, tuple(notes))
    if sf.is_reciprocal() and sf.degree % 2 == 0:
        q = to_trace_poly(sf)
        n = q.degree
        big = cauchy_bound(q) + 2
        above = count_real_roots(q, 2, big)
        below = count_real_roots(q, -big, -2)
        middle = count_real_roots(q, -2, 2)
        if above == 1 and below == 0 and middle == n - 1 and sf.degree >= 4:
            return NumberClass("salem", lam, stripped, tuple(notes))
        # reciprocal but not a Salem layout
        return NumberClass("other_perron", lam, stripped, tuple(notes))
    # non-reciprocal part: split off the reciprocal factor carrying any
    # circle roots, then count outside roots of the remainder numerically
    recip_part = _gcd_q(sf.coeffs, list(sf.coeffs[::-1]))
    circle = 0
    outside_recip = 0
    rest = sf
    if len(recip_part) > 1:
        rp = IntPolynomial([int(c) for c in recip_part])
        rest = IntPolynomial([int(c) for c in _divmod_fraction(sf.coeffs, recip_part)[0]])
        if rp.is_reciprocal() and rp.degree % 2 == 0:
            qq = to_trace_poly(rp)
            inside_circle_pairs = count_real_roots(qq, -2, 2)
            circle = 2 * inside_circle_pairs
            outside_recip = (rp.degree - circle) // 2
        else:
            notes.append("odd reciprocal factor; circle count by modulus")
            circle = sum(m for z, m in roots(rp, tol) if abs(abs(z) - 1) <= tol)
            outside_recip = sum(m for z, m in roots(rp, tol) if abs(z) > 1 + tol)
    outside = outside_recip
    if rest.degree >= 1:
        outside += sum(m for z, m in roots(rest, tol) if abs(z) > 1 + tol)
    if outside == 1 and circle == 0:
        return NumberClass("pisot", lam, stripped, tuple(notes))
    return NumberClass("other_perron", lam, stripped, tuple(notes))


# -- named constants ----------------------------------------------------------

LEHMER_POLYNOMIAL = IntPolynomial([1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])
PLASTIC_POLYNOMIAL = IntPolynomial([-1, -1, 0, 1])
GOLDEN_POLYNOMIAL = IntPolynomial([-1, -1, 1])


def named_constants() -> dict:
    """The three reference constants, computed from their polynomials."""
    return {
        "lambda_lehmer": {
            "polynomial": LEHMER_POLYNOMIAL,
            "value": dominant_real_root(LEHMER_POLYNOMIAL, 1e-13),
        },
        "lambda_plastic": {
            "polynomial": PLASTIC_POLYNOMIAL,
            "value": dominant_real_root(PLASTIC_POLYNOMIAL, 1e-13),
        },
        "lambda_golden": {
            "polynomial": GOLDEN_POLYNOMIAL,
            "value": dominant_real_root(GOLDEN_POLYNOMIAL, 1e-13),
        },
    }


def lehmer_number() -> float:
    return named_constants()["lambda_lehmer"]["value"]


def spectral_gap_assert(lam: float, tol: float = 1e-9) -> bool:
    """True when lam avoids the forbidden band between 1 and the Lehmer number."""
    if lam < 1 - tol:
        raise ValueError("dynamical degrees are at least 1")
    return lam <= 1 + tol or lam >= lehmer_number() - tol


# -- bounded-degree Salem enumeration ----------------------------------------

class SearchSpaceError(RuntimeError):
    pass


def enumerate_salem(degree_bound: int, upper: float, node_limit: int = 5_000_000):
    """All Salem numbers of degree <= degree_bound with value <= upper.

    The search is exhaustive: a Salem polynomial of degree 2n with root in
    (1, a] is x^n Q(x + 1/x) for a monic integer Q of degree n having one
    root in (2, a + 1/a] and n - 1 roots in [-2, 2].  Power sums of such
    roots obey s_k in (2^k - (n-1) 2^k, (a + 1/a)^k + (n-1) 2^k], which via
    the Newton identities bounds each coefficient of Q given the previous
    ones; this is the symmetric-function coefficient bound made effective.
    Every candidate surviving the interval pruning is checked exactly with
    Sturm counts, so the output is complete and certified.

    Returns (polynomial, root) pairs sorted by root.
    """
    if degree_bound < 4 or degree_bound % 2 != 0:
        raise ValueError("degree bound must be an even integer >= 4")
    if upper <= 1:
        raise ValueError("upper bound must exceed 1")
    a = Fraction(upper).limit_denominator(10 ** 12)
    big_a = a + 1 / a
    found = {}
    visited = 0
    for half in range(2, degree_bound // 2 + 1):
        n = half

        def s_bounds(k):
            spread = (n - 1) * 2 ** k
            lo = 2 ** k - (spread if k % 2 == 1 else 0)
            hi = big_a ** k + spread
            return Fraction(lo), Fraction(hi)

        def extend(qs, ss):
            nonlocal visited
            visited += 1
            if visited > node_limit:
                raise SearchSpaceError(
                    f"search space exceeded {node_limit} nodes; tighten the bounds")
            k = len(qs) + 1
            lo, hi = s_bounds(k)
            # newton: s_k = -(k q_k + sum_{i<k} q_i s_{k-i})
            tail = sum(qs[i] * ss[k - 2 - i] for i in range(k - 1))
            q_lo = math.ceil((-hi - tail) / k)
            q_hi = math.floor((-lo - tail) / k)
            if k == n:
                # last coefficient: intersect with sign conditions, linear in
                # q_n.  Q(2) = prod(2 - y_i) <= 0 (one root above 2), Q(A) =
                # prod(A - y_i) >= 0, and Q(-2) = prod(-2 - y_i) has the sign
                # of (-1)^n since every factor is <= 0.
                base2 = 2 ** n + sum(qs[i] * 2 ** (n - 1 - i) for i in range(n - 1))
                basem2 = (-2) ** n + sum(qs[i] * (-2) ** (n - 1 - i) for i in range(n - 1))
                basea = big_a ** n + sum(qs[i] * big_a ** (n - 1 - i) for i in range(n - 1))
                q_hi = min(q_hi, math.floor(-base2))
                q_lo = max(q_lo, math.ceil(-basea))
                if n % 2 == 1:
                    q_hi = min(q_hi, math.floor(-basem2))
                else:
                    q_lo = max(q_lo, math.ceil(-basem2))
                for qn in range(q_lo, q_hi + 1):
                    _check_candidate(qs + [qn], n, a, big_a, found)
                return
            for qk in range(q_lo, q_hi + 1):
                sk = -(k * qk + tail)
                extend(qs + [qk], ss + [sk])

        extend([], [])
    result = sorted(found.items(), key=lambda kv: kv[1])
    return [(poly, root) for poly, root in result]


def _check_candidate(qcoeffs, n, a, big_a, found):
    # qcoeffs = [q1, ..., qn] with Q = y^n + q1 y^{n-1} + ... + qn
    q = IntPolynomial(list(reversed(qcoeffs)) + [1])
    if count_real_roots(q, 2, big_a) != 1:
        return
    if count_real_roots(q, -2, 2) != n - 1:
        return
    bound = cauchy_bound(q) + 2
    if count_real_roots(q, big_a, bound) != 0 or count_real_roots(q, -bound, -2) != 0:
        return
    p = from_trace_poly(q)
    if strip_cyclotomic(p) != p:
        # carries roots of unity; the cyclotomic-free core, if Salem, is
        # found at its own (smaller) degree
        return
    cls = classify_number(p)
    if cls.kind != "salem":
        return
    if p not in found:
        found[p] = cls.dominant_root


# -- text format --------------------------------------------------------------

_TERM = re.compile(
    r"\s*(?P<sign>[+-])?\s*(?:(?P<coeff>\d+)\s*\*?\s*)?(?:(?P<var>x)(?:\s*\^\s*(?P<exp>\d+))?)?"
)

import re  # noqa: E402  (kept close to its single user)


def parse_poly(text: str) -> IntPolynomial:
    """Parse ``x^10 + x^9 - x^7 - ... + 1`` into an IntPolynomial."""
    pos = 0
    terms = []
    text = text.strip()
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial at position {pos}: {text[pos:]!r}")
        sign = -1 if m.group("sign") == "-" else 1
        coeff = m.group("coeff")
        var = m.group("var")
        if coeff is None and var is None:
            raise ValueError(f"empty term at position {pos}")
        c = int(coeff) if coeff else 1
        if var:
            exp = int(m.group("exp")) if m.group("exp") else 1
        else:
            exp = 0
        terms.append((exp, sign * c))
        pos = m.end()
    deg = max(e for e, _ in terms)
    coeffs = [0] * (deg + 1)
    for exp, c in terms:
        coeffs[exp] += c
    return IntPolynomial(coeffs)


def format_poly(p: IntPolynomial) -> str:
    parts = []
    for exp in range(p.degree, -1, -1):
        c = p.coeffs[exp]
        if c == 0:
            continue
        mag = abs(c)
        if exp == 0:
            body = str(mag)
        elif exp == 1:
            body = "x" if mag == 1 else f"{mag}*x"
        else:
            body = f"x^{exp}" if mag == 1 else f"{mag}*x^{exp}"
        parts.append(("-" if c < 0 else "+", body))
    if not parts:
        return "0"
    sign0, body0 = parts[0]
    out = ("-" if sign0 == "-" else "") + body0
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out
