"""Spectral analysis of realized Weyl elements as hyperbolic isometries.

Classification is certified, not fitted: the characteristic polynomial is
computed exactly, its cyclotomic part is divided out exactly, and

* a nontrivial cyclotomic-free part forces spectral radius > 1 (a monic
  integer polynomial with no cyclotomic factor and nonzero constant term
  must have a root off the unit circle), so the element is loxodromic and
  its dynamical degree is the dominant real root, refined by exact sign
  bisection;
* otherwise every eigenvalue is a root of unity of known order; with k the
  lcm of the orders, M^k is unipotent and the Jordan ranks of (M^k - I)
  decide between finite order and the two parabolic growth types.

For a finite-support isometry of a lattice of signature (1, n), a unipotent
part can only produce quadratic growth of e0 . h^n(e0) (a rank-one nilpotent
with isotropic image moves nothing), so the linear-growth branch below is
never reached by realized words; it is kept so the trichotomy is total and
violations surface loudly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Optional

from . import intmat
from .lattice import ClassVector, e0, intersect, norm_sq
from .salem import (
    IntPolynomial,
    cyclotomic,
    dominant_real_root,
    strip_cyclotomic,
    _cyclotomic_indices,
    _divmod_monic,
)
from .weyl import WeylElement, apply, degree, inverse

THREE_19 = 3 ** 19
DISPLACEMENT_FACTOR = 28  # hyperbolicity constant in the axis-distance bound

KIND_ELLIPTIC = "elliptic"
KIND_PARABOLIC_LINEAR = "parabolic_linear"
KIND_PARABOLIC_QUADRATIC = "parabolic_quadratic"
KIND_LOXODROMIC = "loxodromic"


@dataclass(frozen=True)
class IsometryClassification:
    kind: str
    evidence: str

    @property
    def is_loxodromic(self):
        return self.kind == KIND_LOXODROMIC


def char_polynomial(h: WeylElement) -> IntPolynomial:
    return IntPolynomial(intmat.charpoly([list(r) for r in h.matrix]))


def _strip_with_orders(p: IntPolynomial):
    """Cyclotomic-free part together with the orders of removed factors."""
    coeffs = list(p.coeffs)
    orders = []
    changed = True
    while changed and len(coeffs) > 1:
        changed = False
        for n in _cyclotomic_indices(len(coeffs) - 1):
            phi = cyclotomic(n)
            while len(coeffs) - 1 >= phi.degree:
                q, r = _divmod_monic(coeffs, phi.coeffs)
                if all(c == 0 for c in r):
                    coeffs = q
                    orders.append(n)
                    changed = True
                else:
                    break
            if len(coeffs) == 1:
                break
    rest = None if len(coeffs) == 1 else IntPolynomial(coeffs)
    return rest, orders


def classify(h: WeylElement) -> IsometryClassification:
    """Certified elliptic / parabolic / loxodromic trichotomy."""
    cp = char_polynomial(h)
    rest, orders = _strip_with_orders(cp)
    if rest is not None:
        lam = dominant_real_root(rest, 1e-9)
        if lam is None or lam <= 1:
            raise AssertionError(
                "cyclotomic-free characteristic factor without a root > 1; "
                "the input is not an isometry of signature (1, n)")
        return IsometryClassification(
            KIND_LOXODROMIC, f"spectral radius {lam:.9f} from a non-cyclotomic factor")
    k = reduce(math.lcm, orders, 1)
    m = [list(r) for r in h.matrix]
    mk = intmat.mat_pow(m, k)
    n = len(m)
    nil = intmat.mat_sub(mk, intmat.identity(n))
    if all(all(x == 0 for x in row) for row in nil):
        return IsometryClassification(KIND_ELLIPTIC, f"finite order dividing {k}")
    nil2 = intmat.mat_mul(nil, nil)
    if all(all(x == 0 for x in row) for row in nil2):
        return IsometryClassification(
            KIND_PARABOLIC_LINEAR, f"M^{k} unipotent with (M^k - I)^2 = 0")
    nil3 = intmat.mat_mul(nil2, nil)
    if all(all(x == 0 for x in row) for row in nil3):
        return IsometryClassification(
            KIND_PARABOLIC_QUADRATIC, f"M^{k} unipotent with (M^k - I)^3 = 0")
    raise AssertionError("unipotent part with a Jordan block of size > 3")


def dynamical_degree(h: WeylElement, tol: float = 1e-9) -> float:
    """Spectral radius; exactly 1.0 for non-loxodromic elements.

    The value 1 is certified by the cyclotomic factorization, never by a
    floating comparison.
    """
    cp = char_polynomial(h)
    rest, _ = _strip_with_orders(cp)
    if rest is None:
        return 1.0
    lam = dominant_real_root(rest, tol)
    assert lam is not None and lam > 1
    return lam


def degree_sequence(h: WeylElement, N: int) -> list[int]:
    """Exact e0 . h^n(e0) for n = 1..N by iterated integer products."""
    if N < 1:
        raise ValueError("N must be at least 1")
    m = [list(r) for r in h.matrix]
    v = [1] + [0] * (len(m) - 1)
    out = []
    for _ in range(N):
        v = intmat.mat_vec(m, v)
        out.append(v[0])
    return out


def growth_type_oracle(h: WeylElement, N: int = 60) -> str:
    """Independent growth-fitting cross-check on the exact degree sequence.

    Not used by classify(); kept as an oracle for tests: decides bounded,
    linear, quadratic, or exponential growth from e0 . h^n(e0), n <= N.
    """
    seq = degree_sequence(h, N)
    if max(seq[N // 2:]) <= max(seq[: N // 2]):
        return "bounded"
    ratio = (seq[-1] / seq[N // 2]) ** (1.0 / (N - N // 2 - 1))
    if ratio > 1.05:
        return "exponential"
    p = math.log(seq[-1] / seq[N // 4]) / math.log((N) / (N // 4 + 1))
    return "linear" if p < 1.5 else "quadratic"


# ---------------------------------------------------------------------------
# eigenvectors, axis, distances


@dataclass(frozen=True)
class LoxodromicData:
    lam: float
    v_plus: ClassVector
    v_minus: ClassVector
    vplus_dot_vminus: float
    cosh_axis_distance: float
    E: ClassVector
    residual_plus: float
    residual_minus: float


def _power_columns(h: WeylElement, doublings: int = 9):
    """Coordinates of M^N e0 and M^{-N} e0 for N = 2^doublings, exact."""
    m = [list(r) for r in h.matrix]
    p = m
    for _ in range(doublings):
        p = intmat.mat_mul(p, p)
    fwd = [p[i][0] for i in range(len(p))]
    # (M^N)^{-1} = J (M^N)^T J, so its first column is the signed first row
    bwd = [p[0][0]] + [-p[0][i] for i in range(1, len(p))]
    return fwd, bwd


def _normalized_vector(h: WeylElement, coords) -> ClassVector:
    lead = coords[0]
    pts = {p: Fraction(coords[i + 1], lead) for i, p in enumerate(h.support)}
    return ClassVector(1.0, {p: float(c) for p, c in pts.items() if c != 0})


def axis_data(h: WeylElement, tol: float = 1e-9) -> LoxodromicData:
    """Dynamical degree, normalized eigenvectors, and the axis projection.

    v_plus and v_minus are scaled so v . e0 = 1; they come from high integer
    powers of the matrix (exact) followed by a single normalization, so the
    relative error is around (1/lambda)^512, far below tol for any
    loxodromic element (the spectral gap keeps lambda away from 1).
    """
    cls = classify(h)
    if not cls.is_loxodromic:
        raise ValueError(f"axis data needs a loxodromic element, got {cls.kind}")
    lam = dynamical_degree(h, min(tol, 1e-12))
    fwd, bwd = _power_columns(h)
    v_plus = _normalized_vector(h, fwd)
    v_minus = _normalized_vector(h, bwd)
    dot = intersect(v_plus, v_minus)
    cosh_axis = math.sqrt(2.0 / dot)
    E = cosh_axis * (0.5 * (v_plus + v_minus))
    res_p = _eig_residual(h, v_plus, lam)
    res_m = _eig_residual(inverse(h), v_minus, lam)
    if max(res_p, res_m) > max(tol, 1e-9) * 10:
        raise AssertionError(f"eigenvector residuals too large: {res_p}, {res_m}")
    return LoxodromicData(lam, v_plus, v_minus, dot, cosh_axis, E, res_p, res_m)


def _eig_residual(h: WeylElement, v: ClassVector, lam: float) -> float:
    image = apply(h, v)
    diff = image - lam * v
    return math.sqrt(norm_sq(diff)) / math.sqrt(norm_sq(v))


def cosh_distance_to_axis(data: LoxodromicData, x: ClassVector) -> float:
    """cosh dist(x, axis) = sqrt(2 (x.v+)(x.v-) / (v+.v-)) for x on the sheet."""
    a = intersect(x, data.v_plus)
    b = intersect(x, data.v_minus)
    return math.sqrt(max(2.0 * a * b / data.vplus_dot_vminus, 1.0))


@dataclass(frozen=True)
class DisplacementReport:
    dist_to_axis: float
    displacement: float
    factor: int
    bound_ok: bool
    translation_length: float


def axis_displacement_check(h: WeylElement, x: ClassVector, tol: float = 1e-9) -> DisplacementReport:
    """Check dist(x, axis) <= 28 * dist(x, h(x)) for a point x of the sheet.

    The factor 28 is the smallest integer m with m log(lambda_lehmer)
    at least 4 log 3, log 3 being the hyperbolicity constant of the space.
    """
    data = axis_data(h, tol)
    if intersect(x, x) != 1:
        raise ValueError("x must lie on the hyperboloid")
    lhs = math.acosh(cosh_distance_to_axis(data, x))
    xhx = float(intersect(x, apply(h, x)))
    rhs = math.acosh(max(xhx, 1.0))
    return DisplacementReport(
        dist_to_axis=lhs,
        displacement=rhs,
        factor=DISPLACEMENT_FACTOR,
        bound_ok=lhs <= DISPLACEMENT_FACTOR * rhs + tol,
        translation_length=math.log(data.lam),
    )


def loxodromy_criterion(h: WeylElement) -> bool:
    """deg(h^400) >= 3^19 deg(h^200), decided with exact integer powers."""
    m = [list(r) for r in h.matrix]
    m200 = intmat.mat_pow(m, 200)
    d200 = m200[0][0]
    d400 = intmat.mat_mul(m200, m200)[0][0]
    return d400 >= THREE_19 * d200


def criterion_degrees(h: WeylElement) -> tuple[int, int]:
    """The exact pair (deg(h^200), deg(h^400))."""
    m = [list(r) for r in h.matrix]
    m200 = intmat.mat_pow(m, 200)
    return m200[0][0], intmat.mat_mul(m200, m200)[0][0]


def spectrum_report(h: WeylElement, tol: float = 1e-9) -> dict:
    """JSON-ready spectral summary of one element."""
    cls = classify(h)
    lam = dynamical_degree(h, tol)
    report = {
        "degree": degree(h),
        "class": cls.kind,
        "evidence": cls.evidence,
        "lambda": lam,
        "criteria": {"degree400_vs_3_19_degree200": loxodromy_criterion(h)},
    }
    if cls.is_loxodromic:
        data = axis_data(h, tol)
        report["cosh_axis_distance"] = data.cosh_axis_distance
        report["vplus_dot_vminus"] = data.vplus_dot_vminus
        report["residuals"] = {"v_plus": data.residual_plus, "v_minus": data.residual_minus}
    return report
