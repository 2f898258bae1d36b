"""A desk-scale engine for plane maps given by homogeneous coordinate triples.

Triples [P : Q : R] of homogeneous polynomials of a common degree, without
common factor, compose by substitution followed by cancellation of the full
common factor.  Coefficients are exact rationals by default; a prime-field
mode (62-bit prime) is available for fast probabilistic work, with the
rational mode as the reference semantics.

Cancellation strategy: the common monomial content is stripped directly;
any remaining polynomial factor is found with sympy's exact multivariate
gcd and then removed by exact division in this module's own representation,
so a wrong gcd cannot slip through.  Degree growth is budgeted: compositions
beyond the degree or term caps raise (or truncate the iteration) rather
than grinding; monomial maps have their own exact integer fast path.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import sympy

DEGREE_BUDGET = 512
TERM_BUDGET = 200_000
DEFAULT_PRIME = 4611686018427387847  # 62-bit prime

_SYM_X, _SYM_Y, _SYM_Z = sympy.symbols("x y z")


class BudgetExceeded(RuntimeError):
    pass


# -- sparse homogeneous polynomials ------------------------------------------
# representation: dict[(i, j, k)] -> coefficient, i + j + k constant


def _inv_mod(a, p):
    return pow(a, p - 2, p)


def poly_add(a, b, p=None):
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, 0) + c
        if p:
            v %= p
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def poly_mul(a, b, p=None):
    out = {}
    for (i1, j1, k1), c1 in a.items():
        for (i2, j2, k2), c2 in b.items():
            m = (i1 + i2, j1 + j2, k1 + k2)
            v = out.get(m, 0) + c1 * c2
            if p:
                v %= p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    if len(out) > TERM_BUDGET:
        raise BudgetExceeded(f"term count {len(out)} exceeds the budget")
    return out


def poly_scale(a, s, p=None):
    out = {}
    for m, c in a.items():
        v = c * s
        if p:
            v %= p
        if v:
            out[m] = v
    return out


def poly_degree(a) -> int:
    if not a:
        return -1
    return max(i + j + k for i, j, k in a)


def poly_eval_triple(a, triple, p=None):
    """Substitute three polynomials for (x, y, z); powers are cached."""
    max_i = max((m[0] for m in a), default=0)
    max_j = max((m[1] for m in a), default=0)
    max_k = max((m[2] for m in a), default=0)

    def powers(base, top):
        out = [{(0, 0, 0): 1}]
        for _ in range(top):
            out.append(poly_mul(out[-1], base, p))
        return out

    px, py, pz = (powers(t, top) for t, top in zip(triple, (max_i, max_j, max_k)))
    total = {}
    for (i, j, k), c in a.items():
        term = poly_mul(poly_mul(px[i], py[j], p), pz[k], p)
        total = poly_add(total, poly_scale(term, c, p), p)
    return total


def poly_divexact(a, b, p=None):
    """Exact division by b (raises if not exact)."""
    if not b:
        raise ZeroDivisionError
    out = {}
    rem = dict(a)
    bl = max(b)  # lex-leading monomial
    blc = b[bl]
    inv = _inv_mod(blc, p) if p else None
    while rem:
        ml = max(rem)
        q = tuple(x - y for x, y in zip(ml, bl))
        if min(q) < 0:
            raise ValueError("division is not exact")
        c = rem[ml] * inv % p if p else rem[ml] / blc
        out[q] = c
        piece = poly_scale(b, c, p)
        shifted = {tuple(x + y for x, y in zip(m, q)): v for m, v in piece.items()}
        rem = poly_add(rem, poly_scale(shifted, -1, p), p)
    return out


def _to_sympy(a):
    expr = sympy.Integer(0)
    for (i, j, k), c in a.items():
        cc = sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else sympy.Integer(c)
        expr += cc * _SYM_X ** i * _SYM_Y ** j * _SYM_Z ** k
    return expr


def _from_sympy(expr, p=None):
    poly = sympy.Poly(expr, _SYM_X, _SYM_Y, _SYM_Z)
    out = {}
    for mon, c in poly.terms():
        if p:
            num = int(c) % p
        else:
            num = Fraction(int(sympy.numer(c)), int(sympy.denom(c)))
        if num:
            out[tuple(int(t) for t in mon)] = num
    return out


def _restrict_to_line(q, a, b, p=None):
    """The binary form q(s, t, a s + b t) as a univariate in s (t = 1)."""
    deg = poly_degree(q)
    out = [0] * (deg + 1)
    for (i, j, k), c in q.items():
        # (a s + b t)^k expanded; collect the s-exponent with t = 1
        for r in range(k + 1):
            coeff = c * math.comb(k, r) * a ** r * b ** (k - r)
            if p:
                coeff %= p
            out[i + r] += coeff
    if p:
        out = [v % p for v in out]
    return out


def _univ_gcd(u, v, p=None):
    """Monic-ish gcd of two univariate coefficient lists (exact Euclid)."""

    def trim(w):
        w = list(w)
        while w and (w[-1] == 0):
            w.pop()
        return w

    u, v = trim(u), trim(v)
    while v:
        inv = _inv_mod(v[-1], p) if p else Fraction(1) / v[-1]
        while len(u) >= len(v) and u:
            f = u[-1] * inv % p if p else u[-1] * inv
            off = len(u) - len(v)
            nxt = list(u)
            for i in range(off, len(u)):
                val = nxt[i] - f * v[i - off]
                nxt[i] = val % p if p else val
            u = trim(nxt)
        u, v = v, u
    return u


def _certainly_coprime(polys, p=None) -> bool:
    """Sound fast path: a common factor of positive degree restricts to a
    nonconstant (or identically zero) binary form on every line, and a
    nonconstant integer factor survives reduction modulo a prime that keeps
    the leading coefficient alive.  A coprime restricted-and-reduced gcd
    therefore certifies coprimality; failure is inconclusive."""
    q = p or DEFAULT_PRIME
    for a, b in ((3, 5), (7, -2)):
        lines = []
        ok = True
        for poly in polys:
            u = _restrict_to_line(poly, a, b, p)
            deg_true = max((i for i, c in enumerate(u) if c != 0), default=-1)
            if p is None:
                # clear denominators, then reduce mod q; insist the leading
                # coefficient survives so factor degrees cannot drop
                den = 1
                for c in u:
                    if isinstance(c, Fraction):
                        den = den * c.denominator // math.gcd(den, c.denominator)
                u = [int(c * den) % q for c in u]
            deg_red = max((i for i, c in enumerate(u) if c != 0), default=-1)
            if deg_true < 0 or deg_red != deg_true:
                ok = False
                break
            lines.append(u)
        if not ok:
            continue
        g = lines[0]
        for v in lines[1:]:
            g = _univ_gcd(g, v, q)
            if len(g) == 1:
                break
        if len(g) == 1:
            return True
    return False


def poly_gcd(polys, p=None):
    """Full gcd of several polynomials: monomial content times polynomial gcd.

    The polynomial part is found with sympy's exact gcd; a random-line
    coprimality certificate skips that call in the generic case (sympy's
    finite-field multivariate gcd crawls on dense coprime inputs).  Callers
    re-verify cancellations by exact division, so the gcd value is never
    trusted blindly.
    """
    polys = [q for q in polys if q]
    if not polys:
        return {(0, 0, 0): 1}
    content = tuple(
        min(m[t] for q in polys for m in q) for t in range(3)
    )
    reduced = [
        {tuple(x - y for x, y in zip(m, content)): c for m, c in q.items()}
        for q in polys
    ]
    out = {content: 1}
    if any(poly_degree(q) == 0 for q in reduced) or _certainly_coprime(reduced, p):
        return out
    if p:
        domain = sympy.GF(p)
        gs = [sympy.Poly(_to_sympy(q), _SYM_X, _SYM_Y, _SYM_Z, domain=domain) for q in reduced]
        g = gs[0]
        for q in gs[1:]:
            g = g.gcd(q)
        g_dict = _from_sympy(g.as_expr(), p)
    else:
        g = sympy.gcd_list([_to_sympy(q) for q in reduced])
        g_dict = _from_sympy(g)
    out = {tuple(x + y for x, y in zip(m, content)): c for m, c in g_dict.items()}
    return out


_MONO = re.compile(r"\s*(?P<sign>[+-])?\s*(?P<coeff>\d+(?:/\d+)?)?\s*(?P<vars>(?:\*?\s*[xyz](?:\s*\^\s*\d+)?)*)\s*")


def parse_poly3(text: str, p=None):
    """Parse an expression like ``2*x^2*y - y*z^2`` into the sparse form."""
    out = {}
    pos = 0
    text = text.strip()
    if not text:
        raise ValueError("empty polynomial")
    while pos < len(text):
        m = _MONO.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse monomial at {text[pos:]!r}")
        sign = -1 if m.group("sign") == "-" else 1
        if m.group("sign") is None and pos > 0:
            raise ValueError(f"missing sign before {text[pos:]!r}")
        coeff = Fraction(m.group("coeff")) if m.group("coeff") else Fraction(1)
        expo = {"x": 0, "y": 0, "z": 0}
        for vm in re.finditer(r"([xyz])(?:\s*\^\s*(\d+))?", m.group("vars") or ""):
            expo[vm.group(1)] += int(vm.group(2)) if vm.group(2) else 1
        mono = (expo["x"], expo["y"], expo["z"])
        c = sign * coeff
        if p:
            num = int(c.numerator) * _inv_mod(c.denominator % p, p) % p
            c = num
        cur = out.get(mono, 0) + c
        if p:
            cur %= p
        if cur:
            out[mono] = cur
        else:
            out.pop(mono, None)
        pos = m.end()
    return out


def format_poly3(a) -> str:
    if not a:
        return "0"
    parts = []
    for mono in sorted(a, reverse=True):
        c = a[mono]
        body = []
        for name, ex in zip("xyz", mono):
            if ex == 1:
                body.append(name)
            elif ex > 1:
                body.append(f"{name}^{ex}")
        mag = abs(c) if isinstance(c, Fraction) else c
        coeff_txt = "" if mag == 1 and body else str(mag)
        txt = "*".join(([coeff_txt] if coeff_txt else []) + body) or "1"
        neg = isinstance(c, Fraction) and c < 0
        parts.append(("-" if neg else "+", txt))
    sign0, t0 = parts[0]
    out = ("-" if sign0 == "-" else "") + t0
    for s, t in parts[1:]:
        out += f" {s} {t}"
    return out


# -- triples -------------------------------------------------------------------


def _canonical_coeffs(poly, prime):
    """Coefficients as Fractions (rational mode) or ints mod p (prime mode)."""
    out = {}
    for m, c in dict(poly).items():
        if prime:
            if isinstance(c, Fraction):
                c = c.numerator * _inv_mod(c.denominator % prime, prime)
            c = int(c) % prime
        else:
            c = Fraction(c)
        if c:
            out[m] = c
    return out


class HomogeneousTriple:
    """Three homogeneous polynomials of one degree, no common factor."""

    __slots__ = ("components", "prime")

    def __init__(self, components, prime=None, reduce: bool = True):
        components = tuple(_canonical_coeffs(c, prime) for c in components)
        if len(components) != 3 or all(not c for c in components):
            raise ValueError("need three components, not all zero")
        degs = {poly_degree(c) for c in components if c}
        if len(degs) != 1:
            raise ValueError(f"components must share one degree, got {sorted(degs)}")
        for c in components:
            if c and len({i + j + k for (i, j, k) in c}) != 1:
                raise ValueError("components must be homogeneous")
        if reduce:
            g = poly_gcd([c for c in components if c], prime)
            if poly_degree(g) > 0:
                components = tuple(
                    poly_divexact(c, g, prime) if c else c for c in components
                )
        object.__setattr__(self, "components", components)
        object.__setattr__(self, "prime", prime)

    def __setattr__(self, *a):
        raise AttributeError("HomogeneousTriple is immutable")

    @property
    def degree(self) -> int:
        return max(poly_degree(c) for c in self.components)

    def __eq__(self, other):
        if not isinstance(other, HomogeneousTriple):
            return NotImplemented
        return self.prime == other.prime and projectively_equal(self, other)

    def __repr__(self):
        inner = " : ".join(format_poly3(c) for c in self.components)
        return f"[{inner}]"


def projectively_equal(f: HomogeneousTriple, g: HomogeneousTriple) -> bool:
    """Equality up to one overall scalar."""
    if f.degree != g.degree:
        return False
    for a, b in zip(f.components, g.components):
        if bool(a) != bool(b):
            return False
    ratio = None
    for a, b in zip(f.components, g.components):
        if not a:
            continue
        if set(a) != set(b):
            return False
        for m in a:
            r = (a[m] * _inv_mod(b[m], f.prime)) % f.prime if f.prime else a[m] / b[m]
            if ratio is None:
                ratio = r
            elif r != ratio:
                return False
    return True


def triple(p_text: str, q_text: str, r_text: str, prime=None) -> HomogeneousTriple:
    return HomogeneousTriple(
        [parse_poly3(p_text, prime), parse_poly3(q_text, prime), parse_poly3(r_text, prime)],
        prime,
    )


def parse_triple(text: str, prime=None) -> HomogeneousTriple:
    """Parse ``[y*z : z*x : x*y]``."""
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ValueError("triple must be bracketed, like [y*z : z*x : x*y]")
    parts = text[1:-1].split(":")
    if len(parts) != 3:
        raise ValueError("triple needs three components")
    return triple(parts[0], parts[1], parts[2], prime)


def compose(f: HomogeneousTriple, g: HomogeneousTriple) -> HomogeneousTriple:
    """f after g, with full cancellation of the common factor."""
    if f.prime != g.prime:
        raise ValueError("mixed coefficient fields")
    if f.degree * g.degree > DEGREE_BUDGET:
        raise BudgetExceeded(
            f"composition degree {f.degree * g.degree} exceeds the budget {DEGREE_BUDGET}")
    comps = tuple(poly_eval_triple(c, g.components, f.prime) for c in f.components)
    if all(not c for c in comps):
        raise ValueError("composition is not dominant (all components vanish)")
    return HomogeneousTriple(comps, f.prime)


def identity_triple(prime=None) -> HomogeneousTriple:
    return triple("x", "y", "z", prime)


def iterate_degrees(f: HomogeneousTriple, N: int) -> tuple[list[int], bool]:
    """Exact degree sequence of the first N compositional powers.

    Returns (degrees, truncated): when a composition would blow past the
    degree or term budget the list is cut short and flagged.
    """
    out = []
    cur = f
    truncated = False
    for _ in range(N):
        out.append(cur.degree)
        if len(out) == N:
            break
        try:
            cur = compose(f, cur)
        except BudgetExceeded:
            truncated = True
            break
    return out, truncated


# -- builtins -------------------------------------------------------------------


def sigma_triple(prime=None) -> HomogeneousTriple:
    """The standard quadratic involution [yz : zx : xy]."""
    return triple("y*z", "z*x", "x*y", prime)


def henon_triple(d: int, prime=None) -> HomogeneousTriple:
    """The degree-d polynomial automorphism (X, Y) -> (Y, X + Y^d), projectivized."""
    if d < 2:
        raise ValueError("need degree >= 2")
    p = {(0, 1, d - 1): 1}
    q = poly_add({(1, 0, d - 1): 1}, {(0, d, 0): 1})
    r = {(0, 0, d): 1}
    return HomogeneousTriple([p, q, r], prime)


def linear_triple(matrix, prime=None) -> HomogeneousTriple:
    """The projective linear map with the given invertible 3x3 matrix."""
    m = [[Fraction(x) for x in row] for row in matrix]
    det = (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )
    if det == 0:
        raise ValueError("matrix is singular")
    comps = []
    for row in m:
        poly = {}
        for coeff, mono in zip(row, [(1, 0, 0), (0, 1, 0), (0, 0, 1)]):
            if coeff:
                poly[mono] = coeff
        comps.append(poly)
    return HomogeneousTriple(comps, prime)


# -- monomial maps ----------------------------------------------------------------


@dataclass(frozen=True)
class MonomialMap:
    """(X, Y) -> (X^a Y^b, X^c Y^d) for an integer matrix of determinant +-1."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if abs(self.a * self.d - self.b * self.c) != 1:
            raise ValueError("exponent matrix must have determinant +-1")

    @property
    def matrix(self):
        return [[self.a, self.b], [self.c, self.d]]

    def __mul__(self, other: "MonomialMap") -> "MonomialMap":
        m = [[self.a * other.a + self.b * other.c, self.a * other.b + self.b * other.d],
             [self.c * other.a + self.d * other.c, self.c * other.b + self.d * other.d]]
        return MonomialMap(m[0][0], m[0][1], m[1][0], m[1][1])


def monomial_map(matrix) -> MonomialMap:
    (a, b), (c, d) = matrix
    return MonomialMap(a, b, c, d)


def monomial_degree(f: MonomialMap) -> int:
    """Plane degree via exponent homogenization, pure integer arithmetic.

    Lifting (X, Y) = (x/z, y/z) gives Laurent exponent vectors for the three
    components; adding the smallest monomial that clears every negative
    exponent leaves a common-factor-free triple whose degree this returns.
    """
    vecs = [(f.a, f.b, -f.a - f.b), (f.c, f.d, -f.c - f.d), (0, 0, 0)]
    shift = [-min(v[t] for v in vecs) for t in range(3)]
    return sum(shift)


def monomial_triple(f: MonomialMap, prime=None) -> HomogeneousTriple:
    vecs = [(f.a, f.b, -f.a - f.b), (f.c, f.d, -f.c - f.d), (0, 0, 0)]
    shift = [-min(v[t] for v in vecs) for t in range(3)]
    comps = [{tuple(v[t] + shift[t] for t in range(3)): 1} for v in vecs]
    return HomogeneousTriple(comps, prime)


def monomial_iterates(f: MonomialMap, N: int) -> list[int]:
    """deg(f^n) for n = 1..N via powers of the exponent matrix."""
    out = []
    cur = f
    for _ in range(N):
        out.append(monomial_degree(cur))
        cur = cur * f
    return out


def monomial_lambda(f: MonomialMap) -> float:
    """Modulus of the large eigenvalue of the exponent matrix."""
    tr = f.a + f.d
    det = f.a * f.d - f.b * f.c
    disc = tr * tr - 4 * det
    if disc < 0:
        return 1.0  # complex pair of modulus sqrt(|det|) = 1
    r1 = (tr + math.sqrt(disc)) / 2
    r2 = (tr - math.sqrt(disc)) / 2
    return max(abs(r1), abs(r2), 1.0)
