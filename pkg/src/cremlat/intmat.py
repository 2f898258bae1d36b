"""Small exact matrix kernels used across the package.

Matrices are lists of lists (rows) of Python ints or Fractions.  Everything
here is exact; the sizes involved are small (a few dozen rows), so the
division-free Berkowitz algorithm and plain Gaussian elimination over Q are
entirely adequate.
"""

from __future__ import annotations

from fractions import Fraction


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(n, m=None):
    m = n if m is None else m
    return [[0] * m for _ in range(n)]


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    bt = list(zip(*b))
    return [[sum(ar[t] * bc[t] for t in range(k)) for bc in bt] for ar in a]


def mat_vec(a, v):
    return [sum(r[i] * v[i] for i in range(len(v))) for r in a]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_eq(a, b):
    return len(a) == len(b) and all(ra == rb for ra, rb in zip(a, b))


def transpose(a):
    return [list(r) for r in zip(*a)]


def mat_pow(a, n):
    """a**n by binary exponentiation (n >= 0)."""
    if n < 0:
        raise ValueError("negative power")
    result = identity(len(a))
    base = a
    while n:
        if n & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base) if n > 1 else base
        n >>= 1
    return result


def minkowski_gram(n):
    """diag(1, -1, ..., -1) of size n."""
    j = identity(n)
    for i in range(1, n):
        j[i][i] = -1
    return j


def preserves_form(m, gram=None) -> bool:
    """Exact check M^T J M == J."""
    if gram is None:
        gram = minkowski_gram(len(m))
    return mat_eq(mat_mul(transpose(m), mat_mul(gram, m)), gram)


def form_inverse(m):
    """Inverse of a form-preserving matrix: M^{-1} = J M^T J."""
    j = minkowski_gram(len(m))
    return mat_mul(j, mat_mul(transpose(m), j))


def charpoly(a):
    """Characteristic polynomial det(xI - A) by Berkowitz, division-free.

    Returns coefficients in ascending order [c0, c1, ..., 1], exact for int
    or Fraction entries.
    """
    n = len(a)
    if n == 0:
        return [1]
    # descending coefficient vector of the leading 1x1 block: x - a00
    vec = [1, -a[0][0]]
    for i in range(1, n):
        # grow to the (i+1)x(i+1) leading block with corner a[i][i]
        row = a[i][:i]
        col = [a[t][i] for t in range(i)]
        sub = [r[:i] for r in a[:i]]
        # first column of the Berkowitz Toeplitz matrix:
        # [1, -a_ii, -row.col, -row.sub.col, -row.sub^2.col, ...]
        toep = [1, -a[i][i]]
        w = col
        for _ in range(i):
            toep.append(-sum(row[t] * w[t] for t in range(i)))
            w = mat_vec(sub, w)
        # truncated convolution: new[k] = sum_j vec[j] * toep[k - j]
        new = [0] * (i + 2)
        for j, vj in enumerate(vec):
            if vj:
                top = min(len(toep), i + 2 - j)
                for t in range(top):
                    new[j + t] += vj * toep[t]
        vec = new
    return vec[::-1]


def rank(a):
    """Rank over Q by fraction Gaussian elimination (input not modified)."""
    m = [[Fraction(x) for x in row] for row in a]
    rows, cols = len(m), len(m[0]) if m else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == rows:
            break
    return r


def nullspace(a):
    """Basis of the right kernel over Q (list of Fraction vectors)."""
    m = [[Fraction(x) for x in row] for row in a]
    rows = len(m)
    cols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        basis.append(v)
    return basis
