"""Univariate polynomial utilities over the integers and the rationals.

Polynomials are plain lists of coefficients, lowest degree first, with a
nonzero leading coefficient ([] is the zero polynomial).  Coefficients are
ints or Fractions; operations that need exact division promote to Fraction
internally and demote back when the result is integral.

Also hosts small exact linear algebra: Sylvester resultants (fraction-free
Bareiss) and characteristic polynomials of integer matrices, used for Weil
polynomial bookkeeping.
"""

from fractions import Fraction

from .arith import divisors


def trim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def deg(f):
    return len(f) - 1


def add(f, g):
    n = max(len(f), len(g))
    return trim([(f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n)])


def neg(f):
    return [-c for c in f]


def sub(f, g):
    return add(f, neg(g))


def mul(f, g):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] += a * b
    return trim(out)


def scale(f, c):
    if c == 0:
        return []
    return [a * c for a in f]


def evaluate(f, x):
    r = 0
    for c in reversed(f):
        r = r * x + c
    return r


def derivative(f):
    return trim([i * c for i, c in enumerate(f)][1:])


def divmod_exact(f, g):
    """Quotient and remainder over Q (exact Fractions)."""
    f = trim([Fraction(c) for c in f])
    g = trim([Fraction(c) for c in g])
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(f) - len(g) + 1, 1)
    while len(f) >= len(g) and f:
        c = f[-1] / g[-1]
        d = len(f) - len(g)
        q[d] = c
        f = trim([f[i] - (c * g[i - d] if 0 <= i - d < len(g) else 0) for i in range(len(f))])
    return trim(q), f


def gcd_q(f, g):
    """Monic gcd over Q."""
    f = trim([Fraction(c) for c in f])
    g = trim([Fraction(c) for c in g])
    while g:
        f, g = g, divmod_exact(f, g)[1]
    if f:
        lc = f[-1]
        f = [c / lc for c in f]
    return f


def is_squarefree_q(f):
    return deg(gcd_q(f, derivative(f))) < 1


def resultant(f, g):
    """Resultant of f and g with int (or Fraction) coefficients.

    Computed as the determinant of the Sylvester matrix; fraction-free
    Bareiss elimination keeps everything in Z when the inputs are integral.
    """
    m, n = deg(f), deg(g)
    if m < 0 or n < 0:
        return 0
    if m == 0:
        return f[0] ** n
    if n == 0:
        return g[0] ** m
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + list(reversed(f)) + [0] * (n - 1 - i))
    for i in range(m):
        rows.append([0] * i + list(reversed(g)) + [0] * (m - 1 - i))
    if any(isinstance(c, Fraction) for c in f + g):
        return _det_fraction(rows)
    return _det_bareiss(rows, size)


def _det_bareiss(a, n):
    a = [row[:] for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _det_fraction(rows):
    a = [[Fraction(c) for c in row] for row in rows]
    n = len(a)
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det *= a[k][k]
        inv = 1 / a[k][k]
        for i in range(k + 1, n):
            c = a[i][k] * inv
            if c:
                for j in range(k, n):
                    a[i][j] -= c * a[k][j]
    return det


# ---------------------------------------------------------------------------
# small exact matrix helpers (integer entries)


def mat_mul(A, B):
    n, m, r = len(A), len(B), len(B[0])
    return [[sum(A[i][k] * B[k][j] for k in range(m)) for j in range(r)] for i in range(n)]


def mat_pow(A, e):
    n = len(A)
    R = [[int(i == j) for j in range(n)] for i in range(n)]
    while e:
        if e & 1:
            R = mat_mul(R, A)
        A = mat_mul(A, A)
        e >>= 1
    return R


def mat_det(A):
    return _det_bareiss([row[:] for row in A], len(A))


def companion(f):
    """Companion matrix of a monic polynomial (lowest-first coefficients)."""
    n = deg(f)
    assert f[-1] == 1
    C = [[0] * n for _ in range(n)]
    for i in range(1, n):
        C[i][i - 1] = 1
    for i in range(n):
        C[i][n - 1] = -f[i]
    return C


def charpoly(A):
    """Characteristic polynomial det(xI - A) of an integer matrix.

    Faddeev-LeVerrier with exact rationals; the result is integral and is
    returned lowest degree first.
    """
    n = len(A)
    Aq = [[Fraction(c) for c in row] for row in A]
    M = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    coeffs = [Fraction(1)]  # leading coefficient of x^n
    for k in range(1, n + 1):
        AM = mat_mul(Aq, M)
        tr = sum(AM[i][i] for i in range(n))
        c = -tr / k
        coeffs.append(c)
        for i in range(n):
            AM[i][i] += c
        M = AM
    out = list(reversed(coeffs))  # lowest first
    assert all(x.denominator == 1 for x in out)
    return [int(x) for x in out]


def is_irreducible_quartic(f):
    """Irreducibility over Q of a monic integer quartic.

    Checks for rational roots (divisors of the constant term) and for
    monic integer quadratic factorizations x^4+ax^3+bx^2+cx+d =
    (x^2+px+q1)(x^2+rx+q2).  By Gauss's lemma this is exhaustive.
    """
    assert deg(f) == 4 and f[-1] == 1
    d0, c, b, a, _ = f
    if d0 == 0:
        return False
    for t in divisors(abs(d0)):
        for root in (t, -t):
            if evaluate(f, root) == 0:
                return False
    for q1 in divisors(abs(d0)):
        for q1s in (q1, -q1):
            if d0 % q1s != 0:
                continue
            q2 = d0 // q1s
            # p + r = a, q1 + q2 + p*r = b, p*q2 + r*q1 = c
            # solve the linear system in p, r when q1 != q2, else quadratic
            if q1s != q2:
                # p*q2 + (a-p)*q1s = c  ->  p(q2-q1s) = c - a*q1s
                num = c - a * q1s
                if num % (q2 - q1s) != 0:
                    continue
                p = num // (q2 - q1s)
                r = a - p
                if q1s + q2 + p * r == b:
                    return False
            else:
                # p + r = a, p*r = b - 2*q1s, symmetric pair
                disc = a * a - 4 * (b - 2 * q1s)
                from .arith import sqrt_exact

                s = sqrt_exact(disc)
                if s is not None and (a + s) % 2 == 0:
                    p = (a + s) // 2
                    r = a - p
                    if p * q2 + r * q1s == c:
                        return False
    return True
