"""Genus-2 hyperelliptic Jacobians over small finite fields.

Curves are y^2 = F(x) with deg F = 5 or 6 over F_p, p odd.  Divisor
classes are held in Mumford form (u, v): u monic of degree <= 2, v of
degree < deg u, u | v^2 - F; polynomials are coefficient lists, lowest
degree first, with entries in the raw field-kernel representation (ints
for prime fields, tuples for extensions).  The group law is Cantor
composition and reduction; the identity is (1, 0).

Internally every model is normalized to a monic degree-5 equation (via
scaling, and for degree-6 inputs a Moebius move of a rational Weierstrass
point to infinity); point counting works on the model as given.
"""

from dataclasses import dataclass

from .arith import is_prime
from .finitefield import GF


class BadReduction(ValueError):
    pass


class UnsupportedModel(ValueError):
    """Degree-6 model without a rational Weierstrass point."""


class BudgetExceeded(ValueError):
    pass


# ---------------------------------------------------------------------------
# polynomial arithmetic over a field kernel K (coefficient lists, lowest first)


def ptrim(K, f):
    while f and f[-1] == K.zero:
        f.pop()
    return f


def pdeg(f):
    return len(f) - 1


def padd(K, f, g):
    n = max(len(f), len(g))
    out = []
    for i in range(n):
        a = f[i] if i < len(f) else K.zero
        b = g[i] if i < len(g) else K.zero
        out.append(K.add(a, b))
    return ptrim(K, out)


def pneg(K, f):
    return [K.neg(c) for c in f]


def psub(K, f, g):
    return padd(K, f, pneg(K, g))


def pmul(K, f, g):
    if not f or not g:
        return []
    out = [K.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == K.zero:
            continue
        for j, b in enumerate(g):
            out[i + j] = K.add(out[i + j], K.mul(a, b))
    return ptrim(K, out)


def pscale(K, f, c):
    if c == K.zero:
        return []
    return [K.mul(a, c) for a in f]


def peval(K, f, x):
    r = K.zero
    for c in reversed(f):
        r = K.add(K.mul(r, x), c)
    return r


def pdivmod(K, f, g):
    if not g:
        raise ZeroDivisionError
    f = list(f)
    q = [K.zero] * max(len(f) - len(g) + 1, 1)
    ginv = K.inv(g[-1])
    while len(f) >= len(g) and f:
        c = K.mul(f[-1], ginv)
        d = len(f) - len(g)
        q[d] = c
        for i in range(len(g)):
            f[i + d] = K.sub(f[i + d], K.mul(c, g[i]))
        ptrim(K, f)
    return ptrim(K, q), f


def pmod(K, f, g):
    return pdivmod(K, f, g)[1]


def pmonic(K, f):
    if not f or f[-1] == K.one:
        return list(f)
    return pscale(K, f, K.inv(f[-1]))


def pgcd(K, f, g):
    f, g = list(f), list(g)
    while g:
        f, g = g, pmod(K, f, g)
    return pmonic(K, f)


def pxgcd(K, f, g):
    """(d, s, t) with s*f + t*g = d, d monic."""
    r0, r1 = list(f), list(g)
    s0, s1 = [K.one], []
    t0, t1 = [], [K.one]
    while r1:
        q, r = pdivmod(K, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, psub(K, s0, pmul(K, q, s1))
        t0, t1 = t1, psub(K, t0, pmul(K, q, t1))
    if r0 and r0[-1] != K.one:
        lc = K.inv(r0[-1])
        r0, s0, t0 = pscale(K, r0, lc), pscale(K, s0, lc), pscale(K, t0, lc)
    return r0, s0, t0


def pderiv(K, f):
    out = []
    for i in range(1, len(f)):
        c = K.zero
        for _ in range(i):
            c = K.add(c, f[i])
        out.append(c)
    return ptrim(K, out)


def psquarefree(K, f):
    return pdeg(pgcd(K, f, pderiv(K, f))) < 1


# ---------------------------------------------------------------------------
# curve models


@dataclass(frozen=True)
class CurveModel:
    p: int
    coeffs: tuple  # integer coefficients mod p, lowest first
    degree: int


def good_reduction_check(coeffs, p):
    """True iff the model reduces to a smooth genus-2 equation mod p."""
    if p == 2 or not is_prime(p):
        return False
    red = [c % p for c in coeffs]
    while red and red[-1] == 0:
        red.pop()
    if len(red) - 1 < 5:
        return False
    K = GF(p)
    return psquarefree(K, list(red))


def make_curve(coeffs, p):
    if not good_reduction_check(coeffs, p):
        raise BadReduction(f"model is not a smooth genus-2 curve mod {p}")
    red = [c % p for c in coeffs]
    while red and red[-1] == 0:
        red.pop()
    return CurveModel(p=p, coeffs=tuple(red), degree=len(red) - 1)


def parse_curve_line(line):
    """One line "p; f0,f1,...": integer model coefficients, lowest first."""
    ptxt, ctxt = line.split(";")
    coeffs = [int(c) for c in ctxt.replace(" ", "").split(",")]
    return int(ptxt), coeffs


# ---------------------------------------------------------------------------
# point counting (N_k = #C(F_{p^k}), k in {1, 2})


def count_points(curve, k=1, budget=4 * 10**6):
    p = curve.p
    if p**k > budget:
        raise BudgetExceeded(f"field of size {p**k} exceeds the counting budget")
    if k == 1:
        return _count_f_p(curve)
    if k == 2:
        return _count_f_p2(curve)
    raise ValueError("only k in {1, 2} is supported")


def _square_table(p):
    sq = bytearray(p)
    for x in range(p):
        sq[x * x % p] = 1
    return sq


def _infinity_points(curve, lead_is_square):
    if curve.degree == 5:
        return 1
    return 2 if lead_is_square else 0


def _count_f_p(curve):
    p = curve.p
    sq = _square_table(p)
    F = curve.coeffs
    n = 0
    for x in range(p):
        fx = 0
        for c in reversed(F):
            fx = (fx * x + c) % p
        n += 1 if fx == 0 else (2 if sq[fx] else 0)
    lead_sq = bool(sq[F[-1] % p]) if curve.degree == 6 else True
    return n + _infinity_points(curve, lead_sq)


def _count_f_p2(curve):
    """Count over F_{p^2} via the norm trick.

    z is a square in F_{p^2} iff Norm_{F_{p^2}/F_p}(z) is a square in F_p,
    so one scalar norm plus a table lookup replaces each character sum
    term.  Vectorized over all p^2 field elements.
    """
    import numpy as np

    p = curve.p
    K2 = GF(p, 2)
    m = K2.modulus  # x^2 + m1*x + m0
    m0, m1 = int(m[0]), int(m[1])
    x0, x1 = np.meshgrid(np.arange(p, dtype=np.int64), np.arange(p, dtype=np.int64))
    x0, x1 = x0.ravel(), x1.ravel()
    r0 = np.zeros_like(x0)
    r1 = np.zeros_like(x0)
    for c in reversed(curve.coeffs):
        # (r0 + r1*t)*(x0 + x1*t) with t^2 = -m1*t - m0, then + c
        n0 = (r0 * x0 - m0 * r1 * x1) % p
        n1 = (r0 * x1 + r1 * x0 - m1 * r1 * x1) % p
        r0, r1 = (n0 + c) % p, n1
    # Norm(r0 + r1*t) = r0^2 + m1*r0*r1 + m0*r1^2
    norm = (r0 * r0 + m1 * r0 * r1 + m0 * r1 * r1) % p
    sq = np.frombuffer(bytes(_square_table(p)), dtype=np.uint8)
    vals = np.where(norm == 0, 1, np.where(sq[norm] == 1, 2, 0))
    n = int(vals.sum())
    lead_sq = True  # every F_p scalar is a square in F_{p^2}
    return n + _infinity_points(curve, lead_sq)


# ---------------------------------------------------------------------------
# Jacobian arithmetic


class JacobianContext:
    """Mumford-coordinate arithmetic for Jac(C) over F_{p^k}.

    The working model is monic of degree 5; degree-6 inputs are moved to
    that shape by sending a rational Weierstrass point to infinity, which
    requires one to exist (UnsupportedModel otherwise).
    """

    def __init__(self, curve, k=1):
        self.curve = curve
        self.k = k
        self.K = GF(curve.p, k)
        F5 = _monic_quintic_model(curve)
        self.F = [self.K.from_int(c) for c in F5]
        self.identity = ((self.K.one,), ())

    # -- construction --------------------------------------------------------

    def is_identity(self, D):
        return len(D[0]) == 1

    def on_jacobian(self, D):
        u, v = list(D[0]), list(D[1])
        if not u or u[-1] != self.K.one or pdeg(u) > 2 or len(v) >= len(u):
            return False
        return not pmod(self.K, psub(self.K, pmul(self.K, v, v), self.F), u)

    def point_divisor(self, x, y):
        """The class of (x, y) - infinity."""
        return ((self.K.neg(x), self.K.one), (y,) if y != self.K.zero else ())

    def random_point(self, rng):
        """A random divisor class: sum of two random affine points."""
        K = self.K
        D = self.identity
        for _ in range(2):
            while True:
                x = K.random(rng)
                fx = peval(K, self.F, x)
                y = K.sqrt(fx)
                if y is not None:
                    break
            if rng.randrange(2) and y != K.zero:
                y = K.neg(y)
            D = self.add(D, self.point_divisor(x, y))
        return D

    # -- group law -----------------------------------------------------------

    def neg(self, D):
        return (D[0], tuple(pneg(self.K, list(D[1]))))

    def add(self, D1, D2):
        K = self.K
        u1, v1 = list(D1[0]), list(D1[1])
        u2, v2 = list(D2[0]), list(D2[1])
        d0, e1, e2 = pxgcd(K, u1, u2)
        d, c1, c2 = pxgcd(K, d0, padd(K, v1, v2))
        s1, s2, s3 = pmul(K, c1, e1), pmul(K, c1, e2), c2
        u, rem = pdivmod(K, pmul(K, u1, u2), pmul(K, d, d))
        assert not rem
        num = padd(
            K,
            padd(K, pmul(K, s1, pmul(K, u1, v2)), pmul(K, s2, pmul(K, u2, v1))),
            pmul(K, s3, padd(K, pmul(K, v1, v2), self.F)),
        )
        vq, vrem = pdivmod(K, num, d)
        assert not vrem
        v = pmod(K, vq, u)
        # reduction
        while pdeg(u) > 2:
            unew, rem = pdivmod(K, psub(K, self.F, pmul(K, v, v)), u)
            assert not rem
            u = pmonic(K, unew)
            v = pmod(K, pneg(K, v), u)
        return (tuple(pmonic(K, u)), tuple(v))

    def mul(self, D, m):
        if m < 0:
            D, m = self.neg(D), -m
        R = self.identity
        while m:
            if m & 1:
                R = self.add(R, D)
            D = self.add(D, D)
            m >>= 1
        return R

    def frobenius(self, D):
        K = self.K
        return (
            tuple(K.frob(c) for c in D[0]),
            tuple(K.frob(c) for c in D[1]),
        )

    # -- exhaustive enumeration (tiny fields only) ---------------------------

    def enumerate_divisors(self):
        """Every reduced divisor class; group order = count (tiny p only)."""
        K = self.K
        out = [self.identity]
        elems = [K.element(i) for i in range(K.order)]
        for x in elems:
            fx = peval(K, self.F, x)
            y = K.sqrt(fx)
            if y is None:
                continue
            ys = {y, K.neg(y)}
            for yy in ys:
                out.append(self.point_divisor(x, yy))
        # degree-2 classes: with F squarefree, every pair (u, v) with u a
        # monic quadratic, deg v <= 1 and u | v^2 - F is a distinct reduced
        # class (a doubled Weierstrass point would force a square factor of F)
        for a1 in elems:
            for a0 in elems:
                u = [a0, a1, K.one]
                for b1 in elems:
                    for b0 in elems:
                        v = ptrim(K, [b0, b1])
                        if pmod(K, psub(K, pmul(K, v, v), self.F), u):
                            continue
                        out.append((tuple(u), tuple(v)))
        return out


def _monic_quintic_model(curve):
    """Integer coefficients of an isomorphic monic degree-5 model mod p."""
    p = curve.p
    K = GF(p)
    F = [c % p for c in curve.coeffs]
    if curve.degree == 6:
        root = next((x for x in range(p) if peval(K, F, x) == 0), None)
        if root is None:
            raise UnsupportedModel("degree-6 model with no rational Weierstrass point")
        # x -> root + 1/x, y -> y/x^3: new F = x^6 * F(root + 1/x)
        G = [0] * 7
        for i, c in enumerate(F):
            binom = [1]
            for _ in range(i):
                binom = [
                    (binom[j] if j < len(binom) else 0) * 1
                    + (binom[j - 1] * root if j >= 1 else 0)
                    for j in range(len(binom) + 1)
                ]
            # binom = (1 + root*x)^i, lowest first
            for j, bc in enumerate(binom):
                G[6 - i + j] = (G[6 - i + j] + c * bc) % p
        while G and G[-1] == 0:
            G.pop()
        if len(G) - 1 != 5:
            raise UnsupportedModel("transformed model does not have degree 5")
        F = G
    # scale to monic: x -> x/lead, y -> y/lead^3 gives coeff f_i * lead^(4-i)
    lead = F[-1]
    if lead != 1:
        F = [(c * pow(lead, 4 - i, p)) % p if i <= 4 else 1 for i, c in enumerate(F)]
    if not psquarefree(K, list(F)):  # pragma: no cover - iso preserves smoothness
        raise BadReduction("normalized model not squarefree")
    return F
