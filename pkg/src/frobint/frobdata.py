"""Frobenius characteristic data of an abelian surface with RM.

The degree-2 datum is h_p(x) = x^2 - a_p*x + s_p over O_E; the degree-4
datum is the Weil quartic h4(x) = x^4 - s1*x^3 + s2*x^2 - q*s1*x + q^2
whose roots are the Frobenius eigenvalues.  The two are linked by
h4 = Norm_{E/Q}(h_p) when s_p = q, i.e. s1 = Tr(a_p), s2 = N(a_p) + 2q.
"""

import cmath
from dataclasses import dataclass, field as dc_field

from . import poly
from .arith import sqrt_exact
from .realquad import RQInt


class NotRM(ValueError):
    """The quartic does not split over the configured quadratic field."""


class WeilBoundViolated(ValueError):
    pass


@dataclass(frozen=True)
class FrobData:
    """h_p(x) = x^2 - a_p*x + s_p, with q the residue cardinality."""

    q: int
    p: int
    a_p: RQInt
    s_p: RQInt
    disc: RQInt = dc_field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "disc", self.a_p * self.a_p - 4 * self.s_p)

    def hp_at(self, u):
        """h_p(u) for u in O_E."""
        return u * u - self.a_p * u + self.s_p


def make_hp(a_p, s_p, p=None):
    """Package (a_p, s_p) as FrobData; s_p rational gives q = |s_p|."""
    E = a_p.field
    if isinstance(s_p, int):
        s_p = E(s_p)
    q = abs(s_p.c0) if s_p.is_rational() else None
    if q is None:
        raise ValueError("s_p must be a rational integer (q or -q)")
    if p is None:
        p = q
    return FrobData(q=q, p=p, a_p=a_p, s_p=s_p)


@dataclass(frozen=True)
class WeilQuartic:
    """x^4 - s1*x^3 + s2*x^2 - q*s1*x + q^2."""

    s1: int
    s2: int
    q: int

    def h4(self):
        return [self.q * self.q, -self.q * self.s1, self.s2, -self.s1, 1]

    def companion(self):
        return poly.companion(self.h4())

    def roots_on_weil_circle(self, tol=1e-6):
        """Numeric sanity: all complex roots have |root| = sqrt(q)."""
        import numpy

        rts = numpy.roots(list(reversed(self.h4())))
        return all(abs(abs(r) - self.q**0.5) < tol * self.q for r in rts)


def count_to_weil(N1, N2, q):
    """Weil quartic from point counts over F_q and F_{q^2}."""
    s1 = q + 1 - N1
    if (N2 - q * q - 1 + s1 * s1) % 2 != 0:
        raise WeilBoundViolated("parity: N2 - q^2 - 1 + s1^2 must be even")
    s2 = (N2 - q * q - 1 + s1 * s1) // 2
    if s1 * s1 > 16 * q:
        raise WeilBoundViolated(f"|s1| = {abs(s1)} exceeds 4*sqrt(q)")
    w = WeilQuartic(s1, s2, q)
    if not w.roots_on_weil_circle():
        raise WeilBoundViolated("quartic roots leave the Weil circle")
    return w


def weil_from_frob(d):
    """The Weil quartic Norm_{E/Q}(h_p) of an s_p = q datum."""
    assert d.s_p == d.q
    return WeilQuartic(d.a_p.trace(), d.a_p.norm() + 2 * d.q, d.q)


def recover_ap(w, E):
    """Invert pi + q/pi = a_p: the conjugate pair {a_p, conj(a_p)} in E.

    h4 factors as (x^2 - a_p*x + q)(x^2 - conj(a_p)*x + q), so a_p and its
    conjugate are the roots of y^2 - s1*y + (s2 - 2q).  Raises NotRM when
    those roots do not lie in O_E.
    """
    D0 = w.s1 * w.s1 - 4 * (w.s2 - 2 * w.q)
    if D0 == 0:
        if w.s1 % 2 != 0:
            raise NotRM("rational double trace is not integral")
        ap = E(w.s1 // 2)
        return (ap, ap)
    if D0 < 0:
        raise NotRM("trace quadratic has no real roots")
    if D0 % E.disc != 0:
        raise NotRM("trace discriminant not a square multiple of the field discriminant")
    c1 = sqrt_exact(D0 // E.disc)
    if c1 is None:
        raise NotRM("trace discriminant is not disc * square")
    # a_p - conj(a_p) = c1 * (2a + t), and a_p + conj(a_p) = s1
    if (w.s1 + E.t * c1) % 2 != 0:
        raise NotRM("half-integral coordinates")
    c0 = (w.s1 + E.t * c1) // 2
    ap = E(c0, c1)
    assert ap.trace() == w.s1 and ap.norm() == w.s2 - 2 * w.q
    return (ap, ap.conj())


def canonical_conjugate(ap):
    """The representative of {a_p, conj(a_p)} with c1 >= 0 (tie: c0 >= 0)."""
    other = ap.conj()
    key = lambda x: (x.c1 < 0, x.c0 < 0, abs(x.c1), abs(x.c0))
    return min((ap, other), key=key)


@dataclass(frozen=True)
class FrobClass:
    is_scalar: bool
    is_real: bool
    is_ordinary: bool
    is_fp_simple: bool
    bail_reason: str | None = None


def classify(d):
    """Classification flags of the Frobenius datum.

    Ordinary means p does not divide Norm(a_p); F_p-simplicity (for prime
    q with non-real Frobenius) is equivalent to a_p being irrational; the
    real case is the trace-zero, s_p = -q Weil-number degeneracy.
    """
    is_scalar = not d.disc
    is_real = (not d.a_p) and d.s_p == -d.q
    is_ordinary = d.a_p.norm() % d.p != 0
    is_fp_simple = not d.a_p.is_rational()
    return FrobClass(
        is_scalar=is_scalar,
        is_real=is_real,
        is_ordinary=is_ordinary,
        is_fp_simple=is_fp_simple,
    )


_POWER_LEVELS = (2, 3, 4, 5, 6, 8, 10, 12)


def abs_simple_check(w):
    """Absolute simplicity of the surface attached to an irreducible quartic.

    The surface stays simple over every extension iff pi^N generates the
    full quartic field for N in a fixed finite set of exponents, i.e. the
    characteristic polynomial of pi^N (all N-th powers of the roots) stays
    squarefree.
    """
    h4 = w.h4()
    if not poly.is_irreducible_quartic(h4):
        raise ValueError("quartic must be irreducible")
    C = w.companion()
    for N in _POWER_LEVELS:
        cp = poly.charpoly(poly.mat_pow(C, N))
        if not poly.is_squarefree_q(cp):
            return False
    return True


def jacobian_order(w, k=1):
    """#J(F_{q^k}) = prod(1 - root^k) = charpoly of C^k evaluated at 1."""
    if k == 1:
        return poly.evaluate(w.h4(), 1)
    C = poly.mat_pow(w.companion(), k)
    n = len(C)
    ImC = [[int(i == j) - C[i][j] for j in range(n)] for i in range(n)]
    return poly.mat_det(ImC)
