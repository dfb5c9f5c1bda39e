"""Endomorphism-order conductor determination by torsion membership.

For an ordinary, absolutely simple surface J with L = Q(pi), an element
x of L with N*x in End (N a positive integer) is itself an endomorphism
iff N*x kills J[N] -- checked prime power by prime power on the
prime-to-p part of N, the p-part being free since End is p-maximal in
the ordinary case.  Candidate order basis elements (pi - u)/b are tested
over the divisors b of the maximal conductor, largest norm first, which
pins down b_p exactly.

Membership evidence is one-sided: NonMember comes with a witness torsion
point that survives; Member requires the sampled points to span the full
n-torsion (size n^4) before the kill test counts.  Anything else is
Inconclusive and rendered as a dash downstream.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm

from . import poly
from .arith import factor_integer
from .frobdata import jacobian_order, weil_from_frob
from .jacobian import JacobianContext


class EmbeddingFailed(ValueError):
    pass


@dataclass(frozen=True)
class PiExpression:
    """g(pi)/n with g an integer polynomial of degree <= 3, n > 0.

    Normalized: g reduced mod h4, gcd(content(g), n) = 1.
    """

    g: tuple
    n: int


@dataclass(frozen=True)
class MembershipVerdict:
    status: str  # "Member" | "NonMember" | "Inconclusive"
    reason: str | None = None
    evidence: tuple = ()

    @property
    def is_member(self):
        return self.status == "Member"


MEMBER = MembershipVerdict("Member")


def _qreduce(f, h4):
    """Reduce a Fraction polynomial mod h4."""
    return poly.divmod_exact(f, h4)[1]


def _to_pi_expression(fracs):
    """Fraction coefficient list -> normalized PiExpression."""
    fracs = [Fraction(c) for c in fracs]
    n = reduce(lcm, (c.denominator for c in fracs), 1)
    g = [int(c * n) for c in fracs]
    content = reduce(gcd, (abs(c) for c in g), 0)
    d = gcd(content, n)
    if d > 1:
        g = [c // d for c in g]
        n //= d
    while g and g[-1] == 0:
        g.pop()
    return PiExpression(g=tuple(g), n=n)


def pi_inverse_numerator(w):
    """q^2 * pi^(-1) as an integer polynomial in pi (from h4(pi) = 0)."""
    return [w.q * w.s1, -w.s2, w.s1, -1]


def embed_trace_element(w):
    """a_p = pi + q/pi as a Fraction polynomial mod h4."""
    inv = [Fraction(c, w.q) for c in pi_inverse_numerator(w)]
    return poly.add([Fraction(0), Fraction(1)], inv)


def embed_field_gen(w, a_p):
    """The display generator a of E as a Fraction polynomial in pi.

    Solves a = (a_p_expr - c0)/c1 from a_p = c0 + c1*a and certifies the
    minimal-polynomial relation a^2 + t*a + n = 0 inside Q[x]/(h4).
    """
    E = a_p.field
    if a_p.c1 == 0:
        raise EmbeddingFailed("rational a_p does not embed the quadratic field")
    ap_expr = embed_trace_element(w)
    a_expr = [Fraction(c, a_p.c1) for c in poly.sub(ap_expr, [Fraction(a_p.c0)])]
    h4 = [Fraction(c) for c in w.h4()]
    check = poly.add(
        poly.add(poly.mul(a_expr, a_expr), poly.scale(a_expr, Fraction(E.t))),
        [Fraction(E.n)],
    )
    if _qreduce(check, h4):
        raise EmbeddingFailed("embedded generator violates its minimal polynomial")
    return _qreduce(a_expr, h4)


class EndoContext:
    """Shared state for membership tests on one curve at one prime.

    Caches the embedded field generator, certified torsion samples per
    level, and Jacobian contexts per extension degree.
    """

    def __init__(self, curve, frob, k_max=36, budget=64, rng=None):
        import random

        self.curve = curve
        self.frob = frob
        self.E = frob.a_p.field
        self.w = weil_from_frob(frob)
        self.h4q = [Fraction(c) for c in self.w.h4()]
        self.a_expr = embed_field_gen(self.w, frob.a_p)
        self.a_pi = _to_pi_expression(self.a_expr)
        self.k_max = k_max
        self.budget = budget
        self.rng = rng or random.Random(0)
        self._jac = {}
        self._torsion = {}
        self._certified = {}
        self._cond = None
        self._rm_maximal = None

    def jac(self, k):
        if k not in self._jac:
            self._jac[k] = JacobianContext(self.curve, k)
        return self._jac[k]

    # -- embedding -----------------------------------------------------------

    def embed(self, x):
        """RQInt -> Fraction polynomial in pi (mod h4)."""
        out = poly.add([Fraction(x.c0)], poly.scale(self.a_expr, Fraction(x.c1)))
        return _qreduce(out, self.h4q)

    def to_pi_numerator(self, u, b_elem):
        """(pi - u)/b as a normalized PiExpression (power basis of pi)."""
        nb = b_elem.norm()
        num = poly.sub([Fraction(0), Fraction(1)], self.embed(u))
        conj = self.embed(b_elem.conj())
        expr = poly.scale(poly.mul(num, conj), Fraction(1, nb))
        return _to_pi_expression(_qreduce(expr, self.h4q))

    # -- torsion field degrees ------------------------------------------------

    def torsion_field_degree(self, n):
        """Order of the companion matrix of h4 mod n, capped at k_max.

        This is the rationality degree of J[n] when the 2-adic.. n-adic
        Tate lattice is Z_l[pi]-free; other lattice shapes are covered by
        candidate_degrees.
        """
        if n == 1:
            return 1
        return self._matrix_order_mod(self.w.companion(), n)

    def _matrix_order_mod(self, M4, n):
        Mn = [[c % n for c in row] for row in M4]
        Ident = [[int(i == j) for j in range(4)] for i in range(4)]
        P = Mn
        for k in range(1, self.k_max + 1):
            if P == Ident:
                return k
            P = [
                [sum(P[i][t] * Mn[t][j] for t in range(4)) % n for j in range(4)]
                for i in range(4)
            ]
        return None

    def _sigma_integer_matrix(self, b):
        """The 4x4 integer matrix of sigma for the order with conductor b."""
        from .orders import make_order_spec
        from .sigma import build_sigma

        E = self.E
        m = build_sigma(make_order_spec(b, self.frob))

        def block(x):
            return [[x.c0, -E.n * x.c1], [x.c1, x.c0 - E.t * x.c1]]

        b11, b12, b21, b22 = (block(x) for x in m.entries())
        rows = [b11[r] + b12[r] for r in range(2)]
        rows += [b21[r] + b22[r] for r in range(2)]
        return rows

    def candidate_degrees(self, n):
        """Degrees k over which J[n] may become rational.

        The Tate-module Frobenius in an O_E-basis is the sigma matrix of
        the (still unknown) true conductor, so every candidate order
        contributes the order of its sigma matrix mod n; the companion
        order covers the Z[pi]-lattice shape.  Sampling certifies the
        winner, so a wrong candidate can cost time but not correctness.
        """
        from .orders import NoWitness, compute_bOL, order_divisors

        ks = set()
        k = self.torsion_field_degree(n)
        if k:
            ks.add(k)
        if self._cond is None:
            self._cond = compute_bOL(self.frob)
        for b in order_divisors(self._cond):
            try:
                M4 = self._sigma_integer_matrix(b)
            except NoWitness:  # pragma: no cover - divisors of b_OL always admit u
                continue
            kb = self._matrix_order_mod(M4, n)
            if kb:
                ks.add(kb)
        if len(ks) > 1:
            full = reduce(lcm, ks)
            if full <= self.k_max:
                ks.add(full)
        return sorted(ks)

    # -- torsion sampling ------------------------------------------------------

    def sample_torsion(self, n, k):
        """Generators and the full subgroup of J[n] over F_{p^k}, or None.

        Cofactor method: random points times the prime-to-ell part of
        #J(F_{p^k}) land in the ell-primary component; excess ell-power is
        peeled off.  The generated subgroup is closed explicitly and must
        reach size n^4 (full n-torsion) to count as a certified sample.
        """
        key = (n, k)
        if key in self._torsion:
            return self._torsion[key]
        J = self.jac(k)
        [(ell, c)] = factor_integer(n)
        M = jacobian_order(self.w, k)
        m = M
        while m % ell == 0:
            m //= ell
        target = n**4
        gens = []
        subgroup = {J.identity}
        for _ in range(self.budget):
            if len(subgroup) >= target:
                break
            Q = J.mul(J.random_point(self.rng), m)
            # peel the ell-power order of Q down to divide n
            chain = [Q]
            while chain[-1] != J.identity:
                chain.append(J.mul(chain[-1], ell))
            if len(chain) - 1 > c:
                Q = chain[len(chain) - 1 - c]
            if Q == J.identity or Q in subgroup:
                continue
            cosets = [Q]
            Qi = J.add(Q, Q)
            while Qi not in subgroup and Qi not in cosets:
                cosets.append(Qi)
                Qi = J.add(Qi, Q)
            new = set(subgroup)
            for s in subgroup:
                for t in cosets:
                    new.add(J.add(s, t))
            if len(new) > len(subgroup):
                gens.append(Q)
                subgroup = new
        result = (gens, subgroup) if len(subgroup) >= target else None
        self._torsion[key] = result
        return result

    def certified_torsion(self, n):
        """(generators, full J[n], degree k) or an Inconclusive verdict."""
        if n in self._certified:
            return self._certified[n]
        ks = self.candidate_degrees(n)
        if not ks:
            result = MembershipVerdict(
                "Inconclusive", f"torsion field degree for n={n} exceeds {self.k_max}"
            )
        else:
            for k in ks:
                sample = self.sample_torsion(n, k)
                if sample is not None:
                    result = (sample[0], sample[1], k)
                    break
            else:
                result = MembershipVerdict(
                    "Inconclusive", f"sampling budget exhausted before spanning J[{n}]"
                )
        self._certified[n] = result
        return result

    # -- endomorphism evaluation -----------------------------------------------

    def apply_expression(self, g, D, k):
        """g(Frobenius) applied to the divisor D over F_{p^k}."""
        J = self.jac(k)
        acc = J.identity
        P = D
        for coeff in g:
            if coeff:
                acc = J.add(acc, J.mul(P, coeff))
            P = J.frobenius(P)
        return acc

    def kills_torsion(self, expr):
        """Is g(pi)/n an endomorphism?  Power-basis test, prime-to-p part.

        Assumes the element is an algebraic integer of L and the surface
        is ordinary (End is then p-maximal, so p-power denominators only
        reflect the non-p-integrality of the power basis).
        """
        if expr.n == 1:
            return MEMBER
        for ell, e in factor_integer(expr.n):
            if ell == self.frob.p:
                continue
            n = ell**e
            cert = self.certified_torsion(n)
            if isinstance(cert, MembershipVerdict):
                return cert
            gens, _, k = cert
            J = self.jac(k)
            for D in gens:
                if self.apply_expression(expr.g, D, k) != J.identity:
                    return MembershipVerdict(
                        "NonMember", f"witness {n}-torsion point survives", evidence=(D,)
                    )
        return MEMBER

    def rm_maximal(self):
        """Does the full ring O_E act on J?  (a in End, not just a_p.)

        Everything downstream assumes this; synthetic curves often carry
        only Z[a_p], in which case conductor determination is refused.
        """
        if self._rm_maximal is None:
            self._rm_maximal = self.kills_torsion(self.a_pi)
        return self._rm_maximal

    def element_is_endomorphism(self, A, B, N):
        """Verdict for x = (A + B*pi)/N with A, B in O_E and N > 0.

        A + B*pi lies in O_E[pi] and hence in End once rm_maximal() holds,
        so x is an endomorphism iff A + B*pi kills J[n] for every
        prime-to-p prime power n || N.  The O_E-coefficients are cleared
        through the embedded generator: with n_a * a = g_a(pi), the
        integer polynomial G = n_a * (A + B*pi) kills J[n * ell^v]
        (v = v_ell(n_a)) exactly when A + B*pi kills J[n], because
        multiplication by ell^v maps the larger torsion onto J[n] and the
        remaining prime-to-ell factor of n_a is an automorphism of it.
        """
        rm = self.rm_maximal()
        if not rm.is_member:
            if rm.status == "NonMember":
                return MembershipVerdict(
                    "Inconclusive", "O_E does not act on J: conductor theory inapplicable"
                )
            return rm
        ga, na = list(self.a_pi.g), self.a_pi.n
        h4 = self.w.h4()
        for ell, e in factor_integer(N):
            if ell == self.frob.p:
                continue
            v = 0
            nn = na
            while nn % ell == 0:
                nn //= ell
                v += 1
            n = ell ** (e + v)
            # G(pi) = n_a*(A + B*pi) as an integer polynomial mod h4
            G = [na * A.c0, na * B.c0]
            G = poly.add(G, poly.scale(ga, A.c1))
            G = poly.add(G, poly.mul([0, 1], poly.scale(ga, B.c1)))
            G = [int(c) for c in poly.divmod_exact(G, h4)[1]]
            cert = self.certified_torsion(n)
            if isinstance(cert, MembershipVerdict):
                return cert
            gens, _, k = cert
            J = self.jac(k)
            for D in gens:
                if self.apply_expression(G, D, k) != J.identity:
                    return MembershipVerdict(
                        "NonMember", f"witness {n}-torsion point survives", evidence=(D,)
                    )
        return MEMBER

    def order_element_verdict(self, gamma, u, b_gen):
        """Membership of gamma * (pi - u)/b_gen, via N = |Norm(b_gen)|."""
        conj = b_gen.conj()
        A = -(u * gamma * conj)
        B = gamma * conj
        return self.element_is_endomorphism(A, B, abs(b_gen.norm()))


def determine_bp(cond, frob, ctx, consistency_check=True):
    """b_p and u_p for the order S_p = L intersect End(J).

    Scans the divisors of the maximal conductor by descending norm and
    returns on the first Member; theory says the Member set is exactly the
    divisor set of b_p, which is re-asserted when consistency_check is on.
    """
    from .orders import find_u, order_divisors

    one = frob.a_p.field.one
    verdicts = {}
    result = None
    for b in order_divisors(cond):
        if b.is_unit_ideal():
            verdicts[b] = MEMBER
            result = b
            break
        u = find_u(b, frob)
        v = ctx.order_element_verdict(one, u, b.generator())
        verdicts[b] = v
        if v.status == "Inconclusive":
            return None, None, v
        if v.is_member:
            result = b
            break
    if consistency_check:
        for b, v in verdicts.items():
            expect = b.divides(result) if v.is_member else not b.divides(result)
            assert expect, "membership verdicts violate the divisor-lattice structure"
    return result, find_u(result, frob), MEMBER


def brute_force_bp(cond, frob, ctx):
    """Oracle: conductor of S_p by testing every residue gamma mod b_OL.

    S_p = O_E + I*e2 with e2 = (pi - u)/b_OL and I = {gamma : gamma*e2 in
    End}; then b_p = b_OL / I.  Exhaustive over the residue system, so only
    sensible for tiny conductors and tiny curves.
    """
    from .orders import find_u
    from .realquad import RQIdeal, ideal_divide

    bOL = cond.b_OL
    if bOL.is_unit_ideal():
        return bOL, frob.a_p.field.zero
    u = find_u(bOL, frob)
    bgen = bOL.generator()
    members = []
    for gamma in bOL.residue_system():
        v = ctx.order_element_verdict(gamma, u, bgen)
        if v.status == "Inconclusive":
            raise RuntimeError(f"oracle inconclusive: {v.reason}")
        if v.is_member:
            members.append(gamma)
    gens = [g for g in members if g] + bOL.basis()
    ideal_I = RQIdeal.from_generators(gens)
    b_p = ideal_divide(bOL, ideal_I)
    return b_p, find_u(b_p, frob)
