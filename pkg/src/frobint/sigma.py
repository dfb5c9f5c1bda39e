"""Construction of the integral Frobenius matrix.

Given the order data (a_p, s_p, u, b) the 2x2 matrix over O_E

    sigma_p = [[u, -(u^2 - a_p*u + s_p)/b], [b, a_p - u]]

has characteristic polynomial h_p and the decomposition
(sigma_p - u*I)/b integral; when b = (1) it degenerates to the companion
matrix of h_p, and when a_p^2 = 4 s_p the scalar matrix pi*I is used.
"""

from dataclasses import dataclass

from .realquad import RQIdeal, RQInt, format_element


class NonIntegralEntry(ValueError):
    pass


class NotPrimeToP(ValueError):
    pass


@dataclass(frozen=True)
class SigmaMatrix:
    m11: RQInt
    m12: RQInt
    m21: RQInt
    m22: RQInt
    provenance: str  # "scalar" | "companion" | "general"

    def trace(self):
        return self.m11 + self.m22

    def det(self):
        return self.m11 * self.m22 - self.m12 * self.m21

    def entries(self):
        return (self.m11, self.m12, self.m21, self.m22)

    def __str__(self):
        e = [format_element(x) for x in self.entries()]
        return f"[[{e[0]}, {e[1]}], [{e[2]}, {e[3]}]]"


def build_scalar_sigma(pi):
    """sigma_p = pi * I for scalar Frobenius (pi in O_E, pi^2 = s_p)."""
    E = pi.field
    return SigmaMatrix(pi, E.zero, E.zero, pi, "scalar")


def build_sigma(spec):
    """sigma_p from an order spec; exact division certifies integrality."""
    frob = spec.frob
    E = frob.a_p.field
    u, b = spec.u, spec.b_gen
    if spec.b.is_unit_ideal() and not u:
        return SigmaMatrix(E.zero, -frob.s_p, E.one, frob.a_p, "companion")
    hu = frob.hp_at(u)
    m12 = b.exact_div(-hu, strict=False)
    if m12 is None:
        raise NonIntegralEntry(f"h_p(u) = {hu} not divisible by b = {b}")
    tag = "companion" if spec.b.is_unit_ideal() else "general"
    return SigmaMatrix(u, m12, b, frob.a_p - u, tag)


@dataclass(frozen=True)
class SigmaReport:
    trace_ok: bool
    det_ok: bool
    decomposition_ok: bool
    failures: tuple

    @property
    def ok(self):
        return not self.failures


def verify_sigma(m, spec):
    """Check trace/det against h_p and integrality of (sigma - u*I)/b."""
    frob = spec.frob
    fails = []
    trace_ok = m.trace() == frob.a_p
    det_ok = m.det() == frob.s_p
    if not trace_ok:
        fails.append(f"trace {m.trace()} != a_p {frob.a_p}")
    if not det_ok:
        fails.append(f"det {m.det()} != s_p {frob.s_p}")
    b, u = spec.b_gen, spec.u
    decomposition_ok = True
    if m.provenance != "scalar":
        shifted = (m.m11 - u, m.m12, m.m21, m.m22 - u)
        for name, entry in zip(("11", "12", "21", "22"), shifted):
            if b.exact_div(entry, strict=False) is None:
                decomposition_ok = False
                fails.append(f"entry {name} of sigma - u*I not divisible by b")
    return SigmaReport(trace_ok, det_ok, decomposition_ok, tuple(fails))


def decompose_sigma(m, spec):
    """The integral matrix (sigma - u*I)/b."""
    b, u = spec.b_gen, spec.u
    ent = [
        b.exact_div(m.m11 - u),
        b.exact_div(m.m12),
        b.exact_div(m.m21),
        b.exact_div(m.m22 - u),
    ]
    return SigmaMatrix(*ent, "general")


def scalar_action_on_torsion(n, b_p, p=None):
    """Frobenius acts as an O_E/n-scalar on the n-torsion iff n | b_p."""
    if p is not None and n.norm % p == 0:
        raise NotPrimeToP(f"n must be prime to {p}")
    return n.divides(b_p) if not n.is_unit_ideal() else True


def splits_completely(n, b_p, p=None):
    """p splits completely in the projective n-torsion field iff n | b_p."""
    return scalar_action_on_torsion(n, b_p, p)
