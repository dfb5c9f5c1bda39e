"""The lattice of orders between O_E[pi] and O_L, via conductor ideals.

For L = E[pi] with pi a root of h_p, every intermediate O_E-order S is
determined by its conductor ideal b_S of O_E, and S has O_E-basis
(1, (pi - u)/b) for any u with 2u - a_p in b and h_p(u) in b^2.  The
maximal conductor b_{O_L} satisfies (a_p^2 - 4 s_p) = delta_{O_L} * b_{O_L}^2.
"""

from dataclasses import dataclass

from .realquad import RQIdeal, RQInt, factor_ideal, valuation


class DiscZero(ValueError):
    """Scalar Frobenius: the order machinery does not apply."""


class NoWitness(RuntimeError):
    """No u satisfies the basis conditions (internal consistency failure)."""


def _basis_conditions_hold(u, b, frob, b2=None):
    if b2 is None:
        b2 = b * b
    return b.contains(2 * u - frob.a_p) and b2.contains(frob.hp_at(u))


def conductor_exponent(lam, frob, fast_odd=True):
    """e = v_lambda(b_{O_L}) for a prime ideal lambda.

    For lambda not above 2 this is floor(v_lambda(disc) / 2).  Above 2 the
    halving can overshoot, so the exponent is certified by exhaustively
    searching residue witnesses u for each candidate power.
    """
    if not frob.disc:
        raise DiscZero
    disc_ideal = RQIdeal.principal(frob.disc)
    v = valuation(disc_ideal, lam)
    if v < 2:
        return 0
    if fast_odd and lam.norm % 2 == 1:
        return v // 2
    e = 0
    for cand in range(1, v // 2 + 1):
        b = lam**cand
        b2 = b * b
        if any(_basis_conditions_hold(u, b, frob, b2) for u in b.residue_system()):
            e = cand
        else:
            break
    return e


@dataclass(frozen=True)
class ConductorResult:
    b_OL: RQIdeal
    factorization: tuple  # ((prime ideal, exponent, label), ...)

    def factor_string(self):
        from .realquad import format_factorization

        return format_factorization(list(self.factorization))


def compute_bOL(frob):
    """The maximal conductor b_{O_L}, assembled prime by prime from disc."""
    if not frob.disc:
        raise DiscZero
    from .realquad import prime_above
    from .arith import factor_integer

    disc_norm = abs(frob.disc.norm())
    E = frob.a_p.field
    b = RQIdeal.unit_ideal(E)
    facs = []
    for ell, _ in factor_integer(disc_norm):
        for lam, label in prime_above(E, ell):
            e = conductor_exponent(lam, frob)
            if e:
                b = b * lam**e
                facs.append((lam, e, label))
    facs.sort(key=lambda t: t[2].sort_key())
    return ConductorResult(b_OL=b, factorization=tuple(facs))


def order_divisors(cond):
    """All ideal divisors of b_{O_L}, norm-descending (deterministic ties)."""
    E = cond.b_OL.field
    divs = [RQIdeal.unit_ideal(E)]
    labels = [()]
    for lam, e, label in cond.factorization:
        divs = [d * lam**i for d in divs for i in range(e + 1)]
        labels = [ls + ((label, i),) for ls in labels for i in range(e + 1)]
    order = sorted(
        range(len(divs)),
        key=lambda i: (-divs[i].norm, tuple(str(l) + str(x) for l, x in labels[i])),
    )
    return [divs[i] for i in order]


def find_u(b, frob):
    """A witness u for the basis (1, (pi - u)/b): 2u - a_p in b, h_p(u) in b^2.

    The class of u mod b is unique; the returned representative is the
    canonical one (minimal |c1|, then |c0|, then sign).  Search is
    exhaustive over the residue system: conductor norms here are tiny.
    """
    if b.is_unit_ideal():
        return b.field.zero
    b2 = b * b
    for u in b.residue_system():
        if _basis_conditions_hold(u, b, frob, b2):
            return b.canonical_residue(u)
    raise NoWitness(f"no residue satisfies the basis conditions for {b!r}")


@dataclass(frozen=True)
class OrderSpec:
    """The order with O_E-basis (1, (pi - u)/b_gen), conductor b."""

    b: RQIdeal
    b_gen: RQInt
    u: RQInt
    frob: object

    def conditions_hold(self):
        return _basis_conditions_hold(self.u, self.b, self.frob)


def make_order_spec(b, frob, u=None):
    if u is None:
        u = find_u(b, frob)
    elif not _basis_conditions_hold(u, b, frob):
        raise NoWitness(f"supplied u = {u} fails the basis conditions")
    return OrderSpec(b=b, b_gen=b.generator(), u=u, frob=frob)
