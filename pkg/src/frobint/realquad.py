"""Arithmetic of a real quadratic field E = Q(sqrt(d)) with class number one.

The field is presented through a *display generator* a with monic minimal
polynomial x^2 + t*x + n whose discriminant t^2 - 4n equals the field
discriminant, so that O_E = Z[a].  Elements are integer pairs c0 + c1*a;
ideals are Z-lattices in Hermite normal form with Z-basis (A, C + D*a).

Class number one is attested by configuration, not computed: every ideal
is assumed principal, and generator search fails loudly if that is wrong.
"""

import re
from dataclasses import dataclass
from math import isqrt

from .arith import factor_integer, is_prime, sqrt_exact, xgcd

# squarefree d for which h(Q(sqrt(d))) = 1 is taken as given
CLASS_NUMBER_ONE_D = frozenset({2, 3, 5, 13})


class FieldMismatch(ValueError):
    pass


class GeneratorSearchExceeded(RuntimeError):
    pass


def _field_discriminant(d):
    return d if d % 4 == 1 else 4 * d


class RQField:
    """Q(sqrt(d)) with display basis (1, a), a^2 + t*a + n = 0 and O_E = Z[a]."""

    def __init__(self, d, t, n, class_number_one_attested=None):
        disc = t * t - 4 * n
        if d <= 1:
            raise ValueError("d must be > 1")
        sq = disc // _field_discriminant(d) if disc % _field_discriminant(d) == 0 else 0
        if disc <= 0 or disc != _field_discriminant(d):
            raise ValueError("minimal polynomial must generate the maximal order Z[a]")
        del sq
        self.d = d
        self.t = t
        self.n = n
        self.disc = disc
        if class_number_one_attested is None:
            class_number_one_attested = d in CLASS_NUMBER_ONE_D
        self.class_number_one_attested = class_number_one_attested
        self._unit = None

    # -- element constructors ------------------------------------------------

    def __call__(self, c0, c1=0):
        return RQInt(self, c0, c1)

    @property
    def zero(self):
        return RQInt(self, 0, 0)

    @property
    def one(self):
        return RQInt(self, 1, 0)

    @property
    def gen(self):
        return RQInt(self, 0, 1)

    def sqrt_disc(self):
        """The element 2a + t, a square root of the field discriminant."""
        return RQInt(self, self.t, 2)

    @property
    def fundamental_unit(self):
        """Fundamental unit: the smallest unit > 1 in the embedding a -> larger root.

        Found by searching |Norm(c0 + c1*a)| = 1 over increasing |c1|; the
        fundamental unit has the minimal positive sqrt(disc)-coefficient
        among units > 1, so it appears at the first |c1| with any unit.
        """
        if self._unit is None:
            from math import sqrt

            aval = (-self.t + sqrt(self.disc)) / 2
            for c1a in range(1, 10 * self.disc + 100):
                cands = []
                for c1 in (c1a, -c1a):
                    for target in (1, -1):
                        for c0 in self._solve_norm(c1, target):
                            for u in (RQInt(self, c0, c1), RQInt(self, -c0, -c1)):
                                v = u.c0 + u.c1 * aval
                                if v > 1 + 1e-9:
                                    cands.append((v, u.c0, u.c1))
                if cands:
                    _, c0, c1 = min(cands)
                    self._unit = RQInt(self, c0, c1)
                    break
            else:  # pragma: no cover
                raise GeneratorSearchExceeded("no fundamental unit found")
        return self._unit

    def _solve_norm(self, c1, target):
        """Integer c0 with Norm(c0 + c1*a) = target, as a list."""
        # c0^2 - t*c1*c0 + (n*c1^2 - target) = 0
        disc = self.t * self.t * c1 * c1 - 4 * (self.n * c1 * c1 - target)
        s = sqrt_exact(disc)
        if s is None:
            return []
        out = []
        for sg in (s, -s) if s else (0,):
            if (self.t * c1 + sg) % 2 == 0:
                out.append((self.t * c1 + sg) // 2)
        return sorted(set(out))

    def parse(self, text):
        return parse_element(self, text)

    def __eq__(self, other):
        return isinstance(other, RQField) and (other.d, other.t, other.n) == (self.d, self.t, self.n)

    def __hash__(self):
        return hash(("RQField", self.d, self.t, self.n))

    def __repr__(self):
        tt = f"{self.t:+d}*x" if self.t else ""
        nn = f"{self.n:+d}" if self.n else ""
        return f"RQField(d={self.d}, x^2{tt}{nn})"


class RQInt:
    """The algebraic integer c0 + c1*a in the display basis of an RQField."""

    __slots__ = ("field", "c0", "c1")

    def __init__(self, field, c0, c1=0):
        self.field = field
        self.c0 = c0
        self.c1 = c1

    def _coerce(self, other):
        if isinstance(other, RQInt):
            if other.field != self.field:
                raise FieldMismatch("elements of different fields")
            return other
        if isinstance(other, int):
            return RQInt(self.field, other, 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else RQInt(self.field, self.c0 + o.c0, self.c1 + o.c1)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else RQInt(self.field, self.c0 - o.c0, self.c1 - o.c1)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else o - self

    def __neg__(self):
        return RQInt(self.field, -self.c0, -self.c1)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        F = self.field
        # a^2 = -n - t*a
        cross = self.c1 * o.c1
        return RQInt(
            F,
            self.c0 * o.c0 - F.n * cross,
            self.c0 * o.c1 + self.c1 * o.c0 - F.t * cross,
        )

    __rmul__ = __mul__

    def __pow__(self, e):
        r = RQInt(self.field, 1, 0)
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def conj(self):
        """Galois conjugate: a -> -t - a."""
        return RQInt(self.field, self.c0 - self.field.t * self.c1, -self.c1)

    def norm(self):
        F = self.field
        return self.c0 * self.c0 - F.t * self.c0 * self.c1 + F.n * self.c1 * self.c1

    def trace(self):
        return 2 * self.c0 - self.field.t * self.c1

    def is_rational(self):
        return self.c1 == 0

    def divides(self, other):
        """Exact divisibility in O_E."""
        return self.exact_div(other, strict=False) is not None

    def exact_div(self, other, strict=True):
        """other / self in O_E, or None (or ValueError when strict)."""
        o = self._coerce(other)
        nm = self.norm()
        if nm == 0:
            raise ZeroDivisionError
        num = o * self.conj()
        if num.c0 % nm == 0 and num.c1 % nm == 0:
            return RQInt(self.field, num.c0 // nm, num.c1 // nm)
        if strict:
            raise ValueError(f"{other} not divisible by {self}")
        return None

    def __eq__(self, other):
        o = self._coerce(other)
        return o is not None and (o.c0, o.c1) == (self.c0, self.c1)

    def __hash__(self):
        return hash((self.field, self.c0, self.c1))

    def __bool__(self):
        return bool(self.c0 or self.c1)

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"<{format_element(self)}>"


def elem_norm(x):
    return x.norm()


def elem_trace(x):
    return x.trace()


# ---------------------------------------------------------------------------
# element text format: "c0+c1*a" ("2a" accepted on input)

_TERM_RE = re.compile(r"([+-]?)(\d*)(\*?a)?", re.ASCII)


def parse_element(field, text):
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty element string")
    c0 = c1 = 0
    pos = 0
    seen = False
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse element {text!r} at {s[pos:]!r}")
        sign = -1 if m.group(1) == "-" else 1
        digits, avar = m.group(2), m.group(3)
        if not digits and not avar:
            raise ValueError(f"cannot parse element {text!r}")
        coeff = int(digits) if digits else 1
        if avar:
            c1 += sign * coeff
        else:
            c0 += sign * coeff
        pos = m.end()
        seen = True
    if not seen:
        raise ValueError(f"cannot parse element {text!r}")
    return RQInt(field, c0, c1)


def format_element(x):
    if x.c1 == 0:
        return str(x.c0)
    aterm = "a" if abs(x.c1) == 1 else f"{abs(x.c1)}*a"
    sign = "-" if x.c1 < 0 else ("+" if x.c0 != 0 else "")
    if x.c0 == 0:
        return f"{sign}{aterm}"
    return f"{x.c0}{sign}{aterm}"


# ---------------------------------------------------------------------------
# ideals


@dataclass(frozen=True)
class PrimeLabel:
    ell: int
    kind: str  # "inert" | "ramified" | "split"
    index: int | None = None  # 1 or 2 for split primes

    def __str__(self):
        if self.kind == "inert":
            return f"({self.ell})"
        if self.kind == "ramified":
            return f"l{self.ell}"
        return f"l{self.ell}_{self.index}"

    def sort_key(self):
        return (self.ell, self.index or 0)


class RQIdeal:
    """Nonzero ideal of O_E as an HNF lattice Z*A + Z*(C + D*a).

    Invariants: A > 0, D > 0, D | A, D | C, 0 <= C < A, and the lattice is
    an O_E-module.  Norm = A * D.
    """

    __slots__ = ("field", "A", "C", "D", "_gen")

    def __init__(self, field, A, C, D):
        self.field = field
        self.A = A
        self.C = C
        self.D = D
        self._gen = None

    @classmethod
    def from_vectors(cls, field, vecs):
        """HNF of the Z-module spanned by (c0, c1) vectors."""
        vecs = [v for v in vecs if v != (0, 0)]
        if not vecs:
            raise ValueError("zero ideal disallowed")
        # reduce second coordinates to a single pivot by gcd steps
        w = None
        rest = []
        for v in vecs:
            if v[1] == 0:
                rest.append(v[0])
            elif w is None:
                w = v
            else:
                g, s, u = xgcd(w[1], v[1])
                neww = (s * w[0] + u * v[0], g)
                rest.append(v[0] - (v[1] // g) * neww[0])
                if w[1] // g:
                    rest.append(w[0] - (w[1] // g) * neww[0])
                w = neww
        if w is None:
            raise ValueError("module of rank < 2 is not an ideal")
        A = 0
        for r in rest:
            A = xgcd(A, r)[0]
        if A == 0:
            raise ValueError("module of rank < 2 is not an ideal")
        D = abs(w[1])
        C = w[0] if w[1] > 0 else -w[0]
        C %= A
        return cls(field, A, C, D)

    @classmethod
    def from_generators(cls, elems):
        field = elems[0].field
        vecs = []
        for g in elems:
            ga = g * field.gen
            vecs.append((g.c0, g.c1))
            vecs.append((ga.c0, ga.c1))
        return cls.from_vectors(field, vecs)

    @classmethod
    def principal(cls, x):
        if isinstance(x, int):
            raise TypeError("wrap rational integers as RQInt first")
        if not x:
            raise ValueError("zero ideal disallowed")
        I = cls.from_generators([x])
        I._gen = x
        return I

    @classmethod
    def unit_ideal(cls, field):
        I = cls(field, 1, 0, 1)
        I._gen = field.one
        return I

    # -- basic structure -----------------------------------------------------

    @property
    def norm(self):
        return self.A * self.D

    def is_unit_ideal(self):
        return self.A == 1 and self.D == 1

    def basis(self):
        F = self.field
        return [RQInt(F, self.A, 0), RQInt(F, self.C, self.D)]

    def reduce(self, x):
        """Canonical HNF residue of x: (c0 mod A, c1 mod D) after pivoting."""
        r1 = x.c1 % self.D
        k = (x.c1 - r1) // self.D
        r0 = (x.c0 - k * self.C) % self.A
        return RQInt(self.field, r0, r1)

    def contains(self, x):
        return x.c1 % self.D == 0 and (x.c0 - (x.c1 // self.D) * self.C) % self.A == 0

    def contains_ideal(self, other):
        return all(self.contains(b) for b in other.basis())

    def divides(self, other):
        """Ideal divisibility: self | other, i.e. other is contained in self."""
        return self.contains_ideal(other)

    def __mul__(self, other):
        if isinstance(other, RQInt):
            other = RQIdeal.principal(other)
        if other.field != self.field:
            raise FieldMismatch("ideals of different fields")
        vecs = []
        for b1 in self.basis():
            for b2 in other.basis():
                p = b1 * b2
                pa = p * self.field.gen
                vecs.append((p.c0, p.c1))
                vecs.append((pa.c0, pa.c1))
        return RQIdeal.from_vectors(self.field, vecs)

    def __pow__(self, e):
        r = RQIdeal.unit_ideal(self.field)
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def __eq__(self, other):
        return (
            isinstance(other, RQIdeal)
            and other.field == self.field
            and (other.A, other.C, other.D) == (self.A, self.C, self.D)
        )

    def __hash__(self):
        return hash((self.field, self.A, self.C, self.D))

    def __repr__(self):
        return f"RQIdeal(A={self.A}, C={self.C}, D={self.D})"

    # -- residues ------------------------------------------------------------

    def residue_system(self):
        """Iterator over the Norm(self) canonical residues of O_E mod self."""
        F = self.field
        for x1 in range(self.D):
            for x0 in range(self.A):
                yield RQInt(F, x0, x1)

    def canonical_residue(self, x):
        """The representative of x + self minimizing (|c1|, |c0|, -sign)."""
        best = None
        r = self.reduce(x)
        c1cands = {r.c1, r.c1 - self.D}
        for c1 in c1cands:
            k = (c1 - r.c1) // self.D
            base = (r.c0 + k * self.C) % self.A
            for c0 in (base, base - self.A):
                key = (abs(c1), abs(c0), c0 < 0, c1 < 0)
                if best is None or key < best[0]:
                    best = (key, RQInt(self.field, c0, c1))
        return best[1]

    # -- generators ----------------------------------------------------------

    def generator(self):
        """A generator of this (principal, since h = 1) ideal.

        Normalized among associates: minimal |c1|, then minimal |c0|, then
        positive leading sign.
        """
        if self._gen is not None:
            return self._gen
        if not self.field.class_number_one_attested:
            raise GeneratorSearchExceeded("class number one not attested")
        N = self.norm
        F = self.field
        limit = 4 * (isqrt(F.disc * N) + 1) + 8
        for c1a in range(limit + 1):
            cands = []
            for c1 in {c1a, -c1a}:
                for target in (N, -N):
                    for c0 in F._solve_norm(c1, target):
                        x = RQInt(F, c0, c1)
                        if self.contains(x):
                            cands.append(x)
            if cands:
                best = min(cands, key=lambda x: (abs(x.c0), x.c0 < 0, x.c1 < 0))
                self._gen = best
                return best
        raise GeneratorSearchExceeded(f"no generator with |c1| <= {limit} for {self!r}")


def find_generator(I):
    return I.generator()


# ---------------------------------------------------------------------------
# prime ideals and factorization


def prime_above(field, ell):
    """Prime ideals above a rational prime ell, with labels.

    Splitting is read off from the display minimal polynomial mod ell; for
    split ell the label l{ell}_1 goes with the smaller root in {0,...,ell-1}.
    """
    if not is_prime(ell):
        raise ValueError("ell must be prime")
    roots = sorted(r for r in range(ell) if (r * r + field.t * r + field.n) % ell == 0)
    if not roots:
        I = RQIdeal(field, ell, 0, ell)
        I._gen = field(ell)
        return [(I, PrimeLabel(ell, "inert"))]
    if len(roots) == 1 and (field.disc % ell == 0 or ell == 2):
        r = roots[0]
        return [(RQIdeal(field, ell, (-r) % ell, 1), PrimeLabel(ell, "ramified"))]
    if len(roots) == 1:
        # double root without ramification cannot happen for p odd
        roots = roots * 2
    out = []
    for i, r in enumerate(roots, start=1):
        out.append((RQIdeal(field, ell, (-r) % ell, 1), PrimeLabel(ell, "split", i)))
    return out


def valuation(I, P):
    """v_P(I) for a prime ideal P."""
    e = 0
    Q = P
    while Q.contains_ideal(I):
        e += 1
        Q = Q * P
    return e


def factor_ideal(I):
    """[(prime ideal, exponent, label)] sorted by (ell, index); product == I."""
    if I.is_unit_ideal():
        return []
    out = []
    for ell, _ in factor_integer(I.norm):
        for P, label in prime_above(I.field, ell):
            e = valuation(I, P)
            if e:
                out.append((P, e, label))
    out.sort(key=lambda t: t[2].sort_key())
    check = RQIdeal.unit_ideal(I.field)
    for P, e, _ in out:
        check = check * P**e
    assert check == I, "ideal factorization failed to reconstruct input"
    return out


def ideal_divide(J, I):
    """J / I for ideals with I | J, via factorization."""
    fJ = {str(lab): (P, e) for P, e, lab in factor_ideal(J)}
    out = RQIdeal.unit_ideal(J.field)
    for P, e, lab in factor_ideal(I):
        PJ, eJ = fJ.get(str(lab), (None, 0))
        if eJ < e:
            raise ValueError("ideal does not divide")
        fJ[str(lab)] = (P, eJ - e)
    for P, e in fJ.values():
        if e:
            out = out * P**e
    return out


def residue_system(I):
    return I.residue_system()


# ---------------------------------------------------------------------------
# display-basis changes and ideal text format


def change_display_basis(x, to_field):
    """Re-express x in another display basis of the same field."""
    F = x.field
    if to_field.d != F.d:
        raise FieldMismatch("different underlying fields")
    if (to_field.t - F.t) % 2 != 0:
        raise FieldMismatch("incompatible display generators")
    shift = (to_field.t - F.t) // 2
    # a_from = a_to + shift
    return RQInt(to_field, x.c0 + x.c1 * shift, x.c1)


_LABEL_RE = re.compile(r"^(?:\((\d+)\)|l(\d+)(?:_(\d+))?)$")


def parse_ideal(field, text):
    """Ideal from a label "(2)", "l5", "l11_1" or a generator element."""
    s = text.replace(" ", "")
    m = _LABEL_RE.match(s)
    if m:
        if m.group(1):
            ell = int(m.group(1))
            if ell == 1:
                return RQIdeal.unit_ideal(field)
            for P, lab in prime_above(field, ell):
                if lab.kind == "inert":
                    return P
            raise ValueError(f"({ell}) is not inert in this field")
        ell = int(m.group(2))
        idx = int(m.group(3)) if m.group(3) else None
        for P, lab in prime_above(field, ell):
            if (idx is None and lab.kind == "ramified") or (idx is not None and lab.index == idx):
                return P
        raise ValueError(f"no prime labelled {s} above {ell}")
    return RQIdeal.principal(parse_element(field, s))


def format_factorization(factors):
    """Canonical text for [(ideal, exponent, label)]: "(2)^2*l5*l11_1"."""
    if not factors:
        return "(1)"
    parts = []
    for _, e, lab in sorted(factors, key=lambda t: t[2].sort_key()):
        parts.append(str(lab) + (f"^{e}" if e > 1 else ""))
    return "*".join(parts)
