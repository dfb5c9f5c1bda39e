"""Finite fields F_{p^k} and their quadratic extensions.

Two layers live here:

* a procedural kernel (`GF`, `GFPrime`, `GFExt`) used by the Jacobian
  engine, where elements of F_p are plain ints in {0,...,p-1} and elements
  of F_{p^k} (k > 1) are tuples of k ints, lowest degree first, reduced
  modulo a fixed irreducible modulus;
* a thin `FFElem` wrapper with overloaded operators for library users and
  for the field-axiom test suite.

The modulus of F_{p^k} is always the lexicographically least monic
irreducible polynomial of degree k over F_p, so field towers are
reproducible across runs.
"""

from functools import lru_cache

from .arith import factor_integer, is_prime


# ---------------------------------------------------------------------------
# GF(p)[x] helpers on int-list polynomials (lowest degree first)


def _pmod_trim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def _pmod_mul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return _pmod_trim(out)


def _pmod_rem(f, g, p):
    f = f[:]
    dg = len(g) - 1
    inv_lc = pow(g[-1], p - 2, p)
    while len(f) - 1 >= dg and f:
        c = f[-1] * inv_lc % p
        d = len(f) - 1 - dg
        for i in range(len(g)):
            f[d + i] = (f[d + i] - c * g[i]) % p
        _pmod_trim(f)
    return f


def _pmod_gcd(f, g, p):
    while g:
        f, g = g, _pmod_rem(f, g, p)
    return f


def _pmod_powmod(f, e, m, p):
    r = [1]
    f = _pmod_rem(f[:], m, p)
    while e:
        if e & 1:
            r = _pmod_rem(_pmod_mul(r, f, p), m, p)
        f = _pmod_rem(_pmod_mul(f, f, p), m, p)
        e >>= 1
    return r


def is_irreducible_mod_p(f, p):
    """Irreducibility of a polynomial over F_p (x^{p^d} criterion)."""
    f = _pmod_trim([c % p for c in f])
    k = len(f) - 1
    if k <= 0:
        return False
    if k == 1:
        return True
    x = [0, 1]
    xq = _pmod_powmod(x, p**k, f, p)
    if _pmod_trim([(a - b) % p for a, b in zip_longest(xq, x)]) != []:
        return False
    for r, _ in factor_integer(k):
        xr = _pmod_powmod(x, p ** (k // r), f, p)
        diff = _pmod_trim([(a - b) % p for a, b in zip_longest(xr, x)])
        g = _pmod_gcd(f[:], diff, p)
        if len(g) - 1 != 0:
            return False
    return True


def zip_longest(a, b):
    n = max(len(a), len(b))
    return [((a[i] if i < len(a) else 0), (b[i] if i < len(b) else 0)) for i in range(n)]


@lru_cache(maxsize=None)
def find_irreducible(p, k):
    """Lexicographically least monic irreducible of degree k over F_p.

    Returned as a tuple of k+1 coefficients, lowest degree first.
    Ordering is by the coefficient vector (c_{k-1}, ..., c_1, c_0) read as
    a base-p integer, so runs are reproducible.
    """
    if not is_prime(p):
        raise ValueError("p must be prime")
    if k < 1:
        raise ValueError("k must be >= 1")
    if k == 1:
        return (0, 1)
    for m in range(p**k):
        digits = []
        mm = m
        for _ in range(k):
            digits.append(mm % p)
            mm //= p
        f = digits + [1]
        if is_irreducible_mod_p(f, p):
            return tuple(f)
    raise AssertionError("unreachable: irreducible polynomial always exists")


# ---------------------------------------------------------------------------
# field kernel


def GF(p, k=1, modulus=None):
    """Field descriptor for F_{p^k}."""
    if k == 1:
        return GFPrime(p)
    return GFExt(p, k, modulus)


class GFPrime:
    """F_p with elements as plain ints in {0, ..., p-1}."""

    def __init__(self, p):
        if not is_prime(p):
            raise ValueError("p must be prime")
        self.p = p
        self.k = 1
        self.order = p
        self.zero = 0
        self.one = 1 % p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError
        return pow(a, self.p - 2, self.p)

    def pow(self, a, e):
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(a, e, self.p)

    def frob(self, a):
        return a

    def from_int(self, n):
        return n % self.p

    def element(self, index):
        return index % self.order

    def random(self, rng):
        return rng.randrange(self.order)

    def is_square(self, a):
        return a == 0 or pow(a, (self.p - 1) // 2, self.p) == 1

    def sqrt(self, a):
        return field_sqrt(self, a)

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, GFPrime) and other.p == self.p

    def __hash__(self):
        return hash(("GFPrime", self.p))


class GFExt:
    """F_{p^k}, k > 1, elements as k-tuples of ints (lowest degree first)."""

    def __init__(self, p, k, modulus=None):
        if not is_prime(p):
            raise ValueError("p must be prime")
        if k < 2:
            raise ValueError("use GFPrime for k = 1")
        if modulus is None:
            modulus = find_irreducible(p, k)
        modulus = tuple(c % p for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree k")
        if not is_irreducible_mod_p(list(modulus), p):
            raise ValueError("modulus is not irreducible over F_p")
        self.p = p
        self.k = k
        self.modulus = modulus
        self.order = p**k
        self.zero = (0,) * k
        self.one = (1,) + (0,) * (k - 1)
        # reduction table: x^(k+i) mod modulus for i in 0..k-2
        red = []
        cur = [-c % p for c in modulus[:-1]]  # x^k
        red.append(tuple(cur))
        for _ in range(k - 2):
            cur = self._shift_reduce(cur)
            red.append(tuple(cur))
        self._red = red

    def _shift_reduce(self, cur):
        out = [0] + list(cur[: self.k - 1])
        lead = cur[self.k - 1]
        if lead:
            top = self._redrow0
            for i in range(self.k):
                out[i] = (out[i] + lead * top[i]) % self.p
        return out

    @property
    def _redrow0(self):
        return [-c % self.p for c in self.modulus[: self.k]]

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def mul(self, a, b):
        p, k = self.p, self.k
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        out = [c % p for c in prod[:k]]
        for i in range(k, 2 * k - 1):
            c = prod[i] % p
            if c:
                row = self._red[i - k]
                for j in range(k):
                    out[j] = (out[j] + c * row[j]) % p
        return tuple(out)

    def inv(self, a):
        if a == self.zero:
            raise ZeroDivisionError
        return self.pow(a, self.order - 2)

    def pow(self, a, e):
        if e < 0:
            a = self.inv(a)
            e = -e
        r = self.one
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def frob(self, a):
        return self.pow(a, self.p)

    def from_int(self, n):
        return (n % self.p,) + (0,) * (self.k - 1)

    def element(self, index):
        index %= self.order
        digits = []
        for _ in range(self.k):
            digits.append(index % self.p)
            index //= self.p
        return tuple(digits)

    def random(self, rng):
        return tuple(rng.randrange(self.p) for _ in range(self.k))

    def is_square(self, a):
        return a == self.zero or self.pow(a, (self.order - 1) // 2) == self.one

    def sqrt(self, a):
        return field_sqrt(self, a)

    def __repr__(self):
        return f"GF({self.p}^{self.k})"

    def __eq__(self, other):
        return (
            isinstance(other, GFExt)
            and (other.p, other.k, other.modulus) == (self.p, self.k, self.modulus)
        )

    def __hash__(self):
        return hash(("GFExt", self.p, self.k, self.modulus))


def field_sqrt(K, a):
    """Square root in a field kernel of odd order, or None for non-squares.

    Tonelli-Shanks, deterministic non-residue search by element index.
    """
    q = K.order
    if a == K.zero:
        return K.zero
    if not K.is_square(a):
        return None
    if q % 4 == 3:
        return K.pow(a, (q + 1) // 4)
    # write q - 1 = 2^s * t
    t, s = q - 1, 0
    while t % 2 == 0:
        t //= 2
        s += 1
    z = None
    for idx in range(1, q):
        cand = K.element(idx)
        if cand != K.zero and not K.is_square(cand):
            z = cand
            break
    c = K.pow(z, t)
    x = K.pow(a, (t + 1) // 2)
    r = K.pow(a, t)
    m = s
    while r != K.one:
        i, rr = 0, r
        while rr != K.one:
            rr = K.mul(rr, rr)
            i += 1
        b = K.pow(c, 1 << (m - i - 1))
        x = K.mul(x, b)
        c = K.mul(b, b)
        r = K.mul(r, c)
        m = i
    return x


# ---------------------------------------------------------------------------
# wrapper element type


class FFElem:
    """An element of F_{p^k} with operator overloading.

    Mostly a convenience wrapper over the field kernel; the Jacobian engine
    bypasses it and works on raw kernel values.
    """

    __slots__ = ("field", "value")

    def __init__(self, field, value):
        self.field = field
        if isinstance(value, int):
            value = field.from_int(value)
        self.value = value

    def _coerce(self, other):
        if isinstance(other, FFElem):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else FFElem(self.field, self.field.add(self.value, v))

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else FFElem(self.field, self.field.sub(self.value, v))

    def __rsub__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else FFElem(self.field, self.field.sub(v, self.value))

    def __mul__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else FFElem(self.field, self.field.mul(self.value, v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else FFElem(self.field, self.field.mul(self.value, self.field.inv(v)))

    def __neg__(self):
        return FFElem(self.field, self.field.neg(self.value))

    def __pow__(self, e):
        return FFElem(self.field, self.field.pow(self.value, e))

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == self.field.from_int(other)
        return isinstance(other, FFElem) and other.field == self.field and other.value == self.value

    def __hash__(self):
        return hash((self.field, self.value))

    def __bool__(self):
        return self.value != self.field.zero

    def __repr__(self):
        return f"FFElem({self.field}, {self.value})"


# ---------------------------------------------------------------------------
# quadratic quotient ring F_q[x]/(u), deg u = 2, for Mumford v-coordinates


class QuadExt:
    """F_q[x]/(u) for a monic degree-2 u over a field kernel K.

    Elements are pairs (a0, a1) of K-values meaning a0 + a1*x.  When u is
    irreducible this is the field with |K|^2 elements and supports square
    roots; for split u use CRT at the call site instead.
    """

    def __init__(self, K, u):
        assert len(u) == 3 and u[2] == K.one
        self.K = K
        self.u0 = u[0]
        self.u1 = u[1]
        self.order = K.order**2
        self.zero = (K.zero, K.zero)
        self.one = (K.one, K.zero)

    def add(self, a, b):
        K = self.K
        return (K.add(a[0], b[0]), K.add(a[1], b[1]))

    def mul(self, a, b):
        K = self.K
        c0 = K.mul(a[0], b[0])
        c1 = K.add(K.mul(a[0], b[1]), K.mul(a[1], b[0]))
        c2 = K.mul(a[1], b[1])
        # x^2 = -u1*x - u0
        return (K.sub(c0, K.mul(c2, self.u0)), K.sub(c1, K.mul(c2, self.u1)))

    def pow(self, a, e):
        r = self.one
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def is_square(self, a):
        return a == self.zero or self.pow(a, (self.order - 1) // 2) == self.one

    def element(self, index):
        K = self.K
        return (K.element(index % K.order), K.element(index // K.order))

    def sqrt(self, a):
        return field_sqrt(self, a)
