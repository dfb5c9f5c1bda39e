"""Exact integer helpers: primality, factorization, integer square roots.

Everything here works on plain Python ints (arbitrary precision).  Trial
division is deliberate: the integers factored in this project are norms of
quadratic discriminants and Jacobian group orders at desk scale (< ~10^9),
where anything fancier would be wasted effort.
"""

from math import isqrt


def is_prime(n):
    """Deterministic primality test, trial division up to sqrt(n)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def primes_up_to(bound):
    """List of primes <= bound (simple sieve)."""
    if bound < 2:
        return []
    sieve = bytearray([1]) * (bound + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(bound) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i in range(bound + 1) if sieve[i]]


def factor_integer(n):
    """Factor n >= 1 into [(prime, exponent), ...] with primes increasing.

    factor_integer(1) == [].
    """
    if n < 1:
        raise ValueError("factor_integer requires n >= 1")
    out = []
    for p in (2, 3):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    f = 5
    while f * f <= n:
        # wheel mod 6
        for p in (f, f + 2):
            if n % p == 0:
                e = 0
                while n % p == 0:
                    n //= p
                    e += 1
                out.append((p, e))
        f += 6
    if n > 1:
        out.append((n, 1))
    return out


def divisors(n):
    """Sorted list of positive divisors of n >= 1."""
    ds = [1]
    for p, e in factor_integer(n):
        ds = [d * p**i for d in ds for i in range(e + 1)]
    return sorted(ds)


def is_square(n):
    if n < 0:
        return False
    r = isqrt(n)
    return r * r == n


def sqrt_exact(n):
    """Integer square root of a perfect square, or None."""
    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None


def xgcd(a, b):
    """Extended gcd: returns (g, x, y) with a*x + b*y = g >= 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def crt(r1, m1, r2, m2):
    """x with x = r1 mod m1, x = r2 mod m2; moduli must be coprime."""
    g, s, _ = xgcd(m1, m2)
    if g != 1:
        raise ValueError("moduli not coprime")
    return (r1 + (r2 - r1) * s % m2 * m1) % (m1 * m2)
