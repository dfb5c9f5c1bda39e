import math

from hypothesis import given, strategies as st

from frobint.arith import (
    crt,
    divisors,
    factor_integer,
    is_prime,
    is_square,
    primes_up_to,
    sqrt_exact,
    xgcd,
)


def test_primes_up_to():
    assert primes_up_to(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert primes_up_to(1) == []


def test_is_prime_agrees_with_sieve():
    sieve = set(primes_up_to(500))
    for n in range(500):
        assert is_prime(n) == (n in sieve)


@given(st.integers(min_value=2, max_value=10**6))
def test_factor_integer_reconstructs(n):
    fac = factor_integer(n)
    assert math.prod(p**e for p, e in fac) == n
    assert all(is_prime(p) for p, _ in fac)
    assert [p for p, _ in fac] == sorted(p for p, _ in fac)


def test_divisors():
    assert sorted(divisors(12)) == [1, 2, 3, 4, 6, 12]
    assert divisors(1) == [1]


@given(st.integers(min_value=0, max_value=10**12))
def test_sqrt_exact_and_is_square(n):
    r = sqrt_exact(n)
    if is_square(n):
        assert r is not None and r * r == n
    else:
        assert r is None


@given(st.integers(min_value=-10**9, max_value=10**9), st.integers(min_value=-10**9, max_value=10**9))
def test_xgcd(a, b):
    g, x, y = xgcd(a, b)
    assert g == math.gcd(a, b)
    assert a * x + b * y == g


def test_crt():
    r = crt(2, 3, 3, 5)
    assert r % 3 == 2 and r % 5 == 3
