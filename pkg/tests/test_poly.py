from fractions import Fraction

from hypothesis import given, strategies as st

from frobint import poly

coeffs = st.lists(st.integers(min_value=-50, max_value=50), min_size=1, max_size=6)


@given(coeffs, coeffs)
def test_ring_axioms(f, g):
    assert poly.trim(poly.add(f, g)) == poly.trim(poly.add(g, f))
    assert poly.trim(poly.mul(f, g)) == poly.trim(poly.mul(g, f))
    assert poly.trim(poly.sub(f, f)) == []  # zero polynomial is []


@given(coeffs, coeffs, st.integers(min_value=-5, max_value=5))
def test_evaluate_is_homomorphism(f, g, x):
    assert poly.evaluate(poly.mul(f, g), x) == poly.evaluate(f, x) * poly.evaluate(g, x)
    assert poly.evaluate(poly.add(f, g), x) == poly.evaluate(f, x) + poly.evaluate(g, x)


@given(coeffs, coeffs)
def test_divmod_exact(f, g):
    if not poly.trim(list(g)):
        return
    q, r = poly.divmod_exact(f, g)
    recon = poly.add(poly.mul(q, g), r)
    assert [Fraction(c) for c in poly.trim(recon)] == [Fraction(c) for c in poly.trim(f)]
    assert poly.deg(r) < poly.deg(g) or poly.trim(r) == [0]


def test_gcd_and_squarefree():
    # (x-1)^2 (x+2)
    f = poly.mul(poly.mul([-1, 1], [-1, 1]), [2, 1])
    assert not poly.is_squarefree_q(f)
    assert poly.is_squarefree_q([2, 1, 1])  # x^2+x+2, disc < 0
    g = poly.gcd_q(f, poly.derivative(f))
    assert poly.deg(g) == 1


def test_resultant():
    # res(x^2-1, x^2-4) = product of (a-b) over roots = (1-2)(1+2)(-1-2)(-1+2) = 9
    assert poly.resultant([-1, 0, 1], [-4, 0, 1]) == 9


@given(st.lists(st.integers(min_value=-9, max_value=9), min_size=4, max_size=4))
def test_charpoly_of_companion(low):
    f = low + [1]  # monic quartic
    C = poly.companion(f)
    assert poly.charpoly(C) == f


def test_mat_pow_det():
    A = [[1, 2], [3, 4]]
    assert poly.mat_det(A) == -2
    A3 = poly.mat_mul(poly.mat_mul(A, A), A)
    assert poly.mat_pow(A, 3) == A3
    assert poly.mat_pow(A, 0) == [[1, 0], [0, 1]]


def test_irreducible_quartic():
    assert poly.is_irreducible_quartic([1, 1, 1, 1, 1])  # cyclotomic Phi_5
    assert not poly.is_irreducible_quartic([1, 0, 2, 0, 1])  # (x^2+1)^2
    assert not poly.is_irreducible_quartic([-1, 0, 0, 0, 1])  # x^4-1
