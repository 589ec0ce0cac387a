from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fppcheck.arith import (
    MAX_MODULUS,
    THETA,
    InadmissiblePrimeError,
    ModularEmbedding,
    NotAQuadraticResidueError,
    NumberFieldElement,
    PrimeFieldElement,
    is_prime,
    nf_inv,
    nf_mul,
    nf_reduce,
    sqrt_minus7_mod_p,
)

N = NumberFieldElement

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=64)
elements = st.builds(N, fractions, fractions)
nonzero = elements.filter(bool)
# corpus denominators are powers of two, so every odd prime reduces them
dyadic = st.builds(lambda n, k: Fraction(n, 2**k), st.integers(-500, 500), st.integers(0, 6))
dyadic_elements = st.builds(N, dyadic, dyadic)


def brute_sqrt_minus7(p):
    return [r for r in range(p) if (r * r + 7) % p == 0]


def brute_is_prime(n):
    return n >= 2 and all(n % k for k in range(2, int(n**0.5) + 1))


# --- field arithmetic ---------------------------------------------------


def test_theta_squared():
    assert nf_mul(N(0, 1), N(0, 1)) == N(-7, 0)
    assert THETA * THETA == -7


def test_mul_examples():
    assert nf_mul(N(1, 1), N(1, -1)) == N(8, 0)
    assert nf_mul(N(Fraction(-1, 4), Fraction(3, 4)), N(4)) == N(-1, 3)


def test_inverse_examples():
    assert nf_inv(N(2)) == N(Fraction(1, 2))
    assert nf_inv(N(1, 1)) == N(Fraction(1, 8), Fraction(-1, 8))
    with pytest.raises(ZeroDivisionError):
        nf_inv(N(0, 0))


def test_lowest_terms():
    x = N(Fraction(4, -8), Fraction(6, 4))
    assert x.a == Fraction(-1, 2) and x.a.denominator == 2
    assert x.b == Fraction(3, 2)


@given(elements, elements, elements)
def test_ring_axioms(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x and x * y == y * x


@given(nonzero)
def test_inverse_property(x):
    assert x * nf_inv(x) == 1


@given(elements, elements)
def test_conjugation_and_norm(x, y):
    assert (x * y).conjugate() == x.conjugate() * y.conjugate()
    assert (x + y).conjugate() == x.conjugate() + y.conjugate()
    assert (x * y).norm() == x.norm() * y.norm()
    assert x.norm() == x.a**2 + 7 * x.b**2


@given(elements)
def test_norm_zero_iff_zero(x):
    assert (x.norm() == 0) == (not x)


@given(elements)
def test_parse_print_round_trip(x):
    assert N.parse(str(x)) == x
    assert str(N.parse(str(x))) == str(x)


def test_printing_forms():
    assert str(N(3)) == "3"
    assert str(N(0, 1)) == "t"
    assert str(N(0, -3)) == "-3*t"
    assert str(N(Fraction(1, 2), Fraction(-1, 2))) == "1/2-1/2*t"
    assert N.parse("(-1+3*t)/4") == N(Fraction(-1, 4), Fraction(3, 4))


# --- primes and square roots -------------------------------------------


@pytest.mark.parametrize("n", range(400))
def test_is_prime_against_trial_division(n):
    assert is_prime(n) == brute_is_prime(n)


def test_sqrt_examples():
    assert sqrt_minus7_mod_p(263) == 16
    assert sqrt_minus7_mod_p(23) == 4
    with pytest.raises(NotAQuadraticResidueError, match="-7 is not a quadratic residue mod 13"):
        sqrt_minus7_mod_p(13)


@pytest.mark.parametrize("p", [p for p in range(3, 2000) if brute_is_prime(p) and p != 7])
def test_sqrt_matches_exhaustive_search(p):
    roots = brute_sqrt_minus7(p)
    if not roots:
        with pytest.raises(NotAQuadraticResidueError):
            sqrt_minus7_mod_p(p)
    else:
        r = sqrt_minus7_mod_p(p)
        assert r == min(roots)
        assert (r * r + 7) % p == 0 and r <= p // 2


def test_sqrt_large_prime_with_high_two_adicity():
    # 7340033 = 7 * 2^20 + 1 exercises the Tonelli-Shanks loop
    p = 7340033
    assert is_prime(p)
    r = sqrt_minus7_mod_p(p)
    assert (r * r + 7) % p == 0


@pytest.mark.parametrize("p", [1, 2, 4, 9, 7, 263 * 3])
def test_inadmissible(p):
    with pytest.raises(InadmissiblePrimeError):
        ModularEmbedding.for_prime(p)


def test_embedding_validation():
    with pytest.raises(NotAQuadraticResidueError):
        ModularEmbedding(263, 5)
    with pytest.raises(InadmissiblePrimeError):
        ModularEmbedding.for_prime(16777259)  # prime above MAX_MODULUS
    e = ModularEmbedding.for_prime(263)
    assert e == ModularEmbedding(263, 16)
    assert e.conjugate() == ModularEmbedding(263, 247)
    assert ModularEmbedding.for_prime(263, root=247).r == 247
    assert MAX_MODULUS == 2**24


# --- reduction ----------------------------------------------------------


def test_reduce_examples():
    e = ModularEmbedding(263, 16)
    assert nf_reduce(N(0, 1), e).residue == 16
    assert nf_reduce(N(Fraction(1, 4)), e).residue == 66
    assert 4 * 66 % 263 == 1


def test_reduce_bad_denominator():
    e = ModularEmbedding(23, 4)
    with pytest.raises(InadmissiblePrimeError):
        nf_reduce(N(Fraction(1, 23)), e)


@settings(max_examples=200)
@given(dyadic_elements, dyadic_elements, st.sampled_from([(263, 16), (263, 247), (23, 4), (29, 15)]))
def test_reduce_is_ring_homomorphism(x, y, pr):
    e = ModularEmbedding(*pr)
    assert nf_reduce(x * y, e) == nf_reduce(x, e) * nf_reduce(y, e)
    assert nf_reduce(x + y, e) == nf_reduce(x, e) + nf_reduce(y, e)


@given(st.integers(-1000, 1000), st.integers(1, 262))
def test_prime_field_inverse(a, b):
    x = PrimeFieldElement(b, 263)
    assert (x * x.inverse()).residue == 1
    assert PrimeFieldElement(a, 263).residue == a % 263
