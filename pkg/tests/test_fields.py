import pytest

from circlift.errors import ZeroInverse
from circlift.fields import (FpElement, OddPrime, abs_p, inverse, is_prime,
                             lift_coeff, primes_in_range, range_bound,
                             reduce_coeff)


def fp(v, p):
    return FpElement(v, OddPrime(p))


class TestOddPrime:
    def test_accepts_odd_primes(self):
        for p in (3, 5, 7, 47, 101):
            assert OddPrime(p).p == p

    @pytest.mark.parametrize("bad", [1, 2, 4, 9, 15, 91])
    def test_rejects_non_odd_primes(self, bad):
        with pytest.raises(ValueError):
            OddPrime(bad)


class TestAbs:
    def test_examples(self):
        assert abs_p(fp(3, 7)) == 3
        assert abs_p(fp(4, 7)) == 3
        assert abs_p(fp(0, 13)) == 0

    def test_never_exceeds_half(self):
        for p in primes_in_range(3, 101):
            assert all(abs_p(fp(x, p)) <= (p - 1) // 2 for x in range(p))


class TestInverse:
    def test_examples(self):
        assert inverse(fp(2, 7)).value == 4
        assert inverse(fp(1, 13)).value == 1
        assert inverse(fp(6, 7)).value == 6

    def test_zero_raises(self):
        with pytest.raises(ZeroInverse):
            inverse(fp(0, 7))

    def test_involution_exhaustive(self):
        for p in primes_in_range(3, 101):
            for x in range(1, p):
                e = fp(x, p)
                assert inverse(inverse(e)) == e
                assert (x * inverse(e).value) % p == 1


class TestLiftReduce:
    def test_lift_examples(self):
        assert lift_coeff(fp(4, 7)) == -3
        assert lift_coeff(fp(3, 7)) == 3

    def test_boundary_tie_is_positive(self):
        for p in (3, 7, 13, 47):
            half = (p - 1) // 2
            assert lift_coeff(fp(half, p)) == half

    def test_reduce_examples(self):
        assert reduce_coeff(-3, OddPrime(7)).value == 4
        assert reduce_coeff(8, OddPrime(7)).value == 1
        assert reduce_coeff(0, OddPrime(13)).value == 0

    def test_round_trip(self):
        for p in primes_in_range(3, 101):
            half = (p - 1) // 2
            for z in range(-half, half + 1):
                assert lift_coeff(reduce_coeff(z, OddPrime(p))) == z

    def test_norm_preservation_exhaustive(self):
        # |lift(x)| equals the field absolute value, for every x and p <= 101
        for p in primes_in_range(3, 101):
            for x in range(p):
                e = fp(x, p)
                assert abs(lift_coeff(e)) == abs_p(e)


class TestRangeBound:
    def test_examples(self):
        assert range_bound(OddPrime(7), 3) == 2
        assert range_bound(OddPrime(47), 3) == 15
        assert range_bound(OddPrime(7), 7) == 0

    def test_k_must_be_positive(self):
        with pytest.raises(ValueError):
            range_bound(OddPrime(7), 0)


def test_is_prime_small_values():
    primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29}
    assert {n for n in range(30) if is_prime(n)} == primes


def test_fp_element_arithmetic():
    assert (fp(3, 7) * fp(5, 7)).value == 1
    assert (fp(6, 7) + fp(3, 7)).value == 2
    assert (-fp(2, 7)).value == 5
    with pytest.raises(ValueError):
        FpElement(7, OddPrime(7))
