import pytest
from hypothesis import given
from hypothesis import strategies as st

from localshtuka import (ZERO_TO_PRECISION, DualNumbers, FieldSpec, NilpotentRing,
                         NotInvertibleError, PrecisionError, Series, finite_field)
from localshtuka.series import _kronecker_mul

RINGS = [finite_field(2), finite_field(3), finite_field(2, 2), finite_field(5),
         NilpotentRing(FieldSpec(3, 1), 4), DualNumbers(FieldSpec(2, 1))]


def series(ring, min_val=-3, max_val=3, max_len=8, prec_min=10, prec_max=20):
    coeff = st.integers(0, ring.field.order - 1)
    if ring.kind != "finite-field":
        coeff = st.tuples(*[st.integers(0, ring.field.order - 1)] * ring.nilpotency)
    return st.builds(
        lambda v, p, cs: Series(ring, v, p, cs),
        st.integers(min_val, max_val), st.integers(prec_min, prec_max),
        st.lists(coeff, max_size=max_len))


def unit_series(ring):
    one = ring.one
    return series(ring, 0, 0).map(lambda s: Series(ring, 0, s.prec, [one] + list(s.coeffs[1:])))


@pytest.mark.parametrize("R", RINGS, ids=repr)
def test_ring_axioms_to_precision(R):
    @given(series(R), series(R), series(R))
    def check(x, y, w):
        assert (x * y).agrees(y * x)
        assert ((x * y) * w).agrees(x * (y * w))
        assert (x * (y + w)).agrees(x * y + x * w)
        assert (x - x).is_zero()
        assert (x + y).prec == min(x.prec, y.prec)

    check()


@pytest.mark.parametrize("R", RINGS, ids=repr)
def test_inverse(R):
    @given(series(R), st.integers(-4, 4))
    def check(x, k):
        u = Series(R, k, x.prec + k, [R.one] + list(x.coeffs))
        inv = u.inverse()
        one = u * inv
        assert one.agrees(Series.constant(R, R.one, one.prec))
        assert one.prec == u.prec - k

    check()


@pytest.mark.parametrize("R", RINGS[:4], ids=repr)
def test_frobenius_is_ring_map(R):
    @given(series(R), series(R))
    def check(x, y):
        assert (x * y).frobenius().agrees(x.frobenius() * y.frobenius())
        assert (x + y).frobenius().agrees(x.frobenius() + y.frobenius())

    check()


@given(st.sampled_from([2, 3, 5, 7, 251]),
       st.lists(st.integers(0, 250), min_size=1, max_size=200),
       st.lists(st.integers(0, 250), min_size=1, max_size=200))
def test_kronecker_matches_schoolbook(p, a, b):
    a = [x % p for x in a]
    b = [x % p for x in b]
    ref = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            ref[i + j] = (ref[i + j] + x * y) % p
    assert _kronecker_mul(a, b, p) == ref


def test_precision_propagation():
    R = finite_field(3)
    x = Series.from_dict(R, {-2: 1, 0: 2}, 5)
    y = Series.from_dict(R, {1: 1}, 4)
    assert (x * y).prec == min(5 + 1, 4 - 2)
    assert x.inverse().prec == 5 + 4
    assert (x + y).prec == 4


def test_zero_to_precision():
    R = finite_field(2)
    x = Series.zero(R, 6)
    assert x.valuation() is ZERO_TO_PRECISION
    with pytest.raises(NotInvertibleError):
        x.inverse()
    with pytest.raises(PrecisionError):
        x.coeff(6)


def test_geometric_series_inverse():
    R = finite_field(2)
    one_minus_z = Series.from_dict(R, {0: 1, 1: 1}, 30)
    inv = one_minus_z.inverse()
    assert inv.agrees(Series.from_dict(R, {k: 1 for k in range(30)}, 30))


def test_inverse_of_zeta_minus_z_is_a_finite_sum():
    # zeta = xi^2 is nilpotent, so 1/(zeta - z) = -sum_{k<4} zeta^k z^(-k-1)
    R = NilpotentRing(FieldSpec(5, 1), 8)
    xi = R.gen()
    zeta = R.mul(xi, xi)
    s = Series.from_dict(R, {0: zeta, 1: R.neg(R.one)}, 24)
    expected, power = {}, R.one
    for k in range(4):
        expected[-k - 1] = R.neg(power)
        power = R.mul(power, zeta)
    inv = s.inverse()
    assert inv.agrees(Series.from_dict(R, expected, inv.prec))
    assert (s * inv).agrees(Series.constant(R, R.one, 10))


def test_nilpotent_leading_coefficient():
    R = DualNumbers(FieldSpec(3, 1))
    eps = R.gen()
    s = Series.from_dict(R, {-1: eps, 2: R.one}, 12)
    assert s.residue_valuation() == 2
    assert (s * s.inverse()).agrees(Series.constant(R, R.one, 6))


def test_json_round_trip():
    for R in RINGS:
        s = Series.from_dict(R, {-1: R.one, 3: R.from_int(2)}, 7)
        assert Series.from_json(R, s.to_json()) == s


def test_repr_lists_terms():
    R = finite_field(3)
    assert repr(Series.from_dict(R, {0: 2, 2: 1}, 4)) == "2 + z^2 + O(z^4)"


def test_power_and_shift():
    R = finite_field(3)
    x = Series.from_dict(R, {0: 1, 1: 1}, 20)
    cube = x ** 3
    assert cube.agrees(Series.from_dict(R, {0: 1, 3: 1}, 20))
    assert x.shift(2).val == 2 and x.shift(2).prec == 22
    assert (x ** -1 * x).agrees(Series.constant(R, 1, 20))
