import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from localshtuka import (BoundSpec, Coweight, FieldSpec, LoopElement, NilpotentRing,
                         PrecisionError, Series, bounded_by, exterior_power, finite_field,
                         relative_position, smith_form)
from localshtuka.sampling import random_integral_invertible, random_loop_element
from localshtuka.semilinear import relative_position_from_minors

F2, F3, F4 = finite_field(2), finite_field(3), finite_field(2, 2)


def loop_elements(max_rank=3):
    return st.builds(
        lambda seed, q, r: random_loop_element(finite_field(q), r, 14, random.Random(seed),
                                               -3, 3, 0.2, None),
        st.integers(0, 10 ** 9), st.sampled_from([2, 3]), st.integers(1, max_rank))


coweights = st.lists(st.integers(-4, 4), min_size=3, max_size=3).map(Coweight.sorted)


@given(coweights, coweights, coweights)
def test_dominance_is_a_partial_order(a, b, c):
    assert a.dominated_by(a)
    if a.dominated_by(b) and b.dominated_by(a):
        assert a == b
    if a.dominated_by(b) and b.dominated_by(c):
        assert a.dominated_by(c)


def test_coweight_validation_and_helpers():
    with pytest.raises(ValueError):
        Coweight((0, 1))
    assert Coweight.metric_bound(3, 2).parts == (4, 0, -4)
    assert Coweight((3, 1, -2)).negate_reverse().parts == (2, -1, -3)
    assert Coweight((2, 0)).dominated_by(Coweight((2, 0)))
    assert Coweight((1, 1)).dominated_by(Coweight((2, 0)))
    assert not Coweight((2, 0)).dominated_by(Coweight((1, 1)))
    assert not Coweight((1, 0)).dominated_by(Coweight((1, 1)))


@given(loop_elements())
def test_smith_reconstructs(g):
    U, mu, V = smith_form(g)
    assert U.is_integrally_invertible() and V.is_integrally_invertible()
    assert mu.total == g.det().val
    D = LoopElement.diagonal(g.ring, mu.parts, g.prec + 64)
    assert (U * D * V).agrees(g)


@given(loop_elements())
def test_minors_oracle_matches_smith(g):
    assert relative_position_from_minors(g) == relative_position(g)


@given(loop_elements(), st.integers(0, 10 ** 9))
def test_relative_position_is_bi_invariant(g, seed):
    rng = random.Random(seed)
    k1 = random_integral_invertible(g.ring, g.rank, g.prec + 8, rng, 4)
    k2 = random_integral_invertible(g.ring, g.rank, g.prec + 8, rng, 4)
    assert relative_position(k1 * g * k2) == relative_position(g)


@given(loop_elements(), st.lists(st.integers(-4, 4), min_size=2, max_size=2),
       st.integers(-1, 1))
def test_bounded_by_matches_dominance(g, free, shift):
    mu = relative_position(g)
    r = g.rank
    head = free[: r - 1]
    lam = Coweight.sorted(head + [mu.total + shift - sum(head)])
    assert bounded_by(g, BoundSpec(lam)) == mu.dominated_by(lam)
    assert bounded_by(g, BoundSpec(lam, "eq")) == (mu == lam)
    assert bounded_by(g, BoundSpec(mu, "eq"))


def test_metric_bound_examples():
    g = LoopElement.diagonal(F2, (2, -2), 16)
    assert not bounded_by(g, BoundSpec(Coweight.metric_bound(2, 1)))
    assert bounded_by(g, BoundSpec(Coweight.metric_bound(2, 2)))
    h = LoopElement.diagonal(F3, (1, 0, -1), 16)
    assert bounded_by(h, BoundSpec(Coweight.metric_bound(3, 1)))
    assert not bounded_by(h, BoundSpec(Coweight.metric_bound(3, 0)))


def test_zeta_bound():
    R = NilpotentRing(FieldSpec(3, 1), 3)
    zeta = R.gen()
    zt = Series.from_dict(R, {0: R.neg(zeta), 1: R.one}, 16)
    g = LoopElement([[zt, Series.zero(R, 16)], [Series.zero(R, 16), Series.constant(R, R.one, 16)]])
    assert bounded_by(g, BoundSpec(Coweight((1, 0)), zeta=zeta))
    assert not bounded_by(g, BoundSpec(Coweight((1, 0))))
    assert not bounded_by(g, BoundSpec(Coweight((0, 0)), zeta=zeta))
    with pytest.raises(TypeError):
        bounded_by(LoopElement.identity(F3, 2, 8), BoundSpec(Coweight((0, 0)), zeta=1))


def test_exterior_power_shapes():
    g = random_loop_element(F3, 3, 12, random.Random(1))
    assert len(exterior_power(g, 1)) == 3
    assert len(exterior_power(g, 2)) == 3 and len(exterior_power(g, 2)[0]) == 3
    assert exterior_power(g, 3)[0][0].agrees(g.det())
    with pytest.raises(ValueError):
        exterior_power(g, 4)


@given(loop_elements())
def test_inverse_and_frobenius(g):
    one = g * g.inverse()
    assert one.agrees(LoopElement.identity(g.ring, g.rank, one.prec))
    h = random_loop_element(g.ring, g.rank, 14, random.Random(g.rank))
    assert (g * h).frobenius().agrees(g.frobenius() * h.frobenius())


def test_frobenius_over_f4_is_nontrivial():
    t = F4.field.gen()
    g = LoopElement.from_terms(F4, [[{0: t}]], 8)
    assert g.frobenius()[0, 0].coeff(0) == F4.field.mul(t, t)
    assert g.frobenius(2).agrees(g)


def test_json_round_trip():
    g = random_loop_element(F4, 2, 10, random.Random(3))
    assert LoopElement.from_json(F4, g.to_json()) == g


def test_smith_needs_precision():
    zero = Series.zero(F2, 4)
    g = LoopElement([[Series.monomial(F2, 0, 4), zero], [zero, zero]], check=False)
    with pytest.raises(PrecisionError):
        smith_form(g)


def test_smith_frozen_example():
    # [[z, 1], [0, z]] has elementary divisors (2, 0)
    g = LoopElement.from_terms(F2, [[{1: 1}, {0: 1}], [{}, {1: 1}]], 12)
    assert relative_position(g).parts == (2, 0)
    assert relative_position(LoopElement.diagonal(F2, (1, 3), 12)).parts == (3, 1)
