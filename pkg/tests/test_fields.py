from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from localshtuka.fields import (FieldSpec, default_modulus, embedding, get_field,
                                is_irreducible, is_irreducible_trial, poly_mul)

SPECS = [FieldSpec(2, 1), FieldSpec(3, 1), FieldSpec(2, 2), FieldSpec(2, 3),
         FieldSpec(3, 2), FieldSpec(5, 2), FieldSpec(2, 8)]


@pytest.mark.parametrize("p,dmax", [(2, 7), (3, 4), (5, 3)])
def test_ben_or_matches_trial_division(p, dmax):
    for d in range(1, dmax + 1):
        for low in product(range(p), repeat=d):
            f = list(low) + [1]
            assert is_irreducible(f, p) == is_irreducible_trial(f, p), f


def test_irreducible_counts_match_necklace_formula():
    # number of monic irreducibles of degree d over F_p
    def count(p, d):
        return sum(is_irreducible(list(low) + [1], p) for low in product(range(p), repeat=d))
    assert [count(2, d) for d in range(1, 7)] == [2, 1, 2, 3, 6, 9]
    assert [count(3, d) for d in range(1, 4)] == [3, 3, 8]


def test_default_modulus_is_smallest():
    for p, d in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)]:
        best = min((tuple(reversed(low)) for low in product(range(p), repeat=d)
                    if is_irreducible_trial(list(low) + [1], p)))
        assert default_modulus(p, d) == tuple(reversed(best)) + (1,)


def test_default_modulus_frozen():
    assert default_modulus(2, 2) == (1, 1, 1)
    assert default_modulus(2, 3) == (1, 1, 0, 1)
    assert default_modulus(2, 4) == (1, 1, 0, 0, 1)
    assert default_modulus(3, 2) == (1, 0, 1)


def test_reducible_modulus_rejected():
    with pytest.raises(ValueError):
        FieldSpec(2, 2, (1, 0, 1))
    with pytest.raises(ValueError):
        FieldSpec(4, 1)


def _elements(spec):
    return st.integers(min_value=0, max_value=spec.order - 1)


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: f"F{s.order}")
def test_field_axioms(spec):
    F = get_field(spec)

    @given(_elements(spec), _elements(spec), _elements(spec))
    def check(a, b, c):
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
        assert F.add(a, F.neg(a)) == 0
        assert F.sub(a, b) == F.add(a, F.neg(b))
        if a:
            assert F.mul(a, F.inv(a)) == 1
        # Frobenius is additive and multiplicative, of order d
        assert F.frob(F.add(a, b)) == F.add(F.frob(a), F.frob(b))
        assert F.frob(F.mul(a, b)) == F.mul(F.frob(a), F.frob(b))
        assert F.frob(a, spec.d) == a
        assert F.pow(a, spec.order) == a

    check()


def test_generator_is_root_of_modulus():
    for spec in SPECS:
        F = get_field(spec)
        t = F.gen()
        acc = 0
        for c in reversed(spec.modulus):
            acc = F.add(F.mul(acc, t), F.from_int(c))
        assert acc == 0


def test_multiplicative_group_is_cyclic():
    for spec in SPECS[:6]:
        F = get_field(spec)
        units = set(range(1, spec.order))
        assert any({F.pow(g, k) for k in range(spec.order - 1)} == units for g in units)


def test_square_root_of_two_lives_in_f9():
    F3, F9 = get_field(FieldSpec(3, 1)), get_field(FieldSpec(3, 2))
    assert not [x for x in range(3) if F3.mul(x, x) == 2]
    roots = [x for x in range(9) if F9.mul(x, x) == F9.from_int(2)]
    assert len(roots) == 2


@pytest.mark.parametrize("small,big", [(FieldSpec(2, 2), FieldSpec(2, 4)),
                                       (FieldSpec(2, 3), FieldSpec(2, 6)),
                                       (FieldSpec(3, 2), FieldSpec(3, 4)),
                                       (FieldSpec(2, 1), FieldSpec(2, 3))])
def test_embedding_is_injective_ring_map(small, big):
    K, L = get_field(small), get_field(big)
    e = embedding(small, big)
    images = [e(a) for a in range(small.order)]
    assert len(set(images)) == small.order
    for a in range(small.order):
        for b in range(small.order):
            assert e(K.add(a, b)) == L.add(e(a), e(b))
            assert e(K.mul(a, b)) == L.mul(e(a), e(b))


def test_no_embedding_between_incompatible_degrees():
    with pytest.raises(ValueError):
        embedding(FieldSpec(2, 2), FieldSpec(2, 3))


def test_poly_mul_small():
    # (t + 1)^2 = t^2 + 1 over F_2
    assert poly_mul([1, 1], [1, 1], 2) == [1, 0, 1]
