import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import conjugate, random_pure_module, random_unimodular, reverse_charpoly
from weilform.errors import InputError, PurityError
from weilform.exact import linalg
from weilform.exact.poly import Poly
from weilform.frobenius import (
    FrobeniusModule,
    char_poly,
    companion,
    invariant_factors,
    jordan_block,
    jordan_profile,
    monic_weight_dual,
    weight_dual_poly,
    weight_split,
)


def X(*roots):
    return Poly.from_roots(roots)


def mod(F, q=5, **kw):
    return FrobeniusModule(F, q, **kw)


def test_char_poly_examples():
    assert char_poly(mod([[1, 0], [0, 1]])) == Poly([1, -1]) ** 2
    assert char_poly(mod([[5]])) == Poly([1, -5])
    assert char_poly(mod([[1, 1], [0, 1]])) == Poly([1, -2, 1])


def test_invariant_factors_examples():
    assert invariant_factors(mod([[1, 0], [0, 1]])) == [X(1), X(1)]
    assert invariant_factors(mod([[1, 1], [0, 1]])) == [X(1, 1)]
    F = linalg.block_diag(jordan_block(2, 2), [[2]])
    assert invariant_factors(mod(F)) == [X(2), X(2, 2)]


def test_jordan_layers_examples():
    assert jordan_profile(mod([[1, 1], [0, 1]])).layers == {2: X(1)}
    prof = jordan_profile(mod([[1, 0], [0, 1]]))
    assert prof.multiplicity(1, X(1)) == 2
    F = linalg.block_diag(jordan_block(2, 2), jordan_block(3, 1))
    assert jordan_profile(mod(F)).layers == {1: X(3), 2: X(2)}


def test_weight_split_module_and_poly():
    F = [[1, 0], [0, 5]]
    assert weight_split(mod(F)) == {0: Poly([1, -1]), 2: Poly([1, -5])}
    with pytest.raises(InputError):
        weight_split(Poly([1, -1]))


def test_weight_dual_examples():
    assert weight_dual_poly(Poly([1, -2, 5]), 5, 1) == Poly([1, -2, 5])
    assert weight_dual_poly(Poly([1, -2]), 2, 2) == Poly([1, -2])
    assert weight_dual_poly(Poly([1, -2]), 2, 0) == Poly([1, Fraction(-1, 2)])
    assert monic_weight_dual(X(2), 2, 2) == X(2)


def test_module_validation():
    with pytest.raises(InputError):
        mod([[1, 2]])
    with pytest.raises(InputError):
        mod([[0]])
    with pytest.raises(InputError):
        mod([[1]], q=6)
    with pytest.raises(PurityError):
        FrobeniusModule([[1, 0], [0, 5]], 5, 1)
    m = FrobeniusModule([[1, 2], [-2, 1]], 5, 1)
    assert FrobeniusModule.from_json(m.to_json()) == m


def test_direct_sum_adds_layers():
    a = mod([[1, 1], [0, 1]])
    b = mod([[5]])
    s = a.direct_sum(b)
    assert char_poly(s) == char_poly(a) * char_poly(b)
    assert jordan_profile(s).layers == {1: X(5), 2: X(1)}


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_invariants_survive_base_change(seed):
    rng = random.Random(seed)
    m, _ = random_pure_module(rng, max_dim=7)
    P = random_unimodular(m.dim, rng)
    m2 = FrobeniusModule(conjugate(m.matrix, P), m.q, check=False)
    assert char_poly(m) == char_poly(m2) == reverse_charpoly(m.matrix)
    assert invariant_factors(m) == invariant_factors(m2)
    prof = jordan_profile(m)
    assert prof.check_dimension()
    # product of invariant factors is the characteristic polynomial
    prod = Poly([1])
    for f in invariant_factors(m):
        prod = prod * f
    assert prod.reverse() * Fraction(1, prod.reverse()[0]) == char_poly(m)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(st.integers(-3, 3).filter(bool), st.integers(1, 3)), min_size=1, max_size=4))
def test_jordan_profile_matches_construction(blocks):
    F = linalg.block_diag(*[jordan_block(l, e) for l, e in blocks])
    prof = jordan_profile(mod(F, q=2))
    expected = {}
    for l, e in blocks:
        expected[(l, e)] = expected.get((l, e), 0) + 1
    for (l, e), count in expected.items():
        assert prof.multiplicity(e, X(l)) == count
    assert sum(e * p.degree for e, p in prof.layers.items()) == len(F)


def test_companion_char_poly():
    f = Poly([5, -2, 1])
    assert char_poly(mod(companion(f))) == Poly([1, -2, 5])
