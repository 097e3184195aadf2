import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import conjugate, nilpotent_jordan_type, pairing_conditions, random_unimodular, to_sympy
from weilform.errors import InputError
from weilform.nilpotent import (
    NilpotentDatum,
    induced_primitive_gram,
    jordan_counts,
    la_witness,
    monodromy_filtration,
    nilpotent_block,
    nilpotent_from_blocks,
    parse_blocks,
    primitive_parts,
)


def test_zero_operator_filtration():
    filt = monodromy_filtration([[0, 0], [0, 0]])
    assert filt.d == 0
    assert filt.M(-1) == [] and len(filt.M(0)) == 2
    assert filt.graded_dims() == {0: 2}


def test_single_two_block():
    filt = monodromy_filtration(nilpotent_block(2))
    assert filt.M(-2) == []
    assert filt.M(-1) == filt.M(0) and len(filt.M(0)) == 1
    # N e_2 = e_1, so the bottom piece is the line through e_1
    assert filt.M(-1)[0][0] != 0 and filt.M(-1)[0][1] == 0
    assert filt.graded_dims() == {-1: 1, 0: 0, 1: 1}


def test_block_plus_zero():
    filt = monodromy_filtration(nilpotent_from_blocks({2: 1, 1: 1}))
    assert filt.graded_dims() == {-1: 1, 0: 1, 1: 1}


def test_primitive_counts():
    assert {i: len(b) for i, b in primitive_parts(nilpotent_block(2)).items()} == {-1: 1, 0: 0}
    assert {i: len(b) for i, b in primitive_parts([[0] * 3] * 3).items()} == {0: 3}
    p = {i: len(b) for i, b in primitive_parts(nilpotent_from_blocks({3: 1, 1: 1})).items()}
    assert p[-2] == 1 and p[0] == 1 and p[-1] == 0


def test_witness_two_block_alternating():
    res = la_witness({2: 1}, -1)
    assert res.ok and res.A == [[0, -1], [1, 0]]
    assert pairing_conditions(res.N, res.A, -1)


def test_witness_two_block_symmetric_refused():
    res = la_witness({2: 1}, 1)
    assert not res.ok and res.refusals == [2]


def test_witness_one_block_symmetric():
    res = la_witness({1: 1}, 1)
    assert res.ok and res.N == [[0]]
    # any nonzero scalar is a valid pairing on a line; the block construction gives -1
    assert len(res.A) == 1 and res.A[0][0] in (1, -1)


def test_witness_input_errors():
    with pytest.raises(InputError):
        la_witness({2: 1}, 0)
    with pytest.raises(InputError):
        la_witness({}, 1)
    with pytest.raises(InputError):
        parse_blocks("2-1")
    assert parse_blocks("2:1, 3:2") == {2: 1, 3: 2}


def test_gram_two_block():
    g = induced_primitive_gram(NilpotentDatum([[0, 1], [0, 0]], [[0, -1], [1, 0]], -1), -1)
    assert g.symmetry == 1 and len(g.gram) == 1 and g.gram[0][0] != 0


def test_gram_trivial_operator():
    g = induced_primitive_gram(NilpotentDatum([[0, 0], [0, 0]], [[1, 0], [0, 1]], 1), 0)
    assert g.gram == [[1, 0], [0, 1]] and g.symmetry == 1


def test_gram_two_two_blocks_symmetric_pairing():
    res = la_witness({2: 2}, 1)
    g = induced_primitive_gram(NilpotentDatum(res.N, res.A, 1), -1)
    G = to_sympy(g.gram)
    assert G.shape == (2, 2) and G.T == -G and G.det() != 0


def test_datum_validation():
    with pytest.raises(InputError):
        NilpotentDatum([[1, 0], [0, 0]])
    with pytest.raises(InputError):
        NilpotentDatum(nilpotent_block(2), [[1, 0], [0, 1]], 1)
    d = NilpotentDatum(nilpotent_block(2), [[0, -1], [1, 0]], -1)
    assert NilpotentDatum.from_json(d.to_json()) == d


def test_gram_needs_pairing():
    with pytest.raises(InputError):
        induced_primitive_gram(NilpotentDatum(nilpotent_block(2)), -1)


jordan_types = st.dictionaries(st.integers(1, 5), st.integers(1, 3), min_size=1, max_size=3).filter(
    lambda m: sum(n * k for n, k in m.items()) <= 12
)


@settings(max_examples=40, deadline=None)
@given(jordan_types, st.integers(0, 10**6))
def test_filtration_invariants_under_base_change(mults, seed):
    N = conjugate(nilpotent_from_blocks(mults), random_unimodular(sum(n * k for n, k in mults.items()), random.Random(seed)))
    assert jordan_counts(N) == nilpotent_jordan_type(N) == mults
    filt = monodromy_filtration(N)
    filt.verify()
    gr = filt.graded_dims()
    assert all(gr[j] == gr[-j] for j in gr)
    p = filt.primitive_dims()
    for n, k in mults.items():
        assert p[1 - n] == k


@settings(max_examples=40, deadline=None)
@given(jordan_types, st.sampled_from([1, -1]))
def test_witness_grams(mults, sign):
    res = la_witness(mults, sign)
    if not res.ok:
        assert res.refusals
        return
    datum = NilpotentDatum(res.N, res.A, sign)
    for i, d in monodromy_filtration(datum).primitive_dims().items():
        if d:
            g = induced_primitive_gram(datum, i)
            assert g.invertible and g.symmetry == (-1) ** abs(i) * sign

