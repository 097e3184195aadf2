from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import centralizer_order
from weilform.errors import InputError, RepresentationError
from weilform.exact.cyclotomic import Cyclotomic
from weilform.groups import (
    BUNDLED,
    FiniteGroup,
    FiniteGroupRep,
    bundled_irreps,
    compose,
    cyclic_group,
    invert,
    perm_sign,
    symmetric_group,
)
from weilform.indicator import (
    bg_l2_series,
    chebotarev_identity,
    class_union,
    classify_rep,
    fs_indicator,
    invariant_bilinear_space,
    symmetric_square_multiplicities,
)


def rep_named(group, name):
    G, reps = bundled_irreps(group)
    return next(r for r in reps if r.name == name)


# -- groups -----------------------------------------------------------------


@pytest.mark.parametrize("name,order,nclasses", [("S3", 6, 3), ("D4", 8, 5), ("Q8", 8, 5), ("A4", 12, 4), ("S4", 24, 5), ("Z5", 5, 5)])
def test_bundled_group_shapes(name, order, nclasses):
    G, reps = bundled_irreps(name)
    assert G.order == order and len(G.classes) == nclasses == len(reps)
    assert sum(r.dim**2 for r in reps) == order
    for a, b in combinations(reps, 2):
        assert a.inner_product(b) == 0


def test_class_equation_and_centralizers():
    for name in BUNDLED:
        G, _ = bundled_irreps(name)
        assert sum(len(c) for c in G.classes) == G.order
        for cls, z in zip(G.classes, G.centralizer_orders):
            assert z * len(cls) == G.order
            assert z == centralizer_order(G.elements, cls[0], compose)


def test_perm_helpers():
    g = (1, 2, 0)
    assert compose(g, invert(g)) == (0, 1, 2)
    assert perm_sign(g) == 1 and perm_sign((1, 0, 2)) == -1


def test_group_json_is_one_based():
    G = symmetric_group(3)
    obj = G.to_json()
    assert all(sorted(g) == [1, 2, 3] for g in obj["generators"])
    assert FiniteGroup.from_json(obj).order == 6
    with pytest.raises(InputError):
        FiniteGroup.from_json({"degree": 3, "generators": [[0, 1, 2]]})


def test_rep_must_be_homomorphism():
    G = cyclic_group(3)
    with pytest.raises(RepresentationError):
        FiniteGroupRep(G, [[[-1]]])
    rep = FiniteGroupRep(G, [[[Cyclotomic.zeta(3)]]], 3)
    again = FiniteGroupRep.from_json(G, rep.to_json())
    assert again.character == rep.character


# -- indicators --------------------------------------------------------------


def test_indicator_examples():
    G, reps = bundled_irreps("S3")
    assert fs_indicator(reps[0]) == 1
    assert fs_indicator(rep_named("S3", "standard")) == 1
    assert fs_indicator(rep_named("Q8", "two-dim")) == -1
    assert fs_indicator(bundled_irreps("Z3")[1][1]) == 0


def test_sym_alt_split():
    rep = rep_named("Q8", "two-dim")
    assert symmetric_square_multiplicities(rep) == (0, 1)
    assert symmetric_square_multiplicities(rep_named("S3", "standard")) == (1, 0)


def test_invariant_forms_examples():
    std = rep_named("S3", "standard")
    assert len(invariant_bilinear_space(std, 1)) == 1
    assert classify_rep(std).orthogonal
    q8 = rep_named("Q8", "two-dim")
    assert invariant_bilinear_space(q8, 1) == []
    c = classify_rep(q8)
    assert c.symplectic and not c.orthogonal and c.kind == "symplectic"
    W = c.witness
    assert all((W[i][j] + W[j][i]).is_zero() for i in range(2) for j in range(2))
    z3 = bundled_irreps("Z3")[1][1]
    assert invariant_bilinear_space(z3, 1) == [] and invariant_bilinear_space(z3, -1) == []
    assert classify_rep(z3).kind == "not self-dual"
    with pytest.raises(InputError):
        invariant_bilinear_space(std, 0)


def test_form_witness_is_invariant():
    for group in ("D4", "A4", "S4"):
        for rep in bundled_irreps(group)[1]:
            c = classify_rep(rep)
            if c.witness is None:
                continue
            B = c.witness
            for R in rep.matrices:
                n = rep.dim
                RtBR = [[sum((R[k][i] * B[k][l] * R[l][j] for k in range(n) for l in range(n)), Cyclotomic(rep.conductor)) for j in range(n)] for i in range(n)]
                assert RtBR == B


def test_classification_json():
    d = classify_rep(rep_named("S3", "standard")).to_json()
    assert d["indicator"] == "1" and d["kind"] == "orthogonal" and d["witness"]
    d = classify_rep(rep_named("Q8", "two-dim")).to_json()
    assert d["indicator"] == "-1" and d["witness"]


def test_reducible_rep_indicator():
    # trivial plus sign of S3: indicator 2, both summands orthogonal
    G = symmetric_group(3)
    rep = FiniteGroupRep(G, [[[1, 0], [0, perm_sign(g)]] for g in G.generators])
    assert not rep.is_irreducible()
    assert fs_indicator(rep) == 2
    assert classify_rep(rep).orthogonal


# -- L^2 series and class sums ------------------------------------------------


def test_l2_series_examples():
    s = bg_l2_series(rep_named("S3", "standard"), 5)
    assert s.coefficients == [1] * 5 and s.pole_order == 1
    assert s.expansion == [1] * 6
    s = bg_l2_series(rep_named("Q8", "two-dim"), 6)
    assert s.coefficients == [-1] * 6
    assert s.expansion == [1, -1, 0, 0, 0, 0, 0]
    s = bg_l2_series(bundled_irreps("Z3")[1][1], 4)
    assert s.coefficients == [0] * 4 and s.expansion == [1, 0, 0, 0, 0]
    with pytest.raises(InputError):
        bg_l2_series(rep_named("S3", "standard"), 0)


def test_chebotarev_examples():
    G, _ = bundled_irreps("S4")
    assert chebotarev_identity(G, [G.identity]) == (Fraction(1, 24), Fraction(1, 24))
    assert chebotarev_identity(G, G.elements) == (1, 1)
    transpositions = [g for g in G.elements if sum(1 for i, x in enumerate(g) if i != x) == 2]
    assert chebotarev_identity(G, transpositions) == (Fraction(1, 4), Fraction(1, 4))
    with pytest.raises(InputError):
        chebotarev_identity(G, transpositions[:1])
    with pytest.raises(InputError):
        class_union(G, [99])


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 12), st.data())
def test_cyclic_indicators(n, data):
    # a character of Z/n is self-dual exactly when it takes real values
    k = data.draw(st.integers(0, n - 1))
    G, reps = bundled_irreps(f"Z{n}")
    nu = fs_indicator(reps[k])
    assert nu == (1 if (2 * k) % n == 0 else 0)
    assert bg_l2_series(reps[k], 3).coefficients == [nu] * 3
