import cmath
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import to_sympy, sym_det
from weilform.errors import InputError
from weilform.exact import linalg
from weilform.exact.cyclotomic import Cyclotomic, cyclotomic_poly, euler_phi
from weilform.exact.poly import Poly, factor_multiplicity, poly_gcd, poly_squarefree_layers, squarefree_part
from weilform.exact.roots import is_weil_poly, isolate_roots, weight_split
from weilform.errors import NonIntegralWeight

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)
int_coeff = st.integers(min_value=-6, max_value=6)


def X(*roots):
    return Poly.from_roots(roots)


# -- squarefree layers ------------------------------------------------------


def test_layers_single_repeated_root():
    assert poly_squarefree_layers(X(1, 1)) == {2: X(1)}


def test_layers_distinct_multiplicities():
    assert poly_squarefree_layers(X(1, 2, 2)) == {1: X(1), 2: X(2)}


def test_layers_expanded_cube():
    assert poly_squarefree_layers(Poly([-1, 3, -3, 1])) == {3: X(1)}


def test_layers_zero_is_rejected():
    with pytest.raises(InputError):
        poly_squarefree_layers(Poly([]))


@settings(max_examples=60, deadline=None)
@given(st.lists(int_coeff, min_size=1, max_size=5), st.lists(st.integers(1, 3), min_size=1, max_size=5))
def test_layers_reassemble(roots, mults):
    p = Poly([1])
    for r, m in zip(roots, mults):
        p = p * X(r) ** m
    layers = poly_squarefree_layers(p)
    back = Poly([1])
    for e, w in layers.items():
        assert squarefree_part(w) == w.monic()
        back = back * w**e
    assert back.monic() == p.monic()
    keys = list(layers)
    for i in range(len(keys)):
        for j in range(i + 1, len(keys)):
            assert poly_gcd(layers[keys[i]], layers[keys[j]]).degree == 0


# -- factor multiplicity ----------------------------------------------------


def test_factor_multiplicity_examples():
    d = Poly([1, 0, -5])
    assert factor_multiplicity(d * d, d) == 2
    assert factor_multiplicity(Poly([1, -1]), Poly([1, 1])) == 0
    assert factor_multiplicity(Poly([1, -2]) ** 3 * Poly([1, -3]), Poly([1, -2])) == 3


def test_factor_multiplicity_constant_divisor():
    with pytest.raises(InputError):
        factor_multiplicity(Poly([1, 1]), Poly([3]))


# -- roots ------------------------------------------------------------------


def _contains(box, z):
    c = complex(float(box.center[0]), float(box.center[1]))
    return abs(z - c) <= float(box.radius) + 1e-12


def test_isolate_linear():
    (box,) = isolate_roots(Poly([1, -1]))
    assert box.multiplicity == 1 and _contains(box, 1)


def test_isolate_symmetric_pair():
    boxes = isolate_roots(Poly([1, 0, -5]))
    assert len(boxes) == 2
    for r in (5**-0.5, -(5**-0.5)):
        assert sum(_contains(b, r) for b in boxes) == 1


def test_isolate_elliptic_pair_modulus():
    boxes = isolate_roots(Poly([1, -1, 5]))
    assert len(boxes) == 2
    for b in boxes:
        lo, hi = b.modulus_bounds()
        assert lo**2 <= Fraction(1, 5) <= hi**2
    approx = [complex(float(b.center[0]), float(b.center[1])) for b in boxes]
    assert abs(approx[0] - approx[1].conjugate()) < 1e-9


@settings(max_examples=40, deadline=None)
@given(st.lists(int_coeff, min_size=1, max_size=6).filter(lambda r: any(r)))
def test_isolate_counts_match_numeric_roots(roots):
    p = X(*roots)
    boxes = isolate_roots(p)
    assert sum(b.multiplicity for b in boxes) == p.degree
    for r in roots:
        assert any(_contains(b, r) for b in boxes)


def test_weil_examples():
    assert is_weil_poly(Poly([1, -5]), 5, 2).pure
    assert is_weil_poly(Poly([1, -2, 5]), 5, 1).pure
    cert = is_weil_poly(Poly([1, -5]) * Poly([1, -1]), 5, 1)
    assert not cert.pure
    # the offending inverse root at 1 is reported
    assert any(_contains(b, 1) for b in cert.witness)


def test_weil_integrality_flag():
    # 1 - T/2 has |lambda|^2 = 1/4 = 2^-2 but lambda is not an integer
    assert not is_weil_poly(Poly([1, Fraction(-1, 2)]), 2, -2, integral=True).pure
    assert is_weil_poly(Poly([1, Fraction(-1, 2)]), 2, -2, integral=False).pure


def test_weight_split_examples():
    assert weight_split(Poly([1, -1]) * Poly([1, -5]), 5) == {0: Poly([1, -1]), 2: Poly([1, -5])}
    assert weight_split(Poly([1, -2, 5]), 5) == {1: Poly([1, -2, 5])}
    with pytest.raises(NonIntegralWeight):
        weight_split(Poly([1, -2]), 5)


# -- linear algebra --------------------------------------------------------

matrices = st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n))


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_det_and_rank_match_sympy(M):
    assert linalg.det(M) == sym_det(M)
    assert linalg.rank(M) == to_sympy(M).rank()


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_nullspace_is_kernel(M):
    ker = linalg.nullspace(M)
    assert len(ker) == len(M[0]) - to_sympy(M).rank()
    for v in ker:
        assert all(x == 0 for x in linalg.matvec(M, v))


@settings(max_examples=40, deadline=None)
@given(matrices)
def test_inverse_roundtrip(M):
    if sym_det(M) == 0:
        return
    n = len(M)
    assert linalg.matmul(M, linalg.inverse(M)) == linalg.identity(n)


def test_int_entries_stay_exact():
    ker = linalg.nullspace([[1, 1]])
    assert all(isinstance(x, Fraction) for v in ker for x in v)


# -- cyclotomic fields ----------------------------------------------------


def test_cyclotomic_polys():
    assert cyclotomic_poly(3) == Poly([1, 1, 1])
    assert cyclotomic_poly(4) == Poly([1, 0, 1])
    assert [euler_phi(n) for n in (1, 2, 6, 8, 12)] == [1, 1, 2, 4, 4]


def test_root_of_unity_relations():
    z = Cyclotomic.zeta(3)
    assert z * z * z == Cyclotomic.rational(3, 1)
    assert (1 + z + z * z).is_zero()
    assert (z * z).conj() == z
    i = Cyclotomic.zeta(4)
    assert i * i == Cyclotomic.rational(4, -1)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([3, 4, 5, 8, 12]), st.lists(small, min_size=1, max_size=6), st.lists(small, min_size=1, max_size=6))
def test_cyclotomic_field_axioms(n, a, b):
    x, y = Cyclotomic(n, a), Cyclotomic(n, b)
    assert x * y == y * x
    assert (x + y) - y == x
    if not y.is_zero():
        assert (x / y) * y == x
    # numerical embedding is a ring map
    assert cmath.isclose((x * y).to_complex(), x.to_complex() * y.to_complex(), abs_tol=1e-9)


def test_cyclotomic_galois_and_rationality():
    z = Cyclotomic.zeta(5)
    total = sum((z.galois(j) for j in range(1, 5)), Cyclotomic(5))
    assert total.is_rational() and total.to_rational() == -1
    assert sympy.nsimplify(abs(z.to_complex())) == 1
