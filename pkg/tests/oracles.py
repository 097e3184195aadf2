"""Independent reference computations and random generators used by the tests.

Everything here goes through sympy or plain enumeration, never through the
package's own linear algebra, so agreement is a genuine cross-check.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from math import isqrt

import sympy

from weilform.exact.poly import Poly
from weilform.frobenius import FrobeniusModule, companion, jordan_block
from weilform.kring import VirtualWeilClass
from weilform.exact import linalg

T = sympy.Symbol("T")


def to_sympy(M):
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) if isinstance(x, Fraction) else x for x in row] for row in M])


def _to_fraction(c) -> Fraction:
    c = sympy.Rational(c)
    return Fraction(int(c.p), int(c.q))


def sym_det(M) -> Fraction:
    if not M:
        return Fraction(1)
    return _to_fraction(to_sympy(M).det())


def reverse_charpoly(M) -> Poly:
    """det(1 - T M) by the Faddeev-LeVerrier recursion, ascending coefficients."""
    n = len(M)
    A = [[Fraction(x) for x in row] for row in M]
    c = [Fraction(1)]
    Mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{k-1} I ; c_k = -tr(A M_k) / k
        prev = [[sum((A[i][l] * Mk[l][j] for l in range(n)), Fraction(0)) for j in range(n)] for i in range(n)]
        Mk = [[prev[i][j] + (c[-1] if i == j else 0) for j in range(n)] for i in range(n)]
        AM = sum((A[i][l] * Mk[l][i] for i in range(n) for l in range(n)), Fraction(0))
        c.append(-AM / k)
    return Poly(c)


def exterior_power(M, m: int):
    """Matrix of the m-th exterior power on the basis of increasing index tuples."""
    n = len(M)
    idx = list(combinations(range(n), m))
    S = to_sympy(M)
    out = []
    for rows in idx:
        out.append([_to_fraction(S.extract(list(rows), list(cols)).det()) for cols in idx])
    return out


def nilpotent_jordan_type(N) -> dict:
    """Block counts from the rank sequence r_k = rank N^k."""
    S = to_sympy(N)
    n = S.shape[0]
    ranks = [n]
    P = sympy.eye(n)
    while ranks[-1] > 0:
        P = P * S
        ranks.append(P.rank())
    ranks += [0, 0]
    out = {}
    for k in range(1, len(ranks) - 1):
        c = ranks[k - 1] - 2 * ranks[k] + ranks[k + 1]
        if c:
            out[k] = c
    return out


def pairing_conditions(N, A, sign) -> bool:
    SN, SA = to_sympy(N), to_sympy(A)
    return SA.T == sign * SA and SA * SN == -SN.T * SA and SA.det() != 0


def sympy_subspace_equal(U, V) -> bool:
    """Row spaces of U and V coincide."""
    if not U or not V:
        return not U and not V
    a, b = to_sympy(U), to_sympy(V)
    r = a.rank()
    return r == b.rank() and a.col_join(b).rank() == r


# -- enumeration ------------------------------------------------------------


def block_multisets(max_dim: int):
    """All {n: m_n} with 1 <= sum n m_n <= max_dim."""
    for total in range(1, max_dim + 1):
        for p in sympy.utilities.iterables.partitions(total):
            yield dict(p)


def parity_allows(mults, sign) -> bool:
    # sign +1 needs even multiplicity for even block sizes, sign -1 for odd ones
    return all(m % 2 == 0 for n, m in mults.items() if (n % 2 == 0) == (sign == 1))


# -- random objects -----------------------------------------------------------


def random_unimodular(n: int, rng: random.Random):
    L = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    U = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            if i > j:
                L[i][j] = Fraction(rng.choice((-1, 0, 0, 1)))
            elif i < j:
                U[i][j] = Fraction(rng.choice((-1, 0, 0, 1)))
    return linalg.matmul(L, U)


def conjugate(M, P):
    return linalg.matmul(linalg.matmul(P, M), linalg.inverse(P))


def _square_root(x: int):
    r = isqrt(x)
    return r if r * r == x else None


def weil_pieces(q: int, w: int):
    """Monic irreducible rational polynomials (x-convention) whose roots are q-Weil of weight w."""
    qw = q**w
    out = []
    s = _square_root(qw)
    if s is not None:
        out += [("special+", Poly([-s, 1])), ("special-", Poly([s, 1]))]
    else:
        out.append(("special+-", Poly([-qw, 0, 1])))
    bound = 2 * isqrt(qw) + 1
    for a in range(-bound, bound + 1):
        if a * a < 4 * qw:
            out.append(("pair", Poly([qw, -a, 1])))
    return out


def random_pure_module(rng: random.Random, max_dim: int = 10):
    """A dense rational module pure of a random weight built from random Jordan blocks."""
    q = rng.choice((2, 3, 4, 5, 9))
    w = rng.choice((0, 1, 2, 3))
    pieces = weil_pieces(q, w)
    specials = [p for p in pieces if p[0].startswith("special")]
    blocks = []
    dim = 0
    target = rng.randint(1, max_dim)
    while dim < target:
        kind, f = rng.choice(specials) if rng.random() < 0.6 else rng.choice(pieces)
        e = rng.choice((1, 1, 2, 2, 3))
        if dim + e * f.degree > max_dim:
            if dim:
                break
            continue
        if f.degree == 1:
            blocks.append(jordan_block(-f[0], e))
        else:
            blocks.append(companion(f**e))
        dim += e * f.degree
    F = linalg.block_diag(*blocks)
    F = conjugate(F, random_unimodular(len(F), rng))
    return FrobeniusModule(F, q, check=False), w


def random_self_dual_piece(rng: random.Random, q: int, w: int, alternating: bool):
    """(num factor list) generating a weight-w class that is self-dual with the requested symmetry."""
    pieces = weil_pieces(q, w)
    kind, f = rng.choice(pieces)
    mult = rng.choice((1, 2))
    if alternating and kind.startswith("special"):
        mult = 2
    return _x_to_t(f) ** mult


def _x_to_t(f: Poly) -> Poly:
    """Monic x-polynomial with roots r -> det-form polynomial prod (1 - r T)."""
    return f.reverse() if f.degree else Poly([1])


def random_member(rng: random.Random, q: int, sigma: int, budget: int = 4):
    """A virtual class in the subgroup for sign sigma built from signed generators."""
    comps = {}
    size = 0
    while size < budget:
        w = rng.choice((0, 1, 2))
        alternating = (-1) ** w * sigma == -1
        f = random_self_dual_piece(rng, q, w, alternating)
        if size + f.degree > budget:
            break
        num, den = comps.get(w, (Poly([1]), Poly([1])))
        comps[w] = (num * f, den) if rng.random() < 0.7 else (num, den * f)
        size += f.degree
    return VirtualWeilClass(q, comps, check=False)


def random_class(rng: random.Random, q: int, budget: int = 6, honest: bool = False):
    comps = {}
    size = 0
    while True:
        w = rng.choice((0, 1, 2))
        kind, f = rng.choice(weil_pieces(q, w))
        f = _x_to_t(f)
        if size + f.degree > budget:
            break
        num, den = comps.get(w, (Poly([1]), Poly([1])))
        comps[w] = (num * f, den) if honest or rng.random() < 0.65 else (num, den * f)
        size += f.degree
        if rng.random() < 0.3:
            break
    return VirtualWeilClass(q, comps, check=False)


def honest_matrix(x: VirtualWeilClass):
    """Block-diagonal Frobenius realising an honest class (all denominators 1)."""
    blocks = []
    for w, (num, den) in x.components.items():
        assert den.degree == 0
        blocks.append(companion(num.reverse()))
    return linalg.block_diag(*blocks) if blocks else []


def kron(A, B):
    if not A or not B:
        return []
    return [[a * b for a in ra for b in rb] for ra in A for rb in B]


def graded_exterior_oracle(blocks_by_weight, m: int):
    """det(1 - T .) of the weight-graded pieces of the m-th exterior power of a direct sum."""
    weights = sorted(blocks_by_weight)
    out = {}

    def rec(i, left, wsum, mat):
        if i == len(weights):
            if left == 0:
                p = reverse_charpoly(mat)
                out[wsum] = out.get(wsum, Poly([1])) * p
            return
        w = weights[i]
        M = blocks_by_weight[w]
        for j in range(0, min(left, len(M)) + 1):
            piece = exterior_power(M, j) if j else [[Fraction(1)]]
            rec(i + 1, left - j, wsum + j * w, kron(mat, piece))

    rec(0, m, 0, [[Fraction(1)]])
    return {w: p for w, p in out.items() if p.degree > 0}


def centralizer_order(elements, g, compose):
    return sum(1 for h in elements if compose(g, h) == compose(h, g))
