"""Exact linear algebra over a field.

Matrices are lists of rows.  Entries may be any exact field elements that
support ``+ - * /`` and compare equal to ``0`` when zero: Fractions and
:class:`~weilform.exact.cyclotomic.Cyclotomic` values are both used.
Subspaces of K^n are represented by a list of basis row vectors.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import List, Sequence, Tuple

from ..errors import InputError

Matrix = List[list]


def zeros(n: int, m: int | None = None, zero=Fraction(0)) -> Matrix:
    m = n if m is None else m
    return [[zero] * m for _ in range(n)]


def identity(n: int, one=Fraction(1), zero=Fraction(0)) -> Matrix:
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def to_fraction_matrix(rows) -> Matrix:
    from .poly import as_rat

    return [[as_rat(x) for x in row] for row in rows]


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)] if a else []


def _is_rational(a: Matrix) -> bool:
    return all(isinstance(x, (Fraction, int)) for row in a for x in row)


def _scaled_int(a: Matrix) -> Tuple[List[List[int]], int]:
    d = 1
    for row in a:
        for x in row:
            if isinstance(x, Fraction):
                d = lcm(d, x.denominator)
    return [[int(x * d) for x in row] for row in a], d


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return []
    if _is_rational(a) and _is_rational(b):
        ia, da = _scaled_int(a)
        ib, db = _scaled_int(b)
        cols = list(zip(*ib))
        if not cols:
            return [[] for _ in a]
        den = da * db
        return [[Fraction(sum(x * y for x, y in zip(row, col)), den) for col in cols] for row in ia]
    bt = transpose(b)
    if not bt:
        return [[] for _ in a]
    out = []
    for row in a:
        out_row = []
        for col in bt:
            acc = 0
            for x, y in zip(row, col):
                if x != 0 and y != 0:
                    acc = acc + x * y
            out_row.append(acc if not isinstance(acc, int) else Fraction(acc))
        out.append(out_row)
    return out


def matvec(a: Matrix, v: Sequence) -> list:
    out = []
    for row in a:
        acc = 0
        for x, y in zip(row, v):
            if x != 0 and y != 0:
                acc = acc + x * y
        out.append(acc if not isinstance(acc, int) else Fraction(acc))
    return out


def matadd(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(r, s)] for r, s in zip(a, b)]


def matsub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(r, s)] for r, s in zip(a, b)]


def matscale(a: Matrix, c) -> Matrix:
    return [[c * x for x in r] for r in a]


def matpow(a: Matrix, k: int) -> Matrix:
    n = len(a)
    out = identity(n)
    base = a
    while k:
        if k & 1:
            out = matmul(out, base)
        base = matmul(base, base)
        k >>= 1
    return out


def is_zero_matrix(a: Matrix) -> bool:
    return all(x == 0 for row in a for x in row)


def block_diag(*blocks: Matrix) -> Matrix:
    n = sum(len(b) for b in blocks)
    out = zeros(n)
    k = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[k + i][k + j] = x
        k += len(b)
    return out


def rref(a: Matrix) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form and pivot columns (input untouched)."""
    m = [list(r) for r in a]
    if not m:
        return m, []
    if all(isinstance(x, (Fraction, int)) for row in m for x in row):
        rows, pivots = _rref_int(_integer_rows([[Fraction(x) for x in row] for row in m]))
        return [[Fraction(x, row[c]) for x in row] for row, c in zip(rows, pivots)], pivots
    nrows, ncols = len(m), len(m[0])
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        p = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        prow = m[r]
        for i in range(nrows):
            if i != r:
                f = m[i][c]
                if f != 0:
                    row = m[i]
                    m[i] = [x - f * y if y != 0 else x for x, y in zip(row, prow)]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(a: Matrix) -> int:
    if not a or not a[0]:
        return 0
    if all(isinstance(x, Fraction) for row in a for x in row):
        return _rank_int(a)
    return len(rref(a)[1])


def _integer_rows(a: Matrix) -> List[List[int]]:
    out = []
    for row in a:
        d = 1
        for x in row:
            d = lcm(d, x.denominator)
        out.append([int(x * d) for x in row])
    return out


def _rref_int(m: List[List[int]]) -> Tuple[List[List[int]], List[int]]:
    """Integer Gauss-Jordan; rows are kept primitive to bound coefficient growth."""
    m = [list(r) for r in m]
    nrows, ncols = len(m), len(m[0]) if m else 0
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        p = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        prow = m[r]
        piv = prow[c]
        for i in range(nrows):
            if i == r:
                continue
            f = m[i][c]
            if f:
                g = gcd(piv, f)
                a, b = piv // g, f // g
                row = [a * x - b * y for x, y in zip(m[i], prow)]
                d = 0
                for x in row:
                    if x:
                        d = gcd(d, x)
                        if d == 1:
                            break
                m[i] = [x // d for x in row] if d > 1 else row
        pivots.append(c)
        r += 1
    return m[:r], pivots


def _rank_int(a: Matrix) -> int:
    m = _integer_rows(a)
    nrows, ncols = len(m), len(m[0])
    r = 0
    prev = 1
    for c in range(ncols):
        if r >= nrows:
            break
        p = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        for i in range(r + 1, nrows):
            f = m[i][c]
            row = m[i]
            m[i] = [(piv * x - f * y) // prev for x, y in zip(row, m[r])]
        prev = piv
        r += 1
    return r


def nullspace(a: Matrix, ncols: int | None = None) -> Matrix:
    """Basis (rows) of {x : a x = 0}."""
    if not a:
        if ncols is None:
            raise InputError("column count needed for an empty system")
        one, zero = Fraction(1), Fraction(0)
        return identity(ncols, one, zero)
    ncols = len(a[0])
    red, pivots = rref(a)
    zero = _zero_like(a)
    one = _one_like(a)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def _zero_like(a: Matrix):
    x = a[0][0]
    if isinstance(x, int):
        return Fraction(0)
    return x - x


def _one_like(a: Matrix):
    for row in a:
        for x in row:
            if x != 0:
                return Fraction(1) if isinstance(x, int) else x / x
    return Fraction(1)


def det(a: Matrix):
    n = len(a)
    if n == 0:
        return Fraction(1)
    if all(isinstance(x, Fraction) for row in a for x in row):
        return _det_bareiss(a)
    m = [list(r) for r in a]
    result = _one_like(a)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return _zero_like(a)
        if p != c:
            m[c], m[p] = m[p], m[c]
            result = -result
        piv = m[c][c]
        result = result * piv
        inv = 1 / piv
        for i in range(c + 1, n):
            f = m[i][c] * inv
            if f != 0:
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return result


def _det_bareiss(a: Matrix) -> Fraction:
    n = len(a)
    den = 1
    rows = []
    for row in a:
        d = 1
        for x in row:
            d = lcm(d, x.denominator)
        den *= d
        rows.append([int(x * d) for x in row])
    return Fraction(det_int(rows), den)


def det_int(m: List[List[int]]) -> int:
    """Fraction-free (Bareiss) determinant of an integer matrix."""
    m = [list(r) for r in m]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            p = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if p is None:
                return 0
            m[k], m[p] = m[p], m[k]
            sign = -sign
        mkk = m[k][k]
        rowk = m[k]
        for i in range(k + 1, n):
            mik = m[i][k]
            rowi = m[i]
            for j in range(k + 1, n):
                rowi[j] = (mkk * rowi[j] - mik * rowk[j]) // prev
        prev = mkk
    return sign * m[n - 1][n - 1]


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    aug = [list(row) + ident for row, ident in zip(a, identity(n, _one_like(a), _zero_like(a)))]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise InputError("matrix is singular")
    return [row[n:] for row in red]


def solve(a: Matrix, b: Sequence):
    """One solution x of a x = b, or None when inconsistent."""
    n = len(a[0]) if a else 0
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    red, pivots = rref(aug)
    if pivots and pivots[-1] == n:
        return None
    zero = Fraction(0)
    x = [zero] * n
    for row, pc in zip(red, pivots):
        x[pc] = row[n]
    return x


# -- subspaces ---------------------------------------------------------


def span(vectors: Sequence[Sequence]) -> Matrix:
    """Row-reduced basis of the span of the given vectors."""
    vs = [list(v) for v in vectors]
    if not vs:
        return []
    return rref(vs)[0]


def dim(space: Matrix) -> int:
    return len(space)


def column_space(a: Matrix) -> Matrix:
    return span(transpose(a))


def kernel(a: Matrix) -> Matrix:
    """Row-reduced basis of ker a (a square or rectangular, acting on columns)."""
    return span(nullspace(a)) if a else []


def contains(space: Matrix, v: Sequence) -> bool:
    if all(x == 0 for x in v):
        return True
    if not space:
        return False
    return rank(space + [list(v)]) == len(space)


def is_subspace(small: Matrix, big: Matrix) -> bool:
    if not small:
        return True
    return rank(big + small) == len(big) if big else False


def subspace_sum(a: Matrix, b: Matrix) -> Matrix:
    return span(list(a) + list(b))


def intersect(a: Matrix, b: Matrix, n: int) -> Matrix:
    """Intersection of two subspaces of K^n."""
    if not a or not b:
        return []
    # x = sum s_i a_i = sum t_j b_j
    system = transpose([list(v) for v in a] + [[-x for x in v] for v in b])
    sols = nullspace(system)
    vecs = []
    for s in sols:
        coeffs = s[: len(a)]
        v = [Fraction(0)] * n
        for c, row in zip(coeffs, a):
            if c != 0:
                v = [x + c * y for x, y in zip(v, row)]
        vecs.append(v)
    return span(vecs)


def complement_basis(sub: Matrix, space: Matrix) -> Matrix:
    """Vectors of ``space`` completing a basis of ``sub`` to one of ``space``."""
    chosen = [list(v) for v in sub]
    r = rank(chosen) if chosen else 0
    out = []
    for v in space:
        trial = chosen + [list(v)]
        rr = rank(trial)
        if rr > r:
            chosen.append(list(v))
            out.append(list(v))
            r = rr
    return out


def preimage(a: Matrix, target: Matrix, n: int) -> Matrix:
    """{x in K^n : a x in target} for a linear map a: K^n -> K^m."""
    m = len(a)
    # a x = sum t_j target_j
    cols = transpose(a) + [[-x for x in v] for v in target]
    system = transpose(cols) if cols else []
    if not system:
        return identity(n)
    sols = nullspace(system)
    return span([s[:n] for s in sols]) if sols else []


def coordinates(basis: Matrix, v: Sequence):
    """Coordinates of v in the given basis (None if outside the span)."""
    if not basis:
        return [] if all(x == 0 for x in v) else None
    return solve(transpose(basis), list(v))
