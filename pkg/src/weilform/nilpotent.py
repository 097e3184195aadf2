"""Monodromy filtrations of nilpotent operators and their symmetric pairings.

Jordan block convention: ``nilpotent_block(n)`` has ones at (i, i+1), so
N e_j = e_{j-1}.  A pairing A (A^T = sign * A) is compatible with N when
A N = -N^T A.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional

from .errors import InputError, InvariantViolation
from .exact import linalg
from .exact.poly import as_rat, rat_str

Matrix = List[list]

MAX_DIMENSION = 64


def nilpotency_index(N: Matrix) -> int:
    """Smallest k with N^k = 0 (raises if N is not nilpotent)."""
    n = len(N)
    if n == 0:
        return 0
    P = linalg.identity(n)
    for k in range(1, n + 1):
        P = linalg.matmul(P, N)
        if linalg.is_zero_matrix(P):
            return k
    raise InputError("matrix is not nilpotent")


def nilpotent_block(n: int) -> Matrix:
    out = linalg.zeros(n)
    for i in range(n - 1):
        out[i][i + 1] = Fraction(1)
    return out


def nilpotent_from_blocks(mults: Mapping[int, int]) -> Matrix:
    """Direct sum of m_n nilpotent blocks of size n, in increasing n."""
    blocks = []
    for n in sorted(mults):
        if n < 1 or mults[n] < 0:
            raise InputError("block sizes must be positive and multiplicities non-negative")
        blocks += [nilpotent_block(n)] * mults[n]
    return linalg.block_diag(*blocks) if blocks else []


def jordan_counts(N: Matrix) -> Dict[int, int]:
    """Number of Jordan blocks of each size, from ranks of powers of N."""
    n = len(N)
    ranks = [n]
    P = linalg.identity(n)
    while ranks[-1] > 0:
        P = linalg.matmul(P, N)
        ranks.append(linalg.rank(P))
        if len(ranks) > n + 2:
            raise InputError("matrix is not nilpotent")
    ranks += [0, 0]
    out = {}
    for k in range(1, len(ranks) - 1):
        m = ranks[k - 1] - 2 * ranks[k] + ranks[k + 1]
        if m:
            out[k] = m
    return out


@dataclass(frozen=True)
class NilpotentDatum:
    N: Matrix
    A: Optional[Matrix] = None
    sign: Optional[int] = None

    def __post_init__(self):
        N = linalg.to_fraction_matrix(self.N)
        n = len(N)
        if any(len(r) != n for r in N):
            raise InputError("N must be square")
        if n > MAX_DIMENSION:
            raise InputError(f"dimension {n} exceeds {MAX_DIMENSION}")
        nilpotency_index(N)
        object.__setattr__(self, "N", N)
        if self.A is None:
            if self.sign is not None:
                raise InputError("sign given without a pairing")
            return
        if self.sign not in (1, -1):
            raise InputError("pairing sign must be +1 or -1")
        A = linalg.to_fraction_matrix(self.A)
        if len(A) != n or any(len(r) != n for r in A):
            raise InputError("pairing has the wrong shape")
        if linalg.det(A) == 0:
            raise InputError("pairing is degenerate")
        if linalg.transpose(A) != linalg.matscale(A, self.sign):
            raise InputError(f"pairing is not {self.sign:+d}-symmetric")
        if linalg.matmul(A, N) != linalg.matscale(linalg.matmul(linalg.transpose(N), A), -1):
            raise InputError("pairing does not satisfy A N = -N^T A")
        object.__setattr__(self, "A", A)

    @property
    def dim(self) -> int:
        return len(self.N)

    def to_json(self) -> dict:
        enc = lambda M: [[rat_str(x) for x in r] for r in M]
        return {"N": enc(self.N), "A": enc(self.A) if self.A is not None else None, "sign": self.sign}

    @classmethod
    def from_json(cls, obj) -> "NilpotentDatum":
        if not isinstance(obj, dict) or "N" not in obj:
            raise InputError("nilpotent datum needs an 'N' matrix")
        N = [[as_rat(x) for x in r] for r in obj["N"]]
        A = obj.get("A")
        A = [[as_rat(x) for x in r] for r in A] if A is not None else None
        return cls(N, A, obj.get("sign"))


@dataclass
class MonodromyFiltration:
    """M_j for j in [-d-1, d]; each entry is a row-reduced basis."""

    steps: Dict[int, Matrix]
    d: int
    dim: int
    N: Matrix = field(repr=False, default_factory=list)

    def M(self, j: int) -> Matrix:
        if j > self.d:
            return linalg.identity(self.dim)
        if j < -self.d - 1:
            return []
        return self.steps[j]

    def graded_dims(self) -> Dict[int, int]:
        return {j: len(self.M(j)) - len(self.M(j - 1)) for j in range(-self.d, self.d + 1)}

    def primitive_dims(self) -> Dict[int, int]:
        return {i: len(b) for i, b in primitive_basis(self).items()}

    def verify(self) -> None:
        for j in range(-self.d, self.d + 1):
            if not linalg.is_subspace(self.M(j - 1), self.M(j)):
                raise InvariantViolation(f"M_{j - 1} is not inside M_{j}")
            image = [linalg.matvec(self.N, v) for v in self.M(j)]
            if not linalg.is_subspace(linalg.span(image), self.M(j - 2)):
                raise InvariantViolation(f"N M_{j} is not inside M_{j - 2}")
        gr = self.graded_dims()
        Nk = linalg.identity(self.dim)
        for k in range(0, self.d + 1):
            if k:
                Nk = linalg.matmul(Nk, self.N)
            low = self.M(-k - 1)
            img = linalg.subspace_sum([linalg.matvec(Nk, v) for v in self.M(k)], low)
            if len(img) - len(low) != gr[k] or gr[k] != gr[-k]:
                raise InvariantViolation(f"N^{k} is not an isomorphism gr_{k} -> gr_{-k}")
        p = self.primitive_dims()
        for j, g in gr.items():
            expect = sum(p.get(-k, 0) for k in range(abs(j), self.d + 1) if (k - j) % 2 == 0)
            if g != expect:
                raise InvariantViolation(f"graded dimension {g} at {j} disagrees with primitive sum {expect}")

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "graded": {str(j): g for j, g in self.graded_dims().items()},
            "primitive": {str(i): p for i, p in self.primitive_dims().items()},
            "subspaces": {str(j): [[rat_str(x) for x in v] for v in self.M(j)] for j in range(-self.d - 1, self.d + 1)},
        }


def _filtration(N: Matrix, K: Matrix, I: Matrix, d: int, out: Dict[int, Matrix], powers: List[Matrix]) -> None:
    # M on K/I: M_d = K, M_{-d-1} = I, then recurse between ker N^d and im N^d
    n = len(N)
    out[d] = K
    out[-d - 1] = I
    if d == 0:
        return
    Nd = powers[d]
    pre = linalg.preimage(Nd, I, n)
    K1 = linalg.intersect(K, pre, n)
    I1 = linalg.subspace_sum(I, [linalg.matvec(Nd, v) for v in K])
    _filtration(N, K1, I1, d - 1, out, powers)


def monodromy_filtration(datum: NilpotentDatum | Matrix) -> MonodromyFiltration:
    N = datum.N if isinstance(datum, NilpotentDatum) else linalg.to_fraction_matrix(datum)
    n = len(N)
    d = max(nilpotency_index(N) - 1, 0)
    steps: Dict[int, Matrix] = {}
    powers = [linalg.identity(n)]
    for _ in range(d):
        powers.append(linalg.matmul(powers[-1], N))
    _filtration(N, linalg.identity(n), [], d, steps, powers)
    return MonodromyFiltration(steps, d, n, N)


def primitive_basis(filt: MonodromyFiltration) -> Dict[int, Matrix]:
    """i <= 0 -> representatives in M_i of Ker(N: gr_i -> gr_{i-2})."""
    n = filt.dim
    out = {}
    for i in range(-filt.d, 1):
        kern = linalg.intersect(filt.M(i), linalg.preimage(filt.N, filt.M(i - 3), n), n) if filt.M(i) else []
        out[i] = linalg.complement_basis(filt.M(i - 1), kern)
    return out


def primitive_parts(datum: NilpotentDatum | Matrix) -> Dict[int, Matrix]:
    return primitive_basis(monodromy_filtration(datum))


# -- pairings --------------------------------------------------------------


def _sign_block(n: int) -> Matrix:
    """(A_n)_{ij} = (-1)^i on the antidiagonal i + j = n + 1 (1-based)."""
    out = linalg.zeros(n)
    for i in range(1, n + 1):
        out[i - 1][n - i] = Fraction((-1) ** i)
    return out


def _paired_block(n: int) -> Matrix:
    a = _sign_block(n)
    out = linalg.zeros(2 * n)
    for i in range(n):
        for j in range(n):
            out[i][n + j] = a[i][j]
            out[n + i][j] = -a[i][j]
    return out


def parity_violations(mults: Mapping[int, int], sign: int) -> List[int]:
    """Block sizes n with m_n odd where the sign forbids it."""
    bad_parity = 0 if sign == 1 else 1
    return sorted(n for n, m in mults.items() if m % 2 == 1 and n % 2 == bad_parity)


@dataclass
class WitnessResult:
    ok: bool
    N: Matrix
    A: Optional[Matrix] = None
    refusals: List[int] = field(default_factory=list)

    def to_json(self) -> dict:
        enc = lambda M: [[rat_str(x) for x in r] for r in M]
        return {
            "ok": self.ok,
            "N": enc(self.N),
            "A": enc(self.A) if self.A is not None else None,
            "refusals": self.refusals,
        }


def la_witness(mults: Mapping[int, int], sign: int) -> WitnessResult:
    """A pairing with A^T = sign*A and A N = -N^T A on the given Jordan type, or the obstructions.

    Blocks of size n carry a single A_n when A_n already has the requested
    symmetry (n odd for sign +1, n even for sign -1); otherwise they are
    grouped in pairs carrying the paired block.
    """
    if sign not in (1, -1):
        raise InputError("sign must be +1 or -1")
    mults = {int(n): int(m) for n, m in mults.items() if m}
    if any(n < 1 or m < 0 for n, m in mults.items()):
        raise InputError("block sizes must be positive and multiplicities non-negative")
    if sum(n * m for n, m in mults.items()) < 1:
        raise InputError("total dimension must be at least 1")
    N_blocks, A_blocks = [], []
    bad = parity_violations(mults, sign)
    if bad:
        return WitnessResult(False, nilpotent_from_blocks(mults), None, bad)
    for n in sorted(mults):
        m = mults[n]
        single_ok = (n % 2 == 1) == (sign == 1)
        pairs, singles = (0, m) if single_ok else (m // 2, 0)
        for _ in range(pairs):
            N_blocks += [nilpotent_block(n), nilpotent_block(n)]
            A_blocks.append(_paired_block(n))
        for _ in range(singles):
            N_blocks.append(nilpotent_block(n))
            A_blocks.append(_sign_block(n))
    N = linalg.block_diag(*N_blocks)
    A = linalg.block_diag(*A_blocks)
    # validation re-checks symmetry, compatibility and invertibility
    NilpotentDatum(N, A, sign)
    return WitnessResult(True, N, A, [])


@dataclass
class PrimitiveGram:
    i: int
    gram: Matrix
    symmetry: int
    invertible: bool

    def to_json(self) -> dict:
        return {
            "i": self.i,
            "gram": [[rat_str(x) for x in r] for r in self.gram],
            "symmetry": self.symmetry,
            "invertible": self.invertible,
        }


def induced_primitive_gram(datum: NilpotentDatum, i: int) -> PrimitiveGram:
    """Gram matrix of (x, y) -> A(x, N^k y), k = |i|, on lifts of P_i.

    Representatives of P_i are lowest-weight vectors; the form is evaluated
    on highest-weight lifts H in M_k with N^k H = P modulo M_{i-1}.
    """
    if datum.A is None:
        raise InputError("a pairing is required")
    if i > 0:
        raise InputError("primitive parts are indexed by i <= 0")
    filt = monodromy_filtration(datum)
    k = -i
    P = primitive_basis(filt).get(i, [])
    n = datum.dim
    Nk = linalg.matpow(datum.N, k)
    top = filt.M(k)
    below = filt.M(i - 1)
    # unknowns: coordinates a in M_k and b in M_{i-1} with N^k (a.M_k) - b.M_{i-1} = p
    cols = [linalg.matvec(Nk, v) for v in top] + [[-x for x in v] for v in below]
    system = linalg.transpose(cols) if cols else [[] for _ in range(n)]
    lifts = []
    for p in P:
        sol = linalg.solve(system, p)
        if sol is None:
            raise InvariantViolation(f"no highest-weight lift for a primitive vector at {i}")
        h = [Fraction(0)] * n
        for c, v in zip(sol[: len(top)], top):
            if c != 0:
                h = [x + c * y for x, y in zip(h, v)]
        lifts.append(h)
    AN = linalg.matmul(datum.A, Nk)
    gram = [[sum((x * y for x, y in zip(hx, linalg.matvec(AN, hy))), Fraction(0)) for hy in lifts] for hx in lifts]
    expected = (-1) ** k * datum.sign
    if linalg.transpose(gram) != linalg.matscale(gram, expected):
        raise InvariantViolation(f"primitive form at {i} is not {expected:+d}-symmetric")
    invertible = linalg.det(gram) != 0
    if not invertible:
        raise InvariantViolation(f"primitive form at {i} is degenerate")
    return PrimitiveGram(i, gram, expected, invertible)


def parse_blocks(text: str) -> Dict[int, int]:
    """Parse ``"n:m,n:m"`` into a multiplicity map."""
    out: Dict[int, int] = {}
    for part in filter(None, (s.strip() for s in text.split(","))):
        try:
            n, m = part.split(":")
            n, m = int(n), int(m)
        except ValueError:
            raise InputError(f"malformed block entry {part!r}; expected n:m") from None
        if n < 1 or m < 0:
            raise InputError(f"malformed block entry {part!r}")
        out[n] = out.get(n, 0) + m
    return out
