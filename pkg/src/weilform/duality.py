"""Self-duality of Frobenius modules: multiplicity criterion and pairing witnesses.

Pairing convention: B is a pairing into Q(-w) when F^T B F = q^w B, since
geometric Frobenius acts on Q(-w) by q^w.  B^T = sigma * B fixes the
symmetry (+1 symmetric, -1 alternating).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import InputError, InvariantViolation, PurityError
from .exact import linalg
from .exact.poly import Poly, poly_squarefree_layers, rat_str
from .exact.roots import rational_sqrt
from .frobenius import (
    FrobeniusModule,
    JordanProfile,
    companion,
    jordan_profile,
    monic_weight_dual,
    purity,
)

GRID_LIMIT = 4096
RANDOM_TRIALS = 6
RANDOM_RANGE = 1 << 32


def invariant_pairing_space(m: FrobeniusModule, w: int, sigma: Optional[int]) -> List[list]:
    """Basis of {B : F^T B F = q^w B, B^T = sigma B} (sigma=None: no symmetry)."""
    F = m.matrix
    b = m.dim
    qw = Fraction(m.q) ** w
    if b == 0:
        return []
    if sigma is None:
        unknowns = [(i, j) for i in range(b) for j in range(b)]
        eqs = [(k, l) for k in range(b) for l in range(b)]
    elif sigma == 1:
        unknowns = [(i, j) for i in range(b) for j in range(i, b)]
        eqs = [(k, l) for k in range(b) for l in range(k, b)]
    elif sigma == -1:
        unknowns = [(i, j) for i in range(b) for j in range(i + 1, b)]
        eqs = [(k, l) for k in range(b) for l in range(k + 1, b)]
    else:
        raise InputError("sigma must be +1, -1 or None")
    if not unknowns:
        return []
    # clear denominators: F = G/D, so G^T B G = q^w D^2 B
    D = 1
    for row in F:
        for x in row:
            D = lcm(D, x.denominator)
    G = [[int(x * D) for x in row] for row in F]
    target = qw * D * D
    lhs_scale, rhs = target.denominator, target.numerator
    system = []
    for k, l in eqs:
        row = []
        for i, j in unknowns:
            c = G[i][k] * G[j][l]
            if sigma is not None and i != j:
                c += sigma * G[j][k] * G[i][l]
            c *= lhs_scale
            if (k, l) == (i, j):
                c -= rhs
            row.append(c)
        system.append(row)
    zero = Fraction(0)
    out = []
    for sol in linalg.nullspace(system):
        B = linalg.zeros(b)
        for x, (i, j) in zip(sol, unknowns):
            if x != zero:
                B[i][j] = x
                if sigma is not None and i != j:
                    B[j][i] = sigma * x
        out.append(B)
    return out


def _combination(basis, coeffs):
    n = len(basis[0])
    out = [[Fraction(0)] * n for _ in range(n)]
    for c, B in zip(coeffs, basis):
        if c:
            out = [[x + c * y for x, y in zip(r, s)] for r, s in zip(out, B)]
    return out


def _int_combination(basis, coeffs):
    n = len(basis[0])
    out = [[0] * n for _ in range(n)]
    for c, B in zip(coeffs, basis):
        if c:
            out = [[x + c * y for x, y in zip(r, s)] for r, s in zip(out, B)]
    return out


def _grid_points(k: int, top: int):
    """All of {0..top}^k, ordered by coordinate sum."""
    for total in range(0, k * top + 1):
        for combo in itertools.product(range(top + 1), repeat=k):
            if sum(combo) == total:
                yield combo


def find_nondegenerate(basis: Sequence, *, seed: int = 0):
    """An invertible element of span(basis), or None.

    The determinant of a combination is a polynomial of degree at most n
    (the matrix size) in each coefficient, so it vanishes on the whole grid
    {0..n}^k only if it vanishes identically.  That grid is swept
    exhaustively when it has at most GRID_LIMIT points.  Beyond that a
    seeded sequence of points drawn from a range of size 2^32 is used; a
    nonzero determinant polynomial survives each draw with probability at
    least 1 - n/2^32.
    Returns ``(matrix, coefficients)``.
    """
    basis = [b for b in basis]
    if not basis:
        return None
    n = len(basis[0])
    if any(len(b) != n or any(len(r) != n for r in b) for b in basis):
        raise InputError("basis matrices must share one square shape")
    k = len(basis)
    if n == 0:
        return [], tuple([1] * k)
    for i, B in enumerate(basis):
        if linalg.det(B) != 0:
            coeffs = tuple(1 if j == i else 0 for j in range(k))
            return B, coeffs
    scales = None
    if all(isinstance(x, (int, Fraction)) for B in basis for r in B for x in r):
        # clear denominators once so the sweep runs on integer Bareiss determinants
        scales = []
        ints = []
        for B in basis:
            d = 1
            for r in B:
                for x in r:
                    d = lcm(d, Fraction(x).denominator)
            scales.append(d)
            ints.append([[int(x * d) for x in r] for r in B])
    if (n + 1) ** k <= GRID_LIMIT:
        points = _grid_points(k, n)
    else:
        rng = random.Random(seed)
        points = (tuple(rng.randrange(1, RANDOM_RANGE) for _ in range(k)) for _ in range(RANDOM_TRIALS))
    for coeffs in points:
        if not any(coeffs):
            continue
        if scales is not None:
            Mi = _int_combination(ints, coeffs)
            if linalg.det_int(Mi) != 0:
                true = tuple(Fraction(c * d) for c, d in zip(coeffs, scales))
                return [[Fraction(x) for x in r] for r in Mi], true
            continue
        M = _combination(basis, coeffs)
        if linalg.det(M) != 0:
            return M, coeffs
    return None


@dataclass
class DualityVerdict:
    self_dual: bool
    plus_self_dual: bool
    minus_self_dual: bool
    witness: Optional[list] = None
    witness_sign: Optional[int] = None
    witnesses: Dict[int, list] = field(default_factory=dict)
    refusal_reasons: List[Tuple[str, int, str]] = field(default_factory=list)
    weight: Optional[int] = None

    def flag(self, sigma: int) -> bool:
        return self.plus_self_dual if sigma == 1 else self.minus_self_dual

    def to_json(self) -> dict:
        w = self.witness
        return {
            "self_dual": self.self_dual,
            "plus": self.plus_self_dual,
            "minus": self.minus_self_dual,
            "witness": [[rat_str(x) for x in row] for row in w] if w is not None else None,
            "witness_sign": self.witness_sign,
            "violations": [
                {"eigenvalue": d, "block_size": e, "reason": why} for d, e, why in self.refusal_reasons
            ],
        }


def _special_label(q: int, w: int) -> Tuple[Optional[Fraction], str, str]:
    qw = Fraction(q) ** w
    s = rational_sqrt(qw)
    if s is not None:
        return s, rat_str(s), rat_str(-s)
    return None, f"+sqrt({rat_str(qw)})", f"-sqrt({rat_str(qw)})"


def multiplicity_verdict(profile: JordanProfile, q: int, w: int) -> DualityVerdict:
    """Flags from Jordan multiplicities alone (no pairing search)."""
    reasons: List[Tuple[str, int, str]] = []
    self_dual = True
    for e, layer in sorted(profile.layers.items()):
        if layer != monic_weight_dual(layer, q, w):
            self_dual = False
            reasons.append((str(layer), e, "multiplicities not symmetric under lambda -> q^w/lambda"))
    marks = profile.special_marks(q, w)
    _, plus_label, minus_label = _special_label(q, w)
    plus_ok, minus_ok = self_dual, self_dual
    for e, mk in marks.items():
        for label, count in ((plus_label, mk["+"]), (minus_label, mk["-"])):
            if count % 2 == 0:
                continue
            if e % 2 == 0:
                plus_ok = False
                reasons.append((label, e, f"odd multiplicity {count} for even block size (blocks +1)"))
            else:
                minus_ok = False
                reasons.append((label, e, f"odd multiplicity {count} for odd block size (blocks -1)"))
    return DualityVerdict(self_dual, plus_ok, minus_ok, refusal_reasons=reasons, weight=w)


def witness_verdict(m: FrobeniusModule, w: int, *, include_general: bool = True):
    """Flags from explicit invertible pairings; returns (self_dual, {sign: witness})."""
    found = {}
    for sigma in (1, -1):
        hit = find_nondegenerate(invariant_pairing_space(m, w, sigma))
        if hit is not None:
            found[sigma] = hit[0]
    if found:
        self_dual = True
    elif include_general:
        self_dual = find_nondegenerate(invariant_pairing_space(m, w, None)) is not None
    else:
        self_dual = None
    if m.dim == 0:
        found = {1: [], -1: []}
        self_dual = True
    return self_dual, found


def classify_self_duality(
    m: FrobeniusModule, w: int, *, require_pure: bool = True, include_general: bool = True
) -> DualityVerdict:
    """Decide self-dual / +1 / -1 for F with respect to Q(-w) by two independent routes.

    The multiplicity route reads the Jordan layers; the witness route solves
    for invariant pairings and searches their span for an invertible one.
    Any disagreement raises :class:`InvariantViolation`.
    """
    if require_pure and m.dim:
        cert = purity(m, w)
        if not cert.pure:
            raise PurityError(f"module is not pure of weight {w}", witness=cert.witness)
    profile = jordan_profile(m)
    verdict = multiplicity_verdict(profile, m.q, w)
    general, found = witness_verdict(m, w, include_general=include_general)
    if (1 in found) != verdict.plus_self_dual or (-1 in found) != verdict.minus_self_dual:
        raise InvariantViolation(
            f"route disagreement: multiplicities give (+{verdict.plus_self_dual}, -{verdict.minus_self_dual}), "
            f"pairings give (+{1 in found}, -{-1 in found})"
        )
    if general is not None and general != verdict.self_dual:
        raise InvariantViolation("route disagreement on plain self-duality")
    verdict.witnesses = found
    for sigma in (1, -1):
        if sigma in found:
            verdict.witness, verdict.witness_sign = found[sigma], sigma
            break
    return verdict


# -- two out of three ---------------------------------------------------------


def module_from_profile(profile: JordanProfile, q: int, weight: Optional[int] = None) -> FrobeniusModule:
    """A rational module realising exactly the given Jordan layers."""
    blocks = []
    for e, layer in sorted(profile.layers.items()):
        yun = poly_squarefree_layers(layer)
        top = max(yun) if yun else 0
        for j in range(1, top + 1):
            t = Poly([1])
            for k, s in yun.items():
                if k >= j:
                    t = t * s
            if t.degree > 0:
                blocks.append(companion(t**e))
    F = linalg.block_diag(*blocks) if blocks else []
    return FrobeniusModule(F, q, weight, check=False)


def layer_complement(whole: JordanProfile, part: JordanProfile) -> JordanProfile:
    layers = {}
    for e, d in part.layers.items():
        big = whole.layers.get(e, Poly([1]))
        if not d.divides(big):
            raise InputError(f"part is not a sub-profile of whole at block size {e}")
    for e, big in whole.layers.items():
        small = part.layers.get(e, Poly([1]))
        rest = big.exact_div(small)
        if rest.degree > 0:
            layers[e] = rest.monic()
    return JordanProfile(layers, whole.dimension - part.dimension)


def two_out_of_three(
    whole: FrobeniusModule, part: FrobeniusModule, w: int, sigma: int, *, require_pure: bool = True
) -> DualityVerdict:
    """Verdict for the complement of ``part`` in ``whole`` (both sigma-self-dual)."""
    if whole.q != part.q:
        raise InputError("q mismatch")
    comp = layer_complement(jordan_profile(whole), jordan_profile(part))
    for label, mod in (("whole", whole), ("part", part)):
        v = classify_self_duality(mod, w, require_pure=require_pure)
        if not v.flag(sigma):
            raise InputError(f"{label} is not {sigma:+d}-self-dual at weight {w}")
    complement = module_from_profile(comp, whole.q)
    verdict = classify_self_duality(complement, w, require_pure=False)
    if not verdict.flag(sigma):
        raise InvariantViolation(f"complement is not {sigma:+d}-self-dual")
    return verdict
