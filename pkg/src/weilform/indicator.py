"""Frobenius-Schur indicators, invariant forms and point counts on BG.

On the classifying stack BG over F_q with trivial Frobenius action, the
F_{q^m}-points are the conjugacy classes [g] with automorphism group Z(g),
so the weighted sum of tr(Fr^2 | F) over points is sum chi(g^2)/|Z(g)|
for every m.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional

from .duality import find_nondegenerate
from .errors import InputError, InvariantViolation, RepresentationError
from .exact import linalg
from .exact.cyclotomic import Cyclotomic
from .exact.poly import rat_str
from .groups import FiniteGroup, FiniteGroupRep, Perm, compose


def _rational(x: Cyclotomic, what: str) -> Fraction:
    if not x.is_rational():
        raise RepresentationError(f"{what} is not rational: {x!r}")
    return x.to_rational()


def fs_indicator(rep: FiniteGroupRep) -> Fraction:
    """(1/|G|) sum chi(g^2), cross-checked against Sym^2 and Lambda^2 multiplicities."""
    G = rep.group
    chi = rep.character
    zero = Cyclotomic(rep.conductor)
    sq = sum((chi[compose(g, g)] for g in G.elements), zero)
    nu = _rational(sq / G.order, "indicator")
    sym, alt = symmetric_square_multiplicities(rep)
    if sym - alt != nu:
        raise InvariantViolation("indicator disagrees with Sym^2 / Lambda^2 multiplicities")
    return nu


def symmetric_square_multiplicities(rep: FiniteGroupRep):
    """Multiplicities of the trivial representation in Sym^2 and Lambda^2."""
    G = rep.group
    chi = rep.character
    zero = Cyclotomic(rep.conductor)
    sym = alt = zero
    for g in G.elements:
        a, b = chi[g] * chi[g], chi[compose(g, g)]
        sym = sym + (a + b) / 2
        alt = alt + (a - b) / 2
    return _rational(sym / G.order, "Sym^2 multiplicity"), _rational(alt / G.order, "Lambda^2 multiplicity")


def invariant_bilinear_space(rep: FiniteGroupRep, sigma: int) -> List[list]:
    """Basis of {B : rho(s)^T B rho(s) = B for generators s, B^T = sigma B}."""
    if sigma not in (1, -1):
        raise InputError("sigma must be +1 or -1")
    d = rep.dim
    n = rep.conductor
    zero = Cyclotomic(n)
    unknowns = [(i, j) for i in range(d) for j in range(i if sigma == 1 else i + 1, d)]
    if not unknowns:
        return []
    system = []
    for R in rep.matrices:
        for k in range(d):
            for l in range(d):
                row = []
                for i, j in unknowns:
                    c = R[i][k] * R[j][l]
                    if i != j:
                        c = c + R[j][k] * R[i][l] * sigma
                    if (k, l) == (i, j):
                        c = c - 1
                    elif (k, l) == (j, i):
                        c = c - sigma
                    row.append(c)
                system.append(row)
    out = []
    for sol in linalg.nullspace(system):
        B = [[zero] * d for _ in range(d)]
        for x, (i, j) in zip(sol, unknowns):
            # free variables come back as plain rationals
            x = x if isinstance(x, Cyclotomic) else Cyclotomic.rational(n, x)
            B[i][j] = x
            if i != j:
                B[j][i] = x * sigma
        out.append(B)
    return out


def _entry_json(x):
    return x.to_json() if isinstance(x, Cyclotomic) else [rat_str(x)]


@dataclass
class FormClassification:
    indicator: Fraction
    orthogonal: bool
    symplectic: bool
    witness: Optional[list]

    @property
    def kind(self) -> str:
        if self.orthogonal:
            return "orthogonal"
        if self.symplectic:
            return "symplectic"
        return "not self-dual"

    def to_json(self) -> dict:
        return {
            "indicator": rat_str(self.indicator),
            "kind": self.kind,
            "orthogonal": self.orthogonal,
            "symplectic": self.symplectic,
            "witness": [[_entry_json(x) for x in row] for row in self.witness] if self.witness else None,
        }


def classify_rep(rep: FiniteGroupRep) -> FormClassification:
    """Indicator and invariant-form search; for irreducible reps the two must agree."""
    nu = fs_indicator(rep)
    hits = {}
    for sigma in (1, -1):
        hit = find_nondegenerate(invariant_bilinear_space(rep, sigma))
        hits[sigma] = hit[0] if hit else None
    out = FormClassification(nu, hits[1] is not None, hits[-1] is not None, hits[1] or hits[-1])
    if rep.is_irreducible():
        expected = {1: (True, False), -1: (False, True), 0: (False, False)}.get(nu)
        if expected is None or expected != (out.orthogonal, out.symplectic):
            raise InvariantViolation(f"indicator {nu} disagrees with the invariant forms found")
    return out


@dataclass
class L2Series:
    coefficients: List[Fraction]
    indicator: Fraction
    pole_order: Fraction
    expansion: List[Fraction]

    def to_json(self) -> dict:
        return {
            "coefficients": [rat_str(a) for a in self.coefficients],
            "indicator": rat_str(self.indicator),
            "pole_order_at_1": rat_str(self.pole_order),
            "closed_form": f"(1 - T)^(-{rat_str(self.indicator)})" if self.indicator >= 0 else f"(1 - T)^({rat_str(-self.indicator)})",
            "expansion": [rat_str(c) for c in self.expansion],
        }


def _class_sum_squares(rep: FiniteGroupRep, m: int) -> Fraction:
    # F_{q^m}-points of BG: classes [g], weight 1/|Z(g)|, Frobenius trivial for every m
    G = rep.group
    zero = Cyclotomic(rep.conductor)
    total = zero
    for cls, z in zip(G.classes, G.centralizer_orders):
        g = cls[0]
        total = total + rep.character[compose(g, g)] / z
    return _rational(total, f"a_{m}")


def bg_l2_series(rep: FiniteGroupRep, terms: int) -> L2Series:
    """a_m for m = 1..terms, and exp(sum a_m T^m / m) checked against (1 - T)^(-nu)."""
    if terms < 1:
        raise InputError("at least one term is required")
    nu = fs_indicator(rep)
    coeffs = [_class_sum_squares(rep, m) for m in range(1, terms + 1)]
    if any(a != nu for a in coeffs):
        raise InvariantViolation("L^2 coefficient differs from the indicator")
    # exp series: n f_n = sum_k a_k f_{n-k}
    f = [Fraction(1)]
    for n in range(1, terms + 1):
        f.append(sum((coeffs[k - 1] * f[n - k] for k in range(1, n + 1)), Fraction(0)) / n)
    # (1 - T)^(-nu) = sum_k binom(nu + k - 1, k) T^k
    closed = [Fraction(1)]
    for k in range(1, terms + 1):
        closed.append(closed[-1] * (nu + k - 1) / k)
    if f != closed:
        raise InvariantViolation("L^2 series does not match (1 - T)^(-nu)")
    return L2Series(coeffs, nu, nu, f)


def chebotarev_identity(group: FiniteGroup, R: Iterable[Perm]):
    """(sum over classes in R of 1/|Z(g)|, |R|/|G|) for a conjugation-closed R."""
    R = {tuple(g) for g in R}
    if not all(g in group for g in R):
        raise InputError("R contains elements outside the group")
    lhs = Fraction(0)
    for cls, z in zip(group.classes, group.centralizer_orders):
        inside = [g in R for g in cls]
        if any(inside) and not all(inside):
            raise InputError("R is not closed under conjugation")
        if all(inside):
            lhs += Fraction(1, z)
    rhs = Fraction(len(R), group.order)
    return lhs, rhs


def class_union(group: FiniteGroup, class_indices: Iterable[int]) -> List[Perm]:
    out = []
    for k in class_indices:
        if not 0 <= k < len(group.classes):
            raise InputError(f"class index {k} out of range")
        out += group.classes[k]
    return out
