"""Parity and symmetry checks on zeta factors of cohomology groups.

Input JSON::

    {"q": 5, "kind": "intersection" | "ordinary",
     "entries": [{"degree": 1, "poly": ["1", "-2", "5"], "matrix": [[...]]?}, ...]}

``poly`` is det(1 - T Fr | H^n) in ascending coefficients.  A Frobenius
``matrix`` may be supplied instead of, or along with, ``poly``; it enables
Jordan-level checks.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional

from .errors import InputError, NonIntegralWeight
from .exact.poly import Poly, factor_multiplicity, rat_str
from .exact.roots import is_weil_poly, special_divisors
from .frobenius import (
    FrobeniusModule,
    char_poly,
    is_prime_power,
    jordan_profile,
    monic_weight_dual,
    weight_dual_poly,
    weight_split,
)
from .kring import VirtualWeilClass, kr_membership
from .report import Report

KINDS = ("intersection", "ordinary")


@dataclass
class Entry:
    degree: int
    poly: Poly
    matrix: Optional[FrobeniusModule] = None


@dataclass
class IhInput:
    q: int
    entries: List[Entry]
    kind: str = "intersection"

    @classmethod
    def from_json(cls, obj) -> "IhInput":
        if not isinstance(obj, dict) or "q" not in obj or "entries" not in obj:
            raise InputError("cohomology input needs 'q' and 'entries'")
        q = obj["q"]
        if not isinstance(q, int) or isinstance(q, bool) or not is_prime_power(q):
            raise InputError(f"q = {q!r} is not a prime power")
        kind = obj.get("kind", "intersection")
        if kind not in KINDS:
            raise InputError(f"kind must be one of {KINDS}")
        entries = []
        seen = set()
        for e in obj["entries"]:
            if not isinstance(e, dict) or not isinstance(e.get("degree"), int):
                raise InputError("each entry needs an integer 'degree'")
            n = e["degree"]
            if n in seen:
                raise InputError(f"degree {n} appears twice")
            seen.add(n)
            module = None
            if e.get("matrix") is not None:
                module = FrobeniusModule(e["matrix"], q)
            if e.get("poly") is not None:
                p = Poly.from_json(e["poly"])
                if module is not None and char_poly(module) != p:
                    raise InputError(f"degree {n}: matrix and polynomial disagree")
            elif module is not None:
                p = char_poly(module)
            else:
                raise InputError(f"degree {n}: give 'poly' or 'matrix'")
            if p.is_zero() or p[0] != 1:
                raise InputError(f"degree {n}: polynomial must have constant term 1")
            entries.append(Entry(n, p, module))
        return cls(q, sorted(entries, key=lambda x: x.degree), kind)

    def to_json(self) -> dict:
        out = []
        for e in self.entries:
            item = {"degree": e.degree, "poly": e.poly.to_json()}
            if e.matrix is not None:
                item["matrix"] = e.matrix.to_json()["matrix"]
            out.append(item)
        return {"q": self.q, "kind": self.kind, "entries": out}


def _special_mults(p: Poly, q: int, w: int) -> List[int]:
    return [factor_multiplicity(p, d) for d in special_divisors(q, w)]


def _degree_checks(q: int, e: Entry) -> List[tuple]:
    n, p = e.degree, e.poly
    out = []
    cert = is_weil_poly(p, q, n, integral=True)
    if not cert.pure:
        out.append((f"H^{n}: purity of weight {n}", False, {"reason": cert.reason, "witness": cert.to_json()["witness"]}))
        return out
    out.append((f"H^{n}: purity of weight {n}", True, {}))
    dual = weight_dual_poly(p, q, n)
    out.append((f"H^{n}: functional equation P = P-dagger", p == dual, {"P": str(p), "P_dagger": str(dual)}))
    b = p.degree
    if e.matrix is not None:
        profile = jordan_profile(e.matrix)
        bad = []
        for k, layer in profile.layers.items():
            if layer != monic_weight_dual(layer, q, n):
                bad.append({"block_size": k, "reason": "layer not symmetric under lambda -> q^n/lambda"})
        for k, mk in profile.special_marks(q, n).items():
            if (n + k) % 2 == 0:
                for sgn in ("+", "-"):
                    if mk[sgn] % 2:
                        bad.append({"block_size": k, "eigenvalue": f"{sgn}sqrt(q^{n})", "multiplicity": mk[sgn]})
        out.append((f"H^{n}: Jordan multiplicities at +-q^({n}/2) even for n+e even", not bad, {"level": "jordan", "violations": bad}))
    elif n % 2 == 1:
        # zeta data only: the semisimple consequence of the Jordan-level condition
        mults = _special_mults(p, q, n)
        details = {"level": "semisimple", "multiplicities": mults}
        out.append((f"H^{n}: multiplicities at +-q^({n}/2) even", all(m % 2 == 0 for m in mults), details))
    if n % 2 == 1:
        ok = b % 2 == 0
        details = {"b": b}
        if ok:
            qn = Fraction(q) ** n
            rhs = p.subs_scale(1 / qn).reverse(b) * (qn ** (b // 2))
            det = (-1) ** b * p.lc
            ok = rhs == p and det == qn ** (b // 2)
            details.update({"det": rat_str(det), "expected_det": rat_str(qn ** (b // 2))})
        out.append((f"H^{n}: P(T) = q^(n b/2) T^b P(1/(q^n T)) with b even", ok, details))
    return out


def _run(entries, fn, jobs: int):
    if jobs > 1 and len(entries) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, entries))
    return [fn(e) for e in entries]


def ih_check(data: IhInput, *, jobs: int = 1) -> Report:
    """Intersection cohomology: purity, functional equation and parity per degree."""
    report = Report("ih-check")
    for checks in _run(data.entries, lambda e: _degree_checks(data.q, e), jobs):
        for name, ok, details in checks:
            report.add(name, ok, **details)
    return report


def mixed_check(data: IhInput, *, jobs: int = 1) -> Report:
    """Ordinary cohomology: split by weight, then check each weight of sum (-1)^n [H^n]."""
    report = Report("mixed-check")
    q = data.q

    def split(e: Entry):
        try:
            return e, weight_split(e.poly, q), None
        except NonIntegralWeight as exc:
            return e, None, exc

    comps: Dict[int, tuple] = {}
    for e, parts, err in _run(data.entries, split, jobs):
        if err is not None:
            report.add(f"H^{e.degree}: integral weights", False, reason=str(err))
            continue
        report.add(f"H^{e.degree}: integral weights", True, weights=sorted(parts))
        for w, f in parts.items():
            num, den = comps.get(w, (Poly([1]), Poly([1])))
            comps[w] = (num * f, den) if e.degree % 2 == 0 else (num, den * f)
    if not report.ok:
        return report
    cls = VirtualWeilClass(q, comps, check=False)
    # sign +1: symmetric constraints at even weight, alternating ones at odd weight
    member = kr_membership(cls, 1)
    for w, (num, den) in cls.components.items():
        sym = (num, den) == (weight_dual_poly(num, q, w), weight_dual_poly(den, q, w))
        report.add(f"weight {w}: m_lambda = m_(q^w/lambda)", sym, num=str(num), den=str(den))
        rank = num.degree - den.degree
        if w % 2:
            mults = [factor_multiplicity(num, d) - factor_multiplicity(den, d) for d in special_divisors(q, w)]
            report.add(f"weight {w}: multiplicities at +-q^({w}/2) even", all(m % 2 == 0 for m in mults), multiplicities=mults)
            report.add(f"weight {w}: dimension even", rank % 2 == 0, dimension=rank)
        else:
            report.add(f"weight {w}: dimension", True, dimension=rank)
        if member.weights[w] != all(r.ok for r in report.records if r.name.startswith(f"weight {w}:")):
            report.add(f"weight {w}: membership cross-check", False, reason="membership routes disagree")
    return report
