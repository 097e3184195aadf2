"""Weight-graded lambda-ring of virtual Frobenius classes over a finite field.

A class is a finite map weight -> P_w(T) = num/den, where P_w is
prod (1 - lambda T)^(m_lambda) over inverse roots of weight w.  Products and
exterior powers go through trace sequences s_n = sum m_lambda lambda^n and
are reconstructed by exact Pade approximation under a priori degree bounds,
then verified by re-expansion.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Dict, List, Mapping, Optional, Tuple

from .errors import InputError, InvariantViolation
from .exact import linalg
from .exact.poly import Poly, factor_multiplicity, poly_gcd
from .exact.roots import is_weil_poly, special_divisors
from .frobenius import is_prime_power, weight_dual_poly

ONE = Poly([1])
VERIFY_MARGIN = 3

Component = Tuple[Poly, Poly]
Graded = Dict[int, List[Fraction]]


def _reduce(num: Poly, den: Poly) -> Component:
    if num.is_zero() or den.is_zero() or num[0] == 0 or den[0] == 0:
        raise InputError("numerator and denominator need nonzero constant terms")
    g = poly_gcd(num, den)
    if g.degree > 0:
        num, den = num.exact_div(g), den.exact_div(g)
    return num.normalize_constant(), den.normalize_constant()


class VirtualWeilClass:
    """Immutable virtual class; components are reduced with constant terms 1."""

    __slots__ = ("q", "components")

    def __init__(self, q: int, components: Mapping[int, Tuple[Poly, Poly]] = (), *, check: bool = True):
        if not isinstance(q, int) or isinstance(q, bool) or not is_prime_power(q):
            raise InputError(f"q = {q!r} is not a prime power")
        comps: Dict[int, Component] = {}
        for w, (num, den) in dict(components).items():
            if not isinstance(w, int):
                raise InputError(f"weight {w!r} is not an integer")
            num, den = _reduce(num, den)
            if num.degree > 0 or den.degree > 0:
                comps[w] = (num, den)
        if check:
            for w, (num, den) in comps.items():
                for part in (num, den):
                    if part.degree > 0 and not is_weil_poly(part, q, w, integral=False).pure:
                        raise InputError(f"component at weight {w} has inverse roots of the wrong weight")
        self.q = q
        self.components = dict(sorted(comps.items()))

    @classmethod
    def from_poly(cls, q: int, w: int, num, den=(1,), *, check: bool = True) -> "VirtualWeilClass":
        return cls(q, {w: (Poly(num), Poly(den))}, check=check)

    @classmethod
    def zero(cls, q: int) -> "VirtualWeilClass":
        return cls(q, {}, check=False)

    @classmethod
    def unit(cls, q: int) -> "VirtualWeilClass":
        return cls(q, {0: (Poly([1, -1]), ONE)}, check=False)

    def __eq__(self, other):
        if not isinstance(other, VirtualWeilClass):
            return NotImplemented
        return self.q == other.q and self.components == other.components

    def __hash__(self):
        return hash((self.q, tuple(self.components.items())))

    def __repr__(self):
        parts = [f"w={w}: ({n})/({d})" for w, (n, d) in self.components.items()]
        return f"VirtualWeilClass(q={self.q}; {'; '.join(parts) or '0'})"

    def is_zero(self) -> bool:
        return not self.components

    def rank(self, w: Optional[int] = None) -> int:
        items = self.components.items() if w is None else [(w, self.components.get(w, (ONE, ONE)))]
        return sum(n.degree - d.degree for _, (n, d) in items)

    def size(self) -> Tuple[int, int]:
        """Total numerator and denominator degrees."""
        return (
            sum(n.degree for n, _ in self.components.values()),
            sum(d.degree for _, d in self.components.values()),
        )

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "components": {str(w): {"num": n.to_json(), "den": d.to_json()} for w, (n, d) in self.components.items()},
        }

    @classmethod
    def from_json(cls, obj, *, check: bool = True) -> "VirtualWeilClass":
        if not isinstance(obj, dict) or "q" not in obj:
            raise InputError("class JSON needs 'q' and 'components'")
        comps = {}
        for w, c in dict(obj.get("components", {})).items():
            try:
                wi = int(w)
            except ValueError:
                raise InputError(f"weight key {w!r} is not an integer") from None
            if not isinstance(c, dict) or "num" not in c:
                raise InputError(f"component {w} needs 'num' (and optionally 'den')")
            comps[wi] = (Poly.from_json(c["num"]), Poly.from_json(c.get("den", ["1"])))
        return cls(obj["q"], comps, check=check)


def _same_q(x: VirtualWeilClass, y: VirtualWeilClass) -> int:
    if x.q != y.q:
        raise InputError(f"q mismatch: {x.q} vs {y.q}")
    return x.q


def kr_add(x: VirtualWeilClass, y: VirtualWeilClass) -> VirtualWeilClass:
    q = _same_q(x, y)
    comps = dict(x.components)
    for w, (n, d) in y.components.items():
        n0, d0 = comps.get(w, (ONE, ONE))
        comps[w] = (n0 * n, d0 * d)
    return VirtualWeilClass(q, comps, check=False)


def kr_neg(x: VirtualWeilClass) -> VirtualWeilClass:
    return VirtualWeilClass(x.q, {w: (d, n) for w, (n, d) in x.components.items()}, check=False)


def kr_sub(x: VirtualWeilClass, y: VirtualWeilClass) -> VirtualWeilClass:
    return kr_add(x, kr_neg(y))


def kr_sum(classes, q: int) -> VirtualWeilClass:
    out = VirtualWeilClass.zero(q)
    for c in classes:
        out = kr_add(out, c)
    return out


# -- trace sequences -------------------------------------------------------


def power_sums(p: Poly, L: int) -> List[Fraction]:
    """s_1..s_L of the inverse roots of p (p(0) = 1), by Newton's identities."""
    c = [p[k] for k in range(L + 1)]
    s: List[Fraction] = []
    for n in range(1, L + 1):
        acc = -n * c[n]
        for k in range(1, n):
            acc -= s[k - 1] * c[n - k]
        s.append(acc)
    return s


def _series_from_traces(s: List[Fraction], L: int) -> List[Fraction]:
    f = [Fraction(1)]
    for n in range(1, L + 1):
        acc = Fraction(0)
        for k in range(1, n + 1):
            acc += s[k - 1] * f[n - k]
        f.append(-acc / n)
    return f


@dataclass
class AdamsSeq:
    """Graded trace sequence s_1..s_L with degree bounds per weight."""

    q: int
    length: int
    traces: Graded
    bounds: Dict[int, Tuple[int, int]]

    @classmethod
    def of(cls, x: VirtualWeilClass, length: int) -> "AdamsSeq":
        traces = {}
        bounds = {}
        for w, (n, d) in x.components.items():
            traces[w] = [a - b for a, b in zip(power_sums(n, length), power_sums(d, length))]
            bounds[w] = (n.degree, d.degree)
        return cls(x.q, length, traces, bounds)

    def reconstruct(self) -> VirtualWeilClass:
        comps = {}
        for w, s in self.traces.items():
            if all(v == 0 for v in s):
                continue
            dn, dd = self.bounds[w]
            comps[w] = reconstruct_component(s, dn, dd)
        return VirtualWeilClass(self.q, comps, check=False)


def reconstruct_component(s: List[Fraction], dn: int, dd: int) -> Component:
    """The unique num/den with deg <= (dn, dd) and the given trace sequence."""
    L = len(s)
    if L < dn + dd + 1:
        raise InvariantViolation(f"trace sequence of length {L} is too short for bounds ({dn}, {dd})")
    f = _series_from_traces(s, dn + dd)
    fc = lambda k: f[k] if k >= 0 else Fraction(0)
    if dd:
        system = [[fc(n - j) for j in range(1, dd + 1)] for n in range(dn + 1, dn + dd + 1)]
        rhs = [-fc(n) for n in range(dn + 1, dn + dd + 1)]
        sol = linalg.solve(system, rhs)
        if sol is None:
            raise InvariantViolation("no rational function within the degree bounds")
        den = Poly([1] + list(sol))
    else:
        den = ONE
    prod = [sum((den[j] * fc(n - j) for j in range(0, min(n, dd) + 1)), Fraction(0)) for n in range(dn + 1)]
    num = Poly(prod)
    num, den = _reduce(num, den)
    if num.degree > dn or den.degree > dd:
        raise InvariantViolation("reconstruction exceeded the degree bound")
    check = [a - b for a, b in zip(power_sums(num, L), power_sums(den, L))]
    if check != list(s):
        raise InvariantViolation("reconstructed class does not reproduce its trace sequence")
    return num, den


def _gmul(a: Graded, b: Graded, L: int) -> Graded:
    out: Graded = {}
    for u, sa in a.items():
        for v, sb in b.items():
            acc = out.setdefault(u + v, [Fraction(0)] * L)
            for i in range(L):
                acc[i] += sa[i] * sb[i]
    return out


def _gaxpy(out: Graded, c, a: Graded, L: int) -> None:
    for w, sa in a.items():
        acc = out.setdefault(w, [Fraction(0)] * L)
        for i in range(L):
            acc[i] += c * sa[i]


def _tensor_bound(bx: Tuple[int, int], by: Tuple[int, int]) -> Tuple[int, int]:
    (a, b), (c, d) = bx, by
    return a * c + b * d, a * d + b * c


def kr_tensor(x: VirtualWeilClass, y: VirtualWeilClass) -> VirtualWeilClass:
    q = _same_q(x, y)
    out = VirtualWeilClass.zero(q)
    for u, cx in x.components.items():
        for v, cy in y.components.items():
            bx = (cx[0].degree, cx[1].degree)
            by = (cy[0].degree, cy[1].degree)
            dn, dd = _tensor_bound(bx, by)
            L = dn + dd + 1 + VERIFY_MARGIN
            sx = AdamsSeq.of(VirtualWeilClass(q, {u: cx}, check=False), L).traces[u]
            sy = AdamsSeq.of(VirtualWeilClass(q, {v: cy}, check=False), L).traces[v]
            s = [a * b for a, b in zip(sx, sy)]
            if all(t == 0 for t in s):
                continue
            part = VirtualWeilClass(q, {u + v: reconstruct_component(s, dn, dd)}, check=False)
            out = kr_add(out, part)
    return out


def _lambda_bound(a: int, b: int, m: int) -> Tuple[int, int]:
    # lambda^m(A - B) = sum_j lambda^(m-j)(A) (-1)^j Sym^j(B)
    sym = lambda j: 1 if j == 0 else comb(b + j - 1, j)
    num = sum(comb(a, m - j) * sym(j) for j in range(0, m + 1, 2))
    den = sum(comb(a, m - j) * sym(j) for j in range(1, m + 1, 2))
    return num, den


def _lambda_traces(x: VirtualWeilClass, m: int, L: int) -> List[Graded]:
    """Graded traces of lambda^0..lambda^m, each of length L."""
    base = AdamsSeq.of(x, m * L).traces
    lam: List[Graded] = [{0: [Fraction(1)] * L}]
    for j in range(1, m + 1):
        acc: Graded = {}
        for k in range(1, j + 1):
            psi = {k * w: [s[k * n - 1] for n in range(1, L + 1)] for w, s in base.items()}
            _gaxpy(acc, (-1) ** (k - 1), _gmul(psi, lam[j - k], L), L)
        lam.append({w: [v / j for v in s] for w, s in acc.items() if any(s)})
    return lam


def kr_lambda(x: VirtualWeilClass, m: int) -> VirtualWeilClass:
    if not isinstance(m, int) or m < 0:
        raise InputError("exterior power index must be a non-negative integer")
    if m == 0:
        return VirtualWeilClass.unit(x.q)
    a, b = x.size()
    dn, dd = _lambda_bound(a, b, m)
    L = dn + dd + 1 + VERIFY_MARGIN
    traces = _lambda_traces(x, m, L)[m]
    seq = AdamsSeq(x.q, L, traces, {w: (dn, dd) for w in traces})
    return seq.reconstruct()


def kr_adams(x: VirtualWeilClass, k: int) -> VirtualWeilClass:
    """psi^k: inverse roots raised to the k-th power, weights multiplied by k."""
    if k < 1:
        raise InputError("Adams index must be positive")
    comps = {}
    for w, (n, d) in x.components.items():
        L = k * (n.degree + d.degree + 1 + VERIFY_MARGIN)
        s = [a - b for a, b in zip(power_sums(n, L), power_sums(d, L))]
        comps[k * w] = reconstruct_component(s[k - 1 :: k], n.degree, d.degree)
    return VirtualWeilClass(x.q, comps, check=False)


# -- duality and twists ----------------------------------------------------


def _invert_roots(p: Poly) -> Poly:
    return p.reverse(p.degree).normalize_constant() if p.degree > 0 else p


def kr_dual(x: VirtualWeilClass) -> VirtualWeilClass:
    """lambda -> 1/lambda; weight w -> -w."""
    return VirtualWeilClass(
        x.q, {-w: (_invert_roots(n), _invert_roots(d)) for w, (n, d) in x.components.items()}, check=False
    )


def kr_tate(x: VirtualWeilClass, n: int) -> VirtualWeilClass:
    """Tate twist (n): lambda -> lambda q^-n; weight w -> w - 2n."""
    s = Fraction(1, x.q**n) if n >= 0 else Fraction(x.q ** (-n))
    return VirtualWeilClass(
        x.q, {w - 2 * n: (a.subs_scale(s), b.subs_scale(s)) for w, (a, b) in x.components.items()}, check=False
    )


def kr_dbar(x: VirtualWeilClass) -> VirtualWeilClass:
    """lambda -> q^w / lambda on the weight-w component."""
    return VirtualWeilClass(
        x.q,
        {w: (weight_dual_poly(n, x.q, w), weight_dual_poly(d, x.q, w)) for w, (n, d) in x.components.items()},
        check=False,
    )


# -- membership -------------------------------------------------------------


@dataclass
class Membership:
    member: bool
    weights: Dict[int, bool]
    reasons: List[str]

    def to_json(self) -> dict:
        return {"member": self.member, "weights": {str(w): v for w, v in self.weights.items()}, "reasons": self.reasons}


def _special_multiplicities(num: Poly, den: Poly, q: int, w: int) -> List[int]:
    return [factor_multiplicity(num, d) - factor_multiplicity(den, d) for d in special_divisors(q, w)]


def _determinant(num: Poly, den: Poly) -> Fraction:
    # P = prod (1 - lambda T)^m has leading coefficient prod (-lambda)^m
    top = (-1) ** num.degree * num.lc
    bottom = (-1) ** den.degree * den.lc
    return top / bottom


def kr_membership(x: VirtualWeilClass, sigma: int) -> Membership:
    """Per weight w, is the component in the subgroup generated by (-1)^w sigma-self-dual objects?

    Multiplicity route: symmetry under lambda -> q^w/lambda, plus even
    multiplicity at each of +-q^(w/2) when (-1)^w sigma = -1.
    Determinant route: coefficients real (automatic for rational data), and
    in the alternating case even rank and det = q^(wb/2).
    """
    if sigma not in (1, -1):
        raise InputError("sign must be +1 or -1")
    q = x.q
    weights: Dict[int, bool] = {}
    reasons: List[str] = []
    for w, (num, den) in x.components.items():
        # both characterisations presuppose a pure component
        for part in (num, den):
            if part.degree > 0 and not is_weil_poly(part, q, w, integral=False).pure:
                raise InputError(f"component at weight {w} is not pure of weight {w}")
        sym = (num, den) == (weight_dual_poly(num, q, w), weight_dual_poly(den, q, w))
        alternating = (-1) ** w * sigma == -1
        route_a = sym
        if alternating and sym:
            mults = _special_multiplicities(num, den, q, w)
            route_a = all(m % 2 == 0 for m in mults)
        # real coefficients: the only determinant-route condition for symmetric pairings
        route_b = True
        if alternating:
            b = num.degree - den.degree
            qw = Fraction(q) ** w
            route_b = sym and b % 2 == 0 and _determinant(num, den) == qw ** (b // 2)
        if route_a != route_b:
            raise InvariantViolation(f"membership routes disagree at weight {w}")
        weights[w] = route_a
        if not sym:
            reasons.append(f"weight {w}: multiplicities not symmetric under lambda -> q^{w}/lambda")
        elif not route_a:
            reasons.append(f"weight {w}: odd multiplicity at +-q^({w}/2)")
    return Membership(all(weights.values()), weights, reasons)


# -- expression programs ----------------------------------------------------

_UNARY = {"neg": kr_neg, "dual": kr_dual, "dbar": kr_dbar}
_BINARY = {"add": kr_add, "sub": kr_sub, "tensor": kr_tensor}


def evaluate(expr, env: Mapping[str, VirtualWeilClass]) -> VirtualWeilClass:
    """Evaluate ``{"op": ..., "args": [...]}`` trees over named classes.

    Leaves are class names.  ``tate`` takes ``"n"``, ``lambda`` takes ``"m"``
    and ``adams`` takes ``"k"`` as integer fields next to ``args``.
    """
    if isinstance(expr, str):
        if expr not in env:
            raise InputError(f"unknown class name {expr!r}")
        return env[expr]
    if not isinstance(expr, dict) or "op" not in expr:
        raise InputError(f"malformed expression {expr!r}")
    op = expr["op"]
    args = [evaluate(a, env) for a in expr.get("args", [])]

    def param(name):
        v = expr.get(name)
        if not isinstance(v, int) or isinstance(v, bool):
            raise InputError(f"operation {op!r} needs an integer {name!r}")
        return v

    def arity(k):
        if len(args) != k:
            raise InputError(f"operation {op!r} takes {k} argument(s)")

    if op in _UNARY:
        arity(1)
        return _UNARY[op](args[0])
    if op in _BINARY:
        arity(2)
        return _BINARY[op](args[0], args[1])
    if op == "tate":
        arity(1)
        return kr_tate(args[0], param("n"))
    if op == "lambda":
        arity(1)
        return kr_lambda(args[0], param("m"))
    if op == "adams":
        arity(1)
        return kr_adams(args[0], param("k"))
    raise InputError(f"unknown operation {op!r}")


def run_program(obj) -> Tuple[VirtualWeilClass, Optional[Membership]]:
    """Program JSON: {"q", "classes": {name: class}, "expr": tree, "sigma": +-1 (optional)}."""
    if not isinstance(obj, dict) or "classes" not in obj or "expr" not in obj:
        raise InputError("program needs 'classes' and 'expr'")
    env = {}
    for name, c in obj["classes"].items():
        c = dict(c)
        c.setdefault("q", obj.get("q"))
        env[name] = VirtualWeilClass.from_json(c)
    result = evaluate(obj["expr"], env)
    sigma = obj.get("sigma")
    membership = kr_membership(result, sigma) if sigma is not None else None
    return result, membership

