"""Certified complex root isolation and q-Weil purity certificates.

Approximate roots come from :func:`mpmath.polyroots`; certification is
exact.  For a squarefree polynomial P of degree n with distinct
approximations z_1..z_n, the Weierstrass corrections

    w_i = P(z_i) / (lc(P) * prod_{j != i} (z_i - z_j))

make P/lc the characteristic polynomial of diag(z) - w 1^T, so Gershgorin
disks D(z_i - w_i, (n-1)|w_i|) whose union components contain exactly as
many roots as disks.  All of w_i, the centers and the radii are computed in
exact Gaussian-rational arithmetic; pairwise-disjoint disks are therefore
isolating.  Precision doubles until every disk is isolated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Dict, List, Optional, Sequence, Tuple

import mpmath

from ..errors import InputError, NonIntegralWeight
from .poly import Poly, as_rat, factor_multiplicity, poly_gcd, poly_squarefree_layers, rat_str, squarefree_part

Gauss = Tuple[Fraction, Fraction]

START_PREC = 64
MAX_PREC = 1 << 15


# -- Gaussian rationals ---------------------------------------------------


def _gmul(a: Gauss, b: Gauss) -> Gauss:
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _gsub(a: Gauss, b: Gauss) -> Gauss:
    return (a[0] - b[0], a[1] - b[1])


def _gabs2(a: Gauss) -> Fraction:
    return a[0] * a[0] + a[1] * a[1]


def _gdiv(a: Gauss, b: Gauss) -> Gauss:
    d = _gabs2(b)
    return ((a[0] * b[0] + a[1] * b[1]) / d, (a[1] * b[0] - a[0] * b[1]) / d)


def _geval(p: Poly, z: Gauss) -> Gauss:
    acc: Gauss = (Fraction(0), Fraction(0))
    for c in reversed(p.coeffs):
        acc = _gmul(acc, z)
        acc = (acc[0] + c, acc[1])
    return acc


def sqrt_bounds(x: Fraction, bits: int = 64) -> Tuple[Fraction, Fraction]:
    """Rational lower and upper bounds on sqrt(x), width at most 2^-bits / den."""
    if x < 0:
        raise InputError("square root of a negative rational")
    a, b = x.numerator, x.denominator
    scale = 1 << bits
    s = isqrt(a * b * scale * scale)
    lo = Fraction(s, b * scale)
    hi = lo if s * s == a * b * scale * scale else Fraction(s + 1, b * scale)
    return lo, hi


def _round_dyadic(x: Fraction, bits: int) -> Fraction:
    return Fraction(round(x * (1 << bits)), 1 << bits)


def _ceil_dyadic(x: Fraction, bits: int) -> Fraction:
    num = x * (1 << bits)
    return Fraction(-((-num.numerator) // num.denominator), 1 << bits)


def _mpf_to_fraction(x) -> Fraction:
    x = mpmath.mpf(x)
    man, exp = x.man_exp
    man = -int(man) if x < 0 else int(man)
    if exp >= 0:
        return Fraction(man << exp)
    return Fraction(man, 1 << (-exp))


# -- boxes ------------------------------------------------------------------


@dataclass(frozen=True)
class RootBox:
    """Closed disk holding ``multiplicity`` roots (with multiplicity)."""

    center: Gauss
    radius: Fraction
    multiplicity: int = 1

    def modulus_bounds(self, bits: int = 64) -> Tuple[Fraction, Fraction]:
        lo, hi = sqrt_bounds(_gabs2(self.center), bits)
        return max(Fraction(0), lo - self.radius), hi + self.radius

    def intersects(self, other: "RootBox") -> bool:
        d = _gabs2(_gsub(self.center, other.center))
        s = self.radius + other.radius
        return d <= s * s

    def contains_zero(self) -> bool:
        return _gabs2(self.center) <= self.radius * self.radius

    def conj(self) -> "RootBox":
        return RootBox((self.center[0], -self.center[1]), self.radius, self.multiplicity)

    def invert(self, scale: Fraction = Fraction(1)) -> "RootBox":
        """Image disk under z -> scale / z (the disk must avoid 0)."""
        c2 = _gabs2(self.center)
        d = c2 - self.radius * self.radius
        if d <= 0:
            raise InputError("disk contains zero")
        cx, cy = self.center
        return RootBox((scale * cx / d, -scale * cy / d), scale * self.radius / d, self.multiplicity)

    def approx(self) -> complex:
        return complex(float(self.center[0]), float(self.center[1]))

    def to_json(self) -> dict:
        return {
            "center": [rat_str(self.center[0]), rat_str(self.center[1])],
            "radius": rat_str(self.radius),
            "multiplicity": self.multiplicity,
            "approx": [float(self.center[0]), float(self.center[1])],
        }


# -- isolation --------------------------------------------------------------


def _approx_roots(p: Poly, prec: int, init=None):
    coeffs = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(p.coeffs)]
    steps = 100 + 20 * p.degree
    for _ in range(6):
        try:
            kwargs = dict(maxsteps=steps, extraprec=prec, cleanup=True)
            if init is not None and len(init) == p.degree:
                kwargs["roots_init"] = init
            roots = mpmath.polyroots(coeffs, **kwargs)
            return [mpmath.mpc(r) for r in roots]
        except mpmath.libmp.libhyper.NoConvergence:
            steps *= 4
            init = None
    raise RuntimeError(f"root approximation did not converge for {p}")


def _gershgorin_disks(p: Poly, approx, bits: int) -> Optional[List[RootBox]]:
    n = p.degree
    zs: List[Gauss] = [
        (_round_dyadic(_mpf_to_fraction(z.real), bits), _round_dyadic(_mpf_to_fraction(z.imag), bits)) for z in approx
    ]
    if len(set(zs)) < n:
        return None
    lc = p.lc
    disks = []
    for i, zi in enumerate(zs):
        val = _geval(p, zi)
        den: Gauss = (lc, Fraction(0))
        for j, zj in enumerate(zs):
            if j != i:
                den = _gmul(den, _gsub(zi, zj))
        w = _gdiv(val, den)
        exact_center = _gsub(zi, w)
        cx, cy = _round_dyadic(exact_center[0], bits), _round_dyadic(exact_center[1], bits)
        shift2 = _gabs2((cx - exact_center[0], cy - exact_center[1]))
        radius = Fraction(0)
        if n > 1:
            radius = (n - 1) * sqrt_bounds(_gabs2(w), bits)[1]
        if shift2:
            radius += sqrt_bounds(shift2, bits)[1]
        disks.append(RootBox((cx, cy), _ceil_dyadic(radius, bits) if radius else radius))
    return disks


def _pairwise_disjoint(boxes: Sequence[RootBox]) -> bool:
    for i in range(len(boxes)):
        for j in range(i + 1, len(boxes)):
            if boxes[i].intersects(boxes[j]):
                return False
    return True


def isolate_squarefree_family(
    polys: Sequence[Poly],
    *,
    max_radius: Fraction | None = None,
    prec: int = START_PREC,
) -> Tuple[List[List[RootBox]], int]:
    """Isolate the roots of pairwise-coprime squarefree polynomials jointly.

    Returns one list of disks per input polynomial and the precision used;
    all disks across the family are pairwise disjoint and each contains
    exactly one root of its polynomial.
    """
    inits = [None] * len(polys)
    while prec <= MAX_PREC:
        family: List[List[RootBox]] = []
        ok = True
        with mpmath.workprec(prec):
            for k, p in enumerate(polys):
                if p.degree < 1:
                    family.append([])
                    continue
                approx = _approx_roots(p, prec, inits[k])
                inits[k] = approx
                disks = _gershgorin_disks(p, approx, prec + 16)
                if disks is None:
                    ok = False
                    break
                family.append(disks)
        if ok:
            flat = [b for fam in family for b in fam]
            ok = _pairwise_disjoint(flat)
            if ok and max_radius is not None:
                ok = all(b.radius < max_radius for b in flat)
        if ok:
            return family, prec
        prec *= 2
    raise RuntimeError("root isolation exceeded the precision limit")


def isolate_roots(p: Poly, *, max_radius=None) -> List[RootBox]:
    """Disjoint disks jointly accounting for all deg(p) roots of p.

    Each disk carries the multiplicity of its root; ``max_radius`` forces
    every radius strictly below the given positive rational.
    """
    if p.is_zero():
        raise InputError("cannot isolate roots of the zero polynomial")
    if max_radius is not None:
        max_radius = as_rat(max_radius)
        if max_radius <= 0:
            raise InputError("max_radius must be positive")
    layers = sorted(poly_squarefree_layers(p).items())
    family, _ = isolate_squarefree_family([w for _, w in layers], max_radius=max_radius)
    out = []
    for (e, _), disks in zip(layers, family):
        out.extend(RootBox(b.center, b.radius, e) for b in disks)
    return out


# -- purity -------------------------------------------------------------------


def rational_sqrt(x: Fraction) -> Optional[Fraction]:
    """Exact nonnegative square root of x when it is rational."""
    if x < 0:
        return None
    a, b = x.numerator, x.denominator
    ra, rb = isqrt(a), isqrt(b)
    if ra * ra == a and rb * rb == b:
        return Fraction(ra, rb)
    return None


def special_divisors(q: int, w: int) -> List[Poly]:
    """Exact divisors (in the 1 - lambda*T convention) cut out by lambda = +-q^(w/2).

    Returns ``[1 - sT, 1 + sT]`` when s = q^(w/2) is rational and
    ``[1 - q^w T^2]`` otherwise.
    """
    qw = Fraction(q) ** w
    s = rational_sqrt(qw)
    if s is not None:
        return [Poly([1, -s]), Poly([1, s])]
    return [Poly([1, 0, -qw])]


def reversed_roots_poly(p: Poly) -> Poly:
    """Monic polynomial whose roots are the inverse roots of p (p(0) != 0)."""
    return p.reverse().monic()


def dual_roots_poly(r: Poly, qw: Fraction) -> Poly:
    """Monic polynomial whose roots are qw / rho for the roots rho of r."""
    return r.subs_scale(qw).reverse().monic()


@dataclass
class WeilCertificate:
    pure: bool
    q: int
    weight: int
    witness: List[RootBox] = field(default_factory=list)
    reason: str = ""
    special: Dict[str, int] = field(default_factory=dict)
    boxes: List[RootBox] = field(default_factory=list)

    def __bool__(self):
        return self.pure

    def to_json(self) -> dict:
        return {
            "pure": self.pure,
            "q": self.q,
            "weight": self.weight,
            "reason": self.reason,
            "special_multiplicities": dict(self.special),
            "witness": [b.to_json() for b in self.witness],
        }


def _sole_hit(box: RootBox, pool: Sequence[RootBox]) -> Optional[int]:
    hits = [k for k, other in enumerate(pool) if box.intersects(other)]
    return hits[0] if len(hits) == 1 else None


def is_weil_poly(p: Poly, q: int, w: int, *, integral: bool = True) -> WeilCertificate:
    """Certify that every inverse root of p has |lambda|^2 = q^w in every embedding.

    With ``integral=True`` (the default) p must also have integer
    coefficients, making its inverse roots algebraic integers.  Equality
    cases are settled exactly: the special eigenvalues +-q^(w/2) are
    divided out by exact polynomial division, and for every other isolated
    root lambda the certificate proves conj(lambda) = q^w / lambda by
    showing both lie in the same isolating disk.
    """
    p = Poly(p.coeffs) if isinstance(p, Poly) else Poly(p)
    if p[0] != 1:
        raise InputError("Weil test needs p(0) = 1")
    if q < 2:
        raise InputError("q must be at least 2")
    cert = WeilCertificate(True, q, w)
    if integral and not p.is_integral():
        cert.pure = False
        cert.reason = "non-integral coefficients"
        return cert
    if p.degree == 0:
        return cert
    qw = Fraction(q) ** w
    rest = p
    for d in special_divisors(q, w):
        k = factor_multiplicity(rest, d)
        cert.special[str(d)] = k
        for _ in range(k):
            rest = rest.exact_div(d)
    if rest.degree == 0:
        return cert
    r = reversed_roots_poly(rest)
    layers = sorted(poly_squarefree_layers(r).items())
    sq = squarefree_part(r)
    dual = squarefree_part(dual_roots_poly(r, qw))
    extra = dual.exact_div(poly_gcd(dual, sq))
    polys = [lw for _, lw in layers] + ([extra] if extra.degree > 0 else [])
    prec = START_PREC
    target_lo, target_hi = sqrt_bounds(qw, 96)
    while True:
        family, prec = isolate_squarefree_family(polys, prec=prec)
        pool = [b for fam in family for b in fam]
        own = []
        for (e, _), disks in zip(layers, family):
            own.extend(RootBox(b.center, b.radius, e) for b in disks)
        undecided = False
        bad = []
        for box in own:
            lo, hi = box.modulus_bounds(96)
            if hi < target_lo or lo > target_hi:
                bad.append(box)
                continue
            if box.contains_zero():
                undecided = True
                continue
            j_conj = _sole_hit(box.conj(), pool)
            j_inv = _sole_hit(box.invert(qw), pool)
            if j_conj is None or j_inv is None or j_conj != j_inv:
                undecided = True
        cert.boxes = own
        if not undecided:
            if bad:
                cert.pure = False
                cert.witness = bad
                cert.reason = "eigenvalue modulus differs from q^(w/2)"
            return cert
        prec *= 2
        if prec > MAX_PREC:
            raise RuntimeError("purity certificate exceeded the precision limit")


# -- weight splitting -------------------------------------------------------


def _weight_candidates(box: RootBox, q: int):
    """Integers w with q^w inside the box's |lambda|^2 interval (None: refine)."""
    lo, hi = box.modulus_bounds(96)
    lo2, hi2 = lo * lo, hi * hi
    if lo2 == 0:
        return None, (lo2, hi2)
    qf = Fraction(q)
    w = 0
    while qf**w < lo2:
        w += 1
    while qf ** (w - 1) >= lo2:
        w -= 1
    ws = []
    while qf**w <= hi2:
        ws.append(w)
        w += 1
    return ws, (lo2, hi2)


def weight_split(p: Poly, q: int) -> Dict[int, Poly]:
    """Split det(1 - T F) into exact integer factors by eigenvalue weight."""
    if p[0] != 1:
        raise InputError("weight split needs p(0) = 1")
    if not p.is_integral():
        raise InputError("weight split needs integer coefficients")
    if p.degree == 0:
        return {}
    r = reversed_roots_poly(p)
    layers = sorted(poly_squarefree_layers(r).items())
    prec = START_PREC
    attempts = 0
    while True:
        family, prec = isolate_squarefree_family([lw for _, lw in layers], prec=prec)
        groups: Dict[int, List[RootBox]] = {}
        refine = False
        for (e, _), disks in zip(layers, family):
            for b in disks:
                box = RootBox(b.center, b.radius, e)
                ws, (lo2, hi2) = _weight_candidates(box, q)
                if ws is None:
                    refine = True
                    break
                if not ws:
                    raise NonIntegralWeight(
                        f"eigenvalue near {box.approx():.6g} has |lambda|^2 in "
                        f"[{float(lo2):.6g}, {float(hi2):.6g}], not a power of {q}",
                        box=box,
                    )
                if len(ws) > 1:
                    refine = True
                    break
                groups.setdefault(ws[0], []).append(box)
            if refine:
                break
        if not refine:
            split = _reconstruct_weight_factors(p, groups, q, prec)
            if split is not None:
                return split
            attempts += 1
            if attempts > 4:
                worst = next(iter(groups.values()))[0]
                raise NonIntegralWeight(
                    "eigenvalues of a candidate weight do not form a rational factor "
                    "(not q-Weil numbers)",
                    box=worst,
                )
        prec *= 2
        if prec > MAX_PREC:
            raise RuntimeError("weight split exceeded the precision limit")


def _reconstruct_weight_factors(p: Poly, groups: Dict[int, List[RootBox]], q: int, prec: int):
    out: Dict[int, Poly] = {}
    rest = p
    with mpmath.workprec(prec + 32):
        for w in sorted(groups):
            coeffs = [mpmath.mpc(1)]
            for box in groups[w]:
                lam = mpmath.mpc(
                    mpmath.mpf(box.center[0].numerator) / box.center[0].denominator,
                    mpmath.mpf(box.center[1].numerator) / box.center[1].denominator,
                )
                for _ in range(box.multiplicity):
                    nxt = coeffs + [mpmath.mpc(0)]
                    for k in range(len(coeffs), 0, -1):
                        nxt[k] = nxt[k] - lam * coeffs[k - 1]
                    coeffs = nxt
            ints = []
            for c in coeffs:
                if abs(c.imag) > 0.25:
                    return None
                ints.append(int(mpmath.nint(c.real)))
            factor = Poly(ints)
            qt, rem = divmod(rest, factor)
            if not rem.is_zero():
                return None
            if not is_weil_poly(factor, q, w):
                return None
            out[w] = factor
            rest = qt
    if rest != Poly([1]):
        return None
    return out
