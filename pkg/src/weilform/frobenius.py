"""Frobenius modules at a point: characteristic data and Jordan multiplicities.

Polynomials in the ``1 - lambda*T`` convention (``char_poly``) describe
inverse roots; invariant factors and Jordan layers use the monic
``T - lambda`` convention.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from .errors import InputError, PurityError
from .exact import linalg
from .exact.poly import Poly, as_rat, factor_multiplicity, poly_gcd, poly_squarefree_layers
from .exact.roots import WeilCertificate, is_weil_poly, rational_sqrt
from .exact.roots import weight_split as _weight_split_poly

MAX_DIMENSION = 64


def is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    p = 2
    while p * p <= q:
        if q % p == 0:
            while q % p == 0:
                q //= p
            return q == 1
        p += 1
    return True


@dataclass(frozen=True)
class FrobeniusModule:
    """Invertible rational matrix F standing for geometric Frobenius at a point."""

    F: tuple
    q: int
    declared_weight: Optional[int] = None
    max_dimension: int = field(default=MAX_DIMENSION, compare=False)

    def __init__(self, F, q: int, declared_weight: Optional[int] = None, *, max_dimension: int = MAX_DIMENSION, check: bool = True):
        rows = tuple(tuple(as_rat(x) for x in row) for row in F)
        object.__setattr__(self, "F", rows)
        object.__setattr__(self, "q", int(q))
        object.__setattr__(self, "declared_weight", declared_weight)
        object.__setattr__(self, "max_dimension", max_dimension)
        if check:
            self._validate()

    def _validate(self):
        b = len(self.F)
        if any(len(row) != b for row in self.F):
            raise InputError("Frobenius matrix must be square")
        if b > self.max_dimension:
            raise InputError(f"dimension {b} exceeds the cap {self.max_dimension}")
        if not is_prime_power(self.q):
            raise InputError(f"q = {self.q} is not a prime power")
        if b and linalg.det(self.matrix) == 0:
            raise InputError("Frobenius must be invertible")
        if self.declared_weight is not None:
            cert = is_weil_poly(char_poly(self), self.q, self.declared_weight, integral=False)
            if not cert.pure:
                raise PurityError(
                    f"module is not pure of weight {self.declared_weight}", witness=cert.witness
                )

    @property
    def dim(self) -> int:
        return len(self.F)

    @property
    def matrix(self) -> List[List[Fraction]]:
        return [list(r) for r in self.F]

    def direct_sum(self, other: "FrobeniusModule") -> "FrobeniusModule":
        if other.q != self.q:
            raise InputError("q mismatch in direct sum")
        w = self.declared_weight if self.declared_weight == other.declared_weight else None
        return FrobeniusModule(linalg.block_diag(self.matrix, other.matrix), self.q, w, check=False)

    def to_json(self) -> dict:
        from .exact.poly import rat_str

        return {
            "matrix": [[rat_str(x) for x in row] for row in self.F],
            "q": self.q,
            "weight": self.declared_weight,
        }

    @classmethod
    def from_json(cls, data: dict, **kwargs) -> "FrobeniusModule":
        try:
            return cls(data["matrix"], data["q"], data.get("weight"), **kwargs)
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed Frobenius module: {exc}") from exc


# -- building blocks ----------------------------------------------------------


def jordan_block(lam, e: int) -> List[List[Fraction]]:
    """e x e block with F e_1 = lam e_1 and F e_i = lam e_i + e_{i-1}."""
    lam = as_rat(lam)
    m = linalg.zeros(e)
    for i in range(e):
        m[i][i] = lam
        if i + 1 < e:
            m[i][i + 1] = Fraction(1)
    return m


def companion(f: Poly) -> List[List[Fraction]]:
    """Companion matrix of a monic polynomial (char poly f, single invariant factor)."""
    f = f.monic()
    d = f.degree
    m = linalg.zeros(d)
    for i in range(1, d):
        m[i][i - 1] = Fraction(1)
    for i in range(d):
        m[i][d - 1] = -f[i]
    return m


# -- characteristic data --------------------------------------------------------


def _hessenberg_charpoly(a: List[List[Fraction]]) -> Poly:
    """Monic det(T I - a) via reduction to upper Hessenberg form."""
    n = len(a)
    h = [list(r) for r in a]
    for k in range(1, n - 1):
        piv = next((i for i in range(k, n) if h[i][k - 1] != 0), None)
        if piv is None:
            continue
        if piv != k:
            h[piv], h[k] = h[k], h[piv]
            for row in h:
                row[piv], row[k] = row[k], row[piv]
        for j in range(k + 1, n):
            u = h[j][k - 1] / h[k][k - 1]
            if u == 0:
                continue
            h[j] = [x - u * y for x, y in zip(h[j], h[k])]
            for row in h:
                row[k] += u * row[j]
    polys = [Poly([1])]
    for m in range(1, n + 1):
        pm = Poly([-h[m - 1][m - 1], 1]) * polys[m - 1]
        prod = Fraction(1)
        for i in range(m - 1, 0, -1):
            prod *= h[i][i - 1]
            if prod == 0:
                break
            pm = pm - polys[i - 1] * (h[i - 1][m - 1] * prod)
        polys.append(pm)
    return polys[n]


def monic_char_poly(m: FrobeniusModule) -> Poly:
    return _hessenberg_charpoly(m.matrix)


def char_poly(m: FrobeniusModule) -> Poly:
    """det(1 - T F); constant term 1 and degree equal to the dimension."""
    if m.dim == 0:
        return Poly([1])
    return monic_char_poly(m).reverse(m.dim)


def _krylov_minpoly(a, v) -> Poly:
    """Monic minimal polynomial of the vector v under a."""
    vecs = [list(v)]
    while True:
        nxt = linalg.matvec(a, vecs[-1])
        sol = linalg.solve(linalg.transpose(vecs), nxt)
        if sol is not None:
            return Poly([-c for c in sol] + [1])
        vecs.append(nxt)


def _apply_poly(a, f: Poly, v):
    """f(a) v by Horner."""
    out = [Fraction(0)] * len(v)
    for c in reversed(f.coeffs):
        out = linalg.matvec(a, out)
        if c:
            out = [x + c * y for x, y in zip(out, v)]
    return out


def coprime_base(polys: Sequence[Poly]) -> List[Poly]:
    """Pairwise coprime monic nonconstant polynomials generating the inputs multiplicatively."""
    base = [p.monic() for p in polys if p.degree > 0]
    changed = True
    while changed:
        changed = False
        for i in range(len(base)):
            for j in range(i + 1, len(base)):
                g = poly_gcd(base[i], base[j])
                if g.degree > 0:
                    x, y = base[i].exact_div(g), base[j].exact_div(g)
                    rest = [b for k, b in enumerate(base) if k not in (i, j)]
                    base = rest + [t for t in (g, x, y) if t.degree > 0]
                    changed = True
                    break
            if changed:
                break
    return base


def _combine(a, u, mu: Poly, v, mv: Poly):
    """A vector whose minimal polynomial is lcm(mu, mv)."""
    part_u, part_v = Poly([1]), Poly([1])
    for c in coprime_base([mu, mv]):
        eu, ev = factor_multiplicity(mu, c), factor_multiplicity(mv, c)
        if eu >= ev:
            part_u = part_u * c**eu
        else:
            part_v = part_v * c**ev
    uu = _apply_poly(a, mu.exact_div(part_u), u)
    vv = _apply_poly(a, mv.exact_div(part_v), v)
    w = [x + y for x, y in zip(uu, vv)]
    return w, (part_u * part_v).monic()


def _max_vector(a):
    n = len(a)
    basis = linalg.identity(n)
    v = basis[0]
    mv = _krylov_minpoly(a, v)
    for e in basis[1:]:
        if mv.degree == n:
            break
        me = _krylov_minpoly(a, e)
        if me.divides(mv):
            continue
        v, mv = _combine(a, v, mv, e, me)
    return v, mv


def _invariant_factors_matrix(a) -> List[Poly]:
    n = len(a)
    if n == 0:
        return []
    v, m = _max_vector(a)
    d = m.degree
    krylov = [v]
    for _ in range(d - 1):
        krylov.append(linalg.matvec(a, krylov[-1]))
    if d == n:
        return [m]
    # functional vanishing on a^i v for i < d-1 and 1 on a^(d-1) v
    full = krylov + linalg.complement_basis(krylov, linalg.identity(n))
    inv = linalg.inverse(linalg.transpose(full))
    phi = inv[d - 1]
    rows = [phi]
    for _ in range(d - 1):
        rows.append([sum(x * a[i][j] for i, x in enumerate(rows[-1])) for j in range(n)])
    w_basis = linalg.nullspace(rows)
    # restriction of a to the invariant complement
    restricted = []
    wt = linalg.transpose(w_basis)
    for wv in w_basis:
        coords = linalg.solve(wt, linalg.matvec(a, wv))
        restricted.append(coords)
    sub = linalg.transpose(restricted)
    return _invariant_factors_matrix(sub) + [m]


def invariant_factors(m: FrobeniusModule) -> List[Poly]:
    """Monic invariant factors f_1 | f_2 | ... | f_r of F (T - lambda convention)."""
    return _invariant_factors_matrix(m.matrix)


@dataclass
class JordanProfile:
    """Layer polynomials D_e: the multiplicity of lambda in D_e is mu_{lambda,e}."""

    layers: Dict[int, Poly]
    dimension: int

    def multiplicity(self, e: int, d: Poly) -> int:
        layer = self.layers.get(e)
        if layer is None:
            return 0
        return factor_multiplicity(layer, d)

    def special_marks(self, q: int, w: int) -> Dict[int, Dict[str, int]]:
        """Per-layer multiplicities of the eigenvalues +-q^(w/2)."""
        qw = Fraction(q) ** w
        s = rational_sqrt(qw)
        out = {}
        for e, layer in sorted(self.layers.items()):
            if s is not None:
                plus = factor_multiplicity(layer, Poly([-s, 1]))
                minus = factor_multiplicity(layer, Poly([s, 1]))
            else:
                plus = minus = factor_multiplicity(layer, Poly([-qw, 0, 1]))
            out[e] = {"+": plus, "-": minus}
        return out

    def check_dimension(self) -> bool:
        return sum(e * p.degree for e, p in self.layers.items()) == self.dimension

    def to_json(self) -> dict:
        return {"dimension": self.dimension, "layers": {str(e): p.to_json() for e, p in sorted(self.layers.items())}}


def profile_from_factors(factors: Sequence[Poly], dimension: int) -> JordanProfile:
    layers: Dict[int, Poly] = {}
    for f in factors:
        for e, w in poly_squarefree_layers(f).items():
            layers[e] = layers.get(e, Poly([1])) * w
    return JordanProfile(layers, dimension)


def jordan_profile(m: FrobeniusModule) -> JordanProfile:
    return profile_from_factors(invariant_factors(m), m.dim)


def weight_split(m, q: Optional[int] = None) -> Dict[int, Poly]:
    """Exact per-weight factors of det(1 - T F) (accepts a module or a polynomial)."""
    if isinstance(m, FrobeniusModule):
        return _weight_split_poly(char_poly(m), m.q)
    if q is None:
        raise InputError("q is required when splitting a bare polynomial")
    return _weight_split_poly(m, q)


def weight_dual_poly(p: Poly, q: int, w: int) -> Poly:
    """The polynomial whose inverse roots are q^w / lambda (p(0) = 1)."""
    if p[0] != 1:
        raise InputError("weight dual needs p(0) = 1")
    if p.degree <= 0:
        return p
    qw = Fraction(q) ** w
    b = p.degree
    return (p.subs_scale(1 / qw).reverse(b) * qw**b) * (1 / p.lc)


def monic_weight_dual(f: Poly, q: int, w: int) -> Poly:
    """Monic polynomial with roots q^w / rho for the roots rho of f (f(0) != 0)."""
    if f.degree <= 0:
        return Poly([1])
    qw = Fraction(q) ** w
    return f.subs_scale(qw).reverse().monic()


def purity(m: FrobeniusModule, w: int) -> WeilCertificate:
    return is_weil_poly(char_poly(m), m.q, w, integral=False)
