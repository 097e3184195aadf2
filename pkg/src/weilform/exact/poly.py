"""Dense univariate polynomials over the rationals.

Coefficients are stored in ascending order (constant term first) as
:class:`fractions.Fraction`.  Instances are immutable and hashable.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple, Union

from ..errors import InputError

Number = Union[int, Fraction]


def as_rat(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise InputError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational: {x!r}") from exc
    raise InputError(f"not a rational: {x!r}")


def rat_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class Poly:
    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        if isinstance(coeffs, Poly):
            coeffs = coeffs.coeffs
        cs = [as_rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: Tuple[Fraction, ...] = tuple(cs)
        self._hash = None

    # -- construction -------------------------------------------------
    @classmethod
    def constant(cls, c) -> "Poly":
        return cls([c])

    @classmethod
    def monomial(cls, c, k: int) -> "Poly":
        return cls([0] * k + [c])

    @classmethod
    def from_roots(cls, roots: Iterable) -> "Poly":
        """Monic polynomial prod (T - r)."""
        p = cls([1])
        for r in roots:
            p = p * cls([-as_rat(r), 1])
        return p

    @classmethod
    def from_inverse_roots(cls, roots: Iterable) -> "Poly":
        """prod (1 - r T), constant term 1."""
        p = cls([1])
        for r in roots:
            p = p * cls([1, -as_rat(r)])
        return p

    # -- basic accessors ----------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly([other])
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __repr__(self):
        return f"Poly({[rat_str(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else ("T" if k == 1 else f"T^{k}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            else:
                terms.append(rat_str(c) + ("*" + mono if mono else ""))
        return " + ".join(terms).replace("+ -", "- ")

    # -- arithmetic ----------------------------------------------------
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return Poly([other])

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self[k] + other[k] for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly([c * other for c in self.coeffs])
        other = self._coerce(other)
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise InputError("negative polynomial power")
        out, base = Poly([1]), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __divmod__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        inv = 1 / other.lc
        if len(rem) - 1 < dq:
            return Poly(), self
        quo = [Fraction(0)] * (len(rem) - dq)
        for k in range(len(rem) - 1 - dq, -1, -1):
            c = rem[k + dq] * inv
            quo[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return Poly(quo), Poly(rem[:dq])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Poly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise InputError(f"{other} does not divide {self}")
        return q

    def divides(self, other: "Poly") -> bool:
        """True if self divides other."""
        return (other % self).is_zero()

    def scale(self, c) -> "Poly":
        return self * as_rat(c)

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self * (1 / self.lc)

    def normalize_constant(self) -> "Poly":
        """Scale so that the constant term is 1 (requires p(0) != 0)."""
        c0 = self[0]
        if c0 == 0:
            raise InputError("constant term is zero")
        return self * (1 / c0)

    def derivative(self) -> "Poly":
        return Poly([k * c for k, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def reverse(self, n: int | None = None) -> "Poly":
        """T^n p(1/T); n defaults to the degree."""
        if n is None:
            n = self.degree
        if self.degree > n:
            raise InputError("reverse length below degree")
        cs = list(self.coeffs) + [Fraction(0)] * (n + 1 - len(self.coeffs))
        return Poly(reversed(cs))

    def subs_scale(self, c) -> "Poly":
        """p(c*T)."""
        c = as_rat(c)
        out, pw = [], Fraction(1)
        for a in self.coeffs:
            out.append(a * pw)
            pw *= c
        return Poly(out)

    def subs_power(self, k: int) -> "Poly":
        """p(T^k)."""
        out = [Fraction(0)] * (k * self.degree + 1) if self.coeffs else []
        for i, a in enumerate(self.coeffs):
            out[k * i] = a
        return Poly(out)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def content_primitive(self) -> "Poly":
        """Integer primitive polynomial proportional to self with positive lc."""
        if self.is_zero():
            return self
        from math import gcd, lcm

        den = 1
        for c in self.coeffs:
            den = lcm(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if ints[-1] < 0:
            g = -g
        return Poly([Fraction(v, g) for v in ints])

    def to_json(self) -> List[str]:
        return [rat_str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence) -> "Poly":
        if not isinstance(data, (list, tuple)):
            raise InputError("polynomial must be a JSON array")
        return cls(as_rat(c) for c in data)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (zero if both are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: Poly, b: Poly) -> Tuple[Poly, Poly, Poly]:
    """Return (g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = a, b
    s0, s1 = Poly([1]), Poly()
    t0, t1 = Poly(), Poly([1])
    while not r1.is_zero():
        qt, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - qt * s1
        t0, t1 = t1, t0 - qt * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = 1 / r0.lc
    return r0 * inv, s0 * inv, t0 * inv


def poly_lcm(a: Poly, b: Poly) -> Poly:
    if a.is_zero() or b.is_zero():
        return Poly()
    return (a * b).exact_div(poly_gcd(a, b)).monic()


def poly_squarefree_layers(p: Poly) -> Dict[int, Poly]:
    """Yun decomposition: ``{e: w_e}`` with ``p = lc * prod w_e**e``.

    Each ``w_e`` is monic, squarefree, and the product of the irreducible
    factors of ``p`` of exact multiplicity ``e``.  Trivial layers are omitted.
    """
    if p.is_zero():
        raise InputError("squarefree decomposition of the zero polynomial")
    layers: Dict[int, Poly] = {}
    if p.degree == 0:
        return layers
    f = p.monic()
    df = f.derivative()
    a = poly_gcd(f, df)
    b = f.exact_div(a)
    c = df.exact_div(a)
    d = c - b.derivative()
    e = 1
    while b.degree > 0:
        g = poly_gcd(b, d)
        if g.degree > 0:
            layers[e] = g
        b = b.exact_div(g)
        c = d.exact_div(g)
        d = c - b.derivative()
        e += 1
    return layers


def squarefree_part(p: Poly) -> Poly:
    if p.is_zero():
        raise InputError("squarefree part of the zero polynomial")
    out = Poly([1])
    for w in poly_squarefree_layers(p).values():
        out = out * w
    return out


def factor_multiplicity(p: Poly, d: Poly) -> int:
    """Largest k with d**k dividing p (p nonzero)."""
    if d.degree < 1:
        raise InputError("multiplicity of a constant divisor is undefined")
    if p.is_zero():
        raise InputError("multiplicity in the zero polynomial is unbounded")
    k = 0
    while True:
        qt, r = divmod(p, d)
        if not r.is_zero():
            return k
        p = qt
        k += 1


T = Poly([0, 1])
ONE = Poly([1])
