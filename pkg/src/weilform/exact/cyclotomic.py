"""Exact arithmetic in cyclotomic fields Q(zeta_n).

An element is stored by its rational coordinates in the power basis
``1, zeta, ..., zeta^(phi(n)-1)``, always reduced modulo the n-th
cyclotomic polynomial.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Tuple

from ..errors import InputError
from .poly import Poly, as_rat, poly_xgcd, rat_str

MAX_CONDUCTOR = 512


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> Poly:
    if n < 1:
        raise InputError("conductor must be positive")
    p = Poly([-1] + [0] * (n - 1) + [1])
    for d in range(1, n):
        if n % d == 0:
            p = p.exact_div(cyclotomic_poly(d))
    return p


def euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


class Cyclotomic:
    __slots__ = ("n", "coords")

    def __init__(self, n: int, coords: Iterable = (), *, max_conductor: int = MAX_CONDUCTOR):
        if n < 1 or n > max_conductor:
            raise InputError(f"conductor {n} outside 1..{max_conductor}")
        self.n = n
        p = Poly(coords)
        phi = cyclotomic_poly(n)
        if p.degree >= phi.degree:
            p = p % phi
        cs = list(p.coeffs) + [Fraction(0)] * (phi.degree - len(p.coeffs))
        self.coords: Tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> "Cyclotomic":
        k %= n
        return cls(n, [0] * k + [1])

    @classmethod
    def rational(cls, n: int, x) -> "Cyclotomic":
        return cls(n, [as_rat(x)])

    def _poly(self) -> Poly:
        return Poly(self.coords)

    def _coerce(self, other) -> "Cyclotomic":
        if isinstance(other, Cyclotomic):
            if other.n == self.n:
                return other
            raise InputError(f"conductor mismatch {self.n} vs {other.n}")
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.n, [other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Cyclotomic(self.n, [a + b for a, b in zip(self.coords, other.coords)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.n, [-a for a in self.coords])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Cyclotomic(self.n, [a - b for a, b in zip(self.coords, other.coords)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.n, [a * other for a in self.coords])
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Cyclotomic(self.n, (self._poly() * other._poly()).coeffs)

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        g, s, _ = poly_xgcd(self._poly(), cyclotomic_poly(self.n))
        # Phi_n is irreducible, so g = 1
        return Cyclotomic(self.n, s.coeffs)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = Cyclotomic(self.n, [1])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.coords[0] == other and all(c == 0 for c in self.coords[1:])
        if isinstance(other, Cyclotomic):
            if other.n == self.n:
                return self.coords == other.coords
            m = self.n * other.n // gcd(self.n, other.n)
            return self.lift(m).coords == other.lift(m).coords
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coords[0])
        return hash((self.n, self.coords))

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise InputError(f"{self} is not rational")
        return self.coords[0]

    def conj(self) -> "Cyclotomic":
        """Complex conjugation zeta -> zeta^(-1)."""
        out = Cyclotomic(self.n)
        for k, c in enumerate(self.coords):
            if c != 0:
                out = out + Cyclotomic.zeta(self.n, -k) * c
        return out

    def galois(self, j: int) -> "Cyclotomic":
        """The automorphism zeta -> zeta^j (gcd(j, n) = 1)."""
        if gcd(j, self.n) != 1:
            raise InputError("not a Galois exponent")
        out = Cyclotomic(self.n)
        for k, c in enumerate(self.coords):
            if c != 0:
                out = out + Cyclotomic.zeta(self.n, j * k) * c
        return out

    def lift(self, m: int) -> "Cyclotomic":
        """Image in Q(zeta_m) for a multiple m of the conductor."""
        if m % self.n:
            raise InputError(f"{m} is not a multiple of {self.n}")
        step = m // self.n
        out = Cyclotomic(m)
        for k, c in enumerate(self.coords):
            if c != 0:
                out = out + Cyclotomic.zeta(m, step * k) * c
        return out

    def to_complex(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.n)
        return sum(float(c) * z**k for k, c in enumerate(self.coords))

    def to_json(self):
        return [rat_str(c) for c in self.coords]

    def __repr__(self):
        terms = [f"{rat_str(c)}*z^{k}" if k else rat_str(c) for k, c in enumerate(self.coords) if c != 0]
        return f"Cyclotomic({self.n}: {' + '.join(terms) or '0'})"
