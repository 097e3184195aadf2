"""Brute-force point counts of plane cubics over prime fields."""

from __future__ import annotations

from typing import Dict

from .errors import InputError
from .exact.poly import Poly


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


def elliptic_point_count(p: int, a: int, b: int) -> int:
    """#E(F_p) for y^2 = x^3 + a x + b, including the point at infinity.

    Every pair (x, y) in F_p^2 is tested, so p^2 + 1 points are examined.
    """
    if not _is_prime(p) or p == 2:
        raise InputError("p must be an odd prime")
    if (4 * a**3 + 27 * b**2) % p == 0:
        raise InputError("curve is singular mod p")
    affine = sum(1 for x in range(p) for y in range(p) if (y * y - (x**3 + a * x + b)) % p == 0)
    return affine + 1


def frobenius_trace(p: int, a: int, b: int) -> int:
    return p + 1 - elliptic_point_count(p, a, b)


def elliptic_cohomology(p: int, a: int, b: int) -> Dict[int, Poly]:
    """det(1 - T Fr | H^n) for n = 0, 1, 2 of the projective curve."""
    t = frobenius_trace(p, a, b)
    return {0: Poly([1, -1]), 1: Poly([1, -t, p]), 2: Poly([1, -p])}


def projective_space_cohomology(q: int, dim: int) -> Dict[int, Poly]:
    return {2 * k: Poly([1, -(q**k)]) for k in range(dim + 1)}
