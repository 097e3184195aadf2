"""Finite permutation groups and their matrix representations over cyclotomic fields.

Permutations are tuples in one-line notation on 0..n-1 and compose as
functions: (g*h)(i) = g(h(i)).  JSON uses one-line notation on 1..n.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Sequence, Tuple

from .errors import InputError, RepresentationError
from .exact import linalg
from .exact.cyclotomic import Cyclotomic
from .exact.poly import as_rat

Perm = Tuple[int, ...]

MAX_ORDER = 5000


def compose(g: Perm, h: Perm) -> Perm:
    return tuple(g[i] for i in h)


def invert(g: Perm) -> Perm:
    out = [0] * len(g)
    for i, x in enumerate(g):
        out[x] = i
    return tuple(out)


def perm_sign(g: Perm) -> int:
    seen = [False] * len(g)
    sign = 1
    for i in range(len(g)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = g[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


class FiniteGroup:
    def __init__(self, degree: int, generators: Sequence[Sequence[int]], *, name: str = "", max_order: int = MAX_ORDER):
        if degree < 1:
            raise InputError("degree must be positive")
        gens = []
        for g in generators:
            g = tuple(int(x) for x in g)
            if sorted(g) != list(range(degree)):
                raise InputError(f"{g} is not a permutation of 0..{degree - 1}")
            gens.append(g)
        self.degree = degree
        self.generators: List[Perm] = gens
        self.name = name
        self.identity: Perm = tuple(range(degree))
        self._max_order = max_order
        self.elements  # closure runs eagerly so the order cap is enforced here

    @cached_property
    def elements(self) -> List[Perm]:
        seen = {self.identity: 0}
        order = [self.identity]
        queue = deque([self.identity])
        while queue:
            g = queue.popleft()
            for s in self.generators:
                h = compose(s, g)
                if h not in seen:
                    seen[h] = len(order)
                    order.append(h)
                    if len(order) > self._max_order:
                        raise InputError(f"group order exceeds the cap {self._max_order}")
                    queue.append(h)
        return order

    @cached_property
    def index(self) -> Dict[Perm, int]:
        return {g: i for i, g in enumerate(self.elements)}

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g) -> bool:
        return tuple(g) in self.index

    @cached_property
    def classes(self) -> List[List[Perm]]:
        """Conjugacy classes, identity class first; each class sorted."""
        done = set()
        out = []
        for x in self.elements:
            if x in done:
                continue
            cls = {x}
            queue = [x]
            while queue:
                y = queue.pop()
                for s in self.generators:
                    z = compose(compose(s, y), invert(s))
                    if z not in cls:
                        cls.add(z)
                        queue.append(z)
            done |= cls
            out.append(sorted(cls))
        return out

    @cached_property
    def centralizer_orders(self) -> List[int]:
        out = []
        for cls in self.classes:
            x = cls[0]
            z = sum(1 for g in self.elements if compose(g, x) == compose(x, g))
            if z * len(cls) != self.order:
                raise RepresentationError("class size times centralizer order differs from the group order")
            out.append(z)
        return out

    def class_of(self, g: Perm) -> int:
        for k, cls in enumerate(self.classes):
            if g in cls:
                return k
        raise InputError(f"{g} is not in the group")

    def to_json(self) -> dict:
        return {"degree": self.degree, "generators": [[x + 1 for x in g] for g in self.generators]}

    @classmethod
    def from_json(cls, obj, **kwargs) -> "FiniteGroup":
        if not isinstance(obj, dict) or "degree" not in obj or "generators" not in obj:
            raise InputError("group JSON needs 'degree' and 'generators'")
        n = obj["degree"]
        if not isinstance(n, int) or n < 1:
            raise InputError("degree must be a positive integer")
        gens = []
        for g in obj["generators"]:
            if not isinstance(g, list) or sorted(g) != list(range(1, n + 1)):
                raise InputError(f"generator {g} is not a one-line permutation of 1..{n}")
            gens.append([x - 1 for x in g])
        return cls(n, gens, name=obj.get("name", ""), **kwargs)


def _as_cyclotomic(x, n: int) -> Cyclotomic:
    if isinstance(x, Cyclotomic):
        return x if x.n == n else x.lift(n)
    if isinstance(x, list):
        return Cyclotomic(n, [as_rat(c) for c in x])
    return Cyclotomic(n, [as_rat(x)])


class FiniteGroupRep:
    """rho given on generators; extended to all of G and checked to be a homomorphism."""

    def __init__(self, group: FiniteGroup, matrices: Sequence, conductor: int = 1, *, name: str = ""):
        if len(matrices) != len(group.generators):
            raise RepresentationError("one matrix per generator is required")
        mats = [[[_as_cyclotomic(x, conductor) for x in row] for row in m] for m in matrices]
        dims = {len(m) for m in mats}
        if len(dims) != 1 or any(len(r) != len(m) for m in mats for r in m):
            raise RepresentationError("generator matrices must be square of one size")
        self.group = group
        self.conductor = conductor
        self.dim = dims.pop()
        self.matrices = mats
        self.name = name
        self._build()

    def _build(self) -> None:
        G = self.group
        one, zero = Cyclotomic(self.conductor, [1]), Cyclotomic(self.conductor)
        ident = linalg.identity(self.dim, one, zero)
        rho = {G.identity: ident}
        queue = deque([G.identity])
        while queue:
            g = queue.popleft()
            for s, m in zip(G.generators, self.matrices):
                h = compose(s, g)
                if h not in rho:
                    rho[h] = linalg.matmul(m, rho[g])
                    queue.append(h)
        # well-definedness: rho(s g) = rho(s) rho(g) for every element and generator
        for g, mg in rho.items():
            for s, m in zip(G.generators, self.matrices):
                if linalg.matmul(m, mg) != rho[compose(s, g)]:
                    raise RepresentationError("generator matrices do not define a homomorphism")
        self.rho = rho

    @cached_property
    def character(self) -> Dict[Perm, Cyclotomic]:
        out = {g: sum((m[i][i] for i in range(self.dim)), Cyclotomic(self.conductor)) for g, m in self.rho.items()}
        for cls in self.group.classes:
            if any(out[g] != out[cls[0]] for g in cls):
                raise RepresentationError("character is not a class function")
        return out

    def inner_product(self, other: "FiniteGroupRep | None" = None) -> Fraction:
        other = other or self
        n = self.conductor * other.conductor
        total = Cyclotomic(n)
        for g in self.group.elements:
            total = total + self.character[g].lift(n) * other.character[g].lift(n).conj()
        total = total / self.group.order
        if not total.is_rational():
            raise RepresentationError("character inner product is not rational")
        return total.to_rational()

    def is_irreducible(self) -> bool:
        return self.inner_product() == 1

    def to_json(self) -> dict:
        return {
            "conductor": self.conductor,
            "matrices": [[[x.to_json() for x in row] for row in m] for m in self.matrices],
        }

    @classmethod
    def from_json(cls, group: FiniteGroup, obj) -> "FiniteGroupRep":
        if not isinstance(obj, dict) or "matrices" not in obj:
            raise InputError("rep JSON needs 'matrices' (and 'conductor')")
        n = obj.get("conductor", 1)
        if not isinstance(n, int) or n < 1:
            raise InputError("conductor must be a positive integer")
        return cls(group, obj["matrices"], n, name=obj.get("name", ""))


# -- bundled groups and representations ------------------------------------


def standard_matrix(g: Perm) -> List[List[Fraction]]:
    """Action of g on the sum-zero subspace, basis e_i - e_{i+1}.

    A sum-zero vector x has coordinates c_i = x_0 + ... + x_i.
    """
    n = len(g)
    out = linalg.zeros(n - 1)
    for j in range(n - 1):
        x = [0] * n
        x[g[j]] += 1
        x[g[j + 1]] -= 1
        acc = 0
        for i in range(n - 1):
            acc += x[i]
            out[i][j] = Fraction(acc)
    return out


def _scalar(x) -> List[List]:
    return [[x]]


def cyclic_group(n: int) -> FiniteGroup:
    return FiniteGroup(n, [tuple((i + 1) % n for i in range(n))], name=f"Z{n}")


def symmetric_group(n: int) -> FiniteGroup:
    gens = [tuple([1, 0] + list(range(2, n))), tuple((i + 1) % n for i in range(n))] if n > 1 else [(0,)]
    return FiniteGroup(n, gens, name=f"S{n}")


def dihedral_4() -> FiniteGroup:
    return FiniteGroup(4, [(1, 2, 3, 0), (0, 3, 2, 1)], name="D4")


def alternating_4() -> FiniteGroup:
    return FiniteGroup(4, [(1, 2, 0, 3), (1, 0, 3, 2)], name="A4")


_QUAT = {
    # (a, b) -> (sign, c) for basis units 0=1, 1=i, 2=j, 3=k
    (1, 1): (-1, 0), (2, 2): (-1, 0), (3, 3): (-1, 0),
    (1, 2): (1, 3), (2, 3): (1, 1), (3, 1): (1, 2),
    (2, 1): (-1, 3), (3, 2): (-1, 1), (1, 3): (-1, 2),
}


def _quat_mul(x: int, y: int) -> int:
    # element index = unit + 4 * (sign bit)
    ux, sx = x % 4, x // 4
    uy, sy = y % 4, y // 4
    if ux == 0:
        sign, u = 1, uy
    elif uy == 0:
        sign, u = 1, ux
    else:
        sign, u = _QUAT[(ux, uy)]
    neg = (sx + sy + (1 if sign < 0 else 0)) % 2
    return u + 4 * neg


def quaternion_group() -> FiniteGroup:
    """Q8 acting on itself by left multiplication (generators i and j)."""
    gens = [tuple(_quat_mul(a, x) for x in range(8)) for a in (1, 2)]
    return FiniteGroup(8, gens, name="Q8")


def _one_dim(group: FiniteGroup, values: Sequence, conductor: int = 1, name: str = "") -> FiniteGroupRep:
    return FiniteGroupRep(group, [_scalar(v) for v in values], conductor, name=name)


def _standard(group: FiniteGroup, name: str, twist=None) -> FiniteGroupRep:
    mats = []
    for g in group.generators:
        m = standard_matrix(g)
        if twist is not None:
            m = linalg.matscale(m, twist(g))
        mats.append(m)
    return FiniteGroupRep(group, mats, 1, name=name)


def _pairings_action(g: Perm) -> Perm:
    pairs = [frozenset({frozenset({0, 1}), frozenset({2, 3})}),
             frozenset({frozenset({0, 2}), frozenset({1, 3})}),
             frozenset({frozenset({0, 3}), frozenset({1, 2})})]
    image = [frozenset(frozenset(g[i] for i in blk) for blk in p) for p in pairs]
    return tuple(pairs.index(x) for x in image)


def bundled_irreps(name: str) -> Tuple[FiniteGroup, List[FiniteGroupRep]]:
    """A bundled group and a complete list of its irreducible representations."""
    key = name.upper()
    if key == "S3":
        G = symmetric_group(3)
        return G, [
            _one_dim(G, [1, 1], name="trivial"),
            _one_dim(G, [perm_sign(g) for g in G.generators], name="sign"),
            _standard(G, "standard"),
        ]
    if key == "D4":
        G = dihedral_4()
        reps = [_one_dim(G, [a, b], name=f"chi({a:+d},{b:+d})") for a in (1, -1) for b in (1, -1)]
        reps.append(FiniteGroupRep(G, [[[0, -1], [1, 0]], [[1, 0], [0, -1]]], 1, name="two-dim"))
        return G, reps
    if key == "Q8":
        G = quaternion_group()
        reps = [_one_dim(G, [a, b], name=f"chi({a:+d},{b:+d})") for a in (1, -1) for b in (1, -1)]
        i = Cyclotomic.zeta(4)
        reps.append(FiniteGroupRep(G, [[[i, 0], [0, -i]], [[0, 1], [-1, 0]]], 4, name="two-dim"))
        return G, reps
    if key == "A4":
        G = alternating_4()
        w = Cyclotomic.zeta(3)
        reps = [
            _one_dim(G, [1, 1], name="trivial"),
            _one_dim(G, [w, 1], 3, name="omega"),
            _one_dim(G, [w * w, 1], 3, name="omega^2"),
            _standard(G, "standard"),
        ]
        return G, reps
    if key == "S4":
        G = symmetric_group(4)
        reps = [
            _one_dim(G, [1, 1], name="trivial"),
            _one_dim(G, [perm_sign(g) for g in G.generators], name="sign"),
            FiniteGroupRep(G, [standard_matrix(_pairings_action(g)) for g in G.generators], 1, name="two-dim"),
            _standard(G, "standard"),
            _standard(G, "standard x sign", twist=perm_sign),
        ]
        return G, reps
    if key.startswith("Z") and key[1:].isdigit():
        n = int(key[1:])
        if n < 1 or n > 64:
            raise InputError("bundled cyclic groups have order 1..64")
        G = cyclic_group(n)
        reps = [_one_dim(G, [Cyclotomic.zeta(n, k)], n, name=f"chi^{k}") for k in range(n)]
        return G, reps
    raise InputError(f"unknown bundled group {name!r}; known: S3, D4, Q8, A4, S4, Z<n>")


BUNDLED = ("S3", "D4", "Q8", "A4", "S4", "Z2", "Z3", "Z4", "Z5", "Z6")
