"""Canonical root systems with exact rational coordinates.

Every system is realised in a fixed ambient Q^dim: the A series in the
sum-zero hyperplane of Q^(n+1), B/C/D in Q^n, G2 in the sum-zero
hyperplane of Q^3, F4 in Q^4 and the E series inside Q^8.  Positivity is
read off the expansion in the canonical simple roots.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product

from . import linalg
from .errors import DimensionMismatch, InvalidRank, NotARoot, Reducible

Vec = tuple[Fraction, ...]

HALF = Fraction(1, 2)

LABELS = ("A", "B", "C", "D", "E6", "E7", "E8", "F4", "G2", "A1xA1")
EXCEPTIONAL_RANK = {"E6": 6, "E7": 7, "E8": 8, "F4": 4, "G2": 2, "A1xA1": 2}


def vec(*entries) -> Vec:
    return tuple(Fraction(e) for e in entries)


def vadd(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


def vneg(a: Vec) -> Vec:
    return tuple(-x for x in a)


def vscale(c, a: Vec) -> Vec:
    c = Fraction(c)
    return tuple(c * x for x in a)


def vdot(a: Vec, b: Vec) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def is_zero(a: Vec) -> bool:
    return all(x == 0 for x in a)


def basis_vec(dim: int, i: int, c=1) -> Vec:
    v = [Fraction(0)] * dim
    v[i] = Fraction(c)
    return tuple(v)


def coroot(r: Vec) -> Vec:
    return vscale(Fraction(2) / vdot(r, r), r)


@dataclass(frozen=True, eq=False)
class RootSystem:
    label: str
    rank: int
    dim: int
    roots: tuple[Vec, ...]
    simples: tuple[Vec, ...]
    positives: tuple[Vec, ...]
    root_set: frozenset = field(repr=False)
    expansions: dict = field(repr=False)

    def __eq__(self, other):
        return isinstance(other, RootSystem) and (self.label, self.rank) == (
            other.label,
            other.rank,
        )

    def __hash__(self):
        return hash((self.label, self.rank))

    def __repr__(self):
        return f"RootSystem({self.label}, rank={self.rank}, {len(self.roots)} roots)"


def _raw_roots(label: str, rank: int) -> tuple[int, list[Vec], list[Vec]]:
    """Ambient dimension, all roots and the canonical simple roots."""
    n = rank
    if label == "A":
        if n < 1:
            raise InvalidRank("A series needs rank >= 1")
        dim = n + 1
        roots = [
            vsub(basis_vec(dim, i), basis_vec(dim, j))
            for i in range(dim)
            for j in range(dim)
            if i != j
        ]
        simples = [vsub(basis_vec(dim, i), basis_vec(dim, i + 1)) for i in range(n)]
        return dim, roots, simples
    if label == "B":
        if n < 2:
            raise InvalidRank("B series needs rank >= 2")
        roots = [vscale(s, basis_vec(n, i)) for i in range(n) for s in (1, -1)]
        for i, j in combinations(range(n), 2):
            for si, sj in product((1, -1), repeat=2):
                roots.append(vadd(vscale(si, basis_vec(n, i)), vscale(sj, basis_vec(n, j))))
        simples = [vsub(basis_vec(n, i), basis_vec(n, i + 1)) for i in range(n - 1)]
        simples.append(basis_vec(n, n - 1))
        return n, roots, simples
    if label == "C":
        if n < 2:
            raise InvalidRank("C series needs rank >= 2")
        roots = [vscale(2 * s, basis_vec(n, i)) for i in range(n) for s in (1, -1)]
        for i, j in combinations(range(n), 2):
            for si, sj in product((1, -1), repeat=2):
                roots.append(vadd(vscale(si, basis_vec(n, i)), vscale(sj, basis_vec(n, j))))
        simples = [vsub(basis_vec(n, i), basis_vec(n, i + 1)) for i in range(n - 1)]
        simples.append(basis_vec(n, n - 1, 2))
        return n, roots, simples
    if label == "D":
        if n < 3:
            raise InvalidRank("D series needs rank >= 3")
        roots = []
        for i, j in combinations(range(n), 2):
            for si, sj in product((1, -1), repeat=2):
                roots.append(vadd(vscale(si, basis_vec(n, i)), vscale(sj, basis_vec(n, j))))
        simples = [vsub(basis_vec(n, i), basis_vec(n, i + 1)) for i in range(n - 1)]
        simples.append(vadd(basis_vec(n, n - 2), basis_vec(n, n - 1)))
        return n, roots, simples
    if label == "G2":
        roots = []
        for i, j in combinations(range(3), 2):
            d = vsub(basis_vec(3, i), basis_vec(3, j))
            roots.extend([d, vneg(d)])
        for i in range(3):
            j, k = [m for m in range(3) if m != i]
            long = vsub(vscale(2, basis_vec(3, i)), vadd(basis_vec(3, j), basis_vec(3, k)))
            roots.extend([long, vneg(long)])
        simples = [vec(1, -1, 0), vec(-2, 1, 1)]
        return 3, roots, simples
    if label == "F4":
        roots = [vscale(s, basis_vec(4, i)) for i in range(4) for s in (1, -1)]
        for i, j in combinations(range(4), 2):
            for si, sj in product((1, -1), repeat=2):
                roots.append(vadd(vscale(si, basis_vec(4, i)), vscale(sj, basis_vec(4, j))))
        for signs in product((1, -1), repeat=4):
            roots.append(tuple(HALF * s for s in signs))
        simples = [
            vec(0, 1, -1, 0),
            vec(0, 0, 1, -1),
            vec(0, 0, 0, 1),
            (HALF, -HALF, -HALF, -HALF),
        ]
        return 4, roots, simples
    if label in ("E6", "E7", "E8"):
        roots = []
        for i, j in combinations(range(8), 2):
            for si, sj in product((1, -1), repeat=2):
                roots.append(vadd(vscale(si, basis_vec(8, i)), vscale(sj, basis_vec(8, j))))
        for signs in product((1, -1), repeat=8):
            if signs.count(-1) % 2 == 0:
                roots.append(tuple(HALF * s for s in signs))
        simples8 = [
            (HALF, -HALF, -HALF, -HALF, -HALF, -HALF, -HALF, HALF),
            vec(1, 1, 0, 0, 0, 0, 0, 0),
            vec(-1, 1, 0, 0, 0, 0, 0, 0),
            vec(0, -1, 1, 0, 0, 0, 0, 0),
            vec(0, 0, -1, 1, 0, 0, 0, 0),
            vec(0, 0, 0, -1, 1, 0, 0, 0),
            vec(0, 0, 0, 0, -1, 1, 0, 0),
            vec(0, 0, 0, 0, 0, -1, 1, 0),
        ]
        if label == "E8":
            return 8, roots, simples8
        if label == "E7":
            roots = [r for r in roots if r[6] == -r[7]]
            return 8, roots, simples8[:7]
        roots = [r for r in roots if r[5] == r[6] == -r[7]]
        return 8, roots, simples8[:6]
    if label == "A1xA1":
        roots = [vec(1, -1, 0, 0), vec(-1, 1, 0, 0), vec(0, 0, 1, -1), vec(0, 0, -1, 1)]
        simples = [vec(1, -1, 0, 0), vec(0, 0, 1, -1)]
        return 4, roots, simples
    raise InvalidRank(f"unknown series label {label!r}")


@lru_cache(maxsize=None)
def build(label: str, rank: int) -> RootSystem:
    """Construct the canonical root system for (label, rank)."""
    if label in EXCEPTIONAL_RANK:
        if rank != EXCEPTIONAL_RANK[label]:
            raise InvalidRank(f"{label} has rank {EXCEPTIONAL_RANK[label]}")
    dim, roots, simples = _raw_roots(label, rank)
    simple_rows = [tuple(s[d] for s in simples) for d in range(dim)]
    expansions = {}
    positives = []
    for r in roots:
        coeffs = linalg.solve(simple_rows, list(r))
        if coeffs is None:
            raise NotARoot(f"root {r} outside the span of the simple roots")
        if not (all(c >= 0 for c in coeffs) or all(c <= 0 for c in coeffs)):
            raise NotARoot(f"root {r} has mixed-sign simple expansion")
        if any(c.denominator != 1 for c in coeffs):
            raise NotARoot(f"root {r} has non-integral simple expansion")
        expansions[r] = coeffs
        if all(c >= 0 for c in coeffs) and not is_zero(r):
            positives.append(r)
    positives.sort(key=lambda r: (sum(expansions[r]), r))
    return RootSystem(
        label=label,
        rank=rank,
        dim=dim,
        roots=tuple(sorted(roots)),
        simples=tuple(simples),
        positives=tuple(positives),
        root_set=frozenset(roots),
        expansions=expansions,
    )


def _check_dim(rs: RootSystem, v: Vec) -> Vec:
    if len(v) != rs.dim:
        raise DimensionMismatch(f"expected dimension {rs.dim}, got {len(v)}")
    return tuple(Fraction(x) for x in v)


def is_root(rs: RootSystem, v: Vec) -> bool:
    return _check_dim(rs, v) in rs.root_set


def inner(rs: RootSystem, v: Vec, w: Vec) -> Fraction:
    return vdot(_check_dim(rs, v), _check_dim(rs, w))


def height(rs: RootSystem, r: Vec) -> Fraction:
    if r not in rs.root_set:
        raise NotARoot(f"{r} is not a root of {rs.label}{rs.rank}")
    return sum(rs.expansions[r])


def expansion(rs: RootSystem, r: Vec) -> tuple[Fraction, ...]:
    if r not in rs.root_set:
        raise NotARoot(f"{r} is not a root of {rs.label}{rs.rank}")
    return rs.expansions[r]


def is_positive(rs: RootSystem, r: Vec) -> bool:
    return all(c >= 0 for c in expansion(rs, r))


def minimal_root(rs: RootSystem) -> Vec:
    """The lowest root (negative of the highest root)."""
    if rs.label == "A1xA1":
        raise Reducible("A1xA1 has no single minimal root")
    top = max(rs.positives, key=lambda r: sum(rs.expansions[r]))
    return vneg(top)


def weyl_reflect(rs: RootSystem, mirror: Vec, v: Vec) -> Vec:
    mirror = _check_dim(rs, mirror)
    v = _check_dim(rs, v)
    if mirror not in rs.root_set:
        raise NotARoot(f"mirror {mirror} is not a root")
    c = 2 * vdot(v, mirror) / vdot(mirror, mirror)
    return vsub(v, vscale(c, mirror))


def reflect_word(rs: RootSystem, word, v: Vec) -> Vec:
    for mirror in word:
        v = weyl_reflect(rs, mirror, v)
    return v


def random_weyl_word(rs: RootSystem, rng, length: int) -> list[Vec]:
    return [rng.choice(rs.simples) for _ in range(length)]


def _pair_orbit(rs: RootSystem, pair) -> set:
    seen = {pair}
    frontier = [pair]
    while frontier:
        nxt = []
        for a, b in frontier:
            for s in rs.simples:
                img = (weyl_reflect(rs, s, a), weyl_reflect(rs, s, b))
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    return seen


def canonical_pair_rep(rs: RootSystem, pair) -> tuple[Vec, Vec]:
    """Deterministic representative of the diagonal Weyl orbit of a pair.

    The representative is the coordinatewise-lexicographically greatest
    element of the orbit, which matches the usual displayed choices
    (e.g. (e1, e2) for orthogonal short pairs in the B series).
    """
    a, b = pair
    a = _check_dim(rs, a)
    b = _check_dim(rs, b)
    if a not in rs.root_set or b not in rs.root_set:
        raise NotARoot(f"pair {pair} contains a non-root")
    return max(_pair_orbit(rs, (a, b)))


def format_vec(v: Vec) -> list[str]:
    return [str(x) for x in v]


def parse_vec(entries) -> Vec:
    return tuple(Fraction(e) for e in entries)
