"""Chevalley bases and integral structure constants.

Basis: coroots h_i for the simple roots plus one vector E_r per root r,
with [h, E_r] = r(h) E_r, [E_r, E_{-r}] = (coroot of r) and
[E_r, E_s] = n(r, s) E_{r+s} when r+s is a root.  Signs are fixed by the
standard extraspecial-pair convention: order the positive roots by height
and then lexicographically, give each non-simple positive root its
minimal decomposition, and make that constant +(p+1) where p is the
length of the descending root string.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import linalg
from .errors import NotInvariant, SystemMismatch
from .rootsys import (
    RootSystem,
    Vec,
    build,
    coroot,
    is_zero,
    vadd,
    vdot,
    vneg,
    vscale,
    vsub,
)

ZERO = Fraction(0)


def _order_key(rs: RootSystem, r: Vec):
    return (sum(rs.expansions[r]), tuple(-c for c in r))


def _string_down(rs: RootSystem, beta: Vec, alpha: Vec) -> int:
    """Largest p with beta - p*alpha still a root."""
    p = 0
    cur = vsub(beta, alpha)
    while cur in rs.root_set:
        p += 1
        cur = vsub(cur, alpha)
    return p


@dataclass(eq=False)
class StructureConstants:
    system: RootSystem
    n_table: dict = field(repr=False)

    def n(self, a: Vec, b: Vec) -> Fraction:
        """Constant n(a, b) with [E_a, E_b] = n(a, b) E_{a+b}; 0 if no root."""
        return self.n_table.get((a, b), ZERO)


def structure_constants(rs: RootSystem) -> StructureConstants:
    pos = sorted(rs.positives, key=lambda r: _order_key(rs, r))
    pos_set = set(pos)
    root_set = rs.root_set
    npp: dict = {}

    def lookup_pp(a, b):
        if (a, b) in npp:
            return npp[(a, b)]
        return -npp[(b, a)]

    def const(x, y):
        """n(x, y) for arbitrary roots with x+y a root."""
        xp, yp = x in pos_set, y in pos_set
        if xp and yp:
            return lookup_pp(x, y)
        if not xp and not yp:
            return -const(vneg(x), vneg(y))
        z = vneg(vadd(x, y))
        # x + y + z = 0: n(x,y)/(z,z) = n(y,z)/(x,x) = n(z,x)/(y,y)
        if (y in pos_set) == (z in pos_set):
            return const(y, z) * vdot(z, z) / vdot(x, x)
        return const(z, x) * vdot(z, z) / vdot(y, y)

    for gamma in pos:
        pairs = []
        for a in pos:
            if _order_key(rs, a) >= _order_key(rs, gamma):
                break
            b = vsub(gamma, a)
            if b in pos_set and _order_key(rs, a) < _order_key(rs, b):
                pairs.append((a, b))
        if not pairs:
            continue
        pairs.sort(key=lambda ab: _order_key(rs, ab[0]))
        xi, eta = pairs[0]
        npp[(xi, eta)] = Fraction(_string_down(rs, eta, xi) + 1)
        gg = vdot(gamma, gamma)
        for alpha, beta in pairs[1:]:
            # four-root identity on (xi, eta, -alpha, -beta)
            total = ZERO
            d1 = vsub(eta, alpha)
            if d1 in root_set:
                total += const(eta, vneg(alpha)) * const(xi, vneg(beta)) / vdot(d1, d1)
            d2 = vsub(xi, alpha)
            if d2 in root_set:
                total += const(vneg(alpha), xi) * const(eta, vneg(beta)) / vdot(d2, d2)
            npp[(alpha, beta)] = gg * total / npp[(xi, eta)]

    table = {}
    for x in rs.roots:
        for y in rs.roots:
            if vadd(x, y) in root_set:
                val = const(x, y)
                assert val.denominator == 1 and val != 0
                table[(x, y)] = val
    return StructureConstants(system=rs, n_table=table)


@lru_cache(maxsize=None)
def cached_constants(label: str, rank: int) -> StructureConstants:
    return structure_constants(build(label, rank))


class AlgebraElement:
    """Exact element of the split algebra: Cartan vector + root coefficients."""

    __slots__ = ("system", "cartan", "coeffs")

    def __init__(self, system: RootSystem, cartan: Vec | None = None, coeffs=None):
        self.system = system
        self.cartan = cartan if cartan is not None else (ZERO,) * system.dim
        self.coeffs = {r: c for r, c in (coeffs or {}).items() if c != 0}

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraElement)
            and self.system == other.system
            and self.cartan == other.cartan
            and self.coeffs == other.coeffs
        )

    def __repr__(self):
        return f"AlgebraElement(cartan={self.cartan}, coeffs={self.coeffs})"

    def is_zero(self) -> bool:
        return is_zero(self.cartan) and not self.coeffs

    def add(self, other: "AlgebraElement") -> "AlgebraElement":
        coeffs = dict(self.coeffs)
        for r, c in other.coeffs.items():
            coeffs[r] = coeffs.get(r, ZERO) + c
        return AlgebraElement(self.system, vadd(self.cartan, other.cartan), coeffs)

    def scale(self, c) -> "AlgebraElement":
        c = Fraction(c)
        return AlgebraElement(
            self.system,
            vscale(c, self.cartan),
            {r: c * v for r, v in self.coeffs.items()},
        )

    def sub(self, other: "AlgebraElement") -> "AlgebraElement":
        return self.add(other.scale(-1))


def elem_e(rs: RootSystem, root: Vec, c=1) -> AlgebraElement:
    return AlgebraElement(rs, coeffs={root: Fraction(c)})


def elem_h(rs: RootSystem, v: Vec) -> AlgebraElement:
    return AlgebraElement(rs, cartan=tuple(Fraction(x) for x in v))


def bracket(sc: StructureConstants, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    rs = sc.system
    if x.system != rs or y.system != rs:
        raise SystemMismatch("elements belong to a different root system")
    cartan = [ZERO] * rs.dim
    coeffs: dict = {}
    for r, c in y.coeffs.items():
        v = vdot(r, x.cartan) * c
        if v != 0:
            coeffs[r] = coeffs.get(r, ZERO) + v
    for r, c in x.coeffs.items():
        v = vdot(r, y.cartan) * c
        if v != 0:
            coeffs[r] = coeffs.get(r, ZERO) - v
    for r1, c1 in x.coeffs.items():
        for r2, c2 in y.coeffs.items():
            s = vadd(r1, r2)
            if is_zero(s):
                h = vscale(c1 * c2, coroot(r1))
                cartan = [a + b for a, b in zip(cartan, h)]
            elif s in rs.root_set:
                coeffs[s] = coeffs.get(s, ZERO) + c1 * c2 * sc.n_table[(r1, r2)]
    return AlgebraElement(rs, tuple(cartan), coeffs)


def _coords(rs: RootSystem, x: AlgebraElement, order) -> list[Fraction]:
    return list(x.cartan) + [x.coeffs.get(r, ZERO) for r in order]


def ad_matrix(sc: StructureConstants, p: AlgebraElement, domain, codomain) -> list:
    """Matrix of ad_p: rows indexed by codomain, columns by domain.

    Raises NotInvariant when some image leaves the span of codomain.
    """
    rs = sc.system
    order = rs.roots
    cod_rows = [_coords(rs, b, order) for b in codomain]
    ncoords = len(cod_rows[0]) if cod_rows else 0
    matrix_rows = [[ZERO] * len(domain) for _ in codomain]
    # transpose of codomain coordinates: solve  sum_i t_i * cod[i] = image
    a_rows = [tuple(cr[k] for cr in cod_rows) for k in range(ncoords)]
    for j, b in enumerate(domain):
        img = bracket(sc, p, b)
        rhs = _coords(rs, img, order)
        t = linalg.solve(a_rows, rhs)
        if t is None:
            raise NotInvariant(f"image of domain element {j} is outside the codomain span")
        for i in range(len(codomain)):
            matrix_rows[i][j] = t[i]
    return matrix_rows
