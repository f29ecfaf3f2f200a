"""Derivation of the isotropy subalgebra forced by a distortion functional.

Given a distortion delta on the Cartan subalgebra, the kernel h of the
degenerate invariant form is pinned down by the pairing rule: the root
space of r avoids h exactly when delta - r is a root or zero.  The
forced set is then closed under brackets with the Borel and with itself;
any contradiction (a paired root pulled into the kernel, an opposite
pair whose coroot leaves the allowed Cartan part, the closure swallowing
the whole algebra) is raised as `Inconsistent` and counts as an
elimination verdict for the candidate, not as an error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction

from . import linalg
from .errors import Inconsistent, NotValidated, Reducible
from .rootsys import (
    RootSystem,
    Vec,
    coroot,
    is_zero,
    minimal_root,
    vadd,
    vdot,
    vneg,
    vscale,
    vsub,
    weyl_reflect,
)

CASE1 = "Case1"
CASE2 = "Case2"
PARABOLIC = "Parabolic"
LOWRANK = "LowRank"

CASE_TAGS = (CASE1, CASE2, PARABOLIC, LOWRANK)

ZERO_WEIGHT = "0"
CARTAN_LABEL = "cartan"


@dataclass(frozen=True)
class Distortion:
    """Nonzero functional on the Cartan, identified with an ambient vector."""

    functional: Vec
    as_root: Vec | None = None
    as_sum: tuple[Vec, Vec] | None = None

    def __post_init__(self):
        if is_zero(self.functional):
            raise ValueError("distortion functional must be nonzero")


@dataclass
class IsotropyConfig:
    case_tag: str
    system: RootSystem
    delta: Distortion
    cartan_full: bool
    cartan_normal: Vec | None  # hyperplane normal inside the Cartan, if any
    h_roots: frozenset
    p_roots: frozenset
    validated: bool = False
    alpha: Vec | None = None  # Case1 orthogonal root / parabolic simple root


@dataclass
class ValidationReport:
    ok: bool
    checks: list = field(default_factory=list)

    def failures(self):
        return [c for c in self.checks if not c[1]]


def pairing_partner(rs: RootSystem, delta: Distortion, alpha: Vec):
    """Partner of a root label under the pairing rule, if any."""
    m = vsub(delta.functional, alpha)
    if is_zero(m):
        return ZERO_WEIGHT
    if m in rs.root_set:
        return m
    return None


def _paired_set(rs: RootSystem, dvec: Vec) -> set:
    out = set()
    for r in rs.roots:
        m = vsub(dvec, r)
        if is_zero(m) or m in rs.root_set:
            out.add(r)
    return out


def _cartan_basis(rs: RootSystem) -> list[Vec]:
    """Coroots of the simple roots; a basis of the Cartan subspace."""
    return [coroot(s) for s in rs.simples]


def _hyperplane_normal(rs: RootSystem, span_rows: list[Vec]):
    """Normal (inside the Cartan subspace) of the span; None if it fills it.

    Raises Inconsistent if the span has codimension greater than one,
    which does not occur for the canonical systems handled here.
    """
    basis = _cartan_basis(rs)
    # coordinates of the orthocomplement within the Cartan subspace
    rows = [tuple(vdot(s, b) for b in basis) for s in span_rows]
    null = linalg.nullspace(rows, len(basis))
    if not null:
        return None
    if len(null) > 1:
        raise Inconsistent("forced Cartan part has codimension > 1", witness=span_rows)
    coeffs = null[0]
    normal = (Fraction(0),) * rs.dim
    for c, b in zip(coeffs, basis):
        normal = vadd(normal, tuple(c * x for x in b))
    # deterministic primitive scaling
    nz = [x for x in normal if x != 0]
    scale = Fraction(1) / nz[0]
    normal = tuple(scale * x for x in normal)
    den = 1
    for x in normal:
        den = den * x.denominator // math.gcd(den, x.denominator)
    return tuple(x * den for x in normal)


def parabolic_distortion(rs: RootSystem, alpha: Vec) -> Distortion:
    low = minimal_root(rs)
    return Distortion(vsub(low, alpha), as_sum=(low, vneg(alpha)))


def _closure(rs, dvec, forced, cartan_normal):
    """Close the forced kernel root set; return the stable set."""
    pos = set(rs.positives)
    s = set(forced)
    changed = True
    while changed:
        changed = False
        p_roots = pos | s
        for beta in list(s):
            for gamma in p_roots:
                total = vadd(beta, gamma)
                if total in rs.root_set and total not in s:
                    s.add(total)
                    changed = True
        for beta in list(s):
            if vdot(dvec, beta) == 0 and vneg(beta) not in s:
                s.add(vneg(beta))  # the whole sl2 of beta sits inside h
                changed = True
        if cartan_normal is not None:
            nu = cartan_normal
            for lam in pos:
                if lam in s:
                    continue
                # lam vanishes on the hyperplane nu-perp iff lam is
                # proportional to nu; otherwise the ideal property forces
                # its root space into the kernel
                proj = vsub(lam, vscale(vdot(lam, nu) / vdot(nu, nu), nu))
                if not is_zero(proj):
                    s.add(lam)
                    changed = True
    return s


def _final_checks(rs, dvec, s, cartan_normal, paired):
    bad = sorted(s & paired)
    if bad:
        raise Inconsistent(
            f"paired root {bad[0]} forced into the kernel", witness=bad[0]
        )
    unpaired = set(rs.roots) - paired
    missing = sorted(unpaired - s)
    if missing:
        raise Inconsistent(
            f"unpaired root {missing[0]} left outside the kernel", witness=missing[0]
        )
    if len(s) == len(rs.roots):
        raise Inconsistent("kernel closure swallows the whole algebra")
    pos = set(rs.positives)
    if cartan_normal is not None:
        for beta in s:
            if (vneg(beta) in s or vneg(beta) in pos) and vdot(cartan_normal, beta) != 0:
                raise Inconsistent(
                    f"coroot of {beta} escapes the Cartan hyperplane", witness=beta
                )


def derive_isotropy(rs: RootSystem, delta: Distortion, case_tag: str) -> IsotropyConfig:
    if case_tag not in CASE_TAGS:
        raise ValueError(f"unknown case tag {case_tag!r}")
    dvec = delta.functional
    pos = set(rs.positives)
    paired = _paired_set(rs, dvec)
    alpha = None

    if case_tag in (CASE1, CASE2):
        if rs.label == "A1xA1":
            raise Reducible("Case1/Case2 need an irreducible system")
        if dvec not in rs.root_set:
            raise Inconsistent("distortion must be a root in this case", witness=dvec)
        if dvec in pos:
            raise Inconsistent("distortion root must be negative", witness=dvec)
        forced = set(rs.roots) - paired
        if case_tag == CASE1:
            candidates = [
                a for a in rs.positives if vdot(dvec, a) == 0 and vsub(dvec, a) in rs.root_set
            ]
            if not candidates:
                raise Inconsistent("no orthogonal pairing partner for the distortion")
            if len(candidates) > 1:
                raise Inconsistent(
                    "multiple orthogonal pairing partners", witness=tuple(candidates)
                )
            alpha = candidates[0]
            cartan_normal = alpha
        else:
            if dvec != minimal_root(rs):
                raise Inconsistent("Case2 distortion must be the minimal root", witness=dvec)
            span = [dvec] + [b for b in rs.positives if vdot(dvec, b) == 0]
            cartan_normal = _hyperplane_normal(rs, span)
            if cartan_normal is None:
                raise Inconsistent("forced coroots fill the whole Cartan", witness=dvec)
        s = _closure(rs, dvec, forced, cartan_normal)
        _final_checks(rs, dvec, s, cartan_normal, paired)
        return IsotropyConfig(
            case_tag=case_tag,
            system=rs,
            delta=delta,
            cartan_full=False,
            cartan_normal=cartan_normal,
            h_roots=frozenset(s),
            p_roots=frozenset(pos | s),
            alpha=alpha,
        )

    if case_tag in (PARABOLIC, LOWRANK) and rs.label == "A1xA1":
        a, b = rs.simples
        expect = vneg(vadd(a, b))
        if dvec != expect:
            raise Inconsistent("product-of-Borels distortion mismatch", witness=dvec)
        return IsotropyConfig(
            case_tag=LOWRANK,
            system=rs,
            delta=delta,
            cartan_full=True,
            cartan_normal=None,
            h_roots=frozenset({a, b}),
            p_roots=frozenset({a, b}),
        )

    # parabolic: delta = minimal root - alpha for a single simple root alpha
    low = minimal_root(rs)
    alpha = vsub(low, dvec)
    if alpha not in rs.simples:
        raise Inconsistent("distortion is not (minimal root - simple root)", witness=alpha)
    a_index = rs.simples.index(alpha)
    forced = set(rs.positives)
    for b in rs.positives:
        if rs.expansions[b][a_index] == 0:
            forced.add(vneg(b))
    s = _closure(rs, dvec, forced, None)
    _final_checks(rs, dvec, s, None, paired)
    tag = LOWRANK if rs.rank == 1 else PARABOLIC
    return IsotropyConfig(
        case_tag=tag,
        system=rs,
        delta=delta,
        cartan_full=True,
        cartan_normal=None,
        h_roots=frozenset(s),
        p_roots=frozenset(pos | s),
        alpha=alpha,
    )


def validate(config: IsotropyConfig) -> ValidationReport:
    """Independent re-check of all structural invariants of a configuration."""
    rs = config.system
    dvec = config.delta.functional
    s = set(config.h_roots)
    pos = set(rs.positives)
    checks = []

    def record(name, ok, witness=None):
        checks.append((name, ok, witness))

    # h is a subalgebra and an ideal of p = (Cartan + positives + h)
    ok, witness = True, None
    for beta in s:
        for gamma in config.p_roots:
            total = vadd(beta, gamma)
            if total in rs.root_set and total not in s:
                ok, witness = False, (beta, gamma)
    record("bracket closure of h under p", ok, witness)

    ok, witness = True, None
    if not config.cartan_full:
        nu = config.cartan_normal
        for beta in s:
            if (vneg(beta) in s or vneg(beta) in pos) and vdot(nu, beta) != 0:
                ok, witness = False, beta
    record("coroots of opposite kernel pairs stay in the Cartan part", ok, witness)

    paired = _paired_set(rs, dvec)
    bad = sorted(s & paired) + sorted((set(rs.roots) - paired) - s)
    record("kernel matches the pairing rule exactly", not bad, bad[0] if bad else None)

    record("h is a proper subalgebra", len(s) < len(rs.roots))
    record("p is a proper subalgebra", len(config.p_roots) < len(rs.roots))

    if config.case_tag == CASE1:
        record("Case1 distortion is a root", dvec in rs.root_set)
        record(
            "Case1 orthogonal root",
            config.alpha is not None
            and vdot(dvec, config.alpha) == 0
            and vsub(dvec, config.alpha) in rs.root_set,
        )
        record("Case1 Cartan part is a hyperplane", not config.cartan_full)
    elif config.case_tag == CASE2:
        record("Case2 distortion is the minimal root", dvec == minimal_root(rs))
        record("positive spaces inside h", pos <= s)
        record("Case2 Cartan part is a hyperplane", not config.cartan_full)
    elif config.case_tag == PARABOLIC:
        record("Borel inside h", pos <= s and config.cartan_full)
        missing = [a for a in rs.simples if vneg(a) not in s]
        record("exactly one simple root escapes h", len(missing) == 1, missing)
    else:  # LowRank
        record("Borel(s) inside h", pos <= s and config.cartan_full)

    report = ValidationReport(ok=all(c[1] for c in checks), checks=checks)
    if report.ok:
        config.validated = True
    return report


def quotient_basis(config: IsotropyConfig) -> list:
    """Labels of a basis of g/h: roots outside h (height, then lex) plus
    one Cartan label when the Cartan part of h is a hyperplane."""
    if not config.validated:
        raise NotValidated("validate the configuration before using it")
    rs = config.system
    labels = [r for r in rs.roots if r not in config.h_roots]
    labels.sort(key=lambda r: (sum(rs.expansions[r]), r))
    if not config.cartan_full:
        labels.append(CARTAN_LABEL)
    return labels


def translate_config(config: IsotropyConfig, word) -> IsotropyConfig:
    """Apply a Weyl word to every ingredient of a configuration.

    The result is marked validated: Weyl elements are automorphisms, so
    every structural invariant transports along them (the translated
    positivity is no longer the canonical one, which is exactly the point
    of the feasibility-invariance property).
    """
    rs = config.system

    def move(v):
        for mirror in word:
            v = weyl_reflect(rs, mirror, v)
        return v

    delta = Distortion(
        move(config.delta.functional),
        as_root=move(config.delta.as_root) if config.delta.as_root else None,
        as_sum=tuple(move(x) for x in config.delta.as_sum) if config.delta.as_sum else None,
    )
    return replace(
        config,
        delta=delta,
        cartan_normal=move(config.cartan_normal) if config.cartan_normal else None,
        h_roots=frozenset(move(r) for r in config.h_roots),
        p_roots=frozenset(move(r) for r in config.p_roots),
        alpha=move(config.alpha) if config.alpha is not None else None,
        validated=True,
    )
