"""Exhaustive candidate enumeration and elimination.

Three families of candidates exist for an essential structure on G/H:

* Case1 - the distortion is a root with an orthogonal pairing partner;
  candidates are diagonal Weyl orbits of constrained root pairs.
* Case2 - the distortion is the minimal root and every positive root
  space lies in the kernel; the candidate exists only when the forced
  coroots leave room in the Cartan.
* Parabolic - the kernel contains a Borel; one candidate per simple
  root, with distortion (minimal root - simple root).  The reducible
  rank-2 product contributes the product-of-Borels candidate.

Every candidate is judged by the shared pipeline: fast root
combinatorics, then kernel closure, then the exact form solver.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import invform, isotropy
from .chevalley import cached_constants
from .errors import Inconsistent, Reducible
from .isotropy import CASE1, CASE2, LOWRANK, PARABOLIC, Distortion, derive_isotropy, validate
from .rootsys import (
    RootSystem,
    Vec,
    build,
    is_zero,
    minimal_root,
    vadd,
    vdot,
    vneg,
    vsub,
    weyl_reflect,
)

STAGE_ROOTS = "RootCombinatorics"
STAGE_CLOSURE = "IsotropyClosure"
STAGE_SOLVER = "SolverFeasibility"
STAGE_SURVIVOR = "Survivor"

BOREL_PRODUCT = "borel-product"


@dataclass
class CandidateVerdict:
    label: str
    rank: int
    case: str
    delta: Vec | None
    alpha: Vec | None
    stage: str
    eliminated: bool
    witness: object = None
    survivor_label: str | None = None
    notes: tuple = ()
    solution_dimension: int | None = None

    def key(self):
        return (self.label, self.rank, self.case, self.alpha, self.delta)

    def survivor_key(self):
        return (self.label, self.rank, self.case, self.alpha, self.delta, self.survivor_label)


@dataclass
class ClassificationReport:
    max_rank: int
    cases: str
    verdicts: list = field(default_factory=list)
    survivors: list = field(default_factory=list)
    expected: set = field(default_factory=set)
    matches_expected: bool = False


def _systems(max_rank: int):
    out = [build("A", n) for n in range(1, max_rank + 1)]
    out += [build("B", n) for n in range(2, max_rank + 1)]
    out += [build("C", n) for n in range(2, max_rank + 1)]
    out += [build("D", n) for n in range(3, max_rank + 1)]
    out += [build("G2", 2), build("F4", 4), build("E6", 6), build("E7", 7), build("E8", 8)]
    out.append(build("A1xA1", 2))
    return out


def enumerate_case1(rs: RootSystem):
    """Canonical representatives (-delta, alpha) of constrained pair orbits."""
    if rs.label == "A1xA1":
        raise Reducible("Case1 needs an irreducible system")
    pairs = set()
    for m in rs.roots:
        for a in rs.roots:
            if m != a and vdot(m, a) == 0 and vadd(m, a) in rs.root_set:
                pairs.add((m, a))
    reps = []
    seen = set()
    for pair in sorted(pairs):
        if pair in seen:
            continue
        orbit = {pair}
        frontier = [pair]
        while frontier:
            nxt = []
            for x, y in frontier:
                for s in rs.simples:
                    img = (weyl_reflect(rs, s, x), weyl_reflect(rs, s, y))
                    if img not in orbit:
                        orbit.add(img)
                        nxt.append(img)
            frontier = nxt
        seen |= orbit
        reps.append(max(orbit))
    return sorted(reps, reverse=True)


def _judge(rs: RootSystem, delta: Distortion, case_tag: str, base: dict) -> CandidateVerdict:
    """Shared closure + solver pipeline for a derived candidate."""
    try:
        config = derive_isotropy(rs, delta, case_tag)
    except Inconsistent as exc:
        return CandidateVerdict(
            stage=STAGE_CLOSURE, eliminated=True, witness=str(exc), **base
        )
    report = validate(config)
    if not report.ok:
        return CandidateVerdict(
            stage=STAGE_CLOSURE, eliminated=True, witness=report.failures(), **base
        )
    sc = cached_constants(rs.label, rs.rank)
    system = invform.assemble(sc, config)
    solution = invform.solve(system)
    if not solution.feasible:
        return CandidateVerdict(
            stage=STAGE_SOLVER,
            eliminated=True,
            witness=solution.degeneracy_certificate,
            solution_dimension=solution.dimension,
            **base,
        )
    return CandidateVerdict(
        stage=STAGE_SURVIVOR,
        eliminated=False,
        solution_dimension=solution.dimension,
        **base,
    )


def eliminate_case1(rs: RootSystem, pair) -> CandidateVerdict:
    m, alpha = pair
    delta = Distortion(vneg(m), as_root=vneg(m))
    base = dict(label=rs.label, rank=rs.rank, case=CASE1, delta=vneg(m), alpha=alpha)
    verdict = _judge(rs, delta, CASE1, base)
    if not verdict.eliminated:
        verdict.survivor_label = "Sp_case"
        if rs.label == "B":
            verdict.notes = ("B2=C2",)
        elif rs.label == "C" and rs.rank == 2:
            verdict.notes = ("C2=B2",)
    return verdict


def enumerate_case2(rs: RootSystem):
    """Distortion candidate (the minimal root), or None when the forced
    coroots already fill the Cartan subalgebra."""
    if rs.label == "A1xA1":
        raise Reducible("Case2 needs an irreducible system")
    low = minimal_root(rs)
    span = [low] + [b for b in rs.positives if vdot(low, b) == 0]
    try:
        normal = isotropy._hyperplane_normal(rs, span)
    except Inconsistent:
        return None
    if normal is None:
        return None
    return Distortion(low, as_root=low)


def eliminate_case2(rs: RootSystem, delta: Distortion) -> CandidateVerdict:
    base = dict(label=rs.label, rank=rs.rank, case=CASE2, delta=delta.functional, alpha=None)
    verdict = _judge(rs, delta, CASE2, base)
    if not verdict.eliminated:
        verdict.survivor_label = "SL_case"
        if rs.label == "D" and rs.rank == 3:
            verdict.notes = ("D3=A3",)
    return verdict


def enumerate_parabolic(rs: RootSystem):
    """One candidate per simple root; the reducible product yields the
    product-of-Borels candidate."""
    if rs.label == "A1xA1":
        return [BOREL_PRODUCT]
    return list(rs.simples)


def eliminate_parabolic(rs: RootSystem, candidate) -> CandidateVerdict:
    if candidate == BOREL_PRODUCT:
        a, b = rs.simples
        delta = Distortion(vneg(vadd(a, b)), as_sum=(vneg(a), vneg(b)))
        base = dict(label=rs.label, rank=rs.rank, case=LOWRANK, delta=delta.functional, alpha=None)
        verdict = _judge(rs, delta, LOWRANK, base)
        if not verdict.eliminated:
            verdict.survivor_label = "CP1xCP1"
        return verdict
    alpha = candidate
    delta = isotropy.parabolic_distortion(rs, alpha)
    dvec = delta.functional
    case = LOWRANK if rs.rank == 1 else PARABOLIC
    base = dict(label=rs.label, rank=rs.rank, case=case, delta=dvec, alpha=alpha)
    # fast root-combinatorial stage: every root space outside the kernel
    # must be paired, i.e. delta + beta must be a root or zero for every
    # positive beta whose expansion involves alpha
    a_index = rs.simples.index(alpha)
    for beta in rs.positives:
        if rs.expansions[beta][a_index] == 0:
            continue
        s = vadd(dvec, beta)
        if not is_zero(s) and s not in rs.root_set:
            return CandidateVerdict(
                stage=STAGE_ROOTS, eliminated=True, witness=("unpaired", vneg(beta)), **base
            )
    verdict = _judge(rs, delta, case, base)
    if not verdict.eliminated:
        verdict.survivor_label = _parabolic_survivor_label(rs, alpha)
        verdict.notes = _parabolic_notes(rs, alpha)
    return verdict


def _parabolic_survivor_label(rs: RootSystem, alpha):
    if rs.rank == 1:
        return "CP1"
    if rs.label == "G2":
        return "G2_Eins5"
    if (rs.label == "B" and rs.rank == 2) or (rs.label == "C" and rs.rank == 2):
        return "Eins3_B2"
    if rs.label == "B":
        if rs.rank == 3 and sum(1 for c in alpha if c != 0) == 1:
            return "Spin7_Eins6"
        return "Einstein_Bn"
    if rs.label in ("D", "A"):
        return "Einstein_Dn"
    return None


def _parabolic_notes(rs: RootSystem, alpha):
    if rs.label == "C" and rs.rank == 2:
        return ("C2=B2",)
    if rs.label == "A" and rs.rank == 3:
        return ("A3=D3",)
    if rs.label == "D" and rs.rank == 3:
        return ("D3=A3",)
    if rs.label == "B" and rs.rank == 3 and sum(1 for c in alpha if c != 0) == 1:
        return ("Spin7 subgroup acting on the same quadric Eins6",)
    if rs.label == "D" and rs.rank == 4 and alpha[0] == 0:
        return ("triality image of the alpha=e1-e2 candidate",)
    return ()


def expected_survivors(max_rank: int, cases: str = "all") -> set:
    """Survivor table implied by the classification theorem, including
    low-rank coincidences (reported with notes, never suppressed)."""
    out = set()

    def add(label, rank, case, alpha, delta, tag):
        out.add((label, rank, case, alpha, delta, tag))

    def fr(*xs):
        from fractions import Fraction as F

        return tuple(F(x) for x in xs)

    if cases in ("all", "case1"):
        add("B", 2, CASE1, fr(0, 1), fr(-1, 0), "Sp_case")
        for n in range(2, max_rank + 1):
            delta = fr(*[-1 if k in (0, 1) else 0 for k in range(n)])
            alpha = fr(*[1 if k == 0 else (-1 if k == 1 else 0) for k in range(n)])
            add("C", n, CASE1, alpha, delta, "Sp_case")
    if cases in ("all", "case2"):
        for n in range(2, max_rank + 1):
            delta = fr(*[-1 if k == 0 else (1 if k == n else 0) for k in range(n + 1)])
            add("A", n, CASE2, None, delta, "SL_case")
        if max_rank >= 3:
            # the D3 = A3 coincidence enters through the D-series sweep
            add("D", 3, CASE2, None, fr(-1, -1, 0), "SL_case")
    if cases in ("all", "parabolic"):
        add("A", 1, LOWRANK, fr(1, -1), fr(-2, 2), "CP1")
        add("A1xA1", 2, LOWRANK, None, fr(-1, 1, -1, 1), "CP1xCP1")
        if max_rank >= 3:
            add("A", 3, PARABOLIC, fr(0, 1, -1, 0), fr(-1, -1, 1, 1), "Einstein_Dn")
        add("B", 2, PARABOLIC, fr(1, -1), fr(-2, 0), "Eins3_B2")
        add("C", 2, PARABOLIC, fr(0, 2), fr(-2, -2), "Eins3_B2")
        for n in range(3, max_rank + 1):
            alpha = fr(*[1 if k == 0 else (-1 if k == 1 else 0) for k in range(n)])
            delta = fr(*[-2 if k == 0 else 0 for k in range(n)])
            add("B", n, PARABOLIC, alpha, delta, "Einstein_Bn")
            add("D", n, PARABOLIC, alpha, delta, "Einstein_Dn")
        if max_rank >= 3:
            # Spin(7) on the six-dimensional quadric (spinor variety)
            add("B", 3, PARABOLIC, fr(0, 0, 1), fr(-1, -1, -1), "Spin7_Eins6")
        if max_rank >= 4:
            # triality relabelings of the D4 alpha=e1-e2 candidate
            add("D", 4, PARABOLIC, fr(0, 0, 1, -1), fr(-1, -1, -1, 1), "Einstein_Dn")
            add("D", 4, PARABOLIC, fr(0, 0, 1, 1), fr(-1, -1, -1, -1), "Einstein_Dn")
        add("G2", 2, PARABOLIC, fr(1, -1, 0), fr(0, 2, -2), "G2_Eins5")
    return out


def classify_all(max_rank: int, cases: str = "all") -> ClassificationReport:
    if max_rank < 2:
        raise ValueError("max_rank must be at least 2")
    verdicts = []
    for rs in _systems(max_rank):
        if cases in ("all", "case1") and rs.label != "A1xA1":
            for pair in enumerate_case1(rs):
                verdicts.append(eliminate_case1(rs, pair))
        if cases in ("all", "case2") and rs.label != "A1xA1":
            delta = enumerate_case2(rs)
            if delta is None:
                verdicts.append(
                    CandidateVerdict(
                        label=rs.label,
                        rank=rs.rank,
                        case=CASE2,
                        delta=minimal_root(rs),
                        alpha=None,
                        stage=STAGE_ROOTS,
                        eliminated=True,
                        witness="forced coroots fill the Cartan",
                    )
                )
            else:
                verdicts.append(eliminate_case2(rs, delta))
        if cases in ("all", "parabolic"):
            for cand in enumerate_parabolic(rs):
                verdicts.append(eliminate_parabolic(rs, cand))
    verdicts.sort(key=lambda v: (v.label, v.rank, v.case, v.alpha or (), v.delta or ()))
    survivors = [v for v in verdicts if not v.eliminated]
    expected = expected_survivors(max_rank, cases)
    got = {v.survivor_key() for v in survivors}
    return ClassificationReport(
        max_rank=max_rank,
        cases=cases,
        verdicts=verdicts,
        survivors=survivors,
        expected=expected,
        matches_expected=(got == expected),
    )
