"""Exact solver for the degenerate invariant bilinear form.

The form lives on g with kernel h, so it is encoded by its values on the
quotient labels.  Labels pair only when their weights add up to the
distortion, which leaves a short vector of unknowns; invariance against
every basis element of the normalizer p gives a homogeneous linear
system over Q.  Feasibility means the solution space contains a
nondegenerate point, certified by an exact Gram determinant; otherwise
the generic determinant (a polynomial in the solution parameters) is
certified to vanish identically.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

import sympy

from . import linalg
from .chevalley import AlgebraElement, StructureConstants, bracket, elem_e, elem_h
from .errors import NotValidated, ResidualNonzero
from .isotropy import CARTAN_LABEL, IsotropyConfig, quotient_basis
from .rootsys import coroot, is_zero, vadd, vdot, vneg, vsub

ZERO = Fraction(0)

_PRIMES = (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67)


@dataclass
class FormUnknowns:
    labels: list
    pairs: list  # index pairs (i, j), i <= j, with weight_i + weight_j = delta
    pair_index: dict = field(default_factory=dict, repr=False)
    label_index: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not self.pair_index:
            self.pair_index = {p: k for k, p in enumerate(self.pairs)}
        if not self.label_index:
            self.label_index = {l: i for i, l in enumerate(self.labels)}

    def index(self, i: int, j: int):
        key = (i, j) if i <= j else (j, i)
        return self.pair_index.get(key)


@dataclass
class AssembledSystem:
    config: IsotropyConfig
    unknowns: FormUnknowns
    rows: list = field(repr=False)


@dataclass
class FormSolution:
    dimension: int
    basis: list
    nondegenerate_witness: tuple | None
    degeneracy_certificate: str | None
    residual: Fraction

    @property
    def feasible(self) -> bool:
        return self.nondegenerate_witness is not None


def _label_weight(config: IsotropyConfig, label):
    if label == CARTAN_LABEL:
        return (ZERO,) * config.system.dim
    return label


def _label_element(config: IsotropyConfig, label) -> AlgebraElement:
    rs = config.system
    if label == CARTAN_LABEL:
        return elem_h(rs, config.cartan_normal)
    return elem_e(rs, label)


def form_unknowns(config: IsotropyConfig) -> FormUnknowns:
    labels = quotient_basis(config)
    dvec = config.delta.functional
    weights = [_label_weight(config, l) for l in labels]
    pairs = [
        (i, j)
        for i in range(len(labels))
        for j in range(i, len(labels))
        if vadd(weights[i], weights[j]) == dvec
    ]
    return FormUnknowns(labels=labels, pairs=pairs)


def _generators(sc: StructureConstants, config: IsotropyConfig):
    """Basis of p with the distortion value of each element."""
    rs = sc.system
    dvec = config.delta.functional
    gens = []
    for s in rs.simples:
        h = coroot(s)
        gens.append((elem_h(rs, h), vdot(dvec, h)))
    for gamma in sorted(config.p_roots):
        gens.append((elem_e(rs, gamma), ZERO))
    return gens


def _project(config: IsotropyConfig, elt: AlgebraElement, label_index):
    """Coefficients of an algebra element on the quotient labels."""
    out = {}
    for r, c in elt.coeffs.items():
        if r not in config.h_roots:
            i = label_index[r]
            out[i] = out.get(i, ZERO) + c
    if not config.cartan_full and not is_zero(elt.cartan):
        nu = config.cartan_normal
        t = vdot(nu, elt.cartan) / vdot(nu, nu)
        if t != 0:
            i = label_index[CARTAN_LABEL]
            out[i] = out.get(i, ZERO) + t
    return out


def assemble(sc: StructureConstants, config: IsotropyConfig) -> AssembledSystem:
    if not config.validated:
        raise NotValidated("validate the configuration before assembling")
    unknowns = form_unknowns(config)
    labels = unknowns.labels
    nunk = len(unknowns.pairs)
    rows = set()
    basis_elems = [_label_element(config, l) for l in labels]
    for p, dval in _generators(sc, config):
        actions = [
            _project(config, bracket(sc, p, b), unknowns.label_index) for b in basis_elems
        ]
        for i in range(len(labels)):
            for j in range(i, len(labels)):
                row = [ZERO] * nunk
                used = False
                for k, c in actions[i].items():
                    u = unknowns.index(k, j)
                    if u is not None:
                        row[u] += c
                        used = True
                for k, c in actions[j].items():
                    u = unknowns.index(i, k)
                    if u is not None:
                        row[u] += c
                        used = True
                if dval != 0:
                    u = unknowns.index(i, j)
                    if u is not None:
                        row[u] -= dval
                        used = True
                if used and any(x != 0 for x in row):
                    rows.add(tuple(row))
    return AssembledSystem(config=config, unknowns=unknowns, rows=sorted(rows))


def gram_matrix(system: AssembledSystem, coeffs):
    """Gram matrix of the form on the quotient labels for given unknowns."""
    labels = system.unknowns.labels
    n = len(labels)
    gram = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            u = system.unknowns.index(i, j)
            if u is not None:
                gram[i][j] = Fraction(coeffs[u])
    return gram


def _max_residual(system: AssembledSystem, coeffs) -> Fraction:
    worst = ZERO
    for row in system.rows:
        r = abs(sum(a * b for a, b in zip(row, coeffs)))
        worst = max(worst, r)
    return worst


def solve(system: AssembledSystem) -> FormSolution:
    nunk = len(system.unknowns.pairs)
    basis = linalg.nullspace(list(system.rows), nunk)
    dim = len(basis)
    if dim == 0:
        return FormSolution(0, [], None, "solution space is zero", ZERO)
    residual = max((_max_residual(system, b) for b in basis), default=ZERO)
    if residual != 0:
        raise ResidualNonzero(f"nullspace basis has residual {residual}")

    ts = sympy.symbols(f"t0:{dim}")
    n = len(system.unknowns.labels)
    generic = sympy.zeros(n, n)
    for k, b in enumerate(basis):
        gram = gram_matrix(system, b)
        for i in range(n):
            for j in range(n):
                if gram[i][j] != 0:
                    generic[i, j] += ts[k] * sympy.Rational(gram[i][j])
    poly = sympy.expand(generic.det(method="berkowitz"))
    if poly == 0:
        return FormSolution(dim, basis, None, "generic Gram determinant is identically zero", ZERO)

    def combine(weights):
        out = [ZERO] * nunk
        for w, b in zip(weights, basis):
            for i, x in enumerate(b):
                out[i] += Fraction(w) * x
        return tuple(out)

    candidates = [tuple(_PRIMES[:dim])]
    candidates.extend(product(range(1, dim + 3), repeat=dim))
    for weights in candidates:
        if poly.subs(dict(zip(ts, weights))) != 0:
            witness = combine(weights)
            if _max_residual(system, witness) != 0:
                raise ResidualNonzero("witness fails the assembled constraints")
            return FormSolution(dim, basis, witness, None, ZERO)
    raise RuntimeError("nonzero generic determinant but no witness found")


def verify_invariance(sc: StructureConstants, config: IsotropyConfig, coeffs):
    """Re-check invariance by direct bracket evaluation over all of p.

    Independent of `assemble`: evaluates the form on actual algebra
    elements rather than through precomputed action rows.  Raises
    ResidualNonzero on the first violated constraint.
    """
    if not config.validated:
        raise NotValidated("validate the configuration before verifying")
    unknowns = form_unknowns(config)
    labels = unknowns.labels
    dvec = config.delta.functional

    def form(x: AlgebraElement, y: AlgebraElement) -> Fraction:
        px = _project(config, x, unknowns.label_index)
        py = _project(config, y, unknowns.label_index)
        total = ZERO
        for i, ci in px.items():
            for j, cj in py.items():
                u = unknowns.index(i, j)
                if u is not None:
                    total += ci * cj * Fraction(coeffs[u])
        return total

    basis_elems = [_label_element(config, l) for l in labels]
    checked = 0
    for p, dval in _generators(sc, config):
        for i, u in enumerate(basis_elems):
            for v in basis_elems[i:]:
                lhs = form(bracket(sc, p, u), v) + form(u, bracket(sc, p, v))
                rhs = dval * form(u, v)
                if lhs != rhs:
                    raise ResidualNonzero(
                        f"invariance fails for generator {p!r} on a label pair: "
                        f"{lhs} != {rhs}"
                    )
                checked += 1
    return {"constraints_checked": checked, "max_residual": ZERO}
