from fractions import Fraction

import pytest

from lieconformal.chevalley import cached_constants
from lieconformal.constructions import (
    BracketRelation,
    align_g2_form,
    check_g2_relations,
    check_sl_embedding,
    check_so7_relations,
    check_so8_relations,
    check_sp_embedding,
    so7_relations,
    so8_relations,
    verify_relations_up_to_rescaling,
)
from lieconformal.errors import NoWitness, Unalignable
from lieconformal.invform import assemble, solve
from lieconformal.isotropy import PARABOLIC, derive_isotropy, parabolic_distortion, validate
from lieconformal.rootsys import build, vec


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_sp_embedding_exact(n):
    """Symplectic conjugation preserves omega with residual exactly 0."""
    out = check_sp_embedding(n, trials=100, seed=1000 + n)
    assert out["ok"]
    assert out["max_residual"] == 0
    assert out["trials"] == 100


@pytest.mark.parametrize("n", [3, 4, 5])
def test_sl_embedding_exact(n):
    out = check_sl_embedding(n, trials=100, seed=2000 + n)
    assert out["ok"]
    assert out["max_residual"] == 0
    assert out["codimension"] == 1


def test_sl_embedding_needs_rank_three():
    with pytest.raises(ValueError):
        check_sl_embedding(2)


def test_g2_relations_consistent():
    out = check_g2_relations()
    assert out["consistent"]
    assert out["relations"] >= 6


def test_so7_so8_relations_inconsistent():
    """The six-term so(7)/so(8) sign cycles admit no diagonal rescaling."""
    for out in (check_so7_relations(), check_so8_relations()):
        assert out["consistent"] is False
        assert out["conflict"]


def test_relation_cycle_ratio_is_basis_invariant():
    """The product of constants around each closed cycle has the wrong sign."""
    sc = cached_constants("B", 3)
    with pytest.raises(NoWitness):
        verify_relations_up_to_rescaling(sc, so7_relations())
    sc8 = cached_constants("D", 4)
    with pytest.raises(NoWitness):
        verify_relations_up_to_rescaling(sc8, so8_relations())


def test_verify_relations_finds_witness():
    """A single true relation admits the identity rescaling."""
    sc = cached_constants("A", 2)
    a, b = vec(1, -1, 0), vec(0, 1, -1)
    rel = BracketRelation(a, b, vec(1, 0, -1), Fraction(1))
    out = verify_relations_up_to_rescaling(sc, [rel])
    assert out["witness"]
    assert out["relations"] == 1


def test_align_g2_form():
    """The solved G2 form matches the reference pattern after rescaling."""
    rs = build("G2", 2)
    cfg = derive_isotropy(rs, parabolic_distortion(rs, rs.simples[0]), PARABOLIC)
    assert validate(cfg).ok
    sc = cached_constants("G2", 2)
    system = assemble(sc, cfg)
    sol = solve(system)
    assert sol.dimension == 1
    out = align_g2_form(system, sol.nondegenerate_witness)
    assert out["global_scale"] == Fraction(2, 3)
    assert set(out["scalars"].values()) <= {Fraction(1), Fraction(-1)}


def test_align_g2_rejects_wrong_pattern():
    rs = build("G2", 2)
    cfg = derive_isotropy(rs, parabolic_distortion(rs, rs.simples[0]), PARABOLIC)
    validate(cfg)
    sc = cached_constants("G2", 2)
    system = assemble(sc, cfg)
    bad = tuple(Fraction(0) for _ in solve(system).nondegenerate_witness)
    with pytest.raises((Unalignable, ZeroDivisionError)):
        align_g2_form(system, bad)
