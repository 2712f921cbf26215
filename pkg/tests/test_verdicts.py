import math
import random

import pytest
from hypothesis import assume, given

from conftest import domains, unimodular
from reinhardt.automorphisms import aut_group
from reinhardt.corpus import SQRT2, golden_corpus
from reinhardt.domain_model import (
    AxisAmbiguity,
    DomainDesc,
    MonomialConstraint,
    MonomialMap,
    Parabola,
    UnrepresentableImage,
    transform,
)
from reinhardt.exact_arith import QuadExt
from reinhardt.verdicts import (
    DSTAR_PELL,
    FULL,
    NOT_IN_S,
    OUT_OF_SCOPE,
    STRIP_RATIONAL,
    U_ANNULUS,
    U_PLUS,
    U_PSI,
    U_STAR,
    OutsideDomain,
    StehleWitness,
    boundary_sequence,
    core_pullback,
    serre_verdict,
    stehle_eval,
    stehle_invariance_check,
    stehle_witness,
)

CORPUS = golden_corpus()


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_corpus_branches(name):
    desc, branch = CORPUS[name]
    v = serre_verdict(desc)
    assert v.branch == branch
    if branch == OUT_OF_SCOPE:
        assert v.in_s is None
    else:
        assert v.in_s == (branch not in NOT_IN_S)
    assert (v.witness is not None) == (branch == DSTAR_PELL)


def test_verdict_examples():
    v = serre_verdict(CORPUS["CxCstar"][0])
    assert (v.in_s, v.branch) == (False, FULL)
    v = serre_verdict(CORPUS["Dstar_1_sqrt2"][0])
    assert v.in_s is False and v.witness.rows() == ((1, 2), (2, 5)) and v.witness.trace == 6
    v = serre_verdict(CORPUS["z1z2_lt_1"][0])
    assert (v.in_s, v.branch) == (True, STRIP_RATIONAL)


def test_pell_witness_contract():
    for alpha in (SQRT2, 1 + SQRT2, QuadExt.of(0, 1, 3), QuadExt.of(1, -1, 5) / 2):
        desc = DomainDesc((MonomialConstraint(1, alpha, None, 0),))
        v = serre_verdict(desc)
        if v.branch != DSTAR_PELL:
            continue
        g, beta = v.witness, v.normal_form.beta
        assert g.det == 1 and g.trace >= 4
        assert beta * (g.k1 + g.l1 * beta) == g.k2 + g.l2 * beta
        assert g.k1 + g.l1 * beta > 0


def test_stehle_eval_examples():
    u_plus = StehleWitness(U_PLUS, alpha=SQRT2)
    assert abs(stehle_eval(u_plus, -1.0, 0.0) - 1.5819767068693265) <= 1e-12
    u_psi = StehleWitness(U_PSI, parabola=Parabola(-1))
    assert stehle_eval(u_psi, -1.0, 0.0) == 1.0
    values = [stehle_eval(u_plus, -10.0 ** -j, 0.0) for j in range(1, 9)]
    assert values == sorted(values) and values[-1] > 1e6
    with pytest.raises(OutsideDomain):
        stehle_eval(u_plus, 0.5, 0.0)


def test_annulus_flip_is_exact():
    w = StehleWitness(U_ANNULUS, alpha=SQRT2, log_r=QuadExt.of(1))
    flip = MonomialMap(((-1, 0), (0, -1)))
    assert core_pullback(w, flip) == -1
    assert stehle_invariance_check(w, aut_group(CORPUS["D_sqrt2_r"][0]).families).ok


def test_parabolic_shear_preserves_core():
    ctx = stehle_witness(CORPUS["parabolic"][0])
    assert ctx.witness.formula == U_PSI
    m = ctx.group.families[0].shear.to_map()
    assert core_pullback(ctx.witness, m) == 1
    rep = stehle_invariance_check(ctx.witness, ctx.group.families)
    assert rep.ok and rep.points > 0


@pytest.mark.parametrize("name", ["D_sqrt2", "D_sqrt2_r", "parabolic"])
def test_in_s_witnesses_are_invariant(name):
    ctx = stehle_witness(CORPUS[name][0])
    rep = stehle_invariance_check(ctx.witness, ctx.group.families, instances=100)
    assert rep.instances == 100 and rep.ok, rep.exact_failures[:3]


def test_u_star_breaks_under_pell_maps():
    ctx = stehle_witness(CORPUS["Dstar_1_sqrt2"][0])
    assert ctx.witness.formula == U_STAR
    # the core is invariant only up to the factor k1 + l1 alpha > 1
    rep = stehle_invariance_check(ctx.witness, ctx.group.families, instances=40)
    assert rep.exact_failures


@pytest.mark.parametrize("name", ["D_sqrt2", "D_sqrt2_r", "parabolic", "Dstar_1_sqrt2"])
def test_boundary_divergence(name):
    w = stehle_witness(CORPUS[name][0]).witness
    rng = random.Random(7)
    for _ in range(10):
        seq = boundary_sequence(w, rng)
        values = [stehle_eval(w, t, s) for t, s in seq]
        assert values[-1] > 1e6
        assert all(math.isfinite(v) for v in values)


def test_rational_strips_have_no_witness():
    assert stehle_witness(CORPUS["Dstar_2_3"][0]) is None
    assert stehle_witness(CORPUS["D1"][0]) is None


@pytest.mark.parametrize("name", sorted(set(CORPUS) - {"parabolic"}))
def test_swap_invariance(name):
    desc = CORPUS[name][0]
    assert serre_verdict(desc.swapped()).branch == serre_verdict(desc).branch


@given(domains(), unimodular())
def test_verdict_invariant_under_equivalence(desc, mat):
    try:
        img = transform(desc, MonomialMap(mat))
    except AxisAmbiguity:
        assume(False)
    a, b = serre_verdict(desc), serre_verdict(img)
    assert (a.in_s, a.branch) == (b.in_s, b.branch)


def test_parabolic_swap_is_unrepresentable():
    # the swapped domain is {s < psi(t)}, which the description language lacks
    with pytest.raises(UnrepresentableImage):
        CORPUS["parabolic"][0].swapped()
