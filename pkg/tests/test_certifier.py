from fractions import Fraction

import numpy as np
import pytest

import qconn.certifier as certifier_mod
from qconn import (
    CONDITION_NOT_MET,
    EXCEPTIONAL_FAMILY,
    HYPOTHESIS_FAILED,
    K_CONNECTED_CERTIFIED,
    UNDECIDED_NUMERIC,
    ExtremalParams,
    build_A,
    certify,
    check_lemma_2_3,
    check_lemma_3_1,
    check_lemma_3_2,
    check_lemma_3_3,
    check_lemma_3_7,
    check_lemma_3_8,
    check_orderings,
    complete,
    cycle,
    dirac_condition,
    enumerate_Eprime_orbits,
    is_connected,
    is_k_connected,
    iter_labeled_graphs,
    make_member,
    q_index,
    select_max_member,
    verify_eigen_identity,
    verify_theorem_proof_chain,
)

PARAMS = ExtremalParams(103, 3, 3)


# -- certify pipeline -----------------------------------------------------------


def test_certify_complete_103():
    v = certify(complete(103), 3)
    assert v.outcome == K_CONNECTED_CERTIFIED
    assert v.threshold == 200 and v.delta_effective == 3
    assert v.spectral.lower >= 200
    assert abs(v.spectral.value - 204.0) <= 1e-8
    assert v.connectivity.kappa == 102
    assert not v.theorem_violation


def test_certify_intact_A():
    g, _ = build_A(PARAMS)
    v = certify(g, 3)
    assert v.outcome == EXCEPTIONAL_FAMILY
    assert v.membership is not None
    assert v.membership.family_class == "A1"
    assert v.membership.removed_edges == ()
    assert v.connectivity is not None and len(v.connectivity.cut) == 2
    assert not v.theorem_violation


def test_certify_cycle_103():
    v = certify(cycle(103), 3)
    assert v.outcome == HYPOTHESIS_FAILED
    assert not v.hypothesis["min_degree_ge_k"]
    assert v.spectral is not None  # numeric data still emitted


def test_certify_all_family_representatives():
    for size in range(PARAMS.eprime_bound + 1):
        for rep in enumerate_Eprime_orbits(PARAMS, size):
            member = make_member(PARAMS, rep)
            v = certify(member.graph, 3)
            assert v.outcome == EXCEPTIONAL_FAMILY, (size, rep, v.outcome)
            assert len(v.membership.removed_edges) == len(rep)
            assert not v.theorem_violation
    for rep in enumerate_Eprime_orbits(PARAMS, 2):
        member = make_member(PARAMS, rep)
        v = certify(member.graph, 3)
        assert v.outcome == CONDITION_NOT_MET, (rep, v.outcome)
        assert v.spectral.upper < 200
        assert not v.theorem_violation


def test_certify_explicit_delta():
    v = certify(complete(103), 3, delta=3)
    assert v.outcome == K_CONNECTED_CERTIFIED
    # delta above the order threshold: F(3,4) = 185 > 103
    v = certify(complete(103), 3, delta=4)
    assert v.outcome == HYPOTHESIS_FAILED
    assert not v.hypothesis["order_ge_F"]
    # delta above the true minimum degree
    g, _ = build_A(PARAMS)
    v = certify(g, 3, delta=4)
    assert v.outcome == HYPOTHESIS_FAILED
    assert not v.hypothesis["delta_le_min_degree"]


def test_certify_k_below_3():
    v = certify(complete(10), 2)
    assert v.outcome == HYPOTHESIS_FAILED
    assert not v.hypothesis["k_ge_3"]


def test_certify_small_graphs_exhaustive_n5():
    # below the order threshold everything is a hypothesis failure and the
    # pipeline must never certify or flag a violation
    for g in iter_labeled_graphs(5):
        v = certify(g, 3, tolerance=1e-6)
        assert v.outcome == HYPOTHESIS_FAILED
        assert not v.theorem_violation
        if dirac_condition(g, 3):
            assert v.outcome != CONDITION_NOT_MET


def test_certify_verdict_json():
    g, _ = build_A(PARAMS)
    payload = certify(g, 3).to_dict()
    for key in ("outcome", "threshold", "q_lower", "q_upper", "kappa", "cut",
                "member", "hypothesis", "theorem_violation"):
        assert key in payload
    assert payload["member"]["family_class"] == "A1"


def test_certify_exact_witness_branch(monkeypatch):
    # force the bracket to straddle so the exact rational witness must decide
    member = make_member(PARAMS, [(0, 4)])  # A1 at the boundary: q_z = 200 exactly

    real_decide = certifier_mod.decide_q_ge

    def straddle(g, threshold, tolerance=1e-9, **kw):
        _, est = real_decide(g, threshold, tolerance)
        return None, est

    monkeypatch.setattr(certifier_mod, "decide_q_ge", straddle)
    v = certifier_mod.certify(member.graph, 3)
    assert v.outcome == EXCEPTIONAL_FAMILY
    assert any("exact rational witness" in note for note in v.notes)

    # a non-member graph with a straddling bracket stays undecided
    v = certifier_mod.certify(complete(103), 3)
    assert v.outcome == UNDECIDED_NUMERIC


# -- lemma 2.3 -------------------------------------------------------------------


def test_lemma_2_3_examples():
    rep = check_lemma_2_3(complete(8), 3, 3)
    assert rep.passed and rep.applicable and rep.details["branch"] == "k-connected"
    g, _ = build_A(ExtremalParams(8, 3, 3))
    rep = check_lemma_2_3(g, 3, 3)
    assert rep.passed and rep.details["branch"] == "membership"
    assert rep.details["m"] == 20 and rep.details["density_rhs"] == 19
    rep = check_lemma_2_3(cycle(8), 3, 3)
    assert not rep.applicable and rep.findings


def test_lemma_2_3_not_triggered():
    # sparse but hypothesis-satisfying graph: condition not triggered
    g = cycle(9).with_edge_added(0, 3).with_edge_added(1, 5).with_edge_added(2, 7) \
        .with_edge_added(4, 8).with_edge_added(5, 8).with_edge_added(3, 6)
    assert min(g.degrees()) >= 3
    rep = check_lemma_2_3(g, 3, 3)
    if rep.applicable and not rep.details["density_satisfied"]:
        assert rep.passed


# -- lemmas 3.1 / 3.2 ---------------------------------------------------------------


def test_lemma_3_1_identity_values():
    rep = check_lemma_3_1(PARAMS, [])
    assert rep.passed
    assert rep.details["identity_value"] == 4
    assert rep.details["exact_rayleigh"] == Fraction(200) + Fraction(4, 101)
    rep = check_lemma_3_1(PARAMS, [(0, 1)])
    assert rep.passed
    assert rep.details["identity_value"] == 0
    assert rep.details["exact_rayleigh"] == Fraction(200)
    with pytest.raises(ValueError):
        check_lemma_3_1(PARAMS, [(0, 4), (4, 5)])  # A2 member


def test_lemma_3_1_all_representatives():
    for size in (0, 1):
        for rep in enumerate_Eprime_orbits(PARAMS, size):
            out = check_lemma_3_1(PARAMS, rep)
            assert out.passed
            assert out.details["q_lower"] >= 200 - 1e-6


def test_lemma_3_2_identity_values():
    rep = check_lemma_3_2(PARAMS, [(0, 4), (4, 5)])
    assert rep.passed
    assert rep.details["identity_value"] == -4
    assert rep.details["q_lower"] > 199
    with pytest.raises(ValueError):
        check_lemma_3_2(PARAMS, [(0, 1)])  # A1 member
    # sanity at (k, delta) = (3, 4): identity 6 - 8 = -2 >= -4
    p34 = ExtremalParams(185, 3, 4)
    assert p34.eprime_bound == 1
    rep = check_lemma_3_2(p34, [(0, 5), (5, 6)])  # Z starts at delta+1 = 5
    assert rep.passed and rep.details["identity_value"] == -2


def test_lemma_3_2_all_representatives():
    for rep in enumerate_Eprime_orbits(PARAMS, 2):
        out = check_lemma_3_2(PARAMS, rep)
        assert out.passed


# -- eigenvector lemmas ----------------------------------------------------------------


def test_lemma_3_3_intact_and_representatives():
    member = make_member(PARAMS, [])
    rep = check_lemma_3_3(member)
    assert rep.passed
    # bound is (k-1)/(q - (2*delta - k + 1)) = 2/(q - 4) at (3,3)
    assert rep.details["bound"] == pytest.approx(2.0 / (q_index(member.graph, 1e-10).upper - 4), rel=1e-9)
    for rep_edges in enumerate_Eprime_orbits(PARAMS, 2):
        out = check_lemma_3_3(make_member(PARAMS, rep_edges))
        assert out.passed, rep_edges


def test_orderings_on_maximizer():
    member, est, scanned = select_max_member(PARAMS, 2)
    assert len(scanned) == 9
    # the maximizer concentrates removals on Z vertices away from Y
    assert member.y_internal_edges() == 1
    rep = check_orderings(member, is_maximizer=True)
    assert rep.passed
    assert rep.details["eq4_residual"] <= 1e-6
    assert not rep.findings


def test_orderings_on_intact():
    member = make_member(PARAMS, [])
    rep = check_orderings(member, is_maximizer=True)
    assert rep.passed
    assert rep.details["3.4"] == "vacuous"
    assert rep.details["3.6(1)"] == "vacuous"
    assert rep.details["3.6(2)"] == "vacuous"
    assert rep.details["3.6(3)"]["holds"]
    assert rep.details["argmax_class"] == "Y1"


def test_lemma_3_7_maximizer_and_cases():
    member, _, _ = select_max_member(PARAMS, 2)
    rep = check_lemma_3_7(member, is_maximizer=True)
    assert rep.passed
    assert rep.details["case"] == "case2 (Y1 nonempty)"
    # engineered member with every Y vertex damaged: case 1
    case1 = make_member(PARAMS, [(0, 4), (1, 5)])
    rep = check_lemma_3_7(case1, is_maximizer=False)
    assert rep.details["case"] == "case1 (Y1 empty)"
    # Z-only damage keeps Y intact: case 2
    case2 = make_member(PARAMS, [(4, 5), (6, 7)])
    rep = check_lemma_3_7(case2, is_maximizer=False)
    assert rep.details["case"] == "case2 (Y1 nonempty)"


def test_lemma_3_8():
    rep = check_lemma_3_8(PARAMS)
    assert rep.passed
    assert rep.details["representatives"] == 9
    assert rep.details["min_gap"] > 0
    assert rep.details["max_q_upper"] < 200
    # jointly with lemma 3.2 the bracket sits inside (199, 200)
    for item in rep.details["per_representative"]:
        assert 199 < item["q_upper"] < 200


def test_eigen_identity_on_members():
    for size in (0, 1, 2):
        for rep in enumerate_Eprime_orbits(PARAMS, size):
            member = make_member(PARAMS, rep)
            est = q_index(member.graph, 1e-8)
            report = verify_eigen_identity(member.graph, est)
            assert report.passed
            assert report.eq1_residual <= 1e-6 and report.eq2_residual <= 1e-6


# -- proof chain -----------------------------------------------------------------------


def test_proof_chain_paper_scales():
    for (n, k, d) in [(103, 3, 3), (185, 3, 4)]:
        rep = verify_theorem_proof_chain(ExtremalParams(n, k, d))
        assert rep.chain_holds and rep.identity_ok and rep.order_ge_F
        assert rep.margin > 0
    rep = verify_theorem_proof_chain(ExtremalParams(103, 3, 3))
    assert rep.threshold == 200
    assert rep.m_lower_bound == Fraction(99 * 102, 2)  # (n-2d+2k-4)(n-1)/2
    assert rep.density_rhs == 103 * 102 // 2 - 3 * 98
    assert rep.margin == 98 - 2 * 4


def test_proof_chain_below_F_probe():
    # one below the order threshold the chain inequality itself still holds;
    # the report records that F is not met without claiming a break
    rep = verify_theorem_proof_chain(ExtremalParams(102, 3, 3))
    assert not rep.order_ge_F
    assert rep.identity_ok
    assert rep.chain_holds  # margin 97 - 8 > 0
    assert rep.margin == 102 - 3 - 2 - 2 * 4


def test_proof_chain_json():
    payload = verify_theorem_proof_chain(PARAMS).to_dict()
    assert payload["chain_holds"] and payload["identity_ok"]
    assert payload["threshold"] == 200


@pytest.mark.slow
def test_falsification_and_dirac_exhaustive_n7():
    """One pass over every labeled connected graph with 2 <= n <= 7.

    Below the order threshold every certification must come back as a
    hypothesis failure, never a violation; and whenever the classical
    degree condition promises k-connectedness, max-flow must confirm it.
    """
    certified = 0
    dirac_checked = 0
    for n in range(2, 8):
        for g in iter_labeled_graphs(n):
            if not is_connected(g):
                continue
            degs = g.degrees()
            delta = min(degs)
            if delta >= 3:
                v = certify(g, 3, tolerance=1e-6)
                assert v.outcome == HYPOTHESIS_FAILED
                assert not v.theorem_violation
                assert v.outcome != CONDITION_NOT_MET
                certified += 1
            kmax = 2 * delta - n + 2
            if 1 <= kmax <= n - 1:
                assert dirac_condition(g, kmax)
                assert is_k_connected(g, kmax)[0]
                dirac_checked += 1
    assert certified > 100_000
    assert dirac_checked > 100_000
