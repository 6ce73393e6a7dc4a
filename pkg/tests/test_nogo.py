import json
import math

import numpy as np
import pytest

from focklift.errors import InvalidInputError
from focklift.fock import lift_unitary
from focklift.linalg import haar_random_unitary
from focklift.modes import composite_gate_mode_matrix, CompositeGateParams
from focklift.nogo import (
    _ancilla_eval,
    _AncillaFrame,
    _penalty_levels,
    _project_feasible,
    AncillaCheckReport,
    block_diagonality_defect,
    block_lemma_check,
    bunched_partition,
    dont_cause_errors_residuals,
    nogo_search_ancilla,
    nogo_search_two_mode,
    SearchConfig,
    SearchResult,
    subspace_leakage,
)


def block_diag_unitary(rng, top, bottom):
    v = np.zeros((top + bottom, top + bottom), dtype=complex)
    v[:top, :top] = haar_random_unitary(top, rng)
    v[top:, top:] = haar_random_unitary(bottom, rng)
    return v


# ---------------------------------------------------------------------------
# partition and leakage
# ---------------------------------------------------------------------------

def test_partition_two_modes():
    comp, bunch = bunched_partition(2, 2)
    basis = [(2, 0), (1, 1), (0, 2)]
    assert [basis[i] for i in comp] == [(1, 1)]
    assert [basis[i] for i in bunch] == [(2, 0), (0, 2)]


def test_partition_counts_and_disjointness():
    for modes, photons in ((2, 0), (2, 1), (2, 2), (3, 2), (3, 3), (4, 3)):
        comp, bunch = bunched_partition(modes, photons)
        states = lift_unitary(np.eye(modes, dtype=complex), photons).basis.states
        assert sorted(comp + bunch) == list(range(len(states)))
        for i in comp:
            assert states[i][0] <= 1 and states[i][1] <= 1
        for i in bunch:
            assert max(states[i][0], states[i][1]) >= 2


def test_partition_needs_two_rails():
    with pytest.raises(InvalidInputError):
        bunched_partition(1, 2)


def test_subspace_leakage_matches_two_mode_law():
    for eps in (0.0, 0.3, math.pi / 4, 1.2):
        v = composite_gate_mode_matrix(CompositeGateParams(0.2, -0.5, 0.9, 0.1, eps))
        lifted = lift_unitary(v, 2)
        assert subspace_leakage(lifted) == pytest.approx(
            math.sqrt(2) * abs(math.sin(2 * eps)), abs=1e-12)


def test_subspace_leakage_zero_when_rails_stay_separate():
    # photons never change rail occupation if the rail block is diagonal
    # or antidiagonal, regardless of what happens on the ancilla modes
    rng = np.random.default_rng(40)
    v = block_diag_unitary(rng, 2, 2)
    v[:2, :2] = np.diag(np.exp(1j * rng.uniform(-np.pi, np.pi, 2)))
    assert subspace_leakage(lift_unitary(v, 2)) < 1e-14
    assert subspace_leakage(lift_unitary(v, 3)) < 1e-14

    swap = np.zeros((2, 2), dtype=complex)
    swap[0, 1] = np.exp(0.7j)
    swap[1, 0] = np.exp(-0.2j)
    v[:2, :2] = swap
    assert subspace_leakage(lift_unitary(v, 2)) < 1e-14


# ---------------------------------------------------------------------------
# block structure lemma
# ---------------------------------------------------------------------------

def test_block_defect_known_value():
    v = np.eye(4, dtype=complex)
    v[0, 3] = 0.3
    v[3, 1] = 0.4
    assert block_diagonality_defect(v, 2) == pytest.approx(0.5)
    with pytest.raises(InvalidInputError):
        block_diagonality_defect(v, 0)
    with pytest.raises(InvalidInputError):
        block_diagonality_defect(np.ones((2, 3)), 1)


def test_lemma_gap_vanishes_on_unitaries():
    rng = np.random.default_rng(41)
    worst = 0.0
    for m in (3, 4, 6):
        for _ in range(50):
            v = haar_random_unitary(m, rng)
            for split in range(1, m):
                worst = max(worst, block_lemma_check(v, split))
    assert worst < 1e-10


def test_lemma_zero_lower_left_forces_zero_upper_right():
    rng = np.random.default_rng(42)
    v = block_diag_unitary(rng, 2, 3)
    assert np.linalg.norm(v[2:, :2]) == 0.0
    assert np.linalg.norm(v[:2, 2:]) == 0.0
    assert block_lemma_check(v, 2) == 0.0


def test_lemma_rejects_non_unitary():
    with pytest.raises(InvalidInputError):
        block_lemma_check(np.ones((3, 3)), 1)


# ---------------------------------------------------------------------------
# error-avoidance residuals
# ---------------------------------------------------------------------------

def test_residual_routes_agree_on_haar():
    rng = np.random.default_rng(43)
    for m in (3, 4, 5):
        for _ in range(10):
            report = dont_cause_errors_residuals(haar_random_unitary(m, rng))
            assert report.max_route_deviation < 1e-10
            assert len(report.residuals_first) == m - 2
            for lifted, closed in zip(report.residuals_first, report.closed_first):
                assert abs(lifted - closed) < 1e-10


def test_residuals_vanish_iff_block_diagonal():
    rng = np.random.default_rng(44)
    vb = block_diag_unitary(rng, 2, 2)
    report = dont_cause_errors_residuals(vb)
    assert report.max_residual() == 0.0
    assert report.block_defect == 0.0
    assert report.lemma_gap == 0.0

    mixing = haar_random_unitary(4, rng)
    assert dont_cause_errors_residuals(mixing).max_residual() > 1e-3


def test_residuals_require_an_ancilla():
    with pytest.raises(InvalidInputError):
        dont_cause_errors_residuals(haar_random_unitary(2, 4))


def test_residual_report_is_frozen():
    report = dont_cause_errors_residuals(haar_random_unitary(3, 5))
    assert isinstance(report, AncillaCheckReport)
    with pytest.raises(AttributeError):
        report.block_defect = 0.0


# ---------------------------------------------------------------------------
# search configuration
# ---------------------------------------------------------------------------

def test_config_validation():
    with pytest.raises(InvalidInputError):
        SearchConfig(modes=1)
    with pytest.raises(InvalidInputError):
        SearchConfig(restarts=0)
    with pytest.raises(InvalidInputError):
        SearchConfig(max_iterations=0)
    with pytest.raises(InvalidInputError):
        SearchConfig(leakage_tolerance=0.0)
    with pytest.raises(InvalidInputError):
        SearchConfig(penalty_weight=-1.0)
    with pytest.raises(InvalidInputError):
        SearchConfig(ancilla_photons=-1)


def test_config_json_round_trip():
    cfg = SearchConfig(modes=3, ancilla_photons=1, restarts=7, seed=9)
    back = SearchConfig.from_jsonable(cfg.to_jsonable())
    assert back == cfg
    # the CLI discriminator key is tolerated, anything else rejected
    SearchConfig.from_jsonable({"mode": "ancilla", "modes": 3})
    with pytest.raises(InvalidInputError):
        SearchConfig.from_jsonable({"modes": 3, "restart": 5})


def test_penalty_ladder():
    assert _penalty_levels(SearchConfig(penalty_weight=0.0)) == [0.0]
    assert _penalty_levels(SearchConfig(penalty_weight=10.0)) == [10.0]
    assert _penalty_levels(SearchConfig(penalty_weight=50.0)) == [10.0, 50.0]
    assert _penalty_levels(SearchConfig(penalty_weight=1e5)) == [10.0, 100.0, 1000.0, 1e4, 1e5]


# ---------------------------------------------------------------------------
# two-mode search
# ---------------------------------------------------------------------------

def test_two_mode_constrained_certifies():
    cfg = SearchConfig(modes=2, restarts=8, max_iterations=250,
                       penalty_weight=1e5, seed=50)
    result = nogo_search_two_mode(cfg)
    assert result.constrained
    assert result.feasible
    assert result.best_leakage <= cfg.leakage_tolerance
    assert result.best_entangling_measure < 1e-6
    assert len(result.restart_trace) == cfg.restarts


def test_two_mode_unconstrained_entangles():
    cfg = SearchConfig(modes=2, restarts=8, max_iterations=300,
                       penalty_weight=0.0, seed=51)
    result = nogo_search_two_mode(cfg)
    assert not result.constrained
    assert result.best_entangling_measure > 0.1
    assert result.best_leakage > 1e-3


def test_two_mode_search_is_deterministic_and_jobs_invariant():
    cfg = SearchConfig(modes=2, restarts=4, max_iterations=150,
                       penalty_weight=1e5, seed=52)
    a = nogo_search_two_mode(cfg).to_jsonable(include_timing=False)
    b = nogo_search_two_mode(cfg).to_jsonable(include_timing=False)
    c = nogo_search_two_mode(cfg, jobs=2).to_jsonable(include_timing=False)
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    assert json.dumps(a, sort_keys=True) == json.dumps(c, sort_keys=True)


def test_two_mode_rejects_other_mode_counts():
    with pytest.raises(InvalidInputError):
        nogo_search_two_mode(SearchConfig(modes=3))


def test_search_result_timing_switch():
    cfg = SearchConfig(modes=2, restarts=2, max_iterations=60,
                       penalty_weight=1e5, seed=53)
    result = nogo_search_two_mode(cfg)
    assert isinstance(result, SearchResult)
    with_timing = result.to_jsonable()
    without = result.to_jsonable(include_timing=False)
    assert "wall_time" in with_timing
    assert "wall_time" not in without
    assert with_timing["wall_time"] >= 0.0


# ---------------------------------------------------------------------------
# ancilla search internals
# ---------------------------------------------------------------------------

def test_projection_lands_on_feasible_manifold():
    rng = np.random.default_rng(54)
    for m, k in ((3, 0), (4, 1), (4, 2)):
        frame = _AncillaFrame(m, k)
        for _ in range(5):
            vp = _project_feasible(haar_random_unitary(m, rng))
            assert np.linalg.norm(vp[:2, 2:]) == 0.0
            assert np.linalg.norm(vp[2:, :2]) == 0.0
            meas, constraint, _ = _ancilla_eval(vp, frame)
            assert constraint < 1e-10
            assert meas < 1e-10


def test_ancilla_eval_identity_gate():
    frame = _AncillaFrame(3, 0)
    meas, constraint, gate = _ancilla_eval(np.eye(3, dtype=complex), frame)
    assert constraint < 1e-14
    assert meas < 1e-14
    assert np.max(np.abs(gate - np.eye(4))) < 1e-14


def test_ancilla_eval_flags_rail_mixing():
    # a beam splitter across the rails bunches photons: constraint must be big
    v = np.eye(3, dtype=complex)
    v[:2, :2] = composite_gate_mode_matrix(CompositeGateParams(0, 0, 0, 0, math.pi / 4))
    frame = _AncillaFrame(3, 0)
    _, constraint, _ = _ancilla_eval(v, frame)
    assert constraint > 1.0


def test_ancilla_constrained_certifies():
    cfg = SearchConfig(modes=3, restarts=6, max_iterations=250,
                       penalty_weight=1e5, seed=55)
    result = nogo_search_ancilla(cfg)
    assert result.feasible
    assert result.best_entangling_measure < 1e-6


def test_ancilla_with_photons_certifies():
    cfg = SearchConfig(modes=4, ancilla_photons=1, restarts=4,
                       max_iterations=200, penalty_weight=1e5, seed=56)
    result = nogo_search_ancilla(cfg)
    assert result.feasible
    assert result.best_entangling_measure < 1e-6


def test_ancilla_unconstrained_entangles():
    cfg = SearchConfig(modes=3, restarts=6, max_iterations=300,
                       penalty_weight=0.0, seed=57)
    result = nogo_search_ancilla(cfg)
    assert result.best_entangling_measure > 0.1


def test_ancilla_search_rejects_two_modes():
    with pytest.raises(InvalidInputError):
        nogo_search_ancilla(SearchConfig(modes=2))


def test_ancilla_search_deterministic():
    cfg = SearchConfig(modes=3, restarts=3, max_iterations=100,
                       penalty_weight=1e5, seed=58)
    a = nogo_search_ancilla(cfg).to_jsonable(include_timing=False)
    b = nogo_search_ancilla(cfg, jobs=2).to_jsonable(include_timing=False)
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
