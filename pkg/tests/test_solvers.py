"""Consistency deciders: oracle, backtracking, trivial-core, M99/M81."""

import numpy as np
import pytest

import mc4.solvers as solvers_module
from mc4.algebra import EMPTY, UNIVERSAL, Relation
from mc4.network import ConstraintNetwork, path_consistency, random_network
from mc4.solvers import (
    GadgetGraph,
    ProfileError,
    Scenario,
    detect_m81,
    detect_m99,
    is_valid_scenario,
    search_pc_incompleteness,
    solve,
    solve_backtracking,
    solve_m81,
    solve_m99,
    solve_oracle,
    solve_trivial_core,
    to_gadget_m81,
    to_gadget_m99,
)
from mc4.subalgebra import M81, M99, Kind

CG = Relation.CG
CGPP = Relation.CGPP
CGPPI = Relation.CGPPI
CNO = Relation.CNO


def net_of(n, constraints):
    names = tuple(f"v{k}" for k in range(n))
    net = ConstraintNetwork(names)
    for i, j, r in constraints:
        net.add_constraint(names[i], names[j], r)
    return net


def containment_cycle():
    # v0 inside v1 inside v2 inside v0: unsatisfiable
    return net_of(3, [(0, 1, CGPP), (1, 2, CGPP), (2, 0, CGPP)])


# ---------------------------------------------------------------------------
# Oracle
# ---------------------------------------------------------------------------


def test_oracle_finds_scenario_on_consistent_net():
    net = net_of(3, [(0, 1, CG | CGPP), (1, 2, CNO)])
    out = solve_oracle(net)
    assert out.consistent and out.solver == "oracle"
    assert out.witness is None
    assert is_valid_scenario(net, out.scenario)


def test_oracle_rejects_containment_cycle():
    out = solve_oracle(containment_cycle())
    assert not out.consistent
    assert out.scenario is None
    assert out.witness["type"] == "search_exhausted"
    assert out.witness["explored"] > 0


def test_oracle_scenario_covers_unconstrained_pairs():
    net = net_of(4, [(0, 1, CGPP)])
    out = solve_oracle(net)
    assert len(out.scenario.pairs) == 6
    assert is_valid_scenario(net, out.scenario)


def test_oracle_trivial_sizes():
    assert solve_oracle(net_of(0, [])).consistent
    assert solve_oracle(net_of(1, [])).consistent
    out = solve_oracle(net_of(2, [(0, 1, EMPTY)]))
    assert not out.consistent


def test_oracle_vertex_cap():
    with pytest.raises(ValueError):
        solve_oracle(net_of(7, []))
    assert solve_oracle(net_of(7, []), max_vertices=7).consistent


def test_oracle_self_contradiction():
    net = net_of(2, [])
    net.add_constraint("v0", "v0", CNO)
    out = solve_oracle(net)
    assert not out.consistent
    assert out.witness == {"type": "bottom_edge", "edge": ["v0", "v0"]}


# ---------------------------------------------------------------------------
# Backtracking
# ---------------------------------------------------------------------------


def test_backtracking_matches_oracle_on_fixed_cases():
    cases = [
        net_of(3, [(0, 1, CG | CGPP), (1, 2, CNO)]),
        containment_cycle(),
        net_of(4, [(0, 1, CGPP | CGPPI), (1, 2, CGPP | CGPPI), (2, 3, CNO)]),
        net_of(2, [(0, 1, EMPTY)]),
    ]
    for net in cases:
        assert solve_backtracking(net).consistent == solve_oracle(net).consistent


def test_backtracking_scenario_is_valid():
    net = net_of(4, [(0, 1, CGPP | CNO), (1, 2, CG | CGPPI), (0, 3, CNO)])
    out = solve_backtracking(net)
    assert out.consistent and out.solver == "backtracking"
    assert is_valid_scenario(net, out.scenario)


def test_backtracking_bottom_witness_names_the_edge():
    net = net_of(3, [(0, 1, CGPP), (1, 2, CGPP), (0, 2, CG)])
    out = solve_backtracking(net)
    assert not out.consistent
    assert out.witness["type"] == "bottom_edge"
    assert out.witness["edge"] == ["v0", "v2"]


def test_backtracking_matches_oracle_on_random_sweep():
    rng = np.random.default_rng(123)
    palette = tuple(Relation(c) for c in range(1, 15))
    for _ in range(300):
        n = int(rng.integers(3, 6))
        net = random_network(n, 0.8, palette, rng=rng)
        assert solve_backtracking(net).consistent == solve_oracle(net).consistent


# ---------------------------------------------------------------------------
# Trivial cores
# ---------------------------------------------------------------------------


def test_trivial_core_accepts_and_produces_canonical_scenarios():
    for core, fill in ((CG, CG), (CNO, CNO), (CGPP | CGPPI, CGPP)):
        net = net_of(4, [(0, 1, core | CNO if core != CNO else core), (2, 3, UNIVERSAL)])
        out = solve_trivial_core(net, core)
        assert out.consistent and out.solver == "trivial-core"
        assert is_valid_scenario(net, out.scenario)
        assert all(code == int(fill) for _, _, code in out.scenario.pairs)


def test_trivial_core_inconsistent_only_on_explicit_bottom():
    net = net_of(3, [(0, 1, CG | CNO), (1, 2, EMPTY)])
    out = solve_trivial_core(net, CG)
    assert not out.consistent
    assert out.witness == {"type": "bottom_edge", "edge": ["v1", "v2"]}


def test_trivial_core_profile_errors():
    net = net_of(2, [(0, 1, CGPP)])
    with pytest.raises(ProfileError):
        solve_trivial_core(net, CG)
    with pytest.raises(ValueError):
        solve_trivial_core(net_of(2, []), CGPP)


def test_trivial_core_chain_scenario_is_closed_at_scale():
    net = net_of(6, [(i, j, CGPP | CGPPI | CNO) for i in range(6) for j in range(i + 1, 6)])
    out = solve_trivial_core(net, CGPP | CGPPI)
    assert out.consistent
    assert is_valid_scenario(net, out.scenario)


# ---------------------------------------------------------------------------
# Gadget translation
# ---------------------------------------------------------------------------


def test_gadget_m99_shapes():
    net = net_of(
        4,
        [
            (0, 1, CG),
            (0, 2, CGPP | CNO),          # one auxiliary vertex
            (1, 2, CNO),
            (2, 3, CG | CGPPI | CNO),    # one auxiliary vertex
        ],
    )
    g = to_gadget_m99(net)
    assert isinstance(g, GadgetGraph)
    assert g.n_base == 4
    assert g.n_total == 6
    assert len(g.bsy) == 0
    # CG gives two arcs, CGPP|CNO one, CG|CGPPi|CNO one: four LEQ arcs total
    assert len(g.leq) == 4
    # CNO gives one base EQX edge, each auxiliary one more
    assert len(g.eqx) == 3
    # CGPP|CNO and CNO carry NLE; CG|CGPPi|CNO does not
    assert len(g.nle) == 2
    assert len(g.bottom) == 0


def test_gadget_m99_rejects_out_of_profile_labels():
    with pytest.raises(ProfileError):
        to_gadget_m99(net_of(2, [(0, 1, CGPP | CGPPI)]))
    with pytest.raises(ProfileError):
        to_gadget_m99(net_of(2, [(0, 1, CG | CGPP | CGPPI)]))


def test_gadget_m81_shapes():
    net = net_of(
        3,
        [(0, 1, CG | CGPP), (1, 2, CGPP | CGPPI), (0, 2, EMPTY)],
    )
    g = to_gadget_m81(net)
    assert g.n_total == g.n_base == 3
    assert len(g.leq) == 1
    assert len(g.bsy) == 1
    assert len(g.nle) == 1
    assert [int(x) for x in g.bottom[0]] == [0, 2]


def test_gadget_m81_rejects_out_of_profile_labels():
    with pytest.raises(ProfileError):
        to_gadget_m81(net_of(2, [(0, 1, CNO)]))
    with pytest.raises(ProfileError):
        to_gadget_m81(net_of(2, [(0, 1, CGPP | CNO)]))


# ---------------------------------------------------------------------------
# Polynomial deciders
# ---------------------------------------------------------------------------


def test_m99_decides_forced_congruence_clash():
    # v0 <= v1 <= v2 <= v0 forces all three congruent, yet v0 is marked
    # strictly inside v1
    net = net_of(3, [(0, 1, CGPP), (1, 2, CG | CGPP), (2, 0, CG | CGPP)])
    out = solve_m99(net)
    assert not out.consistent
    assert out.witness["type"] == "cycle_chord"
    assert out.witness["cycle"] == ["v0", "v1", "v2"]
    assert out.witness["chord"] == ["v0", "v1"]
    assert not solve_oracle(net).consistent


def test_m99_uses_eqx_forcing_through_leq_paths():
    # v0 <= v1, v1 EQX v2, v2 <= v0, and v0 not congruent to v1:
    # the LEQ path v2 <= v0 <= v1 turns EQX into congruence, collapsing all
    # three into one cluster that the NLE edge then contradicts
    net = net_of(
        3,
        [(0, 1, CGPP), (1, 2, CG | CNO), (2, 0, CG | CGPP)],
    )
    out = solve_m99(net)
    assert not out.consistent
    assert out.witness["type"] == "cycle_chord"
    assert out.witness["cycle"] == ["v0", "v1", "v2"]
    assert solve_oracle(net).consistent is False


def test_m99_consistent_when_eqx_is_unforced():
    # same as above but without the closing LEQ path: satisfiable
    net = net_of(3, [(0, 1, CGPP), (1, 2, CG | CNO)])
    out = solve_m99(net)
    assert out.consistent
    assert out.witness is None and out.scenario is None
    assert solve_oracle(net).consistent


def test_m81_decides_cycles():
    net = net_of(3, [(0, 1, CG | CGPP), (1, 2, CG | CGPP), (2, 0, CGPP)])
    out = solve_m81(net)
    assert not out.consistent
    assert out.witness["type"] == "cycle_chord"
    assert sorted(out.witness["chord"]) == ["v0", "v2"]
    relaxed = net_of(3, [(0, 1, CG | CGPP), (1, 2, CG | CGPP), (2, 0, CGPP | CGPPI)])
    assert solve_m81(relaxed).consistent


def test_m99_bottom_witness():
    out = solve_m99(net_of(2, [(0, 1, EMPTY)]))
    assert not out.consistent
    assert out.witness == {"type": "bottom_edge", "edge": ["v0", "v1"]}


def test_polynomial_deciders_match_oracle_on_random_sweeps():
    rng = np.random.default_rng(77)
    for catalog, fn in ((M99, solve_m99), (M81, solve_m81)):
        palette = tuple(r for r in catalog if r not in (EMPTY, UNIVERSAL))
        for _ in range(400):
            n = int(rng.integers(2, 6))
            net = random_network(n, 0.8, palette, rng=rng)
            assert fn(net).consistent == solve_oracle(net).consistent


def test_scipy_backend_agrees_with_python_backend(monkeypatch):
    rng = np.random.default_rng(99)
    palette = tuple(r for r in M99 if r not in (EMPTY, UNIVERSAL))
    nets = [random_network(5, 0.9, palette, rng=rng) for _ in range(120)]
    small_backend = [solve_m99(net).consistent for net in nets]
    monkeypatch.setattr(solvers_module, "_SCIPY_MIN_VERTICES", 0)
    large_backend = [solve_m99(net).consistent for net in nets]
    assert small_backend == large_backend


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------


def test_solve_dispatches_by_profile():
    cases = [
        (net_of(3, [(0, 1, CG | CNO), (1, 2, CG | CNO)]), "trivial-core", Kind.TRIVIAL_CORE),
        (net_of(3, [(0, 1, CG | CGPP), (1, 2, CNO)]), "m99", Kind.MAX_M99),
        (net_of(3, [(0, 1, CG | CGPP), (1, 2, CGPP | CGPPI)]), "m81", Kind.MAX_M81),
        (net_of(3, [(0, 1, CGPP | CNO), (1, 2, CGPP | CGPPI)]), "backtracking", Kind.NP_HARD),
    ]
    for net, solver_name, kind in cases:
        out = solve(net)
        assert out.solver == solver_name
        assert out.classification.kind is kind
        assert out.consistent == solve_oracle(net).consistent


def test_solve_agrees_with_oracle_on_mixed_random_sweep():
    rng = np.random.default_rng(5)
    palette = tuple(Relation(c) for c in range(1, 15))
    seen = set()
    for _ in range(300):
        n = int(rng.integers(2, 6))
        net = random_network(n, 0.7, palette, rng=rng)
        out = solve(net)
        seen.add(out.solver)
        assert out.consistent == solve_oracle(net).consistent
    assert "backtracking" in seen


# ---------------------------------------------------------------------------
# Scenario helpers
# ---------------------------------------------------------------------------


def test_scenario_json_shape():
    out = solve_oracle(net_of(3, [(0, 1, CGPP)]))
    payload = out.scenario.as_json()
    assert set(payload) == {"pairs"}
    assert all(len(entry) == 3 for entry in payload["pairs"])


def test_is_valid_scenario_rejects_wrong_shapes():
    net = net_of(3, [(0, 1, CGPP)])
    good = solve_oracle(net).scenario
    assert is_valid_scenario(net, good)
    assert not is_valid_scenario(net, Scenario(good.pairs[:-1]))  # missing a pair
    assert not is_valid_scenario(net, Scenario(((0, 1, 3), (0, 2, 1), (1, 2, 1))))
    assert not is_valid_scenario(net, Scenario(((0, 1, 8), (0, 2, 1), (1, 2, 1))))


# ---------------------------------------------------------------------------
# Path-consistency gap
# ---------------------------------------------------------------------------


def test_search_pc_incompleteness_finds_the_five_cycle():
    report = search_pc_incompleteness()
    assert report.phase == "cycle-family"
    assert report.examined == 757  # no witness exists among the 756 smaller nets
    net = report.network
    assert len(net) == 5
    ok, _ = path_consistency(net)
    assert ok
    assert not solve_oracle(net, max_vertices=5).consistent
    assert not solve_backtracking(net).consistent
