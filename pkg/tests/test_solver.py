from __future__ import annotations

import random
import time
from fractions import Fraction

import pytest

from resilient_alloc import (
    FlowSpec,
    IlpInstance,
    Infeasible,
    NetworkProfile,
    QosRequirement,
    exact_solve,
    objective,
    objective_upper_bound,
    report,
    verify_allocation_table,
)

from enumeration_oracle import best_objective_by_enumeration, random_instance


class TestMotivatingExample:
    def test_optimum_objective_and_aggregates(self, assisted_living, table2_networks):
        instance = IlpInstance(assisted_living.flows, tuple(table2_networks), 3, 8)
        started = time.perf_counter()
        table = exact_solve(instance)
        assert time.perf_counter() - started < 1.0
        rep = report(table, list(assisted_living.flows), table2_networks, 3)
        assert rep.objective == 22
        assert rep.percent_served == 100
        assert rep.avg_criticality == Fraction(5, 4)

    def test_first_optimum_serves_two_flows_degraded(self, assisted_living, table2_networks):
        # lexicographically first optimum: the two bulky sensors drop to
        # level 2, everything else runs at level 1, all on the widest network
        instance = IlpInstance(assisted_living.flows, tuple(table2_networks), 3, 8)
        table = exact_solve(instance)
        levels = {fid: entry.level for fid, entry in table.entries.items()}
        assert levels == {"1": 1, "2": 1, "3": 1, "4": 1, "5": 1, "6": 2, "7": 2, "8": 1}
        assert {entry.network_id for entry in table.entries.values()} == {"wifi"}


class TestUpperBound:
    def test_empty_prefix(self):
        assert objective_upper_bound(0, 8, 3) == 24

    def test_full_assignment_is_its_own_bound(self):
        assert objective_upper_bound(17, 0, 3) == 17

    def test_partial_prefix(self):
        assert objective_upper_bound(10, 4, 3) == 22

    def test_pruning_never_changes_the_result(self):
        rng = random.Random(0xB0D7)
        for _ in range(60):
            flows, networks, cfg = random_instance(rng, max_flows=4)
            instance = IlpInstance(tuple(flows), tuple(networks), cfg.l_max, cfg.factor)
            pruned = objective(exact_solve(instance, prune=True), cfg.l_max)
            unpruned = objective(exact_solve(instance, prune=False), cfg.l_max)
            assert pruned == unpruned


class TestEdges:
    def test_single_flow_too_big_for_any_level(self):
        flow = FlowSpec(id="1", app="A", name="big", qos={1: QosRequirement(1000, Fraction(1))})
        net = NetworkProfile(id="n", name="N", capacity_bps=10)
        table = exact_solve(IlpInstance((flow,), (net,), 1, 8))
        assert table.entries == {}
        assert objective(table, 1) == 0

    def test_no_flows(self):
        net = NetworkProfile(id="n", name="N", capacity_bps=10)
        table = exact_solve(IlpInstance((), (net,), 3, 8))
        assert table.entries == {}

    def test_no_networks(self):
        flow = FlowSpec(id="1", app="A", name="f", qos={1: QosRequirement(1, Fraction(1))})
        table = exact_solve(IlpInstance((flow,), (), 3, 8))
        assert table.entries == {}

    def test_require_all_infeasible(self):
        flow = FlowSpec(id="1", app="A", name="big", qos={1: QosRequirement(1000, Fraction(1))})
        net = NetworkProfile(id="n", name="N", capacity_bps=10)
        with pytest.raises(Infeasible):
            exact_solve(IlpInstance((flow,), (net,), 1, 8, require_all=True))

    def test_require_all_feasible_matches_unconstrained_here(self, assisted_living, table2_networks):
        instance = IlpInstance(assisted_living.flows, tuple(table2_networks), 3, 8, require_all=True)
        assert objective(exact_solve(instance), 3) == 22

    def test_never_errors_without_require_all(self):
        rng = random.Random(0xFEED)
        for _ in range(40):
            flows, networks, cfg = random_instance(rng)
            instance = IlpInstance(tuple(flows), tuple(networks), cfg.l_max, cfg.factor)
            exact_solve(instance)  # must not raise


class TestOracle:
    def test_matches_enumeration_on_random_instances(self):
        rng = random.Random(0x0AC1E)
        for _ in range(120):
            flows, networks, cfg = random_instance(rng)
            instance = IlpInstance(tuple(flows), tuple(networks), cfg.l_max, cfg.factor)
            table = exact_solve(instance)
            verify_allocation_table(table, flows, networks, cfg)
            assert objective(table, cfg.l_max) == best_objective_by_enumeration(
                flows, networks, cfg.l_max, cfg.factor
            )
