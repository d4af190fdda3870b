from __future__ import annotations

import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from resilient_alloc import FlowSpec, QosRequirement, ValidationError, utilization, validate_flow_set
from resilient_alloc.flows import flow_set_from_dict


def _flow(fid: str, qos: dict[int, tuple[int, object]], name: str | None = None) -> FlowSpec:
    return FlowSpec(
        id=fid,
        app="App",
        name=name or f"flow {fid}",
        qos={
            level: QosRequirement(c, Fraction(t)) for level, (c, t) in qos.items()
        },
    )


def _by_id(flow_set, fid):
    return next(flow for flow in flow_set.flows if flow.id == fid)


class TestUtilization:
    def test_fall_detection_level1_factor8(self, assisted_living):
        # 8 * 1000 / 10 = 800 bps
        flow = _by_id(assisted_living, "1")
        assert utilization(flow, 1, 8) == 800_000_000

    def test_undeclared_level_is_none(self, assisted_living):
        flow = _by_id(assisted_living, "8")
        assert utilization(flow, 2, 8) is None
        assert utilization(flow, 2, 1) is None

    def test_c_equals_t(self, assisted_living):
        # 30 bytes every 30 s at factor 1 -> exactly 1 byte/s
        flow = _by_id(assisted_living, "3")
        assert utilization(flow, 1, 1) == 1_000_000

    def test_fractional_interval(self):
        flow = _flow("x", {1: (1, Fraction(1, 2))})
        assert utilization(flow, 1, 1) == 2_000_000

    def test_rounding_half_up(self):
        # 1 byte / 3 s = 333333.33.. micro -> 333333
        flow = _flow("x", {1: (1, 3)})
        assert utilization(flow, 1, 1) == 333_333
        # 2/3 -> 666666.66.. -> 666667
        flow = _flow("y", {1: (2, 3)})
        assert utilization(flow, 1, 1) == 666_667

    @given(
        c=st.integers(min_value=1, max_value=10**9),
        t_num=st.integers(min_value=1, max_value=10**9),
        t_den=st.integers(min_value=1, max_value=10**6),
    )
    def test_factor8_is_exactly_eight_times_factor1(self, c, t_num, t_den):
        flow = _flow("x", {1: (c, Fraction(t_num, t_den))})
        assert utilization(flow, 1, 8) == 8 * utilization(flow, 1, 1)

    def test_fixture_is_antitone_in_level(self, assisted_living):
        # In the shipped catalogue, demand never grows with the level.
        for flow in assisted_living.flows:
            levels = flow.defined_levels()
            for lower, higher in zip(levels, levels[1:]):
                assert utilization(flow, higher, 8) <= utilization(flow, lower, 8)


class TestValidation:
    def test_shipped_catalogue_is_valid(self, assisted_living):
        validate_flow_set(assisted_living.flows, assisted_living.l_max)

    def test_duplicate_id(self):
        flows = [_flow("1", {1: (10, 1)}), _flow("1", {1: (10, 1)}, name="other")]
        with pytest.raises(ValidationError) as excinfo:
            validate_flow_set(flows, 3)
        assert excinfo.value.rule == "duplicate-id"
        assert excinfo.value.flow_id == "1"

    def test_empty_qos(self):
        flow = FlowSpec(id="1", app="App", name="empty", qos={})
        with pytest.raises(ValidationError) as excinfo:
            validate_flow_set([flow], 3)
        assert excinfo.value.rule == "no-levels"

    def test_level_beyond_l_max(self):
        with pytest.raises(ValidationError) as excinfo:
            validate_flow_set([_flow("1", {4: (10, 1)})], 3)
        assert excinfo.value.rule == "bad-level"

    def test_forbidden_name_characters(self):
        with pytest.raises(ValueError):
            _flow("1", {1: (10, 1)}, name="a,b")
        with pytest.raises(ValueError):
            _flow("1", {1: (10, 1)}, name="a:b")

    def test_qos_requirement_bounds(self):
        with pytest.raises(ValueError):
            QosRequirement(0, Fraction(1))
        with pytest.raises(ValueError):
            QosRequirement(1, Fraction(0))


class TestJson:
    def test_shipped_catalogue_matches_expected_shape(self, assisted_living):
        assert assisted_living.l_max == 3
        assert [flow.id for flow in assisted_living.flows] == [str(i) for i in range(1, 9)]
        flow1 = _by_id(assisted_living, "1")
        assert flow1.app == "HealthApp"
        assert flow1.name == "fall detection"
        assert flow1.qos[3] == QosRequirement(10, Fraction(60))
        assert _by_id(assisted_living, "8").defined_levels() == [1]

    def test_decimal_interval_parses_exactly(self):
        doc = json.loads(
            '{"l_max": 1, "flows": [{"id": "1", "app": "A", "name": "n",'
            ' "qos": {"1": {"c": 5, "t": 0.5}}}]}'
        )
        flow_set = flow_set_from_dict(doc)
        assert flow_set.flows[0].qos[1].min_interval_seconds == Fraction(1, 2)

    def test_rational_string_interval(self):
        doc = {
            "l_max": 1,
            "flows": [{"id": "1", "app": "A", "name": "n", "qos": {"1": {"c": 1, "t": "1/3"}}}],
        }
        flow_set = flow_set_from_dict(doc)
        assert flow_set.flows[0].qos[1].min_interval_seconds == Fraction(1, 3)

    def test_loader_rejects_invalid_set(self):
        doc = {"l_max": 2, "flows": [{"id": "1", "app": "A", "name": "n", "qos": {"3": {"c": 1, "t": 1}}}]}
        with pytest.raises(ValidationError):
            flow_set_from_dict(doc)
