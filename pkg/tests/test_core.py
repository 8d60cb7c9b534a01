import pytest
from hypothesis import given, strategies as st

from farmsched.core import (
    CompletionRecord,
    FarmConfig,
    Job,
    JobTrace,
    Ordering,
    OrderingPolicy,
    ParameterError,
    QueueModel,
    RoutingPolicy,
    compare_ratio,
)

waits = st.integers(min_value=0, max_value=10**15)
services = st.integers(min_value=1, max_value=10**12)


@pytest.mark.parametrize(
    "args, expected",
    [
        ((100, 50, 30, 10), Ordering.LESS),
        ((0, 7, 0, 9999), Ordering.EQUAL),
        ((6, 4, 3, 2), Ordering.EQUAL),
        ((30, 10, 100, 50), Ordering.GREATER),
    ],
)
def test_compare_ratio_examples(args, expected):
    assert compare_ratio(*args) is expected


def test_compare_ratio_rejects_zero_service():
    with pytest.raises(ParameterError):
        compare_ratio(1, 0, 1, 1)


def test_compare_ratio_exact_where_floats_tie():
    # (2**60 + 1) / 2**60 and 1 are the same double
    assert compare_ratio(2**60 + 1, 2**60, 1, 1) is Ordering.GREATER


@given(waits, services, waits, services, st.integers(min_value=1, max_value=10**6))
def test_compare_ratio_scale_invariant(w1, s1, w2, s2, k):
    assert compare_ratio(k * w1, k * s1, k * w2, k * s2) is compare_ratio(w1, s1, w2, s2)


@given(waits, services, waits, services)
def test_compare_ratio_antisymmetric(w1, s1, w2, s2):
    assert compare_ratio(w1, s1, w2, s2) == -compare_ratio(w2, s2, w1, s1)


@given(st.lists(st.tuples(waits, services), min_size=3, max_size=3))
def test_compare_ratio_transitive(triple):
    (a, b, c) = triple
    ab = compare_ratio(*a, *b)
    bc = compare_ratio(*b, *c)
    if ab <= 0 and bc <= 0:
        assert compare_ratio(*a, *c) <= 0
    if ab >= 0 and bc >= 0:
        assert compare_ratio(*a, *c) >= 0


def test_job_rejects_nonpositive_service():
    with pytest.raises(ParameterError):
        Job(0, 0, 0)


def test_trace_ordering_enforced():
    with pytest.raises(ParameterError):
        JobTrace((Job(1, 5, 1), Job(0, 0, 1)))
    with pytest.raises(ParameterError):
        JobTrace((Job(0, 0, 1), Job(0, 1, 1)))
    trace = JobTrace.from_jobs([Job(1, 5, 1), Job(0, 0, 1)])
    assert [j.id for j in trace] == [0, 1]


def test_completion_record_derived_fields():
    r = CompletionRecord(3, arrival_us=10, service_us=5, server_id=0, start_us=12, completion_us=17)
    assert r.wait_us == 2
    assert r.turnaround_us == 7 == r.wait_us + r.service_us


def test_farm_config_defaults_and_validation():
    cfg = FarmConfig.for_policy("hrrn", 3)
    assert cfg.queue_model is QueueModel.CENTRAL
    assert cfg.ordering_policy is OrderingPolicy.HRRN
    assert cfg.weights == (1, 1, 1)
    wrr = FarmConfig.for_policy("wrr", 3, weights=[4, 3, 2])
    assert wrr.routing_policy is RoutingPolicy.WRR and wrr.weights == (4, 3, 2)
    assert FarmConfig.for_policy("srpt", 1).policy_label == "srpt"
    for bad in (
        lambda: FarmConfig.for_policy("wrr", 2, weights=[1]),
        lambda: FarmConfig.for_policy("wrr", 2, weights=[1, 0]),
        lambda: FarmConfig.for_policy("fcfs", 0),
        lambda: FarmConfig.for_policy("ps", 2),
        lambda: FarmConfig.for_policy("rr", 2, seed=-1),
    ):
        with pytest.raises(ParameterError):
            bad()
