# tests/test_oracle.py
import itertools
import logging

import pytest

from models.descriptor import IMod, TorsionF
from models.errors import OracleBoundsError
from models.fgmodule import FGModule, Partition, chi
from models.universe import UniverseBounds
from services.oracle import (
    check_two_three_closed,
    closure_fixpoint,
    demonstrate_not_wide,
    enumerate_modules,
    enumerate_subgroups,
    finite_ses_triples,
    primary_census,
    sandwich_check,
    sandwich_sweep,
    ses_exists,
)
from services.subcat import member


def test_enumerate_modules_counts():
    assert len(enumerate_modules(UniverseBounds(primes=(2,), max_rank=0, max_length_per_prime=2))) == 4
    assert enumerate_modules(UniverseBounds(primes=(), max_rank=1, max_length_per_prime=3)) == \
        [FGModule.zero(), FGModule.free(1)]
    assert len(enumerate_modules(UniverseBounds(primes=(2, 3), max_rank=0, max_length_per_prime=1))) == 4


def test_enumerate_modules_is_ordered_and_distinct(small_bounds):
    modules = enumerate_modules(small_bounds)
    assert modules[0] == FGModule.zero()
    assert len(set(modules)) == len(modules) == 7
    assert all(small_bounds.contains(X) for X in modules)


def test_bounds_validation():
    with pytest.raises(ValueError):
        UniverseBounds(primes=(4,))
    with pytest.raises(ValueError):
        UniverseBounds(max_rank=-1)
    with pytest.raises(ValueError):
        UniverseBounds(max_length_per_prime=3, working_length=2)
    assert UniverseBounds(primes=(3, 2, 3)).primes == (2, 3)
    assert UniverseBounds(max_length_per_prime=3).effective_working_length == 6


@pytest.mark.parametrize("text, count", [
    ("Z/4", 3),
    ("Z/2 + Z/2", 5),
    ("Z/4 + Z/2", 8),
    ("Z/3 + Z/3", 6),
    ("Z/5 + Z/5", 8),
    ("Z/6", 4),
    ("0", 1),
])
def test_subgroup_counts(M, text, count):
    assert len(enumerate_subgroups(M(text), 144)) == count


def test_subgroups_have_complementary_orders(M):
    X = M("Z/4 + Z/2 + Z/3")
    for sub, quotient in enumerate_subgroups(X, 144):
        assert sub.order() * quotient.order() == X.order()


def test_subgroup_enumeration_bounds(M):
    with pytest.raises(OracleBoundsError):
        enumerate_subgroups(M("Z + Z/2"), 144)
    with pytest.raises(OracleBoundsError):
        enumerate_subgroups(M("Z/256"), 144)
    with pytest.raises(OracleBoundsError):
        primary_census(2, Partition.of(8), 144)


@pytest.mark.parametrize("a, b, c, expected", [
    ("Z/2", "Z/4", "Z/2", True),
    ("Z/2", "Z/2 + Z/2", "Z/2", True),
    ("Z/4", "Z/2 + Z/2", "0", False),
    ("Z/2", "Z/8", "Z/4", True),
    ("Z/3", "Z/6", "Z/2", True),
    ("Z/2", "Z/4 + Z/2", "Z/4", True),
    ("Z/2 + Z/2", "Z/8", "Z/2", False),
    ("0", "Z/9", "Z/9", True),
    ("Z/3", "Z/9", "Z/2", False),
])
def test_ses_exists_examples(M, a, b, c, expected):
    assert ses_exists(M(a), M(b), M(c), 144) is expected


def test_ses_exists_rejects_infinite_modules(M):
    with pytest.raises(OracleBoundsError):
        ses_exists(M("Z"), M("Z"), FGModule.zero(), 144)


def test_ses_exists_caps_each_primary_component(M):
    assert ses_exists(M("Z/2 + Z/3"), M("Z/4 + Z/9"), M("Z/2 + Z/3"), 9)
    assert not ses_exists(M("Z/3"), M("Z/4 + Z/9"), M("Z/4"), 9)
    with pytest.raises(OracleBoundsError):
        ses_exists(M("Z/2"), M("Z/16"), M("Z/8"), 9)


def test_ses_exists_adds_lengths_and_is_self_dual(small_bounds):
    modules = enumerate_modules(small_bounds)
    found = 0
    for A, B, C in itertools.product(modules, repeat=3):
        exists = ses_exists(A, B, C, 144)
        assert exists == ses_exists(C, B, A, 144)
        if exists:
            assert chi(B, 2) == chi(A, 2) + chi(C, 2)
            found += 1
    assert found > len(modules)


def test_finite_ses_triples_are_exact(two_three_bounds):
    for A, B, C in finite_ses_triples(two_three_bounds):
        assert ses_exists(A, B, C, two_three_bounds.max_order)


def test_closure_fixpoint_examples(M, small_bounds):
    assert closure_fixpoint([M("Z/2")], small_bounds) == frozenset(enumerate_modules(small_bounds))
    assert closure_fixpoint([], small_bounds) == frozenset()
    assert closure_fixpoint([FGModule.zero()], small_bounds) == {FGModule.zero()}
    even = UniverseBounds(primes=(2,), max_rank=0, max_length_per_prime=2)
    assert closure_fixpoint([M("Z/2 + Z/2")], even) == {FGModule.zero(), M("Z/4"), M("Z/2 + Z/2")}


def test_closure_fixpoint_rejects_generators_outside_the_universe(M, small_bounds):
    with pytest.raises(OracleBoundsError):
        closure_fixpoint([M("Z/3")], small_bounds)


@pytest.mark.slow
def test_closure_fixpoint_even_lengths(M):
    bounds = UniverseBounds(primes=(2,), max_rank=0, max_length_per_prime=4)
    expected = {X for X in enumerate_modules(bounds) if X.partition(2).total % 2 == 0}
    assert closure_fixpoint([M("Z/2 + Z/2")], bounds) == expected


def test_sandwich_mixed_torsion(M, two_three_bounds):
    report = sandwich_check([M("Z/4 + Z/3")], two_three_bounds)
    assert report.passed, [str(X) for X in report.witnesses]
    assert report.fixpoint == {FGModule.zero(), M("Z/4 + Z/3"), M("Z/2 + Z/2 + Z/3")}
    assert report.universe_size == 16


def test_sandwich_single_prime(M, small_bounds):
    report = sandwich_check([M("Z/2")], small_bounds)
    assert report.passed
    assert report.fixpoint_size == report.predicate_size == 7


def test_sandwich_positive_rank(M):
    bounds = UniverseBounds(primes=(5,), max_rank=3, max_length_per_prime=2)
    report = sandwich_check([M("Z + Z/5"), M("Z^2")], bounds)
    assert report.descriptor == IMod(1)
    assert report.passed
    assert report.universe_size == report.fixpoint_size == 16


def test_sandwich_reports_witnesses(M, monkeypatch):
    # a predicate accepting everything overshoots the closure of Z/2 ⊕ Z/2
    monkeypatch.setattr("services.oracle.member", lambda d, X: True)
    bounds = UniverseBounds(primes=(2,), max_rank=0, max_length_per_prime=2)
    report = sandwich_check([M("Z/2 + Z/2")], bounds)
    assert report.verdict == "FAIL"
    assert report.witnesses == (M("Z/2"),)


def test_sandwich_sweep_small_universe():
    bounds = UniverseBounds(primes=(2,), max_rank=1, max_length_per_prime=2)
    assert sandwich_sweep(bounds, max_generators=1) == []


def test_sandwich_check_does_not_format_disabled_log_lines(M, caplog, monkeypatch):
    def refuse(descriptor):
        raise AssertionError("classification formatted with logging disabled")

    caplog.set_level(logging.WARNING, logger="services.oracle")
    caplog.set_level(logging.WARNING, logger="services.subcat")
    monkeypatch.setattr("services.oracle.classification_line", refuse)
    monkeypatch.setattr("services.subcat.classification_line", refuse)
    bounds = UniverseBounds(primes=(2,), max_rank=0, max_length_per_prime=2)
    assert sandwich_check([M("Z/2 + Z/2")], bounds).passed


def test_repeated_fixpoints_reuse_the_bounds_mask(M, monkeypatch):
    bounds = UniverseBounds(primes=(2,), max_rank=1, max_length_per_prime=2)
    first = closure_fixpoint([M("Z/2")], bounds)
    calls = []
    original = UniverseBounds.contains

    def counting(self, X):
        calls.append(X)
        return original(self, X)

    monkeypatch.setattr(UniverseBounds, "contains", counting)
    assert closure_fixpoint([M("Z/2")], bounds) == first
    assert calls == []


def test_enumerated_universe_is_a_fresh_list(small_bounds):
    modules = enumerate_modules(small_bounds)
    modules.clear()
    assert len(enumerate_modules(small_bounds)) == 7


@pytest.mark.slow
def test_sandwich_sweep_default_universe():
    bounds = UniverseBounds(primes=(2, 3), max_rank=2, max_length_per_prime=3)
    assert sandwich_sweep(bounds, max_generators=2) == []


def test_check_two_three_closed(two_three_bounds, small_bounds):
    assert check_two_three_closed(lambda X: member(IMod(2), X), two_three_bounds).passed
    assert check_two_three_closed(lambda X: member(TorsionF.of([2], [(2,)]), X), small_bounds).passed
    result = check_two_three_closed(lambda X: chi(X, 2) <= 2, small_bounds)
    assert result.verdict == "FAIL"
    assert sum(1 for X in result.counterexample if chi(X, 2) <= 2) == 2


@pytest.mark.parametrize("k", [2, 3, 5])
def test_demonstrate_not_wide(k):
    demo = demonstrate_not_wide(k)
    assert demo.kernel == FGModule.free(k - 1)
    assert demo.descriptor == IMod(k)
    assert member(demo.descriptor, FGModule.free(k))
    assert not member(demo.descriptor, demo.kernel)


def test_demonstrate_not_wide_needs_k_at_least_two():
    with pytest.raises(ValueError):
        demonstrate_not_wide(1)
