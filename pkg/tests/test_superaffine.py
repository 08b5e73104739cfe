import random
from dataclasses import replace
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from kmweights.affine import AffineRealRoot, AffineWeight
from kmweights.superaffine import (
    HypothesisError,
    SuperSpecError,
    SupportCandidate,
    catalog,
    delta_lambda,
    delta_lambda_bound,
    integrable_support_rules,
    normalize_form,
    obstruction_run,
    string_closure,
    string_step,
    threshold_r,
)
from kmweights.tracecheck import check_trace


def even(spec):
    return [(str(t), s) for t, s in spec.even_components]


def test_catalog_rows():
    assert even(catalog("B(1,2)")) == [("B1", 1), ("C2", -1)]
    c3 = catalog("C(3)")
    assert even(c3) == [("C3", 1)] and c3.has_center_summand
    assert even(catalog("D(2,1;1/2)")) == [("D2", 1), ("A1", -1)]
    assert catalog("D(2,1;1/2)").parameter == Fraction(1, 2)
    assert even(catalog("A(0,1)")) == [("A1", 1)]
    assert even(catalog("A(2,1)")) == [("A2", 1), ("A1", -1)]
    assert even(catalog("F(4)")) == [("B3", 1), ("A1", -1)]
    assert even(catalog("G(3)")) == [("G2", 1), ("A1", -1)]
    assert even(catalog("D(3,2)")) == [("D3", 1), ("C2", -1)]


@pytest.mark.parametrize("name", ["B(1,1)", "A(3,2)", "D(2,1;3)", "F(4)", "G(3)", "D(4,1)"])
def test_exactly_one_negative_component(name):
    assert [s for _, s in catalog(name).even_components].count(-1) == 1


@pytest.mark.parametrize("bad", ["Q(2)", "B(1)", "D(2,1;0)", "D(2,1;-1)", "C(1)", "A(0,0)", "B(x,1)", "F(5)"])
def test_catalog_errors(bad):
    with pytest.raises(SuperSpecError):
        catalog(bad)


def test_normalized_forms():
    b1, c1 = normalize_form(catalog("B(1,1)"))
    assert b1.root_length2(b1.highest_root) == 2
    assert c1.root_length2(c1.highest_root) == -2
    (a1,) = normalize_form(catalog("A(0,1)"))
    assert a1.root_length2((1,)) == 2
    d2, a1 = normalize_form(catalog("D(2,1;2)"))
    assert {d2.root_length2(a) for a in d2.roots} == {2}
    assert a1.root_length2((1,)) == -2


def test_string_step_examples():
    spec = catalog("B(1,1)")
    first, second = spec.components()
    lam = AffineWeight((2, 0), 0, 1)
    out = string_step(first, lam, AffineRealRoot((1,), 0))
    assert first.coroot_value(lam, AffineRealRoot((1,), 0)) == 2
    assert out == AffineWeight((0, 0), 0, 1)
    assert string_step(first, AffineWeight((0, 0), 0, 1), AffineRealRoot((1,), 0)) is None
    # second component: (alpha - n delta)^vee = alpha^vee + n K, positive for large n
    lam = AffineWeight((0, -3), 0, 1)
    g = AffineRealRoot((1,), -4)
    assert second.coroot_value(lam, g) == 1
    assert string_step(second, lam, g) == AffineWeight((0, -5), 4, 1)
    with pytest.raises(SuperSpecError):
        string_step(second, lam, AffineRealRoot((2,), 0))


def test_delta_lambda_examples():
    spec = catalog("B(1,1)")
    lam = AffineWeight((0, -3), 0, 1)
    assert delta_lambda(spec, lam) == {AffineRealRoot((1,), -n) for n in (1, 2, 3)}
    assert threshold_r(delta_lambda(spec, lam)) == 4
    lam = AffineWeight((0, 1), 0, 1)
    # -alpha - delta pairs to 0, so it sits on the boundary of the n > 0 family
    assert delta_lambda(spec, lam) == {AffineRealRoot((-1,), -1)}
    assert delta_lambda(spec, lam, include_depth0=True) == {AffineRealRoot((-1,), -1), AffineRealRoot((-1,), 0)}


def test_delta_lambda_grows_linearly():
    spec = catalog("B(1,2)")
    sizes = [len(delta_lambda(spec, AffineWeight((0, -k, 0), 0, 1))) for k in range(0, 30, 5)]
    diffs = [b - a for a, b in zip(sizes, sizes[1:])]
    # per root the count is a floor of a linear function, so steps vary by at most |roots|
    assert min(diffs) > 0 and max(diffs) - min(diffs) <= 8


def test_delta_lambda_needs_positive_level():
    with pytest.raises(HypothesisError):
        delta_lambda(catalog("B(1,1)"), AffineWeight((0, 0), 0, 0))


def test_single_component_is_refused():
    spec = catalog("C(3)")
    with pytest.raises(HypothesisError):
        delta_lambda(spec, AffineWeight((0, 0, 0), 0, 1))
    S = SupportCandidate(spec, 1, {spec.zero_weight(1)}, 2)
    with pytest.raises(HypothesisError):
        obstruction_run(spec, S)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["B(1,1)", "B(1,2)", "D(2,1;1/2)", "G(3)", "A(1,2)"]), st.data(), st.integers(1, 3),
       st.booleans())
def test_delta_lambda_matches_closed_form(name, data, level, depth0):
    spec = catalog(name)
    fin = data.draw(st.lists(st.integers(-6, 3), min_size=spec.total_rank, max_size=spec.total_rank))
    lam = AffineWeight(tuple(fin), 0, level)
    assert len(delta_lambda(spec, lam, depth0)) == delta_lambda_bound(spec, lam, depth0)


def test_rules_examples():
    spec = catalog("B(1,1)")
    assert integrable_support_rules(spec, SupportCandidate(spec, 1, set(), 3)) == []
    S = SupportCandidate(spec, 1, {AffineWeight((1, 0), 0, 1)}, 0)
    (v,) = integrable_support_rules(spec, S)
    assert v.kind == "string" and v.component == 0 and v.root == AffineRealRoot((1,), 0)
    assert v.missing == AffineWeight((-1, 0), 0, 1)
    closed = string_closure(spec, [spec.zero_weight(1)], 1, 3)
    assert [v for v in integrable_support_rules(spec, closed) if v.kind == "string"] == []


def test_level_zero_refused():
    spec = catalog("B(1,1)")
    with pytest.raises(HypothesisError):
        obstruction_run(spec, SupportCandidate(spec, 0, {spec.zero_weight(0)}, 2))


def test_subclaim1_fixture():
    spec = catalog("B(1,1)")
    lam = spec.zero_weight(1)
    S = SupportCandidate(spec, 1, {lam, lam - spec.delta()}, 2)
    tr = obstruction_run(spec, S)
    assert tr.r == 1
    assert tr.verdict == "contradiction"
    assert tr.steps[-1].rule == "subclaim1"
    assert check_trace(spec, S, tr) == []


def _ladder(spec, depth):
    lam = AffineWeight((0, -depth), 0, 1)
    return SupportCandidate(spec, 1, {lam - spec.delta() * k for k in range(depth + 1)}, depth)


def test_window_mode_can_stay_consistent():
    spec = catalog("B(1,1)")
    S = _ladder(spec, 6)
    win = obstruction_run(spec, S, mode="window")
    assert win.verdict == "consistent-at-depth" and win.r == 7
    assert check_trace(spec, S, win) == []
    fin = obstruction_run(spec, S, mode="finite")
    assert fin.verdict == "contradiction" and fin.steps[-1].rule == "heisenberg"
    assert check_trace(spec, S, fin) == []


def test_empty_support_is_consistent():
    spec = catalog("B(1,1)")
    assert obstruction_run(spec, SupportCandidate(spec, 1, set(), 3)).verdict == "consistent-at-depth"


def test_checker_catches_tampering():
    spec = catalog("B(1,1)")
    S = string_closure(spec, [spec.zero_weight(1)], 1, 4)
    tr = obstruction_run(spec, S)
    assert check_trace(spec, S, tr) == []
    assert check_trace(spec, S, replace(tr, r=tr.r + 1))
    relabelled = tr.steps[:-1] + [replace(tr.steps[-1], conclusion="holds")]
    assert check_trace(spec, S, replace(tr, steps=relabelled))
    assert check_trace(spec, S, replace(tr, steps=tr.steps[:-1]))
    assert check_trace(spec, S, replace(tr, mode="finite", steps=tr.steps[:-1] + [
        replace(tr.steps[-1], conclusion="consistent-at-depth")]))
    assert check_trace(spec, S, replace(tr, steps=tr.steps[:-1] + [tr.steps[0]]))


def random_candidate(spec, rng, depth=6, level=1):
    n = spec.total_rank
    seeds = []
    for _ in range(rng.randint(1, 3)):
        fin = tuple(rng.randint(-3, 3) for _ in range(n))
        seeds.append(AffineWeight(fin, -rng.randint(0, depth), level))
    return string_closure(spec, seeds, level, depth)


@pytest.mark.parametrize("name", ["B(1,1)", "D(2,1;1/2)", "A(1,1)"])
def test_random_candidates_refuted(name):
    spec = catalog(name)
    rng = random.Random(7)
    for _ in range(4):
        S = random_candidate(spec, rng, depth=3)
        tr = obstruction_run(spec, S)
        assert tr.verdict == "contradiction"
        assert check_trace(spec, S, tr) == []
