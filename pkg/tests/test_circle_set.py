from __future__ import annotations

import math

import numpy as np
import pytest

from rieszap.util.circle_set import (
    TWO_PI,
    ArcSet,
    SAlphaSpec,
    auto_c0,
    boolean,
    build_component,
    build_S_alpha,
    complement,
    contains,
    contains_many,
    coverage_depth,
    difference,
    dilate_mod,
    intersect,
    measure,
    mu,
    normalize,
    removed_union,
    symmetric_difference_measure,
    union,
    union_all,
)
from rieszap.util.errors import InvalidInputError, ResourceLimitError

from tests.arc_factories import half_circle, random_arc_set, random_arc_sets, small_spec


def test_normalize_merges_overlaps() -> None:
    a = normalize([(0.5, 2.0), (0.0, 1.0), (3.0, 4.0)])
    assert len(a) == 2
    assert a.arcs[0].start == 0.0 and a.arcs[0].end == 2.0
    assert a.measure == pytest.approx(3.0, abs=1e-15)


def test_normalize_wraps_through_zero() -> None:
    a = normalize([(6.0, 0.5)])
    assert len(a) == 2
    assert a.starts[0] == 0.0
    assert a.ends[0] == pytest.approx(0.5)
    assert a.measure == pytest.approx(0.5 + TWO_PI - 6.0, abs=1e-12)


@pytest.mark.parametrize("raw", [[(0.0, TWO_PI)], [(1.0, 1.0 + 3 * math.pi)], [(0.0, 1.0), (-10.0, 10.0)]])
def test_normalize_full_turn(raw: list) -> None:
    a = normalize(raw)
    assert len(a) == 1
    assert a.measure == pytest.approx(TWO_PI)


@pytest.mark.parametrize("raw", [[(1.0, 1.0)], [(0.0, math.inf)], [(math.nan, 1.0)]])
def test_normalize_rejects_bad_arcs(raw: list) -> None:
    with pytest.raises(InvalidInputError):
        normalize(raw)


def test_empty_and_full() -> None:
    assert ArcSet.empty().is_empty()
    assert ArcSet.empty().measure == 0.0
    assert ArcSet.full().mu == 1.0
    assert complement(ArcSet.empty()).mu == 1.0
    assert complement(ArcSet.full()).is_empty()


def test_set_operations() -> None:
    a = normalize([(0.0, 2.0)])
    b = normalize([(1.0, 3.0)])
    assert union(a, b).arcs[0].end == 3.0
    assert intersect(a, b).measure == pytest.approx(1.0)
    assert intersect(a, b).starts[0] == 1.0
    assert difference(a, b).measure == pytest.approx(1.0)
    assert difference(a, b).ends[0] == 1.0
    assert complement(a).measure == pytest.approx(TWO_PI - 2.0)
    assert union_all([a, b, normalize([(5.0, 6.0)])]).measure == pytest.approx(4.0)


def test_boolean_dispatch() -> None:
    a = half_circle()
    assert boolean("complement", a).measure == pytest.approx(math.pi)
    assert boolean("union", a, complement(a)).mu == pytest.approx(1.0)
    with pytest.raises(InvalidInputError):
        boolean("complement", a, a)
    with pytest.raises(InvalidInputError):
        boolean("union", a)
    with pytest.raises(InvalidInputError):
        boolean("xor", a, a)


@pytest.mark.parametrize("a", random_arc_sets(10))
def test_complement_partitions_circle(a: ArcSet) -> None:
    c = complement(a)
    assert a.measure + c.measure == pytest.approx(TWO_PI, abs=1e-12)
    assert intersect(a, c).measure <= 1e-12
    assert symmetric_difference_measure(complement(c), a) <= 1e-12


def test_contains_is_half_open() -> None:
    a = normalize([(0.0, 2.0)])
    assert contains(a, 0.0)
    assert contains(a, 1.999)
    assert not contains(a, 2.0)
    assert not contains(a, -0.1)
    assert contains(a, TWO_PI + 1.0)
    np.testing.assert_array_equal(contains_many(a, [0.0, 2.0, 1.0, -0.1]), [True, False, True, False])


def test_coverage_depth() -> None:
    assert coverage_depth([0.0, 0.5, 0.7], [1.0, 1.5, 0.8]) == 3
    assert coverage_depth([0.0, 1.0], [1.0, 2.0]) == 1
    assert coverage_depth([6.0, 0.0], [6.5, 0.1]) == 2
    assert coverage_depth([0.0], [TWO_PI + 0.5]) == 2
    assert coverage_depth([], []) == 0


def test_spec_validation() -> None:
    with pytest.raises(InvalidInputError):
        SAlphaSpec.create(1.0, 0.2, 10)
    with pytest.raises(InvalidInputError):
        SAlphaSpec.create(0.5, 0.3, 10)
    with pytest.raises(InvalidInputError):
        SAlphaSpec.create(0.5, 0.2, 10, c0=0.25)
    with pytest.raises(InvalidInputError):
        SAlphaSpec.create(0.5, 0.2, 10, c0=0.1)
    with pytest.raises(InvalidInputError):
        SAlphaSpec.create(0.5, 0.2, -1)


@pytest.mark.parametrize("alpha", [0.2, 0.4, 0.5, 0.7, 0.9])
def test_auto_c0_fits_budget(alpha: float) -> None:
    spec = SAlphaSpec.create(alpha, 0.2, 10)
    assert spec.c0 == auto_c0(alpha, 0.2)
    assert spec.budget() < spec.eps


def test_tail_bound_shrinks() -> None:
    spec = small_spec()
    tails = [spec.truncated(L).tail_bound() for L in (0, 10, 100, 1000)]
    assert all(b < a for a, b in zip(tails, tails[1:]))
    assert tails[0] == pytest.approx(spec.budget())


@pytest.mark.parametrize("ell", [1, 2, 4, 7, 12])
def test_component_measure(ell: int) -> None:
    spec = small_spec()
    comp = build_component(spec, ell)
    assert comp.measure == pytest.approx(2 * spec.delta(ell), abs=1e-13)
    assert contains(comp, 0.0)


def test_coprime_component() -> None:
    spec = small_spec()
    comp = build_component(spec, 4, "coprime")
    assert len(comp) == 2
    assert contains(comp, math.pi / 2)
    assert contains(comp, 3 * math.pi / 2)
    assert not contains(comp, math.pi)
    assert symmetric_difference_measure(build_component(spec, 1, "coprime"), build_component(spec, 1)) == 0.0
    with pytest.raises(InvalidInputError):
        build_component(spec, 0)
    with pytest.raises(InvalidInputError):
        build_component(spec, 3, "odd")


def test_s_alpha_avoids_components() -> None:
    spec = small_spec(L=30)
    S = build_S_alpha(spec)
    assert S.measure >= TWO_PI - spec.budget()
    for ell in range(1, 31):
        assert intersect(S, build_component(spec, ell)).measure <= 1e-12


def test_s_alpha_variants_agree() -> None:
    spec = small_spec(L=30)
    full = build_S_alpha(spec)
    coprime = build_S_alpha(spec, variant="coprime")
    assert symmetric_difference_measure(full, coprime) <= 1e-10


def test_removed_union_arc_cap() -> None:
    with pytest.raises(ResourceLimitError):
        removed_union(small_spec(L=100), arc_cap=1000)
    assert removed_union(small_spec(L=0)).is_empty()


def test_dilate_mod() -> None:
    quarter = normalize([(0.0, math.pi / 2)])
    assert dilate_mod(quarter, 2).measure == pytest.approx(math.pi)
    assert dilate_mod(half_circle(), 2).mu == pytest.approx(1.0)
    assert dilate_mod(ArcSet.empty(), 3).is_empty()
    with pytest.raises(InvalidInputError):
        dilate_mod(quarter, 0)


def test_json_round_trip() -> None:
    for a in random_arc_sets(5):
        b = ArcSet.from_json_dict(a.to_json_dict())
        np.testing.assert_array_equal(a.starts, b.starts)
        np.testing.assert_array_equal(a.ends, b.ends)


def test_measure_functions() -> None:
    a = half_circle()
    assert measure(a) == pytest.approx(math.pi)
    assert mu(a) == pytest.approx(0.5)
    assert mu(ArcSet.empty()) == 0.0


@pytest.mark.parametrize("seed", range(6))
def test_measure_of_union_and_intersection(seed: int) -> None:
    a, b = random_arc_set(seed), random_arc_set(seed + 100, count=9)
    assert mu(union(a, b)) + mu(intersect(a, b)) == pytest.approx(mu(a) + mu(b), abs=1e-12)
