from __future__ import annotations

import pytest

from digitop.core import ParameterError, VertexMap, compose, continuous_maps, cycle_image, identity_map, is_continuous
from digitop.cycles import (
    CycleTag,
    classify_cycle_selfmap,
    cycle_constant_map,
    expected_induced,
    flip_map,
    rotation_map,
)
from digitop.homology import induced_homology_map
from digitop.homotopy import Verdict, strongly_homotopic


def test_generators():
    for n in (4, 5, 7):
        ident = identity_map(cycle_image(n))
        assert rotation_map(n, 0) == ident
        assert compose(flip_map(n), flip_map(n)) == ident
        assert compose(rotation_map(n, 1), rotation_map(n, n - 1)) == ident
        assert is_continuous(flip_map(n)) and is_continuous(cycle_constant_map(n, 2))
    with pytest.raises(ParameterError):
        rotation_map(3, 1)


def test_classification_examples():
    assert str(classify_cycle_selfmap(rotation_map(5, 2))) == "IdentityClass(2)"
    assert classify_cycle_selfmap(cycle_constant_map(6, 0)).tag is CycleTag.CONSTANT
    f = compose(rotation_map(5, 1), flip_map(5))
    cls = classify_cycle_selfmap(f)
    assert cls.tag is CycleTag.FLIP and cls.parameter == 1


def test_classification_rejects_small_or_bad_input():
    with pytest.raises(ParameterError):
        classify_cycle_selfmap(rotation_map(4, 1))
    C5 = cycle_image(5)
    with pytest.raises(ParameterError):
        classify_cycle_selfmap(VertexMap(C5, C5, (0, 2, 4, 1, 3)))


@pytest.mark.parametrize("n", (5, 6))
def test_literal_equality_and_induced_values(n):
    maps = list(continuous_maps(cycle_image(n), cycle_image(n)))
    counts = {t: 0 for t in CycleTag}
    for f in maps:
        cls = classify_cycle_selfmap(f)
        counts[cls.tag] += 1
        if cls.tag is CycleTag.IDENTITY:
            assert all(f(i) == (i + cls.parameter) % n for i in range(n))
        elif cls.tag is CycleTag.FLIP:
            assert all(f(i) == (cls.parameter - i) % n for i in range(n))
        else:
            assert len(f.image()) < n
        for q in range(2):
            assert induced_homology_map(f, q).scalar() == expected_induced(f, q)
        assert expected_induced(f, 2) == 0 and induced_homology_map(f, 2).matrix.tolist() == []
    assert counts[CycleTag.IDENTITY] == n and counts[CycleTag.FLIP] == n


@pytest.mark.parametrize("n", (5, 6))
def test_constant_class_maps_are_strongly_null(n):
    C = cycle_image(n)
    for f in continuous_maps(C, C):
        if classify_cycle_selfmap(f).tag is CycleTag.CONSTANT:
            assert strongly_homotopic(f, cycle_constant_map(n, f(0))) is Verdict.YES


def test_expected_induced_values():
    assert expected_induced(rotation_map(6, 3), 1) == 1
    assert expected_induced(flip_map(6), 1) == -1
    assert expected_induced(cycle_constant_map(6, 1), 1) == 0
    assert expected_induced(flip_map(5), 0) == 1
    assert expected_induced(flip_map(5), 2) == 0
