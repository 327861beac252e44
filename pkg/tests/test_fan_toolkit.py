import logging
import random

import pytest

from logring.data.presets import PRESET_FANS
from logring.services.fan_toolkit import (
    Completeness,
    FanValidationError,
    SubdivisionError,
    affine_space_fan,
    chi_c_fan,
    complex_class,
    cone_smoothness,
    is_complete,
    is_smooth,
    minimal_cone_containing,
    product_fan,
    projective_space_fan,
    random_subdivision_chain,
    stellar_subdivide,
    stratification_class,
    toric_class,
    validate_fan,
)
from logring.services.log_ring import LogClass

SQUARE_CONE = ([[1, 0, 1], [0, 1, 1], [-1, 0, 1], [0, -1, 1]], [[0, 1, 2, 3]])


def assert_l_pure(x):
    assert x.scalar_part.is_l_pure() and x.p_part.is_l_pure(), x


def test_proper_and_affine_classes(table, fan):
    gm = table.gm()
    assert toric_class(fan("P1"), table) == LogClass(gm, table.constant(2))
    assert str(toric_class(fan("P1"), table)) == "(L - 1) + 2*P"
    assert toric_class(fan("P2"), table) == LogClass(gm * gm)
    assert toric_class(fan("A2"), table) == LogClass(gm * gm, gm)
    assert toric_class(fan("A2_minus_origin"), table) == LogClass(gm * gm, 2 * gm)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_affine_space(table, n):
    gm = table.gm()
    assert toric_class(affine_space_fan(n), table) == LogClass(gm ** n, gm ** (n - 1))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_projective_space(table, n):
    gm = table.gm()
    expected = LogClass(gm ** n, (1 - (-1) ** n) * gm ** (n - 1))
    fan = projective_space_fan(n)
    assert toric_class(fan, table) == expected
    assert is_complete(fan) == Completeness.COMPLETE
    assert is_smooth(fan)


@pytest.mark.parametrize("name", sorted(PRESET_FANS))
def test_stratification_reduces_to_toric_class(table, fan, name):
    _, reduced = stratification_class(fan(name), table)
    assert reduced == toric_class(fan(name), table)
    assert_l_pure(reduced)


def test_point_fan(table, fan):
    point = fan("point")
    assert chi_c_fan(point) == 1
    assert toric_class(point, table) == 1
    assert is_complete(point) == Completeness.COMPLETE
    assert complex_class(0, 5, table) == 1


def test_euler_characteristics(fan):
    assert chi_c_fan(fan("P1")) == -1
    assert chi_c_fan(fan("P2")) == 1
    assert chi_c_fan(fan("A2")) == 0
    assert chi_c_fan(fan("A2_minus_origin")) == -1
    assert chi_c_fan(product_fan(fan("P1"), fan("P2"))) == -1


def test_product_of_lines_is_the_plane(fan):
    assert product_fan(fan("A1"), fan("A1")) == fan("A2")
    assert is_complete(fan("P1xP1")) == Completeness.COMPLETE


def test_fan_data(fan):
    assert fan("P2").to_data() == {"dim": 2, "rays": [[1, 0], [0, 1], [-1, -1]], "cones": [[0, 1], [0, 2], [1, 2]]}


def test_face_closure_adds_rays_and_faces(fan):
    p2 = fan("P2")
    assert len(p2.cones) == 7
    assert [sorted(c) for c in p2.cones_of_dim(1)] == [[0], [1], [2]]


@pytest.mark.parametrize(
    "rays, cones, message",
    [
        ([[1, 0], [0]], [[0]], "length"),
        ([[0, 0]], [[0]], "zero"),
        ([[2, 0]], [[0]], "not primitive"),
        ([[1, 0], [1, 0]], [[0]], "listed twice"),
        ([[1, 0]], [[0, 1]], "unknown ray"),
        ([[1, 0], [-1, 0]], [[0, 1]], "strongly convex"),
        ([[1, 0], [1, 1], [0, 1]], [[0, 1, 2]], "extremal ray"),
    ],
)
def test_validation_errors(rays, cones, message):
    with pytest.raises(FanValidationError, match=message):
        validate_fan(2, rays, cones)


def test_overlapping_cones_carry_a_witness():
    with pytest.raises(FanValidationError) as excinfo:
        validate_fan(2, [[1, 0], [0, 1], [1, 1]], [[0, 1], [1, 2]])
    assert excinfo.value.witness == ((0, 1), (1, 2))


def test_non_simplicial_fans_are_partially_validated(caplog):
    rays, cones = SQUARE_CONE
    with caplog.at_level(logging.WARNING):
        fan = validate_fan(3, rays, cones)
    assert fan.partially_validated
    assert not fan.simplicial
    assert len(fan.cones) == 10
    assert chi_c_fan(fan) == 0
    assert not is_smooth(fan)
    assert is_complete(fan) == Completeness.UNKNOWN
    assert "not validated" in caplog.text
    with pytest.raises(SubdivisionError):
        stellar_subdivide(fan, [0, 0, 1])


def test_smoothness_uses_the_lattice():
    fan = validate_fan(2, [[1, 0], [1, 2]], [[0, 1]])
    assert not is_smooth(fan)
    report = cone_smoothness(fan)
    assert report[frozenset({0})]
    assert not report[frozenset({0, 1})]


def test_minimal_cone_containing(fan):
    a2 = fan("A2")
    assert minimal_cone_containing(a2, (1, 0)) == frozenset({0})
    assert minimal_cone_containing(a2, (2, 1)) == frozenset({0, 1})
    assert minimal_cone_containing(a2, (-1, 0)) is None


def test_blowup_of_the_plane(table, fan):
    gm = table.gm()
    refined = stellar_subdivide(fan("A2"), [1, 1])
    assert len(refined.rays) == 3
    assert [sorted(c) for c in refined.maximal_cones()] == [[0, 2], [1, 2]]
    unreduced, reduced = stratification_class(refined, table)
    assert unreduced.coefficient(1) == 3 * gm
    assert unreduced.coefficient(2) == 2
    assert reduced == toric_class(fan("A2"), table)
    assert is_smooth(refined)


@pytest.mark.parametrize(
    "ray, message",
    [([1, 0], "already a ray"), ([2, 2], "not primitive"), ([-1, 0], "outside the support"), ([1, 1, 1], "length")],
)
def test_subdivision_errors(fan, ray, message):
    with pytest.raises(SubdivisionError, match=message):
        stellar_subdivide(fan("A2"), ray)


@pytest.mark.parametrize("name", ["A2", "A3", "P2", "P1xP1"])
@pytest.mark.parametrize("seed", range(5))
def test_subdivision_chains_preserve_invariants(table, fan, name, seed):
    base = fan(name)
    expected = (toric_class(base, table), chi_c_fan(base), is_complete(base))
    chain = random_subdivision_chain(base, 4, random.Random(seed))
    assert len(chain) == 4
    for refined in chain:
        assert (toric_class(refined, table), chi_c_fan(refined), is_complete(refined)) == expected
        reduced = stratification_class(refined, table)[1]
        assert reduced == expected[0]
        assert_l_pure(reduced)
        assert is_smooth(refined)
