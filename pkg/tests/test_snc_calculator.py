import pytest

from logring.data.presets import preset_fan, preset_snc_specs
from logring.services.fan_toolkit import toric_class
from logring.services.log_ring import LogClass, rho, tbar_of
from logring.services.motive_ring import EPolynomial, MixedSymbolTableError, SymbolTable
from logring.services.snc_calculator import (
    SncSpecError,
    build_snc_spec,
    chi_y_bridge,
    component_class,
    drop_component,
    parse_stratum_key,
    residue_recursion,
    restrict_to_component,
    rho_expansion,
    snc_class,
    snc_stratification,
    stratum_key,
)

U = EPolynomial.u()
PRESET_NAMES = sorted(preset_snc_specs(SymbolTable()))


@pytest.fixture
def specs(table):
    return preset_snc_specs(table)


def test_stratum_keys():
    assert stratum_key({"b", "a"}) == "a,b"
    assert parse_stratum_key(" a, b ") == frozenset({"a", "b"})
    assert parse_stratum_key("") == frozenset()


@pytest.mark.parametrize(
    "spec_name, fan_name", [("P1_two_points", "P1"), ("P2_triangle", "P2"), ("P1xP1_boundary", "P1xP1")]
)
def test_toric_boundaries_give_toric_classes(table, specs, spec_name, fan_name):
    assert snc_class(specs[spec_name]) == toric_class(preset_fan(fan_name), table)


def test_closed_strata_invert_to_open_strata(specs):
    closed, opened = specs["P2_triangle_closed"], specs["P2_triangle"]
    assert dict(closed.open_strata) == dict(opened.open_strata)
    assert closed.total_class() == closed.table.lefschetz(2) + closed.table.lefschetz() + 1


def test_line_in_the_plane(table, specs):
    spec = specs["P2_line"]
    L = table.lefschetz()
    assert snc_stratification(spec).coefficient(1) == L + 1
    assert snc_class(spec) == LogClass(L * L, L + 1)
    assert rho(snc_class(spec)) == 1


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_rho_expansion(specs, name):
    spec = specs[name]
    assert rho_expansion(spec) == rho(snc_class(spec))


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_chi_y_bridge(specs, name):
    bridge = chi_y_bridge(specs[name])
    assert bridge.equal


def test_chi_y_bridge_on_the_toric_line(specs):
    bridge = chi_y_bridge(specs["P1_two_points"])
    assert bridge.rhs == 1 + U


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_residue_recursion(specs, name):
    spec = specs[name]
    for component in spec.components:
        result = residue_recursion(spec, component)
        assert result.holds, (component, str(result.lhs), str(result.rhs))
        assert result.component_identity
        assert result.complement_identity


def test_tbar_chain_on_the_line(specs):
    values = [tbar_of(snc_class(specs[n])).first for n in ("P1_two_points", "P1_one_point", "P1_empty")]
    assert values == [1 + U, EPolynomial.constant(1), 1 - U]


def test_drop_and_restrict(table, specs):
    spec = specs["P1_two_points"]
    dropped = drop_component(spec, "zero")
    assert dropped.components == ("infinity",)
    assert snc_class(dropped) == snc_class(specs["P1_one_point"])
    restricted = restrict_to_component(spec, "zero")
    assert restricted.dimension == 0
    assert snc_class(restricted) == 1
    assert component_class(spec, "zero") == LogClass.log_point(table)


def test_components_of_a_point_restrict_to_the_empty_pair(table):
    spec = build_snc_spec(table, 0, ["a"], {frozenset(): table.one()})
    restricted = restrict_to_component(spec, "a")
    assert restricted.dimension == 0
    assert restricted.open_strata == {}
    assert snc_class(restricted).is_zero()
    result = residue_recursion(spec, "a")
    assert result.holds and result.component_identity and result.complement_identity
    with pytest.raises(SncSpecError, match="unknown component"):
        drop_component(spec, "b")


def test_zero_strata_are_dropped(table):
    spec = build_snc_spec(table, 1, ["a"], {frozenset(): table.lefschetz(), frozenset({"a"}): table.zero()})
    assert list(spec.open_strata) == [frozenset()]


@pytest.mark.parametrize(
    "dimension, components, strata, message",
    [
        (-1, [], {"": 1}, "nonnegative"),
        (1, ["a", "a"], {"": 1}, "distinct"),
        (1, ["a,b"], {"": 1}, "invalid component"),
        (1, ["a"], {"b": 1}, "unknown components"),
        (1, ["a", "b"], {"a,b": 1}, "meets 2 components"),
    ],
)
def test_spec_errors(table, dimension, components, strata, message):
    parsed = {parse_stratum_key(k): table.constant(v) for k, v in strata.items()}
    with pytest.raises(SncSpecError, match=message):
        build_snc_spec(table, dimension, components, parsed)


def test_closed_strata_errors(table):
    with pytest.raises(SncSpecError, match="empty key"):
        build_snc_spec(table, 1, ["a"], {frozenset({"a"}): table.one()}, closed=True)
    with pytest.raises(SncSpecError, match="is missing"):
        build_snc_spec(
            table, 2, ["a", "b"], {frozenset(): table.one(), frozenset({"a", "b"}): table.one()}, closed=True
        )


def test_strata_must_share_the_table(table):
    with pytest.raises(MixedSymbolTableError):
        build_snc_spec(table, 1, [], {frozenset(): SymbolTable().one()})
