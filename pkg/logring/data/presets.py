"""Preset fans, symbol tables, s.n.c. specs and constant free bases used by the CLI and the verify suites."""
from functools import lru_cache
from typing import Callable, Dict, List, Tuple

from logring.services.fan_toolkit import (
    Fan,
    affine_space_fan,
    point_fan,
    product_fan,
    projective_space_fan,
    punctured_plane_fan,
    stellar_subdivide,
)
from logring.services.motive_ring import EPolynomial, MotiveClass, SymbolTable
from logring.services.snc_calculator import SncSpec, build_snc_spec


def _blowup_a2() -> Fan:
    return stellar_subdivide(affine_space_fan(2), (1, 1))


PRESET_FANS: Dict[str, Callable[[], Fan]] = {
    "point": point_fan,
    "A1": lambda: affine_space_fan(1),
    "A2": lambda: affine_space_fan(2),
    "A3": lambda: affine_space_fan(3),
    "A4": lambda: affine_space_fan(4),
    "A2_minus_origin": punctured_plane_fan,
    "A2_blowup": _blowup_a2,
    "P1": lambda: projective_space_fan(1),
    "P2": lambda: projective_space_fan(2),
    "P3": lambda: projective_space_fan(3),
    "P4": lambda: projective_space_fan(4),
    "P1xP1": lambda: product_fan(projective_space_fan(1), projective_space_fan(1)),
}

COMPLETE_SMOOTH_FANS = ("P1", "P2", "P1xP1")


@lru_cache(maxsize=None)
def preset_fan(name: str) -> Fan:
    try:
        factory = PRESET_FANS[name]
    except KeyError:
        raise ValueError(f"unknown fan preset '{name}'; choose from {sorted(PRESET_FANS)}") from None
    return factory()


def duality_domain_table() -> SymbolTable:
    """L plus an elliptic curve E and a K3-type surface K, both smooth projective and Serre symmetric."""
    table = SymbolTable()
    table.register("E", EPolynomial.from_triples([(0, 0, 1), (1, 0, -1), (0, 1, -1), (1, 1, 1)]), 1, True)
    table.register(
        "K",
        EPolynomial.from_triples([(0, 0, 1), (2, 0, 1), (1, 1, 20), (0, 2, 1), (2, 2, 1)]),
        2,
        True,
    )
    return table


def constant_free_bases(table: SymbolTable) -> List[Tuple[str, MotiveClass, int]]:
    """(label, class of the smooth projective base, dimension)."""
    L = table.lefschetz()
    return [
        ("pt", table.one(), 0),
        ("P1", L + 1, 1),
        ("P2", L * L + L + 1, 2),
        ("P1xP1", (L + 1) * (L + 1), 2),
    ]


def _snc(table: SymbolTable, dim: int, components: List[str], strata: Dict[str, MotiveClass], closed=False) -> SncSpec:
    parsed = {frozenset(k.split(",")) if k else frozenset(): v for k, v in strata.items()}
    return build_snc_spec(table, dim, components, parsed, closed=closed)


def preset_snc_specs(table: SymbolTable) -> Dict[str, SncSpec]:
    L = table.lefschetz()
    gm = table.gm()
    one = table.one()
    return {
        "P1_empty": _snc(table, 1, [], {"": L + 1}),
        "P1_one_point": _snc(table, 1, ["zero"], {"": L, "zero": one}),
        "P1_two_points": _snc(table, 1, ["infinity", "zero"], {"": gm, "zero": one, "infinity": one}),
        "P2_line": _snc(table, 2, ["line"], {"": L * L, "line": L + 1}),
        "P2_two_lines": _snc(table, 2, ["a", "b"], {"": L * L - L, "a": L, "b": L, "a,b": one}),
        "P2_triangle": _snc(
            table,
            2,
            ["x", "y", "z"],
            {"": gm * gm, "x": gm, "y": gm, "z": gm, "x,y": one, "x,z": one, "y,z": one},
        ),
        "P2_triangle_closed": _snc(
            table,
            2,
            ["x", "y", "z"],
            {"": L * L + L + 1, "x": L + 1, "y": L + 1, "z": L + 1, "x,y": one, "x,z": one, "y,z": one},
            closed=True,
        ),
        "P1xP1_boundary": _snc(
            table,
            2,
            ["h0", "h1", "v0", "v1"],
            {
                "": gm * gm,
                "h0": gm, "h1": gm, "v0": gm, "v1": gm,
                "h0,v0": one, "h0,v1": one, "h1,v0": one, "h1,v1": one,
            },
        ),
    }
