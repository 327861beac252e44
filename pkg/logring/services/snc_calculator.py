"""Classes of s.n.c. pairs given as tables of strata."""
import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Mapping, Sequence, Tuple

import sympy

from logring.services.log_ring import LogClass, PPolynomial, tbar_of
from logring.services.motive_ring import (
    EPolynomial,
    MixedSymbolTableError,
    MotiveClass,
    SymbolTable,
    U_SYMBOL,
    V_SYMBOL,
    e_of,
)

logger = logging.getLogger(__name__)

Stratum = FrozenSet[str]


class SncSpecError(ValueError):
    pass


def stratum_key(stratum: Iterable[str]) -> str:
    return ",".join(sorted(stratum))


def parse_stratum_key(key: str) -> Stratum:
    key = key.strip()
    if not key:
        return frozenset()
    return frozenset(name.strip() for name in key.split(","))


def _sort_key(stratum: Stratum) -> Tuple[int, Tuple[str, ...]]:
    return len(stratum), tuple(sorted(stratum))


@dataclass(frozen=True)
class SncSpec:
    """Open strata D_I minus deeper strata; the empty key is the interior."""

    table: SymbolTable
    dimension: int
    components: Tuple[str, ...]
    open_strata: Mapping[Stratum, MotiveClass]

    def stratum(self, names: Iterable[str]) -> MotiveClass:
        return self.open_strata.get(frozenset(names), self.table.zero())

    def interior(self) -> MotiveClass:
        return self.stratum(())

    def items(self) -> List[Tuple[Stratum, MotiveClass]]:
        return sorted(self.open_strata.items(), key=lambda kv: _sort_key(kv[0]))

    def total_class(self) -> MotiveClass:
        total = self.table.zero()
        for _, value in self.items():
            total = total + value
        return total


def build_snc_spec(
    table: SymbolTable,
    dimension: int,
    components: Sequence[str],
    strata: Mapping[Stratum, MotiveClass],
    closed: bool = False,
) -> SncSpec:
    if dimension < 0:
        raise SncSpecError(f"dimension must be nonnegative, got {dimension}")
    if len(set(components)) != len(components):
        raise SncSpecError(f"component names must be distinct: {list(components)}")
    for name in components:
        if not name or "," in name:
            raise SncSpecError(f"invalid component name '{name}'")
    known = set(components)
    cleaned: Dict[Stratum, MotiveClass] = {}
    for stratum, value in strata.items():
        stratum = frozenset(stratum)
        unknown = stratum - known
        if unknown:
            raise SncSpecError(f"stratum '{stratum_key(stratum)}' uses unknown components {sorted(unknown)}")
        if value.table is not table:
            raise MixedSymbolTableError(f"stratum '{stratum_key(stratum)}' uses a different symbol table")
        if value.is_zero():
            continue
        if len(stratum) > dimension:
            raise SncSpecError(
                f"stratum '{stratum_key(stratum)}' meets {len(stratum)} components in dimension {dimension}"
            )
        cleaned[stratum] = value
    if closed:
        return strata_open_from_closed(table, dimension, tuple(components), cleaned)
    return SncSpec(table, dimension, tuple(components), cleaned)


def strata_open_from_closed(
    table: SymbolTable, dimension: int, components: Tuple[str, ...], closed: Mapping[Stratum, MotiveClass]
) -> SncSpec:
    """Moebius inversion over the subset lattice; absent supersets are empty intersections."""
    if frozenset() not in closed:
        raise SncSpecError("closed strata must include the whole variety under the empty key")
    for stratum in closed:
        for size in range(len(stratum)):
            for subset in combinations(sorted(stratum), size):
                if frozenset(subset) not in closed:
                    raise SncSpecError(
                        f"closed stratum '{stratum_key(stratum)}' is present "
                        f"but the stratum containing it '{stratum_key(subset)}' is missing"
                    )
    open_strata: Dict[Stratum, MotiveClass] = {}
    for stratum in closed:
        value = table.zero()
        for other, other_value in closed.items():
            if stratum <= other:
                value = value + (-1) ** (len(other) - len(stratum)) * other_value
        if not value.is_zero():
            open_strata[stratum] = value
    logger.debug("derived %d open strata from %d closed strata", len(open_strata), len(closed))
    return SncSpec(table, dimension, components, open_strata)


def snc_stratification(spec: SncSpec) -> PPolynomial:
    coefficients = [spec.table.zero() for _ in range(len(spec.components) + 1)]
    for stratum, value in spec.items():
        coefficients[len(stratum)] = coefficients[len(stratum)] + value
    return PPolynomial(spec.table, coefficients)


def snc_class(spec: SncSpec) -> LogClass:
    return snc_stratification(spec).reduce()


def rho_expansion(spec: SncSpec) -> MotiveClass:
    minus_gm = -spec.table.gm()
    total = spec.table.zero()
    for stratum, value in spec.items():
        total = total + minus_gm ** len(stratum) * value
    return total


@dataclass(frozen=True)
class ChiYBridge:
    lhs: sympy.Expr
    rhs: EPolynomial
    equal: bool


def chi_y_bridge(spec: SncSpec) -> ChiYBridge:
    """(-u)^n * chi_{-1/u}(interior) against the first component of tbar, with chi_y(V) = e(V)(-y, -1)."""
    interior = e_of(spec.interior()).to_expr()
    chi = interior.subs({U_SYMBOL: 1 / U_SYMBOL, V_SYMBOL: -1}, simultaneous=True)
    lhs = sympy.cancel((-U_SYMBOL) ** spec.dimension * chi)
    rhs = tbar_of(snc_class(spec)).first
    return ChiYBridge(lhs, rhs, sympy.cancel(lhs - rhs.to_expr()) == 0)


def _require_component(spec: SncSpec, component: str) -> None:
    if component not in spec.components:
        raise SncSpecError(f"unknown component '{component}'")


def drop_component(spec: SncSpec, component: str) -> SncSpec:
    """The same variety with the divisor shrunk by one component."""
    _require_component(spec, component)
    strata: Dict[Stratum, MotiveClass] = {}
    for stratum, value in spec.items():
        reduced = stratum - {component}
        strata[reduced] = strata.get(reduced, spec.table.zero()) + value
    components = tuple(c for c in spec.components if c != component)
    return build_snc_spec(spec.table, spec.dimension, components, strata)


def restrict_to_component(spec: SncSpec, component: str) -> SncSpec:
    """The component itself, carrying the divisor cut out by the others."""
    _require_component(spec, component)
    strata = {
        stratum - {component}: value for stratum, value in spec.items() if component in stratum
    }
    components = tuple(c for c in spec.components if c != component)
    if spec.dimension == 0:
        # no nonzero stratum meets a component here, so F is the empty pair
        return build_snc_spec(spec.table, 0, components, {})
    return build_snc_spec(spec.table, spec.dimension - 1, components, strata)


def component_class(spec: SncSpec, component: str) -> LogClass:
    """Class of a boundary component with the log structure pulled back from the pair."""
    _require_component(spec, component)
    coefficients = [spec.table.zero() for _ in range(len(spec.components) + 1)]
    for stratum, value in spec.items():
        if component in stratum:
            coefficients[len(stratum)] = coefficients[len(stratum)] + value
    return PPolynomial(spec.table, coefficients).reduce()


@dataclass(frozen=True)
class ResidueRecursion:
    lhs: EPolynomial
    rhs: EPolynomial
    holds: bool
    component_identity: bool
    complement_identity: bool


def residue_recursion(spec: SncSpec, component: str) -> ResidueRecursion:
    """tbar1(X) = tbar1(X') + u * tbar1(F^) for X' = X without F and F^ = F with the induced divisor."""
    dropped = drop_component(spec, component)
    restricted = restrict_to_component(spec, component)
    whole, smaller, face = snc_class(spec), snc_class(dropped), snc_class(restricted)
    lhs = tbar_of(whole).first
    rhs = tbar_of(smaller).first + EPolynomial.u() * tbar_of(face).first
    point = LogClass.log_point(spec.table)
    f_class = component_class(spec, component)
    return ResidueRecursion(
        lhs=lhs,
        rhs=rhs,
        holds=lhs == rhs,
        component_identity=f_class == face * point,
        complement_identity=whole - f_class == smaller - face,
    )
