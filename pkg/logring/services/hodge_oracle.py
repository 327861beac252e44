"""Closed-form log Hodge numbers for split bundles on P^1, constant free and smooth proper toric inputs.

Nothing here goes through the ring; the values are the ground truth the
ring-side invariants are checked against.
"""
import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Tuple

from logring.services.log_ring import EBarPair
from logring.services.motive_ring import EPolynomial

logger = logging.getLogger(__name__)


class CertificateError(RuntimeError):
    pass


@dataclass(frozen=True)
class SplitBundle:
    """The bundle O(d_1) + ... + O(d_r) on P^1."""

    degrees: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(sorted(self.degrees)))

    @property
    def rank(self) -> int:
        return len(self.degrees)


P1_PRESETS: Dict[str, SplitBundle] = {
    "trivial": SplitBundle((-2,)),
    "one_point": SplitBundle((-1,)),
    "toric": SplitBundle((0,)),
    "constant_rank_one": SplitBundle((-2, 0)),
}

# presets whose log structure is constant free, with its rank
P1_CONSTANT_FREE_RANKS: Dict[str, int] = {"trivial": 0, "constant_rank_one": 1}


def p1_cohomology(d: int) -> Tuple[int, int]:
    return max(d + 1, 0), max(-d - 1, 0)


def exterior_power(bundle: SplitBundle, p: int) -> SplitBundle:
    if p < 0:
        raise ValueError(f"exterior power degree must be nonnegative, got {p}")
    if p > bundle.rank:
        return SplitBundle(())
    return SplitBundle(tuple(sum(subset) for subset in combinations(bundle.degrees, p)))


@dataclass(frozen=True)
class LogHodgeTable:
    """h^{p,q}_log including zero entries, p = 0..rank and q = 0..1."""

    rank: int
    entries: Dict[Tuple[int, int], int]

    def rows(self) -> List[List[int]]:
        return [[self.entries[(p, q)] for p in range(self.rank + 1)] for q in (0, 1)]

    def euler_characteristics(self) -> List[int]:
        return [self.entries[(p, 0)] - self.entries[(p, 1)] for p in range(self.rank + 1)]

    def e_poly(self) -> EPolynomial:
        return EPolynomial.from_dict(self.entries)


def elog_p1(bundle: SplitBundle) -> Tuple[LogHodgeTable, EPolynomial]:
    entries: Dict[Tuple[int, int], int] = {}
    for p in range(bundle.rank + 1):
        h0 = h1 = 0
        for d in exterior_power(bundle, p).degrees:
            a, b = p1_cohomology(d)
            h0 += a
            h1 += b
        entries[(p, 0)] = h0
        entries[(p, 1)] = h1
    table = LogHodgeTable(bundle.rank, entries)
    return table, table.e_poly()


@dataclass(frozen=True)
class ConstantFreeSpec:
    """Smooth projective base with constant free rank-r log structure."""

    base_e_poly: EPolynomial
    rank: int
    dimension: int

    def __post_init__(self):
        if self.rank < 0 or self.dimension < 0:
            raise ValueError("rank and dimension must be nonnegative")
        for (p, q), c in self.base_e_poly.coefficients().items():
            if c < 0:
                raise ValueError(f"base e-polynomial has negative coefficient {c} at u^{p} v^{q}")
            if p > self.dimension or q > self.dimension:
                raise ValueError(f"base e-polynomial has degree ({p}, {q}) beyond dimension {self.dimension}")


ONE_PLUS_U = EPolynomial.constant(1) + EPolynomial.u()


def elog_constant_free(spec: ConstantFreeSpec) -> EPolynomial:
    return spec.base_e_poly * ONE_PLUS_U ** spec.rank


def elog_smooth_proper_toric(n: int) -> EPolynomial:
    """Log differentials of a smooth proper toric variety form a trivial bundle of rank n."""
    if n < 0:
        raise ValueError(f"dimension must be nonnegative, got {n}")
    return ONE_PLUS_U ** n


def ebar_of(e: EPolynomial) -> EBarPair:
    return EBarPair(e.substitute(v=-1), e.substitute(u=0))


def log_euler_characteristics(e: EPolynomial, top: int) -> List[int]:
    """chi(wedge^p of log differentials) for p = 0..top, read off E(u, -1)."""
    first = e.substitute(v=-1)
    return [first.coefficient(p) for p in range(top + 1)]


def log_serre_duality(e: EPolynomial, rank: int, dimension: int) -> bool:
    """chi(wedge^(k+n-i)) == (-1)^n * chi(wedge^i) for all i."""
    top = rank + dimension
    chis = log_euler_characteristics(e, top)
    sign = (-1) ** dimension
    return all(chis[top - i] == sign * chis[i] for i in range(top + 1))


@dataclass(frozen=True)
class CounterexampleCertificate:
    difference: EPolynomial
    witness: Tuple[int, int]
    witness_coefficient: int
    log_reduction: EPolynomial
    trivial_reduction: EPolynomial


def counterexample_certificate() -> CounterexampleCertificate:
    """E^log(toric P^1) - E^log(P^1 with trivial log structure) - 2 has an odd coefficient.

    The two classes differ by 2[P] - 2[pt] in the log Grothendieck ring, so a
    motivic E^log would make the difference even. After v = -1 both sides agree.
    """
    _, toric = elog_p1(P1_PRESETS["toric"])
    _, trivial = elog_p1(P1_PRESETS["trivial"])
    point = EPolynomial.constant(1)
    log_point = elog_constant_free(ConstantFreeSpec(point, 1, 0))
    difference = toric - trivial - 2 * point

    odd = [(m, c) for m, c in sorted(difference.coefficients().items()) if c % 2]
    if not odd:
        raise CertificateError(f"difference {difference} has only even coefficients")
    witness, coefficient = odd[0]

    log_reduction = (toric - 2 * log_point).substitute(v=-1)
    trivial_reduction = (trivial - 2 * point).substitute(v=-1)
    if log_reduction != trivial_reduction:
        raise CertificateError(f"v = -1 reductions disagree: {log_reduction} != {trivial_reduction}")
    logger.debug("counterexample difference %s, odd coefficient at %s", difference, witness)
    return CounterexampleCertificate(difference, witness, coefficient, log_reduction, trivial_reduction)
