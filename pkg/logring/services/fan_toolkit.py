"""Rational polyhedral fans: validation, smoothness, Euler characteristic and toric classes.

All linear algebra is exact over QQ through sympy matrices; smoothness uses the
Smith invariant factors of the generator matrix over ZZ.
"""
import logging
import random
from dataclasses import dataclass, field
from enum import Enum as PyEnum
from functools import reduce
from itertools import combinations, product
from math import gcd
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from sympy import Matrix, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors

from logring.services.log_ring import LogClass, PPolynomial
from logring.services.motive_ring import SymbolTable

logger = logging.getLogger(__name__)

Cone = FrozenSet[int]
RayVec = Tuple[int, ...]


class FanValidationError(ValueError):
    def __init__(self, message: str, witness: Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]] = None):
        super().__init__(message)
        self.witness = witness


class SubdivisionError(ValueError):
    pass


class Completeness(str, PyEnum):
    COMPLETE = "complete"
    INCOMPLETE = "incomplete"
    UNKNOWN = "unknown"


def cone_key(cone: Cone) -> Tuple[int, Tuple[int, ...]]:
    return len(cone), tuple(sorted(cone))


@dataclass(frozen=True)
class Fan:
    ambient_dim: int
    rays: Tuple[RayVec, ...]
    cones: FrozenSet[Cone]
    cone_dims: Dict[Cone, int] = field(compare=False, hash=False, repr=False)
    simplicial: bool = True
    partially_validated: bool = False

    def dim(self, cone: Cone) -> int:
        return self.cone_dims[cone]

    def generators(self, cone: Cone) -> List[RayVec]:
        return [self.rays[i] for i in sorted(cone)]

    def sorted_cones(self) -> List[Cone]:
        return sorted(self.cones, key=cone_key)

    def cones_of_dim(self, k: int) -> List[Cone]:
        return [c for c in self.sorted_cones() if self.cone_dims[c] == k]

    def maximal_cones(self) -> List[Cone]:
        return [c for c in self.sorted_cones() if not any(c < other for other in self.cones)]

    def is_simplicial_cone(self, cone: Cone) -> bool:
        return self.cone_dims[cone] == len(cone)

    def to_data(self) -> dict:
        """Plain data for the JSON fan format; only maximal cones are listed."""
        return {
            "dim": self.ambient_dim,
            "rays": [list(r) for r in self.rays],
            "cones": [sorted(c) for c in self.maximal_cones()],
        }


def _rank(vectors: Sequence[Sequence[int]]) -> int:
    if not vectors:
        return 0
    return Matrix([list(v) for v in vectors]).rank()


def _span_coordinates(vectors: Sequence[RayVec]) -> List[Matrix]:
    """Coordinates of each vector in a basis of their span, chosen among the vectors."""
    basis: List[RayVec] = []
    for v in vectors:
        if _rank(basis + [v]) > len(basis):
            basis.append(v)
    bt = Matrix([list(b) for b in basis]).T
    projector = (bt.T * bt).inv() * bt.T
    return [projector * Matrix(list(v)) for v in vectors]


def _facets(rays: Sequence[RayVec], cone: Cone) -> List[Cone]:
    indices = sorted(cone)
    coords = _span_coordinates([rays[i] for i in indices])
    d = coords[0].rows
    facets: Set[Cone] = set()
    for subset in combinations(range(len(indices)), d - 1):
        if d == 1:
            normal = Matrix([1])
        else:
            rows = Matrix([list(coords[k]) for k in subset])
            if rows.rank() < d - 1:
                continue
            normal = rows.nullspace()[0]
        values = [(normal.T * c)[0] for c in coords]
        if all(x >= 0 for x in values) or all(x <= 0 for x in values):
            facets.add(frozenset(indices[k] for k, x in enumerate(values) if x == 0))
    return sorted(facets, key=cone_key)


def cone_faces(rays: Sequence[RayVec], cone: Cone) -> Set[Cone]:
    """All faces of a cone, as generator subsets; raises if it is not strongly convex."""
    cone = frozenset(cone)
    if not cone:
        return {cone}
    top = _facets(rays, cone)
    if not top or reduce(lambda a, b: a & b, top):
        raise FanValidationError(f"cone {sorted(cone)} is not strongly convex")
    faces: Set[Cone] = {frozenset()}
    pending = [cone]
    while pending:
        current = pending.pop()
        if current in faces:
            continue
        faces.add(current)
        pending.extend(_facets(rays, current))
    for i in cone:
        if frozenset({i}) not in faces:
            raise FanValidationError(f"generator {i} of cone {sorted(cone)} is not an extremal ray")
    return faces


def _intersection_violation(rays: Sequence[RayVec], sigma: Cone, tau: Cone) -> bool:
    """True if cone(sigma) and cone(tau) meet outside the cone on their common generators.

    The nonnegative solutions of S a = T b are generated by the sign-coherent circuits
    of [S | -T]; the intersection is a common face iff none of them uses a generator
    outside sigma & tau.
    """
    common = sigma & tau
    labels = sorted(sigma) + sorted(tau)
    columns = [Matrix(list(rays[i])) for i in sorted(sigma)] + [-Matrix(list(rays[j])) for j in sorted(tau)]
    for size in range(2, len(columns) + 1):
        for subset in combinations(range(len(columns)), size):
            kernel = Matrix.hstack(*[columns[k] for k in subset]).nullspace()
            if len(kernel) != 1:
                continue
            vec = list(kernel[0])
            if any(x == 0 for x in vec):
                continue
            if all(x > 0 for x in vec) or all(x < 0 for x in vec):
                if any(labels[k] not in common for k in subset):
                    return True
    return False


def validate_fan(ambient_dim: int, rays: Iterable[Sequence[int]], cones: Iterable[Iterable[int]]) -> Fan:
    """Build a validated, face-closed fan from raw rays and (maximal) cones."""
    if ambient_dim < 0:
        raise FanValidationError(f"ambient dimension must be nonnegative, got {ambient_dim}")
    ray_list: List[RayVec] = []
    for index, ray in enumerate(rays):
        ray = tuple(int(x) for x in ray)
        if len(ray) != ambient_dim:
            raise FanValidationError(f"ray {index} has length {len(ray)}, expected {ambient_dim}")
        if not any(ray):
            raise FanValidationError(f"ray {index} is zero")
        if gcd(*ray) != 1:
            raise FanValidationError(f"ray {index} {list(ray)} is not primitive")
        if ray in ray_list:
            raise FanValidationError(f"ray {index} {list(ray)} is listed twice")
        ray_list.append(ray)

    listed: Set[Cone] = {frozenset()}
    for cone in cones:
        cone = frozenset(int(i) for i in cone)
        for i in cone:
            if not 0 <= i < len(ray_list):
                raise FanValidationError(f"cone {sorted(cone)} refers to unknown ray {i}")
        listed.add(cone)
    listed.update(frozenset({i}) for i in range(len(ray_list)))

    closed: Set[Cone] = set()
    for cone in sorted(listed, key=cone_key, reverse=True):
        if cone in closed:
            continue
        closed |= cone_faces(ray_list, cone)

    dims = {c: _rank([ray_list[i] for i in c]) for c in closed}
    simplicial = all(dims[c] == len(c) for c in closed)
    maximal = sorted((c for c in closed if not any(c < o for o in closed)), key=cone_key)
    if simplicial:
        for sigma, tau in combinations(maximal, 2):
            if _intersection_violation(ray_list, sigma, tau):
                witness = (tuple(sorted(sigma)), tuple(sorted(tau)))
                raise FanValidationError(
                    f"cones {list(witness[0])} and {list(witness[1])} do not meet in a common face",
                    witness=witness,
                )
    else:
        logger.warning("fan has non-simplicial cones; intersections were not validated")

    fan = Fan(
        ambient_dim=ambient_dim,
        rays=tuple(ray_list),
        cones=frozenset(closed),
        cone_dims=dims,
        simplicial=simplicial,
        partially_validated=not simplicial,
    )
    logger.debug("validated fan: dim %d, %d rays, %d cones", ambient_dim, len(ray_list), len(closed))
    return fan


def cone_smoothness(fan: Fan) -> Dict[Cone, bool]:
    report: Dict[Cone, bool] = {}
    for cone in fan.sorted_cones():
        if not cone:
            report[cone] = True
            continue
        if not fan.is_simplicial_cone(cone):
            report[cone] = False
            continue
        gens = fan.generators(cone)
        matrix = DomainMatrix([[ZZ(x) for x in g] for g in gens], (len(gens), fan.ambient_dim), ZZ)
        factors = invariant_factors(matrix)
        report[cone] = len(factors) == len(gens) and all(abs(int(f)) == 1 for f in factors)
    return report


def is_smooth(fan: Fan) -> bool:
    return all(cone_smoothness(fan).values())


def chi_c_fan(fan: Fan) -> int:
    """Alternating count of relatively open cones; the zero cone contributes +1."""
    return sum((-1) ** fan.dim(c) for c in fan.cones)


def complex_class(n: int, chi_c_q: int, table: SymbolTable) -> LogClass:
    """[G_m]^n + chi_c(Q) * P * [G_m]^(n-1) for a fan over a polyhedral complex Q."""
    if n == 0:
        return LogClass.constant(table, 1)
    gm = table.gm()
    return LogClass(gm ** n, chi_c_q * gm ** (n - 1))


def toric_class(fan: Fan, table: SymbolTable) -> LogClass:
    if fan.ambient_dim == 0:
        logger.warning("toric class of the zero-dimensional fan is the class of a point")
        return LogClass.constant(table, 1)
    return complex_class(fan.ambient_dim, 1 - chi_c_fan(fan), table)


def stratification_class(fan: Fan, table: SymbolTable) -> Tuple[PPolynomial, LogClass]:
    """Sum over cones of [G_m]^(n - dim) * P^dim, before and after reduction."""
    n = fan.ambient_dim
    gm = table.gm()
    coefficients = [table.zero() for _ in range(n + 1)]
    for cone in fan.cones:
        k = fan.dim(cone)
        coefficients[k] = coefficients[k] + gm ** (n - k)
    unreduced = PPolynomial(table, coefficients)
    return unreduced, unreduced.reduce()


def _cone_coefficients(fan: Fan, cone: Cone, w: RayVec) -> Optional[List]:
    """Coefficients of w in the generators of a simplicial cone, or None if w is outside its span."""
    if not cone:
        return None
    g = Matrix([list(r) for r in fan.generators(cone)])
    coefficients = (g * g.T).inv() * g * Matrix(list(w))
    if g.T * coefficients != Matrix(list(w)):
        return None
    return list(coefficients)


def minimal_cone_containing(fan: Fan, w: Sequence[int]) -> Optional[Cone]:
    w = tuple(w)
    for cone in fan.maximal_cones():
        coefficients = _cone_coefficients(fan, cone, w)
        if coefficients is None or any(c < 0 for c in coefficients):
            continue
        return frozenset(i for i, c in zip(sorted(cone), coefficients) if c > 0)
    return None


def stellar_subdivide(fan: Fan, w: Sequence[int]) -> Fan:
    """Star subdivision of a simplicial fan at the primitive vector w."""
    w = tuple(int(x) for x in w)
    if not fan.simplicial:
        raise SubdivisionError("stellar subdivision needs a simplicial fan")
    if len(w) != fan.ambient_dim:
        raise SubdivisionError(f"ray {list(w)} has length {len(w)}, expected {fan.ambient_dim}")
    if not any(w) or gcd(*w) != 1:
        raise SubdivisionError(f"ray {list(w)} is not primitive")
    if w in fan.rays:
        raise SubdivisionError(f"ray {list(w)} is already a ray of the fan")
    star = minimal_cone_containing(fan, w)
    if star is None:
        raise SubdivisionError(f"ray {list(w)} is outside the support of the fan")

    new_index = len(fan.rays)
    cones: Set[Cone] = set()
    for sigma in fan.cones:
        if not star <= sigma:
            cones.add(sigma)
            continue
        for rho in fan.cones:
            if rho <= sigma and not star <= rho:
                cones.add(rho | {new_index})
    logger.debug("subdividing at %s inside cone %s", list(w), sorted(star))
    return validate_fan(fan.ambient_dim, list(fan.rays) + [w], cones)


def is_complete(fan: Fan) -> Completeness:
    n = fan.ambient_dim
    if not fan.simplicial:
        logger.warning("completeness is only decided for simplicial fans")
        return Completeness.UNKNOWN
    if n == 0:
        return Completeness.COMPLETE
    maximal = fan.maximal_cones()
    if any(fan.dim(c) != n for c in maximal):
        return Completeness.INCOMPLETE
    for wall in fan.cones_of_dim(n - 1):
        count = sum(1 for c in maximal if wall < c)
        if count == 1:
            return Completeness.INCOMPLETE
        if count > 2:
            return Completeness.UNKNOWN
    for probe in product((-1, 0, 1), repeat=n):
        if not any(probe):
            continue
        target = Matrix(list(probe))
        covered = False
        for cone in maximal:
            coefficients = Matrix([list(r) for r in fan.generators(cone)]).T.solve(target)
            if all(c >= 0 for c in coefficients):
                covered = True
                break
        if not covered:
            return Completeness.INCOMPLETE
    return Completeness.COMPLETE


def point_fan() -> Fan:
    return validate_fan(0, [], [[]])


def affine_space_fan(n: int) -> Fan:
    rays = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    return validate_fan(n, rays, [list(range(n))])


def projective_space_fan(n: int) -> Fan:
    if n == 0:
        return point_fan()
    rays = [[1 if i == j else 0 for j in range(n)] for i in range(n)] + [[-1] * n]
    return validate_fan(n, rays, [list(c) for c in combinations(range(n + 1), n)])


def punctured_plane_fan() -> Fan:
    return validate_fan(2, [[1, 0], [0, 1]], [[0], [1]])


def product_fan(first: Fan, second: Fan) -> Fan:
    m, n = first.ambient_dim, second.ambient_dim
    rays = [list(r) + [0] * n for r in first.rays] + [[0] * m + list(r) for r in second.rays]
    offset = len(first.rays)
    cones = [
        set(sigma) | {offset + j for j in tau}
        for sigma in first.maximal_cones()
        for tau in second.maximal_cones()
    ]
    return validate_fan(m + n, rays, cones)


def random_subdivision_chain(fan: Fan, length: int, rng: random.Random) -> List[Fan]:
    """Successive stellar subdivisions at barycentres of random cones of dimension >= 2."""
    chain: List[Fan] = []
    current = fan
    for _ in range(length):
        candidates = [c for c in current.sorted_cones() if current.dim(c) >= 2]
        if not candidates:
            break
        cone = rng.choice(candidates)
        summed = [sum(col) for col in zip(*current.generators(cone))]
        divisor = gcd(*summed)
        current = stellar_subdivide(current, [x // divisor for x in summed])
        chain.append(current)
    return chain
