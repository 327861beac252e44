"""Model of the ordinary Grothendieck ring K0(Var).

Classes are integer Laurent polynomials in the Lefschetz class ``L`` and
ordinary polynomials in user-declared variety symbols. The model is a free
ring over the declared symbols: equality in the model implies equality in
K0(Var), never the converse.
"""
import logging
import re
from dataclasses import dataclass
from enum import Enum as PyEnum
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple, Union

import sympy
from sympy import ZZ
from sympy.polys.rings import ring

logger = logging.getLogger(__name__)

L_SYMBOL = "L"
RESERVED_NAMES = {L_SYMBOL, "P"}
_IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")

E_RING, _U, _V = ring("u,v", ZZ)
U_SYMBOL, V_SYMBOL = sympy.symbols("u v")


class SymbolTableError(ValueError):
    pass


class MixedSymbolTableError(ValueError):
    pass


class RealizationError(ValueError):
    pass


class DualityError(ValueError):
    pass


class ArithKind(str, PyEnum):
    ADD = "add"
    MUL = "mul"


class EPolynomial:
    """Exact bivariate integer polynomial in u, v (Hodge-Deligne generating function)."""

    __slots__ = ("_poly",)

    def __init__(self, poly=None):
        self._poly = E_RING.zero if poly is None else poly

    @classmethod
    def from_dict(cls, coefficients: Mapping[Tuple[int, int], int]) -> "EPolynomial":
        for (p, q) in coefficients:
            if p < 0 or q < 0:
                raise ValueError(f"negative degree ({p}, {q}) in e-polynomial")
        return cls(E_RING.from_dict({tuple(m): int(c) for m, c in coefficients.items() if c}))

    @classmethod
    def from_triples(cls, triples: Iterable[Tuple[int, int, int]]) -> "EPolynomial":
        coefficients: Dict[Tuple[int, int], int] = {}
        for p, q, c in triples:
            coefficients[(p, q)] = coefficients.get((p, q), 0) + c
        return cls.from_dict(coefficients)

    @classmethod
    def constant(cls, c: int) -> "EPolynomial":
        return cls(E_RING(c))

    @classmethod
    def u(cls) -> "EPolynomial":
        return cls(_U)

    @classmethod
    def v(cls) -> "EPolynomial":
        return cls(_V)

    def coefficients(self) -> Dict[Tuple[int, int], int]:
        return {tuple(m): int(c) for m, c in self._poly.items()}

    def coefficient(self, p: int, q: int = 0) -> int:
        return int(self._poly.get((p, q), 0))

    def is_zero(self) -> bool:
        return not self._poly

    def total_degree(self) -> int:
        if not self._poly:
            return -1
        return max(p + q for p, q in self._poly.keys())

    def degree_u(self) -> int:
        return max((p for p, _ in self._poly.keys()), default=-1)

    def degree_v(self) -> int:
        return max((q for _, q in self._poly.keys()), default=-1)

    def substitute(self, u: Optional[int] = None, v: Optional[int] = None) -> "EPolynomial":
        poly = self._poly
        if u is not None:
            poly = poly.subs(_U, u)
        if v is not None:
            poly = poly.subs(_V, v)
        return EPolynomial(poly)

    def evaluate(self, u: int, v: int) -> int:
        return int(self._poly.evaluate([(_U, u), (_V, v)]))

    def reflect(self, dimension: int) -> "EPolynomial":
        """(uv)^d * e(1/u, 1/v); only meaningful when both degrees are at most d."""
        return EPolynomial.from_dict(
            {(dimension - p, dimension - q): c for (p, q), c in self.coefficients().items()}
        )

    def to_expr(self) -> sympy.Expr:
        return self._poly.as_expr(U_SYMBOL, V_SYMBOL)

    def __add__(self, other: "EPolynomial") -> "EPolynomial":
        return EPolynomial(self._poly + _as_poly(other))

    __radd__ = __add__

    def __sub__(self, other: "EPolynomial") -> "EPolynomial":
        return EPolynomial(self._poly - _as_poly(other))

    def __rsub__(self, other: int) -> "EPolynomial":
        return EPolynomial(_as_poly(other) - self._poly)

    def __mul__(self, other: "EPolynomial") -> "EPolynomial":
        return EPolynomial(self._poly * _as_poly(other))

    __rmul__ = __mul__

    def __neg__(self) -> "EPolynomial":
        return EPolynomial(-self._poly)

    def __pow__(self, exponent: int) -> "EPolynomial":
        if exponent < 0:
            raise ValueError("e-polynomials only take nonnegative powers")
        return EPolynomial(self._poly ** exponent)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = EPolynomial.constant(other)
        if not isinstance(other, EPolynomial):
            return NotImplemented
        return self.coefficients() == other.coefficients()

    def __hash__(self) -> int:
        return hash(frozenset(self.coefficients().items()))

    def __repr__(self) -> str:
        return f"EPolynomial({self})"

    def __str__(self) -> str:
        if not self._poly:
            return "0"
        terms = sorted(self.coefficients().items(), key=lambda t: (t[0][0] + t[0][1], t[0]))
        pieces = []
        for (p, q), c in terms:
            factors = [_power_str("u", p), _power_str("v", q)]
            monomial = "*".join(f for f in factors if f)
            pieces.append(_signed_term(c, monomial))
        return _join_terms(pieces)


def _as_poly(value):
    if isinstance(value, EPolynomial):
        return value._poly
    if isinstance(value, int):
        return E_RING(value)
    raise TypeError(f"cannot combine EPolynomial with {type(value).__name__}")


def _power_str(name: str, exponent: int) -> str:
    if exponent == 0:
        return ""
    if exponent == 1:
        return name
    return f"{name}^{exponent}"


def _signed_term(coefficient: int, monomial: str) -> Tuple[str, str]:
    sign = "-" if coefficient < 0 else "+"
    magnitude = abs(coefficient)
    if not monomial:
        return sign, str(magnitude)
    if magnitude == 1:
        return sign, monomial
    return sign, f"{magnitude}*{monomial}"


def _join_terms(pieces: List[Tuple[str, str]]) -> str:
    out = ""
    for i, (sign, body) in enumerate(pieces):
        if i == 0:
            out = f"-{body}" if sign == "-" else body
        else:
            out += f" {sign} {body}"
    return out


@dataclass(frozen=True)
class VarietySymbol:
    name: str
    e_poly: EPolynomial
    dimension: int
    smooth_projective: bool

    def serre_symmetric(self) -> bool:
        return self.e_poly.reflect(self.dimension) == self.e_poly


Monomial = Tuple[Tuple[str, int], ...]


class SymbolTable:
    """Append-only table of variety symbols; ``L`` is predeclared."""

    def __init__(self):
        self._symbols: Dict[str, VarietySymbol] = {
            L_SYMBOL: VarietySymbol(L_SYMBOL, EPolynomial.from_dict({(1, 1): 1}), 1, False)
        }

    def register(
        self,
        name: str,
        e_poly: EPolynomial,
        dimension: int,
        smooth_projective: bool = False,
        empty: bool = False,
    ) -> VarietySymbol:
        """Declare a new variety symbol; ``empty`` allows the zero e-polynomial."""
        if not _IDENTIFIER.fullmatch(name):
            raise SymbolTableError(f"'{name}' is not a valid symbol name")
        if name in self._symbols or name in RESERVED_NAMES:
            raise SymbolTableError(f"symbol '{name}' is already registered")
        if dimension < 0:
            raise SymbolTableError(f"symbol '{name}' has negative dimension {dimension}")
        if e_poly.is_zero() and not empty:
            raise SymbolTableError(f"symbol '{name}' has zero e-polynomial but is not declared empty")
        if smooth_projective and e_poly.total_degree() > 2 * dimension:
            raise SymbolTableError(
                f"symbol '{name}' is smooth projective of dimension {dimension} "
                f"but its e-polynomial has total degree {e_poly.total_degree()}"
            )
        symbol = VarietySymbol(name, e_poly, dimension, smooth_projective)
        self._symbols[name] = symbol
        logger.debug("registered symbol %s (dim %d, e=%s)", name, dimension, e_poly)
        return symbol

    def __getitem__(self, name: str) -> VarietySymbol:
        try:
            return self._symbols[name]
        except KeyError:
            raise SymbolTableError(f"unknown symbol '{name}'") from None

    def __contains__(self, name: str) -> bool:
        return name in self._symbols

    def zero(self) -> "MotiveClass":
        return MotiveClass(self, {})

    def one(self) -> "MotiveClass":
        return self.constant(1)

    def constant(self, value: int) -> "MotiveClass":
        return MotiveClass(self, {(): value})

    def lefschetz(self, exponent: int = 1) -> "MotiveClass":
        return MotiveClass(self, {((L_SYMBOL, exponent),): 1} if exponent else {(): 1})

    def gm(self) -> "MotiveClass":
        """[G_m] = L - 1."""
        return self.lefschetz() - 1

    def symbol(self, name: str) -> "MotiveClass":
        self[name]
        return MotiveClass(self, {((name, 1),): 1})


def _normalize_monomial(exponents: Mapping[str, int]) -> Monomial:
    return tuple(sorted((name, e) for name, e in exponents.items() if e))


def _monomial_product(a: Monomial, b: Monomial) -> Monomial:
    exponents = dict(a)
    for name, e in b:
        exponents[name] = exponents.get(name, 0) + e
    return _normalize_monomial(exponents)


class MotiveClass:
    """Immutable element of the modeled K0(Var)[L^-1]."""

    __slots__ = ("table", "_terms", "_key")

    def __init__(self, table: SymbolTable, terms: Mapping[Monomial, int]):
        cleaned: Dict[Monomial, int] = {}
        for monomial, coefficient in terms.items():
            monomial = _normalize_monomial(dict(monomial))
            for name, e in monomial:
                if name != L_SYMBOL and e < 0:
                    raise SymbolTableError(f"symbol '{name}' cannot carry negative exponent {e}")
            total = cleaned.get(monomial, 0) + int(coefficient)
            if total:
                cleaned[monomial] = total
            else:
                cleaned.pop(monomial, None)
        self.table = table
        self._terms = cleaned
        self._key = tuple(sorted(cleaned.items()))

    def terms(self) -> Iterator[Tuple[Monomial, int]]:
        return iter(self._key)

    def is_zero(self) -> bool:
        return not self._terms

    def symbols(self) -> List[str]:
        return sorted({name for monomial in self._terms for name, _ in monomial})

    def is_l_pure(self) -> bool:
        return all(name == L_SYMBOL for name in self.symbols())

    def min_l_exponent(self) -> int:
        exponents = [dict(m).get(L_SYMBOL, 0) for m in self._terms]
        return min(exponents, default=0)

    def _coerce(self, other: Union["MotiveClass", int]) -> "MotiveClass":
        if isinstance(other, int):
            return self.table.constant(other)
        if not isinstance(other, MotiveClass):
            raise TypeError(f"cannot combine MotiveClass with {type(other).__name__}")
        if other.table is not self.table:
            raise MixedSymbolTableError("operands come from different symbol tables")
        return other

    def __add__(self, other):
        if not isinstance(other, (MotiveClass, int)):
            return NotImplemented
        other = self._coerce(other)
        terms = dict(self._terms)
        for monomial, coefficient in other._terms.items():
            terms[monomial] = terms.get(monomial, 0) + coefficient
        return MotiveClass(self.table, terms)

    __radd__ = __add__

    def __neg__(self):
        return MotiveClass(self.table, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, (MotiveClass, int)):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, (MotiveClass, int)):
            return NotImplemented
        other = self._coerce(other)
        terms: Dict[Monomial, int] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                monomial = _monomial_product(m1, m2)
                terms[monomial] = terms.get(monomial, 0) + c1 * c2
        return MotiveClass(self.table, terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = self.table.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def inverse(self) -> "MotiveClass":
        """Inverse of a unit, i.e. of ±L^k."""
        if len(self._terms) != 1:
            raise ValueError(f"{self} is not a unit")
        (monomial, coefficient), = self._terms.items()
        if abs(coefficient) != 1 or any(name != L_SYMBOL for name, _ in monomial):
            raise ValueError(f"{self} is not a unit")
        return MotiveClass(self.table, {tuple((n, -e) for n, e in monomial): coefficient})

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self._key == self.table.constant(other)._key
        if not isinstance(other, MotiveClass):
            return NotImplemented
        return self.table is other.table and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"MotiveClass({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for monomial, coefficient in sorted(self._terms.items(), reverse=True):
            factors = [n if e == 1 else f"{n}^{e}" for n, e in monomial]
            pieces.append(_signed_term(coefficient, "*".join(factors)))
        return _join_terms(pieces)


def mot_arith(a: MotiveClass, b: MotiveClass, kind: ArithKind) -> MotiveClass:
    if a.table is not b.table:
        raise MixedSymbolTableError("operands come from different symbol tables")
    if kind == ArithKind.ADD:
        return a + b
    return a * b


def register_symbol(
    table: SymbolTable,
    name: str,
    e_poly: EPolynomial,
    dimension: int,
    smooth_projective: bool = False,
    empty: bool = False,
) -> VarietySymbol:
    return table.register(name, e_poly, dimension, smooth_projective, empty)


def e_of(x: MotiveClass) -> EPolynomial:
    """Hodge-Deligne realization: L -> uv, each symbol -> its declared e-polynomial."""
    if x.min_l_exponent() < 0:
        raise RealizationError(f"e is only defined on K0(Var); {x} has a negative L-exponent")
    result = EPolynomial()
    for monomial, coefficient in x.terms():
        term = EPolynomial.constant(coefficient)
        for name, exponent in monomial:
            term = term * x.table[name].e_poly ** exponent
        result = result + term
    return result


def chi_c_of(x: MotiveClass) -> int:
    return e_of(x).evaluate(1, 1)


def e_laurent_of(x: MotiveClass) -> sympy.Expr:
    """e extended to K0[L^-1] as a rational function, L^-1 -> 1/(uv)."""
    result = sympy.Integer(0)
    for monomial, coefficient in x.terms():
        term = sympy.Integer(coefficient)
        for name, exponent in monomial:
            term *= x.table[name].e_poly.to_expr() ** exponent
        result += term
    return sympy.cancel(result)


def dual_of(x: MotiveClass) -> MotiveClass:
    """Classical duality: L -> L^-1 and S -> S * L^-dim(S) on smooth projective symbols."""
    table = x.table
    result = table.zero()
    for monomial, coefficient in x.terms():
        term = table.constant(coefficient)
        for name, exponent in monomial:
            if name == L_SYMBOL:
                term = term * table.lefschetz(-exponent)
                continue
            symbol = table[name]
            if not symbol.smooth_projective:
                raise DualityError(f"duality is undefined on symbol '{name}' (not smooth projective)")
            term = term * (table.symbol(name) * table.lefschetz(-symbol.dimension)) ** exponent
        result = result + term
    return result
