"""The log Grothendieck ring K0[P]/(P^2 + P[G_m]) in normal form a + bP."""
import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple, Union

import sympy

from logring.services.motive_ring import (
    ArithKind,
    EPolynomial,
    MixedSymbolTableError,
    MotiveClass,
    RealizationError,
    SymbolTable,
    U_SYMBOL,
    chi_c_of,
    dual_of,
    e_of,
)

logger = logging.getLogger(__name__)


class LogClass:
    """Element a + bP; P^2 is rewritten to -(L-1)P on every product."""

    __slots__ = ("scalar_part", "p_part")

    def __init__(self, scalar_part: MotiveClass, p_part: MotiveClass = None):
        if p_part is None:
            p_part = scalar_part.table.zero()
        if scalar_part.table is not p_part.table:
            raise MixedSymbolTableError("scalar and P parts come from different symbol tables")
        self.scalar_part = scalar_part
        self.p_part = p_part

    @classmethod
    def log_point(cls, table: SymbolTable) -> "LogClass":
        return cls(table.zero(), table.one())

    @classmethod
    def constant(cls, table: SymbolTable, value: int) -> "LogClass":
        return cls(table.constant(value))

    @property
    def table(self) -> SymbolTable:
        return self.scalar_part.table

    def is_zero(self) -> bool:
        return self.scalar_part.is_zero() and self.p_part.is_zero()

    def _coerce(self, other: Union["LogClass", MotiveClass, int]) -> "LogClass":
        if isinstance(other, LogClass):
            if other.table is not self.table:
                raise MixedSymbolTableError("operands come from different symbol tables")
            return other
        if isinstance(other, int):
            return LogClass.constant(self.table, other)
        if isinstance(other, MotiveClass):
            if other.table is not self.table:
                raise MixedSymbolTableError("operands come from different symbol tables")
            return LogClass(other)
        raise TypeError(f"cannot combine LogClass with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        return LogClass(self.scalar_part + other.scalar_part, self.p_part + other.p_part)

    __radd__ = __add__

    def __neg__(self):
        return LogClass(-self.scalar_part, -self.p_part)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        a, b = self.scalar_part, self.p_part
        c, d = other.scalar_part, other.p_part
        gm = self.table.gm()
        return LogClass(a * c, a * d + b * c - b * d * gm)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise ValueError("log classes only take nonnegative powers")
        result = LogClass.constant(self.table, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, MotiveClass)):
            other = self._coerce(other)
        if not isinstance(other, LogClass):
            return NotImplemented
        return (
            self.table is other.table
            and self.scalar_part == other.scalar_part
            and self.p_part == other.p_part
        )

    def __hash__(self) -> int:
        return hash((self.scalar_part, self.p_part))

    def __repr__(self) -> str:
        return f"LogClass({self})"

    def __str__(self) -> str:
        if self.p_part.is_zero():
            return str(self.scalar_part)
        p_term = _p_term(self.p_part)
        if self.scalar_part.is_zero():
            return p_term
        scalar = str(self.scalar_part)
        if len(list(self.scalar_part.terms())) > 1:
            scalar = f"({scalar})"
        if p_term.startswith("-"):
            return f"{scalar} - {p_term[1:]}"
        return f"{scalar} + {p_term}"


def _p_term(coefficient: MotiveClass) -> str:
    terms = list(coefficient.terms())
    if len(terms) > 1:
        return f"({coefficient})*P"
    text = str(coefficient)
    if text == "1":
        return "P"
    if text == "-1":
        return "-P"
    return f"{text}*P"


class PPolynomial:
    """Unreduced element of K0[P], e.g. a locally-constant-free stratification class."""

    __slots__ = ("table", "coefficients")

    def __init__(self, table: SymbolTable, coefficients: Sequence[MotiveClass]):
        coefficients = list(coefficients)
        while coefficients and coefficients[-1].is_zero():
            coefficients.pop()
        self.table = table
        self.coefficients: Tuple[MotiveClass, ...] = tuple(coefficients)

    def degree(self) -> int:
        return len(self.coefficients) - 1

    def coefficient(self, k: int) -> MotiveClass:
        if 0 <= k < len(self.coefficients):
            return self.coefficients[k]
        return self.table.zero()

    def __add__(self, other: "PPolynomial") -> "PPolynomial":
        size = max(len(self.coefficients), len(other.coefficients))
        return PPolynomial(self.table, [self.coefficient(k) + other.coefficient(k) for k in range(size)])

    def __mul__(self, other: "PPolynomial") -> "PPolynomial":
        if not self.coefficients or not other.coefficients:
            return PPolynomial(self.table, [])
        out = [self.table.zero()] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            for j, b in enumerate(other.coefficients):
                out[i + j] = out[i + j] + a * b
        return PPolynomial(self.table, out)

    def reduce(self) -> LogClass:
        """Apply P^k = (-(L-1))^(k-1) P for k >= 1."""
        scalar = self.coefficient(0)
        p_part = self.table.zero()
        minus_gm = -self.table.gm()
        for k in range(1, len(self.coefficients)):
            p_part = p_part + self.coefficients[k] * minus_gm ** (k - 1)
        return LogClass(scalar, p_part)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PPolynomial):
            return NotImplemented
        return self.table is other.table and self.coefficients == other.coefficients

    def __hash__(self) -> int:
        return hash(self.coefficients)

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        pieces = []
        for k, c in enumerate(self.coefficients):
            if c.is_zero():
                continue
            text = str(c)
            if k == 0:
                pieces.append(text)
                continue
            power = "P" if k == 1 else f"P^{k}"
            if text == "1":
                pieces.append(power)
            elif len(list(c.terms())) > 1:
                pieces.append(f"({text})*{power}")
            else:
                pieces.append(f"{text}*{power}")
        return " + ".join(pieces)


@dataclass(frozen=True)
class EBarPair:
    """(first, second) = (E(u, -1), E(0, v))."""

    first: EPolynomial
    second: EPolynomial

    def __post_init__(self):
        if self.first.degree_v() > 0 or self.second.degree_u() > 0:
            raise ValueError("first component must be univariate in u and second in v")

    def __str__(self) -> str:
        return f"({self.first}, {self.second})"


def log_arith(x: LogClass, y: LogClass, kind: ArithKind) -> LogClass:
    if x.table is not y.table:
        raise MixedSymbolTableError("operands come from different symbol tables")
    if kind == ArithKind.ADD:
        return x + y
    return x * y


def tau(x: LogClass) -> MotiveClass:
    """Log Betti map, P -> 0."""
    return x.scalar_part


def rho(x: LogClass) -> MotiveClass:
    """Log Hodge map, P -> -[G_m]."""
    return x.scalar_part - x.table.gm() * x.p_part


def chi_log(x: LogClass) -> int:
    if x.scalar_part.min_l_exponent() < 0:
        raise RealizationError(f"chi_log needs a class in K0(Var); {x} has a negative L-exponent")
    return chi_c_of(tau(x))


def t_of(x: LogClass) -> EPolynomial:
    return e_of(rho(x))


def tbar_of(x: LogClass) -> EBarPair:
    t = t_of(x)
    return EBarPair(t.substitute(v=-1), t.substitute(u=0))


def b_of(x: LogClass) -> EPolynomial:
    """P -> [pt], then e restricted to u = 0."""
    return e_of(x.scalar_part + x.p_part).substitute(u=0)


def duality_image_of_p(j: int, table: SymbolTable) -> LogClass:
    P = LogClass.log_point(table)
    l_inv = table.lefschetz(-1)
    if j == 1:
        return -P * l_inv
    if j == 2:
        return (P + table.gm()) * l_inv
    raise ValueError(f"duality index must be 1 or 2, got {j}")


def duality(j: int, x: LogClass) -> LogClass:
    """The involution i_j extending classical duality."""
    image = duality_image_of_p(j, x.table)
    return LogClass(dual_of(x.scalar_part)) + image * dual_of(x.p_part)


def tbar_serre_duality(x: LogClass) -> bool:
    """t1(i1(x)) == t1(x)(1/u), compared as rational functions."""
    def tbar1_expr(y: LogClass) -> sympy.Expr:
        rho_y = rho(y)
        shift = -rho_y.min_l_exponent()
        # clear L-denominators so that e applies, then divide back by e(L)^shift at v = -1
        cleared = e_of(rho_y * y.table.lefschetz(shift)).substitute(v=-1).to_expr()
        return cleared / (-U_SYMBOL) ** shift

    lhs = tbar1_expr(duality(1, x))
    rhs = tbar1_expr(x).subs(U_SYMBOL, 1 / U_SYMBOL)
    return sympy.cancel(lhs - rhs) == 0


def p_image_candidates(g: int) -> List[int]:
    """Integer solutions f of f * (f + g) = 0."""
    f = sympy.Symbol("f")
    return sorted(int(r) for r in sympy.roots(sympy.Poly(f * (f + g), f), filter="Z"))


@dataclass(frozen=True)
class DualityDiscrepancy:
    tau_residual: MotiveClass
    rho_residual: MotiveClass
    alpha_residual: MotiveClass
    annihilated_residual: MotiveClass

    @property
    def compatible(self) -> bool:
        return self.tau_residual.is_zero() and self.rho_residual.is_zero()

    @property
    def forced(self) -> bool:
        return self.alpha_residual.is_zero() and self.annihilated_residual.is_zero()


def duality_discrepancy(j: int, candidate: LogClass) -> DualityDiscrepancy:
    """Compare an alternative image alpha + beta*P of P against i_j(P).

    For j = 1 the compatibilities are tau(F(P)) = tau(P)^dual and rho(F(P)) = rho(P)^dual;
    for j = 2 they are rho(F(P)) = tau(P)^dual and tau(F(P)) = rho(P)^dual.
    """
    table = candidate.table
    P = LogClass.log_point(table)
    expected = duality_image_of_p(j, table)
    if j == 1:
        tau_residual = tau(candidate) - dual_of(tau(P))
        rho_residual = rho(candidate) - dual_of(rho(P))
    else:
        tau_residual = tau(candidate) - dual_of(rho(P))
        rho_residual = rho(candidate) - dual_of(tau(P))
    alpha_residual = candidate.scalar_part - expected.scalar_part
    annihilated_residual = table.gm() * (candidate.p_part - expected.p_part)
    return DualityDiscrepancy(tau_residual, rho_residual, alpha_residual, annihilated_residual)
