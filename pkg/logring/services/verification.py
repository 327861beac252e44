"""Verification suites over the ring, the fan toolkit, s.n.c. pairs, the Hodge oracle and the dualities.

A check is a zero-argument callable returning ``(passed, detail)``. Checks run
on a thread pool; results are reported in declaration order.
"""
import logging
import random
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

import sympy

from logring.config.settings import VerifySettings, settings
from logring.data.presets import (
    COMPLETE_SMOOTH_FANS,
    constant_free_bases,
    duality_domain_table,
    preset_fan,
    preset_snc_specs,
)
from logring.models.io_models import CheckResult, VerifyReport
from logring.services.fan_toolkit import (
    Completeness,
    chi_c_fan,
    complex_class,
    is_complete,
    is_smooth,
    product_fan,
    random_subdivision_chain,
    stratification_class,
    toric_class,
)
from logring.services.hodge_oracle import (
    P1_PRESETS,
    ConstantFreeSpec,
    counterexample_certificate,
    ebar_of,
    elog_constant_free,
    elog_p1,
    elog_smooth_proper_toric,
    log_serre_duality,
)
from logring.services.log_ring import (
    LogClass,
    PPolynomial,
    b_of,
    chi_log,
    duality,
    duality_discrepancy,
    duality_image_of_p,
    log_arith,
    p_image_candidates,
    rho,
    tau,
    tbar_of,
    tbar_serre_duality,
)
from logring.services.motive_ring import (
    ArithKind,
    EPolynomial,
    MotiveClass,
    SymbolTable,
    U_SYMBOL,
    V_SYMBOL,
    chi_c_of,
    dual_of,
    e_laurent_of,
    e_of,
)
from logring.services.snc_calculator import (
    chi_y_bridge,
    residue_recursion,
    rho_expansion,
    snc_class,
)

logger = logging.getLogger(__name__)

Outcome = Tuple[bool, str]
Check = Tuple[str, Callable[[], Outcome]]

SUITES = ("presentation", "toric", "snc", "hodge", "duality")

U = EPolynomial.u()
V = EPolynomial.v()


def random_motive(
    rng: random.Random, table: SymbolTable, symbols: Sequence[str], negative_l: bool = False, max_terms: int = 3
) -> MotiveClass:
    total = table.zero()
    for _ in range(rng.randint(0, max_terms)):
        term = table.constant(rng.randint(-3, 3)) * table.lefschetz(rng.randint(-2 if negative_l else 0, 2))
        for name in symbols:
            term = term * table.symbol(name) ** rng.randint(0, 1)
        total = total + term
    return total


def random_log_class(
    rng: random.Random, table: SymbolTable, symbols: Sequence[str], negative_l: bool = False
) -> LogClass:
    return LogClass(random_motive(rng, table, symbols, negative_l), random_motive(rng, table, symbols, negative_l))


def _rng(config: VerifySettings, name: str) -> random.Random:
    return random.Random(f"{config.seed}:{name}")


def _first_failure(cases: Iterable[Tuple[bool, str]], count: int) -> Outcome:
    for passed, detail in cases:
        if not passed:
            return False, detail
    return True, f"{count} cases"


def _generic_table() -> SymbolTable:
    table = SymbolTable()
    table.register("X", EPolynomial.from_triples([(0, 0, 1), (1, 0, 2), (1, 1, 1)]), 1)
    return table


def presentation_checks(config: VerifySettings) -> List[Check]:
    table = _generic_table()
    P = LogClass.log_point(table)
    gm = table.gm()

    def relation() -> Outcome:
        value = P * (P + gm)
        return value.is_zero(), f"P*(P + [G_m]) = {value}"

    def blowup_stratifications() -> Outcome:
        a2 = PPolynomial(table, [gm * gm, 2 * gm, table.one()])
        blowup = PPolynomial(table, [gm * gm, 3 * gm, 2 * table.one()])
        expected = LogClass(gm * gm, gm)
        return a2.reduce() == blowup.reduce() == expected, f"{a2.reduce()} vs {blowup.reduce()}"

    def naive_reduction() -> Outcome:
        rng = _rng(config, "naive")

        def case():
            x, y = random_log_class(rng, table, ["X"]), random_log_class(rng, table, ["X"])
            naive = (PPolynomial(table, [x.scalar_part, x.p_part]) * PPolynomial(table, [y.scalar_part, y.p_part]))
            product = log_arith(x, y, ArithKind.MUL)
            return product == naive.reduce() and log_arith(x, y, ArithKind.ADD) == x + y, f"x={x}, y={y}"

        return _first_failure((case() for _ in range(config.random_cases)), config.random_cases)

    def ring_axioms() -> Outcome:
        rng = _rng(config, "axioms")

        def case():
            x, y, z = (random_log_class(rng, table, ["X"], negative_l=True) for _ in range(3))
            ok = (
                (x * y) * z == x * (y * z)
                and x * y == y * x
                and x * (y + z) == x * y + x * z
                and (x + y) + z == x + (y + z)
                and x * 1 == x
                and x - x == 0
            )
            return ok, f"x={x}, y={y}, z={z}"

        return _first_failure((case() for _ in range(config.axiom_cases)), config.axiom_cases)

    def homomorphisms() -> Outcome:
        rng = _rng(config, "homomorphisms")

        def case():
            x, y = random_log_class(rng, table, ["X"]), random_log_class(rng, table, ["X"])
            ok = all(
                f(x * y) == f(x) * f(y) and f(x + y) == f(x) + f(y) for f in (tau, rho)
            ) and tbar_of(x * y).first == tbar_of(x).first * tbar_of(y).first
            return ok, f"x={x}, y={y}"

        return _first_failure((case() for _ in range(config.random_cases)), config.random_cases)

    def chi_log_composite() -> Outcome:
        rng = _rng(config, "chi_log")

        def case():
            x = random_log_class(rng, table, ["X"])
            return chi_log(x) == chi_c_of(tau(x)), f"x={x}"

        return _first_failure((case() for _ in range(config.random_cases)), config.random_cases)

    def chi_log_toric() -> Outcome:
        names = ("A1", "A2", "A3", "P1", "P2", "P1xP1", "A2_minus_origin")
        values = {name: chi_log(toric_class(preset_fan(name), table)) for name in names}
        return all(v == 0 for v in values.values()), str(values)

    def chi_log_unique() -> Outcome:
        g = chi_c_of(gm)
        candidates = p_image_candidates(g)
        e_candidates = p_image_candidates(e_of(gm).evaluate(1, 1))
        return candidates == [0] and e_candidates == [0], f"solutions of f*(f + {g}) = 0: {candidates}"

    def tbar_second_is_b() -> Outcome:
        rng = _rng(config, "tbar2")

        def case():
            x = random_log_class(rng, table, ["X"])
            return tbar_of(x).second == b_of(x), f"x={x}"

        return _first_failure((case() for _ in range(config.random_cases)), config.random_cases)

    def duality_square() -> Outcome:
        dual_table = duality_domain_table()
        rng = _rng(config, "square")

        def case():
            x = random_motive(rng, dual_table, ["E", "K"], negative_l=True)
            lhs = e_laurent_of(dual_of(x))
            rhs = e_laurent_of(x).subs({U_SYMBOL: 1 / U_SYMBOL, V_SYMBOL: 1 / V_SYMBOL}, simultaneous=True)
            return sympy.cancel(lhs - rhs) == 0, f"x={x}"

        return _first_failure((case() for _ in range(config.random_cases)), config.random_cases)

    return [
        ("P*(P + [G_m]) = 0", relation),
        ("A2 and its blowup have the same reduced class", blowup_stratifications),
        ("product agrees with naive reduction", naive_reduction),
        ("ring axioms", ring_axioms),
        ("tau, rho and tbar1 are ring maps", homomorphisms),
        ("chi_log = chi_c o tau", chi_log_composite),
        ("chi_log vanishes on toric classes", chi_log_toric),
        ("chi_log is unique", chi_log_unique),
        ("tbar2 = b", tbar_second_is_b),
        ("e commutes with duality", duality_square),
    ]


def _proper_formula(table: SymbolTable, n: int) -> LogClass:
    gm = table.gm()
    return LogClass(gm ** n, (1 - (-1) ** n) * gm ** (n - 1))


def toric_checks(config: VerifySettings) -> List[Check]:
    table = SymbolTable()
    gm = table.gm()
    checks: List[Check] = []

    def formulas_agree(name: str) -> Callable[[], Outcome]:
        def check() -> Outcome:
            fan = preset_fan(name)
            unreduced, reduced = stratification_class(fan, table)
            expected = toric_class(fan, table)
            return reduced == expected, f"{unreduced} -> {reduced}, formula {expected}"
        return check

    for name in ("point", "A1", "A2", "A3", "A4", "A2_minus_origin", "A2_blowup", "P1", "P2", "P3", "P4", "P1xP1"):
        checks.append((f"stratification = formula on {name}", formulas_agree(name)))

    def proper() -> Outcome:
        for name, n in (("P1", 1), ("P2", 2), ("P3", 3), ("P4", 4), ("P1xP1", 2)):
            fan = preset_fan(name)
            if is_complete(fan) != Completeness.COMPLETE:
                return False, f"{name} is not recognized as complete"
            if toric_class(fan, table) != _proper_formula(table, n):
                return False, f"{name}: {toric_class(fan, table)}"
        return True, "P1, P2, P3, P4, P1xP1"

    def affine() -> Outcome:
        for n in range(1, 5):
            fan = preset_fan(f"A{n}")
            expected = LogClass(gm ** n, gm ** (n - 1))
            if toric_class(fan, table) != expected or is_complete(fan) != Completeness.INCOMPLETE:
                return False, f"A{n}: {toric_class(fan, table)}"
        return True, "A1..A4"

    def products() -> Outcome:
        pairs = [("P1", "P1"), ("A1", "P1"), ("A2", "P1"), ("A2_minus_origin", "A1")]
        for a, b in pairs:
            fa, fb = preset_fan(a), preset_fan(b)
            if chi_c_fan(product_fan(fa, fb)) != chi_c_fan(fa) * chi_c_fan(fb):
                return False, f"{a} x {b}"
        return True, str(pairs)

    def complex_and_tbar() -> Outcome:
        for name in ("A1", "A2", "A2_minus_origin", "P1", "P2", "P1xP1"):
            fan = preset_fan(name)
            n, chi = fan.ambient_dim, chi_c_fan(fan)
            x = toric_class(fan, table)
            if complex_class(n, 1 - chi, table) != x:
                return False, f"complex class differs on {name}"
            bar = tbar_of(x)
            if bar.first != chi * (-U - 1) ** n or bar.second != chi * (-1) ** n:
                return False, f"tbar of {name} is {bar}"
        return True, "complex class and tbar formulas"

    checks += [
        ("proper specialization", proper),
        ("affine specialization", affine),
        ("chi_c is multiplicative on products", products),
        ("complex class and toric tbar", complex_and_tbar),
    ]

    bases = ("A2", "P2", "P1xP1", "A3")

    def chain_check(index: int) -> Callable[[], Outcome]:
        def check() -> Outcome:
            rng = _rng(config, f"chain{index}")
            base = preset_fan(bases[index % len(bases)])
            before = (chi_c_fan(base), toric_class(base, table), is_smooth(base), is_complete(base))
            for step, fan in enumerate(random_subdivision_chain(base, rng.randint(1, 4), rng)):
                after = (chi_c_fan(fan), toric_class(fan, table), is_smooth(fan), is_complete(fan))
                if after != before or stratification_class(fan, table)[1] != before[1]:
                    return False, f"step {step} changed {before} to {after}"
            return True, bases[index % len(bases)]
        return check

    for i in range(config.subdivision_chains):
        checks.append((f"subdivision chain {i}", chain_check(i)))
    return checks


def snc_checks(config: VerifySettings) -> List[Check]:
    table = SymbolTable()
    specs = preset_snc_specs(table)
    checks: List[Check] = []

    def spec_check(name: str) -> Callable[[], Outcome]:
        def check() -> Outcome:
            spec = specs[name]
            if rho_expansion(spec) != rho(snc_class(spec)):
                return False, "rho expansion differs from rho of the class"
            bridge = chi_y_bridge(spec)
            if not bridge.equal:
                return False, f"chi_y bridge: {bridge.lhs} != {bridge.rhs}"
            for component in spec.components:
                result = residue_recursion(spec, component)
                if not (result.holds and result.component_identity and result.complement_identity):
                    return False, f"residue recursion fails at {component}: {result.lhs} vs {result.rhs}"
            return True, f"class {snc_class(spec)}"
        return check

    for name in specs:
        checks.append((f"s.n.c. identities on {name}", spec_check(name)))

    def closed_matches_open() -> Outcome:
        a, b = specs["P2_triangle_closed"], specs["P2_triangle"]
        return dict(a.open_strata) == dict(b.open_strata), str(a.items())

    def toric_pairs() -> Outcome:
        pairs = [("P1_two_points", "P1"), ("P2_triangle", "P2"), ("P1xP1_boundary", "P1xP1")]
        for spec_name, fan_name in pairs:
            if snc_class(specs[spec_name]) != toric_class(preset_fan(fan_name), table):
                return False, f"{spec_name} vs {fan_name}"
        return True, str(pairs)

    def p1_chain() -> Outcome:
        values = [tbar_of(snc_class(specs[n])).first for n in ("P1_two_points", "P1_one_point", "P1_empty")]
        expected = [1 + U, EPolynomial.constant(1), 1 - U]
        return values == expected, ", ".join(str(v) for v in values)

    checks += [
        ("closed strata invert to open strata", closed_matches_open),
        ("toric boundaries match toric classes", toric_pairs),
        ("tbar1 chain on (P1, D)", p1_chain),
    ]
    return checks


def hodge_checks(config: VerifySettings) -> List[Check]:
    table = SymbolTable()
    P = LogClass.log_point(table)

    def certificate() -> Outcome:
        cert = counterexample_certificate()
        ok = (
            cert.difference == -2 + U - U * V
            and cert.witness_coefficient % 2 == 1
            and cert.log_reduction == -1 - U
            and cert.trivial_reduction == -1 - U
        )
        return ok, f"difference {cert.difference}, odd coefficient at {cert.witness}"

    def rectangle() -> Outcome:
        table_, e = elog_p1(P1_PRESETS["constant_rank_one"])
        ok = (
            table_.rows() == [[1, 1, 0], [0, 1, 1]]
            and table_.euler_characteristics() == [1, 0, -1]
            and e == 1 + U + U * V + U * U * V
        )
        return ok, f"rows {table_.rows()}"

    def p1_values() -> Outcome:
        toric = elog_p1(P1_PRESETS["toric"])[1]
        trivial = elog_p1(P1_PRESETS["trivial"])[1]
        return toric == 1 + U and trivial == 1 + U * V, f"{toric}, {trivial}"

    def oracle_chain() -> Outcome:
        first = {name: ebar_of(elog_p1(b)[1]).first for name, b in P1_PRESETS.items()}
        ok = first["toric"] == first["one_point"] + U and first["one_point"] == first["trivial"] + U
        return ok, str({k: str(v) for k, v in first.items()})

    def constant_free() -> Outcome:
        for label, base, dim in constant_free_bases(table):
            for r in range(4):
                oracle = ebar_of(elog_constant_free(ConstantFreeSpec(e_of(base), r, dim)))
                ring = tbar_of(LogClass(base) * P ** r)
                if oracle != ring:
                    return False, f"{label} rank {r}: oracle {oracle}, ring {ring}"
        return True, "4 bases x ranks 0..3"

    def toric_agreement() -> Outcome:
        rng = _rng(config, "hodge-toric")
        count = 0
        for name in COMPLETE_SMOOTH_FANS:
            fan = preset_fan(name)
            oracle = ebar_of(elog_smooth_proper_toric(fan.ambient_dim))
            for refined in [fan] + random_subdivision_chain(fan, 3, rng):
                count += 1
                ring = tbar_of(toric_class(refined, table))
                if ring != oracle:
                    return False, f"{name}: oracle {oracle}, ring {ring}"
        return True, f"{count} fans"

    def serre() -> Outcome:
        for label, base, dim in constant_free_bases(table):
            for r in range(4):
                if not log_serre_duality(elog_constant_free(ConstantFreeSpec(e_of(base), r, dim)), r, dim):
                    return False, f"{label} rank {r}"
        rect = elog_p1(P1_PRESETS["constant_rank_one"])[1]
        return log_serre_duality(rect, 1, 1), "constant free presets and the (P1, N) table"

    return [
        ("E^log is not motivic", certificate),
        ("(P1, N) log Hodge rectangle", rectangle),
        ("E^log of toric and trivial P1", p1_values),
        ("oracle residue chain on (P1, D)", oracle_chain),
        ("oracle = ring on constant free presets", constant_free),
        ("oracle = ring on smooth proper toric fans", toric_agreement),
        ("log Serre duality", serre),
    ]


def duality_checks(config: VerifySettings) -> List[Check]:
    table = duality_domain_table()
    symbols = ["E", "K"]
    P = LogClass.log_point(table)
    gm = table.gm()

    def random_cases(name: str, predicate: Callable[[random.Random], Outcome]) -> Callable[[], Outcome]:
        def check() -> Outcome:
            rng = _rng(config, name)
            return _first_failure((predicate(rng) for _ in range(config.random_cases)), config.random_cases)
        return check

    def involution(rng) -> Outcome:
        x = random_log_class(rng, table, symbols, negative_l=True)
        return duality(1, duality(1, x)) == x and duality(2, duality(2, x)) == x, f"x={x}"

    def homomorphism(rng) -> Outcome:
        x = random_log_class(rng, table, symbols, negative_l=True)
        y = random_log_class(rng, table, symbols, negative_l=True)
        ok = all(duality(j, x * y) == duality(j, x) * duality(j, y) for j in (1, 2))
        return ok, f"x={x}, y={y}"

    def compatible(rng) -> Outcome:
        x = random_log_class(rng, table, symbols, negative_l=True)
        ok = (
            tau(duality(1, x)) == dual_of(tau(x))
            and rho(duality(1, x)) == dual_of(rho(x))
            and rho(duality(2, x)) == dual_of(tau(x))
            and tau(duality(2, x)) == dual_of(rho(x))
        )
        return ok, f"x={x}"

    def serre(rng) -> Outcome:
        x = random_log_class(rng, table, symbols, negative_l=True)
        return tbar_serre_duality(x), f"x={x}"

    def symmetric() -> Outcome:
        ok = all(table[name].serre_symmetric() for name in symbols)
        return ok, ", ".join(symbols)

    def relation() -> Outcome:
        value = duality(1, P * (P + gm))
        return value.is_zero(), str(value)

    def proper_toric() -> Outcome:
        for name in COMPLETE_SMOOTH_FANS:
            fan = preset_fan(name)
            n = fan.ambient_dim
            x = toric_class(fan, table)
            if duality(1, x) != (-1) ** n * table.lefschetz(-n) * x:
                return False, f"i1 on {name}: {duality(1, x)}"
            if duality(2, x) != table.lefschetz(-n) * x:
                return False, f"i2 on {name}: {duality(2, x)}"
        return True, "i1 = (-1)^n L^-n, i2 = L^-n"

    def constant_free() -> Outcome:
        for label, base, dim in constant_free_bases(table):
            for k in range(4):
                x = LogClass(base) * P ** k
                if duality(1, x) != (-1) ** k * table.lefschetz(-(k + dim)) * x:
                    return False, f"{label} rank {k}"
        return True, "i1(X) = (-1)^k L^-(k+n) X"

    def discrepancy() -> Outcome:
        l_inv = table.lefschetz(-1)
        grid = [table.zero(), table.one(), l_inv, -l_inv, 1 - l_inv, table.lefschetz()]
        for j in (1, 2):
            if not duality_discrepancy(j, duality_image_of_p(j, table)).forced:
                return False, f"i{j}(P) is not forced"
            for alpha in grid:
                for beta in grid:
                    result = duality_discrepancy(j, LogClass(alpha, beta))
                    if result.compatible and not result.forced:
                        return False, f"j={j}: compatible candidate {alpha} + ({beta})P is not forced"
        return True, "compatible images of P are forced"

    return [
        ("duality-domain symbols are Serre symmetric", symmetric),
        ("i1 and i2 are involutions", random_cases("involution", involution)),
        ("i1 and i2 are ring maps", random_cases("dual-hom", homomorphism)),
        ("compatibility with tau and rho", random_cases("compatible", compatible)),
        ("tbar1 Serre duality", random_cases("tbar-serre", serre)),
        ("i1 kills P*(P + [G_m])", relation),
        ("dualities of proper toric classes", proper_toric),
        ("duality of constant free classes", constant_free),
        ("discrepancy of alternative images of P", discrepancy),
    ]


SUITE_BUILDERS = {
    "presentation": presentation_checks,
    "toric": toric_checks,
    "snc": snc_checks,
    "hodge": hodge_checks,
    "duality": duality_checks,
}


def _run_one(suite: str, name: str, check: Callable[[], Outcome]) -> CheckResult:
    try:
        passed, detail = check()
    except Exception as exc:
        logger.warning("check '%s' in suite %s raised %s: %s", name, suite, type(exc).__name__, exc)
        return CheckResult(suite=suite, name=name, passed=False, detail=f"{type(exc).__name__}: {exc}")
    if not passed:
        logger.warning("check '%s' in suite %s failed: %s", name, suite, detail)
    return CheckResult(suite=suite, name=name, passed=bool(passed), detail=detail)


def run_suite(suite: str, config: Optional[VerifySettings] = None) -> VerifyReport:
    config = config or settings.verify
    if suite == "all":
        names = list(SUITES)
    elif suite in SUITE_BUILDERS:
        names = [suite]
    else:
        raise ValueError(f"unknown suite '{suite}'; choose from {', '.join(SUITES + ('all',))}")

    jobs = [(name, check_name, check) for name in names for check_name, check in SUITE_BUILDERS[name](config)]
    with ThreadPoolExecutor(max_workers=config.max_workers) as executor:
        futures = [executor.submit(_run_one, name, check_name, check) for name, check_name, check in jobs]
        results = [future.result() for future in futures]

    failed = sum(1 for r in results if not r.passed)
    logger.info("suite %s: %d checks, %d failed", suite, len(results), failed)
    return VerifyReport(suite=suite, passed=failed == 0, total=len(results), failed=failed, results=results)
