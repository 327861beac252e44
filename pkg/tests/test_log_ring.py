import pytest
from hypothesis import given, settings

from logring.services.log_ring import (
    EBarPair,
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
    DualityError,
    EPolynomial,
    MixedSymbolTableError,
    RealizationError,
    SymbolTable,
    chi_c_of,
    dual_of,
)

from .strategies import TABLE, dual_log_classes, log_classes

U = EPolynomial.u()
V = EPolynomial.v()


@pytest.fixture
def P(table):
    return LogClass.log_point(table)


def test_presentation_relation(table, P):
    assert (P * (P + table.gm())).is_zero()
    assert P * P == -table.gm() * P


def test_blowup_stratifications_reduce_to_the_same_class(table):
    gm = table.gm()
    a2 = PPolynomial(table, [gm * gm, 2 * gm, table.one()])
    blowup = PPolynomial(table, [gm * gm, 3 * gm, 2 * table.one()])
    assert a2.reduce() == blowup.reduce() == LogClass(gm * gm, gm)
    assert a2 != blowup


def test_ppolynomial_trims_and_multiplies(table):
    gm = table.gm()
    x = PPolynomial(table, [gm, table.one(), table.zero()])
    assert x.degree() == 1
    assert (x * x).coefficient(2) == table.one()
    assert (x * PPolynomial(table, [])).degree() == -1
    assert str(PPolynomial(table, [gm, 3 * gm, 2 * table.one()])) == "L - 1 + (3*L - 3)*P + 2*P^2"


def test_normal_form_printing(table, P):
    assert str(LogClass(table.gm(), table.constant(2))) == "(L - 1) + 2*P"
    assert str(P) == "P"
    assert str(-P) == "-P"
    assert str(table.lefschetz() - P) == "L - P"
    assert str(P * 0) == "0"


def test_log_arith(table, P):
    L = LogClass(table.lefschetz())
    assert log_arith(L, P, ArithKind.ADD) == L + P
    assert log_arith(P, P, ArithKind.MUL) == P * P
    with pytest.raises(MixedSymbolTableError):
        log_arith(P, LogClass.log_point(SymbolTable()), ArithKind.ADD)


def test_motive_times_log_class(table, P):
    assert table.lefschetz() * P == LogClass(table.zero(), table.lefschetz())
    assert P == LogClass(table.zero(), table.one())
    assert LogClass.constant(table, 3) == 3


def test_negative_powers_are_rejected(P):
    with pytest.raises(ValueError):
        P ** -1


def test_powers(table, P):
    assert P ** 0 == 1
    assert P ** 13 == PPolynomial(table, [table.zero()] * 13 + [table.one()]).reduce()
    assert (P + 1) ** 6 == (P + 1) ** 2 * (P + 1) ** 4
    assert LogClass.constant(table, -1) ** (10 ** 9 + 1) == -1
    assert LogClass(table.lefschetz()) ** 40 == LogClass(table.lefschetz(40))


@settings(max_examples=1000)
@given(log_classes(negative_l=True), log_classes(negative_l=True), log_classes(negative_l=True))
def test_ring_axioms(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x
    assert x * (y + z) == x * y + x * z
    assert (x + y) + z == x + (y + z)
    assert x * 1 == x
    assert x + 0 == x
    assert x - x == 0


@given(log_classes(), log_classes())
def test_product_matches_naive_reduction(x, y):
    naive = PPolynomial(TABLE, [x.scalar_part, x.p_part]) * PPolynomial(TABLE, [y.scalar_part, y.p_part])
    assert x * y == naive.reduce()


@given(log_classes(negative_l=True), log_classes(negative_l=True))
def test_tau_and_rho_are_ring_maps(x, y):
    for f in (tau, rho):
        assert f(x * y) == f(x) * f(y)
        assert f(x + y) == f(x) + f(y)


@given(log_classes(), log_classes())
def test_tbar_first_is_multiplicative(x, y):
    assert tbar_of(x * y).first == tbar_of(x).first * tbar_of(y).first


@given(log_classes())
def test_tbar_second_is_b(x):
    assert tbar_of(x).second == b_of(x)


def test_images_of_p(table, P):
    assert tau(P) == 0
    assert rho(P) == 1 - table.lefschetz()
    assert tbar_of(P) == EBarPair(1 + U, EPolynomial.constant(1))
    assert b_of(P) == 1


@given(log_classes())
def test_chi_log_factors_through_tau(x):
    assert chi_log(x) == chi_c_of(tau(x))


def test_chi_log_values(table, P):
    assert chi_log(P) == 0
    assert chi_log(P + table.lefschetz()) == 1
    with pytest.raises(RealizationError):
        chi_log(LogClass(table.lefschetz(-1)))


def test_chi_log_extension_is_unique():
    assert p_image_candidates(0) == [0]
    assert p_image_candidates(3) == [-3, 0]


def test_ebar_pair_must_be_univariate():
    with pytest.raises(ValueError):
        EBarPair(U * V, EPolynomial.constant(1))
    with pytest.raises(ValueError):
        EBarPair(U, U)


@settings(max_examples=200)
@given(dual_log_classes())
def test_dualities_are_involutions(x):
    assert duality(1, duality(1, x)) == x
    assert duality(2, duality(2, x)) == x


@given(dual_log_classes(), dual_log_classes())
def test_dualities_are_ring_maps(x, y):
    for j in (1, 2):
        assert duality(j, x * y) == duality(j, x) * duality(j, y)
        assert duality(j, x + y) == duality(j, x) + duality(j, y)


@settings(max_examples=200)
@given(dual_log_classes())
def test_dualities_are_compatible_with_tau_and_rho(x):
    assert tau(duality(1, x)) == dual_of(tau(x))
    assert rho(duality(1, x)) == dual_of(rho(x))
    assert rho(duality(2, x)) == dual_of(tau(x))
    assert tau(duality(2, x)) == dual_of(rho(x))


@settings(max_examples=40)
@given(dual_log_classes())
def test_tbar_serre_duality(x):
    assert tbar_serre_duality(x)


def test_duality_images_of_p(dual_table):
    P = LogClass.log_point(dual_table)
    l_inv = dual_table.lefschetz(-1)
    assert duality(1, P) == -P * l_inv
    assert duality(2, P) == (P + dual_table.gm()) * l_inv
    assert duality(1, P * (P + dual_table.gm())).is_zero()
    with pytest.raises(ValueError):
        duality_image_of_p(3, dual_table)


def test_duality_needs_smooth_projective_symbols(table):
    table.register("W", EPolynomial.constant(1) + U, 1)
    with pytest.raises(DualityError):
        duality(1, LogClass(table.zero(), table.symbol("W")))


@pytest.mark.parametrize("j", [1, 2])
def test_duality_image_of_p_is_forced(dual_table, j):
    result = duality_discrepancy(j, duality_image_of_p(j, dual_table))
    assert result.compatible
    assert result.forced


def test_p_itself_is_not_a_compatible_image(dual_table):
    result = duality_discrepancy(1, LogClass.log_point(dual_table))
    assert result.tau_residual.is_zero()
    assert not result.compatible
