import pytest
from hypothesis import given

from logring.cli.expressions import InputError, parse_log_class, parse_motive_class, tokenize
from logring.services.log_ring import LogClass

from .strategies import TABLE, log_classes


def test_presentation_relation_parses_to_zero(table):
    assert parse_log_class("P*(P+(L-1))", table).is_zero()


def test_precedence(table):
    L = table.lefschetz()
    assert parse_log_class("2*L^2 - -1", table) == LogClass(2 * L * L + 1)
    assert parse_log_class("-L^2", table) == LogClass(-(L * L))
    assert parse_log_class("(L+1)^2", table) == LogClass(L * L + 2 * L + 1)


def test_negative_powers_of_units(table):
    assert parse_log_class("L^-1*L", table) == 1
    assert parse_log_class("(-L)^-2", table) == LogClass(table.lefschetz(-2))


def test_tokens_carry_positions():
    tokens = tokenize("L +\n  P")
    assert [(t.kind, t.line, t.column) for t in tokens] == [("name", 1, 1), ("+", 1, 3), ("name", 2, 3), ("end", 2, 4)]


@pytest.mark.parametrize(
    "text, location",
    [
        ("(L-1)^-1", "<expr>:1:1:"),
        ("L + Y", "<expr>:1:5:"),
        ("L $ 1", "<expr>:1:3:"),
        ("L +\n  $", "<expr>:2:3:"),
        ("L L", "<expr>:1:3:"),
        ("(L + 1", "<expr>:1:7:"),
        ("", "<expr>:1:1:"),
        ("P^-1", "<expr>:1:1:"),
    ],
)
def test_errors_report_line_and_column(table, text, location):
    with pytest.raises(InputError) as excinfo:
        parse_log_class(text, table)
    assert str(excinfo.value).startswith(location)


def test_source_names_the_file(table):
    with pytest.raises(InputError, match=r"^class.json:1:3:"):
        parse_log_class("L ? 1", table, source="class.json")


def test_symbols_resolve_through_the_table():
    assert parse_log_class("X*L", TABLE) == LogClass(TABLE.symbol("X") * TABLE.lefschetz())


def test_motive_classes_reject_p(table):
    assert parse_motive_class("L^2 + 1", table) == table.lefschetz(2) + 1
    with pytest.raises(InputError, match="involves P"):
        parse_motive_class("L + P", table)


@given(log_classes(negative_l=True))
def test_printed_classes_parse_back(x):
    assert parse_log_class(str(x), TABLE) == x
