"""Identity-language parsing, evaluation, grid checks, and fuzzing."""

import random

import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

from fibluc import (
    DomainError,
    ParseError,
    X,
    Y,
    canonical_text,
    catalog_by_id,
    check,
    check_case,
    evaluate,
    free_meta_vars,
    load_corpus,
    parse,
    parse_expression,
    render,
)
from fibluc.idlang import (
    Add,
    Binom,
    Eq,
    IntLit,
    MetaVar,
    Mul,
    Neg,
    Pow,
    SeqApp,
    Sub,
    Sum,
    VarX,
    VarY,
)
from oracles import poly_luc


# -- golden ASTs --------------------------------------------------------------


def test_parse_linear_identity():
    ast = parse("y*F[n-1] + F[n+1] = L[n]")
    n = MetaVar("n")
    expected = Eq(
        Add(
            Mul(VarY(), SeqApp("F", Sub(n, IntLit(1)))),
            SeqApp("F", Add(n, IntLit(1))),
        ),
        SeqApp("L", n),
    )
    assert ast == expected


def test_parse_composition_identity():
    ast = parse("F[n](L[k], (-1)^(k+1)*y^k) * F[k] = F[n*k]")
    n, k = MetaVar("n"), MetaVar("k")
    sign = Pow(Neg(IntLit(1)), Add(k, IntLit(1)))
    expected = Eq(
        Mul(
            SeqApp("F", n, (SeqApp("L", k), Mul(sign, Pow(VarY(), k)))),
            SeqApp("F", k),
        ),
        SeqApp("F", Mul(n, k)),
    )
    assert ast == expected


def test_parse_binomial_sum_identity():
    source = "x * sum(r=0..n-1, binom(2*n-1-r, r) * (x^2+4*y)^(n-1-r) * (-y)^r) = F[2*n]"
    ast = parse(source)
    n, r = MetaVar("n"), MetaVar("r")
    body = Mul(
        Mul(
            Binom(Sub(Sub(Mul(IntLit(2), n), IntLit(1)), r), r),
            Pow(
                Add(Pow(VarX(), IntLit(2)), Mul(IntLit(4), VarY())),
                Sub(Sub(n, IntLit(1)), r),
            ),
        ),
        Pow(Neg(VarY()), r),
    )
    expected = Eq(
        Mul(VarX(), Sum("r", IntLit(0), Sub(n, IntLit(1)), body)),
        SeqApp("F", Mul(IntLit(2), n)),
    )
    assert ast == expected


def test_precedence_power_binds_tighter_than_minus_and_star():
    assert parse_expression("-y^k") == Neg(Pow(VarY(), MetaVar("k")))
    assert parse_expression("x^2*n") == Mul(Pow(VarX(), IntLit(2)), MetaVar("n"))
    assert parse_expression("2^(k+1)") == Pow(IntLit(2), Add(MetaVar("k"), IntLit(1)))


def test_omitted_arguments_default_to_x_y():
    with_args = evaluate(parse_expression("F[5](x, y)"), {})
    without = evaluate(parse_expression("F[5]"), {})
    assert with_args == without


# -- parse errors -------------------------------------------------------------


@pytest.mark.parametrize(
    "source",
    [
        "",
        "F[n",
        "F[n] =",
        "= F[n]",
        "F[n] = L[n] = L[n]",
        "1 +",
        "x^",
        "x ^ y",
        "binom(n)",
        "sum(x=0..2, x)",
        "sum(r=0..2)",
        "F(n)",
        "F[n](x)",
        "2..3",
        "x $ y",
        "x . y",
        "((x)",
    ],
)
def test_syntax_errors_are_positioned(source):
    with pytest.raises(ParseError) as info:
        parse(source)
    assert info.value.line >= 1
    assert info.value.col >= 1


def test_unknown_name_outside_scope():
    with pytest.raises(ParseError, match="unknown name 'm'"):
        parse("F[m] = L[m]")
    with pytest.raises(ParseError, match="unknown name 'r'"):
        parse("sum(r=0..3, x) + r = x")  # r is out of scope after the sum


def test_error_column_points_at_offender():
    with pytest.raises(ParseError) as info:
        parse_expression("x + $")
    assert (info.value.line, info.value.col) == (1, 5)


# -- evaluation -----------------------------------------------------------------


def test_evaluate_sequence_reference():
    value = evaluate(parse_expression("L[n]"), {"n": 2})
    assert value.terms == poly_luc(2)


def test_evaluate_delta_square():
    assert evaluate(parse_expression("D^2"), {}) == X * X + 4 * Y


def test_evaluate_empty_sum():
    assert evaluate(parse_expression("sum(r=0..-1, x)"), {}) == 0 * X
    assert evaluate(parse_expression("sum(r=2..n, x)"), {"n": 1}) == 0 * X


def test_evaluate_negative_subscript_raises_domain_error():
    node = parse_expression("F[n-1]")
    with pytest.raises(DomainError) as info:
        evaluate(node, {"n": 0})
    message = str(info.value)
    assert "F[n - 1]" in message and "n=0" in message


def test_evaluate_negative_exponent_raises_domain_error():
    with pytest.raises(DomainError):
        evaluate(parse_expression("y^(n-2)"), {"n": 0})


def test_evaluate_unbound_meta_variable():
    with pytest.raises(DomainError):
        evaluate(parse_expression("F[n]"), {})


def test_free_meta_vars():
    assert free_meta_vars(parse("y*F[n-1]+F[n+1]=L[n]")) == {"n"}
    assert free_meta_vars(parse_expression("sum(r=0..n, y^r) * y^k")) == {"n", "k"}
    assert free_meta_vars(parse_expression("x + y")) == set()


# -- grid checks -------------------------------------------------------------------


def test_check_passes_linear_identity():
    report = check(parse("y*F[n-1] + F[n+1] = L[n]"), {"n": (1, 10)})
    assert report.all_passed
    assert len(report.cells) == 10


def test_check_matches_programmatic_catalog():
    case = catalog_by_id()["EQ20"]
    programmatic = [check_case(case, n).passed for n in range(1, 11)]
    dsl = [cell.passed for cell in check(parse("y*F[n-1] + F[n+1] = L[n]"), {"n": (1, 10)}).cells]
    assert programmatic == dsl


def test_check_finds_seed_mismatch():
    report = check(parse("F[n] = L[n]"), {"n": (0, 3)})
    assert not report.all_passed
    first = report.failures()[0]
    assert (first.n, first.lhs, first.rhs) == (0, "0", "2")


def test_check_square_root_composition():
    source = "L[2*n](D*F[k], (-1)^k * y^k) = L[2*n*k]"
    report = check(parse(source), {"n": (0, 4), "k": (1, 4)})
    assert report.all_passed


def test_check_reports_domain_error_as_failure():
    report = check(parse("F[n-2] = F[n-2]"), {"n": (0, 3)})
    bad = [cell for cell in report.cells if not cell.passed]
    assert [cell.n for cell in bad] == [0, 1]
    assert all("domain error" in (cell.lhs or "") for cell in bad)


def test_check_requires_ranges_for_free_vars():
    with pytest.raises(ValueError):
        check(parse("F[n*k] = F[n*k]"), {"n": (0, 3)})


def test_check_ground_identity_is_a_single_cell():
    report = check(parse("D^2 = x^2+4*y"), {})
    assert [(cell.n, cell.k, cell.passed) for cell in report.cells] == [(None, None, True)]
    report = check(parse("D^2 = x^2-4*y"), {})
    assert not report.all_passed


def test_sum_variable_shadows_meta_variable():
    # the bound n hides the meta-variable n inside the sum body
    value = evaluate(parse_expression("sum(n=0..2, y^n)"), {"n": 5})
    assert canonical_text(value) == "y^2 + y + 1"


def test_check_rejects_bare_expression():
    with pytest.raises(ValueError):
        check(parse_expression("F[n]"), {"n": (0, 3)})


# -- rendering ----------------------------------------------------------------------


def test_render_parse_render_fixed_point_on_corpus():
    for entry in load_corpus():
        rendered = render(entry.ast)
        reparsed = parse(rendered)
        assert reparsed == entry.ast, entry.source
        assert render(reparsed) == rendered


def test_render_parenthesizes_only_when_needed():
    assert render(parse_expression("-y^k")) == "-y^k"
    assert render(parse_expression("(x+y)*x")) == "(x + y) * x"
    assert render(parse_expression("x+y*x")) == "x + y * x"


# -- corpus --------------------------------------------------------------------------


def test_corpus_ids_map_to_catalog():
    entries = load_corpus()
    catalog_ids = set(catalog_by_id())
    assert {entry.case_id for entry in entries} <= catalog_ids
    required = {"EQ04"} | {f"EQ{i}" for i in range(11, 32)}
    assert required <= {entry.case_id for entry in entries}


def test_corpus_multi_line_cases():
    entries = load_corpus()
    by_id: dict[str, int] = {}
    for entry in entries:
        by_id[entry.case_id] = by_id.get(entry.case_id, 0) + 1
    assert by_id["EQ10"] == 2
    assert by_id["EQ14"] == 3


# -- fuzzing ---------------------------------------------------------------------------


@given(st.text(max_size=60))
@settings(max_examples=300)
def test_parser_total_on_arbitrary_text(source):
    try:
        parse(source)
    except ParseError as exc:
        assert exc.line >= 1 and exc.col >= 1


def test_parser_total_on_random_token_streams():
    rng = random.Random(20260809)
    tokens = [
        "F", "L", "x", "y", "D", "n", "k", "r", "binom", "sum", "0", "1", "2", "17",
        "+", "-", "*", "^", "(", ")", "[", "]", ",", "=", "..", " ",
    ]
    for _ in range(2000):
        source = "".join(rng.choice(tokens) for _ in range(rng.randrange(0, 25)))
        try:
            parse(source)
        except ParseError:
            pass
