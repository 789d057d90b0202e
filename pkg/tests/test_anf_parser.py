import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boolcons.anf_parser import (
    And,
    Const,
    Var,
    Xor,
    eval_to_table,
    from_anf,
    parse,
    table_from_anf_string,
    to_string,
)
from boolcons.errors import AnfSyntaxError
from boolcons.transforms import Anf, mobius

from oracles import eval_monomials, points


def test_parse_examples():
    assert parse("x1*x2", 2) == And((Var(1), Var(2)))
    assert parse("x1 + x2*x3 + 1", 3) == Xor((Var(1), And((Var(2), Var(3))), Const(1)))
    assert parse("  x1 ^x2 ", 2) == Xor((Var(1), Var(2)))
    assert parse("(x1 + 1)*x2", 2) == And((Xor((Var(1), Const(1))), Var(2)))
    assert parse("x10", 12) == Var(10)


@pytest.mark.parametrize("src, pos", [
    ("x4", 0),
    ("x0", 0),
    ("x1 x2", 3),
    ("x1 +", 4),
    ("(x1 + x2", 8),
    ("x", 1),
    ("2", 0),
    ("10", 0),
    ("x1 * * x2", 5),
    ("", 0),
    ("x1)", 2),
])
def test_parse_errors(src, pos):
    with pytest.raises(AnfSyntaxError) as err:
        parse(src, 3)
    assert err.value.position == pos
    assert f"position {pos}" in str(err.value)


def test_out_of_range_message():
    with pytest.raises(AnfSyntaxError, match="x4 out of range"):
        parse("x4", 3)
    with pytest.raises(ValueError):
        parse("x1", 0)


def test_eval_examples():
    assert eval_to_table(parse("0", 3), 3).is_zero()
    assert eval_to_table(parse("x1*x2", 2), 2).bits.tolist() == [0, 0, 0, 1]
    assert table_from_anf_string("x1", 2).bits.tolist() == [0, 0, 1, 1]
    f = table_from_anf_string("x1 + x2*x3 + 1", 3)
    assert mobius(f).monomials == {0b100, 0b011, 0}


def _trees(n):
    leaves = st.one_of(st.sampled_from([Const(0), Const(1)]), st.integers(1, n).map(Var))
    return st.recursive(
        leaves,
        lambda kids: st.one_of(
            st.lists(kids, min_size=2, max_size=4).map(lambda xs: Xor(tuple(xs))),
            st.lists(kids, min_size=2, max_size=3).map(lambda xs: And(tuple(xs))),
        ),
        max_leaves=14,
    )


def direct_eval(node, x):
    if isinstance(node, Const):
        return node.value
    if isinstance(node, Var):
        return x[node.index - 1]
    if isinstance(node, Xor):
        out = 0
        for t in node.terms:
            out ^= direct_eval(t, x)
        return out
    out = 1
    for f in node.factors:
        out &= direct_eval(f, x)
    return out


@settings(max_examples=200)
@given(st.integers(1, 5).flatmap(lambda n: st.tuples(st.just(n), _trees(n))))
def test_eval_matches_direct_evaluator(case):
    n, tree = case
    expected = [direct_eval(tree, x) for x in points(n)]
    assert eval_to_table(tree, n).bits.tolist() == expected
    # printing then parsing keeps the semantics
    assert eval_to_table(parse(to_string(tree), n), n).bits.tolist() == expected


@settings(max_examples=200)
@given(st.integers(1, 6).flatmap(
    lambda n: st.tuples(st.just(n), st.frozensets(st.integers(0, (1 << n) - 1), max_size=12))
))
def test_monomial_round_trip(case):
    n, monos = case
    anf = Anf(n, monos)
    text = str(anf)
    expr = parse(text, n)
    table = eval_to_table(expr, n)
    assert table.bits.tolist() == eval_monomials(monos, n)
    assert mobius(table).monomials == monos
    # canonical strings are fixed points of print . parse
    assert to_string(expr) == text
    assert from_anf(anf) == expr


def test_print_parenthesizes_xor_inside_and():
    e = parse("(x1 + x2)*(x3 + 1)*x1", 3)
    assert to_string(e) == "(x1 + x2)*(x3 + 1)*x1"
    assert parse(to_string(e), 3) == e
