import pytest
from hypothesis import given, strategies as st

from prk.errors import ParseError
from prk.surface import parse_mprop, parse_term, print_mprop, print_term
from prk.syntax import (And, CLam, MProp, Mode, Neg, Or, PVar, Pair, Var,
                        clam, dual, fv, measure, opposite, prop_size,
                        substitute, truncate)

a = PVar("a")
b = PVar("b")


def pure_props(max_depth=4):
    return st.recursive(
        st.sampled_from([PVar("a"), PVar("b"), PVar("c")]),
        lambda inner: st.one_of(
            st.builds(Neg, inner),
            st.builds(And, inner, inner),
            st.builds(Or, inner, inner),
        ),
        max_leaves=8,
    )


def mprops():
    modes = st.sampled_from([Mode(s, g) for s in "sc" for g in "+-"])
    return st.builds(MProp, pure_props(), modes)


# -- parsing ---------------------------------------------------------------

def test_parse_mprop_examples():
    assert parse_mprop("(a & b)^s+") == MProp(And(a, b), Mode("s", "+"))
    assert parse_mprop("~a^c-") == MProp(Neg(a), Mode("c", "-"))


def test_nested_modes_rejected():
    with pytest.raises(ParseError, match="modes cannot be nested"):
        parse_mprop("(a^s+)^c+")


def test_parse_term_examples():
    assert parse_term("pair+(x, y)") == Pair("+", Var("x"), Var("y"))
    t = parse_term("clam+(k : a^c-. x)")
    assert t == CLam("+", MProp(a, Mode("c", "-")), Var("x"))
    assert t.hint == "k"


def test_bad_projection_index():
    with pytest.raises(ParseError, match="projection index"):
        parse_term("proj3+(x)")


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as err:
        parse_mprop("(a &\n b")
    assert err.value.line == 2


def test_reserved_falsity_rejected():
    with pytest.raises(ParseError, match="reserved"):
        parse_term("_bot0")
    parse_term("_bot0", allow_reserved=True)


@given(mprops())
def test_mprop_roundtrip(p):
    assert parse_mprop(print_mprop(p)) == p


# -- structural operations --------------------------------------------------

def test_opposite_examples():
    assert opposite(parse_mprop("a^s+")) == parse_mprop("a^s-")
    assert opposite(parse_mprop("(a & b)^c-")) == parse_mprop("(a & b)^c+")


@given(mprops())
def test_opposite_involution(p):
    assert opposite(opposite(p)) == p


def test_truncate_examples():
    assert truncate(parse_mprop("a^s+")) == parse_mprop("a^c+")
    assert truncate(parse_mprop("a^c-")) == parse_mprop("a^c-")


@given(mprops())
def test_truncate_idempotent_and_commutes(p):
    assert truncate(truncate(p)) == truncate(p)
    assert truncate(opposite(p)) == opposite(truncate(p))


def test_measure_examples():
    assert measure(parse_mprop("a^s+")) == 2
    assert measure(parse_mprop("a^c+")) == 3
    assert measure(parse_mprop("(a & b)^s+")) == 6
    assert measure(parse_mprop("(a & b)^s+")) > measure(parse_mprop("a^c+"))


@given(mprops())
def test_measure_inequalities(p):
    # classical strictly above strong; compounds strictly above their parts
    assert measure(truncate(p)) == 2 * prop_size(p.base) + 1
    assert measure(opposite(truncate(p))) == measure(truncate(p))
    q = MProp(And(p.base, p.base), Mode("s", "+"))
    assert measure(q) > measure(truncate(p))
    r = MProp(Neg(p.base), Mode("s", "-"))
    assert measure(r) > measure(truncate(p))


def test_dual_examples():
    assert dual(And(a, b)) == Or(a, b)
    assert dual(parse_mprop("a^c+")) == parse_mprop("a^c-")
    assert dual(parse_term("pair+(x, negi-(clam-(k : a^c+. k)))")) == \
        parse_term("pair-(x, negi+(clam+(k : a^c-. k)))")


@given(mprops())
def test_dual_involution(p):
    assert dual(dual(p)) == p
    assert dual(dual(p.base)) == p.base


# -- substitution ------------------------------------------------------------

def test_substitute_var():
    s = parse_term("pair+(u, v)")
    assert substitute(Var("x"), "x", s) == s


def test_substitute_shadowing():
    p = parse_mprop("a^c-")
    t = clam("+", "x", p, Var("x"))
    assert substitute(t, "x", Var("s")) == t


def test_substitute_capture_avoidance():
    p = parse_mprop("a^c-")
    t = clam("+", "y", p, Var("x"))
    out = substitute(t, "x", Var("y"))
    # structurally the binder is nameless, so y cannot be captured
    assert out == clam("+", "z", p, Var("y"))
    # and printing freshens the binder hint away from the free y
    printed = print_term(out)
    assert parse_term(printed) == out
    assert "y : " not in printed


def test_substitution_fv_containment(term_gen, rng):
    for _ in range(100):
        ctx = term_gen.base_context()
        goal = term_gen.props.mprop(2)
        t = term_gen.term(ctx, goal, 3)
        x = rng.choice([n for n, _ in ctx])
        s = term_gen.term(ctx, term_gen.props.mprop(2), 2)
        result = substitute(t, x, s)
        expected = (fv(t) - {x}) | (fv(s) if x in fv(t) else set())
        assert fv(result) == expected


def _brute_force_fv(t):
    # independent occurrence scan: named leaves of the subterm iteration
    # (bound variables are indices, so every Var leaf is free)
    from prk.syntax import subterms
    return frozenset(node.name for node in subterms(t) if isinstance(node, Var))


def test_fv_against_brute_scan(term_gen, rng):
    for _ in range(80):
        ctx = term_gen.base_context()
        t = term_gen.term(ctx, term_gen.props.mprop(2), 3)
        assert fv(t) == _brute_force_fv(t)
        x = rng.choice([n for n, _ in ctx])
        s = term_gen.term(ctx, term_gen.props.mprop(2), 2)
        result = substitute(t, x, s)
        assert fv(result) == _brute_force_fv(result)


def test_fv_against_reparse(term_gen):
    # printing then reparsing preserves the free-variable set exactly
    for _ in range(50):
        ctx = term_gen.base_context()
        t = term_gen.term(ctx, term_gen.props.mprop(2), 3)
        assert fv(parse_term(print_term(t))) == fv(t)


def test_print_parse_corpus(term_gen):
    seen = 0
    for _ in range(1000):
        ctx = term_gen.base_context()
        goal = term_gen.props.mprop(3)
        t = term_gen.term(ctx, goal, 3)
        assert parse_term(print_term(t)) == t
        p = term_gen.props.mprop(4)
        assert parse_mprop(print_mprop(p)) == p
        seen += 1
    assert seen == 1000
