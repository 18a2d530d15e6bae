import pytest

from prk.classical import (FALSITY, FALSITY_VAR, classem, decide_oplus,
                           embed_nk, explosionc, implies, lem_case_reduct,
                           lemc, neglamc, negapc, nk_and_e, nk_and_i,
                           nk_context, nk_explosion, nk_hyp, nk_imp_e,
                           nk_imp_i, nk_lem, nk_neg_e, nk_neg_i, nk_or_e,
                           nk_or_i, pairc, parse_nk,
                           run_classical_rule, tt_valid)
from prk.errors import InvalidNKProofError, WrongModeError
from prk.rewrite import all_redexes, apply_at
from prk.surface import parse_mprop
from prk.syntax import (Abs, And, CApp, MProp, Mode, Neg, Or, PVar, Var, clam,
                        substitute)
from prk.typecheck import Context, abs_general_at, infer_type, mk_lem

a, b, c = PVar("a"), PVar("b"), PVar("c")
CP = Mode("c", "+")


def cp(base):
    return MProp(base, CP)


# -- classem and truth tables ---------------------------------------------------

def test_classem():
    assert classem(parse_mprop("a^c+")) == a
    assert classem(parse_mprop("a^c-")) == Neg(a)
    assert classem(parse_mprop("a^s-")) == Neg(a)
    assert classem(parse_mprop("a^s+")) == a


def test_tt_valid():
    assert tt_valid([], Or(a, Neg(a)))
    assert tt_valid([a], a)
    assert not tt_valid([], a)
    assert tt_valid([And(a, b)], b)
    assert not tt_valid([Or(a, b)], b)


def test_decide_oplus():
    assert decide_oplus([], parse_mprop("(a | ~a)^c+"))
    assert decide_oplus([parse_mprop("a^c+")], parse_mprop("a^c+"))
    assert not decide_oplus([], parse_mprop("a^c+"))


def test_decide_oplus_refuses_other_modes():
    with pytest.raises(WrongModeError):
        decide_oplus([parse_mprop("a^s+")], parse_mprop("a^c+"))
    with pytest.raises(WrongModeError):
        decide_oplus([], parse_mprop("a^c-"))


# -- embedding combinators ---------------------------------------------------------

def test_lemc_is_lem():
    assert lemc(a) == mk_lem(a, "+")
    assert infer_type(Context(), lemc(a)).conclusion == cp(Or(a, Neg(a)))


def test_pairc_types():
    ctx = Context.of(("x", cp(a)), ("y", cp(b)))
    t = pairc(Var("x"), Var("y"), a, b)
    assert infer_type(ctx, t).conclusion == cp(And(a, b))


def test_negapc_types():
    ctx = Context.of(("t", cp(Neg(a))), ("s", cp(a)))
    t = negapc(Var("t"), Var("s"), a)
    assert infer_type(ctx, t).conclusion == cp(FALSITY)


def test_explosion_types():
    ctx = Context.of(("t", cp(FALSITY)))
    t = explosionc(parse_mprop("b^c+"), Var("t"))
    assert infer_type(ctx, t).conclusion == cp(b)


def test_embed_examples():
    # LEM
    proof = nk_lem((), a)
    t = embed_nk(proof)
    assert t == lemc(a)
    assert infer_type(Context(), t).conclusion == cp(Or(a, Neg(a)))
    # AndI over two hypotheses
    proof = nk_and_i(nk_hyp((a, b), 0), nk_hyp((a, b), 1))
    t = embed_nk(proof)
    ctx, _ = nk_context(proof)
    assert infer_type(ctx, t).conclusion == cp(And(a, b))
    # NegE concludes falsity
    proof = nk_neg_e(nk_hyp((Neg(a), a), 0), nk_hyp((Neg(a), a), 1))
    t = embed_nk(proof)
    ctx, _ = nk_context(proof)
    assert infer_type(ctx, t).conclusion == cp(FALSITY)


def _random_nk(rng, gen, hyps, depth):
    choices = ["lem"] + (["hyp"] * 2 if hyps else [])
    if depth > 0:
        choices += ["andi", "ande", "ori", "negi", "expl", "impi", "impe", "ore"]
    kind = rng.choice(choices)
    if kind == "hyp":
        return nk_hyp(hyps, rng.randrange(len(hyps)))
    if kind == "lem":
        return nk_lem(hyps, gen.pure(2))
    if kind == "andi":
        return nk_and_i(_random_nk(rng, gen, hyps, depth - 1),
                        _random_nk(rng, gen, hyps, depth - 1))
    if kind == "ande":
        p = nk_and_i(_random_nk(rng, gen, hyps, depth - 1),
                     _random_nk(rng, gen, hyps, depth - 1))
        return nk_and_e(rng.choice((1, 2)), p)
    if kind == "ori":
        return nk_or_i(rng.choice((1, 2)), gen.pure(2),
                       _random_nk(rng, gen, hyps, depth - 1))
    if kind in ("negi", "expl"):
        # bottom is derivable under a hypothesis refuting an excluded middle
        x = gen.pure(1)
        refuted = Neg(Or(x, Neg(x)))
        inner = nk_neg_e(nk_hyp(hyps + (refuted,), len(hyps)),
                         nk_lem(hyps + (refuted,), x))
        if kind == "negi":
            return nk_neg_i(refuted, inner)
        return nk_imp_i(refuted, nk_explosion(gen.pure(2), inner))
    if kind == "impi":
        discharged = gen.pure(2)
        return nk_imp_i(discharged, _random_nk(rng, gen, hyps + (discharged,),
                                               depth - 1))
    if kind == "impe":
        x = gen.pure(1)
        premise = Or(x, Neg(x))
        fun = nk_imp_i(premise, _random_nk(rng, gen, hyps + (premise,), depth - 1))
        return nk_imp_e(fun, nk_lem(hyps, x))
    if kind == "ore":
        x = gen.pure(1)
        scrut = nk_lem(hyps, x)
        target = gen.pure(2)
        q = nk_lem(hyps + (x,), target)
        r = nk_lem(hyps + (Neg(x),), target)
        return nk_or_e(scrut, q, r)
    raise AssertionError(kind)


def test_embed_random_nk(rng):
    from prk.gen import PropGen
    gen = PropGen(rng, atoms=("a", "b"))
    for _ in range(50):
        hyps = tuple(gen.pure(2) for _ in range(rng.randrange(0, 3)))
        proof = _random_nk(rng, gen, hyps, 4)
        term = embed_nk(proof)
        ctx, _ = nk_context(proof)
        d = infer_type(ctx, term)
        assert d.conclusion == cp(proof.conclusion)


# -- computation rules ----------------------------------------------------------------

def test_rule_proj():
    for i in (1, 2):
        chk = run_classical_rule("proj", i=i, t1=Var("t1"), t2=Var("t2"), a=a, b=b)
        assert chk.holds
        assert chk.redex_normal == (Var("t1") if i == 1 else Var("t2"))


def test_rule_case_with_bound_use():
    chk = run_classical_rule("case", i=1, t=Var("t"), x="x", s1=Var("x"),
                             s2=Var("v"), a=a, b=b, c=a)
    assert chk.holds
    assert chk.redex_normal == Var("t")
    chk = run_classical_rule("case", i=2, t=Var("t"), x="x", s1=Var("v"),
                             s2=Var("x"), a=a, b=b, c=b)
    assert chk.holds


def test_rule_app():
    chk = run_classical_rule("app", x="x", t=Var("x"), s=Var("s"), a=a, b=a)
    assert chk.holds and chk.redex_normal == Var("s")
    chk = run_classical_rule("app", x="x", t=Var("w"), s=Var("s"), a=a, b=b)
    assert chk.holds and chk.redex_normal == Var("w")


def test_rule_lem_exact_shape():
    chk = run_classical_rule("lem", a=a, x="x", s1=Var("u"), s2=Var("x"),
                             c=Neg(a))
    assert chk.holds
    # the normal form keeps the blocked s1* witness under the binder
    from prk.rewrite import normalize
    from prk.rewrite import ETA
    stated = lem_case_reduct(a, "x", Var("u"), Var("x"), Neg(a))
    assert chk.stated == stated
    assert chk.redex_normal == normalize(stated, mode=ETA)[0]


def test_rules_with_concrete_closed_pieces(rng):
    # the simulations also hold with concrete closed pieces: classical
    # witnesses generated by compiling random closed NK proofs
    from prk.gen import PropGen
    gen = PropGen(rng, atoms=("a", "b"))
    pieces = [(lemc(a), Or(a, Neg(a))), (lemc(b), Or(b, Neg(b)))]
    while len(pieces) < 8:
        proof = _random_nk(rng, gen, (), 2)
        pieces.append((embed_nk(proof), proof.conclusion))
    for (t1, base1), (t2, base2) in zip(pieces[0::2], pieces[1::2]):
        chk = run_classical_rule("proj", i=1, t1=t1, t2=t2, a=base1, b=base2)
        assert chk.holds
        chk = run_classical_rule("case", i=1, t=t1, x="x", s1=Var("x"),
                                 s2=Var("v"), a=base1, b=base2, c=base1)
        assert chk.holds
        chk = run_classical_rule("app", x="x", t=Var("x"), s=t1,
                                 a=base1, b=base1)
        assert chk.holds


def test_negapc_partial_reduct_golden():
    # negapc(neglamc x. t, s) reduces to the recorded partial shape; it does
    # not simulate substitution in general
    ctx = Context.of(("t", cp(FALSITY)), ("s", cp(a)))
    lhs = negapc(neglamc("x", Var("t"), a), Var("s"), a)
    lemn = mk_lem(PVar(FALSITY_VAR), "-")
    blocked = clam("-", "x", cp(a),
                   abs_general_at(MProp(a, Mode("s", "-")), Var("t"), lemn,
                                  cp(FALSITY)))
    expected = Abs(cp(FALSITY),
                   abs_general_at(MProp(a, Mode("s", "-")), Var("t"), lemn,
                                  cp(FALSITY)),
                   CApp("+", Var("s"), blocked))
    assert infer_type(ctx, lhs).conclusion == cp(FALSITY)
    assert infer_type(ctx, expected).conclusion == cp(FALSITY)
    # reachable in exactly four steps: beta, beta, absNeg, beta
    frontier, seen = {lhs}, {lhs}
    found_at = None
    for level in range(1, 7):
        nxt = set()
        for u in frontier:
            for pos, _ in all_redexes(u):
                v = apply_at(u, pos)[1]
                if v == expected and found_at is None:
                    found_at = level
                if v not in seen:
                    seen.add(v)
                    nxt.add(v)
        if found_at:
            break
        frontier = nxt
    assert found_at == 4


# -- conservativity over the provable library ---------------------------------------

def test_conservativity_of_library():
    from prk.gen import provable_library
    for ctx, goal, _term in provable_library():
        hyps = [classem(p) for _, p in ctx]
        assert tt_valid(hyps, classem(goal))


# -- NK files ------------------------------------------------------------------------

def test_parse_nk_roundtrip():
    src = """
    hyp : (a & b)
    |- andi(ande2(hyp(0)), ande1(hyp(0)))
    """
    proof = parse_nk(src)
    assert proof.conclusion == And(b, a)
    assert proof.hyps == (And(a, b),)


def test_parse_nk_discharge():
    src = """
    |- impi[a](hyp(0))
    """
    proof = parse_nk(src)
    assert proof.conclusion == implies(a, a)


def test_parse_nk_ore_and_lem():
    src = "|- ore(lem[a], ori1[~a](hyp(0)), ori2[a](hyp(0)))"
    proof = parse_nk(src)
    assert proof.conclusion == Or(a, Neg(a))
    term = embed_nk(proof)
    assert infer_type(Context(), term).conclusion == cp(Or(a, Neg(a)))


def test_invalid_nk_rejected():
    with pytest.raises(InvalidNKProofError):
        nk_and_e(1, nk_hyp((a,), 0))
    with pytest.raises(InvalidNKProofError):
        nk_neg_e(nk_hyp((a, b), 0), nk_hyp((a, b), 1))
    with pytest.raises(InvalidNKProofError):
        nk_hyp((a,), 3)
