import pytest

from prk.rewrite import step
from prk.surface import parse_mprop, parse_term
from prk.syntax import MProp, Mode
from prk.systemf import (ONE, TRIV, ZERO, Arrow, DomainMismatchError, FApp,
                         FLam, FNeg, FPos, FVar, Forall, NotAForallError,
                         NotAnArrowError, TBound, TVar, TyApp, TyLam,
                         check_simulation, f_all_steps, f_infer, f_normalize,
                         f_step, flam, ftype_equiv, funabs, in_f, pair_f,
                         plus, polarity, print_fterm, print_ftype,
                         proj_f, times, translate_ctx, translate_prop,
                         translate_term, tylam)
from prk.typecheck import Context, check_type, infer_type

A, B = TVar("A"), TVar("B")
alpha, beta = TVar("alpha"), TVar("beta")


# -- type equivalence -----------------------------------------------------------

def test_equiv_constraint():
    assert ftype_equiv(FPos(A, B), Arrow(FNeg(A, B), A))
    assert ftype_equiv(FNeg(A, B), Arrow(FPos(A, B), B))


def test_equiv_reflexive():
    assert ftype_equiv(A, A)
    assert ftype_equiv(times(A, B), times(A, B))


def test_equiv_negative_case():
    assert not ftype_equiv(FPos(alpha, beta), Arrow(alpha, alpha))


def test_equiv_deep_unfolding():
    lhs = FPos(A, B)
    rhs = Arrow(Arrow(FPos(A, B), B), A)  # two unfoldings
    assert ftype_equiv(lhs, rhs)


def test_equiv_is_equivalence_and_congruence(rng):
    from prk.gen import PropGen
    gen = PropGen(rng)
    pool = [translate_prop(MProp(gen.pure(3), Mode(st, sg)))
            for st in "sc" for sg in "+-" for _ in range(6)]
    for _ in range(150):
        x = rng.choice(pool)
        y = rng.choice(pool)
        z = rng.choice(pool)
        assert ftype_equiv(x, x)
        if ftype_equiv(x, y):
            assert ftype_equiv(y, x)
        if ftype_equiv(x, y) and ftype_equiv(y, z):
            assert ftype_equiv(x, z)
        if ftype_equiv(x, y):
            assert ftype_equiv(Arrow(x, z), Arrow(y, z))
            assert ftype_equiv(Arrow(z, x), Arrow(z, y))
            assert ftype_equiv(Forall(x), Forall(y))


# -- typing ---------------------------------------------------------------------

def test_encoding_shapes():
    # the abbreviations elaborate to their polymorphic encodings
    assert ZERO == Forall(TBound(0))
    assert ONE == Forall(Arrow(TBound(0), TBound(0)))
    assert times(A, B) == Forall(Arrow(Arrow(A, Arrow(B, TBound(0))), TBound(0)))
    assert plus(A, B) == Forall(Arrow(Arrow(A, TBound(0)),
                                      Arrow(Arrow(B, TBound(0)), TBound(0))))


def test_triv_has_unit_type():
    assert f_infer((), TRIV) == ONE


def test_pair_and_proj_typing():
    ctx = (("t", A), ("s", B))
    p = pair_f(FVar("t"), FVar("s"), A, B)
    assert f_infer(ctx, p) == times(A, B)
    assert ftype_equiv(f_infer(ctx, proj_f(1, p, A, B)), A)


def test_conversion_at_application():
    ctx = (("y", Arrow(FNeg(A, B), A)),)
    t = FApp(flam("x", FPos(A, B), FVar("x")), FVar("y"))
    assert f_infer(ctx, t) == FPos(A, B)


def test_domain_mismatch():
    ctx = (("y", Arrow(A, A)),)
    t = FApp(flam("x", FPos(A, B), FVar("x")), FVar("y"))
    with pytest.raises(DomainMismatchError):
        f_infer(ctx, t)


def test_not_an_arrow_and_not_a_forall():
    ctx = (("x", A),)
    with pytest.raises(NotAnArrowError):
        f_infer(ctx, FApp(FVar("x"), FVar("x")))
    with pytest.raises(NotAForallError):
        f_infer(ctx, TyApp(FVar("x"), A))


def test_type_abstraction():
    t = tylam("c", flam("x", TVar("c"), FVar("x")))
    assert f_infer((), t) == ONE


# -- reduction -------------------------------------------------------------------

def test_f_beta():
    t = FApp(flam("x", A, FVar("x")), FVar("s"))
    assert f_step(t) == FVar("s")


def test_f_type_beta():
    t = TyApp(tylam("c", flam("x", TVar("c"), FVar("x"))), A)
    assert f_step(t) == flam("x", A, FVar("x"))


def test_encodings_reduce():
    p = pair_f(FVar("t"), FVar("s"), A, B)
    assert f_normalize(proj_f(1, p, A, B)) == FVar("t")
    assert f_normalize(proj_f(2, p, A, B)) == FVar("s")
    inj = in_f(2, FVar("u"), A, B)
    from prk.systemf import case_f
    t = case_f(inj, flam("x", A, FVar("l")), flam("x", B, FApp(FVar("r"), FVar("x"))),
               TVar("C"))
    assert f_normalize(t) == FApp(FVar("r"), FVar("u"))


# -- translation ------------------------------------------------------------------

def test_translate_prop_examples():
    assert translate_prop(parse_mprop("a^s+")) == TVar("a")
    assert translate_prop(parse_mprop("a^s-")) == Arrow(TVar("a"), ZERO)
    expected = Arrow(ONE, FNeg(TVar("a"), Arrow(TVar("a"), ZERO)))
    assert translate_prop(parse_mprop("~a^s+")) == expected
    assert translate_prop(parse_mprop("a^c+")) == FPos(TVar("a"), Arrow(TVar("a"), ZERO))


def test_translate_conjunction():
    got = translate_prop(parse_mprop("(a & b)^s+"))
    pa = translate_prop(parse_mprop("a^c+"))
    pb = translate_prop(parse_mprop("b^c+"))
    assert got == times(pa, pb)


def test_funabs_types(rng):
    from prk.gen import PropGen
    gen = PropGen(rng)
    for _ in range(25):
        p = MProp(gen.pure(2), gen.mode())
        q = MProp(gen.pure(2), gen.mode())
        term = funabs(p, q)
        from prk.syntax import opposite
        want = Arrow(translate_prop(p),
                     Arrow(translate_prop(opposite(p)), translate_prop(q)))
        assert ftype_equiv(f_infer((), term), want)


def test_funabs_memoized():
    p = parse_mprop("(a & b)^c+")
    q = parse_mprop("a^s+")
    assert funabs(p, q) is funabs(p, q)


def test_translation_preserves_types(term_gen):
    for _ in range(40):
        ctx = term_gen.base_context()
        goal = term_gen.props.mprop(2)
        t = term_gen.sized_term(ctx, goal, 3, max_size=20)
        d = check_type(ctx, t, goal)
        fterm = translate_term(d)
        inferred = f_infer(translate_ctx(ctx), fterm)
        assert ftype_equiv(inferred, translate_prop(goal))


def test_translation_preserves_fv(term_gen):
    from prk.syntax import fv
    from prk.systemf import fterm_fv
    for _ in range(40):
        ctx = term_gen.base_context()
        goal = term_gen.props.mprop(2)
        t = term_gen.sized_term(ctx, goal, 3, max_size=20)
        d = check_type(ctx, t, goal)
        assert fterm_fv(translate_term(d)) == fv(t)


def test_translation_commutes_with_substitution(term_gen, rng):
    from prk.syntax import substitute
    from prk.systemf import close_fterm, subst_fterm
    for _ in range(25):
        ctx = term_gen.base_context()
        goal = term_gen.props.mprop(2)
        t = term_gen.sized_term(ctx, goal, 3, max_size=16)
        x, p = rng.choice(ctx.entries)
        s = term_gen.sized_term(ctx, p, 2, max_size=12)
        lhs = translate_term(check_type(ctx, substitute(t, x, s), goal))
        ft = translate_term(check_type(ctx, t, goal))
        fs = translate_term(check_type(ctx, s, p))
        rhs = subst_fterm(close_fterm(ft, x), 0, fs)
        assert lhs == rhs


# -- simulation --------------------------------------------------------------------

def _first_step(t):
    result = step(t)
    assert result is not None
    return result


def test_simulation_composes_to_normal_form(term_gen):
    # the one-step simulation composes: translating a term and its normal
    # form gives F terms connected by at least one step per source step
    from prk.rewrite import normalize
    from prk.systemf import f_reaches
    checked = 0
    for _ in range(60):
        ctx = term_gen.base_context()
        goal = term_gen.props.mprop(2)
        t = term_gen.sized_term(ctx, goal, 3, max_size=16)
        nf, trace = normalize(t)
        if not trace:
            continue
        src = translate_term(check_type(ctx, t, goal))
        tgt = translate_term(check_type(ctx, nf, goal))
        dist = f_reaches(src, tgt)
        assert dist is not None and dist >= len(trace)
        checked += 1
    assert checked >= 5


def test_simulation_beta_one_step():
    ctx = Context.of(("s", parse_mprop("a^c-")), ("u", parse_mprop("a^s+")))
    t = parse_term("capp+(clam+(x : a^c-. u), s)")
    d = infer_type(ctx, t)
    _, _, s_term = _first_step(t)
    assert check_simulation(t, s_term, d, depth=1)


def test_simulation_neg_one_step():
    ctx = Context.of(("u", parse_mprop("a^c-")),)
    t = parse_term("nege+(negi+(u))")
    d = infer_type(ctx, t)
    _, _, s_term = _first_step(t)
    assert check_simulation(t, s_term, d, depth=1)
    assert not check_simulation(t, s_term, d, depth=0)


def test_simulation_abs_pair_inj():
    ctx = Context.of(("t1", parse_mprop("a^c+")), ("t2", parse_mprop("b^c+")),
                     ("s", parse_mprop("a^c-")))
    t = parse_term("abs[c^s+](pair+(t1, t2), in1-(s))")
    d = infer_type(ctx, t)
    _, _, s_term = _first_step(t)
    assert check_simulation(t, s_term, d, depth=25)


def test_simulation_abs_neg():
    ctx = Context.of(("t", parse_mprop("a^c-")), ("s", parse_mprop("a^c+")))
    t = parse_term("abs[c^s+](negi+(t), negi-(s))")
    d = infer_type(ctx, t)
    _, _, s_term = _first_step(t)
    assert check_simulation(t, s_term, d, depth=25)


def _bfs_distance(source, target, depth, cap=6000):
    # independent oracle: literal breadth-first search over redex choices;
    # returns "abort" when the state space exceeds the cap
    frontier = [source]
    visited = {source}
    for level in range(1, depth + 1):
        nxt = []
        for u in frontier:
            for v in f_all_steps(u):
                if v == target:
                    return level
                if v not in visited:
                    visited.add(v)
                    nxt.append(v)
            if len(visited) > cap:
                return "abort"
        frontier = nxt
        if not frontier:
            return None
    return None


def test_reaches_agrees_with_bfs(term_gen):
    from prk.systemf import f_reaches
    checked = 0
    attempts = 0
    while checked < 15 and attempts < 400:
        attempts += 1
        ctx = term_gen.base_context()
        goal = term_gen.props.mprop(2)
        t = term_gen.sized_term(ctx, goal, 3, max_size=14)
        nxt = step(t)
        if nxt is None:
            continue
        d = check_type(ctx, t, goal)
        source = translate_term(d)
        target = translate_term(check_type(ctx, nxt[2], goal))
        bfs = _bfs_distance(source, target, 8)
        if bfs == "abort":
            continue
        std = f_reaches(source, target)
        if bfs is not None:
            assert std is not None and std >= 1
            # a standard path is a path; BFS distance is the true minimum
            assert bfs <= std
            checked += 1
    assert checked >= 15


# -- polarity ----------------------------------------------------------------------

def test_polarity_examples():
    p = polarity(alpha)
    assert p.pos == frozenset((alpha,)) and p.neg == frozenset()
    p = polarity(Arrow(alpha, beta))
    assert p.neg == frozenset((alpha,)) and p.pos == frozenset((beta,))


def test_polarity_constraint_atoms():
    t = FPos(alpha, beta)
    p = polarity(t)
    assert p.pos == frozenset((t,))
    assert t in p.wpos and alpha in p.wpos and beta in p.wneg


def test_weak_contains_strict(rng):
    from prk.gen import PropGen
    gen = PropGen(rng)
    for _ in range(200):
        t = translate_prop(MProp(gen.pure(3), gen.mode()))
        p = polarity(t)
        assert p.pos <= p.wpos
        assert p.neg <= p.wneg


def _one_step_unfoldings(t):
    """All types obtained by unfolding one constraint-variable occurrence."""
    from prk.systemf import unfold_constraint
    out = []
    if isinstance(t, (FPos, FNeg)):
        out.append(unfold_constraint(t))
    match t:
        case Arrow(d, c):
            out.extend(Arrow(d2, c) for d2 in _one_step_unfoldings(d))
            out.extend(Arrow(d, c2) for c2 in _one_step_unfoldings(c))
        case Forall(b):
            out.extend(Forall(b2) for b2 in _one_step_unfoldings(b))
    return out


def test_positivity_of_constraints(rng):
    # Mendler's condition, instance-checked: a constraint variable never
    # occurs negatively in any type equivalent to it (unfoldings, depth 3)
    from prk.gen import PropGen
    gen = PropGen(rng)
    for _ in range(100):
        a = translate_prop(MProp(gen.pure(2), gen.mode()))
        b = translate_prop(MProp(gen.pure(2), gen.mode()))
        for var in (FPos(a, b), FNeg(a, b)):
            frontier = [var]
            seen = set(frontier)
            for _ in range(3):
                nxt = []
                for t in frontier:
                    for t2 in _one_step_unfoldings(t):
                        if t2 not in seen:
                            seen.add(t2)
                            nxt.append(t2)
                frontier = nxt
            for t in seen:
                assert var not in polarity(t).neg


def test_complexity_decreases_into_constraints(rng):
    from prk.gen import PropGen
    from prk.systemf import complexity
    gen = PropGen(rng)
    for _ in range(60):
        a = translate_prop(MProp(gen.pure(2), gen.mode()))
        b = translate_prop(MProp(gen.pure(2), gen.mode()))
        c = FPos(a, b)
        assert complexity(a) < complexity(c)
        assert complexity(b) < complexity(c)


# -- printing ---------------------------------------------------------------------

def test_print_sugar():
    assert print_ftype(ZERO) == "0"
    assert print_ftype(ONE) == "1"
    assert print_ftype(times(A, B)) == "(A * B)"
    assert print_ftype(plus(A, B)) == "(A + B)"
    assert print_ftype(FPos(A, B)) == "Pos<A, B>"
    assert print_ftype(Arrow(A, B)) == "A -> B"


def test_print_terms():
    assert print_fterm(flam("x", A, FVar("x"))) == "fun (x : A) -> x"
    assert print_fterm(tylam("c", FVar("x"))) == "tfun c -> x"
    assert print_fterm(TyApp(FVar("x"), A)) == "x [A]"
