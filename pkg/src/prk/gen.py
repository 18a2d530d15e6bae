"""Seeded random generators: pure propositions, moded propositions, and
well-typed proof terms (built top-down from a goal, so typability holds
by construction).  All randomness flows from PRK_SEED."""

from __future__ import annotations

import os
import random

from .syntax import (CLASSICAL, MINUS, PLUS, STRONG, Abs, And, CApp, MProp,
                     Mode, Neg, Or, PVar, Pair, Proj, Inj, NegE, NegI,
                     PureProp, Term, Var, case, clam, fresh_name, opposite,
                     term_size)
from .typecheck import Context, abs_general_at

DEFAULT_SEED = 20250807


def seed_from_env() -> int:
    return int(os.environ.get("PRK_SEED", DEFAULT_SEED))


class PropGen:
    def __init__(self, rng: random.Random, atoms: tuple[str, ...] = ("a", "b")):
        self.rng = rng
        self.atoms = atoms

    def pure(self, depth: int) -> PureProp:
        if depth <= 1 or self.rng.random() < 0.3:
            return PVar(self.rng.choice(self.atoms))
        kind = self.rng.choice(("and", "or", "neg"))
        if kind == "neg":
            return Neg(self.pure(depth - 1))
        left, right = self.pure(depth - 1), self.pure(depth - 1)
        return And(left, right) if kind == "and" else Or(left, right)

    def mode(self) -> Mode:
        return Mode(self.rng.choice((STRONG, CLASSICAL)),
                    self.rng.choice((PLUS, MINUS)))

    def mprop(self, depth: int) -> MProp:
        return MProp(self.pure(depth), self.mode())


class TermGen:
    """Generates well-typed terms by following the typing rules top-down.

    The context always contains a contradictory classical pair for each
    atom (xN : a^c+, xN' : a^c-), so every goal over those atoms is
    inhabited and generation cannot get stuck.
    """

    def __init__(self, rng: random.Random, atoms: tuple[str, ...] = ("a", "b")):
        self.rng = rng
        self.atoms = atoms
        self.props = PropGen(rng, atoms)
        self._counter = 0

    def base_context(self, extra: int = 2) -> Context:
        ctx = Context()
        for a in self.atoms:
            ctx = ctx.extend(f"p_{a}", MProp(PVar(a), Mode(CLASSICAL, PLUS)))
            ctx = ctx.extend(f"n_{a}", MProp(PVar(a), Mode(CLASSICAL, MINUS)))
        for i in range(extra):
            ctx = ctx.extend(f"g{i}", self.props.mprop(2))
        return ctx

    def classical_context(self, extra: int = 2) -> Context:
        ctx = Context()
        for a in self.atoms:
            ctx = ctx.extend(f"p_{a}", MProp(PVar(a), Mode(CLASSICAL, PLUS)))
            ctx = ctx.extend(f"n_{a}", MProp(PVar(a), Mode(CLASSICAL, MINUS)))
        for i in range(extra):
            p = self.props.mprop(2)
            ctx = ctx.extend(f"g{i}", MProp(p.base, Mode(CLASSICAL, p.sign)))
        return ctx

    def _fresh(self, ctx: Context) -> str:
        self._counter += 1
        return fresh_name(f"v{self._counter}", ctx.names())

    def _escape(self, ctx: Context, goal: MProp) -> Term:
        axioms = [n for n, p in ctx if p == goal]
        if axioms:
            return Var(self.rng.choice(axioms))
        a = self.rng.choice(self.atoms)
        return abs_general_at(goal, Var(f"p_{a}"), Var(f"n_{a}"),
                              MProp(PVar(a), Mode(CLASSICAL, PLUS)))

    def term(self, ctx: Context, goal: MProp, depth: int) -> Term:
        if depth <= 0:
            return self._escape(ctx, goal)
        options = ["escape"]
        axioms = [n for n, p in ctx if p == goal]
        if axioms:
            options += ["ax"] * 3
        if goal.is_classical:
            options += ["clam"] * 3 + ["eta_expand", "absurd"]
            options += ["elim"]
        else:
            options += ["intro"] * 3 + ["capp"] * 2 + ["absurd"]
        options += ["case"]
        choice = self.rng.choice(options)

        if choice == "ax":
            return Var(self.rng.choice(axioms))
        if choice == "escape":
            return self._escape(ctx, goal)
        if choice == "clam":
            x = self._fresh(ctx)
            annot = opposite(goal)
            body_goal = MProp(goal.base, Mode(STRONG, goal.sign))
            body = self.term(ctx.extend(x, annot), body_goal, depth - 1)
            return clam(goal.sign, x, annot, body)
        if choice == "eta_expand":
            x = self._fresh(ctx)
            fun = self.term(ctx, goal, depth - 1)
            return clam(goal.sign, x, opposite(goal), CApp(goal.sign, fun, Var(x)))
        if choice == "capp" and goal.is_strong:
            sg = goal.sign
            fun = self.term(ctx, MProp(goal.base, Mode(CLASSICAL, sg)), depth - 1)
            arg = self.term(ctx, MProp(goal.base, Mode(CLASSICAL, "-" if sg == "+" else "+")),
                            depth - 1)
            return CApp(sg, fun, arg)
        if choice == "absurd":
            a = self.props.pure(2)
            p = MProp(a, Mode(STRONG, self.rng.choice((PLUS, MINUS))))
            left = self.term(ctx, p, depth - 1)
            right = self.term(ctx, opposite(p), depth - 1)
            return abs_general_at(goal, left, right, p)
        if choice == "case":
            sg = self.rng.choice((PLUS, MINUS))
            a, b = self.props.pure(2), self.props.pure(2)
            if sg == PLUS:
                scrut_goal = MProp(Or(a, b), Mode(STRONG, PLUS))
                annots = (MProp(a, Mode(CLASSICAL, PLUS)), MProp(b, Mode(CLASSICAL, PLUS)))
            else:
                scrut_goal = MProp(And(a, b), Mode(STRONG, MINUS))
                annots = (MProp(a, Mode(CLASSICAL, MINUS)), MProp(b, Mode(CLASSICAL, MINUS)))
            scrut = self.term(ctx, scrut_goal, depth - 1)
            x, y = self._fresh(ctx), None
            b1 = self.term(ctx.extend(x, annots[0]), goal, depth - 1)
            y = self._fresh(ctx)
            b2 = self.term(ctx.extend(y, annots[1]), goal, depth - 1)
            return case(sg, scrut, (x, annots[0], b1), (y, annots[1], b2))
        if choice == "elim" and goal.is_classical:
            kind = self.rng.choice(("proj", "nege"))
            sg = goal.sign
            if kind == "proj":
                other = self.props.pure(2)
                index = self.rng.choice((1, 2))
                if sg == PLUS:
                    comps = (goal.base, other) if index == 1 else (other, goal.base)
                    inner_goal = MProp(And(*comps), Mode(STRONG, PLUS))
                else:
                    comps = (goal.base, other) if index == 1 else (other, goal.base)
                    inner_goal = MProp(Or(*comps), Mode(STRONG, MINUS))
                inner = self.term(ctx, inner_goal, depth - 1)
                return Proj(PLUS if sg == PLUS else MINUS, index, inner)
            neg_sign = PLUS if sg == MINUS else MINUS
            inner = self.term(ctx, MProp(Neg(goal.base), Mode(STRONG, neg_sign)), depth - 1)
            return NegE(neg_sign, inner)

        # intro dispatch on the goal's shape; falls back when it does not apply
        base, mode = goal.base, goal.mode
        if mode.strength == STRONG:
            cp, cm = Mode(CLASSICAL, PLUS), Mode(CLASSICAL, MINUS)
            match base, mode.sign:
                case And(l, r), "+":
                    return Pair(PLUS, self.term(ctx, MProp(l, cp), depth - 1),
                                self.term(ctx, MProp(r, cp), depth - 1))
                case Or(l, r), "-":
                    return Pair(MINUS, self.term(ctx, MProp(l, cm), depth - 1),
                                self.term(ctx, MProp(r, cm), depth - 1))
                case Or(l, r), "+":
                    i = self.rng.choice((1, 2))
                    comp = l if i == 1 else r
                    return Inj(PLUS, i, self.term(ctx, MProp(comp, cp), depth - 1))
                case And(l, r), "-":
                    i = self.rng.choice((1, 2))
                    comp = l if i == 1 else r
                    return Inj(MINUS, i, self.term(ctx, MProp(comp, cm), depth - 1))
                case Neg(inner), "+":
                    return NegI(PLUS, self.term(ctx, MProp(inner, cm), depth - 1))
                case Neg(inner), "-":
                    return NegI(MINUS, self.term(ctx, MProp(inner, cp), depth - 1))
                case PVar(_), sg:
                    fun = self.term(ctx, MProp(base, Mode(CLASSICAL, sg)), depth - 1)
                    arg = self.term(ctx, MProp(base, Mode(CLASSICAL, "-" if sg == "+" else "+")),
                                    depth - 1)
                    return CApp(sg, fun, arg)
        # classical goal fallback
        x = self._fresh(ctx)
        annot = opposite(goal)
        body = self.term(ctx.extend(x, annot),
                         MProp(goal.base, Mode(STRONG, goal.sign)), depth - 1)
        return clam(goal.sign, x, annot, body)

    def sized_term(self, ctx: Context, goal: MProp, depth: int,
                   max_size: int = 40, attempts: int = 20) -> Term:
        """A generated term within a size bound (retries, then shrinks depth)."""
        for k in range(attempts):
            t = self.term(ctx, goal, max(1, depth - k // 5))
            if term_size(t) <= max_size:
                return t
        return self._escape(ctx, goal)


# ---------------------------------------------------------------------------
# Exhaustive enumeration of well-typed terms

def all_pure_props(atoms: tuple[str, ...], depth: int) -> list[PureProp]:
    """All pure propositions of height <= depth (a variable has height 1)."""
    by_depth: list[list[PureProp]] = [[PVar(a) for a in atoms]]
    for _ in range(depth - 1):
        prev = [p for level in by_depth for p in level]
        nxt: list[PureProp] = [Neg(p) for p in by_depth[-1]]
        for l in prev:
            for r in prev:
                if max(_height(l), _height(r)) == len(by_depth):
                    nxt.append(And(l, r))
                    nxt.append(Or(l, r))
        by_depth.append(nxt)
    return [p for level in by_depth for p in level]


def _height(p: PureProp) -> int:
    from .syntax import prop_depth
    return prop_depth(p)


def bases_atoms(bases: tuple[PureProp, ...]) -> tuple[str, ...]:
    from .syntax import prop_vars
    atoms: set[str] = set()
    for b in bases:
        atoms |= prop_vars(b)
    return tuple(sorted(atoms))


class TypedEnumerator:
    """All well-typed terms up to a size bound under a fixed context,
    with freely chosen annotations drawn from a finite base pool.

    Enumeration is goal-directed over the typing rules, so every produced
    term is well-typed by construction; with the standard pool it covers
    every term over the pool's annotations, exhaustively per size.
    """

    def __init__(self, ctx: Context, bases: tuple[PureProp, ...],
                 goal_bases: tuple[PureProp, ...] | None = None):
        self.ctx = ctx
        self.bases = bases
        if goal_bases is None:
            goal_bases = tuple(all_pure_props(bases_atoms(bases), 2))
        self.goal_bases = goal_bases
        # absurdity premises range over all pool-expressible strong types,
        # so the abs-family redexes (pair/inj/negi collisions) are covered
        self.strong_pool = [MProp(b, Mode(STRONG, s)) for b in goal_bases
                            for s in (PLUS, MINUS)]
        self._memo: dict[tuple, tuple[Term, ...]] = {}
        self._abs_pairs: dict[tuple, tuple[tuple[Term, Term], ...]] = {}

    def goals(self) -> list[MProp]:
        return [MProp(b, Mode(st, s)) for b in self.goal_bases
                for st in (STRONG, CLASSICAL) for s in (PLUS, MINUS)]

    def terms(self, max_size: int) -> set[Term]:
        out: set[Term] = set()
        for goal in self.goals():
            for n in range(1, max_size + 1):
                out.update(self._exact(self.ctx, goal, n))
        return out

    def _exact(self, ctx: Context, goal: MProp, n: int) -> tuple[Term, ...]:
        key = (ctx.entries, goal, n)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        self._memo[key] = ()  # cut recursion; sizes strictly decrease anyway
        out: list[Term] = []
        if n == 1:
            out.extend(Var(name) for name, p in ctx if p == goal)
        if n >= 2:
            self._intro(ctx, goal, n, out)
            self._elim(ctx, goal, n, out)
            for left, right in self._abs_arguments(ctx, n - 1):
                out.append(Abs(goal, left, right))
        result = tuple(out)
        self._memo[key] = result
        return result

    def _abs_arguments(self, ctx: Context, budget: int) -> tuple[tuple[Term, Term], ...]:
        key = (ctx.entries, budget)
        hit = self._abs_pairs.get(key)
        if hit is None:
            pairs: list[tuple[Term, Term]] = []
            for p in self.strong_pool:
                for i in range(1, budget):
                    for left in self._exact(ctx, p, i):
                        for right in self._exact(ctx, opposite(p), budget - i):
                            pairs.append((left, right))
            hit = tuple(pairs)
            self._abs_pairs[key] = hit
        return hit

    def _intro(self, ctx: Context, goal: MProp, n: int, out: list[Term]) -> None:
        base, mode = goal.base, goal.mode
        if mode.strength == CLASSICAL:
            x = f"u{len(ctx.entries)}"
            annot = opposite(goal)
            inner = MProp(base, Mode(STRONG, mode.sign))
            for body in self._exact(ctx.extend(x, annot), inner, n - 1):
                out.append(clam(mode.sign, x, annot, body))
            return
        cp, cm = Mode(CLASSICAL, PLUS), Mode(CLASSICAL, MINUS)
        match base, mode.sign:
            case And(l, r), "+":
                for i in range(1, n - 1):
                    for left in self._exact(ctx, MProp(l, cp), i):
                        for right in self._exact(ctx, MProp(r, cp), n - 1 - i):
                            out.append(Pair(PLUS, left, right))
            case Or(l, r), "-":
                for i in range(1, n - 1):
                    for left in self._exact(ctx, MProp(l, cm), i):
                        for right in self._exact(ctx, MProp(r, cm), n - 1 - i):
                            out.append(Pair(MINUS, left, right))
            case Or(l, r), "+":
                for i, comp in ((1, l), (2, r)):
                    for body in self._exact(ctx, MProp(comp, cp), n - 1):
                        out.append(Inj(PLUS, i, body))
            case And(l, r), "-":
                for i, comp in ((1, l), (2, r)):
                    for body in self._exact(ctx, MProp(comp, cm), n - 1):
                        out.append(Inj(MINUS, i, body))
            case Neg(inner), "+":
                for body in self._exact(ctx, MProp(inner, cm), n - 1):
                    out.append(NegI(PLUS, body))
            case Neg(inner), "-":
                for body in self._exact(ctx, MProp(inner, cp), n - 1):
                    out.append(NegI(MINUS, body))

    def _elim(self, ctx: Context, goal: MProp, n: int, out: list[Term]) -> None:
        base, mode = goal.base, goal.mode
        # classical eliminations: projections and negation elimination
        if mode.strength == CLASSICAL:
            sign = mode.sign
            for other in self.bases:
                for index in (1, 2):
                    comps = (base, other) if index == 1 else (other, base)
                    if sign == PLUS:
                        premise = MProp(And(*comps), Mode(STRONG, PLUS))
                        for body in self._exact(ctx, premise, n - 1):
                            out.append(Proj(PLUS, index, body))
                    else:
                        premise = MProp(Or(*comps), Mode(STRONG, MINUS))
                        for body in self._exact(ctx, premise, n - 1):
                            out.append(Proj(MINUS, index, body))
            # nege+ : (~A)^s+ -> A^c-; nege- : (~A)^s- -> A^c+
            if sign == MINUS:
                for body in self._exact(ctx, MProp(Neg(base), Mode(STRONG, PLUS)), n - 1):
                    out.append(NegE(PLUS, body))
            else:
                for body in self._exact(ctx, MProp(Neg(base), Mode(STRONG, MINUS)), n - 1):
                    out.append(NegE(MINUS, body))
        else:
            # strong goals via classical elimination (capp)
            sign = mode.sign
            for i in range(1, n - 1):
                for fun in self._exact(ctx, MProp(base, Mode(CLASSICAL, sign)), i):
                    opp = Mode(CLASSICAL, MINUS if sign == PLUS else PLUS)
                    for arg in self._exact(ctx, MProp(base, opp), n - 1 - i):
                        out.append(CApp(sign, fun, arg))
        # case over a pool scrutinee, any goal
        for sign in (PLUS, MINUS):
            for a in self.bases:
                for b in self.bases:
                    if sign == PLUS:
                        scrut_t = MProp(Or(a, b), Mode(STRONG, PLUS))
                        annots = (MProp(a, Mode(CLASSICAL, PLUS)), MProp(b, Mode(CLASSICAL, PLUS)))
                    else:
                        scrut_t = MProp(And(a, b), Mode(STRONG, MINUS))
                        annots = (MProp(a, Mode(CLASSICAL, MINUS)), MProp(b, Mode(CLASSICAL, MINUS)))
                    x = f"u{len(ctx.entries)}"
                    ctx1 = ctx.extend(x, annots[0])
                    ctx2 = ctx.extend(x, annots[1])
                    for i in range(1, n - 2):
                        scruts = self._exact(ctx, scrut_t, i)
                        if not scruts:
                            continue
                        for j in range(1, n - 1 - i):
                            for b1 in self._exact(ctx1, goal, j):
                                for b2 in self._exact(ctx2, goal, n - 1 - i - j):
                                    for sc in scruts:
                                        out.append(case(sign, sc, (x, annots[0], b1),
                                                        (x, annots[1], b2)))


# ---------------------------------------------------------------------------
# A fixed library of provable judgments

def provable_library() -> list[tuple[Context, MProp, Term]]:
    """Twenty provable judgments with their witnesses: excluded middle and
    non-contradiction instances, admissible-rule conclusions, and a few
    compiled classical proofs."""
    from .classical import embed_nk, nk_and_e, nk_and_i, nk_hyp, nk_imp_i, nk_neg_e, nk_neg_i
    from .typecheck import mk_lem

    a, b = PVar("a"), PVar("b")
    sp, sm = Mode(STRONG, PLUS), Mode(STRONG, MINUS)
    cp, cm = Mode(CLASSICAL, PLUS), Mode(CLASSICAL, MINUS)

    def m(base, mode):
        return MProp(base, mode)

    entries: list[tuple[Context, MProp, Term]] = []

    entries.append((Context(), m(Or(a, Neg(a)), cp), mk_lem(a, PLUS)))
    entries.append((Context(), m(And(a, Neg(a)), cm), mk_lem(a, MINUS)))
    entries.append((Context(), m(Or(And(a, b), Neg(And(a, b))), cp), mk_lem(And(a, b), PLUS)))
    entries.append((Context(), m(And(Or(a, b), Neg(Or(a, b))), cm), mk_lem(Or(a, b), MINUS)))

    x, y = Var("x"), Var("y")
    ctx1 = Context.of(("x", m(a, sp)))
    entries.append((ctx1, m(a, cp), clam(PLUS, "w", m(a, cm), x)))
    ctx2 = Context.of(("x", m(a, sm)))
    entries.append((ctx2, m(a, cm), clam(MINUS, "w", m(a, cp), x)))

    contradiction = Context.of(("x", m(a, cp)), ("y", m(a, cm)))
    entries.append((contradiction, m(b, sp), abs_general_at(m(b, sp), x, y, m(a, cp))))
    entries.append((contradiction, m(b, cm), abs_general_at(m(b, cm), x, y, m(a, cp))))

    pair_ctx = Context.of(("x", m(a, cp)), ("y", m(b, cp)))
    entries.append((pair_ctx, m(And(a, b), sp), Pair(PLUS, x, y)))
    entries.append((Context.of(("x", m(And(a, b), sp))), m(a, cp), Proj(PLUS, 1, x)))
    entries.append((Context.of(("x", m(a, cp))), m(Or(a, b), sp), Inj(PLUS, 1, x)))
    entries.append((Context.of(("x", m(Neg(a), sp))), m(a, cm), NegE(PLUS, x)))
    entries.append((Context.of(("x", m(a, cm))), m(Neg(a), sp), NegI(PLUS, x)))

    pair_ctx_m = Context.of(("x", m(a, cm)), ("y", m(b, cm)))
    entries.append((pair_ctx_m, m(Or(a, b), sm), Pair(MINUS, x, y)))
    entries.append((Context.of(("x", m(Or(a, b), sm))), m(b, cm), Proj(MINUS, 2, x)))
    entries.append((Context.of(("x", m(a, cm))), m(And(a, b), sm), Inj(MINUS, 1, x)))
    entries.append((Context.of(("x", m(a, cp))), m(Neg(a), sm), NegI(MINUS, x)))

    dni = nk_neg_i(Neg(a), nk_neg_e(nk_hyp((a, Neg(a)), 1), nk_hyp((a, Neg(a)), 0)))
    entries.append((Context.of(("h0", m(a, cp))), m(Neg(Neg(a)), cp), embed_nk(dni)))

    comm = nk_and_i(nk_and_e(2, nk_hyp((And(a, b),), 0)), nk_and_e(1, nk_hyp((And(a, b),), 0)))
    entries.append((Context.of(("h0", m(And(a, b), cp))), m(And(b, a), cp), embed_nk(comm)))

    imp = nk_imp_i(And(a, b), comm)
    entries.append((Context(), m(Or(Neg(And(a, b)), And(b, a)), cp), embed_nk(imp)))

    assert len(entries) == 20
    return entries
