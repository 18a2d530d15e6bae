"""Reduction for proof terms: the seven rewriting rules, the optional
eta rule, normalization with traces, and shape classification."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DerivationMismatchError, FuelExhaustedError
from .syntax import (Abs, Bound, CApp, CLam, Case, Inj, NegE, NegI, Pair,
                     Proj, Term, Var, flip, fv, shift, subst_bound,
                     uses_index)
from .typecheck import Derivation

PLAIN = "plain"
ETA = "eta"

Position = tuple[int, ...]

RULES = ("proj", "case", "neg", "beta", "absPairInj", "absInjPair", "absNeg", "eta")


def match_redex(t: Term, mode: str) -> tuple[str, Term] | None:
    """If t is a redex at the root, return (rule, reduct)."""
    match t:
        case Proj(sign, index, Pair(sign2, left, right)) if sign == sign2:
            return "proj", (left if index == 1 else right)
        case Case(sign, Inj(sign2, index, arg), _, branch1, _, branch2) if sign == sign2:
            branch = branch1 if index == 1 else branch2
            return "case", subst_bound(branch, 0, arg)
        case NegE(sign, NegI(sign2, body)) if sign == sign2:
            return "neg", body
        case CApp(sign, CLam(sign2, _, body), arg) if sign == sign2:
            return "beta", subst_bound(body, 0, arg)
        case Abs(q, Pair(sign, left, right), Inj(sign2, index, arg)) if sign2 == flip(sign):
            comp = left if index == 1 else right
            return "absPairInj", Abs(q, CApp(sign, comp, arg), CApp(flip(sign), arg, comp))
        case Abs(q, Inj(sign, index, arg), Pair(sign2, left, right)) if sign2 == flip(sign):
            comp = left if index == 1 else right
            return "absInjPair", Abs(q, CApp(sign, arg, comp), CApp(flip(sign), comp, arg))
        case Abs(q, NegI(sign, left), NegI(sign2, right)) if sign2 == flip(sign):
            return "absNeg", Abs(q, CApp(flip(sign), left, right), CApp(sign, right, left))
        case CLam(sign, _, CApp(sign2, fun, Bound(0))) if (
                mode == ETA and sign == sign2 and not uses_index(fun, 0)):
            return "eta", shift(fun, -1)
    return None


def children(t: Term) -> tuple[Term, ...]:
    match t:
        case Var(_) | Bound(_):
            return ()
        case Abs(_, l, r) | Pair(_, l, r) | CApp(_, l, r):
            return (l, r)
        case Proj(_, _, b) | Inj(_, _, b) | NegI(_, b) | NegE(_, b):
            return (b,)
        case CLam(_, _, b):
            return (b,)
        case Case(_, s, _, b1, _, b2):
            return (s, b1, b2)
    raise TypeError(t)


def with_child(t: Term, i: int, new: Term) -> Term:
    match t, i:
        case Abs(q, _, r), 0:
            return Abs(q, new, r)
        case Abs(q, l, _), 1:
            return Abs(q, l, new)
        case Pair(sg, _, r), 0:
            return Pair(sg, new, r)
        case Pair(sg, l, _), 1:
            return Pair(sg, l, new)
        case CApp(sg, _, a), 0:
            return CApp(sg, new, a)
        case CApp(sg, f, _), 1:
            return CApp(sg, f, new)
        case Proj(sg, ix, _), 0:
            return Proj(sg, ix, new)
        case Inj(sg, ix, _), 0:
            return Inj(sg, ix, new)
        case NegI(sg, _), 0:
            return NegI(sg, new)
        case NegE(sg, _), 0:
            return NegE(sg, new)
        case CLam(sg, p, _, h), 0:
            return CLam(sg, p, new, h)
        case Case(sg, _, p1, b1, p2, b2, h1, h2), 0:
            return Case(sg, new, p1, b1, p2, b2, h1, h2)
        case Case(sg, s, p1, _, p2, b2, h1, h2), 1:
            return Case(sg, s, p1, new, p2, b2, h1, h2)
        case Case(sg, s, p1, b1, p2, _, h1, h2), 2:
            return Case(sg, s, p1, b1, p2, new, h1, h2)
    raise IndexError(f"no child {i} in {type(t).__name__}")


def subterm_at(t: Term, pos: Position) -> Term:
    for i in pos:
        t = children(t)[i]
    return t


def binder_names_at(t: Term, pos: Position) -> tuple[str, ...]:
    """Hints of the binders enclosing a position, innermost first.

    Used to display extracted redexes whose indices point out of the
    subterm; display only, no freshening."""
    env: tuple[str, ...] = ()
    for i in pos:
        match t, i:
            case CLam(_, _, _, hint), 0:
                env = (hint,) + env
            case Case(_, _, _, _, _, _, h1, _), 1:
                env = (h1,) + env
            case Case(_, _, _, _, _, _, _, h2), 2:
                env = (h2,) + env
        t = children(t)[i]
    return env


def replace_at(t: Term, pos: Position, new: Term) -> Term:
    if not pos:
        return new
    i = pos[0]
    return with_child(t, i, replace_at(children(t)[i], pos[1:], new))


def all_redexes(t: Term, mode: str = PLAIN) -> list[tuple[Position, str]]:
    """Redex positions with their rules, in pre-order (leftmost-outermost first)."""
    found: list[tuple[Position, str]] = []

    def walk(t: Term, pos: Position) -> None:
        m = match_redex(t, mode)
        if m is not None:
            found.append((pos, m[0]))
        for i, c in enumerate(children(t)):
            walk(c, pos + (i,))

    walk(t, ())
    return found


def apply_at(t: Term, pos: Position, mode: str = PLAIN) -> tuple[str, Term]:
    """Contract the redex at pos; returns (rule, new whole term)."""
    sub = subterm_at(t, pos)
    m = match_redex(sub, mode)
    if m is None:
        raise ValueError(f"no redex at position {pos}")
    rule, reduct = m
    return rule, replace_at(t, pos, reduct)


def step(t: Term, mode: str = PLAIN, strategy: str = "lo") -> tuple[str, Position, Term] | None:
    """One reduction step, or None if t is a normal form.

    strategy "lo" is leftmost-outermost (the default, used for traces);
    "ri" picks the rightmost-innermost redex instead.
    """
    redexes = all_redexes(t, mode)
    if not redexes:
        return None
    if strategy == "lo":
        pos, rule = redexes[0]
    elif strategy == "ri":
        pos, rule = max(redexes, key=lambda pr: pr[0])
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    rule, new = apply_at(t, pos, mode)
    return rule, pos, new


@dataclass(frozen=True)
class TraceStep:
    position: Position
    rule: str
    redex: Term
    reduct: Term


Trace = tuple[TraceStep, ...]


def normalize(t: Term, mode: str = PLAIN, fuel: int = 100_000,
              strategy: str = "lo") -> tuple[Term, Trace]:
    """Reduce to normal form, recording every step."""
    if fuel <= 0:
        raise ValueError("fuel must be positive")
    steps: list[TraceStep] = []
    current = t
    for _ in range(fuel):
        nxt = step(current, mode, strategy)
        if nxt is None:
            return current, tuple(steps)
        rule, pos, new = nxt
        steps.append(TraceStep(pos, rule, subterm_at(current, pos), subterm_at(new, pos)))
        current = new
    raise FuelExhaustedError(
        f"no normal form within {fuel} steps (this signals a bug for typed terms)")


def replay(t: Term, trace: Trace) -> Term:
    """Re-apply a trace from its start term; checks each recorded redex."""
    current = t
    for entry in trace:
        if subterm_at(current, entry.position) != entry.redex:
            raise ValueError(f"trace mismatch at {entry.position}")
        _, current = apply_at(current, entry.position,
                              ETA if entry.rule == "eta" else PLAIN)
    return current


# ---------------------------------------------------------------------------
# Shape classification

def is_neutral(t: Term) -> bool:
    match t:
        case Var(_) | Bound(_):
            return True
        case Proj(_, _, b) | NegE(_, b):
            return is_neutral(b)
        case Case(_, s, _, b1, _, b2):
            return is_neutral(s) and is_normal(b1) and is_normal(b2)
        case CApp(_, f, a):
            return is_neutral(f) and is_normal(a)
        case Abs(_, l, r):
            return (is_neutral(l) and is_normal(r)) or (is_normal(l) and is_neutral(r))
        case _:
            return False


def is_normal(t: Term) -> bool:
    match t:
        case Pair(_, l, r):
            return is_normal(l) and is_normal(r)
        case Inj(_, _, b) | NegI(_, b):
            return is_normal(b)
        case CLam(_, _, b):
            return is_normal(b)
        case _:
            return is_neutral(t)


def is_canonical(t: Term) -> bool:
    return isinstance(t, (Pair, Inj, NegI, CLam))


def is_explosion(t: Term) -> bool:
    return isinstance(t, (Abs, CApp))


def is_open_explosion(t: Term) -> bool:
    return is_explosion(t) and bool(fv(t))


def peel_case_context(t: Term) -> Term:
    """Strip a case-context (nested case scrutinees) off the root."""
    while isinstance(t, Case):
        t = t.scrutinee
    return t


def peel_eliminative_context(t: Term) -> Term:
    """Strip an eliminative context (proj / case scrutinee / nege chains)."""
    while True:
        match t:
            case Proj(_, _, b) | NegE(_, b):
                t = b
            case Case(_, s, _, _, _, _):
                t = s
            case _:
                return t


@dataclass(frozen=True)
class ShapeReport:
    normal: bool
    neutral: bool
    canonical: bool
    clause: int | None = None       # which canonicity guarantee applies
    clause_shape: str | None = None


def classify(t: Term, d: Derivation | None = None) -> ShapeReport:
    """Report normality (by the grammar), neutrality, canonicity, and,
    given a derivation, which canonicity clause the term matches."""
    if d is not None and d.subject != t:
        raise DerivationMismatchError("derivation subject differs from the classified term")

    normal = is_normal(t)
    neutral = is_neutral(t)
    canonical = is_canonical(t)
    if d is None:
        return ShapeReport(normal, neutral, canonical)

    clause: int | None = None
    shape: str | None = None
    if not d.ctx.entries:
        clause = 1
    elif d.ctx.is_classical() and d.conclusion.is_strong:
        clause = 2
    elif d.ctx.is_classical() and d.conclusion.is_classical:
        clause = 3

    if clause in (1, 2):
        if canonical:
            shape = "canonical"
        elif is_open_explosion(peel_case_context(t)):
            shape = "case-explosion"
        else:
            shape = "unclassified"
    elif clause == 3:
        if isinstance(t, CLam):
            shape = "clam"
        else:
            core = peel_eliminative_context(t)
            if isinstance(core, Var):
                shape = "elim-variable"
            elif is_open_explosion(core):
                shape = "elim-explosion"
            else:
                shape = "unclassified"
    return ShapeReport(normal, neutral, canonical, clause, shape)
