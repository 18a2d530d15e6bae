"""System F extended with the recursive Pos/Neg type constraints:
types, terms, coinductive type equivalence, algorithmic typing with
conversion, beta reduction, the 0/1/x/+ encodings, the translation from
proof terms, and the polarity/positivity tooling.

Pos<A,B> and Neg<A,B> are the constraint variables, subject to

    Pos<A,B>  ==  Neg<A,B> -> A        Neg<A,B>  ==  Pos<A,B> -> B

Bound variables (term and type) are de Bruijn indices; free variables
are named, so structural equality is alpha-equivalence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .errors import (FuelExhaustedError, InvalidDerivationError, TypingError,
                     UnboundVariableError)
from .syntax import (CLASSICAL, MINUS, PLUS, STRONG, And, MProp, Mode, Neg,
                     Or, PVar, cache_hash, fresh_name, opposite)
from .typecheck import Context, Derivation, check_type


class NotAnArrowError(TypingError):
    pass


class NotAForallError(TypingError):
    pass


class DomainMismatchError(TypingError):
    pass


# ---------------------------------------------------------------------------
# Types

class FType:
    __slots__ = ()


@dataclass(frozen=True)
class TVar(FType):
    name: str


@dataclass(frozen=True)
class TBound(FType):
    index: int


@dataclass(frozen=True)
class FPos(FType):
    a: FType
    b: FType


@dataclass(frozen=True)
class FNeg(FType):
    a: FType
    b: FType


@dataclass(frozen=True)
class Arrow(FType):
    dom: FType
    cod: FType


@dataclass(frozen=True)
class Forall(FType):
    body: FType
    hint: str = field(default="a", compare=False)


def shift_type(t: FType, amount: int, cutoff: int = 0) -> FType:
    match t:
        case TVar(_):
            return t
        case TBound(i):
            return TBound(i + amount) if i >= cutoff else t
        case FPos(a, b):
            return FPos(shift_type(a, amount, cutoff), shift_type(b, amount, cutoff))
        case FNeg(a, b):
            return FNeg(shift_type(a, amount, cutoff), shift_type(b, amount, cutoff))
        case Arrow(d, c):
            return Arrow(shift_type(d, amount, cutoff), shift_type(c, amount, cutoff))
        case Forall(b, h):
            return Forall(shift_type(b, amount, cutoff + 1), h)
    raise TypeError(t)


def subst_type(t: FType, j: int, a: FType, depth: int = 0) -> FType:
    """Substitute a for type index j; depth counts binders already crossed
    between a's home level and t (used when descending through terms)."""
    match t:
        case TVar(_):
            return t
        case TBound(i):
            if i == j + depth:
                return shift_type(a, depth) if depth else a
            return TBound(i - 1) if i > j + depth else t
        case FPos(x, y):
            return FPos(subst_type(x, j, a, depth), subst_type(y, j, a, depth))
        case FNeg(x, y):
            return FNeg(subst_type(x, j, a, depth), subst_type(y, j, a, depth))
        case Arrow(d, c):
            return Arrow(subst_type(d, j, a, depth), subst_type(c, j, a, depth))
        case Forall(b, h):
            return Forall(subst_type(b, j, a, depth + 1), h)
    raise TypeError(t)


def close_type(t: FType, name: str, depth: int = 0) -> FType:
    match t:
        case TVar(n):
            return TBound(depth) if n == name else t
        case TBound(i):
            return TBound(i + 1) if i >= depth else t
        case FPos(x, y):
            return FPos(close_type(x, name, depth), close_type(y, name, depth))
        case FNeg(x, y):
            return FNeg(close_type(x, name, depth), close_type(y, name, depth))
        case Arrow(d, c):
            return Arrow(close_type(d, name, depth), close_type(c, name, depth))
        case Forall(b, h):
            return Forall(close_type(b, name, depth + 1), h)
    raise TypeError(t)


def ftype_vars(t: FType) -> frozenset[str]:
    match t:
        case TVar(n):
            return frozenset((n,))
        case TBound(_):
            return frozenset()
        case FPos(a, b) | FNeg(a, b) | Arrow(a, b):
            return ftype_vars(a) | ftype_vars(b)
        case Forall(b, _):
            return ftype_vars(b)
    raise TypeError(t)


def forall(name: str, body: FType) -> Forall:
    return Forall(close_type(body, name), hint=name)


ZERO = Forall(TBound(0), hint="a")
ONE = Forall(Arrow(TBound(0), TBound(0)), hint="a")


def times(a: FType, b: FType) -> FType:
    return Forall(Arrow(Arrow(a, Arrow(b, TBound(0))), TBound(0)), hint="r")


def plus(a: FType, b: FType) -> FType:
    return Forall(Arrow(Arrow(a, TBound(0)), Arrow(Arrow(b, TBound(0)), TBound(0))),
                  hint="r")


def unfold_constraint(t: FType) -> FType:
    """One unfolding of a constraint variable into its arrow form."""
    match t:
        case FPos(a, b):
            return Arrow(FNeg(a, b), a)
        case FNeg(a, b):
            return Arrow(FPos(a, b), b)
    raise ValueError("not a constraint variable")


def ftype_equiv(a: FType, b: FType) -> bool:
    """Decide the equivalence generated by the Pos/Neg constraints.

    Coinductive algorithm: pairs under comparison are assumed equal while
    their unfoldings are compared.  Sound (and terminating) because every
    constraint right-hand side is an arrow and unfolding never invents
    new constraint variables.
    """
    assumed: set[tuple[FType, FType]] = set()

    def go(a: FType, b: FType) -> bool:
        if a == b:
            return True
        key = (a, b)
        if key in assumed:
            return True
        assumed.add(key)
        match a, b:
            case (FPos(a1, b1), FPos(a2, b2)) | (FNeg(a1, b1), FNeg(a2, b2)):
                return go(a1, a2) and go(b1, b2)
            case (FPos(_, _) | FNeg(_, _), _):
                return go(unfold_constraint(a), b)
            case (_, FPos(_, _) | FNeg(_, _)):
                return go(a, unfold_constraint(b))
            case (Arrow(d1, c1), Arrow(d2, c2)):
                return go(d1, d2) and go(c1, c2)
            case (Forall(b1, _), Forall(b2, _)):
                return go(b1, b2)
            case _:
                return False

    return go(a, b)


# ---------------------------------------------------------------------------
# Terms

class FTerm:
    __slots__ = ()


@dataclass(frozen=True)
class FVar(FTerm):
    name: str


@dataclass(frozen=True)
class FBound(FTerm):
    index: int


@dataclass(frozen=True)
class FLam(FTerm):
    annot: FType
    body: FTerm
    hint: str = field(default="x", compare=False)


@dataclass(frozen=True)
class FApp(FTerm):
    fun: FTerm
    arg: FTerm


@dataclass(frozen=True)
class TyLam(FTerm):
    body: FTerm
    hint: str = field(default="a", compare=False)


@dataclass(frozen=True)
class TyApp(FTerm):
    fun: FTerm
    ty: FType


def shift_fterm(t: FTerm, d_term: int, d_type: int, c_term: int = 0, c_type: int = 0) -> FTerm:
    """Shift term indices by d_term and type indices by d_type."""
    match t:
        case FVar(_):
            return t
        case FBound(i):
            return FBound(i + d_term) if i >= c_term else t
        case FLam(annot, body, h):
            return FLam(shift_type(annot, d_type, c_type) if d_type else annot,
                        shift_fterm(body, d_term, d_type, c_term + 1, c_type), h)
        case FApp(f, a):
            return FApp(shift_fterm(f, d_term, d_type, c_term, c_type),
                        shift_fterm(a, d_term, d_type, c_term, c_type))
        case TyLam(body, h):
            return TyLam(shift_fterm(body, d_term, d_type, c_term, c_type + 1), h)
        case TyApp(f, ty):
            return TyApp(shift_fterm(f, d_term, d_type, c_term, c_type),
                         shift_type(ty, d_type, c_type) if d_type else ty)
    raise TypeError(t)


def subst_fterm(t: FTerm, j: int, s: FTerm) -> FTerm:
    """Substitute s for term index j (beta for term application); s is
    shifted by the term and type binders crossed on the way in."""

    def go(t: FTerm, d_term: int, d_type: int) -> FTerm:
        match t:
            case FVar(_):
                return t
            case FBound(i):
                if i == j + d_term:
                    return shift_fterm(s, d_term, d_type) if (d_term or d_type) else s
                return FBound(i - 1) if i > j + d_term else t
            case FLam(annot, body, h):
                return FLam(annot, go(body, d_term + 1, d_type), h)
            case FApp(f, a):
                return FApp(go(f, d_term, d_type), go(a, d_term, d_type))
            case TyLam(body, h):
                return TyLam(go(body, d_term, d_type + 1), h)
            case TyApp(f, ty):
                return TyApp(go(f, d_term, d_type), ty)
        raise TypeError(t)

    return go(t, 0, 0)


def subst_type_in_fterm(t: FTerm, j: int, a: FType) -> FTerm:
    """Substitute a for type index j throughout a term (beta for type
    application)."""

    def go(t: FTerm, depth: int) -> FTerm:
        match t:
            case FVar(_) | FBound(_):
                return t
            case FLam(annot, body, h):
                return FLam(subst_type(annot, j, a, depth), go(body, depth), h)
            case FApp(f, s):
                return FApp(go(f, depth), go(s, depth))
            case TyLam(body, h):
                return TyLam(go(body, depth + 1), h)
            case TyApp(f, ty):
                return TyApp(go(f, depth), subst_type(ty, j, a, depth))
        raise TypeError(t)

    return go(t, 0)


def close_fterm(t: FTerm, name: str, depth: int = 0) -> FTerm:
    match t:
        case FVar(n):
            return FBound(depth) if n == name else t
        case FBound(i):
            return FBound(i + 1) if i >= depth else t
        case FLam(annot, body, h):
            return FLam(annot, close_fterm(body, name, depth + 1), h)
        case FApp(f, a):
            return FApp(close_fterm(f, name, depth), close_fterm(a, name, depth))
        case TyLam(body, h):
            return TyLam(close_fterm(body, name, depth), h)
        case TyApp(f, ty):
            return TyApp(close_fterm(f, name, depth), ty)
    raise TypeError(t)


def close_tyvar_in_fterm(t: FTerm, name: str, depth: int = 0) -> FTerm:
    match t:
        case FVar(_) | FBound(_):
            return t
        case FLam(annot, body, h):
            return FLam(close_type(annot, name, depth), close_tyvar_in_fterm(body, name, depth), h)
        case FApp(f, a):
            return FApp(close_tyvar_in_fterm(f, name, depth), close_tyvar_in_fterm(a, name, depth))
        case TyLam(body, h):
            return TyLam(close_tyvar_in_fterm(body, name, depth + 1), h)
        case TyApp(f, ty):
            return TyApp(close_tyvar_in_fterm(f, name, depth), close_type(ty, name, depth))
    raise TypeError(t)


def fterm_fv(t: FTerm) -> frozenset[str]:
    match t:
        case FVar(n):
            return frozenset((n,))
        case FBound(_):
            return frozenset()
        case FLam(_, body, _) | TyLam(body, _):
            return fterm_fv(body)
        case FApp(f, a):
            return fterm_fv(f) | fterm_fv(a)
        case TyApp(f, _):
            return fterm_fv(f)
    raise TypeError(t)


def fterm_ftv(t: FTerm) -> frozenset[str]:
    """Free (named) type variables occurring in annotations and type arguments."""
    match t:
        case FVar(_) | FBound(_):
            return frozenset()
        case FLam(annot, body, _):
            return ftype_vars(annot) | fterm_ftv(body)
        case FApp(f, a):
            return fterm_ftv(f) | fterm_ftv(a)
        case TyLam(body, _):
            return fterm_ftv(body)
        case TyApp(f, ty):
            return fterm_ftv(f) | ftype_vars(ty)
    raise TypeError(t)


def flam(name: str, annot: FType, body: FTerm) -> FLam:
    return FLam(annot, close_fterm(body, name), hint=name)


def tylam(name: str, body: FTerm) -> TyLam:
    return TyLam(close_tyvar_in_fterm(body, name), hint=name)


for _cls in (TVar, TBound, FPos, FNeg, Arrow, Forall, FVar, FBound, FLam,
             FApp, TyLam, TyApp):
    cache_hash(_cls)


# Encodings of unit/empty/product/sum introduction and elimination.

TRIV = TyLam(FLam(TBound(0), FBound(0), hint="x"), hint="a")


def abort_f(ty: FType, t: FTerm) -> FTerm:
    return TyApp(t, ty)


def pair_f(t: FTerm, s: FTerm, a: FType, b: FType) -> FTerm:
    f = Arrow(a, Arrow(b, TBound(0)))
    return TyLam(FLam(f, FApp(FApp(FBound(0), shift_fterm(t, 1, 1)),
                              shift_fterm(s, 1, 1)), hint="f"), hint="r")


def proj_f(i: int, t: FTerm, a: FType, b: FType) -> FTerm:
    sel = FLam(a, FLam(b, FBound(1 if i == 1 else 0), hint="y"), hint="x")
    return FApp(TyApp(t, a if i == 1 else b), sel)


def in_f(i: int, t: FTerm, a: FType, b: FType) -> FTerm:
    body = FApp(FBound(1 if i == 1 else 0), shift_fterm(t, 2, 1))
    return TyLam(FLam(Arrow(a, TBound(0)), FLam(Arrow(b, TBound(0)), body, hint="g"),
                      hint="f"), hint="r")


def case_f(t: FTerm, f1: FTerm, f2: FTerm, result: FType) -> FTerm:
    return FApp(FApp(TyApp(t, result), f1), f2)


# ---------------------------------------------------------------------------
# Typing

FContext = tuple[tuple[str, FType], ...]


def _expose_arrow(t: FType) -> tuple[FType, FType]:
    match t:
        case Arrow(d, c):
            return d, c
        case FPos(a, b):
            return FNeg(a, b), a
        case FNeg(a, b):
            return FPos(a, b), b
    raise NotAnArrowError(f"expected a function type, found {print_ftype(t)}")


def f_infer(ctx: FContext, t: FTerm) -> FType:
    """Algorithmic typing; conversion (ftype_equiv) at application domains."""
    match t:
        case FVar(name):
            for n, ty in reversed(ctx):
                if n == name:
                    return ty
            raise UnboundVariableError(f"unbound variable {name!r}")
        case FBound(i):
            raise TypingError(f"dangling bound variable #{i}")
        case FLam(annot, body, hint):
            x = fresh_name(hint or "x", {n for n, _ in ctx} | set(fterm_fv(body)))
            cod = f_infer(ctx + ((x, annot),), subst_fterm(body, 0, FVar(x)))
            return Arrow(annot, cod)
        case FApp(fun, arg):
            tf = f_infer(ctx, fun)
            dom, cod = _expose_arrow(tf)
            ta = f_infer(ctx, arg)
            if not ftype_equiv(ta, dom):
                raise DomainMismatchError(
                    f"argument type {print_ftype(ta)} does not match domain {print_ftype(dom)}")
            return cod
        case TyLam(body, hint):
            taken = set(fterm_ftv(body))
            for _, ty in ctx:
                taken |= ftype_vars(ty)
            beta = fresh_name(hint or "a", taken)
            inner = f_infer(ctx, subst_type_in_fterm(body, 0, TVar(beta)))
            return Forall(close_type(inner, beta), hint=beta)
        case TyApp(fun, ty):
            tf = f_infer(ctx, fun)
            if not isinstance(tf, Forall):
                raise NotAForallError(f"expected a polymorphic type, found {print_ftype(tf)}")
            return subst_type(tf.body, 0, ty)
    raise TypeError(t)


# ---------------------------------------------------------------------------
# Reduction

def f_match_redex(t: FTerm) -> FTerm | None:
    match t:
        case FApp(FLam(_, body, _), arg):
            return subst_fterm(body, 0, arg)
        case TyApp(TyLam(body, _), ty):
            return subst_type_in_fterm(body, 0, ty)
    return None


def _f_children(t: FTerm) -> tuple[FTerm, ...]:
    match t:
        case FVar(_) | FBound(_):
            return ()
        case FLam(_, body, _) | TyLam(body, _):
            return (body,)
        case FApp(f, a):
            return (f, a)
        case TyApp(f, _):
            return (f,)
    raise TypeError(t)


def _f_with_child(t: FTerm, i: int, new: FTerm) -> FTerm:
    match t, i:
        case FLam(annot, _, h), 0:
            return FLam(annot, new, h)
        case TyLam(_, h), 0:
            return TyLam(new, h)
        case FApp(_, a), 0:
            return FApp(new, a)
        case FApp(f, _), 1:
            return FApp(f, new)
        case TyApp(_, ty), 0:
            return TyApp(new, ty)
    raise IndexError(i)


def f_step(t: FTerm) -> FTerm | None:
    """Leftmost-outermost beta step (term or type), or None."""
    red = f_match_redex(t)
    if red is not None:
        return red
    for i, c in enumerate(_f_children(t)):
        stepped = f_step(c)
        if stepped is not None:
            return _f_with_child(t, i, stepped)
    return None


def f_all_steps(t: FTerm) -> list[FTerm]:
    """All one-step reducts (every redex position)."""
    out: list[FTerm] = []
    red = f_match_redex(t)
    if red is not None:
        out.append(red)
    for i, c in enumerate(_f_children(t)):
        for stepped in f_all_steps(c):
            out.append(_f_with_child(t, i, stepped))
    return out


def f_normalize(t: FTerm, fuel: int = 100_000) -> FTerm:
    current = t
    for _ in range(fuel):
        nxt = f_step(current)
        if nxt is None:
            return current
        current = nxt
    raise FuelExhaustedError(f"no F normal form within {fuel} steps")


# ---------------------------------------------------------------------------
# Translation from proof terms

@lru_cache(maxsize=None)
def translate_prop(p: MProp) -> FType:
    """Measure-recursive translation of a moded proposition to an F type."""
    base, mode = p.base, p.mode
    if mode.strength == CLASSICAL:
        a_plus = translate_prop(MProp(base, Mode(STRONG, PLUS)))
        a_minus = translate_prop(MProp(base, Mode(STRONG, MINUS)))
        return FPos(a_plus, a_minus) if mode.sign == PLUS else FNeg(a_plus, a_minus)
    cp, cm = Mode(CLASSICAL, PLUS), Mode(CLASSICAL, MINUS)
    match base, mode.sign:
        case PVar(name), "+":
            return TVar(name)
        case PVar(name), "-":
            return Arrow(TVar(name), ZERO)
        case And(l, r), "+":
            return times(translate_prop(MProp(l, cp)), translate_prop(MProp(r, cp)))
        case And(l, r), "-":
            return plus(translate_prop(MProp(l, cm)), translate_prop(MProp(r, cm)))
        case Or(l, r), "+":
            return plus(translate_prop(MProp(l, cp)), translate_prop(MProp(r, cp)))
        case Or(l, r), "-":
            return times(translate_prop(MProp(l, cm)), translate_prop(MProp(r, cm)))
        case Neg(inner), "+":
            return Arrow(ONE, translate_prop(MProp(inner, cm)))
        case Neg(inner), "-":
            return Arrow(ONE, translate_prop(MProp(inner, cp)))
    raise TypeError(p)


_funabs_memo: dict[tuple[MProp, MProp], FTerm] = {}


def funabs(p: MProp, q: MProp) -> FTerm:
    """The closed absurdity interpreter, typed T(p) -> T(opposite p) -> T(q)
    for the proposition translation T, defined by recursion on measure(p)."""
    key = (p, q)
    cached = _funabs_memo.get(key)
    if cached is not None:
        return cached

    tq = translate_prop(q)
    tp = translate_prop(p)
    tpo = translate_prop(opposite(p))
    cp, cm = Mode(CLASSICAL, PLUS), Mode(CLASSICAL, MINUS)
    x, y, z = FVar("x"), FVar("y"), FVar("z")

    def wrap(body: FTerm) -> FTerm:
        return flam("x", tp, flam("y", tpo, body))

    base, mode = p.base, p.mode
    if mode.strength == CLASSICAL:
        inner = funabs(MProp(base, Mode(STRONG, mode.sign)), q)
        term = wrap(FApp(FApp(inner, FApp(x, y)), FApp(y, x)))
    else:
        match base, mode.sign:
            case PVar(_), "+":
                term = wrap(abort_f(tq, FApp(y, x)))
            case PVar(_), "-":
                term = wrap(abort_f(tq, FApp(x, y)))
            case And(l, r), "+":
                lp, rp = MProp(l, cp), MProp(r, cp)
                lm, rm = MProp(l, cm), MProp(r, cm)
                tl, tr = translate_prop(lp), translate_prop(rp)
                b1 = flam("z", translate_prop(lm),
                          FApp(FApp(funabs(lp, q), proj_f(1, x, tl, tr)), z))
                b2 = flam("z", translate_prop(rm),
                          FApp(FApp(funabs(rp, q), proj_f(2, x, tl, tr)), z))
                term = wrap(case_f(y, b1, b2, tq))
            case And(l, r), "-":
                lm, rm = MProp(l, cm), MProp(r, cm)
                lp, rp = MProp(l, cp), MProp(r, cp)
                tl, tr = translate_prop(lp), translate_prop(rp)
                b1 = flam("z", translate_prop(lm),
                          FApp(FApp(funabs(lm, q), z), proj_f(1, y, tl, tr)))
                b2 = flam("z", translate_prop(rm),
                          FApp(FApp(funabs(rm, q), z), proj_f(2, y, tl, tr)))
                term = wrap(case_f(x, b1, b2, tq))
            case Or(l, r), "+":
                lp, rp = MProp(l, cp), MProp(r, cp)
                lm, rm = MProp(l, cm), MProp(r, cm)
                tl, tr = translate_prop(lm), translate_prop(rm)
                b1 = flam("z", translate_prop(lp),
                          FApp(FApp(funabs(lp, q), z), proj_f(1, y, tl, tr)))
                b2 = flam("z", translate_prop(rp),
                          FApp(FApp(funabs(rp, q), z), proj_f(2, y, tl, tr)))
                term = wrap(case_f(x, b1, b2, tq))
            case Or(l, r), "-":
                lm, rm = MProp(l, cm), MProp(r, cm)
                lp, rp = MProp(l, cp), MProp(r, cp)
                tl, tr = translate_prop(lm), translate_prop(rm)
                b1 = flam("z", translate_prop(lp),
                          FApp(FApp(funabs(lm, q), proj_f(1, x, tl, tr)), z))
                b2 = flam("z", translate_prop(rp),
                          FApp(FApp(funabs(rm, q), proj_f(2, x, tl, tr)), z))
                term = wrap(case_f(y, b1, b2, tq))
            case Neg(inner), "+":
                term = wrap(FApp(FApp(funabs(MProp(inner, cm), q), FApp(x, TRIV)),
                                 FApp(y, TRIV)))
            case Neg(inner), "-":
                term = wrap(FApp(FApp(funabs(MProp(inner, cp), q), FApp(x, TRIV)),
                                 FApp(y, TRIV)))
            case _:
                raise TypeError(p)

    _funabs_memo[key] = term
    return term


def translate_ctx(ctx: Context) -> FContext:
    return tuple((name, translate_prop(p)) for name, p in ctx)


def translate_term(d: Derivation) -> FTerm:
    """Translate a typing derivation into an F term of the translated type."""
    from .syntax import CLam, Case, Inj, Proj, Var

    t = d.subject
    match d.rule:
        case "Ax":
            assert isinstance(t, Var)
            return FVar(t.name)
        case "Abs":
            dl, dr = d.premises
            return FApp(FApp(funabs(dl.conclusion, d.conclusion),
                             translate_term(dl)), translate_term(dr))
        case "IAnd+" | "IOr-":
            dl, dr = d.premises
            return pair_f(translate_term(dl), translate_term(dr),
                          translate_prop(dl.conclusion), translate_prop(dr.conclusion))
        case "EAnd+" | "EOr-":
            (db,) = d.premises
            assert isinstance(t, Proj)
            p = db.conclusion
            comp_mode = Mode(CLASSICAL, p.sign)
            ta = translate_prop(MProp(p.base.left, comp_mode))
            tb = translate_prop(MProp(p.base.right, comp_mode))
            return proj_f(t.index, translate_term(db), ta, tb)
        case "IOr+" | "IAnd-":
            (db,) = d.premises
            assert isinstance(t, Inj)
            concl = d.conclusion
            comp_mode = Mode(CLASSICAL, concl.sign)
            ta = translate_prop(MProp(concl.base.left, comp_mode))
            tb = translate_prop(MProp(concl.base.right, comp_mode))
            return in_f(t.index, translate_term(db), ta, tb)
        case "EOr+" | "EAnd-":
            dsc, d1, d2 = d.premises
            assert isinstance(t, Case)
            n1 = d1.ctx.entries[-1][0]
            n2 = d2.ctx.entries[-1][0]
            f1 = flam(n1, translate_prop(t.annot1), translate_term(d1))
            f2 = flam(n2, translate_prop(t.annot2), translate_term(d2))
            return case_f(translate_term(dsc), f1, f2, translate_prop(d.conclusion))
        case "INeg+" | "INeg-":
            (db,) = d.premises
            body = translate_term(db)
            u = fresh_name("u", set(fterm_fv(body)))
            return flam(u, ONE, body)
        case "ENeg+" | "ENeg-":
            (db,) = d.premises
            return FApp(translate_term(db), TRIV)
        case "IC+" | "IC-":
            (db,) = d.premises
            assert isinstance(t, CLam)
            n = db.ctx.entries[-1][0]
            return flam(n, translate_prop(t.annot), translate_term(db))
        case "EC+" | "EC-":
            df, da = d.premises
            return FApp(translate_term(df), translate_term(da))
    raise InvalidDerivationError(f"unknown rule {d.rule}")


def f_head_step(t: FTerm) -> FTerm | None:
    """Contract the head redex (leftmost redex on the application spine)."""
    red = f_match_redex(t)
    if red is not None:
        return red
    match t:
        case FApp(f, a):
            h = f_head_step(f)
            return None if h is None else FApp(h, a)
        case TyApp(f, ty):
            h = f_head_step(f)
            return None if h is None else TyApp(h, ty)
    return None


def f_reaches(source: FTerm, target: FTerm) -> int | None:
    """Length of a shortest standard reduction from source to target, or
    None if the target is unreachable.

    The system is orthogonal, so by standardization every reduction
    permutes into head steps followed by internal reductions of the
    components; it therefore suffices to walk the head chain, attempting
    component-wise decomposition at every point.  This collapses the
    interleavings of independent redexes that defeat a naive breadth-first
    search without changing the answer, and a standard path is still a
    path, so its length bounds the depth a breadth-first search would
    need.
    """
    memo: dict[tuple[FTerm, FTerm], int | None] = {}

    def go(u: FTerm, s: FTerm) -> int | None:
        if u == s:
            return 0
        key = (u, s)
        if key in memo:
            return memo[key]
        memo[key] = None  # cycle guard; reduction is acyclic anyway
        best = _decompose(u, s) if type(u) is type(s) else None
        head = f_head_step(u)
        if head is not None:
            via_head = go(head, s)
            if via_head is not None and (best is None or 1 + via_head < best):
                best = 1 + via_head
        memo[key] = best
        return best

    def _decompose(u: FTerm, s: FTerm) -> int | None:
        match u, s:
            case FLam(annot1, body1, _), FLam(annot2, body2, _):
                if annot1 != annot2:
                    return None
                return go(body1, body2)
            case FApp(f1, a1), FApp(f2, a2):
                df = go(f1, f2)
                if df is None:
                    return None
                da = go(a1, a2)
                return None if da is None else df + da
            case TyLam(body1, _), TyLam(body2, _):
                return go(body1, body2)
            case TyApp(f1, ty1), TyApp(f2, ty2):
                if ty1 != ty2:
                    return None
                return go(f1, f2)
        return None

    return go(source, target)


def check_simulation(t, s, d: Derivation, depth: int = 25) -> bool:
    """Does the translation of t reduce to the translation of s in >= 1
    F-steps within the bound?

    t -> s must be a single reduction step and d a derivation for t.  The
    search is exact over all redex choices (see f_reaches); on failure the
    caller learns only that no path exists within the bound.
    """
    source = translate_term(d)
    ds = check_type(d.ctx, s, d.conclusion)
    target = translate_term(ds)
    if source == target:
        return False  # a >= 1 step loop is impossible in a normalizing system
    dist = f_reaches(source, target)
    return dist is not None and dist <= depth


# ---------------------------------------------------------------------------
# Polarity and positivity tooling

@dataclass(frozen=True)
class Polarity:
    pos: frozenset[FType]
    neg: frozenset[FType]
    wpos: frozenset[FType]
    wneg: frozenset[FType]
    compl: int


def _posneg(t: FType) -> tuple[frozenset[FType], frozenset[FType]]:
    match t:
        case TVar(_) | FPos(_, _) | FNeg(_, _):
            return frozenset((t,)), frozenset()
        case TBound(_):
            return frozenset(), frozenset()
        case Arrow(d, c):
            pd, nd = _posneg(d)
            pc, nc = _posneg(c)
            return nd | pc, pd | nc
        case Forall(b, _):
            return _posneg(b)
    raise TypeError(t)


def _weak_posneg(t: FType) -> tuple[frozenset[FType], frozenset[FType]]:
    match t:
        case TVar(_):
            return frozenset((t,)), frozenset()
        case TBound(_):
            return frozenset(), frozenset()
        case FPos(a, b):
            wpa, wna = _weak_posneg(a)
            wpb, wnb = _weak_posneg(b)
            return frozenset((t,)) | wpa | wnb, wna | wpb
        case FNeg(a, b):
            wpa, wna = _weak_posneg(a)
            wpb, wnb = _weak_posneg(b)
            return frozenset((t,)) | wna | wpb, wpa | wnb
        case Arrow(d, c):
            wpd, wnd = _weak_posneg(d)
            wpc, wnc = _weak_posneg(c)
            return wnd | wpc, wpd | wnc
        case Forall(b, _):
            return _weak_posneg(b)
    raise TypeError(t)


def complexity(t: FType) -> int:
    match t:
        case TVar(_) | TBound(_):
            return 1
        case FPos(a, b) | FNeg(a, b) | Arrow(a, b):
            return 1 + complexity(a) + complexity(b)
        case Forall(b, _):
            return 1 + complexity(b)
    raise TypeError(t)


def polarity(t: FType) -> Polarity:
    """Positive/negative and weakly positive/negative variable occurrences
    (constraint variables count as atoms), plus the complexity measure."""
    pos, neg = _posneg(t)
    wpos, wneg = _weak_posneg(t)
    return Polarity(pos, neg, wpos, wneg, complexity(t))


# ---------------------------------------------------------------------------
# Printing

def _mentions_bound0(t: FType, depth: int = 0) -> bool:
    match t:
        case TBound(i):
            return i == depth
        case TVar(_):
            return False
        case FPos(a, b) | FNeg(a, b) | Arrow(a, b):
            return _mentions_bound0(a, depth) or _mentions_bound0(b, depth)
        case Forall(b, _):
            return _mentions_bound0(b, depth + 1)
    raise TypeError(t)


def _unsugar_type(t: FType) -> tuple[str, FType, FType] | str | None:
    if t == ZERO:
        return "0"
    if t == ONE:
        return "1"
    match t:
        case Forall(Arrow(Arrow(a, Arrow(b, TBound(0))), TBound(0)), _):
            if not _mentions_bound0(a) and not _mentions_bound0(b):
                return ("*", shift_type(a, -1), shift_type(b, -1))
        case Forall(Arrow(Arrow(a, TBound(0)), Arrow(Arrow(b, TBound(0)), TBound(0))), _):
            if not _mentions_bound0(a) and not _mentions_bound0(b):
                return ("+", shift_type(a, -1), shift_type(b, -1))
    return None


def print_ftype(t: FType, env: tuple[str, ...] = ()) -> str:
    sugar = _unsugar_type(t)
    if isinstance(sugar, str):
        return sugar
    if sugar is not None:
        op, a, b = sugar
        return f"({print_ftype(a, env)} {op} {print_ftype(b, env)})"
    match t:
        case TVar(n):
            return n
        case TBound(i):
            return env[i] if i < len(env) else f"#{i}"
        case FPos(a, b):
            return f"Pos<{print_ftype(a, env)}, {print_ftype(b, env)}>"
        case FNeg(a, b):
            return f"Neg<{print_ftype(a, env)}, {print_ftype(b, env)}>"
        case Arrow(d, c):
            ds = print_ftype(d, env)
            if isinstance(d, Arrow) and _unsugar_type(d) is None:
                ds = f"({ds})"
            return f"{ds} -> {print_ftype(c, env)}"
        case Forall(b, hint):
            from .syntax import fresh_name
            name = fresh_name(hint or "a", set(env) | set(ftype_vars(b)))
            return f"forall {name}. {print_ftype(b, (name,) + env)}"
    raise TypeError(t)


def print_fterm(t: FTerm, env: tuple[str, ...] = (), tyenv: tuple[str, ...] = ()) -> str:
    from .syntax import fresh_name
    match t:
        case FVar(n):
            return n
        case FBound(i):
            return env[i] if i < len(env) else f"#{i}"
        case FLam(annot, body, hint):
            x = fresh_name(hint or "x", set(env) | set(fterm_fv(body)))
            return f"fun ({x} : {print_ftype(annot, tyenv)}) -> {print_fterm(body, (x,) + env, tyenv)}"
        case FApp(f, a):
            fs = print_fterm(f, env, tyenv)
            if isinstance(f, (FLam, TyLam)):
                fs = f"({fs})"
            args = print_fterm(a, env, tyenv)
            if isinstance(a, (FLam, TyLam, FApp, TyApp)):
                args = f"({args})"
            return f"{fs} {args}"
        case TyLam(body, hint):
            a = fresh_name(hint or "a", set(tyenv))
            return f"tfun {a} -> {print_fterm(body, env, (a,) + tyenv)}"
        case TyApp(f, ty):
            fs = print_fterm(f, env, tyenv)
            if isinstance(f, (FLam, TyLam)):
                fs = f"({fs})"
            return f"{fs} [{print_ftype(ty, tyenv)}]"
    raise TypeError(t)
