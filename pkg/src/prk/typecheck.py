"""Type inference for proof terms, derivation trees, and the admissible
rule combinators (generalized absurdity, contraposition, excluded middle,
projection of derivations).

Inference is syntax-directed and bidirectional: every term form is
inferable except injections, whose missing component is not determined
by the term; those are handled in checking mode against an expected
type.  Case scrutinees are checked against the type reconstructed from
the binder annotations.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (AnnotationMismatchError, CannotInferError,
                     DuplicateAssumptionError, ModeMismatchError,
                     NoSuchAssumptionError, NotClassicalError, NotStrongError,
                     SignMismatchError, TypeMismatchError, TypingError,
                     TypesNotOppositeError, UnboundVariableError)
from .syntax import (CLASSICAL, MINUS, PLUS, STRONG, Abs, And, Bound, CApp,
                     CLam, Case, Inj, MProp, Mode, Neg, NegE, NegI, Or, Pair,
                     Proj, PureProp, Term, Var, clam, case as mk_case,
                     fresh_name, fv, open_binder, opposite, truncate)


# ---------------------------------------------------------------------------
# Contexts

@dataclass(frozen=True)
class Context:
    """Ordered list of (variable, proposition) assumptions, names distinct."""

    entries: tuple[tuple[str, MProp], ...] = ()

    @staticmethod
    def of(*pairs: tuple[str, MProp]) -> "Context":
        ctx = Context()
        for name, p in pairs:
            ctx = ctx.extend(name, p)
        return ctx

    def lookup(self, name: str) -> MProp | None:
        for n, p in self.entries:
            if n == name:
                return p
        return None

    def extend(self, name: str, p: MProp) -> "Context":
        if self.lookup(name) is not None:
            raise DuplicateAssumptionError(f"duplicate assumption {name!r}")
        return Context(self.entries + ((name, p),))

    def replace(self, name: str, p: MProp) -> "Context":
        if self.lookup(name) is None:
            raise NoSuchAssumptionError(f"no assumption named {name!r}")
        return Context(tuple((n, p if n == name else q) for n, q in self.entries))

    def names(self) -> frozenset[str]:
        return frozenset(n for n, _ in self.entries)

    def is_classical(self) -> bool:
        return all(p.is_classical for _, p in self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __str__(self) -> str:
        return ", ".join(f"{n} : {p}" for n, p in self.entries)


# ---------------------------------------------------------------------------
# Derivations

@dataclass(frozen=True)
class Derivation:
    """One node of a typing derivation; premises under binders have the
    binder opened with a fresh named variable."""

    rule: str
    ctx: Context
    subject: Term
    conclusion: MProp
    premises: tuple["Derivation", ...] = ()


def _fresh(hint: str, ctx: Context, *terms: Term) -> str:
    taken = set(ctx.names())
    for t in terms:
        taken |= fv(t)
    return fresh_name(hint or "x", taken)


def _expect_mode(p: MProp, strength: str, sign: str, what: str) -> None:
    if p.mode.strength != strength:
        raise ModeMismatchError(f"{what}: expected {strength}{sign} mode, found {p}")
    if p.sign != sign:
        raise SignMismatchError(f"{what}: expected sign {sign}, found {p}")


def infer_type(ctx: Context, t: Term) -> Derivation:
    """Infer the unique type of t under ctx, returning the derivation."""
    match t:
        case Var(name):
            p = ctx.lookup(name)
            if p is None:
                raise UnboundVariableError(f"unbound variable {name!r}")
            return Derivation("Ax", ctx, t, p)

        case Bound(i):
            raise TypingError(f"dangling bound variable #{i}")

        case Abs(q, left, right):
            try:
                dl = infer_type(ctx, left)
                dr = check_type(ctx, right, opposite(dl.conclusion))
            except CannotInferError:
                dr = infer_type(ctx, right)
                dl = check_type(ctx, left, opposite(dr.conclusion))
            p = dl.conclusion
            if not p.is_strong:
                raise NotStrongError(f"absurdity premise must be strong, found {p}")
            return Derivation("Abs", ctx, t, q, (dl, dr))

        case Pair(sign, left, right):
            dl = infer_type(ctx, left)
            dr = infer_type(ctx, right)
            if sign == PLUS:
                _expect_mode(dl.conclusion, CLASSICAL, PLUS, "pair+ left component")
                _expect_mode(dr.conclusion, CLASSICAL, PLUS, "pair+ right component")
                concl = MProp(And(dl.conclusion.base, dr.conclusion.base), Mode(STRONG, PLUS))
                return Derivation("IAnd+", ctx, t, concl, (dl, dr))
            _expect_mode(dl.conclusion, CLASSICAL, MINUS, "pair- left component")
            _expect_mode(dr.conclusion, CLASSICAL, MINUS, "pair- right component")
            concl = MProp(Or(dl.conclusion.base, dr.conclusion.base), Mode(STRONG, MINUS))
            return Derivation("IOr-", ctx, t, concl, (dl, dr))

        case Proj(sign, index, body):
            db = infer_type(ctx, body)
            p = db.conclusion
            if sign == PLUS:
                if not (isinstance(p.base, And) and p.mode == Mode(STRONG, PLUS)):
                    raise ModeMismatchError(f"proj{index}+ needs a strong conjunction, found {p}")
                comp = p.base.left if index == 1 else p.base.right
                return Derivation("EAnd+", ctx, t, MProp(comp, Mode(CLASSICAL, PLUS)), (db,))
            if not (isinstance(p.base, Or) and p.mode == Mode(STRONG, MINUS)):
                raise ModeMismatchError(f"proj{index}- needs a strong disjunction denial, found {p}")
            comp = p.base.left if index == 1 else p.base.right
            return Derivation("EOr-", ctx, t, MProp(comp, Mode(CLASSICAL, MINUS)), (db,))

        case Inj(_, _, _):
            raise CannotInferError(
                "the type of an injection is not inferable; check it against an expected type")

        case Case(_, _, _, _, _, _):
            return _case_derivation(ctx, t, expected=None)

        case NegI(sign, body):
            db = infer_type(ctx, body)
            p = db.conclusion
            if sign == PLUS:
                _expect_mode(p, CLASSICAL, MINUS, "negi+ premise")
                return Derivation("INeg+", ctx, t, MProp(Neg(p.base), Mode(STRONG, PLUS)), (db,))
            _expect_mode(p, CLASSICAL, PLUS, "negi- premise")
            return Derivation("INeg-", ctx, t, MProp(Neg(p.base), Mode(STRONG, MINUS)), (db,))

        case NegE(sign, body):
            db = infer_type(ctx, body)
            p = db.conclusion
            if not (isinstance(p.base, Neg) and p.mode == Mode(STRONG, sign)):
                raise ModeMismatchError(f"nege{sign} needs a strong negation, found {p}")
            inner = p.base.inner
            mode = Mode(CLASSICAL, MINUS if sign == PLUS else PLUS)
            rule = "ENeg+" if sign == PLUS else "ENeg-"
            return Derivation(rule, ctx, t, MProp(inner, mode), (db,))

        case CLam(sign, annot, body, hint):
            if sign == PLUS:
                if annot.mode != Mode(CLASSICAL, MINUS):
                    raise AnnotationMismatchError(
                        f"clam+ binder must assume a classical denial, found {annot}")
                goal = MProp(annot.base, Mode(STRONG, PLUS))
                concl = MProp(annot.base, Mode(CLASSICAL, PLUS))
                rule = "IC+"
            else:
                if annot.mode != Mode(CLASSICAL, PLUS):
                    raise AnnotationMismatchError(
                        f"clam- binder must assume a classical affirmation, found {annot}")
                goal = MProp(annot.base, Mode(STRONG, MINUS))
                concl = MProp(annot.base, Mode(CLASSICAL, MINUS))
                rule = "IC-"
            x = _fresh(hint, ctx, body)
            db = check_type(ctx.extend(x, annot), open_binder(body, x), goal)
            return Derivation(rule, ctx, t, concl, (db,))

        case CApp(sign, fun, arg):
            df = infer_type(ctx, fun)
            p = df.conclusion
            if sign == PLUS:
                _expect_mode(p, CLASSICAL, PLUS, "capp+ function")
                da = check_type(ctx, arg, MProp(p.base, Mode(CLASSICAL, MINUS)))
                return Derivation("EC+", ctx, t, MProp(p.base, Mode(STRONG, PLUS)), (df, da))
            _expect_mode(p, CLASSICAL, MINUS, "capp- function")
            da = check_type(ctx, arg, MProp(p.base, Mode(CLASSICAL, PLUS)))
            return Derivation("EC-", ctx, t, MProp(p.base, Mode(STRONG, MINUS)), (df, da))

    raise TypeError(t)


def _case_derivation(ctx: Context, t: Case, expected: MProp | None) -> Derivation:
    sign = t.sign
    p1, p2 = t.annot1, t.annot2
    if sign == PLUS:
        for which, p in (("first", p1), ("second", p2)):
            if p.mode != Mode(CLASSICAL, PLUS):
                raise AnnotationMismatchError(
                    f"case+ {which} binder must assume a classical affirmation, found {p}")
        scrut_ty = MProp(Or(p1.base, p2.base), Mode(STRONG, PLUS))
        rule = "EOr+"
    else:
        for which, p in (("first", p1), ("second", p2)):
            if p.mode != Mode(CLASSICAL, MINUS):
                raise AnnotationMismatchError(
                    f"case- {which} binder must assume a classical denial, found {p}")
        scrut_ty = MProp(And(p1.base, p2.base), Mode(STRONG, MINUS))
        rule = "EAnd-"

    try:
        dsc = infer_type(ctx, t.scrutinee)
        if dsc.conclusion != scrut_ty:
            raise AnnotationMismatchError(
                f"case binder annotations require scrutinee type {scrut_ty}, "
                f"found {dsc.conclusion}")
    except CannotInferError:
        try:
            dsc = check_type(ctx, t.scrutinee, scrut_ty)
        except TypeMismatchError as e:
            raise AnnotationMismatchError(str(e)) from e

    x1 = _fresh(t.hint1, ctx, t.branch1)
    x2 = _fresh(t.hint2, ctx, t.branch2)
    ctx1 = ctx.extend(x1, p1)
    ctx2 = ctx.extend(x2, p2)
    b1 = open_binder(t.branch1, x1)
    b2 = open_binder(t.branch2, x2)

    if expected is not None:
        d1 = check_type(ctx1, b1, expected)
        d2 = check_type(ctx2, b2, expected)
    else:
        try:
            d1 = infer_type(ctx1, b1)
            d2 = check_type(ctx2, b2, d1.conclusion)
        except CannotInferError:
            d2 = infer_type(ctx2, b2)
            d1 = check_type(ctx1, b1, d2.conclusion)
    return Derivation(rule, ctx, t, d1.conclusion, (dsc, d1, d2))


def check_type(ctx: Context, t: Term, expected: MProp) -> Derivation:
    """Check t against an expected type, returning the derivation."""
    match t:
        case Inj(sign, index, body):
            base = expected.base
            if sign == PLUS:
                if not (isinstance(base, Or) and expected.mode == Mode(STRONG, PLUS)):
                    raise TypeMismatchError(f"in{index}+ builds a strong disjunction, "
                                            f"cannot have type {expected}")
                comp = base.left if index == 1 else base.right
                db = check_type(ctx, body, MProp(comp, Mode(CLASSICAL, PLUS)))
                return Derivation("IOr+", ctx, t, expected, (db,))
            if not (isinstance(base, And) and expected.mode == Mode(STRONG, MINUS)):
                raise TypeMismatchError(f"in{index}- builds a strong conjunction denial, "
                                        f"cannot have type {expected}")
            comp = base.left if index == 1 else base.right
            db = check_type(ctx, body, MProp(comp, Mode(CLASSICAL, MINUS)))
            return Derivation("IAnd-", ctx, t, expected, (db,))

        case Pair(sign, left, right):
            base = expected.base
            if sign == PLUS and isinstance(base, And) and expected.mode == Mode(STRONG, PLUS):
                dl = check_type(ctx, left, MProp(base.left, Mode(CLASSICAL, PLUS)))
                dr = check_type(ctx, right, MProp(base.right, Mode(CLASSICAL, PLUS)))
                return Derivation("IAnd+", ctx, t, expected, (dl, dr))
            if sign == MINUS and isinstance(base, Or) and expected.mode == Mode(STRONG, MINUS):
                dl = check_type(ctx, left, MProp(base.left, Mode(CLASSICAL, MINUS)))
                dr = check_type(ctx, right, MProp(base.right, Mode(CLASSICAL, MINUS)))
                return Derivation("IOr-", ctx, t, expected, (dl, dr))
            raise TypeMismatchError(f"pair{sign} cannot have type {expected}")

        case NegI(sign, body):
            base = expected.base
            if not (isinstance(base, Neg) and expected.mode == Mode(STRONG, sign)):
                raise TypeMismatchError(f"negi{sign} cannot have type {expected}")
            inner_mode = Mode(CLASSICAL, MINUS if sign == PLUS else PLUS)
            db = check_type(ctx, body, MProp(base.inner, inner_mode))
            rule = "INeg+" if sign == PLUS else "INeg-"
            return Derivation(rule, ctx, t, expected, (db,))

        case Case(_, _, _, _, _, _):
            d = _case_derivation(ctx, t, expected=expected)
            return d

        case Abs(q, _, _):
            if q != expected:
                raise TypeMismatchError(f"absurdity annotated {q}, expected {expected}")
            return infer_type(ctx, t)

        case _:
            d = infer_type(ctx, t)
            if d.conclusion != expected:
                raise TypeMismatchError(
                    f"term has type {d.conclusion}, expected {expected}")
            return d


def validate_derivation(d: Derivation) -> bool:
    """Re-check a derivation bottom-up; True iff it reconstructs exactly."""
    try:
        again = check_type(d.ctx, d.subject, d.conclusion)
    except TypingError:
        return False
    return again == d


# ---------------------------------------------------------------------------
# Admissible-rule combinators

def abs_general_at(q: MProp, t: Term, s: Term, p: MProp) -> Term:
    """Generalized absurdity abs{q}(t, s) where t : p and s : opposite(p)."""
    if p.is_strong:
        return Abs(q, t, s)
    if p.sign == PLUS:
        return Abs(q, CApp(PLUS, t, s), CApp(MINUS, s, t))
    return Abs(q, CApp(MINUS, t, s), CApp(PLUS, s, t))


def mk_abs_general(ctx: Context, q: MProp, t: Term, s: Term) -> Term:
    """Generalized absurdity with the premise type inferred from ctx."""
    try:
        p = infer_type(ctx, t).conclusion
        check_type(ctx, s, opposite(p))
    except CannotInferError:
        p = opposite(infer_type(ctx, s).conclusion)
        check_type(ctx, t, p)
    except TypingError as e:
        raise TypesNotOppositeError(f"absurdity arguments are not opposite: {e}") from e
    return abs_general_at(q, t, s, p)


def contrapose_at(x: str, p: MProp, y: str, t: Term, q: MProp) -> Term:
    """Contraposition witness: from (x : p classical |- t : q) build a term
    of opposite(p) under the assumption y : opposite(q)."""
    if not p.is_classical:
        raise NotClassicalError(f"contraposition needs a classical assumption, found {p}")
    if p.sign == PLUS:
        body = abs_general_at(MProp(p.base, Mode(STRONG, MINUS)), t, Var(y), q)
        return clam(MINUS, x, p, body)
    body = abs_general_at(MProp(p.base, Mode(STRONG, PLUS)), t, Var(y), q)
    return clam(PLUS, x, p, body)


def mk_contrapose(ctx: Context, x: str, y: str, t: Term) -> Term:
    """Contraposition with the types read off from ctx (which binds x)."""
    p = ctx.lookup(x)
    if p is None:
        raise NoSuchAssumptionError(f"no assumption named {x!r}")
    if not p.is_classical:
        raise NotClassicalError(f"contraposition needs a classical assumption, found {p}")
    q = infer_type(ctx, t).conclusion
    return contrapose_at(x, p, y, t, q)


def mk_lem(a: PureProp, sign: str) -> Term:
    """Closed witnesses of the classical excluded middle (sign +, type
    (a | ~a)^c+) and non-contradiction (sign -, type (a & ~a)^c-)."""
    if sign == PLUS:
        disj = Or(a, Neg(a))
        d_cm = MProp(disj, Mode(CLASSICAL, MINUS))
        na_cm = MProp(Neg(a), Mode(CLASSICAL, MINUS))
        a_cm = MProp(a, Mode(CLASSICAL, MINUS))
        inner = clam(PLUS, "w", d_cm,
                     Inj(PLUS, 1, clam(PLUS, "z", a_cm,
                         abs_general_at(MProp(a, Mode(STRONG, PLUS)),
                                        Var("y"),
                                        clam(PLUS, "v", na_cm, NegI(PLUS, Var("z"))),
                                        na_cm))))
        return clam(PLUS, "x", d_cm,
                    Inj(PLUS, 2, clam(PLUS, "y", na_cm,
                        NegI(PLUS, Proj(MINUS, 1, CApp(MINUS, Var("x"), inner))))))
    conj = And(a, Neg(a))
    c_cp = MProp(conj, Mode(CLASSICAL, PLUS))
    na_cp = MProp(Neg(a), Mode(CLASSICAL, PLUS))
    a_cp = MProp(a, Mode(CLASSICAL, PLUS))
    inner = clam(MINUS, "w", c_cp,
                 Inj(MINUS, 1, clam(MINUS, "z", a_cp,
                     abs_general_at(MProp(a, Mode(STRONG, MINUS)),
                                    Var("y"),
                                    clam(MINUS, "v", na_cp, NegI(MINUS, Var("z"))),
                                    na_cp))))
    return clam(MINUS, "x", c_cp,
                Inj(MINUS, 2, clam(MINUS, "y", na_cp,
                    NegI(MINUS, Proj(PLUS, 1, CApp(PLUS, Var("x"), inner))))))


# ---------------------------------------------------------------------------
# Projection of derivations

def pc_term(t: Term, p: MProp, taken: frozenset[str] | set[str]) -> Term:
    """Project the conclusion: wrap a strong-typed term so it types at
    truncate(p); classical conclusions are left alone."""
    if p.is_classical:
        return t
    z = fresh_name("w", set(taken) | fv(t))
    if p.sign == PLUS:
        return clam(PLUS, z, MProp(p.base, Mode(CLASSICAL, MINUS)), t)
    return clam(MINUS, z, MProp(p.base, Mode(CLASSICAL, PLUS)), t)


def cs_term(name: str, t: Term, p: MProp) -> Term:
    """Classical strengthening: discharge name : opposite(p) around t : p."""
    if not p.is_classical:
        raise NotClassicalError(f"classical strengthening needs a classical type, found {p}")
    if p.sign == PLUS:
        return clam(PLUS, name, opposite(p), CApp(PLUS, t, Var(name)))
    return clam(MINUS, name, opposite(p), CApp(MINUS, t, Var(name)))


def project_derivation(d: Derivation, target: str) -> Derivation:
    """Transform a derivation of ctx[target : P] |- t : Q into one of
    ctx[target : trunc(P)] |- t' : trunc(Q)."""
    p = d.ctx.lookup(target)
    if p is None:
        raise NoSuchAssumptionError(f"no assumption named {target!r}")
    new_ctx = d.ctx.replace(target, truncate(p))
    if p.is_classical:
        # The original derivation already lives in the truncated context;
        # only the conclusion needs projecting.
        term = pc_term(d.subject, d.conclusion, new_ctx.names())
    else:
        term = _project(d, target)
    return check_type(new_ctx, term, truncate(d.conclusion))


def _project(d: Derivation, target: str) -> Term:
    ctx, q = d.ctx, d.conclusion
    taken = ctx.names()

    match d.rule:
        case "Ax":
            assert isinstance(d.subject, Var)
            if d.subject.name == target:
                return d.subject
            return pc_term(d.subject, q, taken)

        case "Abs":
            dl, dr = d.premises
            left = _project(dl, target)
            right = _project(dr, target)
            return abs_general_at(truncate(q), left, right, truncate(dl.conclusion))

        case "IAnd+" | "IOr-":
            dl, dr = d.premises
            sign = PLUS if d.rule == "IAnd+" else MINUS
            return pc_term(Pair(sign, _project(dl, target), _project(dr, target)), q, taken)

        case "IOr+" | "IAnd-":
            (db,) = d.premises
            assert isinstance(d.subject, Inj)
            return pc_term(Inj(d.subject.sign, d.subject.index, _project(db, target)), q, taken)

        case "EAnd+" | "EOr-":
            (db,) = d.premises
            assert isinstance(d.subject, Proj)
            sign, index = d.subject.sign, d.subject.index
            t0 = _project(db, target)
            pair_p = truncate(db.conclusion)
            z = fresh_name("z", set(taken) | fv(t0))
            w = fresh_name("w", set(taken) | fv(t0) | {z})
            if sign == PLUS:
                # cs( proj_i+( capp+(t0, clam-(w. in_i-(z))) ) ) at A_i^c+
                arg = clam(MINUS, w, pair_p, Inj(MINUS, index, Var(z)))
                body = Proj(PLUS, index, CApp(PLUS, t0, arg))
            else:
                arg = clam(PLUS, w, pair_p, Inj(PLUS, index, Var(z)))
                body = Proj(MINUS, index, CApp(MINUS, t0, arg))
            return cs_term(z, body, q)

        case "EOr+" | "EAnd-":
            dsc, d1, d2 = d.premises
            assert isinstance(d.subject, Case)
            sign = d.subject.sign
            sc = _project(dsc, target)
            s1 = _project(d1, target)
            s2 = _project(d2, target)
            n1 = d1.ctx.entries[-1][0]
            n2 = d2.ctx.entries[-1][0]
            p1, p2 = d.subject.annot1, d.subject.annot2
            tq = truncate(q)
            ystar = fresh_name("k", set(taken) | fv(s1) | fv(s2) | {n1, n2})
            contra1 = contrapose_at(n1, p1, ystar, s1, tq)
            contra2 = contrapose_at(n2, p2, ystar, s2, tq)
            scrut_p = truncate(dsc.conclusion)
            w = fresh_name("w", set(taken) | fv(sc) | {ystar})
            if sign == PLUS:
                refut = clam(MINUS, w, scrut_p, Pair(MINUS, contra1, contra2))
                scrut = CApp(PLUS, sc, refut)
            else:
                refut = clam(PLUS, w, scrut_p, Pair(PLUS, contra1, contra2))
                scrut = CApp(MINUS, sc, refut)
            body = mk_case(sign, scrut, (n1, p1, s1), (n2, p2, s2))
            return cs_term(ystar, body, tq)

        case "INeg+" | "INeg-":
            (db,) = d.premises
            assert isinstance(d.subject, NegI)
            return pc_term(NegI(d.subject.sign, _project(db, target)), q, taken)

        case "ENeg+" | "ENeg-":
            (db,) = d.premises
            assert isinstance(d.subject, NegE)
            sign = d.subject.sign
            t0 = _project(db, target)
            neg_p = truncate(db.conclusion)
            z = fresh_name("z", set(taken) | fv(t0))
            w = fresh_name("w", set(taken) | fv(t0) | {z})
            if sign == PLUS:
                arg = clam(MINUS, w, neg_p, NegI(MINUS, Var(z)))
                body = NegE(PLUS, CApp(PLUS, t0, arg))
            else:
                arg = clam(PLUS, w, neg_p, NegI(PLUS, Var(z)))
                body = NegE(MINUS, CApp(MINUS, t0, arg))
            return cs_term(z, body, q)

        case "IC+" | "IC-":
            (db,) = d.premises
            assert isinstance(d.subject, CLam)
            n = db.ctx.entries[-1][0]
            body = _project(db, target)
            return cs_term(n, body, q)

        case "EC+" | "EC-":
            df, _ = d.premises
            return _project(df, target)

    raise TypingError(f"unhandled rule {d.rule}")
