"""Abstract syntax for pure/moded propositions and proof terms.

Terms use de Bruijn indices for bound variables and names for free
variables, so structural equality of terms *is* alpha-equivalence
(binder name hints are carried for printing but excluded from
comparison).  All values are immutable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Union


def cache_hash(cls):
    """Memoize the dataclass-generated hash on first use.

    Terms are immutable trees compared structurally; sets and memo tables
    hash the same nodes many times, so the recursive hash is cached."""
    generated = cls.__hash__

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = generated(self)
            object.__setattr__(self, "_hash", h)
        return h

    cls.__hash__ = __hash__
    return cls


# ---------------------------------------------------------------------------
# Pure propositions

class PureProp:
    """Base class for pure propositions (no mode)."""

    __slots__ = ()


@dataclass(frozen=True)
class PVar(PureProp):
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class And(PureProp):
    left: PureProp
    right: PureProp

    def __str__(self) -> str:
        return f"({self.left} & {self.right})"


@dataclass(frozen=True)
class Or(PureProp):
    left: PureProp
    right: PureProp

    def __str__(self) -> str:
        return f"({self.left} | {self.right})"


@dataclass(frozen=True)
class Neg(PureProp):
    inner: PureProp

    def __str__(self) -> str:
        return f"~{self.inner}"


def prop_size(a: PureProp) -> int:
    """Number of symbols: every variable and connective counts one."""
    match a:
        case PVar(_):
            return 1
        case And(l, r) | Or(l, r):
            return 1 + prop_size(l) + prop_size(r)
        case Neg(inner):
            return 1 + prop_size(inner)
    raise TypeError(a)


def prop_vars(a: PureProp) -> frozenset[str]:
    match a:
        case PVar(name):
            return frozenset((name,))
        case And(l, r) | Or(l, r):
            return prop_vars(l) | prop_vars(r)
        case Neg(inner):
            return prop_vars(inner)
    raise TypeError(a)


def prop_dual(a: PureProp) -> PureProp:
    """Swap conjunction/disjunction, push through negation, fix variables."""
    match a:
        case PVar(_):
            return a
        case And(l, r):
            return Or(prop_dual(l), prop_dual(r))
        case Or(l, r):
            return And(prop_dual(l), prop_dual(r))
        case Neg(inner):
            return Neg(prop_dual(inner))
    raise TypeError(a)


def prop_depth(a: PureProp) -> int:
    """Formula height, counting a variable as depth 1."""
    match a:
        case PVar(_):
            return 1
        case And(l, r) | Or(l, r):
            return 1 + max(prop_depth(l), prop_depth(r))
        case Neg(inner):
            return 1 + prop_depth(inner)
    raise TypeError(a)


# ---------------------------------------------------------------------------
# Modes and moded propositions

STRONG = "s"
CLASSICAL = "c"
PLUS = "+"
MINUS = "-"


@dataclass(frozen=True)
class Mode:
    strength: str  # "s" | "c"
    sign: str      # "+" | "-"

    def __post_init__(self) -> None:
        if self.strength not in (STRONG, CLASSICAL) or self.sign not in (PLUS, MINUS):
            raise ValueError(f"bad mode {self.strength!r}{self.sign!r}")

    def __str__(self) -> str:
        return f"^{self.strength}{self.sign}"


MODES = (Mode("s", "+"), Mode("s", "-"), Mode("c", "+"), Mode("c", "-"))


@dataclass(frozen=True)
class MProp:
    """A pure proposition under one of the four modes."""

    base: PureProp
    mode: Mode

    def __str__(self) -> str:
        return f"{self.base}{self.mode}"

    @property
    def sign(self) -> str:
        return self.mode.sign

    @property
    def is_strong(self) -> bool:
        return self.mode.strength == STRONG

    @property
    def is_classical(self) -> bool:
        return self.mode.strength == CLASSICAL


def mk(base: PureProp, strength: str, sign: str) -> MProp:
    return MProp(base, Mode(strength, sign))


def opposite(p: MProp) -> MProp:
    """Flip the sign, preserve strength and base."""
    return MProp(p.base, Mode(p.mode.strength, MINUS if p.sign == PLUS else PLUS))


def truncate(p: MProp) -> MProp:
    """Force the strength to classical, preserve sign and base."""
    return MProp(p.base, Mode(CLASSICAL, p.sign))


def measure(p: MProp) -> int:
    """2|A| for strong modes, 2|A|+1 for classical modes."""
    n = 2 * prop_size(p.base)
    return n + 1 if p.is_classical else n


def mprop_dual(p: MProp) -> MProp:
    """Dualize the base and flip the sign, keeping strength."""
    return MProp(prop_dual(p.base), Mode(p.mode.strength, MINUS if p.sign == PLUS else PLUS))


# ---------------------------------------------------------------------------
# Terms

Sign = str  # "+" | "-"


def flip(sign: Sign) -> Sign:
    return MINUS if sign == PLUS else PLUS


class Term:
    __slots__ = ()


@dataclass(frozen=True)
class Var(Term):
    """Free variable, referenced by name."""

    name: str


@dataclass(frozen=True)
class Bound(Term):
    """Bound variable as a de Bruijn index into enclosing binders."""

    index: int


@dataclass(frozen=True)
class Abs(Term):
    """Absurdity witness abs[Q](t, s) from a strong contradiction."""

    annot: MProp
    left: Term
    right: Term


@dataclass(frozen=True)
class Pair(Term):
    sign: Sign
    left: Term
    right: Term


@dataclass(frozen=True)
class Proj(Term):
    sign: Sign
    index: int  # 1 | 2
    body: Term


@dataclass(frozen=True)
class Inj(Term):
    sign: Sign
    index: int  # 1 | 2
    body: Term


@dataclass(frozen=True)
class Case(Term):
    """Binary case split; each branch binds one variable (index 0)."""

    sign: Sign
    scrutinee: Term
    annot1: MProp
    branch1: Term
    annot2: MProp
    branch2: Term
    hint1: str = field(default="x", compare=False)
    hint2: str = field(default="y", compare=False)


@dataclass(frozen=True)
class NegI(Term):
    sign: Sign
    body: Term


@dataclass(frozen=True)
class NegE(Term):
    sign: Sign
    body: Term


@dataclass(frozen=True)
class CLam(Term):
    """Classical introduction; binds one variable (index 0) in the body."""

    sign: Sign
    annot: MProp
    body: Term
    hint: str = field(default="x", compare=False)


@dataclass(frozen=True)
class CApp(Term):
    sign: Sign
    fun: Term
    arg: Term


def term_size(t: Term) -> int:
    match t:
        case Var(_) | Bound(_):
            return 1
        case Abs(_, l, r) | Pair(_, l, r) | CApp(_, l, r):
            return 1 + term_size(l) + term_size(r)
        case Proj(_, _, b) | Inj(_, _, b) | NegI(_, b) | NegE(_, b):
            return 1 + term_size(b)
        case CLam(_, _, b):
            return 1 + term_size(b)
        case Case(_, s, _, b1, _, b2):
            return 1 + term_size(s) + term_size(b1) + term_size(b2)
    raise TypeError(t)


def fv(t: Term) -> frozenset[str]:
    """Free (named) variables."""
    match t:
        case Var(name):
            return frozenset((name,))
        case Bound(_):
            return frozenset()
        case Abs(_, l, r) | Pair(_, l, r) | CApp(_, l, r):
            return fv(l) | fv(r)
        case Proj(_, _, b) | Inj(_, _, b) | NegI(_, b) | NegE(_, b) | CLam(_, _, b):
            return fv(b)
        case Case(_, s, _, b1, _, b2):
            return fv(s) | fv(b1) | fv(b2)
    raise TypeError(t)


def uses_index(t: Term, k: int) -> bool:
    """Does t refer to the k-th enclosing binder (relative to t's root)?"""
    match t:
        case Var(_):
            return False
        case Bound(i):
            return i == k
        case Abs(_, l, r) | Pair(_, l, r) | CApp(_, l, r):
            return uses_index(l, k) or uses_index(r, k)
        case Proj(_, _, b) | Inj(_, _, b) | NegI(_, b) | NegE(_, b):
            return uses_index(b, k)
        case CLam(_, _, b):
            return uses_index(b, k + 1)
        case Case(_, s, _, b1, _, b2):
            return uses_index(s, k) or uses_index(b1, k + 1) or uses_index(b2, k + 1)
    raise TypeError(t)


def shift(t: Term, amount: int, cutoff: int = 0) -> Term:
    """Add `amount` to every index >= cutoff (indices below are untouched)."""
    match t:
        case Var(_):
            return t
        case Bound(i):
            if i >= cutoff:
                if i + amount < cutoff:
                    raise ValueError("shift would produce a dangling index")
                return Bound(i + amount)
            return t
        case Abs(q, l, r):
            return Abs(q, shift(l, amount, cutoff), shift(r, amount, cutoff))
        case Pair(sg, l, r):
            return Pair(sg, shift(l, amount, cutoff), shift(r, amount, cutoff))
        case Proj(sg, i, b):
            return Proj(sg, i, shift(b, amount, cutoff))
        case Inj(sg, i, b):
            return Inj(sg, i, shift(b, amount, cutoff))
        case NegI(sg, b):
            return NegI(sg, shift(b, amount, cutoff))
        case NegE(sg, b):
            return NegE(sg, shift(b, amount, cutoff))
        case CLam(sg, p, b, h):
            return CLam(sg, p, shift(b, amount, cutoff + 1), h)
        case CApp(sg, f, a):
            return CApp(sg, shift(f, amount, cutoff), shift(a, amount, cutoff))
        case Case(sg, s, p1, b1, p2, b2, h1, h2):
            return Case(sg, shift(s, amount, cutoff), p1, shift(b1, amount, cutoff + 1),
                        p2, shift(b2, amount, cutoff + 1), h1, h2)
    raise TypeError(t)


def subst_bound(t: Term, j: int, s: Term) -> Term:
    """Substitute s for index j (counted at t's root), removing that
    binder level: indices above it are decremented, and s is shifted by
    the number of binders crossed on the way in."""

    def go(t: Term, depth: int) -> Term:
        target = j + depth
        match t:
            case Var(_):
                return t
            case Bound(i):
                if i == target:
                    return shift(s, depth) if depth else s
                return Bound(i - 1) if i > target else t
            case Abs(q, l, r):
                return Abs(q, go(l, depth), go(r, depth))
            case Pair(sg, l, r):
                return Pair(sg, go(l, depth), go(r, depth))
            case Proj(sg, i, b):
                return Proj(sg, i, go(b, depth))
            case Inj(sg, i, b):
                return Inj(sg, i, go(b, depth))
            case NegI(sg, b):
                return NegI(sg, go(b, depth))
            case NegE(sg, b):
                return NegE(sg, go(b, depth))
            case CLam(sg, p, b, h):
                return CLam(sg, p, go(b, depth + 1), h)
            case CApp(sg, f, a):
                return CApp(sg, go(f, depth), go(a, depth))
            case Case(sg, sc, p1, b1, p2, b2, h1, h2):
                return Case(sg, go(sc, depth), p1, go(b1, depth + 1),
                            p2, go(b2, depth + 1), h1, h2)
        raise TypeError(t)

    return go(t, 0)


def substitute(t: Term, x: str, s: Term) -> Term:
    """Capture-avoiding substitution of the free variable x by s.

    Bound variables are indices, so s can never be captured; binder
    hints are refreshed lazily at print time.
    """
    match t:
        case Var(name):
            return s if name == x else t
        case Bound(_):
            return t
        case Abs(q, l, r):
            return Abs(q, substitute(l, x, s), substitute(r, x, s))
        case Pair(sg, l, r):
            return Pair(sg, substitute(l, x, s), substitute(r, x, s))
        case Proj(sg, i, b):
            return Proj(sg, i, substitute(b, x, s))
        case Inj(sg, i, b):
            return Inj(sg, i, substitute(b, x, s))
        case NegI(sg, b):
            return NegI(sg, substitute(b, x, s))
        case NegE(sg, b):
            return NegE(sg, substitute(b, x, s))
        case CLam(sg, p, b, h):
            return CLam(sg, p, substitute(b, x, s), h)
        case CApp(sg, f, a):
            return CApp(sg, substitute(f, x, s), substitute(a, x, s))
        case Case(sg, sc, p1, b1, p2, b2, h1, h2):
            return Case(sg, substitute(sc, x, s), p1, substitute(b1, x, s),
                        p2, substitute(b2, x, s), h1, h2)
    raise TypeError(t)


def open_binder(body: Term, name: str) -> Term:
    """Replace index 0 of a binder body with the free variable `name`."""
    return subst_bound(body, 0, Var(name))


def close_binder(t: Term, x: str) -> Term:
    """Abstract the free variable x as index 0 (inverse of open_binder)."""

    def go(t: Term, depth: int) -> Term:
        match t:
            case Var(name):
                return Bound(depth) if name == x else t
            case Bound(i):
                return Bound(i + 1) if i >= depth else t
            case Abs(q, l, r):
                return Abs(q, go(l, depth), go(r, depth))
            case Pair(sg, l, r):
                return Pair(sg, go(l, depth), go(r, depth))
            case Proj(sg, i, b):
                return Proj(sg, i, go(b, depth))
            case Inj(sg, i, b):
                return Inj(sg, i, go(b, depth))
            case NegI(sg, b):
                return NegI(sg, go(b, depth))
            case NegE(sg, b):
                return NegE(sg, go(b, depth))
            case CLam(sg, p, b, h):
                return CLam(sg, p, go(b, depth + 1), h)
            case CApp(sg, f, a):
                return CApp(sg, go(f, depth), go(a, depth))
            case Case(sg, sc, p1, b1, p2, b2, h1, h2):
                return Case(sg, go(sc, depth), p1, go(b1, depth + 1),
                            p2, go(b2, depth + 1), h1, h2)
        raise TypeError(t)

    return go(t, 0)


def clam(sign: Sign, x: str, annot: MProp, body: Term) -> CLam:
    """Build a classical lambda from a named body."""
    return CLam(sign, annot, close_binder(body, x), hint=x)


def case(sign: Sign, scrutinee: Term, b1: tuple[str, MProp, Term],
         b2: tuple[str, MProp, Term]) -> Case:
    """Build a case split from named branches."""
    x, p1, t1 = b1
    y, p2, t2 = b2
    return Case(sign, scrutinee, p1, close_binder(t1, x), p2, close_binder(t2, y),
                hint1=x, hint2=y)


def term_dual(t: Term) -> Term:
    """Flip every sign and dualize every proposition annotation."""
    match t:
        case Var(_) | Bound(_):
            return t
        case Abs(q, l, r):
            return Abs(mprop_dual(q), term_dual(l), term_dual(r))
        case Pair(sg, l, r):
            return Pair(flip(sg), term_dual(l), term_dual(r))
        case Proj(sg, i, b):
            return Proj(flip(sg), i, term_dual(b))
        case Inj(sg, i, b):
            return Inj(flip(sg), i, term_dual(b))
        case NegI(sg, b):
            return NegI(flip(sg), term_dual(b))
        case NegE(sg, b):
            return NegE(flip(sg), term_dual(b))
        case CLam(sg, p, b, h):
            return CLam(flip(sg), mprop_dual(p), term_dual(b), h)
        case CApp(sg, f, a):
            return CApp(flip(sg), term_dual(f), term_dual(a))
        case Case(sg, sc, p1, b1, p2, b2, h1, h2):
            return Case(flip(sg), term_dual(sc), mprop_dual(p1), term_dual(b1),
                        mprop_dual(p2), term_dual(b2), h1, h2)
    raise TypeError(t)


Dualizable = Union[PureProp, MProp, Term]


def dual(x: Dualizable) -> Dualizable:
    """Dual of a pure proposition, moded proposition, or term."""
    if isinstance(x, PureProp):
        return prop_dual(x)
    if isinstance(x, MProp):
        return mprop_dual(x)
    if isinstance(x, Term):
        return term_dual(x)
    raise TypeError(x)


def subterms(t: Term) -> Iterator[Term]:
    """Pre-order iteration over all subterms (bodies of binders included)."""
    yield t
    match t:
        case Var(_) | Bound(_):
            return
        case Abs(_, l, r) | Pair(_, l, r) | CApp(_, l, r):
            yield from subterms(l)
            yield from subterms(r)
        case Proj(_, _, b) | Inj(_, _, b) | NegI(_, b) | NegE(_, b) | CLam(_, _, b):
            yield from subterms(b)
        case Case(_, s, _, b1, _, b2):
            yield from subterms(s)
            yield from subterms(b1)
            yield from subterms(b2)


def fresh_name(base: str, taken: set[str] | frozenset[str]) -> str:
    if base not in taken:
        return base
    i = 2
    while f"{base}{i}" in taken:
        i += 1
    return f"{base}{i}"


for _cls in (PVar, And, Or, Neg, MProp, Var, Bound, Abs, Pair, Proj, Inj,
             Case, NegI, NegE, CLam, CApp):
    cache_hash(_cls)
