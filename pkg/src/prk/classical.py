"""The classical-logic bridge: strength-erasing map, truth tables, the
decision procedure for the classical-affirmation fragment, compilation
of natural-deduction proofs into proof terms, and the derived
implication combinators with their computation rules."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import InvalidNKProofError, WrongModeError
from .rewrite import ETA, Trace, normalize
from .syntax import (CLASSICAL, MINUS, PLUS, STRONG, And, CApp, Inj, MProp,
                     Mode, Neg, NegE, NegI, Or, PVar, Pair, Proj, PureProp,
                     Term, Var, case, clam, fresh_name, fv, substitute)
from .typecheck import Context, abs_general_at, contrapose_at, mk_lem

FALSITY_VAR = "_bot0"
FALSITY: PureProp = And(PVar(FALSITY_VAR), Neg(PVar(FALSITY_VAR)))


def implies(a: PureProp, b: PureProp) -> PureProp:
    """Implication as the abbreviation ~a | b."""
    return Or(Neg(a), b)


def _cp(a: PureProp) -> MProp:
    return MProp(a, Mode(CLASSICAL, PLUS))


def _cm(a: PureProp) -> MProp:
    return MProp(a, Mode(CLASSICAL, MINUS))


# ---------------------------------------------------------------------------
# Conservativity: classem and truth tables

def classem(p: MProp) -> PureProp:
    """Erase strength: affirmations map to the base, denials to its negation."""
    return p.base if p.sign == PLUS else Neg(p.base)


def eval_prop(a: PureProp, valuation: dict[str, bool]) -> bool:
    match a:
        case PVar(name):
            return valuation[name]
        case And(l, r):
            return eval_prop(l, valuation) and eval_prop(r, valuation)
        case Or(l, r):
            return eval_prop(l, valuation) or eval_prop(r, valuation)
        case Neg(inner):
            return not eval_prop(inner, valuation)
    raise TypeError(a)


def tt_valid(hyps: list[PureProp], goal: PureProp) -> bool:
    """Classical semantic entailment by truth tables."""
    from .syntax import prop_vars
    variables = sorted(set().union(prop_vars(goal), *(prop_vars(h) for h in hyps)))
    for bits in itertools.product((False, True), repeat=len(variables)):
        valuation = dict(zip(variables, bits))
        if all(eval_prop(h, valuation) for h in hyps) and not eval_prop(goal, valuation):
            return False
    return True


def decide_oplus(hyps: list[MProp], goal: MProp) -> bool:
    """Provability of a classical-affirmation sequent, which coincides
    with classical validity of the erased sequent."""
    for p in [goal, *hyps]:
        if p.mode != Mode(CLASSICAL, PLUS):
            raise WrongModeError(
                f"decide_oplus only covers classical affirmations, found {p}")
    return tt_valid([classem(h) for h in hyps], classem(goal))


# ---------------------------------------------------------------------------
# Embedding combinators

def pairc(t: Term, s: Term, a: PureProp, b: PureProp) -> Term:
    """Conjunction introduction at (a & b)^c+."""
    w = fresh_name("w", fv(t) | fv(s))
    return clam(PLUS, w, _cm(And(a, b)), Pair(PLUS, t, s))


def projic(i: int, t: Term, a1: PureProp, a2: PureProp) -> Term:
    """Conjunction elimination from (a1 & a2)^c+ to the i-th component."""
    ai = a1 if i == 1 else a2
    x = fresh_name("x", fv(t))
    w = fresh_name("w", fv(t) | {x})
    refut = clam(MINUS, w, _cp(And(a1, a2)), Inj(MINUS, i, Var(x)))
    return clam(PLUS, x, _cm(ai), CApp(PLUS, Proj(PLUS, i, CApp(PLUS, t, refut)), Var(x)))


def inic(i: int, t: Term, a1: PureProp, a2: PureProp) -> Term:
    """Disjunction introduction at (a1 | a2)^c+."""
    w = fresh_name("w", fv(t))
    return clam(PLUS, w, _cm(Or(a1, a2)), Inj(PLUS, i, t))


def casec(t: Term, x: str, s: Term, u: Term, a: PureProp, b: PureProp,
          c: PureProp) -> Term:
    """Disjunction elimination: branches s, u bind x at a^c+ resp. b^c+,
    both concluding c^c+."""
    y = fresh_name("y", fv(t) | fv(s) | fv(u) | {x})
    w = fresh_name("w", fv(s) | fv(u) | {x, y})
    refut = clam(MINUS, w, _cp(Or(a, b)),
                 Pair(MINUS,
                      contrapose_at(x, _cp(a), y, s, _cp(c)),
                      contrapose_at(x, _cp(b), y, u, _cp(c))))
    return clam(PLUS, y, _cm(c),
                case(PLUS, CApp(PLUS, t, refut),
                     (x, _cp(a), CApp(PLUS, s, Var(y))),
                     (x, _cp(b), CApp(PLUS, u, Var(y)))))


def neglamc(x: str, t: Term, a: PureProp) -> Term:
    """Negation introduction: from x : a^c+ |- t : bottom^c+ build (~a)^c+."""
    w = fresh_name("w", fv(t) | {x})
    inner = clam(MINUS, x, _cp(a),
                 abs_general_at(MProp(a, Mode(STRONG, MINUS)), t,
                                mk_lem(PVar(FALSITY_VAR), MINUS), _cp(FALSITY)))
    return clam(PLUS, w, _cm(Neg(a)), NegI(PLUS, inner))


def negapc(t: Term, s: Term, a: PureProp) -> Term:
    """Negation elimination: t : (~a)^c+ and s : a^c+ give bottom^c+."""
    w = fresh_name("w", fv(s))
    refut = clam(MINUS, w, _cp(Neg(a)), NegI(MINUS, s))
    return abs_general_at(_cp(FALSITY), t, refut, _cp(Neg(a)))


def explosionc(q: MProp, t: Term) -> Term:
    """Anything from t : bottom^c+."""
    return abs_general_at(q, t, mk_lem(PVar(FALSITY_VAR), MINUS), _cp(FALSITY))


def lemc(a: PureProp) -> Term:
    """The law of excluded middle at (a | ~a)^c+."""
    return mk_lem(a, PLUS)


def _x_prime(y: str, z: str, a: PureProp, b: PureProp) -> Term:
    imp = implies(a, b)
    w1 = fresh_name("w", {y, z})
    w2 = fresh_name("v", {y, z, w1})
    inner = clam(PLUS, w1, _cm(imp),
                 Inj(PLUS, 1, clam(PLUS, w2, _cm(Neg(a)), NegI(PLUS, Var(z)))))
    return Proj(MINUS, 1, CApp(MINUS, Var(y), inner))


def _x_aux(y: str, a: PureProp, b: PureProp) -> Term:
    z = fresh_name("z", {y})
    w = fresh_name("w", {y, z})
    blocked = clam(PLUS, w, _cm(Neg(a)), NegI(PLUS, Var(z)))
    body = CApp(PLUS, NegE(MINUS, CApp(MINUS, _x_prime(y, z, a, b), blocked)), Var(z))
    return clam(PLUS, z, _cm(a), body)


def lamc(x: str, t: Term, a: PureProp, b: PureProp) -> Term:
    """Implication introduction: from x : a^c+ |- t : b^c+ build (a => b)^c+."""
    imp = implies(a, b)
    y = fresh_name("y", fv(t) | {x})
    return clam(PLUS, y, _cm(imp), Inj(PLUS, 2, substitute(t, x, _x_aux(y, a, b))))


def appc(t: Term, s: Term, a: PureProp, b: PureProp) -> Term:
    """Implication elimination: t : (a => b)^c+ and s : a^c+ give b^c+."""
    imp = implies(a, b)
    x = fresh_name("x", fv(t) | fv(s))
    y = fresh_name("y", fv(s) | {x})
    z = fresh_name("z", {x, y})
    w = fresh_name("w", fv(s) | {x, y, z})
    v = fresh_name("v", fv(s) | {x, y, z, w})
    refut = clam(MINUS, w, _cp(imp),
                 Pair(MINUS,
                      clam(MINUS, v, _cp(Neg(a)), NegI(MINUS, s)),
                      Var(x)))
    branch1 = abs_general_at(
        MProp(b, Mode(STRONG, PLUS)), s,
        NegE(PLUS, CApp(PLUS, Var(y),
                        clam(MINUS, v, _cp(Neg(a)), NegI(MINUS, s)))),
        _cp(a))
    return clam(PLUS, x, _cm(b),
                case(PLUS, CApp(PLUS, t, refut),
                     (y, _cp(Neg(a)), branch1),
                     (z, _cp(b), CApp(PLUS, Var(z), Var(x)))))


# ---------------------------------------------------------------------------
# NK proofs

@dataclass(frozen=True)
class NKProof:
    """A checked natural-deduction proof node: rule, parameters, premises,
    the open hypotheses, and the concluded pure proposition."""

    rule: str
    hyps: tuple[PureProp, ...]
    conclusion: PureProp
    premises: tuple["NKProof", ...] = ()
    index: int | None = None       # Hyp position / AndE / OrI side
    prop: PureProp | None = None   # rule-specific proposition parameter


def nk_hyp(hyps, i: int) -> NKProof:
    hyps = tuple(hyps)
    if not 0 <= i < len(hyps):
        raise InvalidNKProofError(f"hypothesis index {i} out of range")
    return NKProof("Hyp", hyps, hyps[i], index=i)


def nk_and_i(p: NKProof, q: NKProof) -> NKProof:
    if p.hyps != q.hyps:
        raise InvalidNKProofError("conjunction premises have different hypotheses")
    return NKProof("AndI", p.hyps, And(p.conclusion, q.conclusion), (p, q))


def nk_and_e(i: int, p: NKProof) -> NKProof:
    if not isinstance(p.conclusion, And):
        raise InvalidNKProofError("conjunction elimination needs a conjunction")
    comp = p.conclusion.left if i == 1 else p.conclusion.right
    return NKProof("AndE", p.hyps, comp, (p,), index=i)


def nk_or_i(i: int, other: PureProp, p: NKProof) -> NKProof:
    concl = Or(p.conclusion, other) if i == 1 else Or(other, p.conclusion)
    return NKProof("OrI", p.hyps, concl, (p,), index=i, prop=other)


def nk_or_e(p: NKProof, q: NKProof, r: NKProof) -> NKProof:
    if not isinstance(p.conclusion, Or):
        raise InvalidNKProofError("disjunction elimination needs a disjunction")
    if q.hyps != p.hyps + (p.conclusion.left,):
        raise InvalidNKProofError("first branch must discharge the left disjunct")
    if r.hyps != p.hyps + (p.conclusion.right,):
        raise InvalidNKProofError("second branch must discharge the right disjunct")
    if q.conclusion != r.conclusion:
        raise InvalidNKProofError("branches conclude different propositions")
    return NKProof("OrE", p.hyps, q.conclusion, (p, q, r))


def nk_neg_i(a: PureProp, p: NKProof) -> NKProof:
    if p.hyps[-1:] != (a,):
        raise InvalidNKProofError("negation introduction must discharge its hypothesis")
    if p.conclusion != FALSITY:
        raise InvalidNKProofError("negation introduction needs a proof of falsity")
    return NKProof("NegI", p.hyps[:-1], Neg(a), (p,), prop=a)


def nk_neg_e(p: NKProof, q: NKProof) -> NKProof:
    if p.hyps != q.hyps:
        raise InvalidNKProofError("negation premises have different hypotheses")
    if p.conclusion != Neg(q.conclusion):
        raise InvalidNKProofError("negation elimination needs ~A and A")
    return NKProof("NegE", p.hyps, FALSITY, (p, q))


def nk_explosion(c: PureProp, p: NKProof) -> NKProof:
    if p.conclusion != FALSITY:
        raise InvalidNKProofError("explosion needs a proof of falsity")
    return NKProof("Explosion", p.hyps, c, (p,), prop=c)


def nk_lem(hyps, a: PureProp) -> NKProof:
    return NKProof("LEM", tuple(hyps), Or(a, Neg(a)), prop=a)


def nk_imp_i(a: PureProp, p: NKProof) -> NKProof:
    if p.hyps[-1:] != (a,):
        raise InvalidNKProofError("implication introduction must discharge its hypothesis")
    return NKProof("ImpI", p.hyps[:-1], implies(a, p.conclusion), (p,), prop=a)


def nk_imp_e(p: NKProof, q: NKProof) -> NKProof:
    if p.hyps != q.hyps:
        raise InvalidNKProofError("implication premises have different hypotheses")
    match p.conclusion:
        case Or(Neg(a), b) if a == q.conclusion:
            return NKProof("ImpE", p.hyps, b, (p, q))
    raise InvalidNKProofError("implication elimination needs A => B and A")


def nk_context(p: NKProof, names: list[str] | None = None) -> tuple[Context, list[str]]:
    """The classical-affirmation context matching the proof's hypotheses."""
    names = names or [f"h{i}" for i in range(len(p.hyps))]
    ctx = Context.of(*((n, _cp(a)) for n, a in zip(names, p.hyps)))
    return ctx, names


def embed_nk(p: NKProof, names: list[str] | None = None) -> Term:
    """Compile an NK proof of A1,..,An |- B into a term typable as
    h1 : A1^c+, .., hn : An^c+ |- t : B^c+."""
    if names is None:
        names = [f"h{i}" for i in range(len(p.hyps))]
    if len(names) != len(p.hyps):
        raise InvalidNKProofError("one variable name is needed per hypothesis")

    match p.rule:
        case "Hyp":
            return Var(names[p.index])
        case "AndI":
            l, r = p.premises
            return pairc(embed_nk(l, names), embed_nk(r, names),
                         l.conclusion, r.conclusion)
        case "AndE":
            (q,) = p.premises
            return projic(p.index, embed_nk(q, names),
                          q.conclusion.left, q.conclusion.right)
        case "OrI":
            (q,) = p.premises
            return inic(p.index, embed_nk(q, names),
                        p.conclusion.left, p.conclusion.right)
        case "OrE":
            q, r, s = p.premises
            x = fresh_name("x", set(names))
            tr = embed_nk(r, names + [x])
            ts = embed_nk(s, names + [x])
            return casec(embed_nk(q, names), x, tr, ts,
                         q.conclusion.left, q.conclusion.right, p.conclusion)
        case "NegI":
            (q,) = p.premises
            x = fresh_name("x", set(names))
            return neglamc(x, embed_nk(q, names + [x]), p.prop)
        case "NegE":
            q, r = p.premises
            return negapc(embed_nk(q, names), embed_nk(r, names), r.conclusion)
        case "Explosion":
            (q,) = p.premises
            return explosionc(_cp(p.prop), embed_nk(q, names))
        case "LEM":
            return lemc(p.prop)
        case "ImpI":
            (q,) = p.premises
            x = fresh_name("x", set(names))
            return lamc(x, embed_nk(q, names + [x]), p.prop, q.conclusion)
        case "ImpE":
            q, r = p.premises
            match q.conclusion:
                case Or(Neg(a), b):
                    return appc(embed_nk(q, names), embed_nk(r, names), a, b)
            raise InvalidNKProofError("malformed implication")
    raise InvalidNKProofError(f"unknown rule {p.rule}")


# ---------------------------------------------------------------------------
# Computation rules of the embedding

@dataclass(frozen=True)
class RuleCheck:
    redex: Term
    stated: Term
    redex_normal: Term
    stated_normal: Term
    trace: Trace

    @property
    def holds(self) -> bool:
        return self.redex_normal == self.stated_normal


def lem_case_reduct(a: PureProp, x: str, s1: Term, s2: Term, c: PureProp) -> Term:
    """The stated normal behaviour of case analysis on excluded middle:
    clam+(y. capp+(s2{x := s1*}, y)) with the blocked witness s1*."""
    y = fresh_name("y", fv(s1) | fv(s2) | {x})
    w = fresh_name("w", fv(s1) | {x, y})
    s1_star = clam(PLUS, w, _cm(Neg(a)),
                   NegI(PLUS, clam(MINUS, x, _cp(a),
                                   abs_general_at(MProp(a, Mode(STRONG, MINUS)),
                                                  s1, Var(y), _cp(c)))))
    return clam(PLUS, y, _cm(c), CApp(PLUS, substitute(s2, x, s1_star), Var(y)))


def run_classical_rule(kind: str, **pieces) -> RuleCheck:
    """Build the redex and stated reduct of one computation rule and
    eta-normalize both sides.

    kinds and pieces:
      proj: i, t1, t2, a, b            -- projic_i(pairc(t1, t2)) ~> t_i
      case: i, t, x, s1, s2, a, b, c   -- casec(inic_i(t), x.s1, x.s2) ~> s_i{x:=t}
      app:  x, t, s, a, b              -- appc(lamc x. t, s) ~> t{x:=s}
      lem:  a, x, s1, s2, c            -- casec(lemc a, x.s1, x.s2) ~> the s1* form
    """
    if kind == "proj":
        i, t1, t2 = pieces["i"], pieces["t1"], pieces["t2"]
        a, b = pieces["a"], pieces["b"]
        redex = projic(i, pairc(t1, t2, a, b), a, b)
        stated = t1 if i == 1 else t2
    elif kind == "case":
        i, t, x = pieces["i"], pieces["t"], pieces["x"]
        s1, s2 = pieces["s1"], pieces["s2"]
        a, b, c = pieces["a"], pieces["b"], pieces["c"]
        redex = casec(inic(i, t, a, b), x, s1, s2, a, b, c)
        stated = substitute(s1 if i == 1 else s2, x, t)
    elif kind == "app":
        x, t, s = pieces["x"], pieces["t"], pieces["s"]
        a, b = pieces["a"], pieces["b"]
        redex = appc(lamc(x, t, a, b), s, a, b)
        stated = substitute(t, x, s)
    elif kind == "lem":
        a, x = pieces["a"], pieces["x"]
        s1, s2, c = pieces["s1"], pieces["s2"], pieces["c"]
        redex = casec(lemc(a), x, s1, s2, a, Neg(a), c)
        stated = lem_case_reduct(a, x, s1, s2, c)
    else:
        raise ValueError(f"unknown rule kind {kind!r}")

    redex_nf, trace = normalize(redex, mode=ETA)
    stated_nf, _ = normalize(stated, mode=ETA)
    return RuleCheck(redex, stated, redex_nf, stated_nf, trace)


# ---------------------------------------------------------------------------
# NK proof files

def parse_nk(text: str) -> NKProof:
    """Parse an NK proof file: hypothesis lines 'hyp : <pure>' followed by
    '|- <proof>' where proofs use hyp(i), andi(p,q), ande1/2(p),
    ori1/2[other](p), ore(p,q,r), negi[a](p), nege(p,q), expl[c](p),
    lem[a], impi[a](p), impe(p,q)."""
    from .surface import _Tokens, _parse_pure
    from .errors import ParseError

    hyps: list[PureProp] = []
    proof_src = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("hyp"):
            _, _, rest = line.partition(":")
            tk = _Tokens(rest)
            hyps.append(_parse_pure(tk))
            if tk.peek()[0] != "eof":
                raise ParseError("trailing input after hypothesis", lineno, 1)
        elif line.startswith("|-"):
            proof_src = line[2:]
        else:
            raise ParseError("expected 'hyp : <prop>' or '|- <proof>'", lineno, 1)
    if proof_src is None:
        raise InvalidNKProofError("no proof line ('|- ...') found")
    tk = _Tokens(proof_src)
    proof = _parse_nk_node(tk, tuple(hyps))
    if tk.peek()[0] != "eof":
        kind, val, line, col = tk.peek()
        raise ParseError(f"trailing input {val!r}", line, col)
    return proof


def _parse_nk_node(tk, hyps: tuple[PureProp, ...]) -> NKProof:
    from .surface import _parse_pure
    from .errors import ParseError

    kind, head, line, col = tk.next()
    if kind != "ident":
        raise ParseError(f"expected a proof rule, found {head!r}", line, col)

    def prop_param() -> PureProp:
        tk.expect("[")
        a = _parse_pure(tk)
        tk.expect("]")
        return a

    def args(n: int, hyps_list) -> list[NKProof]:
        tk.expect("(")
        out = []
        for k in range(n):
            out.append(_parse_nk_node(tk, hyps_list[k]))
            tk.expect("," if k < n - 1 else ")")
        return out

    if head == "hyp":
        tk.expect("(")
        kind, num, line, col = tk.next()
        if not num.isdigit():
            raise ParseError("hyp needs a numeric index", line, col)
        tk.expect(")")
        return nk_hyp(hyps, int(num))
    if head == "andi":
        p, q = args(2, [hyps, hyps])
        return nk_and_i(p, q)
    if head in ("ande1", "ande2"):
        (p,) = args(1, [hyps])
        return nk_and_e(int(head[-1]), p)
    if head in ("ori1", "ori2"):
        other = prop_param()
        (p,) = args(1, [hyps])
        return nk_or_i(int(head[-1]), other, p)
    if head == "ore":
        tk.expect("(")
        p = _parse_nk_node(tk, hyps)
        if not isinstance(p.conclusion, Or):
            raise InvalidNKProofError("disjunction elimination needs a disjunction")
        tk.expect(",")
        q = _parse_nk_node(tk, hyps + (p.conclusion.left,))
        tk.expect(",")
        r = _parse_nk_node(tk, hyps + (p.conclusion.right,))
        tk.expect(")")
        return nk_or_e(p, q, r)
    if head == "negi":
        a = prop_param()
        tk.expect("(")
        p = _parse_nk_node(tk, hyps + (a,))
        tk.expect(")")
        return nk_neg_i(a, p)
    if head == "nege":
        p, q = args(2, [hyps, hyps])
        return nk_neg_e(p, q)
    if head == "expl":
        c = prop_param()
        (p,) = args(1, [hyps])
        return nk_explosion(c, p)
    if head == "lem":
        a = prop_param()
        return nk_lem(hyps, a)
    if head == "impi":
        a = prop_param()
        tk.expect("(")
        p = _parse_nk_node(tk, hyps + (a,))
        tk.expect(")")
        return nk_imp_i(a, p)
    if head == "impe":
        p, q = args(2, [hyps, hyps])
        return nk_imp_e(p, q)
    raise ParseError(f"unknown proof rule {head!r}", line, col)
