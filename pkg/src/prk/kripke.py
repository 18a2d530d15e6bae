"""Finite Kripke models: validation, forcing, entailment in a model,
exhaustive enumeration of small models, and bounded counter-model search.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import InvalidModelError, ParseError, UnknownVariableError, UnknownWorldError
from .syntax import (CLASSICAL, MINUS, PLUS, And, MProp, Mode, Neg, Or, PVar,
                     PureProp, prop_vars)


@dataclass(frozen=True)
class KripkeModel:
    """Worlds with a partial order and monotone positive/negative valuations.

    leq is given by generator pairs; the reflexive-transitive closure is
    taken (and cached) for evaluation.
    """

    alphabet: frozenset[str]
    worlds: tuple[str, ...]
    leq: frozenset[tuple[str, str]]
    vplus: tuple[tuple[str, frozenset[str]], ...]
    vminus: tuple[tuple[str, frozenset[str]], ...]

    @staticmethod
    def make(alphabet, worlds, leq, vplus, vminus) -> "KripkeModel":
        worlds = tuple(worlds)
        return KripkeModel(
            frozenset(alphabet),
            worlds,
            frozenset((a, b) for a, b in leq),
            tuple((w, frozenset(vplus.get(w, ()))) for w in worlds),
            tuple((w, frozenset(vminus.get(w, ()))) for w in worlds),
        )

    def plus(self, w: str) -> frozenset[str]:
        return dict(self.vplus)[w]

    def minus(self, w: str) -> frozenset[str]:
        return dict(self.vminus)[w]

    def order(self) -> frozenset[tuple[str, str]]:
        return _closure(self.worlds, self.leq)

    def above(self, w: str) -> tuple[str, ...]:
        order = self.order()
        return tuple(v for v in self.worlds if (w, v) in order)


@lru_cache(maxsize=None)
def _closure(worlds: tuple[str, ...], leq: frozenset[tuple[str, str]]) -> frozenset[tuple[str, str]]:
    rel = {(w, w) for w in worlds} | set(leq)
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(tuple(rel), tuple(rel)):
            if b == c and (a, d) not in rel:
                rel.add((a, d))
                changed = True
    return frozenset(rel)


@dataclass(frozen=True)
class Violation:
    kind: str  # "order" | "monotonicity" | "stabilization"
    witness: tuple

    def __str__(self) -> str:
        return f"{self.kind}: {self.witness}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def valid(self) -> bool:
        return not self.violations


def validate_model(m: KripkeModel) -> ValidationReport:
    """Check the order axioms, monotonicity, and stabilization (restricted
    to the declared alphabet); violations are reported with witnesses."""
    out: list[Violation] = []
    known = set(m.worlds)
    for a, b in sorted(m.leq):
        if a not in known or b not in known:
            out.append(Violation("order", (a, b, "unknown world")))
    if len(known) != len(m.worlds):
        out.append(Violation("order", ("duplicate world names",)))
    order = _closure(m.worlds, frozenset(p for p in m.leq
                                         if p[0] in known and p[1] in known))
    for a, b in sorted(order):
        if a != b and (b, a) in order:
            out.append(Violation("order", (a, b, "antisymmetry")))
            break
    vp, vm = dict(m.vplus), dict(m.vminus)
    for w in m.worlds:
        for bad in sorted((vp[w] | vm[w]) - m.alphabet):
            out.append(Violation("alphabet", (w, bad)))
    for a, b in sorted(order):
        if a == b:
            continue
        for v in sorted(vp[a] - vp[b]):
            out.append(Violation("monotonicity", (a, b, v, "vplus")))
        for v in sorted(vm[a] - vm[b]):
            out.append(Violation("monotonicity", (a, b, v, "vminus")))
    for w in m.worlds:
        ups = [v for v in m.worlds if (w, v) in order]
        for a in sorted(m.alphabet):
            if not any((a in vp[u]) != (a in vm[u]) for u in ups):
                out.append(Violation("stabilization", (w, a)))
    return ValidationReport(tuple(out))


def forces(m: KripkeModel, w: str, p: MProp) -> bool:
    """The forcing relation, by recursion on the measure of p."""
    if w not in m.worlds:
        raise UnknownWorldError(f"unknown world {w!r}")
    missing = prop_vars(p.base) - m.alphabet
    if missing:
        raise UnknownVariableError(f"variables not in alphabet: {sorted(missing)}")
    return _forces(m, w, p)


@lru_cache(maxsize=1 << 20)
def _forces(m: KripkeModel, w: str, p: MProp) -> bool:
    base, mode = p.base, p.mode
    if mode.strength == CLASSICAL:
        strong_opp = MProp(base, Mode("s", MINUS if mode.sign == PLUS else PLUS))
        return all(not _forces(m, v, strong_opp) for v in m.above(w))
    cp, cm = Mode(CLASSICAL, PLUS), Mode(CLASSICAL, MINUS)
    match base, mode.sign:
        case PVar(name), "+":
            return name in m.plus(w)
        case PVar(name), "-":
            return name in m.minus(w)
        case And(l, r), "+":
            return _forces(m, w, MProp(l, cp)) and _forces(m, w, MProp(r, cp))
        case And(l, r), "-":
            return _forces(m, w, MProp(l, cm)) or _forces(m, w, MProp(r, cm))
        case Or(l, r), "+":
            return _forces(m, w, MProp(l, cp)) or _forces(m, w, MProp(r, cp))
        case Or(l, r), "-":
            return _forces(m, w, MProp(l, cm)) and _forces(m, w, MProp(r, cm))
        case Neg(inner), "+":
            return _forces(m, w, MProp(inner, cm))
        case Neg(inner), "-":
            return _forces(m, w, MProp(inner, cp))
    raise TypeError(p)


def entails_in_model(m: KripkeModel, hyps: list[MProp], p: MProp) -> bool:
    """Every world forcing all of hyps forces p."""
    for w in m.worlds:
        if all(forces(m, w, h) for h in hyps) and not forces(m, w, p):
            return False
    return True


# ---------------------------------------------------------------------------
# Enumeration and counter-model search

def _partial_orders(n: int):
    """All reflexive-transitive-antisymmetric relations on range(n)."""
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    for bits in itertools.product((False, True), repeat=len(pairs)):
        rel = {(i, i) for i in range(n)}
        rel.update(p for p, b in zip(pairs, bits) if b)
        ok = True
        for (a, b) in list(rel):
            if a != b and (b, a) in rel:
                ok = False
                break
            for (c, d) in list(rel):
                if b == c and (a, d) not in rel:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            yield rel


def _canonical_key(n: int, order, states) -> tuple:
    """Minimal permutation image, for isomorphism pruning."""
    best = None
    for perm in itertools.permutations(range(n)):
        o = tuple(sorted((perm[a], perm[b]) for a, b in order))
        s = tuple(states[perm.index(i)] for i in range(n))
        key = (s, o)
        if best is None or key < best:
            best = key
    return best


def enumerate_models(alphabet: tuple[str, ...], max_worlds: int) -> list[KripkeModel]:
    """All valid models with up to max_worlds worlds over the alphabet,
    up to isomorphism (canonicalized by valuation signatures)."""
    alpha = tuple(sorted(alphabet))
    out: list[KripkeModel] = []
    seen: set[tuple] = set()
    # per-world variable state: 0 = absent, 1 = vplus, 2 = vminus, 3 = both
    for n in range(1, max_worlds + 1):
        names = tuple(f"w{i}" for i in range(n))
        for order in _partial_orders(n):
            for states in itertools.product(
                    itertools.product(range(4), repeat=len(alpha)), repeat=n):
                # monotonicity on states
                ok = True
                for a, b in order:
                    if a == b:
                        continue
                    for k in range(len(alpha)):
                        sa, sb = states[a][k], states[b][k]
                        if (sa in (1, 3) and sb not in (1, 3)) or \
                           (sa in (2, 3) and sb not in (2, 3)):
                            ok = False
                            break
                    if not ok:
                        break
                if not ok:
                    continue
                # stabilization
                for i in range(n):
                    ups = [j for j in range(n) if (i, j) in order]
                    for k in range(len(alpha)):
                        if not any(states[j][k] in (1, 2) for j in ups):
                            ok = False
                            break
                    if not ok:
                        break
                if not ok:
                    continue
                key = _canonical_key(n, order, states)
                if key in seen:
                    continue
                seen.add(key)
                vplus = {names[i]: {alpha[k] for k in range(len(alpha))
                                    if states[i][k] in (1, 3)} for i in range(n)}
                vminus = {names[i]: {alpha[k] for k in range(len(alpha))
                                     if states[i][k] in (2, 3)} for i in range(n)}
                m = KripkeModel.make(alpha, names,
                                     {(names[a], names[b]) for a, b in order if a != b},
                                     vplus, vminus)
                out.append(m)
    return out


def countermodel_search(hyps: list[MProp], goal: MProp,
                        max_worlds: int = 3) -> tuple[KripkeModel, str] | None:
    """First enumerated valid model and world forcing hyps but not goal.

    Absence within the bound is inconclusive: no finite model property is
    claimed for this semantics.
    """
    variables = set()
    for p in [goal, *hyps]:
        variables |= prop_vars(p.base)
    alphabet = tuple(sorted(variables)) or ("a",)
    for m in enumerate_models(alphabet, max_worlds):
        for w in m.worlds:
            if all(forces(m, w, h) for h in hyps) and not forces(m, w, goal):
                return m, w
    return None


# ---------------------------------------------------------------------------
# Model files

def parse_model(text: str) -> KripkeModel:
    """Parse the model file format:

        alphabet: a b
        worlds: w0 w1 w2
        leq: w0 w1, w0 w2
        vplus w1: a b
        vminus w2: a
    """
    alphabet: list[str] = []
    worlds: list[str] = []
    leq: set[tuple[str, str]] = set()
    vplus: dict[str, set[str]] = {}
    vminus: dict[str, set[str]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ParseError("expected 'key: values'", lineno, 1)
        head, rest = line.split(":", 1)
        head = head.strip()
        items = rest.split()
        if head == "alphabet":
            alphabet.extend(items)
        elif head == "worlds":
            worlds.extend(items)
        elif head == "leq":
            for pair in rest.split(","):
                parts = pair.split()
                if not parts:
                    continue
                if len(parts) != 2:
                    raise ParseError(f"leq pair needs two worlds: {pair.strip()!r}", lineno, 1)
                leq.add((parts[0], parts[1]))
        elif head.startswith("vplus") or head.startswith("vminus"):
            fields = head.split()
            if len(fields) != 2:
                raise ParseError(f"expected '{fields[0]} <world>:'", lineno, 1)
            target = vplus if fields[0] == "vplus" else vminus
            target.setdefault(fields[1], set()).update(items)
        else:
            raise ParseError(f"unknown section {head!r}", lineno, 1)
    if not worlds:
        raise InvalidModelError("model declares no worlds")
    for w in list(vplus) + list(vminus):
        if w not in worlds:
            raise InvalidModelError(f"valuation for unknown world {w!r}")
    return KripkeModel.make(alphabet, worlds, leq, vplus, vminus)


def print_model(m: KripkeModel) -> str:
    lines = [
        "alphabet: " + " ".join(sorted(m.alphabet)),
        "worlds: " + " ".join(m.worlds),
    ]
    gens = sorted((a, b) for a, b in m.leq if a != b)
    if gens:
        lines.append("leq: " + ", ".join(f"{a} {b}" for a, b in gens))
    for w in m.worlds:
        if m.plus(w):
            lines.append(f"vplus {w}: " + " ".join(sorted(m.plus(w))))
    for w in m.worlds:
        if m.minus(w):
            lines.append(f"vminus {w}: " + " ".join(sorted(m.minus(w))))
    return "\n".join(lines) + "\n"


def counter_model_lem(alphabet: tuple[str, ...] = ("a",)) -> KripkeModel:
    """The three-world model refuting the strong excluded middle: a root
    below one all-positive and one all-negative world."""
    return KripkeModel.make(
        alphabet,
        ("w0", "w1", "w2"),
        {("w0", "w1"), ("w0", "w2")},
        {"w1": set(alphabet)},
        {"w2": set(alphabet)},
    )
