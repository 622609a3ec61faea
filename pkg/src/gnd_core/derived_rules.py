"""
Derived rules and the elaborator.

Every derived rule has a conclusion function (what the single macro line
claims) and an expansion (the primitive steps that establish it). The
expansions are written against ProofBuilder, so the same code serves macro
mode (one line per derived rule) and expansion mode (primitive steps only).

Catalogue, with Δ, Γ antecedent sequences:

    thin i          Δ -> Q  gives  A,Δ,B -> Q
    proj            Δ₁,P,Δ₂ -> P
    struct i        Δ -> Q  gives  Δ' -> Q   (every member of Δ occurs in Δ')
    perm i          Δ,P,Q,Γ -> R  gives  Δ,Q,P,Γ -> R
    contr i         Δ,P,P -> Q  gives  Δ,P -> Q
    cut* i j        Γ -> P and Δ,P -> Q  give  Δ,Γ -> Q
    excontra i j    Δ -> Q and Δ -> ~Q  give  Δ -> P
    dne             ~~P -> P
    weak-raa i j    Δ,P -> Q and Δ,P -> ~Q  give  Δ -> ~P
    dn-intro i      Δ -> P  gives  Δ -> ~~P
    case i j        Δ,Q -> P and Δ,~Q -> P  give  Δ -> P
    c-imp-intro i   Δ,P -> Q  gives  Δ -> ~(P . ~Q)
    c-imp-elim i j  Δ -> P and Δ -> ~(P . ~Q)  give  Δ -> Q
    raa-via-short i j, raa-short-via-raa i: the two reductio forms of C in
    terms of each other
"""
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional, Sequence, Tuple

from .builder import ProofBuilder
from .errors import ElaborationError, MacroNotInSystem, ShapeMismatch
from .formulas import Conj, Formula, Imp, Neg, Sequent, SystemId, print_sequent
from .scripts import RULES, Mode, ProofScript

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MacroInstance:
    """A derived-rule application with concrete premise sequents and conclusion."""
    rule: str
    premises: Tuple[Sequent, ...]
    conclusion: Sequent


@dataclass(frozen=True)
class MacroRule:
    token: str
    conclude: Callable[..., Sequent]
    expand: Callable[..., int]
    # recovers the rule's parameters from a stated conclusion
    params: Callable[[Tuple[Sequent, ...], Sequent], Dict] = field(default=lambda premises, c: {})


MACROS: Dict[str, MacroRule] = {}


def _macro(token: str, params=None):
    def register(cls):
        MACROS[token] = MacroRule(token, cls.conclude, cls.expand, params or (lambda premises, c: {}))
        return cls
    return register


def apply_macro(b: ProofBuilder, token: str, refs: Sequence[int], **params) -> int:
    """
    Apply a derived rule in builder b.

    In macro mode one line is recorded; in expansion mode the primitive steps
    are emitted and the line establishing the conclusion is returned.

    Raises:
        MacroNotInSystem: the rule is not available in b.system
        ShapeMismatch: the premises do not fit the rule
    """
    spec = RULES[token]
    if b.system not in spec.systems:
        raise MacroNotInSystem(f"{token} is not available in system {b.system.value}")
    if len(refs) != spec.arity:
        raise ShapeMismatch(f"{token} takes {spec.arity} premise(s), got {len(refs)}")
    rule = MACROS[token]
    premises = tuple(b.sequent(r) for r in refs)
    conclusion = rule.conclude(premises, **params)
    if not b.expand:
        return b.emit(conclusion, token, *refs)
    last = rule.expand(b, tuple(refs), **params)
    if b.sequent(last) != conclusion:
        raise ElaborationError(
            f"expansion of {token} concluded {print_sequent(b.sequent(last))}, expected {print_sequent(conclusion)}"
        )
    return last


# =============================================================================
# Shape helpers
# =============================================================================

def _same_context(rule: str, a: Sequent, b: Sequent):
    if a.antecedent != b.antecedent:
        raise ShapeMismatch(f"{rule}: antecedents differ: {print_sequent(a)} / {print_sequent(b)}")


def _last(rule: str, s: Sequent) -> Formula:
    if not s.antecedent:
        raise ShapeMismatch(f"{rule}: premise needs a nonempty antecedent: {print_sequent(s)}")
    return s.antecedent[-1]


def _last_negation(rule: str, s: Sequent) -> Neg:
    last = _last(rule, s)
    if not isinstance(last, Neg):
        raise ShapeMismatch(f"{rule}: last antecedent formula must be a negation: {print_sequent(s)}")
    return last


def _find_split(source: Tuple, target: Tuple) -> Optional[int]:
    """Leftmost start of source inside target, i.e. the longest suffix deletion."""
    width = len(source)
    for start in range(len(target) - width + 1):
        if target[start:start + width] == source:
            return start
    return None


# =============================================================================
# Structural rules
# =============================================================================

@_macro("thin", params=lambda premises, c: {"target": c.antecedent})
class _Thin:
    @staticmethod
    def conclude(premises, target):
        (s,) = premises
        target = tuple(target)
        if _find_split(s.antecedent, target) is None:
            raise ShapeMismatch(
                f"thin: {print_sequent(s)} antecedent is not a contiguous part of {', '.join(map(str, target))}"
            )
        return Sequent(target, s.succedent)

    @staticmethod
    def expand(b, refs, target):
        (n,) = refs
        target = tuple(target)
        source = b.sequent(n).antecedent
        start = _find_split(source, target)
        for f in target[start + len(source):]:
            n = b.thin_back(n, f)
        for f in reversed(target[:start]):
            n = b.thin_front(n, f)
        return n


def thin(b: ProofBuilder, i: int, target) -> int:
    return apply_macro(b, "thin", (i,), target=tuple(target))


@_macro("proj", params=lambda premises, c: {"antecedent": c.antecedent, "p": c.succedent})
class _Proj:
    @staticmethod
    def conclude(premises, antecedent, p):
        if p not in antecedent:
            raise ShapeMismatch(f"proj: {p} does not occur in the antecedent")
        return Sequent(tuple(antecedent), p)

    @staticmethod
    def expand(b, refs, antecedent, p):
        return thin(b, b.axiom(p), antecedent)


def proj(b: ProofBuilder, antecedent, p: Formula) -> int:
    """Δ₁,P,Δ₂ -> P."""
    return apply_macro(b, "proj", (), antecedent=tuple(antecedent), p=p)


@_macro("struct", params=lambda premises, c: {"target": c.antecedent})
class _Struct:
    @staticmethod
    def conclude(premises, target):
        (s,) = premises
        missing = [f for f in s.antecedent if f not in target]
        if missing:
            raise ShapeMismatch(f"struct: {missing[0]} is missing from the target antecedent")
        return Sequent(tuple(target), s.succedent)

    @staticmethod
    def expand(b, refs, target):
        # export everything after the common prefix, thin, then re-import
        (n,) = refs
        target = tuple(target)
        source = b.sequent(n).antecedent
        k = 0
        while k < min(len(source), len(target)) and source[k] == target[k]:
            k += 1
        exported = source[k:]
        for _ in exported:
            n = b.imp_intro(n)
        n = thin(b, n, target)
        for f in exported:
            n = b.imp_elim(proj(b, target, f), n)
        return n


def struct(b: ProofBuilder, i: int, target) -> int:
    return apply_macro(b, "struct", (i,), target=tuple(target))


def _perm_params(premises, c):
    (s,) = premises
    ant = s.antecedent
    for k in range(len(ant) - 1):
        if ant[:k] + (ant[k + 1], ant[k]) + ant[k + 2:] == c.antecedent:
            return {"k": k}
    raise ShapeMismatch(f"perm: {print_sequent(c)} does not swap two neighbours of {print_sequent(s)}")


@_macro("perm", params=_perm_params)
class _Perm:
    @staticmethod
    def conclude(premises, k):
        (s,) = premises
        ant = s.antecedent
        if not 0 <= k < len(ant) - 1:
            raise ShapeMismatch(f"perm: no neighbours at position {k} in {print_sequent(s)}")
        return Sequent(ant[:k] + (ant[k + 1], ant[k]) + ant[k + 2:], s.succedent)

    @staticmethod
    def expand(b, refs, k):
        (n,) = refs
        return struct(b, n, _Perm.conclude((b.sequent(n),), k).antecedent)


def perm(b: ProofBuilder, i: int, k: int) -> int:
    """Swap antecedent positions k and k+1 (0-based)."""
    return apply_macro(b, "perm", (i,), k=k)


@_macro("contr")
class _Contr:
    @staticmethod
    def conclude(premises):
        (s,) = premises
        ant = s.antecedent
        if len(ant) < 2 or ant[-1] != ant[-2]:
            raise ShapeMismatch(f"contr: the last two antecedent formulas must coincide: {print_sequent(s)}")
        return Sequent(ant[:-1], s.succedent)

    @staticmethod
    def expand(b, refs):
        (n,) = refs
        ant = b.sequent(n).antecedent
        n = b.imp_intro(n)
        return b.imp_elim(proj(b, ant[:-1], ant[-1]), n)


def contr(b: ProofBuilder, i: int) -> int:
    return apply_macro(b, "contr", (i,))


@_macro("cut*")
class _CutStar:
    @staticmethod
    def conclude(premises):
        minor, major = premises
        if _last("cut*", major) != minor.succedent:
            raise ShapeMismatch(
                f"cut*: {minor.succedent} must be the last antecedent formula of {print_sequent(major)}"
            )
        return Sequent(major.antecedent[:-1] + minor.antecedent, major.succedent)

    @staticmethod
    def expand(b, refs):
        i, j = refs
        context = b.sequent(j).antecedent[:-1] + b.sequent(i).antecedent
        major = thin(b, b.imp_intro(j), context)
        return b.imp_elim(thin(b, i, context), major)


def cut_star(b: ProofBuilder, i: int, j: int) -> int:
    return apply_macro(b, "cut*", (i, j))


# =============================================================================
# Negation rules
# =============================================================================

@_macro("excontra", params=lambda premises, c: {"p": c.succedent})
class _ExContra:
    @staticmethod
    def conclude(premises, p):
        first, second = premises
        _same_context("excontra", first, second)
        if second.succedent != Neg(first.succedent):
            raise ShapeMismatch(f"excontra: {second.succedent} is not the negation of {first.succedent}")
        return Sequent(first.antecedent, p)

    @staticmethod
    def expand(b, refs, p):
        i, j = refs
        return b.raa(b.thin_back(i, Neg(p)), b.thin_back(j, Neg(p)))


def excontra(b: ProofBuilder, i: int, j: int, p: Formula) -> int:
    return apply_macro(b, "excontra", (i, j), p=p)


def _dne_params(premises, c):
    if c.antecedent != (Neg(Neg(c.succedent)),):
        raise ShapeMismatch(f"dne: conclusion must be ~~P -> P, got {print_sequent(c)}")
    return {"p": c.succedent}


@_macro("dne", params=_dne_params)
class _Dne:
    @staticmethod
    def conclude(premises, p):
        return Sequent((Neg(Neg(p)),), p)

    @staticmethod
    def expand(b, refs, p):
        not_p, not_not_p = Neg(p), Neg(Neg(p))
        first = b.thin_front(b.axiom(not_p), not_not_p)
        second = b.thin_back(b.axiom(not_not_p), not_p)
        return b.raa(first, second)


def dne(b: ProofBuilder, p: Formula) -> int:
    return apply_macro(b, "dne", (), p=p)


@_macro("weak-raa")
class _WeakRaa:
    @staticmethod
    def conclude(premises):
        first, second = premises
        _same_context("weak-raa", first, second)
        if second.succedent != Neg(first.succedent):
            raise ShapeMismatch(f"weak-raa: {second.succedent} is not the negation of {first.succedent}")
        return Sequent(first.antecedent[:-1], Neg(_last("weak-raa", first)))

    @staticmethod
    def expand(b, refs):
        i, j = refs
        d = dne(b, _last("weak-raa", b.sequent(i)))
        compose = b.cut if b.system is SystemId.C else (lambda m, n: cut_star(b, m, n))
        return b.raa(compose(d, i), compose(d, j))


def weak_raa(b: ProofBuilder, i: int, j: int) -> int:
    return apply_macro(b, "weak-raa", (i, j))


@_macro("dn-intro")
class _DnIntro:
    @staticmethod
    def conclude(premises):
        (s,) = premises
        return Sequent(s.antecedent, Neg(Neg(s.succedent)))

    @staticmethod
    def expand(b, refs):
        (n,) = refs
        s = b.sequent(n)
        context = s.antecedent + (Neg(s.succedent),)
        return weak_raa(b, b.thin_back(n, Neg(s.succedent)), proj(b, context, Neg(s.succedent)))


def dn_intro(b: ProofBuilder, i: int) -> int:
    return apply_macro(b, "dn-intro", (i,))


@_macro("case")
class _Case:
    @staticmethod
    def conclude(premises):
        pos, neg = premises
        q = _last("case", pos)
        if neg.antecedent != pos.antecedent[:-1] + (Neg(q),) or neg.succedent != pos.succedent:
            raise ShapeMismatch(f"case: {print_sequent(neg)} must be the ~{q} branch of {print_sequent(pos)}")
        return Sequent(pos.antecedent[:-1], pos.succedent)

    @staticmethod
    def expand(b, refs):
        i, j = refs
        s = b.sequent(i)
        delta, q, p = s.antecedent[:-1], s.antecedent[-1], s.succedent
        with_q = delta + (Neg(p), q)
        # Δ,~P,Q -> P and Δ,~P,Q -> ~P give Δ,~P -> ~Q
        lifted = b.thin_back(b.thin_back(b.imp_intro(i), Neg(p)), q)
        p_line = b.imp_elim(proj(b, with_q, q), lifted)
        not_q = weak_raa(b, p_line, proj(b, with_q, Neg(p)))
        # Δ,~P -> ~Q => P
        neg_branch = b.thin_back(b.imp_intro(j), Neg(p))
        p_again = b.imp_elim(not_q, neg_branch)
        return b.raa(p_again, proj(b, delta + (Neg(p),), Neg(p)))


def case(b: ProofBuilder, i: int, j: int) -> int:
    return apply_macro(b, "case", (i, j))


# =============================================================================
# Implication inside C
# =============================================================================

@_macro("c-imp-intro")
class _CImpIntro:
    @staticmethod
    def conclude(premises):
        (s,) = premises
        p = _last("c-imp-intro", s)
        return Sequent(s.antecedent[:-1], Neg(Conj(p, Neg(s.succedent))))

    @staticmethod
    def expand(b, refs):
        (n,) = refs
        s = b.sequent(n)
        delta, p, q = s.antecedent[:-1], s.antecedent[-1], s.succedent
        hyp = Conj(p, Neg(q))
        a = b.axiom(hyp)
        q_line = b.cut(b.conj_elim_l(a), n)
        not_q_line = thin(b, b.conj_elim_r(a), delta + (hyp,))
        return weak_raa(b, q_line, not_q_line)


def c_imp_intro(b: ProofBuilder, i: int) -> int:
    return apply_macro(b, "c-imp-intro", (i,))


def _c_imp_elim_consequent(minor: Sequent, major: Sequent) -> Formula:
    f = major.succedent
    if not (
        isinstance(f, Neg) and isinstance(f.body, Conj)
        and f.body.left == minor.succedent and isinstance(f.body.right, Neg)
    ):
        raise ShapeMismatch(f"c-imp-elim: {f} is not ~({minor.succedent} . ~Q)")
    return f.body.right.body


@_macro("c-imp-elim")
class _CImpElim:
    @staticmethod
    def conclude(premises):
        minor, major = premises
        _same_context("c-imp-elim", minor, major)
        return Sequent(minor.antecedent, _c_imp_elim_consequent(minor, major))

    @staticmethod
    def expand(b, refs):
        i, j = refs
        s = b.sequent(i)
        not_q = Neg(_c_imp_elim_consequent(s, b.sequent(j)))
        context = s.antecedent + (not_q,)
        conj = b.conj_intro(b.thin_back(i, not_q), proj(b, context, not_q))
        return b.raa(conj, b.thin_back(j, not_q))


def c_imp_elim(b: ProofBuilder, i: int, j: int) -> int:
    return apply_macro(b, "c-imp-elim", (i, j))


@_macro("raa-via-short")
class _RaaViaShort:
    @staticmethod
    def conclude(premises):
        first, second = premises
        _same_context("raa-via-short", first, second)
        discharged = _last_negation("raa-via-short", first)
        if second.succedent != Neg(first.succedent):
            raise ShapeMismatch(f"raa-via-short: {second.succedent} is not the negation of {first.succedent}")
        return Sequent(first.antecedent[:-1], discharged.body)

    @staticmethod
    def expand(b, refs):
        i, j = refs
        return b.raa_short(b.conj_intro(i, j))


def raa_via_short(b: ProofBuilder, i: int, j: int) -> int:
    return apply_macro(b, "raa-via-short", (i, j))


@_macro("raa-short-via-raa")
class _RaaShortViaRaa:
    @staticmethod
    def conclude(premises):
        (s,) = premises
        discharged = _last_negation("raa-short-via-raa", s)
        c = s.succedent
        if not (isinstance(c, Conj) and c.right == Neg(c.left)):
            raise ShapeMismatch(f"raa-short-via-raa: succedent must be Q . ~Q, got {c}")
        return Sequent(s.antecedent[:-1], discharged.body)

    @staticmethod
    def expand(b, refs):
        (n,) = refs
        return b.raa(b.conj_elim_l(n), b.conj_elim_r(n))


def raa_short_via_raa(b: ProofBuilder, i: int) -> int:
    return apply_macro(b, "raa-short-via-raa", (i,))


# =============================================================================
# Elaboration
# =============================================================================

def _checked_params(token: str, premises: Tuple[Sequent, ...], conclusion: Sequent) -> Dict:
    rule = MACROS[token]
    params = rule.params(premises, conclusion)
    expected = rule.conclude(premises, **params)
    if expected != conclusion:
        raise ShapeMismatch(f"{token} concludes {print_sequent(expected)}, not {print_sequent(conclusion)}")
    return params


def elaborate_step(system: SystemId, instance: MacroInstance) -> ProofScript:
    """
    Expand one derived-rule application into a strict hypothetical script.

    The script starts with one `premise` line per premise sequent, followed by
    the primitive steps; its last line is the instance's conclusion.

    Raises:
        MacroNotInSystem: rule not available in system
        ShapeMismatch: premises or conclusion do not fit the rule
    """
    if instance.rule not in MACROS:
        raise ElaborationError(f"{instance.rule} is not a derived rule")
    if system not in RULES[instance.rule].systems:
        raise MacroNotInSystem(f"{instance.rule} is not available in system {system.value}")
    b = ProofBuilder(system, expand=True)
    refs = tuple(b.premise(s) for s in instance.premises)
    params = _checked_params(instance.rule, instance.premises, instance.conclusion)
    last = apply_macro(b, instance.rule, refs, **params)
    if last != len(b):
        _restate(b, last)
    return b.script()


def _restate(b: ProofBuilder, n: int) -> int:
    """Derive line n's sequent again as the newest line."""
    s = b.sequent(n)
    if b.system is SystemId.C:
        return b.conj_elim_l(b.conj_intro(n, n))
    identity = b.imp_intro(proj(b, s.antecedent + (s.succedent,), s.succedent))
    return b.imp_elim(n, identity)


def elaborate_script(script: ProofScript) -> ProofScript:
    """
    Expand every derived-rule line into primitive steps.

    Returns a strict script with the same premise lines and final sequent. A
    script without derived-rule lines is returned with its lines unchanged.

    Raises:
        ElaborationError: carrying the number of the offending line
    """
    if not script.uses_macros:
        if script.mode is Mode.STRICT:
            return script
        return ProofScript(script.system, Mode.STRICT, script.lines)

    b = ProofBuilder(script.system, expand=True)
    mapping: Dict[int, int] = {}
    for line in script.lines:
        just = line.justification
        refs = tuple(mapping[r] for r in just.premises)
        if just.rule not in MACROS:
            mapping[line.number] = b.emit(line.sequent, just.rule, *refs)
            continue
        if script.system not in RULES[just.rule].systems:
            raise MacroNotInSystem(f"{just.rule} is not available in system {script.system.value}", line.number)
        try:
            premises = tuple(b.sequent(r) for r in refs)
            params = _checked_params(just.rule, premises, line.sequent)
            mapping[line.number] = apply_macro(b, just.rule, refs, **params)
        except MacroNotInSystem as e:
            raise MacroNotInSystem(str(e), line.number) from None
        except ShapeMismatch as e:
            raise ShapeMismatch(str(e), line.number) from None
        except ElaborationError as e:
            raise ElaborationError(str(e), line.number) from None

    if script.lines and mapping[script.lines[-1].number] != len(b):
        _restate(b, mapping[script.lines[-1].number])
    result = b.script()
    logger.info(
        f"Elaborated {script.system.value} script: {len(script.lines)} lines -> {len(result.lines)} primitive lines"
    )
    return result
