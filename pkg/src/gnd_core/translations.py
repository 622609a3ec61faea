"""
Formula and proof translations among G, GBot and C.

Formula maps are homomorphic except on the one connective the target
lacks:

    GtoC     P => Q  becomes  ~(P . ~Q)
    GtoGBot  ~P      becomes  P => #
    CtoG     P . Q   becomes  ~(P => ~Q)
    GBotToG  #       becomes  ~(p => p)

Proofs are elaborated first, so the per-rule maps only cover primitive
rules. The output is a macro-mode script in the target system and is
checked by the kernel before it is returned.
"""
import logging
import time
from enum import Enum
from typing import Callable, Dict

from .builder import ProofBuilder
from .derived_rules import (
    c_imp_elim, c_imp_intro, cut_star, dn_intro, elaborate_script, excontra, proj, weak_raa,
)
from .errors import TranslationError
from .formulas import (
    FALSUM, Conj, Falsum, Formula, Imp, Neg, Sequent, SystemId, Var, in_alphabet, print_sequent,
)
from .kernel import check_script
from .scripts import ProofScript, ScriptLine

logger = logging.getLogger(__name__)

# Refutable G formula standing in for falsum
FALSUM_STAND_IN = Neg(Imp(Var("p"), Var("p")))


class TranslationId(str, Enum):
    GTOC = "GtoC"
    CTOG = "CtoG"
    GTOGBOT = "GtoGBot"
    GBOTTOG = "GBotToG"

    @property
    def source(self) -> SystemId:
        return _ENDPOINTS[self][0]

    @property
    def target(self) -> SystemId:
        return _ENDPOINTS[self][1]

    @classmethod
    def between(cls, source: SystemId, target: SystemId) -> "TranslationId":
        for t in cls:
            if t.source is source and t.target is target:
                return t
        raise TranslationError(f"No translation from {source.value} to {target.value}")


_ENDPOINTS = {
    TranslationId.GTOC: (SystemId.G, SystemId.C),
    TranslationId.CTOG: (SystemId.C, SystemId.G),
    TranslationId.GTOGBOT: (SystemId.G, SystemId.GBOT),
    TranslationId.GBOTTOG: (SystemId.GBOT, SystemId.G),
}


def _map(t: TranslationId, f: Formula) -> Formula:
    if isinstance(f, Var):
        return f
    if isinstance(f, Falsum):
        return FALSUM_STAND_IN if t is TranslationId.GBOTTOG else f
    if isinstance(f, Neg):
        body = _map(t, f.body)
        return Imp(body, FALSUM) if t is TranslationId.GTOGBOT else Neg(body)
    if isinstance(f, Imp):
        left, right = _map(t, f.left), _map(t, f.right)
        return Neg(Conj(left, Neg(right))) if t is TranslationId.GTOC else Imp(left, right)
    if isinstance(f, Conj):
        left, right = _map(t, f.left), _map(t, f.right)
        return Neg(Imp(left, Neg(right))) if t is TranslationId.CTOG else Conj(left, right)
    raise ValueError(f"Unknown formula structure: {f!r}")


def translate_formula(t: TranslationId, f: Formula) -> Formula:
    """
    Raises:
        TranslationError: f is not in the source system's alphabet
    """
    if not in_alphabet(f, t.source):
        raise TranslationError(f"{f} is outside the alphabet of {t.source.value}")
    return _map(t, f)


def translate_sequent(t: TranslationId, s: Sequent) -> Sequent:
    return Sequent(tuple(translate_formula(t, f) for f in s.antecedent), translate_formula(t, s.succedent))


# =============================================================================
# Per-rule step maps
# =============================================================================

_StepMap = Callable[[ProofBuilder, TranslationId, ScriptLine, Dict[int, int]], int]


def _structural(b: ProofBuilder, t: TranslationId, line: ScriptLine, m: Dict[int, int]) -> int:
    rule = line.justification.rule
    refs = [m[r] for r in line.justification.premises]
    s = line.sequent
    if rule == "axiom":
        return b.axiom(_map(t, s.succedent))
    if rule == "premise":
        return b.premise(translate_sequent(t, s))
    if rule == "thin-front":
        return b.thin_front(refs[0], _map(t, s.antecedent[0]))
    if rule == "thin-back":
        return b.thin_back(refs[0], _map(t, s.antecedent[-1]))
    if rule == "imp-intro":
        return b.imp_intro(refs[0])
    if rule == "imp-elim":
        return b.imp_elim(*refs)
    if rule == "raa":
        return b.raa(*refs)
    raise TranslationError(f"No step map for {rule} under {t.value}")


def _g_to_c(b, t, line, m):
    rule = line.justification.rule
    refs = [m[r] for r in line.justification.premises]
    if rule == "imp-intro":
        return c_imp_intro(b, *refs)
    if rule == "imp-elim":
        return c_imp_elim(b, *refs)
    return _structural(b, t, line, m)


def _g_to_gbot(b, t, line, m):
    if line.justification.rule == "raa":
        i, j = (m[r] for r in line.justification.premises)
        return b.raa_bot(b.imp_elim(i, j))
    return _structural(b, t, line, m)


def _split_conj(f: Formula):
    """A, B from the G image ~(A => ~B) of a conjunction."""
    return f.body.left, f.body.right.body


def _conj_left(b: ProofBuilder, n: int) -> int:
    """Δ -> A from Δ -> ~(A => ~B)."""
    s = b.sequent(n)
    a, c = _split_conj(s.succedent)
    context = s.antecedent + (Neg(a),)
    with_a = context + (a,)
    not_c = excontra(b, proj(b, with_a, a), proj(b, with_a, Neg(a)), Neg(c))
    return b.raa(b.imp_intro(not_c), b.thin_back(n, Neg(a)))


def _conj_right(b: ProofBuilder, n: int) -> int:
    """Δ -> B from Δ -> ~(A => ~B)."""
    s = b.sequent(n)
    a, c = _split_conj(s.succedent)
    with_a = s.antecedent + (Neg(c), a)
    return b.raa(b.imp_intro(proj(b, with_a, Neg(c))), b.thin_back(n, Neg(c)))


def _c_to_g(b, t, line, m):
    rule = line.justification.rule
    refs = [m[r] for r in line.justification.premises]
    if rule == "conj-intro":
        i, j = refs
        a, c = b.sequent(i).succedent, b.sequent(j).succedent
        imp = Imp(a, Neg(c))
        context = b.sequent(i).antecedent + (imp,)
        c_line = b.thin_back(j, imp)
        not_c = b.imp_elim(b.thin_back(i, imp), proj(b, context, imp))
        return weak_raa(b, c_line, not_c)
    if rule == "conj-elim-l":
        return _conj_left(b, refs[0])
    if rule == "conj-elim-r":
        return _conj_right(b, refs[0])
    if rule == "cut":
        return cut_star(b, *refs)
    if rule == "raa-short":
        (n,) = refs
        return b.raa(_conj_left(b, n), _conj_right(b, n))
    return _structural(b, t, line, m)


def _gbot_to_g(b, t, line, m):
    if line.justification.rule != "raa-bot":
        return _structural(b, t, line, m)
    (n,) = (m[r] for r in line.justification.premises)
    s = b.sequent(n)
    delta, p = s.antecedent[:-1], s.antecedent[-1].left
    phi = FALSUM_STAND_IN
    context = delta + (Neg(p),)
    with_p = context + (p,)
    # Δ,~P -> P => Φ
    p_to_phi = b.imp_intro(excontra(b, proj(b, with_p, p), proj(b, with_p, Neg(p)), phi))
    # Δ,~P -> Φ
    major = b.thin_back(b.imp_intro(n), Neg(p))
    phi_line = b.imp_elim(p_to_phi, major)
    # Δ,~P -> ~Φ, since ~Φ is ~~(p => p)
    atom = phi.body.left
    identity = b.imp_intro(proj(b, context + (atom,), atom))
    return b.raa(phi_line, dn_intro(b, identity))


_STEP_MAPS: Dict[TranslationId, _StepMap] = {
    TranslationId.GTOC: _g_to_c,
    TranslationId.CTOG: _c_to_g,
    TranslationId.GTOGBOT: _g_to_gbot,
    TranslationId.GBOTTOG: _gbot_to_g,
}


def translate_proof(t: TranslationId, script: ProofScript) -> ProofScript:
    """
    Translate an accepted script of t.source into an accepted script of t.target
    whose final sequent is the translation of the source's final sequent.

    Raises:
        TranslationError: wrong source system, or the output fails the kernel
    """
    if script.system is not t.source:
        raise TranslationError(f"{t.value} expects a {t.source.value} script, got {script.system.value}")
    start_time = time.time()
    strict = elaborate_script(script)
    b = ProofBuilder(t.target)
    step = _STEP_MAPS[t]
    mapping: Dict[int, int] = {}
    for line in strict.lines:
        mapping[line.number] = step(b, t, line, mapping)
        expected = translate_sequent(t, line.sequent)
        if b.sequent(mapping[line.number]) != expected:
            raise TranslationError(
                f"line {line.number}: {t.value} step concluded {print_sequent(b.sequent(mapping[line.number]))}, "
                f"expected {print_sequent(expected)}"
            )

    result = b.script()
    report = check_script(result)
    if not report.accepted:
        logger.error(f"{t.value} output rejected by the kernel:\n{report.render()}")
        raise TranslationError(f"{t.value} produced a proof the kernel rejects: {report.violations[0].render()}")
    logger.info(
        f"Translated {t.value}: {len(script.lines)} lines -> {len(result.lines)} lines "
        f"in {int((time.time() - start_time) * 1000)}ms"
    )
    return result
