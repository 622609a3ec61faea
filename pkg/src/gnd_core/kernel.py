"""
Trusted kernel: checks proof scripts against the primitive rules.

This is the only component whose verdict is trusted. Builders, the
elaborator, the completeness engine and the translators all hand their
output back here.
"""
import logging
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from .errors import ElaborationError, MacroNotInSystem
from .formulas import Conj, Falsum, Imp, Neg, Sequent, SystemId, print_sequent, sequent_in_alphabet
from .scripts import DERIVED_RULES, RULES, Justification, Mode, ProofScript

logger = logging.getLogger(__name__)


# =============================================================================
# Constants
# =============================================================================

CONTEXT_MISMATCH = "context-mismatch"
WRONG_SHAPE = "wrong-shape"
RULE_NOT_IN_SYSTEM = "rule-not-in-system"
ARITY_MISMATCH = "arity-mismatch"
UNKNOWN_RULE = "unknown-rule"
BAD_REFERENCE = "bad-reference"
OUT_OF_ALPHABET = "out-of-alphabet"


@dataclass(frozen=True)
class Violation:
    line: int
    kind: str
    detail: str

    def render(self) -> str:
        return f"line {self.line}: {self.kind}: {self.detail}"


@dataclass
class CheckReport:
    """Outcome of checking one script. Accepted iff there are no violations."""
    violations: List[Violation] = field(default_factory=list)
    stats: Dict[str, int] = field(default_factory=dict)
    execution_time_ms: int = 0

    @property
    def accepted(self) -> bool:
        return not self.violations

    @property
    def verdict(self) -> str:
        return "accepted" if self.accepted else "rejected"

    def violations_at(self, line: int) -> List[Violation]:
        return [v for v in self.violations if v.line == line]

    def render(self) -> str:
        out = [v.render() for v in self.violations]
        if self.accepted:
            out.append("ACCEPTED")
        else:
            out.append(f"REJECTED ({len(self.violations)} violations)")
        return "\n".join(out)

    def render_porcelain(self) -> str:
        out = [f"verdict={self.verdict}"]
        for v in self.violations:
            out.append(f"violation={v.line}|{v.kind}|{v.detail}")
        for rule in sorted(self.stats):
            out.append(f"rule.{rule}={self.stats[rule]}")
        return "\n".join(out)


class _Reject(Exception):
    def __init__(self, kind: str, detail: str):
        super().__init__(detail)
        self.kind = kind
        self.detail = detail


def _need(condition: bool, kind: str, detail: str):
    if not condition:
        raise _Reject(kind, detail)


def _same_context(a: Sequent, b: Sequent):
    _need(
        a.antecedent == b.antecedent,
        CONTEXT_MISMATCH,
        f"antecedents differ: {print_sequent(a)} vs {print_sequent(b)}",
    )


def _conclusion_is(conclusion: Sequent, antecedent, succedent):
    expected = Sequent(tuple(antecedent), succedent)
    _need(conclusion == expected, WRONG_SHAPE, f"conclusion should be {print_sequent(expected)}")


# =============================================================================
# Primitive rules
# =============================================================================

def _axiom(c: Sequent, premises: Sequence[Sequent]):
    _need(
        len(c.antecedent) == 1 and c.antecedent[0] == c.succedent,
        WRONG_SHAPE,
        "axiom must have the form P -> P",
    )


def _premise(c, premises):
    pass


def _thin_front(c, premises):
    (p,) = premises
    _need(
        len(c.antecedent) == len(p.antecedent) + 1 and c.antecedent[1:] == p.antecedent,
        WRONG_SHAPE,
        "thin-front must prepend exactly one antecedent formula",
    )
    _need(c.succedent == p.succedent, WRONG_SHAPE, "thinning must keep the succedent")


def _thin_back(c, premises):
    (p,) = premises
    _need(
        len(c.antecedent) == len(p.antecedent) + 1 and c.antecedent[:-1] == p.antecedent,
        WRONG_SHAPE,
        "thin-back must append exactly one antecedent formula",
    )
    _need(c.succedent == p.succedent, WRONG_SHAPE, "thinning must keep the succedent")


def _imp_intro(c, premises):
    (p,) = premises
    _need(bool(p.antecedent), WRONG_SHAPE, "imp-intro needs a nonempty antecedent")
    _conclusion_is(c, p.antecedent[:-1], Imp(p.antecedent[-1], p.succedent))


def _imp_elim(c, premises):
    minor, major = premises
    _same_context(minor, major)
    _need(
        isinstance(major.succedent, Imp) and major.succedent.left == minor.succedent,
        WRONG_SHAPE,
        "second premise must be an implication whose antecedent is the first premise's succedent",
    )
    _conclusion_is(c, minor.antecedent, major.succedent.right)


def _discharged_negation(p: Sequent) -> Neg:
    _need(bool(p.antecedent), WRONG_SHAPE, "premise needs a nonempty antecedent")
    last = p.antecedent[-1]
    _need(isinstance(last, Neg), WRONG_SHAPE, "last antecedent formula must be a negation")
    return last


def _raa(c, premises):
    first, second = premises
    _same_context(first, second)
    discharged = _discharged_negation(first)
    _need(
        second.succedent == Neg(first.succedent),
        WRONG_SHAPE,
        "second succedent must be the exact negation of the first",
    )
    _conclusion_is(c, first.antecedent[:-1], discharged.body)


def _raa_bot(c, premises):
    (p,) = premises
    _need(bool(p.antecedent), WRONG_SHAPE, "premise needs a nonempty antecedent")
    last = p.antecedent[-1]
    _need(
        isinstance(last, Imp) and isinstance(last.right, Falsum),
        WRONG_SHAPE,
        "last antecedent formula must be P => #",
    )
    _need(isinstance(p.succedent, Falsum), WRONG_SHAPE, "premise succedent must be #")
    _conclusion_is(c, p.antecedent[:-1], last.left)


def _conj_intro(c, premises):
    left, right = premises
    _same_context(left, right)
    _conclusion_is(c, left.antecedent, Conj(left.succedent, right.succedent))


def _conj_elim(side: str):
    def check(c, premises):
        (p,) = premises
        _need(isinstance(p.succedent, Conj), WRONG_SHAPE, "premise succedent must be a conjunction")
        part = p.succedent.left if side == "l" else p.succedent.right
        _conclusion_is(c, p.antecedent, part)
    return check


def _cut(c, premises):
    minor, major = premises
    _need(len(minor.antecedent) == 1, WRONG_SHAPE, "first premise must have a single antecedent formula")
    _need(
        bool(major.antecedent) and major.antecedent[-1] == minor.succedent,
        WRONG_SHAPE,
        "cut formula must be the last antecedent formula of the second premise",
    )
    _conclusion_is(c, major.antecedent[:-1] + minor.antecedent, major.succedent)


def _raa_short(c, premises):
    (p,) = premises
    discharged = _discharged_negation(p)
    s = p.succedent
    _need(
        isinstance(s, Conj) and s.right == Neg(s.left),
        WRONG_SHAPE,
        "premise succedent must be Q . ~Q",
    )
    _conclusion_is(c, p.antecedent[:-1], discharged.body)


_CHECKS = {
    "axiom": _axiom,
    "premise": _premise,
    "thin-front": _thin_front,
    "thin-back": _thin_back,
    "imp-intro": _imp_intro,
    "imp-elim": _imp_elim,
    "raa": _raa,
    "raa-bot": _raa_bot,
    "conj-intro": _conj_intro,
    "conj-elim-l": _conj_elim("l"),
    "conj-elim-r": _conj_elim("r"),
    "cut": _cut,
    "raa-short": _raa_short,
}


def check_step(
    system: SystemId,
    established: Sequence[Sequent],
    conclusion: Sequent,
    justification: Justification,
    line: int = 0,
) -> Optional[Violation]:
    """
    Validate one primitive rule application.

    Args:
        system: the script's system
        established: sequents of the lines before this one (index 0 is line 1)
        conclusion: the sequent claimed on this line
        justification: rule token and premise line numbers

    Returns:
        None if the step is correct, otherwise the Violation
    """
    rule = justification.rule
    spec = RULES.get(rule)
    if spec is None or spec.derived:
        return Violation(line, UNKNOWN_RULE, f"{rule} is not a primitive rule")
    if system not in spec.systems:
        return Violation(line, RULE_NOT_IN_SYSTEM, f"{rule} is not a rule of system {system.value}")
    if len(justification.premises) != spec.arity:
        return Violation(
            line, ARITY_MISMATCH, f"{rule} takes {spec.arity} premise(s), got {len(justification.premises)}"
        )
    premises = []
    for ref in justification.premises:
        if not 1 <= ref <= len(established):
            return Violation(line, BAD_REFERENCE, f"premise {ref} is not an earlier line")
        premises.append(established[ref - 1])
    try:
        _CHECKS[rule](conclusion, premises)
    except _Reject as r:
        return Violation(line, r.kind, r.detail)
    return None


def _check_macro_line(script: ProofScript, established: List[Sequent], line) -> Optional[Violation]:
    from .derived_rules import MacroInstance, elaborate_step

    just = line.justification
    spec = RULES[just.rule]
    if script.mode is Mode.STRICT:
        return Violation(line.number, RULE_NOT_IN_SYSTEM, f"derived rule {just.rule} is not admitted in strict mode")
    if script.system not in spec.systems:
        return Violation(line.number, RULE_NOT_IN_SYSTEM, f"{just.rule} is not available in system {script.system.value}")
    if len(just.premises) != spec.arity:
        return Violation(
            line.number, ARITY_MISMATCH, f"{just.rule} takes {spec.arity} premise(s), got {len(just.premises)}"
        )
    for ref in just.premises:
        if not 1 <= ref <= len(established):
            return Violation(line.number, BAD_REFERENCE, f"premise {ref} is not an earlier line")
    instance = MacroInstance(just.rule, tuple(established[r - 1] for r in just.premises), line.sequent)
    try:
        expansion = elaborate_step(script.system, instance)
    except MacroNotInSystem as e:
        return Violation(line.number, RULE_NOT_IN_SYSTEM, str(e))
    except ElaborationError as e:
        return Violation(line.number, WRONG_SHAPE, str(e))
    if [l.sequent for l in expansion.premise_lines] != list(instance.premises):
        return Violation(line.number, WRONG_SHAPE, f"expansion of {just.rule} does not assume the cited premises")
    sub_report = check_script(expansion)
    if not sub_report.accepted:
        first = sub_report.violations[0]
        logger.error(f"Expansion of {just.rule} at line {line.number} failed the kernel: {first.render()}")
        return Violation(line.number, WRONG_SHAPE, f"expansion of {just.rule} rejected: {first.render()}")
    if expansion.conclusion != line.sequent:
        return Violation(line.number, WRONG_SHAPE, f"expansion of {just.rule} does not conclude the stated sequent")
    return None


def check_script(script: ProofScript) -> CheckReport:
    """
    Check every line of a script; report all violations, not just the first.

    In macro mode derived-rule lines are elaborated one at a time and the
    expansion is checked in strict mode.
    """
    start_time = time.time()
    violations: List[Violation] = []
    stats: Counter = Counter()
    established: List[Sequent] = []

    for expected_number, line in enumerate(script.lines, start=1):
        if line.number != expected_number:
            violations.append(Violation(line.number, BAD_REFERENCE, f"expected line number {expected_number}"))
        if not sequent_in_alphabet(line.sequent, script.system):
            violations.append(
                Violation(line.number, OUT_OF_ALPHABET, f"{print_sequent(line.sequent)} is outside {script.system.value}")
            )
        rule = line.justification.rule
        stats[rule] += 1
        if rule in DERIVED_RULES:
            violation = _check_macro_line(script, established, line)
        else:
            violation = check_step(script.system, established, line.sequent, line.justification, line.number)
        if violation is not None:
            violations.append(violation)
        established.append(line.sequent)

    report = CheckReport(violations, dict(stats), int((time.time() - start_time) * 1000))
    logger.debug(
        f"Checked {script.system.value} script ({script.mode.value}, {len(script.lines)} lines): "
        f"{report.verdict}, violations={len(violations)}"
    )
    return report
