"""
Hilbert systems HLT and HL3.

Both have modus ponens and the schemata

    ax1   P => (Q => P)
    ax2   (P => (Q => R)) => ((P => Q) => (P => R))

HLT adds ax3 = (~P => ~Q) => (Q => P) and HL3 adds the strong reductio
schema ax3' = (~P => Q) => ((~P => ~Q) => P). Axiom lines are checked by
matching against the schema, there is no substitution rule.

Script file layout:

    system: HL3
    hyp: p => q
    hyp: p
    1. p ; hyp 2
    2. p => q ; hyp 1
    3. q ; mp 1 2
"""
import logging
import time
from functools import lru_cache
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .builder import ProofBuilder, substitute_script
from .derived_rules import elaborate_script, proj, thin
from .errors import FormulaSyntaxError, HilbertError, ScriptSyntaxError
from .formula_parser import parse_formula
from .formulas import Formula, Imp, Neg, Sequent, SystemId, curry, in_alphabet, print_formula, substitute
from .kernel import BAD_REFERENCE, OUT_OF_ALPHABET, CheckReport, Violation, check_script
from .scripts import ProofScript, split_header, strip_comment_after_justification

logger = logging.getLogger(__name__)


# =============================================================================
# Constants
# =============================================================================

NOT_A_SCHEMA_INSTANCE = "not-a-schema-instance"
BAD_MP = "bad-mp"
WRONG_SYSTEM_AXIOM = "wrong-system-axiom"


@dataclass(frozen=True)
class Meta:
    """Schematic letter inside an axiom schema."""
    name: str


_P, _Q, _R = Meta("P"), Meta("Q"), Meta("R")

SCHEMATA = {
    "ax1": Imp(_P, Imp(_Q, _P)),
    "ax2": Imp(Imp(_P, Imp(_Q, _R)), Imp(Imp(_P, _Q), Imp(_P, _R))),
    "ax3": Imp(Imp(Neg(_P), Neg(_Q)), Imp(_Q, _P)),
    "ax3'": Imp(Imp(Neg(_P), _Q), Imp(Imp(Neg(_P), Neg(_Q)), _P)),
}

AXIOMS = {
    SystemId.HLT: frozenset({"ax1", "ax2", "ax3"}),
    SystemId.HL3: frozenset({"ax1", "ax2", "ax3'"}),
}

_ARITY = {"ax1": 0, "ax2": 0, "ax3": 0, "ax3'": 0, "hyp": 1, "mp": 2}


def match_schema(pattern, f: Formula, bindings: Dict[str, Formula]) -> bool:
    """Match f against pattern, extending bindings for schematic letters."""
    if isinstance(pattern, Meta):
        if pattern.name in bindings:
            return bindings[pattern.name] == f
        bindings[pattern.name] = f
        return True
    if isinstance(pattern, Neg):
        return isinstance(f, Neg) and match_schema(pattern.body, f.body, bindings)
    if isinstance(pattern, Imp):
        return (
            isinstance(f, Imp)
            and match_schema(pattern.left, f.left, bindings)
            and match_schema(pattern.right, f.right, bindings)
        )
    return pattern == f


def instantiate(pattern, bindings: Dict[str, Formula]) -> Formula:
    if isinstance(pattern, Meta):
        return bindings[pattern.name]
    if isinstance(pattern, Neg):
        return Neg(instantiate(pattern.body, bindings))
    if isinstance(pattern, Imp):
        return Imp(instantiate(pattern.left, bindings), instantiate(pattern.right, bindings))
    return pattern


def schema_instance(name: str, p: Formula, q: Optional[Formula] = None, r: Optional[Formula] = None) -> Formula:
    bindings = {"P": p, "Q": q if q is not None else p, "R": r if r is not None else p}
    return instantiate(SCHEMATA[name], bindings)


@dataclass(frozen=True)
class HilbertJustification:
    rule: str
    refs: Tuple[int, ...] = ()

    def __str__(self):
        return " ".join([self.rule] + [str(n) for n in self.refs])


@dataclass(frozen=True)
class HilbertLine:
    number: int
    formula: Formula
    justification: HilbertJustification


@dataclass(frozen=True)
class HilbertScript:
    system: SystemId
    hypotheses: Tuple[Formula, ...]
    lines: Tuple[HilbertLine, ...]

    @property
    def conclusion(self) -> Optional[Formula]:
        return self.lines[-1].formula if self.lines else None


# =============================================================================
# Parsing and printing
# =============================================================================

def _parse_formula_at(text: str, line_no: int) -> Formula:
    try:
        return parse_formula(text)
    except FormulaSyntaxError as e:
        raise ScriptSyntaxError(str(e), line_no) from None


def parse_hilbert(text: str) -> HilbertScript:
    """
    Parse a Hilbert script.

    Raises:
        ScriptSyntaxError: malformed layout, numbering, references or alphabet
    """
    headers, body = split_header(text)
    system = None
    hypotheses: List[Formula] = []
    for key, value, line_no in headers:
        if key == "system":
            try:
                system = SystemId.parse(value)
            except ValueError as e:
                raise ScriptSyntaxError(str(e), line_no) from None
        elif key == "hyp":
            hypotheses.append(_parse_formula_at(value, line_no))
        else:
            raise ScriptSyntaxError("mode: headers belong to sequent scripts", line_no)
    if system is None:
        raise ScriptSyntaxError("Missing 'system:' header")
    if not system.is_hilbert:
        raise ScriptSyntaxError(f"System {system.value} is not a Hilbert system; use parse_script")
    for f in hypotheses:
        if not in_alphabet(f, system):
            raise ScriptSyntaxError(f"Hypothesis {f} is outside the alphabet of {system.value}")

    lines: List[HilbertLine] = []
    for line_no, raw in body:
        number_text, _, rest = raw.strip().partition(".")
        formula_text, sep, just_text = rest.partition(";")
        if not number_text.isdigit() or not sep:
            raise ScriptSyntaxError(f"Expected 'N. FORMULA ; JUSTIFICATION', got {raw.strip()!r}", line_no)
        number = int(number_text)
        if number != len(lines) + 1:
            raise ScriptSyntaxError(f"Expected line number {len(lines) + 1}, got {number}", line_no)
        formula = _parse_formula_at(formula_text.strip(), line_no)
        if not in_alphabet(formula, system):
            raise ScriptSyntaxError(f"{formula} is outside the alphabet of {system.value}", line_no)
        tokens = strip_comment_after_justification(just_text).split()
        if not tokens or tokens[0] not in _ARITY:
            raise ScriptSyntaxError(f"Unknown justification: {just_text.strip()!r}", line_no)
        rule, refs = tokens[0], tokens[1:]
        if len(refs) != _ARITY[rule] or not all(r.isdigit() for r in refs):
            raise ScriptSyntaxError(f"{rule} takes {_ARITY[rule]} numeric reference(s)", line_no)
        refs = tuple(int(r) for r in refs)
        if rule == "mp" and not all(1 <= r < number for r in refs):
            raise ScriptSyntaxError("mp must cite earlier lines", line_no)
        if rule == "hyp" and not 1 <= refs[0] <= len(hypotheses):
            raise ScriptSyntaxError(f"There is no hypothesis {refs[0]}", line_no)
        lines.append(HilbertLine(number, formula, HilbertJustification(rule, refs)))

    logger.debug(f"Parsed {system.value} script: {len(hypotheses)} hypotheses, {len(lines)} lines")
    return HilbertScript(system, tuple(hypotheses), tuple(lines))


def print_hilbert(script: HilbertScript, header: Optional[str] = None) -> str:
    out = []
    if header:
        out.append(f"# {header}")
    out.append(f"system: {script.system.value}")
    for f in script.hypotheses:
        out.append(f"hyp: {print_formula(f)}")
    for line in script.lines:
        out.append(f"{line.number}. {print_formula(line.formula)} ; {line.justification}")
    return "\n".join(out) + "\n"


# =============================================================================
# Checking
# =============================================================================

def _check_line(script: HilbertScript, line: HilbertLine) -> Optional[Violation]:
    rule, refs = line.justification.rule, line.justification.refs
    if rule in SCHEMATA:
        if rule not in AXIOMS[script.system]:
            return Violation(line.number, WRONG_SYSTEM_AXIOM, f"{rule} is not an axiom of {script.system.value}")
        if not match_schema(SCHEMATA[rule], line.formula, {}):
            return Violation(line.number, NOT_A_SCHEMA_INSTANCE, f"{line.formula} is not an instance of {rule}")
        return None
    if rule == "hyp":
        (k,) = refs
        if not 1 <= k <= len(script.hypotheses):
            return Violation(line.number, BAD_REFERENCE, f"there is no hypothesis {k}")
        if script.hypotheses[k - 1] != line.formula:
            return Violation(line.number, BAD_REFERENCE, f"hypothesis {k} is {script.hypotheses[k - 1]}")
        return None
    if rule == "mp":
        i, j = refs
        if not (1 <= i < line.number and 1 <= j < line.number):
            return Violation(line.number, BAD_REFERENCE, "mp must cite earlier lines")
        minor, major = script.lines[i - 1].formula, script.lines[j - 1].formula
        if not (isinstance(major, Imp) and major.left == minor and major.right == line.formula):
            return Violation(line.number, BAD_MP, f"{major} is not {minor} => {line.formula}")
        return None
    return Violation(line.number, NOT_A_SCHEMA_INSTANCE, f"unknown justification {rule}")


def check_hilbert(script: HilbertScript) -> CheckReport:
    """Accepted iff every line is a schema instance, a hypothesis or a correct mp step."""
    start_time = time.time()
    violations: List[Violation] = []
    stats: Dict[str, int] = {}
    for expected, line in enumerate(script.lines, start=1):
        if line.number != expected:
            violations.append(Violation(line.number, BAD_REFERENCE, f"expected line number {expected}"))
        if not in_alphabet(line.formula, script.system):
            violations.append(Violation(line.number, OUT_OF_ALPHABET, f"{line.formula} is outside {script.system.value}"))
        rule = line.justification.rule
        stats[rule] = stats.get(rule, 0) + 1
        violation = _check_line(script, line)
        if violation is not None:
            violations.append(violation)
    report = CheckReport(violations, stats, int((time.time() - start_time) * 1000))
    logger.debug(f"Checked {script.system.value} script ({len(script.lines)} lines): {report.verdict}")
    return report


# =============================================================================
# Building
# =============================================================================

class HilbertBuilder:
    """Collects Hilbert lines, reusing an earlier line when a formula repeats."""

    def __init__(self, system: SystemId, hypotheses: Sequence[Formula] = ()):
        self.system = system
        self.hypotheses = tuple(hypotheses)
        self._lines: List[Tuple[Formula, HilbertJustification]] = []
        self._index: Dict[Formula, int] = {}

    @classmethod
    def extending(cls, script: HilbertScript) -> "HilbertBuilder":
        hb = cls(script.system, script.hypotheses)
        for line in script.lines:
            hb.add(line.formula, line.justification)
        return hb

    def formula(self, n: int) -> Formula:
        return self._lines[n - 1][0]

    def find(self, f: Formula) -> int:
        return self._index[f]

    def add(self, f: Formula, just: HilbertJustification) -> int:
        if f in self._index:
            return self._index[f]
        self._lines.append((f, just))
        self._index[f] = len(self._lines)
        return len(self._lines)

    def axiom(self, name: str, p: Formula, q: Optional[Formula] = None, r: Optional[Formula] = None) -> int:
        if name not in AXIOMS[self.system]:
            raise HilbertError(f"{name} is not an axiom of {self.system.value}")
        return self.add(schema_instance(name, p, q, r), HilbertJustification(name))

    def hyp(self, f: Formula) -> int:
        if f not in self.hypotheses:
            raise HilbertError(f"{f} is not a hypothesis")
        return self.add(f, HilbertJustification("hyp", (self.hypotheses.index(f) + 1,)))

    def mp(self, i: int, j: int) -> int:
        minor, major = self.formula(i), self.formula(j)
        if not (isinstance(major, Imp) and major.left == minor):
            raise HilbertError(f"cannot apply modus ponens to {minor} and {major}")
        return self.add(major.right, HilbertJustification("mp", (i, j)))

    def splice(self, script: HilbertScript) -> int:
        """Append a script whose hypotheses are among ours; returns its conclusion's line."""
        mapping: Dict[int, int] = {}
        for line in script.lines:
            rule, refs = line.justification.rule, line.justification.refs
            if rule == "hyp":
                mapping[line.number] = self.hyp(line.formula)
            elif rule == "mp":
                mapping[line.number] = self.mp(mapping[refs[0]], mapping[refs[1]])
            else:
                mapping[line.number] = self.add(line.formula, line.justification)
        return mapping[script.lines[-1].number]

    def script(self, conclusion: Optional[int] = None) -> HilbertScript:
        """The collected lines; the conclusion line is restated last if needed."""
        lines = list(self._lines)
        if conclusion is not None and conclusion != len(lines):
            lines.append(lines[conclusion - 1])
        return HilbertScript(
            self.system,
            self.hypotheses,
            tuple(HilbertLine(i, f, j) for i, (f, j) in enumerate(lines, start=1)),
        )

    # -------------------------------------------------------------------------
    # Lemmas shared by both systems
    # -------------------------------------------------------------------------

    def identity(self, p: Formula) -> int:
        """P => P in five lines."""
        a1 = self.axiom("ax1", p, Imp(p, p))
        a2 = self.axiom("ax2", p, Imp(p, p), p)
        step = self.mp(a1, a2)
        return self.mp(self.axiom("ax1", p, p), step)

    def weaken(self, n: int, a: Formula) -> int:
        """A => B from B."""
        b = self.formula(n)
        return self.mp(n, self.axiom("ax1", b, a))

    def mp_under(self, i: int, j: int) -> int:
        """A => C from A => B and A => (B => C)."""
        ab, abc = self.formula(i), self.formula(j)
        a, b, c = ab.left, ab.right, abc.right.right
        return self.mp(i, self.mp(j, self.axiom("ax2", a, b, c)))

    def lift(self, n: int, d: Formula) -> int:
        """(D => U) => (D => V) from U => V."""
        uv = self.formula(n)
        return self.mp(self.weaken(n, d), self.axiom("ax2", d, uv.left, uv.right))

    def syllogism(self, i: int, j: int) -> int:
        """X => Z from X => Y and Y => Z."""
        x = self.formula(i).left
        return self.mp(i, self.lift(j, x))

    def lift_through(self, n: int, context: Sequence[Formula]) -> int:
        """curry(Δ, U) => curry(Δ, V) from U => V."""
        for d in reversed(tuple(context)):
            n = self.lift(n, d)
        return n

    def lift2_through(self, n: int, context: Sequence[Formula]) -> int:
        """curry(Δ, U) => (curry(Δ, V) => curry(Δ, W)) from U => (V => W)."""
        for d in reversed(tuple(context)):
            vw = self.formula(n).right
            distribute = self.axiom("ax2", d, vw.left, vw.right)
            n = self.syllogism(self.lift(n, d), distribute)
        return n


# =============================================================================
# Deduction theorem
# =============================================================================

def _require_accepted(script: HilbertScript):
    report = check_hilbert(script)
    if not report.accepted:
        raise HilbertError(f"input script is rejected: {report.violations[0].render()}")


def deduction_theorem(script: HilbertScript) -> HilbertScript:
    """
    Discharge the last hypothesis P: from a proof of Q under Γ, P build a
    proof of P => Q under Γ that never cites P.

    Raises:
        HilbertError: no hypothesis to discharge, or the input is rejected
    """
    if not script.hypotheses:
        raise HilbertError("there is no hypothesis to discharge")
    if not script.lines:
        raise HilbertError("cannot discharge a hypothesis from an empty proof")
    _require_accepted(script)
    p = script.hypotheses[-1]
    hb = HilbertBuilder(script.system, script.hypotheses[:-1])
    mapping: Dict[int, int] = {}
    for line in script.lines:
        rule, refs = line.justification.rule, line.justification.refs
        if rule == "hyp" and line.formula == p:
            mapping[line.number] = hb.identity(p)
        elif rule == "hyp":
            mapping[line.number] = hb.weaken(hb.hyp(line.formula), p)
        elif rule == "mp":
            mapping[line.number] = hb.mp_under(mapping[refs[0]], mapping[refs[1]])
        else:
            mapping[line.number] = hb.weaken(hb.add(line.formula, line.justification), p)
    result = hb.script(mapping[script.lines[-1].number])
    logger.debug(f"Discharged {p}: {len(script.lines)} -> {len(result.lines)} lines")
    return result


def discharge_all(script: HilbertScript) -> HilbertScript:
    while script.hypotheses:
        script = deduction_theorem(script)
    return script


def substitute_hilbert(script: HilbertScript, mapping: Dict[str, Formula]) -> HilbertScript:
    return HilbertScript(
        script.system,
        tuple(substitute(f, mapping) for f in script.hypotheses),
        tuple(HilbertLine(l.number, substitute(l.formula, mapping), l.justification) for l in script.lines),
    )


# =============================================================================
# Interderivability of ax3 and ax3'
# =============================================================================

def _golden_hilbert(name: str) -> HilbertScript:
    from .corpus import get_corpus

    return parse_hilbert(get_corpus().load(name))


def contraposition_lemma(p: Formula, q: Formula) -> HilbertScript:
    """HLT theorem ~Q => (Q => ~(P => P))."""
    golden = _golden_hilbert("hlt_lemma.hil")
    return discharge_all(substitute_hilbert(golden, {"p": p, "q": q}))


def hlt_strong_reductio(p: Formula, q: Formula) -> HilbertScript:
    """HLT theorem (~P => Q) => ((~P => ~Q) => P), routed through the contraposition lemma."""
    not_p = Neg(p)
    refuted = Neg(Imp(p, p))
    hb = HilbertBuilder(SystemId.HLT, (Imp(not_p, q), Imp(not_p, Neg(q)), not_p))
    q_line = hb.mp(hb.hyp(not_p), hb.hyp(Imp(not_p, q)))
    not_q_line = hb.mp(hb.hyp(not_p), hb.hyp(Imp(not_p, Neg(q))))
    lemma = hb.splice(contraposition_lemma(p, q))
    hb.mp(q_line, hb.mp(not_q_line, lemma))
    # ~P => ~(P => P) under the first two hypotheses
    hb = HilbertBuilder.extending(deduction_theorem(hb.script(hb.find(refuted))))
    step = hb.mp(hb.find(Imp(not_p, refuted)), hb.axiom("ax3", p, Imp(p, p)))
    conclusion = hb.mp(hb.identity(p), step)
    return discharge_all(hb.script(conclusion))


def hl3_contraposition(p: Formula, q: Formula) -> HilbertScript:
    """HL3 theorem (~P => ~Q) => (Q => P)."""
    golden = _golden_hilbert("hl3_contraposition.hil")
    return discharge_all(substitute_hilbert(golden, {"p": p, "q": q}))


# =============================================================================
# G to HL3
# =============================================================================

def _dedupe(formulas: Sequence[Formula]) -> Tuple[Formula, ...]:
    seen: List[Formula] = []
    for f in formulas:
        if f not in seen:
            seen.append(f)
    return tuple(seen)


def g_to_hilbert(script: ProofScript) -> HilbertScript:
    """
    Translate an accepted G script into an HL3 proof.

    Every G line Δ -> B becomes the HL3 formula curry(Δ, B); premise lines
    become hypotheses. The last line is then unfolded with the conclusion's
    antecedent members as hypotheses.

    This is the rule-by-rule map read through the curried form. An axiom
    P -> P would become the hypothesis P, and imp-intro would discharge it
    with deduction_theorem; carried as curry(Δ, B), the axiom is already
    the discharged P => P (identity) and imp-intro leaves the formula
    unchanged. Both routes give the same HL3 theorems.

    Raises:
        HilbertError: the input is not a G script or the output is rejected
    """
    if script.system is not SystemId.G:
        raise HilbertError(f"expected a G script, got {script.system.value}")
    start_time = time.time()
    strict = elaborate_script(script)
    final = strict.conclusion
    premises = [curry(l.sequent.antecedent, l.sequent.succedent) for l in strict.premise_lines]
    hb = HilbertBuilder(SystemId.HL3, _dedupe(premises + list(final.antecedent)))

    mapping: Dict[int, int] = {}
    for line in strict.lines:
        rule = line.justification.rule
        refs = [mapping[r] for r in line.justification.premises]
        s = line.sequent
        if rule == "axiom":
            n = hb.identity(s.succedent)
        elif rule == "premise":
            n = hb.hyp(curry(s.antecedent, s.succedent))
        elif rule == "imp-intro":
            n = refs[0]
        elif rule == "thin-front":
            n = hb.weaken(refs[0], s.antecedent[0])
        elif rule == "thin-back":
            delta, added = s.antecedent[:-1], s.antecedent[-1]
            n = hb.mp(refs[0], hb.lift_through(hb.axiom("ax1", s.succedent, added), delta))
        elif rule == "imp-elim":
            major = strict.line(line.justification.premises[1]).sequent.succedent
            lifted = hb.lift2_through(hb.identity(major), s.antecedent)
            n = hb.mp(refs[0], hb.mp(refs[1], lifted))
        elif rule == "raa":
            first = strict.line(line.justification.premises[0]).sequent
            lifted = hb.lift2_through(hb.axiom("ax3'", s.succedent, first.succedent), s.antecedent)
            n = hb.mp(refs[1], hb.mp(refs[0], lifted))
        else:
            raise HilbertError(f"no Hilbert counterpart for {rule}")
        mapping[line.number] = n

    n = mapping[strict.lines[-1].number]
    for d in final.antecedent:
        n = hb.mp(hb.hyp(d), n)
    result = hb.script(n)
    report = check_hilbert(result)
    if not report.accepted:
        logger.error(f"G to HL3 output rejected:\n{report.render()}")
        raise HilbertError(f"translation produced a rejected proof: {report.violations[0].render()}")
    logger.info(
        f"Translated G to HL3: {len(script.lines)} lines -> {len(result.lines)} lines "
        f"in {int((time.time() - start_time) * 1000)}ms"
    )
    return result


# =============================================================================
# Hilbert to G
# =============================================================================

_G_TEMPLATES = {
    "ax1": "g_ax1.gnd",
    "ax2": "g_ax2.gnd",
    "ax3": "g_ax3.gnd",
    "ax3'": "g_ax3p.gnd",
}


@lru_cache(maxsize=None)
def axiom_template(name: str) -> ProofScript:
    """Golden G theorem script for an axiom schema at atoms p, q, r."""
    from .corpus import get_corpus
    from .scripts import parse_script

    return parse_script(get_corpus().load(_G_TEMPLATES[name]))


def hilbert_to_g(script: HilbertScript) -> ProofScript:
    """
    Translate an accepted Hilbert script into a G script concluding
    `hypotheses -> final formula`.

    Raises:
        HilbertError: the input is rejected or the output fails the kernel
    """
    _require_accepted(script)
    if not script.lines:
        raise HilbertError("cannot translate an empty proof")
    context = script.hypotheses
    b = ProofBuilder(SystemId.G)
    mapping: Dict[int, int] = {}
    for line in script.lines:
        rule, refs = line.justification.rule, line.justification.refs
        if rule in SCHEMATA:
            bindings: Dict[str, Formula] = {}
            match_schema(SCHEMATA[rule], line.formula, bindings)
            atoms = {"p": bindings["P"], "q": bindings.get("Q", bindings["P"]), "r": bindings.get("R", bindings["P"])}
            n = b.splice(substitute_script(axiom_template(rule), atoms))
            if context:
                n = thin(b, n, context)
        elif rule == "hyp":
            n = proj(b, context, line.formula)
        else:
            n = b.imp_elim(mapping[refs[0]], mapping[refs[1]])
        mapping[line.number] = n

    result = b.script()
    expected = Sequent(tuple(context), script.conclusion)
    report = check_script(result)
    if not report.accepted or result.conclusion != expected:
        logger.error(f"Hilbert to G output rejected:\n{report.render()}")
        raise HilbertError("translation produced a rejected G proof")
    logger.info(f"Translated {script.system.value} to G: {len(script.lines)} -> {len(result.lines)} lines")
    return result
