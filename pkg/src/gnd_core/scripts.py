"""
Proof scripts: numbered sequent lines with margin justifications.

Script file layout:

    # comment
    system: G
    mode: macro
    1. p -> p ; axiom
    2. p, ~q -> p ; thin-back 1   # trailing comment

Parsing checks the layout, numbering, references and alphabet. Whether a
rule was applied correctly is left to the kernel.
"""
import logging
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, List, Optional, Tuple

from .errors import AlphabetError, FormulaSyntaxError, ScriptSyntaxError
from .formula_parser import parse_sequent
from .formulas import Sequent, SystemId, print_sequent, sequent_in_alphabet

logger = logging.getLogger(__name__)


class Mode(str, Enum):
    STRICT = "strict"
    MACRO = "macro"


@dataclass(frozen=True)
class RuleSpec:
    token: str
    arity: int
    systems: FrozenSet[SystemId]
    derived: bool = False


_G = SystemId.G
_GBOT = SystemId.GBOT
_C = SystemId.C


def _spec(token: str, arity: int, *systems: SystemId, derived: bool = False) -> Tuple[str, RuleSpec]:
    return token, RuleSpec(token, arity, frozenset(systems), derived)


# Fixed catalogue of rule tokens, primitive first then derived
RULES: Dict[str, RuleSpec] = dict([
    _spec("axiom", 0, _G, _GBOT, _C),
    _spec("premise", 0, _G, _GBOT, _C),
    _spec("thin-front", 1, _G, _GBOT, _C),
    _spec("thin-back", 1, _G, _GBOT, _C),
    _spec("imp-intro", 1, _G, _GBOT),
    _spec("imp-elim", 2, _G, _GBOT),
    _spec("raa", 2, _G, _C),
    _spec("raa-bot", 1, _GBOT),
    _spec("conj-intro", 2, _C),
    _spec("conj-elim-l", 1, _C),
    _spec("conj-elim-r", 1, _C),
    _spec("cut", 2, _C),
    _spec("raa-short", 1, _C),
    # multiplicative elimination: recognized, admitted nowhere
    _spec("mult-imp-elim", 2),

    _spec("thin", 1, _G, _GBOT, _C, derived=True),
    _spec("proj", 0, _G, _GBOT, _C, derived=True),
    _spec("perm", 1, _G, _GBOT, derived=True),
    _spec("struct", 1, _G, _GBOT, derived=True),
    _spec("contr", 1, _G, _GBOT, derived=True),
    _spec("cut*", 2, _G, _GBOT, derived=True),
    _spec("excontra", 2, _G, _C, derived=True),
    _spec("dne", 0, _G, _C, derived=True),
    _spec("weak-raa", 2, _G, _C, derived=True),
    _spec("dn-intro", 1, _G, _C, derived=True),
    _spec("case", 2, _G, derived=True),
    _spec("c-imp-intro", 1, _C, derived=True),
    _spec("c-imp-elim", 2, _C, derived=True),
    _spec("raa-via-short", 2, _C, derived=True),
    _spec("raa-short-via-raa", 1, _C, derived=True),
])

PRIMITIVE_RULES = frozenset(t for t, s in RULES.items() if not s.derived)
DERIVED_RULES = frozenset(t for t, s in RULES.items() if s.derived)


@dataclass(frozen=True)
class Justification:
    rule: str
    premises: Tuple[int, ...] = ()

    def __str__(self):
        return " ".join([self.rule] + [str(n) for n in self.premises])


@dataclass(frozen=True)
class ScriptLine:
    number: int
    sequent: Sequent
    justification: Justification


@dataclass(frozen=True)
class ProofScript:
    system: SystemId
    mode: Mode
    lines: Tuple[ScriptLine, ...]

    @property
    def premise_lines(self) -> Tuple[ScriptLine, ...]:
        return tuple(l for l in self.lines if l.justification.rule == "premise")

    @property
    def is_theorem_script(self) -> bool:
        return not self.premise_lines

    @property
    def conclusion(self) -> Optional[Sequent]:
        return self.lines[-1].sequent if self.lines else None

    @property
    def uses_macros(self) -> bool:
        return any(l.justification.rule in DERIVED_RULES for l in self.lines)

    def line(self, number: int) -> ScriptLine:
        return self.lines[number - 1]


# =============================================================================
# Parsing
# =============================================================================

_HEADER_RE = re.compile(r"^\s*(system|mode|hyp)\s*:\s*(.*?)\s*$")
_BODY_RE = re.compile(r"^\s*(\d+)\.\s+(.*?)\s*;\s*(.*?)\s*$")
_REFS_SPLIT = re.compile(r"[\s,]+")


def strip_comment_after_justification(text: str) -> str:
    """Drop a '#' comment that follows the justification."""
    return text.split("#", 1)[0].strip()


def split_header(text: str):
    """
    Split script text into header entries and body lines.

    Returns:
        (headers, body) where headers is a list of (key, value, line_no) and
        body a list of (line_no, raw text)
    """
    headers = []
    body = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        header = _HEADER_RE.match(stripped)
        if header and not body:
            headers.append((header.group(1), header.group(2), line_no))
            continue
        body.append((line_no, raw))
    return headers, body


def _parse_justification(text: str, line_no: int) -> Justification:
    tokens = [t for t in _REFS_SPLIT.split(strip_comment_after_justification(text)) if t]
    if not tokens:
        raise ScriptSyntaxError("Missing justification", line_no)
    rule, refs = tokens[0], tokens[1:]
    if rule not in RULES:
        raise ScriptSyntaxError(f"Unknown rule: {rule}", line_no)
    try:
        premises = tuple(int(r) for r in refs)
    except ValueError:
        raise ScriptSyntaxError(f"Premise references must be line numbers, got {refs}", line_no) from None
    expected = RULES[rule].arity
    if len(premises) != expected:
        raise ScriptSyntaxError(
            f"Rule {rule} takes {expected} premise reference(s), got {len(premises)}", line_no
        )
    return Justification(rule, premises)


def parse_script(text: str) -> ProofScript:
    """
    Parse a sequent proof script.

    Raises:
        ScriptSyntaxError: malformed layout, numbering or references
        AlphabetError: a formula outside the declared system's alphabet
    """
    headers, body = split_header(text)
    system: Optional[SystemId] = None
    mode = Mode.MACRO
    for key, value, line_no in headers:
        if key == "system":
            try:
                system = SystemId.parse(value)
            except ValueError as e:
                raise ScriptSyntaxError(str(e), line_no) from None
        elif key == "mode":
            try:
                mode = Mode(value)
            except ValueError:
                raise ScriptSyntaxError(f"Unknown mode: {value!r}", line_no) from None
        else:
            raise ScriptSyntaxError("hyp: headers belong to Hilbert scripts", line_no)
    if system is None:
        raise ScriptSyntaxError("Missing 'system:' header")
    if system.is_hilbert:
        raise ScriptSyntaxError(f"System {system.value} is a Hilbert system; use parse_hilbert")

    lines: List[ScriptLine] = []
    for line_no, raw in body:
        match = _BODY_RE.match(raw)
        if not match:
            raise ScriptSyntaxError(f"Expected 'N. SEQUENT ; RULE [REFS]', got {raw.strip()!r}", line_no)
        number = int(match.group(1))
        if number != len(lines) + 1:
            raise ScriptSyntaxError(f"Expected line number {len(lines) + 1}, got {number}", line_no)
        try:
            seq = parse_sequent(match.group(2))
        except FormulaSyntaxError as e:
            raise ScriptSyntaxError(str(e), line_no) from None
        if not sequent_in_alphabet(seq, system):
            raise AlphabetError(
                f"Sequent {print_sequent(seq)} is outside the alphabet of system {system.value}", line_no
            )
        justification = _parse_justification(match.group(3), line_no)
        for ref in justification.premises:
            if not 1 <= ref < number:
                raise ScriptSyntaxError(f"Premise reference {ref} does not point to an earlier line", line_no)
        lines.append(ScriptLine(number, seq, justification))

    logger.debug(f"Parsed {system.value} script with {len(lines)} lines (mode={mode.value})")
    return ProofScript(system, mode, tuple(lines))


# =============================================================================
# Printing
# =============================================================================

def print_script(script: ProofScript, header: Optional[str] = None) -> str:
    """Render a script in the file layout accepted by parse_script."""
    out = []
    if header:
        out.append(f"# {header}")
    out.append(f"system: {script.system.value}")
    out.append(f"mode: {script.mode.value}")
    for line in script.lines:
        out.append(f"{line.number}. {print_sequent(line.sequent)} ; {line.justification}")
    return "\n".join(out) + "\n"


def renumber(lines, system: SystemId, mode: Mode) -> ProofScript:
    """Build a ProofScript from (Sequent, Justification) pairs numbered 1..n."""
    return ProofScript(
        system,
        mode,
        tuple(ScriptLine(i, s, j) for i, (s, j) in enumerate(lines, start=1)),
    )
