"""
Untrusted line builder for sequent proof scripts.

The builder computes the conclusion of each primitive rule from its
premises, so callers only say which rule to apply. In macro mode derived
rules are recorded as single lines; in expansion mode they are expanded into
primitive steps (see derived_rules). Everything built here is checked by
the kernel afterwards.
"""
from typing import Dict, Iterable, List, Optional, Tuple

from .errors import ShapeMismatch
from .formulas import FALSUM, Conj, Falsum, Formula, Imp, Neg, Sequent, SystemId, print_sequent, substitute
from .scripts import Justification, Mode, ProofScript, ScriptLine


class ProofBuilder:
    """Accumulates numbered (Sequent, Justification) lines."""

    def __init__(self, system: SystemId, expand: bool = False):
        self.system = system
        self.expand = expand
        self._lines: List[Tuple[Sequent, Justification]] = []

    def __len__(self):
        return len(self._lines)

    def sequent(self, n: int) -> Sequent:
        return self._lines[n - 1][0]

    def emit(self, s: Sequent, rule: str, *refs: int) -> int:
        self._lines.append((s, Justification(rule, tuple(refs))))
        return len(self._lines)

    def script(self) -> ProofScript:
        mode = Mode.STRICT if self.expand else Mode.MACRO
        return ProofScript(
            self.system,
            mode,
            tuple(ScriptLine(i, s, j) for i, (s, j) in enumerate(self._lines, start=1)),
        )

    def splice(self, script: ProofScript, premise_lines: Optional[Dict[int, int]] = None) -> int:
        """
        Append another script's lines, renumbering references.

        Args:
            script: script to append
            premise_lines: maps the script's premise line numbers to lines of
                this builder proving the same sequent; unmapped premises are
                copied as premises

        Returns:
            the number of the spliced script's last line
        """
        premise_lines = premise_lines or {}
        mapping: Dict[int, int] = {}
        for line in script.lines:
            just = line.justification
            if just.rule == "premise" and line.number in premise_lines:
                mapping[line.number] = premise_lines[line.number]
                continue
            refs = tuple(mapping[r] for r in just.premises)
            mapping[line.number] = self.emit(line.sequent, just.rule, *refs)
        return mapping[script.lines[-1].number]

    # -------------------------------------------------------------------------
    # Primitive rules
    # -------------------------------------------------------------------------

    def premise(self, s: Sequent) -> int:
        return self.emit(s, "premise")

    def axiom(self, p: Formula) -> int:
        return self.emit(Sequent((p,), p), "axiom")

    def thin_front(self, i: int, p: Formula) -> int:
        s = self.sequent(i)
        return self.emit(Sequent((p,) + s.antecedent, s.succedent), "thin-front", i)

    def thin_back(self, i: int, p: Formula) -> int:
        s = self.sequent(i)
        return self.emit(Sequent(s.antecedent + (p,), s.succedent), "thin-back", i)

    def imp_intro(self, i: int) -> int:
        s = self.sequent(i)
        if not s.antecedent:
            raise ShapeMismatch(f"imp-intro needs a nonempty antecedent: {print_sequent(s)}")
        return self.emit(Sequent(s.antecedent[:-1], Imp(s.antecedent[-1], s.succedent)), "imp-intro", i)

    def imp_elim(self, i: int, j: int) -> int:
        minor, major = self.sequent(i), self.sequent(j)
        if minor.antecedent != major.antecedent:
            raise ShapeMismatch(f"imp-elim contexts differ: {print_sequent(minor)} / {print_sequent(major)}")
        if not (isinstance(major.succedent, Imp) and major.succedent.left == minor.succedent):
            raise ShapeMismatch(f"imp-elim cannot combine {print_sequent(minor)} with {print_sequent(major)}")
        return self.emit(Sequent(minor.antecedent, major.succedent.right), "imp-elim", i, j)

    def raa(self, i: int, j: int) -> int:
        first, second = self.sequent(i), self.sequent(j)
        if (
            first.antecedent != second.antecedent
            or not first.antecedent
            or not isinstance(first.antecedent[-1], Neg)
            or second.succedent != Neg(first.succedent)
        ):
            raise ShapeMismatch(f"raa cannot combine {print_sequent(first)} with {print_sequent(second)}")
        return self.emit(Sequent(first.antecedent[:-1], first.antecedent[-1].body), "raa", i, j)

    def raa_bot(self, i: int) -> int:
        s = self.sequent(i)
        last = s.antecedent[-1] if s.antecedent else None
        if not (isinstance(last, Imp) and isinstance(last.right, Falsum) and isinstance(s.succedent, Falsum)):
            raise ShapeMismatch(f"raa-bot needs Δ, P => # -> #, got {print_sequent(s)}")
        return self.emit(Sequent(s.antecedent[:-1], last.left), "raa-bot", i)

    def conj_intro(self, i: int, j: int) -> int:
        left, right = self.sequent(i), self.sequent(j)
        if left.antecedent != right.antecedent:
            raise ShapeMismatch(f"conj-intro contexts differ: {print_sequent(left)} / {print_sequent(right)}")
        return self.emit(Sequent(left.antecedent, Conj(left.succedent, right.succedent)), "conj-intro", i, j)

    def conj_elim_l(self, i: int) -> int:
        s = self.sequent(i)
        if not isinstance(s.succedent, Conj):
            raise ShapeMismatch(f"conj-elim-l needs a conjunction: {print_sequent(s)}")
        return self.emit(Sequent(s.antecedent, s.succedent.left), "conj-elim-l", i)

    def conj_elim_r(self, i: int) -> int:
        s = self.sequent(i)
        if not isinstance(s.succedent, Conj):
            raise ShapeMismatch(f"conj-elim-r needs a conjunction: {print_sequent(s)}")
        return self.emit(Sequent(s.antecedent, s.succedent.right), "conj-elim-r", i)

    def cut(self, i: int, j: int) -> int:
        minor, major = self.sequent(i), self.sequent(j)
        if len(minor.antecedent) != 1 or not major.antecedent or major.antecedent[-1] != minor.succedent:
            raise ShapeMismatch(f"cut cannot combine {print_sequent(minor)} with {print_sequent(major)}")
        return self.emit(Sequent(major.antecedent[:-1] + minor.antecedent, major.succedent), "cut", i, j)

    def raa_short(self, i: int) -> int:
        s = self.sequent(i)
        last = s.antecedent[-1] if s.antecedent else None
        c = s.succedent
        if not (isinstance(last, Neg) and isinstance(c, Conj) and c.right == Neg(c.left)):
            raise ShapeMismatch(f"raa-short needs Δ, ~P -> Q . ~Q, got {print_sequent(s)}")
        return self.emit(Sequent(s.antecedent[:-1], last.body), "raa-short", i)


def substitute_script(script: ProofScript, mapping: Dict[str, Formula]) -> ProofScript:
    """Apply a simultaneous variable substitution to every line of a script."""
    lines = []
    for line in script.lines:
        s = line.sequent
        lines.append(ScriptLine(
            line.number,
            Sequent(tuple(substitute(f, mapping) for f in s.antecedent), substitute(s.succedent, mapping)),
            line.justification,
        ))
    return ProofScript(script.system, script.mode, tuple(lines))
