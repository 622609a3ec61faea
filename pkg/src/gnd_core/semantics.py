"""
Classical truth-table semantics.

Valuations are swept over variables in lexicographic order, false before
true, first variable most significant; the first falsifying valuation is
the countermodel reported.
"""
import itertools
from collections.abc import Mapping
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, Optional

from .errors import UnboundVariableError
from .formulas import Conj, Falsum, Formula, Imp, Neg, Sequent, Var, sequent_variables, variables


class Valuation(Mapping):
    """Immutable assignment of truth values to variable names."""

    def __init__(self, assignment: Optional[Dict[str, bool]] = None, **values: bool):
        self._values: Dict[str, bool] = dict(assignment or {}, **values)

    def __getitem__(self, name: str) -> bool:
        return self._values[name]

    def __iter__(self):
        return iter(self._values)

    def __len__(self):
        return len(self._values)

    def __hash__(self):
        return hash(frozenset(self._values.items()))

    def __repr__(self):
        return f"Valuation({self.render()})"

    def render(self) -> str:
        return " ".join(f"{name}={'T' if self._values[name] else 'F'}" for name in sorted(self._values))


@dataclass(frozen=True)
class Decision:
    """Outcome of a validity question: valid, or a falsifying valuation."""
    countermodel: Optional[Valuation] = None

    @property
    def valid(self) -> bool:
        return self.countermodel is None

    def render(self) -> str:
        if self.valid:
            return "valid"
        return f"countermodel: {self.countermodel.render()}"


VALID = Decision()


def evaluate(f: Formula, v: Mapping) -> bool:
    """
    Classical truth value of f under v.

    Raises:
        UnboundVariableError: f has a variable v does not assign
    """
    if isinstance(f, Var):
        try:
            return bool(v[f.name])
        except KeyError:
            raise UnboundVariableError(f"Variable {f.name!r} has no truth value") from None
    if isinstance(f, Neg):
        return not evaluate(f.body, v)
    if isinstance(f, Imp):
        return not evaluate(f.left, v) or evaluate(f.right, v)
    if isinstance(f, Conj):
        return evaluate(f.left, v) and evaluate(f.right, v)
    if isinstance(f, Falsum):
        return False
    raise ValueError(f"Unknown formula structure: {f!r}")


def valuations(names: Iterable[str]) -> Iterator[Valuation]:
    """All valuations of the given variables, in sweep order."""
    ordered = sorted(set(names))
    for values in itertools.product((False, True), repeat=len(ordered)):
        yield Valuation(dict(zip(ordered, values)))


def tautology(f: Formula) -> Decision:
    for v in valuations(variables(f)):
        if not evaluate(f, v):
            return Decision(v)
    return VALID


def sequent_valid(s: Sequent) -> Decision:
    """Valid iff every valuation making the whole antecedent true makes the succedent true."""
    for v in valuations(sequent_variables(s)):
        if all(evaluate(a, v) for a in s.antecedent) and not evaluate(s.succedent, v):
            return Decision(v)
    return VALID


def equivalent(f: Formula, g: Formula) -> bool:
    return all(evaluate(f, v) == evaluate(g, v) for v in valuations(variables(f, g)))
