"""
Formulas, sequents and the systems they live in.

Formulas are immutable trees over propositional variables built with
negation (~), implication (=>), conjunction (.) and falsum (#). Each system
admits only some of these constructors.
"""
import re
from dataclasses import dataclass
from enum import Enum
from typing import FrozenSet, Iterator, List, Tuple, Type, Union

VAR_PATTERN = re.compile(r"[a-z][a-z0-9_]*\Z")


@dataclass(frozen=True)
class Var:
    name: str

    def __post_init__(self):
        if not VAR_PATTERN.match(self.name):
            raise ValueError(f"Invalid variable name: {self.name!r}")

    def __str__(self):
        return print_formula(self)


@dataclass(frozen=True)
class Neg:
    body: "Formula"

    def __str__(self):
        return print_formula(self)


@dataclass(frozen=True)
class Imp:
    left: "Formula"
    right: "Formula"

    def __str__(self):
        return print_formula(self)


@dataclass(frozen=True)
class Conj:
    left: "Formula"
    right: "Formula"

    def __str__(self):
        return print_formula(self)


@dataclass(frozen=True)
class Falsum:
    def __str__(self):
        return "#"


Formula = Union[Var, Neg, Imp, Conj, Falsum]

FALSUM = Falsum()


class SystemId(str, Enum):
    """The calculi handled by gnd-core."""
    G = "G"
    GBOT = "GBot"
    C = "C"
    HLT = "HLT"
    HL3 = "HL3"

    @property
    def alphabet(self) -> FrozenSet[Type]:
        return ALPHABETS[self]

    @property
    def is_hilbert(self) -> bool:
        return self in (SystemId.HLT, SystemId.HL3)

    @classmethod
    def parse(cls, text: str) -> "SystemId":
        for system in cls:
            if system.value == text.strip():
                return system
        raise ValueError(f"Unknown system: {text!r}. Must be one of: {[s.value for s in cls]}")


ALPHABETS = {
    SystemId.G: frozenset({Var, Neg, Imp}),
    SystemId.GBOT: frozenset({Var, Imp, Falsum}),
    SystemId.C: frozenset({Var, Neg, Conj}),
    SystemId.HLT: frozenset({Var, Neg, Imp}),
    SystemId.HL3: frozenset({Var, Neg, Imp}),
}


@dataclass(frozen=True)
class Sequent:
    """Ordered antecedent and a single succedent: Δ -> P."""
    antecedent: Tuple[Formula, ...]
    succedent: Formula

    def __str__(self):
        return print_sequent(self)

    def formulas(self) -> Iterator[Formula]:
        yield from self.antecedent
        yield self.succedent


def sequent(antecedent, succedent: Formula) -> Sequent:
    """Build a Sequent from any iterable antecedent."""
    return Sequent(tuple(antecedent), succedent)


# =============================================================================
# Structural helpers
# =============================================================================

def subformulas(f: Formula) -> Iterator[Formula]:
    """Pre-order walk over every node of f."""
    stack = [f]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, Neg):
            stack.append(node.body)
        elif isinstance(node, (Imp, Conj)):
            stack.append(node.right)
            stack.append(node.left)


def size(f: Formula) -> int:
    """Number of nodes."""
    return sum(1 for _ in subformulas(f))


def variables(*formulas: Formula) -> List[str]:
    """Variable names ordered by first occurrence."""
    seen: List[str] = []
    for f in formulas:
        for node in subformulas(f):
            if isinstance(node, Var) and node.name not in seen:
                seen.append(node.name)
    return seen


def sequent_variables(s: Sequent) -> List[str]:
    return variables(*s.formulas())


def in_alphabet(f: Formula, system: SystemId) -> bool:
    allowed = system.alphabet
    return all(type(node) in allowed for node in subformulas(f))


def sequent_in_alphabet(s: Sequent, system: SystemId) -> bool:
    return all(in_alphabet(f, system) for f in s.formulas())


def curry(antecedent, succedent: Formula) -> Formula:
    """Δ₁ => (… => (Δₙ => P))."""
    result = succedent
    for f in reversed(tuple(antecedent)):
        result = Imp(f, result)
    return result


def substitute(f: Formula, mapping) -> Formula:
    """Simultaneous substitution of formulas for variable names."""
    if isinstance(f, Var):
        return mapping.get(f.name, f)
    if isinstance(f, Neg):
        return Neg(substitute(f.body, mapping))
    if isinstance(f, Imp):
        return Imp(substitute(f.left, mapping), substitute(f.right, mapping))
    if isinstance(f, Conj):
        return Conj(substitute(f.left, mapping), substitute(f.right, mapping))
    return f


# =============================================================================
# Printing
# =============================================================================

# Binding strength: implication < conjunction < prefix/atoms
_IMP_LEVEL = 1
_CONJ_LEVEL = 2
_ATOM_LEVEL = 3


def _level(f: Formula) -> int:
    if isinstance(f, Imp):
        return _IMP_LEVEL
    if isinstance(f, Conj):
        return _CONJ_LEVEL
    return _ATOM_LEVEL


def _print(f: Formula, minimum: int) -> str:
    if isinstance(f, Var):
        text = f.name
    elif isinstance(f, Falsum):
        text = "#"
    elif isinstance(f, Neg):
        text = "~" + _print(f.body, _ATOM_LEVEL)
    elif isinstance(f, Conj):
        # left-associative
        text = f"{_print(f.left, _CONJ_LEVEL)} . {_print(f.right, _ATOM_LEVEL)}"
    elif isinstance(f, Imp):
        # right-associative
        text = f"{_print(f.left, _CONJ_LEVEL)} => {_print(f.right, _IMP_LEVEL)}"
    else:
        raise ValueError(f"Unknown formula structure: {f!r}")
    if _level(f) < minimum:
        return f"({text})"
    return text


def print_formula(f: Formula) -> str:
    """Render f with the fewest parentheses that still reparse to f."""
    return _print(f, _IMP_LEVEL)


def print_sequent(s: Sequent) -> str:
    left = ", ".join(print_formula(f) for f in s.antecedent)
    if left:
        return f"{left} -> {print_formula(s.succedent)}"
    return f"-> {print_formula(s.succedent)}"
