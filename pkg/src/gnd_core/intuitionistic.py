"""
Decision procedure for intuitionistic propositional logic.

Contraction-free backward search: invertible rules first, then the
non-invertible split on implications whose antecedent is itself an
implication. Every rule lowers the weight of the goal, so the search
terminates without loop checking. Negation is read as implication into #.
"""
import logging
from functools import lru_cache
from typing import FrozenSet

from .formulas import FALSUM, Conj, Falsum, Formula, Imp, Neg, Sequent, Var

logger = logging.getLogger(__name__)


def to_implicational(f: Formula) -> Formula:
    """Replace every ~A by A => #."""
    if isinstance(f, Neg):
        return Imp(to_implicational(f.body), FALSUM)
    if isinstance(f, Imp):
        return Imp(to_implicational(f.left), to_implicational(f.right))
    if isinstance(f, Conj):
        return Conj(to_implicational(f.left), to_implicational(f.right))
    return f


@lru_cache(maxsize=1 << 16)
def _provable(gamma: FrozenSet[Formula], goal: Formula) -> bool:
    if FALSUM in gamma or goal in gamma:
        return True

    # invertible right rules
    if isinstance(goal, Imp):
        return _provable(gamma | {goal.left}, goal.right)
    if isinstance(goal, Conj):
        return _provable(gamma, goal.left) and _provable(gamma, goal.right)

    # invertible left rules
    for f in gamma:
        rest = gamma - {f}
        if isinstance(f, Conj):
            return _provable(rest | {f.left, f.right}, goal)
        if isinstance(f, Imp):
            a, b = f.left, f.right
            if isinstance(a, Falsum):
                return _provable(rest, goal)
            if isinstance(a, Var) and a in gamma:
                return _provable(rest | {b}, goal)
            if isinstance(a, Conj):
                return _provable(rest | {Imp(a.left, Imp(a.right, b))}, goal)

    # (C => D) => B on the left: the only place the search branches
    for f in gamma:
        if isinstance(f, Imp) and isinstance(f.left, Imp):
            rest = gamma - {f}
            c, d, b = f.left.left, f.left.right, f.right
            if _provable(rest | {Imp(d, b)}, Imp(c, d)) and _provable(rest | {b}, goal):
                return True
    return False


def int_sequent_provable(s: Sequent) -> bool:
    gamma = frozenset(to_implicational(f) for f in s.antecedent)
    return _provable(gamma, to_implicational(s.succedent))


def int_provable(f: Formula) -> bool:
    """True iff f is a theorem of intuitionistic propositional logic."""
    result = _provable(frozenset(), to_implicational(f))
    logger.debug(f"int_provable({f}) = {result}")
    return result
