"""
Proof synthesis for valid G sequents.

For every valuation of the variables a proof of `literals -> F` (or `~F`)
is built by structural recursion on F; the variables are then discharged
one at a time with the `case` rule until the literal context is empty.
Proofs grow exponentially with the number of variables.
"""
import logging
import time
from dataclasses import dataclass
from typing import List, Tuple, Union

from .builder import ProofBuilder
from .derived_rules import case, dn_intro, excontra, proj, thin, weak_raa
from .errors import AlphabetError
from .formulas import Formula, Imp, Neg, Sequent, SystemId, Var, curry, print_sequent, sequent_in_alphabet, variables
from .scripts import ProofScript
from .semantics import Valuation, evaluate, sequent_valid

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LiteralContext:
    valuation: Valuation
    literals: Tuple[Formula, ...]


def literal_context(v: Valuation) -> LiteralContext:
    """x for true variables, ~x for false ones, in lexicographic variable order."""
    literals = tuple(Var(name) if v[name] else Neg(Var(name)) for name in sorted(v))
    return LiteralContext(v, literals)


def _literal(b: ProofBuilder, context: Tuple[Formula, ...], lit: Formula) -> int:
    if context == (lit,):
        return b.axiom(lit)
    return proj(b, context, lit)


def _kalmar(b: ProofBuilder, f: Formula, v: Valuation, context: Tuple[Formula, ...]) -> int:
    """Prove context -> f if f is true under v, else context -> ~f."""
    if isinstance(f, Var):
        return _literal(b, context, f if v[f.name] else Neg(f))

    if isinstance(f, Neg):
        inner = _kalmar(b, f.body, v, context)
        if evaluate(f.body, v):
            return dn_intro(b, inner)
        return inner

    if isinstance(f, Imp):
        a, c = f.left, f.right
        if evaluate(c, v):
            n = b.thin_back(_kalmar(b, c, v, context), a)
            return b.imp_intro(n)
        if not evaluate(a, v):
            with_a = context + (a,)
            not_a = b.thin_back(_kalmar(b, a, v, context), a)
            c_line = excontra(b, _literal(b, with_a, a), not_a, c)
            return b.imp_intro(c_line)
        # a true, c false: context, a => c -> c contradicts context -> ~c
        with_f = context + (f,)
        a_line = b.thin_back(_kalmar(b, a, v, context), f)
        c_line = b.imp_elim(a_line, proj(b, with_f, f))
        not_c = b.thin_back(_kalmar(b, c, v, context), f)
        return weak_raa(b, c_line, not_c)

    raise ValueError(f"{f} is outside the alphabet of G")


def kalmar_line(f: Formula, v: Valuation) -> ProofScript:
    """
    Macro-mode G script proving `literals(v) -> f` when f is true under v,
    otherwise `literals(v) -> ~f`.
    """
    b = ProofBuilder(SystemId.G)
    _kalmar(b, f, v, literal_context(v).literals)
    return b.script()


def _discharge(b: ProofBuilder, f: Formula, names: List[str], values: Tuple[bool, ...]) -> int:
    """Prove literals(values) -> f, splitting the remaining variables by cases."""
    if len(values) == len(names):
        v = Valuation(dict(zip(names, values)))
        return _kalmar(b, f, v, literal_context(v).literals)
    pos = _discharge(b, f, names, values + (True,))
    neg = _discharge(b, f, names, values + (False,))
    return case(b, pos, neg)


def prove(s: Sequent) -> Union[ProofScript, Valuation]:
    """
    Prove a G sequent or refute it.

    Returns:
        an accepted macro-mode G script ending in exactly s if s is valid,
        otherwise the first falsifying valuation

    Raises:
        AlphabetError: s is not in the alphabet of G
    """
    if not sequent_in_alphabet(s, SystemId.G):
        raise AlphabetError(f"{print_sequent(s)} is outside the alphabet of G")
    decision = sequent_valid(s)
    if not decision.valid:
        logger.info(f"No proof of {print_sequent(s)}: countermodel {decision.countermodel.render()}")
        return decision.countermodel

    start_time = time.time()
    b = ProofBuilder(SystemId.G)
    f = curry(s.antecedent, s.succedent)
    names = sorted(variables(f))
    n = _discharge(b, f, names, ())
    if s.antecedent:
        n = thin(b, n, s.antecedent)
        for d in s.antecedent:
            n = b.imp_elim(proj(b, s.antecedent, d), n)
    script = b.script()
    logger.info(
        f"Synthesized proof of {print_sequent(s)}: {len(script.lines)} lines, "
        f"{len(names)} variables, {int((time.time() - start_time) * 1000)}ms"
    )
    return script
