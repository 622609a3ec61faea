"""
Formula Parser for gnd-core
Parses the ASCII surface syntax into Formula and Sequent values

Supported notation:
- Negation: ~p
- Conjunction: p . q  (alias p & q), left-associative
- Implication: p => q, right-associative
- Falsum: #
- Sequents: p, q -> r  (empty antecedent: -> p)

Precedence, tightest first: ~ then . then =>.
"""
from functools import lru_cache

from lark import Lark, Transformer, v_args
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, UnexpectedToken

from .errors import FormulaSyntaxError
from .formulas import FALSUM, Conj, Formula, Imp, Neg, Sequent, Var

# Deeper formulas are rejected at parse time
MAX_FORMULA_DEPTH = 200

GRAMMAR = r"""
formula_start: formula
sequent: antecedent "->" formula
antecedent: (formula ("," formula)*)?

?formula: conj "=>" formula   -> imp
        | conj
?conj: conj ("." | "&") unary -> conj
     | unary
?unary: "~" unary             -> neg
      | atom
?atom: VAR                    -> var
     | "#"                    -> falsum
     | "(" formula ")"

VAR: /[a-z][a-z0-9_]*/

%import common.WS
%ignore WS
"""


@v_args(inline=True)
class _FormulaBuilder(Transformer):
    """Turns the lark tree into Formula values."""

    def formula_start(self, f):
        return f

    def imp(self, left, right):
        return Imp(left, right)

    def conj(self, left, right):
        return Conj(left, right)

    def neg(self, body):
        return Neg(body)

    def var(self, token):
        return Var(str(token))

    def falsum(self):
        return FALSUM

    def sequent(self, antecedent, succedent):
        return Sequent(antecedent, succedent)

    def antecedent(self, *formulas):
        return tuple(formulas)


@lru_cache(maxsize=1)
def _parser() -> Lark:
    return Lark(
        GRAMMAR,
        start=["formula_start", "sequent"],
        parser="lalr",
        transformer=_FormulaBuilder(),
        maybe_placeholders=False,
    )


def _raise_syntax_error(text: str, error: UnexpectedInput):
    column = getattr(error, "column", None)
    if isinstance(error, UnexpectedCharacters):
        char = text[error.pos_in_stream] if error.pos_in_stream < len(text) else ""
        raise FormulaSyntaxError(f"Unknown token {char!r}", column) from None
    if isinstance(error, UnexpectedEOF):
        raise FormulaSyntaxError("Unexpected end of input", len(text) + 1) from None
    if isinstance(error, UnexpectedToken):
        if error.token.type == "$END":
            raise FormulaSyntaxError("Unexpected end of input", len(text) + 1) from None
        raise FormulaSyntaxError(f"Unexpected {str(error.token)!r}", column) from None
    raise FormulaSyntaxError(f"Syntax error: {error}", column) from None


def formula_depth(f: Formula) -> int:
    """Nesting depth of f; a variable or # has depth 1."""
    deepest = 0
    stack = [(f, 1)]
    while stack:
        node, depth = stack.pop()
        deepest = max(deepest, depth)
        if isinstance(node, Neg):
            stack.append((node.body, depth + 1))
        elif isinstance(node, (Imp, Conj)):
            stack.append((node.left, depth + 1))
            stack.append((node.right, depth + 1))
    return deepest


def _validate_depth(f: Formula):
    if formula_depth(f) > MAX_FORMULA_DEPTH:
        raise FormulaSyntaxError(f"Formula exceeds maximum nesting depth of {MAX_FORMULA_DEPTH}")


def parse_formula(text: str) -> Formula:
    """
    Parse a formula.

    Raises:
        FormulaSyntaxError: with the 1-based column of the problem, or when
            the formula is nested deeper than MAX_FORMULA_DEPTH
    """
    try:
        f = _parser().parse(text, start="formula_start")
    except UnexpectedInput as e:
        _raise_syntax_error(text, e)
    _validate_depth(f)
    return f


def parse_sequent(text: str) -> Sequent:
    """Parse `[formula ("," formula)*] "->" formula`."""
    try:
        s = _parser().parse(text, start="sequent")
    except UnexpectedInput as e:
        _raise_syntax_error(text, e)
    for f in s.antecedent + (s.succedent,):
        _validate_depth(f)
    return s
