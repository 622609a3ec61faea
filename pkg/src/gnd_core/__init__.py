"""
gnd-core: natural deduction in sequent form for classical propositional logic

Checks proof scripts in the calculi G, GBot and C, synthesizes proofs of
valid sequents, expands derived rules, and translates proofs between the
calculi and the Hilbert systems HLT and HL3.
"""

from .formulas import Var, Neg, Imp, Conj, Falsum, FALSUM, Sequent, SystemId
from .formula_parser import parse_formula, parse_sequent
from .scripts import Mode, ProofScript, parse_script, print_script
from .kernel import CheckReport, Violation, check_script, check_step
from .builder import ProofBuilder
from .derived_rules import elaborate_script, elaborate_step
from .semantics import Decision, Valuation, sequent_valid, tautology
from .completeness import prove
from .translations import TranslationId, translate_proof
from .hilbert import HilbertScript, check_hilbert, g_to_hilbert, hilbert_to_g, parse_hilbert
from .intuitionistic import int_provable
from .errors import GndError

__version__ = "0.1.0"

__all__ = [
    # Formulas
    "Var",
    "Neg",
    "Imp",
    "Conj",
    "Falsum",
    "FALSUM",
    "Sequent",
    "SystemId",
    "parse_formula",
    "parse_sequent",
    # Scripts and checking
    "Mode",
    "ProofScript",
    "parse_script",
    "print_script",
    "CheckReport",
    "Violation",
    "check_script",
    "check_step",
    "ProofBuilder",
    "elaborate_script",
    "elaborate_step",
    # Semantics and synthesis
    "Decision",
    "Valuation",
    "sequent_valid",
    "tautology",
    "prove",
    "int_provable",
    # Translations
    "TranslationId",
    "translate_proof",
    "HilbertScript",
    "check_hilbert",
    "g_to_hilbert",
    "hilbert_to_g",
    "parse_hilbert",
    "GndError",
    "__version__",
]
