"""
gnd - command-line front end

Usage:
    gnd check FILE [--strict] [--porcelain]
    gnd prove "SEQUENT" [--system G|GBot|C] [--out FILE]
    gnd elaborate FILE [--out FILE]
    gnd translate --from SYS --to SYS FILE [--out FILE]
    gnd decide "FORMULA_OR_SEQUENT" [--int] [--porcelain]
    gnd corpus

Exit codes: 0 success, 1 proof rejected, 2 usage or parse error,
3 semantic negative (countermodel, not valid).
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, ValidationError, model_validator

from .completeness import prove
from .config import Settings, configure_logging
from .corpus import get_corpus
from .derived_rules import elaborate_script
from .errors import GndError, TranslationError
from .formula_parser import parse_formula, parse_sequent
from .formulas import Sequent, SystemId
from .hilbert import check_hilbert, g_to_hilbert, hilbert_to_g, parse_hilbert, print_hilbert
from .intuitionistic import int_provable, int_sequent_provable
from .kernel import check_script
from .scripts import Mode, ProofScript, parse_script, print_script, split_header
from .semantics import sequent_valid, tautology
from .translations import TranslationId, translate_proof

logger = logging.getLogger(__name__)

# =============================================================================
# Constants
# =============================================================================

EXIT_OK = 0
EXIT_REJECTED = 1
EXIT_USAGE = 2
EXIT_NEGATIVE = 3

Subcommand = Literal["check", "prove", "elaborate", "translate", "decide", "corpus"]


class Invocation(BaseModel):
    """One validated gnd command line."""
    subcommand: Subcommand
    target: Optional[str] = None
    system: SystemId = SystemId.G
    intuitionistic: bool = False
    source_system: Optional[SystemId] = None
    target_system: Optional[SystemId] = None
    out: Optional[str] = None
    strict: bool = False
    porcelain: bool = False

    @model_validator(mode="after")
    def _check_flags(self) -> "Invocation":
        cmd = self.subcommand
        if cmd != "corpus" and not self.target:
            raise ValueError(f"{cmd} needs a positional argument")
        if self.intuitionistic and cmd != "decide":
            raise ValueError("--int only applies to decide")
        if self.strict and cmd != "check":
            raise ValueError("--strict only applies to check")
        if self.porcelain and cmd not in ("check", "decide"):
            raise ValueError("--porcelain only applies to check and decide")
        if self.out and cmd not in ("prove", "elaborate", "translate"):
            raise ValueError("--out only applies to prove, elaborate and translate")
        if self.system is not SystemId.G and cmd != "prove":
            raise ValueError("--system only applies to prove")
        if cmd == "prove" and self.system.is_hilbert:
            raise ValueError("prove writes G, GBot or C scripts")
        if cmd == "translate":
            if self.source_system is None or self.target_system is None:
                raise ValueError("translate needs --from and --to")
        elif self.source_system is not None or self.target_system is not None:
            raise ValueError("--from/--to only apply to translate")
        return self


# =============================================================================
# Input
# =============================================================================

def read_script_text(target: str) -> str:
    """Read FILE, '-' for stdin; names missing on disk are looked up in the golden corpus."""
    if target == "-":
        return sys.stdin.read()
    path = Path(target)
    if path.exists():
        return path.read_text(encoding="utf-8")
    bundled = get_corpus().find(target)
    if bundled is None:
        raise FileNotFoundError(f"File not found: {target}")
    logger.info(f"Using golden script {bundled}")
    return bundled.read_text(encoding="utf-8")


def _declared_system(text: str) -> Optional[SystemId]:
    headers, _ = split_header(text)
    for key, value, _ in headers:
        if key == "system":
            try:
                return SystemId.parse(value)
            except ValueError:
                return None
    return None


def _parse_goal(text: str) -> Sequent:
    if "->" in text:
        return parse_sequent(text)
    return Sequent((), parse_formula(text))


# =============================================================================
# Subcommands
# =============================================================================

def _check(inv: Invocation) -> Tuple[int, str]:
    text = read_script_text(inv.target)
    system = _declared_system(text)
    if system is not None and system.is_hilbert:
        report = check_hilbert(parse_hilbert(text))
    else:
        script = parse_script(text)
        if inv.strict:
            script = ProofScript(script.system, Mode.STRICT, script.lines)
        report = check_script(script)
    rendered = report.render_porcelain() if inv.porcelain else report.render()
    return (EXIT_OK if report.accepted else EXIT_REJECTED), rendered


def _prove(inv: Invocation) -> Tuple[int, str]:
    goal = _parse_goal(inv.target)
    result = prove(goal)
    if not isinstance(result, ProofScript):
        return EXIT_NEGATIVE, f"countermodel: {result.render()}"
    if inv.system is not SystemId.G:
        result = translate_proof(TranslationId.between(SystemId.G, inv.system), result)
    return EXIT_OK, print_script(result, header="generated-by gnd prove")


def _elaborate(inv: Invocation) -> Tuple[int, str]:
    script = parse_script(read_script_text(inv.target))
    return EXIT_OK, print_script(elaborate_script(script), header="generated-by gnd elaborate")


def _translate(inv: Invocation) -> Tuple[int, str]:
    text = read_script_text(inv.target)
    source, target = inv.source_system, inv.target_system
    declared = _declared_system(text)
    if declared is not source:
        raise TranslationError(f"script declares system {declared.value if declared else '?'}, not {source.value}")
    header = "generated-by gnd translate"

    if source.is_hilbert:
        if target is not SystemId.G:
            raise TranslationError(f"No translation from {source.value} to {target.value}")
        hilbert = parse_hilbert(text)
        report = check_hilbert(hilbert)
        if not report.accepted:
            return EXIT_REJECTED, report.render()
        return EXIT_OK, print_script(hilbert_to_g(hilbert), header=header)

    script = parse_script(text)
    report = check_script(script)
    if not report.accepted:
        return EXIT_REJECTED, report.render()
    if target is SystemId.HL3 and source is SystemId.G:
        return EXIT_OK, print_hilbert(g_to_hilbert(script), header=header)
    return EXIT_OK, print_script(translate_proof(TranslationId.between(source, target), script), header=header)


def _decide(inv: Invocation) -> Tuple[int, str]:
    goal = _parse_goal(inv.target)
    if inv.intuitionistic:
        if goal.antecedent:
            valid = int_sequent_provable(goal)
        else:
            valid = int_provable(goal.succedent)
        verdict = "int-valid" if valid else "int-invalid"
        text = f"verdict={verdict}" if inv.porcelain else verdict
        return (EXIT_OK if valid else EXIT_NEGATIVE), text

    decision = sequent_valid(goal) if goal.antecedent else tautology(goal.succedent)
    if inv.porcelain:
        lines = [f"verdict={'valid' if decision.valid else 'invalid'}"]
        if not decision.valid:
            lines += [f"value.{name}={'T' if decision.countermodel[name] else 'F'}" for name in sorted(decision.countermodel)]
        text = "\n".join(lines)
    else:
        text = decision.render()
    return (EXIT_OK if decision.valid else EXIT_NEGATIVE), text


def _corpus(inv: Invocation) -> Tuple[int, str]:
    names = get_corpus().list_available()
    return EXIT_OK, "\n".join(["Golden scripts:"] + [f"  {name}" for name in names])


_HANDLERS = {
    "check": _check,
    "prove": _prove,
    "elaborate": _elaborate,
    "translate": _translate,
    "decide": _decide,
    "corpus": _corpus,
}


def run(inv: Invocation) -> Tuple[int, str]:
    """
    Execute one invocation.

    Returns:
        (exit code, text for stdout)

    Raises:
        GndError, OSError: bad input; main() maps these to exit 2
    """
    return _HANDLERS[inv.subcommand](inv)


# =============================================================================
# Entry point
# =============================================================================

def _system(text: str) -> SystemId:
    try:
        return SystemId.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gnd",
        description="Check, synthesize, elaborate and translate sequent natural deduction proofs",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  gnd check paradox2.gnd
  gnd prove "~~p -> p" | gnd elaborate - | gnd check --strict -
  gnd translate --from G --to C proof.gnd --out proof_c.gnd
  gnd decide --int "~~p => p"
        """
    )
    parser.add_argument("--verbose", "-v", action="store_true", help="Log progress to stderr")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    check = sub.add_parser("check", help="Check a proof script")
    check.add_argument("target", help="Script file, '-' for stdin, or golden script name")
    check.add_argument("--strict", action="store_true", help="Admit primitive rules only")
    check.add_argument("--porcelain", action="store_true", help="Line-oriented key=value output")

    prove_cmd = sub.add_parser("prove", help="Synthesize a proof or print a countermodel")
    prove_cmd.add_argument("target", help="Sequent, e.g. \"~~p -> p\"")
    prove_cmd.add_argument("--system", type=_system, default=SystemId.G, help="G (default), GBot or C")
    prove_cmd.add_argument("--out", "-o", help="Write the script to FILE")

    elaborate = sub.add_parser("elaborate", help="Expand derived rules into primitive steps")
    elaborate.add_argument("target", help="Script file or '-'")
    elaborate.add_argument("--out", "-o", help="Write the script to FILE")

    translate = sub.add_parser("translate", help="Translate a proof between systems")
    translate.add_argument("target", help="Script file or '-'")
    translate.add_argument("--from", dest="source_system", type=_system, required=True)
    translate.add_argument("--to", dest="target_system", type=_system, required=True)
    translate.add_argument("--out", "-o", help="Write the script to FILE")

    decide = sub.add_parser("decide", help="Decide validity of a formula or sequent")
    decide.add_argument("target", help="Formula or sequent")
    decide.add_argument("--int", dest="intuitionistic", action="store_true", help="Intuitionistic validity")
    decide.add_argument("--porcelain", action="store_true", help="Line-oriented key=value output")

    sub.add_parser("corpus", help="List golden scripts")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    try:
        settings = Settings.from_env()
    except ValidationError as e:
        print(f"Error: invalid environment: {e.errors()[0]['msg']}", file=sys.stderr)
        return EXIT_USAGE
    configure_logging("INFO" if args.verbose else settings.log_level)

    fields = {k: v for k, v in vars(args).items() if k != "verbose" and v is not None}
    try:
        inv = Invocation(**fields)
    except ValidationError as e:
        print(f"Error: {e.errors()[0]['msg']}", file=sys.stderr)
        return EXIT_USAGE

    try:
        code, text = run(inv)
    except (GndError, OSError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE

    if inv.out and code == EXIT_OK:
        try:
            Path(inv.out).write_text(text, encoding="utf-8")
        except OSError as e:
            print(f"Error writing {inv.out}: {e}", file=sys.stderr)
            return EXIT_USAGE
    else:
        print(text, end="" if text.endswith("\n") else "\n")
    return code


def cli():
    sys.exit(main())


if __name__ == "__main__":
    cli()
