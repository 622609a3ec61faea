"""
Tests for derived rules and the elaborator
"""
import random
from typing import List, Tuple

import pytest

from gnd_core.builder import ProofBuilder
from gnd_core.derived_rules import (
    MACROS, MacroInstance, case, contr, dn_intro, dne, elaborate_script, elaborate_step, proj, thin,
)
from gnd_core.errors import MacroNotInSystem, ShapeMismatch
from gnd_core.formula_parser import parse_sequent
from gnd_core.formulas import Conj, Neg, Sequent, SystemId, Var
from gnd_core.kernel import check_script
from gnd_core.scripts import DERIVED_RULES, RULES, Mode, parse_script
from tests.oracles import CONNECTIVES, formulas_up_to

P, Q, R = Var("p"), Var("q"), Var("r")


def _seq(text):
    return parse_sequent(text)


# =============================================================================
# Random instances, one generator per derived rule
# =============================================================================

class _Instances:
    def __init__(self, rng: random.Random, system: SystemId):
        self.rng = rng
        self.pool = formulas_up_to(3, ("p", "q", "r"), CONNECTIVES[system])

    def f(self):
        return self.rng.choice(self.pool)

    def ctx(self, low=0, high=3):
        return tuple(self.f() for _ in range(self.rng.randint(low, high)))

    def make(self, token: str) -> MacroInstance:
        d, p, q = self.ctx(), self.f(), self.f()
        if token == "thin":
            target = self.ctx() + d + self.ctx()
            return MacroInstance(token, (Sequent(d, q),), Sequent(target, q))
        if token == "proj":
            return MacroInstance(token, (), Sequent(d + (p,) + self.ctx(), p))
        if token == "struct":
            target = list(d + self.ctx())
            self.rng.shuffle(target)
            return MacroInstance(token, (Sequent(d, q),), Sequent(tuple(target), q))
        if token == "perm":
            d = self.ctx(2, 4)
            k = self.rng.randrange(len(d) - 1)
            swapped = d[:k] + (d[k + 1], d[k]) + d[k + 2:]
            return MacroInstance(token, (Sequent(d, q),), Sequent(swapped, q))
        if token == "contr":
            return MacroInstance(token, (Sequent(d + (p, p), q),), Sequent(d + (p,), q))
        if token == "cut*":
            g = self.ctx(1, 2)
            return MacroInstance(token, (Sequent(g, p), Sequent(d + (p,), q)), Sequent(d + g, q))
        if token == "excontra":
            return MacroInstance(token, (Sequent(d, q), Sequent(d, Neg(q))), Sequent(d, p))
        if token == "dne":
            return MacroInstance(token, (), Sequent((Neg(Neg(p)),), p))
        if token == "weak-raa":
            dp = d + (p,)
            return MacroInstance(token, (Sequent(dp, q), Sequent(dp, Neg(q))), Sequent(d, Neg(p)))
        if token == "dn-intro":
            return MacroInstance(token, (Sequent(d, p),), Sequent(d, Neg(Neg(p))))
        if token == "case":
            return MacroInstance(token, (Sequent(d + (q,), p), Sequent(d + (Neg(q),), p)), Sequent(d, p))
        if token == "c-imp-intro":
            return MacroInstance(token, (Sequent(d + (p,), q),), Sequent(d, Neg(Conj(p, Neg(q)))))
        if token == "c-imp-elim":
            return MacroInstance(token, (Sequent(d, p), Sequent(d, Neg(Conj(p, Neg(q))))), Sequent(d, q))
        if token == "raa-via-short":
            dn = d + (Neg(p),)
            return MacroInstance(token, (Sequent(dn, q), Sequent(dn, Neg(q))), Sequent(d, p))
        if token == "raa-short-via-raa":
            return MacroInstance(token, (Sequent(d + (Neg(p),), Conj(q, Neg(q))),), Sequent(d, p))
        raise ValueError(token)


def _cases() -> List[Tuple[str, SystemId]]:
    return sorted(
        (token, system)
        for token in DERIVED_RULES
        for system in RULES[token].systems
    )


class TestElaborateStep:
    """Every derived rule, instantiated at random in every system that has it"""

    def test_every_derived_token_has_an_expansion(self):
        assert set(MACROS) == set(DERIVED_RULES)

    @pytest.mark.parametrize("token,system", _cases())
    def test_expansions_check_and_keep_the_conclusion(self, token, system):
        gen = _Instances(random.Random(f"{token}/{system.value}"), system)
        for _ in range(200):
            instance = gen.make(token)
            expansion = elaborate_step(system, instance)
            assert expansion.mode is Mode.STRICT
            assert not expansion.uses_macros
            assert expansion.conclusion == instance.conclusion
            assert [l.sequent for l in expansion.premise_lines] == list(instance.premises)
            report = check_script(expansion)
            assert report.accepted, f"{token} in {system.value}:\n{report.render()}"

    def test_proj_expansion(self):
        expansion = elaborate_step(SystemId.G, MacroInstance("proj", (), _seq("q, p, r -> p")))
        assert [(str(l.sequent), l.justification.rule) for l in expansion.lines] == [
            ("p -> p", "axiom"),
            ("p, r -> p", "thin-back"),
            ("q, p, r -> p", "thin-front"),
        ]

    def test_contraction_expansion(self):
        instance = MacroInstance("contr", (_seq("r, p, p -> q"),), _seq("r, p -> q"))
        expansion = elaborate_step(SystemId.G, instance)
        assert check_script(expansion).accepted
        assert expansion.conclusion == _seq("r, p -> q")
        assert [l.justification.rule for l in expansion.lines][:2] == ["premise", "imp-intro"]

    def test_dne_expansion_is_the_five_line_proof(self, corpus):
        expansion = elaborate_step(SystemId.G, MacroInstance("dne", (), _seq("~~p -> p")))
        golden = parse_script(corpus.load("dne.gnd"))
        assert [l.sequent for l in expansion.lines] == [l.sequent for l in golden.lines]

    @pytest.mark.parametrize("token,name", [
        ("excontra", "excontra.gnd"),
        ("weak-raa", "weak_raa.gnd"),
        ("c-imp-intro", "c_imp_intro.gnd"),
        ("c-imp-elim", "c_imp_elim.gnd"),
    ])
    def test_expansion_matches_the_golden_derivation(self, corpus, token, name):
        golden = elaborate_script(parse_script(corpus.load(name)))
        instance = MacroInstance(token, tuple(l.sequent for l in golden.premise_lines), golden.conclusion)
        expansion = elaborate_step(golden.system, instance)

        def steps(script):
            return [(l.sequent, l.justification.rule) for l in script.lines if l.justification.rule != "premise"]

        assert [l.sequent for l in expansion.premise_lines] == list(instance.premises)
        assert steps(expansion) == steps(golden)

    def test_shape_mismatch(self):
        with pytest.raises(ShapeMismatch):
            elaborate_step(SystemId.G, MacroInstance("contr", (_seq("r, p, q -> q"),), _seq("r, p -> q")))

    def test_wrong_conclusion(self):
        with pytest.raises(ShapeMismatch):
            elaborate_step(SystemId.G, MacroInstance("dn-intro", (_seq("r -> p"),), _seq("r -> ~p")))

    def test_macro_not_in_system(self):
        with pytest.raises(MacroNotInSystem):
            elaborate_step(SystemId.C, MacroInstance("case", (_seq("q -> p"), _seq("~q -> p")), _seq("-> p")))
        with pytest.raises(MacroNotInSystem):
            elaborate_step(SystemId.GBOT, MacroInstance("dne", (), _seq("(p => #) => # -> p")))


class TestElaborateScript:

    def test_paradox2_expands_to_the_eight_line_proof(self, corpus):
        macro = parse_script(corpus.load("paradox2_macro.gnd"))
        strict = parse_script(corpus.load("paradox2.gnd"))
        elaborated = elaborate_script(macro)
        assert elaborated.lines == strict.lines
        assert elaborated.mode is Mode.STRICT

    @pytest.mark.parametrize("name", ["contraction.gnd", "weak_raa.gnd", "c_imp_intro.gnd", "g_ax2.gnd", "g_ax3p.gnd"])
    def test_golden_macro_scripts_elaborate(self, corpus, name):
        script = parse_script(corpus.load(name))
        elaborated = elaborate_script(script)
        assert check_script(elaborated).accepted
        assert elaborated.conclusion == script.conclusion
        assert [l.sequent for l in elaborated.premise_lines] == [l.sequent for l in script.premise_lines]

    def test_idempotent(self, corpus):
        once = elaborate_script(parse_script(corpus.load("c_imp_intro.gnd")))
        assert elaborate_script(once) == once

    def test_strict_script_is_returned_unchanged(self, corpus):
        script = parse_script(corpus.load("dne.gnd"))
        assert elaborate_script(script) is script

    def test_error_carries_line_number(self):
        script = parse_script("system: G\n1. p -> p ; axiom\n2. q, r -> p ; thin 1\n")
        with pytest.raises(ShapeMismatch) as exc:
            elaborate_script(script)
        assert exc.value.line == 2

    def test_macro_outside_system_carries_line_number(self):
        script = parse_script("system: C\n1. q -> p ; premise\n2. ~q -> p ; premise\n3. -> p ; case 1 2\n")
        with pytest.raises(MacroNotInSystem) as exc:
            elaborate_script(script)
        assert exc.value.line == 3

    def test_system_is_checked_before_the_premise_shapes(self):
        # ~p does not fit c-imp-elim either; the system gate must win
        script = parse_script("system: G\n1. r -> p ; premise\n2. r -> ~p ; premise\n3. r -> q ; c-imp-elim 1 2\n")
        with pytest.raises(MacroNotInSystem) as exc:
            elaborate_script(script)
        assert exc.value.line == 3

    def test_identity_thinning_restates_the_conclusion(self):
        script = parse_script("system: G\n1. r -> p ; premise\n2. r -> p ; thin 1\n")
        elaborated = elaborate_script(script)
        assert check_script(elaborated).accepted
        assert elaborated.conclusion == _seq("r -> p")
        assert not elaborated.uses_macros

    def test_restates_a_conclusion_reached_earlier(self):
        script = parse_script(
            "system: G\n1. r -> p ; premise\n2. r, q -> p ; thin-back 1\n3. r -> p ; struct 1\n"
        )
        elaborated = elaborate_script(script)
        assert check_script(elaborated).accepted
        assert elaborated.lines[-1].sequent == _seq("r -> p")
        assert elaborated.lines[-1].justification.rule == "imp-elim"


class TestBuilderMacros:
    """Macro mode records one line, expansion mode only primitives"""

    def test_macro_mode_single_lines(self):
        b = ProofBuilder(SystemId.G)
        n = proj(b, (Q, P, R), P)
        m = thin(b, n, (Neg(Q), Q, P, R))
        assert len(b) == 2
        assert b.sequent(m) == Sequent((Neg(Q), Q, P, R), P)
        assert b.script().mode is Mode.MACRO
        assert check_script(b.script()).accepted

    def test_expansion_mode_has_no_macros(self):
        b = ProofBuilder(SystemId.G, expand=True)
        n = dne(b, P)
        dn_intro(b, n)
        script = b.script()
        assert not script.uses_macros
        assert check_script(script).accepted

    def test_case_in_builder(self):
        b = ProofBuilder(SystemId.G)
        pos = b.premise(_seq("r, q -> p"))
        neg = b.premise(_seq("r, ~q -> p"))
        n = case(b, pos, neg)
        assert b.sequent(n) == _seq("r -> p")
        assert check_script(b.script()).accepted

    def test_contr_rejects_distinct_formulas(self):
        b = ProofBuilder(SystemId.G)
        n = b.premise(_seq("p, q -> q"))
        with pytest.raises(ShapeMismatch):
            contr(b, n)

    def test_macro_gate_by_system(self):
        b = ProofBuilder(SystemId.GBOT)
        with pytest.raises(MacroNotInSystem):
            dne(b, P)
