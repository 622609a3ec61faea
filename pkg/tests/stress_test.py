#!/usr/bin/env python3
"""
Full-size sweeps for gnd-core.

The unit suite runs each sweep at a reduced size; this harness runs them at
full size, times every item and reports failures.

Sweeps:
1. Completeness: every {~, =>}-formula with <= 9 nodes on p, q
2. Hypothetical sequents: 1000 seeded samples
3. Translations: G proofs of every theorem pushed through C and GBot and back
4. Hilbert round trip: G -> HL3 -> G for every theorem
5. Intuitionistic: Kripke agreement and the {~, .} fragment at <= 11 nodes,
   directly and through the CtoG image
6. Soundness fuzz: 10000 random accepted G, GBot and C scripts, some with premises

Run:
    python tests/stress_test.py
    python tests/stress_test.py --nodes 8 --scripts 2000 --workers 8
"""
import argparse
import multiprocessing
import os
import random
import statistics
import sys
import time
import tracemalloc
from dataclasses import dataclass, field
from typing import Callable, List, Sequence, Tuple

# Add src and the repository root to path for local testing
ROOT = os.path.join(os.path.dirname(__file__), '..')
sys.path.insert(0, os.path.join(ROOT, 'src'))
sys.path.insert(0, ROOT)

from gnd_core import (  # noqa: E402
    ProofScript, Sequent, SystemId, TranslationId, Valuation, check_hilbert, check_script, elaborate_script,
    g_to_hilbert, hilbert_to_g, int_provable, prove, sequent_valid, tautology, translate_proof,
)
from gnd_core.formulas import Conj, Imp, Neg, sequent_variables  # noqa: E402
from gnd_core.semantics import equivalent, evaluate, valuations  # noqa: E402
from gnd_core.translations import translate_formula  # noqa: E402
from tests.oracles import formulas_up_to, kripke_valid, random_script  # noqa: E402


@dataclass
class SweepResult:
    name: str
    items: int
    failures: List[str] = field(default_factory=list)
    total_time_sec: float = 0.0
    latencies_ms: List[float] = field(default_factory=list)
    memory_peak_mb: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def p50(self) -> float:
        return statistics.median(self.latencies_ms) if self.latencies_ms else 0

    @property
    def p99(self) -> float:
        if not self.latencies_ms:
            return 0
        sorted_lat = sorted(self.latencies_ms)
        return sorted_lat[int(len(sorted_lat) * 0.99)]


# =============================================================================
# Per-item checks; each returns an error message or None
# =============================================================================

def check_completeness(f):
    result = prove(Sequent((), f))
    if not tautology(f).valid:
        return None if isinstance(result, Valuation) else f"{f}: proof of a non-tautology"
    if isinstance(result, Valuation):
        return f"{f}: countermodel {result.render()} for a tautology"
    if not check_script(elaborate_script(result)).accepted:
        return f"{f}: synthesized proof rejected after elaboration"
    return None


def check_hypothetical(s):
    result = prove(s)
    if sequent_valid(s).valid != (not isinstance(result, Valuation)):
        return f"{s}: prove disagrees with sequent_valid"
    if not isinstance(result, Valuation) and not check_script(result).accepted:
        return f"{s}: synthesized proof rejected"
    return None


def check_translations(f):
    if not tautology(f).valid:
        return None
    source = prove(Sequent((), f))
    for there, back in ((TranslationId.GTOC, TranslationId.CTOG), (TranslationId.GTOGBOT, TranslationId.GBOTTOG)):
        forward = translate_proof(there, source)
        if not check_script(forward).accepted:
            return f"{f}: {there.value} output rejected"
        result = translate_proof(back, forward)
        if not check_script(result).accepted:
            return f"{f}: {back.value} output rejected"
        if not equivalent(f, result.conclusion.succedent):
            return f"{f}: {there.value}/{back.value} changed the meaning"
    return None


def check_hilbert_round_trip(f):
    if not tautology(f).valid:
        return None
    hilbert = g_to_hilbert(prove(Sequent((), f)))
    if hilbert.hypotheses or hilbert.conclusion != f or not check_hilbert(hilbert).accepted:
        return f"{f}: HL3 proof rejected"
    back = hilbert_to_g(hilbert)
    if back.conclusion != Sequent((), f) or not check_script(back).accepted:
        return f"{f}: G proof from HL3 rejected"
    return None


def check_kripke(f):
    if int_provable(f) != kripke_valid(f):
        return f"{f}: int_provable disagrees with Kripke models"
    if tautology(f).valid and not int_provable(Neg(Neg(f))):
        return f"{f}: double negation of a tautology not intuitionistically provable"
    return None


def check_fragment(f):
    if int_provable(f) != tautology(f).valid:
        return f"{f}: classical and intuitionistic theoremhood differ"
    return None


def check_glivenko(f):
    result = prove(Sequent((), translate_formula(TranslationId.CTOG, f)))
    if isinstance(result, ProofScript) != int_provable(f):
        return f"{f}: G provability of the CtoG image differs from intuitionistic provability"
    return None


FUZZ_SYSTEMS = (SystemId.G, SystemId.GBOT, SystemId.C)


def _holds(s, v) -> bool:
    return not all(evaluate(a, v) for a in s.antecedent) or evaluate(s.succedent, v)


def check_fuzz(seed):
    rng = random.Random(seed)
    system = FUZZ_SYSTEMS[seed % len(FUZZ_SYSTEMS)]
    premises = rng.choice((0, 0, 1, 2))
    script = random_script(rng, steps=rng.randint(4, 16), system=system, premises=premises)
    if not check_script(script).accepted:
        return f"seed {seed}: random {system.value} script rejected"
    names = {n for line in script.lines for n in sequent_variables(line.sequent)}
    for v in valuations(names):
        if all(_holds(l.sequent, v) for l in script.premise_lines):
            for line in script.lines:
                if not _holds(line.sequent, v):
                    return f"seed {seed}: line {line.number} {line.sequent} fails under {v.render()}"
    return None


# =============================================================================
# Drivers
# =============================================================================

def _run_chunk(args):
    """Worker function for multiprocessing; each process rebuilds its own caches."""
    check, items = args
    latencies, failures = [], []
    for item in items:
        start = time.perf_counter()
        try:
            message = check(item)
        except Exception as e:
            message = f"{item}: {type(e).__name__}: {e}"
        latencies.append((time.perf_counter() - start) * 1000)
        if message:
            failures.append(message)
    return latencies, failures


def run_sweep(name: str, check: Callable, items: Sequence, workers: int) -> SweepResult:
    print(f"\n{'='*60}")
    print(f"{name.upper()}: {len(items):,} items, {workers} worker(s)")
    print('='*60)

    tracemalloc.start()
    start_time = time.perf_counter()
    if workers > 1:
        chunks = [(check, list(items[i::workers])) for i in range(workers)]
        with multiprocessing.Pool(processes=workers) as pool:
            results = pool.map(_run_chunk, chunks)
    else:
        results = [_run_chunk((check, list(items)))]
    total_time = time.perf_counter() - start_time
    _, peak = tracemalloc.get_traced_memory()
    tracemalloc.stop()

    result = SweepResult(name, len(items), total_time_sec=total_time, memory_peak_mb=peak / 1024 / 1024)
    for latencies, failures in results:
        result.latencies_ms.extend(latencies)
        result.failures.extend(failures)
    return result


def print_results(result: SweepResult):
    print(f"\n--- {result.name} Results ---")
    print(f"Items:              {result.items:,}")
    print(f"Failures:           {len(result.failures):,}")
    print(f"Total Time:         {result.total_time_sec:.2f}s")
    print(f"Latency p50:        {result.p50:.2f} ms")
    print(f"Latency p99:        {result.p99:.2f} ms")
    print(f"Memory Peak:        {result.memory_peak_mb:.1f} MB")
    for message in result.failures[:10]:
        print(f"  FAIL {message}")


def _hypothetical_samples(count: int) -> List[Sequent]:
    rng = random.Random(1939)
    pool = formulas_up_to(4)
    return [
        Sequent(tuple(rng.choice(pool) for _ in range(rng.randint(0, 2))), rng.choice(pool))
        for _ in range(count)
    ]


def main():
    parser = argparse.ArgumentParser(description="Full-size sweeps for gnd-core")
    parser.add_argument("--nodes", type=int, default=9,
                        help="Formula size for the completeness and Kripke sweeps (default: 9)")
    parser.add_argument("--translation-nodes", type=int, default=8,
                        help="Formula size for the translation and Hilbert sweeps (default: 8)")
    parser.add_argument("--fragment-nodes", type=int, default=11,
                        help="Formula size for the {~, .} fragment (default: 11)")
    parser.add_argument("--sequents", type=int, default=1000,
                        help="Number of hypothetical sequents (default: 1000)")
    parser.add_argument("--scripts", "-n", type=int, default=10000,
                        help="Number of random scripts for the soundness fuzz (default: 10000)")
    parser.add_argument("--workers", "-w", type=int, default=1,
                        help="Number of worker processes (default: 1)")
    args = parser.parse_args()

    print("="*60)
    print("       gnd-core SWEEPS")
    print("="*60)

    corpus = formulas_up_to(args.nodes)
    small = formulas_up_to(args.translation_nodes)
    fragment = formulas_up_to(args.fragment_nodes, ("p", "q"), (Neg, Conj))
    sweeps: List[Tuple[str, Callable, Sequence]] = [
        ("Completeness", check_completeness, corpus),
        ("Hypothetical", check_hypothetical, _hypothetical_samples(args.sequents)),
        ("Translations", check_translations, small),
        ("Hilbert round trip", check_hilbert_round_trip, small),
        ("Kripke", check_kripke, formulas_up_to(args.nodes, ("p", "q"), (Neg, Imp, Conj))),
        ("Negation-conjunction fragment", check_fragment, fragment),
        ("CtoG image of the fragment", check_glivenko, fragment),
        ("Soundness fuzz", check_fuzz, list(range(args.scripts))),
    ]

    results = []
    for name, check, items in sweeps:
        result = run_sweep(name, check, items, args.workers)
        print_results(result)
        results.append(result)

    print("\n" + "="*60)
    print("                    SUMMARY")
    print("="*60)
    print(f"{'Sweep':<32} {'Items':>10} {'Time':>10} {'Status':>8}")
    print("-"*60)
    for r in results:
        print(f"{r.name:<32} {r.items:>10,} {r.total_time_sec:>9.1f}s {'ok' if r.passed else 'FAIL':>8}")
    print("="*60)
    sys.exit(0 if all(r.passed for r in results) else 1)


if __name__ == "__main__":
    main()
