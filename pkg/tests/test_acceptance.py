"""Full-scale acceptance runs, one test and one printed verdict per criterion.

The heavy sweep fixtures are module scoped and shared across criteria, so
this file carries nearly all of the suite's runtime.
"""

import json
import subprocess
import sys
import time

import numpy as np
import pytest

from framecalc import (
    Frame,
    RunConfig,
    doubled_onb,
    equivalence_conditions,
    harmonic,
    mercedes,
    onb,
    overlap_identity_report,
    parseval_identity_report,
    random_parseval,
    run_suite,
    three_quarters_check,
    tight_identity_report,
    write_frame,
)
from framecalc.rng import SplitMix64

from bruteforce import pfi_sides

MASTER_SEED = 101
E1 = [1.0, 0.0]
E2 = [0.0, 1.0]


def _verdict(num: int, ok: bool, detail: str) -> bool:
    print(f"[criterion {num:2d}] {'PASS' if ok else 'FAIL'}  {detail}")
    return ok


@pytest.fixture(scope="module")
def pfi_sweep():
    config = RunConfig(seed=MASTER_SEED, trials=10_000)
    start = time.perf_counter()
    results, summary = run_suite("pfi", config)
    return results, summary, time.perf_counter() - start


@pytest.fixture(scope="module")
def general_sweep():
    results, summary = run_suite("general", RunConfig(seed=MASTER_SEED, trials=10_000))
    return results, summary


@pytest.fixture(scope="module")
def equivalence_sweep():
    results, summary = run_suite(
        "equivalence", RunConfig(seed=MASTER_SEED, trials=10_000)
    )
    return results, summary


@pytest.fixture(scope="module")
def sj_sweep():
    results, summary = run_suite("sj", RunConfig(seed=MASTER_SEED, trials=10_000))
    return results, summary


@pytest.fixture(scope="module")
def extension_sweep():
    results, summary = run_suite("extension", RunConfig(seed=MASTER_SEED, trials=100))
    return results, summary


def test_criterion_01_energy_split_sweep(pfi_sweep):
    results, summary, elapsed = pfi_sweep
    max_rel = max(row["rel_diff"] for row in results)
    ok = summary["failed"] == 0 and max_rel <= 1e-9 and elapsed <= 60.0
    assert _verdict(
        1, ok, f"10^4 trials, max rel diff {max_rel:.3e}, {elapsed:.1f}s"
    )


def test_criterion_02_exhaustive_small_corpus():
    corpus = [
        mercedes(),
        doubled_onb(2),
        harmonic(2, 4),
        random_parseval(2, 3, 11, "real"),
        random_parseval(2, 4, 12, "complex"),
        random_parseval(2, 5, 13, "real"),
        random_parseval(3, 4, 14, "complex"),
        random_parseval(3, 5, 15, "real"),
    ]
    worst_rel = 0.0
    worst_oracle = 0.0
    checked = 0
    for which, fr in enumerate(corpus):
        vecs = [[complex(z) for z in row] for row in fr.vectors]
        probe_rng = SplitMix64(202).derive(which)
        probes = [np.eye(fr.dim, dtype=np.complex128)[k] for k in range(min(2, fr.dim))]
        while len(probes) < 20:
            if fr.field == "real":
                g = probe_rng.gaussians(fr.dim).astype(np.complex128)
            else:
                g = probe_rng.complex_gaussians(fr.dim)
            probes.append(g / float(np.linalg.norm(g)))
        for mask in range(2 ** fr.count):
            subset = [i for i in range(fr.count) if (mask >> i) & 1]
            for f in probes:
                rep = parseval_identity_report(fr, subset, f, tolerance=1e-10)
                lhs, rhs = pfi_sides(vecs, subset, [complex(z) for z in f])
                scale = max(1.0, abs(lhs), abs(rhs))
                worst_rel = max(worst_rel, rep.rel_diff)
                worst_oracle = max(
                    worst_oracle,
                    abs(rep.lhs - lhs) / scale,
                    abs(rep.rhs - rhs) / scale,
                )
                checked += 1
    ok = worst_rel <= 1e-10 and worst_oracle <= 1e-10
    assert _verdict(
        2,
        ok,
        f"{checked} subset/vector cases, max rel diff {worst_rel:.3e}, "
        f"max oracle gap {worst_oracle:.3e}",
    )


def test_criterion_03_hand_computed_values():
    errs = []
    rep = parseval_identity_report(mercedes(), [0], E1)
    errs += [abs(rep.lhs - 2.0 / 9.0), abs(rep.rhs - 2.0 / 9.0)]
    rep = parseval_identity_report(doubled_onb(2), [0], E1)
    errs += [abs(rep.lhs - 0.25), abs(rep.rhs - 0.25)]
    rep = overlap_identity_report(mercedes(), [0], [1], E1)
    errs += [abs(rep.lhs - 2.0 / 3.0), abs(rep.rhs - 2.0 / 3.0)]
    quad = Frame(2, [E1, E1, E2, E2], "real")
    rep = tight_identity_report(quad, [0], E1, lam=2.0)
    errs += [abs(rep.lhs - 1.0), abs(rep.rhs - 1.0)]
    worst = max(errs)
    ok = worst <= 1e-12
    assert _verdict(3, ok, f"four hand cases, max abs error {worst:.3e}")


def test_criterion_04_general_frame_sweep(general_sweep):
    results, summary = general_sweep
    max_rel = max(row["rel_diff"] for row in results)
    ok = summary["failed"] == 0 and max_rel <= 1e-8 and summary["max_cond"] <= 1e3
    assert _verdict(
        4,
        ok,
        f"10^4 trials, max rel diff {max_rel:.3e}, max cond {summary['max_cond']:.1f}",
    )


def test_criterion_05_three_quarters_bound(pfi_sweep):
    _, summary, _ = pfi_sweep
    chk = three_quarters_check(doubled_onb(2), [0], E1)
    attained = abs(chk.value - 0.75)
    ok = summary["min_bound_ratio"] >= 0.75 - 1e-9 and attained <= 1e-12
    assert _verdict(
        5,
        ok,
        f"sweep min ratio {summary['min_bound_ratio']:.6f}, "
        f"sharp case off by {attained:.3e}",
    )


def test_criterion_06_six_way_equivalence(equivalence_sweep):
    _, summary = equivalence_sweep
    rep_true = equivalence_conditions(onb(3), [0, 1], [1.0, 2.0, 3.0])
    rep_false = equivalence_conditions(mercedes(), [0], E1)
    ok = (
        summary["failed"] == 0
        and summary["split"] == 0
        and summary["all_true"] > 0
        and summary["all_false"] > 0
        and all(c.holds for c in rep_true.conditions)
        and not any(c.holds for c in rep_false.conditions)
    )
    assert _verdict(
        6,
        ok,
        f"10^4 trials: {summary['all_true']} all-true, "
        f"{summary['all_false']} all-false, {summary['split']} split, "
        f"{summary['borderline']} borderline",
    )


def test_criterion_07_partial_operator_structure(sj_sweep):
    _, summary = sj_sweep
    ok = (
        summary["failed"] == 0
        and summary["min_eig_product"] >= -1e-9
        and summary["max_identity_residual"] <= 1e-9
    )
    assert _verdict(
        7,
        ok,
        f"10^4 trials, min eigenvalue {summary['min_eig_product']:.3e}, "
        f"max residual {summary['max_identity_residual']:.3e}",
    )


def test_criterion_08_tight_completions(extension_sweep):
    results, summary = extension_sweep
    all_equal = all(
        row["energy_equal"] and row["operator_equal"] and row["span_equal"]
        for row in results
    )
    ok = (
        summary["failed"] == 0
        and len(results) == 100
        and all_equal
        and summary["max_operator_diff"] <= 1e-9
    )
    assert _verdict(
        8,
        ok,
        f"100 completions, max operator gap {summary['max_operator_diff']:.3e}",
    )


def test_criterion_09_subspace_embeddings(pfi_sweep):
    _, summary, _ = pfi_sweep
    ok = (
        summary["subspace_trials"] == 1000
        and summary["max_subspace_rel"] <= 1e-9
        and summary["max_projection_dev"] <= 1e-9
    )
    assert _verdict(
        9,
        ok,
        f"{summary['subspace_trials']} embedded trials, "
        f"max rel diff {summary['max_subspace_rel']:.3e}, "
        f"max projection gap {summary['max_projection_dev']:.3e}",
    )


def test_criterion_10_cli_determinism_and_exit_codes(tmp_path):
    cmd = [
        sys.executable, "-m", "framecalc.cli", "property-run",
        "--suite", "all", "--seed", "7", "--trials", "100",
    ]
    first = subprocess.run(cmd, capture_output=True)
    second = subprocess.run(cmd, capture_output=True)
    identical = first.stdout == second.stdout
    env = json.loads(first.stdout)
    clean = first.returncode == 0 and env["summary"]["failed"] == 0

    merc = str(tmp_path / "merc.json")
    write_frame(mercedes(), merc)
    pair = str(tmp_path / "pair.json")
    write_frame(Frame(2, [E1, E1, E2], "real"), pair)
    base = [sys.executable, "-m", "framecalc.cli", "identity"]
    tail = ["--variant", "pfi", "--J", "0", "--f", "1,0"]
    code_pass = subprocess.run(base + [merc] + tail, capture_output=True).returncode
    code_fail = subprocess.run(base + [pair] + tail, capture_output=True).returncode
    code_usage = subprocess.run(
        base + [str(tmp_path / "nope.json")] + tail, capture_output=True
    ).returncode
    ok = (
        identical
        and clean
        and len(env["results"]) == 700
        and (code_pass, code_fail, code_usage) == (0, 1, 2)
    )
    assert _verdict(
        10,
        ok,
        f"byte-identical reruns: {identical}, exit codes "
        f"(pass, domain, usage) = ({code_pass}, {code_fail}, {code_usage})",
    )
