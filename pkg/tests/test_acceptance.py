"""Acceptance criteria 1-7; each test records one PASS/FAIL line.

Run standalone with ``python tests/test_acceptance.py`` or as part of pytest;
the lines are printed in the terminal summary.
"""
from __future__ import annotations

import os
import random
import subprocess
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

import pytest

from ksrgroups.catalogue import RESTRICTIONS, catalogue_names, get_transfer
from ksrgroups.character import (KottwitzLattice, character_from_x, derived_sublattice,
                                 enumerate_characters_upto, make_character, restriction_data)
from ksrgroups.oracle import ORACLE_CAP, compare, semidirect_check
from ksrgroups.rgroup import QParameters, compute_rgroup, keys_check, \
    verify_restriction_sequence
from ksrgroups.root_datum import CartanType, build_root_datum, build_root_system, gl_datum
from ksrgroups.sweep import KEYS_SWEEP, atlas, attained_structures, lattice_choices
from ksrgroups.transfer import verify_transfer_catalogue_entry

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # standalone run
    ACCEPTANCE_LINES = []

# pinned tolerances and budgets
C1_BUDGET_S = 600.0
C6_BUDGET_S = 120.0
C6_MAX_DENOMINATOR = 6
C5_MAX_DENOMINATOR = 6
SPOT_SEED = 20261016
SPOT_SAMPLES = 60  # points per datum; two q branches each gives 120 computations
SPOT_DENOMINATORS = (1, 2, 2, 2, 3, 4, 6, 12)
QS = (QParameters(), QParameters.all_false())

EXPECTED_KEYS = {
    "A1": ["Z/2"], "A2": ["Z/3"], "A3": ["Z/2", "Z/4"], "A4": ["Z/5"],
    "B2": ["Z/2"], "B3": ["Z/2"], "B4": ["Z/2"],
    "C2": ["Z/2"], "C3": ["Z/2"], "C4": ["Z/2"],
    "D4": ["Z/2", "Z/2 x Z/2"], "D5": ["Z/2", "Z/4"],
    "E6": ["Z/3"], "G2": [], "F4": [],
}


def record(criterion: int, ok: bool, text: str) -> str:
    line = f"C{criterion} {'PASS' if ok else 'FAIL'}  {text}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return line


@dataclass
class SweepStats:
    cases: int = 0
    oracle_cases: int = 0
    keys_failures: list = field(default_factory=list)
    semidirect_failures: list = field(default_factory=list)
    mismatches: list = field(default_factory=list)
    seconds: float = 0.0


@pytest.fixture(scope="module")
def full_sweep() -> SweepStats:
    """Every sweep type, every lattice choice, both q branches, one pass per case."""
    stats = SweepStats()
    t0 = time.perf_counter()
    for name, bound in KEYS_SWEEP:
        t = CartanType.parse(name)
        rs = build_root_system(t)
        for lattice, spec in lattice_choices(t):
            datum = build_root_datum(rs, spec)
            for chi in enumerate_characters_upto(datum, bound):
                for q in QS:
                    case = f"{name}|{lattice}|{chi.label}|{'q1' if q.is_default else 'q0'}"
                    res = compute_rgroup(datum, chi, q)
                    stats.cases += 1
                    if not keys_check(t, datum, res):
                        stats.keys_failures.append(case)
                    if not semidirect_check(res).passed:
                        stats.semidirect_failures.append(case)
                    if rs.weyl_order <= ORACLE_CAP:
                        stats.oracle_cases += 1
                        if not compare(datum, chi, q, case, fast=res).agree:
                            stats.mismatches.append(case)
    stats.seconds = time.perf_counter() - t0
    return stats


@pytest.fixture(scope="module")
def spot_samples() -> dict:
    """Seeded alcove-path samples on E7 (both lattices) and E8."""
    rng = random.Random(SPOT_SEED)
    out: dict = {}
    for name in ("E7", "E8"):
        t = CartanType.parse(name)
        rs = build_root_system(t)
        choices = lattice_choices(t) if name == "E7" else lattice_choices(t)[:1]
        for lattice, spec in choices:
            datum = build_root_datum(rs, spec)
            lat = KottwitzLattice.of(datum)
            for _ in range(SPOT_SAMPLES):
                d = rng.choice(SPOT_DENOMINATORS)
                x = [Fraction(rng.randrange(d), d) for _ in range(datum.dim)]
                chi = character_from_x(lat, x, ())
                for q in QS:
                    res = compute_rgroup(datum, chi, q)
                    out.setdefault(name, []).append(
                        (f"{name}|{lattice}|{chi.label}", res, keys_check(t, datum, res).passed,
                         semidirect_check(res).passed))
    return out


def test_c1_keys_table_reproduction():
    t0 = time.perf_counter()
    entries = atlas(KEYS_SWEEP)
    elapsed = time.perf_counter() - t0
    attained = attained_structures(entries)
    ok = attained == EXPECTED_KEYS and elapsed <= C1_BUDGET_S
    diff = {k: attained.get(k) for k in EXPECTED_KEYS if attained.get(k) != EXPECTED_KEYS[k]}
    record(1, ok, f"keys table: {len(entries)} sc orbits, {len(EXPECTED_KEYS)} types exact"
                  f"{'' if not diff else f', mismatched {diff}'}; "
                  f"{elapsed:.1f} s <= {C1_BUDGET_S:.0f} s")
    assert not diff
    assert elapsed <= C1_BUDGET_S


def test_c2_type_conformance(full_sweep, spot_samples):
    e7 = spot_samples["E7"]
    e8 = spot_samples["E8"]
    e7_structs = sorted({str(r.structure) for _, r, _, _ in e7})
    e8_structs = sorted({str(r.structure) for _, r, _, _ in e8})
    spot_fail = [c for c, _, ok, _ in e7 + e8 if not ok]
    ok = (not full_sweep.keys_failures and not spot_fail and len(e7) >= 100 and len(e8) >= 100
          and set(e7_structs) <= {"1", "Z/2"} and e8_structs == ["1"])
    record(2, ok, f"keys_check: {full_sweep.cases} sweep cases (all lattices, both q) "
                  f"{len(full_sweep.keys_failures)} failures; E7 {len(e7)} samples -> "
                  f"{{{', '.join(e7_structs)}}}; E8 {len(e8)} samples -> "
                  f"{{{', '.join(e8_structs)}}}")
    assert full_sweep.keys_failures == [] and spot_fail == []
    assert len(e7) >= 100 and len(e8) >= 100
    assert set(e7_structs) <= {"1", "Z/2"} and e8_structs == ["1"]


def test_c3_semidirect_structure(full_sweep, spot_samples):
    spot_fail = [c for v in spot_samples.values() for c, _, _, ok in v if not ok]
    fails = full_sweep.semidirect_failures + spot_fail
    spot = sum(len(v) for v in spot_samples.values())
    record(3, not fails, f"|W(chi)| = |W-circle||R|, R meets W-circle trivially, R positive "
                         f"on Delta': {full_sweep.cases + spot} cases, {len(fails)} failures")
    assert fails == []


def test_c4_oracle_equivalence(full_sweep):
    ok = not full_sweep.mismatches and full_sweep.oracle_cases == full_sweep.cases
    record(4, ok, f"fast == brute force on {full_sweep.oracle_cases} cases with |W| <= "
                  f"{ORACLE_CAP}: {len(full_sweep.mismatches)} mismatches "
                  f"(sweep pass {full_sweep.seconds:.0f} s)")
    assert full_sweep.mismatches == []
    assert full_sweep.oracle_cases == full_sweep.cases


def test_c5_restriction_sequence():
    total, failures, witness = 0, [], False
    for n in (2, 3, 4):
        datum = gl_datum(n)
        res = restriction_data(datum, derived_sublattice(datum))
        for chi in enumerate_characters_upto(datum, C5_MAX_DENOMINATOR):
            rep = verify_restriction_sequence(datum, res, chi)
            total += 1
            orders = rep.r_flat.r_group.order == rep.r_chi.r_group.order * rep.hat.order
            if not (rep.passed and orders):
                failures.append(f"GL{n}|{chi.label}")
            if n == 2 and chi == make_character(datum, "0,1/2"):
                witness = rep.sequence_line == "1 → 1 → Z/2 → Z/2 → 1"
    assert set(RESTRICTIONS) == {"gl2-sl2", "gl3-sl3", "gl4-sl4"}
    ok = not failures and witness
    record(5, ok, f"restriction sequence on GL_n/SL_n, n = 2..4, d <= {C5_MAX_DENOMINATOR}: "
                  f"{total} characters, {len(failures)} failures; witness GL2 (0,1/2): "
                  f"{'1 → 1 → Z/2 → Z/2 → 1' if witness else 'missing'}")
    assert failures == [] and witness


def test_c6_transfer_sequence():
    t0 = time.perf_counter()
    total, failures, sl1d_quotient = 0, [], None
    for name in catalogue_names():
        td = get_transfer(name)
        cv = verify_transfer_catalogue_entry(td, C6_MAX_DENOMINATOR)
        total += len(cv.reports)
        failures += [f"{name}|{r.character.label}" for r in cv.reports if not r.passed]
        if name == "sl1D-in-sl2":
            nontrivial = make_character(td.source, None, 1)
            sl1d_quotient = next(str(r.quotient) for r in cv.reports if r.character == nontrivial)
    elapsed = time.perf_counter() - t0
    ok = not failures and sl1d_quotient == "Z/2" and elapsed <= C6_BUDGET_S
    record(6, ok, f"transfer sequence and quotient table: {len(catalogue_names())} data, "
                  f"{total} characters, {len(failures)} failures; SL1(D) in SL2 quotient "
                  f"{sl1d_quotient}; {elapsed:.1f} s <= {C6_BUDGET_S:.0f} s")
    assert failures == [] and sl1d_quotient == "Z/2"
    assert elapsed <= C6_BUDGET_S


def _atlas_run(seed: str) -> bytes:
    env = dict(os.environ, PYTHONHASHSEED=seed)
    env.pop("RGROUP_CACHE_DIR", None)
    cmd = [sys.executable, "-m", "ksrgroups.cli", "atlas", "--all-lattices",
           "--q-branches", "both"]
    return subprocess.run(cmd, capture_output=True, env=env, check=True).stdout


def test_c7_determinism():
    first, second = _atlas_run("1"), _atlas_run("2")
    ok = first == second and len(first) > 0
    rows = first.count(b"\n")
    record(7, ok, f"full atlas (all lattices, both q) twice in fresh processes: "
                  f"{'byte-identical' if ok else 'DIFFERENT'}, {len(first)} bytes, {rows} lines")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
