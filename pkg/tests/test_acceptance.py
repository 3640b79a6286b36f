"""Acceptance criteria 1-10, one pass/fail line each.

Run with pytest, or directly: ``python3 tests/test_acceptance.py``.
"""

import json
import subprocess
import sys
import time
from functools import lru_cache

from gradua.lab.report import emit_report
from gradua.lab.scenarios import SCENARIOS, run_scenario

LINES = []
Q8_DIMS = [1, 2, 2, 1, 1, 2, 2, 1, 1]


@lru_cache(maxsize=None)
def timed(name, **kw):
    t0 = time.perf_counter()
    rep = run_scenario(name, **kw)
    return rep, time.perf_counter() - t0


def checks(rep):
    return {c.name: c for c in rep.checks}


def report_line(n: int, ok: bool, text: str):
    line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {text}"
    LINES.append(line)
    print(line)
    assert ok, line


def test_criterion_01_q8():
    rep, secs = timed("q8")
    c = checks(rep)
    ok = (rep.overall == "pass" and c["cohomology_dims"].lhs == Q8_DIMS
          and c["omega4_periodicity"].lhs == {"dim": 1, "stably_isomorphic_to_k": True}
          and c["ring_presentation"].status == "pass"
          and c["injective_hull_shift"].lhs["shift"] == 3 and c["injective_hull_shift"].status == "pass"
          and c["serre_shift"].lhs == 1 and secs < 30)
    report_line(1, ok, f"Q8: H^0..8 = {c['cohomology_dims'].lhs}, hull shift "
                       f"{c['injective_hull_shift'].lhs['shift']}, Serre shift Omega^{c['serre_shift'].lhs}, "
                       f"{secs:.1f}s")


def test_criterion_02_tate():
    rep, secs = timed("tate_suite", trials=50, seed=0)
    c = checks(rep)
    agree = sum(c[f"tate_{s}"].lhs for s in ("klein_four", "cyclic:4", "quaternion8"))
    total = sum(c[f"tate_{s}"].rhs for s in ("klein_four", "cyclic:4", "quaternion8"))
    report_line(2, agree == total == 150 and secs < 60, f"Tate duality {agree}/{total}, suite {secs:.1f}s")


def test_criterion_03_tau_nu():
    rep, _ = timed("tate_suite", trials=50, seed=0)
    c = checks(rep)
    got = {s: (c[f"tau_omega2_nu_{s}"].lhs, c[f"nu_identity_{s}"].lhs) for s in ("klein_four", "cyclic:4",
                                                                                 "quaternion8")}
    report_line(3, all(v == (20, 20) for v in got.values()), f"(tau = Omega^2 nu, nu = id) per algebra: {got}")


def test_criterion_04_klein_four():
    rep, _ = timed("klein_four")
    c = checks(rep)
    ranks = [c[f"adjunction_rank_n{n}"].lhs for n in range(1, 5)]
    restricted = [c[f"restricted_end_n{n}"].lhs for n in range(1, 5)]
    end = c["end_rank_consistency"]
    d = end.detail
    ok = (rep.overall == "pass" and ranks == [1, 2, 3, 4] and restricted == [1, 4, 9, 16]
          and c["certificate_m"].lhs == ["t*a+b"] and c["local_rank_instance"].lhs == 1)
    report_line(4, ok, f"Klein four: m = {c['certificate_m'].lhs}, adjunction ranks {ranks}, n^2 {restricted}, "
                       f"End rank {list(d['end_rank'].values())} vs candidates n {list(d['candidate_n'].values())} "
                       f"/ 2n {list(d['candidate_2n'].values())}")


def test_criterion_05_dvr():
    rep, _ = timed("dvr")
    c = checks(rep)
    com = [c[f"commutant_dim_n{n}"].lhs for n in range(1, 5)]
    res = [c[f"restricted_end_n{n}"].lhs for n in range(1, 5)]
    report_line(5, rep.overall == "pass" and com == [1, 2, 3, 4] and res == [1, 4, 9, 16],
                f"dvr: commutant {com}, restricted End {res}")


def test_criterion_06_gorenstein():
    rep, _ = timed("gorenstein")
    c = checks(rep)
    ok = (rep.overall == "pass" and c["poly2_top_dims"].lhs == [j - 1 for j in range(2, 9)]
          and c["B_gorenstein"].lhs == {"status": "pass", "shift": 3}
          and c["m_squared_not_gorenstein"].lhs["status"] == "fail")
    report_line(6, ok, f"Gorenstein: k[x,y] H^2 {c['poly2_top_dims'].lhs}, B {c['B_gorenstein'].lhs}, "
                       f"m^2 ring {c['m_squared_not_gorenstein'].lhs['status']}")


def test_criterion_07_torsion_hom_battery():
    rep, _ = timed("genpoint")
    c = checks(rep)
    a2 = c["torsion_hom_battery"]
    ok = a2.lhs == a2.rhs == 10 and c["residue_data"].status == "pass" and rep.overall == "pass"
    report_line(7, ok, f"torsion Hom battery {a2.lhs}/{a2.rhs}, residue data {c['residue_data'].lhs}")


def test_criterion_08_ar():
    rep, _ = timed("ar_suite")
    c = checks(rep)
    middles = [c[f"ar_J{i}"].lhs["middle"] for i in (1, 2, 3)]
    ok = (rep.overall == "pass" and middles == [[2], [3, 1], [4, 2]]
          and c["periodicity_z4_d0"].lhs["r"] == 2 and c["periodicity_q8_d1"].lhs["r"] == 4)
    report_line(8, ok, f"AR middles {middles}, period Z/4 r={c['periodicity_z4_d0'].lhs['r']}, "
                       f"Q8 r={c['periodicity_q8_d1'].lhs['r']}")


def test_criterion_09_koszul():
    rep, _ = timed("tate_suite", trials=50, seed=0)
    c = checks(rep)
    swap = c["koszul_swap_klein_four"]
    ok = swap.lhs == swap.rhs == 20 and c["koszul_z2_vanishes"].lhs == 0
    report_line(9, ok, f"Koszul swap {swap.lhs}/{swap.rhs}, dim k//x over Z/2 = {c['koszul_z2_vanishes'].lhs}")


def test_criterion_10_determinism():
    t0 = time.perf_counter()
    first = {n: emit_report(run_scenario(n)) for n in SCENARIOS}
    secs = time.perf_counter() - t0
    second = {n: emit_report(run_scenario(n)) for n in SCENARIOS}
    cli = subprocess.run([sys.executable, "-m", "gradua.cli", "scenario", "ar_suite"], capture_output=True)
    ok = first == second and cli.stdout == first["ar_suite"] and secs < 120
    ok = ok and all(json.loads(b)["overall"] == "pass" for b in first.values())
    report_line(10, ok, f"byte-identical reports for {len(first)} scenarios (and a fresh process), "
                        f"full suite {secs:.1f}s")


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
