"""Acceptance gate: one test (or test pair) per exit criterion.

Each test records a PASS/FAIL line that ``conftest.pytest_terminal_summary``
prints at the end of the run.
"""

import math
import random
import time

import pytest

from fuzzycbr.assessment import CaseLogEntry, SystemRecord, assess_system, compare_systems, format_case_log
from fuzzycbr.centroid import Outcome, centroid_bars, centroid_integral_oracle, compare_centroid
from fuzzycbr.cli import main
from fuzzycbr.fuzzy import ALL_PROFILES, Grade, Profile, enumerate_profiles, is_well_ordered, profile_membership
from fuzzycbr.sim import Case, CaseLibrary, Problem, retrieve, run_batch
from fuzzycbr.uncertainty import nonspecificity, strife, total_uncertainty

from conftest import ACCEPTANCE_LINES, SYSTEM1_COUNTS, SYSTEM2_COUNTS

REPORTED_T1, REPORTED_T2, T_TOL = 2.97, 2.322, 0.05
CENTROID_TOL = 0.005
ABSOLUTE_T_REASON = (
    "documented deviation: the standard nonspecificity + strife formulas give "
    "T = 3.060 / 2.641 for the two worked systems (see README, 'Known deviation')"
)


def record(name, ok, detail):
    ACCEPTANCE_LINES.append((name, bool(ok), detail))
    print(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
    assert ok, f"{name}: {detail}"


def s1():
    return SystemRecord.from_counts("system-1", *SYSTEM1_COUNTS)


def s2():
    return SystemRecord.from_counts("system-2", *SYSTEM2_COUNTS)


def test_criterion_1_system1_memberships():
    start = time.perf_counter()
    rec = s1()
    m_ccc = profile_membership(rec.steps, Profile.parse("c,c,c"))
    m_cba = profile_membership(rec.steps, Profile.parse("c,b,a"))
    rows = enumerate_profiles(rec.steps)
    argmax = max(rows, key=lambda r: r[1])
    elapsed = time.perf_counter() - start
    ok = (
        abs(m_ccc - 0.082) <= 0.001
        and abs(m_cba - 0.029) <= 0.001
        and argmax[0] == Profile.parse("c,c,c")
        and argmax[1] == m_ccc
        and elapsed < 0.1
    )
    record("criterion 1", ok, f"m(c,c,c)={m_ccc:.4f} (max), m(c,b,a)={m_cba:.4f}, {elapsed * 1e3:.1f} ms")


def test_criterion_2_system2_argmax():
    rows = enumerate_profiles(s2().steps)
    top = max(m for _, m in rows)
    argmax = [p for p, m in rows if m == top]
    ok = argmax == [Profile.parse("c,c,a")] and abs(top - 0.107) <= 0.001
    record("criterion 2", ok, f"argmax={[p.label() for p in argmax]}, m={top:.4f}")


def test_criterion_3_ordering():
    t1 = assess_system(s1()).uncertainty.total
    t2 = assess_system(s2()).uncertainty.total
    record("criterion 3 (ordering)", t2 < t1, f"T(system-2)={t2:.4f} < T(system-1)={t1:.4f}")


@pytest.mark.xfail(strict=True, reason=ABSOLUTE_T_REASON)
def test_criterion_3_absolute_values():
    t1 = assess_system(s1()).uncertainty.total
    t2 = assess_system(s2()).uncertainty.total
    ok = abs(t1 - REPORTED_T1) <= T_TOL and abs(t2 - REPORTED_T2) <= T_TOL
    record(
        "criterion 3 (absolute, +-0.05)", ok,
        f"T1={t1:.4f} vs {REPORTED_T1}, T2={t2:.4f} vs {REPORTED_T2}" + ("" if ok else f"; {ABSOLUTE_T_REASON}"),
    )


def test_criterion_4_centroids():
    expected = {
        ("system-1", "retrieve"): (3.3, 0.185), ("system-2", "retrieve"): (2.6, 0.19),
        ("system-1", "reuse"): (2.186, 0.154), ("system-2", "reuse"): (1.833, 0.198),
        ("system-1", "revise"): (1.529, 0.169), ("system-2", "revise"): (1.4, 0.17),
    }
    worst = 0.0
    for rec in (s1(), s2()):
        for dist in rec.steps:
            c = centroid_bars(dist.memberships)
            x, y = expected[(rec.name, dist.step.value)]
            worst = max(worst, abs(c.x_c - x), abs(c.y_c - y))
    record("criterion 4", worst <= CENTROID_TOL, f"max |error| over 6 pairs = {worst:.5f} (tol {CENTROID_TOL})")


def test_criterion_5_winners_and_disagreement():
    a, b = assess_system(s1()), assess_system(s2())
    outcomes = [compare_centroid(ca, cb) for ca, cb in zip(a.centroids, b.centroids)]
    report = compare_systems([s1(), s2()])
    ok = all(o is Outcome.FIRST_BETTER for o in outcomes) and report.models_agree is False
    record("criterion 5", ok, f"steps={[o.value for o in outcomes]}, models_agree={report.models_agree}")


def test_criterion_6_properties():
    rng = random.Random(20240601)
    checks = {}

    checks["35 well-ordered"] = sum(is_well_ordered(p) for p in ALL_PROFILES) == 35

    ok = True
    for _ in range(1000):
        rec = SystemRecord.from_counts("r", *_random_system(rng))
        ok &= sum(m for _, m in enumerate_profiles(rec.steps)) <= 1 + 1e-12
    checks["sum m <= 1 (1000 systems)"] = ok

    checks["crisp T=0"] = total_uncertainty((1.0,) + (0.0,) * 124).total == 0.0
    ok = True
    for k in (1, 2, 5, 35, 125):
        ok &= abs(nonspecificity((1.0,) * k) - math.log2(k)) <= 1e-12 and abs(strife((1.0,) * k)) <= 1e-12
    checks["all-ones N=log2 k, ST=0"] = ok
    ok = True
    for _ in range(200):
        r = (1.0,) + tuple(sorted((rng.random() for _ in range(rng.randint(0, 40))), reverse=True))
        padded = r + (0.0,) * rng.randint(1, 100)
        ok &= nonspecificity(padded) == nonspecificity(r) and strife(padded) == strife(r)
    checks["zero padding"] = ok

    worst = 0.0
    for _ in range(1000):
        h = [rng.random() * rng.choice((0, 1, 1, 1)) for _ in range(5)]
        if sum(h) == 0:
            h[rng.randrange(5)] = 1.0
        a, b = centroid_bars(h), centroid_integral_oracle(h)
        worst = max(worst, abs(a.x_c - b.x_c), abs(a.y_c - b.y_c))
    checks[f"oracle agreement (max {worst:.1e})"] = worst <= 1e-6

    ok = centroid_bars((0.2,) * 5).y_c == pytest.approx(0.1, abs=1e-15)
    for _ in range(1000):
        h = [rng.random() for _ in range(5)]
        ok &= centroid_bars(h).y_c > 0.1
    checks["y_c >= 0.1, equality only at uniform"] = ok
    checks["extreme points exact"] = (
        tuple(centroid_bars((0, 0, 0, 0, 1))) == (4.5, 0.5) and tuple(centroid_bars((1, 0, 0, 0, 0))) == (0.5, 0.5)
    )

    ok = True
    for _ in range(300):
        d = rng.randint(1, 5)
        cases = [Case(f"id{i:02d}", [rng.random() for _ in range(d)], 0.0) for i in range(rng.randint(1, 50))]
        lib = CaseLibrary(d, cases)
        q = [rng.random() for _ in range(d)]
        sims = [1 - math.dist(c.features, q) / math.sqrt(d) for c in cases]
        best = None
        for i in sorted(range(len(cases)), key=lambda i: cases[i].id):
            if best is None or sims[i] > sims[best]:
                best = i
        ok &= retrieve(lib, q)[0].id == cases[best].id
    checks["retrieval = brute force (<=50 cases)"] = ok

    lib = CaseLibrary(3, [Case(f"c{i}", [rng.random() for _ in range(3)], rng.random()) for i in range(10)])
    problems = [Problem(tuple(rng.random() for _ in range(3)), rng.random()) for _ in range(60)]
    a, b = run_batch(lib, problems), run_batch(lib, problems)
    checks["run_batch deterministic"] = (
        format_case_log(a.log) == format_case_log(b.log) and a.library.to_dict() == b.library.to_dict()
    )

    failed = [k for k, v in checks.items() if not v]
    record("criterion 6", not failed, "; ".join(checks) if not failed else f"failed: {failed}")


def _random_system(rng):
    n = rng.randint(2, 120)
    out = []
    for _ in range(3):
        cuts = sorted(rng.randint(0, n) for _ in range(4))
        parts = [b - a for a, b in zip([0] + cuts, cuts + [n])]
        out.append(parts)
    return out


def _system1_log(path):
    columns = [[g for g in Grade for _ in range(c[g - 1])] for c in SYSTEM1_COUNTS]
    entries = [CaseLogEntry(f"case{i:03d}", *gs) for i, gs in enumerate(zip(*columns), start=1)]
    path.write_text(format_case_log(entries))


def _pipeline(tmp_path, capsys):
    log, rec = tmp_path / "log.csv", tmp_path / "rec.json"
    _system1_log(log)
    start = time.perf_counter()
    code_ingest = main(["ingest", "--log", str(log), "--name", "system-1", "--out", str(rec)])
    code_assess = main(["assess", "--input", str(rec)])
    elapsed = time.perf_counter() - start
    out = capsys.readouterr().out
    printed = [line for line in out.splitlines() if line.startswith("T(r) = ")]
    return code_ingest, code_assess, elapsed, printed, rec


def test_criterion_7_end_to_end(tmp_path, capsys):
    code_ingest, code_assess, elapsed, printed, rec = _pipeline(tmp_path, capsys)
    direct = assess_system(s1()).uncertainty.total
    ok = (
        code_ingest == 0 and code_assess == 0 and elapsed < 2.0
        and SystemRecord.load(rec) == s1()
        and printed == [f"T(r) = {direct:.3f}"]
    )
    record("criterion 7 (pipeline)", ok, f"{printed} from 105-row log in {elapsed:.3f} s")


@pytest.mark.xfail(strict=True, reason=ABSOLUTE_T_REASON)
def test_criterion_7_printed_value_vs_reported(tmp_path, capsys):
    _, _, _, printed, _ = _pipeline(tmp_path, capsys)
    value = float(printed[0].split("=")[1])
    ok = abs(value - REPORTED_T1) <= T_TOL
    record("criterion 7 (printed T within +-0.05 of 2.97)", ok,
           f"printed {value:.3f}" + ("" if ok else f"; {ABSOLUTE_T_REASON}"))
