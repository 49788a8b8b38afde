"""Acceptance criteria 1-11, one test each, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` (the lines are also printed
without ``-s``) or directly with ``python3 tests/test_acceptance.py``.
"""

import subprocess
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

from torsionlab import hn
from torsionlab.exactla import Field
from torsionlab.hearts import heart
from torsionlab.modcat import category
from torsionlab.quiver import Quiver
from torsionlab.subcat import Context, closure_oracle_classes
from torsionlab.suites import SuiteConfig, SUITES, a3, counterex_twins, two_hearts

F2 = Field(2)
CFG = SuiteConfig(F2, exhaustive=False)
EXH = SuiteConfig(F2, exhaustive=True)
DATA = Path(__file__).parent / "data" / "a3.json"
TIME_LIMIT = 60.0


class Reporter:
    def __init__(self, capsys=None):
        self.capsys = capsys

    def __call__(self, n, ok, detail, elapsed):
        line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail} ({elapsed:.1f}s)"
        if self.capsys is not None:
            with self.capsys.disabled():
                print("\n" + line)
        else:
            print(line)


@pytest.fixture
def report(capsys):
    return Reporter(capsys)


def _suites(names, cfg):
    results = [SUITES[n](cfg) for n in names]
    return all(r.ok for r in results), "; ".join(line.strip() for r in results for line in r.lines)


def _timed(fn):
    start = time.perf_counter()
    ok, detail = fn()
    return ok, detail, time.perf_counter() - start


# ------------------------------------------------------------------ criteria

def check_1():
    cat = a3(F2)
    ctx = heart(cat, counterex_twins(cat))
    S = cat.resolve_set
    t = S(["2", "2/3"])
    ok = (ctx.members == S(["3", "2", "2/3", "1/2", "1/2/3"])
          and ctx.is_quotient_closed(t) and ctx.is_extension_closed(t)
          and cat.members_of(cat.sum_of(sorted(t) * 2)) <= t
          and ctx.perp_right(t) == S(["3"])
          and ctx.perp_left(S(["3"])) == S(["2", "2/3", "1/2", "1/2/3"])
          and ctx.perp_left(S(["3"])) != t
          and not ctx.is_torsion_pair(t, S(["3"])))
    suite_ok, detail = _suites(["counterex1"], CFG)
    return ok and suite_ok, detail


def check_2():
    expected = {"A1": 2, "A2": 5, "A3": 14, "D4": 50}
    quivers = {"A1": Quiver.linear_a(1), "A2": Quiver.linear_a(2), "A3": Quiver.linear_a(3), "D4": Quiver.d4()}
    ok, parts = True, []
    for name, q in quivers.items():
        ctx = Context.full(category(q, F2))
        perp = ctx.torsion_classes()
        oracle = closure_oracle_classes(ctx)
        ok &= set(perp) == set(oracle) and len(perp) == len(oracle) == expected[name]
        parts.append(f"{name}={len(perp)}")
    return ok, "double perp = closure oracle, counts " + ", ".join(parts)


def check_3():
    return _suites(["bijection"], CFG)


def check_4():
    return _suites(["hearts"], EXH)


def check_5():
    return _suites(["radical-switch"], EXH)


def check_6():
    cat = a3(F2)
    first, second = two_hearts(cat)
    target = cat.resolve_set(["1"])
    ok = first != second and heart(cat, first).members == target and heart(cat, second).members == target
    return ok, f"both twin pairs have heart {cat.show(target)}"


def check_7():
    return _suites(["hn"], CFG)


def check_8():
    return _suites(["slicings"], EXH)


def check_9():
    cat = a3(F2)
    amb = Context.full(cat)
    eta = hn.chain(amb, [(0, cat.everything), (Fraction(1, 3), cat.resolve_set(["1"])), (Fraction(2, 3), frozenset())])
    ok = hn.distance(eta, eta) == 0
    suite_ok, detail = _suites(["metric", "distance-twoofhearts"], CFG)
    return ok and suite_ok, detail


def check_10():
    return _suites(["monocat"], EXH)


COMMANDS = [
    ["indecs"], ["indecs", "--json"], ["tors"], ["tors", "--json"], ["heart", str(DATA), "--twins", "counter"],
    ["bijection", str(DATA), "--twins", "second"], ["hn", str(DATA), "--chain", "eta", "--module", "1/2/3+1",
                                                     "--check-unique"],
    ["metric", str(DATA)], ["monocat-verify", str(DATA), "--twins", "second"], ["verify", "counterex1"],
]


def check_11(tmp: Path):
    env = {"TORSIONLAB_CACHE": str(tmp / "cache.json"), "PATH": "/usr/bin:/bin"}
    import os
    env["PYTHONPATH"] = os.pathsep.join(sys.path)
    ok, n = True, 0
    for argv in COMMANDS + [["tors", "--dot", str(tmp / "DOT")]]:
        outs = []
        for _ in range(2):
            proc = subprocess.run([sys.executable, "-m", "torsionlab.cli"] + argv, capture_output=True, env=env)
            blob = proc.stdout + proc.stderr + bytes([proc.returncode])
            if "--dot" in argv:
                blob += (tmp / "DOT").read_bytes()
            outs.append(blob)
        ok &= outs[0] == outs[1]
        n += 1
    return ok, f"{n} commands byte-identical across two runs"


# ------------------------------------------------------------------ pytest entry points

@pytest.mark.parametrize("n", range(1, 11))
def test_criterion(n, report):
    ok, detail, elapsed = _timed(globals()[f"check_{n}"])
    report(n, ok and elapsed < TIME_LIMIT, detail, elapsed)
    assert ok, detail
    assert elapsed < TIME_LIMIT


def test_criterion_11(report, tmp_path):
    ok, detail, elapsed = _timed(lambda: check_11(tmp_path))
    report(11, ok, detail, elapsed)
    assert ok, detail


if __name__ == "__main__":
    import tempfile
    rep = Reporter()
    failed = 0
    for n in range(1, 12):
        if n == 11:
            with tempfile.TemporaryDirectory() as d:
                ok, detail, elapsed = _timed(lambda: check_11(Path(d)))
        else:
            ok, detail, elapsed = _timed(globals()[f"check_{n}"])
        ok = ok and elapsed < TIME_LIMIT
        failed += not ok
        rep(n, ok, detail, elapsed)
    sys.exit(1 if failed else 0)
