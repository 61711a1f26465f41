#!/usr/bin/env python3
"""Smoke test for the eisenlat_py extension module.

Builds the cdylib with cargo, loads it, and exercises the exported surface:
ring arithmetic, the mod-theta counts, a reduction certificate, the
classification of the two named points, and one verification suite.

Usage: python3 python/smoke_test.py
"""

import json
import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def build_and_import():
    subprocess.run(
        ["cargo", "build", "--release", "-p", "eisenlat-py"],
        cwd=ROOT,
        check=True,
    )
    lib = ROOT / "target" / "release" / "libeisenlat_py.so"
    if not lib.exists():  # macOS fallback
        lib = ROOT / "target" / "release" / "libeisenlat_py.dylib"
    tmp = Path(tempfile.mkdtemp(prefix="eisenlat_py_"))
    shutil.copy(lib, tmp / "eisenlat_py.so")
    sys.path.insert(0, str(tmp))
    import eisenlat_py

    return eisenlat_py


def main():
    m = build_and_import()

    # ring arithmetic: theta^2 = -3, norm(theta) = 3, omega^3 = 1
    theta = m.EisInt.theta()
    assert theta.norm() == 3
    t2 = theta * theta
    assert (t2.a, t2.b) == (-3, 0)
    w = m.EisInt.omega()
    w3 = w * w * w
    assert (w3.a, w3.b) == (1, 0)
    assert w.mod_theta() == 1 and theta.mod_theta() == 0

    # euclidean division and the covering-radius quotient
    q, r = theta.euclid_div(m.EisInt(2, 0))
    assert (q.a, q.b) == (0, 1) and (r.a, r.b) == (1, 0)
    nq = theta.nearest_quotient(m.EisInt(2, 0))
    assert (nq.a, nq.b) == (0, 1)

    # hermitian norms in both frames
    assert m.norm_diag([(3, 0), (1, 0), (1, 0), (1, 0), (1, 0)]) == -5
    assert m.norm_hyp([(0, 0), (0, 0), (0, 0), (0, 0), (1, 0)]) == 0

    # finite geometry counts and the braid table
    assert m.count_norm_one() == (72, 36)
    assert m.braid_relations_hold()
    assert m.short_root_count(0) == 24

    # a reduction certificate for a height-one null vector
    cert = json.loads(m.reduce_null([(1, 0), (0, 0), (0, 0), (1, 0), (0, 1)]))
    assert cert["schema"] == "reduction-certificate/1"
    assert cert["heights"][0] == "1" and cert["heights"][-1] == "0"

    # classification of the two named points
    diag = json.loads(m.classify([(3, 0), (1, 0), (1, 0), (1, 0), (1, 0)]))
    assert diag["name"] == "diagonal point" and diag["norm"] == "-5"
    fermat = json.loads(m.classify([(3, 1), (1, 0), (1, 0), (1, 0), (1, 0)]))
    assert fermat["name"] == "Fermat point" and fermat["norm"] == "-3"

    # one fast verification suite end to end
    report = json.loads(m.verify_suite("milnor"))
    assert report["pass"] is True
    assert all(c["status"] == "pass" for c in report["checks"])

    print("smoke test: all assertions passed")


if __name__ == "__main__":
    main()
