"""Smoke test for the neile_py extension module.

Build the module first, then run this script with any Python >= 3.10:

    cargo build --release -p neile-py
    python3 python/smoke_test.py
"""

import json
import math
import shutil
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]


def load_module():
    candidates = [
        ROOT / "target" / "release" / "libneile_py.so",
        ROOT / "target" / "debug" / "libneile_py.so",
    ]
    built = [p for p in candidates if p.exists()]
    if not built:
        sys.exit("libneile_py.so not found; run `cargo build --release -p neile-py` first")
    newest = max(built, key=lambda p: p.stat().st_mtime)
    staging = Path(tempfile.mkdtemp(prefix="neile_py_"))
    shutil.copy2(newest, staging / "neile_py.so")
    sys.path.insert(0, str(staging))
    import neile_py

    return neile_py


def close(a, b, tol=1e-12):
    return abs(a - b) <= tol


def main():
    neile = load_module()

    assert close(neile.pseudo_hyperbolic(0.5, -0.5), 0.8, 1e-15)
    assert close(neile.caratheodory_mobius(0.5, -0.5), 16 / 65, 1e-15)
    assert close(neile.caratheodory_distance(0.5, -0.5), math.atanh(16 / 65), 1e-15)
    assert close(neile.kobayashi_distance(0.5, -0.5), math.atanh(0.8), 1e-15)
    assert neile.caratheodory_mobius(0.0, 0.5j) == 0.25

    data = neile.extremal_parameters(0.5, -0.5)
    assert data["regime"] == "interior"
    assert data["alpha0"] == 0
    assert close(data["mobius_value"], 16 / 65, 1e-15)

    z, w = neile.parameterize(0.5)
    assert z == 0.125 and w == 0.25
    assert neile.uniformize(0.125, 0.25) == 0.5
    assert close(neile.mobius(0.5, 0.2), 1 / 3, 1e-15)

    assert neile.caratheodory_metric(0.0, 1.0, 0.0) == 1.0
    assert neile.caratheodory_metric(0.0, 0.0, 1.0) == 1.0
    assert close(neile.caratheodory_metric(0.5, 0.375, 0.5), 8 / 15, 1e-15)

    feas = neile.feasibility(0.5, -0.5, 0.0, 0.1, -0.1)
    assert feas["feasible"]
    assert close(feas["margin"], math.atanh(16 / 65) - math.atanh(0.2 / 1.01), 1e-12)

    sol = neile.interpolate(0.5, -0.5, 0.0, 0.1, -0.1)
    assert sol.kind == "slack" and sol.order is None
    assert abs(sol.eval(0.5) - 0.1) < 1e-12
    assert abs(sol.eval(-0.5) + 0.1) < 1e-12
    assert abs(sol.derivative(0.0)) < 1e-12
    assert abs(sol.eval(0.3)) < 1.0

    try:
        neile.caratheodory_mobius(1.5, 0.2)
    except ValueError:
        pass
    else:
        raise AssertionError("points outside the disk must raise ValueError")

    cert = neile.lower_bound_certificate()
    assert cert["bound"] == 1.25
    assert cert["partial_z"] == -0.75 and cert["partial_w"] == 0.5

    ext = neile.realize_blaschke(1.0, [0.0, 0.0, 0.5], neile.certificate_points())
    assert close(ext.bound, math.sqrt(2), 1e-12)
    assert abs(ext.eval(0.0, 0.0)) < 1e-9
    h = 1e-5
    dz = (ext.eval(h, 0.0) - ext.eval(-h, 0.0)) / (2 * h)
    dw = (ext.eval(0.0, h) - ext.eval(0.0, -h)) / (2 * h)
    assert abs(dz + 0.75) < 1e-6 and abs(dw - 0.5) < 1e-6
    assert abs(ext.eval(0.9, 0.9)) <= math.sqrt(2) + 1e-9

    reports = json.loads(neile.verify("quick", 7))
    assert len(reports) == 16
    assert all(row["pass"] for row in reports)

    print("smoke test: all checks passed")


if __name__ == "__main__":
    main()
