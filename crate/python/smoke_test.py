#!/usr/bin/env python3
"""Smoke test for the adialab_py extension module.

Builds the cdylib with cargo (unless ADIALAB_PY_SO points at an existing
artifact), imports it, and drives one check through every corner of the
bound surface: torus counts and traces, Heisenberg consistency, the Sol
mismatch, the circle reference models, and the generic numerics.

Run from the repository root:  python3 python/smoke_test.py
"""

import math
import os
import shutil
import subprocess
import sys
import tempfile

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))

CHECKS = []


def check(name, ok, detail=""):
    CHECKS.append((name, ok))
    status = "PASS" if ok else "FAIL"
    print(f"[{status}] {name}" + (f"  ({detail})" if detail else ""))


def close(a, b, rel=1e-9):
    return abs(a - b) <= rel * max(abs(a), abs(b), 1e-300)


def build_and_import():
    so = os.environ.get("ADIALAB_PY_SO")
    if not so:
        subprocess.run(
            ["cargo", "build", "-p", "adialab-py"],
            cwd=ROOT,
            check=True,
        )
        so = os.path.join(ROOT, "target", "debug", "libadialab_py.so")
    stage = tempfile.mkdtemp(prefix="adialab-py-")
    shutil.copy(so, os.path.join(stage, "adialab_py.so"))
    sys.path.insert(0, stage)
    import adialab_py

    return adialab_py


def main():
    al = build_and_import()
    sqrt2 = math.sqrt(2.0)
    pi = math.pi

    # torus: exact count against the leading-order prediction
    count = al.torus_counting(sqrt2, 0.01, 1e4)
    pred = al.torus_counting_prediction(sqrt2, 0.01, 1e4)
    check(
        "torus count within 3% of prediction",
        abs(count / pred - 1) < 0.03,
        f"{count} vs {pred:.2f}",
    )

    # rational branch via the declared fraction
    pred_rat = al.torus_counting_prediction(1.0, 0.1, 10.0, rational=(1, 1))
    check("rational prediction k=0 term", close(pred_rat, math.sqrt(10) / (pi * sqrt2) * 10, 1e-9))

    # heat trace vs nc-Weyl
    trace = al.torus_heat_trace(sqrt2, 0.01, 1.0)
    weyl = al.nc_weyl_prediction(1, 0.01, 0.5)
    check("torus heat trace matches nc-Weyl", abs(trace / weyl - 1) < 0.03, f"{trace:.6f}")

    closed, quadrature = al.torus_symbol_heat_trace(2.0)
    check("torus symbol trace 1/(2t)", close(closed, 0.25, 1e-14) and close(quadrature, 0.25, 1e-10))

    # heisenberg: kernels and the three-route consistency
    check(
        "mehler kernel free limit",
        close(al.mehler_kernel(0.0, 1.0, 1.0, 0.0), (4 * pi) ** -0.5 * math.exp(-0.25), 1e-12),
    )
    check(
        "oscillator trace closed form",
        close(al.oscillator_heat_trace(1.0, 1.0), 1 / (2 * math.sinh(1.0)), 1e-12),
    )
    rep = al.heisenberg_consistency(1.0, 0.1)
    check(
        "heisenberg three-route consistency",
        rep["pass"] and rep["max_rel_discrepancy"] < 1e-7,
        f"discrepancy {rep['max_rel_discrepancy']:.2e}",
    )

    # sol: matrix validation, Mathieu Weyl law, mismatch bound
    lam_a, orientation = al.sol_matrix_validate([[2, 1], [1, 1]])
    check("sol matrix expansion rate", close(lam_a, (3 + math.sqrt(5)) / 2, 1e-12), f"orient={orientation}")
    try:
        al.sol_matrix_validate([[1, 1], [0, 1]])
        check("parabolic matrix rejected", False)
    except ValueError:
        check("parabolic matrix rejected", True)

    weyl_rep = al.mathieu_weyl_check(1.0, 1.0, 0.02, 5.0)
    check(
        "mathieu semiclassical count",
        abs(weyl_rep["ratio"] - 1) < 0.03,
        f"count {weyl_rep['count']} vs {weyl_rep['prediction']:.2f}",
    )
    eigs = al.mathieu_eigs(1.0, 1.0, 1.0, 3, 25.0)
    check("mathieu ground state", close(eigs[0], 2.633838239, 1e-4), f"{eigs[0]:.6f}")

    ratios = [al.sol_mismatch_ratio(a, t, 0.1) for a in (0.5, 1.0, 2.0) for t in (0.5, 1.0, 2.0)]
    check(
        "sol mismatch strictly below 2/3",
        all(0 < r < 2 / 3 - 0.01 for r in ratios),
        f"max {max(ratios):.4f}",
    )
    lhs = al.nc_weyl_prediction(2, 0.1, al.sol_symbol_trace(0.0, 1.0))
    rhs = al.sol_riemannian_heat_trace_prediction(1.0, 0.1)
    check("sol alpha=0 coefficient identity", close(lhs, rhs, 1e-12))

    # circle reference models
    n = 600
    flat = [0.0] * n
    eigs = al.circle_schrodinger_eigs(flat, 1.0, 3)
    check(
        "flat circle spectrum 0, 4pi^2, 4pi^2",
        abs(eigs[0]) < 1e-6 and close(eigs[1], 4 * pi * pi, 1e-3) and close(eigs[2], 4 * pi * pi, 1e-3),
    )
    count31 = al.circle_count_leq(flat, 0.01, 1.0)
    check("flat circle count at h=0.01", count31 == 31, f"count {count31}")
    area = al.weyl_phase_area_1d(lambda x: 0.0, 4.0)
    check("flat phase area 2 sqrt(lambda)", close(area, 4.0, 1e-10))

    lhs = al.product_lhs_trace(0.05, 1.0)
    rhs = al.operator_symbol_trace(1.0) / (2 * pi * 0.05)
    check("product model vs operator symbol trace", abs(lhs / rhs - 1) < 0.02, f"ratio {lhs/rhs:.6f}")

    check(
        "adiabatic counting transform",
        close(al.adiabatic_counting_power_law(1 / pi, 0.5, 1, 10.0), 10.0 / (4 * pi), 1e-12),
    )

    # numerics
    fit = al.fit_power_law([(0.1, 100.0), (0.01, 10000.0)])
    check(
        "power-law fit exact recovery",
        close(fit["coefficient"], 1.0, 1e-12) and close(fit["exponent"], 2.0, 1e-12),
    )
    gauss = al.integrate_line(lambda x: math.exp(-x * x), 1.0)
    check("line integral of the Gaussian", close(gauss, math.sqrt(pi), 1e-11))
    try:
        al.integrate_line(lambda x: 1.0 / 0.0, 1.0)
        check("python exceptions propagate from integrands", False)
    except ZeroDivisionError:
        check("python exceptions propagate from integrands", True)

    failed = [name for name, ok in CHECKS if not ok]
    print()
    print(f"{len(CHECKS) - len(failed)}/{len(CHECKS)} smoke checks passed")
    if failed:
        print("failed:", ", ".join(failed))
        sys.exit(1)


if __name__ == "__main__":
    main()
