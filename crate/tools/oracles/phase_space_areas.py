#!/usr/bin/env python3
"""Dual-scheme oracle for phase-space sublevel areas.

Area A: modified-Mathieu well, 2 * int_{-x0}^{x0} sqrt(lambda - a*cosh(2 mu x)) dx
        at a = mu = 1, lambda = 2, x0 = arccosh(2)/2.
  scheme 1: mpmath.quad after the substitution x = x0 * sin(theta) (removes the
            square-root endpoint singularity),
  scheme 2: scipy.integrate.quad with weight-free adaptive rule directly on
            [-x0, x0] plus endpoint splitting.

Area B: flat-circle comparison, int_0^1 2*sqrt(lambda - cos(2 pi x)) dx at
        lambda = 2 (smooth integrand), mpmath vs scipy.

Run:  python3 tools/oracles/phase_space_areas.py
"""

import mpmath as mp
import numpy as np
from scipy.integrate import quad

mp.mp.dps = 40


def mathieu_area_mp(lam, a=1.0, mu=1.0):
    x0 = mp.acosh(mp.mpf(lam) / a) / (2 * mu)

    def g(theta):
        x = x0 * mp.sin(theta)
        return mp.sqrt(lam - a * mp.cosh(2 * mu * x)) * x0 * mp.cos(theta)

    return 2 * mp.quad(g, [-mp.pi / 2, 0, mp.pi / 2])


def mathieu_area_fp(lam, a=1.0, mu=1.0):
    x0 = float(np.arccosh(lam / a) / (2 * mu))
    val, err = quad(lambda x: 2.0 * np.sqrt(max(lam - a * np.cosh(2 * mu * x), 0.0)),
                    -x0, x0, epsabs=1e-13, epsrel=1e-12, limit=400,
                    points=[-x0, 0.0, x0])
    return val


def circle_area_mp(lam):
    return mp.quad(lambda x: 2 * mp.sqrt(lam - mp.cos(2 * mp.pi * x)), [0, mp.mpf(1) / 2, 1])


def main():
    for lam in (2.0, 5.0):
        va = mathieu_area_mp(lam)
        vb = mathieu_area_fp(lam)
        assert abs(va - vb) < 1e-10, (lam, va, vb)
        print(f"mathieu area, a=mu=1, lambda={lam}: {mp.nstr(va, 18)}")

    va = circle_area_mp(2.0)
    vb, _ = quad(lambda x: 2.0 * np.sqrt(2.0 - np.cos(2 * np.pi * x)), 0, 1,
                 epsabs=1e-13, epsrel=1e-13)
    assert abs(va - vb) < 1e-11, (va, vb)
    print(f"circle area, V=cos(2 pi x), lambda=2: {mp.nstr(va, 18)}")

    # derivative sanity for the mathieu area: d(area)/d(lambda) = int (lam-V)_+^{-1/2} dx
    lam = 2.0
    d = (mathieu_area_mp(lam + 1e-5) - mathieu_area_mp(lam - 1e-5)) / 2e-5
    x0 = mp.acosh(mp.mpf(lam)) / 2
    dd = mp.quad(lambda th: (lam - mp.cosh(2 * x0 * mp.sin(th))) ** mp.mpf(-0.5)
                 * x0 * mp.cos(th), [-mp.pi / 2, 0, mp.pi / 2])
    print(f"d(area)/d(lambda) central diff = {mp.nstr(d, 10)}, quadrature = {mp.nstr(dd, 10)}")


if __name__ == "__main__":
    main()
