#!/usr/bin/env python3
"""Dual-scheme oracle for the reduced symbol-trace integrals.

Computes S(b, t) = (1/2) * integral over R of  (b*eta / sinh(b*t*eta)) * exp(-t*eta^2) d eta
with the integrand patched at eta = 0 (value b/(b*t) = 1/t; for b = 0 the
continuous extension is (1/t) * exp(-t*eta^2)).

Two independent schemes must agree to 1e-12 before a value is accepted:
  scheme A: mpmath.quad (tanh-sinh) at 40-digit working precision,
  scheme B: scipy.integrate.quad (adaptive Gauss-Kronrod) in double precision.

The b = 1 family is the Heisenberg reduced trace; general b = 2*alpha/(1+alpha^2)
is the Sol-manifold symbol trace.

Run:  python3 tools/oracles/reduced_trace_integrals.py
"""

import mpmath as mp
from scipy.integrate import quad

mp.mp.dps = 40


def integrand_mp(eta, b, t):
    if eta == 0:
        return mp.mpf(1) / t
    x = b * t * eta
    if x == 0:
        return mp.exp(-t * eta**2) / t
    return (b * eta / mp.sinh(x)) * mp.exp(-t * eta**2)


def integrand_fp(eta, b, t):
    import math
    x = b * t * eta
    if abs(x) < 1e-8:
        core = (1.0 - x * x / 6.0) / t
    else:
        core = b * eta / math.sinh(x)
    return core * math.exp(-t * eta * eta)


def s_value(b, t):
    a = 0.5 * mp.quad(lambda e: integrand_mp(e, mp.mpf(b), mp.mpf(t)), [-mp.inf, 0, mp.inf])
    radius = max(40.0, 12.0 / t ** 0.5)
    bnum, err = quad(integrand_fp, -radius, radius, args=(b, t),
                     epsabs=1e-14, epsrel=1e-13, limit=800)
    bnum *= 0.5
    assert abs(a - bnum) < 1e-12 * max(1, abs(a)), (b, t, a, bnum)
    return a


def main():
    print("# b=1 (Heisenberg reduced trace (1/2) * int eta/sinh(t*eta) e^{-t*eta^2}):")
    for t in (0.1, 0.5, 1.0, 2.0, 5.0):
        v = s_value(1.0, t)
        print(f"  t={t:<4} S = {mp.nstr(v, 20)}")

    print("# small-t check against (1/(2t))*sqrt(pi/t):")
    t = 0.01
    v = s_value(1.0, t)
    lim = 0.5 / t * mp.sqrt(mp.pi / t)
    print(f"  t={t}: S = {mp.nstr(v, 16)}, limit = {mp.nstr(lim, 16)}, ratio = {mp.nstr(v/lim, 10)}")

    print("# Sol mismatch ratios 4*t^{3/2}*S(b,t)/(3*sqrt(pi)), b = 2a/(1+a^2):")
    for alpha in (1e-3, 0.1, 0.5, 1.0, 2.0, 10.0):
        for t in (0.5, 1.0, 2.0):
            b = 2 * alpha / (1 + alpha * alpha)
            v = s_value(b, t)
            ratio = 4 * mp.mpf(t) ** mp.mpf(1.5) * v / (3 * mp.sqrt(mp.pi))
            print(f"  alpha={alpha:<6} t={t:<4} ratio = {mp.nstr(ratio, 12)}")

    print("# 2D route cross-check at t=1 (diagonal kernel integrated over the plane):")
    t = mp.mpf(1)

    def kernel2d(p2, p3):
        if p3 == 0:
            return (4 * mp.pi * t) ** mp.mpf(-0.5) * mp.exp(-t * p2 * p2)
        x = 2 * p3 * t
        s = x / mp.sinh(x)
        return ((4 * mp.pi * t) ** mp.mpf(-0.5) * mp.sqrt(s) * mp.exp(-p3 * p3 * t)
                * mp.exp(-mp.tanh(p3 * t) * p2 * p2 / p3))

    v2d = mp.quad(lambda p3: mp.quad(lambda p2: kernel2d(p2, p3), [-mp.inf, 0, mp.inf]),
                  [-mp.inf, 0, mp.inf])
    v1d = s_value(1.0, 1.0)
    print(f"  2D = {mp.nstr(v2d, 16)}   reduced = {mp.nstr(v1d, 16)}   diff = {mp.nstr(v2d - v1d, 3)}")


if __name__ == "__main__":
    main()
