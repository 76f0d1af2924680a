#!/usr/bin/env python3
"""End-to-end sanity oracle for the lattice counts, heat traces and
semiclassical eigenvalue counts exercised by the acceptance suite.

All quantities here are recomputed independently (numpy enumeration /
scipy eigensolves) to fix the expected magnitudes and to size the runtime
discretizations before anything is frozen into tests.

Run:  python3 tools/oracles/lattice_and_counts.py
"""

import numpy as np
from scipy.linalg import eigh_tridiagonal


def torus_count(alpha, eps, lam):
    """#{(k,l) in Z^2 : (2pi)^2 [(k+alpha l)^2 + eps^2 (l-alpha k)^2]/(1+alpha^2) <= lam}"""
    s2 = 1 + alpha * alpha
    r2 = lam * s2 / (2 * np.pi) ** 2  # (k+alpha l)^2 + eps^2 (l-alpha k)^2 <= r2
    a0 = 1 + eps * eps * alpha * alpha
    b0 = alpha * (1 - eps * eps)
    c0 = alpha * alpha + eps * eps
    lmax = int(np.floor(np.sqrt(r2 * a0 / (eps * eps * s2 * s2))) + 2)
    ls = np.arange(-lmax, lmax + 1)
    disc = b0 * b0 * ls * ls - a0 * (c0 * ls * ls - r2)
    ok = disc >= 0
    lo = np.ceil((-b0 * ls[ok] - np.sqrt(disc[ok])) / a0)
    hi = np.floor((-b0 * ls[ok] + np.sqrt(disc[ok])) / a0)
    return int(np.sum(np.maximum(hi - lo + 1, 0)))


def torus_heat(alpha, eps, t):
    s2 = 1 + alpha * alpha
    c = t * (2 * np.pi) ** 2 / s2
    lmax = int(np.sqrt(40.0 * (1 + eps**2 * alpha**2) / (c * eps * eps * s2))) + 3
    kmax = int(np.sqrt(40.0 / c / (1 + eps**2 * alpha**2))) + 3
    ks = np.arange(-kmax - int(abs(alpha) * lmax) - 3, kmax + int(abs(alpha) * lmax) + 4)
    total = 0.0
    for l in range(-lmax, lmax + 1):
        q = c * ((ks + alpha * l) ** 2 + eps * eps * (l - alpha * ks) ** 2)
        total += np.exp(-q[q < 60]).sum()
    return total


def mathieu_count(eps, lam, L, n):
    dx = 2 * L / (n + 1)
    x = -L + dx * np.arange(1, n + 1)
    d = eps * eps * 2 / dx**2 + np.cosh(2 * x)
    e = np.full(n - 1, -eps * eps / dx**2)
    w = eigh_tridiagonal(d, e, select="v", select_range=(-1e9, lam))[0]
    return len(w)


def circle_fd_count(h, lam, n):
    dx = 1.0 / n
    kin = h * h / dx**2
    m = np.zeros((n, n))
    idx = np.arange(n)
    m[idx, idx] = 2 * kin
    m[idx, (idx + 1) % n] = -kin
    m[(idx + 1) % n, idx] = -kin
    w = np.linalg.eigvalsh(m)
    return int(np.sum(w <= lam))


def product_trace_fd(eps, t, n_x, n_y):
    def circle_eigs(h, n):
        dx = 1.0 / n
        kin = h * h / dx**2
        m = np.zeros((n, n))
        idx = np.arange(n)
        m[idx, idx] = 2 * kin
        m[idx, (idx + 1) % n] = -kin
        m[(idx + 1) % n, idx] = -kin
        return np.linalg.eigvalsh(m)

    zx = np.exp(-t * circle_eigs(1.0, n_x)).sum()
    zy = np.exp(-t * circle_eigs(eps, n_y)).sum()
    return zx * zy


def main():
    sqrt2 = np.sqrt(2.0)

    print("# torus counting, alpha=sqrt2")
    for eps, lam in [(0.01, 1e4)]:
        n = torus_count(sqrt2, eps, lam)
        pred = lam / (4 * np.pi * eps)
        print(f"  eps={eps} lam={lam}: count={n}, prediction={pred:.2f}, ratio={n/pred:.6f}")

    print("# torus counting, alpha=1 (rational 1/1)")
    n = torus_count(1.0, 0.01, 10.0)
    pred = np.sqrt(10.0) / (np.pi * np.sqrt(2)) / 0.01
    print(f"  eps=0.01 lam=10: count={n}, k=0 prediction={pred:.4f}, ratio={n/pred:.6f}")

    print("# torus counting, alpha=0 sanity")
    print("  eps=1 lam=1:", torus_count(0.0, 1.0, 1.0), " lam=40:", torus_count(0.0, 1.0, 40.0))

    print("# torus heat trace, alpha=sqrt2, t=1")
    samples = []
    for eps in (0.04, 0.02, 0.01):
        v = torus_heat(sqrt2, eps, 1.0)
        samples.append((eps, v))
        pred = 1 / (4 * np.pi * eps)
        print(f"  eps={eps}: trace={v:.8f}, 1/(4 pi t eps)={pred:.8f}, ratio={v/pred:.8f}")
    v = torus_heat(0.0, 1.0, 1.0)
    print(f"  alpha=0, eps=1: trace={v:.12f} (theta^2 ~ 1)")

    lx = np.log([s[0] for s in samples])
    ly = np.log([s[1] for s in samples])
    slope, intercept = np.polyfit(lx, ly, 1)
    c, gamma = np.exp(intercept), -slope
    print(f"  log-log fit over the three samples: c={c:.6f}, gamma={gamma:.6f},"
          f" c/(1/4pi)={c*4*np.pi:.5f}")

    print("# flat-circle eigenvalue count at h=0.01, lam=1")
    exact = 1 + 2 * int(np.floor(1.0 / (2 * np.pi * 0.01)))
    print(f"  exact spectrum count = {exact}, prediction 2/(2 pi h) = {1/np.pi/0.01:.4f}")
    for n in (800, 1000, 1500):
        c = circle_fd_count(0.01, 1.0, n)
        print(f"  FD count at n={n}: {c}")

    print("# product model LHS vs symbol prediction, V=0, t=1")
    for eps, n_y in [(0.01, 1200), (0.01, 1600), (0.01, 2000), (0.1, 600)]:
        lhs = product_trace_fd(eps, 1.0, 400, n_y)
        rhs = np.sqrt(np.pi) * (1 + 2 * np.exp(-4 * np.pi**2)) / (2 * np.pi * eps)
        print(f"  eps={eps:<5} n_y={n_y}: LHS={lhs:.6f}, RHS={rhs:.6f}, ratio={lhs/rhs:.6f}")

    print("# mathieu weyl count, a=mu=1, lam=5, area=7.52260985229203921")
    area = 7.52260985229203921
    for eps in (0.04, 0.02, 0.01):
        pred = area / (2 * np.pi * eps)
        L = np.arccosh(50.0) / 2
        for n in (2000, 3000, 4000):
            c = mathieu_count(eps, 5.0, L, n)
            print(f"  eps={eps:<5} n={n} L={L:.4f}: count={c}, prediction={pred:.2f}, ratio={c/pred:.5f}")


if __name__ == "__main__":
    main()
