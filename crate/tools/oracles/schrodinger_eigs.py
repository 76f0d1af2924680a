#!/usr/bin/env python3
"""Dual-scheme oracle for the 1D Schrodinger eigenvalue golden values.

Case A: periodic circle, -h^2 u'' + cos(2*pi*x) u on the unit circle, h = 0.1.
  scheme 1: second-order finite differences on n = 4000 and n = 8000 periodic
            grids with Richardson extrapolation (order 2),
  scheme 2: Fourier (plane-wave) spectral matrix truncated at |k| <= 60,
            converged to machine precision.
  The extrapolated FD values and the spectral values must agree to ~1e-8;
  the frozen golden values are the spectral ones.

Case B: Dirichlet line, -u'' + cosh(2x) u truncated to [-L, L], first 5
  eigenvalues (a = mu = eps = 1).
  scheme 1: FD n = 8000 / n = 16000 with Richardson extrapolation at L = 3.5,
  scheme 2: the same at L = 4.5 (truncation independence),
  Both must agree to 1e-9.

Run:  python3 tools/oracles/schrodinger_eigs.py
"""

import numpy as np
from scipy.linalg import eigh_tridiagonal, eigh


def periodic_fd_eigs(h, n, k):
    dx = 1.0 / n
    x = np.arange(n) * dx
    v = np.cos(2 * np.pi * x)
    kin = h * h / (dx * dx)
    m = np.zeros((n, n))
    idx = np.arange(n)
    m[idx, idx] = 2 * kin + v
    m[idx, (idx + 1) % n] = -kin
    m[(idx + 1) % n, idx] = -kin
    w = eigh(m, eigvals_only=True, subset_by_index=(0, k - 1))
    return w


def periodic_fourier_eigs(h, kmax, k):
    # basis e^{2 pi i m x}, m = -kmax..kmax; cos(2 pi x) couples m <-> m+-1 by 1/2
    ms = np.arange(-kmax, kmax + 1)
    n = len(ms)
    m = np.zeros((n, n))
    m[np.arange(n), np.arange(n)] = (2 * np.pi * ms * h) ** 2
    m[np.arange(n - 1), np.arange(1, n)] = 0.5
    m[np.arange(1, n), np.arange(n - 1)] = 0.5
    w = np.linalg.eigvalsh(m)
    return np.sort(w)[:k]


def dirichlet_fd_eigs(L, n, k):
    dx = 2 * L / (n + 1)
    x = -L + dx * np.arange(1, n + 1)
    v = np.cosh(2 * x)
    d = 2.0 / (dx * dx) + v
    e = np.full(n - 1, -1.0 / (dx * dx))
    w = eigh_tridiagonal(d, e, select="i", select_range=(0, k - 1))[0]
    return w


def richardson(coarse, fine):
    # second-order scheme, grid ratio 2: error ~ C h^2
    return fine + (fine - coarse) / 3.0


def main():
    print("# Case A: periodic circle, V = cos(2 pi x), h = 0.1, first 5 eigenvalues")
    a4 = periodic_fd_eigs(0.1, 4000, 5)
    a8 = periodic_fd_eigs(0.1, 8000, 5)
    ext = richardson(a4, a8)
    spec = periodic_fourier_eigs(0.1, 60, 5)
    spec2 = periodic_fourier_eigs(0.1, 80, 5)
    print("  n=4000 vs n=8000 max diff:", np.max(np.abs(a8 - a4)))
    print("  FD-extrapolated vs spectral max diff:", np.max(np.abs(ext - spec)))
    print("  spectral kmax=60 vs 80 max diff:", np.max(np.abs(spec - spec2)))
    for i, v in enumerate(spec):
        print(f"  lambda[{i}] = {v:.15f}")

    print("# Case B: Dirichlet line, V = cosh(2x), eps = 1, first 5 eigenvalues")
    b8 = dirichlet_fd_eigs(3.5, 8000, 5)
    b16 = dirichlet_fd_eigs(3.5, 16000, 5)
    ext1 = richardson(b8, b16)
    c8 = dirichlet_fd_eigs(4.5, 8000, 5)
    c16 = dirichlet_fd_eigs(4.5, 16000, 5)
    ext2 = richardson(c8, c16)
    print("  n=8000 vs n=16000 (L=3.5) max diff:", np.max(np.abs(b16 - b8)))
    print("  L=3.5 vs L=4.5 extrapolated max diff:", np.max(np.abs(ext1 - ext2)))
    for i, v in enumerate(ext2):
        print(f"  lambda[{i}] = {v:.15f}")

    print("# harmonic-approximation sanity: ground state vs 1 + eps*sqrt(2) at eps=0.05")
    e05 = dirichlet_fd_eigs_eps(0.05, 1.2, 6000, 1)[0]
    approx = 1 + 0.05 * np.sqrt(2.0)
    print(f"  ground = {e05:.10f}, harmonic approx = {approx:.10f}, rel diff = {abs(e05-approx)/approx:.2e}")


def dirichlet_fd_eigs_eps(eps, L, n, k):
    dx = 2 * L / (n + 1)
    x = -L + dx * np.arange(1, n + 1)
    v = np.cosh(2 * x)
    d = eps * eps * 2.0 / (dx * dx) + v
    e = np.full(n - 1, -eps * eps / (dx * dx))
    return eigh_tridiagonal(d, e, select="i", select_range=(0, k - 1))[0]


if __name__ == "__main__":
    main()
