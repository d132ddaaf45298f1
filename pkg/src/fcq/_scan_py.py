"""NumPy version of the theta scan, used when the compiled module is absent.

On E_rho the ratio |K(theta)|^2 / |K(0)|^2 is

    (a/A) / ((b/B) (c/C)^{2s})

with every factor rescaled so it stays representable in double precision
for rho anywhere in (1, 2^20]:

    a/A  uses weights C(2s+1,k) rho^{2n(k-s)}
    b/B  = 1 + sin^2(theta) / b1^2,            b1 = (rho - 1/rho)/2
    c/C  = 1 - 4x/(1+x)^2 sin^2(n theta),      x = rho^{-2n}

|K| is invariant under theta -> -theta and theta -> pi - theta, so only
the grid points theta = i pi/m in (0, pi/2] are visited. Skipping pi/2 < theta
<= pi also keeps the mirror image of the axis (theta = pi) out of the scan,
where rounding would otherwise report a spurious ratio of 1 + 1e-16.
"""

from math import comb, log

import numpy as np


def theta_scan_ratio(rho: float, n: int, s: int, m: int) -> tuple[float, float]:
    lr = log(rho)
    k = np.arange(s + 1)
    w = np.array([comb(2 * s + 1, j) for j in k], dtype=float) * np.exp(2.0 * n * (k - s) * lr)
    A = w.sum() ** 2
    b1 = 0.5 * (rho - 1.0 / rho)
    x = np.exp(-2.0 * n * lr)
    cfac = 4.0 * x / (1.0 + x) ** 2
    t = np.arange(1, m // 2 + 1) * (np.pi / m)
    ph = 2.0 * n * np.outer(t, k)
    a = (np.cos(ph) @ w) ** 2 + (np.sin(ph) @ w) ** 2
    bb = 1.0 + np.sin(t) ** 2 / (b1 * b1)
    cc = 1.0 - cfac * np.sin(n * t) ** 2
    q = a / A / (bb * cc ** (2 * s))
    i = int(np.argmax(q))
    if q[i] > 1.0:
        return float(t[i]), float(q[i])
    return 0.0, 1.0
