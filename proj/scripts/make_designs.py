#!/usr/bin/env python3
"""Generate antipodally symmetric spherical t-design point sets on S^2.

A t-design is a point set whose equal-weight quadrature rule integrates
every spherical polynomial of degree <= t exactly.  For an antipodal set
all odd-degree moments vanish identically, so for odd t it suffices to
zero the even-degree harmonic moments 2..t-1.  We do that with a
Levenberg-Marquardt iteration on the moment residual vector, starting
from a jittered Fibonacci spiral.

Point counts follow N = 2*ceil(((t^2+t)/2 + 2)/2), the minimal even
count for which the antipodal moment system is not overdetermined
(modulo the 3-dimensional rotation group).

Output: one file per degree under data/designs/, one point per line,
three whitespace-separated reals, plus a manifest.json with residual
diagnostics (r_k = squared norm of the weighted degree-k moment vector
in a surface-orthonormal real harmonic basis).
"""

import json
import sys
import time
from pathlib import Path

import numpy as np

FOUR_PI = 4.0 * np.pi


def design_size(t: int) -> int:
    if t == 1:
        return 2
    half = (t * t + t) // 2 + 2
    return 2 * ((half + 1) // 2)


def norm_assoc_legendre(u, s, kmax):
    """Normalized associated Legendre S[k][m] at u=cos(theta), s=sin(theta).

    S_{k,m} = sqrt((2k+1)/(4pi) (k-m)!/(k+m)!) P_k^m(u), no Condon-Shortley.
    Returns dict (k,m) -> array over points, plus d/dtheta table.
    """
    npts = u.shape[0]
    S = {}
    S[(0, 0)] = np.full(npts, np.sqrt(1.0 / FOUR_PI))
    for m in range(1, kmax + 1):
        S[(m, m)] = s * np.sqrt((2 * m + 1) / (2.0 * m)) * S[(m - 1, m - 1)]
    for m in range(0, kmax):
        S[(m + 1, m)] = u * np.sqrt(2 * m + 3.0) * S[(m, m)]
    for m in range(0, kmax + 1):
        for k in range(m + 2, kmax + 1):
            a = np.sqrt((4.0 * k * k - 1.0) / (k * k - m * m))
            b = np.sqrt(((k - 1.0) ** 2 - m * m) / (4.0 * (k - 1.0) ** 2 - 1.0))
            S[(k, m)] = a * (u * S[(k - 1, m)] - b * S[(k - 2, m)])
    # dS/dtheta = (1/s) [k u S_{k,m} - sqrt((2k+1)/(2k-1)) sqrt(k^2-m^2) S_{k-1,m}]
    s_safe = np.where(np.abs(s) < 1e-12, 1e-12, s)
    dS = {}
    for (k, m), val in S.items():
        if k == 0:
            dS[(k, m)] = np.zeros(npts)
        else:
            c = np.sqrt((2 * k + 1.0) / (2 * k - 1.0)) * np.sqrt(float(k * k - m * m))
            prev = S[(k - 1, m)] if k - 1 >= m else np.zeros(npts)
            dS[(k, m)] = (k * u * val - c * prev) / s_safe
    return S, dS


def residual_and_jac(theta, phi, degrees, n_total, want_jac=True):
    """Moment residuals over even degrees and Jacobian wrt (theta, phi)."""
    u = np.cos(theta)
    s = np.sin(theta)
    kmax = max(degrees) if degrees else 0
    S, dS = norm_assoc_legendre(u, s, kmax)
    npts = theta.shape[0]
    w = 2.0 / n_total  # each free point represents an antipodal pair

    rows = []
    jac_t = []
    jac_p = []
    sq2 = np.sqrt(2.0)
    for k in degrees:
        for m in range(0, k + 1):
            if m == 0:
                B = S[(k, 0)]
                rows.append(w * B.sum())
                if want_jac:
                    jac_t.append(w * dS[(k, 0)])
                    jac_p.append(np.zeros(npts))
            else:
                c = np.cos(m * phi)
                sn = np.sin(m * phi)
                Bc = sq2 * S[(k, m)] * c
                Bs = sq2 * S[(k, m)] * sn
                rows.append(w * Bc.sum())
                rows.append(w * Bs.sum())
                if want_jac:
                    jac_t.append(w * sq2 * dS[(k, m)] * c)
                    jac_t.append(w * sq2 * dS[(k, m)] * sn)
                    jac_p.append(w * sq2 * S[(k, m)] * (-m) * sn)
                    jac_p.append(w * sq2 * S[(k, m)] * m * c)
    r = np.array(rows)
    if not want_jac:
        return r, None
    J = np.hstack([np.vstack(jac_t), np.vstack(jac_p)])
    return r, J


def fib_start(m, rng):
    """Fibonacci spiral of m points, jittered to break accidental symmetry."""
    i = np.arange(m, dtype=float)
    z = 1.0 - (2.0 * i + 1.0) / m
    ang = np.pi * (np.sqrt(5.0) + 1.0) * i
    theta = np.arccos(np.clip(z, -1, 1)) + 0.02 * rng.standard_normal(m)
    theta = np.clip(theta, 0.05, np.pi - 0.05)
    phi = np.mod(ang + 0.02 * rng.standard_normal(m), 2 * np.pi)
    return theta, phi


def solve_design(t, n, seed=0, max_iter=400):
    degrees = [k for k in range(2, t) if k % 2 == 0]
    m_free = n // 2
    rng = np.random.default_rng(seed + 1000 * t)
    theta, phi = fib_start(m_free, rng)
    if not degrees:
        return theta, phi, 0.0

    x = np.concatenate([theta, phi])
    lam = 1e-3
    r, J = residual_and_jac(x[:m_free], x[m_free:], degrees, n)
    cost = r @ r
    for _ in range(max_iter):
        if cost < 1e-28:
            break
        A = J.T @ J
        g = J.T @ r
        for _ in range(40):
            try:
                delta = np.linalg.solve(A + lam * np.eye(A.shape[0]), -g)
            except np.linalg.LinAlgError:
                lam *= 10
                continue
            xn = x + delta
            rn, _ = residual_and_jac(xn[:m_free], xn[m_free:], degrees, n, want_jac=False)
            cn = rn @ rn
            if cn < cost:
                x = xn
                cost = cn
                lam = max(lam * 0.3, 1e-14)
                r, J = residual_and_jac(x[:m_free], x[m_free:], degrees, n)
                break
            lam *= 10
            if lam > 1e12:
                break
        else:
            break
        if lam > 1e12:
            break
    return x[:m_free], x[m_free:], cost


def full_residuals(theta, phi, n_total, k_hi):
    """r_k for every degree 1..k_hi of the completed antipodal set."""
    u = np.cos(theta)
    s = np.sin(theta)
    S, _ = norm_assoc_legendre(u, s, k_hi)
    w = 2.0 / n_total
    sq2 = np.sqrt(2.0)
    out = {}
    for k in range(1, k_hi + 1):
        if k % 2 == 1:
            out[k] = 0.0  # antipodal symmetry, exactly
            continue
        acc = 0.0
        for m in range(0, k + 1):
            if m == 0:
                acc += (w * S[(k, 0)].sum()) ** 2
            else:
                acc += (w * (sq2 * S[(k, m)] * np.cos(m * phi)).sum()) ** 2
                acc += (w * (sq2 * S[(k, m)] * np.sin(m * phi)).sum()) ** 2
        out[k] = acc
    return out


def main():
    out_dir = Path(__file__).resolve().parent.parent / "data" / "designs"
    out_dir.mkdir(parents=True, exist_ok=True)
    degrees = [int(a) for a in sys.argv[1:]] or list(range(1, 46, 2))
    manifest = {}
    for t in degrees:
        n = design_size(t)
        t0 = time.time()
        for attempt in range(6):
            theta, phi, cost = solve_design(t, n, seed=attempt)
            if cost < 1e-24:
                break
            if attempt >= 2:
                n += 2  # loosen the count if the tight one will not converge
        res = full_residuals(theta, phi, n, min(t + 3, 60))
        worst = max(res[k] for k in range(1, t + 1))
        pts = np.column_stack(
            [np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)]
        )
        pts = np.vstack([pts, -pts])
        fname = out_dir / f"design_s2_t{t:03d}_n{n:05d}.txt"
        with open(fname, "w") as f:
            for p in pts:
                f.write(f"{p[0]:.17g} {p[1]:.17g} {p[2]:.17g}\n")
        manifest[t] = {
            "n": n,
            "file": fname.name,
            "max_resid_upto_t": worst,
            "resid_next_even": res.get(t + 1 if (t + 1) % 2 == 0 else t + 2, None),
            "seconds": round(time.time() - t0, 2),
        }
        print(
            f"t={t:3d} n={n:5d} worst r_k(k<=t)={worst:.3e} "
            f"r_next_even={manifest[t]['resid_next_even']:.3e} "
            f"[{manifest[t]['seconds']}s]",
            flush=True,
        )
        if worst > 1e-12:
            print(f"  WARNING: t={t} did not reach target residual", flush=True)
    with open(out_dir / "manifest.json", "w") as f:
        json.dump(manifest, f, indent=1)


if __name__ == "__main__":
    main()
