"""Limit-set dimension via the thermodynamic zero: the unique real s in
(0, 1) where the untwisted transfer operator has leading eigenvalue 1.

The leading eigenvalue is computed by power iteration (the dominant
eigenvalue at real s is simple and positive), and the root is bracketed by
bisection and polished by secant steps.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bergman import BergmanBasis, TransferKernel, trivial_rep
from .schottky import SchottkyData


class PowerIterationError(RuntimeError):
    pass


def leading_eigenvalue(
    s: float,
    basis: BergmanBasis,
    kernel: TransferKernel | None = None,
    tol: float = 1e-12,
    maxiter: int = 10000,
) -> float:
    """Spectral radius of the untwisted operator at real s by power iteration."""
    if kernel is None:
        kernel = TransferKernel(basis, 1)
    t = kernel.assemble(complex(s), trivial_rep(basis.data), check=False)
    a = t.entries
    n = a.shape[0]
    v = np.full(n, 1.0 / np.sqrt(n), dtype=complex)
    lam = 0.0
    for it in range(maxiter):
        u = a @ v
        nu = np.linalg.norm(u)
        if nu == 0.0:
            return 0.0
        v_new = u / nu
        lam_new = float(np.vdot(v_new, a @ v_new).real)
        if abs(lam_new - lam) <= tol * max(abs(lam_new), 1e-300):
            resid = float(np.linalg.norm(a @ v_new - lam_new * v_new))
            if resid <= 1e-8 * max(abs(lam_new), 1e-300):
                return lam_new
        lam = lam_new
        v = v_new
    raise PowerIterationError(
        f"no convergence at s={s} after {maxiter} iterations "
        f"(last lambda {lam}, dim {n})"
    )


@dataclass(frozen=True)
class DimensionResult:
    delta: float
    residual: float
    degree: int
    bracket: tuple[float, float]


def bowen_dim(
    basis: BergmanBasis,
    tol: float = 1e-10,
    bracket: tuple[float, float] = (0.01, 0.99),
) -> DimensionResult:
    """Solve lambda(s) = 1 for real s in (0, 1).

    Starts from the given bracket, shrinks it geometrically if an endpoint
    fails to straddle 1, bisects to a narrow interval and finishes with
    secant steps on lambda(s) - 1.
    """
    if tol < 1e-12:
        raise ValueError("tol must be >= 1e-12")
    kernel = TransferKernel(basis, 1)

    def lam(s: float) -> float:
        return leading_eigenvalue(s, basis, kernel=kernel)

    lo, hi = bracket
    f_lo, f_hi = lam(lo) - 1.0, lam(hi) - 1.0
    shrink = 0
    while f_lo <= 0.0 and shrink < 8:
        lo *= 0.5
        f_lo = lam(lo) - 1.0
        shrink += 1
    while f_hi >= 0.0 and shrink < 16:
        hi = 0.5 * (hi + 1.0)
        f_hi = lam(hi) - 1.0
        shrink += 1
    if not (f_lo > 0.0 > f_hi):
        raise ValueError(
            f"could not bracket lambda(s) = 1 in (0, 1): "
            f"lambda({lo}) = {f_lo + 1.0}, lambda({hi}) = {f_hi + 1.0}; "
            "check the Schottky data or raise the truncation degree"
        )
    if not f_lo > f_hi:
        raise ValueError("lambda is not decreasing across the bracket")

    while hi - lo > 1e-4:
        mid = 0.5 * (lo + hi)
        f_mid = lam(mid) - 1.0
        if f_mid > 0.0:
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid

    # secant polish inside the bracket
    s0, f0 = lo, f_lo
    s1, f1 = hi, f_hi
    best_s, best_f = (s0, f0) if abs(f0) < abs(f1) else (s1, f1)
    for _ in range(60):
        if abs(best_f) < tol:
            break
        denom = f1 - f0
        if denom == 0.0:
            break
        s2 = s1 - f1 * (s1 - s0) / denom
        s2 = min(max(s2, lo), hi)
        f2 = lam(s2) - 1.0
        s0, f0, s1, f1 = s1, f1, s2, f2
        if abs(f2) < abs(best_f):
            best_s, best_f = s2, f2
        if f2 > 0.0:
            lo = max(lo, s2)
        else:
            hi = min(hi, s2)
    if abs(best_f) >= tol:
        raise ValueError(
            f"secant polish stalled: |lambda - 1| = {abs(best_f)} >= tol {tol}"
        )
    return DimensionResult(
        delta=best_s, residual=abs(best_f), degree=basis.degree, bracket=(lo, hi)
    )


def bowen_dim_for(data: SchottkyData, degree: int = 16, tol: float = 1e-10) -> DimensionResult:
    return bowen_dim(BergmanBasis(data, degree), tol=tol)
