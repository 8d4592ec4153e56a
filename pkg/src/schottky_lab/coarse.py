"""Empirical word-length estimates: interval lengths Upsilon_w and their
coarse regularities (multiplicativity under concatenation, mirror symmetry,
derivative comparability, geometric decay).

The comparability constants are not available in closed form, so they are
measured over exhaustive word sets and reported; tests freeze the measured
intervals and assert stability as the word length grows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .mobius import MobiusMap
from .schottky import SchottkyData
from .words import Word, mirror_letter


class WordTable:
    """Exhaustive table of word maps and interval data up to a fixed length.

    Built by one depth-first sweep: the map carried at each node is the map
    of the node's word, which is exactly the backspace map of each child, so
    every interval costs two endpoint evaluations.
    """

    def __init__(self, data: SchottkyData, max_len: int):
        self.data = data
        self.max_len = max_len
        self.upsilons: dict[tuple[int, ...], float] = {}
        self.intervals: dict[tuple[int, ...], tuple[float, float]] = {}
        self.maps: dict[tuple[int, ...], MobiusMap] = {(): MobiusMap.identity()}
        self._build()

    def _build(self):
        data = self.data
        stack: list[tuple[tuple[int, ...], MobiusMap]] = [((), MobiusMap.identity())]
        while stack:
            tup, m = stack.pop()
            if len(tup) >= self.max_len:
                continue
            banned = mirror_letter(tup[-1], data.n_gens) if tup else 0
            for b in data.letters:
                if b == banned:
                    continue
                child = tup + (b,)
                lo, hi = data.disk(b).interval
                x = m(complex(lo)).real
                y = m(complex(hi)).real
                left, right = (x, y) if x <= y else (y, x)
                self.intervals[child] = (left, right)
                self.upsilons[child] = right - left
                child_map = m.compose(data.gen(b))
                self.maps[child] = child_map
                stack.append((child, child_map))

    def upsilon(self, w) -> float:
        tup = w.letters if isinstance(w, Word) else tuple(w)
        return self.upsilons[tup]

    def words(self, length: int) -> list[tuple[int, ...]]:
        return sorted(t for t in self.upsilons if len(t) == length)


def rough_multiplicativity_range(
    table: WordTable, max_len: int
) -> tuple[float, float]:
    """Range of Upsilon_{w1 w2} / (Upsilon_{w1} Upsilon_{w2}) over all
    reduced concatenations with |w1 w2| <= max_len."""
    lo, hi = math.inf, -math.inf
    ups = table.upsilons
    for tup, u in ups.items():
        if not 2 <= len(tup) <= max_len:
            continue
        for k in range(1, len(tup)):
            ratio = u / (ups[tup[:k]] * ups[tup[k:]])
            if ratio < lo:
                lo = ratio
            if ratio > hi:
                hi = ratio
    return lo, hi


def mirror_ratio_max(table: WordTable, max_len: int) -> float:
    """Max of Upsilon_w / Upsilon_{w^-1} (both orientations), |w| <= max_len."""
    n = table.data.n_gens
    worst = 1.0
    for tup, u in table.upsilons.items():
        if len(tup) > max_len:
            continue
        inv = tuple(mirror_letter(a, n) for a in reversed(tup))
        r = u / table.upsilons[inv]
        worst = max(worst, r, 1.0 / r)
    return worst


def disk_grid(center: float, radius: float, n_points: int = 50) -> np.ndarray:
    """Deterministic grid in an open disk: center plus concentric rings."""
    pts = [complex(center, 0.0)]
    rings = [(0.35, 12), (0.65, 17), (0.92, n_points - 30)]
    for rho, count in rings:
        ang = 2.0 * np.pi * np.arange(count) / count
        pts.extend(center + radius * rho * np.exp(1j * ang))
    return np.asarray(pts[:n_points])


def derivative_ratio_range(
    table: WordTable, max_len: int, n_grid: int = 50
) -> tuple[float, float]:
    """Range of |backspace(w)'(z)| / Upsilon_w over 2 <= |w| <= max_len and a
    fixed grid of z in D_{E(w)}."""
    data = table.data
    lo, hi = math.inf, -math.inf
    grids = {
        a: disk_grid(data.disk(a).center, data.disk(a).radius, n_grid)
        for a in data.letters
    }
    for tup, u in table.upsilons.items():
        if not 2 <= len(tup) <= max_len:
            continue
        m = table.maps[tup[:-1]]
        vals = np.abs(m.derivative(grids[tup[-1]])) / u
        lo = min(lo, float(vals.min()))
        hi = max(hi, float(vals.max()))
    return lo, hi


@dataclass(frozen=True)
class GeometricRates:
    """Fitted decay rates of min/max Upsilon over Gamma_ell.

    theta_hat (from the min envelope) and tau_hat (from the max envelope)
    play the roles of the lower/upper geometric bounds on word-interval
    lengths; both must land in (0, 1) with theta_hat <= tau_hat.
    """

    theta_hat: float
    tau_hat: float
    lengths: tuple[int, ...]
    min_upsilon: tuple[float, ...]
    max_upsilon: tuple[float, ...]


def exponential_rates(table: WordTable, lengths=range(2, 9)) -> GeometricRates:
    lengths = tuple(lengths)
    mins, maxs = [], []
    by_len: dict[int, list[float]] = {}
    for tup, u in table.upsilons.items():
        by_len.setdefault(len(tup), []).append(u)
    for ell in lengths:
        vals = by_len[ell]
        mins.append(min(vals))
        maxs.append(max(vals))
    ells = np.asarray(lengths, dtype=float)
    slope_min = np.polyfit(ells, np.log(mins), 1)[0]
    slope_max = np.polyfit(ells, np.log(maxs), 1)[0]
    return GeometricRates(
        theta_hat=float(np.exp(slope_min)),
        tau_hat=float(np.exp(slope_max)),
        lengths=lengths,
        min_upsilon=tuple(mins),
        max_upsilon=tuple(maxs),
    )


@dataclass(frozen=True)
class CoarseReport:
    """All four word-length regularity measurements in one record."""

    max_len: int
    rough_mult: tuple[float, float]
    mirror_max: float
    deriv_ratio: tuple[float, float]
    rates: GeometricRates


def coarse_report(data: SchottkyData, max_len: int = 7, rate_max_len: int = 8) -> CoarseReport:
    table = WordTable(data, max(max_len, rate_max_len))
    return CoarseReport(
        max_len=max_len,
        rough_mult=rough_multiplicativity_range(table, max_len),
        mirror_max=mirror_ratio_max(table, max_len),
        deriv_ratio=derivative_ratio_range(table, max_len),
        rates=exponential_rates(table, range(2, rate_max_len + 1)),
    )
