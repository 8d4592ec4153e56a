"""Schottky data: paired disks and generators with the ping-pong conditions.

A rank-N configuration consists of 2N open disks D_1..D_2N centered on the
real line with pairwise disjoint closures, and maps gamma_1..gamma_2N in
PSL(2, R) with gamma_{mirror(a)} = gamma_a^{-1}, such that gamma_a sends the
complement of D_{mirror(a)} onto the closure of D_a.  Everything downstream
(word disks, intervals, chain-rule logarithms) is derived from this data.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .mobius import INF, Disk, MobiusMap
from .words import Word, mirror_letter, words_of_length

BOUNDARY_SAMPLES = 100
MAPPING_RTOL = 1e-8
INVERSE_TOL = 1e-10


class SchottkyDataError(ValueError):
    """Structurally broken input (wrong counts, non-inverse generator pairs)."""


class BranchCutError(ArithmeticError):
    """A chain-rule factor landed on the negative real axis."""


@dataclass(frozen=True)
class SchottkyData:
    """Validated-shape Schottky configuration (geometry checked separately).

    gens and disks are indexed by letters 1..2N (position a-1), with
    gens[mirror(a)-1] == gens[a-1].inverse() enforced at construction.
    """

    n_gens: int
    gens: tuple[MobiusMap, ...]
    disks: tuple[Disk, ...]

    def __post_init__(self):
        if self.n_gens < 2:
            raise SchottkyDataError(f"rank must be >= 2, got {self.n_gens}")
        two_n = 2 * self.n_gens
        if len(self.gens) != two_n or len(self.disks) != two_n:
            raise SchottkyDataError(
                f"need {two_n} generators and disks, got "
                f"{len(self.gens)} and {len(self.disks)}"
            )
        for a in range(1, self.n_gens + 1):
            g, ginv = self.gens[a - 1], self.gens[self.mirror(a) - 1]
            if ginv.compose(g).entry_distance(MobiusMap.identity()) > INVERSE_TOL:
                raise SchottkyDataError(
                    f"generator {self.mirror(a)} is not the inverse of {a}"
                )

    @classmethod
    def from_generators(
        cls, gens: Sequence[MobiusMap], disks: Sequence[Disk]
    ) -> "SchottkyData":
        """Build from the N basis generators; inverses are derived."""
        n = len(gens)
        full = tuple(gens) + tuple(g.inverse() for g in gens)
        return cls(n, full, tuple(disks))

    @property
    def letters(self) -> range:
        return range(1, 2 * self.n_gens + 1)

    def mirror(self, a: int) -> int:
        return mirror_letter(a, self.n_gens)

    def gen(self, a: int) -> MobiusMap:
        return self.gens[a - 1]

    def disk(self, a: int) -> Disk:
        return self.disks[a - 1]

    @property
    def margin(self) -> float:
        """Smallest gap between closed disks (negative means overlap)."""
        gaps = [
            self.disks[i].gap_to(self.disks[j])
            for i in range(len(self.disks))
            for j in range(i + 1, len(self.disks))
        ]
        return min(gaps)

    def words_of_length(self, length: int) -> Iterator[Word]:
        return words_of_length(self.n_gens, length)

    def word(self, *letters: int) -> Word:
        return Word(tuple(letters), self.n_gens)


@dataclass
class ValidationReport:
    """Outcome of the two ping-pong conditions plus structural checks."""

    ok: bool
    n_gens: int
    margin: float
    max_mapping_residual: float
    fatal: list[str] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)
    checks: dict[str, bool] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "n_gens": self.n_gens,
            "margin": self.margin,
            "max_mapping_residual": self.max_mapping_residual,
            "fatal": list(self.fatal),
            "failures": list(self.failures),
            "checks": dict(self.checks),
        }


def validate_schottky(
    data: SchottkyData, boundary_samples: int = BOUNDARY_SAMPLES
) -> ValidationReport:
    """Check disjointness (condition 1) and boundary mapping (condition 2).

    Mapping is tested on equispaced boundary samples of each D_{mirror(a)}:
    the image must land on the boundary circle of D_a within a relative
    tolerance, and gamma_a(infinity) must land inside D_a.
    """
    fatal: list[str] = []
    failures: list[str] = []
    checks: dict[str, bool] = {}

    two_n = 2 * data.n_gens
    margin = data.margin
    disjoint_ok = margin > 0.0
    checks["closure_disjointness"] = disjoint_ok
    if not disjoint_ok:
        for i in range(two_n):
            for j in range(i + 1, two_n):
                if data.disks[i].gap_to(data.disks[j]) <= 0.0:
                    failures.append(
                        f"closure disjointness: disks {i + 1} and {j + 1} "
                        f"overlap (gap {data.disks[i].gap_to(data.disks[j]):.3g})"
                    )

    max_residual = 0.0
    mapping_ok = True
    angles = 2.0 * math.pi * np.arange(boundary_samples) / boundary_samples
    for a in data.letters:
        g = data.gen(a)
        src = data.disk(data.mirror(a))
        dst = data.disk(a)
        pts = src.center + src.radius * np.exp(1j * angles)
        images = g(pts)
        residual = float(np.max(np.abs(np.abs(images - dst.center) - dst.radius)))
        max_residual = max(max_residual, residual)
        if residual > MAPPING_RTOL * dst.radius:
            mapping_ok = False
            failures.append(
                f"mapping condition: gen {a} sends boundary of disk "
                f"{data.mirror(a)} off the boundary of disk {a} "
                f"(residual {residual:.3g})"
            )
        image_inf = g(INF)
        if cmath.isinf(image_inf) or not dst.contains(image_inf):
            mapping_ok = False
            failures.append(
                f"mapping condition: gen {a} sends infinity to {image_inf}, "
                f"outside disk {a}"
            )
    checks["boundary_mapping"] = mapping_ok

    ok = not fatal and disjoint_ok and mapping_ok
    return ValidationReport(
        ok=ok,
        n_gens=data.n_gens,
        margin=margin,
        max_mapping_residual=max_residual,
        fatal=fatal,
        failures=failures,
        checks=checks,
    )


def word_map(data: SchottkyData, w: Word) -> MobiusMap:
    """Product gen(a_1) ... gen(a_k); the empty word gives the identity.

    Accumulated in extended precision: intermediate entries can exceed the
    final ones by several orders (hyperbolic cancellation), which would cost
    ~7 digits in plain float64 for words of length 5.
    """
    m = np.eye(2, dtype=np.longdouble)
    for a in w:
        g = data.gen(a)
        m = m @ np.array([[g.a, g.b], [g.c, g.d]], dtype=np.longdouble)
    return MobiusMap(float(m[0, 0]), float(m[0, 1]), float(m[1, 0]), float(m[1, 1]))


@dataclass(frozen=True)
class WordGeometry:
    """Disk D_w, interval I_w and its length Upsilon_w for a reduced word."""

    word: Word
    disk: Disk
    interval: tuple[float, float]

    @property
    def upsilon(self) -> float:
        return self.interval[1] - self.interval[0]


def word_geometry(data: SchottkyData, w: Word) -> WordGeometry:
    """D_w = backspace(w) D_{E(w)} via endpoint evaluation of I_{E(w)}.

    Real Mobius maps are monotone on intervals avoiding the pole, so the
    image interval is spanned by the endpoint images and D_w is the disk
    with that diameter.
    """
    if len(w) < 1:
        raise ValueError("word geometry needs a nonempty word")
    if len(w) == 1:
        disk = data.disk(w.end)
        return WordGeometry(word=w, disk=disk, interval=disk.interval)
    lo, hi = data.disk(w.end).interval
    m = word_map(data, w.backspace())
    if m.c != 0.0:
        pole = -m.d / m.c
        if lo <= pole <= hi:
            raise SchottkyDataError(
                f"pole of backspace({w.letters}) inside I_{w.end}; "
                "data violates the ping-pong conditions"
            )
    x, y = m(complex(lo)).real, m(complex(hi)).real
    left, right = (x, y) if x <= y else (y, x)
    center = 0.5 * (left + right)
    radius = 0.5 * (right - left)
    return WordGeometry(word=w, disk=Disk(center, radius), interval=(left, right))


def upsilon(data: SchottkyData, w: Word) -> float:
    return word_geometry(data, w).upsilon


def theta(data: SchottkyData, w: Word, z):
    """Chain-rule logarithm sum theta(w, z) for z in D_{E(w)}.

    For w = a_1 ... a_{l+1} this is sum_j tau(a_j'(a_{j+1}...a_l z)) with tau
    the principal logarithm on C minus (-inf, 0]; exp(s * theta) realizes the
    s-th power of backspace(w)'(z) with a branch that is real on the real
    axis.  Accepts a complex scalar or a numpy array of points.
    """
    if len(w) < 2:
        raise ValueError("theta needs |w| >= 2 (one derivative factor)")
    scalar = np.isscalar(z) or isinstance(z, complex)
    pts = np.atleast_1d(np.asarray(z, dtype=complex))
    acc = np.zeros_like(pts)
    # walk letters right to left, skipping the final letter of w
    current = pts
    for j in range(len(w) - 2, -1, -1):
        g = data.gen(w.letters[j])
        deriv = g.derivative(current)
        bad = ~np.isfinite(deriv) | ((deriv.imag == 0.0) & (deriv.real <= 0.0))
        if np.any(bad):
            raise BranchCutError(
                f"derivative factor {j + 1} of word {w.letters} lies on the "
                "branch cut (-inf, 0]"
            )
        acc = acc + np.log(deriv)
        current = g(current)
    return complex(acc[0]) if scalar else acc


def load_schottky(path) -> SchottkyData:
    """Read the JSON data file: n, generators (one per basis letter), disks.

    Unknown keys are rejected; inverses and mirrors are derived.
    """
    with open(path, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    allowed = {"n", "generators", "disks"}
    unknown = set(raw) - allowed
    if unknown:
        raise SchottkyDataError(f"unknown fields in schottky file: {sorted(unknown)}")
    missing = allowed - set(raw)
    if missing:
        raise SchottkyDataError(f"missing fields in schottky file: {sorted(missing)}")
    n = raw["n"]
    if not isinstance(n, int):
        raise SchottkyDataError("field 'n' must be an integer")
    gens_raw = raw["generators"]
    disks_raw = raw["disks"]
    if len(gens_raw) != n:
        raise SchottkyDataError(f"expected {n} generators, got {len(gens_raw)}")
    if len(disks_raw) != 2 * n:
        raise SchottkyDataError(f"expected {2 * n} disks, got {len(disks_raw)}")
    gens = []
    for row in gens_raw:
        if len(row) != 4:
            raise SchottkyDataError(f"generator row must have 4 entries: {row}")
        gens.append(MobiusMap(*[float(v) for v in row]))
    disks = []
    for entry in disks_raw:
        extra = set(entry) - {"center", "radius"}
        if extra:
            raise SchottkyDataError(f"unknown disk fields: {sorted(extra)}")
        disks.append(Disk(float(entry["center"]), float(entry["radius"])))
    return SchottkyData.from_generators(gens, disks)


def dump_schottky(data: SchottkyData, path) -> None:
    doc = {
        "n": data.n_gens,
        "generators": [
            [g.a, g.b, g.c, g.d] for g in data.gens[: data.n_gens]
        ],
        "disks": [{"center": d.center, "radius": d.radius} for d in data.disks],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")
