"""Real Mobius transformations and disks centered on the real line.

Maps are stored as 2x2 real matrices normalized to unit determinant with a
deterministic sign convention, so that equal group elements have bit-identical
representatives.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

INF = complex(math.inf, 0.0)

_DET_TOL = 1e-12
_SPLITTER = 134217729.0  # 2^27 + 1, Dekker's splitting constant


def _two_prod(x: float, y: float) -> tuple[float, float]:
    """x * y as an exact head/tail pair (Dekker's algorithm)."""
    p = x * y
    cx = _SPLITTER * x
    hx = cx - (cx - x)
    lx = x - hx
    cy = _SPLITTER * y
    hy = cy - (cy - y)
    ly = y - hy
    err = ((hx * hy - p) + hx * ly + lx * hy) + lx * ly
    return p, err


def det2(a: float, b: float, c: float, d: float) -> float:
    """a d - b c without the catastrophic cancellation of the naive formula.

    Word maps reach entries ~1e6 whose pairwise products cancel down to a
    unit determinant; the naive evaluation would lose ~7 digits there.
    """
    ad, ad_err = _two_prod(a, d)
    bc, bc_err = _two_prod(b, c)
    return (ad - bc) + (ad_err - bc_err)


class NotInvertibleError(ValueError):
    """Raised when the matrix entries do not define a Mobius map."""


@dataclass(frozen=True)
class MobiusMap:
    """z -> (a z + b) / (c z + d) with real entries and a d - b c = 1.

    The representative is fixed by requiring d > 0 (or c > 0 when d = 0),
    which removes the PSL(2, R) sign ambiguity.
    """

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        det = det2(self.a, self.b, self.c, self.d)
        if not math.isfinite(det) or det <= 0.0:
            raise NotInvertibleError(f"need positive determinant, got {det!r}")
        a, b, c, d = self.a, self.b, self.c, self.d
        # unit determinant is only representable up to the rounding of the
        # entry products; rescaling inside that noise floor would *add* a
        # spurious scalar of the same size, so skip it there
        noise = 8.0 * 2.220446049250313e-16 * (abs(a * d) + abs(b * c))
        if abs(det - 1.0) > max(1e-13, noise):
            r = 1.0 / math.sqrt(det)
            a, b, c, d = a * r, b * r, c * r, d * r
        if d < 0.0 or (d == 0.0 and c < 0.0):
            a, b, c, d = -a, -b, -c, -d
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    @classmethod
    def identity(cls) -> "MobiusMap":
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def translation(cls, t: float) -> "MobiusMap":
        return cls(1.0, float(t), 0.0, 1.0)

    def __call__(self, z):
        """Apply the map; accepts complex scalars or numpy arrays.

        The point at infinity is handled for scalars: the pole -d/c maps to
        INF and INF maps to a/c.
        """
        if isinstance(z, complex) or isinstance(z, float) or isinstance(z, int):
            if cmath.isinf(complex(z)):
                return INF if self.c == 0.0 else complex(self.a / self.c)
            den = self.c * z + self.d
            if den == 0:
                return INF
            return (self.a * z + self.b) / den
        return (self.a * z + self.b) / (self.c * z + self.d)

    def derivative(self, z):
        """d/dz of the map: 1 / (c z + d)^2 for the unit-determinant form."""
        if isinstance(z, complex) or isinstance(z, float) or isinstance(z, int):
            if cmath.isinf(complex(z)):
                return 0.0 if self.c != 0.0 else 1.0
            den = self.c * z + self.d
            if den == 0:
                return INF
            return 1.0 / (den * den)
        den = self.c * z + self.d
        return 1.0 / (den * den)

    def inverse(self) -> "MobiusMap":
        return MobiusMap(self.d, -self.b, -self.c, self.a)

    def compose(self, other: "MobiusMap") -> "MobiusMap":
        """self after other: (self . other)(z) = self(other(z))."""
        return MobiusMap(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __matmul__(self, other: "MobiusMap") -> "MobiusMap":
        return self.compose(other)

    def pole(self) -> complex:
        """Preimage of infinity."""
        if self.c == 0.0:
            return INF
        return complex(-self.d / self.c)

    def is_identity(self, tol: float = 1e-10) -> bool:
        return (
            abs(self.a - 1.0) <= tol
            and abs(self.b) <= tol
            and abs(self.c) <= tol
            and abs(self.d - 1.0) <= tol
        )

    def entry_distance(self, other: "MobiusMap") -> float:
        """Max entrywise deviation between the normalized representatives."""
        return max(
            abs(self.a - other.a),
            abs(self.b - other.b),
            abs(self.c - other.c),
            abs(self.d - other.d),
        )

    def det(self) -> float:
        return det2(self.a, self.b, self.c, self.d)


@dataclass(frozen=True)
class Disk:
    """Open disk in C with real center."""

    center: float
    radius: float

    def __post_init__(self):
        if not (self.radius > 0.0 and math.isfinite(self.radius)):
            raise ValueError(f"radius must be positive, got {self.radius!r}")
        if not math.isfinite(self.center):
            raise ValueError(f"center must be finite, got {self.center!r}")

    def contains(self, z: complex, margin: float = 0.0) -> bool:
        return abs(z - self.center) < self.radius - margin

    def boundary_distance(self, z: complex) -> float:
        """Distance from z to the boundary circle."""
        return abs(abs(z - self.center) - self.radius)

    @property
    def interval(self) -> tuple[float, float]:
        """The real diameter D cap R."""
        return (self.center - self.radius, self.center + self.radius)

    def gap_to(self, other: "Disk") -> float:
        """Gap between the two closed disks (negative if they overlap)."""
        return abs(self.center - other.center) - self.radius - other.radius
