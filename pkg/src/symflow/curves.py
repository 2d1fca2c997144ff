"""Co-oriented crossing curves for spectral flow.

A curve knows its distance to a point, a coordinate along itself, which
side of itself a nearby point lies on (the co-orientation fixes the sign:
crossing from the negative to the positive side counts +1), its limit
points (ends of the closure that do not belong to the curve), and how to
build axis-aligned test windows around a coordinate.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .contours import BoxWindow, DiskWindow

__all__ = [
    "PositiveRealAxis",
    "RealAxisInterval",
    "ImaginaryAxisInterval",
    "ParametrizedArc",
]

_DEFAULT_CAP = 0.4


@dataclass(frozen=True)
class PositiveRealAxis:
    """The ray (0, +inf); the default co-orientation points upward."""

    positive_side_up: bool = True

    def distance(self, z: complex) -> float:
        if z.real > 0.0:
            return abs(z.imag)
        return abs(z)

    def coord(self, z: complex) -> float:
        return z.real

    def point_at(self, c: float) -> complex:
        return complex(c, 0.0)

    def contains_coord(self, c: float) -> bool:
        return c > 0.0

    def side(self, z: complex) -> int:
        s = 1 if z.imag > 0 else (-1 if z.imag < 0 else 0)
        return s if self.positive_side_up else -s

    def limit_points(self) -> tuple[complex, ...]:
        return (0.0 + 0.0j,)

    def window_cap(self, c: float) -> float:
        return min(_DEFAULT_CAP, 0.45 * c)

    def make_window(self, c: float, half_len: float, half_wid: float) -> BoxWindow:
        return BoxWindow(c - half_len, c + half_len, -half_wid, half_wid)

    def reversed(self):
        return replace(self, positive_side_up=not self.positive_side_up)

    def describe(self) -> dict:
        return {"kind": "positive-real-axis",
                "coorientation": "up" if self.positive_side_up else "down"}


@dataclass(frozen=True)
class RealAxisInterval:
    """An open interval (center - halfwidth, center + halfwidth) of the real axis."""

    center: float
    halfwidth: float
    positive_side_up: bool = True

    def distance(self, z: complex) -> float:
        lo, hi = self.center - self.halfwidth, self.center + self.halfwidth
        if lo < z.real < hi:
            return abs(z.imag)
        edge = lo if z.real <= lo else hi
        return float(np.hypot(z.real - edge, z.imag))

    def coord(self, z: complex) -> float:
        return z.real

    def point_at(self, c: float) -> complex:
        return complex(c, 0.0)

    def contains_coord(self, c: float) -> bool:
        return abs(c - self.center) < self.halfwidth

    def side(self, z: complex) -> int:
        s = 1 if z.imag > 0 else (-1 if z.imag < 0 else 0)
        return s if self.positive_side_up else -s

    def limit_points(self) -> tuple[complex, ...]:
        return (complex(self.center - self.halfwidth, 0.0),
                complex(self.center + self.halfwidth, 0.0))

    def window_cap(self, c: float) -> float:
        clearance = self.halfwidth - abs(c - self.center)
        return min(_DEFAULT_CAP, 0.45 * clearance)

    def make_window(self, c: float, half_len: float, half_wid: float) -> BoxWindow:
        return BoxWindow(c - half_len, c + half_len, -half_wid, half_wid)

    def reversed(self):
        return replace(self, positive_side_up=not self.positive_side_up)

    def describe(self) -> dict:
        return {"kind": "real-interval", "center": self.center,
                "halfwidth": self.halfwidth,
                "coorientation": "up" if self.positive_side_up else "down"}


@dataclass(frozen=True)
class ImaginaryAxisInterval:
    """An open interval i*(lo, hi) of the imaginary axis.

    The default co-orientation points from left to right, so the positive
    side is the right half-plane; this is the classical self-adjoint
    spectral-flow convention when the interval contains 0.
    """

    lo: float = -1.0
    hi: float = 1.0
    positive_side_right: bool = True

    def distance(self, z: complex) -> float:
        if self.lo < z.imag < self.hi:
            return abs(z.real)
        edge = self.lo if z.imag <= self.lo else self.hi
        return float(np.hypot(z.imag - edge, z.real))

    def coord(self, z: complex) -> float:
        return z.imag

    def point_at(self, c: float) -> complex:
        return complex(0.0, c)

    def contains_coord(self, c: float) -> bool:
        return self.lo < c < self.hi

    def side(self, z: complex) -> int:
        s = 1 if z.real > 0 else (-1 if z.real < 0 else 0)
        return s if self.positive_side_right else -s

    def limit_points(self) -> tuple[complex, ...]:
        return (complex(0.0, self.lo), complex(0.0, self.hi))

    def window_cap(self, c: float) -> float:
        clearance = min(c - self.lo, self.hi - c)
        return min(_DEFAULT_CAP, 0.45 * clearance)

    def make_window(self, c: float, half_len: float, half_wid: float) -> BoxWindow:
        return BoxWindow(-half_wid, half_wid, c - half_len, c + half_len)

    def reversed(self):
        return replace(self, positive_side_right=not self.positive_side_right)

    def describe(self) -> dict:
        return {"kind": "imaginary-interval", "lo": self.lo, "hi": self.hi,
                "coorientation": "right" if self.positive_side_right else "left"}


class ParametrizedArc:
    """A custom C^1 arc given by a parametrization and a unit normal field.

    Distance queries run over a dense sample of the parametrization, so
    this is meant for desk-scale work with moderately curved arcs.  Test
    windows are disks centered on the arc.
    """

    def __init__(self, point, normal, t_lo: float, t_hi: float, dense: int = 2001,
                 orientation: int = 1):
        self._point = point
        self._normal = normal
        self.t_lo = float(t_lo)
        self.t_hi = float(t_hi)
        self.orientation = 1 if orientation >= 0 else -1
        self._ts = np.linspace(t_lo, t_hi, dense)
        self._zs = np.array([complex(point(t)) for t in self._ts])

    def _nearest(self, z: complex) -> int:
        return int(np.argmin(np.abs(self._zs - z)))

    def distance(self, z: complex) -> float:
        return float(np.abs(self._zs - z).min())

    def coord(self, z: complex) -> float:
        return float(self._ts[self._nearest(z)])

    def point_at(self, c: float) -> complex:
        return complex(self._point(c))

    def contains_coord(self, c: float) -> bool:
        return self.t_lo < c < self.t_hi

    def side(self, z: complex) -> int:
        i = self._nearest(z)
        nrm = complex(self._normal(self._ts[i]))
        val = ((z - self._zs[i]) * nrm.conjugate()).real
        s = 1 if val > 0 else (-1 if val < 0 else 0)
        return s * self.orientation

    def limit_points(self) -> tuple[complex, ...]:
        return (self._zs[0], self._zs[-1])

    def window_cap(self, c: float) -> float:
        clearance = min(c - self.t_lo, self.t_hi - c)
        return min(_DEFAULT_CAP, 0.45 * clearance)

    def make_window(self, c: float, half_len: float, half_wid: float) -> DiskWindow:
        return DiskWindow(self.point_at(c), max(half_len, half_wid))

    def reversed(self) -> "ParametrizedArc":
        return ParametrizedArc(self._point, self._normal, self.t_lo, self.t_hi,
                               dense=len(self._ts), orientation=-self.orientation)

    def describe(self) -> dict:
        return {"kind": "custom-arc", "t_range": [self.t_lo, self.t_hi],
                "orientation": self.orientation}
