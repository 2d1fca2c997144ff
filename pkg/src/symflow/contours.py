"""Closed contours and the planar windows they bound.

Windows double as membership oracles (is a spectral point inside?) and as
quadrature paths for resolvent integrals.  Circles use the uniform
trapezoid rule; rectangles use per-edge Gauss-Legendre nodes so that the
quadrature still converges geometrically despite the corners.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["CirclePath", "BoxPath", "DiskWindow", "BoxWindow"]


@dataclass(frozen=True)
class CirclePath:
    center: complex
    radius: float

    def nodes(self, count: int):
        k = np.arange(count)
        z = self.center + self.radius * np.exp(2j * np.pi * k / count)
        dz = 2j * np.pi * self.radius * np.exp(2j * np.pi * k / count) / count
        return z, dz


@dataclass(frozen=True)
class BoxPath:
    re_lo: float
    re_hi: float
    im_lo: float
    im_hi: float

    def corners(self):
        return [
            complex(self.re_lo, self.im_lo),
            complex(self.re_hi, self.im_lo),
            complex(self.re_hi, self.im_hi),
            complex(self.re_lo, self.im_hi),
        ]

    def nodes(self, count: int):
        per_edge = max(count // 4, 2)
        x, w = np.polynomial.legendre.leggauss(per_edge)
        cs = self.corners()
        pts, wts = [], []
        for a, b in zip(cs, cs[1:] + cs[:1]):
            mid, half = (a + b) / 2.0, (b - a) / 2.0
            pts.append(mid + half * x)
            wts.append(half * w)
        return np.concatenate(pts), np.concatenate(wts)


def _segment_hits_box(z1: complex, z2: complex, re_lo, re_hi, im_lo, im_hi) -> bool:
    """Liang-Barsky clip: does the closed segment meet the closed box?"""
    p = [-(z2.real - z1.real), z2.real - z1.real, -(z2.imag - z1.imag), z2.imag - z1.imag]
    q = [z1.real - re_lo, re_hi - z1.real, z1.imag - im_lo, im_hi - z1.imag]
    t0, t1 = 0.0, 1.0
    for pi, qi in zip(p, q):
        if pi == 0.0:
            if qi < 0.0:
                return False
        else:
            t = qi / pi
            if pi < 0.0:
                t0 = max(t0, t)
            else:
                t1 = min(t1, t)
            if t0 > t1:
                return False
    return True


@dataclass(frozen=True)
class DiskWindow:
    center: complex
    radius: float

    def contains(self, z: complex) -> bool:
        return abs(z - self.center) < self.radius

    def boundary_distance(self, z: complex) -> float:
        return abs(self.radius - abs(z - self.center))

    def segment_intersects(self, z1: complex, z2: complex) -> bool:
        d = z2 - z1
        L = abs(d)
        if L == 0.0:
            return abs(z1 - self.center) <= self.radius
        t = np.clip(((self.center - z1).conjugate() * d).real / (L * L), 0.0, 1.0)
        return abs(z1 + t * d - self.center) <= self.radius

    def path(self) -> CirclePath:
        return CirclePath(self.center, self.radius)

    def describe(self) -> dict:
        return {"kind": "disk", "center": [self.center.real, self.center.imag],
                "radius": self.radius}


@dataclass(frozen=True)
class BoxWindow:
    re_lo: float
    re_hi: float
    im_lo: float
    im_hi: float

    def contains(self, z: complex) -> bool:
        return self.re_lo < z.real < self.re_hi and self.im_lo < z.imag < self.im_hi

    def boundary_distance(self, z: complex) -> float:
        if self.contains(z):
            return min(z.real - self.re_lo, self.re_hi - z.real,
                       z.imag - self.im_lo, self.im_hi - z.imag)
        dx = max(self.re_lo - z.real, 0.0, z.real - self.re_hi)
        dy = max(self.im_lo - z.imag, 0.0, z.imag - self.im_hi)
        return float(np.hypot(dx, dy))

    def segment_intersects(self, z1: complex, z2: complex) -> bool:
        return _segment_hits_box(z1, z2, self.re_lo, self.re_hi, self.im_lo, self.im_hi)

    def path(self) -> BoxPath:
        return BoxPath(self.re_lo, self.re_hi, self.im_lo, self.im_hi)

    def describe(self) -> dict:
        return {"kind": "box", "re": [self.re_lo, self.re_hi],
                "im": [self.im_lo, self.im_hi]}
