"""Exact boundary points of the hyperbolic plane and the circular order.

Three charts are supported:

* ``ext_real``   - the extended real line R u {inf} (boundary of the upper
  half plane); counterclockwise means increasing reals with inf at the wrap.
* ``disk_angle`` - angles theta mod 1 on the unit circle, point e^(2*pi*i*theta).
* ``signed_exp`` - points s*e^(a*t) on the two rays of R-{0} (sign s, exponent
  t, unit scale a), plus the limit symbols 0 and inf separating the rays.

Each chart carries a decidable linear key whose order, read cyclically, is the
counterclockwise orientation of the circle.  The orientation conventions are
pinned by the Cayley map p(z) = i(1+z)/(1-z), which sends the counterclockwise
quadruple (1, i, -1, -i) of the disk to (inf, -1, 0, 1).
"""

from __future__ import annotations

from enum import Enum

from .errors import ChartMismatch, IncomparableCharts, InexactConversion
from .field import FieldElem, as_field


class Chart(str, Enum):
    EXT_REAL = "ext_real"
    DISK_ANGLE = "disk_angle"
    SIGNED_EXP = "signed_exp"


_REGULAR, _EXT_INF, _EXP_ZERO, _EXP_INF = 0, 1, 2, 3


class BoundaryPoint:
    """Immutable exact point of the circle in one chart."""

    __slots__ = ("chart", "kind", "x", "ray", "_key", "_h")

    def __init__(self, chart: Chart, kind: int, x: FieldElem | None, ray: int):
        self.chart = chart
        self.kind = kind
        self.x = x
        self.ray = ray
        self._key = None
        self._h = None

    # -- constructors ---------------------------------------------------

    @staticmethod
    def ext_real(x) -> "BoundaryPoint":
        return BoundaryPoint(Chart.EXT_REAL, _REGULAR, as_field(x), 0)

    @staticmethod
    def ext_inf() -> "BoundaryPoint":
        return BoundaryPoint(Chart.EXT_REAL, _EXT_INF, None, 0)

    @staticmethod
    def disk_angle(theta) -> "BoundaryPoint":
        t = as_field(theta)
        t = t - t.floor()  # canonical representative in [0, 1)
        return BoundaryPoint(Chart.DISK_ANGLE, _REGULAR, t, 0)

    @staticmethod
    def signed_exp(sign: int, t) -> "BoundaryPoint":
        if sign not in (1, -1):
            raise ValueError("ray sign must be +1 or -1")
        return BoundaryPoint(Chart.SIGNED_EXP, _REGULAR, as_field(t), sign)

    @staticmethod
    def exp_zero() -> "BoundaryPoint":
        return BoundaryPoint(Chart.SIGNED_EXP, _EXP_ZERO, None, 0)

    @staticmethod
    def exp_inf() -> "BoundaryPoint":
        return BoundaryPoint(Chart.SIGNED_EXP, _EXP_INF, None, 0)

    # -- structure -------------------------------------------------------

    @property
    def is_infinity(self) -> bool:
        return self.kind == _EXT_INF

    def linear_key(self):
        """Total order key; read cyclically it is the ccw circle order."""
        if self._key is None:
            if self.chart == Chart.EXT_REAL:
                key = (1,) if self.kind == _EXT_INF else (0, self.x)
            elif self.chart == Chart.DISK_ANGLE:
                key = (0, self.x)
            else:
                if self.kind == _EXP_ZERO:
                    key = (0,)
                elif self.kind == _EXP_INF:
                    key = (2,)
                elif self.ray > 0:
                    key = (1, self.x)
                else:
                    key = (3, -self.x)
            object.__setattr__(self, "_key", key)
        return self._key

    def __eq__(self, other) -> bool:
        if not isinstance(other, BoundaryPoint):
            return NotImplemented
        return (
            self.chart == other.chart
            and self.kind == other.kind
            and self.ray == other.ray
            and self.x == other.x
        )

    def __hash__(self):
        if self._h is None:
            object.__setattr__(self, "_h", hash((self.chart, self.kind, self.ray, self.x)))
        return self._h

    # -- encoding ----------------------------------------------------------

    def encode(self) -> str:
        if self.chart == Chart.EXT_REAL:
            return "r:inf" if self.kind == _EXT_INF else "r:" + self.x.encode()
        if self.chart == Chart.DISK_ANGLE:
            return "θ:" + self.x.encode()
        if self.kind == _EXP_ZERO:
            return "e:0"
        if self.kind == _EXP_INF:
            return "e:inf"
        return "e:" + ("+" if self.ray > 0 else "-") + "," + self.x.encode()

    @staticmethod
    def parse(s: str) -> "BoundaryPoint":
        tag, _, body = s.partition(":")
        if tag == "r":
            return BoundaryPoint.ext_inf() if body == "inf" else BoundaryPoint.ext_real(FieldElem.parse(body))
        if tag == "θ":
            return BoundaryPoint.disk_angle(FieldElem.parse(body))
        if tag == "e":
            if body == "0":
                return BoundaryPoint.exp_zero()
            if body == "inf":
                return BoundaryPoint.exp_inf()
            sign, _, rest = body.partition(",")
            return BoundaryPoint.signed_exp(1 if sign == "+" else -1, FieldElem.parse(rest))
        raise ValueError(f"bad point encoding: {s!r}")

    def __repr__(self) -> str:
        return f"<{self.encode()}>"

    # -- float embedding (render/sampling only) ----------------------------

    def to_complex(self) -> complex:
        """Point on the unit circle of the Poincare disk, in 64-bit floats."""
        if self.chart == Chart.DISK_ANGLE:
            import cmath

            return cmath.exp(2j * cmath.pi * float(self.x))
        if self.chart == Chart.EXT_REAL:
            if self.kind == _EXT_INF:
                return complex(1.0, 0.0)
            w = complex(float(self.x), 0.0)
        else:
            if self.kind == _EXP_ZERO:
                w = complex(0.0, 0.0)
            elif self.kind == _EXP_INF:
                return complex(1.0, 0.0)
            else:
                import math

                t = float(self.x)
                if t > 700.0:
                    return complex(1.0, 0.0)
                w = complex(self.ray * math.exp(t), 0.0)
        # inverse Cayley: z = (w - i) / (w + i)
        z = (w - 1j) / (w + 1j)
        return z

    def to_angle(self) -> float:
        """Angle of the disk image in turns, in [0, 1)."""
        import cmath

        a = cmath.phase(self.to_complex()) / (2 * cmath.pi)
        return a % 1.0


def circular_order(x: BoundaryPoint, y: BoundaryPoint, z: BoundaryPoint) -> int:
    """The circular order of the circle: +1 ccw, -1 cw, 0 on repeated points."""
    if not (x.chart == y.chart == z.chart):
        try:
            y = chart_convert(y, x.chart)
            z = chart_convert(z, x.chart)
        except InexactConversion as exc:
            raise IncomparableCharts(str(exc)) from exc
    kx, ky, kz = x.linear_key(), y.linear_key(), z.linear_key()
    if kx == ky or ky == kz or kx == kz:
        return 0
    if (kx < ky < kz) or (ky < kz < kx) or (kz < kx < ky):
        return 1
    return -1


_DISK_TO_EXT = {}
_EXT_TO_DISK = {}


def _register_four_points():
    q = FieldElem((1, 4))
    pairs = [
        (BoundaryPoint.disk_angle(0), BoundaryPoint.ext_inf()),
        (BoundaryPoint.disk_angle(q), BoundaryPoint.ext_real(-1)),
        (BoundaryPoint.disk_angle(q * 2), BoundaryPoint.ext_real(0)),
        (BoundaryPoint.disk_angle(q * 3), BoundaryPoint.ext_real(1)),
    ]
    for disk, ext in pairs:
        _DISK_TO_EXT[disk] = ext
        _EXT_TO_DISK[ext] = disk


_register_four_points()


def _signed_to_ext(p: BoundaryPoint) -> BoundaryPoint:
    if p.kind == _EXP_ZERO:
        return BoundaryPoint.ext_real(0)
    if p.kind == _EXP_INF:
        return BoundaryPoint.ext_inf()
    if p.x.is_zero():
        return BoundaryPoint.ext_real(p.ray)
    raise InexactConversion(f"{p!r}: e^t is not in Q(sqrt2, sqrt3) for t != 0")


def _ext_to_signed(p: BoundaryPoint) -> BoundaryPoint:
    if p.kind == _EXT_INF:
        return BoundaryPoint.exp_inf()
    if p.x.is_zero():
        return BoundaryPoint.exp_zero()
    if p.x == 1:
        return BoundaryPoint.signed_exp(1, 0)
    if p.x == -1:
        return BoundaryPoint.signed_exp(-1, 0)
    raise InexactConversion(f"{p!r}: log of {p.x!r} is not in Q(sqrt2, sqrt3)")


def chart_convert(p: BoundaryPoint, target: Chart) -> BoundaryPoint:
    """Exact, order-preserving chart conversion for the registered pairs."""
    target = Chart(target)
    if p.chart == target:
        return p
    if p.chart == Chart.DISK_ANGLE and target == Chart.EXT_REAL:
        try:
            return _DISK_TO_EXT[p]
        except KeyError:
            raise InexactConversion(f"{p!r}: only the four points ±1, ±i convert exactly")
    if p.chart == Chart.EXT_REAL and target == Chart.DISK_ANGLE:
        try:
            return _EXT_TO_DISK[p]
        except KeyError:
            raise InexactConversion(f"{p!r}: only the four points inf, ±1, 0 convert exactly")
    if p.chart == Chart.SIGNED_EXP and target == Chart.EXT_REAL:
        return _signed_to_ext(p)
    if p.chart == Chart.EXT_REAL and target == Chart.SIGNED_EXP:
        return _ext_to_signed(p)
    if p.chart == Chart.SIGNED_EXP and target == Chart.DISK_ANGLE:
        return chart_convert(_signed_to_ext(p), Chart.DISK_ANGLE)
    if p.chart == Chart.DISK_ANGLE and target == Chart.SIGNED_EXP:
        return _ext_to_signed(chart_convert(p, Chart.EXT_REAL))
    raise IncomparableCharts(f"no conversion {p.chart.value} -> {target.value}")


def require_same_chart(*points: BoundaryPoint) -> Chart:
    chart = points[0].chart
    for p in points[1:]:
        if p.chart != chart:
            raise ChartMismatch(f"mixed charts {chart.value} and {p.chart.value}")
    return chart
