"""Exact arithmetic in the real field Q(sqrt2, sqrt3).

Elements are stored on the basis (1, sqrt2, sqrt3, sqrt6) with exact rational
coefficients.  Sign determination uses a guarded floating-point interval first
and falls back to an exact algebraic procedure (split off the sqrt3 part and
compare squares inside Q(sqrt2)), so comparisons are always exact.
"""

from __future__ import annotations

import math

try:
    from gmpy2 import mpq as _Q  # noqa: F401  (much faster than Fraction)
except ImportError:  # pragma: no cover - exercised only without gmpy2
    from fractions import Fraction as _Q

_SQRT2_F = math.sqrt(2.0)
_SQRT3_F = math.sqrt(3.0)
_SQRT6_F = math.sqrt(6.0)

# 40-digit rational enclosures, used when floats overflow
_S2_LO = _Q(14142135623730950488016887242096980785696, 10**40)
_S2_HI = _S2_LO + _Q(1, 10**39)
_S3_LO = _Q(17320508075688772935274463415058723669428, 10**40)
_S3_HI = _S3_LO + _Q(1, 10**39)
_S6_LO = _Q(24494897427831780981972840747058913919659, 10**40)
_S6_HI = _S6_LO + _Q(1, 10**39)


def _rat(x) -> _Q:
    if isinstance(x, _Q):
        return x
    if isinstance(x, (int, str)):
        return _Q(x)
    if isinstance(x, tuple):
        return _Q(*x)
    # fractions.Fraction when gmpy2 is active, and vice versa
    num = getattr(x, "numerator", None)
    den = getattr(x, "denominator", None)
    if num is not None and den is not None:
        return _Q(int(num), int(den))
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def _sgn(q) -> int:
    if q > 0:
        return 1
    if q < 0:
        return -1
    return 0


def _sign_sqrt2(m, n) -> int:
    # sign of m + n*sqrt2 with m, n rational
    if n == 0:
        return _sgn(m)
    if m == 0:
        return _sgn(n)
    sm, sn = _sgn(m), _sgn(n)
    if sm == sn:
        return sm
    return sm * _sgn(m * m - 2 * n * n)


def rat_str(q) -> str:
    """Canonical "<num>/<den>" form in lowest terms."""
    q = _rat(q)
    return f"{q.numerator}/{q.denominator}"


def rat_parse(s: str) -> _Q:
    num, _, den = s.partition("/")
    if den == "":
        return _Q(int(num))
    return _Q(int(num), int(den))


class FieldElem:
    """Immutable element a + b*sqrt2 + c*sqrt3 + d*sqrt6 of Q(sqrt2, sqrt3)."""

    __slots__ = ("a", "b", "c", "d", "_h")

    def __init__(self, a=0, b=0, c=0, d=0):
        self.a = _rat(a)
        self.b = _rat(b)
        self.c = _rat(c)
        self.d = _rat(d)
        self._h = None

    # -- ring structure -------------------------------------------------

    def __add__(self, other) -> "FieldElem":
        o = as_field(other)
        return FieldElem(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    __radd__ = __add__

    def __sub__(self, other) -> "FieldElem":
        o = as_field(other)
        return FieldElem(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)

    def __rsub__(self, other) -> "FieldElem":
        return as_field(other) - self

    def __neg__(self) -> "FieldElem":
        return FieldElem(-self.a, -self.b, -self.c, -self.d)

    def __mul__(self, other) -> "FieldElem":
        o = as_field(other)
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = o.a, o.b, o.c, o.d
        return FieldElem(
            a1 * a2 + 2 * b1 * b2 + 3 * c1 * c2 + 6 * d1 * d2,
            a1 * b2 + b1 * a2 + 3 * (c1 * d2 + d1 * c2),
            a1 * c2 + c1 * a2 + 2 * (b1 * d2 + d1 * b2),
            a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2,
        )

    __rmul__ = __mul__

    def conj_sqrt2(self) -> "FieldElem":
        """Galois conjugate sending sqrt2 to -sqrt2."""
        return FieldElem(self.a, -self.b, self.c, -self.d)

    def conj_sqrt3(self) -> "FieldElem":
        """Galois conjugate sending sqrt3 to -sqrt3."""
        return FieldElem(self.a, self.b, -self.c, -self.d)

    def inverse(self) -> "FieldElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        y = self * self.conj_sqrt2()           # lands in Q(sqrt3)
        z = y * y.conj_sqrt3()                 # lands in Q
        num = self.conj_sqrt2() * y.conj_sqrt3()
        r = z.a
        return FieldElem(num.a / r, num.b / r, num.c / r, num.d / r)

    def __truediv__(self, other) -> "FieldElem":
        o = as_field(other)
        if o.is_rational():
            r = o.a
            if r == 0:
                raise ZeroDivisionError("division by zero")
            return FieldElem(self.a / r, self.b / r, self.c / r, self.d / r)
        return self * o.inverse()

    def __rtruediv__(self, other) -> "FieldElem":
        return as_field(other) / self

    def __pow__(self, n: int) -> "FieldElem":
        if n < 0:
            return self.inverse() ** (-n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- order structure ------------------------------------------------

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0 and self.c == 0 and self.d == 0

    def is_rational(self) -> bool:
        return self.b == 0 and self.c == 0 and self.d == 0

    def rational(self):
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.a

    def sign(self) -> int:
        """Exact sign of the real embedding (sqrt2 = 1.414..., sqrt3 = 1.732...)."""
        if self.b == 0 and self.c == 0 and self.d == 0:
            return _sgn(self.a)
        # guarded float evaluation: absolute rounding error is below mag*9e-16,
        # so a comfortable 1e-13 threshold can never give a wrong sign
        try:
            fa, fb, fc, fd = float(self.a), float(self.b), float(self.c), float(self.d)
            val = fa + fb * _SQRT2_F + fc * _SQRT3_F + fd * _SQRT6_F
            mag = abs(fa) + abs(fb) * _SQRT2_F + abs(fc) * _SQRT3_F + abs(fd) * _SQRT6_F
            if not math.isinf(mag) and abs(val) > mag * 1e-13:
                return 1 if val > 0 else -1
        except (OverflowError, ValueError):
            pass
        # exact fallback: write x = P + Q*sqrt3 with P, Q in Q(sqrt2)
        sp = _sign_sqrt2(self.a, self.b)
        sq = _sign_sqrt2(self.c, self.d)
        if sq == 0:
            return sp
        if sp == 0:
            return sq
        if sp == sq:
            return sp
        # opposite signs: compare P^2 against 3*Q^2 inside Q(sqrt2)
        p2_a = self.a * self.a + 2 * self.b * self.b
        p2_b = 2 * self.a * self.b
        q2_a = self.c * self.c + 2 * self.d * self.d
        q2_b = 2 * self.c * self.d
        return sp * _sign_sqrt2(p2_a - 3 * q2_a, p2_b - 3 * q2_b)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, FieldElem)) or hasattr(other, "denominator"):
            o = as_field(other)
            return self.a == o.a and self.b == o.b and self.c == o.c and self.d == o.d
        return NotImplemented

    def __hash__(self):
        if self._h is None:
            object.__setattr__(self, "_h", hash((self.a, self.b, self.c, self.d)))
        return self._h

    def __lt__(self, other) -> bool:
        return (self - as_field(other)).sign() < 0

    def __le__(self, other) -> bool:
        return (self - as_field(other)).sign() <= 0

    def __gt__(self, other) -> bool:
        return (self - as_field(other)).sign() > 0

    def __ge__(self, other) -> bool:
        return (self - as_field(other)).sign() >= 0

    # -- embeddings and integer parts ------------------------------------

    def __float__(self) -> float:
        return (
            float(self.a)
            + float(self.b) * _SQRT2_F
            + float(self.c) * _SQRT3_F
            + float(self.d) * _SQRT6_F
        )

    def _rational_bounds(self):
        lo = self.a + self.b * (_S2_LO if self.b >= 0 else _S2_HI)
        hi = self.a + self.b * (_S2_HI if self.b >= 0 else _S2_LO)
        lo += self.c * (_S3_LO if self.c >= 0 else _S3_HI)
        hi += self.c * (_S3_HI if self.c >= 0 else _S3_LO)
        lo += self.d * (_S6_LO if self.d >= 0 else _S6_HI)
        hi += self.d * (_S6_HI if self.d >= 0 else _S6_LO)
        return lo, hi

    def floor(self) -> int:
        lo, _ = self._rational_bounds()
        n = lo.numerator // lo.denominator
        while (self - (n + 1)).sign() >= 0:
            n += 1
        while (self - n).sign() < 0:
            n -= 1
        return int(n)

    def sqrt(self) -> "FieldElem | None":
        """Exact square root inside the field, or None if there is none."""
        if self.sign() < 0:
            return None
        root = _field_sqrt(self)
        if root is not None and root.sign() < 0:
            root = -root
        return root

    # -- encoding ---------------------------------------------------------

    def encode(self) -> str:
        return ",".join(rat_str(q) for q in (self.a, self.b, self.c, self.d))

    @classmethod
    def parse(cls, s: str) -> "FieldElem":
        parts = s.split(",")
        if len(parts) != 4:
            raise ValueError(f"bad field element encoding: {s!r}")
        return cls(*[rat_parse(p) for p in parts])

    def __repr__(self) -> str:
        terms = []
        for coef, sym in ((self.a, ""), (self.b, "√2"), (self.c, "√3"), (self.d, "√6")):
            if coef != 0:
                terms.append(f"{coef}{sym}" if sym else f"{coef}")
        return "FieldElem(0)" if not terms else "FieldElem(" + " + ".join(terms) + ")"


def as_field(x) -> FieldElem:
    if isinstance(x, FieldElem):
        return x
    return FieldElem(_rat(x))


def field_sign(x) -> int:
    """Exact sign of a + b*sqrt2 + c*sqrt3 + d*sqrt6."""
    return as_field(x).sign()


ZERO = FieldElem(0)
ONE = FieldElem(1)
SQRT2 = FieldElem(0, 1)
SQRT3 = FieldElem(0, 0, 1)
SQRT6 = FieldElem(0, 0, 0, 1)


# -- exact square roots ----------------------------------------------------


def _rat_sqrt(q):
    """Exact square root of a nonnegative rational, or None."""
    if q < 0:
        return None
    num, den = int(q.numerator), int(q.denominator)
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return _Q(rn, rd)
    return None


def _sqrt_in_q_sqrt2(m, n):
    """Square root of m + n*sqrt2 inside Q(sqrt2) as a pair, or None."""
    if _sign_sqrt2(m, n) < 0:
        return None
    if n == 0:
        r = _rat_sqrt(m)
        if r is not None:
            return (r, _Q(0))
        r = _rat_sqrt(m / 2)
        if r is not None:
            return (_Q(0), r)
        return None
    # (x + y*sqrt2)^2 = x^2 + 2y^2 + 2xy*sqrt2
    disc = _rat_sqrt(m * m - 2 * n * n)
    if disc is None:
        return None
    for x2 in ((m + disc) / 2, (m - disc) / 2):
        x = _rat_sqrt(x2)
        if x is not None and x != 0:
            y = n / (2 * x)
            if x * x + 2 * y * y == m:
                return (x, y)
    return None


def _field_sqrt(x: FieldElem) -> FieldElem | None:
    # write x = P + Q*sqrt3 with P = (a, b), Q = (c, d) in Q(sqrt2)
    a, b, c, d = x.a, x.b, x.c, x.d
    if c == 0 and d == 0:
        r = _sqrt_in_q_sqrt2(a, b)
        if r is not None:
            return FieldElem(r[0], r[1], 0, 0)
        # maybe sqrt(x) = R*sqrt3, R in Q(sqrt2): 3R^2 = P
        r = _sqrt_in_q_sqrt2(a / 3, b / 3)
        if r is not None:
            return FieldElem(0, 0, r[0], r[1])
        return None
    # y = S + T*sqrt3:  S*T = Q/2,  S^2 + 3T^2 = P, so S^2 solves
    # u^2 - P*u + 3*(Q/2)^2 = 0 over Q(sqrt2)
    p = (a, b)
    q = (c, d)
    p2 = (a * a + 2 * b * b, 2 * a * b)
    q2 = (c * c + 2 * d * d, 2 * c * d)
    disc = (p2[0] - 3 * q2[0], p2[1] - 3 * q2[1])
    s_disc = _sqrt_in_q_sqrt2(*disc)
    if s_disc is None:
        return None
    for branch in (1, -1):
        u = ((p[0] + branch * s_disc[0]) / 2, (p[1] + branch * s_disc[1]) / 2)
        s = _sqrt_in_q_sqrt2(*u)
        if s is None or (s[0] == 0 and s[1] == 0):
            continue
        # T = Q / (2S) in Q(sqrt2)
        s_elem = FieldElem(s[0], s[1])
        q_elem = FieldElem(q[0], q[1])
        t_elem = q_elem / (s_elem * 2)
        cand = FieldElem(s[0], s[1], t_elem.a, t_elem.b)
        if cand * cand == x:
            return cand
    return None
