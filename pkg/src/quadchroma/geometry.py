"""Exact planar predicates and slope-interval edge colorings.

Points are either integer lattice points or dyadic rationals ``n / 2**k`` in
the unit square.  Every predicate works on integer numerators brought to a
common scale, so no decision ever depends on floating-point rounding.
"""
from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence, Tuple, Union

__all__ = [
    "Color",
    "ColorRule",
    "CHI_SLOPE",
    "DyadicPoint",
    "LatticePoint",
    "PredicateRangeError",
    "QuadClass",
    "QuadKind",
    "RuleSyntaxError",
    "classify_quad",
    "is_mono_crossing_quad",
    "orient",
    "parse_rule",
    "segments_cross_properly",
    "slope_color",
]

MAX_DYADIC_SCALE = 53
_INT128_LIMIT = 1 << 127
_INT64_LIMIT = 1 << 63


class PredicateRangeError(OverflowError):
    """Raised when an exact predicate would leave the supported 128-bit range."""


class LatticePoint(NamedTuple):
    x: int
    y: int


class _DyadicFields(NamedTuple):
    nx: int
    ny: int
    k: int


class DyadicPoint(_DyadicFields):
    """The point ``(nx / 2**k, ny / 2**k)`` of the closed unit square."""

    __slots__ = ()

    def __new__(cls, nx: int, ny: int, k: int = MAX_DYADIC_SCALE):
        if not 0 <= k <= MAX_DYADIC_SCALE:
            raise ValueError(f"dyadic scale k={k} outside [0, {MAX_DYADIC_SCALE}]")
        top = 1 << k
        if not (0 <= nx <= top and 0 <= ny <= top):
            raise ValueError(f"dyadic numerators ({nx}, {ny}) outside [0, 2**{k}]")
        return super().__new__(cls, nx, ny, k)

    def as_fractions(self) -> Tuple[Fraction, Fraction]:
        return Fraction(self.nx, 1 << self.k), Fraction(self.ny, 1 << self.k)


Point = Union[LatticePoint, DyadicPoint, Tuple[int, int]]


def _common_scale(points: Sequence[Point]):
    """Integer coordinates of ``points`` at one shared dyadic scale."""
    k = max((p.k for p in points if isinstance(p, DyadicPoint)), default=0)
    out = []
    for p in points:
        if isinstance(p, DyadicPoint):
            s = k - p.k
            out.append((p.nx << s, p.ny << s))
        else:
            x, y = p
            if abs(x) >= _INT64_LIMIT or abs(y) >= _INT64_LIMIT:
                raise PredicateRangeError(f"lattice coordinate out of 64-bit range: {p!r}")
            out.append((x << k, y << k))
    return out


def _cross(p, q, r) -> int:
    ux, uy = q[0] - p[0], q[1] - p[1]
    vx, vy = r[0] - p[0], r[1] - p[1]
    left, right = ux * vy, uy * vx
    if abs(left) >= _INT128_LIMIT or abs(right) >= _INT128_LIMIT or abs(left - right) >= _INT128_LIMIT:
        raise PredicateRangeError(f"orientation of {p}, {q}, {r} exceeds 128-bit range")
    return left - right


def _sign(v: int) -> int:
    return (v > 0) - (v < 0)


def orient(p: Point, q: Point, r: Point) -> int:
    """Sign of the cross product ``(q - p) x (r - p)``: +1 ccw, -1 cw, 0 collinear."""
    return _sign(_cross(*_common_scale((p, q, r))))


def _open_cross(a, b, c, d) -> bool:
    o1, o2 = _sign(_cross(a, b, c)), _sign(_cross(a, b, d))
    o3, o4 = _sign(_cross(c, d, a)), _sign(_cross(c, d, b))
    return o1 * o2 < 0 and o3 * o4 < 0


def segments_cross_properly(a: Point, b: Point, c: Point, d: Point) -> bool:
    """True iff the open segments ``ab`` and ``cd`` share a point.

    Touching at an endpoint and collinear overlap both count as no crossing.
    """
    return _open_cross(*_common_scale((a, b, c, d)))


class QuadKind(enum.Enum):
    DEGENERATE = "degenerate"
    CONCAVE = "concave"
    CONVEX = "convex"


@dataclass(frozen=True)
class QuadClass:
    kind: QuadKind
    diagonals: Optional[Tuple[Tuple[Point, Point], Tuple[Point, Point]]] = None

    @property
    def is_convex(self) -> bool:
        return self.kind is QuadKind.CONVEX


_PAIRINGS = (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)))


def classify_quad(s: Sequence[Point]) -> QuadClass:
    if len(s) != 4:
        raise ValueError(f"expected 4 points, got {len(s)}")
    c = _common_scale(s)
    # a coincident pair makes every triple containing it collinear
    for i, j, k in ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)):
        if _cross(c[i], c[j], c[k]) == 0:
            return QuadClass(QuadKind.DEGENERATE)
    for (i, j), (k, l) in _PAIRINGS:
        if _open_cross(c[i], c[j], c[k], c[l]):
            return QuadClass(QuadKind.CONVEX, ((s[i], s[j]), (s[k], s[l])))
    return QuadClass(QuadKind.CONCAVE)


class Color(enum.IntEnum):
    RED = 0
    BLUE = 1

    def other(self) -> "Color":
        return Color.BLUE if self is Color.RED else Color.RED


Endpoint = Union[Fraction, float]


def _endpoint(v) -> Endpoint:
    if isinstance(v, float) and math.isinf(v):
        return v
    return Fraction(v)


@dataclass(frozen=True)
class ColorRule:
    """Color a segment by whether its slope lies in an interval.

    Slopes inside ``lo..hi`` get ``inside`` (blue by default), all others the
    opposite color.  Vertical segments have no slope and get
    ``vertical_color``.  Infinite endpoints are ``-math.inf``/``math.inf``.
    """

    lo: Endpoint = -math.inf
    hi: Endpoint = math.inf
    lo_open: bool = True
    hi_open: bool = True
    vertical_color: Color = Color.BLUE
    inside: Color = Color.BLUE

    def __post_init__(self):
        object.__setattr__(self, "lo", _endpoint(self.lo))
        object.__setattr__(self, "hi", _endpoint(self.hi))
        object.__setattr__(self, "vertical_color", Color(self.vertical_color))
        object.__setattr__(self, "inside", Color(self.inside))
        if self.lo == math.inf or self.hi == -math.inf:
            raise ValueError("interval endpoints must satisfy lo < +inf and hi > -inf")
        if self.lo > self.hi:
            raise ValueError(f"empty interval: lo={self.lo} > hi={self.hi}")
        for v in (self.lo, self.hi):
            if isinstance(v, Fraction) and (abs(v.numerator) >= _INT64_LIMIT or v.denominator >= _INT64_LIMIT):
                raise PredicateRangeError(f"interval endpoint {v} does not fit 64-bit numerator/denominator")

    def complement(self) -> "ColorRule":
        """The same partition of slopes with RED and BLUE swapped."""
        return ColorRule(self.lo, self.hi, self.lo_open, self.hi_open,
                         self.vertical_color.other(), self.inside.other())

    def reflected(self) -> "ColorRule":
        """Rule that colors the mirror image (x -> -x) of a segment the same way."""
        return ColorRule(-self.hi, -self.lo, self.hi_open, self.lo_open,
                         self.vertical_color, self.inside)

    def contains_slope(self, dy: int, dx: int) -> bool:
        """Exact test of ``dy/dx`` against the interval; requires ``dx != 0``."""
        if dx < 0:
            dx, dy = -dx, -dy
        lo, hi = self.lo, self.hi
        if lo != -math.inf:
            lhs, rhs = dy * lo.denominator, lo.numerator * dx
            if lhs < rhs or (self.lo_open and lhs == rhs):
                return False
        if hi != math.inf:
            lhs, rhs = dy * hi.denominator, hi.numerator * dx
            if lhs > rhs or (self.hi_open and lhs == rhs):
                return False
        return True

    def color(self, dy: int, dx: int) -> Color:
        if dx == 0:
            return self.vertical_color
        return self.inside if self.contains_slope(dy, dx) else self.inside.other()

    def __str__(self) -> str:
        name = "blue" if self.inside is Color.BLUE else "red"
        left = "(" if self.lo_open else "["
        right = ")" if self.hi_open else "]"
        return (f"{name}={left}{_format_endpoint(self.lo)},{_format_endpoint(self.hi)}{right}"
                f" vertical={self.vertical_color.name.lower()}")


CHI_SLOPE = ColorRule(-math.inf, 0, lo_open=False, hi_open=False)


def _format_endpoint(v: Endpoint) -> str:
    if v == math.inf:
        return "inf"
    if v == -math.inf:
        return "-inf"
    if v.denominator > 1 and v.denominator & (v.denominator - 1) == 0 and abs(v.numerator) == 1:
        sign = "-" if v < 0 else ""
        return f"{sign}2^-{v.denominator.bit_length() - 1}"
    return str(v)


class RuleSyntaxError(ValueError):
    pass


_RULE_RE = re.compile(
    r"^\s*(?P<name>blue|red)\s*=\s*(?P<left>[\[(])\s*(?P<lo>[^,\s]+)\s*,\s*(?P<hi>[^\])\s]+)\s*(?P<right>[\])])"
    r"(?P<rest>.*)$",
    re.IGNORECASE,
)
_POW_RE = re.compile(r"^([+-]?)(\d+)\^([+-]?\d+)$")


def parse_endpoint(text: str) -> Endpoint:
    t = text.strip().lower()
    if t in ("inf", "+inf", "infinity", "+infinity"):
        return math.inf
    if t in ("-inf", "-infinity"):
        return -math.inf
    m = _POW_RE.match(t)
    if m:
        sign, base, exp = m.groups()
        v = Fraction(int(base)) ** int(exp)
        return -v if sign == "-" else v
    try:
        return Fraction(t)
    except (ValueError, ZeroDivisionError):
        raise RuleSyntaxError(f"bad interval endpoint {text!r}") from None


def parse_rule(text: str) -> ColorRule:
    """Parse ``blue=(a,b)`` style rule text.

    Brackets mark closed ends, parentheses open ends.  Endpoints may be
    integers, ``p/q`` fractions, decimals, powers like ``2^-16``, or
    ``inf``/``-inf``.  A trailing ``vertical=blue|red`` sets the color of
    vertical segments (blue when omitted).  ``red=(a,b)`` colors the interval
    red instead.
    """
    m = _RULE_RE.match(text)
    if not m:
        raise RuleSyntaxError(f"cannot parse rule {text!r}; expected e.g. 'blue=[-inf,0] vertical=blue'")
    vertical = Color.BLUE
    for tok in filter(None, re.split(r"[\s,;]+", m["rest"])):
        key, _, val = tok.partition("=")
        if key.lower() != "vertical" or val.lower() not in ("blue", "red"):
            raise RuleSyntaxError(f"unexpected token {tok!r} in rule {text!r}")
        vertical = Color[val.upper()]
    try:
        return ColorRule(
            parse_endpoint(m["lo"]),
            parse_endpoint(m["hi"]),
            lo_open=m["left"] == "(",
            hi_open=m["right"] == ")",
            vertical_color=vertical,
            inside=Color[m["name"].upper()],
        )
    except (ValueError, OverflowError) as exc:
        raise RuleSyntaxError(f"invalid rule {text!r}: {exc}") from None


def slope_color(p: Point, q: Point, rule: ColorRule = CHI_SLOPE) -> Color:
    (px, py), (qx, qy) = _common_scale((p, q))
    if (px, py) == (qx, qy):
        raise ValueError("slope of a zero-length segment is undefined")
    return rule.color(qy - py, qx - px)


def is_mono_crossing_quad(s: Sequence[Point], rule: ColorRule = CHI_SLOPE) -> bool:
    cls = classify_quad(s)
    if not cls.is_convex:
        return False
    (a, b), (c, d) = cls.diagonals
    return slope_color(a, b, rule) == slope_color(c, d, rule)
