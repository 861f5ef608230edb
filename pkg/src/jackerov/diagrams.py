"""Diagram borders as interlacing corner contents, profiles and the limit curve.

A border (French convention, content x - y increasing left to right) is
stored through the contents of its corners: outer corners are the local
minima of the profile, where a box can be added, inner corners are the
local maxima.  There is always one more outer corner than inner, and the
two corner sums agree.  The same code paths run over exact scalars
(ints, Fractions, FieldElements) and over doubles; the scalar kind is
decided by the contents handed in, never implicitly converted.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .field import FieldElement, T, fe
from .partitions import Partition

__all__ = [
    "GeneralizedDiagram",
    "corners",
    "stretch",
    "anisotropic",
    "Profile",
    "profile",
    "LimitShape",
    "OMEGA",
    "omega_curve",
    "sup_distance",
    "eval_difference_alphabet",
    "content_power_sums",
]

_SAMPLE_T = (Fraction(13, 9), Fraction(17, 7), Fraction(5, 11))


def _kind(values):
    if any(isinstance(v, FieldElement) for v in values):
        return "symbolic"
    if any(isinstance(v, float) for v in values):
        return "float"
    return "rational"


def _numeric(v, tval):
    if isinstance(v, FieldElement):
        return v.eval_at(tval)
    return v


class GeneralizedDiagram:
    """Interlacing corner contents o_1 < i_1 < o_2 < ... < o_m."""

    __slots__ = ("outer", "inner", "kind")

    def __init__(self, outer, inner):
        outer = tuple(outer)
        inner = tuple(inner)
        if len(outer) != len(inner) + 1:
            raise ValueError("need exactly one more outer corner than inner")
        self.outer = outer
        self.inner = inner
        self.kind = _kind(outer + inner)
        self._validate()

    def _validate(self):
        merged = []
        for j in range(len(self.inner)):
            merged.append(self.outer[j])
            merged.append(self.inner[j])
        merged.append(self.outer[-1])
        if self.kind == "symbolic":
            # symbolic contents are compared at sample values of t > 0
            for tval in _SAMPLE_T:
                nums = [_numeric(v, tval) for v in merged]
                if all(a < b for a, b in zip(nums, nums[1:])):
                    break
            else:
                raise ValueError("corner contents do not interlace")
            total = fe(0)
            for o in self.outer:
                total = total + o
            for i in self.inner:
                total = total - i
            if total:
                raise ValueError("corner content sums differ")
        else:
            for a, b in zip(merged, merged[1:]):
                if not a < b:
                    raise ValueError("corner contents do not interlace")
            total = sum(self.outer) - sum(self.inner)
            if self.kind == "float":
                scale = max(1.0, max(abs(v) for v in merged))
                if abs(total) > 1e-8 * scale:
                    raise ValueError("corner content sums differ")
            elif total != 0:
                raise ValueError("corner content sums differ")

    def corner_points(self):
        """(x, y) coordinates of all corners, outer and inner alternating.

        Recovered from the contents: walking the border from the y axis,
        the height x + y rises by one unit per unit of content up to an
        inner corner and falls towards the next outer corner.
        """
        o, i = self.outer, self.inner
        pts = []
        h = -o[0]
        pts.append((_half(h + o[0]), _half(h - o[0])))
        for j in range(len(i)):
            h = h + (i[j] - o[j])
            pts.append((_half(h + i[j]), _half(h - i[j])))
            h = h - (o[j + 1] - i[j])
            pts.append((_half(h + o[j + 1]), _half(h - o[j + 1])))
        return pts

    def __eq__(self, other):
        if not isinstance(other, GeneralizedDiagram):
            return NotImplemented
        return self.outer == other.outer and self.inner == other.inner

    def __repr__(self):
        return "GeneralizedDiagram(outer=%r, inner=%r)" % (self.outer, self.inner)


def _half(v):
    if isinstance(v, int):
        if v % 2 == 0:
            return v // 2
        return Fraction(v, 2)
    return v / 2


def corners(lam):
    """Corner contents of a partition diagram; corners(()) has one outer at 0."""
    if not isinstance(lam, Partition):
        lam = Partition(lam)
    vals, mults = lam.runs()
    ell = len(lam)
    outer = [-ell]
    inner = []
    prefix = ell
    for i in range(len(vals) - 1, -1, -1):
        inner.append(vals[i] - prefix)
        prefix -= mults[i]
        outer.append(vals[i] - prefix)
    return GeneralizedDiagram(outer, inner)


def stretch(diagram, s, t):
    """Anisotropic dilation: corner (x, y) goes to (s*x, t*y).

    Both factors must be positive; positivity of symbolic factors is taken
    at face value (t stands for a positive parameter).
    """
    for f in (s, t):
        if isinstance(f, (int, float, Fraction)) and not f > 0:
            raise ValueError("stretch factors must be positive")
        if isinstance(f, FieldElement) and f.is_zero():
            raise ValueError("stretch factors must be nonzero")
    pts = diagram.corner_points()
    new = [s * x - t * y for x, y in pts]
    outer = new[0::2]
    inner = new[1::2]
    return GeneralizedDiagram(outer, inner)


def anisotropic(lam, tscalar=None):
    """Stretch a partition diagram by (t, 1/t), the alpha = t**2 normalization."""
    if tscalar is None:
        tscalar = T
    d = lam if isinstance(lam, GeneralizedDiagram) else corners(lam)
    if isinstance(tscalar, FieldElement):
        inv = 1 / tscalar
    else:
        inv = 1 / tscalar if isinstance(tscalar, float) else Fraction(1) / tscalar
    return stretch(d, tscalar, inv)


class Profile:
    """Piecewise linear profile with slopes +-1, equal to |x| outside its support."""

    __slots__ = ("xs", "ys")

    def __init__(self, xs, ys):
        self.xs = tuple(xs)
        self.ys = tuple(ys)

    @property
    def breakpoints(self):
        return tuple(zip(self.xs, self.ys))

    def __call__(self, x):
        xs, ys = self.xs, self.ys
        if x <= xs[0] or x >= xs[-1]:
            return abs(x)
        # binary search keeps exact scalars exact
        lo, hi = 0, len(xs) - 1
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if xs[mid] <= x:
                lo = mid
            else:
                hi = mid
        x0, y0 = xs[lo], ys[lo]
        slope = 1 if ys[hi] > y0 else -1
        return y0 + slope * (x - x0)

    def eval_array(self, grid):
        import numpy as np

        xs = [float(v) for v in self.xs]
        ys = [float(v) for v in self.ys]
        pad = max(abs(xs[0]), abs(xs[-1]), float(np.max(np.abs(grid)))) + 1.0
        xs = [-pad] + xs + [pad]
        ys = [pad] + ys + [pad]
        return np.interp(grid, xs, ys)

    def __repr__(self):
        return "Profile(%r)" % (self.breakpoints,)


def profile(diagram):
    """Profile of a diagram from its corner contents."""
    if diagram.kind == "symbolic":
        raise TypeError("profiles need numeric contents; evaluate t first")
    o, i = diagram.outer, diagram.inner
    xs = [o[0]]
    ys = [-o[0]]
    h = -o[0]
    for j in range(len(i)):
        h = h + (i[j] - o[j])
        xs.append(i[j])
        ys.append(h)
        h = h - (o[j + 1] - i[j])
        xs.append(o[j + 1])
        ys.append(h)
    return Profile(xs, ys)


class LimitShape:
    """The curve (2/pi)(x asin(x/2) + sqrt(4 - x^2)) inside [-2, 2], |x| outside."""

    breakpoints = ((-2.0, 2.0), (0.0, 4 / math.pi), (2.0, 2.0))

    def __call__(self, x):
        x = float(x)
        if abs(x) >= 2.0:
            return abs(x)
        return (2.0 / math.pi) * (x * math.asin(x / 2.0) + math.sqrt(4.0 - x * x))

    def eval_array(self, grid):
        import numpy as np

        x = np.asarray(grid, dtype=float)
        out = np.abs(x)
        inside = out < 2.0
        xi = x[inside]
        out[inside] = (2.0 / math.pi) * (xi * np.arcsin(xi / 2.0)
                                         + np.sqrt(4.0 - xi * xi))
        return out

    def __repr__(self):
        return "LimitShape()"


OMEGA = LimitShape()


def omega_curve(x):
    return OMEGA(x)


def sup_distance(f, g, grid_step=1e-3):
    """Supremum distance of two profile-like curves.

    Both curves are sampled at each other's breakpoints and on a uniform
    grid of the given step, so the reported value undershoots the true
    supremum by at most half a step times the combined slope bound.
    """
    import numpy as np

    xs = [float(p[0]) for p in f.breakpoints] + [float(p[0]) for p in g.breakpoints]
    lo = min(xs + [-2.0])
    hi = max(xs + [2.0])
    grid = np.arange(lo, hi + grid_step, grid_step)
    cand = np.concatenate([grid, np.array(xs, dtype=float)])
    return float(np.max(np.abs(f.eval_array(cand) - g.eval_array(cand))))


def content_power_sums(diagram, kmax):
    """p_k of the difference alphabet outer - inner for k = 0..kmax."""
    out = [len(diagram.outer) - len(diagram.inner)]
    opow = list(diagram.outer)
    ipow = list(diagram.inner)
    for _ in range(kmax):
        total = opow[0]
        for v in opow[1:]:
            total = total + v
        for v in ipow:
            total = total - v
        out.append(total)
        opow = [v * b for v, b in zip(opow, diagram.outer)]
        ipow = [v * b for v, b in zip(ipow, diagram.inner)]
    return out


def eval_difference_alphabet(f, diagram):
    """Evaluate a symmetric function on the difference alphabet of a diagram.

    f is expanded over power sums; p_k picks up sum(outer^k) - sum(inner^k).
    """
    fp = f.convert("p")
    if not fp.coeffs:
        return 0
    ps = content_power_sums(diagram, f.degree)
    total = None
    for rho, c in fp.coeffs.items():
        term = c
        for part in rho:
            term = term * ps[part]
        total = term if total is None else total + term
    return total
