"""Exact scalars for the deformed-character toolkit.

Every symbolic quantity in this package lives in Q(t), where t is the
square root of the deformation parameter (alpha = t**2).  Working in t
rather than alpha keeps all normalizations rational: character
prefactors contribute half-integer powers of alpha.  The combination
g = (1 - t**2)/t is the shifted parameter used for coefficient
bookkeeping in the cumulant expansions; GammaPolynomial and to_gamma
handle recognition of elements of Q(t) as polynomials in g.

Plain rationals are fractions.Fraction throughout the package.
"""

from __future__ import annotations

import math
from fractions import Fraction

__all__ = [
    "Poly",
    "FieldElement",
    "GammaPolynomial",
    "to_gamma",
    "solve_exact",
    "RankDeficientError",
    "InconsistentError",
    "fe",
    "T",
    "GAMMA",
    "ZERO",
    "ONE",
]


def _frac(x):
    return x if isinstance(x, Fraction) else Fraction(x)


class Poly:
    """Dense univariate polynomial over Q, coefficients stored by ascending degree."""

    __slots__ = ("c",)

    def __init__(self, coeffs=()):
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        self.c = tuple(cs)

    @classmethod
    def const(cls, value):
        return cls((value,))

    @classmethod
    def monomial(cls, k, value=1):
        if not value:
            return cls()
        return cls((0,) * k + (value,))

    @property
    def degree(self):
        # degree of the zero polynomial is -1 by convention
        return len(self.c) - 1

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __neg__(self):
        return Poly(tuple(-a for a in self.c))

    def __add__(self, other):
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] = out[i] + x
        return Poly(out)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        a, b = self.c, other.c
        if not a or not b:
            return Poly()
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] += ai * bj
        return Poly(out)

    def scale(self, s):
        if not s:
            return Poly()
        return Poly(tuple(a * s for a in self.c))

    def shift(self, k):
        """Multiply by t**k, k >= 0."""
        if not self.c:
            return self
        return Poly((0,) * k + self.c)

    def unshift(self, k):
        """Exact division by t**k; valuation must be at least k."""
        if not self.c:
            return self
        if any(self.c[i] for i in range(k)):
            raise ValueError("valuation too small for unshift")
        return Poly(self.c[k:])

    def valuation(self):
        for i, a in enumerate(self.c):
            if a:
                return i
        return 0

    def leading(self):
        return self.c[-1] if self.c else 0

    def is_monomial(self):
        return bool(self.c) and all(not a for a in self.c[:-1])

    def divmod(self, other):
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.c)
        db = other.degree
        lb = other.c[-1]
        q = [0] * max(0, len(r) - db)
        for i in range(len(r) - 1, db - 1, -1):
            ri = r[i]
            if ri:
                f = _frac(ri) / lb
                q[i - db] = f
                for j, bj in enumerate(other.c):
                    r[i - db + j] -= f * bj
                r[i] = 0
        return Poly(q), Poly(r)

    def div_exact(self, other):
        q, r = self.divmod(other)
        if r:
            raise ValueError("inexact polynomial division")
        return q

    def eval(self, x):
        out = 0
        for a in reversed(self.c):
            out = out * x + a
        return out

    def content_primitive(self):
        """Return (content, primitive) with primitive having coprime integer
        coefficients and positive leading coefficient."""
        if not self.c:
            return Fraction(0), self
        den = 1
        for a in self.c:
            if isinstance(a, Fraction):
                den = den * a.denominator // math.gcd(den, a.denominator)
        ints = [int(a * den) for a in self.c]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        if ints[-1] < 0:
            g = -g
        return Fraction(g, den), Poly([v // g for v in ints])

    def stretch_exponents(self, k):
        """Substitute t -> t**k (used to read a polynomial in alpha as one in t)."""
        if not self.c:
            return self
        out = [0] * ((len(self.c) - 1) * k + 1)
        for i, a in enumerate(self.c):
            out[i * k] = a
        return Poly(out)

    def __repr__(self):
        return "Poly(%r)" % (self.c,)

    def __str__(self):
        return render_poly(self.c, "t")


P_ZERO = Poly()
P_ONE = Poly((1,))
P_T = Poly((0, 1))


def _pseudo_rem(a, b):
    """Pseudo-remainder of integer polynomials: lb**(da-db+1) * a mod b."""
    da, db = a.degree, b.degree
    lb = b.c[-1]
    r = list(a.c)
    for i in range(da, db - 1, -1):
        c = r[i]
        r = [lb * x for x in r]
        if c:
            for j, bj in enumerate(b.c):
                r[i - db + j] -= c * bj
        r[i] = 0
    return Poly(r)


def _gcd_int(a, b):
    """Subresultant gcd of primitive integer polynomials, returned primitive."""
    if a.degree < b.degree:
        a, b = b, a
    g = 1
    h = 1
    while True:
        delta = a.degree - b.degree
        r = _pseudo_rem(a, b)
        if not r:
            return b.content_primitive()[1]
        if r.degree == 0:
            return P_ONE
        divisor = g * h**delta
        r = Poly([x // divisor for x in r.c])
        a, b = b, r
        g = a.c[-1]
        if delta == 0:
            # h unchanged when degrees tie
            pass
        elif delta == 1:
            h = g
        else:
            h = g**delta // h ** (delta - 1)


def poly_gcd(a, b):
    """Gcd in Q[t], returned primitive with positive leading coefficient."""
    if not a:
        return b.content_primitive()[1] if b else P_ZERO
    if not b:
        return a.content_primitive()[1]
    va, vb = a.valuation(), b.valuation()
    v = min(va, vb)
    a = a.unshift(va)
    b = b.unshift(vb)
    if a.degree == 0 or b.degree == 0:
        return P_ONE.shift(v)
    pa = a.content_primitive()[1]
    pb = b.content_primitive()[1]
    return _gcd_int(pa, pb).shift(v)


def render_coeff(a):
    """Render a rational coefficient, no enclosing parentheses."""
    return str(a)


def render_poly(coeffs, var):
    """Human-readable polynomial with ascending powers of var."""
    pieces = []
    for k, a in enumerate(coeffs):
        if not a:
            continue
        if k == 0:
            body = render_coeff(a)
        else:
            p = var if k == 1 else "%s^%d" % (var, k)
            if a == 1:
                body = p
            elif a == -1:
                body = "-" + p
            else:
                body = "%s*%s" % (render_coeff(a), p)
        pieces.append(body)
    if not pieces:
        return "0"
    out = pieces[0]
    for body in pieces[1:]:
        if body.startswith("-"):
            out += " - " + body[1:]
        else:
            out += " + " + body
    return out


class FieldElement:
    """Element of Q(t), stored as a reduced fraction with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=P_ONE, _reduced=False):
        if not isinstance(num, Poly):
            num = Poly((_frac(num),)) if num else P_ZERO
        if not isinstance(den, Poly):
            den = Poly((_frac(den),)) if den else P_ZERO
        if not den:
            raise ZeroDivisionError("division by zero in Q(t)")
        if not num:
            self.num, self.den = P_ZERO, P_ONE
            return
        if not _reduced:
            g = poly_gcd(num, den)
            if g.degree > 0 or g.valuation() > 0:
                num = num.div_exact(g)
                den = den.div_exact(g)
            lead = den.leading()
            if lead != 1:
                inv = 1 / _frac(lead)
                num = num.scale(inv)
                den = den.scale(inv)
        self.num, self.den = num, den

    def is_zero(self):
        return not self.num

    def is_one(self):
        return self.den == P_ONE and self.num == P_ONE

    def is_polynomial(self):
        return self.den == P_ONE

    def is_constant(self):
        return self.den == P_ONE and self.num.degree <= 0

    def as_fraction(self):
        if not self.is_constant():
            raise ValueError("not a constant element")
        return _frac(self.num.c[0]) if self.num else Fraction(0)

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = fe(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __neg__(self):
        return FieldElement(-self.num, self.den, _reduced=True)

    def __add__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return FieldElement(self.num + other.num, self.den)
        if self.den == P_ONE:
            return FieldElement(self.num * other.den + other.num, other.den, _reduced=True)
        if other.den == P_ONE:
            return FieldElement(self.num + other.num * self.den, self.den, _reduced=True)
        g = poly_gcd(self.den, other.den)
        if g.degree == 0 and g.valuation() == 0:
            num = self.num * other.den + other.num * self.den
            return FieldElement(num, self.den * other.den, _reduced=True)
        d2 = other.den.div_exact(g)
        num = self.num * d2 + other.num * self.den.div_exact(g)
        return FieldElement(num, self.den * d2)

    __radd__ = __add__

    def __sub__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        if not self.num or not other.num:
            return ZERO
        n1, d1 = self.num, self.den
        n2, d2 = other.num, other.den
        if d1 != P_ONE and n2:
            g = poly_gcd(n2, d1)
            if g.degree > 0 or g.valuation() > 0:
                n2 = n2.div_exact(g)
                d1 = d1.div_exact(g)
        if d2 != P_ONE and n1:
            g = poly_gcd(n1, d2)
            if g.degree > 0 or g.valuation() > 0:
                n1 = n1.div_exact(g)
                d2 = d2.div_exact(g)
        num = n1 * n2
        den = d1 * d2
        lead = den.leading()
        if lead != 1:
            inv = 1 / _frac(lead)
            num = num.scale(inv)
            den = den.scale(inv)
        return FieldElement(num, den, _reduced=True)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return self * other._recip()

    def __rtruediv__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return other * self._recip()

    def _recip(self):
        if not self.num:
            raise ZeroDivisionError("division by zero in Q(t)")
        return FieldElement(self.den, self.num)

    def __pow__(self, k):
        if k < 0:
            return self._recip() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def size(self):
        """Rough complexity measure used for pivot selection."""
        return self.num.degree + self.den.degree

    def laurent(self):
        """Return {exponent: coefficient} if self is a Laurent polynomial in t,
        else None."""
        d = self.den
        if d != P_ONE and not (d.is_monomial() and d.leading() == 1):
            return None
        k = d.degree if d != P_ONE else 0
        return {i - k: a for i, a in enumerate(self.num.c) if a}

    def eval_at(self, tval):
        """Evaluate at a numeric t (Fraction or float)."""
        dv = self.den.eval(tval)
        if dv == 0:
            raise ZeroDivisionError("denominator vanishes at sample point")
        return self.num.eval(tval) / dv

    def __str__(self):
        ns = render_poly(self.num.c, "t")
        if self.den == P_ONE:
            return ns
        ds = render_poly(self.den.c, "t")
        if len(self.num.c) - self.num.valuation() > 1 or ns.startswith("-"):
            ns = "(%s)" % ns
        if len(self.den.c) - self.den.valuation() > 1:
            ds = "(%s)" % ds
        return "%s/%s" % (ns, ds)

    def __repr__(self):
        return "FieldElement(%s)" % self


def _lift(x):
    if isinstance(x, FieldElement):
        return x
    if isinstance(x, (int, Fraction)):
        return fe(x)
    return NotImplemented


_SMALL = {}


def fe(x):
    """Lift an int, Fraction or Poly into Q(t)."""
    if isinstance(x, FieldElement):
        return x
    if isinstance(x, Poly):
        return FieldElement(x, P_ONE, _reduced=True)
    key = x
    got = _SMALL.get(key)
    if got is None:
        got = FieldElement(Poly((_frac(x),)) if x else P_ZERO, P_ONE, _reduced=True)
        if isinstance(x, int) and -4 <= x <= 4:
            _SMALL[key] = got
    return got


ZERO = fe(0)
ONE = fe(1)
T = FieldElement(P_T, P_ONE, _reduced=True)
# g = (1 - t^2)/t
GAMMA = FieldElement(Poly((1, 0, -1)), P_T, _reduced=True)


class GammaPolynomial:
    """Polynomial in g = (1 - t**2)/t with rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_frac(a) for a in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, GammaPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] += x
        return GammaPolynomial(out)

    def __neg__(self):
        return GammaPolynomial(tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not self.coeffs or not other.coeffs:
            return GammaPolynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return GammaPolynomial(out)

    def nonzero_exponents(self):
        return [i for i, a in enumerate(self.coeffs) if a]

    def to_field(self):
        """Expand back into Q(t)."""
        out = ZERO
        for a in reversed(self.coeffs):
            out = out * GAMMA + fe(a)
        return out

    def eval(self, gval):
        out = 0
        for a in reversed(self.coeffs):
            out = out * gval + a
        return out

    def __str__(self):
        return render_poly(self.coeffs, "g")

    def __repr__(self):
        return "GammaPolynomial(%s)" % self


_GAMMA_POWERS = {0: {0: Fraction(1)}}


def _gamma_power_laurent(k):
    """Laurent coefficients of g**k: sum_j C(k,j) (-1)^j t^(2j-k)."""
    got = _GAMMA_POWERS.get(k)
    if got is None:
        got = {2 * j - k: Fraction((-1) ** j * math.comb(k, j)) for j in range(k + 1)}
        _GAMMA_POWERS[k] = got
    return got


def to_gamma(c):
    """Recognize c in Q(t) as a polynomial in g = (1-t^2)/t.

    Returns a GammaPolynomial, or None when c is not such a polynomial
    (either not Laurent in t, or the Laurent support does not close up).
    The system is triangular: g**k is the unique power reaching t**(-k).
    """
    c = _lift(c)
    if c is NotImplemented:
        raise TypeError("to_gamma expects an exact scalar")
    work = c.laurent()
    if work is None:
        return None
    out = {}
    while work:
        m = min(work)
        if m > 0:
            return None
        k = -m
        q = work[m]
        out[k] = q
        for j, b in _gamma_power_laurent(k).items():
            v = work.get(j, Fraction(0)) - q * b
            if v:
                work[j] = v
            else:
                work.pop(j, None)
    if not out:
        return GammaPolynomial()
    coeffs = [Fraction(0)] * (max(out) + 1)
    for k, v in out.items():
        coeffs[k] = v
    return GammaPolynomial(coeffs)


class RankDeficientError(ValueError):
    """Linear system does not determine all unknowns."""

    def __init__(self, rank):
        super().__init__("rank deficient system: rank %d" % rank)
        self.rank = rank


class InconsistentError(ValueError):
    """Overdetermined system has no solution; carries a witness row index."""

    def __init__(self, row):
        super().__init__("inconsistent system: row %d" % row)
        self.row = row


def _scalar_size(x):
    if isinstance(x, FieldElement):
        return x.size()
    return 0


def solve_rows(rows, ncols, nrhs):
    """Online reduced row echelon elimination over an exact field.

    rows are sequences of length ncols + nrhs (matrix row followed by the
    right hand sides).  Scalars may be Fractions or FieldElements; any type
    with field arithmetic and truthiness works.  Returns (solutions, rank)
    where solutions[j] is the vector for right hand side j.  Raises
    InconsistentError with the offending row index, or RankDeficientError.
    """
    width = ncols + nrhs
    pivots = []  # (col, row) with row normalized to 1 at col
    for ridx, row in enumerate(rows):
        r = list(row)
        if len(r) != width:
            raise ValueError("row %d has wrong length" % ridx)
        for pc, pr in pivots:
            c = r[pc]
            if c:
                for j in range(width):
                    if pr[j]:
                        r[j] = r[j] - c * pr[j]
        best = None
        for j in range(ncols):
            if r[j]:
                s = _scalar_size(r[j])
                if best is None or s < best[1]:
                    best = (j, s)
        if best is None:
            if any(r[ncols:]):
                raise InconsistentError(ridx)
            continue
        col = best[0]
        inv = 1 / r[col]
        r = [x * inv if x else x for x in r]
        for pc, pr in pivots:
            c = pr[col]
            if c:
                for j in range(width):
                    if r[j]:
                        pr[j] = pr[j] - c * r[j]
        pivots.append((col, r))
    rank = len(pivots)
    if rank < ncols:
        raise RankDeficientError(rank)
    sols = []
    bycol = {pc: pr for pc, pr in pivots}
    for k in range(nrhs):
        sols.append([bycol[j][ncols + k] for j in range(ncols)])
    return sols, rank


def solve_exact(a, b):
    """Solve the (possibly overdetermined) exact system A x = b.

    A must have at least as many rows as columns.  Returns (x, rank).
    """
    rows = [list(r) for r in a]
    if not rows:
        raise ValueError("empty system")
    n = len(rows[0])
    if len(rows) < n:
        raise ValueError("need at least as many rows as columns")
    if len(b) != len(rows):
        raise ValueError("right hand side length mismatch")
    aug = [row + [rhs] for row, rhs in zip(rows, b)]
    sols, rank = solve_rows(aug, n, 1)
    return sols[0], rank
