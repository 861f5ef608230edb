"""Transition measures of diagram borders, their moments and free cumulants.

The transition measure of a border with outer corners o_j and inner
corners i_j puts mass prod(o_j - i) / prod'(o_j - o) at each o_j; its
moment series is prod(1 - z i) / prod(1 - z o).  Free cumulants come out
of the functional equation M(z) = 1 + sum_k R_k z^k M(z)^k.  Everything
is scalar-generic: Fractions, doubles and elements of Q(t) all work.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .field import GAMMA, T, FieldElement, fe
from .diagrams import GeneralizedDiagram, anisotropic

__all__ = [
    "TransitionMeasure",
    "MomentSequence",
    "CumulantSequence",
    "transition_measure",
    "moments",
    "free_cumulants",
    "anisotropic_MR",
    "add_box_update",
    "integrality_check",
]


class TransitionMeasure:
    """Atoms at the outer corners with the interlacing residue masses."""

    __slots__ = ("atoms", "masses")

    def __init__(self, atoms, masses):
        if len(atoms) != len(masses):
            raise ValueError("atom and mass counts differ")
        self.atoms = tuple(atoms)
        self.masses = tuple(masses)

    def moment(self, k):
        total = self.masses[0] * self.atoms[0] ** k
        for a, w in zip(self.atoms[1:], self.masses[1:]):
            total = total + w * a ** k
        return total

    def __repr__(self):
        return "TransitionMeasure(atoms=%r, masses=%r)" % (self.atoms, self.masses)


class _Sequence:
    __slots__ = ("values",)

    def __init__(self, values):
        self.values = tuple(values)

    def __getitem__(self, k):
        return self.values[k]

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __eq__(self, other):
        if isinstance(other, _Sequence):
            other = other.values
        return self.values == tuple(other)

    def __repr__(self):
        return "%s(%r)" % (type(self).__name__, list(self.values))


class MomentSequence(_Sequence):
    """M_0, M_1, ..., M_K of a transition measure; M_0 = 1, M_1 = 0."""


class CumulantSequence(_Sequence):
    """R_0, R_1, ..., R_K with the unused R_0 slot set to 0."""


def transition_measure(diagram):
    o, i = diagram.outer, diagram.inner
    masses = []
    for j, oj in enumerate(o):
        num = 1
        for iv in i:
            num = num * (oj - iv)
        den = 1
        for jj, ov in enumerate(o):
            if jj != j:
                den = den * (oj - ov)
        if isinstance(num, int) and isinstance(den, int):
            masses.append(Fraction(num, den))
        else:
            masses.append(num / den)
    return TransitionMeasure(o, masses)


def moments(source, K):
    """Moments M_0..M_K, by series division for a diagram."""
    if isinstance(source, TransitionMeasure):
        out = [1]
        for k in range(1, K + 1):
            out.append(source.moment(k))
        return MomentSequence(out)
    if not isinstance(source, GeneralizedDiagram):
        raise TypeError("expected a diagram or a transition measure")
    num = _poly_from_roots(source.inner, K)
    den = _poly_from_roots(source.outer, K)
    out = [1]
    for k in range(1, K + 1):
        acc = num[k] if k < len(num) else 0
        for j in range(1, min(k, len(den) - 1) + 1):
            acc = acc - den[j] * out[k - j]
        out.append(acc)
    return MomentSequence(out)


def _poly_from_roots(contents, K):
    # prod (1 - z*c) truncated past z^K
    coeffs = [1]
    for c in contents:
        coeffs.append(0)
        for i in range(len(coeffs) - 1, 0, -1):
            coeffs[i] = coeffs[i] - c * coeffs[i - 1]
        del coeffs[K + 1:]
    return coeffs


def free_cumulants(mseq, K=None):
    """Free cumulants R_1..R_K from moments, by the triangular recurrence."""
    if K is None:
        K = len(mseq) - 1
    if K > len(mseq) - 1:
        raise ValueError("need moments up to order K")
    mser = list(mseq.values[: K + 1])
    powers = [None, mser]
    for j in range(2, K + 1):
        prev = powers[-1]
        nxt = []
        for k in range(K + 1):
            acc = prev[k]  # times mser[0] = 1
            for i in range(1, k + 1):
                acc = acc + prev[k - i] * mser[i]
            nxt.append(acc)
        powers.append(nxt)
    rs = [0]
    for k in range(1, K + 1):
        acc = mser[k]
        for j in range(1, k):
            acc = acc - rs[j] * powers[j][k - j]
        rs.append(acc)
    return CumulantSequence(rs)


def anisotropic_MR(lam, K, tscalar=T):
    """Moment and cumulant sequences of the (t, 1/t) stretched diagram."""
    d = anisotropic(lam, tscalar)
    m = moments(d, K)
    return m, free_cumulants(m)


def add_box_update(mseq, z_o, gamma, K=None):
    """Moments after adding a box at the outer corner with content z_o.

    M'_k = M_k + sum over r >= 1 and s, u >= 0 with 2r + s + u <= k of
    z_o^(k-2r-s-u) C(k-u-1, 2r+s-1) C(r+s-1, s) (-gamma)^s M_u.
    """
    if K is None:
        K = len(mseq) - 1
    if K > len(mseq) - 1:
        raise ValueError("need moments up to order K")
    out = [1]
    for k in range(1, K + 1):
        acc = mseq[k]
        for r in range(1, k // 2 + 1):
            for s in range(0, k - 2 * r + 1):
                cb = comb(r + s - 1, s)
                for u in range(0, k - 2 * r - s + 1):
                    w = comb(k - u - 1, 2 * r + s - 1) * cb
                    if not w:
                        continue
                    term = w * mseq[u]
                    if s:
                        term = term * (-gamma) ** s
                    e = k - 2 * r - s - u
                    if e:
                        term = term * z_o ** e
                    acc = acc + term
        out.append(acc)
    return MomentSequence(out)


def integrality_check(lam, K):
    """Check t^(k-2) M_k is an integer polynomial in t^2 for k = 2..K.

    Moments are taken on the (t, 1/t) stretched diagram of lam with t
    symbolic.  Returns the list of shifted coefficient dictionaries;
    raises ValueError when the property fails.
    """
    m, _ = anisotropic_MR(lam, K)
    if m[1] != fe(0):
        raise ValueError("M_1 is nonzero")
    out = []
    for k in range(2, K + 1):
        val = m[k]
        if not isinstance(val, FieldElement):
            val = fe(val)
        lau = val.laurent()
        if lau is None:
            raise ValueError("M_%d is not a Laurent polynomial in t" % k)
        shifted = {}
        for e, c in lau.items():
            e2 = e + k - 2
            if e2 < 0 or e2 % 2 or c.denominator != 1:
                raise ValueError("t^%d M_%d falls outside Z[t^2]" % (k - 2, k))
            shifted[e2] = int(c)
        out.append(shifted)
    return out
