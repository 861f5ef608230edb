"""Integer partitions: enumeration, dominance order, standard statistics."""

from __future__ import annotations

import math
from fractions import Fraction

__all__ = [
    "Partition",
    "enumerate_partitions",
    "partitions_upto",
    "z_mu",
    "arm_leg",
    "dominance_leq",
    "addable_rows",
    "removable_rows",
]


class Partition:
    """Weakly decreasing sequence of positive integers, usable as a dict key."""

    __slots__ = ("parts",)

    def __init__(self, parts=()):
        ps = sorted((int(p) for p in parts if p), reverse=True)
        if ps and ps[-1] < 0:
            raise ValueError("parts must be non-negative")
        self.parts = tuple(ps)

    @classmethod
    def parse(cls, text):
        """Parse "3,1"; "-" or "" denote the empty partition."""
        text = text.strip()
        if text in ("-", ""):
            return cls()
        return cls(int(tok) for tok in text.split(","))

    @property
    def size(self):
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __bool__(self):
        return bool(self.parts)

    def __eq__(self, other):
        if isinstance(other, Partition):
            return self.parts == other.parts
        if isinstance(other, tuple):
            return self.parts == other
        return NotImplemented

    def __hash__(self):
        return hash(self.parts)

    def mult(self, v):
        """Multiplicity of the part v."""
        return sum(1 for p in self.parts if p == v)

    def multiplicities(self):
        out = {}
        for p in self.parts:
            out[p] = out.get(p, 0) + 1
        return out

    def conjugate(self):
        if not self.parts:
            return Partition()
        cols = [0] * self.parts[0]
        for p in self.parts:
            for j in range(p):
                cols[j] += 1
        return Partition(cols)

    def runs(self):
        """Distinct part values with multiplicities, largest value first."""
        vals, mults = [], []
        for p in self.parts:
            if vals and vals[-1] == p:
                mults[-1] += 1
            else:
                vals.append(p)
                mults.append(1)
        return vals, mults

    def __str__(self):
        if not self.parts:
            return "-"
        return ",".join(str(p) for p in self.parts)

    def __repr__(self):
        return "Partition(%r)" % (self.parts,)


def enumerate_partitions(n):
    """All partitions of n in reverse lexicographic order, (n) first."""
    if n < 0:
        raise ValueError("n must be non-negative")
    out = []

    def rec(remaining, bound, prefix):
        if remaining == 0:
            out.append(Partition(prefix))
            return
        for p in range(min(bound, remaining), 0, -1):
            prefix.append(p)
            rec(remaining - p, p, prefix)
            prefix.pop()

    rec(n, n, [])
    return out


def partitions_upto(n):
    """Partitions of 0, 1, ..., n, each block in reverse lexicographic order."""
    out = []
    for m in range(n + 1):
        out.extend(enumerate_partitions(m))
    return out


def z_mu(mu):
    """Order of the centralizer of a permutation of cycle type mu."""
    out = 1
    for p in mu:
        out *= p
    for m in mu.multiplicities().values():
        out *= math.factorial(m)
    return out


def arm_leg(lam, box):
    """Arm and leg lengths of box = (row, col), 1-based, rows listed longest first."""
    r, c = box
    if r < 1 or r > len(lam) or c < 1 or c > lam[r - 1]:
        raise ValueError("box %r outside of %s" % (box, lam))
    arm = lam[r - 1] - c
    leg = sum(1 for i in range(r, len(lam)) if lam[i] >= c)
    return arm, leg


def dominance_leq(mu, lam):
    """Whether mu is below lam in dominance order; sizes must agree."""
    if mu.size != lam.size:
        raise ValueError("dominance compares partitions of equal size")
    total_mu = 0
    total_lam = 0
    for i in range(max(len(mu), len(lam))):
        total_mu += mu.parts[i] if i < len(mu) else 0
        total_lam += lam.parts[i] if i < len(lam) else 0
        if total_mu > total_lam:
            return False
    return True


def addable_rows(lam):
    """Rows (1-based) where a box can be added, with the content of the new box.

    Returned in ascending order of content; the new-row corner comes first.
    """
    vals, mults = lam.runs()
    out = [(len(lam) + 1, -len(lam))]
    prefix = sum(mults)
    for i in range(len(vals) - 1, -1, -1):
        prefix -= mults[i]
        out.append((prefix + 1, vals[i] + 1 - (prefix + 1)))
    return out


def removable_rows(lam):
    """Rows (1-based) whose last box can be removed, with that box's content.

    Ascending order of content.
    """
    vals, mults = lam.runs()
    out = []
    prefix = sum(mults)
    for i in range(len(vals) - 1, -1, -1):
        out.append((prefix, vals[i] - prefix))
        prefix -= mults[i]
    return out


def with_box_added(lam, row):
    """New partition with one box added in the given (1-based) row."""
    parts = list(lam.parts)
    if row == len(parts) + 1:
        parts.append(1)
    else:
        if row < 1 or row > len(parts):
            raise ValueError("cannot add in row %d of %s" % (row, lam))
        if row > 1 and parts[row - 2] == parts[row - 1]:
            raise ValueError("row %d of %s is not addable" % (row, lam))
        parts[row - 1] += 1
    return Partition(parts)


def with_box_removed(lam, row):
    """New partition with the last box of the given (1-based) row removed."""
    parts = list(lam.parts)
    if row < 1 or row > len(parts):
        raise ValueError("no row %d in %s" % (row, lam))
    if row < len(parts) and parts[row - 1] == parts[row]:
        raise ValueError("row %d of %s is not removable" % (row, lam))
    parts[row - 1] -= 1
    return Partition(parts)


def rational_str(x):
    """Short exact rendering of a Fraction or int."""
    if isinstance(x, Fraction) and x.denominator != 1:
        return "%d/%d" % (x.numerator, x.denominator)
    return str(int(x))
