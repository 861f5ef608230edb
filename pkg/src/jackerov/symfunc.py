"""Symmetric functions in the m, p, h, e bases with the deformed Hall pairing.

All conversion data is rational and cached per homogeneous degree.  The
monomial expansions of power sums are computed by the augmented-monomial
merge rule; h and e reach the power sum basis through Newton's identities
and are inverted exactly.  Coefficients may be Fractions or FieldElements,
the conversion matrices themselves are always rational.
"""

from __future__ import annotations

import threading
from fractions import Fraction

from .field import FieldElement, Poly, fe
from .partitions import Partition, enumerate_partitions, z_mu

__all__ = ["SymFun", "hall_inner", "BASES", "degree_tables"]

BASES = ("m", "p", "h", "e")

_LOCK = threading.Lock()
_TABLES = {}


def _mul_p_into_m(state, r):
    """Multiply an m-basis expansion (dict Partition -> Fraction) by p_r."""
    out = {}
    for mu, c in state.items():
        values = set(mu.parts)
        values.add(0)
        for v in values:
            parts = list(mu.parts)
            if v:
                parts.remove(v)
            parts.append(v + r)
            nu = Partition(parts)
            coeff = c * nu.mult(v + r)
            out[nu] = out.get(nu, Fraction(0)) + coeff
    return {k: v for k, v in out.items() if v}


def _union(rho, r):
    return Partition(rho.parts + (r,))


def _newton_family(n, signed):
    """Power sum expansions of h_1..h_n (signed=False) or e_1..e_n (True)."""
    fam = [{Partition(): Fraction(1)}]
    for r in range(1, n + 1):
        acc = {}
        for i in range(1, r + 1):
            sign = (-1) ** (i - 1) if signed else 1
            for rho, c in fam[r - i].items():
                key = _union(rho, i)
                acc[key] = acc.get(key, Fraction(0)) + Fraction(sign, r) * c
        fam.append(acc)
    return fam


def _product_in_p(fam, mu):
    out = {Partition(): Fraction(1)}
    for part in mu:
        nxt = {}
        for rho, c in out.items():
            for sig, d in fam[part].items():
                key = Partition(rho.parts + sig.parts)
                nxt[key] = nxt.get(key, Fraction(0)) + c * d
        out = nxt
    return out


def _invert_rows(rows):
    """Invert a list of sparse rows (dicts) describing a square rational matrix."""
    size = len(rows)
    work = []
    for i, row in enumerate(rows):
        dense = [Fraction(0)] * size
        for j, v in row.items():
            dense[j] = Fraction(v)
        rhs = [Fraction(0)] * size
        rhs[i] = Fraction(1)
        work.append(dense + rhs)
    for col in range(size):
        piv = next(i for i in range(col, size) if work[i][col])
        work[col], work[piv] = work[piv], work[col]
        inv = 1 / work[col][col]
        work[col] = [x * inv for x in work[col]]
        for i in range(size):
            if i != col and work[i][col]:
                c = work[i][col]
                work[i] = [x - c * y for x, y in zip(work[i], work[col])]
    out = []
    for i in range(size):
        row = {j: work[i][size + j] for j in range(size) if work[i][size + j]}
        out.append(row)
    return out


class _DegreeTables:
    __slots__ = ("n", "parts", "idx", "to_p", "from_p", "zvec", "m1n")

    def __init__(self, n):
        self.n = n
        self.parts = tuple(enumerate_partitions(n))
        self.idx = {lam: i for i, lam in enumerate(self.parts)}
        size = len(self.parts)

        p2m = []
        for rho in self.parts:
            state = {Partition(): Fraction(1)}
            for r in rho:
                state = _mul_p_into_m(state, r)
            p2m.append({self.idx[mu]: c for mu, c in state.items()})
        m2p = _invert_rows(p2m)

        hfam = _newton_family(n, signed=False)
        efam = _newton_family(n, signed=True)
        h2p = []
        e2p = []
        for mu in self.parts:
            hrow = _product_in_p(hfam, mu)
            erow = _product_in_p(efam, mu)
            h2p.append({self.idx[r]: c for r, c in hrow.items()})
            e2p.append({self.idx[r]: c for r, c in erow.items()})
        self.to_p = {"m": m2p, "h": h2p, "e": e2p}
        self.from_p = {"m": p2m, "h": _invert_rows(h2p), "e": _invert_rows(e2p)}
        self.zvec = tuple(z_mu(rho) for rho in self.parts)
        self.m1n = tuple(row.get(size - 1, Fraction(0)) for row in p2m)


def degree_tables(n):
    with _LOCK:
        tb = _TABLES.get(n)
        if tb is None:
            tb = _DegreeTables(n)
            _TABLES[n] = tb
        return tb


class SymFun:
    """Homogeneous symmetric function tagged with its expansion basis."""

    __slots__ = ("basis", "degree", "coeffs")

    def __init__(self, basis, coeffs, degree=None):
        if basis not in BASES:
            raise ValueError("unknown basis %r" % (basis,))
        clean = {}
        for lam, c in coeffs.items():
            if not isinstance(lam, Partition):
                lam = Partition(lam)
            if c:
                clean[lam] = c
        degs = {lam.size for lam in clean}
        if len(degs) > 1:
            raise ValueError("inhomogeneous coefficient data")
        if degs:
            degree = degs.pop()
        elif degree is None:
            degree = 0
        self.basis = basis
        self.degree = degree
        self.coeffs = clean

    @classmethod
    def basis_element(cls, basis, lam):
        if not isinstance(lam, Partition):
            lam = Partition(lam)
        return cls(basis, {lam: Fraction(1)})

    def convert(self, target):
        if target not in BASES:
            raise ValueError("unknown basis %r" % (target,))
        if target == self.basis:
            return self
        tb = degree_tables(self.degree)
        if self.basis == "p":
            inp = {tb.idx[lam]: c for lam, c in self.coeffs.items()}
        else:
            rows = tb.to_p[self.basis]
            inp = {}
            for lam, c in self.coeffs.items():
                for j, w in rows[tb.idx[lam]].items():
                    prev = inp.get(j)
                    inp[j] = c * w if prev is None else prev + c * w
        if target == "p":
            out = inp
        else:
            rows = tb.from_p[target]
            out = {}
            for j, c in inp.items():
                if not c:
                    continue
                for k, w in rows[j].items():
                    prev = out.get(k)
                    out[k] = c * w if prev is None else prev + c * w
        return SymFun(target, {tb.parts[j]: c for j, c in out.items() if c},
                      degree=self.degree)

    def coefficient(self, lam):
        if not isinstance(lam, Partition):
            lam = Partition(lam)
        return self.coeffs.get(lam, Fraction(0))

    def scale(self, s):
        return SymFun(self.basis, {lam: c * s for lam, c in self.coeffs.items()},
                      degree=self.degree)

    def __add__(self, other):
        if self.basis != other.basis or self.degree != other.degree:
            raise ValueError("mixed bases or degrees in addition")
        out = dict(self.coeffs)
        for lam, c in other.coeffs.items():
            prev = out.get(lam)
            out[lam] = c if prev is None else prev + c
        return SymFun(self.basis, out, degree=self.degree)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, SymFun):
            return NotImplemented
        if self.basis != other.basis:
            other = other.convert(self.basis)
        if set(self.coeffs) != set(other.coeffs):
            return False
        return all(_eq_scalar(self.coeffs[k], other.coeffs[k]) for k in self.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        items = sorted(self.coeffs.items(), key=lambda kv: kv[0].parts)
        pieces = []
        for lam, c in items:
            name = "%s[%s]" % (self.basis, lam)
            cs = str(c)
            if cs == "1":
                pieces.append(name)
            elif cs == "-1":
                pieces.append("-" + name)
            else:
                if " " in cs:
                    cs = "(%s)" % cs
                pieces.append("%s*%s" % (cs, name))
        out = pieces[0]
        for body in pieces[1:]:
            if body.startswith("-"):
                out += " - " + body[1:]
            else:
                out += " + " + body
        return out

    def __repr__(self):
        return "SymFun(%r, %s)" % (self.basis, self)


def _eq_scalar(a, b):
    if isinstance(a, FieldElement) or isinstance(b, FieldElement):
        return fe(a) == fe(b)
    return a == b


def hall_inner(f, g):
    """Deformed Hall product <p_rho, p_rho> = z_rho * alpha**len(rho), alpha = t^2.

    Returns a FieldElement even for rational inputs.
    """
    if f.degree != g.degree:
        raise ValueError("pairing needs equal degrees")
    fp = f.convert("p")
    gp = g.convert("p")
    tb = degree_tables(f.degree)
    total = fe(0)
    for lam, a in fp.coeffs.items():
        b = gp.coeffs.get(lam)
        if b is None:
            continue
        weight = FieldElement(Poly.monomial(2 * len(lam), tb.zvec[tb.idx[lam]]),
                              _reduced=True)
        total = total + fe(a) * fe(b) * weight
    return total
