"""Jack symmetric functions, their power sum coefficients and characters.

The J-normalization is used throughout: the coefficient of m_{1..1} in
J_lam is n!.  A whole degree is built at once by Gram-Schmidt against
the deformed Hall pairing, run at integer sample values of alpha and
interpolated back to polynomial coefficients, which are then certified
symbolically: triangularity along dominance, the n! normalization and
orthogonality to all earlier monomials.  Those three facts pin J_lam
uniquely, so a certified table is exact no matter how it was produced.
The parameter alpha is carried as t^2.

Characters are the normalized coefficients
Ch_mu(lam) = t^(l(mu)-|mu|) binom(n-|mu|+m1, m1) z_mu theta_(mu,1,..,1)(lam)
for |lam| = n >= |mu|, and zero for smaller lam.
"""

from __future__ import annotations

import json
import math
import os
import tempfile
import threading
from fractions import Fraction

from .field import FieldElement, Poly, P_ONE, fe
from .partitions import Partition, dominance_leq, z_mu
from .symfunc import SymFun, degree_tables

__all__ = ["DegreeCapError", "JackExpansion", "jack", "theta", "ch", "jack_norm"]

DEFAULT_CAP = 10

_LOCK = threading.Lock()
_FAMILIES = {}

_CACHE_ENV = "JACKEROV_CACHE"
_CACHE_FORMAT = 1


class DegreeCapError(ValueError):
    """Raised when a degree beyond the requested cap would be computed."""


class JackExpansion:
    """One J_lam with exact coefficients over Q(t)."""

    __slots__ = ("lam", "_in_p")

    def __init__(self, lam, in_p):
        self.lam = lam
        self._in_p = in_p

    def in_p(self):
        return dict(self._in_p)

    def theta(self, rho):
        if not isinstance(rho, Partition):
            rho = Partition(rho)
        if rho.size != self.lam.size:
            raise ValueError("degree mismatch with the expansion")
        return self._in_p.get(rho, fe(0))

    def symfun(self, basis="p"):
        f = SymFun("p", self._in_p, degree=self.lam.size)
        return f.convert(basis)

    def in_m(self):
        return dict(self.symfun("m").coeffs)

    def __repr__(self):
        return "JackExpansion(%r)" % (self.lam,)


def jack(lam, cap=DEFAULT_CAP):
    if not isinstance(lam, Partition):
        lam = Partition(lam)
    fam = _family(lam.size, cap)
    return JackExpansion(lam, fam[lam])


def theta(rho, lam, cap=DEFAULT_CAP):
    """Coefficient of p_rho in J_lam; rho must have the same size as lam."""
    if not isinstance(rho, Partition):
        rho = Partition(rho)
    if not isinstance(lam, Partition):
        lam = Partition(lam)
    if rho.size != lam.size:
        raise ValueError("theta needs |rho| = |lam|")
    fam = _family(lam.size, cap)
    return fam[lam].get(rho, fe(0))


def ch(mu, lam, cap=DEFAULT_CAP):
    """The character Ch_mu evaluated on lam, an element of Q(t)."""
    if not isinstance(mu, Partition):
        mu = Partition(mu)
    if not isinstance(lam, Partition):
        lam = Partition(lam)
    n, k = lam.size, mu.size
    if k > n:
        return fe(0)
    ext = Partition(mu.parts + (1,) * (n - k))
    m1 = mu.mult(1)
    coeff = math.comb(n - k + m1, m1) * z_mu(mu)
    val = theta(ext, lam, cap)
    e = k - len(mu)
    if e:
        # t^(-e) prefactor, e = |mu| - l(mu) >= 0
        val = val * FieldElement(P_ONE, Poly.monomial(e), _reduced=True)
    return coeff * val


def jack_norm(lam):
    """<J_lam, J_lam> as a product of the two hook linear factors per box."""
    if not isinstance(lam, Partition):
        lam = Partition(lam)
    out = fe(1)
    conj = lam.conjugate()
    alpha = FieldElement(Poly.monomial(2), _reduced=True)
    for r, part in enumerate(lam.parts, start=1):
        for c in range(1, part + 1):
            a = part - c
            l = conj[c - 1] - r
            out = out * (alpha * a + l + 1) * (alpha * (a + 1) + l)
    return out


def _family(n, cap):
    if n > cap:
        raise DegreeCapError(
            "degree %d exceeds cap %d; pass a larger cap to allow it" % (n, cap))
    with _LOCK:
        fam = _FAMILIES.get(n)
        if fam is None:
            fam = _load_cached(n)
            if fam is None:
                fam = _compute_family(n)
                _store_cached(n, fam)
            _FAMILIES[n] = fam
        return fam


# ---------------------------------------------------------------------------
# construction

def _gram_schmidt(rows, weights):
    """Orthogonalize rows in order under sum(u_i v_i w_i); generic scalars."""
    basis = []
    wbasis = []
    norms = []
    for row in rows:
        v = list(row)
        for g, gw, nrm in zip(basis, wbasis, norms):
            c = 0
            for a, b in zip(v, gw):
                if a and b:
                    c = c + a * b
            if c:
                c = c / nrm
                for k, gk in enumerate(g):
                    if gk:
                        v[k] = v[k] - c * gk
        vw = [a * w if a else 0 for a, w in zip(v, weights)]
        nrm = 0
        for a, b in zip(v, vw):
            if a and b:
                nrm = nrm + a * b
        basis.append(v)
        wbasis.append(vw)
        norms.append(nrm)
    return basis


def _family_at_alpha(tb, order, aval):
    """All monic-to-J_lam vectors of one degree at a fixed rational alpha."""
    nfact = math.factorial(tb.n)
    weights = [tb.zvec[j] * aval ** len(tb.parts[j]) for j in range(len(tb.parts))]
    rows = []
    for i in order:
        dense = [Fraction(0)] * len(tb.parts)
        for j, c in tb.to_p["m"][i].items():
            dense[j] = c
        rows.append(dense)
    basis = _gram_schmidt(rows, weights)
    out = []
    for v in basis:
        lead = sum(a * b for a, b in zip(v, tb.m1n))
        s = Fraction(nfact) / lead
        out.append([a * s for a in v])
    return out


def _interpolate(ys):
    """Exact polynomial through (1, ys[0]), (2, ys[1]), ..."""
    m = len(ys)
    coefs = [Fraction(y) for y in ys]
    for j in range(1, m):
        for i in range(m - 1, j - 1, -1):
            coefs[i] = (coefs[i] - coefs[i - 1]) / j
    poly = Poly.const(coefs[-1])
    for i in range(m - 2, -1, -1):
        poly = poly * Poly((-(i + 1), 1)) + Poly.const(coefs[i])
    return poly


class _CertificationError(Exception):
    pass


def _certify(tb, order, theta_polys):
    """Prove the interpolated table is the Jack family of this degree."""
    size = len(tb.parts)
    nfact = Poly.const(math.factorial(tb.n))
    p2m = tb.from_p["m"]
    for pos, i in enumerate(order):
        mu = tb.parts[i]
        mexp = [Poly() for _ in range(size)]
        for rho_idx, poly in enumerate(theta_polys[pos]):
            if not poly:
                continue
            for nu_idx, c in p2m[rho_idx].items():
                mexp[nu_idx] = mexp[nu_idx] + poly.scale(c)
        if mexp[size - 1] != nfact:
            raise _CertificationError("normalization fails for %s" % (mu,))
        for nu_idx in range(size):
            if mexp[nu_idx] and not dominance_leq(tb.parts[nu_idx], mu):
                raise _CertificationError("triangularity fails for %s" % (mu,))
        weighted = [
            poly.scale(tb.zvec[j]).shift(len(tb.parts[j])) if poly else poly
            for j, poly in enumerate(theta_polys[pos])
        ]
        for prev in range(pos):
            row = tb.to_p["m"][order[prev]]
            acc = Poly()
            for j, c in row.items():
                if weighted[j]:
                    acc = acc + weighted[j].scale(c)
            if acc:
                raise _CertificationError("orthogonality fails for %s" % (mu,))


def _compute_family(n):
    tb = degree_tables(n)
    size = len(tb.parts)
    order = list(range(size - 1, -1, -1))  # 1^n first, refines dominance upward
    npts = n + 2
    last = None
    for _ in range(3):
        samples = [_family_at_alpha(tb, order, a) for a in range(1, npts + 1)]
        theta_polys = [
            [_interpolate([samples[s][pos][j] for s in range(npts)])
             for j in range(size)]
            for pos in range(size)
        ]
        try:
            _certify(tb, order, theta_polys)
        except _CertificationError as exc:
            last = exc
            npts += n + 2
            continue
        fam = {}
        for pos, i in enumerate(order):
            row = {}
            for j, poly in enumerate(theta_polys[pos]):
                if poly:
                    row[tb.parts[j]] = FieldElement(poly.stretch_exponents(2),
                                                    _reduced=True)
            fam[tb.parts[i]] = row
        return fam
    raise AssertionError("Jack certification kept failing: %s" % (last,))


def _symbolic_family(n):
    """Direct Gram-Schmidt over Q(t), for cross-checking small degrees."""
    tb = degree_tables(n)
    size = len(tb.parts)
    order = list(range(size - 1, -1, -1))
    weights = [
        FieldElement(Poly.monomial(2 * len(tb.parts[j]), tb.zvec[j]), _reduced=True)
        for j in range(size)
    ]
    rows = []
    for i in order:
        dense = [fe(0)] * size
        for j, c in tb.to_p["m"][i].items():
            dense[j] = fe(c)
        rows.append(dense)
    basis = _gram_schmidt(rows, weights)
    nfact = math.factorial(n)
    fam = {}
    for pos, i in enumerate(order):
        v = basis[pos]
        lead = fe(0)
        for a, b in zip(v, tb.m1n):
            if a and b:
                lead = lead + a * b
        s = nfact / lead
        fam[tb.parts[i]] = {
            tb.parts[j]: v[j] * s for j in range(size) if v[j]
        }
    return fam


# ---------------------------------------------------------------------------
# disk cache

def _cache_path(n):
    root = os.environ.get(_CACHE_ENV)
    if not root:
        return None
    return os.path.join(root, "jack_deg%d.json" % n)


def _load_cached(n):
    path = _cache_path(n)
    if not path or not os.path.exists(path):
        return None
    try:
        with open(path) as fh:
            data = json.load(fh)
        if data.get("format") != _CACHE_FORMAT or data.get("degree") != n:
            return None
        fam = {}
        for lam_s, row in data["theta"].items():
            out = {}
            for rho_s, coeffs in row.items():
                poly = Poly(tuple(Fraction(c) for c in coeffs))
                out[Partition.parse(rho_s)] = FieldElement(poly, _reduced=True)
            fam[Partition.parse(lam_s)] = out
        return fam
    except (OSError, ValueError, KeyError):
        return None


def _store_cached(n, fam):
    path = _cache_path(n)
    if not path:
        return
    data = {"format": _CACHE_FORMAT, "degree": n, "theta": {}}
    for lam, row in fam.items():
        data["theta"][str(lam)] = {
            str(rho): [str(c) for c in val.num.c] for rho, val in row.items()
        }
    try:
        os.makedirs(os.path.dirname(path), exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=os.path.dirname(path), suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            json.dump(data, fh)
        os.replace(tmp, path)
    except OSError:
        pass
