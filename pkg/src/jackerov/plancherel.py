"""The alpha-deformed Plancherel measure on partitions of n.

P_n(lambda) = alpha^n n! / j_lambda, where j_lambda is the deformed
squared hook product Prod (alpha a + l + 1)(alpha a + l + alpha) over the
boxes.  Exact modes keep alpha rational or symbolic (alpha = t^2) and
assert the total mass identity in Z[alpha] through the factored hook
lcm, so no rational-function arithmetic is needed for the sum.  The
growth sampler adds one box at a time, choosing an addable corner with
the transition-measure mass of the anisotropic diagram at that corner;
this kernel is validated exactly against the measure itself at small n.
"""

from __future__ import annotations

import math
import threading
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import numpy as np

from .field import FieldElement, Poly, fe, T
from .partitions import (Partition, addable_rows, enumerate_partitions,
                         with_box_added)
from .diagrams import (GeneralizedDiagram, OMEGA, anisotropic, corners, profile,
                       sup_distance)
from .cumulants import free_cumulants, moments, transition_measure
from .jack import DegreeCapError
from .kerov import TheoremViolation

__all__ = [
    "JackHook",
    "PlancherelDist",
    "GrowthSample",
    "jack_hook",
    "plancherel_dist",
    "exact_expectation",
    "expectation_degree_check",
    "growth_step_masses",
    "growth_consistency_check",
    "grow_sample",
    "sample_diagrams",
    "limit_shape_report",
]

EXACT_CAP = 30
FLOAT_CAP = 60

_ALPHA_SYM = T * T

_LOCK = threading.RLock()
_HOOKS = {}
_WEIGHTS = {}


class JackHook:
    """j_lambda as both linear factors (a*alpha + b) and the expanded polynomial."""

    __slots__ = ("lam", "factors", "value")

    def __init__(self, lam, factors):
        self.lam = lam
        self.factors = tuple(sorted(factors))
        value = Poly((1,))
        for a, b in self.factors:
            value = value * Poly((b, a))
        self.value = value

    def eval(self, aval):
        if isinstance(aval, float):
            out = 0.0
            for a, b in self.factors:
                out += math.log(a * aval + b)
            return out  # log scale in floating mode
        out = Fraction(1)
        for a, b in self.factors:
            out = out * (a * aval + b)
        return out

    def __repr__(self):
        return "JackHook(%r, %s)" % (self.lam, self.value)


def jack_hook(lam):
    if not isinstance(lam, Partition):
        lam = Partition(lam)
    with _LOCK:
        got = _HOOKS.get(lam)
        if got is None:
            factors = []
            conj = lam.conjugate()
            for r, part in enumerate(lam.parts, start=1):
                for c in range(1, part + 1):
                    a = part - c
                    l = conj[c - 1] - r
                    factors.append((a, l + 1))
                    factors.append((a + 1, l))
            got = JackHook(lam, factors)
            _HOOKS[lam] = got
        return got


class PlancherelDist:
    __slots__ = ("n", "alpha", "probs")

    def __init__(self, n, alpha, probs):
        self.n = n
        self.alpha = alpha
        self.probs = probs

    def __getitem__(self, lam):
        if not isinstance(lam, Partition):
            lam = Partition(lam)
        return self.probs[lam]

    def __iter__(self):
        return iter(self.probs.items())

    def __repr__(self):
        return "PlancherelDist(n=%d, alpha=%r, %d partitions)" % (
            self.n, self.alpha, len(self.probs))


def _mode(alpha):
    if isinstance(alpha, float):
        return "float"
    if isinstance(alpha, (int, Fraction)):
        return "rational"
    if alpha == "t" or (isinstance(alpha, FieldElement) and alpha == _ALPHA_SYM):
        return "symbolic"
    raise ValueError("alpha must be rational, floating, or the symbol t")


def plancherel_dist(n, alpha, cap=None):
    mode = _mode(alpha)
    if cap is None:
        cap = FLOAT_CAP if mode == "float" else EXACT_CAP
    if n > cap:
        raise DegreeCapError(
            "size %d exceeds enumeration cap %d; pass a larger cap" % (n, cap))
    lams = enumerate_partitions(n)
    nfact = math.factorial(n)
    probs = {}
    if mode == "float":
        if not alpha > 0:
            raise ValueError("alpha must be positive")
        logs = [n * math.log(alpha) + math.lgamma(n + 1) - jack_hook(lam).eval(alpha)
                for lam in lams]
        top = max(logs)
        vals = [math.exp(v - top) for v in logs]
        total = sum(vals)
        if not abs(math.exp(top) * total - 1.0) < 1e-8:
            raise AssertionError("floating Plancherel mass drifted from 1")
        for lam, v in zip(lams, vals):
            probs[lam] = v / total
    elif mode == "rational":
        aval = Fraction(alpha)
        if not aval > 0:
            raise ValueError("alpha must be positive")
        total = Fraction(0)
        for lam in lams:
            p = nfact * aval ** n / jack_hook(lam).eval(aval)
            if not p > 0:
                raise AssertionError("nonpositive Plancherel probability")
            probs[lam] = p
            total += p
        if total != 1:
            raise AssertionError("exact Plancherel mass is %s, not 1" % (total,))
    else:
        _assert_unit_mass(n, lams)
        num = Poly.monomial(2 * n, nfact)
        for lam in lams:
            den = jack_hook(lam).value.stretch_exponents(2)
            probs[lam] = FieldElement(num, den)
    return PlancherelDist(n, alpha, probs)


def _hook_lcm(lams):
    lcm = {}
    for lam in lams:
        seen = {}
        for f in jack_hook(lam).factors:
            seen[f] = seen.get(f, 0) + 1
        for f, m in seen.items():
            if m > lcm.get(f, 0):
                lcm[f] = m
    return lcm


def _cofactor(lam, lcm):
    """Prod of the factors of lcm missing from j_lambda, as a polynomial."""
    seen = {}
    for f in jack_hook(lam).factors:
        seen[f] = seen.get(f, 0) + 1
    out = Poly((1,))
    for (a, b), m in lcm.items():
        for _ in range(m - seen.get((a, b), 0)):
            out = out * Poly((b, a))
    return out


def _assert_unit_mass(n, lams):
    """Sum alpha^n n!/j_lambda = 1, checked as an identity in Z[alpha]."""
    lcm = _hook_lcm(lams)
    dpoly = Poly((1,))
    for (a, b), m in lcm.items():
        for _ in range(m):
            dpoly = dpoly * Poly((b, a))
    nfact = math.factorial(n)
    acc = Poly()
    for lam in lams:
        acc = acc + _cofactor(lam, lcm).shift(n).scale(nfact)
    if acc != dpoly:
        raise AssertionError("symbolic Plancherel mass is not 1 at n=%d" % n)


# ---------------------------------------------------------------------------
# exact expectations

def _expectation_weights(n):
    with _LOCK:
        got = _WEIGHTS.get(n)
        if got is None:
            lams = enumerate_partitions(n)
            lcm = _hook_lcm(lams)
            dpoly = Poly((1,))
            for (a, b), m in lcm.items():
                for _ in range(m):
                    dpoly = dpoly * Poly((b, a))
            nfact = math.factorial(n)
            weights = [
                _cofactor(lam, lcm).shift(n).scale(nfact).stretch_exponents(2)
                for lam in lams
            ]
            got = (lams, weights, dpoly.stretch_exponents(2))
            _WEIGHTS[n] = got
        return got


def exact_expectation(F, n):
    """E[F] under P_n with symbolic t; F maps a partition to Q(t)."""
    lams, weights, den = _expectation_weights(n)
    terms = []
    emax = 0
    for lam, w in zip(lams, weights):
        val = F(lam)
        if isinstance(val, (int, Fraction)):
            val = fe(val)
        if not val:
            continue
        if not (val.den.is_monomial() and val.den.leading() == 1):
            return _expectation_generic(F, n)
        e = val.den.degree
        emax = max(emax, e)
        terms.append((w * val.num, e))
    if not terms:
        return fe(0)
    acc = Poly()
    for num, e in terms:
        acc = acc + num.shift(emax - e)
    full_den = den.shift(emax)
    try:
        return FieldElement(acc.div_exact(full_den), _reduced=True)
    except ValueError:
        return FieldElement(acc, full_den)


def _expectation_generic(F, n):
    dist = plancherel_dist(n, "t")
    total = fe(0)
    for lam, p in dist:
        total = total + p * fe(F(lam))
    return total


def _moment_monomial(rho):
    kmax = max(rho) if rho else 0

    def F(lam):
        mseq = moments(anisotropic(lam, T), kmax)
        out = fe(1)
        for part in rho:
            out = out * mseq[part]
        return out

    return F


def expectation_degree_check(rho, n_range):
    """E[Prod M_rho_i] is a polynomial in n of degree <= |rho|/2.

    Interpolates through the first floor(|rho|/2)+1 points of the range
    and requires every remaining point to sit on that polynomial.
    """
    if not isinstance(rho, Partition):
        rho = Partition(rho)
    if any(part < 2 for part in rho):
        raise ValueError("index partition needs parts >= 2")
    ns = list(n_range)
    F = _moment_monomial(rho)
    values = [exact_expectation(F, n) for n in ns]
    npts = rho.size // 2 + 1
    checked = 0
    if len(ns) > npts:
        coefs = list(values[:npts])
        for j in range(1, npts):
            for i in range(npts - 1, j - 1, -1):
                coefs[i] = (coefs[i] - coefs[i - 1]) / (ns[i] - ns[i - j])
        for pos in range(npts, len(ns)):
            pred = coefs[npts - 1]
            for i in range(npts - 2, -1, -1):
                pred = pred * (ns[pos] - ns[i]) + coefs[i]
            if pred != values[pos]:
                raise TheoremViolation(
                    "E[M_%s] leaves the degree-%d polynomial at n=%d: %s vs %s"
                    % (rho, npts - 1, ns[pos], values[pos], pred))
            checked += 1
    return {"rho": rho, "ns": ns, "degree_bound": rho.size // 2,
            "values": values, "checked": checked, "ok": True}


# ---------------------------------------------------------------------------
# growth

class GrowthSample:
    """A chain of partitions, each adding exactly one box."""

    __slots__ = ("trajectory",)

    def __init__(self, trajectory):
        traj = tuple(trajectory)
        for a, b in zip(traj, traj[1:]):
            if b.size != a.size + 1:
                raise ValueError("growth chain must add one box per step")
        self.trajectory = traj

    @property
    def final(self):
        return self.trajectory[-1]

    def __len__(self):
        return len(self.trajectory)

    def __repr__(self):
        return "GrowthSample(%d steps, final=%r)" % (
            len(self.trajectory) - 1, self.trajectory[-1])


def growth_step_masses(lam, tscalar=T):
    """Transition-measure mass at each addable corner, ascending content.

    Aligned index-by-index with addable_rows(lam).
    """
    if not isinstance(lam, Partition):
        lam = Partition(lam)
    tm = transition_measure(anisotropic(lam, tscalar))
    rows = addable_rows(lam)
    if len(rows) != len(tm.atoms):
        raise AssertionError("corner bookkeeping out of step")
    return list(zip((r for r, _ in rows), tm.masses))


def growth_consistency_check(m):
    """P_m pushed through one growth step equals P_(m+1), in Q(t)."""
    before = plancherel_dist(m, "t")
    after = plancherel_dist(m + 1, "t")
    acc = {}
    for lam, p in before:
        for row, mass in growth_step_masses(lam):
            nxt = with_box_added(lam, row)
            cur = acc.get(nxt)
            add = p * mass
            acc[nxt] = add if cur is None else cur + add
    for lam, p in after:
        if acc.get(lam) != p:
            raise AssertionError(
                "growth kernel disagrees with the measure at %s" % (lam,))
    return True


def _corner_arrays(vals, mults):
    """Corner (x, y) arrays from the run-length state, contents ascending."""
    va = np.array(vals, dtype=float)[::-1]
    ma = np.array(mults, dtype=float)[::-1]
    below = np.cumsum(ma)          # rows at or below each run (ascending order)
    ell = below[-1]
    xo = np.concatenate(([0.0], va))
    yo = np.concatenate(([ell], ell - below))
    xi = va
    yi = ell - below + ma
    return xo, yo, xi, yi


def _corner_masses(vals, mults, t, tinv):
    xo, yo, xi, yi = _corner_arrays(vals, mults)
    zo = t * xo - tinv * yo
    zi = t * xi - tinv * yi
    logm = np.log(np.abs(zo[:, None] - zi[None, :])).sum(axis=1)
    diff = zo[:, None] - zo[None, :]
    np.fill_diagonal(diff, 1.0)
    logm -= np.log(np.abs(diff)).sum(axis=1)
    w = np.exp(logm - logm.max())
    return w / w.sum()


def _advance(vals, mults, pos):
    """Add a box at the addable corner with ascending-content index pos."""
    if pos == 0:
        if vals and vals[-1] == 1:
            mults[-1] += 1
        else:
            vals.append(1)
            mults.append(1)
        return
    k = len(vals) - pos
    v = vals[k]
    if k > 0 and vals[k - 1] == v + 1:
        mults[k - 1] += 1
        j = k
    else:
        vals.insert(k, v + 1)
        mults.insert(k, 1)
        j = k + 1
    if mults[j] == 1:
        del vals[j]
        del mults[j]
    else:
        mults[j] -= 1


def _sample_runs(n, alpha, rng):
    t = math.sqrt(alpha)
    tinv = 1.0 / t
    us = rng.random(n)
    vals = []
    mults = []
    for step in range(n):
        if not vals:
            _advance(vals, mults, 0)
            continue
        w = _corner_masses(vals, mults, t, tinv)
        pos = int(np.searchsorted(np.cumsum(w), us[step] * w.sum()))
        pos = min(pos, len(w) - 1)
        _advance(vals, mults, pos)
    return vals, mults


def _runs_partition(vals, mults):
    parts = []
    for v, m in zip(vals, mults):
        parts.extend([v] * m)
    return Partition(parts)


def grow_sample(n, alpha, seed):
    """One growth trajectory of length n; deterministic under the seed."""
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    t = math.sqrt(alpha)
    tinv = 1.0 / t
    rng = np.random.default_rng([seed, 0])
    us = rng.random(max(n, 1))
    vals = []
    mults = []
    traj = [Partition()]
    for step in range(n):
        if not vals:
            _advance(vals, mults, 0)
        else:
            w = _corner_masses(vals, mults, t, tinv)
            pos = int(np.searchsorted(np.cumsum(w), us[step] * w.sum()))
            _advance(vals, mults, min(pos, len(w) - 1))
        traj.append(_runs_partition(vals, mults))
    return GrowthSample(traj)


def sample_diagrams(n, alpha, samples, seed, threads=1):
    """Final partitions of independent growth runs, as run-length pairs."""
    if not alpha > 0:
        raise ValueError("alpha must be positive")

    def one(idx):
        rng = np.random.default_rng([seed, idx])
        return _sample_runs(n, alpha, rng)

    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(one, range(samples)))
    return [one(idx) for idx in range(samples)]


# ---------------------------------------------------------------------------
# limit shape

def _scaled_diagram(vals, mults, s, u):
    xo, yo, xi, yi = _corner_arrays(vals, mults)
    outer = s * xo - u * yo
    inner = s * xi - u * yi
    return GeneralizedDiagram(tuple(outer.tolist()), tuple(inner.tolist()))


def limit_shape_report(n, alpha, samples, seed, threads=1, kmax=6,
                       grid_step=1e-3, keep_profiles=3):
    """Sup-distance to the limit curve and free cumulants across samples."""
    runs = sample_diagrams(n, alpha, samples, seed, threads)
    s = math.sqrt(alpha / n)
    u = 1.0 / math.sqrt(n * alpha)
    records = []
    profiles = []
    for idx, (vals, mults) in enumerate(runs):
        diag = _scaled_diagram(vals, mults, s, u)
        prof = profile(diag)
        rec = {
            "index": idx,
            "sup_distance": sup_distance(prof, OMEGA, grid_step),
            "rows_scaled": sum(mults) / math.sqrt(n),
            "cols_scaled": max(vals) / math.sqrt(n),
        }
        cums = free_cumulants(moments(diag, kmax))
        for k in range(2, kmax + 1):
            rec["R%d" % k] = cums[k]
        records.append(rec)
        if idx < keep_profiles:
            profiles.append(prof)
    dists = sorted(rec["sup_distance"] for rec in records)
    summary = {
        "sup_distance": {
            "mean": float(np.mean(dists)),
            "median": float(np.median(dists)),
            "q90": float(np.quantile(dists, 0.9)),
            "max": dists[-1],
        },
        "rows_scaled_max": max(rec["rows_scaled"] for rec in records),
        "cols_scaled_max": max(rec["cols_scaled"] for rec in records),
    }
    for k in range(2, kmax + 1):
        summary["R%d_mean" % k] = float(np.mean([rec["R%d" % k] for rec in records]))
    grid = np.arange(-2.5, 2.5 + grid_step, 10 * grid_step)
    curves = {"x": grid.tolist(), "omega": OMEGA.eval_array(grid).tolist(),
              "profiles": [p.eval_array(grid).tolist() for p in profiles]}
    return {"n": n, "alpha": alpha, "samples": samples, "seed": seed,
            "records": records, "summary": summary, "curves": curves}
