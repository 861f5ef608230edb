"""Character polynomials in moments (L_mu) and free cumulants (K_mu).

Ch_mu is a polynomial in the M_k, and likewise in the R_k, with
coefficients that are polynomials in g = (1 - t^2)/t.  Both expansions
are found by evaluation and solving: unknown coefficients sit on the
monomials M_rho (parts >= 2, |rho| <= |mu| + l(mu), plus a constant),
one linear equation per partition lambda in the fitting set.  The
system is solved at enough rational values of t to interpolate the
coefficients as Laurent polynomials, and the interpolated solution is
then certified against the full symbolic system, so the result is exact
regardless of how it was obtained.  Degree bounds, parity, and the top
term are checked by separate verifiers that raise TheoremViolation.
"""

from __future__ import annotations

import threading
from fractions import Fraction

from .field import (FieldElement, GammaPolynomial, InconsistentError, Poly,
                    RankDeficientError, fe, solve_rows, to_gamma)
from .partitions import Partition, enumerate_partitions
from .cumulants import anisotropic_MR
from .jack import DegreeCapError, ch

__all__ = [
    "PolynomialityViolation",
    "TheoremViolation",
    "KerovPolynomial",
    "DegreeReport",
    "compute_L",
    "compute_K",
    "verify_degree_bounds",
    "top_term_check",
    "gradation_degree",
    "positivity_report",
    "gamma_str",
]

DEFAULT_CAP = 8

_LOCK = threading.Lock()
_CONTEXTS = {}
_POLYS = {}


class PolynomialityViolation(Exception):
    """A fitted coefficient failed to be a polynomial in g."""


class TheoremViolation(Exception):
    """A certified degree, parity or top-term statement failed."""


class KerovPolynomial:
    """Ch_mu expressed over monomials in the moments (M) or cumulants (R)."""

    __slots__ = ("basis", "mu", "terms")

    def __init__(self, basis, mu, terms):
        if basis not in ("M", "R"):
            raise ValueError("basis must be 'M' or 'R'")
        if not isinstance(mu, Partition):
            mu = Partition(mu)
        clean = {}
        for rho, gp in terms.items():
            if not isinstance(rho, Partition):
                rho = Partition(rho)
            if any(part < 2 for part in rho):
                raise ValueError("index partitions need parts >= 2")
            if gp:
                clean[rho] = gp
        self.basis = basis
        self.mu = mu
        self.terms = clean

    def term(self, rho):
        if not isinstance(rho, Partition):
            rho = Partition(rho)
        return self.terms.get(rho, GammaPolynomial())

    def evaluate(self, seq, gamma):
        """Plug a moment/cumulant sequence and a value of g into the polynomial."""
        total = 0
        for rho, gp in self.terms.items():
            term = gp.eval(gamma)
            for part in rho:
                term = term * seq[part]
            total = total + term
        return total

    def _ordered(self):
        return sorted(self.terms.items(),
                      key=lambda kv: (-kv[0].size, tuple(-p for p in kv[0].parts)))

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for rho, gp in self._ordered():
            mono = _monomial_str(self.basis, rho)
            cs = gamma_str(gp)
            if mono is None:
                body = cs if len(gp.nonzero_exponents()) <= 1 else "(%s)" % cs
            elif cs == "1":
                body = mono
            elif cs == "-1":
                body = "-" + mono
            elif len(gp.nonzero_exponents()) > 1:
                body = "(%s)*%s" % (cs, mono)
            else:
                body = "%s*%s" % (cs, mono)
            pieces.append(body)
        out = pieces[0]
        for body in pieces[1:]:
            if body.startswith("-"):
                out += " - " + body[1:]
            else:
                out += " + " + body
        return out

    def terms_json(self):
        return {str(rho): gamma_str(gp) for rho, gp in self._ordered()}

    def __eq__(self, other):
        if not isinstance(other, KerovPolynomial):
            return NotImplemented
        return (self.basis == other.basis and self.mu == other.mu
                and self.terms == other.terms)

    def __repr__(self):
        return "KerovPolynomial(%r, %r, %s)" % (self.basis, self.mu, self)


def _monomial_str(basis, rho):
    if not rho:
        return None
    pieces = []
    seen = {}
    for part in rho:
        seen[part] = seen.get(part, 0) + 1
    for part in sorted(seen, reverse=True):
        e = seen[part]
        pieces.append("%s%d" % (basis, part) + ("^%d" % e if e > 1 else ""))
    return "*".join(pieces)


def gamma_str(gp):
    """Compact rendering: '1', '2g', '-4', 'g^2', '5 + 11g^2'."""
    if not gp:
        return "0"
    pieces = []
    for e in gp.nonzero_exponents():
        c = gp.coeffs[e]
        if e == 0:
            body = str(c)
        else:
            mag = "" if abs(c) == 1 else str(abs(c))
            body = ("-" if c < 0 else "") + mag + ("g" if e == 1 else "g^%d" % e)
        pieces.append(body)
    out = pieces[0]
    for body in pieces[1:]:
        if body.startswith("-"):
            out += " - " + body[1:]
        else:
            out += " + " + body
    return out


class DegreeReport:
    """Per-term degree/parity audit of L_mu and K_mu."""

    __slots__ = ("mu", "records")

    def __init__(self, mu, records):
        self.mu = mu
        self.records = tuple(records)

    def __iter__(self):
        return iter(self.records)

    def __str__(self):
        lines = ["degree report for mu = %s" % (self.mu,)]
        for rec in self.records:
            lines.append("  %s rho=%-10s deg=%d bound=%d parity=%s" % (
                rec["basis"], str(rec["rho"]), rec["degree"], rec["bound"],
                "ok" if rec["parity_ok"] else "BAD"))
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# the fit

def _index_partitions(d):
    """All monomial indices: parts >= 2, size <= d, the empty one included."""
    out = [Partition()]
    for s in range(2, d + 1):
        out.extend(p for p in enumerate_partitions(s) if p[-1] >= 2)
    return out


def _nodes(count):
    """Distinct positive rationals t0 for specialized solves."""
    out = [Fraction(1)]
    k = 2
    while len(out) < count:
        out.append(Fraction(k))
        if len(out) < count:
            out.append(Fraction(1, k))
        k += 1
    return out[:count]


class _FitContext:
    """Shared data for every mu with the same gradation degree and basis."""

    __slots__ = ("d", "basis", "bound", "lams", "rhos", "values", "max_size")

    def __init__(self, d, basis, extra):
        self.d = d
        self.basis = basis
        self.bound = d + 2
        self.max_size = d + extra
        self.lams = []
        for s in range(self.max_size + 1):
            self.lams.extend(enumerate_partitions(s))
        self.rhos = _index_partitions(d)
        self.values = [self._monomial_row(lam) for lam in self.lams]

    def _monomial_row(self, lam):
        mseq, rseq = anisotropic_MR(lam, self.d)
        seq = mseq if self.basis == "M" else rseq
        row = []
        for rho in self.rhos:
            val = fe(1)
            for part in rho:
                val = val * seq[part]
            row.append(val)
        return row


def _context(d, basis, extra):
    key = (d, basis, extra)
    with _LOCK:
        ctx = _CONTEXTS.get(key)
        if ctx is None:
            ctx = _FitContext(d, basis, extra)
            _CONTEXTS[key] = ctx
        return ctx


def _interp(xs, ys):
    """Newton interpolation through arbitrary distinct rational nodes."""
    m = len(ys)
    coefs = list(ys)
    for j in range(1, m):
        for i in range(m - 1, j - 1, -1):
            coefs[i] = (coefs[i] - coefs[i - 1]) / (xs[i] - xs[i - j])
    poly = Poly.const(coefs[-1])
    for i in range(m - 2, -1, -1):
        poly = poly * Poly((-xs[i], 1)) + Poly.const(coefs[i])
    return poly


def _fit(mu, basis):
    d = mu.size + len(mu)
    for extra in range(4):
        ctx = _context(d, basis, extra)
        rhs = [ch(mu, lam, cap=ctx.max_size) for lam in ctx.lams]
        try:
            coeffs = _solve_context(ctx, rhs)
        except RankDeficientError:
            if extra == 3:
                raise
            continue
        except InconsistentError:
            raise PolynomialityViolation(
                "no exact expansion of Ch_%s over %s monomials" % (mu, basis))
        return _assemble(mu, basis, ctx, coeffs)
    raise AssertionError("unreachable")


def _solve_context(ctx, rhs):
    ncols = len(ctx.rhos)
    bound = ctx.bound
    for _ in range(3):
        nodes = _nodes(2 * bound + 1)
        per_node = []
        for t0 in nodes:
            rows = [
                [v.eval_at(t0) for v in row] + [r.eval_at(t0)]
                for row, r in zip(ctx.values, rhs)
            ]
            sols, _rank = solve_rows(rows, ncols, 1)
            per_node.append(sols[0])
        den = Poly.monomial(bound)
        coeffs = []
        for j in range(ncols):
            ys = [t0 ** bound * per_node[i][j] for i, t0 in enumerate(nodes)]
            coeffs.append(FieldElement(_interp(nodes, ys), den))
        if _residual_ok(ctx, coeffs, rhs):
            return coeffs
        bound += ctx.d + 2
    # interpolation never settled; solve the symbolic system outright
    rows = [list(row) + [r] for row, r in zip(ctx.values, rhs)]
    sols, _rank = solve_rows(rows, ncols, 1)
    return sols[0]


def _residual_ok(ctx, coeffs, rhs):
    for row, r in zip(ctx.values, rhs):
        acc = fe(0)
        for c, v in zip(coeffs, row):
            if c and v:
                acc = acc + c * v
        if acc != r:
            return False
    return True


def _assemble(mu, basis, ctx, coeffs):
    terms = {}
    for rho, c in zip(ctx.rhos, coeffs):
        if not c:
            continue
        gp = to_gamma(c)
        if gp is None:
            raise PolynomialityViolation(
                "coefficient of %s_%s in Ch_%s is %s, not a polynomial in g"
                % (basis, rho, mu, c))
        terms[rho] = gp
    if terms.get(Partition()):
        raise AssertionError("constant term of Ch_%s solved nonzero" % (mu,))
    terms.pop(Partition(), None)
    return KerovPolynomial(basis, mu, terms)


def _poly(mu, basis, cap):
    if not isinstance(mu, Partition):
        mu = Partition(mu)
    d = mu.size + len(mu)
    if d > cap:
        raise DegreeCapError(
            "gradation degree %d exceeds cap %d; pass a larger cap" % (d, cap))
    key = (mu, basis)
    with _LOCK:
        got = _POLYS.get(key)
    if got is not None:
        return got
    if not mu:
        out = KerovPolynomial(basis, mu, {Partition(): GammaPolynomial((1,))})
    else:
        out = _fit(mu, basis)
    with _LOCK:
        _POLYS[key] = out
    return out


def compute_L(mu, cap=DEFAULT_CAP):
    """Ch_mu as a polynomial in the moments M_2, M_3, ..."""
    return _poly(mu, "M", cap)


def compute_K(mu, cap=DEFAULT_CAP):
    """Ch_mu as a polynomial in the free cumulants R_2, R_3, ..."""
    return _poly(mu, "R", cap)


# ---------------------------------------------------------------------------
# theorem checks

def _degree_bound(mu, rho):
    return min(mu.size + len(mu) - rho.size,
               mu.size - len(mu) - (rho.size - 2 * len(rho)))


def verify_degree_bounds(mu, cap=DEFAULT_CAP):
    """Audit every L_mu and K_mu coefficient degree and parity in g."""
    if not isinstance(mu, Partition):
        mu = Partition(mu)
    records = []
    for kp in (compute_L(mu, cap), compute_K(mu, cap)):
        for rho, gp in kp._ordered():
            bound = _degree_bound(mu, rho)
            parity = (mu.size + len(mu) - rho.size) % 2
            parity_ok = all(e % 2 == parity for e in gp.nonzero_exponents())
            records.append({"basis": kp.basis, "rho": rho, "degree": gp.degree,
                            "bound": bound, "parity_ok": parity_ok})
            if gp.degree > bound or not parity_ok:
                raise TheoremViolation(
                    "degree/parity bound fails at mu=%s rho=%s (%s basis): "
                    "degree %d, bound %d, exponents %s"
                    % (mu, rho, kp.basis, gp.degree, bound,
                       gp.nonzero_exponents()))
    return DegreeReport(mu, records)


def top_term_check(mu, cap=DEFAULT_CAP):
    """The leading monomial is prod R_(mu_i + 1) with coefficient exactly 1."""
    if not isinstance(mu, Partition):
        mu = Partition(mu)
    kp = compute_K(mu, cap)
    d = mu.size + len(mu)
    top = Partition(tuple(part + 1 for part in mu.parts))
    if kp.term(top) != GammaPolynomial((1,)):
        raise TheoremViolation(
            "top coefficient of Ch_%s at R_%s is %s, expected 1"
            % (mu, top, gamma_str(kp.term(top))))
    for rho in kp.terms:
        if rho != top and rho.size > d - 1:
            raise TheoremViolation(
                "unexpected degree-%d term at R_%s in Ch_%s" % (rho.size, rho, mu))
    return True


def gradation_degree(expr):
    """deg M_rho = deg R_rho = |rho|; deg Ch_mu = |mu| + l(mu)."""
    if isinstance(expr, KerovPolynomial):
        if not expr.terms:
            return 0
        return max(rho.size for rho in expr.terms)
    best = 0
    for mu, c in expr.items():
        if not c:
            continue
        if not isinstance(mu, Partition):
            mu = Partition(mu)
        best = max(best, mu.size + len(mu))
    return best


def positivity_report(kp):
    """Coefficients that are not non-negative integers (observation only)."""
    bad = []
    for rho, gp in kp.terms.items():
        for e in gp.nonzero_exponents():
            c = gp.coeffs[e]
            if c < 0 or c.denominator != 1:
                bad.append((rho, e, c))
    return bad
