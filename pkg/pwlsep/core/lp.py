# -*- coding: utf-8 -*-
# pwlsep is distributed under the terms of the (new) BSD License.

"""
The linear programming kernel. Two engines share one contract:

  * solve_exact() - a dense rational simplex with Bland's rule. Infeasible
    programs come with a Farkas certificate read off the final phase-1
    basis, which verify_certificate() re-checks by plain arithmetic.
  * solve_float() - scipy's HiGHS through ``scipy.optimize.linprog``, used
    for relaxations in the branch-and-cut loop only. Stalls raise
    NumericFailure so callers can fall back to the exact engine.

Strict inequalities never appear; strictness is modelled with unit margins
by the callers.
"""

import logging
from enum import Enum
from fractions import Fraction

import numpy as np

from .util import as_rational

logger = logging.getLogger(__name__)

SENSES = {"<=": "<=", "≤": "<=", "=": "=", "==": "=", ">=": ">=", "≥": ">="}


class NumericFailure(RuntimeError):
    """ Raised by solve_float when the floating point engine stalls or
    returns a solution that does not check out within tolerance.
    """


class LpStatus(Enum):
    OPTIMAL = "Optimal"
    INFEASIBLE = "Infeasible"
    UNBOUNDED = "Unbounded"


class LinearProgram(object):
    """ LinearProgram(A, senses, rhs, objective=None, lower=None, upper=None,
    maximize=False, names=None)

    A linear program over rational data: optimize objective·x subject to
    A x (senses) rhs and lower ≤ x ≤ upper. Missing bounds are None
    (free). A zero objective turns the program into a feasibility check.

    Parameters
    ----------
    A : list of rows
        Constraint coefficients; every row must have the same length.
    senses : list of str
        One of "<=", "=", ">=" per row.
    rhs : list
        Right-hand side per row.
    objective : list | None
        Cost per column, all zero when omitted.
    lower, upper : list | None
        Per-column bounds; entries may be None.
    maximize : bool
        Maximize instead of minimize.
    names : list of str | None
        Column names, used in messages only.
    """

    def __init__(
        self,
        A,
        senses,
        rhs,
        objective=None,
        lower=None,
        upper=None,
        maximize=False,
        names=None,
    ):
        A = [tuple(as_rational(v) for v in row) for row in A]
        if len(A) != len(senses) or len(A) != len(rhs):
            raise ValueError(
                "Malformed LP: %i rows, %i senses, %i right-hand sides."
                % (len(A), len(senses), len(rhs))
            )
        if objective is not None:
            ncols = len(objective)
        elif A:
            ncols = len(A[0])
        elif lower is not None:
            ncols = len(lower)
        else:
            ncols = 0
        for i, row in enumerate(A):
            if len(row) != ncols:
                raise ValueError(
                    "Malformed LP: row %i has %i columns, expected %i."
                    % (i, len(row), ncols)
                )
        try:
            self._senses = tuple(SENSES[s] for s in senses)
        except KeyError as err:
            raise ValueError("Malformed LP: unknown row sense %s." % err)
        self._A = tuple(A)
        self._rhs = tuple(as_rational(b) for b in rhs)
        if objective is None:
            objective = [0] * ncols
        self._objective = tuple(as_rational(c) for c in objective)
        self._lower = self._bounds(lower, ncols, "lower")
        self._upper = self._bounds(upper, ncols, "upper")
        for j, (lo, up) in enumerate(zip(self._lower, self._upper)):
            if lo is not None and up is not None and lo > up:
                raise ValueError(
                    "Malformed LP: column %i has lower bound %s > upper bound %s."
                    % (j, lo, up)
                )
        self._maximize = bool(maximize)
        self._names = tuple(names) if names else tuple("x%i" % j for j in range(ncols))

    def _bounds(self, values, ncols, what):
        if values is None:
            return (None,) * ncols
        if len(values) != ncols:
            raise ValueError(
                "Malformed LP: %i %s bounds for %i columns." % (len(values), what, ncols)
            )
        return tuple(None if v is None else as_rational(v) for v in values)

    def __repr__(self):
        return "<LinearProgram with %i rows and %i columns>" % (
            self.n_rows,
            self.n_cols,
        )

    @property
    def A(self):
        """ The constraint rows, as tuples of Fractions.
        """
        return self._A

    @property
    def senses(self):
        return self._senses

    @property
    def rhs(self):
        return self._rhs

    @property
    def objective(self):
        return self._objective

    @property
    def lower(self):
        return self._lower

    @property
    def upper(self):
        return self._upper

    @property
    def maximize(self):
        return self._maximize

    @property
    def names(self):
        return self._names

    @property
    def n_rows(self):
        return len(self._A)

    @property
    def n_cols(self):
        return len(self._objective)

    def objective_value(self, x):
        """ The objective value at point x.
        """
        return sum(c * v for c, v in zip(self._objective, x))

    def violation(self, x):
        """ violation(x)

        The largest amount by which x violates a row or bound (0 if x is
        feasible). Works with rationals and floats alike.
        """
        worst = 0
        for row, sense, b in zip(self._A, self._senses, self._rhs):
            lhs = sum(a * v for a, v in zip(row, x) if a)
            if sense == "<=":
                worst = max(worst, lhs - b)
            elif sense == ">=":
                worst = max(worst, b - lhs)
            else:
                worst = max(worst, abs(lhs - b))
        for v, lo, up in zip(x, self._lower, self._upper):
            if lo is not None:
                worst = max(worst, lo - v)
            if up is not None:
                worst = max(worst, v - up)
        return worst

    def normalized_rows(self):
        """ Yield (coefficients, rhs, is_equality) with every ">=" row negated
        into "<=" form. This is the orientation of Farkas certificates.
        """
        for row, sense, b in zip(self._A, self._senses, self._rhs):
            if sense == ">=":
                yield tuple(-a for a in row), -b, False
            else:
                yield row, b, sense == "="


class LpOutcome(object):
    """ LpOutcome(status, primal=None, dual_certificate=None, objective=None,
    ray=None)

    Result of an LP solve. ``primal`` is set for Optimal and Unbounded
    outcomes (for the latter together with an improving ``ray``);
    ``dual_certificate`` is set for Infeasible outcomes and holds one
    multiplier per row in the orientation of LinearProgram.normalized_rows().
    """

    def __init__(self, status, primal=None, dual_certificate=None, objective=None, ray=None):
        self.status = LpStatus(status)
        self.primal = primal
        self.dual_certificate = dual_certificate
        self.objective = objective
        self.ray = ray

    def __repr__(self):
        return "<LpOutcome %s objective=%s>" % (self.status.value, self.objective)

    @property
    def optimal(self):
        return self.status is LpStatus.OPTIMAL

    @property
    def infeasible(self):
        return self.status is LpStatus.INFEASIBLE


def verify_certificate(lp, y, tol=0):
    """ verify_certificate(lp, y, tol=0)

    Check a Farkas certificate by direct arithmetic. The multipliers must
    be nonnegative on inequality rows; the combined row g·x ≤ r (with
    g = Σ y_i a_i and r = Σ y_i b_i over normalized rows) must have no
    solution inside the variable bounds, i.e. min g·x over the box must
    exceed r. With tol=0 (rational input) the check is exact.
    """
    if y is None or len(y) != lp.n_rows:
        return False
    g = [0] * lp.n_cols
    r = 0
    for yi, (row, b, is_eq) in zip(y, lp.normalized_rows()):
        if not is_eq and yi < -tol:
            return False
        if yi == 0:
            continue
        for j, a in enumerate(row):
            if a:
                g[j] += yi * a
        r += yi * b
    lowest = 0
    for gj, lo, up in zip(g, lp.lower, lp.upper):
        if abs(gj) <= tol:
            continue
        bound = lo if gj > 0 else up
        if bound is None:
            return False
        lowest += gj * bound
    return lowest > r + tol


## Exact engine


class _StandardForm(object):
    """ Translation of a LinearProgram into A' x' = b', x' ≥ 0, b' ≥ 0.

    Every original column becomes one shifted column (finite lower bound),
    one mirrored column (only an upper bound) or a pair (free). Finite
    ranges add a bound row. Inequality rows get a slack; rows with a
    negative right-hand side are flipped.
    """

    def __init__(self, lp):
        self.lp = lp
        self.columns = []  # per original column: (offset, [(std col, sign)])
        bound_rows = []
        ncols = 0
        for lo, up in zip(lp.lower, lp.upper):
            if lo is not None:
                self.columns.append((lo, [(ncols, 1)]))
                if up is not None:
                    bound_rows.append((ncols, up - lo))
                ncols += 1
            elif up is not None:
                self.columns.append((up, [(ncols, -1)]))
                ncols += 1
            else:
                self.columns.append((Fraction(0), [(ncols, 1), (ncols + 1, -1)]))
                ncols += 2
        self.n_struct = ncols

        rows = []  # (coeffs over structural cols, rhs, has slack)
        for row, b, is_eq in lp.normalized_rows():
            coeffs = [Fraction(0)] * ncols
            shift = Fraction(0)
            for a, (offset, cols) in zip(row, self.columns):
                if not a:
                    continue
                shift += a * offset
                for c, sign in cols:
                    coeffs[c] += a * sign
            rows.append((coeffs, b - shift, not is_eq))
        for c, width in bound_rows:
            coeffs = [Fraction(0)] * ncols
            coeffs[c] = Fraction(1)
            rows.append((coeffs, width, True))
        self.n_orig_rows = lp.n_rows

        n_slack = sum(1 for _, _, slack in rows if slack)
        self.n_cols = ncols + n_slack
        self.rows = []
        self.flips = []
        slack_col = ncols
        for coeffs, b, slack in rows:
            full = coeffs + [Fraction(0)] * n_slack
            if slack:
                full[slack_col] = Fraction(1)
                slack_col += 1
            flip = -1 if b < 0 else 1
            if flip < 0:
                full = [-v for v in full]
                b = -b
            self.rows.append(full)
            self.flips.append(flip)
            full.append(b)

        costs = [Fraction(0)] * self.n_cols
        sign = -1 if lp.maximize else 1
        for c, (offset, cols) in zip(lp.objective, self.columns):
            for col, s in cols:
                costs[col] += sign * c * s
        self.costs = costs

    def to_original(self, values):
        x = []
        for offset, cols in self.columns:
            x.append(offset + sum(s * values[c] for c, s in cols))
        return x

    def direction_to_original(self, values):
        return [sum(s * values[c] for c, s in cols) for _, cols in self.columns]


class _Tableau(object):
    """ Dense simplex tableau with one artificial column per row. The last
    entry of every row is its right-hand side; ``cost`` holds the reduced
    costs and minus the objective value.
    """

    def __init__(self, rows, n_cols):
        self.m = len(rows)
        self.n = n_cols  # structural and slack columns
        width = n_cols + self.m
        self.T = []
        for i, row in enumerate(rows):
            full = row[:-1] + [Fraction(0)] * self.m + [row[-1]]
            full[n_cols + i] = Fraction(1)
            self.T.append(full)
        self.basis = [n_cols + i for i in range(self.m)]
        self.width = width
        self.cost = None
        self.pivots = 0

    def set_costs(self, costs):
        cost = list(costs) + [Fraction(0)]
        for i, b in enumerate(self.basis):
            cb = costs[b]
            if cb:
                cost = [c - cb * t for c, t in zip(cost, self.T[i])]
        self.cost = cost

    def pivot(self, r, c):
        row = self.T[r]
        p = row[c]
        row = [v / p for v in row]
        self.T[r] = row
        for i in range(self.m):
            if i != r:
                f = self.T[i][c]
                if f:
                    self.T[i] = [a - f * b for a, b in zip(self.T[i], row)]
        f = self.cost[c]
        if f:
            self.cost = [a - f * b for a, b in zip(self.cost, row)]
        self.basis[r] = c
        self.pivots += 1

    def run(self, allowed):
        """ Minimize with Bland's rule over the allowed columns. Returns None
        when optimal, or the entering column of an unbounded ray.
        """
        while True:
            entering = None
            for j in range(self.width):
                if allowed(j) and self.cost[j] < 0:
                    entering = j
                    break
            if entering is None:
                return None
            leaving, best = None, None
            for i in range(self.m):
                a = self.T[i][entering]
                if a > 0:
                    ratio = self.T[i][-1] / a
                    if (
                        best is None
                        or ratio < best
                        or (ratio == best and self.basis[i] < self.basis[leaving])
                    ):
                        leaving, best = i, ratio
            if leaving is None:
                return entering
            self.pivot(leaving, entering)

    def values(self):
        x = [Fraction(0)] * self.width
        for i, b in enumerate(self.basis):
            x[b] = self.T[i][-1]
        return x


def solve_exact(lp):
    """ solve_exact(lp)

    Solve a LinearProgram exactly with a two-phase simplex method using
    Bland's rule. Returns an LpOutcome; an Infeasible outcome carries a
    certificate that passes verify_certificate().
    """
    if not isinstance(lp, LinearProgram):
        raise ValueError("solve_exact needs a LinearProgram, not %r" % (lp,))
    std = _StandardForm(lp)
    tab = _Tableau(std.rows, std.n_cols)

    # Phase 1: minimize the sum of artificials
    tab.set_costs([Fraction(0)] * std.n_cols + [Fraction(1)] * tab.m)
    tab.run(lambda j: True)
    infeasibility = -tab.cost[-1]
    if infeasibility > 0:
        # Reduced cost of artificial i is 1 - y_i for the phase-1 duals y
        y = [1 - tab.cost[std.n_cols + i] for i in range(tab.m)]
        cert = [-f * yi for f, yi in zip(std.flips, y)][: std.n_orig_rows]
        logger.debug("LP infeasible after %i pivots" % tab.pivots)
        return LpOutcome(LpStatus.INFEASIBLE, dual_certificate=cert)

    # Drive artificials out of the basis where possible
    for i in range(tab.m):
        if tab.basis[i] >= std.n_cols:
            for j in range(std.n_cols):
                if tab.T[i][j] != 0:
                    tab.pivot(i, j)
                    break

    # Phase 2
    tab.set_costs(std.costs + [Fraction(0)] * tab.m)
    entering = tab.run(lambda j: j < std.n_cols)
    values = tab.values()
    x = std.to_original(values)
    if entering is not None:
        direction = [Fraction(0)] * tab.width
        direction[entering] = Fraction(1)
        for i, b in enumerate(tab.basis):
            direction[b] = -tab.T[i][entering]
        ray = std.direction_to_original(direction)
        return LpOutcome(LpStatus.UNBOUNDED, primal=x, ray=ray)
    return LpOutcome(LpStatus.OPTIMAL, primal=x, objective=lp.objective_value(x))


## Float engine


def solve_float(lp, tol=1e-9):
    """ solve_float(lp, tol=1e-9)

    Solve a LinearProgram in floating point with scipy's HiGHS solver.
    The primal is a numpy array. For infeasible programs the certificate
    is taken from the duals of an elastic feasibility program and checks
    out with verify_certificate(lp, y, tol).

    Raises NumericFailure when HiGHS does not reach a clean verdict or its
    solution violates the program by more than tol (scaled).
    """
    from scipy.optimize import linprog

    if not tol > 0:
        raise ValueError("solve_float needs a positive tolerance, got %r" % (tol,))
    if lp.n_cols == 0:
        return solve_exact(lp)

    c = np.array([float(v) for v in lp.objective], dtype=float)
    if lp.maximize:
        c = -c
    A_ub, b_ub, A_eq, b_eq = _float_rows(lp)
    bounds = [
        (None if lo is None else float(lo), None if up is None else float(up))
        for lo, up in zip(lp.lower, lp.upper)
    ]
    try:
        res = linprog(
            c, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=b_eq, bounds=bounds, method="highs"
        )
    except (ValueError, np.linalg.LinAlgError) as err:  # pragma: no cover
        raise NumericFailure("HiGHS failed: %s" % err)

    if res.status == 0:
        x = np.asarray(res.x, dtype=float)
        scale = 1.0 + max([abs(float(b)) for b in lp.rhs] + [0.0])
        if float(lp.violation(x)) > tol * scale * 1e3:
            raise NumericFailure("HiGHS solution violates the LP by more than tol.")
        value = float(np.dot(np.array([float(v) for v in lp.objective]), x))
        return LpOutcome(LpStatus.OPTIMAL, primal=x, objective=value)
    elif res.status == 2:
        return LpOutcome(LpStatus.INFEASIBLE, dual_certificate=_float_certificate(lp))
    elif res.status == 3:
        return LpOutcome(LpStatus.UNBOUNDED)
    raise NumericFailure("HiGHS stopped with status %i: %s" % (res.status, res.message))


def _float_rows(lp):
    ub, bub, eq, beq = [], [], [], []
    for row, b, is_eq in lp.normalized_rows():
        if is_eq:
            eq.append([float(a) for a in row])
            beq.append(float(b))
        else:
            ub.append([float(a) for a in row])
            bub.append(float(b))
    A_ub = np.array(ub, dtype=float).reshape(len(ub), lp.n_cols) if ub else None
    A_eq = np.array(eq, dtype=float).reshape(len(eq), lp.n_cols) if eq else None
    return A_ub, (np.array(bub) if ub else None), A_eq, (np.array(beq) if eq else None)


def _float_certificate(lp):
    """ Duals of the elastic program: min Σ e s.t. a x - e ≤ b on inequality
    rows and a x - e+ + e- = b on equality rows.
    """
    from scipy.optimize import linprog

    rows = list(lp.normalized_rows())
    n = lp.n_cols
    n_ineq = sum(1 for _, _, is_eq in rows if not is_eq)
    n_eq = len(rows) - n_ineq
    n_el = n_ineq + 2 * n_eq
    ub, bub, eq, beq = [], [], [], []
    k = n
    for row, b, is_eq in rows:
        line = [float(a) for a in row] + [0.0] * n_el
        if is_eq:
            line[k], line[k + 1] = -1.0, 1.0
            k += 2
            eq.append(line)
            beq.append(float(b))
        else:
            line[k] = -1.0
            k += 1
            ub.append(line)
            bub.append(float(b))
    c = np.array([0.0] * n + [1.0] * n_el)
    bounds = [
        (None if lo is None else float(lo), None if up is None else float(up))
        for lo, up in zip(lp.lower, lp.upper)
    ] + [(0, None)] * n_el
    res = linprog(
        c,
        A_ub=np.array(ub) if ub else None,
        b_ub=np.array(bub) if ub else None,
        A_eq=np.array(eq) if eq else None,
        b_eq=np.array(beq) if eq else None,
        bounds=bounds,
        method="highs",
    )
    if res.status != 0:
        raise NumericFailure("Elastic program failed: %s" % res.message)
    y_ub = iter(-np.asarray(res.ineqlin.marginals)) if ub else iter(())
    y_eq = iter(-np.asarray(res.eqlin.marginals)) if eq else iter(())
    return [float(next(y_eq) if is_eq else next(y_ub)) for _, _, is_eq in rows]
