"""Compute-and-verify engines for the discrete inequalities.

Each engine evaluates both sides of its inequality, reports the slack, and
verifies the documented preconditions up front (pass ``skip_verify=True``
to probe converse directions).  Verdicts use one-sided tolerance: a bound
"holds" when its slack is at least ``-tol.slack(scale)``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import (
    DegenerateWitness,
    IndexOutOfRange,
    LengthError,
    LengthMismatch,
    PreconditionViolation,
)
from .functionals import WeightLike, WeightVec, cov_functional, majorizes, weighted_mean
from .polyext import floor_wrt
from .seqcore import (
    DEFAULT_TOL,
    CheckReport,
    RealSeq,
    SeqLike,
    Tolerance,
    Witness,
    WitnessLike,
    is_convex,
    is_convex_wrt,
)

#: A caller-supplied non-decreasing convex map; spot-checked, never proven.
ConvexMap = Callable[[float], float]


class ConvexMapWarning(UserWarning):
    """The supplied map failed a monotone-convexity spot check."""


def spot_check_map(psi: ConvexMap, values: Sequence[float], tol: Tolerance = DEFAULT_TOL) -> bool:
    """Sample the map on the observed values and warn on contract violations.

    Checks midpoint convexity on consecutive value triples u < v < w and
    monotonicity on adjacent pairs.  Returns True when every sample passed.
    The hypothesis remains the caller's responsibility; a failed spot check
    warns instead of raising.
    """
    pts = sorted({float(v) for v in values})
    mapped = {v: float(psi(v)) for v in pts}
    scale = max((abs(m) for m in mapped.values()), default=1.0)
    allowed = tol.slack(scale)
    ok = True
    for u, w in zip(pts, pts[1:]):
        if mapped[u] > mapped[w] + allowed:
            warnings.warn(
                f"map not non-decreasing on [{u!r}, {w!r}]", ConvexMapWarning, stacklevel=2
            )
            ok = False
    for u, w in zip(pts, pts[2:]):
        if psi((u + w) / 2.0) > (mapped[u] + mapped[w]) / 2.0 + allowed:
            warnings.warn(
                f"map not midpoint-convex on [{u!r}, {w!r}]", ConvexMapWarning, stacklevel=2
            )
            ok = False
    return ok


@dataclass(frozen=True)
class LupasReport:
    """Two sides of a covariance-product bound; holds when lhs >= rhs - tol."""

    lhs: float
    rhs: float
    holds: bool
    slack: float
    tolerance: Tolerance


@dataclass(frozen=True)
class BoundReport:
    """A (possibly one-sided) sandwich around a weighted value.

    ``lower`` and the interpolation coefficients are None for one-sided
    bounds.  ``m`` is the 1-based index of the segment carrying the lower
    bound.  Slacks are signed distances into the feasible side.
    """

    value: float
    upper: float
    holds: bool
    slack_upper: float
    lower: float | None = None
    slack_lower: float | None = None
    m: int | None = None
    gamma_t: float | None = None
    lambda_t: float | None = None
    tolerance: Tolerance = DEFAULT_TOL


def _require_convex_wrt(name: str, a: SeqLike, t: WitnessLike, tol: Tolerance) -> None:
    rep = is_convex_wrt(a, t, tol)
    if not rep.holds:
        raise PreconditionViolation(
            f"{name} is not convex w.r.t. t: slope pair {rep.first_violation} "
            f"decreases (margin {rep.margin!r})"
        )


def _require_convex(name: str, a: SeqLike, tol: Tolerance) -> None:
    rep = is_convex(a, tol)
    if not rep.holds:
        raise PreconditionViolation(
            f"{name} is not convex: interior index {rep.first_violation} "
            f"sits above its neighbour midpoint (margin {rep.margin!r})"
        )


def lupas_check(
    a: SeqLike,
    b: SeqLike,
    t: WitnessLike,
    p: WeightLike,
    tol: Tolerance = DEFAULT_TOL,
    skip_verify: bool = False,
) -> LupasReport:
    """Covariance bound for two sequences sharing a witness.

    Verifies S(a,b) >= S(a,t) S(b,t) / S(t,t) in the weighted functionals;
    equality is attained when either sequence is affine in t.
    """
    seq_a = RealSeq.of(a)
    seq_b = RealSeq.of(b)
    wit = Witness.of(t, tol)
    pv = WeightVec.of(p)
    if not len(seq_a) == len(seq_b) == len(wit) == len(pv):
        raise LengthMismatch(
            f"|a| = {len(seq_a)}, |b| = {len(seq_b)}, |t| = {len(wit)}, |p| = {len(pv)}"
        )
    if not skip_verify:
        _require_convex_wrt("a", seq_a, wit, tol)
        _require_convex_wrt("b", seq_b, wit, tol)
    stt = cov_functional(wit.values, wit.values, pv)
    if stt <= tol.slack(max(abs(v) for v in wit.values) ** 2):
        raise DegenerateWitness(
            "S(t,t) is not positive: need positive weight on at least two indices"
        )
    lhs = cov_functional(seq_a.values, seq_b.values, pv)
    rhs = cov_functional(seq_a.values, wit.values, pv) * cov_functional(
        seq_b.values, wit.values, pv
    ) / stt
    slack = lhs - rhs
    holds = slack >= -tol.slack(max(abs(lhs), abs(rhs)))
    return LupasReport(lhs, rhs, holds, slack, tol)


def pecaric_check(
    a: SeqLike,
    b: SeqLike,
    tol: Tolerance = DEFAULT_TOL,
    skip_verify: bool = False,
) -> LupasReport:
    """Raw-sum covariance bound for two convex sequences against indices 1..n.

    Both sides carry an extra factor n relative to :func:`lupas_check` with
    t = (1..n) and uniform weights (raw sums there, means here).  Equality
    when either sequence is arithmetic.
    """
    seq_a = RealSeq.of(a)
    seq_b = RealSeq.of(b)
    if len(seq_a) != len(seq_b):
        raise LengthMismatch(f"|a| = {len(seq_a)} but |b| = {len(seq_b)}")
    if not skip_verify:
        _require_convex("a", seq_a, tol)
        _require_convex("b", seq_b, tol)
    n = len(seq_a)
    lhs = math.fsum(x * y for x, y in zip(seq_a, seq_b)) - math.fsum(seq_a) * math.fsum(
        seq_b
    ) / n
    centre = (n + 1) / 2.0
    wa = math.fsum((i - centre) * x for i, x in enumerate(seq_a, start=1))
    wb = math.fsum((i - centre) * y for i, y in enumerate(seq_b, start=1))
    rhs = 12.0 / (n * (n * n - 1.0)) * wa * wb
    slack = lhs - rhs
    holds = slack >= -tol.slack(max(abs(lhs), abs(rhs)))
    return LupasReport(lhs, rhs, holds, slack, tol)


def hhf_bounds(
    a: SeqLike,
    t: WitnessLike,
    p: WeightLike,
    psi: ConvexMap,
    tol: Tolerance = DEFAULT_TOL,
    skip_verify: bool = False,
) -> BoundReport:
    """Hermite-Hadamard-Fejér sandwich for a witnessed sequence.

    With M the weighted mean of the witness and m its generalized floor
    (clamped to n-1 so the bracketing segment exists), the normalized value
    sum(p_i psi(a_i)) / P is squeezed between the segment interpolation at M
    and the endpoint interpolation:

        gamma psi(a_{m+1}) + (1-gamma) psi(a_m)  <=  value
        value  <=  lambda psi(a_1) + (1-lambda) psi(a_n)
    """
    seq = RealSeq.of(a)
    wit = Witness.of(t, tol)
    pv = WeightVec.of(p)
    if not len(seq) == len(wit) == len(pv):
        raise LengthMismatch(f"|a| = {len(seq)}, |t| = {len(wit)}, |p| = {len(pv)}")
    if not skip_verify:
        _require_convex_wrt("a", seq, wit, tol)
        spot_check_map(psi, seq.values, tol)
    n = len(seq)
    if wit[-1] - wit[0] <= tol.abs:
        raise DegenerateWitness("witness endpoints coincide")
    total = pv.total
    value = math.fsum(w * psi(x) for w, x in zip(pv, seq)) / total
    mt = weighted_mean(wit.values, pv)
    m = min(floor_wrt(wit, mt, tol), n - 1)
    gamma = (mt - wit[m - 1]) / (wit[m] - wit[m - 1])
    gamma = min(max(gamma, 0.0), 1.0)
    lam = (wit[-1] - mt) / (wit[-1] - wit[0])
    lam = min(max(lam, 0.0), 1.0)
    lower = gamma * psi(seq[m]) + (1.0 - gamma) * psi(seq[m - 1])
    upper = lam * psi(seq[0]) + (1.0 - lam) * psi(seq[-1])
    scale = max(abs(value), abs(lower), abs(upper))
    allowed = tol.slack(scale)
    slack_lower = value - lower
    slack_upper = upper - value
    holds = slack_lower >= -allowed and slack_upper >= -allowed
    return BoundReport(
        value=value,
        upper=upper,
        holds=holds,
        slack_upper=slack_upper,
        lower=lower,
        slack_lower=slack_lower,
        m=m,
        gamma_t=gamma,
        lambda_t=lam,
        tolerance=tol,
    )


def niezgoda_bound(
    a: SeqLike,
    p: WeightLike,
    psi: ConvexMap,
    tol: Tolerance = DEFAULT_TOL,
    skip_verify: bool = False,
) -> BoundReport:
    """One-sided endpoint bound for a convex sequence, arbitrary weights.

    Raw sums (no normalization):

        sum p_i psi(a_i)  <=  sum((n-i)/(n-1) p_i) psi(a_1)
                              + sum((i-1)/(n-1) p_i) psi(a_n)

    Equals P_n times the upper bound of :func:`hhf_bounds` at t = (1..n).
    """
    seq = RealSeq.of(a)
    pv = WeightVec.of(p)
    if len(seq) != len(pv):
        raise LengthMismatch(f"|a| = {len(seq)} but |p| = {len(pv)}")
    n = len(seq)
    if n < 2:
        raise LengthError("need at least 2 entries")
    if not skip_verify:
        _require_convex("a", seq, tol)
        spot_check_map(psi, seq.values, tol)
    value = math.fsum(w * psi(x) for w, x in zip(pv, seq))
    c_first = math.fsum((n - i) / (n - 1.0) * w for i, w in enumerate(pv, start=1))
    c_last = math.fsum((i - 1) / (n - 1.0) * w for i, w in enumerate(pv, start=1))
    upper = c_first * psi(seq[0]) + c_last * psi(seq[-1])
    slack_upper = upper - value
    holds = slack_upper >= -tol.slack(max(abs(value), abs(upper)))
    return BoundReport(
        value=value,
        upper=upper,
        holds=holds,
        slack_upper=slack_upper,
        tolerance=tol,
    )


def convex_hhf_bounds(
    a: SeqLike,
    p: WeightLike,
    psi: ConvexMap,
    tol: Tolerance = DEFAULT_TOL,
    skip_verify: bool = False,
) -> BoundReport:
    """Two-sided endpoint/segment sandwich for a convex sequence, raw sums.

    With m the ordinary floor of the weighted mean index (clamped to n-1)
    and Phi(u, v) the two-point interpolation functional

        Phi(u, v) = sum((i-u)/(v-u) p_i) psi(a_v) + sum((v-i)/(v-u) p_i) psi(a_u),

    the weighted sum lies between Phi(m, m+1) and Phi(1, n).
    """
    seq = RealSeq.of(a)
    pv = WeightVec.of(p)
    if len(seq) != len(pv):
        raise LengthMismatch(f"|a| = {len(seq)} but |p| = {len(pv)}")
    if not skip_verify:
        _require_convex("a", seq, tol)
        spot_check_map(psi, seq.values, tol)
    n = len(seq)
    mean_index = math.fsum(w * i for i, w in enumerate(pv, start=1)) / pv.total
    m = min(max(int(math.floor(mean_index)), 1), n - 1)

    def phi(u: int, v: int) -> float:
        cu = math.fsum((v - i) / (v - u) * w for i, w in enumerate(pv, start=1))
        cv = math.fsum((i - u) / (v - u) * w for i, w in enumerate(pv, start=1))
        return cv * psi(seq[v - 1]) + cu * psi(seq[u - 1])

    value = math.fsum(w * psi(x) for w, x in zip(pv, seq))
    lower = phi(m, m + 1)
    upper = phi(1, n)
    scale = max(abs(value), abs(lower), abs(upper))
    allowed = tol.slack(scale)
    slack_lower = value - lower
    slack_upper = upper - value
    holds = slack_lower >= -allowed and slack_upper >= -allowed
    return BoundReport(
        value=value,
        upper=upper,
        holds=holds,
        slack_upper=slack_upper,
        lower=lower,
        slack_lower=slack_lower,
        m=m,
        tolerance=tol,
    )


def _floor_pieces(
    seq: RealSeq, wit: Witness, points: Sequence[float], tol: Tolerance
) -> tuple[float, float]:
    """Split sum of extension values into (floor-ordinate sum, frac-term sum)."""
    n = len(seq)
    floor_sum = 0.0
    frac_sum = 0.0
    for x in points:
        m = floor_wrt(wit, x, tol)
        floor_sum += seq[m - 1]
        if m < n:
            frac = x - wit[m - 1]
            frac_sum += frac * (seq[m] - seq[m - 1]) / (wit[m] - wit[m - 1])
    return floor_sum, frac_sum


def majorization_inequality_check(
    a: SeqLike,
    t: WitnessLike,
    pvec: Sequence[float],
    qvec: Sequence[float],
    tol: Tolerance = DEFAULT_TOL,
    skip_verify: bool = False,
) -> CheckReport:
    """Majorization inequality for a witnessed sequence.

    For pvec majorized by qvec inside [t_1, t_n], floor/frac expansion gives

        sum(a_floor(p) - a_floor(q))
            <= sum(frac(q) slope_floor(q) - frac(p) slope_floor(p)),

    equivalently: the polygonal extension sums satisfy
    sum ext(p_i) <= sum ext(q_i).  ``margin`` is RHS - LHS.

    ``skip_verify`` disables the convexity precondition only; the
    majorization relation between pvec and qvec is always enforced.
    """
    seq = RealSeq.of(a)
    wit = Witness.of(t, tol)
    if len(seq) != len(wit):
        raise LengthMismatch(f"|a| = {len(seq)} but |t| = {len(wit)}")
    pv = tuple(float(v) for v in pvec)
    qv = tuple(float(v) for v in qvec)
    if len(pv) != len(qv):
        raise LengthMismatch(f"|pvec| = {len(pv)} but |qvec| = {len(qv)}")
    lo, hi = wit[0], wit[-1]
    for name, vec in (("pvec", pv), ("qvec", qv)):
        for k, x in enumerate(vec):
            if x < lo - tol.abs or x > hi + tol.abs:
                raise PreconditionViolation(
                    f"{name}[{k + 1}] = {x!r} lies outside the witness range [{lo!r}, {hi!r}]"
                )
    if not majorizes(pv, qv, tol):
        raise PreconditionViolation("pvec is not majorized by qvec")
    if not skip_verify:
        _require_convex_wrt("a", seq, wit, tol)
    p_floor, p_frac = _floor_pieces(seq, wit, pv, tol)
    q_floor, q_frac = _floor_pieces(seq, wit, qv, tol)
    lhs = p_floor - q_floor
    rhs = q_frac - p_frac
    margin = rhs - lhs
    holds = margin >= -tol.slack(max(abs(lhs), abs(rhs)))
    return CheckReport(holds, None, margin, tol)


def integer_majorization_check(
    a: SeqLike,
    pidx: Sequence[int],
    qidx: Sequence[int],
    tol: Tolerance = DEFAULT_TOL,
    skip_verify: bool = False,
) -> CheckReport:
    """Index-form majorization inequality for a convex sequence.

    For 1-based index vectors with pidx majorized by qidx,
    sum a[pidx] <= sum a[qidx].  The smallest instance, (2,2) vs (1,3),
    is the defining convexity inequality 2 a_2 <= a_1 + a_3.
    """
    seq = RealSeq.of(a)
    n = len(seq)
    pi = [int(i) for i in pidx]
    qi = [int(i) for i in qidx]
    for name, vec in (("pidx", pi), ("qidx", qi)):
        for k, i in enumerate(vec):
            if not 1 <= i <= n:
                raise IndexOutOfRange(f"{name}[{k + 1}] = {i} outside 1..{n}")
    if len(pi) != len(qi):
        raise LengthMismatch(f"|pidx| = {len(pi)} but |qidx| = {len(qi)}")
    if not majorizes([float(i) for i in pi], [float(i) for i in qi], tol):
        raise PreconditionViolation("pidx is not majorized by qidx")
    if not skip_verify:
        _require_convex("a", seq, tol)
    lhs = math.fsum(seq[i - 1] for i in pi)
    rhs = math.fsum(seq[i - 1] for i in qi)
    margin = rhs - lhs
    holds = margin >= -tol.slack(max(abs(lhs), abs(rhs)))
    return CheckReport(holds, None, margin, tol)


# Builtin maps for the CLI and the test suites; library callers can pass any
# re-entrant callable.
def psi_identity(x: float) -> float:
    return x


def make_relu(c: float) -> ConvexMap:
    """x -> max(x, c): non-decreasing and convex everywhere."""

    def relu(x: float) -> float:
        return x if x > c else c

    return relu


def psi_square(x: float) -> float:
    """x -> x^2: convex everywhere, non-decreasing only on x >= 0."""
    return x * x


def parse_psi(name: str) -> ConvexMap:
    """Resolve a builtin map name, e.g. "identity", "exp", "relu@1.5", "square"."""
    base, _, param = name.partition("@")
    base = base.strip().lower()
    if base == "identity":
        return psi_identity
    if base == "exp":
        return math.exp
    if base == "square":
        return psi_square
    if base == "relu":
        return make_relu(float(param) if param else 0.0)
    raise ValueError(f"unknown map {name!r}; choose identity, exp, relu@c, or square")
