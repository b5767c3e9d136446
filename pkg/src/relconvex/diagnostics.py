"""Per-index characterization checks and finite-prefix decay diagnostics.

The first three checks are alternative characterizations of witnessed
convexity (neighbour chords, increment growth for increasing sequences,
collinearity determinants); they must agree with the slope test on every
input.  The remaining diagnostics probe finite-prefix consequences of the
boundedness results: they report data rather than asserting limits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .errors import (
    IndexOutOfRange,
    LengthMismatch,
    NotStrictlyIncreasing,
    PreconditionViolation,
)
from .inequalities import ConvexMap, spot_check_map
from .seqcore import (
    DEFAULT_TOL,
    CheckReport,
    RealSeq,
    SeqLike,
    Tolerance,
    Witness,
    WitnessLike,
    forward_diff,
    is_convex_wrt,
)


@dataclass(frozen=True)
class RateReport:
    """Decay data for a non-increasing witnessed prefix.

    ``terms[k-1]`` is k times the k-th slope; ``partial_sums`` accumulates
    k times the slope increments; ``max_tail`` is the largest |term| over
    the final quarter of the prefix.  Callers judge decay against their own
    threshold.
    """

    terms: tuple[float, ...]
    partial_sums: tuple[float, ...]
    max_tail: float


def _paired(a: SeqLike, t: WitnessLike, tol: Tolerance) -> tuple[RealSeq, Witness]:
    seq = RealSeq.of(a)
    wit = Witness.of(t, tol)
    if len(seq) != len(wit):
        raise LengthMismatch(f"|a| = {len(seq)} but |t| = {len(wit)}")
    return seq, wit


def neighbor_chord_check(a: SeqLike, t: WitnessLike, tol: Tolerance = DEFAULT_TOL) -> CheckReport:
    """Each interior point must sit on or below the chord through its neighbours.

    The chord value at t_i weights the neighbours by the opposite gaps:
    (right_gap * a[i-1] + left_gap * a[i+1]) / (left_gap + right_gap).
    Agrees with :func:`relconvex.seqcore.is_convex_wrt` on every input;
    with an arithmetic witness this is the ordinary midpoint test.
    """
    seq, wit = _paired(a, t, tol)
    n = len(seq)
    if n < 3:
        return CheckReport(True, None, math.inf, tol)
    scale = max(abs(v) for v in seq)
    allowed = tol.slack(scale)
    margin = math.inf
    first = None
    for i in range(1, n - 1):
        left = wit[i] - wit[i - 1]
        right = wit[i + 1] - wit[i]
        chord = (right * seq[i - 1] + left * seq[i + 1]) / (left + right)
        gap = chord - seq[i]
        margin = min(margin, gap)
        if first is None and gap < -allowed:
            first = i + 1
    return CheckReport(first is None, first, margin, tol)


def increment_growth_check(a: SeqLike, t: WitnessLike, tol: Tolerance = DEFAULT_TOL) -> CheckReport:
    """Second-to-first difference ratios of a must dominate those of t.

    Only defined for strictly increasing a (the ratios divide by its
    increments).  Equivalent to the slope test on that domain.
    """
    seq, wit = _paired(a, t, tol)
    da = forward_diff(seq)
    dt = forward_diff(wit.values)
    for k, d in enumerate(da):
        if not d > tol.abs:
            raise NotStrictlyIncreasing(
                f"a must be strictly increasing: step {k + 1} has gap {d!r}"
            )
    if len(da) < 2:
        return CheckReport(True, None, math.inf, tol)
    lhs = [(da[i + 1] - da[i]) / da[i] for i in range(len(da) - 1)]
    rhs = [(dt[i + 1] - dt[i]) / dt[i] for i in range(len(dt) - 1)]
    scale = max(max(abs(v) for v in lhs), max(abs(v) for v in rhs))
    allowed = tol.slack(scale)
    margin = math.inf
    first = None
    for i, (x, y) in enumerate(zip(lhs, rhs)):
        gap = x - y
        margin = min(margin, gap)
        if first is None and gap < -allowed:
            first = i + 1
    return CheckReport(first is None, first, margin, tol)


def collinearity_determinant_check(
    a: SeqLike,
    t: WitnessLike,
    tol: Tolerance = DEFAULT_TOL,
    all_triples: bool = False,
) -> CheckReport:
    """Orientation determinants of point triples on the graph must be non-negative.

    det(l, m, k) = (t_k - t_m) a_l - (t_k - t_l) a_m + (t_m - t_l) a_k for
    l < m < k; zero means collinear.  Consecutive triples (the default,
    O(n)) decide the same verdict as all C(n, 3) triples since the
    consecutive determinant factors into gap * gap * slope-increment.
    ``first_violation`` is the lexicographically first bad 1-based triple.
    """
    seq, wit = _paired(a, t, tol)
    n = len(seq)
    if n < 3:
        return CheckReport(True, None, math.inf, tol)
    if all_triples:
        triples = combinations(range(n), 3)
    else:
        triples = ((i, i + 1, i + 2) for i in range(n - 2))
    margin = math.inf
    first = None
    worst_scale = 1.0
    for l, m, k in triples:
        p1 = (wit[k] - wit[m]) * seq[l]
        p2 = (wit[k] - wit[l]) * seq[m]
        p3 = (wit[m] - wit[l]) * seq[k]
        det = p1 - p2 + p3
        worst_scale = max(worst_scale, abs(p1), abs(p2), abs(p3))
        if det < margin:
            margin = det
        if first is None and det < -tol.slack(max(abs(p1), abs(p2), abs(p3))):
            first = (l + 1, m + 1, k + 1)
    holds = margin >= -tol.slack(worst_scale)
    return CheckReport(holds, first, margin, tol)


def anchored_slope_check(
    a: SeqLike,
    t: WitnessLike,
    anchor: int,
    tol: Tolerance = DEFAULT_TOL,
) -> CheckReport:
    """Divided differences from a fixed 1-based anchor must be non-decreasing.

    ``first_violation`` is the 1-based index of the later point at which
    the divided-difference sequence first drops.
    """
    seq, wit = _paired(a, t, tol)
    n = len(seq)
    if not 1 <= anchor < n:
        raise IndexOutOfRange(f"anchor {anchor} outside 1..{n - 1}")
    s0 = anchor - 1
    slopes = [
        (seq[i] - seq[s0]) / (wit[i] - wit[s0]) for i in range(s0 + 1, n)
    ]
    if len(slopes) < 2:
        return CheckReport(True, None, math.inf, tol)
    allowed = tol.slack(max(abs(v) for v in slopes))
    margin = math.inf
    first = None
    for i in range(len(slopes) - 1):
        gap = slopes[i + 1] - slopes[i]
        margin = min(margin, gap)
        if first is None and gap < -allowed:
            first = s0 + i + 3  # 1-based index of the later point
    return CheckReport(first is None, first, margin, tol)


def anchored_slope_check_all(a: SeqLike, t: WitnessLike, tol: Tolerance = DEFAULT_TOL) -> CheckReport:
    """Conjunction of :func:`anchored_slope_check` over every anchor."""
    seq, wit = _paired(a, t, tol)
    margin = math.inf
    first = None
    holds = True
    for anchor in range(1, len(seq)):
        rep = anchored_slope_check(seq, wit, anchor, tol)
        margin = min(margin, rep.margin)
        if not rep.holds and first is None:
            first = rep.first_violation
        holds = holds and rep.holds
    return CheckReport(holds, first, margin, tol)


def psi_preservation_check(
    a: SeqLike,
    t: WitnessLike,
    psi: ConvexMap,
    tol: Tolerance = DEFAULT_TOL,
) -> CheckReport:
    """A non-decreasing convex map applied pointwise keeps the witness valid.

    Requires (a, t) witnessed to begin with; the verdict is the slope test
    on the mapped sequence against the same witness.
    """
    seq, wit = _paired(a, t, tol)
    base = is_convex_wrt(seq, wit, tol)
    if not base.holds:
        raise PreconditionViolation(
            f"(a, t) is not a witnessed pair (margin {base.margin!r})"
        )
    spot_check_map(psi, seq.values, tol)
    mapped = tuple(float(psi(v)) for v in seq)
    return is_convex_wrt(mapped, wit, tol)


def bounded_monotone_diagnostic(
    a: SeqLike,
    t: WitnessLike,
    bound: float,
    alpha: float,
    tol: Tolerance = DEFAULT_TOL,
) -> CheckReport:
    """Finite-prefix dichotomy probe for bounded witnessed sequences.

    When the witness gaps stay at or above ``alpha`` (the finite surrogate
    for a divergent witness), a bounded witnessed sequence must be
    non-increasing over the prefix.  If the gap condition fails the
    dichotomy is uninformative here and the report comes back with
    ``applicable=False`` (a shrinking witness may converge instead).
    """
    seq, wit = _paired(a, t, tol)
    base = is_convex_wrt(seq, wit, tol)
    if not base.holds:
        raise PreconditionViolation("(a, t) is not a witnessed pair")
    if max(seq.values) > bound + tol.abs:
        raise PreconditionViolation(
            f"max(a) = {max(seq.values)!r} exceeds the stated bound {bound!r}"
        )
    dt = forward_diff(wit.values)
    if any(g < alpha for g in dt):
        return CheckReport(False, None, math.nan, tol, applicable=False)
    da = forward_diff(seq)
    allowed = tol.slack(max(abs(v) for v in da) if da else 1.0)
    margin = math.inf
    first = None
    for k, d in enumerate(da):
        margin = min(margin, -d)
        if first is None and d > allowed:
            first = k + 1
    return CheckReport(first is None, first, margin, tol)


def rate_diagnostic(
    a: SeqLike,
    t: WitnessLike,
    tol: Tolerance = DEFAULT_TOL,
    alpha: float | None = None,
) -> RateReport:
    """Decay data n * slope_n for a bounded non-increasing witnessed prefix.

    Preconditions: (a, t) witnessed and a non-increasing within tolerance;
    when ``alpha`` is given every witness gap must reach it.  Terms are
    non-positive under the preconditions; the partial sums accumulate
    n * (slope increments) and should be Cauchy-like on well-behaved input.
    """
    seq, wit = _paired(a, t, tol)
    base = is_convex_wrt(seq, wit, tol)
    if not base.holds:
        raise PreconditionViolation("(a, t) is not a witnessed pair")
    da = forward_diff(seq)
    allowed = tol.slack(max(abs(v) for v in da) if da else 1.0)
    for k, d in enumerate(da):
        if d > allowed:
            raise PreconditionViolation(
                f"a must be non-increasing over the prefix: step {k + 1} rises by {d!r}"
            )
    dt = forward_diff(wit.values)
    if alpha is not None:
        for k, g in enumerate(dt):
            if g < alpha:
                raise PreconditionViolation(
                    f"witness gap {k + 1} = {g!r} is below alpha = {alpha!r}"
                )
    ratios = [d / g for d, g in zip(da, dt)]
    terms = tuple(k * r for k, r in enumerate(ratios, start=1))
    increments = [
        k * (ratios[k] - ratios[k - 1]) for k in range(1, len(ratios))
    ]
    partial = []
    acc = 0.0
    for v in increments:
        acc += v
        partial.append(acc)
    tail = max(1, math.ceil(len(terms) / 4))
    max_tail = max(abs(v) for v in terms[-tail:])
    return RateReport(terms, tuple(partial), max_tail)
