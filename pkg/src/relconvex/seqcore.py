"""Core sequence types, difference operators, convexity tests, and witness construction.

A finite sequence ``a`` is *convex* when its forward differences are
non-decreasing, and *convex with respect to* a strictly increasing witness
``t`` when the slope sequence ``(a[i+1]-a[i]) / (t[i+1]-t[i])`` is
non-decreasing.  A sequence admitting some witness is called relative
convex; this holds exactly for the strictly V-shaped profiles enumerated
in :class:`ShapeKind`.

All public indices (violation locations, breakpoints) are 1-based to match
the usual subscript convention for sequences.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Sequence, Union

from .errors import (
    IntervalError,
    LengthError,
    LengthMismatch,
    MonotoneError,
    ShapeError,
    SignError,
    WitnessNotIncreasing,
)

SeqLike = Union["RealSeq", Sequence[float]]
WitnessLike = Union["Witness", Sequence[float]]


@dataclass(frozen=True)
class Tolerance:
    """Absolute/relative slack applied by every comparison in the package.

    ``abs`` is the unconditional slack; ``rel`` is multiplied by the scale
    of the quantities being compared.  Both default to the package-wide
    values needed for transcendental inputs (ln, arctan, ...).
    """

    abs: float = 1e-9
    rel: float = 1e-12

    def __post_init__(self) -> None:
        if self.abs < 0 or self.rel < 0 or not math.isfinite(self.abs + self.rel):
            raise ValueError("tolerance components must be finite and non-negative")

    def slack(self, scale: float = 1.0) -> float:
        """Total allowed slack for quantities of magnitude ``scale``."""
        return self.abs + self.rel * abs(scale)


DEFAULT_TOL = Tolerance()


def _to_floats(values) -> tuple[float, ...]:
    if isinstance(values, (RealSeq, Witness)):
        return values.values
    return tuple(float(v) for v in values)


@dataclass(frozen=True)
class RealSeq:
    """Finite sequence of finite reals; the payload of every check.

    Length must be at least 2 so the difference operators are defined.
    """

    values: tuple[float, ...]

    def __post_init__(self) -> None:
        vals = tuple(float(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if len(vals) < 2:
            raise LengthError(f"sequence needs at least 2 entries, got {len(vals)}")
        for k, v in enumerate(vals):
            if not math.isfinite(v):
                raise ValueError(f"entry {k + 1} is not finite: {v!r}")

    @classmethod
    def of(cls, values: SeqLike) -> "RealSeq":
        if isinstance(values, cls):
            return values
        return cls(_to_floats(values))

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[float]:
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]


@dataclass(frozen=True)
class Witness:
    """Strictly increasing abscissae that a sequence's convexity is measured against.

    The type-level invariant is genuine strict increase; operations that
    take a tolerance additionally require gaps above ``tol.abs`` via
    :meth:`of`.
    """

    values: tuple[float, ...]

    def __post_init__(self) -> None:
        vals = tuple(float(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if len(vals) < 2:
            raise LengthError(f"witness needs at least 2 entries, got {len(vals)}")
        for k, v in enumerate(vals):
            if not math.isfinite(v):
                raise ValueError(f"entry {k + 1} is not finite: {v!r}")
        for k in range(len(vals) - 1):
            if not vals[k + 1] > vals[k]:
                raise WitnessNotIncreasing(
                    f"t[{k + 2}] = {vals[k + 1]!r} does not exceed t[{k + 1}] = {vals[k]!r}"
                )

    @classmethod
    def of(cls, values: WitnessLike, tol: Tolerance = DEFAULT_TOL) -> "Witness":
        if isinstance(values, cls):
            return values
        vals = _to_floats(values)
        for k in range(len(vals) - 1):
            if not vals[k + 1] - vals[k] > tol.abs:
                raise WitnessNotIncreasing(
                    f"gap t[{k + 2}] - t[{k + 1}] = {vals[k + 1] - vals[k]!r} "
                    f"is not above the strictness tolerance {tol.abs!r}"
                )
        return cls(vals)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[float]:
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]


class ShapeKind(str, Enum):
    """The strictly V-shaped profiles, plus the constant and rejected cases."""

    STRICTLY_INCREASING = "strictly_increasing"
    STRICTLY_DECREASING = "strictly_decreasing"
    DEC_THEN_CONST = "dec_then_const"
    CONST_THEN_INC = "const_then_inc"
    DEC_THEN_INC = "dec_then_inc"
    DEC_CONST_INC = "dec_const_inc"
    CONSTANT = "constant"
    NOT_STRICTLY_V_SHAPED = "not_strictly_v_shaped"


#: Variants that admit a witness (everything except the rejected case).
RELATIVE_CONVEX_KINDS = frozenset(ShapeKind) - {ShapeKind.NOT_STRICTLY_V_SHAPED}


@dataclass(frozen=True)
class ShapeClass:
    """Classification result.

    ``breakpoints = (m, ell)`` locates the minimal block: ``m`` is the
    1-based index where the minimum is first attained and ``ell`` is the
    number of constant steps following it.  ``None`` for the rejected case.
    """

    variant: ShapeKind
    breakpoints: tuple[int, int] | None = None


@dataclass(frozen=True)
class CheckReport:
    """Verdict of a tolerance-based inequality scan.

    ``margin`` is the minimum slack over all checked inequalities (negative
    when violated); ``first_violation`` is the 1-based location of the first
    failure, when any.  ``applicable`` is False only for diagnostics whose
    hypotheses could not be established from the data.
    """

    holds: bool
    first_violation: int | tuple[int, ...] | None
    margin: float
    tolerance: Tolerance
    applicable: bool = True


def forward_diff(a: SeqLike) -> tuple[float, ...]:
    """First forward differences ``a[i+1] - a[i]``; output length n-1."""
    vals = RealSeq.of(a).values
    return tuple(vals[i + 1] - vals[i] for i in range(len(vals) - 1))


def is_convex_wrt(a: SeqLike, t: WitnessLike, tol: Tolerance = DEFAULT_TOL) -> CheckReport:
    """Check that the slope sequence of ``a`` against ``t`` is non-decreasing.

    ``margin`` is the minimum slope increment; ``first_violation`` is the
    1-based index i of the first failing pair (slope i vs slope i+1).
    Length-2 input is vacuously convex (single slope).
    """
    seq = RealSeq.of(a)
    wit = Witness.of(t, tol)
    if len(seq) != len(wit):
        raise LengthMismatch(f"|a| = {len(seq)} but |t| = {len(wit)}")
    ratios = [
        (seq[i + 1] - seq[i]) / (wit[i + 1] - wit[i]) for i in range(len(seq) - 1)
    ]
    if len(ratios) < 2:
        return CheckReport(True, None, math.inf, tol)
    scale = max(abs(r) for r in ratios)
    allowed = tol.slack(scale)
    margin = math.inf
    first = None
    for i in range(len(ratios) - 1):
        gap = ratios[i + 1] - ratios[i]
        margin = min(margin, gap)
        if first is None and gap < -allowed:
            first = i + 1
    return CheckReport(first is None, first, margin, tol)


def is_convex(a: SeqLike, tol: Tolerance = DEFAULT_TOL) -> CheckReport:
    """Check ordinary convexity: each a_i at most the midpoint of its neighbours.

    The verdict is computed exactly as :func:`is_convex_wrt` against the
    arithmetic witness 1..n (unit gaps make the slopes equal the forward
    differences bit-for-bit).  The reported ``margin`` is the midpoint form
    ``(a[i-1]+a[i+1])/2 - a[i]``, i.e. half the difference-increment slack;
    ``first_violation`` is the 1-based interior index.
    """
    seq = RealSeq.of(a)
    unit = Witness(tuple(float(i) for i in range(1, len(seq) + 1)))
    rep = is_convex_wrt(seq, unit, tol)
    if len(seq) == 2:
        return rep
    margin = min(
        (seq[i - 1] + seq[i + 1]) / 2.0 - seq[i] for i in range(1, len(seq) - 1)
    )
    first = None if rep.first_violation is None else rep.first_violation + 1
    return CheckReport(rep.holds, first, margin, tol)


def classify_shape(a: SeqLike, tol: Tolerance = DEFAULT_TOL) -> ShapeClass:
    """Classify the monotonicity profile of ``a``.

    Step comparisons: strict means a gap above ``tol.abs``, equal means
    within ``tol.abs``.  The profile is accepted exactly when the step signs
    read as a (possibly empty) run of decreases, then a single plateau, then
    a run of increases; anything else (re-descent after an ascent, plateau
    away from the minimum) is rejected.
    """
    seq = RealSeq.of(a)
    signs = []
    for i in range(len(seq) - 1):
        d = seq[i + 1] - seq[i]
        if d > tol.abs:
            signs.append(1)
        elif d < -tol.abs:
            signs.append(-1)
        else:
            signs.append(0)
    if signs != sorted(signs):
        return ShapeClass(ShapeKind.NOT_STRICTLY_V_SHAPED, None)
    n_dec = signs.count(-1)
    n_flat = signs.count(0)
    n_inc = signs.count(1)
    m = n_dec + 1
    breakpoints = (m, n_flat)
    if n_dec == 0 and n_inc == 0:
        return ShapeClass(ShapeKind.CONSTANT, breakpoints)
    if n_dec == 0 and n_flat == 0:
        return ShapeClass(ShapeKind.STRICTLY_INCREASING, breakpoints)
    if n_inc == 0 and n_flat == 0:
        return ShapeClass(ShapeKind.STRICTLY_DECREASING, breakpoints)
    if n_inc == 0:
        return ShapeClass(ShapeKind.DEC_THEN_CONST, breakpoints)
    if n_dec == 0:
        return ShapeClass(ShapeKind.CONST_THEN_INC, breakpoints)
    if n_flat == 0:
        return ShapeClass(ShapeKind.DEC_THEN_INC, breakpoints)
    return ShapeClass(ShapeKind.DEC_CONST_INC, breakpoints)


def is_relative_convex(a: SeqLike, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True when some strictly increasing witness makes ``a`` convex.

    Equivalent to the shape test; the all-constant sequence counts (its
    slope sequence is identically zero against any witness).
    """
    return classify_shape(a, tol).variant is not ShapeKind.NOT_STRICTLY_V_SHAPED


def construct_witness(
    a: SeqLike,
    s: Sequence[float],
    t1: float = 0.0,
    plateau_step: float = 1.0,
    tol: Tolerance = DEFAULT_TOL,
) -> Witness:
    """Build a witness from a slope schedule ``s`` by the slope recursion.

    Starting at ``t1``, each strict step advances by ``(a[i+1]-a[i])/s_k``
    (consuming the next schedule entry, which must be negative on decrease
    steps and positive on increase steps), and each plateau step advances by
    the fixed ``plateau_step``.  The schedule must be strictly increasing and
    have exactly one entry per strict step.  The result's slope sequence is
    ``s`` interleaved with zeros on the plateau, hence non-decreasing.
    """
    seq = RealSeq.of(a)
    shape = classify_shape(seq, tol)
    if shape.variant is ShapeKind.NOT_STRICTLY_V_SHAPED:
        raise ShapeError("sequence is not strictly V-shaped; no witness exists")
    if not plateau_step > tol.abs:
        raise ValueError(f"plateau_step must exceed the strictness tolerance, got {plateau_step!r}")
    sched = tuple(float(v) for v in s)
    for k in range(len(sched) - 1):
        if not sched[k + 1] > sched[k]:
            raise MonotoneError(
                f"slope schedule not strictly increasing at entry {k + 2}"
            )
    t = [float(t1)]
    k = 0
    for i in range(len(seq) - 1):
        d = seq[i + 1] - seq[i]
        if abs(d) <= tol.abs:
            t.append(t[-1] + plateau_step)
            continue
        if k >= len(sched):
            raise LengthMismatch(
                f"slope schedule exhausted at step {i + 1}: need one entry per strict step"
            )
        sk = sched[k]
        if d > 0 and not sk > 0:
            raise SignError(f"schedule entry {k + 1} = {sk!r} must be positive on an increase step")
        if d < 0 and not sk < 0:
            raise SignError(f"schedule entry {k + 1} = {sk!r} must be negative on a decrease step")
        t.append(t[-1] + d / sk)
        k += 1
    if k != len(sched):
        raise LengthMismatch(
            f"slope schedule has {len(sched) - k} unused entries; need one per strict step"
        )
    return Witness.of(t, tol)


def _linspace(lo: float, hi: float, count: int) -> list[float]:
    # endpoints bit-exact
    pts = [lo + (hi - lo) * j / (count - 1) for j in range(count)]
    pts[0] = lo
    pts[-1] = hi
    return pts


def _subdivide_increasing(vals: Sequence[float], lo: float, hi: float) -> list[float]:
    """Witness for a strictly increasing segment with t[0]=lo, t[-1]=hi exact.

    Slopes are chosen as the midpoint of the admissible interval
    (previous slope, remaining-rise / remaining-room); when the plain
    midpoint would already use up the room before the last point, the lower
    end is tightened to the single-step feasibility bound d_i / room.
    """
    n = len(vals)
    if n == 2:
        return [lo, hi]
    t = [lo]
    s_prev = 0.0
    for i in range(n - 2):
        room = hi - t[-1]
        d = vals[i + 1] - vals[i]
        cap = (vals[-1] - vals[i]) / room
        feasible = d / room
        mid = 0.5 * (s_prev + cap)
        if mid <= feasible:
            mid = 0.5 * (feasible + cap)
        t.append(t[-1] + d / mid)
        s_prev = mid
    t.append(hi)
    return t


def _subdivide_decreasing(vals: Sequence[float], lo: float, hi: float) -> list[float]:
    # Reverse-and-reflect: the reversed segment is increasing, and the map
    # x -> lo + hi - x reverses a witness while preserving slope monotonicity.
    rev = _subdivide_increasing(list(reversed(vals)), lo, hi)
    t = [lo + hi - x for x in reversed(rev)]
    t[0] = lo
    t[-1] = hi
    return t


def construct_witness_on_interval(
    a: SeqLike,
    alpha: float,
    beta: float,
    tol: Tolerance = DEFAULT_TOL,
) -> Witness:
    """Witness subdividing [alpha, beta]: t[0] = alpha and t[-1] = beta bit-exactly.

    Monotone runs use the midpoint slope policy of :func:`_subdivide_increasing`;
    a V profile splits the interval at its midpoint; plateaus get an even
    subdivision of their share (the interval is split equally among the
    segments present).
    """
    seq = RealSeq.of(a)
    alpha = float(alpha)
    beta = float(beta)
    if not alpha < beta:
        raise IntervalError(f"need alpha < beta, got [{alpha!r}, {beta!r}]")
    shape = classify_shape(seq, tol)
    kind = shape.variant
    if kind is ShapeKind.NOT_STRICTLY_V_SHAPED:
        raise ShapeError("sequence is not strictly V-shaped; no witness exists")
    vals = seq.values
    n = len(vals)
    if kind is ShapeKind.CONSTANT:
        return Witness.of(_linspace(alpha, beta, n), tol)
    if kind is ShapeKind.STRICTLY_INCREASING:
        return Witness.of(_subdivide_increasing(vals, alpha, beta), tol)
    if kind is ShapeKind.STRICTLY_DECREASING:
        return Witness.of(_subdivide_decreasing(vals, alpha, beta), tol)

    m, ell = shape.breakpoints
    i_min = m - 1          # 0-based start of the minimal block
    j_min = i_min + ell    # 0-based end of the minimal block
    nseg = (1 if i_min > 0 else 0) + (1 if ell > 0 else 0) + (1 if j_min < n - 1 else 0)
    cuts = _linspace(alpha, beta, nseg + 1)
    t: list[float] = []
    k = 0
    if i_min > 0:
        t.extend(_subdivide_decreasing(vals[: i_min + 1], cuts[k], cuts[k + 1]))
        k += 1
    if ell > 0:
        seg = _linspace(cuts[k], cuts[k + 1], ell + 1)
        t.extend(seg if not t else seg[1:])
        k += 1
    if j_min < n - 1:
        seg = _subdivide_increasing(vals[j_min:], cuts[k], cuts[k + 1])
        t.extend(seg if not t else seg[1:])
    return Witness.of(t, tol)
