"""Finitely described time scales (nonempty closed subsets of the reals).

A time scale here is a finite union of four component kinds:

* ``Interval(lo, hi)``: the closed interval [lo, hi] (endpoints may be
  infinite when built through the API, though not through the text form),
* ``FinitePoints(values)``: an explicit finite set,
* ``UniformGrid(start, stop, step)``: ``start + k*step`` for
  ``k = 0 .. floor((stop - start)/step)``,
* ``GeometricGrid(q, k_min, k_max, include_zero, sign)``:
  ``sign * q**k`` for ``k = k_min .. k_max``, optionally together with 0.

The jump operators are the usual ones: ``sigma(t)`` is the next scale point
at or after ``t`` (``inf {s in T : s > t}``, with ``sigma(max T) = max T``)
and ``rho(t)`` the previous one.  All geometric decisions snap the queried
real to the nearest scale member first, within an absolute tolerance that is
stored on the scale (default ``1e-12``).  Gaps at or below that tolerance are
classified as dense; this is what lets a geometric grid whose tail drops
below the tolerance stand in for a genuine accumulation point.

Scales are immutable.  Construction normalizes the component list: adjacent
or overlapping intervals are merged, discrete points covered by an interval
are absorbed, discrete components that share values are fused, and members
closer together than the snap tolerance are coalesced (the representation
cannot tell them apart at the documented tolerance).  Normalizing a
normalized scale is the identity.
"""

from __future__ import annotations

import bisect
import enum
import json
import math
from dataclasses import dataclass, field

from .errors import (
    InsufficientPoints,
    PointNotInScale,
    SideNotDense,
    ValidationError,
)

__all__ = [
    "DEFAULT_SNAP_TOL",
    "ApproachSide",
    "PointClass",
    "DomainMembership",
    "Interval",
    "FinitePoints",
    "UniformGrid",
    "GeometricGrid",
    "TimeScale",
]

#: Absolute tolerance used to snap queried reals onto scale members and to
#: separate "dense" from "scattered" gaps.  Configurable per scale.
DEFAULT_SNAP_TOL = 1e-12

# Guard for uniform grids: a step this close to the snap tolerance would make
# membership ambiguous.
_MIN_STEP_FACTOR = 4.0


class ApproachSide(enum.Enum):
    """Which side of a point a limit is taken from."""

    LEFT = "left"
    RIGHT = "right"
    BOTH = "both"


@dataclass(frozen=True)
class PointClass:
    """Density classification of a scale point on each side."""

    left_dense: bool
    right_dense: bool

    @property
    def left_scattered(self) -> bool:
        return not self.left_dense

    @property
    def right_scattered(self) -> bool:
        return not self.right_dense

    @property
    def dense(self) -> bool:
        return self.left_dense and self.right_dense

    @property
    def isolated(self) -> bool:
        return not (self.left_dense or self.right_dense)

    def __str__(self) -> str:
        left = "dense" if self.left_dense else "scattered"
        right = "dense" if self.right_dense else "scattered"
        return f"left-{left}, right-{right}"


@dataclass(frozen=True)
class DomainMembership:
    """Whether a point belongs to the domains of the three derivative kinds.

    The nabla derivative is undefined at a finite scattered minimum, the
    delta derivative at a finite scattered maximum, and the symmetric
    derivative requires both.
    """

    in_scale: bool
    in_nabla_domain: bool
    in_delta_domain: bool

    @property
    def in_symmetric_domain(self) -> bool:
        return self.in_nabla_domain and self.in_delta_domain


def _require_finite_number(name: str, x) -> float:
    try:
        xf = float(x)
    except (TypeError, ValueError):
        raise ValidationError(f"{name} must be a real number, got {x!r}")
    if math.isnan(xf):
        raise ValidationError(f"{name} must not be NaN")
    return xf


def _fmt_num(x: float) -> str:
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


@dataclass(frozen=True)
class Interval:
    """The closed interval [lo, hi].  lo == hi is allowed and degenerates to
    a single point during normalization."""

    lo: float
    hi: float

    def __post_init__(self):
        lo = _require_finite_number("interval lo", self.lo)
        hi = _require_finite_number("interval hi", self.hi)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        if lo > hi:
            raise ValidationError(f"interval requires lo <= hi, got [{lo}, {hi}]")
        if math.isinf(lo) and lo > 0 or math.isinf(hi) and hi < 0:
            raise ValidationError("interval bounds out of order at infinity")

    @property
    def inf_value(self) -> float:
        return self.lo

    @property
    def sup_value(self) -> float:
        return self.hi

    @property
    def is_discrete(self) -> bool:
        return False

    def nearest(self, t: float) -> float:
        return min(max(t, self.lo), self.hi)

    def first_above(self, t: float, tol: float):
        # Returns t itself while strictly inside: the points above t come
        # arbitrarily close, so the infimum of {s > t} is t.
        if t < self.lo:
            return self.lo
        if t < self.hi:
            return t
        return None

    def last_below(self, t: float, tol: float):
        if t > self.hi:
            return self.hi
        if t > self.lo:
            return t
        return None

    def members_above(self, t: float, tol: float, limit: int) -> list[float]:
        # Only the left endpoint is an enumerable member from outside.
        return [self.lo] if t < self.lo else []

    def members_below(self, t: float, tol: float, limit: int) -> list[float]:
        return [self.hi] if t > self.hi else []

    def to_json_dict(self) -> dict:
        def enc(x):
            return _fmt_num(x) if math.isinf(x) else x

        return {"kind": "interval", "lo": enc(self.lo), "hi": enc(self.hi)}

    def describe(self) -> str:
        return f"interval({_fmt_num(self.lo)},{_fmt_num(self.hi)})"


class _SortedDiscrete:
    """Shared bisect-based lookups for components that store their members."""

    _members: tuple

    @property
    def inf_value(self) -> float:
        return self._members[0]

    @property
    def sup_value(self) -> float:
        return self._members[-1]

    @property
    def is_discrete(self) -> bool:
        return True

    def nearest(self, t: float) -> float:
        ms = self._members
        i = bisect.bisect_left(ms, t)
        if i == 0:
            return ms[0]
        if i == len(ms):
            return ms[-1]
        lo, hi = ms[i - 1], ms[i]
        # ties resolve to the lower member
        return lo if (t - lo) <= (hi - t) else hi

    def first_above(self, t: float, tol: float):
        ms = self._members
        i = bisect.bisect_right(ms, t)
        return ms[i] if i < len(ms) else None

    def last_below(self, t: float, tol: float):
        ms = self._members
        i = bisect.bisect_left(ms, t)
        return ms[i - 1] if i > 0 else None

    def members_above(self, t: float, tol: float, limit: int) -> list[float]:
        ms = self._members
        i = bisect.bisect_right(ms, t)
        return list(ms[i : i + limit])

    def members_below(self, t: float, tol: float, limit: int) -> list[float]:
        ms = self._members
        i = bisect.bisect_left(ms, t)
        return list(ms[max(0, i - limit) : i])

    def iter_members(self):
        return iter(self._members)


@dataclass(frozen=True)
class FinitePoints(_SortedDiscrete):
    """An explicit finite point set, stored sorted with exact duplicates
    removed."""

    values: tuple

    def __init__(self, values):
        vals = sorted({_require_finite_number("point", v) for v in values})
        if not vals:
            raise ValidationError("points component requires at least one point")
        for v in vals:
            if math.isinf(v):
                raise ValidationError("points must be finite")
        object.__setattr__(self, "values", tuple(vals))

    @property
    def _members(self) -> tuple:
        return self.values

    def to_json_dict(self) -> dict:
        return {"kind": "points", "points": list(self.values)}

    def describe(self) -> str:
        return "points(" + ",".join(_fmt_num(v) for v in self.values) + ")"


@dataclass(frozen=True)
class UniformGrid:
    """start + k*step for k = 0 .. floor((stop - start)/step).

    The stored stop is canonicalized to the last actual member, so two grids
    describing the same point set compare equal.
    """

    start: float
    stop: float
    step: float

    def __post_init__(self):
        start = _require_finite_number("grid start", self.start)
        stop = _require_finite_number("grid stop", self.stop)
        step = _require_finite_number("grid step", self.step)
        if math.isinf(start) or math.isinf(stop) or math.isinf(step):
            raise ValidationError("grid parameters must be finite")
        if step <= 0:
            raise ValidationError(f"grid step must be positive, got {step}")
        if step <= _MIN_STEP_FACTOR * DEFAULT_SNAP_TOL:
            raise ValidationError(
                f"grid step {step} is too close to the membership tolerance"
            )
        if stop < start:
            raise ValidationError(f"grid requires start <= stop, got {start} > {stop}")
        count = int(math.floor((stop - start + DEFAULT_SNAP_TOL) / step)) + 1
        object.__setattr__(self, "start", start)
        object.__setattr__(self, "step", step)
        object.__setattr__(self, "stop", start + (count - 1) * step)
        object.__setattr__(self, "_count", count)

    @property
    def count(self) -> int:
        return self._count  # type: ignore[attr-defined]

    @property
    def inf_value(self) -> float:
        return self.start

    @property
    def sup_value(self) -> float:
        return self.stop

    @property
    def is_discrete(self) -> bool:
        return True

    def _member(self, k: int) -> float:
        return self.start + k * self.step

    def _index_of(self, t: float, tol: float):
        k = int(round((t - self.start) / self.step))
        if 0 <= k < self.count and abs(t - self._member(k)) <= tol:
            return k
        return None

    def nearest(self, t: float) -> float:
        k = int(round((t - self.start) / self.step))
        k = min(max(k, 0), self.count - 1)
        return self._member(k)

    def first_above(self, t: float, tol: float):
        k = self._index_of(t, tol)
        if k is None:
            k = int(math.floor((t - self.start) / self.step)) + 1
            k = max(k, 0)
        else:
            k += 1
        return self._member(k) if k < self.count else None

    def last_below(self, t: float, tol: float):
        k = self._index_of(t, tol)
        if k is None:
            k = int(math.ceil((t - self.start) / self.step)) - 1
            k = min(k, self.count - 1)
        else:
            k -= 1
        return self._member(k) if k >= 0 else None

    def members_above(self, t: float, tol: float, limit: int) -> list[float]:
        first = self.first_above(t, tol)
        if first is None:
            return []
        k0 = int(round((first - self.start) / self.step))
        return [self._member(k) for k in range(k0, min(k0 + limit, self.count))]

    def members_below(self, t: float, tol: float, limit: int) -> list[float]:
        last = self.last_below(t, tol)
        if last is None:
            return []
        k0 = int(round((last - self.start) / self.step))
        return [self._member(k) for k in range(max(0, k0 - limit + 1), k0 + 1)]

    def iter_members(self):
        return (self._member(k) for k in range(self.count))

    def to_json_dict(self) -> dict:
        return {
            "kind": "grid",
            "start": self.start,
            "stop": self.stop,
            "step": self.step,
        }

    def describe(self) -> str:
        return (
            f"grid({_fmt_num(self.start)},{_fmt_num(self.stop)},{_fmt_num(self.step)})"
        )


@dataclass(frozen=True)
class GeometricGrid(_SortedDiscrete):
    """sign * q**k for k = k_min .. k_max, plus 0 when include_zero is set.

    q must exceed 1.  With include_zero and a tail q**k_min at or below the
    snap tolerance, the origin behaves as a dense (accumulation) point.
    """

    q: float
    k_min: int
    k_max: int
    include_zero: bool = False
    sign: int = 1

    def __post_init__(self):
        q = _require_finite_number("qgrid q", self.q)
        if q <= 1:
            raise ValidationError(f"qgrid requires q > 1, got {q}")
        if not isinstance(self.k_min, int) or not isinstance(self.k_max, int):
            raise ValidationError("qgrid exponent bounds must be integers")
        if self.k_min > self.k_max:
            raise ValidationError(
                f"qgrid requires k_min <= k_max, got {self.k_min} > {self.k_max}"
            )
        if self.k_max - self.k_min > 100_000:
            raise ValidationError("qgrid exponent range is unreasonably large")
        if self.sign not in (1, -1):
            raise ValidationError(f"qgrid sign must be +1 or -1, got {self.sign}")
        try:
            top = q ** float(self.k_max)
        except OverflowError:
            top = math.inf
        if math.isinf(top):
            raise ValidationError("qgrid largest member overflows")
        object.__setattr__(self, "q", q)
        members = {self.sign * q**k for k in range(self.k_min, self.k_max + 1)}
        if self.include_zero:
            # q**k can underflow to 0.0 for very negative k, so build through
            # a set to keep members strictly increasing.
            members.add(0.0)
        object.__setattr__(self, "_members_cache", tuple(sorted(members)))

    @property
    def _members(self) -> tuple:
        return self._members_cache  # type: ignore[attr-defined]

    def to_json_dict(self) -> dict:
        return {
            "kind": "qgrid",
            "q": self.q,
            "kmin": self.k_min,
            "kmax": self.k_max,
            "zero": self.include_zero,
            "sign": self.sign,
        }

    def describe(self) -> str:
        if self.sign < 0:
            # no text form for mirrored geometric grids; fall back to points
            return "points(" + ",".join(_fmt_num(v) for v in self._members) + ")"
        zero = ",zero" if self.include_zero else ""
        return f"qgrid({_fmt_num(self.q)},{self.k_min},{self.k_max}{zero})"


Component = Interval | FinitePoints | UniformGrid | GeometricGrid


def _coalesce(values: list[float], tol: float) -> list[float]:
    """Sort and merge runs of values closer together than tol, keeping the
    smallest of each run."""
    out: list[float] = []
    for v in sorted(values):
        if out and v - out[-1] <= tol:
            continue
        out.append(v)
    return out


class TimeScale:
    """An immutable, normalized time scale.

    Args:
        components: any iterable of components (order does not matter).
        snap_tol: absolute tolerance for membership snapping and for the
            dense/scattered decision.

    Raises:
        ValidationError: if a component is invalid or the list is empty.
    """

    __slots__ = ("components", "snap_tol", "_intervals", "_inf_scattered", "_sup_scattered")

    def __init__(self, components, snap_tol: float = DEFAULT_SNAP_TOL):
        comps = list(components)
        if not comps:
            raise ValidationError("a time scale needs at least one component")
        if not (0 < snap_tol < 1):
            raise ValidationError(f"snap tolerance out of range: {snap_tol}")
        for c in comps:
            if not isinstance(c, (Interval, FinitePoints, UniformGrid, GeometricGrid)):
                raise ValidationError(f"not a scale component: {c!r}")
        object.__setattr__(self, "snap_tol", float(snap_tol))
        object.__setattr__(self, "components", tuple(self._normalize(comps)))
        object.__setattr__(
            self,
            "_intervals",
            tuple(c for c in self.components if isinstance(c, Interval)),
        )
        inf = self.inf_value
        sup = self.sup_value
        object.__setattr__(
            self,
            "_inf_scattered",
            math.isfinite(inf) and (self._sigma_raw(inf) - inf) > self.snap_tol,
        )
        object.__setattr__(
            self,
            "_sup_scattered",
            math.isfinite(sup) and (sup - self._rho_raw(sup)) > self.snap_tol,
        )

    def __setattr__(self, name, value):
        raise AttributeError("TimeScale is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, TimeScale)
            and self.components == other.components
            and self.snap_tol == other.snap_tol
        )

    def __hash__(self):
        return hash((self.components, self.snap_tol))

    def __repr__(self):
        return f"TimeScale({self.describe()})"

    # -- normalization ----------------------------------------------------

    def _normalize(self, comps: list) -> list:
        tol = self.snap_tol

        intervals: list[Interval] = []
        discretes: list = []
        for c in comps:
            if isinstance(c, Interval):
                if c.lo == c.hi:
                    discretes.append(FinitePoints([c.lo]))
                else:
                    intervals.append(c)
            else:
                discretes.append(c)

        # merge overlapping or touching intervals
        merged: list[Interval] = []
        for iv in sorted(intervals, key=lambda i: (i.lo, i.hi)):
            if merged and iv.lo <= merged[-1].hi + tol:
                if iv.hi > merged[-1].hi:
                    merged[-1] = Interval(merged[-1].lo, iv.hi)
            else:
                merged.append(iv)

        def covered(v: float) -> bool:
            return any(iv.lo - tol <= v <= iv.hi + tol for iv in merged)

        # absorb discrete members covered by an interval
        survivors: list = []
        for c in discretes:
            members = list(c.iter_members())
            kept = [m for m in members if not covered(m)]
            if not kept:
                continue
            if len(kept) == len(members):
                survivors.append(c)
            else:
                survivors.append(FinitePoints(kept))

        # fuse discrete components that share members (within tol); plain
        # FinitePoints are also re-coalesced so near-duplicates collapse
        changed = True
        while changed:
            changed = False
            for i in range(len(survivors)):
                for j in range(i + 1, len(survivors)):
                    a, b = survivors[i], survivors[j]
                    if a.sup_value < b.inf_value - tol or b.sup_value < a.inf_value - tol:
                        continue
                    avals = list(a.iter_members())
                    bvals = list(b.iter_members())
                    if _shares_member(avals, bvals, tol):
                        fused = FinitePoints(_coalesce(avals + bvals, tol))
                        survivors = (
                            survivors[:i]
                            + [fused]
                            + survivors[i + 1 : j]
                            + survivors[j + 1 :]
                        )
                        changed = True
                        break
                if changed:
                    break
        survivors = [
            FinitePoints(_coalesce(list(c.values), tol))
            if isinstance(c, FinitePoints)
            else c
            for c in survivors
        ]

        out = merged + survivors
        out.sort(key=lambda c: (c.inf_value, c.sup_value))
        if not out:
            raise ValidationError("normalization left no components")
        return out

    # -- membership -------------------------------------------------------

    @property
    def inf_value(self) -> float:
        return min(c.inf_value for c in self.components)

    @property
    def sup_value(self) -> float:
        return max(c.sup_value for c in self.components)

    def snap(self, t: float):
        """The exact member nearest to t if one lies within the snap
        tolerance, else None."""
        if not isinstance(t, (int, float)) or not math.isfinite(t):
            return None
        t = float(t)
        best = None
        best_d = math.inf
        for c in self.components:
            cand = c.nearest(t)
            d = abs(cand - t)
            if d < best_d or (d == best_d and (best is None or cand < best)):
                best, best_d = cand, d
        if best is not None and best_d <= self.snap_tol:
            return best
        return None

    def contains(self, t: float) -> bool:
        return self.snap(t) is not None

    def _require_member(self, t: float) -> float:
        ts = self.snap(t)
        if ts is None:
            raise PointNotInScale(f"{t!r} is not a point of {self.describe()}")
        return ts

    # -- jump operators ---------------------------------------------------

    def _sigma_raw(self, ts: float) -> float:
        cands = []
        for c in self.components:
            v = c.first_above(ts, self.snap_tol)
            if v is not None:
                cands.append(v)
        return min(cands) if cands else ts

    def _rho_raw(self, ts: float) -> float:
        cands = []
        for c in self.components:
            v = c.last_below(ts, self.snap_tol)
            if v is not None:
                cands.append(v)
        return max(cands) if cands else ts

    def sigma(self, t: float) -> float:
        """Forward jump: the infimum of scale points after t (t itself at the
        maximum, and at right-dense points)."""
        return self._sigma_raw(self._require_member(t))

    def rho(self, t: float) -> float:
        """Backward jump, mirror of :meth:`sigma`."""
        return self._rho_raw(self._require_member(t))

    def mu(self, t: float) -> float:
        """Forward graininess sigma(t) - t."""
        ts = self._require_member(t)
        return self._sigma_raw(ts) - ts

    def nu(self, t: float) -> float:
        """Backward graininess t - rho(t)."""
        ts = self._require_member(t)
        return ts - self._rho_raw(ts)

    # -- classification ---------------------------------------------------

    def classify(self, t: float) -> PointClass:
        """Dense/scattered classification of each side of t.

        A gap at or below the snap tolerance counts as dense, so the
        convention sigma(max) = max makes the maximum right-dense and the
        minimum left-dense.
        """
        ts = self._require_member(t)
        right = (self._sigma_raw(ts) - ts) <= self.snap_tol
        left = (ts - self._rho_raw(ts)) <= self.snap_tol
        return PointClass(left_dense=left, right_dense=right)

    def domain_membership(self, t: float) -> DomainMembership:
        """Domain flags for the derivative operators at t (see
        :class:`DomainMembership`)."""
        ts = self.snap(t)
        if ts is None:
            return DomainMembership(False, False, False)
        in_nabla = not (self._inf_scattered and ts == self.inf_value)
        in_delta = not (self._sup_scattered and ts == self.sup_value)
        return DomainMembership(True, in_nabla, in_delta)

    # -- limit scaffolding ------------------------------------------------

    def _interval_containing(self, ts: float):
        for iv in self._intervals:
            if iv.lo <= ts <= iv.hi:
                return iv
        return None

    def _discrete_members_near(self, ts: float, side: ApproachSide, limit: int) -> list[float]:
        vals: list[float] = []
        for c in self.components:
            if side is ApproachSide.RIGHT:
                vals.extend(c.members_above(ts, self.snap_tol, limit))
            else:
                vals.extend(c.members_below(ts, self.snap_tol, limit))
        vals = sorted(set(vals))
        if side is ApproachSide.RIGHT:
            return vals[:limit]
        return vals[-limit:]

    def approach_sequence(
        self,
        t: float,
        side: ApproachSide,
        n: int,
        h0: float | None = None,
        ratio: float = 0.5,
    ) -> list[float]:
        """n scale points approaching t monotonically from one side.

        Inside an interval the sequence is geometric, t +/- h*ratio**k with
        h = min(h0, room to the component boundary); the default h0 is
        min(0.1, room)/2.  The sequence is cut short of n once the step
        underflows the float spacing at t, so every returned point is
        distinct from t and from its neighbors.  Where the dense side is
        carried by discrete points (a geometric-grid tail), the actual
        grid members nearest t are returned.  The list is ordered farthest
        first.

        Raises:
            SideNotDense: the requested side of t is scattered.
            InsufficientPoints: the side is dense by convention only, or is
                discrete with fewer than n points.
        """
        if side not in (ApproachSide.LEFT, ApproachSide.RIGHT):
            raise ValueError("side must be LEFT or RIGHT")
        if n < 1:
            raise ValueError("n must be positive")
        if not (0 < ratio < 1):
            raise ValueError("ratio must lie in (0, 1)")
        if h0 is not None and not h0 > 0:
            raise ValueError("h0 must be positive")
        ts = self._require_member(t)
        cls = self.classify(ts)
        dense = cls.right_dense if side is ApproachSide.RIGHT else cls.left_dense
        if not dense:
            raise SideNotDense(f"t={ts} is scattered on the {side.value} side")

        iv = self._interval_containing(ts)
        if iv is not None:
            room = (iv.hi - ts) if side is ApproachSide.RIGHT else (ts - iv.lo)
            if room > self.snap_tol:
                if h0 is None:
                    h0 = min(0.1, room) / 2
                h = min(h0, room)
                sign = 1.0 if side is ApproachSide.RIGHT else -1.0
                out: list[float] = []
                prev = ts
                for k in range(n):
                    s = ts + sign * h * ratio**k
                    if s == ts or s == prev:
                        break
                    out.append(s)
                    prev = s
                return out

        members = self._discrete_members_near(ts, side, n)
        if len(members) < n:
            raise InsufficientPoints(
                f"only {len(members)} scale points on the {side.value} side of {ts}"
            )
        if side is ApproachSide.RIGHT:
            members.reverse()  # farthest first, decreasing toward t
        return members

    def symmetric_pairs(
        self,
        t: float,
        n: int,
        h0: float | None = None,
        ratio: float = 0.5,
    ) -> list[float]:
        """Up to n values h > 0 with both t+h and t-h in the scale,
        decreasing.

        Inside an interval these are geometric steps h*ratio**k; in discrete
        neighborhoods they are the realizable pair distances strictly below
        h0 (so a uniform grid yields its minimal pair).  Fewer than n values
        are returned when the neighborhood runs out of pairs.

        Raises:
            NoSymmetricNeighborhood: no pair exists below the step bound.
        """
        from .errors import NoSymmetricNeighborhood

        if n < 1:
            raise ValueError("n must be positive")
        if not (0 < ratio < 1):
            raise ValueError("ratio must lie in (0, 1)")
        if h0 is not None and not h0 > 0:
            raise ValueError("h0 must be positive")
        ts = self._require_member(t)

        iv = self._interval_containing(ts)
        if iv is not None:
            room = min(ts - iv.lo, iv.hi - ts)
            if room > self.snap_tol:
                if h0 is None:
                    h0 = min(0.1, room) / 2
                h = min(h0, room)
                hs: list[float] = []
                prev_hi = ts
                for k in range(n):
                    step = h * ratio**k
                    hi = ts + step
                    if hi == ts or ts - step == ts or (hs and hi == prev_hi):
                        break
                    hs.append(step)
                    prev_hi = hi
                return hs

        bound = h0 if h0 is not None else 1e-2
        limit = max(8 * n, 64)
        cand: list[float] = []
        for m in self._discrete_members_near(ts, ApproachSide.RIGHT, limit):
            h = m - ts
            if not (self.snap_tol < h < bound):
                continue
            mirror = self.snap(ts - h)
            if mirror is not None:
                cand.append(h)
        for m in self._discrete_members_near(ts, ApproachSide.LEFT, limit):
            h = ts - m
            if not (self.snap_tol < h < bound):
                continue
            mirror = self.snap(ts + h)
            if mirror is not None:
                cand.append(h)
        hs: list[float] = []
        for h in sorted(cand, reverse=True):
            if hs and hs[-1] - h <= self.snap_tol:
                continue
            hs.append(h)
        if not hs:
            raise NoSymmetricNeighborhood(
                f"no h with t+h and t-h both in the scale below h0={bound} at t={ts}"
            )
        return hs[:n]

    # -- enumeration ------------------------------------------------------

    def points_in(self, a: float, b: float, density: float = 33.0) -> list[float]:
        """Representative scale points in [a, b]: all discrete members plus
        interval samples at the given points-per-unit density."""
        if b < a:
            a, b = b, a
        pts: list[float] = []
        for c in self.components:
            if c.is_discrete:
                for m in c.iter_members():
                    if a - self.snap_tol <= m <= b + self.snap_tol:
                        pts.append(m)
            else:
                x = max(c.lo, a)
                y = min(c.hi, b)
                if x > y:
                    continue
                if x == y:
                    pts.append(x)
                    continue
                npts = max(2, int(math.ceil((y - x) * density)) + 1)
                pts.extend(x + j * (y - x) / (npts - 1) for j in range(npts))
        return _coalesce(pts, self.snap_tol)

    # -- serialization ----------------------------------------------------

    def to_json_dict(self) -> dict:
        d = {"components": [c.to_json_dict() for c in self.components]}
        if self.snap_tol != DEFAULT_SNAP_TOL:
            d["snap_tol"] = self.snap_tol
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @classmethod
    def from_json_dict(cls, d: dict) -> "TimeScale":
        if not isinstance(d, dict) or "components" not in d:
            raise ValidationError("scale JSON must be an object with 'components'")
        comps = []
        for cd in d["components"]:
            if not isinstance(cd, dict) or "kind" not in cd:
                raise ValidationError(f"bad component entry: {cd!r}")
            kind = cd["kind"]
            try:
                if kind == "interval":
                    comps.append(Interval(_dec_inf(cd["lo"]), _dec_inf(cd["hi"])))
                elif kind == "points":
                    comps.append(FinitePoints(cd["points"]))
                elif kind == "grid":
                    comps.append(UniformGrid(cd["start"], cd["stop"], cd["step"]))
                elif kind == "qgrid":
                    comps.append(
                        GeometricGrid(
                            cd["q"],
                            int(cd["kmin"]),
                            int(cd["kmax"]),
                            bool(cd.get("zero", False)),
                            int(cd.get("sign", 1)),
                        )
                    )
                else:
                    raise ValidationError(f"unknown component kind {kind!r}")
            except KeyError as exc:
                raise ValidationError(f"component {kind!r} missing field {exc}")
        return cls(comps, snap_tol=float(d.get("snap_tol", DEFAULT_SNAP_TOL)))

    @classmethod
    def from_json(cls, text: str) -> "TimeScale":
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"invalid scale JSON: {exc}")
        return cls.from_json_dict(d)

    def describe(self) -> str:
        """Canonical text form (the scale mini-language where expressible)."""
        parts = [c.describe() for c in self.components]
        if len(parts) == 1:
            return parts[0]
        return "union(" + ",".join(parts) + ")"


def _shares_member(avals: list[float], bvals: list[float], tol: float) -> bool:
    i = j = 0
    while i < len(avals) and j < len(bvals):
        d = avals[i] - bvals[j]
        if abs(d) <= tol:
            return True
        if d < 0:
            i += 1
        else:
            j += 1
    return False


def _dec_inf(x):
    if isinstance(x, str):
        if x == "inf":
            return math.inf
        if x == "-inf":
            return -math.inf
        raise ValidationError(f"bad numeric string {x!r} in scale JSON")
    return x
