"""Event detection over a quench time series and the zero/crossing taxonomy.

At finite size the rate function is analytic, so transitions show up as
crossings between rate components: an event is recorded whenever the
dominant component switches between consecutive samples, with the time
refined by the linear root of the component difference.  Order-parameter
zeros and local rate minima get the same bracket-plus-interpolation
treatment, and `classify` pairs zeros with crossings: for half-integer
manifolds a zero should sit on the crossing between the two smallest-|m_z|
vacua; for integer manifolds it should sit midway between the crossings
into and out of the m_z = 0 vacuum.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .model import SpinValue
from .series import QuenchTimeSeries

DQPT_CROSSING = "dqpt_crossing"
OP_ZERO = "op_zero"
RR_LOCAL_MIN = "rr_local_min"

COINCIDES_WITH_DQPT = "coincides_with_dqpt"
MIDPOINT_BETWEEN = "midpoint_between"
UNMATCHED = "unmatched"


@dataclass
class Event:
    """One detected feature: kind-specific fields are None when not applicable."""

    kind: str
    time: float
    bracket: tuple[float, float]
    from_mz: Fraction | None = None
    to_mz: Fraction | None = None
    direction: int | None = None
    mz: Fraction | None = None
    value: float | None = None
    major: bool | None = None

    def to_json_dict(self) -> dict:
        out = {
            "kind": self.kind,
            "time": self.time,
            "bracket": [self.bracket[0], self.bracket[1]],
        }
        if self.kind == DQPT_CROSSING:
            out["from_mz"] = str(self.from_mz)
            out["to_mz"] = str(self.to_mz)
        elif self.kind == OP_ZERO:
            out["direction"] = self.direction
        elif self.kind == RR_LOCAL_MIN:
            out["mz"] = str(self.mz)
            out["value"] = self.value
            out["major"] = self.major
        return out


@dataclass
class Pairing:
    op_zero: Event
    classification: str
    partners: tuple[Event, ...] = ()
    time_discrepancy: float | None = None

    def to_json_dict(self) -> dict:
        return {
            "op_zero_time": self.op_zero.time,
            "classification": self.classification,
            "partner_times": [p.time for p in self.partners],
            "time_discrepancy": self.time_discrepancy,
        }


@dataclass
class CoincidenceReport:
    dqpts: list[Event]
    op_zeros: list[Event]
    pairings: list[Pairing]


def _dominance_chain(a: Fraction, b: Fraction) -> list[tuple[Fraction, Fraction]]:
    """Adjacent vacuum pairs stepping from a to b in unit m_z increments."""
    step = 1 if b > a else -1
    chain = [a]
    while chain[-1] != b:
        chain.append(chain[-1] + step)
    return list(zip(chain[:-1], chain[1:]))


def find_dqpts(series: QuenchTimeSeries, tol_deg: float = 0.0) -> list[Event]:
    """Crossing events wherever the dominant rate component switches.

    The event time is the root of the linear interpolant of the component
    difference on the bracketing sample interval.  A switch that jumps over
    vacua emits one event per adjacent pair in the dominance chain.  A
    switch involving a component that is infinite at either endpoint is
    dominance by appearance, not a crossing, and is suppressed with a
    warning.
    """
    times, argmin = series.times, series.argmin_mz
    events: list[Event] = []
    for i in range(len(times) - 1):
        a, b = argmin[i], argmin[i + 1]
        if a is None or b is None or a == b:
            continue
        t_lo, t_hi = float(times[i]), float(times[i + 1])
        width = t_hi - t_lo
        for u, v in _dominance_chain(a, b):
            lu, lv = series.component(u), series.component(v)
            corner = np.array([lu[i], lu[i + 1], lv[i], lv[i + 1]])
            if not np.all(np.isfinite(corner)):
                warnings.warn(
                    f"argmin switch {u}->{v} in [{t_lo:g}, {t_hi:g}] involves an "
                    "orthogonal component (dominance by appearance); no crossing emitted",
                    stacklevel=2,
                )
                continue
            d0 = float(lu[i] - lv[i])
            d1 = float(lu[i + 1] - lv[i + 1])
            if abs(d0 - d1) <= tol_deg or d0 == d1:
                t_star = t_lo + 0.5 * width
            else:
                t_star = t_lo + width * d0 / (d0 - d1)
                t_star = min(max(t_star, t_lo), t_hi)
            events.append(
                Event(DQPT_CROSSING, t_star, (t_lo, t_hi), from_mz=u, to_mz=v)
            )
    events.sort(key=lambda e: (e.time, e.bracket))
    return events


def find_op_zeros(series: QuenchTimeSeries) -> list[Event]:
    """Sign changes of the flux; an exact grid zero attaches to the next interval.

    `direction` is +1 for a -- to + crossing and -1 for the reverse.  An exact
    zero at the final sample has no following interval and is dropped.
    """
    times, flux = series.times, series.flux
    events: list[Event] = []
    for i in range(len(times) - 1):
        e0, e1 = float(flux[i]), float(flux[i + 1])
        t_lo, t_hi = float(times[i]), float(times[i + 1])
        if e0 == 0.0:
            if e1 == 0.0:
                continue  # flat zero stretch: no crossing
            events.append(
                Event(OP_ZERO, t_lo, (t_lo, t_hi), direction=1 if e1 > 0 else -1)
            )
        elif e0 * e1 < 0.0:
            t_star = t_lo + (t_hi - t_lo) * e0 / (e0 - e1)
            events.append(
                Event(OP_ZERO, t_star, (t_lo, t_hi), direction=1 if e1 > 0 else -1)
            )
    return events


def find_rr_minima(series: QuenchTimeSeries) -> list[Event]:
    """Local minima of the full rate function via the three-point test.

    Interior strict minima get a quadratic-interpolated time and value;
    exact-tie plateaus resolve to their leftmost point with a warning.
    Labelled major when the dominant vacuum is extreme (|m_z| = S).
    """
    times, lam = series.times, series.lambda_min
    s_mag = series.spin_magnitude
    events: list[Event] = []
    n = len(times)
    for i in range(1, n - 1):
        l0, l1, l2 = float(lam[i - 1]), float(lam[i]), float(lam[i + 1])
        if not np.all(np.isfinite([l0, l1, l2])):
            continue
        if not (l0 > l1):
            continue
        t_i = float(times[i])
        if l1 < l2:
            denom = l0 - 2.0 * l1 + l2
            t_star = t_i + 0.5 * (times[i + 1] - times[i]) * (l0 - l2) / denom
            v_star = l1 - (l0 - l2) ** 2 / (8.0 * denom)
            bracket = (
                (t_i, float(times[i + 1]))
                if t_star >= t_i
                else (float(times[i - 1]), t_i)
            )
            mz = series.argmin_mz[i]
            events.append(
                Event(
                    RR_LOCAL_MIN,
                    t_star,
                    bracket,
                    mz=mz,
                    value=v_star,
                    major=(mz is not None and abs(mz) == s_mag),
                )
            )
        elif l1 == l2:
            # plateau: confirm it eventually rises, then keep the leftmost point
            j = i + 1
            while j + 1 < n and float(lam[j + 1]) == l1:
                j += 1
            if j + 1 < n and float(lam[j + 1]) > l1:
                warnings.warn(
                    f"rate-function plateau at t={t_i:g}; leftmost point wins",
                    stacklevel=2,
                )
                mz = series.argmin_mz[i]
                events.append(
                    Event(
                        RR_LOCAL_MIN,
                        t_i,
                        (t_i, float(times[i + 1])),
                        mz=mz,
                        value=l1,
                        major=(mz is not None and abs(mz) == s_mag),
                    )
                )
    return events


def _nearest(target: float, candidates: list, key) -> tuple[object, float] | None:
    best = None
    for c in candidates:
        d = abs(key(c) - target)
        if best is None or d < best[1]:
            best = (c, d)
    return best


def classify(
    dqpts: list[Event],
    op_zeros: list[Event],
    spin: SpinValue,
    window: float,
    midpoint_frac: float = 0.15,
) -> CoincidenceReport:
    """Pair each flux zero with crossing events according to manifold parity.

    Half-integer S: a zero coincides with a (1/2 <-> -1/2) crossing if one
    lies within `window`.  Integer S: a zero is classified as the midpoint
    between the crossings into and out of m_z = 0 dominance when it deviates
    from their midpoint by less than `midpoint_frac` of their separation.
    The nearest-candidate time discrepancy is always reported.
    """
    dqpts = sorted(dqpts, key=lambda e: e.time)
    op_zeros = sorted(op_zeros, key=lambda e: e.time)
    pairings: list[Pairing] = []

    if spin.twice_s % 2 == 1:
        half = Fraction(1, 2)
        swaps = [d for d in dqpts if {d.from_mz, d.to_mz} == {half, -half}]
        for zero in op_zeros:
            found = _nearest(zero.time, swaps, key=lambda d: d.time)
            if found is None:
                pairings.append(Pairing(zero, UNMATCHED))
                continue
            dqpt, disc = found
            label = COINCIDES_WITH_DQPT if disc < window else UNMATCHED
            pairings.append(Pairing(zero, label, (dqpt,), disc))
    else:
        zero_mz = Fraction(0)
        flank_pairs: list[tuple[Event, Event]] = []
        entry: Event | None = None
        for d in dqpts:
            if d.to_mz == zero_mz:
                entry = d
            elif d.from_mz == zero_mz and entry is not None:
                flank_pairs.append((entry, d))
                entry = None
        for zero in op_zeros:
            found = _nearest(
                zero.time, flank_pairs, key=lambda p: 0.5 * (p[0].time + p[1].time)
            )
            if found is None:
                pairings.append(Pairing(zero, UNMATCHED))
                continue
            (a, b), disc = found
            tolerance = midpoint_frac * (b.time - a.time)
            label = MIDPOINT_BETWEEN if disc < tolerance else UNMATCHED
            pairings.append(Pairing(zero, label, (a, b), disc))

    return CoincidenceReport(dqpts=dqpts, op_zeros=op_zeros, pairings=pairings)


def detect_events(series: QuenchTimeSeries) -> list[Event]:
    """All events of every kind, sorted by time."""
    events = find_dqpts(series) + find_op_zeros(series) + find_rr_minima(series)
    events.sort(key=lambda e: (e.time, e.kind))
    return events


def report_to_json(events: list[Event], report: CoincidenceReport) -> dict:
    """events.json payload: the event list plus the pairing report."""
    return {
        "events": [e.to_json_dict() for e in events],
        "pairings": [p.to_json_dict() for p in report.pairings],
    }
