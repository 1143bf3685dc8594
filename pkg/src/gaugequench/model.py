"""Model definition types shared by every stage of the quench pipeline.

Spin and flux quantities are stored as twice-value integers so that
half-integer spins stay exact; conversion to Fraction/float happens only
at the I/O boundary.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

QLM = "qlm"
TSM = "tsm"
MODEL_KINDS = (QLM, TSM)


def parse_halfint(text: str | int | float | Fraction, *, what: str = "value") -> int:
    """Parse a (half-)integer like '3/2', '-1', 1.5 into a twice-value integer."""
    try:
        frac = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"{what} {text!r} is not a half-integer") from exc
    twice = frac * 2
    if twice.denominator != 1:
        raise ValueError(f"{what} {text!r} must be an integer or half-odd-integer")
    return int(twice)


def halfint_str(twice: int) -> str:
    """Render a twice-value integer as an exact fraction string ('3/2', '-1', '0')."""
    return str(Fraction(twice, 2))


@dataclass(frozen=True, order=True)
class SpinValue:
    """Link spin magnitude S, stored as 2S so S=1/2, 1, 3/2, ... are all exact."""

    twice_s: int

    def __post_init__(self):
        if self.twice_s < 1:
            raise ValueError(f"twice_s must be >= 1, got {self.twice_s}")

    @classmethod
    def parse(cls, text) -> "SpinValue":
        return cls(parse_halfint(text, what="spin"))

    @property
    def s(self) -> Fraction:
        return Fraction(self.twice_s, 2)

    @property
    def link_dim(self) -> int:
        """Local link dimension 2S+1."""
        return self.twice_s + 1

    def twice_link_values(self) -> range:
        """All link eigenvalues in twice-units, ascending: -2S, -2S+2, ..., 2S."""
        return range(-self.twice_s, self.twice_s + 1, 2)

    def holds(self, twice_m: int) -> bool:
        """Whether twice_m is a valid link eigenvalue (range and parity)."""
        return abs(twice_m) <= self.twice_s and (twice_m - self.twice_s) % 2 == 0

    def __str__(self):
        return halfint_str(self.twice_s)


@dataclass(frozen=True)
class ModelSpec:
    """One quench experiment: chain geometry, couplings, and initial vacuum.

    ``length`` counts matter sites (= links, periodic chain) and must be even
    so the two-site vacuum unit cell tiles the ring.  ``twice_initial_mz``
    labels the vacuum the system starts in.
    """

    spin: SpinValue
    length: int
    j: float = 1.0
    mu: float = 0.0
    kappa: float = 0.0
    kind: str = QLM
    twice_initial_mz: int | None = None

    def __post_init__(self):
        if self.length < 2 or self.length % 2 != 0:
            raise ValueError(f"length must be an even integer >= 2, got {self.length}")
        if self.kind not in MODEL_KINDS:
            raise ValueError(f"kind must be one of {MODEL_KINDS}, got {self.kind!r}")
        if self.twice_initial_mz is None:
            # default to the extreme vacuum with positive flux
            object.__setattr__(self, "twice_initial_mz", self.spin.twice_s)
        if not self.spin.holds(self.twice_initial_mz):
            raise ValueError(
                f"initial vacuum m_z={halfint_str(self.twice_initial_mz)} invalid for "
                f"S={self.spin}: need |m_z| <= S with matching parity"
            )

    @property
    def initial_mz(self) -> Fraction:
        return Fraction(self.twice_initial_mz, 2)
