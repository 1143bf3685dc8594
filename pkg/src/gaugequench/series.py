"""Uniform-grid quench time series and its CSV wire format.

CSV schema (header mandatory, one row per sample):

    t, lambda_min, argmin_mz, lambda_<mz> ... (mz descending), flux,
    condensate, energy, norm

Floats carry 17 significant digits, infinities are the literal string
"inf", and m_z labels are exact fraction strings like "3/2".
"""

from __future__ import annotations

import math
import os
import tempfile
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .model import ModelSpec
from .observables import ObservableSample, RateComponents


def fmt(x: float) -> str:
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.17g}"


def _parse_float(text: str) -> float:
    if text == "inf":
        return math.inf
    if text == "-inf":
        return -math.inf
    return float(text)


@dataclass(eq=False)
class QuenchTimeSeries:
    """Sampled rate components plus local observables on a strict uniform grid."""

    times: np.ndarray
    mz_values: list[Fraction]  # descending
    lambdas: np.ndarray  # shape (n_times, n_mz), inf marks orthogonality
    lambda_min: np.ndarray
    argmin_mz: list[Fraction | None]
    flux: np.ndarray
    condensate: np.ndarray
    energy: np.ndarray
    norm: np.ndarray
    model: ModelSpec | None = None

    def __post_init__(self):
        if len(self.times) == 0:
            raise ValueError("series must contain at least the t=0 sample")
        if np.any(np.diff(self.times) <= 0):
            raise ValueError("sample times must be strictly increasing")

    def __len__(self):
        return len(self.times)

    @property
    def dt(self) -> float:
        if len(self.times) < 2:
            return 0.0
        return float(self.times[1] - self.times[0])

    @property
    def spin_magnitude(self) -> Fraction:
        """Largest |m_z| in the manifold, i.e. the extreme-vacuum label."""
        return max(abs(mz) for mz in self.mz_values)

    def component(self, mz: Fraction) -> np.ndarray:
        return self.lambdas[:, self.mz_values.index(mz)]

    @classmethod
    def from_samples(
        cls,
        model: ModelSpec | None,
        rates: list[RateComponents],
        locals_: list[ObservableSample],
    ) -> "QuenchTimeSeries":
        if len(rates) != len(locals_) or not rates:
            raise ValueError("rate and observable sample lists must align")
        mz_values = sorted(rates[0].lam, reverse=True)
        lambdas = np.array(
            [[r.lam[mz] for mz in mz_values] for r in rates], dtype=np.float64
        )
        return cls(
            times=np.array([r.time for r in rates], dtype=np.float64),
            mz_values=mz_values,
            lambdas=lambdas,
            lambda_min=np.array([r.lambda_min for r in rates], dtype=np.float64),
            argmin_mz=[r.argmin_mz for r in rates],
            flux=np.array([o.flux for o in locals_], dtype=np.float64),
            condensate=np.array([o.condensate for o in locals_], dtype=np.float64),
            energy=np.array([o.energy for o in locals_], dtype=np.float64),
            norm=np.array([o.norm for o in locals_], dtype=np.float64),
            model=model,
        )

    def header(self, components: bool = True) -> list[str]:
        lam_cols = [f"lambda_{mz}" for mz in self.mz_values] if components else []
        return (
            ["t", "lambda_min", "argmin_mz"]
            + lam_cols
            + ["flux", "condensate", "energy", "norm"]
        )

    def rows(self, components: bool = True):
        for i in range(len(self.times)):
            arg = self.argmin_mz[i]
            lam_cols = [fmt(x) for x in self.lambdas[i]] if components else []
            yield (
                [fmt(self.times[i]), fmt(self.lambda_min[i]), "" if arg is None else str(arg)]
                + lam_cols
                + [
                    fmt(self.flux[i]),
                    fmt(self.condensate[i]),
                    fmt(self.energy[i]),
                    fmt(self.norm[i]),
                ]
            )

    def to_csv(self, path, components: bool = True) -> None:
        """Write atomically: temp file in the target directory, then rename."""
        path = os.fspath(path)
        directory = os.path.dirname(path) or "."
        fd, tmp = tempfile.mkstemp(dir=directory, suffix=".csv.part")
        try:
            with os.fdopen(fd, "w", newline="\n") as fh:
                fh.write(",".join(self.header(components)) + "\n")
                for row in self.rows(components):
                    fh.write(",".join(row) + "\n")
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    @classmethod
    def from_csv(cls, path, model: ModelSpec | None = None) -> "QuenchTimeSeries":
        with open(path) as fh:
            header = fh.readline().strip().split(",")
            expected_prefix = ["t", "lambda_min", "argmin_mz"]
            if header[:3] != expected_prefix:
                raise ValueError(f"unexpected CSV header start: {header[:3]}")
            lam_cols = [h for h in header if h.startswith("lambda_") and h != "lambda_min"]
            mz_values = [Fraction(h.removeprefix("lambda_")) for h in lam_cols]
            rows = [line.rstrip("\n").split(",") for line in fh if line.strip()]
        n_mz = len(mz_values)
        times = np.array([_parse_float(r[0]) for r in rows])
        lambda_min = np.array([_parse_float(r[1]) for r in rows])
        argmin = [Fraction(r[2]) if r[2] else None for r in rows]
        lambdas = np.array(
            [[_parse_float(x) for x in r[3 : 3 + n_mz]] for r in rows]
        ).reshape(len(rows), n_mz)
        tail = np.array([[_parse_float(x) for x in r[3 + n_mz :]] for r in rows])
        return cls(
            times=times,
            mz_values=mz_values,
            lambdas=lambdas,
            lambda_min=lambda_min,
            argmin_mz=argmin,
            flux=tail[:, 0],
            condensate=tail[:, 1],
            energy=tail[:, 2],
            norm=tail[:, 3],
            model=model,
        )
