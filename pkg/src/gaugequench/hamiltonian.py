"""Sparse Hamiltonians for the link-model family, restricted to the physical basis.

Both model kinds share the diagonal (mass and electric-field terms) and the
pair-hopping structure; they differ only in the link-raising amplitude:

    qlm:  J * sqrt(S(S+1) - m(m+1)) / (2 sqrt(S(S+1)))   for  m -> m+1
    tsm:  J / 2                                           (unit raising)

All stored amplitudes are real; Hermitian completion of the strictly upper
triangle is implicit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .basis import BasisState, PhysicalBasis
from .model import QLM, TSM, ModelSpec


@dataclass(eq=False)
class SparseHamiltonian:
    """Real symmetric sparse matrix over a PhysicalBasis.

    `rows`, `cols`, `vals` hold the strictly upper triangle once (row < col);
    the matrix content is immutable after construction.
    """

    model: ModelSpec
    dim: int
    diagonal: np.ndarray
    rows: np.ndarray
    cols: np.ndarray
    vals: np.ndarray
    _csr: sp.csr_matrix | None = field(default=None, repr=False)

    def matrix(self) -> sp.csr_matrix:
        """Full Hermitian CSR matrix (cached)."""
        if self._csr is None:
            upper = sp.coo_matrix(
                (self.vals, (self.rows, self.cols)), shape=(self.dim, self.dim)
            )
            full = upper + upper.T + sp.diags(self.diagonal)
            self._csr = full.tocsr()
        return self._csr

    def apply(self, v: np.ndarray) -> np.ndarray:
        """H @ v with fixed row-major accumulation (CSR matvec)."""
        if v.shape != (self.dim,):
            raise ValueError(f"vector has shape {v.shape}, expected ({self.dim},)")
        return self.matrix() @ v

    def expectation(self, v: np.ndarray) -> float:
        return float(np.vdot(v, self.apply(v)).real)

    def scaled(self, factor: float) -> "SparseHamiltonian":
        """New Hamiltonian factor*H (used e.g. for reversed-time evolution)."""
        return SparseHamiltonian(
            model=self.model,
            dim=self.dim,
            diagonal=factor * self.diagonal,
            rows=self.rows,
            cols=self.cols,
            vals=factor * self.vals,
        )

    def dump_triplets(self, path) -> None:
        """Debug dump: one 'row col value' line per stored entry, 17 sig digits."""
        entries = [(int(i), int(i), d) for i, d in enumerate(self.diagonal) if d != 0.0]
        entries += [
            (int(r), int(c), float(v))
            for r, c, v in zip(self.rows, self.cols, self.vals)
        ]
        entries.sort()
        with open(path, "w") as fh:
            for r, c, v in entries:
                fh.write(f"{r} {c} {v:.17g}\n")


def _build(basis: PhysicalBasis, kind: str) -> SparseHamiltonian:
    model = basis.model
    if model.kind != kind:
        raise ValueError(f"basis was enumerated for kind={model.kind!r}, not {kind!r}")
    spin, L = model.spin, model.length
    ts = spin.twice_s
    ss4 = ts * (ts + 2)  # 4*S(S+1), so S(S+1) = ss4/4

    diagonal = np.empty(basis.dim, dtype=np.float64)
    for b, state in enumerate(basis.states):
        mass = model.mu * (2 * state.occupation() - L)
        field_sq = sum(tl * tl for tl in state.twice_links) / 4.0
        diagonal[b] = mass + 0.5 * model.kappa**2 * field_sq

    if kind == QLM:
        # <m+1|s+|m> / sqrt(S(S+1)) in twice-units
        def amp(tm: int) -> float:
            return model.j * math.sqrt((ss4 - tm * (tm + 2)) / ss4) / 2.0

    else:
        def amp(tm: int) -> float:
            return model.j / 2.0

    offdiag: dict[tuple[int, int], float] = {}
    for b, state in enumerate(basis.states):
        matter, links = state.matter, state.twice_links
        for i in range(L):
            k = (i + 1) % L
            if matter[i] == 1 and matter[k] == 1 and links[i] + 2 <= ts:
                new_matter = list(matter)
                new_matter[i] = new_matter[k] = 0
                new_links = list(links)
                new_links[i] += 2
                c = basis.index[BasisState(tuple(new_matter), tuple(new_links))]
                key = (b, c) if b < c else (c, b)
                offdiag[key] = offdiag.get(key, 0.0) + amp(links[i])

    keys = sorted(offdiag)
    rows = np.array([k[0] for k in keys], dtype=np.intp)
    cols = np.array([k[1] for k in keys], dtype=np.intp)
    vals = np.array([offdiag[k] for k in keys], dtype=np.float64)
    return SparseHamiltonian(
        model=model, dim=basis.dim, diagonal=diagonal, rows=rows, cols=cols, vals=vals
    )


def build_qlm(basis: PhysicalBasis) -> SparseHamiltonian:
    """Link-model Hamiltonian with spin-ladder hopping amplitudes."""
    return _build(basis, QLM)


def build_tsm(basis: PhysicalBasis) -> SparseHamiltonian:
    """Truncated variant: unit link-raising amplitude, same diagonal."""
    return _build(basis, TSM)


def build_hamiltonian(basis: PhysicalBasis) -> SparseHamiltonian:
    return _build(basis, basis.model.kind)


def apply(h: SparseHamiltonian, v: np.ndarray) -> np.ndarray:
    """H @ v; dimension-checked."""
    return h.apply(v)
