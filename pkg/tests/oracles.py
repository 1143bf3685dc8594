"""Independent reference implementations used to pin expected values.

Everything here deliberately avoids the package's construction paths:
basis states come from filtering the full product space, and the reference
Hamiltonian is assembled from Kronecker products over the unconstrained
tensor space.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np
import scipy.sparse as sp

from gaugequench.basis import BasisState
from gaugequench.model import ModelSpec
from gaugequench.series import QuenchTimeSeries


def brute_force_states(model: ModelSpec) -> set[BasisState]:
    """All (matter, links) configurations passing the site constraint, by filter."""
    L = model.length
    vals = np.array(list(model.spin.twice_link_values()), dtype=np.int64)
    link_grid = np.array(list(itertools.product(vals, repeat=L)), dtype=np.int64)
    found: set[BasisState] = set()
    for matter in itertools.product((0, 1), repeat=L):
        ok = np.ones(len(link_grid), dtype=bool)
        for i in range(L):
            ok &= link_grid[:, (i - 1) % L] + link_grid[:, i] + 2 * matter[i] == 0
        for row in link_grid[ok]:
            found.add(BasisState(matter, tuple(int(x) for x in row)))
    return found


def _site_matrices():
    sigma_z = np.diag([-1.0, 1.0])  # order: empty, occupied
    sigma_minus = np.array([[0.0, 1.0], [0.0, 0.0]])  # occupied -> empty
    return sigma_z, sigma_minus


def _link_matrices(twice_s: int):
    d = twice_s + 1
    m = np.arange(-twice_s, twice_s + 1, 2) / 2.0
    sz = np.diag(m)
    s_plus = np.zeros((d, d))
    tau_plus = np.zeros((d, d))
    s = twice_s / 2.0
    for k in range(d - 1):
        s_plus[k + 1, k] = math.sqrt(s * (s + 1) - m[k] * (m[k] + 1))
        tau_plus[k + 1, k] = 1.0
    return sz, s_plus, tau_plus


def dense_reference_hamiltonian(model: ModelSpec) -> tuple[np.ndarray, np.ndarray]:
    """(H_full, physical_mask) on the unconstrained space.

    Tensor slots interleave as (site 0, link 0, site 1, link 1, ...), slot 0
    most significant.  physical_mask flags indices satisfying the site
    constraint everywhere.
    """
    L, ts = model.length, model.spin.twice_s
    d = ts + 1
    s = ts / 2.0
    sigma_z, sigma_minus = _site_matrices()
    sz, s_plus, tau_plus = _link_matrices(ts)
    raiser = s_plus / math.sqrt(s * (s + 1)) if model.kind == "qlm" else tau_plus

    dims = []
    for _ in range(L):
        dims.extend([2, d])
    total = int(np.prod(dims))

    def embed(ops: dict[int, np.ndarray]) -> sp.csr_matrix:
        acc = sp.identity(1, format="csr")
        for slot, dim in enumerate(dims):
            mat = ops.get(slot, np.eye(dim))
            acc = sp.kron(acc, sp.csr_matrix(mat), format="csr")
        return acc

    H = sp.csr_matrix((total, total))
    for j in range(L):
        site, link, nxt = 2 * j, 2 * j + 1, (2 * j + 2) % (2 * L)
        kin = embed({site: sigma_minus, link: raiser, nxt: sigma_minus})
        H = H + 0.5 * model.j * (kin + kin.T)
        H = H + model.mu * embed({site: sigma_z})
        H = H + 0.5 * model.kappa**2 * embed({link: sz @ sz})

    mvals = np.arange(-ts, ts + 1, 2)
    digits = np.array(
        list(np.ndindex(*dims))
    )  # row i = slot digits of full index i
    occ = digits[:, 0::2]
    links = mvals[digits[:, 1::2]]
    mask = np.ones(total, dtype=bool)
    for i in range(L):
        mask &= links[:, (i - 1) % L] + links[:, i] + 2 * occ[:, i] == 0
    return H.toarray(), mask


def decode_full_index(model: ModelSpec, full_index: int) -> BasisState:
    """Slot digits of a full-space index back into a configuration."""
    L, ts = model.length, model.spin.twice_s
    dims = []
    for _ in range(L):
        dims.extend([2, ts + 1])
    digits = np.unravel_index(full_index, dims)
    matter = tuple(int(digits[2 * i]) for i in range(L))
    links = tuple(int(-ts + 2 * digits[2 * i + 1]) for i in range(L))
    return BasisState(matter, links)


def synthetic_series(times, components: dict[Fraction, np.ndarray], flux=None,
                     condensate=None) -> QuenchTimeSeries:
    """Assemble a series from hand-made component curves for detector tests."""
    times = np.asarray(times, dtype=np.float64)
    n = len(times)
    mz_values = sorted(components, reverse=True)
    lambdas = np.column_stack([np.asarray(components[mz], float) for mz in mz_values])
    lambda_min = np.empty(n)
    argmin = []
    for i in range(n):
        row = lambdas[i]
        k = int(np.argmin(row))
        if np.isfinite(row[k]):
            lambda_min[i] = row[k]
            argmin.append(mz_values[k])
        else:
            lambda_min[i] = np.inf
            argmin.append(None)
    zeros = np.zeros(n)
    return QuenchTimeSeries(
        times=times,
        mz_values=mz_values,
        lambdas=lambdas,
        lambda_min=lambda_min,
        argmin_mz=argmin,
        flux=np.asarray(flux, float) if flux is not None else zeros.copy(),
        condensate=np.asarray(condensate, float) if condensate is not None else zeros.copy(),
        energy=zeros.copy(),
        norm=np.ones(n),
    )


def local_minima_times(times: np.ndarray, values: np.ndarray) -> np.ndarray:
    """Grid times of strict three-point local minima (no interpolation)."""
    out = [
        times[i]
        for i in range(1, len(values) - 1)
        if values[i - 1] > values[i] < values[i + 1]
    ]
    return np.array(out)
