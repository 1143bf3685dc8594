"""Enumeration and indexing of the gauge-invariant sector on a periodic chain.

A configuration is a matter bit string n_j in {0,1} plus link eigenvalues
l_j in {-S,...,S} (link j joins sites j and j+1 mod L, 0-based).  The local
constraint kept here is

    l_{j-1} + l_j + n_j = 0   at every site j,

so the whole chain is fixed by one seed link and the matter string, and a
closed chain must also satisfy the wrap-around constraint.  Link values are
twice-integers internally.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .model import ModelSpec, SpinValue, halfint_str, parse_halfint


@dataclass(frozen=True)
class BasisState:
    """One gauge-invariant configuration: matter occupations and link values."""

    matter: tuple[int, ...]
    twice_links: tuple[int, ...]

    def __post_init__(self):
        if len(self.matter) != len(self.twice_links):
            raise ValueError("matter and links must have equal length")

    @property
    def length(self) -> int:
        return len(self.matter)

    def link(self, i: int) -> Fraction:
        return Fraction(self.twice_links[i % self.length], 2)

    def matter_key(self) -> int:
        """Matter bit string read as a big-endian integer (site 0 most significant)."""
        key = 0
        for bit in self.matter:
            key = (key << 1) | bit
        return key

    def twice_staggered_flux(self) -> int:
        """Sum of (-1)^i * 2*l_i over links; link 0 carries the + sign."""
        return sum(tl if i % 2 == 0 else -tl for i, tl in enumerate(self.twice_links))

    def occupation(self) -> int:
        return sum(self.matter)

    def translated(self, shift: int) -> "BasisState":
        """Shift sites and links together by `shift` (site i' = i + shift)."""
        L = self.length
        shift %= L
        return BasisState(
            tuple(self.matter[(i - shift) % L] for i in range(L)),
            tuple(self.twice_links[(i - shift) % L] for i in range(L)),
        )

    def __str__(self):
        cells = []
        for n, tl in zip(self.matter, self.twice_links):
            cells.append(f"{2 * n - 1}")
            cells.append(halfint_str(tl))
        return "|" + ",".join(cells) + ">"


def gauss_charge(state: BasisState, j: int) -> Fraction:
    """Gauge-symmetry charge at 1-based site j, zero iff the site is physical.

    Returns (-1)^j * (l_{j-1} + l_j + n_j) with links labelled by their left
    site, exactly as a rational.
    """
    L = state.length
    if not 1 <= j <= L:
        raise ValueError(f"site index must be in 1..{L}, got {j}")
    i = j - 1
    twice_sum = state.twice_links[(i - 1) % L] + state.twice_links[i] + 2 * state.matter[i]
    sign = -1 if j % 2 else 1
    return Fraction(sign * twice_sum, 2)


def vacuum_config(spin: SpinValue, length: int, twice_mz: int) -> BasisState:
    """Product state with empty matter and links alternating (+m_z, -m_z, ...)."""
    if not spin.holds(twice_mz):
        raise ValueError(
            f"m_z={halfint_str(twice_mz)} is not a link value for S={spin}"
        )
    links = tuple(twice_mz if i % 2 == 0 else -twice_mz for i in range(length))
    return BasisState((0,) * length, links)


@dataclass(frozen=True, eq=False)
class PhysicalBasis:
    """The enumerated gauge-invariant sector, in canonical order.

    Immutable after construction; safe to share across threads.
    """

    model: ModelSpec
    states: tuple[BasisState, ...]
    index: dict[BasisState, int] = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.states)

    def lookup(self, state: BasisState) -> int:
        return self.index[state]

    def vacuum_indices(self) -> dict[int, int]:
        """Map twice_mz -> basis index for all 2S+1 vacua, descending in m_z."""
        spin = self.model.spin
        L = self.model.length
        return {
            tm: self.index[vacuum_config(spin, L, tm)]
            for tm in sorted(spin.twice_link_values(), reverse=True)
        }

    def translation_permutation(self, shift: int) -> np.ndarray:
        """perm such that translating basis state i by `shift` gives state perm[i]."""
        return np.array(
            [self.index[s.translated(shift)] for s in self.states], dtype=np.intp
        )


def enumerate_basis(model: ModelSpec) -> PhysicalBasis:
    """Build the full physical sector for `model` in canonical order.

    Walks the link chain with the two admissible continuations per site
    (n=0 or n=1), pruning out-of-range links, and keeps closed chains.
    Canonical order: seed link ascending, then matter string ascending
    (big-endian).
    """
    spin, L = model.spin, model.length
    ts = spin.twice_s
    if L == 2:
        warnings.warn(
            "L=2 is below the physically meaningful size; fine for oracle tests only",
            stacklevel=2,
        )

    states: list[BasisState] = []
    links = [0] * L

    def extend(i: int) -> None:
        if i == L:
            # wrap-around: n_0 is fixed by the last and first links
            twice_n0 = -(links[L - 1] + links[0])
            if twice_n0 in (0, 2):
                matter = [twice_n0 // 2] + [
                    -(links[k - 1] + links[k]) // 2 for k in range(1, L)
                ]
                states.append(BasisState(tuple(matter), tuple(links)))
            return
        prev = links[i - 1]
        for cand in (-prev, -prev - 2):  # n_i = 0, then n_i = 1
            if abs(cand) <= ts:
                links[i] = cand
                extend(i + 1)

    for seed in spin.twice_link_values():
        links[0] = seed
        extend(1)

    states.sort(key=lambda s: (s.twice_links[0], s.matter_key()))
    index = {s: k for k, s in enumerate(states)}
    return PhysicalBasis(model=model, states=tuple(states), index=index)


def vacuum_state(basis: PhysicalBasis, m_z) -> int:
    """Index of the vacuum with flux m_z (accepts Fraction, '3/2'-style str, int)."""
    twice_mz = parse_halfint(m_z, what="m_z")
    state = vacuum_config(basis.model.spin, basis.model.length, twice_mz)
    return basis.index[state]
