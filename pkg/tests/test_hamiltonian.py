import math

import numpy as np
import pytest

from gaugequench.basis import enumerate_basis, vacuum_state
from gaugequench.hamiltonian import apply, build_qlm, build_tsm
from gaugequench.model import ModelSpec, SpinValue

from oracles import decode_full_index, dense_reference_hamiltonian


def build(twice_s, L, kind="qlm", **kw):
    model = ModelSpec(spin=SpinValue(twice_s), length=L, kind=kind, **kw)
    basis = enumerate_basis(model)
    h = build_qlm(basis) if kind == "qlm" else build_tsm(basis)
    return basis, h


class TestDiagonal:
    def test_vacuum_energy_formula(self):
        mu, kappa, L = 0.7, 1.3, 6
        basis, h = build(3, L, mu=mu, kappa=kappa)
        for tm, idx in basis.vacuum_indices().items():
            expected = -mu * L + 0.5 * kappa**2 * L * (tm / 2) ** 2
            assert h.diagonal[idx] == pytest.approx(expected, abs=1e-14)

    def test_tsm_diagonal_matches_qlm(self):
        mu, kappa = 0.3, 0.9
        _, hq = build(3, 4, mu=mu, kappa=kappa)
        _, ht = build(3, 4, kind="tsm", mu=mu, kappa=kappa)
        np.testing.assert_array_equal(hq.diagonal, ht.diagonal)


class TestOffDiagonal:
    def test_vacuum_pair_coupling_is_j_over_sqrt3(self):
        basis, h = build(1, 4)
        vac = vacuum_state(basis, "1/2")
        row = h.matrix().toarray()[vac]
        nonzero = row[np.nonzero(row)]
        # pair creation allowed only on the two links carrying +1/2
        assert len(nonzero) == 2
        np.testing.assert_allclose(np.abs(nonzero), 1 / math.sqrt(3), atol=1e-15)

    def test_hermitian_exactly(self):
        _, h = build(3, 6)
        m = h.matrix().toarray()
        assert np.array_equal(m, m.T)
        assert np.all(h.rows < h.cols)

    @pytest.mark.parametrize("twice_s", [1, 3])
    @pytest.mark.parametrize("kind", ["qlm", "tsm"])
    def test_matches_full_space_reference(self, twice_s, kind):
        model = ModelSpec(spin=SpinValue(twice_s), length=4, kind=kind, mu=0.2, kappa=0.5)
        basis = enumerate_basis(model)
        h = build_qlm(basis) if kind == "qlm" else build_tsm(basis)
        h_full, mask = dense_reference_hamiltonian(model)

        full_indices = np.nonzero(mask)[0]
        order = np.empty(basis.dim, dtype=int)
        for fi in full_indices:
            order[basis.lookup(decode_full_index(model, int(fi)))] = fi
        restricted = h_full[np.ix_(order, order)]
        np.testing.assert_allclose(h.matrix().toarray(), restricted, atol=1e-12)

    @pytest.mark.parametrize("twice_s", [1, 3])
    def test_no_leakage_out_of_sector(self, twice_s):
        model = ModelSpec(spin=SpinValue(twice_s), length=4)
        h_full, mask = dense_reference_hamiltonian(model)
        coupling = h_full[np.ix_(mask, ~mask)]
        assert np.all(coupling == 0.0)


class TestModelEquivalence:
    def test_spin_half_spectra_match_after_rescaling(self):
        # unit tsm amplitude J/2 equals the qlm amplitude J'/sqrt(3) at J' = sqrt(3)/2
        _, hq = build(1, 4, j=math.sqrt(3) / 2)
        _, ht = build(1, 4, kind="tsm")
        wq = np.linalg.eigvalsh(hq.matrix().toarray())
        wt = np.linalg.eigvalsh(ht.matrix().toarray())
        np.testing.assert_allclose(wq, wt, atol=1e-10)

    def test_spin_one_models_identical(self):
        _, hq = build(2, 4)
        _, ht = build(2, 4, kind="tsm")
        np.testing.assert_allclose(
            hq.matrix().toarray(), ht.matrix().toarray(), atol=1e-15
        )


class TestApply:
    def test_zero_vector_maps_to_zero(self):
        basis, h = build(1, 4)
        out = apply(h, np.zeros(basis.dim, dtype=complex))
        assert np.all(out == 0)

    def test_dimension_mismatch_rejected(self):
        _, h = build(1, 4)
        with pytest.raises(ValueError):
            apply(h, np.zeros(3, dtype=complex))

    def test_expectation_real_for_random_state(self):
        basis, h = build(3, 4, mu=0.4)
        rng = np.random.default_rng(7)
        v = rng.normal(size=basis.dim) + 1j * rng.normal(size=basis.dim)
        v /= np.linalg.norm(v)
        value = np.vdot(v, apply(h, v))
        assert abs(value.imag) < 1e-12

    def test_massless_vacuum_image_is_one_pair_states(self):
        basis, h = build(3, 6)
        psi = np.zeros(basis.dim, dtype=complex)
        psi[vacuum_state(basis, "3/2")] = 1.0
        image = apply(h, psi)
        for idx in np.nonzero(np.abs(image) > 1e-15)[0]:
            assert basis.states[idx].occupation() == 2

    def test_translation_by_unit_cell_commutes(self):
        basis, h = build(3, 6, mu=0.2, kappa=0.3)
        perm = basis.translation_permutation(2)
        rng = np.random.default_rng(3)
        v = rng.normal(size=basis.dim) + 1j * rng.normal(size=basis.dim)
        translated = np.empty_like(v)
        translated[perm] = v
        hv = apply(h, v)
        t_hv = np.empty_like(hv)
        t_hv[perm] = hv
        np.testing.assert_allclose(t_hv, apply(h, translated), atol=1e-12)


class TestDump:
    def test_triplet_dump_roundtrips(self, tmp_path):
        basis, h = build(1, 4, mu=0.25)
        path = tmp_path / "h.txt"
        h.dump_triplets(path)
        entries = {}
        for line in path.read_text().splitlines():
            r, c, v = line.split()
            entries[(int(r), int(c))] = float(v)
        m = h.matrix().toarray()
        for (r, c), v in entries.items():
            assert m[r, c] == v
        # every stored triplet present: diagonal nonzeros + upper couplings
        expected = int(np.count_nonzero(h.diagonal)) + len(h.vals)
        assert len(entries) == expected
