import numpy as np
import pytest

from drsbound.model import Kratzer, QuantumNumbers, RingParams, SpecError
from drsbound.nonrel import NonRelParams, energy_kratzer_nr
from drsbound.oracle import (
    DivergenceError,
    FdGrid,
    OracleError,
    fd_angular_eigs,
    fd_radial_eigs,
    nonrel_energy_fd,
    self_consistent_energy,
)
from drsbound.spectrum import angular_quantization, find_roots, table_spec


class TestFdGrid:
    def test_validation(self):
        with pytest.raises(SpecError):
            FdGrid(1.0, 1.0, 100)
        with pytest.raises(SpecError):
            FdGrid(0.0, 5.0, 10)

    def test_points_interior(self):
        g = FdGrid(0.0, 1.0, 99)
        pts = g.points()
        assert len(pts) == 99
        assert pts[0] == pytest.approx(g.spacing)
        assert pts[-1] == pytest.approx(1.0 - g.spacing)


class TestRadialSolver:
    def test_half_line_oscillator(self):
        # Dirichlet at the origin selects the odd states: 4j + 3
        grid = FdGrid(0.0, 12.0, 3000)
        eigs = fd_radial_eigs(lambda r: r**2, grid, 3, refine=True)
        for j, val in enumerate(eigs):
            assert val == pytest.approx(4 * j + 3, rel=1e-4)

    def test_kratzer_ground_state(self):
        params = NonRelParams(mu=1.0, potential=Kratzer(15.0, 0.4), ring=RingParams())
        closed = energy_kratzer_nr(params, QuantumNumbers())
        fd = nonrel_energy_fd(params, QuantumNumbers())
        assert abs(fd - closed) / abs(closed) < 1e-4

    def test_second_order_convergence(self):
        # halving the spacing cuts the eigenvalue error by at least 3.8x
        exact = 3.0
        errs = []
        for nodes in (500, 1001):
            grid = FdGrid(0.0, 12.0, nodes)
            errs.append(abs(fd_radial_eigs(lambda r: r**2, grid, 1)[0] - exact))
        assert errs[0] / errs[1] > 3.8

    def test_grid_too_coarse_rejected(self):
        grid = FdGrid(0.0, 10.0, 60)
        with pytest.raises(OracleError):
            fd_radial_eigs(lambda r: r**2, grid, 10)

    def test_non_finite_potential_rejected(self):
        grid = FdGrid(-1.0, 1.0, 199)  # places a node exactly at r = 0
        with pytest.raises(OracleError):
            fd_radial_eigs(lambda r: 1.0 / r, grid, 1)


class TestAngularSolver:
    def test_pure_central_family(self):
        eigs = fd_angular_eigs(0.0, RingParams(0, 0), 0, 3)
        expected = [(2 * k + 1.5) ** 2 for k in range(3)]
        np.testing.assert_allclose(eigs, expected, rtol=1e-5)

    def test_ring_dressed_value(self):
        g = 2.072188142
        eig = fd_angular_eigs(g, RingParams(1, 1), 0, 1)[0]
        expected = angular_quantization(g, RingParams(1, 1), 0, 0).real ** 2
        assert abs(eig - expected) / expected < 1e-3

    def test_azimuthal_shift(self):
        eigs = fd_angular_eigs(0.0, RingParams(0, 0), 2, 3)
        expected = [(abs(2) + 1.5 + 2 * k) ** 2 for k in range(3)]
        np.testing.assert_allclose(eigs, expected, rtol=1e-5)

    def test_matches_quantization_on_grid(self):
        # 3 gammas x 3 ring configurations x 2 azimuthal numbers
        for gamma in (0.0, 0.9, 2.072188142):
            for a, b in ((0.0, 0.0), (1.0, 0.0), (1.0, 1.0)):
                for m in (0, 2):
                    ring = RingParams(a, b)
                    eigs = fd_angular_eigs(gamma, ring, m, 2)
                    for n_prime in range(2):
                        expected = angular_quantization(gamma, ring, m, n_prime).real ** 2
                        assert abs(eigs[n_prime] - expected) / expected < 1e-3

    def test_complex_sector_rejected(self):
        with pytest.raises(OracleError):
            fd_angular_eigs(-2.0, RingParams(1.0, 0.0), 0, 1)


class TestSelfConsistency:
    def test_spin_kratzer_ring_ground(self):
        spec = table_spec(3, 0, 0, 0, 1.0, 1.0)
        closed = find_roots(spec, mode="strict")[0].energy.real
        fixed_point = self_consistent_energy(spec, 1.0)
        assert abs(fixed_point - closed) < 1e-4

    def test_spin_kratzer_central_ground(self):
        spec = table_spec(3, 0, 0, 0, 0.0, 0.0)
        closed = find_roots(spec, mode="strict")[0].energy.real
        fixed_point = self_consistent_energy(spec, 0.4)
        assert abs(fixed_point - closed) < 1e-4

    def test_spin_oscillator_reports_divergence(self):
        spec = table_spec(4, 0, 0, 0, 1.0, 1.0)
        with pytest.raises(DivergenceError):
            self_consistent_energy(spec, 2.0, max_iter=40)

    def test_nonrel_limit_reproduces_closed_form(self):
        params = NonRelParams(mu=1.0, potential=Kratzer(15.0, 0.4), ring=RingParams())
        closed = energy_kratzer_nr(params, QuantumNumbers())
        fd = nonrel_energy_fd(params, QuantumNumbers())
        assert abs(fd - closed) < 1e-4 * abs(closed)


class TestRefinementMonotonicity:
    def test_eigenvalues_approach_refined_limit(self):
        grid_sizes = (400, 800, 1600)
        vals = []
        for nodes in grid_sizes:
            grid = FdGrid(0.0, 12.0, nodes)
            vals.append(fd_radial_eigs(lambda r: r**2, grid, 1)[0])
        limit = fd_radial_eigs(lambda r: r**2, FdGrid(0.0, 12.0, 1600), 1, refine=True)[0]
        errs = [abs(v - limit) for v in vals]
        assert errs[0] > errs[1] > errs[2]
