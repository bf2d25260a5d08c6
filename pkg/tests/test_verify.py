import numpy as np
import pytest

from relosc.cdhahn import cdh_sum
from relosc.model import DimensionlessParams, QuantumNumbers, RegimeError, energy
from relosc.verify import (
    CutoffError,
    QuadratureSpec,
    generalized_degree_identity_check,
    omega_equation_residual,
    orthonormality_matrix,
    radial_equation_residual,
)

GRID = np.geomspace(0.1, 30.0, 200)
UNIT = DimensionlessParams(1.0)


class TestRadialResidual:
    @pytest.mark.parametrize("w,g", [(1 / 16, 0.0), (0.25, 0.25), (1.0, 0.0), (0.5, -0.05)])
    @pytest.mark.parametrize("n", [0, 1, 3])
    def test_small_residual(self, w, g, n):
        rep = radial_equation_residual(DimensionlessParams(w, g), QuantumNumbers(n, 0), GRID)
        assert rep.max_relative_residual < 1e-10

    def test_conjugate_regime(self):
        rep = radial_equation_residual(UNIT, QuantumNumbers(2, 1), GRID)
        assert rep.max_relative_residual < 1e-10

    def test_collapse_raises(self):
        with pytest.raises(RegimeError):
            radial_equation_residual(DimensionlessParams(1.0, -1.0), QuantumNumbers(0, 0), GRID)

    def test_rejects_nonpositive_grid(self):
        with pytest.raises(ValueError):
            radial_equation_residual(UNIT, QuantumNumbers(0, 0), [0.0, 1.0])

    def test_energy_perturbation_is_detected(self):
        q = QuantumNumbers(1, 0)
        exact = energy(UNIT, q).energy / UNIT.omega0
        good = radial_equation_residual(UNIT, q, GRID).max_relative_residual
        bad = radial_equation_residual(UNIT, q, GRID, energy_ratio=exact + 0.01)
        assert bad.max_relative_residual > 1e6 * max(good, 1e-16)

    @pytest.mark.parametrize("which", ["energy_ratio", "alpha", "nu"])
    def test_one_percent_perturbation_is_detected(self, which):
        d = DimensionlessParams(0.25, 0.1)
        q = QuantumNumbers(2, 0)
        e = energy(d, q)
        exact = {"energy_ratio": e.energy / d.omega0, "alpha": e.alpha, "nu": e.nu}
        good = radial_equation_residual(d, q, GRID).max_relative_residual
        bad = radial_equation_residual(d, q, GRID, **{which: exact[which] * 1.01})
        assert bad.max_relative_residual > 1e3 * max(good, 1e-16)

    def test_sparse_points(self):
        rep = radial_equation_residual(UNIT, QuantumNumbers(0, 0), [0.5, 1, 2, 5, 10])
        assert rep.max_relative_residual < 1e-9

    def test_excited_conjugate_case(self):
        rep = radial_equation_residual(DimensionlessParams(0.5, 0.25), QuantumNumbers(3, 2), GRID)
        assert rep.max_relative_residual < 1e-8

    def test_csv_layout(self):
        rep = radial_equation_residual(UNIT, QuantumNumbers(0, 0), GRID[:3])
        lines = rep.to_csv().splitlines()
        assert lines[0] == "rho,re_residual,im_residual,rel_residual"
        assert len(lines) == 4
        assert "e" in lines[1].split(",")[0]


class TestOmegaResidual:
    @pytest.mark.parametrize("n", [0, 1, 2, 5])
    @pytest.mark.parametrize("l", [0, 1, 2])
    def test_small_residual(self, n, l):
        rep = omega_equation_residual(DimensionlessParams(1 / 16, 0.1), QuantumNumbers(n, l), GRID)
        assert rep.max_relative_residual < 1e-10

    def test_ground_state_closed_form(self):
        # W = 1: (alpha+i rho)(nu+i rho) - (alpha-i rho)(nu-i rho) = 2 i rho (alpha+nu)
        rep = omega_equation_residual(DimensionlessParams(0.3, 0.2), QuantumNumbers(0, 0), GRID)
        assert rep.max_relative_residual < 1e-13

    def test_explicit_parameters(self):
        phi = (1 + 5 ** 0.5) / 2
        rep = omega_equation_residual(UNIT, QuantumNumbers(1, 0), GRID, alpha=1.0, nu=phi)
        assert rep.max_relative_residual < 1e-10

    def test_odd_energy_offset_fails(self):
        e = energy(UNIT, QuantumNumbers(1, 0))
        rep = omega_equation_residual(UNIT, QuantumNumbers(1, 0), GRID,
                                      energy_ratio=(e.alpha + e.nu + 1).real)
        assert rep.max_relative_residual > 1e-2

    @pytest.mark.parametrize("n", [0, 1, 2])
    def test_rhs_without_rho_factor_fails(self, n):
        # the right-hand side needs the factor rho; dropping it leaves an O(1) residual
        d = DimensionlessParams(0.3, 0.2)
        q = QuantumNumbers(n, 0)
        e = energy(d, q)
        p = (e.alpha, e.nu, 0.5)
        rho = GRID.astype(complex)
        lhs = ((e.alpha + 1j * rho) * (e.nu + 1j * rho) * cdh_sum(n, (rho - 1j) ** 2, p)
               - (e.alpha - 1j * rho) * (e.nu - 1j * rho) * cdh_sum(n, (rho + 1j) ** 2, p))
        w0 = cdh_sum(n, rho ** 2, p)
        ratio = e.energy / d.omega0
        with_rho = np.abs(lhs - 2j * rho * ratio * w0) / np.abs(lhs)
        without = np.abs(lhs - 2j * ratio * w0) / np.abs(lhs)
        assert np.max(with_rho) < 1e-10
        assert np.max(without) > 0.5


def test_generalized_degree_identity():
    assert generalized_degree_identity_check(np.linspace(0.01, 100, 500)).max_relative_residual < 1e-12


class TestOrthonormality:
    @pytest.mark.parametrize("w,g,l", [(1.0, 0.0, 0), (1 / 16, 0.0, 0), (0.25, 0.25, 2), (0.5, 0.1, 1)])
    def test_gram_identity(self, w, g, l):
        rep = orthonormality_matrix(DimensionlessParams(w, g), l, 3)
        assert rep.deviation < 1e-8
        assert rep.matrix.shape == (4, 4)

    def test_history_records_doubling(self):
        rep = orthonormality_matrix(UNIT, 0, 2, QuadratureSpec(node_count=16))
        nodes = [k for k, _ in rep.history]
        assert nodes[0] == 16
        assert all(b == 2 * a for a, b in zip(nodes, nodes[1:]))

    def test_fixed_scheme_converges(self):
        devs = [orthonormality_matrix(UNIT, 0, 2, QuadratureSpec(30.0, k, "fixed-composite")).deviation
                for k in (16, 32, 64)]
        assert devs[2] < devs[1] < devs[0]

    def test_short_cutoff_raises(self):
        with pytest.raises(CutoffError):
            orthonormality_matrix(UNIT, 0, 2, QuadratureSpec(rho_max=3.0))

    def test_fixed_needs_cutoff(self):
        with pytest.raises(ValueError):
            orthonormality_matrix(UNIT, 0, 2, QuadratureSpec(scheme="fixed-composite"))

    @pytest.mark.parametrize("kw", [{"node_count": 4}, {"scheme": "simpson"}, {"rho_max": -1.0}])
    def test_spec_validation(self, kw):
        with pytest.raises(ValueError):
            QuadratureSpec(**kw)
