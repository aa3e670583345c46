"""
========================================
作用積分 テストモジュール
========================================

ファイル名: test_action_integral.py
パス: tests/test_action_integral.py

【概要】
正弦置換Gauss-Legendre求積、カット上の作用、全周期の作用、位相関数をテストします。

【テスト項目】
1. gauss_legendre_sine の端点特異性と配列終点
2. action_over_cut / total_action の閉じた形との一致
3. J(E) の単調性
4. phase_at の振動位相・減衰指数・混在領域エラー
5. effective_quantum_number

【テスト実行方法】
    pytest tests/test_action_integral.py -v

【作成日】2025-11-05
"""

import math

import numpy as np
import pytest

from src.physics.action_integral import (
    PhaseKind,
    action_over_cut,
    effective_quantum_number,
    gauss_legendre_sine,
    phase_at,
    total_action,
)
from src.physics.potential_model import (
    UnitSystem,
    constant_momentum_well,
    coulomb,
    double_well,
    harmonic,
    morse,
)
from src.physics.turning_points import find_cuts
from src.utils.config import SolverConfig
from src.utils.exceptions import DomainError, MixedRegionError, QuadratureError


@pytest.fixture
def units():
    return UnitSystem()


class TestGaussLegendreSine:
    """求積則のテスト"""

    def test_inverse_square_root_endpoints(self):
        # ∫_{-1}^{1} dq/sqrt(1-q²) = π
        result = gauss_legendre_sine(lambda q: 1.0 / np.sqrt(1.0 - q ** 2), -1.0, 1.0)
        assert result.value == pytest.approx(math.pi, rel=1e-10)

    def test_square_root_endpoints(self):
        result = gauss_legendre_sine(lambda q: np.sqrt(1.0 - q ** 2), -1.0, 1.0)
        assert result.value == pytest.approx(0.5 * math.pi, rel=1e-13)

    def test_array_of_end_points(self):
        ends = np.array([0.5, 1.0, 2.0])
        result = gauss_legendre_sine(lambda q: q ** 2, 0.0, ends)
        np.testing.assert_allclose(result.value, ends ** 3 / 3.0, rtol=1e-13)

    def test_reversed_limits_change_sign(self):
        forward = gauss_legendre_sine(np.exp, 0.0, 1.0).value
        backward = gauss_legendre_sine(np.exp, 1.0, 0.0).value
        assert backward == pytest.approx(-forward, rel=1e-14)

    def test_non_convergence_reports_achieved_error(self):
        config = SolverConfig().with_overrides(quad_max_order=32)
        with pytest.raises(QuadratureError) as exc_info:
            gauss_legendre_sine(lambda q: np.sin(500.0 * q), 0.0, 1.0, config=config)
        assert exc_info.value.achieved_error > 0


class TestActionOverCut:
    """action_over_cutのテスト"""

    def test_harmonic(self, units):
        spec = harmonic(1.0)
        cut = find_cuts(spec, units, 0.5).cuts[0]
        value = action_over_cut(spec, units, 0.5, cut)
        assert value.one_way == pytest.approx(0.5 * math.pi, rel=1e-12)
        assert value.full_period == pytest.approx(math.pi, rel=1e-12)

    def test_constant_momentum_well(self, units):
        spec = constant_momentum_well(0.0, math.pi)
        value = action_over_cut(spec, units, 0.5, (0.0, math.pi))
        assert value.one_way == pytest.approx(math.pi, rel=1e-13)
        assert value.mu == 4

    def test_coulomb_radial(self, units):
        spec = coulomb(alpha=1.0, ptheta=0.5)
        cut = find_cuts(spec, units, -0.5).cuts[0]
        value = action_over_cut(spec, units, -0.5, cut)
        assert value.one_way == pytest.approx(0.5 * math.pi, rel=1e-10)


class TestTotalAction:
    """total_actionのテスト"""

    def test_harmonic_three_halves(self, units):
        value = total_action(harmonic(1.0), units, 1.5)
        assert value.full_period == pytest.approx(3.0 * math.pi, rel=1e-12)
        assert value.mu == 2

    def test_harmonic_omega_two(self, units):
        value = total_action(harmonic(2.0), units, 1.0)
        assert value.full_period == pytest.approx(math.pi, rel=1e-12)

    @pytest.mark.parametrize("E", [0.5 + k for k in range(21)])
    def test_harmonic_closed_form(self, units, E):
        value = total_action(harmonic(1.0), units, E)
        assert abs(value.full_period - 2.0 * math.pi * E) < 1e-10

    def test_symmetric_double_well_doubles_single_well(self, units):
        spec = double_well(a=2.0, scale=1.0)
        both = total_action(spec, units, 5.0)
        single = total_action(spec, units, 5.0, search=(0.0, math.inf))
        assert both.mu == 4
        assert single.mu == 2
        assert both.full_period == pytest.approx(2.0 * single.full_period, rel=1e-10)
        assert both.per_cut[0] == pytest.approx(both.per_cut[1], rel=1e-10)

    def test_morse_closed_form(self, units):
        # J = (2π/a)·(sqrt(2mD) - sqrt(-2mE))
        depth, a, E = 10.0, 1.0, -3.0
        value = total_action(morse(depth, a), units, E)
        expected = 2.0 * math.pi / a * (math.sqrt(2.0 * depth) - math.sqrt(-2.0 * E))
        assert value.full_period == pytest.approx(expected, rel=1e-11)

    @pytest.mark.parametrize("spec,energies", [
        (harmonic(1.0), np.linspace(0.1, 10.0, 12)),
        (morse(10.0, 1.0), np.linspace(-9.5, -0.5, 12)),
        (coulomb(alpha=1.0, l=1), np.linspace(-0.2, -0.01, 12)),
    ])
    def test_strictly_increasing_in_energy(self, units, spec, energies):
        actions = [total_action(spec, units, E).full_period for E in energies]
        assert np.all(np.diff(actions) > 0)

    def test_error_estimate_bounds_refinement(self, units):
        spec = morse(10.0, 1.0)
        coarse = total_action(spec, units, -2.0)
        fine = total_action(spec, units, -2.0, tol=1e-11)
        assert abs(coarse.full_period - fine.full_period) <= coarse.estimated_error + 1e-10


class TestPhaseAt:
    """phase_atのテスト"""

    def test_oscillatory_half_period(self, units):
        value = phase_at(harmonic(1.0), units, 0.5, -1.0, 1.0)
        assert value.kind is PhaseKind.OSCILLATORY
        assert value.phi == pytest.approx(0.5 * math.pi, rel=1e-12)

    def test_zero_at_reference(self, units):
        value = phase_at(harmonic(1.0), units, 0.5, 1.0, 1.0)
        assert value.phi == 0.0

    def test_decay_exponent_outside_constant_momentum_well(self, units):
        value = phase_at(constant_momentum_well(0.0, math.pi), units, 0.5, 0.0, -2.0)
        assert value.kind is PhaseKind.DECAY
        assert value.phi == pytest.approx(2.0, rel=1e-13)

    def test_decay_exponent_harmonic(self, units):
        # ∫_1^2 sqrt(q²-1) dq = sqrt(3) - ln(2+sqrt(3))/2
        value = phase_at(harmonic(1.0), units, 0.5, 1.0, 2.0)
        expected = math.sqrt(3.0) - 0.5 * math.log(2.0 + math.sqrt(3.0))
        assert value.kind is PhaseKind.DECAY
        assert value.phi == pytest.approx(expected, rel=1e-11)

    def test_phase_scales_with_hbar(self):
        value = phase_at(harmonic(1.0), UnitSystem(hbar=0.25), 0.5, -1.0, 1.0)
        assert value.phi == pytest.approx(2.0 * math.pi, rel=1e-12)

    def test_mixed_region(self, units):
        with pytest.raises(MixedRegionError):
            phase_at(harmonic(1.0), units, 0.5, -1.0, 2.0)

    def test_reference_must_be_turning_point(self, units):
        with pytest.raises(DomainError):
            phase_at(harmonic(1.0), units, 0.5, 0.0, 0.5)


class TestEffectiveQuantumNumber:
    """effective_quantum_numberのテスト"""

    @pytest.mark.parametrize("N", [0, 1, 5])
    def test_integer_at_harmonic_levels(self, units, N):
        assert effective_quantum_number(harmonic(1.0), units, N + 0.5) == pytest.approx(N, abs=1e-10)

    def test_fractional_between_levels(self, units):
        assert effective_quantum_number(harmonic(1.0), units, 1.0) == pytest.approx(0.5, abs=1e-10)
