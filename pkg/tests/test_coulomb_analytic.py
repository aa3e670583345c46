"""
========================================
クーロン問題 テストモジュール
========================================

ファイル名: test_coulomb_analytic.py
パス: tests/test_coulomb_analytic.py

【概要】
角度方向・動径方向の作用、E(J)、縮退、数値積分との一致をテストします。

【テスト項目】
1. angular_actions / radial_action_closed / energy_from_actions の代表値
2. coulomb_spectrum と閉じた形の一致、縮退
3. 作用の数値積分と閉じた形の一致（乱数）
4. 動径ソルバー（Langer置換）と閉じた形の一致
5. 分離定数・秤動・作用の和のエラー

【テスト実行方法】
    pytest tests/test_coulomb_analytic.py -v

【作成日】2025-11-06
"""

import math

import numpy as np
import pytest

from src.physics.potential_model import UnitSystem, coulomb
from src.quantization.coulomb_analytic import (
    ActionTriple,
    CoulombParams,
    QuantumNumbers,
    SeparationConstants,
    angular_actions,
    closed_form_energy,
    coulomb_spectrum,
    degenerate_states,
    energy_from_actions,
    polar_action_numeric,
    quantized_actions,
    radial_action_closed,
    radial_action_numeric,
    semiclassical_p_theta,
)
from src.quantization.quantizer import solve_level
from src.utils.exceptions import DomainError, NoLibrationError, SeparationError


@pytest.fixture
def cp():
    return CoulombParams()


class TestAngularActions:
    """角度方向の作用"""

    def test_example(self):
        J_phi, J_theta = angular_actions(SeparationConstants(P_theta=1.0, P_phi=0.25, E=-0.5))
        assert J_phi == pytest.approx(0.5 * math.pi)
        assert J_theta == pytest.approx(1.5 * math.pi)

    def test_equatorial_orbit(self):
        _, J_theta = angular_actions(SeparationConstants(P_theta=0.7, P_phi=0.7, E=-0.5))
        assert J_theta == 0.0

    def test_no_azimuthal_motion(self):
        J_phi, J_theta = angular_actions(SeparationConstants(P_theta=0.7, P_phi=0.0, E=-0.5))
        assert J_phi == 0.0
        assert J_theta == pytest.approx(1.4 * math.pi)

    def test_negative_azimuthal_momentum(self):
        J_phi, J_theta = angular_actions(SeparationConstants(P_theta=1.0, P_phi=-0.25, E=-0.5))
        assert J_phi == pytest.approx(0.5 * math.pi)
        assert J_theta == pytest.approx(1.5 * math.pi)


class TestRadialActionClosed:
    """動径方向の作用（閉じた形）"""

    def test_ground_state(self, cp):
        value = radial_action_closed(cp, SeparationConstants(P_theta=0.5, P_phi=0.0, E=-0.5))
        assert value == pytest.approx(math.pi)

    def test_second_example(self, cp):
        value = radial_action_closed(cp, SeparationConstants(P_theta=1.0, P_phi=0.0, E=-0.125))
        assert value == pytest.approx(2.0 * math.pi)

    @pytest.mark.parametrize("P_theta", [0.5, 1.5, 3.0])
    def test_circular_orbit(self, cp, P_theta):
        circular = -cp.mass * cp.alpha ** 2 / (2.0 * P_theta ** 2)
        value = radial_action_closed(cp, SeparationConstants(P_theta=P_theta, P_phi=0.0, E=circular))
        assert value == pytest.approx(0.0, abs=1e-12)

    def test_below_circular_orbit(self, cp):
        with pytest.raises(NoLibrationError):
            radial_action_closed(cp, SeparationConstants(P_theta=1.0, P_phi=0.0, E=-1.0))


class TestEnergyFromActions:
    """E(J)"""

    def test_two_pi(self, cp):
        J = ActionTriple(J_r=math.pi, J_theta=math.pi, J_phi=0.0)
        assert energy_from_actions(cp, J) == pytest.approx(-0.5)

    def test_four_pi(self, cp):
        J = ActionTriple(J_r=2.0 * math.pi, J_theta=math.pi, J_phi=math.pi)
        assert energy_from_actions(cp, J) == pytest.approx(-0.125)

    def test_doubling_actions_quarters_energy(self, cp):
        J = ActionTriple(J_r=1.0, J_theta=2.0, J_phi=0.5)
        doubled = ActionTriple(J_r=2.0, J_theta=4.0, J_phi=1.0)
        assert energy_from_actions(cp, doubled) == pytest.approx(0.25 * energy_from_actions(cp, J))

    def test_zero_sum(self, cp):
        with pytest.raises(DomainError):
            energy_from_actions(cp, ActionTriple(J_r=0.0, J_theta=0.0, J_phi=0.0))


class TestCoulombSpectrum:
    """量子化された作用からのエネルギー"""

    def test_ground_state(self, cp):
        assert coulomb_spectrum(cp, QuantumNumbers(0, 0, 0)) == pytest.approx(-0.5)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_all_degenerate_states_match_closed_form(self, cp, n):
        expected = closed_form_energy(cp, n)
        for qn in degenerate_states(n):
            assert qn.n == n
            assert coulomb_spectrum(cp, qn) == pytest.approx(expected, rel=1e-13)

    @pytest.mark.parametrize("n", range(1, 6))
    def test_degeneracy(self, n):
        states = degenerate_states(n)
        assert len(states) == n * (n + 1) // 2
        assert len(set(states)) == len(states)

    def test_units(self):
        params = CoulombParams(alpha=2.0, mass=3.0, hbar=0.5)
        # -α²m/(2n²ħ²)
        assert closed_form_energy(params, 2) == pytest.approx(-6.0)
        assert coulomb_spectrum(params, QuantumNumbers(1, 0, 0)) == pytest.approx(-6.0)

    def test_quantized_actions(self, cp):
        J = quantized_actions(cp, QuantumNumbers(n_r=1, n_theta=0, n_phi=2))
        assert J.J_r == pytest.approx(3.0 * math.pi)
        assert J.J_theta == pytest.approx(math.pi)
        assert J.J_phi == pytest.approx(4.0 * math.pi)

    def test_semiclassical_p_theta(self):
        assert semiclassical_p_theta(2, hbar=0.5) == pytest.approx(1.25)
        with pytest.raises(DomainError):
            semiclassical_p_theta(-1)

    def test_invalid_principal_number(self, cp):
        with pytest.raises(DomainError):
            closed_form_energy(cp, 0)
        with pytest.raises(DomainError):
            QuantumNumbers(n_r=-1, n_theta=0, n_phi=0)


class TestNumericActions:
    """数値積分と閉じた形"""

    def test_polar_random(self):
        rng = np.random.default_rng(7)
        for _ in range(100):
            P_theta = rng.uniform(0.1, 5.0)
            P_phi = rng.uniform(-P_theta, P_theta)
            sc = SeparationConstants(P_theta=P_theta, P_phi=P_phi, E=-0.5)
            _, J_theta = angular_actions(sc)
            assert abs(polar_action_numeric(sc) - J_theta) < 1e-8

    def test_radial_random(self, cp):
        rng = np.random.default_rng(11)
        for _ in range(100):
            P_theta = rng.uniform(0.2, 3.0)
            circular = -cp.mass * cp.alpha ** 2 / (2.0 * P_theta ** 2)
            E = circular * rng.uniform(0.05, 0.95)
            sc = SeparationConstants(P_theta=P_theta, P_phi=0.0, E=E)
            expected = radial_action_closed(cp, sc)
            assert radial_action_numeric(cp, sc) == pytest.approx(expected, rel=1e-8, abs=1e-8)

    def test_radial_without_libration(self, cp):
        with pytest.raises(NoLibrationError):
            radial_action_numeric(cp, SeparationConstants(P_theta=1.0, P_phi=0.0, E=-1.0))


class TestRadialSolver:
    """Langer置換した動径ソルバー"""

    @pytest.mark.parametrize("l", [0, 1, 2])
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_matches_closed_form(self, cp, n, l):
        if l >= n:
            pytest.skip("l < n")
        level = solve_level(coulomb(alpha=1.0, l=l), UnitSystem(), n - l - 1)
        assert level.E == pytest.approx(closed_form_energy(cp, n), abs=1e-8)


class TestSeparationConstants:
    """分離定数の検証"""

    def test_azimuthal_exceeds_total(self):
        with pytest.raises(SeparationError):
            SeparationConstants(P_theta=0.5, P_phi=1.0, E=-0.5)

    def test_unbound_energy(self):
        with pytest.raises(DomainError):
            SeparationConstants(P_theta=1.0, P_phi=0.0, E=0.0)

    def test_invalid_params(self):
        with pytest.raises(DomainError):
            CoulombParams(alpha=-1.0)
