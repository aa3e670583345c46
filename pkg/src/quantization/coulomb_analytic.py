"""
========================================
クーロン問題の作用変数モジュール
========================================

ファイル名: coulomb_analytic.py
パス: src/quantization/coulomb_analytic.py

【概要】
V(r) = -α/r の束縛状態（E < 0）について、球座標で分離した三つの作用変数の
閉じた形、作用からエネルギーへの関数 E(J)、量子化されたスペクトルを扱います。

    J_φ = 2π|P_φ|
    J_θ = 2π(P_θ - |P_φ|)
    J_r = -2πP_θ + πα·sqrt(-2m/E)
    E   = -2π²α²m / (J_r + J_θ + J_φ)²

量子化は J_r, J_θ を秤動 2πħ(n+½)、J_φ を回転 2πħn として代入し、
E_n = -α²m / (2(n_r + l + 1)²ħ²)、l = n_θ + n_φ を得ます。
このとき P_θ = ħ(l+½) で、数値の動径ソルバーもこの値を使います。

閉じた形は実軸上の求積（polar_action_numeric / radial_action_numeric）と
照合できます。

【作成日】2025-11-06
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from src.physics.action_integral import gauss_legendre_sine, total_action
from src.physics.potential_model import UnitSystem, coulomb
from src.quantization.quantizer import rotation_action
from src.utils.exceptions import (
    DomainError,
    NoLibrationError,
    QuantizationError,
    SeparationError,
    TurningPointError,
)

logger = logging.getLogger(__name__)

# 円軌道での丸め誤差を吸収する相対幅
_CIRCULAR_RTOL = 1e-12


@dataclass(frozen=True)
class CoulombParams:
    """結合定数・質量・ħ（全て正）"""
    alpha: float = 1.0
    mass: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        for name in ('alpha', 'mass', 'hbar'):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise DomainError(f"{name} must be positive and finite, got {value}")

    @property
    def units(self) -> UnitSystem:
        return UnitSystem(hbar=self.hbar, mass=self.mass)


@dataclass(frozen=True)
class SeparationConstants:
    """
    分離定数とエネルギー

    Attributes:
        P_theta: 全角運動量 P_θ ≥ 0
        P_phi: 方位角運動量（|P_φ| ≤ P_θ）
        E: エネルギー（< 0）
    """
    P_theta: float
    P_phi: float
    E: float

    def __post_init__(self):
        if self.P_theta < 0 or self.P_theta < abs(self.P_phi):
            raise SeparationError(
                f"separation constants need P_theta >= |P_phi| >= 0, "
                f"got P_theta={self.P_theta}, P_phi={self.P_phi}"
            )
        if not self.E < 0:
            raise DomainError(f"bound states need E < 0, got {self.E}")


@dataclass(frozen=True)
class ActionTriple:
    """(J_r, J_θ, J_φ)"""
    J_r: float
    J_theta: float
    J_phi: float

    @property
    def total(self) -> float:
        return self.J_r + self.J_theta + self.J_phi


@dataclass(frozen=True)
class QuantumNumbers:
    """
    量子数 (n_r, n_θ, n_φ)

    l = n_θ + n_φ、主量子数 n = n_r + l + 1
    """
    n_r: int
    n_theta: int
    n_phi: int

    def __post_init__(self):
        for name in ('n_r', 'n_theta', 'n_phi'):
            if getattr(self, name) < 0:
                raise DomainError(f"{name} must be >= 0, got {getattr(self, name)}")

    @property
    def l(self) -> int:
        return self.n_theta + self.n_phi

    @property
    def n(self) -> int:
        return self.n_r + self.l + 1


def angular_actions(sc: SeparationConstants) -> Tuple[float, float]:
    """
    (J_φ, J_θ) = (2π|P_φ|, 2π(P_θ - |P_φ|))

    Raises:
        SeparationError: P_θ < |P_φ|（SeparationConstantsの生成時）
    """
    p_phi = abs(sc.P_phi)
    return 2.0 * math.pi * p_phi, 2.0 * math.pi * (sc.P_theta - p_phi)


def radial_action_closed(cp: CoulombParams, sc: SeparationConstants) -> float:
    """
    J_r = -2πP_θ + πα·sqrt(-2m/E)

    Raises:
        NoLibrationError: 結果が負（円軌道エネルギーより下）
    """
    inner = -2.0 * math.pi * sc.P_theta
    outer = math.pi * cp.alpha * math.sqrt(-2.0 * cp.mass / sc.E)
    value = inner + outer
    if value < 0:
        if value < -_CIRCULAR_RTOL * outer:
            raise NoLibrationError(
                f"no radial libration at P_theta={sc.P_theta}, E={sc.E} (J_r={value:.6g})"
            )
        value = 0.0
    return value


def energy_from_actions(cp: CoulombParams, J: ActionTriple) -> float:
    """
    E = -2π²α²m / (J_r + J_θ + J_φ)²

    Raises:
        DomainError: 作用の和が正でない
    """
    total = J.total
    if not total > 0:
        raise DomainError(f"action sum must be positive, got {total}")
    return -2.0 * math.pi ** 2 * cp.alpha ** 2 * cp.mass / total ** 2


def closed_form_energy(cp: CoulombParams, n: int) -> float:
    """E_n = -α²m / (2n²ħ²)"""
    if n < 1:
        raise DomainError(f"principal quantum number must be >= 1, got {n}")
    return -cp.alpha ** 2 * cp.mass / (2.0 * n ** 2 * cp.hbar ** 2)


def quantized_actions(cp: CoulombParams, qn: QuantumNumbers) -> ActionTriple:
    """秤動 J = 2πħ(n+½) を J_r, J_θ に、回転 J = 2πħn を J_φ に代入"""
    units = cp.units
    libration = 2.0 * math.pi * cp.hbar
    J_phi, _ = rotation_action(qn.n_phi, units)
    return ActionTriple(
        J_r=libration * (qn.n_r + 0.5),
        J_theta=libration * (qn.n_theta + 0.5),
        J_phi=J_phi,
    )


def coulomb_spectrum(cp: CoulombParams, qn: QuantumNumbers) -> float:
    """
    量子化された作用を E(J) に代入したエネルギー

    閉じた形 -α²m/(2n²ħ²) と一致することを確認してから返します。
    """
    energy = energy_from_actions(cp, quantized_actions(cp, qn))
    expected = closed_form_energy(cp, qn.n)
    if not math.isclose(energy, expected, rel_tol=1e-13):
        raise QuantizationError(
            f"action insertion {energy!r} disagrees with closed form {expected!r} for {qn}"
        )
    return energy


def semiclassical_p_theta(l: int, hbar: float = 1.0) -> float:
    """P_θ = ħ(l+½)"""
    if l < 0:
        raise DomainError(f"l must be >= 0, got {l}")
    return hbar * (l + 0.5)


def degenerate_states(n: int) -> List[QuantumNumbers]:
    """n_r + n_θ + n_φ + 1 = n を満たす全ての量子数"""
    if n < 1:
        raise DomainError(f"principal quantum number must be >= 1, got {n}")
    return [
        QuantumNumbers(n_r=n_r, n_theta=n_theta, n_phi=n - 1 - n_r - n_theta)
        for n_r in range(n)
        for n_theta in range(n - n_r)
    ]


def polar_action_numeric(sc: SeparationConstants, tol: Optional[float] = None) -> float:
    """
    J_θ = 2∫ sqrt(P_θ² - P_φ²/sin²θ) dθ を極方向の転回点間で数値積分
    """
    p_theta, p_phi = sc.P_theta, abs(sc.P_phi)
    if p_theta == p_phi:
        return 0.0
    theta_1 = math.asin(p_phi / p_theta)

    def integrand(theta: np.ndarray) -> np.ndarray:
        return np.sqrt(np.maximum(p_theta ** 2 - p_phi ** 2 / np.sin(theta) ** 2, 0.0))

    result = gauss_legendre_sine(integrand, theta_1, math.pi - theta_1, tol=tol)
    return 2.0 * float(result.value)


def radial_action_numeric(cp: CoulombParams, sc: SeparationConstants,
                          tol: Optional[float] = None) -> float:
    """
    J_r = 2∫ sqrt(2m(E + α/r) - P_θ²/r²) dr を動径方向のカット上で数値積分

    Raises:
        NoLibrationError: Eで動径方向のカットが存在しない
    """
    spec = coulomb(alpha=cp.alpha, ptheta=sc.P_theta)
    try:
        action = total_action(spec, cp.units, sc.E, tol=tol)
    except TurningPointError as e:
        raise NoLibrationError(f"no radial libration at P_theta={sc.P_theta}, E={sc.E}: {e}") from e
    return action.full_period


__all__ = [
    'CoulombParams',
    'SeparationConstants',
    'ActionTriple',
    'QuantumNumbers',
    'angular_actions',
    'radial_action_closed',
    'energy_from_actions',
    'closed_form_energy',
    'quantized_actions',
    'coulomb_spectrum',
    'semiclassical_p_theta',
    'degenerate_states',
    'polar_action_numeric',
    'radial_action_numeric',
]
