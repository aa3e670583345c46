"""
========================================
作用積分モジュール
========================================

ファイル名: action_integral.py
パス: src/physics/action_integral.py

【概要】
カット上の片道位相積分 ∫p dq、全周期の作用 J(E) = ∮p dq、
および許容領域・禁止領域での位相関数 φ(q) = (1/ħ)∫ dW を評価します。

【求積法】
転回点での平方根型の端点特異性は q(t) = c + w·sin(t)（t ∈ [-π/2, π/2]、
c・wはカットの中点と半幅）の置換で取り除きます。置換後の被積分関数は
単純転回点で滑らかになるため、Gauss-Legendre則の次数を 16 → 32 → … → 4096
と倍増させ、連続する値の差が許容誤差を下回った時点で収束とします。

【使用例】
>>> from src.physics.potential_model import harmonic, UnitSystem
>>> from src.physics.action_integral import total_action
>>> total_action(harmonic(1.0), UnitSystem(), 1.5).full_period   # 3π
9.42477796076938

【依存関係】
- numpy: ベクトル化された被積分関数
- scipy.special: roots_legendre（Gauss-Legendre節点と重み）

【作成日】2025-11-04
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Tuple, Union

import numpy as np
from scipy.special import roots_legendre

from src.physics.potential_model import (
    PotentialFamily,
    PotentialSpec,
    UnitSystem,
    kinetic_margin,
    turning_point_tolerance,
)
from src.physics.turning_points import CutSet, Interval, find_cuts
from src.utils.config import SolverConfig, get_config
from src.utils.exceptions import DomainError, MixedRegionError, QuadratureError

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

# 位相積分の領域判定に使う内部サンプル数
_REGION_SAMPLES = 257
# 参照点を転回点とみなす緩い許容幅（精密化誤差を吸収）
_REFERENCE_RTOL = 1e-6


class PhaseKind(Enum):
    """位相の種類"""
    OSCILLATORY = "OscillatoryPhase"
    DECAY = "DecayExponent"


@dataclass(frozen=True)
class QuadratureResult:
    """求積結果（値・誤差推定・最終次数）"""
    value: ArrayLike
    error: float
    order: int


@dataclass(frozen=True)
class ActionValue:
    """
    作用の値

    Attributes:
        one_way: カット上の片道積分（複数カットでは合計）
        full_period: J = ∮p dq = 2·Σ one_way
        mu: 転回点の数
        estimated_error: full_periodの誤差推定
        per_cut: カットごとの片道積分
        cut_set: 評価に用いたカット集合
    """
    one_way: float
    full_period: float
    mu: int
    estimated_error: float
    per_cut: Tuple[float, ...] = ()
    cut_set: Optional[CutSet] = None


@dataclass(frozen=True)
class PhaseValue:
    """位相の値（参照転回点から測った非負の値）"""
    phi: float
    kind: PhaseKind


def gauss_legendre_sine(f: Callable[[np.ndarray], np.ndarray],
                        a: float, b: ArrayLike,
                        tol: Optional[float] = None,
                        rel_tol: Optional[float] = None,
                        config: Optional[SolverConfig] = None) -> QuadratureResult:
    """
    正弦置換付きGauss-Legendre則で ∫_a^b f(q) dq を計算

    bに配列を渡すと、共通の始点aから各終点までの積分をまとめて評価します。

    Args:
        f: ベクトル化された被積分関数
        a: 積分の始点
        b: 積分の終点（スカラーまたは配列）
        tol: 絶対許容誤差（省略時は rel_tol·max(1, |I|)）
        rel_tol: 相対許容誤差（省略時は設定値 1e-10）
        config: ソルバー設定

    Returns:
        QuadratureResult: 値・誤差推定・次数

    Raises:
        QuadratureError: 次数上限まで倍増しても収束しない
    """
    config = config or get_config()
    rel_tol = config.action_rel_tol if rel_tol is None else rel_tol

    scalar = np.ndim(b) == 0
    end = np.atleast_1d(np.asarray(b, dtype=float))
    center = 0.5 * (a + end)[:, None]
    half_width = 0.5 * (end - a)[:, None]

    def rule(order: int) -> np.ndarray:
        nodes, weights = roots_legendre(order)
        t = 0.5 * math.pi * nodes
        q = center + half_width * np.sin(t)
        integrand = np.asarray(f(q), dtype=float) * half_width * np.cos(t)
        return 0.5 * math.pi * integrand @ weights

    order = config.quad_min_order
    previous = rule(order)
    error = math.inf
    while order < config.quad_max_order:
        order *= 2
        current = rule(order)
        diff = np.abs(current - previous)
        error = float(np.max(diff))
        target = tol if tol is not None else rel_tol * np.maximum(1.0, np.abs(current))
        if np.all(diff < target):
            value = float(current[0]) if scalar else current
            return QuadratureResult(value=value, error=error, order=order)
        previous = current

    raise QuadratureError(
        f"quadrature did not converge by order {config.quad_max_order} "
        f"(achieved error {error:.3e})",
        achieved_error=error,
    )


def _allowed_integrand(spec: PotentialSpec, units: UnitSystem,
                       E: float) -> Callable[[np.ndarray], np.ndarray]:
    def integrand(q: np.ndarray) -> np.ndarray:
        margin = np.asarray(kinetic_margin(spec, units, E, q), dtype=float)
        return np.sqrt(2.0 * units.mass * np.maximum(margin, 0.0))
    return integrand


def _forbidden_integrand(spec: PotentialSpec, units: UnitSystem,
                         E: float) -> Callable[[np.ndarray], np.ndarray]:
    def integrand(q: np.ndarray) -> np.ndarray:
        with np.errstate(over='ignore'):
            margin = np.asarray(kinetic_margin(spec, units, E, q), dtype=float)
        return np.sqrt(2.0 * units.mass * np.maximum(-margin, 0.0))
    return integrand


def action_over_cut(spec: PotentialSpec, units: UnitSystem, E: float,
                    cut: Interval, tol: Optional[float] = None,
                    config: Optional[SolverConfig] = None) -> ActionValue:
    """
    一つのカット上の片道位相積分 ∫_{q_left}^{q_right} sqrt(2m(E-V)) dq

    Args:
        spec: ポテンシャル仕様
        units: 単位系
        E: エネルギー
        cut: find_cutsが返したカット
        tol: 絶対許容誤差（省略時は 1e-10·max(1, |J|)）
        config: ソルバー設定

    Returns:
        ActionValue: 片道積分（full_periodはその2倍）

    Raises:
        QuadratureError: 次数上限まで収束しない
    """
    q_left, q_right = cut
    result = gauss_legendre_sine(_allowed_integrand(spec, units, E), q_left, q_right,
                                 tol=tol, config=config)
    one_way = float(result.value)
    mu = 4 if spec.family is PotentialFamily.CONSTANT_MOMENTUM else 2
    logger.debug(f"action_over_cut E={E:.12g} cut={cut}: {one_way:.15g} (order {result.order})")
    return ActionValue(
        one_way=one_way,
        full_period=2.0 * one_way,
        mu=mu,
        estimated_error=2.0 * result.error,
        per_cut=(one_way,),
    )


def total_action(spec: PotentialSpec, units: UnitSystem, E: float,
                 tol: Optional[float] = None,
                 search: Optional[Interval] = None,
                 config: Optional[SolverConfig] = None) -> ActionValue:
    """
    全カットにわたる作用 J = 2·Σ(片道積分)

    Args:
        spec: ポテンシャル仕様
        units: 単位系
        E: エネルギー（少なくとも一つのカットが存在すること）
        tol: カットごとの絶対許容誤差
        search: 探索区間
        config: ソルバー設定

    Returns:
        ActionValue: 全周期作用とμ（誤差はカットごとの誤差の和）

    Raises:
        TurningPointError: find_cutsの失敗
        QuadratureError: 求積の失敗
    """
    cut_set = find_cuts(spec, units, E, search=search, config=config)
    per_cut = []
    error = 0.0
    for cut in cut_set.cuts:
        value = action_over_cut(spec, units, E, cut, tol=tol, config=config)
        per_cut.append(value.one_way)
        error += value.estimated_error

    one_way = float(sum(per_cut))
    return ActionValue(
        one_way=one_way,
        full_period=2.0 * one_way,
        mu=cut_set.mu,
        estimated_error=error,
        per_cut=tuple(per_cut),
        cut_set=cut_set,
    )


def effective_quantum_number(spec: PotentialSpec, units: UnitSystem, E: float,
                             search: Optional[Interval] = None,
                             config: Optional[SolverConfig] = None) -> float:
    """
    J(E)/(2πħ) - μ/4

    量子化条件はこの値を整数Nに固定します。準位の間では非整数になります。
    """
    action = total_action(spec, units, E, search=search, config=config)
    return action.full_period / (2.0 * math.pi * units.hbar) - action.mu / 4.0


def _region_kind(spec: PotentialSpec, units: UnitSystem, E: float,
                 reference_tp: float, q: float) -> PhaseKind:
    fractions = np.linspace(0.0, 1.0, _REGION_SAMPLES + 2)[1:-1]
    sample_points = reference_tp + fractions * (q - reference_tp)
    with np.errstate(over='ignore'):
        margin = np.asarray(kinetic_margin(spec, units, E, sample_points), dtype=float)
    tol = turning_point_tolerance(E)
    if np.all(margin > -tol):
        return PhaseKind.OSCILLATORY
    if np.all(margin < tol):
        return PhaseKind.DECAY
    raise MixedRegionError(
        f"mixed-region phase: [{min(reference_tp, q):.6g}, {max(reference_tp, q):.6g}] "
        f"crosses between allowed and forbidden regions at E={E:.12g}"
    )


def phase_profile(spec: PotentialSpec, units: UnitSystem, E: float,
                  reference_tp: float, q: np.ndarray, kind: PhaseKind,
                  tol: Optional[float] = None,
                  config: Optional[SolverConfig] = None) -> np.ndarray:
    """
    参照転回点から各点までの位相をまとめて計算（領域判定は呼び出し側の責任）

    Returns:
        np.ndarray: 各点の非負の位相
    """
    integrand = (_allowed_integrand(spec, units, E) if kind is PhaseKind.OSCILLATORY
                 else _forbidden_integrand(spec, units, E))
    points = np.asarray(q, dtype=float)
    phases = np.zeros_like(points)
    nonzero = points != reference_tp
    if np.any(nonzero):
        result = gauss_legendre_sine(integrand, reference_tp, points[nonzero],
                                     tol=tol, config=config)
        phases[nonzero] = np.abs(result.value) / units.hbar
    return phases


def phase_at(spec: PotentialSpec, units: UnitSystem, E: float,
             reference_tp: float, q: float,
             tol: Optional[float] = None,
             config: Optional[SolverConfig] = None) -> PhaseValue:
    """
    位相 φ(q) = (1/ħ)∫|p| dq を参照転回点から測る

    Args:
        spec: ポテンシャル仕様
        units: 単位系
        E: エネルギー
        reference_tp: Eの転回点
        q: 評価点
        tol: 絶対許容誤差
        config: ソルバー設定

    Returns:
        PhaseValue: 許容側ならOscillatoryPhase、禁止側ならDecayExponent

    Raises:
        DomainError: reference_tpが転回点でない
        MixedRegionError: 区間が許容領域と禁止領域をまたぐ
    """
    margin = float(kinetic_margin(spec, units, E, reference_tp))
    if abs(margin) > _REFERENCE_RTOL * max(1.0, abs(E)):
        raise DomainError(f"reference {reference_tp:.12g} is not a turning point at E={E:.12g}")

    if q == reference_tp:
        return PhaseValue(phi=0.0, kind=PhaseKind.OSCILLATORY)

    kind = _region_kind(spec, units, E, reference_tp, q)
    phi = phase_profile(spec, units, E, reference_tp, np.array([q]), kind,
                        tol=tol, config=config)[0]
    return PhaseValue(phi=float(phi), kind=kind)


__all__ = [
    'PhaseKind',
    'QuadratureResult',
    'ActionValue',
    'PhaseValue',
    'gauss_legendre_sine',
    'action_over_cut',
    'total_action',
    'effective_quantum_number',
    'phase_profile',
    'phase_at',
]
