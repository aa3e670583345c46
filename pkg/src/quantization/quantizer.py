"""
========================================
量子化条件ソルバーモジュール
========================================

ファイル名: quantizer.py
パス: src/quantization/quantizer.py

【概要】
量子化条件 J(E) = 2πħ(N + μ(E)/4) をエネルギーEについて解きます。
μは試行エネルギーごとに再評価するため、二重井戸で一つのカットから
二つのカットへ移る領域でも同じ条件式がそのまま使えます。

【処理フロー】
1. 下端 E_lo = V_min + 1e-3·max(1, |V_min|) で g(E) = J - 2πħ(N+μ/4) < 0 を確認
2. 上方へ幾何級数的に拡大し g > 0 となる点でブラケットを確定
   （上限のある族（モース・クーロン）は上限までの距離を半分ずつ縮める。
   探索区間を制限したときに区間の端を越えた試行点は新しい上限になる）
3. scipy.optimize.brentq で根を求める
4. 根の両側でμを再評価し、変化していれば StraddleError
   （μの異なる両端の間で求積が破綻した場合も同じ）

【使用例】
>>> from src.physics.potential_model import harmonic, UnitSystem
>>> from src.quantization.quantizer import spectrum
>>> [round(level.E, 9) for level in spectrum(harmonic(1.0), UnitSystem(), 2)]
[0.5, 1.5, 2.5]

【依存関係】
- scipy.optimize: brentq
- numpy: nextafter

【作成日】2025-11-05
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
from scipy.optimize import brentq

from src.physics.action_integral import total_action
from src.physics.potential_model import (
    PotentialFamily,
    PotentialSpec,
    UnitSystem,
    energy_ceiling,
    potential_floor,
)
from src.physics.turning_points import Interval, find_cuts
from src.utils.config import SolverConfig, get_config
from src.utils.exceptions import (
    DegenerateTurningPointsError,
    DomainError,
    EnergyBelowFloorError,
    QuadratureError,
    QuantizationError,
    SemiclassicalError,
    StraddleError,
    TurningPointError,
    UnboundedSearchError,
)

logger = logging.getLogger(__name__)

# P_θ = 0 のクーロン族の探索開始エネルギー（単位 mα²/ħ²）
_DEEP_COULOMB_START = -50.0


@dataclass(frozen=True)
class QuantizationTarget:
    """
    量子化条件の目標値

    Attributes:
        N: 節の総数
        mu: 転回点の数
        target_action: 2πħ(N + μ/4)
    """
    N: int
    mu: int
    target_action: float


@dataclass(frozen=True)
class EnergyLevel:
    """
    量子化されたエネルギー準位

    Attributes:
        N: 節の総数
        E: エネルギー
        residual: |J(E) - 2πħ(N + μ/4)|
        bracket: (E_lo, E_hi)。この区間内でμは一定
        mu: 準位でのμ
    """
    N: int
    E: float
    residual: float
    bracket: Tuple[float, float]
    mu: int


def quantization_target(N: int, mu: int, units: UnitSystem) -> QuantizationTarget:
    """目標作用 2πħ(N + μ/4) を作る"""
    if N < 0:
        raise DomainError(f"node count must be >= 0, got {N}")
    return QuantizationTarget(N=N, mu=mu,
                              target_action=2.0 * math.pi * units.hbar * (N + mu / 4.0))


def rotation_action(n: int, units: UnitSystem) -> Tuple[float, float]:
    """
    回転運動の量子化 J = 2πħn、P = J/2π = ħn

    Raises:
        DomainError: nが負
    """
    if n < 0:
        raise DomainError(f"rotation quantum number must be >= 0, got {n}")
    action = 2.0 * math.pi * units.hbar * n
    return action, action / (2.0 * math.pi)


def constant_momentum_level(spec: PotentialSpec, units: UnitSystem, n: int) -> EnergyLevel:
    """
    定運動量の井戸を滑らかな二つの転回点として読んだ準位

    P_n = πħ(n+½)/(q2-q1)、E = P_n²/2m。大域的な状態関数の構成に使います。
    硬い壁（μ=4）の準位は solve_level が返します。
    """
    if spec.family is not PotentialFamily.CONSTANT_MOMENTUM:
        raise DomainError(f"constant_momentum_level needs cmwell, got {spec.family.value}")
    if n < 0:
        raise DomainError(f"node count must be >= 0, got {n}")

    length = spec.param('q2') - spec.param('q1')
    momentum = math.pi * units.hbar * (n + 0.5) / length
    energy = momentum ** 2 / (2.0 * units.mass)
    target = quantization_target(n, 2, units)
    residual = abs(2.0 * length * math.sqrt(2.0 * units.mass * energy) - target.target_action)
    bracket = (float(np.nextafter(energy, -np.inf)), float(np.nextafter(energy, np.inf)))
    return EnergyLevel(N=n, E=energy, residual=residual, bracket=bracket, mu=2)


class _Condition:
    """g(E) = J(E) - 2πħ(N + μ(E)/4)"""

    def __init__(self, spec: PotentialSpec, units: UnitSystem, N: int,
                 search: Optional[Interval], config: SolverConfig):
        self.spec = spec
        self.units = units
        self.N = N
        self.search = search
        self.config = config
        self.evaluations = 0

    def evaluate(self, E: float) -> Tuple[float, int]:
        self.evaluations += 1
        action = total_action(self.spec, self.units, E, search=self.search, config=self.config)
        target = quantization_target(self.N, action.mu, self.units)
        return action.full_period - target.target_action, action.mu

    def __call__(self, E: float) -> float:
        return self.evaluate(E)[0]


def _starting_energy(spec: PotentialSpec, units: UnitSystem, config: SolverConfig) -> Tuple[float, float]:
    """(開始エネルギー, 初期ステップ)"""
    floor = potential_floor(spec, units)
    if math.isinf(floor):
        scale = units.mass * spec.param('alpha') ** 2 / units.hbar ** 2
        return _DEEP_COULOMB_START * scale, config.initial_step * scale
    step = config.initial_step * max(1.0, abs(floor))
    return floor + step, step


def _lower_point(condition: _Condition, config: SolverConfig,
                 seed: Optional[float]) -> Tuple[float, float, int, float]:
    """g < 0 となる下端点を探す。戻り値は (E_lo, g(E_lo), μ(E_lo), step)"""
    spec, units = condition.spec, condition.units
    start, step = _starting_energy(spec, units, config)
    floor = potential_floor(spec, units)

    if seed is not None:
        try:
            g_seed, mu_seed = condition.evaluate(seed)
            if g_seed < 0:
                return seed, g_seed, mu_seed, step
        except (TurningPointError, QuadratureError):
            pass
        logger.debug(f"Seed E={seed:.12g} rejected for N={condition.N}")

    energy = start
    for _ in range(config.max_expansions):
        try:
            g, mu = condition.evaluate(energy)
            if g < 0:
                return energy, g, mu, step
        except (EnergyBelowFloorError, DegenerateTurningPointsError):
            # 底に近すぎて走査で分解できない
            pass
        if math.isinf(floor):
            energy *= 4.0
            step *= 4.0
        else:
            step /= 16.0
            energy = floor + step

    raise UnboundedSearchError(
        f"no energy with J below target found above V_min={floor:.6g}", level=condition.N
    )


def _bracket(condition: _Condition, config: SolverConfig,
             seed: Optional[float]) -> Tuple[float, int, float, int]:
    """
    g(E_lo) < 0 < g(E_hi) となるブラケット

    上限のない族は幅を倍々に広げ、上限のある族は上限との中点へ進む。
    探索区間を越えた試行点（カットが区間の端に届いた点）は新しい上限として扱い、
    以後はその点と直前の g < 0 の点の中点を試す。

    Returns:
        (E_lo, μ(E_lo), E_hi, μ(E_hi))
    """
    anchor, _, mu_lower, step = _lower_point(condition, config, seed)
    ceiling = energy_ceiling(condition.spec)
    unbounded = condition.search is None and not math.isfinite(ceiling)
    closest = config.bracket_rel_gap * max(1.0, abs(anchor))

    cap = ceiling
    lower = last = anchor
    for k in range(config.max_expansions):
        if math.isfinite(cap):
            trial = 0.5 * (last + cap)
            if cap - trial < closest:
                break
        else:
            trial = anchor + step * 2.0 ** k
            if trial > config.e_max:
                break
        last = trial
        try:
            g, mu = condition.evaluate(trial)
        except (DegenerateTurningPointsError, QuadratureError) as e:
            logger.debug(f"N={condition.N}: skipped E={trial:.12g} ({e})")
            continue
        except TurningPointError:
            if unbounded:
                raise
            cap, last = trial, lower
            continue
        if g > 0:
            logger.debug(f"N={condition.N}: bracket [{lower:.12g}, {trial:.12g}] after {k + 1} trials")
            return lower, mu_lower, trial, mu
        lower, mu_lower = trial, mu

    limit = cap if math.isfinite(cap) else config.e_max
    raise UnboundedSearchError(
        f"unbounded search: no bracket for N={condition.N} below E_max={limit:.6g}",
        level=condition.N,
    )


def _straddle_check(condition: _Condition, E: float) -> Tuple[Tuple[float, float], int]:
    """根の両側でμを評価し、ブラケットとμを返す"""
    spec, units = condition.spec, condition.units
    half_width = 1e-9 * max(1.0, abs(E))
    ceiling = energy_ceiling(spec)
    if E + half_width >= ceiling:
        half_width = 0.5 * (ceiling - E)
    floor = potential_floor(spec, units)
    if E - half_width <= floor:
        half_width = 0.5 * (E - floor)

    lo, hi = E - half_width, E + half_width
    try:
        mu_lo = find_cuts(spec, units, lo, search=condition.search, config=condition.config).mu
        mu_hi = find_cuts(spec, units, hi, search=condition.search, config=condition.config).mu
    except TurningPointError as e:
        raise StraddleError(
            f"level straddles topology change near E={E:.12g}: {e}", level=condition.N
        ) from e
    if mu_lo != mu_hi:
        raise StraddleError(
            f"level straddles topology change at E={E:.12g} (mu {mu_lo} -> {mu_hi})",
            level=condition.N,
        )
    return (lo, hi), mu_lo


def solve_level(spec: PotentialSpec, units: UnitSystem, N: int,
                tol: Optional[float] = None,
                config: Optional[SolverConfig] = None,
                seed: Optional[float] = None,
                search: Optional[Interval] = None) -> EnergyLevel:
    """
    量子化条件を満たすエネルギーを一つ求める

    Args:
        spec: 束縛型のポテンシャル仕様
        units: 単位系
        N: 節の総数（≥ 0）
        tol: 作用の許容残差（省略時は 1e-9·ħ）
        config: ソルバー設定
        seed: g(seed) < 0 が期待される開始エネルギー（前の準位など）
        search: カット探索を制限する区間（二重井戸の片側だけを解く場合など）

    Returns:
        EnergyLevel: 準位

    Raises:
        DomainError: Nが負
        StraddleError: 最終ブラケット内でμが変化した
        UnboundedSearchError: E_maxまでにブラケットが見つからない
        QuantizationError: 残差が許容値を超えた
    """
    config = config or get_config()
    if N < 0:
        raise DomainError(f"node count must be >= 0, got {N}")
    tol = config.solver_tol(units.hbar) if tol is None else tol

    condition = _Condition(spec, units, N, search, config)
    e_lo, mu_lo, e_hi, mu_hi = _bracket(condition, config, seed)

    xtol = 1e-15 * max(1.0, abs(e_lo), abs(e_hi))
    try:
        energy = brentq(condition, e_lo, e_hi, xtol=xtol, rtol=4 * np.finfo(float).eps)
    except DegenerateTurningPointsError as e:
        raise StraddleError(f"level straddles topology change: {e}", level=N) from e
    except QuadratureError as e:
        if mu_lo == mu_hi:
            raise
        # μが変わる点で g が跳ぶため、根の探索がその点へ寄っていく
        raise StraddleError(
            f"level straddles topology change between E={e_lo:.12g} (mu={mu_lo}) "
            f"and E={e_hi:.12g} (mu={mu_hi}): {e}", level=N
        ) from e

    bracket, mu = _straddle_check(condition, energy)
    g, _ = condition.evaluate(energy)
    residual = abs(g)
    if residual > tol:
        raise QuantizationError(
            f"residual {residual:.3e} exceeds tolerance {tol:.3e} at E={energy:.15g}", level=N
        )

    logger.info(f"{spec.describe()} N={N}: E={energy:.15g} (mu={mu}, residual={residual:.2e}, "
                f"{condition.evaluations} action evaluations)")
    return EnergyLevel(N=N, E=float(energy), residual=residual, bracket=bracket, mu=mu)


def spectrum(spec: PotentialSpec, units: UnitSystem, N_max: int,
             tol: Optional[float] = None,
             search: Optional[Interval] = None,
             config: Optional[SolverConfig] = None) -> List[EnergyLevel]:
    """
    N = 0..N_max の準位を順に求める

    各準位は前の準位のエネルギーを開始点に使います。

    Raises:
        DomainError: N_maxが負
        QuantizationError: いずれかの準位の失敗（準位番号付き）
    """
    config = config or get_config()
    if N_max < 0:
        raise DomainError(f"N_max must be >= 0, got {N_max}")
    tol = config.solver_tol(units.hbar) if tol is None else tol

    levels: List[EnergyLevel] = []
    seed: Optional[float] = None
    for N in range(N_max + 1):
        try:
            level = solve_level(spec, units, N, tol=tol, config=config, seed=seed, search=search)
        except QuantizationError as e:
            raise e.annotate(N) from e
        except SemiclassicalError as e:
            raise QuantizationError(f"N={N}: {e}", level=N) from e

        separation = config.level_separation_rtol * max(1.0, abs(level.E))
        if levels and level.E <= levels[-1].E + separation:
            raise QuantizationError(
                f"N={N}: spectrum not strictly increasing "
                f"({levels[-1].E:.15g} -> {level.E:.15g})", level=N
            )
        levels.append(level)
        seed = level.E

    return levels


__all__ = [
    'QuantizationTarget',
    'EnergyLevel',
    'quantization_target',
    'rotation_action',
    'constant_momentum_level',
    'solve_level',
    'spectrum',
]
