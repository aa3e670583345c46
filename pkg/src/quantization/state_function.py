"""
========================================
状態関数モジュール
========================================

ファイル名: state_function.py
パス: src/quantization/state_function.py

【概要】
二つの転回点 q1 < q2 を持つ準位について、接続公式から区分的な状態関数ψ₀を
組み立て、節を数え、台形則で規格化します。

    q < q1      : (1/√2)·e^{-Φ(q)}           （Φはq1から測った減衰指数）
    q1 ≤ q ≤ q2 : cos(φ(q) - φ1 - π/4)       （φはq1から測った振動位相）
    q > q2      : ((-1)^n/√2)·e^{-Φ(q)}       （Φはq2から測った減衰指数）

【グリッド】
- 振動領域: 半波長あたり64点（最大運動量から間隔hを決める）
- 両側の尾: 同じ間隔hで外側へ伸ばし、減衰指数が20を超えたところで打ち切る
- 半直線の定義域では境界の手前（r > h/2）で止める

【規格化定数について】
規格化は常に数値積分で行います。定運動量の形で|ψ₀|²を直接積分すると
全重み (ħ/2P)(π(n+½)+2)·C² となり、分母 π(n+½)+1 の C_n では
規格化が (π(n+½)+2)/(π(n+½)+1) だけずれます。measured_paper_norm が
この値を測って警告ログに出します。

【依存関係】
- numpy: 配列演算
- scipy.integrate: trapezoid（規格化）
- pandas: CSV出力用のDataFrame

【作成日】2025-11-05
"""

import cmath
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np
import pandas as pd
from scipy.integrate import trapezoid

from src.physics.action_integral import PhaseKind, phase_profile
from src.physics.potential_model import (
    PotentialSpec,
    UnitSystem,
    domain_of,
    momentum_magnitude,
)
from src.physics.turning_points import find_cuts
from src.quantization.quantizer import EnergyLevel
from src.utils.config import SolverConfig, get_config
from src.utils.exceptions import DomainError, ResolutionError, UnsupportedModeError

logger = logging.getLogger(__name__)

_SQRT2 = math.sqrt(2.0)
# 尾を伸ばすときの1回あたりの点数と上限
_TAIL_CHUNK = 256
_TAIL_MAX_POINTS = 2_000_000


class StateRegion(Enum):
    """状態関数の区分"""
    LEFT_TAIL = "LeftTail"
    OSCILLATORY = "Oscillatory"
    RIGHT_TAIL = "RightTail"


@dataclass(frozen=True)
class ConnectionCoefficients:
    """
    転回点での振幅

    Attributes:
        A, B: 振動側の振幅（e^{iφ}, e^{-iφ} の係数）
        C, D: 指数側の振幅
    """
    A: complex
    B: complex
    C: complex
    D: complex


@dataclass(frozen=True)
class StateGridSpec:
    """
    状態関数のグリッド指定

    q_min / q_max / points を全て与えると一様グリッドをそのまま使います。
    省略時は半波長あたりの点数と尾の打ち切り指数から自動生成します。
    """
    samples_per_half_wave: Optional[int] = None
    tail_exponent: Optional[float] = None
    q_min: Optional[float] = None
    q_max: Optional[float] = None
    points: Optional[int] = None

    @property
    def explicit(self) -> bool:
        return None not in (self.q_min, self.q_max, self.points)


@dataclass(frozen=True)
class StateFunctionTable:
    """
    規格化された状態関数の表

    Attributes:
        grid: 昇順の座標
        values: ψ₀の値
        regions: 各点の区分
        node_count: 符号変化の数
        norm: ∫|ψ₀|² dq（規格化後）
        level: 元の準位
        turning_points: (q1, q2)
    """
    grid: np.ndarray
    values: np.ndarray
    regions: Tuple[StateRegion, ...]
    node_count: int
    norm: float
    level: EnergyLevel
    turning_points: Tuple[float, float]


@dataclass(frozen=True)
class PaperNormConstant:
    """C_n = sqrt(2P_n/((π(n+½)+1)ħ))"""
    C_n: float


@dataclass(frozen=True)
class PaperNormCheck:
    """
    C_nで振幅を与えた定運動量形の規格化の測定結果

    Attributes:
        C_n: 振幅
        measured: 台形則で測った ∫|ψ₀|² dq
        closed_form: (π(n+½)+2)/(π(n+½)+1)
    """
    C_n: float
    measured: float
    closed_form: float


def connect(C: complex, D: complex) -> Tuple[complex, complex]:
    """
    指数側の振幅(C, D)から振動側の振幅(A, B)を求める

    A = (C·e^{iπ/4} + D·e^{-iπ/4})/√2
    B = (C·e^{-iπ/4} + D·e^{iπ/4})/√2
    """
    plus = cmath.exp(0.25j * math.pi)
    minus = cmath.exp(-0.25j * math.pi)
    A = (C * plus + D * minus) / _SQRT2
    B = (C * minus + D * plus) / _SQRT2
    return A, B


def connection_coefficients(C: complex, D: complex) -> ConnectionCoefficients:
    A, B = connect(C, D)
    return ConnectionCoefficients(A=A, B=B, C=C, D=D)


def general_state_value(A: complex, B: complex, phi: np.ndarray) -> np.ndarray:
    """二つの平面波の重ね合わせ A·e^{iφ} + B·e^{-iφ}"""
    phase = np.asarray(phi, dtype=float)
    return A * np.exp(1j * phase) + B * np.exp(-1j * phase)


def _two_turning_points(spec: PotentialSpec, units: UnitSystem,
                        level: EnergyLevel, config: SolverConfig) -> Tuple[float, float]:
    cut_set = find_cuts(spec, units, level.E, config=config)
    if cut_set.nu != 1:
        raise UnsupportedModeError(
            f"statefn supports two-turning-point levels (found {cut_set.nu} cuts at E={level.E:.12g})"
        )
    return cut_set.cuts[0]


def _oscillatory_spacing(spec: PotentialSpec, units: UnitSystem, E: float,
                         q1: float, q2: float, samples_per_half_wave: int) -> float:
    sample_points = np.linspace(q1, q2, 1025)[1:-1]
    p_max = float(np.max(momentum_magnitude(spec, units, E, sample_points)))
    return math.pi * units.hbar / (samples_per_half_wave * p_max)


def _tail(spec: PotentialSpec, units: UnitSystem, E: float, tp: float,
          direction: int, h: float, tail_exponent: float,
          config: SolverConfig) -> np.ndarray:
    """転回点から外側へ、減衰指数がtail_exponentを超えるまでの点（転回点から近い順）"""
    lo, _ = domain_of(spec)
    boundary = lo + 0.5 * h if math.isfinite(lo) else -math.inf
    points = []
    base_q, base_phi = tp, 0.0
    k = 0
    while k < _TAIL_MAX_POINTS:
        q = tp + direction * h * np.arange(k + 1, k + _TAIL_CHUNK + 1)
        if direction < 0:
            q = q[q > boundary]
            if q.size == 0:
                break
        phi = base_phi + phase_profile(spec, units, E, base_q, q, PhaseKind.DECAY, config=config)
        reached = np.flatnonzero(phi >= tail_exponent)
        if reached.size:
            points.append(q[:reached[0] + 1])
            break
        points.append(q)
        base_q, base_phi = float(q[-1]), float(phi[-1])
        if q.size < _TAIL_CHUNK:
            break
        k += _TAIL_CHUNK
    else:
        raise ResolutionError(f"tail did not decay within {_TAIL_MAX_POINTS} samples")
    return np.concatenate(points) if points else np.empty(0)


def _auto_grid(spec: PotentialSpec, units: UnitSystem, E: float,
               q1: float, q2: float, grid_spec: StateGridSpec,
               config: SolverConfig) -> np.ndarray:
    per_half_wave = grid_spec.samples_per_half_wave or config.samples_per_half_wave
    tail_exponent = grid_spec.tail_exponent or config.tail_exponent

    h = _oscillatory_spacing(spec, units, E, q1, q2, per_half_wave)
    count = max(int(math.ceil((q2 - q1) / h)) + 1, 3)
    middle = np.linspace(q1, q2, count)
    h = middle[1] - middle[0]

    left = _tail(spec, units, E, q1, -1, h, tail_exponent, config)[::-1]
    right = _tail(spec, units, E, q2, +1, h, tail_exponent, config)
    logger.debug(f"state grid: {left.size} + {count} + {right.size} points, h={h:.3e}")
    return np.concatenate([left, middle, right])


def _check_resolution(phases: np.ndarray, config: SolverConfig) -> None:
    if phases.size < 2:
        raise ResolutionError("grid has fewer than two samples between the turning points")
    max_step = float(np.max(np.diff(phases)))
    limit = math.pi / config.min_samples_per_half_wave
    if max_step > limit:
        raise ResolutionError(
            f"grid too coarse: phase step {max_step:.4f} exceeds pi/{config.min_samples_per_half_wave}"
        )


def _sign_changes(values: np.ndarray) -> int:
    signs = np.sign(values)
    signs = signs[signs != 0]
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


def count_nodes(table: StateFunctionTable) -> int:
    """厳密な符号変化の数（ちょうど0の点は飛ばす）"""
    return _sign_changes(table.values)


def build_state_function(spec: PotentialSpec, units: UnitSystem, level: EnergyLevel,
                         grid_spec: Optional[StateGridSpec] = None,
                         config: Optional[SolverConfig] = None) -> StateFunctionTable:
    """
    二つの転回点を持つ準位の状態関数ψ₀を組み立てる

    Args:
        spec: ポテンシャル仕様
        units: 単位系
        level: 量子化された準位（定運動量の井戸は constant_momentum_level の結果）
        grid_spec: グリッド指定（省略時は自動）
        config: ソルバー設定

    Returns:
        StateFunctionTable: 規格化済みの表

    Raises:
        UnsupportedModeError: カットが一つでない
        ResolutionError: 振動領域の分解能が半波長あたり16点未満
    """
    config = config or get_config()
    grid_spec = grid_spec or StateGridSpec()
    E = level.E
    n = level.N
    q1, q2 = _two_turning_points(spec, units, level, config)

    if grid_spec.explicit:
        grid = np.linspace(grid_spec.q_min, grid_spec.q_max, grid_spec.points)
        lo, _ = domain_of(spec)
        grid = grid[grid > lo] if math.isfinite(lo) else grid
    else:
        grid = _auto_grid(spec, units, E, q1, q2, grid_spec, config)

    left = grid < q1
    right = grid > q2
    middle = ~(left | right)

    values = np.empty_like(grid)
    regions = np.empty(grid.size, dtype=object)

    phases = phase_profile(spec, units, E, q1, grid[middle], PhaseKind.OSCILLATORY, config=config)
    _check_resolution(phases, config)
    values[middle] = np.cos(phases - 0.25 * math.pi)
    regions[middle] = StateRegion.OSCILLATORY

    if np.any(left):
        decay = phase_profile(spec, units, E, q1, grid[left], PhaseKind.DECAY, config=config)
        values[left] = np.exp(-decay) / _SQRT2
    regions[left] = StateRegion.LEFT_TAIL

    if np.any(right):
        decay = phase_profile(spec, units, E, q2, grid[right], PhaseKind.DECAY, config=config)
        values[right] = (-1) ** n * np.exp(-decay) / _SQRT2
    regions[right] = StateRegion.RIGHT_TAIL

    raw_norm = float(trapezoid(values ** 2, grid))
    values = values / math.sqrt(raw_norm)
    norm = float(trapezoid(values ** 2, grid))

    nodes = _sign_changes(values)
    if nodes != n:
        logger.warning(f"{spec.describe()} N={n}: state function has {nodes} nodes")
    logger.info(f"{spec.describe()} N={n}: {grid.size} samples, norm={norm:.12g}")
    return StateFunctionTable(
        grid=grid, values=values, regions=tuple(regions.tolist()), node_count=nodes,
        norm=norm, level=level, turning_points=(q1, q2),
    )


def boundary_jump(table: StateFunctionTable) -> float:
    """区分の境目をまたぐ隣接サンプル間の最大の差"""
    regions = np.array([region.value for region in table.regions])
    edges = np.flatnonzero(regions[1:] != regions[:-1])
    if edges.size == 0:
        return 0.0
    return float(np.max(np.abs(table.values[edges + 1] - table.values[edges])))


def standing_wave_mismatch(spec: PotentialSpec, units: UnitSystem, level: EnergyLevel,
                           samples: int = 257,
                           config: Optional[SolverConfig] = None) -> float:
    """
    左右の転回点から作った二つの定在波の最大のずれ

    左から: cos(φ-φ1-π/4)、右から: (-1)^n·cos(φ-φ2+π/4)。
    量子化された準位では両者が一致し、ずれは0に近くなります。
    """
    config = config or get_config()
    q1, q2 = _two_turning_points(spec, units, level, config)
    q = np.linspace(q1, q2, samples)
    phases = phase_profile(spec, units, level.E, q1, q, PhaseKind.OSCILLATORY, config=config)
    total = phases[-1]
    from_left = np.cos(phases - 0.25 * math.pi)
    from_right = (-1) ** level.N * np.cos(phases - total + 0.25 * math.pi)
    return float(np.max(np.abs(from_left - from_right)))


def paper_norm_constant(P_n: float, n: int, units: UnitSystem) -> PaperNormConstant:
    """
    振幅 C_n = sqrt(2P_n/((π(n+½)+1)ħ))

    Raises:
        DomainError: P_n ≤ 0 または n < 0
    """
    if not (math.isfinite(P_n) and P_n > 0):
        raise DomainError(f"momentum must be positive, got {P_n}")
    if n < 0:
        raise DomainError(f"node count must be >= 0, got {n}")
    return PaperNormConstant(C_n=math.sqrt(2.0 * P_n / ((math.pi * (n + 0.5) + 1.0) * units.hbar)))


def measured_paper_norm(P_n: float, n: int, units: UnitSystem,
                        points: int = 20001, tail_exponent: float = 20.0) -> PaperNormCheck:
    """
    C_nを振幅とする定運動量形の状態関数を台形則で積分する

    井戸幅は P_n·L = πħ(n+½) から決め、尾は減衰指数tail_exponentまで取ります。
    """
    constant = paper_norm_constant(P_n, n, units)
    length = math.pi * units.hbar * (n + 0.5) / P_n
    tail = tail_exponent * units.hbar / P_n
    q = np.linspace(-tail, length + tail, points)
    wave_number = P_n / units.hbar

    psi = np.where(
        q < 0.0,
        np.exp(wave_number * q) / _SQRT2,
        np.where(q > length,
                 (-1) ** n * np.exp(-wave_number * (q - length)) / _SQRT2,
                 np.cos(wave_number * q - 0.25 * math.pi)),
    )
    measured = float(trapezoid((constant.C_n * psi) ** 2, q))
    closed = (math.pi * (n + 0.5) + 2.0) / (math.pi * (n + 0.5) + 1.0)
    if abs(measured - 1.0) > 1e-6:
        logger.warning(f"C_n normalization for n={n}: integral of |psi|^2 = {measured:.8f} "
                       f"(closed form {closed:.8f}); tables are normalized numerically")
    return PaperNormCheck(C_n=constant.C_n, measured=measured, closed_form=closed)


def table_to_frame(table: StateFunctionTable) -> pd.DataFrame:
    """CSV出力用のDataFrame（列: q, psi, region）"""
    return pd.DataFrame({
        'q': table.grid,
        'psi': table.values,
        'region': [region.value for region in table.regions],
    })


__all__ = [
    'StateRegion',
    'ConnectionCoefficients',
    'StateGridSpec',
    'StateFunctionTable',
    'PaperNormConstant',
    'PaperNormCheck',
    'connect',
    'connection_coefficients',
    'general_state_value',
    'count_nodes',
    'build_state_function',
    'boundary_jump',
    'standing_wave_mismatch',
    'paper_norm_constant',
    'measured_paper_norm',
    'table_to_frame',
]
