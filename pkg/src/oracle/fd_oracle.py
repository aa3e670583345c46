"""
========================================
差分法オラクルモジュール
========================================

ファイル名: fd_oracle.py
パス: src/oracle/fd_oracle.py

【概要】
-(ħ²/2m)ψ'' + Vψ = Eψ を二階中心差分とDirichlet境界で離散化し、
三重対角行列の固有値をSturm列の二分法（LAPACK stebz）で求めます。
半古典ソルバーとは独立な検証用の基準値です。

【離散化】
- 対角:   ħ²/(m h²) + V(q_i)
- 副対角: -ħ²/(2m h²)
- 内部点 q_1 .. q_{points-2} のみを未知数とする

【族ごとの扱い】
- クーロン族: 量子論の遠心力項 (P_θ² - ħ²/4)/(2mr²)
  （P_θ = ħ(l+½) のとき ħ²l(l+1)/(2mr²)）。r = q_min 側の境界は物理的な
  境界なので質量漏れの検査から除外します
- 定運動量の井戸: [q1, q2] の硬い箱として解きます（grid.pointsのみ使用）

【使用例】
>>> from src.physics.potential_model import harmonic, UnitSystem
>>> from src.oracle.fd_oracle import FdGrid, fd_eigenvalues
>>> levels = fd_eigenvalues(harmonic(1.0), UnitSystem(), FdGrid(-12, 12, 4001), 3)
>>> [round(e, 4) for e in levels]
[0.5, 1.5, 2.5]

【依存関係】
- numpy: 行列要素、収束次数のフィット
- scipy.linalg: eigh_tridiagonal

【作成日】2025-11-06
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import eigh_tridiagonal

from src.physics.action_integral import PhaseKind, phase_profile
from src.physics.potential_model import (
    PotentialFamily,
    PotentialSpec,
    UnitSystem,
    angular_constant,
    eval_v,
)
from src.physics.turning_points import find_cuts
from src.utils.config import SolverConfig, get_config
from src.utils.exceptions import DomainError, GridTooSmallError, InvalidGridError, OracleError

logger = logging.getLogger(__name__)

# 既定グリッドで尾に確保する減衰指数（質量 ~e^{-2·30}）
_FD_TAIL_EXPONENT = 30.0
_COULOMB_INNER = 1e-4


@dataclass(frozen=True)
class FdGrid:
    """
    一様な差分グリッド

    Attributes:
        q_min, q_max: 両端（Dirichlet境界）
        points: 端点を含む点数（≥ 3）
    """
    q_min: float
    q_max: float
    points: int

    def __post_init__(self):
        if not (math.isfinite(self.q_min) and math.isfinite(self.q_max)):
            raise InvalidGridError("grid bounds must be finite")
        if self.q_max <= self.q_min:
            raise InvalidGridError(f"grid needs q_max > q_min, got [{self.q_min}, {self.q_max}]")
        if self.points < 3:
            raise InvalidGridError(f"grid needs at least 3 points, got {self.points}")

    @property
    def h(self) -> float:
        return (self.q_max - self.q_min) / (self.points - 1)

    @property
    def interior(self) -> np.ndarray:
        return np.linspace(self.q_min, self.q_max, self.points)[1:-1]


def _effective_grid(spec: PotentialSpec, grid: FdGrid) -> FdGrid:
    if spec.family is PotentialFamily.CONSTANT_MOMENTUM:
        return FdGrid(spec.param('q1'), spec.param('q2'), grid.points)
    if spec.family is PotentialFamily.COULOMB and grid.q_min <= 0:
        raise InvalidGridError(f"radial grid needs q_min > 0, got {grid.q_min}")
    return grid


def fd_potential(spec: PotentialSpec, units: UnitSystem, q: np.ndarray) -> np.ndarray:
    """差分法で使うポテンシャル（クーロン族は量子論の遠心力項）"""
    if spec.family is PotentialFamily.CONSTANT_MOMENTUM:
        return np.zeros_like(q)
    if spec.family is PotentialFamily.COULOMB:
        p_theta = angular_constant(spec, units)
        numerator = p_theta ** 2 - 0.25 * units.hbar ** 2
        return -spec.param('alpha') / q + numerator / (2.0 * units.mass * q ** 2)
    return np.asarray(eval_v(spec, q, units), dtype=float)


def fd_matrix(spec: PotentialSpec, units: UnitSystem,
              grid: FdGrid) -> Tuple[np.ndarray, np.ndarray]:
    """三重対角行列の (対角, 副対角)"""
    grid = _effective_grid(spec, grid)
    kinetic = units.hbar ** 2 / (units.mass * grid.h ** 2)
    q = grid.interior
    diagonal = kinetic + fd_potential(spec, units, q)
    off_diagonal = np.full(q.size - 1, -0.5 * kinetic)
    return diagonal, off_diagonal


def _check_boundary_mass(spec: PotentialSpec, vectors: np.ndarray,
                         threshold: float) -> None:
    if spec.family is PotentialFamily.CONSTANT_MOMENTUM:
        return
    weights = vectors ** 2
    upper = weights[-2:, :].sum(axis=0)
    lower = np.zeros_like(upper) if spec.family is PotentialFamily.COULOMB \
        else weights[:2, :].sum(axis=0)
    leaking = np.flatnonzero((upper > threshold) | (lower > threshold))
    if leaking.size:
        index = int(leaking[0])
        mass = max(float(upper[index]), float(lower[index]))
        raise GridTooSmallError(
            f"grid too small: eigenfunction {index} has mass {mass:.3e} within 2h of a boundary"
        )


def fd_eigenvalues(spec: PotentialSpec, units: UnitSystem, grid: FdGrid, k: int,
                   config: Optional[SolverConfig] = None) -> List[float]:
    """
    差分化したハミルトニアンの下からk個の固有値

    Args:
        spec: ポテンシャル仕様
        units: 単位系
        grid: 差分グリッド
        k: 固有値の個数（1 ≤ k < points - 2）
        config: ソルバー設定

    Returns:
        List[float]: 昇順の固有値

    Raises:
        OracleError: kが範囲外
        InvalidGridError: 動径グリッドが原点を含む
        GridTooSmallError: 固有関数の質量が境界から2h以内に1e-8を超えて残る
    """
    config = config or get_config()
    effective = _effective_grid(spec, grid)
    if not 1 <= k < effective.points - 2:
        raise OracleError(f"k={k} out of range for {effective.points} grid points")

    diagonal, off_diagonal = fd_matrix(spec, units, effective)
    values, vectors = eigh_tridiagonal(
        diagonal, off_diagonal,
        select='i', select_range=(0, k - 1),
        lapack_driver='stebz',
        tol=2.0 * np.finfo(float).tiny,
    )
    _check_boundary_mass(spec, vectors, config.fd_boundary_mass)

    logger.debug(f"fd_eigenvalues {spec.describe()} on [{effective.q_min:g}, {effective.q_max:g}] "
                 f"x {effective.points}: {values.tolist()}")
    return [float(v) for v in values]


def _decay_distance(spec: PotentialSpec, units: UnitSystem, E: float, tp: float,
                    direction: int, scale: float, config: SolverConfig) -> float:
    """転回点から減衰指数が_FD_TAIL_EXPONENTに達するまでの距離"""
    distance = scale / 64.0
    for _ in range(40):
        q = tp + direction * distance
        if spec.family is PotentialFamily.COULOMB and q <= 0:
            break
        phi = phase_profile(spec, units, E, tp, np.array([q]), PhaseKind.DECAY, config=config)[0]
        if phi >= _FD_TAIL_EXPONENT:
            return distance
        distance *= 2.0
    raise OracleError(f"no decaying tail found beyond the turning point {tp:.6g} at E={E:.12g}")


def default_fd_grid(spec: PotentialSpec, units: UnitSystem, E_top: float,
                    points: Optional[int] = None,
                    config: Optional[SolverConfig] = None) -> FdGrid:
    """
    エネルギーE_topの準位まで収まる既定グリッド

    外側の転回点から減衰指数が30に達する距離だけ両側に広げます。
    クーロン族の内端は 1e-4（内側転回点がそれより近ければその1/10）です。
    """
    config = config or get_config()
    points = points or config.fd_default_points
    if spec.family is PotentialFamily.CONSTANT_MOMENTUM:
        return FdGrid(spec.param('q1'), spec.param('q2'), points)

    cuts = find_cuts(spec, units, E_top, config=config).cuts
    q_left, q_right = cuts[0][0], cuts[-1][1]
    width = q_right - q_left
    upper = q_right + _decay_distance(spec, units, E_top, q_right, +1, width, config)

    if spec.family is PotentialFamily.COULOMB:
        lower = _COULOMB_INNER if q_left <= 0 else min(_COULOMB_INNER, 0.1 * q_left)
    else:
        lower = q_left - _decay_distance(spec, units, E_top, q_left, -1, width, config)

    grid = FdGrid(lower, upper, points)
    logger.info(f"default FD grid for {spec.describe()}: [{lower:.6g}, {upper:.6g}] x {points}")
    return grid


def richardson_slope(errors: Sequence[float], spacings: Sequence[float]) -> float:
    """log|誤差| と log h の最小二乗直線の傾き（収束次数）"""
    if len(errors) != len(spacings) or len(errors) < 2:
        raise DomainError("need at least two (error, spacing) pairs of equal length")
    slope, _ = np.polyfit(np.log(spacings), np.log(np.abs(errors)), 1)
    return float(slope)


__all__ = [
    'FdGrid',
    'fd_potential',
    'fd_matrix',
    'fd_eigenvalues',
    'default_fd_grid',
    'richardson_slope',
]
