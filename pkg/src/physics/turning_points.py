"""
========================================
転回点探索モジュール
========================================

ファイル名: turning_points.py
パス: src/physics/turning_points.py

【概要】
試行エネルギーEにおける古典的許容区間（カット）を探索し、
転回点の数（Maslov指数μ）を数えるモジュールです。

【処理フロー】
1. 探索区間を4096点で走査し、E-Vの符号が正となる連続区間を抽出
2. カット幅または隙間が8点未満なら走査密度を倍増（最大2^16点）
3. 各転回点をscipy.optimize.brentqで相対精度1e-12まで精密化
4. μ: 滑らかな転回点は1、定運動量の井戸の硬い壁は2として数える

半直線の定義域（クーロン族）は対数間隔で走査します。
r→0付近の内側転回点と遠方の外側転回点の両方を同じ点数で分解するためです。

【使用例】
>>> from src.physics.potential_model import harmonic, UnitSystem
>>> from src.physics.turning_points import find_cuts
>>> cut_set = find_cuts(harmonic(1.0), UnitSystem(), 0.5)
>>> cut_set.cuts, cut_set.mu
(((-1.0, 1.0),), 2)

【依存関係】
- numpy: 走査
- scipy.optimize: brentqによる転回点の精密化、minimize_scalarによるカット内部の検査

【作成日】2025-11-04
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from src.physics.potential_model import (
    PotentialFamily,
    PotentialSpec,
    UnitSystem,
    angular_constant,
    domain_of,
    energy_ceiling,
    kinetic_margin,
    potential_floor,
)
from src.utils.config import SolverConfig, get_config
from src.utils.exceptions import (
    DegenerateTurningPointsError,
    DomainError,
    EnergyBelowFloorError,
    TurningPointError,
)

logger = logging.getLogger(__name__)

Interval = Tuple[float, float]

# クーロン族の既定探索区間 [COULOMB_INNER, COULOMB_OUTER_FACTOR·α/|E|]
COULOMB_INNER = 1e-6
COULOMB_OUTER_FACTOR = 1e3
# 振幅推定に掛ける余裕
AMPLITUDE_MARGIN = 1.5


@dataclass(frozen=True)
class CutSet:
    """
    エネルギーEにおける古典的許容区間の集合

    Attributes:
        energy: 試行エネルギー
        cuts: 昇順に並んだ互いに素な (q_left, q_right) の組
        mu: 転回点の数（Maslov指数）
    """
    energy: float
    cuts: Tuple[Interval, ...]
    mu: int

    @property
    def nu(self) -> int:
        """カットの数"""
        return len(self.cuts)


def default_search(spec: PotentialSpec, units: UnitSystem, E: float) -> Interval:
    """
    族ごとの既定探索区間

    全直線の族は古典振幅の推定値に1.5倍の余裕を掛けた区間、
    クーロン族は [1e-6, 1e3·α/|E|]（P_θが非常に小さいときは内側を広げる）。

    Args:
        spec: ポテンシャル仕様
        units: 単位系
        E: 試行エネルギー（底より上）

    Returns:
        Interval: (下限, 上限)
    """
    family = spec.family
    m = units.mass

    if family is PotentialFamily.HARMONIC:
        center = spec.param('center', 0.0)
        amplitude = math.sqrt(2.0 * E / (m * spec.param('omega') ** 2))
        return center - AMPLITUDE_MARGIN * amplitude, center + AMPLITUDE_MARGIN * amplitude

    if family is PotentialFamily.QUARTIC:
        amplitude = (E / spec.param('c4')) ** 0.25
        return -AMPLITUDE_MARGIN * amplitude, AMPLITUDE_MARGIN * amplitude

    if family is PotentialFamily.DOUBLE_WELL:
        center = spec.param('center', 0.0)
        amplitude = math.sqrt(spec.param('a') ** 2 + math.sqrt(E / spec.param('scale', 1.0)))
        return center - AMPLITUDE_MARGIN * amplitude, center + AMPLITUDE_MARGIN * amplitude

    if family is PotentialFamily.MORSE:
        depth, a, q0 = spec.param('d'), spec.param('a'), spec.param('q0', 0.0)
        s = math.sqrt(1.0 + E / depth)
        if s >= 1.0:
            # E/D が丸めで0になり外側転回点が表現できない
            raise TurningPointError(
                f"no bounded cut at E={E:.15g}: outer turning point beyond float range"
            )
        x_left = -math.log1p(s) / a
        x_right = -math.log1p(-s) / a
        width = x_right - x_left
        return q0 + x_left - 0.5 * width, q0 + x_right + 0.5 * width

    if family is PotentialFamily.COULOMB:
        alpha = spec.param('alpha')
        p_theta = angular_constant(spec, units)
        inner = COULOMB_INNER
        if p_theta > 0:
            # 内側転回点 ≈ P_θ²/(2mα) より内側から始める
            inner = min(inner, 0.25 * p_theta ** 2 / (m * alpha))
        return inner, COULOMB_OUTER_FACTOR * alpha / abs(E)

    return spec.param('q1'), spec.param('q2')


def _resolve_search(spec: PotentialSpec, units: UnitSystem, E: float,
                    search: Optional[Interval]) -> Interval:
    default_lo, default_hi = default_search(spec, units, E)
    if search is None:
        return default_lo, default_hi

    lo = search[0] if math.isfinite(search[0]) else default_lo
    hi = search[1] if math.isfinite(search[1]) else default_hi
    domain_lo, domain_hi = domain_of(spec)
    if lo >= hi:
        raise DomainError(f"empty search interval [{lo}, {hi}]")
    if lo < domain_lo or hi > domain_hi:
        raise DomainError(f"search interval [{lo}, {hi}] outside domain [{domain_lo}, {domain_hi}]")
    if spec.family is PotentialFamily.COULOMB and lo <= 0:
        lo = default_lo
    return lo, hi


def _runs(inside: np.ndarray) -> List[Tuple[int, int]]:
    """Trueが連続する区間の (開始, 終了) インデックス（両端含む）"""
    padded = np.concatenate(([False], inside, [False])).astype(np.int8)
    edges = np.diff(padded)
    starts = np.flatnonzero(edges == 1)
    stops = np.flatnonzero(edges == -1) - 1
    return list(zip(starts.tolist(), stops.tolist()))


def _narrowest(runs: List[Tuple[int, int]]) -> int:
    """カット幅とカット間の隙間のうち最小の点数"""
    widths = [stop - start + 1 for start, stop in runs]
    gaps = [runs[i + 1][0] - runs[i][1] - 1 for i in range(len(runs) - 1)]
    return min(widths + gaps)


def _interior_dips(margin: np.ndarray, start: int, stop: int) -> np.ndarray:
    """run内部で E-V のサンプル値が極小となるインデックス"""
    if stop - start < 2:
        return np.empty(0, dtype=int)
    middle = margin[start + 1:stop]
    dips = (middle <= margin[start:stop - 1]) & (middle <= margin[start + 2:stop + 1])
    return np.flatnonzero(dips) + start + 1


def _check_no_hidden_gap(f: Callable[[float], float], grid: np.ndarray, margin: np.ndarray,
                         start: int, stop: int, E: float) -> None:
    """
    走査点の間に隠れた禁止領域がないことを確認

    E-V の極小を minimize_scalar で精密化し、0以下なら障壁の頂上が
    走査の分解能より狭い隙間を作っている。

    Raises:
        DegenerateTurningPointsError: カット内部で E-V ≤ 0
    """
    for j in _interior_dips(margin, start, stop):
        left, right = float(grid[j - 1]), float(grid[j + 1])
        result = minimize_scalar(f, bounds=(left, right), method='bounded',
                                 options={'xatol': 1e-12 * max(1.0, right - left)})
        lowest = min(float(result.fun), float(margin[j]))
        if lowest <= 0:
            raise DegenerateTurningPointsError(
                f"degenerate turning points at E={E:.15g}: forbidden gap near "
                f"q={float(result.x):.12g} narrower than the scan resolution"
            )


def find_cuts(spec: PotentialSpec, units: UnitSystem, E: float,
              search: Optional[Interval] = None,
              config: Optional[SolverConfig] = None) -> CutSet:
    """
    エネルギーEにおける古典的許容区間（カット）を探索

    Args:
        spec: ポテンシャル仕様
        units: 単位系
        E: 試行エネルギー
        search: 探索区間（省略時は族ごとの既定値、無限端は既定値で補完）
        config: ソルバー設定

    Returns:
        CutSet: カットの集合とμ

    Raises:
        EnergyBelowFloorError: カットが見つからない
        DegenerateTurningPointsError: 転回点が分解能より近い
        TurningPointError: カットが探索区間の外まで続く
    """
    config = config or get_config()

    floor = potential_floor(spec, units)
    if E <= floor:
        raise EnergyBelowFloorError(
            f"energy below potential floor: E={E:.15g} <= V_min={floor:.15g}"
        )
    if E >= energy_ceiling(spec):
        raise TurningPointError(
            f"no bounded cut at E={E:.15g} (at or above {energy_ceiling(spec):g})"
        )

    if spec.family is PotentialFamily.CONSTANT_MOMENTUM:
        # 二つの硬い壁はそれぞれμに2を寄与する
        cut = (spec.param('q1'), spec.param('q2'))
        return CutSet(energy=E, cuts=(cut,), mu=4)

    lo, hi = _resolve_search(spec, units, E, search)
    log_scale = spec.family is PotentialFamily.COULOMB

    samples = config.scan_samples
    while True:
        grid = np.geomspace(lo, hi, samples) if log_scale else np.linspace(lo, hi, samples)
        with np.errstate(over='ignore'):
            margin = np.asarray(kinetic_margin(spec, units, E, grid))
        runs = _runs(margin > 0)
        if not runs:
            raise EnergyBelowFloorError(
                f"energy below potential floor: no allowed region at E={E:.15g} "
                f"in [{lo:.6g}, {hi:.6g}]"
            )
        narrowest = _narrowest(runs)
        if narrowest >= config.min_cut_samples or samples >= config.scan_max_samples:
            break
        samples *= 2
        logger.debug(f"Scan refined to {samples} samples (narrowest run {narrowest})")

    if narrowest < 2:
        raise DegenerateTurningPointsError(
            f"degenerate turning points at E={E:.15g}: "
            f"features narrower than the scan resolution ({samples} samples)"
        )

    def f(q: float) -> float:
        return float(kinetic_margin(spec, units, E, q))

    xtol = 1e-15 * (hi - lo)
    last = len(grid) - 1
    cuts: List[Interval] = []
    for start, stop in runs:
        if start == 0:
            if log_scale and angular_constant(spec, units) == 0:
                # P_θ = 0: 内側転回点は r = 0 に固定
                q_left = 0.0
            else:
                raise TurningPointError(
                    f"cut extends below search interval at q={lo:.6g} (E={E:.15g})"
                )
        else:
            q_left = brentq(f, grid[start - 1], grid[start],
                            xtol=xtol, rtol=config.turning_point_rtol)
        if stop == last:
            raise TurningPointError(
                f"cut extends above search interval at q={hi:.6g} (E={E:.15g})"
            )
        q_right = brentq(f, grid[stop], grid[stop + 1],
                         xtol=xtol, rtol=config.turning_point_rtol)
        _check_no_hidden_gap(f, grid, margin, start, stop, E)
        cuts.append((float(q_left), float(q_right)))

    cut_set = CutSet(energy=E, cuts=tuple(cuts), mu=2 * len(cuts))
    logger.debug(f"find_cuts E={E:.12g}: nu={cut_set.nu}, mu={cut_set.mu}, cuts={cut_set.cuts}")
    return cut_set


__all__ = ['CutSet', 'default_search', 'find_cuts']
