"""
========================================
ポテンシャルモデルモジュール
========================================

ファイル名: potential_model.py
パス: src/physics/potential_model.py

【概要】
ポテンシャル族のカタログ、点評価V(q)、および古典運動量
p(q) = dW/dq（Hamilton-Jacobi方程式の解）を提供するモジュールです。
全ての関数は不変な入力の純関数で、並行評価しても安全です。

【対応ポテンシャル族】
- harmonic:   V = ½mω²(q-center)²
- morse:      V = D(e^{-2a(q-q0)} - 2e^{-a(q-q0)})   （解離極限 0）
- quartic:    V = c4·q⁴
- doublewell: V = scale·((q-center)² - a²)²
- coulomb:    V = -α/r + P_θ²/(2m r²)   （r > 0）
- cmwell:     定運動量の井戸（壁 q1, q2）。内部 V = 0、外部は硬い壁

【CLI文法】
family:key=value,...（大文字小文字を区別しない）
例: harmonic:omega=1 / morse:D=10,a=1,q0=0 / coulomb:alpha=1,l=0 /
    doublewell:a=1,scale=1 / cmwell:q1=0,q2=3.14159

【使用例】
>>> from src.physics.potential_model import parse_potential, eval_v, UnitSystem
>>> spec = parse_potential("harmonic:omega=1")
>>> eval_v(spec, 0.0, UnitSystem())
0.0

【依存関係】
- numpy: ベクトル化された評価

【作成日】2025-11-04
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Optional, Tuple, Union

import numpy as np

from src.utils.exceptions import DomainError, PotentialParseError

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

# |E-V| <= TURNING_POINT_ATOL * max(1, |E|) で転回点とみなす
TURNING_POINT_ATOL = 1e-12


class PotentialFamily(Enum):
    """ポテンシャル族の列挙型"""
    HARMONIC = "harmonic"
    MORSE = "morse"
    QUARTIC = "quartic"
    DOUBLE_WELL = "doublewell"
    COULOMB = "coulomb"
    CONSTANT_MOMENTUM = "cmwell"


class Region(Enum):
    """古典的な領域の種類"""
    ALLOWED = "Allowed"
    FORBIDDEN = "Forbidden"
    TURNING_POINT = "TurningPoint"


@dataclass(frozen=True)
class UnitSystem:
    """
    単位系（ħと粒子の質量）

    Attributes:
        hbar: 換算プランク定数 ħ = h/2π
        mass: 粒子の質量 m
    """
    hbar: float = 1.0
    mass: float = 1.0

    def __post_init__(self):
        for name in ('hbar', 'mass'):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise DomainError(f"{name} must be positive and finite, got {value}")


@dataclass(frozen=True)
class PotentialSpec:
    """
    ポテンシャルモデルの宣言的記述

    Attributes:
        family: ポテンシャル族
        params: パラメータ（キーは小文字）
    """
    family: PotentialFamily
    params: Dict[str, float] = field(default_factory=dict)

    def param(self, key: str, default: Optional[float] = None) -> float:
        """パラメータを取得（未設定ならdefault、それもなければエラー）"""
        if key in self.params:
            return self.params[key]
        if default is None:
            raise DomainError(f"{self.family.value}: missing parameter '{key}'")
        return default

    @property
    def domain(self) -> Tuple[float, float]:
        return domain_of(self)

    def describe(self) -> str:
        body = ",".join(f"{k}={v:g}" for k, v in sorted(self.params.items()))
        return f"{self.family.value}:{body}"


@dataclass(frozen=True)
class MomentumValue:
    """
    古典運動量の値

    Attributes:
        magnitude: |p| ≥ 0（禁止領域では sqrt(2m(V-E))）
        region: Allowed / Forbidden / TurningPoint
    """
    magnitude: float
    region: Region


# 族ごとの許容キーと既定値（Noneは必須）
_FAMILY_KEYS: Dict[PotentialFamily, Dict[str, Optional[float]]] = {
    PotentialFamily.HARMONIC: {'omega': None, 'center': 0.0},
    PotentialFamily.MORSE: {'d': None, 'a': None, 'q0': 0.0},
    PotentialFamily.QUARTIC: {'c4': None},
    PotentialFamily.DOUBLE_WELL: {'a': None, 'scale': 1.0, 'center': 0.0},
    PotentialFamily.COULOMB: {'alpha': None, 'l': None, 'ptheta': None},
    PotentialFamily.CONSTANT_MOMENTUM: {'q1': None, 'q2': None},
}

# 正値が必要なパラメータ
_POSITIVE_KEYS = {'omega', 'd', 'a', 'c4', 'scale', 'alpha'}


def make_potential(family: PotentialFamily, **params: float) -> PotentialSpec:
    """
    パラメータを検証してPotentialSpecを生成

    Args:
        family: ポテンシャル族
        **params: パラメータ（キーは大文字小文字を区別しない）

    Returns:
        PotentialSpec: 検証済みの仕様

    Raises:
        DomainError: 未知のキー、必須キーの欠落、不正な値
    """
    allowed = _FAMILY_KEYS[family]
    values: Dict[str, float] = {}

    for key, value in params.items():
        key_lower = key.lower()
        if key_lower not in allowed:
            raise DomainError(
                f"{family.value}: unknown parameter '{key}'. "
                f"Allowed: {sorted(allowed)}"
            )
        value = float(value)
        if not math.isfinite(value):
            raise DomainError(f"{family.value}: parameter '{key}' must be finite")
        values[key_lower] = value

    for key, default in allowed.items():
        if key in values:
            continue
        if family is PotentialFamily.COULOMB and key in ('l', 'ptheta'):
            continue
        if default is None:
            raise DomainError(f"{family.value}: missing parameter '{key}'")
        values[key] = default

    for key in _POSITIVE_KEYS & values.keys():
        if values[key] <= 0:
            raise DomainError(f"{family.value}: parameter '{key}' must be > 0")

    if family is PotentialFamily.COULOMB:
        if 'l' in values and 'ptheta' in values:
            raise DomainError("coulomb: give either 'l' or 'ptheta', not both")
        if 'l' not in values and 'ptheta' not in values:
            values['l'] = 0.0
        if 'l' in values and (values['l'] < 0 or values['l'] != int(values['l'])):
            raise DomainError("coulomb: 'l' must be a non-negative integer")
        if 'ptheta' in values and values['ptheta'] < 0:
            raise DomainError("coulomb: 'ptheta' must be >= 0")

    if family is PotentialFamily.CONSTANT_MOMENTUM and values['q2'] <= values['q1']:
        raise DomainError("cmwell: q2 must be greater than q1")

    return PotentialSpec(family=family, params=values)


def harmonic(omega: float = 1.0, center: float = 0.0) -> PotentialSpec:
    return make_potential(PotentialFamily.HARMONIC, omega=omega, center=center)


def morse(D: float, a: float, q0: float = 0.0) -> PotentialSpec:
    return make_potential(PotentialFamily.MORSE, d=D, a=a, q0=q0)


def quartic_well(c4: float = 1.0) -> PotentialSpec:
    return make_potential(PotentialFamily.QUARTIC, c4=c4)


def double_well(a: float = 1.0, scale: float = 1.0, center: float = 0.0) -> PotentialSpec:
    return make_potential(PotentialFamily.DOUBLE_WELL, a=a, scale=scale, center=center)


def coulomb(alpha: float = 1.0, l: Optional[int] = None,
            ptheta: Optional[float] = None) -> PotentialSpec:
    """
    有効動径クーロンポテンシャル

    lを与えるとP_θ = ħ(l+½)（評価時の単位系のħを使用）、
    ptheta を与えるとその値をそのまま使います。
    """
    params: Dict[str, float] = {'alpha': alpha}
    if l is not None:
        params['l'] = l
    if ptheta is not None:
        params['ptheta'] = ptheta
    return make_potential(PotentialFamily.COULOMB, **params)


def constant_momentum_well(q1: float = 0.0, q2: float = math.pi) -> PotentialSpec:
    return make_potential(PotentialFamily.CONSTANT_MOMENTUM, q1=q1, q2=q2)


def parse_potential(text: str) -> PotentialSpec:
    """
    CLI文法 family:key=value,... をパース

    Args:
        text: ポテンシャル文字列（例: "morse:D=10,a=1,q0=0"）

    Returns:
        PotentialSpec: パース結果

    Raises:
        PotentialParseError: 文法エラー、未知の族・キー、不正な値
    """
    if not text or not text.strip():
        raise PotentialParseError("empty potential string")

    family_part, _, body = text.strip().partition(':')
    family_name = family_part.strip().lower()
    try:
        family = PotentialFamily(family_name)
    except ValueError:
        known = ", ".join(f.value for f in PotentialFamily)
        raise PotentialParseError(
            f"unknown potential family '{family_part}'. Known: {known}"
        ) from None

    params: Dict[str, float] = {}
    for item in filter(None, (part.strip() for part in body.split(','))):
        key, sep, value = item.partition('=')
        if not sep or not key.strip() or not value.strip():
            raise PotentialParseError(f"malformed parameter '{item}' (expected key=value)")
        key = key.strip().lower()
        if key in params:
            raise PotentialParseError(f"duplicate parameter '{key}'")
        try:
            params[key] = float(value)
        except ValueError:
            raise PotentialParseError(f"parameter '{key}' is not a number: '{value}'") from None

    try:
        spec = make_potential(family, **params)
    except DomainError as e:
        raise PotentialParseError(str(e)) from e

    logger.debug(f"Parsed potential: {spec.describe()}")
    return spec


def domain_of(spec: PotentialSpec) -> Tuple[float, float]:
    """
    eval_vが定義される最大の座標区間

    Returns:
        Tuple[float, float]: (下限, 上限)。クーロンは開区間 (0, ∞)
    """
    if spec.family is PotentialFamily.COULOMB:
        return 0.0, math.inf
    return -math.inf, math.inf


def angular_constant(spec: PotentialSpec, units: UnitSystem) -> float:
    """クーロン族の分離定数P_θ（lが与えられていればħ(l+½)）"""
    if 'ptheta' in spec.params:
        return spec.params['ptheta']
    return units.hbar * (spec.param('l', 0.0) + 0.5)


def _check_domain(spec: PotentialSpec, q: np.ndarray) -> None:
    lo, hi = domain_of(spec)
    if np.any(np.isnan(q)):
        raise DomainError("coordinate is NaN")
    if spec.family is PotentialFamily.COULOMB:
        if np.any(q <= lo):
            raise DomainError(f"coulomb: r must be > 0, got min {np.min(q)}")
    elif np.any(q < lo) or np.any(q > hi):
        raise DomainError(f"coordinate outside domain [{lo}, {hi}]")


def eval_v(spec: PotentialSpec, q: ArrayLike,
           units: Optional[UnitSystem] = None) -> ArrayLike:
    """
    ポテンシャルV(q)を評価

    Args:
        spec: ポテンシャル仕様
        q: 座標（スカラーまたはnumpy配列）
        units: 単位系（省略時は ħ = m = 1）

    Returns:
        V(q)（入力と同じ形）

    Raises:
        DomainError: qが定義域外
    """
    units = units or UnitSystem()
    scalar = np.ndim(q) == 0
    x = np.asarray(q, dtype=float)
    _check_domain(spec, x)

    family = spec.family
    if family is PotentialFamily.HARMONIC:
        omega = spec.param('omega')
        v = 0.5 * units.mass * omega ** 2 * (x - spec.param('center', 0.0)) ** 2
    elif family is PotentialFamily.MORSE:
        depth, a = spec.param('d'), spec.param('a')
        decay = np.exp(-a * (x - spec.param('q0', 0.0)))
        v = depth * (decay ** 2 - 2.0 * decay)
    elif family is PotentialFamily.QUARTIC:
        v = spec.param('c4') * x ** 4
    elif family is PotentialFamily.DOUBLE_WELL:
        a, scale = spec.param('a'), spec.param('scale', 1.0)
        v = scale * ((x - spec.param('center', 0.0)) ** 2 - a ** 2) ** 2
    elif family is PotentialFamily.COULOMB:
        p_theta = angular_constant(spec, units)
        v = -spec.param('alpha') / x + p_theta ** 2 / (2.0 * units.mass * x ** 2)
    else:
        q1, q2 = spec.param('q1'), spec.param('q2')
        v = np.where((x >= q1) & (x <= q2), 0.0, np.inf)

    return float(v) if scalar else v


def kinetic_margin(spec: PotentialSpec, units: UnitSystem, E: float,
                   q: ArrayLike) -> ArrayLike:
    """
    E - V(q) をベクトル化して評価

    定運動量の井戸では壁の外側も |p| = P_n で減衰する尾として扱うため、
    内部で +E、外部で -E、壁上で 0 を返します。
    """
    if spec.family is not PotentialFamily.CONSTANT_MOMENTUM:
        return E - eval_v(spec, q, units)

    scalar = np.ndim(q) == 0
    x = np.asarray(q, dtype=float)
    _check_domain(spec, x)
    q1, q2 = spec.param('q1'), spec.param('q2')
    margin = np.where((x > q1) & (x < q2), E, -E)
    margin = np.where((x == q1) | (x == q2), 0.0, margin)
    return float(margin) if scalar else margin


def turning_point_tolerance(E: float) -> float:
    """転回点判定の許容幅 1e-12·max(1, |E|)"""
    return TURNING_POINT_ATOL * max(1.0, abs(E))


def classical_momentum(spec: PotentialSpec, units: UnitSystem, E: float,
                       q: float) -> MomentumValue:
    """
    古典運動量 p(q) = dW/dq を評価

    Args:
        spec: ポテンシャル仕様
        units: 単位系
        E: エネルギー
        q: 座標

    Returns:
        MomentumValue: 大きさと領域の種類

    Raises:
        DomainError: qが定義域外
    """
    margin = kinetic_margin(spec, units, E, q)
    if abs(margin) <= turning_point_tolerance(E):
        return MomentumValue(magnitude=0.0, region=Region.TURNING_POINT)
    magnitude = math.sqrt(2.0 * units.mass * abs(margin))
    region = Region.ALLOWED if margin > 0 else Region.FORBIDDEN
    return MomentumValue(magnitude=magnitude, region=region)


def momentum_magnitude(spec: PotentialSpec, units: UnitSystem, E: float,
                       q: np.ndarray) -> np.ndarray:
    """|p(q)| = sqrt(2m|E-V|) のベクトル版（求積用）"""
    margin = np.asarray(kinetic_margin(spec, units, E, q), dtype=float)
    return np.sqrt(2.0 * units.mass * np.abs(margin))


def potential_floor(spec: PotentialSpec, units: UnitSystem) -> float:
    """
    ポテンシャルの最小値

    クーロン族はP_θ > 0 なら円軌道エネルギー -mα²/(2P_θ²)、
    P_θ = 0 なら -∞ を返します。
    """
    family = spec.family
    if family is PotentialFamily.MORSE:
        return -spec.param('d')
    if family is PotentialFamily.COULOMB:
        p_theta = angular_constant(spec, units)
        if p_theta == 0:
            return -math.inf
        return -units.mass * spec.param('alpha') ** 2 / (2.0 * p_theta ** 2)
    return 0.0


def energy_ceiling(spec: PotentialSpec) -> float:
    """束縛カットが存在する上限エネルギー（閉じ込め型は +∞）"""
    if spec.family in (PotentialFamily.MORSE, PotentialFamily.COULOMB):
        return 0.0
    return math.inf


__all__ = [
    'PotentialFamily',
    'Region',
    'UnitSystem',
    'PotentialSpec',
    'MomentumValue',
    'make_potential',
    'harmonic',
    'morse',
    'quartic_well',
    'double_well',
    'coulomb',
    'constant_momentum_well',
    'parse_potential',
    'domain_of',
    'angular_constant',
    'eval_v',
    'kinetic_margin',
    'turning_point_tolerance',
    'classical_momentum',
    'momentum_magnitude',
    'potential_floor',
    'energy_ceiling',
]
