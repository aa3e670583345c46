"""
========================================
設定管理モジュール
========================================

ファイル名: config.py
パス: src/utils/config.py

【概要】
ソルバー全体で使用する数値パラメータを一元管理します。
数値設定はコード上のデフォルト値とCLIフラグからのみ決まり、
環境変数から読み込むのはロギング設定（LOG_LEVEL / LOG_FILE）だけです。
これによりCSV出力は環境に依存せず決定的になります。

【使用例】
```python
from src.utils.config import get_config

config = get_config()
print(config.scan_samples)          # 4096
print(config.quad_max_order)        # 4096
print(config.samples_per_half_wave) # 64
```

【作成日】2025-11-04
"""

import os
from dataclasses import dataclass, replace
from typing import Optional
from dotenv import load_dotenv

# ロギング設定のみ.envから読み込む
load_dotenv(override=False)


@dataclass(frozen=True)
class SolverConfig:
    """
    ソルバー設定を保持するデータクラス

    値は不変（frozen）で、変更する場合は with_overrides() で新しい
    インスタンスを作ります。
    """

    # ========================================
    # 転回点探索
    # ========================================
    scan_samples: int = 4096
    scan_max_samples: int = 2 ** 16
    min_cut_samples: int = 8
    turning_point_rtol: float = 1e-12

    # ========================================
    # 求積
    # ========================================
    quad_min_order: int = 16
    quad_max_order: int = 4096
    action_rel_tol: float = 1e-10

    # ========================================
    # 量子化
    # ========================================
    solver_tol_factor: float = 1e-9     # tol = factor * hbar
    floor_offset: float = 1e-9          # E_lo = V_min + offset * max(1, |V_min|)
    initial_step: float = 1e-3          # 最初の試行幅 step * max(1, |V_min|)
    e_max: float = 1e8
    max_expansions: int = 200
    bracket_rel_gap: float = 1e-12      # 上限へ近づける幅の下限 gap * max(1, |E_lo|)
    level_separation_rtol: float = 1e-12  # 隣接準位の最小間隔 rtol * max(1, |E|)

    # ========================================
    # 状態関数
    # ========================================
    samples_per_half_wave: int = 64
    min_samples_per_half_wave: int = 16
    tail_exponent: float = 20.0

    # ========================================
    # 差分オラクル
    # ========================================
    fd_boundary_mass: float = 1e-8
    fd_default_points: int = 8001

    # ========================================
    # ロギング
    # ========================================
    log_level: str = 'WARNING'
    log_file: Optional[str] = None

    def solver_tol(self, hbar: float) -> float:
        """量子化条件の既定許容誤差（1e-9·ħ）"""
        return self.solver_tol_factor * hbar

    def with_overrides(self, **kwargs) -> 'SolverConfig':
        """指定フィールドだけを差し替えた設定を返す"""
        return replace(self, **kwargs)


def _env_setting(key: str) -> Optional[str]:
    """
    ロギング用の環境変数を読む

    行末の `# ...` は値に含めず、空文字列は未設定と同じ扱いにします。
    """
    raw = os.environ.get(key)
    if raw is None:
        return None
    value, _, _ = raw.partition('#')
    return value.strip() or None


def load_config() -> SolverConfig:
    """
    設定を読み込む

    Returns:
        SolverConfig: 設定オブジェクト
    """
    level = _env_setting('LOG_LEVEL') or SolverConfig.log_level
    return SolverConfig(log_level=level.upper(), log_file=_env_setting('LOG_FILE'))


# グローバルインスタンス（シングルトン）
_config_instance: Optional[SolverConfig] = None


def get_config() -> SolverConfig:
    """
    設定のグローバルインスタンスを取得

    初回呼び出し時に読み込み、以降は同じインスタンスを返します。

    Returns:
        SolverConfig: 設定オブジェクト
    """
    global _config_instance

    if _config_instance is None:
        _config_instance = load_config()

    return _config_instance


def reload_config() -> SolverConfig:
    """
    設定を再読み込み

    Returns:
        SolverConfig: 新しい設定オブジェクト
    """
    global _config_instance

    load_dotenv(override=True)
    _config_instance = load_config()

    return _config_instance


# モジュールのエクスポート
__all__ = ['SolverConfig', 'get_config', 'reload_config', 'load_config']
