"""
========================================
例外定義モジュール
========================================

ファイル名: exceptions.py
パス: src/utils/exceptions.py

【概要】
半古典ソルバー全体で使用する例外クラスを定義します。
全ての例外はSemiclassicalError（ValueErrorのサブクラス）を基底とするため、
ValueErrorを捕捉する既存コードはそのまま動作します。

【CLI終了コードとの対応】
- PotentialParseError                      → 2
- QuantizationError / TurningPointError /
  QuadratureError / ResolutionError        → 3
- OracleError                              → 4
- UnsupportedModeError                     → 5

【作成日】2025-11-04
"""

from typing import Optional


class SemiclassicalError(ValueError):
    """ソルバー共通の基底例外"""


class DomainError(SemiclassicalError):
    """座標が定義域外、またはパラメータが不正"""


class PotentialParseError(SemiclassicalError):
    """ポテンシャル文字列のパース失敗"""


class TurningPointError(SemiclassicalError):
    """転回点探索の失敗"""


class EnergyBelowFloorError(TurningPointError):
    """試行エネルギーがポテンシャルの底より低い（カットが存在しない）"""


class DegenerateTurningPointsError(TurningPointError):
    """二つの転回点が分解能より近い（障壁頂上付近のエネルギー）"""


class QuadratureError(SemiclassicalError):
    """求積が次数上限までに収束しなかった"""

    def __init__(self, message: str, achieved_error: float):
        super().__init__(message)
        self.achieved_error = achieved_error


class MixedRegionError(SemiclassicalError):
    """位相積分の区間が許容領域と禁止領域をまたいでいる"""


class QuantizationError(SemiclassicalError):
    """量子化条件の求解失敗"""

    def __init__(self, message: str, level: Optional[int] = None):
        super().__init__(message)
        self.level = level

    def annotate(self, level: int) -> "QuantizationError":
        """準位番号を付けた同じ種類の例外を返す"""
        annotated = type(self)(f"N={level}: {self}", level=level)
        return annotated


class StraddleError(QuantizationError):
    """最終ブラケット内でμが変化した（トポロジー変化をまたぐ準位）"""


class UnboundedSearchError(QuantizationError):
    """設定されたE_maxまでにブラケットが見つからない"""


class ResolutionError(SemiclassicalError):
    """グリッドが振動を分解するには粗すぎる"""


class SeparationError(SemiclassicalError):
    """分離定数がP_theta >= |P_phi| を満たさない"""


class NoLibrationError(SemiclassicalError):
    """与えられた定数で動径方向の秤動が存在しない"""


class OracleError(SemiclassicalError):
    """差分オラクルの失敗"""


class GridTooSmallError(OracleError):
    """固有関数の質量が境界付近に漏れている"""


class InvalidGridError(OracleError):
    """差分グリッドの範囲または点数が不正"""


class UnsupportedModeError(SemiclassicalError):
    """CLIでサポートされない構成"""


__all__ = [
    'SemiclassicalError',
    'DomainError',
    'PotentialParseError',
    'TurningPointError',
    'EnergyBelowFloorError',
    'DegenerateTurningPointsError',
    'QuadratureError',
    'MixedRegionError',
    'QuantizationError',
    'StraddleError',
    'UnboundedSearchError',
    'ResolutionError',
    'SeparationError',
    'NoLibrationError',
    'OracleError',
    'GridTooSmallError',
    'InvalidGridError',
    'UnsupportedModeError',
]
