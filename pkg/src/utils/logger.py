"""
========================================
ロギング設定モジュール
========================================

ファイル名: logger.py
パス: src/utils/logger.py

【概要】
標準エラー出力へのカラーログ（colorlog）と、任意のファイル出力を設定します。
標準出力はCSV専用のため、ログは決して標準出力に書きません。

【使用例】
```python
from src.utils.logger import setup_logging

setup_logging('DEBUG')
```

【作成日】2025-11-04
"""

import logging
import sys
from typing import Optional

import colorlog

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def setup_logging(level: str = 'WARNING', log_file: Optional[str] = None) -> logging.Logger:
    """
    ルートロガーを初期化

    既存のハンドラは取り除いてから設定し直すため、複数回呼んでも
    ハンドラが重複しません。

    Args:
        level: ログレベル名（DEBUG/INFO/WARNING/ERROR）
        log_file: ファイル出力先（Noneなら出力しない）

    Returns:
        logging.Logger: ルートロガー
    """
    root = logging.getLogger()
    for handler in list(root.handlers):
        root.removeHandler(handler)

    stream_handler = colorlog.StreamHandler(sys.stderr)
    stream_handler.setFormatter(
        colorlog.ColoredFormatter(
            '%(log_color)s' + LOG_FORMAT,
            log_colors={
                'DEBUG': 'cyan',
                'INFO': 'green',
                'WARNING': 'yellow',
                'ERROR': 'red',
                'CRITICAL': 'red,bg_white',
            },
        )
    )
    root.addHandler(stream_handler)

    if log_file:
        file_handler = logging.FileHandler(log_file, encoding='utf-8')
        file_handler.setFormatter(logging.Formatter(LOG_FORMAT))
        root.addHandler(file_handler)

    root.setLevel(getattr(logging, level.upper(), logging.WARNING))
    return root


__all__ = ['setup_logging', 'LOG_FORMAT']
