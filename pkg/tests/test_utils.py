"""
========================================
ユーティリティ テストモジュール
========================================

ファイル名: test_utils.py
パス: tests/test_utils.py

【概要】
設定・ロギング・例外階層をテストします。

【テスト項目】
1. SolverConfig のデフォルト値と with_overrides
2. 環境変数 LOG_LEVEL / LOG_FILE の読み込み
3. setup_logging のハンドラ構成
4. 例外階層と QuantizationError.annotate

【テスト実行方法】
    pytest tests/test_utils.py -v

【作成日】2025-11-04
"""

import dataclasses
import logging

import pytest

import src.utils.config as config_module
from src.utils.config import SolverConfig, get_config, load_config
from src.utils.exceptions import (
    DegenerateTurningPointsError,
    DomainError,
    EnergyBelowFloorError,
    GridTooSmallError,
    OracleError,
    QuadratureError,
    QuantizationError,
    SemiclassicalError,
    StraddleError,
    TurningPointError,
    UnboundedSearchError,
)
from src.utils.logger import setup_logging


@pytest.fixture
def fresh_config(monkeypatch):
    """グローバル設定をテストごとに作り直す"""
    monkeypatch.setattr(config_module, '_config_instance', None)
    yield
    monkeypatch.setattr(config_module, '_config_instance', None)


@pytest.fixture
def restore_root_logger():
    root = logging.getLogger()
    handlers, level = list(root.handlers), root.level
    yield root
    for handler in list(root.handlers):
        root.removeHandler(handler)
    for handler in handlers:
        root.addHandler(handler)
    root.setLevel(level)


class TestSolverConfig:
    """SolverConfigのテスト"""

    def test_defaults(self):
        config = SolverConfig()
        assert config.scan_samples == 4096
        assert config.quad_min_order == 16
        assert config.quad_max_order == 4096
        assert config.samples_per_half_wave == 64
        assert config.min_samples_per_half_wave == 16
        assert config.fd_boundary_mass == 1e-8

    def test_solver_tol_scales_with_hbar(self):
        assert SolverConfig().solver_tol(0.5) == pytest.approx(5e-10)

    def test_with_overrides(self):
        base = SolverConfig()
        changed = base.with_overrides(scan_samples=128)
        assert changed.scan_samples == 128
        assert base.scan_samples == 4096

    def test_frozen(self):
        with pytest.raises(dataclasses.FrozenInstanceError):
            SolverConfig().scan_samples = 1


class TestLoadConfig:
    """環境変数からの読み込み"""

    def test_log_settings_from_environment(self, monkeypatch, fresh_config):
        monkeypatch.setenv('LOG_LEVEL', 'debug  # comment')
        monkeypatch.setenv('LOG_FILE', '')
        config = load_config()
        assert config.log_level == 'DEBUG'
        assert config.log_file is None

    @pytest.mark.parametrize("value", [None, '', '   # nothing'])
    def test_missing_log_level_defaults_to_warning(self, monkeypatch, fresh_config, value):
        if value is None:
            monkeypatch.delenv('LOG_LEVEL', raising=False)
        else:
            monkeypatch.setenv('LOG_LEVEL', value)
        assert load_config().log_level == 'WARNING'

    def test_numeric_settings_ignore_environment(self, monkeypatch, fresh_config):
        monkeypatch.setenv('SCAN_SAMPLES', '7')
        assert load_config().scan_samples == 4096

    def test_singleton(self, fresh_config):
        assert get_config() is get_config()


class TestSetupLogging:
    """setup_loggingのテスト"""

    def test_single_stream_handler(self, restore_root_logger):
        setup_logging('INFO')
        setup_logging('INFO')
        root = restore_root_logger
        assert len(root.handlers) == 1
        assert root.level == logging.INFO

    def test_file_handler(self, restore_root_logger, tmp_path):
        log_file = tmp_path / 'solver.log'
        setup_logging('DEBUG', str(log_file))
        logging.getLogger('src.test').debug('written')
        for handler in restore_root_logger.handlers:
            handler.flush()
        assert 'written' in log_file.read_text(encoding='utf-8')

    def test_unknown_level_falls_back_to_warning(self, restore_root_logger):
        setup_logging('chatty')
        assert restore_root_logger.level == logging.WARNING


class TestExceptions:
    """例外階層"""

    @pytest.mark.parametrize("error", [
        DomainError, TurningPointError, QuantizationError, OracleError,
    ])
    def test_root_is_value_error(self, error):
        assert issubclass(error, SemiclassicalError)
        assert issubclass(error, ValueError)

    def test_turning_point_subclasses(self):
        assert issubclass(EnergyBelowFloorError, TurningPointError)
        assert issubclass(DegenerateTurningPointsError, TurningPointError)

    def test_grid_too_small_is_oracle_error(self):
        assert issubclass(GridTooSmallError, OracleError)

    def test_quadrature_error_carries_achieved_error(self):
        error = QuadratureError("not converged", achieved_error=1e-6)
        assert error.achieved_error == 1e-6

    def test_annotate_keeps_type(self):
        error = UnboundedSearchError("no bracket")
        annotated = error.annotate(4)
        assert type(annotated) is UnboundedSearchError
        assert annotated.level == 4
        assert str(annotated) == "N=4: no bracket"

    def test_straddle_is_quantization_error(self):
        assert issubclass(StraddleError, QuantizationError)
