"""
========================================
テストパッケージ
========================================

パッケージ名: tests
パス: tests/

【概要】
半古典固有値ソルバーの全モジュールに対するユニットテストと
コマンドラインの統合テストを含むパッケージです。

【テストファイル構成】
- test_potential_model.py: ポテンシャル族・運動量・文法
- test_turning_points.py: カットの探索とμ
- test_action_integral.py: 作用と位相の求積
- test_quantizer.py: 量子化条件とスペクトル
- test_state_function.py: 接続公式・状態関数・規格化
- test_coulomb_analytic.py: クーロン問題の作用変数
- test_fd_oracle.py: 差分法オラクル
- test_cli.py: コマンドラインと終了コード
- test_utils.py: 設定・ロギング・例外

【テスト実行方法】
全テスト実行:
    pytest tests/ -v

特定のテスト実行:
    pytest tests/test_quantizer.py -v

カバレッジ付き実行:
    pytest tests/ --cov=src --cov-report=html
"""

__all__ = []
