"""
半古典固有値ソルバー メインパッケージ

作用変数の量子化条件 J = 2πħ(N + μ/4) で一次元・動径ポテンシャルの
束縛状態エネルギーを求め、接続公式から状態関数を組み立て、
差分法オラクルと比較するための全モジュールを含んでいます。
"""

__version__ = "0.1.0"
