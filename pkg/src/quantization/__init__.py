"""
========================================
量子化パッケージ
========================================

パッケージ名: quantization
パス: src/quantization/

【概要】
量子化条件の求解、状態関数の構成、クーロン問題の作用変数を提供します。

【含まれるモジュール】
- quantizer.py: J(E) = 2πħ(N + μ/4) の求解とスペクトル
- state_function.py: 接続公式、区分的な状態関数、節の数、規格化
- coulomb_analytic.py: クーロン問題の作用変数と閉じた形のスペクトル

【使用例】
```python
from src.physics import harmonic, UnitSystem
from src.quantization import solve_level, build_state_function, count_nodes

level = solve_level(harmonic(1.0), UnitSystem(), 3)
table = build_state_function(harmonic(1.0), UnitSystem(), level)
print(level.E, count_nodes(table))   # 3.5, 3
```
"""

from src.quantization.coulomb_analytic import (
    ActionTriple,
    CoulombParams,
    QuantumNumbers,
    SeparationConstants,
    angular_actions,
    coulomb_spectrum,
    energy_from_actions,
    radial_action_closed,
)
from src.quantization.quantizer import (
    EnergyLevel,
    QuantizationTarget,
    constant_momentum_level,
    rotation_action,
    solve_level,
    spectrum,
)
from src.quantization.state_function import (
    StateFunctionTable,
    build_state_function,
    connect,
    count_nodes,
    paper_norm_constant,
)

__all__ = [
    'ActionTriple',
    'CoulombParams',
    'QuantumNumbers',
    'SeparationConstants',
    'angular_actions',
    'coulomb_spectrum',
    'energy_from_actions',
    'radial_action_closed',
    'EnergyLevel',
    'QuantizationTarget',
    'constant_momentum_level',
    'rotation_action',
    'solve_level',
    'spectrum',
    'StateFunctionTable',
    'build_state_function',
    'connect',
    'count_nodes',
    'paper_norm_constant',
]
