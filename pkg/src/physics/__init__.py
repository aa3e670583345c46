"""
========================================
古典力学パッケージ
========================================

パッケージ名: physics
パス: src/physics/

【概要】
ポテンシャルモデル、転回点の探索、位相積分（作用変数）を提供します。

【含まれるモジュール】
- potential_model.py: ポテンシャル族、単位系、古典運動量
- turning_points.py: 許容区間（カット）の探索とMaslov指数
- action_integral.py: 正弦置換Gauss-Legendre求積による作用と位相

【使用例】
```python
from src.physics import harmonic, UnitSystem, total_action

action = total_action(harmonic(1.0), UnitSystem(), 0.5)
print(action.full_period, action.mu)   # π, 2
```
"""

from src.physics.action_integral import (
    ActionValue,
    PhaseKind,
    PhaseValue,
    action_over_cut,
    effective_quantum_number,
    gauss_legendre_sine,
    phase_at,
    total_action,
)
from src.physics.potential_model import (
    PotentialFamily,
    PotentialSpec,
    Region,
    UnitSystem,
    classical_momentum,
    constant_momentum_well,
    coulomb,
    double_well,
    eval_v,
    harmonic,
    morse,
    parse_potential,
    quartic_well,
)
from src.physics.turning_points import CutSet, find_cuts

__all__ = [
    'ActionValue',
    'PhaseKind',
    'PhaseValue',
    'action_over_cut',
    'effective_quantum_number',
    'gauss_legendre_sine',
    'phase_at',
    'total_action',
    'PotentialFamily',
    'PotentialSpec',
    'Region',
    'UnitSystem',
    'classical_momentum',
    'constant_momentum_well',
    'coulomb',
    'double_well',
    'eval_v',
    'harmonic',
    'morse',
    'parse_potential',
    'quartic_well',
    'CutSet',
    'find_cuts',
]
