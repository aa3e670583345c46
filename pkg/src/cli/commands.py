"""
========================================
コマンドラインインターフェースモジュール
========================================

ファイル名: commands.py
パス: src/cli/commands.py

【概要】
半古典ソルバーのコマンドライン front end です。結果はCSVとして標準出力へ、
診断メッセージは標準エラー出力へ書きます。

【コマンド】
- spectrum: 準位の一覧            列 N,E,J_residual
- compare:  差分法オラクルとの比較  列 N,E_semiclassical,E_fd,abs_error
- statefn:  規格化された状態関数    列 q,psi,region
- coulomb:  クーロン問題の準位表    列 n,n_r,l,E_closed,E_actions[,E_numeric]

【終了コード】
- 0: 成功
- 2: 引数・ポテンシャル文字列の誤り
- 3: ソルバーの失敗
- 4: オラクルの失敗
- 5: サポートされない構成（statefnで転回点が二つでない準位）

【使用例】
```bash
python main.py spectrum --potential harmonic:omega=1 --nmax 2
python main.py compare --potential morse:D=10,a=1,q0=0 --nmax 3 --grid=-2,30,8001
python main.py statefn --potential harmonic:omega=1 --level 3
python main.py coulomb --nmax 3 --numeric
```

【作成日】2025-11-06
"""

import argparse
import logging
import sys
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import pandas as pd

from src.oracle.fd_oracle import FdGrid, default_fd_grid, fd_eigenvalues
from src.physics.potential_model import (
    PotentialFamily,
    PotentialSpec,
    UnitSystem,
    coulomb,
    parse_potential,
)
from src.quantization.coulomb_analytic import (
    CoulombParams,
    QuantumNumbers,
    closed_form_energy,
    coulomb_spectrum,
)
from src.quantization.quantizer import constant_momentum_level, solve_level, spectrum
from src.quantization.state_function import (
    StateGridSpec,
    build_state_function,
    table_to_frame,
)
from src.utils.config import get_config
from src.utils.exceptions import (
    DomainError,
    OracleError,
    PotentialParseError,
    SemiclassicalError,
    UnsupportedModeError,
)
from src.utils.logger import setup_logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_SOLVER = 3
EXIT_ORACLE = 4
EXIT_UNSUPPORTED = 5

FLOAT_FORMAT = '%.15g'
_GRID_HELP = 'qmin,qmax,points（負の値は --grid=-12,12,4001 の形で指定）'

GridTriplet = Tuple[float, float, int]


class _UsageError(SemiclassicalError):
    """引数の値が不正"""


def _grid_triplet(text: str) -> GridTriplet:
    parts = [part.strip() for part in text.split(',')]
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected qmin,qmax,points, got '{text}'")
    try:
        q_min, q_max, points = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected qmin,qmax,points, got '{text}'") from None
    return q_min, q_max, points


def _write_csv(frame: pd.DataFrame) -> None:
    frame.to_csv(sys.stdout, index=False, float_format=FLOAT_FORMAT, lineterminator='\n')


def _units(args: argparse.Namespace) -> UnitSystem:
    return UnitSystem(hbar=args.hbar, mass=args.mass)


def cmd_spectrum(args: argparse.Namespace) -> int:
    """準位の一覧を出力"""
    spec = parse_potential(args.potential)
    units = _units(args)
    levels = spectrum(spec, units, args.nmax, tol=args.tol)
    _write_csv(pd.DataFrame({
        'N': [level.N for level in levels],
        'E': [level.E for level in levels],
        'J_residual': [level.residual for level in levels],
    }))
    return EXIT_OK


def cmd_compare(args: argparse.Namespace) -> int:
    """半古典準位と差分法の固有値を比較"""
    spec = parse_potential(args.potential)
    units = _units(args)
    levels = spectrum(spec, units, args.nmax, tol=args.tol)

    if args.grid is not None:
        grid = FdGrid(*args.grid)
    else:
        grid = default_fd_grid(spec, units, levels[-1].E)
    reference = fd_eigenvalues(spec, units, grid, len(levels))

    semiclassical = [level.E for level in levels]
    _write_csv(pd.DataFrame({
        'N': [level.N for level in levels],
        'E_semiclassical': semiclassical,
        'E_fd': reference,
        'abs_error': [abs(a - b) for a, b in zip(semiclassical, reference)],
    }))
    return EXIT_OK


def cmd_statefn(args: argparse.Namespace) -> int:
    """規格化された状態関数を出力"""
    spec = parse_potential(args.potential)
    units = _units(args)
    level = _state_level(spec, units, args.level, args.tol)

    grid_spec = StateGridSpec()
    if args.grid is not None:
        q_min, q_max, points = args.grid
        grid_spec = StateGridSpec(q_min=q_min, q_max=q_max, points=points)

    table = build_state_function(spec, units, level, grid_spec)
    _write_csv(table_to_frame(table))
    return EXIT_OK


def _state_level(spec: PotentialSpec, units: UnitSystem, N: int, tol: Optional[float]):
    if spec.family is PotentialFamily.CONSTANT_MOMENTUM:
        return constant_momentum_level(spec, units, N)
    return solve_level(spec, units, N, tol=tol)


def cmd_coulomb(args: argparse.Namespace) -> int:
    """クーロン問題の準位表（閉じた形・作用の代入・数値解）"""
    if args.nmax < 1:
        raise _UsageError(f"--nmax must be >= 1 for coulomb, got {args.nmax}")
    params = CoulombParams(alpha=args.alpha, mass=args.mass, hbar=args.hbar)
    units = params.units

    rows: List[Dict[str, float]] = []
    for n in range(1, args.nmax + 1):
        for l in range(n):
            n_r = n - l - 1
            row = {
                'n': n,
                'n_r': n_r,
                'l': l,
                'E_closed': closed_form_energy(params, n),
                'E_actions': coulomb_spectrum(params, QuantumNumbers(n_r=n_r, n_theta=l, n_phi=0)),
            }
            if args.numeric:
                spec = coulomb(alpha=args.alpha, l=l)
                row['E_numeric'] = solve_level(spec, units, n_r, tol=args.tol).E
            rows.append(row)

    _write_csv(pd.DataFrame(rows))
    return EXIT_OK


def _common_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument('--hbar', type=float, default=1.0, help='換算プランク定数（既定: 1）')
    parent.add_argument('--mass', type=float, default=1.0, help='粒子の質量（既定: 1）')
    parent.add_argument('--tol', type=float, default=None, help='作用の許容残差（既定: 1e-9·ħ）')
    parent.add_argument('--log-level', default=None,
                        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'],
                        help='標準エラー出力の診断レベル（既定: LOG_LEVEL）')
    return parent


def build_parser() -> argparse.ArgumentParser:
    """コマンドラインパーサを生成"""
    parent = _common_parent()
    parser = argparse.ArgumentParser(
        prog='main.py',
        description='半古典（作用変数）量子化による束縛状態の固有値ソルバー',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
使用例:
  # 調和振動子の準位 N=0..2
  python main.py spectrum --potential harmonic:omega=1 --nmax 2

  # モースポテンシャルを差分法と比較
  python main.py compare --potential morse:D=10,a=1,q0=0 --nmax 3

  # 状態関数のCSV
  python main.py statefn --potential harmonic:omega=1 --level 3
        """,
    )
    subparsers = parser.add_subparsers(dest='command', required=True)

    sub = subparsers.add_parser('spectrum', parents=[parent], help='準位の一覧')
    sub.add_argument('--potential', required=True, help='family:key=value,...')
    sub.add_argument('--nmax', type=int, required=True, help='最大の節の数')
    sub.set_defaults(handler=cmd_spectrum)

    sub = subparsers.add_parser('compare', parents=[parent], help='差分法オラクルとの比較')
    sub.add_argument('--potential', required=True, help='family:key=value,...')
    sub.add_argument('--nmax', type=int, required=True, help='最大の節の数')
    sub.add_argument('--grid', type=_grid_triplet, default=None, help=_GRID_HELP)
    sub.set_defaults(handler=cmd_compare)

    sub = subparsers.add_parser('statefn', parents=[parent], help='状態関数のCSV')
    sub.add_argument('--potential', required=True, help='family:key=value,...')
    sub.add_argument('--level', type=int, required=True, help='準位（節の数）')
    sub.add_argument('--grid', type=_grid_triplet, default=None, help=_GRID_HELP)
    sub.set_defaults(handler=cmd_statefn)

    sub = subparsers.add_parser('coulomb', parents=[parent], help='クーロン問題の準位表')
    sub.add_argument('--nmax', type=int, required=True, help='最大の主量子数')
    sub.add_argument('--alpha', type=float, default=1.0, help='結合定数（既定: 1）')
    sub.add_argument('--numeric', action='store_true', help='数値の動径ソルバーの列を追加')
    sub.set_defaults(handler=cmd_coulomb)

    return parser


def _validate(args: argparse.Namespace) -> None:
    for name in ('nmax', 'level'):
        value = getattr(args, name, None)
        if value is not None and value < 0:
            raise _UsageError(f"--{name} must be >= 0, got {value}")


def _exit_code(error: SemiclassicalError) -> int:
    if isinstance(error, UnsupportedModeError):
        return EXIT_UNSUPPORTED
    if isinstance(error, OracleError):
        return EXIT_ORACLE
    if isinstance(error, (PotentialParseError, DomainError, _UsageError)):
        return EXIT_USAGE
    return EXIT_SOLVER


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    コマンドラインのエントリーポイント

    Args:
        argv: 引数（省略時は sys.argv[1:]）

    Returns:
        int: 終了コード
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else EXIT_OK

    config = get_config()
    setup_logging(args.log_level or config.log_level, config.log_file)

    handler: Callable[[argparse.Namespace], int] = args.handler
    try:
        _validate(args)
        return handler(args)
    except SemiclassicalError as e:
        logger.error(str(e))
        return _exit_code(e)


__all__ = [
    'EXIT_OK',
    'EXIT_USAGE',
    'EXIT_SOLVER',
    'EXIT_ORACLE',
    'EXIT_UNSUPPORTED',
    'build_parser',
    'cmd_spectrum',
    'cmd_compare',
    'cmd_statefn',
    'cmd_coulomb',
    'main',
]
