"""
========================================
コマンドライン テストモジュール
========================================

ファイル名: test_cli.py
パス: tests/test_cli.py

【概要】
main([...]) を直接呼び、標準出力のCSVと終了コードをテストします。

【テスト項目】
1. spectrum / compare / statefn / coulomb の出力
2. 終了コード（2: 引数, 3: ソルバー, 4: オラクル, 5: 非対応）
3. 同じ入力に対する出力のビット一致

【テスト実行方法】
    pytest tests/test_cli.py -v

【作成日】2025-11-06
"""

import io

import numpy as np
import pandas as pd
import pytest

from src.cli.commands import (
    EXIT_OK,
    EXIT_ORACLE,
    EXIT_SOLVER,
    EXIT_UNSUPPORTED,
    EXIT_USAGE,
    main,
)


def run(capsys, *argv):
    """main を実行し (終了コード, 標準出力, 標準エラー出力) を返す"""
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def read_csv(text: str) -> pd.DataFrame:
    return pd.read_csv(io.StringIO(text))


class TestSpectrumCommand:
    """spectrum"""

    def test_harmonic(self, capsys):
        code, out, _ = run(capsys, 'spectrum', '--potential', 'harmonic:omega=1', '--nmax', '2')
        assert code == EXIT_OK
        frame = read_csv(out)
        assert list(frame.columns) == ['N', 'E', 'J_residual']
        assert frame['N'].tolist() == [0, 1, 2]
        np.testing.assert_allclose(frame['E'], [0.5, 1.5, 2.5], atol=1e-9)

    def test_coulomb(self, capsys):
        code, out, _ = run(capsys, 'spectrum', '--potential', 'coulomb:alpha=1,l=0', '--nmax', '1')
        assert code == EXIT_OK
        np.testing.assert_allclose(read_csv(out)['E'], [-0.5, -0.125], atol=1e-9)

    def test_negative_nmax(self, capsys):
        code, out, _ = run(capsys, 'spectrum', '--potential', 'harmonic:omega=1', '--nmax', '-1')
        assert code == EXIT_USAGE
        assert out == ''

    def test_bad_potential(self, capsys):
        code, _, _ = run(capsys, 'spectrum', '--potential', 'sawtooth:k=1', '--nmax', '1')
        assert code == EXIT_USAGE

    def test_missing_argument(self, capsys):
        code, _, _ = run(capsys, 'spectrum', '--potential', 'harmonic:omega=1')
        assert code == EXIT_USAGE

    @pytest.mark.parametrize("potential,nmax", [
        ('morse:D=10,a=1,q0=0', '10'),
        ('morse:D=10,a=1', '6'),
    ])
    def test_beyond_bound_levels(self, capsys, potential, nmax):
        code, out, err = run(capsys, 'spectrum', '--potential', potential, '--nmax', nmax)
        assert code == EXIT_SOLVER
        assert out == ''
        assert 'N=4' in err

    def test_output_is_bit_stable(self, capsys):
        argv = ('spectrum', '--potential', 'morse:D=10,a=1,q0=0', '--nmax', '3')
        _, first, _ = run(capsys, *argv)
        _, second, _ = run(capsys, *argv)
        assert first == second
        assert first.endswith('\n')


class TestCompareCommand:
    """compare"""

    def test_harmonic(self, capsys):
        code, out, _ = run(capsys, 'compare', '--potential', 'harmonic:omega=1', '--nmax', '5',
                           '--grid=-12,12,4001')
        assert code == EXIT_OK
        frame = read_csv(out)
        assert list(frame.columns) == ['N', 'E_semiclassical', 'E_fd', 'abs_error']
        assert (frame['abs_error'] < 1e-4).all()

    def test_default_grid(self, capsys):
        code, out, _ = run(capsys, 'compare', '--potential', 'coulomb:alpha=1,l=0', '--nmax', '2')
        assert code == EXIT_OK
        assert (read_csv(out)['abs_error'] < 1e-3).all()

    def test_grid_too_small(self, capsys):
        code, out, _ = run(capsys, 'compare', '--potential', 'harmonic:omega=1', '--nmax', '5',
                           '--grid=-2,2,401')
        assert code == EXIT_ORACLE
        assert out == ''

    @pytest.mark.parametrize("potential,grid", [
        ('harmonic:omega=1', '--grid=2,1,101'),
        ('harmonic:omega=1', '--grid=-5,5,2'),
        ('coulomb:alpha=1,l=0', '--grid=0,50,1001'),
    ])
    def test_invalid_grid_is_oracle_failure(self, capsys, potential, grid):
        code, out, err = run(capsys, 'compare', '--potential', potential, '--nmax', '1', grid)
        assert code == EXIT_ORACLE
        assert out == ''
        assert 'grid' in err

    def test_malformed_grid(self, capsys):
        code, _, _ = run(capsys, 'compare', '--potential', 'harmonic:omega=1', '--nmax', '1',
                         '--grid', '1,2')
        assert code == EXIT_USAGE


class TestStatefnCommand:
    """statefn"""

    def test_ground_state(self, capsys):
        code, out, _ = run(capsys, 'statefn', '--potential', 'harmonic:omega=1', '--level', '0')
        assert code == EXIT_OK
        frame = read_csv(out)
        assert list(frame.columns) == ['q', 'psi', 'region']
        assert set(frame['region']) == {'LeftTail', 'Oscillatory', 'RightTail'}
        assert (frame['psi'] > 0).all()

    def test_third_level_sign_changes(self, capsys):
        code, out, _ = run(capsys, 'statefn', '--potential', 'harmonic:omega=1', '--level', '3')
        assert code == EXIT_OK
        signs = np.sign(read_csv(out)['psi'].to_numpy())
        signs = signs[signs != 0]
        assert int(np.count_nonzero(signs[1:] != signs[:-1])) == 3

    def test_constant_momentum_well(self, capsys):
        code, out, _ = run(capsys, 'statefn', '--potential', 'cmwell:q1=0,q2=3.141592653589793',
                           '--level', '2')
        assert code == EXIT_OK
        assert 'Oscillatory' in out

    def test_double_well_unsupported(self, capsys):
        code, out, err = run(capsys, 'statefn', '--potential', 'doublewell:a=2', '--level', '0')
        assert code == EXIT_UNSUPPORTED
        assert out == ''
        assert 'two-turning-point' in err


class TestCoulombCommand:
    """coulomb"""

    def test_table(self, capsys):
        code, out, _ = run(capsys, 'coulomb', '--nmax', '3')
        assert code == EXIT_OK
        frame = read_csv(out)
        assert list(frame.columns) == ['n', 'n_r', 'l', 'E_closed', 'E_actions']
        assert len(frame) == 6
        np.testing.assert_allclose(frame['E_actions'], frame['E_closed'], rtol=1e-13)

    def test_numeric_column(self, capsys):
        code, out, _ = run(capsys, 'coulomb', '--nmax', '2', '--numeric')
        assert code == EXIT_OK
        frame = read_csv(out)
        assert 'E_numeric' in frame.columns
        np.testing.assert_allclose(frame['E_numeric'], frame['E_closed'], atol=1e-8)

    def test_nmax_zero(self, capsys):
        code, _, _ = run(capsys, 'coulomb', '--nmax', '0')
        assert code == EXIT_USAGE
