"""
========================================
半古典固有値ソルバー - メインエントリーポイント
========================================

ファイル名: main.py
パス: main.py

【概要】
コマンドラインのエントリーポイントです。
サブコマンドの処理は src/cli/commands.py にあります。

【使用例】
```bash
python main.py spectrum --potential harmonic:omega=1 --nmax 4
python main.py compare --potential morse:D=10,a=1,q0=0 --nmax 3
python main.py statefn --potential harmonic:omega=1 --level 0
python main.py coulomb --nmax 3
```

【作成日】2025-11-06
"""

import sys

from src.cli.commands import main


if __name__ == '__main__':
    sys.exit(main())
