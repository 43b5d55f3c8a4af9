import os
import subprocess
import sys

import pytest

SCRIPTS = os.path.join(os.path.dirname(os.path.dirname(__file__)), "scripts")


@pytest.mark.parametrize(
    "name, args, needle",
    [
        ("riemann_roch.py", [], "dim Hom     = 9 + 6 = 15"),
        ("cyclic_example.py", ["--degree", "1"], "degree 1: length 5, reduced True"),
        ("reproduce_tables.py", ["--table", "T2"], "rows 7/7 passed, excluded 1/1 passed"),
    ],
)
def test_script_runs(name, args, needle):
    proc = subprocess.run([sys.executable, os.path.join(SCRIPTS, name), *args], capture_output=True, text=True, timeout=300)
    assert proc.returncode == 0, proc.stderr
    assert needle in proc.stdout
