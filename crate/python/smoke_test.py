"""Smoke test for the `steinernet` Python module.

Build the extension first with `cargo build -p steinernet-py`, then run
`python3 python/smoke_test.py`. The script copies the shared library into a
temporary directory under the name Python expects and imports it from there.
Set STEINERNET_LIB to point at a specific build.
"""

import importlib
import os
import shutil
import sys
import sysconfig
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent

K4_PSI = """p psi 4 6 4 6
eg 1 2
eg 1 3
eg 1 4
eg 2 3
eg 2 4
eg 3 4
eh 1 2
eh 1 3
eh 1 4
eh 2 3
eh 2 4
eh 3 4
map 1 1
map 2 2
map 3 3
map 4 4
"""


def locate_library() -> Path:
    if "STEINERNET_LIB" in os.environ:
        return Path(os.environ["STEINERNET_LIB"])
    for profile in ("release", "debug"):
        for name in ("libsteinernet_py.so", "libsteinernet_py.dylib", "steinernet_py.dll"):
            candidate = ROOT / "target" / profile / name
            if candidate.exists():
                return candidate
    sys.exit("extension not found; run `cargo build -p steinernet-py` first")


def load():
    lib = locate_library()
    suffix = ".pyd" if lib.suffix == ".dll" else sysconfig.get_config_var("EXT_SUFFIX") or ".so"
    tmp = Path(tempfile.mkdtemp(prefix="steinernet-smoke-"))
    shutil.copy(lib, tmp / f"steinernet{suffix}")
    sys.path.insert(0, str(tmp))
    return importlib.import_module("steinernet")


def main() -> None:
    sn = load()

    inst = sn.random(7, 16, 4, 3, 7)
    bnb = inst.solve("bnb")
    oracle = inst.solve("exhaustive")
    assert bnb["feasible"] and bnb["cost"] == oracle["cost"], (bnb, oracle)
    again = sn.parse(inst.emit())
    assert again.emit() == inst.emit()
    assert again.solve()["cost"] == bnb["cost"]

    try:
        inst.solve("dst")
    except sn.DomainError:
        pass
    else:
        raise AssertionError("dst accepted a non-out-star instance")

    try:
        sn.parse("p dsn 2 1 2 1\na 1 2 -1/1\nr 1 2\n")
    except sn.ParseError as err:
        assert "line 2" in str(err), err
    else:
        raise AssertionError("negative weight accepted")

    framed = sn.ladder(14, framed=True)
    cert = framed.analyze(solution="whole")
    report = cert["report"]
    assert len(report["rounds"]) == 1, report["rounds"]
    assert report["diameter"] <= report["input_diameter"]

    grid = sn.grid(3, 3, q=3, seed=1)
    assert grid.meta("genus") == "0"
    grid_cert = grid.analyze()
    assert grid_cert["within_engineering_bound"]

    dsn, threshold = sn.reduce_psi(K4_PSI)
    assert threshold == 26 and dsn.meta("threshold") == "26"
    decision = sn.decide(K4_PSI)
    assert decision["yes"] and decision["cost"] == "26", decision

    print(f"steinernet {sn.__version__}: smoke test passed")


if __name__ == "__main__":
    main()
