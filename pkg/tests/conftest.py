import sys
from pathlib import Path

import pytest

from ginfty.galgebras import LieAlgebraPresentation
from ginfty.hochschild import AlgebraPresentation

DATA = Path(__file__).resolve().parents[1] / "src" / "ginfty" / "data"

ALGEBRAS = ["rationals", "dual_numbers", "truncated_cubic", "upper_triangular", "group_algebra_z2"]


def load(name):
    return AlgebraPresentation.load(DATA / f"{name}.json")


def load_lie(name):
    return LieAlgebraPresentation.load(DATA / f"{name}.json")


@pytest.fixture(scope="session")
def dual():
    return load("dual_numbers")


@pytest.fixture(scope="session")
def dual_smap(dual):
    from ginfty.ginf import hochschild_structure_map
    return hochschild_structure_map(dual, N=5, twist=True)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
