import json
import pathlib
import sys

import mpmath
import pytest

HERE = pathlib.Path(__file__).parent
sys.path.insert(0, str(HERE))

# criterion id -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict = {}


def golden_value(entry) -> complex:
    v = entry["value"]
    return complex(float(mpmath.mpf(v["re"])), float(mpmath.mpf(v["im"])))


def golden_mp(entry):
    v = entry["value"]
    return mpmath.mpc(mpmath.mpf(v["re"]), mpmath.mpf(v["im"]))


def golden_z(entry) -> complex:
    return complex(*entry["z"])


def rel(a, b) -> float:
    b = complex(b)
    d = abs(complex(a) - b)
    return d / abs(b) if b else d


@pytest.fixture(scope="session")
def golden():
    return json.loads((HERE / "golden" / "values.json").read_text())


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: int(k[1:])):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"{key:<4} {'PASS' if ok else 'FAIL'}  {detail}")
