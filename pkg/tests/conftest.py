import sys
from pathlib import Path

import pytest

import litweave as lw
from litweave import InterpreterConfig

FIXTURES = Path(__file__).parent / "fixtures"
STUB = Path(__file__).parent.parent / "scripts" / "stub_interp.py"


def load_fixture(name: str) -> lw.Document:
    result = lw.parse_file(FIXTURES / name)
    assert result.document is not None, [d.render() for d in result.diagnostics]
    return result.document


def fixture_text(name: str) -> str:
    return (FIXTURES / name).read_text(encoding="utf-8")


def stub_config(extra: str = "", timeout: float = 10.0) -> InterpreterConfig:
    template = f"{sys.executable} {STUB} {extra}".strip() + " {file}"
    return InterpreterConfig(
        command_template=template,
        goal_flag_template="-g {goal}",
        timeout=timeout,
    )


@pytest.fixture
def peano_doc() -> lw.Document:
    return load_fixture("peano.lw")


@pytest.fixture
def lists_doc() -> lw.Document:
    return load_fixture("lists.lw")


@pytest.fixture
def versioned_doc(peano_doc) -> lw.Document:
    doc = lw.name_version(peano_doc, "V1", "R_a11")
    return lw.name_version(doc, "V2", "R_a12")
