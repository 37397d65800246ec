"""Shared fixtures: a seeded runtime and the reference pro-species"""

import pytest
from click.testing import CliRunner

from prospecies_entry import init_runtime
from prospecies_entry.engine.algebra import bound_quiver_algebra
from prospecies_entry.engine.exactla import FieldSpec
from prospecies_entry.engine.separated import path_algebra_a2
from prospecies_entry.utils.dsl import parse_presentation
from prospecies_entry.utils.fixtures import FIX_A, FIX_B, FIX_C, LOOP, load_fixture


@pytest.fixture(autouse=True)
def runtime():
    init_runtime(seed=0)


@pytest.fixture
def Q():
    return FieldSpec.rationals()


@pytest.fixture
def F3():
    return FieldSpec.prime_field(3)


@pytest.fixture
def fix_a():
    return load_fixture('A')


@pytest.fixture
def fix_b():
    return load_fixture('B')


@pytest.fixture
def fix_c():
    return load_fixture('C')


@pytest.fixture
def loop():
    return load_fixture('loop')


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def instance_file(tmp_path):
    """Write a fixture text to a .prosp file and return its path"""
    def write(text: str, name: str = "instance.prosp") -> str:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)
    return write


@pytest.fixture
def fixture_files(instance_file):
    return {
        'A': instance_file(FIX_A, "fix_a.prosp"),
        'B': instance_file(FIX_B, "fix_b.prosp"),
        'C': instance_file(FIX_C, "fix_c.prosp"),
        'loop': instance_file(LOOP, "loop.prosp"),
    }


@pytest.fixture
def kA2(Q):
    return path_algebra_a2(Q)


@pytest.fixture
def dual_numbers(Q):
    P = parse_presentation("quiver { vertex 1; arrow x: 1 -> 1; } relations { x.x; }")
    return bound_quiver_algebra(P, Q, name="k[x]/(x2)")
