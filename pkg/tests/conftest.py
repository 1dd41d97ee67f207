"""
Pytest configuration and shared fixtures
"""

from pathlib import Path

import pytest

from mvduality.domain.boolalg import BoolAlg
from mvduality.domain.pairs import FilterMap
from mvduality.domain.wajsberg import WajsbergAlgebra
from mvduality.repositories.sample_repository import SampleRepository
from mvduality.utils.file_parser import InterchangeFormat


@pytest.fixture
def l2() -> WajsbergAlgebra:
    """The two-element chain"""
    return WajsbergAlgebra.chain(1)


@pytest.fixture
def l3() -> WajsbergAlgebra:
    """L_3 = {0, 1/2, 1}"""
    return WajsbergAlgebra.chain(2)


@pytest.fixture
def l4() -> WajsbergAlgebra:
    return WajsbergAlgebra.chain(3)


@pytest.fixture
def l2xl3() -> WajsbergAlgebra:
    """L_2 x L_3; index of (a, b) is 3a + b"""
    return WajsbergAlgebra.product(WajsbergAlgebra.chain(1), WajsbergAlgebra.chain(2))


@pytest.fixture
def bool2() -> BoolAlg:
    return BoolAlg(atom_count=2)


@pytest.fixture
def six_pair() -> FilterMap:
    """n=2, two atoms, h(1) = up{0}: M has six elements"""
    return FilterMap.from_generators(2, 2, {1: 0b01, 2: 0b11})


@pytest.fixture
def post_pair() -> FilterMap:
    """n=2, two atoms, h(1) = B: M is all of B^[2]"""
    return FilterMap.from_generators(2, 2, {1: 0b00, 2: 0b11})


@pytest.fixture
def repository() -> SampleRepository:
    """A fresh sample repository"""
    return SampleRepository()


def _write(tmp_path: Path, name: str, content: str) -> Path:
    path = tmp_path / name
    path.write_text(content + "\n")
    return path


@pytest.fixture
def l3_file(tmp_path, l3) -> Path:
    return _write(tmp_path, "l3.txt", InterchangeFormat.format_algebra(l3))


@pytest.fixture
def l2xl3_file(tmp_path, l2xl3) -> Path:
    return _write(tmp_path, "l2xl3.txt", InterchangeFormat.format_algebra(l2xl3))


@pytest.fixture
def corrupted_file(tmp_path) -> Path:
    """L_3 with 1 -> 0 replaced by 1/2"""
    return _write(
        tmp_path,
        "bad.txt",
        "wajsberg size=3 top=2\nneg: 2 1 0\nimp:\n2 2 2\n1 2 2\n1 1 2",
    )


@pytest.fixture
def six_pair_file(tmp_path, six_pair) -> Path:
    return _write(tmp_path, "six.txt", InterchangeFormat.format_pair(six_pair))


@pytest.fixture
def valued_map_file(tmp_path) -> Path:
    return _write(tmp_path, "map.txt", "0: 0/2\n1: 1/2")
