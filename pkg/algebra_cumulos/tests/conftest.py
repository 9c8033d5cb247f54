"""Fixtures compartidas por las pruebas del motor"""

import pytest

from algebra_cumulos.core.cluster import initial_seed
from algebra_cumulos.core.laurent import VarTable
from algebra_cumulos.core.surface import disk, once_punctured_torus, punctured_digon

TORUS_JSON = """{
  "genus": 1,
  "punctures": 1,
  "edges": {"interior": ["x1", "x2", "x3"]},
  "triangles": [["x1", "x2", "x3"], ["x1", "x2", "x3"]]
}"""

# digono tras voltear x1: x1 es el lazo de un triángulo autoplegado con radio x4
FLIPPED_DIGON_JSON = """{
  "genus": 0,
  "boundary": [2],
  "punctures": 1,
  "edges": {"interior": ["x1", "x4"], "boundary": ["x2", "x3"]},
  "triangles": [["x1", "x4", "x4"], ["x1", "x3", "x2"]],
  "tags": [{"arc": "x1", "ends": ["plain", "notched"], "puncture_ends": [null, "v1"]}],
  "loops": [{"name": "L1", "laurent": "x2*x4^-1 + x4*x2^-1"}]
}"""


@pytest.fixture
def tabla():
    return VarTable.build(["x1", "x2", "x3"])


@pytest.fixture
def toro():
    return once_punctured_torus()[1]


@pytest.fixture
def digono():
    return punctured_digon()[1]


@pytest.fixture
def semilla_toro(toro):
    return initial_seed(toro)


@pytest.fixture
def semilla_disco():
    """Fábrica de semillas iniciales del n-ágono"""
    def _semilla(n: int):
        return initial_seed(disk(n)[1])
    return _semilla


@pytest.fixture
def archivo_toro(tmp_path):
    ruta = tmp_path / "toro.json"
    ruta.write_text(TORUS_JSON, encoding="utf-8")
    return ruta


@pytest.fixture
def archivo_digono_volteado(tmp_path):
    ruta = tmp_path / "digono.json"
    ruta.write_text(FLIPPED_DIGON_JSON, encoding="utf-8")
    return ruta
