"""Interfaz de línea de comandos (salidas exactas y códigos de salida)"""

import json

import pytest
from click.testing import CliRunner

from algebra_cumulos.interfaces.cli import cli

from .conftest import TORUS_JSON


@pytest.fixture
def runner():
    return CliRunner(mix_stderr=False)


def test_matriz_del_toro(runner):
    result = runner.invoke(cli, ["--builtin", "punctured-torus", "matrix"])
    assert result.exit_code == 0
    assert result.stdout == "[[0,2,-2],[-2,0,2],[2,-2,0]]\n"


def test_matriz_desde_archivo(runner, archivo_toro):
    result = runner.invoke(cli, ["matrix", str(archivo_toro)])
    assert result.exit_code == 0
    assert json.loads(result.stdout) == [[0, 2, -2], [-2, 0, 2], [2, -2, 0]]


def test_mutar_x3(runner):
    result = runner.invoke(cli, ["--builtin", "punctured-torus", "mutate", "--seq", "3"])
    assert result.exit_code == 0
    assert result.stdout.splitlines() == [
        "x3' = x1^2*x3^-1 + x2^2*x3^-1",
        "[[0,-2,2],[2,0,-2],[-2,2,0]]",
    ]


def test_mutar_dos_veces_regresa(runner):
    result = runner.invoke(cli, ["--builtin", "punctured-torus", "mutate", "--seq", "x3,x3"])
    assert result.exit_code == 0
    assert result.stdout.splitlines() == ["x3' = x3", "[[0,2,-2],[-2,0,2],[2,-2,0]]"]


def test_indice_desconocido(runner):
    result = runner.invoke(cli, ["--builtin", "punctured-torus", "mutate", "--seq", "x9"])
    assert result.exit_code == 2


def test_indice_congelado(runner):
    result = runner.invoke(cli, ["--builtin", "disk:5", "mutate", "--seq", "x1"])
    assert result.exit_code == 2
    assert "congelado" in result.stderr


def test_explorar_pentagono(runner, tmp_path):
    destino = tmp_path / "g.dot"
    result = runner.invoke(cli, ["--builtin", "disk:5", "explore", "--depth", "10", "--dot", str(destino)])
    assert result.exit_code == 0
    assert "nodes: 5" in result.stdout.splitlines()
    assert "saturated: true" in result.stdout.splitlines()
    assert destino.read_text(encoding="utf-8").startswith("graph flip_graph {")


def test_salida_determinista(runner):
    argumentos = ["--builtin", "disk:6", "--workers", "3", "explore", "--depth", "6"]
    assert runner.invoke(cli, argumentos).stdout == runner.invoke(cli, argumentos).stdout


def test_verificacion_de_laurent(runner):
    result = runner.invoke(cli, ["--builtin", "punctured-torus", "laurent-check", "--maxlen", "4"])
    assert result.exit_code == 0
    assert result.stdout.splitlines() == ["sequences: 45", "failures: 0"]


def test_lazos_del_documento(runner, archivo_digono_volteado):
    result = runner.invoke(cli, ["laurent-check", str(archivo_digono_volteado), "--maxlen", "2"])
    assert result.exit_code == 0
    assert "loop L1: laurent" in result.stdout


def test_rho_en_el_digono(runner):
    result = runner.invoke(cli, ["--builtin", "punctured-digon", "rho-check", "--flip", "x1", "--twice"])
    assert result.exit_code == 0
    lineas = result.stdout.splitlines()
    assert lineas[0] == "punctured-digon: rho(x1)*rho(x1') = x2 + x3 = x2 + x3"
    assert len(lineas) == 2


def test_rho_en_el_toro(runner):
    result = runner.invoke(cli, ["--builtin", "punctured-torus", "rho-check", "--flip", "3"])
    assert result.exit_code == 0
    assert result.stdout.startswith("quadrilateral: ")


def test_validar(runner):
    result = runner.invoke(cli, ["--builtin", "punctured-digon", "validate"])
    assert result.exit_code == 0
    assert result.stdout == "valid\n"


def test_triangulacion_invalida(runner, tmp_path):
    doc = json.loads(TORUS_JSON)
    doc["triangles"] = [["x1", "x2", "x3"]]
    ruta = tmp_path / "incompleto.json"
    ruta.write_text(json.dumps(doc), encoding="utf-8")
    result = runner.invoke(cli, ["validate", str(ruta)])
    assert result.exit_code == 1
    assert result.stdout.splitlines()[0] == "invalid"

    result = runner.invoke(cli, ["matrix", str(ruta)])
    assert result.exit_code == 2
    assert result.stdout == ""


def test_json_mal_formado(runner, tmp_path):
    ruta = tmp_path / "roto.json"
    ruta.write_text('{"genus": 1,\n "edges": [', encoding="utf-8")
    result = runner.invoke(cli, ["matrix", str(ruta)])
    assert result.exit_code == 2
    assert "línea" in result.stderr
    assert result.stdout == ""


def test_opcion_desconocida(runner):
    result = runner.invoke(cli, ["--builtin", "disk:5", "matrix", "--format", "csv"])
    assert result.exit_code == 2


def test_sin_superficie(runner):
    assert runner.invoke(cli, ["matrix"]).exit_code == 2


def test_conteo_de_generadores(runner):
    result = runner.invoke(cli, ["--builtin", "disk:4", "generators", "--counts"])
    assert result.exit_code == 0
    assert json.loads(result.stdout) == {"chords": 0, "loops": 0, "arcs": 10, "decorated": 0, "total": 10}


def test_generadores_del_toro(runner):
    result = runner.invoke(cli, ["--builtin", "punctured-torus", "generators"])
    assert result.exit_code == 0
    assert result.stdout.splitlines() == [
        "loop 1", "loop 2", "loop 1,2",
        "arc v1,v1", "arc v1,v1 via 1", "arc v1,v1 via 2", "arc v1,v1 via 1,2",
    ]


def test_generadores_cuadrado(runner):
    result = runner.invoke(cli, ["--builtin", "punctured-digon", "generators", "--square"])
    assert result.exit_code == 0
    assert "decorated v1*x1 = x1*v1 -> x2*x4^-1 + x3*x4^-1" in result.stdout.splitlines()


def test_perfilado_no_ensucia_stdout(runner):
    result = runner.invoke(cli, ["--builtin", "punctured-torus", "--profile", "matrix"])
    assert result.exit_code == 0
    assert result.stdout == "[[0,2,-2],[-2,0,2],[2,-2,0]]\n"
    assert "Perfilado" in result.stderr
