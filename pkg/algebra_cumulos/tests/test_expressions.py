"""Lectura de polinomios de Laurent en texto"""

import pytest

from algebra_cumulos.core.errors import ExpressionSyntaxError, UnknownVariable
from algebra_cumulos.core.expressions import parse_laurent
from algebra_cumulos.core.laurent import power, variable


def test_lectura_basica(tabla):
    p = parse_laurent("x1^2*x3^-1 + 2*x2", tabla)
    x1, x2, x3 = (variable(tabla, i) for i in range(3))
    assert p == x1 ** 2 * power(x3, -1) + 2 * x2


def test_display_es_releible(tabla):
    p = parse_laurent("(x1 + x2)^2 * x3^-1 - 5", tabla)
    assert parse_laurent(p.display(), tabla) == p


def test_potencia_con_doble_asterisco(tabla):
    assert parse_laurent("x1**3", tabla) == parse_laurent("x1^3", tabla)


@pytest.mark.parametrize("texto", ["", "   ", "x1 +", "x1 ^ 1/2", "x1 $ x2", "(x1 + x2"])
def test_sintaxis_invalida(tabla, texto):
    with pytest.raises(ExpressionSyntaxError):
        parse_laurent(texto, tabla)


def test_inversa_de_no_unidad(tabla):
    with pytest.raises(ExpressionSyntaxError):
        parse_laurent("(x1 + x2)^-1", tabla)


def test_variable_desconocida(tabla):
    with pytest.raises(UnknownVariable):
        parse_laurent("x1 + y", tabla)


def test_llamadas_no_se_ejecutan(tabla, tmp_path):
    destino = tmp_path / "creado"
    orden = f"open({str(destino)!r},'w').write('x')"
    texto = "exec(" + "+".join(f"chr({ord(c)})" for c in orden) + ")"
    with pytest.raises(ExpressionSyntaxError):
        parse_laurent(texto, tabla)
    assert not destino.exists()


@pytest.mark.parametrize("texto", ["exit", "open", "__import__"])
def test_nombres_de_python_son_simbolos(tabla, texto):
    with pytest.raises(UnknownVariable):
        parse_laurent(texto, tabla)


@pytest.mark.parametrize("texto", ["exit()", "print(x1)", "exec(x1 + x2)"])
def test_funciones_no_son_terminos(tabla, texto):
    with pytest.raises(ExpressionSyntaxError):
        parse_laurent(texto, tabla)
