#!/usr/bin/env python3
"""
Lectura de polinomios de Laurent escritos en forma de texto

Gramática: enteros, nombres de variable, `+ - * ^`, paréntesis y exponentes
enteros negativos. El análisis sintáctico lo hace sympy; el árbol resultante
se traduce a LaurentPoly sin pasar por funciones racionales.
"""

import re
from tokenize import TokenError

from sympy import Add, Basic, Function, Integer, Mul, Pow, Symbol
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

from .errors import ExpressionSyntaxError, InexactDivision, UnknownVariable
from .laurent import LaurentPoly, VarTable, power, variable

_PERMITIDOS = re.compile(r"^[A-Za-z0-9_+\-*^()\s]*$")
_TRANSFORMACIONES = standard_transformations + (convert_xor,)
# Espacio global de eval: solo los constructores que emiten las transformaciones.
# Sin __builtins__ cualquier otro nombre queda como Symbol o como función indefinida.
_GLOBALES = {"Function": Function, "Integer": Integer, "Symbol": Symbol, "__builtins__": {}}


def parse_laurent(text: str, table: VarTable) -> LaurentPoly:
    """
    Convierte una cadena como `x1^2*x3^-1 + 2*x2` en un LaurentPoly.

    Raises:
        ExpressionSyntaxError: cadena mal formada, potencia no entera o
            inversa de algo que no es unidad
        UnknownVariable: nombre ausente de la tabla
    """
    if not text or not text.strip():
        raise ExpressionSyntaxError("Expresión vacía")
    if not _PERMITIDOS.match(text):
        raise ExpressionSyntaxError(f"Caracteres no permitidos en {text!r}")

    simbolos = {name: Symbol(name) for name in table.names}
    try:
        expr = parse_expr(text, local_dict=simbolos, global_dict=dict(_GLOBALES),
                          transformations=_TRANSFORMACIONES)
    except (SyntaxError, TypeError, ValueError, TokenError, NameError, AttributeError) as e:
        raise ExpressionSyntaxError(f"No se pudo analizar {text!r}: {e}") from e
    if not isinstance(expr, Basic):
        raise ExpressionSyntaxError(f"{text!r} no es una expresión polinómica")

    desconocidos = sorted(str(s) for s in expr.free_symbols if str(s) not in simbolos)
    if desconocidos:
        raise UnknownVariable(f"Variables desconocidas en {text!r}: {desconocidos}")
    return _convertir(expr, table, text)


def _convertir(expr, table: VarTable, text: str) -> LaurentPoly:
    if isinstance(expr, Integer):
        return LaurentPoly.constant(table, int(expr))
    if isinstance(expr, Symbol):
        return variable(table, str(expr))
    if isinstance(expr, Add):
        total = LaurentPoly.zero(table)
        for arg in expr.args:
            total = total + _convertir(arg, table, text)
        return total
    if isinstance(expr, Mul):
        total = LaurentPoly.one(table)
        for arg in expr.args:
            total = total * _convertir(arg, table, text)
        return total
    if isinstance(expr, Pow):
        base, exponente = expr.args
        if not isinstance(exponente, Integer):
            raise ExpressionSyntaxError(f"Exponente no entero {exponente} en {text!r}")
        try:
            return power(_convertir(base, table, text), int(exponente))
        except InexactDivision as e:
            raise ExpressionSyntaxError(f"{base} no es invertible en el anillo de Laurent ({text!r})") from e
    raise ExpressionSyntaxError(f"Término no soportado {expr} en {text!r}")

