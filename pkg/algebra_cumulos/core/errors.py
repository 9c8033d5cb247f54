#!/usr/bin/env python3
"""
Jerarquía de errores del motor de álgebras de cúmulos
Todas las excepciones propias heredan de ClusterEngineError
"""

from typing import Any, Optional


class ClusterEngineError(Exception):
    """Error base del motor"""


# Aritmética de Laurent

class UnknownVariable(ClusterEngineError, KeyError):
    """Índice o nombre de variable inexistente en la tabla"""

    def __str__(self) -> str:
        return Exception.__str__(self)


class MismatchedTables(ClusterEngineError, ValueError):
    """Los operandos pertenecen a tablas de variables distintas"""


class NonInvertibleExponent(ClusterEngineError, ValueError):
    """Exponente negativo sobre una variable no invertible"""


class DivisionByZero(ClusterEngineError, ZeroDivisionError):
    """División entre el polinomio cero"""


class InexactDivision(ClusterEngineError, ArithmeticError):
    """
    La división no es exacta en el anillo de Laurent.

    Señala una violación del fenómeno de Laurent o un error de implementación;
    el resto no nulo queda en `remainder`.
    """

    def __init__(self, message: str, remainder: Any = None, numerator: Any = None, denominator: Any = None):
        super().__init__(message)
        self.remainder = remainder
        self.numerator = numerator
        self.denominator = denominator


class NonUnitSubstitution(ClusterEngineError, ValueError):
    """Se sustituyó un no-unidad en un exponente negativo sin inverso declarado"""


class ExpressionSyntaxError(ClusterEngineError, ValueError):
    """Cadena de polinomio de Laurent mal formada"""


# Superficies y triangulaciones

class SurfaceError(ClusterEngineError, ValueError):
    """Superficie no triangulable o documento de superficie inconsistente"""


class InvalidTriangulation(SurfaceError):
    """Triangulación que viola algún invariante; lleva el informe completo"""

    def __init__(self, message: str, report: Optional[Any] = None):
        super().__init__(message)
        self.report = report


class NotFlippable(ClusterEngineError, ValueError):
    """Arista interior de un triángulo autoplegado (no admite volteo ordinario)"""


class FrozenEdge(ClusterEngineError, ValueError):
    """Se intentó voltear o mutar una arista de borde (congelada)"""


class IncompatibleTags(ClusterEngineError, ValueError):
    """Extremo con muesca en un punto marcado de borde"""


# Puente skein y generadores

class UnsupportedConfiguration(ClusterEngineError):
    """Configuración local sin identidad implementada"""


class BudgetExceeded(ClusterEngineError, RuntimeError):
    """Se superó el presupuesto combinatorio configurado"""
