#!/usr/bin/env python3
"""
Aritmética exacta de polinomios de Laurent dispersos con coeficientes enteros

El producto y la división larga se delegan en los anillos dispersos de sympy
(`sympy.polys.rings`) sobre ZZ con orden grlex, después de desplazar cada
polinomio de Laurent por su exponente mínimo en cada variable.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Mapping, Optional, Sequence, Tuple, Union

from sympy.polys.domains import ZZ
from sympy.polys.orderings import grlex
from sympy.polys.rings import ring

from .errors import (
    DivisionByZero,
    InexactDivision,
    MismatchedTables,
    NonInvertibleExponent,
    NonUnitSubstitution,
    UnknownVariable,
)

logger = logging.getLogger(__name__)

Exponent = Tuple[int, ...]
VarKey = Union[int, str]


@dataclass(frozen=True)
class VarTable:
    """Tabla ordenada de variables con el subconjunto invertible"""
    names: Tuple[str, ...]
    invertible: FrozenSet[int] = field(default_factory=frozenset)

    def __post_init__(self):
        if not self.names:
            raise ValueError("La tabla de variables no puede estar vacía")
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"Nombres de variable repetidos: {self.names}")
        fuera = [i for i in self.invertible if not 0 <= i < len(self.names)]
        if fuera:
            raise UnknownVariable(f"Índices invertibles fuera de rango: {sorted(fuera)}")

    @classmethod
    def build(cls, names: Iterable[str], invertible: Optional[Iterable[str]] = None) -> "VarTable":
        """
        Construye una tabla; sin `invertible` todas las variables son
        invertibles (el anillo ambiente L_Δ)
        """
        names = tuple(names)
        if invertible is None:
            indices = frozenset(range(len(names)))
        else:
            posiciones = {n: i for i, n in enumerate(names)}
            faltan = [n for n in invertible if n not in posiciones]
            if faltan:
                raise UnknownVariable(f"Variables invertibles desconocidas: {faltan}")
            indices = frozenset(posiciones[n] for n in invertible)
        return cls(names, indices)

    def __len__(self) -> int:
        return len(self.names)

    @cached_property
    def _positions(self) -> Dict[str, int]:
        return {name: i for i, name in enumerate(self.names)}

    @cached_property
    def poly_ring(self):
        """Anillo de polinomios de sympy sobre ZZ asociado a la tabla"""
        return ring(list(self.names), ZZ, grlex)[0]

    def index(self, key: VarKey) -> int:
        """Resuelve un nombre o índice a índice, validándolo"""
        if isinstance(key, str):
            try:
                return self._positions[key]
            except KeyError:
                raise UnknownVariable(f"Variable desconocida: {key!r}") from None
        if isinstance(key, int) and 0 <= key < len(self.names):
            return key
        raise UnknownVariable(f"Índice de variable fuera de rango: {key!r}")

    def is_invertible(self, key: VarKey) -> bool:
        return self.index(key) in self.invertible


@dataclass(frozen=True)
class LaurentPoly:
    """
    Polinomio de Laurent en forma canónica dispersa.

    `terms` es una tupla de pares (exponente, coeficiente) sin coeficientes
    nulos, ordenada por exponente descendente; por eso la igualdad
    estructural coincide con la igualdad matemática.
    """
    table: VarTable
    terms: Tuple[Tuple[Exponent, int], ...]

    # Construcción

    @classmethod
    def from_terms(cls, table: VarTable, terms: Mapping[Exponent, int]) -> "LaurentPoly":
        n = len(table)
        limpios = {}
        for exp, coef in terms.items():
            coef = int(coef)
            if coef == 0:
                continue
            exp = tuple(int(e) for e in exp)
            if len(exp) != n:
                raise MismatchedTables(f"Exponente {exp} no tiene longitud {n}")
            limpios[exp] = coef
        _check_invertible(table, limpios)
        return cls(table, tuple(sorted(limpios.items(), reverse=True)))

    @classmethod
    def zero(cls, table: VarTable) -> "LaurentPoly":
        return cls(table, ())

    @classmethod
    def constant(cls, table: VarTable, value: int) -> "LaurentPoly":
        return cls.from_terms(table, {(0,) * len(table): value})

    @classmethod
    def one(cls, table: VarTable) -> "LaurentPoly":
        return cls.constant(table, 1)

    @classmethod
    def monomial(cls, table: VarTable, exponents: Mapping[VarKey, int], coefficient: int = 1) -> "LaurentPoly":
        exp = [0] * len(table)
        for key, e in exponents.items():
            exp[table.index(key)] += int(e)
        return cls.from_terms(table, {tuple(exp): coefficient})

    # Consultas

    def as_dict(self) -> Dict[Exponent, int]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_unit(self) -> bool:
        """Monomio con coeficiente ±1: unidad del anillo de Laurent sobre Z"""
        return self.is_monomial() and abs(self.terms[0][1]) == 1

    def variables(self) -> Tuple[str, ...]:
        usadas = set()
        for exp, _ in self.terms:
            usadas.update(i for i, e in enumerate(exp) if e)
        return tuple(self.table.names[i] for i in sorted(usadas))

    def degree_in(self, key: VarKey) -> Tuple[int, int]:
        """(mínimo, máximo) exponente de una variable; (0, 0) para el cero"""
        i = self.table.index(key)
        if not self.terms:
            return 0, 0
        valores = [exp[i] for exp, _ in self.terms]
        return min(valores), max(valores)

    def has_negative_exponents(self) -> bool:
        return any(e < 0 for exp, _ in self.terms for e in exp)

    def all_coefficients_positive(self) -> bool:
        return all(c > 0 for _, c in self.terms)

    def min_exponents(self) -> Exponent:
        if not self.terms:
            return (0,) * len(self.table)
        return tuple(min(col) for col in zip(*(exp for exp, _ in self.terms)))

    # Conversión a sympy

    def _to_poly(self):
        """(desplazamiento, PolyElement) con self = x^desplazamiento · poly"""
        shift = self.min_exponents()
        R = self.table.poly_ring
        datos = {tuple(e - s for e, s in zip(exp, shift)): c for exp, c in self.terms}
        return shift, R.from_dict(datos)

    @classmethod
    def _from_poly(cls, table: VarTable, shift: Exponent, poly) -> "LaurentPoly":
        datos = {}
        for monom, coef in poly.items():
            datos[tuple(m + s for m, s in zip(monom, shift))] = int(coef)
        return cls.from_terms(table, datos)

    # Presentación

    def display(self) -> str:
        """Forma canónica ordenada, p. ej. `x1^2*x3^-1 + 2*x2`"""
        if not self.terms:
            return "0"
        partes = []
        for k, (exp, coef) in enumerate(self.terms):
            factores = []
            for i, e in enumerate(exp):
                if e == 1:
                    factores.append(self.table.names[i])
                elif e:
                    factores.append(f"{self.table.names[i]}^{e}")
            magnitud = abs(coef)
            if not factores:
                cuerpo = str(magnitud)
            elif magnitud == 1:
                cuerpo = "*".join(factores)
            else:
                cuerpo = f"{magnitud}*" + "*".join(factores)
            if k == 0:
                partes.append(("-" if coef < 0 else "") + cuerpo)
            else:
                partes.append((" - " if coef < 0 else " + ") + cuerpo)
        return "".join(partes)

    def __str__(self) -> str:
        return self.display()

    def __repr__(self) -> str:
        return f"LaurentPoly({self.display()!r})"

    # Operadores

    def __add__(self, other):
        other = _coerce(self.table, other)
        if other is NotImplemented:
            return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.table, tuple((exp, -c) for exp, c in self.terms))

    def __sub__(self, other):
        other = _coerce(self.table, other)
        if other is NotImplemented:
            return NotImplemented
        return add(self, -other)

    def __rsub__(self, other):
        other = _coerce(self.table, other)
        if other is NotImplemented:
            return NotImplemented
        return add(other, -self)

    def __mul__(self, other):
        other = _coerce(self.table, other)
        if other is NotImplemented:
            return NotImplemented
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        return power(self, n)

    def __truediv__(self, other):
        other = _coerce(self.table, other)
        if other is NotImplemented:
            return NotImplemented
        return exact_divide(self, other)


def _coerce(table: VarTable, value) -> LaurentPoly:
    if isinstance(value, LaurentPoly):
        return value
    if isinstance(value, int):
        return LaurentPoly.constant(table, value)
    return NotImplemented


def _check_invertible(table: VarTable, terms: Mapping[Exponent, int]) -> None:
    if len(table.invertible) == len(table):
        return
    for exp in terms:
        for i, e in enumerate(exp):
            if e < 0 and i not in table.invertible:
                raise NonInvertibleExponent(
                    f"Exponente {e} sobre la variable no invertible {table.names[i]}"
                )


def _same_table(a: LaurentPoly, b: LaurentPoly) -> None:
    if a.table is not b.table and a.table != b.table:
        raise MismatchedTables("Los polinomios usan tablas de variables distintas")


def variable(table: VarTable, index: VarKey) -> LaurentPoly:
    """Monomio x_index con coeficiente 1"""
    return LaurentPoly.monomial(table, {table.index(index): 1})


def add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Suma término a término en forma canónica"""
    _same_table(a, b)
    suma = dict(a.terms)
    for exp, c in b.terms:
        suma[exp] = suma.get(exp, 0) + c
    return LaurentPoly.from_terms(a.table, suma)


def mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Producto distributivo; los exponentes se suman componente a componente"""
    _same_table(a, b)
    if a.is_zero() or b.is_zero():
        return LaurentPoly.zero(a.table)
    shift_a, pa = a._to_poly()
    shift_b, pb = b._to_poly()
    shift = tuple(x + y for x, y in zip(shift_a, shift_b))
    return LaurentPoly._from_poly(a.table, shift, pa * pb)


def power(p: LaurentPoly, n: int) -> LaurentPoly:
    """Potencia entera; exponentes negativos sólo existen para unidades"""
    if n >= 0:
        if n == 0:
            return LaurentPoly.one(p.table)
        if p.is_zero():
            return p
        shift, poly = p._to_poly()
        return LaurentPoly._from_poly(p.table, tuple(s * n for s in shift), poly ** n)
    return exact_divide(LaurentPoly.one(p.table), power(p, -n))


def exact_divide(num: LaurentPoly, den: LaurentPoly) -> LaurentPoly:
    """
    Cociente exacto num / den en el anillo de Laurent.

    Args:
        num: dividendo
        den: divisor no nulo

    Returns:
        q con q·den = num

    Raises:
        DivisionByZero: si den es cero
        InexactDivision: si el resto de la división larga no es nulo
    """
    _same_table(num, den)
    if den.is_zero():
        raise DivisionByZero("División de Laurent entre cero")
    if num.is_zero():
        return num
    table = num.table

    if den.is_unit():
        # división entre un monomio unitario: resta de exponentes
        dexp, dcoef = den.terms[0]
        return LaurentPoly.from_terms(
            table,
            {tuple(e - d for e, d in zip(exp, dexp)): c * dcoef for exp, c in num.terms},
        )

    shift_n, pn = num._to_poly()
    shift_d, pd = den._to_poly()
    cociente, resto = pn.div(pd)
    if resto:
        remainder = LaurentPoly._from_poly(table, shift_n, resto)
        logger.error("División inexacta: (%s) / (%s), resto %s", num, den, remainder)
        raise InexactDivision(
            f"({num.display()}) / ({den.display()}) deja resto {remainder.display()}",
            remainder=remainder,
            numerator=num,
            denominator=den,
        )
    shift = tuple(a - b for a, b in zip(shift_n, shift_d))
    return LaurentPoly._from_poly(table, shift, cociente)


def substitute(
    p: LaurentPoly,
    assignment: Mapping[VarKey, LaurentPoly],
    inverses: Optional[Mapping[VarKey, LaurentPoly]] = None,
) -> LaurentPoly:
    """
    Imagen homomorfa de p bajo la asignación variable -> polinomio.

    Las variables no asignadas se envían a la variable del mismo nombre en la
    tabla destino. Un exponente negativo exige que la imagen sea una unidad o
    que se declare su inversa en `inverses`.
    """
    if not assignment:
        return p
    origen = p.table
    imagenes = {origen.index(k): v for k, v in assignment.items()}
    inversas = {origen.index(k): v for k, v in (inverses or {}).items()}
    destino = next(iter(imagenes.values())).table
    for img in list(imagenes.values()) + list(inversas.values()):
        if img.table is not destino and img.table != destino:
            raise MismatchedTables("Las imágenes de la sustitución usan tablas distintas")

    def imagen(i: int) -> LaurentPoly:
        if i in imagenes:
            return imagenes[i]
        return variable(destino, origen.names[i])

    cache: Dict[Tuple[int, int], LaurentPoly] = {}

    def potencia(i: int, e: int) -> LaurentPoly:
        clave = (i, e)
        if clave not in cache:
            base = imagen(i)
            if e >= 0:
                cache[clave] = power(base, e)
            elif base.is_unit():
                cache[clave] = power(base, e)
            elif i in inversas:
                cache[clave] = power(inversas[i], -e)
            else:
                raise NonUnitSubstitution(
                    f"{origen.names[i]} aparece con exponente {e} y su imagen "
                    f"{base.display()} no es una unidad ni tiene inversa declarada"
                )
        return cache[clave]

    total = LaurentPoly.zero(destino)
    for exp, coef in p.terms:
        termino = LaurentPoly.constant(destino, coef)
        for i, e in enumerate(exp):
            if e:
                termino = mul(termino, potencia(i, e))
        total = add(total, termino)
    return total


def product(factors: Sequence[LaurentPoly], table: VarTable) -> LaurentPoly:
    """Producto de una secuencia (uno si está vacía)"""
    resultado = LaurentPoly.one(table)
    for f in factors:
        resultado = mul(resultado, f)
    return resultado
