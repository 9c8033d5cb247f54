#!/usr/bin/env python3
"""
Sombra conmutativa (q = 1) del álgebra de madeja en una triangulación fija

Todo se calcula dentro de un único anillo de Laurent ambiente cuyas variables
son las aristas de la triangulación inicial y una variable por punción.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .cluster import Seed, explore, mutate
from .configuracion import EngineSettings
from .errors import ClusterEngineError, ExpressionSyntaxError, UnknownVariable, UnsupportedConfiguration
from .expressions import parse_laurent
from .generators import GeneratorDescriptor
from .laurent import LaurentPoly, VarTable, add, exact_divide, mul, power, product, substitute, variable
from .surface import Triangulation
from .tagging import TaggedArc, TaggedTriangulation, is_puncture, tagged_flip

logger = logging.getLogger(__name__)


def ambient_table(t: Triangulation) -> VarTable:
    """Aristas y punciones de t, todas invertibles"""
    return VarTable.build(tuple(t.edges) + t.vertex_classes().punctures)


def embed(p: LaurentPoly, table: VarTable) -> LaurentPoly:
    """Lleva p a la tabla ambiente (mismos nombres)"""
    if p.table == table:
        return p
    return substitute(p, {name: variable(table, name) for name in p.table.names})


@dataclass(frozen=True)
class VertexSymbol:
    puncture: str
    variable: LaurentPoly


def vertex_symbols(table: VarTable) -> Tuple[VertexSymbol, ...]:
    return tuple(VertexSymbol(n, variable(table, n)) for n in table.names if is_puncture(n))


@dataclass(frozen=True)
class RhoImage:
    """ρ(α) = (producto de las punciones con muesca) · (arco subyacente)"""
    arc: TaggedArc
    laurent: LaurentPoly

    def vertex_exponents(self) -> Dict[str, int]:
        exponentes = {}
        for v in self.arc.notched_ends():
            minimo, maximo = self.laurent.degree_in(v)
            exponentes[v] = maximo
        return exponentes


def rho(arc: TaggedArc, underlying: LaurentPoly) -> RhoImage:
    """
    Imagen de un arco etiquetado: multiplica el arco subyacente por la
    variable de cada extremo con muesca (v·w, o v² si ambos extremos están
    en la misma punción).

    Raises:
        IncompatibleTags: extremo con muesca en un punto de borde (al construir el arco)
        UnknownVariable: la tabla de `underlying` no contiene la punción
    """
    factores = [variable(underlying.table, v) for v in arc.notched_ends()]
    return RhoImage(arc, mul(product(factores, underlying.table), underlying))


def rho_product(images: Sequence[RhoImage], table: VarTable) -> LaurentPoly:
    return product([img.laurent for img in images], table)


# Expansión de las clases de vértice

@dataclass(frozen=True)
class DigonWitness:
    """Digono alrededor de una punción: radios x, y y lados a, b"""
    puncture: str
    x: str
    y: str
    sides: Tuple[str, str]


def find_digon(t: Triangulation, v: str) -> Optional[DigonWitness]:
    """
    Busca dos arcos x, y que sean las únicas aristas en v y dos triángulos
    (a, y, x) y (b, x, y) que los contengan a ambos.
    """
    datos = t.vertex_classes()
    if v not in datos.punctures:
        raise UnknownVariable(f"{v!r} no es una punción de la triangulación")
    incidentes = sorted(e for e, ends in datos.edge_ends.items() if v in ends)
    if len(incidentes) != 2:
        return None
    x, y = incidentes
    if any(datos.edge_ends[e].count(v) != 1 for e in (x, y)):
        return None
    lados = []
    for k, tri in enumerate(t.triangles):
        if t.is_self_folded(k) or x not in tri or y not in tri:
            continue
        lados.append(next(e for e in tri if e not in (x, y)))
    if len(lados) != 2:
        return None
    return DigonWitness(v, x, y, (lados[0], lados[1]))


def vertex_expansion(t: Triangulation, v: str, table: Optional[VarTable] = None) -> LaurentPoly:
    """
    Expresión de Laurent de la punción v: (a + b)·(x·y)^-1, de la identidad
    v·x·y = a + b del digono que rodea a v.

    Sin digono testigo la punción se rechaza a propósito en lugar de devolver
    una expresión derivada: en el toro con una punción el cociente del binomio
    de intercambio entre x3·x3' vale 1 y no expresa v.

    Raises:
        UnsupportedConfiguration: si v no está rodeada por un digono
    """
    table = table or ambient_table(t)
    testigo = find_digon(t, v)
    if testigo is None:
        logger.warning("La punción %s no tiene un digono testigo en la triangulación", v)
        raise UnsupportedConfiguration(f"Sin digono testigo para la punción {v}")
    a, b = (variable(table, e) for e in testigo.sides)
    return exact_divide(add(a, b), mul(variable(table, testigo.x), variable(table, testigo.y)))


def vertex_expansions(t: Triangulation, table: Optional[VarTable] = None) -> Dict[str, LaurentPoly]:
    """Expansiones de todas las punciones que admiten digono testigo"""
    table = table or ambient_table(t)
    expansiones = {}
    for v in t.vertex_classes().punctures:
        if find_digon(t, v) is not None:
            expansiones[v] = vertex_expansion(t, v, table)
    return expansiones


# Compatibilidad del volteo

def rho_in_seed(s: Seed, tt: TaggedTriangulation, label: str, table: VarTable) -> LaurentPoly:
    """
    ρ del arco etiquetado `label` de tt, con el arco subyacente tomado de la
    variable de s del arco isotópico sin muescas en esos extremos.
    """
    arco = tt.arc(label)
    if arco.is_plain:
        return embed(s.vars[s.index(label)], table)
    muescas = set(arco.notched_ends())
    for otro in tt.arcs:
        if otro.arc == label or otro.underlying != arco.underlying:
            continue
        if not set(otro.notched_ends()) & muescas:
            base = embed(s.vars[s.index(otro.arc)], table)
            return rho(arco, base).laurent
    raise UnsupportedConfiguration(f"El arco {arco.display()} no tiene un arco isotópico sin muesca")


@dataclass(frozen=True)
class FlipCheck:
    """Resultado de comparar ρ(x_k)·ρ(x_k') con ρ del binomio de intercambio"""
    label: str
    case: str
    lhs: LaurentPoly
    rhs: LaurentPoly

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs

    def identity(self) -> str:
        signo = "=" if self.holds else "!="
        return f"rho({self.label})*rho({self.label}') = {self.lhs.display()} {signo} {self.rhs.display()}"


def check_flip_compatibility(s: Seed, k: Union[int, str], tags: Optional[TaggedTriangulation] = None,
                             initial: Optional[Triangulation] = None) -> FlipCheck:
    """
    Comprueba ρ(x_k)·ρ(x_k') = ρ(binomio) tras sustituir cada punción por su
    expansión de Laurent. Sin punciones involucradas es la identidad de Ptolomeo.

    Args:
        s: semilla actual, con variables en la tabla inicial
        k: índice a voltear
        tags: triangulación etiquetada de s (por omisión, su compañera)
        initial: triangulación inicial donde buscar los digonos testigo

    Raises:
        UnsupportedConfiguration: configuración local sin identidad implementada
    """
    tt = tags or s.companion
    if tt is None:
        raise UnsupportedConfiguration("La semilla no tiene triangulación etiquetada")
    etiqueta = s.labels[s.index(k)]
    initial = initial or tt.ideal
    table = ambient_table(initial)

    s2 = mutate(s, etiqueta)
    tt2 = tagged_flip(tt, etiqueta)
    lhs = mul(rho_in_seed(s, tt, etiqueta, table), rho_in_seed(s2, tt2, etiqueta, table))

    columna = [(j, s.matrix[j, s.index(etiqueta)]) for j in range(len(s.vars))]
    imagen = {j: rho_in_seed(s, tt, s.labels[j], table) for j, b in columna if b}
    rhs = add(
        product([power(imagen[j], b) for j, b in columna if b > 0], table),
        product([power(imagen[j], -b) for j, b in columna if b < 0], table),
    )

    usadas = {n for n in lhs.variables() + rhs.variables() if is_puncture(n)}
    caso = "quadrilateral"
    if usadas:
        caso = "punctured-digon"
        expansiones = {}
        for v in sorted(usadas):
            expansiones[v] = vertex_expansion(initial, v, table)
        lhs, rhs = substitute(lhs, expansiones), substitute(rhs, expansiones)
    resultado = FlipCheck(etiqueta, caso, lhs, rhs)
    if not resultado.holds:
        logger.error("Falla la compatibilidad del volteo: %s", resultado.identity())
    return resultado


# S□

def square_generators(t: Triangulation, arcs: Optional[Mapping[str, LaurentPoly]] = None,
                      loops: Optional[Mapping[str, LaurentPoly]] = None) -> List[GeneratorDescriptor]:
    """
    Descriptores de S□: lazos, arcos, inversas de arcos de borde y arcos
    decorados con punciones (vβ, wβ, vwβ entre punciones; vβ de punción a borde).
    """
    table = ambient_table(t)
    tt = TaggedTriangulation.from_triangulation(t)
    arcs = {name: embed(p, table) for name, p in (arcs or {}).items()}
    for e in t.edges:
        arcs.setdefault(e, variable(table, e))
    try:
        expansiones = vertex_expansions(t, table)
    except ClusterEngineError:
        expansiones = {}

    def descriptor(kind: str, name: str, laurent: LaurentPoly, factores: Tuple[str, ...] = ()) -> GeneratorDescriptor:
        sin_vertices = None
        usadas = {v for v in laurent.variables() if is_puncture(v)}
        if usadas <= set(expansiones):
            sin_vertices = substitute(laurent, {v: expansiones[v] for v in usadas}) if usadas else laurent
        return GeneratorDescriptor(kind, name=name, factors=factores, laurent=laurent, expansion=sin_vertices)

    salida = []
    for nombre, p in (loops or {}).items():
        salida.append(descriptor("loop", nombre, embed(p, table)))
    for e in t.edges:
        salida.append(descriptor("arc", e, arcs[e]))
    for e in t.boundary_edges:
        salida.append(descriptor("inverse", e, power(arcs[e], -1)))
    for arco in tt.interior_arcs:
        punciones = [v for v in arco.endpoints if is_puncture(v)]
        if not punciones:
            continue
        base = arcs[arco.arc]
        if len(punciones) == 2:
            v, w = punciones
            decoraciones = [(v,), (w,), (v, w)] if v != w else [(v,), (v, v)]
        else:
            decoraciones = [tuple(punciones)]
        for factores in decoraciones:
            p = mul(product([variable(table, f) for f in factores], table), base)
            salida.append(descriptor("decorated", arco.arc, p, factores))
    return salida


# Propiedades

@dataclass
class InjectivityReport:
    checked: int = 0
    skipped: int = 0
    collisions: List[Tuple[str, str]] = field(default_factory=list)
    truncated: bool = False

    @property
    def passed(self) -> bool:
        return not self.collisions


def injectivity_evidence(s0: Seed, depth: int, settings: Optional[EngineSettings] = None) -> InjectivityReport:
    """Variables de cúmulo distintas tienen imágenes ρ distintas en todo el grafo explorado"""
    if s0.companion is None:
        raise UnsupportedConfiguration("La semilla inicial no tiene triangulación etiquetada")
    grafo = explore(s0, depth, settings)
    table = ambient_table(s0.companion.ideal)
    reporte = InjectivityReport(truncated=grafo.truncated)
    imagenes: Dict[str, str] = {}
    for s in grafo.nodes:
        if s.companion is None:
            reporte.skipped += len(s.mutable)
            continue
        for i in s.mutable:
            variable_cumulo = s.vars[i].display()
            if variable_cumulo in imagenes:
                continue
            try:
                imagen = rho_in_seed(s, s.companion, s.labels[i], table).display()
            except UnsupportedConfiguration:
                reporte.skipped += 1
                continue
            imagenes[variable_cumulo] = imagen
            reporte.checked += 1
    por_imagen: Dict[str, str] = {}
    for cumulo, imagen in sorted(imagenes.items()):
        if imagen in por_imagen:
            reporte.collisions.append((por_imagen[imagen], cumulo))
        else:
            por_imagen[imagen] = cumulo
    return reporte


@dataclass(frozen=True)
class LoopCheck:
    name: str
    laurent: bool
    detail: str


def loop_laurentness(loops: Sequence[Tuple[str, str]], table: VarTable) -> List[LoopCheck]:
    """Cada expresión de lazo debe ser un polinomio de Laurent en las aristas"""
    resultado = []
    for nombre, texto in loops:
        try:
            p = parse_laurent(texto, table)
        except (ExpressionSyntaxError, UnknownVariable) as e:
            resultado.append(LoopCheck(nombre, False, str(e)))
            continue
        resultado.append(LoopCheck(nombre, True, p.display()))
    return resultado
