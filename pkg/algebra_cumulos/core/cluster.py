#!/usr/bin/env python3
"""
Semillas de cúmulo, mutación y exploración del grafo de intercambio

Incluye la verificación del fenómeno de Laurent a lo largo de secuencias de
mutación y una aproximación de profundidad acotada a la pertenencia al
álgebra de cúmulos superior.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations, product as cartesian
from math import comb
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple, Union

import graphviz

from .configuracion import EngineSettings
from .errors import ClusterEngineError, FrozenEdge, InexactDivision
from .laurent import LaurentPoly, VarTable, add, exact_divide, mul, power, product, substitute, variable
from .surface import ExchangeMatrix, Triangulation, exchange_matrix
from .tagging import TaggedTriangulation, tagged_flip

logger = logging.getLogger(__name__)

Index = Union[int, str]


@dataclass(frozen=True)
class Seed:
    """
    Semilla: una variable por índice (expresada en la tabla inicial) y la
    matriz de intercambio. La triangulación etiquetada compañera, si existe,
    se voltea junto con cada mutación.
    """
    table: VarTable
    vars: Tuple[LaurentPoly, ...]
    matrix: ExchangeMatrix
    companion: Optional[TaggedTriangulation] = field(default=None, compare=False, repr=False)

    @classmethod
    def from_matrix(cls, matrix: ExchangeMatrix) -> "Seed":
        """Semilla inicial para una matriz antisimétrica arbitraria"""
        table = VarTable.build(matrix.labels)
        return cls(table, tuple(variable(table, i) for i in range(len(matrix))), matrix)

    @property
    def labels(self) -> Tuple[str, ...]:
        return self.matrix.labels

    @property
    def frozen(self) -> FrozenSet[int]:
        return self.matrix.frozen

    @property
    def mutable(self) -> Tuple[int, ...]:
        return tuple(i for i in range(len(self.vars)) if i not in self.frozen)

    def index(self, key: Index) -> int:
        return self.matrix.index(key)

    def cluster(self) -> Tuple[LaurentPoly, ...]:
        return tuple(self.vars[i] for i in self.mutable)

    def display(self) -> List[str]:
        return [f"{self.labels[i]} = {v.display()}" for i, v in enumerate(self.vars)]

    def key(self) -> Tuple:
        """
        Clave de deduplicación: variables no congeladas en forma canónica,
        ordenadas, y la matriz con la permutación simultánea correspondiente.
        Los índices congelados no se permutan.
        """
        textos = {i: self.vars[i].display() for i in self.mutable}
        orden = sorted(self.mutable, key=lambda i: textos[i])
        grupos: List[List[int]] = []
        for i in orden:
            if grupos and textos[grupos[-1][0]] == textos[i]:
                grupos[-1].append(i)
            else:
                grupos.append([i])
        congelados = sorted(self.frozen)
        if all(len(g) == 1 for g in grupos):
            mejor = self.matrix.permuted(orden + congelados)
        else:
            candidatos = (
                [i for g in eleccion for i in g]
                for eleccion in cartesian(*(permutations(g) for g in grupos))
            )
            mejor = min(self.matrix.permuted(c + congelados) for c in candidatos)
        return tuple(textos[i] for i in orden), mejor

    def is_equivalent(self, other: "Seed") -> bool:
        return self.key() == other.key()


def initial_seed(t: Union[Triangulation, TaggedTriangulation], track_companion: bool = True) -> Seed:
    """
    Semilla inicial de una triangulación: x_i para cada arista y su matriz.

    Raises:
        InvalidTriangulation: si la triangulación no es válida
    """
    if isinstance(t, TaggedTriangulation):
        ideal, companion = t.ideal, t
    else:
        ideal = t
        companion = TaggedTriangulation.from_triangulation(t) if track_companion else None
    matriz = exchange_matrix(ideal)
    table = VarTable.build(ideal.edges)
    vars_ = tuple(variable(table, i) for i in range(len(ideal.edges)))
    return Seed(table, vars_, matriz, companion if track_companion else None)


def matrix_mutate(B: ExchangeMatrix, k: Index) -> ExchangeMatrix:
    """
    Mutación de matriz en la dirección k.

    b'_ij = -b_ij si i = k o j = k; en otro caso
    b'_ij = b_ij + (|b_ik| b_kj + b_ik |b_kj|) / 2
    """
    k = B.index(k)
    if k in B.frozen:
        raise FrozenEdge(f"El índice {B.labels[k]} está congelado")
    n = len(B)
    filas = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            b = B[i, j]
            if i == k or j == k:
                filas[i][j] = -b
            else:
                bik, bkj = B[i, k], B[k, j]
                filas[i][j] = b + (abs(bik) * bkj + bik * abs(bkj)) // 2
    return ExchangeMatrix.from_rows(B.labels, filas, B.frozen)


def exchange_binomial(s: Seed, k: int) -> LaurentPoly:
    """Π_{b_jk>0} x_j^{b_jk} + Π_{b_jk<0} x_j^{-b_jk}"""
    positivos = [power(s.vars[j], s.matrix[j, k]) for j in range(len(s.vars)) if s.matrix[j, k] > 0]
    negativos = [power(s.vars[j], -s.matrix[j, k]) for j in range(len(s.vars)) if s.matrix[j, k] < 0]
    return add(product(positivos, s.table), product(negativos, s.table))


def mutate(s: Seed, k: Index) -> Seed:
    """
    Mutación de cúmulo en la dirección k.

    Raises:
        FrozenEdge: si k es congelado
        InexactDivision: si el binomio de intercambio no es divisible
    """
    k = s.index(k)
    if k in s.frozen:
        raise FrozenEdge(f"El índice {s.labels[k]} está congelado")
    nueva = exact_divide(exchange_binomial(s, k), s.vars[k])
    vars_ = s.vars[:k] + (nueva,) + s.vars[k + 1:]
    companion = s.companion
    if companion is not None:
        try:
            companion = tagged_flip(companion, s.labels[k])
        except ClusterEngineError as e:
            logger.warning("Se descarta la triangulación compañera al mutar %s: %s", s.labels[k], e)
            companion = None
    logger.debug("Mutación en %s: %s", s.labels[k], nueva.display())
    return Seed(s.table, vars_, matrix_mutate(s.matrix, k), companion)


def mutate_sequence(s: Seed, ks: Sequence[Index]) -> Seed:
    for k in ks:
        s = mutate(s, k)
    return s


# Fenómeno de Laurent

@dataclass(frozen=True)
class StepResult:
    label: str
    ok: bool
    detail: str


@dataclass
class LaurentReport:
    """Resultado paso a paso de una secuencia de mutaciones"""
    sequence: Tuple[str, ...]
    steps: List[StepResult] = field(default_factory=list)
    final: Optional[Seed] = None

    @property
    def passed(self) -> bool:
        return all(p.ok for p in self.steps)

    @property
    def failure(self) -> Optional[StepResult]:
        return next((p for p in self.steps if not p.ok), None)


def check_laurent(s0: Seed, ks: Sequence[Index]) -> LaurentReport:
    """Ejecuta la secuencia registrando cada división; nunca lanza por fallos matemáticos"""
    reporte = LaurentReport(tuple(s0.labels[s0.index(k)] for k in ks))
    s = s0
    for etiqueta in reporte.sequence:
        try:
            s = mutate(s, etiqueta)
        except InexactDivision as e:
            reporte.steps.append(StepResult(etiqueta, False, str(e)))
            return reporte
        except FrozenEdge as e:
            reporte.steps.append(StepResult(etiqueta, False, str(e)))
            return reporte
        reporte.steps.append(StepResult(etiqueta, True, s.vars[s.index(etiqueta)].display()))
    reporte.final = s
    return reporte


@dataclass
class ExhaustiveReport:
    max_length: int
    sequences_checked: int = 0
    failures: List[Tuple[Tuple[str, ...], str]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def check_laurent_exhaustive(s0: Seed, maxlen: int, allow_repeats: bool = False) -> ExhaustiveReport:
    """
    Todas las secuencias de longitud <= maxlen sobre los índices mutables,
    compartiendo prefijos. Sin `allow_repeats` se omiten las repeticiones
    inmediatas (que sólo deshacen el paso anterior).
    """
    reporte = ExhaustiveReport(maxlen)

    def visitar(s: Seed, prefijo: Tuple[str, ...]) -> None:
        if len(prefijo) == maxlen:
            return
        for k in s.mutable:
            etiqueta = s.labels[k]
            if not allow_repeats and prefijo and prefijo[-1] == etiqueta:
                continue
            secuencia = prefijo + (etiqueta,)
            reporte.sequences_checked += 1
            try:
                siguiente = mutate(s, k)
            except InexactDivision as e:
                reporte.failures.append((secuencia, str(e)))
                continue
            visitar(siguiente, secuencia)

    visitar(s0, ())
    logger.info("Secuencias comprobadas: %d (longitud <= %d)", reporte.sequences_checked, maxlen)
    return reporte


# Exploración

@dataclass
class FlipGraph:
    """Grafo de semillas deduplicadas; aristas (nodo, índice de mutación, nodo)"""
    nodes: List[Seed]
    edges: List[Tuple[int, str, int]]
    paths: List[Tuple[str, ...]]
    depth: int
    truncated: bool = False
    saturated: bool = False

    @property
    def root(self) -> Seed:
        return self.nodes[0]

    def __len__(self) -> int:
        return len(self.nodes)

    def node_label(self, i: int) -> str:
        return "\n".join(sorted(v.display() for v in self.nodes[i].cluster()))

    def to_dot(self, name: str = "flip_graph") -> str:
        g = graphviz.Graph(name=name)
        for i in range(len(self.nodes)):
            g.node(f"s{i}", label=self.node_label(i))
        for i, etiqueta, j in self.edges:
            g.edge(f"s{i}", f"s{j}", label=etiqueta)
        return g.source


def explore(s0: Seed, depth: int, settings: Optional[EngineSettings] = None,
            workers: Optional[int] = None) -> FlipGraph:
    """
    Cierre en anchura de la mutación hasta la profundidad dada.

    Los índices se prueban de menor a mayor; con varios hilos las mutaciones
    de un nivel se calculan en paralelo y se fusionan en orden, de modo que
    el grafo no depende del planificador.
    `saturated` indica que el grafo está completo: el frente se vació o,
    al agotar la profundidad, ningún vecino del frente es una semilla nueva.
    Las aristas más allá de `depth` no se registran.
    """
    settings = settings or EngineSettings()
    workers = workers or settings.workers
    grafo = FlipGraph(nodes=[s0], edges=[], paths=[()], depth=depth)
    indice: Dict[Tuple, int] = {s0.key(): 0}
    pares_vistos = set()
    frente = [0]

    with ThreadPoolExecutor(max_workers=workers) as ejecutor:
        for nivel in range(depth):
            tareas = [(i, k) for i in frente for k in grafo.nodes[i].mutable]
            semillas = ejecutor.map(lambda tarea: mutate(grafo.nodes[tarea[0]], tarea[1]), tareas)
            nuevo_frente = []
            for (i, k), s in zip(tareas, semillas):
                clave = s.key()
                j = indice.get(clave)
                if j is None:
                    if len(grafo.nodes) >= settings.max_nodes:
                        grafo.truncated = True
                        break
                    j = len(grafo.nodes)
                    grafo.nodes.append(s)
                    grafo.paths.append(grafo.paths[i] + (s.labels[k],))
                    indice[clave] = j
                    nuevo_frente.append(j)
                par = frozenset((i, j))
                if i != j and par not in pares_vistos:
                    if len(grafo.edges) >= settings.max_edges:
                        grafo.truncated = True
                        break
                    pares_vistos.add(par)
                    grafo.edges.append((i, s.labels[k], j))
            logger.info("Nivel %d: %d nodos, %d aristas", nivel + 1, len(grafo.nodes), len(grafo.edges))
            if grafo.truncated:
                logger.warning("Exploración truncada por presupuesto (%d nodos, %d aristas)",
                               len(grafo.nodes), len(grafo.edges))
                break
            frente = nuevo_frente
            if not frente:
                grafo.saturated = True
                break
        else:
            # profundidad agotada: el grafo es completo si el frente ya no alcanza semillas nuevas
            if frente:
                tareas = [(i, k) for i in frente for k in grafo.nodes[i].mutable]
                vecinas = ejecutor.map(lambda tarea: mutate(grafo.nodes[tarea[0]], tarea[1]), tareas)
                grafo.saturated = all(s.key() in indice for s in vecinas)
    return grafo


@dataclass(frozen=True)
class ClusterVariableSet:
    variables: Tuple[LaurentPoly, ...]
    truncated: bool = False
    saturated: bool = False

    def __len__(self) -> int:
        return len(self.variables)

    def __iter__(self) -> Iterator[LaurentPoly]:
        return iter(self.variables)

    def __contains__(self, p: LaurentPoly) -> bool:
        return p in self.variables


def cluster_variables(s0: Seed, depth: int, settings: Optional[EngineSettings] = None) -> ClusterVariableSet:
    """Variables no congeladas de todas las semillas exploradas, sin repetir"""
    grafo = explore(s0, depth, settings)
    vistas: Dict[str, LaurentPoly] = {}
    for s in grafo.nodes:
        for v in s.cluster():
            vistas.setdefault(v.display(), v)
    ordenadas = tuple(vistas[k] for k in sorted(vistas))
    return ClusterVariableSet(ordenadas, grafo.truncated, grafo.saturated)


# Álgebra superior (aproximación acotada)

LAURENT_IN_ALL_VISITED = "laurent-in-all-visited"
FAILS_AT_SEED = "fails-at-seed"


@dataclass(frozen=True)
class MembershipVerdict:
    """Veredicto acotado en profundidad: un acierto es evidencia, no prueba"""
    status: str
    depth: int
    seeds_checked: int
    path: Optional[Tuple[str, ...]] = None
    truncated: bool = False

    @property
    def passed(self) -> bool:
        return self.status == LAURENT_IN_ALL_VISITED


def express_in_seed(elem: LaurentPoly, s0: Seed, path: Sequence[str], matrix: ExchangeMatrix) -> LaurentPoly:
    """
    Reescribe elem (en las variables de s0) en el cúmulo de la semilla
    alcanzada por `path`, cuya matriz es `matrix`.

    Las variables iniciales se obtienen mutando una semilla genérica con la
    matriz final a lo largo del camino invertido. Los nombres de la tabla se
    leen entonces como las variables de la semilla destino.

    Raises:
        InexactDivision: si elem no es de Laurent en ese cúmulo
    """
    if not path:
        return elem
    genericos = Seed(s0.table, tuple(variable(s0.table, i) for i in range(len(s0.vars))), matrix)
    iniciales = mutate_sequence(genericos, list(reversed(path))).vars
    minimos = elem.min_exponents()
    negativos = {i: -e for i, e in enumerate(minimos) if e < 0}
    numerador = mul(elem, LaurentPoly.monomial(elem.table, negativos)) if negativos else elem
    asignacion = {i: iniciales[i] for i in range(len(iniciales))}
    imagen = substitute(numerador, asignacion)
    if not negativos:
        return imagen
    denominador = product([power(iniciales[i], e) for i, e in negativos.items()], s0.table)
    return exact_divide(imagen, denominador)


def upper_membership(elem: LaurentPoly, s0: Seed, depth: int,
                     settings: Optional[EngineSettings] = None) -> MembershipVerdict:
    """Comprueba que elem es de Laurent en cada semilla visitada hasta `depth`"""
    grafo = explore(s0, depth, settings)
    for i, s in enumerate(grafo.nodes):
        try:
            express_in_seed(elem, s0, grafo.paths[i], s.matrix)
        except InexactDivision:
            logger.info("%s no es de Laurent en la semilla alcanzada por %s", elem.display(), grafo.paths[i])
            return MembershipVerdict(FAILS_AT_SEED, depth, i + 1, grafo.paths[i], grafo.truncated)
    return MembershipVerdict(LAURENT_IN_ALL_VISITED, depth, len(grafo.nodes), None, grafo.truncated)


# Oráculos y propiedades observadas

def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def brute_force_triangulations(n: int) -> List[FrozenSet[Tuple[int, int]]]:
    """Conjuntos maximales de diagonales no cruzadas de un n-ágono (vértices 0..n-1)"""

    @lru_cache(maxsize=None)
    def triangular(i: int, j: int) -> Tuple[FrozenSet[Tuple[int, int]], ...]:
        if j - i < 2:
            return (frozenset(),)
        resultado = []
        for k in range(i + 1, j):
            propias = {d for d in ((i, k), (k, j)) if d[1] - d[0] > 1 and d != (0, n - 1)}
            for izquierda in triangular(i, k):
                for derecha in triangular(k, j):
                    resultado.append(frozenset(propias) | izquierda | derecha)
        return tuple(resultado)

    return list(triangular(0, n - 1))


@dataclass(frozen=True)
class PositivityReport:
    total: int
    non_positive: Tuple[str, ...] = ()

    @property
    def all_positive(self) -> bool:
        return not self.non_positive


def positivity_report(variables) -> PositivityReport:
    """Registra qué variables tienen algún coeficiente no positivo"""
    variables = list(variables)
    malas = tuple(v.display() for v in variables if not v.all_coefficients_positive())
    if malas:
        logger.warning("Variables con coeficientes no positivos: %s", malas)
    return PositivityReport(len(variables), malas)
