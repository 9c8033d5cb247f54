#!/usr/bin/env python3
"""
Modelo combinatorio de superficies marcadas y triangulaciones ideales
Volteos, matriz de intercambio, validación e instancias incorporadas
"""

import json
import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .errors import FrozenEdge, InvalidTriangulation, NotFlippable, SurfaceError

logger = logging.getLogger(__name__)

Triple = Tuple[str, str, str]


@dataclass(frozen=True)
class MarkedSurface:
    """Superficie marcada: género, puntos marcados por borde y punciones"""
    genus: int
    boundary_components: Tuple[int, ...] = ()
    punctures: int = 0

    @property
    def boundary_points(self) -> int:
        return sum(self.boundary_components)

    @property
    def marked_points(self) -> int:
        return self.boundary_points + self.punctures

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus - len(self.boundary_components)

    @property
    def expected_interior_arcs(self) -> int:
        """Número de arcos interiores de cualquier triangulación ideal"""
        g, b = self.genus, len(self.boundary_components)
        return 6 * g + 3 * b + 3 * self.punctures + self.boundary_points - 6

    @property
    def puncture_names(self) -> Tuple[str, ...]:
        return tuple(f"v{i}" for i in range(1, self.punctures + 1))

    def triangulability_problems(self) -> List[str]:
        problemas = []
        if self.genus < 0 or self.punctures < 0:
            problemas.append("género y punciones deben ser no negativos")
        if any(m < 1 for m in self.boundary_components):
            problemas.append("hay una componente de borde sin puntos marcados")
        if self.marked_points == 0:
            problemas.append("la superficie no tiene puntos marcados")
        cerrada = not self.boundary_components
        if cerrada and self.genus == 0 and self.punctures < 4:
            problemas.append("esfera con menos de 4 punciones")
        if self.genus == 0 and len(self.boundary_components) == 1:
            m = self.boundary_components[0]
            if self.punctures == 0 and m < 3:
                problemas.append("disco con menos de 3 puntos marcados en el borde")
            if self.punctures == 1 and m == 1:
                problemas.append("monógono con una punción (degenerado)")
        return problemas

    def check_triangulable(self) -> None:
        problemas = self.triangulability_problems()
        if problemas:
            raise SurfaceError("Superficie no triangulable: " + "; ".join(problemas))


@dataclass(frozen=True)
class Violation:
    """Invariante violado, con la arista o el triángulo culpable"""
    invariant: str
    subject: str
    detail: str

    def __str__(self) -> str:
        return f"[{self.invariant}] {self.subject}: {self.detail}"


@dataclass
class ValidationReport:
    """Resultado de `validate`"""
    violations: List[Violation] = field(default_factory=list)
    vertices: Optional[int] = None
    edges: int = 0
    faces: int = 0
    euler: Optional[int] = None

    @property
    def valid(self) -> bool:
        return not self.violations

    def add(self, invariant: str, subject: str, detail: str) -> None:
        self.violations.append(Violation(invariant, subject, detail))


@dataclass(frozen=True)
class VertexData:
    """Clases de vértices obtenidas por pegado de esquinas"""
    edge_ends: Dict[str, Tuple[str, str]]
    boundary_vertices: Tuple[str, ...]
    punctures: Tuple[str, ...]
    boundary_cycles: Tuple[Tuple[str, ...], ...]
    corners: Tuple[Tuple[str, str, str], ...] = ()

    @property
    def count(self) -> int:
        return len(self.boundary_vertices) + len(self.punctures)


@dataclass(frozen=True)
class ExchangeMatrix:
    """Matriz antisimétrica entera indexada por aristas, con índices congelados"""
    labels: Tuple[str, ...]
    entries: Tuple[Tuple[int, ...], ...]
    frozen: FrozenSet[int] = frozenset()

    def __post_init__(self):
        n = len(self.labels)
        if len(self.entries) != n or any(len(fila) != n for fila in self.entries):
            raise ValueError("La matriz de intercambio debe ser cuadrada y coincidir con las etiquetas")
        for i in range(n):
            for j in range(n):
                if self.entries[i][j] != -self.entries[j][i]:
                    raise ValueError(f"Matriz no antisimétrica en ({i}, {j})")

    @classmethod
    def from_rows(cls, labels: Sequence[str], rows: Sequence[Sequence[int]], frozen: Iterable[int] = ()) -> "ExchangeMatrix":
        return cls(tuple(labels), tuple(tuple(int(x) for x in fila) for fila in rows), frozenset(frozen))

    def __len__(self) -> int:
        return len(self.labels)

    def __getitem__(self, ij: Tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def index(self, key) -> int:
        if isinstance(key, str):
            try:
                return self.labels.index(key)
            except ValueError:
                raise SurfaceError(f"Índice desconocido: {key!r}") from None
        if 0 <= key < len(self.labels):
            return key
        raise SurfaceError(f"Índice fuera de rango: {key!r}")

    def rows(self) -> List[List[int]]:
        return [list(fila) for fila in self.entries]

    def column(self, k: int) -> Tuple[int, ...]:
        return tuple(fila[k] for fila in self.entries)

    def to_json(self) -> str:
        """Filas como arreglo JSON compacto: [[0,2,-2],[-2,0,2],[2,-2,0]]"""
        return json.dumps(self.rows(), separators=(",", ":"))

    def __neg__(self) -> "ExchangeMatrix":
        return ExchangeMatrix(self.labels, tuple(tuple(-x for x in fila) for fila in self.entries), self.frozen)

    def permuted(self, order: Sequence[int]) -> Tuple[Tuple[int, ...], ...]:
        """Entradas con filas y columnas reordenadas simultáneamente"""
        return tuple(tuple(self.entries[i][j] for j in order) for i in order)


def _rotate(tri: Sequence[str], pos: int) -> Triple:
    return (tri[pos], tri[(pos + 1) % 3], tri[(pos + 2) % 3])


@dataclass(frozen=True)
class Triangulation:
    """
    Triangulación ideal combinatoria.

    Cada triángulo es una terna de aristas leída en sentido antihorario; el
    lado i va de la esquina i a la esquina i+1. Una terna con una arista
    repetida es un triángulo autoplegado (lazo, radio, radio).
    """
    surface: MarkedSurface
    edges: Tuple[str, ...]
    boundary: FrozenSet[str]
    triangles: Tuple[Triple, ...]

    @classmethod
    def build(cls, surface: MarkedSurface, interior: Sequence[str], boundary: Sequence[str],
              triangles: Sequence[Sequence[str]], order: Optional[Sequence[str]] = None) -> "Triangulation":
        edges = tuple(order) if order is not None else tuple(interior) + tuple(boundary)
        return cls(
            surface,
            edges,
            frozenset(boundary),
            tuple(tuple(t) for t in triangles),
        )

    @property
    def interior_edges(self) -> Tuple[str, ...]:
        return tuple(e for e in self.edges if e not in self.boundary)

    @property
    def boundary_edges(self) -> Tuple[str, ...]:
        return tuple(e for e in self.edges if e in self.boundary)

    def edge_index(self, edge: str) -> int:
        try:
            return self.edges.index(edge)
        except ValueError:
            raise SurfaceError(f"Arista desconocida: {edge!r}") from None

    def occurrences(self, edge: str) -> List[Tuple[int, int]]:
        return [(t, p) for t, tri in enumerate(self.triangles) for p, e in enumerate(tri) if e == edge]

    def self_folded(self) -> Dict[str, str]:
        """radio -> lazo de cada triángulo autoplegado"""
        pares = {}
        for tri in self.triangles:
            for p in range(3):
                a, b, c = _rotate(tri, p)
                if b == c and a != b:
                    pares[b] = a
        return pares

    def is_self_folded(self, t: int) -> bool:
        return len(set(self.triangles[t])) < 3

    def flippable_edges(self) -> Tuple[str, ...]:
        radios = self.self_folded()
        return tuple(e for e in self.interior_edges if e not in radios)

    def canonical(self) -> "Triangulation":
        """Rotación mínima de cada terna y triángulos ordenados"""
        orden = {e: i for i, e in enumerate(self.edges)}
        ternas = []
        for tri in self.triangles:
            rotaciones = [_rotate(tri, p) for p in range(3)]
            ternas.append(min(rotaciones, key=lambda r: tuple(orden.get(e, len(orden)) for e in r)))
        ternas.sort(key=lambda r: tuple(orden.get(e, len(orden)) for e in r))
        return Triangulation(self.surface, self.edges, self.boundary, tuple(ternas))

    def mirror(self) -> "Triangulation":
        """Invierte la orientación de todos los triángulos"""
        return Triangulation(self.surface, self.edges, self.boundary,
                             tuple((c, b, a) for a, b, c in self.triangles))

    def vertex_classes(self) -> VertexData:
        """
        Identifica esquinas pegadas a lo largo de las aristas (unión-búsqueda)
        y nombra los puntos de borde p1.. y las punciones v1.. por orden de
        aparición.
        """
        padre = list(range(3 * len(self.triangles)))

        def raiz(x: int) -> int:
            while padre[x] != x:
                padre[x] = padre[padre[x]]
                x = padre[x]
            return x

        def unir(a: int, b: int) -> None:
            ra, rb = raiz(a), raiz(b)
            if ra != rb:
                padre[max(ra, rb)] = min(ra, rb)

        def extremos(t: int, p: int) -> Tuple[int, int]:
            return 3 * t + p, 3 * t + (p + 1) % 3

        primera: Dict[str, Tuple[int, int]] = {}
        for t, tri in enumerate(self.triangles):
            for p, e in enumerate(tri):
                if e in primera:
                    s1, f1 = extremos(*primera[e])
                    s2, f2 = extremos(t, p)
                    unir(s1, f2)
                    unir(f1, s2)
                else:
                    primera[e] = (t, p)

        de_borde = set()
        for e in self.boundary:
            if e in primera:
                s, f = extremos(*primera[e])
                de_borde.update((raiz(s), raiz(f)))

        nombres: Dict[int, str] = {}
        n_borde = n_punc = 0
        for esquina in range(3 * len(self.triangles)):
            r = raiz(esquina)
            if r in nombres:
                continue
            if r in de_borde:
                n_borde += 1
                nombres[r] = f"p{n_borde}"
            else:
                n_punc += 1
                nombres[r] = f"v{n_punc}"

        ends = {}
        for e, (t, p) in primera.items():
            s, f = extremos(t, p)
            ends[e] = (nombres[raiz(s)], nombres[raiz(f)])

        # ciclos de borde: cada punto de borde es origen de exactamente una arista de borde
        siguiente = {ends[e][0]: e for e in self.boundary if e in ends}
        ciclos = []
        vistos = set()
        for inicio in sorted(siguiente, key=_natural):
            if inicio in vistos:
                continue
            ciclo = []
            actual = inicio
            while actual not in vistos and actual in siguiente:
                vistos.add(actual)
                arista = siguiente[actual]
                ciclo.append(arista)
                actual = ends[arista][1]
            ciclos.append(tuple(ciclo))

        borde = tuple(sorted((n for n in nombres.values() if n.startswith("p")), key=_natural))
        punciones = tuple(sorted((n for n in nombres.values() if n.startswith("v")), key=_natural))
        esquinas = tuple(
            tuple(nombres[raiz(3 * t + p)] for p in range(3)) for t in range(len(self.triangles))
        )
        return VertexData(ends, borde, punciones, tuple(ciclos), esquinas)

    def edge_endpoints(self) -> Dict[str, Tuple[str, str]]:
        return self.vertex_classes().edge_ends

    def validate(self) -> ValidationReport:
        return validate(self.surface, self)


def _natural(nombre: str) -> Tuple[str, int]:
    cabeza = nombre.rstrip("0123456789")
    cola = nombre[len(cabeza):]
    return cabeza, int(cola) if cola else -1


def validate(surface: MarkedSurface, t: Triangulation) -> ValidationReport:
    """
    Comprueba todos los invariantes de la triangulación.

    Returns:
        ValidationReport con una entrada por invariante violado
    """
    report = ValidationReport(edges=len(t.edges), faces=len(t.triangles))

    for problema in surface.triangulability_problems():
        report.add("triangulable", "superficie", problema)

    if len(set(t.edges)) != len(t.edges):
        report.add("aristas", "edges", "identificadores de arista repetidos")
    for e in sorted(t.boundary - set(t.edges)):
        report.add("aristas", e, "arista de borde que no figura en la lista de aristas")

    conocidas = set(t.edges)
    for k, tri in enumerate(t.triangles):
        if len(tri) != 3:
            report.add("triángulos", f"triángulo {k}", f"tiene {len(tri)} lados")
        for e in tri:
            if e not in conocidas:
                report.add("triángulos", f"triángulo {k}", f"arista desconocida {e!r}")

    conteo = {e: 0 for e in t.edges}
    for tri in t.triangles:
        for e in tri:
            if e in conteo:
                conteo[e] += 1
    for e in t.edges:
        esperado = 1 if e in t.boundary else 2
        if conteo[e] != esperado:
            tipo = "de borde" if e in t.boundary else "interior"
            report.add("variedad", e, f"arista {tipo} en {conteo[e]} lados de triángulo (se esperaban {esperado})")

    if not report.valid:
        return report

    datos = t.vertex_classes()
    report.vertices = datos.count
    report.euler = datos.count - len(t.edges) + len(t.triangles)
    if report.euler != surface.euler_characteristic:
        report.add("euler", "V - E + F",
                   f"{report.euler} distinto de 2 - 2g - b = {surface.euler_characteristic}")
    if len(datos.punctures) != surface.punctures:
        report.add("vértices", "punciones", f"{len(datos.punctures)} calculadas, {surface.punctures} declaradas")
    if len(datos.boundary_vertices) != surface.boundary_points:
        report.add("vértices", "borde",
                   f"{len(datos.boundary_vertices)} puntos de borde calculados, {surface.boundary_points} declarados")
    longitudes = sorted(len(c) for c in datos.boundary_cycles)
    if longitudes != sorted(surface.boundary_components):
        report.add("borde", "componentes", f"ciclos de borde {longitudes} frente a {sorted(surface.boundary_components)}")
    if len(t.interior_edges) != surface.expected_interior_arcs:
        report.add("arcos", "interiores",
                   f"{len(t.interior_edges)} arcos interiores, se esperaban {surface.expected_interior_arcs}")
    return report


def require_valid(t: Triangulation) -> None:
    report = t.validate()
    if not report.valid:
        detalle = "; ".join(str(v) for v in report.violations)
        raise InvalidTriangulation(f"Triangulación inválida: {detalle}", report)


def exchange_matrix(t: Triangulation) -> ExchangeMatrix:
    """
    Matriz de intercambio por conteo con signo de adyacencias.

    b_ij suma +1 por cada triángulo en el que x_j sigue inmediatamente a x_i
    en sentido antihorario y -1 en el caso contrario. En los triángulos
    autoplegados el radio cuenta como su lazo envolvente.
    """
    require_valid(t)
    n = len(t.edges)
    pos = {e: i for i, e in enumerate(t.edges)}
    radios = t.self_folded()
    preimagen: Dict[str, List[int]] = {e: [pos[e]] for e in t.edges}
    for radio, lazo in radios.items():
        preimagen[lazo].append(pos[radio])

    B = [[0] * n for _ in range(n)]
    for k, tri in enumerate(t.triangles):
        if t.is_self_folded(k):
            continue
        for p in range(3):
            a, b = tri[p], tri[(p + 1) % 3]
            for i in preimagen[a]:
                for j in preimagen[b]:
                    if i != j:
                        B[i][j] += 1
                        B[j][i] -= 1
    frozen = frozenset(pos[e] for e in t.boundary)
    matriz = ExchangeMatrix.from_rows(t.edges, B, frozen)
    if any(abs(x) > 2 for fila in B for x in fila):
        raise InvalidTriangulation(f"Entradas fuera de [-2, 2] en la matriz de intercambio: {matriz.to_json()}")
    return matriz


def flip(t: Triangulation, k: str) -> Triangulation:
    """
    Voltea la arista interior k a la otra diagonal de su cuadrilátero.

    Raises:
        FrozenEdge: si k es de borde
        NotFlippable: si k es el radio de un triángulo autoplegado
    """
    if k not in t.edges:
        raise SurfaceError(f"Arista desconocida: {k!r}")
    if k in t.boundary:
        raise FrozenEdge(f"La arista de borde {k} está congelada")
    ocurrencias = t.occurrences(k)
    if len(ocurrencias) != 2:
        raise InvalidTriangulation(f"La arista {k} aparece {len(ocurrencias)} veces")
    (t1, p1), (t2, p2) = ocurrencias
    if t1 == t2:
        raise NotFlippable(f"{k} es el radio de un triángulo autoplegado y no admite volteo")
    _, a, b = _rotate(t.triangles[t1], p1)
    _, c, d = _rotate(t.triangles[t2], p2)
    nuevos = list(t.triangles)
    nuevos[t1] = (k, b, c)
    nuevos[t2] = (k, d, a)
    logger.debug("Volteo de %s: %s, %s -> %s, %s", k, t.triangles[t1], t.triangles[t2], nuevos[t1], nuevos[t2])
    return Triangulation(t.surface, t.edges, t.boundary, tuple(nuevos))


def flip_corners(t: Triangulation, corners: Sequence[Triple], k: str) -> Tuple[Triple, ...]:
    """
    Etiquetas de esquina tras voltear k, paralelas a los triángulos de flip(t, k).

    Con (k, a, b) de esquinas (P, Q, R) y (k, c, d) de esquinas (Q, P, S), los
    nuevos triángulos (k, b, c) y (k, d, a) tienen esquinas (S, R, P) y (R, S, Q).
    """
    (t1, p1), (t2, p2) = t.occurrences(k)
    P, _, R = _rotate(corners[t1], p1)
    Q, _, S = _rotate(corners[t2], p2)
    nuevas = list(corners)
    nuevas[t1] = (S, R, P)
    nuevas[t2] = (R, S, Q)
    return tuple(nuevas)


# Instancias incorporadas

def disk(n: int) -> Tuple[MarkedSurface, Triangulation]:
    """
    Polígono de n lados con la triangulación en abanico desde el vértice 1.

    Bordes x1..xn (xi va del vértice i al i+1); la diagonal 1-j es x(n+j-2).
    """
    if n < 4:
        raise SurfaceError(f"disk(n) requiere n >= 4 (recibido {n})")
    surface = MarkedSurface(genus=0, boundary_components=(n,), punctures=0)

    def diagonal(j: int) -> str:
        return f"x{n + j - 2}"

    triangulos = []
    for j in range(2, n):
        lado_1j = "x1" if j == 2 else diagonal(j)
        lado_cierre = f"x{n}" if j + 1 == n else diagonal(j + 1)
        triangulos.append((lado_1j, f"x{j}", lado_cierre))
    orden = [f"x{i}" for i in range(1, 2 * n - 2)]
    borde = [f"x{i}" for i in range(1, n + 1)]
    interior = [e for e in orden if e not in borde]
    return surface, Triangulation.build(surface, interior, borde, triangulos, order=orden)


def once_punctured_torus() -> Tuple[MarkedSurface, Triangulation]:
    """Toro con una punción: diagrama cuadrado con diagonal x3"""
    surface = MarkedSurface(genus=1, boundary_components=(), punctures=1)
    tri = ("x1", "x2", "x3")
    return surface, Triangulation.build(surface, ["x1", "x2", "x3"], [], [tri, tri])


def punctured_digon() -> Tuple[MarkedSurface, Triangulation]:
    """
    Digono con una punción: radios x1 (desde p1) y x4 (desde p2) hacia v1,
    lados de borde x2 y x3
    """
    surface = MarkedSurface(genus=0, boundary_components=(2,), punctures=1)
    return surface, Triangulation.build(
        surface, ["x1", "x4"], ["x2", "x3"],
        [("x2", "x4", "x1"), ("x3", "x1", "x4")],
        order=["x1", "x2", "x3", "x4"],
    )


def builtin(kind: str) -> Tuple[MarkedSurface, Triangulation]:
    """
    Resuelve `disk:n`, `punctured-torus` (o `once_punctured_torus`) y
    `punctured-digon`
    """
    nombre = kind.strip().lower()
    if nombre.startswith("disk"):
        _, _, resto = nombre.partition(":")
        if not resto:
            resto = nombre[4:].strip("()")
        try:
            n = int(resto)
        except ValueError:
            raise SurfaceError(f"Tamaño de disco inválido en {kind!r}") from None
        return disk(n)
    if nombre in ("punctured-torus", "once_punctured_torus", "once-punctured-torus"):
        return once_punctured_torus()
    if nombre in ("punctured-digon", "once_punctured_digon"):
        return punctured_digon()
    raise SurfaceError(f"Superficie incorporada desconocida: {kind!r}")
