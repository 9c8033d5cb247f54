#!/usr/bin/env python3
"""
Conjunto generador finito del álgebra de madeja

La superficie se dibuja como un disco D con las punciones en su borde, una
franja con los puntos marcados de borde y h asas. Los generadores son las
cuerdas entre punciones y las curvas descritas por sus extremos y la
secuencia de asas que recorren, cada asa como mucho una vez. No se afirma
simplicidad ni minimalidad.
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement, permutations
from math import comb, perm
from typing import Iterator, List, Optional, Sequence, Tuple

from .configuracion import EngineSettings
from .errors import BudgetExceeded
from .laurent import LaurentPoly
from .surface import MarkedSurface

logger = logging.getLogger(__name__)

Handles = Tuple[int, ...]


@dataclass(frozen=True)
class HandleDecomposition:
    handles: int
    strip_points: Tuple[str, ...]
    punctures: Tuple[str, ...]

    @property
    def endpoints(self) -> Tuple[str, ...]:
        return self.strip_points + self.punctures


@dataclass(frozen=True)
class GeneratorDescriptor:
    """
    Generador: cuerda, lazo o arco por secuencia de asas, o elemento de S□
    (arc, inverse, loop, decorated) con su expresión de Laurent.
    """
    kind: str
    endpoints: Tuple[str, ...] = ()
    handles: Handles = ()
    name: str = ""
    factors: Tuple[str, ...] = ()
    laurent: Optional[LaurentPoly] = field(default=None, compare=False)
    expansion: Optional[LaurentPoly] = field(default=None, compare=False)


def handle_decomposition(surface: MarkedSurface) -> HandleDecomposition:
    """
    h = 2g + b - 1 con borde, 2g en superficies cerradas.

    Raises:
        SurfaceError: superficie no triangulable
    """
    surface.check_triangulable()
    b = len(surface.boundary_components)
    h = 2 * surface.genus + b - 1 if b else 2 * surface.genus
    franja = tuple(f"p{i}" for i in range(1, surface.boundary_points + 1))
    return HandleDecomposition(h, franja, surface.puncture_names)


def _canonical_loop(seq: Handles) -> Handles:
    n = len(seq)
    candidatos = []
    for s in (seq, tuple(reversed(seq))):
        candidatos.extend(s[i:] + s[:i] for i in range(n))
    return min(candidatos)


def _bullock_ok(seq: Handles) -> bool:
    """Las asas emparejadas (1,2), (3,4), ... aparecen contiguas si aparecen ambas"""
    posicion = {h: i for i, h in enumerate(seq)}
    for h in seq:
        if h % 2 == 1 and h + 1 in posicion and abs(posicion[h] - posicion[h + 1]) != 1:
            return False
    return True


def _sequences(h: int, minimum: int = 0) -> Iterator[Handles]:
    for k in range(minimum, h + 1):
        yield from permutations(range(1, h + 1), k)


def generator_bound(hd: HandleDecomposition) -> int:
    """Cota explícita del tamaño de la salida de enumerate_generators"""
    h = hd.handles
    m = len(hd.endpoints)
    secuencias = sum(perm(h, k) for k in range(h + 1))
    return comb(len(hd.punctures), 2) + (secuencias - 1) + (m * (m + 1) // 2) * secuencias


def enumerate_generators(hd: HandleDecomposition, bullock: bool = False,
                         settings: Optional[EngineSettings] = None) -> List[GeneratorDescriptor]:
    """
    Cuerdas, lazos (salvo rotación e inversión) y arcos (par de extremos no
    ordenado y secuencia de asas; inversión sólo si ambos extremos coinciden).

    Los arcos entre dos punciones distintas sin asas coinciden con las
    cuerdas y no se repiten.

    Raises:
        BudgetExceeded: si la cota supera el presupuesto configurado
    """
    settings = settings or EngineSettings()
    cota = generator_bound(hd)
    if cota > settings.generator_budget:
        raise BudgetExceeded(f"La enumeración podría producir {cota} generadores "
                             f"(presupuesto {settings.generator_budget})")
    filtro = _bullock_ok if bullock else (lambda seq: True)

    salida = [GeneratorDescriptor("chord", endpoints=par) for par in combinations(hd.punctures, 2)]

    for seq in _sequences(hd.handles, minimum=1):
        if seq == _canonical_loop(seq) and filtro(seq):
            salida.append(GeneratorDescriptor("loop", handles=seq))

    punciones = set(hd.punctures)
    for p, q in combinations_with_replacement(hd.endpoints, 2):
        for seq in _sequences(hd.handles):
            if p == q and tuple(reversed(seq)) < seq:
                continue
            if not seq and p != q and p in punciones and q in punciones:
                continue
            if filtro(seq):
                salida.append(GeneratorDescriptor("arc", endpoints=(p, q), handles=seq))
    logger.info("Generadores: %d (cota %d)", len(salida), cota)
    return salida


def _decorations(d: GeneratorDescriptor, punctures: Sequence[str]) -> int:
    propias = [e for e in d.endpoints if e in punctures]
    if len(propias) == 2:
        return 3 if propias[0] != propias[1] else 2
    return len(propias)


@dataclass(frozen=True)
class GeneratorCounts:
    chords: int
    loops: int
    arcs: int
    decorated: int = 0

    @property
    def total(self) -> int:
        return self.chords + self.loops + self.arcs + self.decorated

    def as_dict(self) -> dict:
        return {"chords": self.chords, "loops": self.loops, "arcs": self.arcs,
                "decorated": self.decorated, "total": self.total}


def generator_count(surface: MarkedSurface, vertex_decorated: bool = False, bullock: bool = False,
                    settings: Optional[EngineSettings] = None) -> GeneratorCounts:
    """Totales por tipo; con `vertex_decorated` añade vβ, wβ, vwβ de cada arco con punciones"""
    hd = handle_decomposition(surface)
    generadores = enumerate_generators(hd, bullock=bullock, settings=settings)
    por_tipo = {"chord": 0, "loop": 0, "arc": 0}
    for d in generadores:
        por_tipo[d.kind] += 1
    decorados = 0
    if vertex_decorated:
        decorados = sum(_decorations(d, hd.punctures) for d in generadores if d.kind != "loop")
    return GeneratorCounts(por_tipo["chord"], por_tipo["loop"], por_tipo["arc"], decorados)


def render_descriptor(d: GeneratorDescriptor) -> str:
    """Una línea por descriptor: `chord v1 v2`, `loop 1,2`, `arc p1,p2 via 1,2`"""
    asas = ",".join(str(h) for h in d.handles)
    if d.kind == "chord":
        return f"chord {d.endpoints[0]} {d.endpoints[1]}"
    if d.kind == "loop" and not d.name:
        return f"loop {asas}"
    if d.kind == "arc" and d.endpoints:
        extremos = ",".join(d.endpoints)
        return f"arc {extremos} via {asas}" if d.handles else f"arc {extremos}"
    # elementos de S□
    etiqueta = "*".join(d.factors + (d.name,))
    texto = f"{d.kind} {etiqueta}"
    if d.laurent is not None:
        texto += f" = {d.laurent.display()}"
    if d.expansion is not None and d.expansion != d.laurent:
        texto += f" -> {d.expansion.display()}"
    return texto
