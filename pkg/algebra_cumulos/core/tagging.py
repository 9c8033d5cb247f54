#!/usr/bin/env python3
"""
Arcos etiquetados y triangulaciones etiquetadas

Una triangulación etiquetada se guarda como una triangulación ideal (con
posibles triángulos autoplegados), las etiquetas de sus esquinas y un estado
plain/notched por punción. Los arcos etiquetados se reconstruyen de esos
datos: el lazo de un triángulo autoplegado representa su radio con la
etiqueta opuesta en la punción encerrada.
"""

import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from functools import cached_property
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple, Union

from .errors import FrozenEdge, IncompatibleTags, InvalidTriangulation, SurfaceError
from .surface import Triangulation, flip, flip_corners

logger = logging.getLogger(__name__)


class Tag(str, Enum):
    PLAIN = "plain"
    NOTCHED = "notched"

    def toggled(self) -> "Tag":
        return Tag.NOTCHED if self is Tag.PLAIN else Tag.PLAIN


End = Tuple[str, Tag]


def is_puncture(label: str) -> bool:
    return label.startswith("v")


@dataclass(frozen=True)
class TaggedArc:
    """
    Arco etiquetado.

    Attributes:
        arc: identificador (índice de variable de cúmulo)
        ends: pares (vértice, etiqueta) ordenados
        underlying: arista ideal cuyo trazado sigue el arco
        isotopic: identificadores de arcos con el mismo trazado
        crossing: identificadores de arcos que cruzan a este (declarados)
    """
    arc: str
    ends: Tuple[End, End]
    underlying: str = field(default="", compare=False)
    isotopic: FrozenSet[str] = frozenset()
    crossing: FrozenSet[str] = frozenset()

    def __post_init__(self):
        ends = tuple(sorted((str(v), Tag(t)) for v, t in self.ends))
        if len(ends) != 2:
            raise SurfaceError(f"El arco {self.arc} debe tener dos extremos")
        for v, t in ends:
            if t is Tag.NOTCHED and not is_puncture(v):
                raise IncompatibleTags(f"El arco {self.arc} tiene un extremo con muesca en el punto de borde {v}")
        object.__setattr__(self, "ends", ends)
        if not self.underlying:
            object.__setattr__(self, "underlying", self.arc)

    @classmethod
    def plain(cls, arc: str, u: str, w: str, **kwargs) -> "TaggedArc":
        return cls(arc, ((u, Tag.PLAIN), (w, Tag.PLAIN)), **kwargs)

    @property
    def endpoints(self) -> Tuple[str, str]:
        return self.ends[0][0], self.ends[1][0]

    @property
    def is_plain(self) -> bool:
        return all(t is Tag.PLAIN for _, t in self.ends)

    def notched_ends(self) -> Tuple[str, ...]:
        return tuple(v for v, t in self.ends if t is Tag.NOTCHED)

    def tags_at(self) -> Dict[str, FrozenSet[Tag]]:
        etiquetas: Dict[str, set] = {}
        for v, t in self.ends:
            etiquetas.setdefault(v, set()).add(t)
        return {v: frozenset(ts) for v, ts in etiquetas.items()}

    def display(self) -> str:
        extremos = ",".join(f"{v}:{t.value}" for v, t in self.ends)
        return f"{self.arc}[{extremos}]"


def compatible(a: TaggedArc, b: TaggedArc) -> bool:
    """
    Compatibilidad de dos arcos etiquetados: trazados disjuntos salvo en los
    puntos marcados; si no son isotópicos, etiquetas idénticas en cada extremo
    común; si lo son, al menos un extremo con la misma etiqueta.
    """
    if a.arc == b.arc:
        return a == b
    if b.arc in a.crossing or a.arc in b.crossing:
        return False
    isotopicos = a.underlying == b.underlying or b.arc in a.isotopic or a.arc in b.isotopic
    ta, tb = a.tags_at(), b.tags_at()
    comunes = set(ta) & set(tb)
    if isotopicos:
        return any(ta[v] == tb[v] for v in comunes)
    return all(ta[v] == tb[v] for v in comunes)


@dataclass(frozen=True)
class TaggedTriangulation:
    """
    Triangulación etiquetada: triangulación ideal, esquinas y estado por punción.

    La igualdad compara la colección de arcos etiquetados.
    """
    ideal: Triangulation
    corners: Tuple[Tuple[str, str, str], ...]
    sigma: Tuple[Tuple[str, Tag], ...] = ()
    declared_isotopy: FrozenSet[FrozenSet[str]] = frozenset()

    @classmethod
    def from_triangulation(cls, t: Triangulation, notched: Iterable[str] = (),
                           isotopy_pairs: Iterable[Iterable[str]] = ()) -> "TaggedTriangulation":
        datos = t.vertex_classes()
        notched = set(notched)
        desconocidas = notched - set(datos.punctures)
        if desconocidas:
            raise IncompatibleTags(f"Sólo las punciones admiten muesca; no lo son: {sorted(desconocidas)}")
        sigma = tuple((v, Tag.NOTCHED if v in notched else Tag.PLAIN) for v in datos.punctures)
        pares = frozenset(frozenset(p) for p in isotopy_pairs)
        return cls(t, datos.corners, sigma, pares)

    @property
    def tag_state(self) -> Dict[str, Tag]:
        return dict(self.sigma)

    @cached_property
    def edge_ends(self) -> Dict[str, Tuple[str, str]]:
        extremos = {}
        for tri, esquinas in zip(self.ideal.triangles, self.corners):
            for p, e in enumerate(tri):
                extremos.setdefault(e, (esquinas[p], esquinas[(p + 1) % 3]))
        return extremos

    def enclosed_puncture(self, radius: str, loop: str) -> str:
        base = set(self.edge_ends[loop])
        resto = [v for v in self.edge_ends[radius] if v not in base]
        if len(resto) != 1:
            raise InvalidTriangulation(f"Triángulo autoplegado ({loop}, {radius}, {radius}) sin punción encerrada")
        return resto[0]

    @cached_property
    def arcs(self) -> Tuple[TaggedArc, ...]:
        """Un arco etiquetado por arista, en el orden de las aristas"""
        estado = self.tag_state
        lazos = {lazo: radio for radio, lazo in self.ideal.self_folded().items()}

        def etiqueta(v: str, invertir: bool = False) -> Tag:
            t = estado.get(v, Tag.PLAIN)
            return t.toggled() if invertir else t

        arcos = []
        for e in self.ideal.edges:
            if e in lazos:
                radio = lazos[e]
                v = self.enclosed_puncture(radio, e)
                ends = tuple((u, etiqueta(u, invertir=(u == v))) for u in self.edge_ends[radio])
                arcos.append(TaggedArc(e, ends, underlying=radio, isotopic=self._isotopic(e, {radio})))
            else:
                ends = tuple((u, etiqueta(u)) for u in self.edge_ends[e])
                socio = {lazo for lazo, radio in lazos.items() if radio == e}
                arcos.append(TaggedArc(e, ends, underlying=e, isotopic=self._isotopic(e, socio)))
        return tuple(arcos)

    def _isotopic(self, e: str, extra: set) -> FrozenSet[str]:
        declarados = {x for par in self.declared_isotopy if e in par for x in par if x != e}
        return frozenset(declarados | extra)

    def arc(self, key: Union[str, TaggedArc]) -> TaggedArc:
        nombre = key.arc if isinstance(key, TaggedArc) else key
        for a in self.arcs:
            if a.arc == nombre:
                return a
        raise SurfaceError(f"Arco etiquetado desconocido: {nombre!r}")

    @property
    def interior_arcs(self) -> Tuple[TaggedArc, ...]:
        return tuple(a for a in self.arcs if a.arc not in self.ideal.boundary)

    def key(self) -> FrozenSet[TaggedArc]:
        return frozenset(self.arcs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TaggedTriangulation):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def incompatible_pairs(self) -> List[Tuple[str, str]]:
        return [(a.arc, b.arc) for a, b in combinations(self.arcs, 2) if not compatible(a, b)]

    def check(self) -> None:
        """Compatibilidad dos a dos y maximalidad"""
        malos = self.incompatible_pairs()
        if malos:
            raise InvalidTriangulation(f"Arcos etiquetados incompatibles: {malos}")
        esperado = self.ideal.surface.expected_interior_arcs
        if len(self.interior_arcs) != esperado:
            raise InvalidTriangulation(
                f"Colección no maximal: {len(self.interior_arcs)} arcos interiores, se esperaban {esperado}"
            )

    def display(self) -> List[str]:
        return [a.display() for a in self.arcs]


def tagged_flip(tt: TaggedTriangulation, arc: Union[str, TaggedArc]) -> TaggedTriangulation:
    """
    Sustituye el arco por el único otro arco etiquetado compatible con el resto.

    El radio de un triángulo autoplegado se voltea volteando su lazo,
    intercambiando los identificadores de ambos y alternando el estado de la
    punción encerrada. El resto de casos (cuadrilátero, digono hacia arco con
    muesca y su inverso) son volteos ordinarios de la triangulación ideal.

    Raises:
        FrozenEdge: si el arco es de borde
    """
    nombre = arc.arc if isinstance(arc, TaggedArc) else arc
    t = tt.ideal
    if nombre not in t.edges:
        raise SurfaceError(f"Arco desconocido: {nombre!r}")
    if nombre in t.boundary:
        raise FrozenEdge(f"La arista de borde {nombre} está congelada")

    radios = t.self_folded()
    if nombre not in radios:
        nueva = flip(t, nombre)
        esquinas = flip_corners(t, tt.corners, nombre)
        return replace(tt, ideal=nueva, corners=esquinas)

    lazo = radios[nombre]
    v = tt.enclosed_puncture(nombre, lazo)
    volteada = flip(t, lazo)
    esquinas = flip_corners(t, tt.corners, lazo)
    cambio = {nombre: lazo, lazo: nombre}
    triangulos = tuple(tuple(cambio.get(e, e) for e in tri) for tri in volteada.triangles)
    renombrada = Triangulation(t.surface, t.edges, t.boundary, triangulos)
    sigma = tuple((p, tag.toggled() if p == v else tag) for p, tag in tt.sigma)
    logger.debug("Volteo etiquetado del radio %s alrededor de %s", nombre, v)
    return replace(tt, ideal=renombrada, corners=esquinas, sigma=sigma)


def tags_from_declarations(tt: TaggedTriangulation,
                           declared: Mapping[str, Tuple[Tuple[Optional[str], Tag], ...]]) -> TaggedTriangulation:
    """
    Fija el estado de cada punción a partir de las etiquetas declaradas y
    comprueba que cada arco declarado coincide con el reconstruido.

    `declared` asigna a cada arco sus extremos como (punción o None, etiqueta).
    """
    lazos = {lazo: tt.enclosed_puncture(radio, lazo) for radio, lazo in tt.ideal.self_folded().items()}
    notched = set()
    for arc, ends in declared.items():
        for punc, tag in ends:
            if punc is None:
                if tag is Tag.NOTCHED:
                    raise IncompatibleTags(f"El arco {arc} tiene un extremo con muesca en un punto de borde")
                continue
            # el lazo lleva en su punción encerrada la etiqueta opuesta al estado
            if lazos.get(arc) == punc:
                tag = tag.toggled()
            if tag is Tag.NOTCHED:
                notched.add(punc)

    puncs = {v for v, _ in tt.sigma}
    if notched - puncs:
        raise IncompatibleTags(f"Punciones desconocidas con muesca: {sorted(notched - puncs)}")
    resultado = replace(tt, sigma=tuple((v, Tag.NOTCHED if v in notched else Tag.PLAIN) for v, _ in tt.sigma))
    for arc, ends in declared.items():
        declarado = sorted((p, t) for p, t in ends if p is not None)
        reconstruido = sorted((v, t) for v, t in resultado.arc(arc).ends if is_puncture(v))
        if declarado != reconstruido:
            raise IncompatibleTags(
                f"Etiquetas declaradas para {arc} {declarado} no coinciden con la triangulación {reconstruido}"
            )
    return resultado
