#!/usr/bin/env python3
"""
Documento JSON de superficie y su carga

{"genus": g, "boundary": [m1, ...], "punctures": p,
 "edges": {"interior": [...], "boundary": [...]},
 "triangles": [[e, e, e], ...],
 "tags": [{"arc": e, "ends": ["plain", "notched"], "puncture_ends": [null, "v1"]}],
 "isotopy_pairs": [[e, e], ...],
 "loops": [{"name": "L1", "laurent": "x1*x2^-1 + x2*x1^-1"}]}
"""

import json
import logging
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from .errors import SurfaceError
from .surface import MarkedSurface, Triangulation, builtin
from .tagging import Tag, TaggedTriangulation, tags_from_declarations

logger = logging.getLogger(__name__)


class _Estricto(BaseModel):
    model_config = ConfigDict(extra="forbid")


class EdgesSection(_Estricto):
    interior: List[str]
    boundary: List[str] = Field(default_factory=list)


class TagEntry(_Estricto):
    arc: str
    ends: Tuple[Tag, Tag]
    puncture_ends: Optional[Tuple[Optional[str], Optional[str]]] = None

    @model_validator(mode="after")
    def _muescas_con_puncion(self):
        if self.puncture_ends is None and Tag.NOTCHED in self.ends:
            raise ValueError("un extremo con muesca requiere 'puncture_ends'")
        return self


class LoopEntry(_Estricto):
    name: str
    laurent: str


class SurfaceDocument(_Estricto):
    genus: int = Field(ge=0)
    boundary: List[int] = Field(default_factory=list)
    punctures: int = Field(default=0, ge=0)
    edges: EdgesSection
    triangles: List[Tuple[str, str, str]]
    tags: List[TagEntry] = Field(default_factory=list)
    isotopy_pairs: List[Tuple[str, str]] = Field(default_factory=list)
    loops: List[LoopEntry] = Field(default_factory=list)

    def marked_surface(self) -> MarkedSurface:
        return MarkedSurface(self.genus, tuple(self.boundary), self.punctures)


@dataclass(frozen=True)
class LoadedSurface:
    """Superficie, triangulación y datos auxiliares listos para el motor"""
    surface: MarkedSurface
    triangulation: Triangulation
    tags: Tuple[TagEntry, ...] = ()
    isotopy_pairs: Tuple[Tuple[str, str], ...] = ()
    loops: Tuple[Tuple[str, str], ...] = ()
    origin: str = "<documento>"

    @cached_property
    def tagged(self) -> TaggedTriangulation:
        """Triangulación etiquetada; las etiquetas declaradas fijan el estado de cada punción"""
        tt = TaggedTriangulation.from_triangulation(self.triangulation, isotopy_pairs=self.isotopy_pairs)
        if not self.tags:
            return tt
        declarados = {}
        for entrada in self.tags:
            punciones = entrada.puncture_ends or (None, None)
            declarados[entrada.arc] = tuple(zip(punciones, entrada.ends))
        return tags_from_declarations(tt, declarados)


def _formatear_errores(error: ValidationError) -> str:
    partes = []
    for e in error.errors():
        ruta = ".".join(str(x) for x in e["loc"]) or "<raíz>"
        partes.append(f"{ruta}: {e['msg']}")
    return "; ".join(partes)


def parse_document(text: str, origin: str = "<documento>") -> LoadedSurface:
    """
    Valida el texto JSON y construye la triangulación.

    Raises:
        SurfaceError: JSON mal formado (con línea y columna), campos inválidos
            o desconocidos, o superficie no triangulable
    """
    try:
        crudo = json.loads(text)
    except json.JSONDecodeError as e:
        raise SurfaceError(f"{origin}: JSON inválido en línea {e.lineno}, columna {e.colno}: {e.msg}") from e
    try:
        doc = SurfaceDocument.model_validate(crudo)
    except ValidationError as e:
        raise SurfaceError(f"{origin}: {_formatear_errores(e)}") from e

    surface = doc.marked_surface()
    surface.check_triangulable()
    t = Triangulation.build(surface, doc.edges.interior, doc.edges.boundary, doc.triangles)
    logger.info("Documento %s: %d aristas, %d triángulos", origin, len(t.edges), len(t.triangles))
    return LoadedSurface(
        surface=surface,
        triangulation=t,
        tags=tuple(doc.tags),
        isotopy_pairs=tuple(tuple(p) for p in doc.isotopy_pairs),
        loops=tuple((l.name, l.laurent) for l in doc.loops),
        origin=origin,
    )


def load_document(source: Union[str, Path]) -> LoadedSurface:
    ruta = Path(source)
    try:
        texto = ruta.read_text(encoding="utf-8")
    except OSError as e:
        raise SurfaceError(f"No se pudo leer {ruta}: {e}") from e
    return parse_document(texto, origin=str(ruta))


def load_builtin(kind: str) -> LoadedSurface:
    surface, t = builtin(kind)
    return LoadedSurface(surface=surface, triangulation=t, origin=kind)
