#!/usr/bin/env python3
"""
Configuración del motor: presupuestos de exploración y de enumeración
Valores por omisión sobrescribibles por entorno (CUMULOS_*) y por la CLI
"""

import os
from typing import Any, Dict

from pydantic import BaseModel, ConfigDict, Field

_PREFIJO = "CUMULOS_"


class EngineSettings(BaseModel):
    """Límites combinatorios y paralelismo"""
    model_config = ConfigDict(extra="forbid", frozen=True)

    max_nodes: int = Field(default=20000, ge=1)
    max_edges: int = Field(default=200000, ge=1)
    generator_budget: int = Field(default=200000, ge=1)
    workers: int = Field(default=1, ge=1, le=64)
    allow_repeats: bool = False

    @classmethod
    def from_env(cls, environ: Dict[str, str] = None, **overrides: Any) -> "EngineSettings":
        """Lee CUMULOS_MAX_NODES, CUMULOS_WORKERS, etc.; `overrides` gana sobre el entorno"""
        environ = os.environ if environ is None else environ
        valores: Dict[str, Any] = {}
        for nombre in cls.model_fields:
            clave = _PREFIJO + nombre.upper()
            if clave in environ:
                valores[nombre] = environ[clave]
        valores.update({k: v for k, v in overrides.items() if v is not None})
        return cls.model_validate(valores)
