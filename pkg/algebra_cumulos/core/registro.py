#!/usr/bin/env python3
"""
Registro del paquete con rich: mensajes humanos a stderr, datos limpios en stdout
"""

import logging
from typing import Optional

from rich.console import Console
from rich.logging import RichHandler

LOGGER_RAIZ = "algebra_cumulos"

_NIVELES = {0: logging.WARNING, 1: logging.INFO}


def nivel_por_verbosidad(verbose: int) -> int:
    return _NIVELES.get(verbose, logging.DEBUG)


def configurar_registro(nivel: int = logging.WARNING, consola: Optional[Console] = None) -> logging.Logger:
    """
    Instala un único RichHandler sobre el logger del paquete.

    Llamadas repetidas reemplazan el handler anterior.
    """
    consola = consola or Console(stderr=True)
    logger = logging.getLogger(LOGGER_RAIZ)
    for handler in list(logger.handlers):
        if isinstance(handler, RichHandler):
            logger.removeHandler(handler)
    handler = RichHandler(console=consola, show_path=False, rich_tracebacks=True, markup=False)
    handler.setFormatter(logging.Formatter("%(message)s"))
    logger.addHandler(handler)
    logger.setLevel(nivel)
    logger.propagate = False
    return logger
