#!/usr/bin/env python3
"""
Script de ejecución del motor de álgebras de cúmulos
Lanza la interfaz de línea de comandos sin necesidad de instalar el paquete
"""

import os
import sys

from rich.console import Console

# Agregar el directorio del proyecto al path
sys.path.insert(0, os.path.dirname(__file__))

console = Console(stderr=True)

try:
    from algebra_cumulos.interfaces.cli import main

    if __name__ == "__main__":
        main()

except ImportError as e:
    console.print(f"[red]❌ Error de importación: {e}[/red]")
    console.print("[yellow]💡 Instala las dependencias: pip install -r requirements.txt[/yellow]")
    sys.exit(2)
except KeyboardInterrupt:
    console.print("\n[yellow]Interrumpido por el usuario[/yellow]")
    sys.exit(130)
