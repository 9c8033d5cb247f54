"""
Módulo de visualización de informes del motor en la terminal
usando la librería rich. Todo se escribe en la consola de mensajes (stderr).
"""

from typing import Any, Dict, Optional

from rich import box
from rich.console import Console
from rich.panel import Panel
from rich.table import Table
from rich.text import Text

from .cluster import ExhaustiveReport, FlipGraph
from .generators import GeneratorCounts
from .surface import ValidationReport


class ReportVisualizer:
    """Tablas rich para validación, exploración, generadores y perfilado"""

    def __init__(self, console: Optional[Console] = None):
        self.console = console or Console(stderr=True)

    def show_validation(self, report: ValidationReport):
        """Resumen de conteos y lista de invariantes violados"""
        estado = "[green]válida[/green]" if report.valid else "[red]inválida[/red]"
        tabla = Table(title="Triangulación", box=box.ROUNDED)
        tabla.add_column("Métrica", style="cyan")
        tabla.add_column("Valor", style="green")
        tabla.add_row("Estado", estado)
        tabla.add_row("Vértices (V)", "-" if report.vertices is None else str(report.vertices))
        tabla.add_row("Aristas (E)", str(report.edges))
        tabla.add_row("Triángulos (F)", str(report.faces))
        tabla.add_row("χ", "-" if report.euler is None else str(report.euler))
        self.console.print(tabla)

        if report.violations:
            errores = Table(title="Invariantes violados", box=box.ROUNDED)
            errores.add_column("Invariante", style="red")
            errores.add_column("Sujeto", style="yellow")
            errores.add_column("Detalle")
            for v in report.violations:
                errores.add_row(v.invariant, v.subject, v.detail)
            self.console.print(errores)

    def show_exploration(self, graph: FlipGraph):
        tabla = Table(title="Grafo de intercambio", box=box.ROUNDED)
        tabla.add_column("Métrica", style="cyan")
        tabla.add_column("Valor", style="green")
        tabla.add_row("Profundidad", str(graph.depth))
        tabla.add_row("Nodos", str(len(graph.nodes)))
        tabla.add_row("Aristas", str(len(graph.edges)))
        tabla.add_row("Saturado", "sí" if graph.saturated else "no")
        if graph.truncated:
            tabla.add_row("Truncado", "[yellow]sí (presupuesto agotado)[/yellow]")
        self.console.print(tabla)

    def show_laurent(self, report: ExhaustiveReport):
        color = "green" if report.passed else "red"
        texto = Text(f"{report.sequences_checked} secuencias de longitud <= {report.max_length}, "
                     f"{len(report.failures)} fallos", style=color)
        self.console.print(Panel(texto, title="Fenómeno de Laurent", box=box.ROUNDED))

    def show_generator_counts(self, counts: GeneratorCounts, bound: Optional[int] = None):
        tabla = Table(title="Generadores", box=box.ROUNDED)
        tabla.add_column("Tipo", style="cyan")
        tabla.add_column("Cantidad", style="green", justify="right")
        for tipo, n in counts.as_dict().items():
            tabla.add_row(tipo, str(n))
        if bound is not None:
            tabla.add_row("cota", str(bound))
        self.console.print(tabla)

    def show_profiling_results(self, profile_results: Dict[str, Any]):
        """Tiempo, llamadas, memoria y funciones más costosas"""
        info_table = Table(title="Perfilado", box=box.ROUNDED)
        info_table.add_column("Métrica", style="cyan")
        info_table.add_column("Valor", style="green")
        info_table.add_row("Tiempo de Ejecución", f"{profile_results['execution_time']:.3f}s")
        info_table.add_row("Total de Llamadas", f"{profile_results['total_calls']:,}")
        memoria = profile_results["memory_mb"]
        info_table.add_row("Memoria RSS", f"{memoria['before']:.1f} -> {memoria['after']:.1f} MB")
        self.console.print(info_table)

        func_table = Table(title="Top Funciones (acumulado)", box=box.ROUNDED)
        func_table.add_column("Función", style="cyan")
        func_table.add_column("Llamadas", style="yellow", justify="right")
        func_table.add_column("Propio", style="red", justify="right")
        func_table.add_column("Acumulado", style="green", justify="right")
        for func in profile_results["hotspots"][:10]:
            func_table.add_row(
                func["function"][:60],
                f"{func['calls']:,}",
                f"{func['own_time']:.3f}s",
                f"{func['cumulative_time']:.3f}s",
            )
        self.console.print(func_table)
