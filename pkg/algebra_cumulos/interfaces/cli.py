#!/usr/bin/env python3
"""
Interfaz de línea de comandos del motor de álgebras de cúmulos

Los datos (matrices, polinomios, generadores, JSON) van a stdout sin marcado;
los mensajes, tablas y registros van a stderr.

Códigos de salida: 0 éxito, 1 verificación fallida, 2 error de entrada.
"""

import json
import logging
from pathlib import Path
from typing import Any, Callable, List, Optional

import click
from rich.console import Console

from ..core.cluster import (
    check_laurent_exhaustive,
    explore,
    initial_seed,
    mutate_sequence,
)
from ..core.configuracion import EngineSettings
from ..core.document import LoadedSurface, load_builtin, load_document
from ..core.errors import ClusterEngineError, InexactDivision
from ..core.generators import (
    enumerate_generators,
    generator_bound,
    generator_count,
    handle_decomposition,
    render_descriptor,
)
from ..core.profiling import CodeProfiler
from ..core.registro import configurar_registro, nivel_por_verbosidad
from ..core.skein_bridge import ambient_table, check_flip_compatibility, loop_laurentness, square_generators
from ..core.surface import exchange_matrix, validate
from ..core.visualizacion import ReportVisualizer

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2


class Contexto:
    """Estado compartido por los subcomandos"""

    def __init__(self, builtin: Optional[str], settings: EngineSettings, profile: bool):
        self.builtin = builtin
        self.settings = settings
        self.profile = profile
        self.out = Console(markup=False, highlight=False, soft_wrap=True)
        self.err = Console(stderr=True)
        self.visualizer = ReportVisualizer(self.err)

    def cargar(self, source: Optional[str]) -> LoadedSurface:
        if source and self.builtin:
            raise click.UsageError("Use un archivo o --builtin, no ambos")
        if source:
            return load_document(source)
        if self.builtin:
            return load_builtin(self.builtin)
        raise click.UsageError("Falta la superficie: indique un archivo JSON o --builtin")

    def dato(self, texto: str) -> None:
        self.out.print(texto)


pasar_contexto = click.make_pass_decorator(Contexto)


def _ejecutar(ctx: Contexto, funcion: Callable[[], int]) -> None:
    """Ejecuta el subcomando (perfilado si se pidió) y traduce errores a códigos de salida"""
    try:
        if ctx.profile:
            profiler = CodeProfiler()
            try:
                codigo = profiler.profile_with_cprofile(funcion)["result"]
            finally:
                if profiler.last_result() is not None:
                    ctx.visualizer.show_profiling_results(profiler.last_result())
        else:
            codigo = funcion()
    except InexactDivision as e:
        ctx.err.print(f"[red]División inexacta:[/red] {e}", markup=True)
        raise SystemExit(EXIT_CHECK_FAILED)
    except ClusterEngineError as e:
        ctx.err.print(f"[red]Error de entrada:[/red] {e}", markup=True)
        raise SystemExit(EXIT_INPUT_ERROR)
    raise SystemExit(codigo)


def _parse_sequence(texto: str, labels: List[str]) -> List[Any]:
    secuencia = []
    for parte in (p.strip() for p in texto.split(",")):
        if not parte:
            continue
        if parte.isdigit():
            indice = int(parte) - 1
            if not 0 <= indice < len(labels):
                raise click.BadParameter(f"índice {parte} fuera de 1..{len(labels)}", param_hint="--seq")
            secuencia.append(indice)
        elif parte in labels:
            secuencia.append(parte)
        else:
            raise click.BadParameter(f"índice desconocido {parte!r}", param_hint="--seq")
    return secuencia


@click.group()
@click.option("--builtin", "builtin", metavar="KIND",
              help="Superficie incorporada: disk:N, punctured-torus o punctured-digon")
@click.option("--verbose", "-v", count=True, help="Más registro en stderr (-v INFO, -vv DEBUG)")
@click.option("--profile", is_flag=True, help="Perfila el subcomando con cProfile y psutil")
@click.option("--workers", type=click.IntRange(1, 64), default=None, help="Hilos para explorar")
@click.option("--max-nodes", type=click.IntRange(1), default=None, help="Presupuesto de nodos")
@click.pass_context
def cli(ctx: click.Context, builtin: Optional[str], verbose: int, profile: bool,
        workers: Optional[int], max_nodes: Optional[int]):
    """Motor simbólico de álgebras de cúmulos de superficies triangulables"""
    configurar_registro(nivel_por_verbosidad(verbose))
    settings = EngineSettings.from_env(workers=workers, max_nodes=max_nodes)
    ctx.obj = Contexto(builtin, settings, profile)


@cli.command("validate")
@click.argument("source", required=False, type=click.Path(dir_okay=False))
@pasar_contexto
def validate_cmd(ctx: Contexto, source: Optional[str]):
    """Comprueba los invariantes de la triangulación"""
    def run() -> int:
        datos = ctx.cargar(source)
        reporte = validate(datos.surface, datos.triangulation)
        ctx.visualizer.show_validation(reporte)
        ctx.dato("valid" if reporte.valid else "invalid")
        for v in reporte.violations:
            ctx.dato(str(v))
        return EXIT_OK if reporte.valid else EXIT_CHECK_FAILED
    _ejecutar(ctx, run)


@cli.command("matrix")
@click.argument("source", required=False, type=click.Path(dir_okay=False))
@pasar_contexto
def matrix_cmd(ctx: Contexto, source: Optional[str]):
    """Imprime la matriz de intercambio como arreglo JSON de filas"""
    def run() -> int:
        datos = ctx.cargar(source)
        ctx.dato(exchange_matrix(datos.triangulation).to_json())
        return EXIT_OK
    _ejecutar(ctx, run)


@cli.command("mutate")
@click.argument("source", required=False, type=click.Path(dir_okay=False))
@click.option("--seq", "secuencia", required=True, help="Índices separados por comas (1-based o nombres)")
@pasar_contexto
def mutate_cmd(ctx: Contexto, source: Optional[str], secuencia: str):
    """Aplica una secuencia de mutaciones e imprime las variables nuevas y la matriz"""
    def run() -> int:
        datos = ctx.cargar(source)
        semilla = initial_seed(datos.tagged)
        pasos = _parse_sequence(secuencia, list(semilla.labels))
        final = mutate_sequence(semilla, pasos)
        mutados = []
        for k in pasos:
            i = final.index(k)
            if i not in mutados:
                mutados.append(i)
        for i in sorted(mutados):
            ctx.dato(f"{final.labels[i]}' = {final.vars[i].display()}")
        ctx.dato(final.matrix.to_json())
        return EXIT_OK
    _ejecutar(ctx, run)


@cli.command("explore")
@click.argument("source", required=False, type=click.Path(dir_okay=False))
@click.option("--depth", type=click.IntRange(0), required=True, help="Profundidad BFS")
@click.option("--dot", "dot_path", type=click.Path(dir_okay=False, writable=True), default=None,
              help="Escribe el grafo en formato DOT")
@pasar_contexto
def explore_cmd(ctx: Contexto, source: Optional[str], depth: int, dot_path: Optional[str]):
    """Explora el grafo de intercambio hasta la profundidad dada"""
    def run() -> int:
        datos = ctx.cargar(source)
        grafo = explore(initial_seed(datos.tagged), depth, ctx.settings)
        ctx.visualizer.show_exploration(grafo)
        ctx.dato(f"nodes: {len(grafo.nodes)}")
        ctx.dato(f"edges: {len(grafo.edges)}")
        ctx.dato(f"saturated: {str(grafo.saturated).lower()}")
        ctx.dato(f"truncated: {str(grafo.truncated).lower()}")
        if dot_path:
            Path(dot_path).write_text(grafo.to_dot(), encoding="utf-8")
            ctx.err.print(f"DOT escrito en {dot_path}")
        return EXIT_OK
    _ejecutar(ctx, run)


@cli.command("laurent-check")
@click.argument("source", required=False, type=click.Path(dir_okay=False))
@click.option("--maxlen", type=click.IntRange(0), required=True, help="Longitud máxima de las secuencias")
@click.option("--allow-repeats", is_flag=True, default=None, help="Incluye repeticiones inmediatas")
@pasar_contexto
def laurent_check_cmd(ctx: Contexto, source: Optional[str], maxlen: int, allow_repeats: Optional[bool]):
    """Recorre todas las secuencias de mutación y verifica cada división"""
    def run() -> int:
        datos = ctx.cargar(source)
        repetir = ctx.settings.allow_repeats if allow_repeats is None else allow_repeats
        reporte = check_laurent_exhaustive(initial_seed(datos.tagged), maxlen, repetir)
        ctx.visualizer.show_laurent(reporte)
        ctx.dato(f"sequences: {reporte.sequences_checked}")
        ctx.dato(f"failures: {len(reporte.failures)}")
        for secuencia, mensaje in reporte.failures:
            ctx.dato(f"FAIL {','.join(secuencia)}: {mensaje}")
        if datos.loops:
            for lazo in loop_laurentness(datos.loops, ambient_table(datos.triangulation)):
                ctx.dato(f"loop {lazo.name}: {'laurent' if lazo.laurent else 'FAIL ' + lazo.detail}")
                if not lazo.laurent:
                    return EXIT_CHECK_FAILED
        return EXIT_OK if reporte.passed else EXIT_CHECK_FAILED
    _ejecutar(ctx, run)


@cli.command("rho-check")
@click.argument("source", required=False, type=click.Path(dir_okay=False))
@click.option("--flip", "arista", required=True, help="Arista a voltear (nombre o índice 1-based)")
@click.option("--twice", is_flag=True, help="Comprueba también el volteo inverso")
@pasar_contexto
def rho_check_cmd(ctx: Contexto, source: Optional[str], arista: str, twice: bool):
    """Verifica ρ(x_k)·ρ(x_k') = ρ(binomio de intercambio)"""
    def run() -> int:
        from ..core.cluster import mutate
        from ..core.tagging import tagged_flip

        datos = ctx.cargar(source)
        semilla = initial_seed(datos.tagged)
        indices = _parse_sequence(arista, list(semilla.labels))
        if len(indices) != 1:
            raise click.BadParameter("se espera exactamente una arista", param_hint="--flip")
        k = indices[0]
        resultado = check_flip_compatibility(semilla, k, datos.tagged, datos.triangulation)
        resultados = [resultado]
        if twice:
            etiqueta = resultado.label
            segunda = mutate(semilla, etiqueta)
            resultados.append(check_flip_compatibility(
                segunda, etiqueta, tagged_flip(datos.tagged, etiqueta), datos.triangulation))
        for r in resultados:
            ctx.dato(f"{r.case}: {r.identity()}")
        return EXIT_OK if all(r.holds for r in resultados) else EXIT_CHECK_FAILED
    _ejecutar(ctx, run)


@cli.command("generators")
@click.argument("source", required=False, type=click.Path(dir_okay=False))
@click.option("--counts", is_flag=True, help="Sólo el resumen JSON de conteos")
@click.option("--vertex-decorated", is_flag=True, help="Incluye los arcos decorados con punciones en el conteo")
@click.option("--bullock", is_flag=True, help="Filtro de emparejamiento de asas")
@click.option("--square", is_flag=True, help="Descriptores de S□ de la triangulación")
@pasar_contexto
def generators_cmd(ctx: Contexto, source: Optional[str], counts: bool, vertex_decorated: bool,
                   bullock: bool, square: bool):
    """Enumera el conjunto generador finito (un descriptor por línea)"""
    def run() -> int:
        datos = ctx.cargar(source)
        if square:
            from ..core.expressions import parse_laurent

            tabla = ambient_table(datos.triangulation)
            lazos = {nombre: parse_laurent(texto, tabla) for nombre, texto in datos.loops}
            for d in square_generators(datos.triangulation, loops=lazos):
                ctx.dato(render_descriptor(d))
            return EXIT_OK
        hd = handle_decomposition(datos.surface)
        if counts:
            conteo = generator_count(datos.surface, vertex_decorated, bullock, ctx.settings)
            ctx.visualizer.show_generator_counts(conteo, generator_bound(hd))
            ctx.dato(json.dumps(conteo.as_dict()))
            return EXIT_OK
        for d in enumerate_generators(hd, bullock=bullock, settings=ctx.settings):
            ctx.dato(render_descriptor(d))
        return EXIT_OK
    _ejecutar(ctx, run)


def main() -> None:
    cli(prog_name="cumulos")


if __name__ == "__main__":
    main()
