"""Configuración, registro, perfilado y visualización"""

import io
import logging

import pytest
from pydantic import ValidationError
from rich.console import Console
from rich.logging import RichHandler

from algebra_cumulos.core.cluster import check_laurent_exhaustive, explore, initial_seed
from algebra_cumulos.core.configuracion import EngineSettings
from algebra_cumulos.core.generators import generator_count
from algebra_cumulos.core.profiling import CodeProfiler
from algebra_cumulos.core.registro import LOGGER_RAIZ, configurar_registro, nivel_por_verbosidad
from algebra_cumulos.core.surface import MarkedSurface, disk, validate
from algebra_cumulos.core.visualizacion import ReportVisualizer


def _consola():
    buffer = io.StringIO()
    return Console(file=buffer, width=120, color_system=None), buffer


class TestEngineSettings:
    def test_valores_por_omision(self):
        settings = EngineSettings()
        assert settings.max_nodes == 20000
        assert settings.workers == 1
        assert not settings.allow_repeats

    def test_desde_el_entorno(self):
        settings = EngineSettings.from_env({"CUMULOS_MAX_NODES": "7", "CUMULOS_ALLOW_REPEATS": "true"})
        assert settings.max_nodes == 7
        assert settings.allow_repeats

    def test_argumentos_ganan_al_entorno(self):
        settings = EngineSettings.from_env({"CUMULOS_WORKERS": "3"}, workers=5, max_nodes=None)
        assert settings.workers == 5
        assert settings.max_nodes == 20000

    @pytest.mark.parametrize("entorno", [{"CUMULOS_WORKERS": "0"}, {"CUMULOS_MAX_NODES": "muchos"}])
    def test_valores_invalidos(self, entorno):
        with pytest.raises(ValidationError):
            EngineSettings.from_env(entorno)

    def test_campos_desconocidos_e_inmutabilidad(self):
        with pytest.raises(ValidationError):
            EngineSettings(max_depth=3)
        settings = EngineSettings()
        with pytest.raises(ValidationError):
            settings.workers = 4


class TestRegistro:
    @pytest.mark.parametrize("verbose, nivel", [(0, logging.WARNING), (1, logging.INFO),
                                                (2, logging.DEBUG), (5, logging.DEBUG)])
    def test_niveles(self, verbose, nivel):
        assert nivel_por_verbosidad(verbose) == nivel

    def test_un_solo_handler(self):
        consola, buffer = _consola()
        configurar_registro(logging.INFO)
        logger = configurar_registro(logging.INFO, consola)
        handlers = [h for h in logger.handlers if isinstance(h, RichHandler)]
        assert len(handlers) == 1
        assert not logger.propagate
        logging.getLogger(f"{LOGGER_RAIZ}.core.cluster").info("nivel explorado")
        assert "nivel explorado" in buffer.getvalue()

    def test_debug_filtrado_en_warning(self):
        consola, buffer = _consola()
        configurar_registro(logging.WARNING, consola)
        logging.getLogger(f"{LOGGER_RAIZ}.core.laurent").debug("oculto")
        assert "oculto" not in buffer.getvalue()


class TestCodeProfiler:
    def test_perfil_de_una_exploracion(self):
        profiler = CodeProfiler(top=5)
        registro = profiler.profile_with_cprofile(explore, initial_seed(disk(6)[1]), 10)
        assert registro["success"]
        assert len(registro["result"]) == 14
        assert registro["total_calls"] > 0
        assert 0 < len(registro["hotspots"]) <= 5
        assert set(registro["memory_mb"]) == {"before", "after"}
        assert profiler.last_result() is registro

    def test_excepcion_se_propaga_y_se_registra(self):
        profiler = CodeProfiler()

        def falla():
            raise ValueError("sin semilla")

        with pytest.raises(ValueError):
            profiler.profile_with_cprofile(falla)
        assert not profiler.last_result()["success"]
        assert profiler.last_result()["error"] == "sin semilla"


class TestReportVisualizer:
    def test_validacion(self):
        consola, buffer = _consola()
        superficie, t = disk(5)
        ReportVisualizer(consola).show_validation(validate(superficie, t))
        assert "Triangulación" in buffer.getvalue()
        assert "válida" in buffer.getvalue()

    def test_exploracion_y_laurent(self):
        consola, buffer = _consola()
        visualizer = ReportVisualizer(consola)
        s0 = initial_seed(disk(5)[1])
        visualizer.show_exploration(explore(s0, 10))
        visualizer.show_laurent(check_laurent_exhaustive(s0, 3))
        texto = buffer.getvalue()
        assert "Grafo de intercambio" in texto
        assert "Fenómeno de Laurent" in texto

    def test_generadores_y_perfil(self):
        consola, buffer = _consola()
        visualizer = ReportVisualizer(consola)
        visualizer.show_generator_counts(generator_count(MarkedSurface(0, (4,), 0)), bound=10)
        profiler = CodeProfiler()
        profiler.profile_with_cprofile(sum, [1, 2, 3])
        visualizer.show_profiling_results(profiler.last_result())
        texto = buffer.getvalue()
        assert "Generadores" in texto
        assert "Perfilado" in texto
