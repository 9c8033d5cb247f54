"""
Módulo de perfilado de operaciones del motor
Integra cProfile para tiempos por función y psutil para memoria residente
"""

import cProfile
import io
import pstats
import time
from datetime import datetime
from typing import Any, Callable, Dict, List, Optional

import psutil


class CodeProfiler:
    """Perfila una llamada y conserva el historial de resultados"""

    def __init__(self, top: int = 15):
        self.top = top
        self.profile_results: List[Dict[str, Any]] = []
        self._proceso = psutil.Process()

    def _rss_mb(self) -> float:
        return self._proceso.memory_info().rss / (1024 ** 2)

    def profile_with_cprofile(self, target_function: Callable, *args, **kwargs) -> Dict[str, Any]:
        """
        Ejecuta la función bajo cProfile

        Args:
            target_function: Función a perfilar
            *args, **kwargs: Argumentos para la función objetivo

        Returns:
            Dict con tiempos, llamadas, memoria y el resultado de la función.
            Las excepciones de la función objetivo se propagan tras registrar
            el perfil parcial.
        """
        profile = cProfile.Profile()
        memoria_inicial = self._rss_mb()
        start_time = time.perf_counter()
        error: Optional[BaseException] = None
        result = None

        profile.enable()
        try:
            result = target_function(*args, **kwargs)
        except BaseException as e:
            error = e
        finally:
            profile.disable()
        end_time = time.perf_counter()

        output_buffer = io.StringIO()
        stats = pstats.Stats(profile, stream=output_buffer)
        stats.sort_stats("cumulative")
        stats.print_stats(self.top)

        registro = {
            "profiler_type": "cProfile",
            "timestamp": datetime.now().isoformat(),
            "function": getattr(target_function, "__name__", repr(target_function)),
            "execution_time": end_time - start_time,
            "total_calls": stats.total_calls,
            "memory_mb": {
                "before": memoria_inicial,
                "after": self._rss_mb(),
            },
            "hotspots": self._hotspots(stats),
            "detailed_stats": output_buffer.getvalue(),
            "success": error is None,
            "result": result,
        }
        if error is not None:
            registro["error"] = str(error)
        self.profile_results.append(registro)
        if error is not None:
            raise error
        return registro

    def _hotspots(self, stats: pstats.Stats) -> List[Dict[str, Any]]:
        filas = []
        for (archivo, linea, funcion), (_, llamadas, propio, acumulado, _) in stats.stats.items():
            filas.append({
                "function": f"{funcion} ({archivo.rsplit('/', 1)[-1]}:{linea})",
                "calls": llamadas,
                "own_time": propio,
                "cumulative_time": acumulado,
            })
        filas.sort(key=lambda f: f["cumulative_time"], reverse=True)
        return filas[:self.top]

    def last_result(self) -> Optional[Dict[str, Any]]:
        return self.profile_results[-1] if self.profile_results else None
