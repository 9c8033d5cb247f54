"""Enumeración del conjunto generador finito"""

from itertools import permutations

import pytest

from algebra_cumulos.core.configuracion import EngineSettings
from algebra_cumulos.core.errors import BudgetExceeded, SurfaceError
from algebra_cumulos.core.generators import (
    GeneratorDescriptor,
    HandleDecomposition,
    enumerate_generators,
    generator_bound,
    generator_count,
    handle_decomposition,
    render_descriptor,
)
from algebra_cumulos.core.surface import MarkedSurface

TORO = MarkedSurface(1, (), 1)


def _lazos_por_fuerza_bruta(h: int):
    """Representantes de secuencias salvo rotación e inversión, comparando dos a dos"""

    def equivalentes(a, b):
        if len(a) != len(b):
            return False
        giros = [a[i:] + a[:i] for i in range(len(a))]
        return b in giros or tuple(reversed(b)) in giros

    representantes = []
    for k in range(1, h + 1):
        for seq in permutations(range(1, h + 1), k):
            if not any(equivalentes(seq, r) for r in representantes):
                representantes.append(seq)
    return representantes


class TestDescomposicion:
    def test_toro(self):
        hd = handle_decomposition(TORO)
        assert hd.handles == 2
        assert hd.punctures == ("v1",)
        assert hd.strip_points == ()

    def test_disco(self):
        hd = handle_decomposition(MarkedSurface(0, (4,), 0))
        assert hd.handles == 0
        assert hd.endpoints == ("p1", "p2", "p3", "p4")

    def test_anillo(self):
        assert handle_decomposition(MarkedSurface(0, (1, 1), 0)).handles == 1

    def test_no_triangulable(self):
        with pytest.raises(SurfaceError):
            handle_decomposition(MarkedSurface(0, (), 2))


class TestEnumeracion:
    def test_tres_lazos_con_dos_asas(self):
        lazos = [d for d in enumerate_generators(handle_decomposition(TORO)) if d.kind == "loop"]
        assert [d.handles for d in lazos] == [(1,), (2,), (1, 2)]

    @pytest.mark.parametrize("h", [1, 2, 3, 4])
    def test_lazos_coinciden_con_fuerza_bruta(self, h):
        lazos = [d for d in enumerate_generators(HandleDecomposition(h, (), ())) if d.kind == "loop"]
        assert len(lazos) == len(_lazos_por_fuerza_bruta(h))

    def test_asas_como_mucho_una_vez(self):
        hd = HandleDecomposition(3, ("p1",), ("v1", "v2"))
        for d in enumerate_generators(hd):
            assert len(set(d.handles)) == len(d.handles)

    def test_toro_completo(self):
        hd = handle_decomposition(TORO)
        generadores = enumerate_generators(hd)
        arcos = [d.handles for d in generadores if d.kind == "arc"]
        assert arcos == [(), (1,), (2,), (1, 2)]
        assert len(generadores) <= generator_bound(hd)

    def test_cuerdas_entre_punciones(self):
        hd = HandleDecomposition(0, (), ("v1", "v2", "v3"))
        generadores = enumerate_generators(hd)
        cuerdas = [d for d in generadores if d.kind == "chord"]
        assert [d.endpoints for d in cuerdas] == [("v1", "v2"), ("v1", "v3"), ("v2", "v3")]
        # sin asas, el arco entre punciones distintas es la cuerda
        assert all(d.endpoints[0] == d.endpoints[1] for d in generadores if d.kind == "arc")

    def test_filtro_de_pares(self):
        hd = HandleDecomposition(4, (), ("v1",))
        filtrados = enumerate_generators(hd, bullock=True)
        todos = enumerate_generators(hd)
        assert len(filtrados) < len(todos)
        for d in filtrados:
            posicion = {h: i for i, h in enumerate(d.handles)}
            for impar in (1, 3):
                if impar in posicion and impar + 1 in posicion:
                    assert abs(posicion[impar] - posicion[impar + 1]) == 1

    def test_presupuesto(self):
        with pytest.raises(BudgetExceeded):
            enumerate_generators(handle_decomposition(TORO), settings=EngineSettings(generator_budget=5))

    def test_cota(self):
        assert generator_bound(handle_decomposition(MarkedSurface(0, (4,), 0))) == 10
        assert generator_bound(handle_decomposition(TORO)) == 9


class TestConteos:
    def test_cuadrado(self):
        conteo = generator_count(MarkedSurface(0, (4,), 0))
        assert conteo.as_dict() == {"chords": 0, "loops": 0, "arcs": 10, "decorated": 0, "total": 10}

    def test_decorados_del_digono(self):
        conteo = generator_count(MarkedSurface(0, (2,), 1), vertex_decorated=True)
        assert (conteo.arcs, conteo.decorated) == (6, 4)
        assert conteo.total == 10


@pytest.mark.parametrize("descriptor, linea", [
    (GeneratorDescriptor("chord", endpoints=("v1", "v2")), "chord v1 v2"),
    (GeneratorDescriptor("loop", handles=(1, 2)), "loop 1,2"),
    (GeneratorDescriptor("arc", endpoints=("p1", "p2"), handles=(2, 1)), "arc p1,p2 via 2,1"),
    (GeneratorDescriptor("arc", endpoints=("p1", "v1")), "arc p1,v1"),
])
def test_render(descriptor, linea):
    assert render_descriptor(descriptor) == linea
