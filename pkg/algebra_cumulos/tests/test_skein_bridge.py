"""Puente con el álgebra de madeja en q = 1"""

import pytest

from algebra_cumulos.core.cluster import initial_seed, mutate
from algebra_cumulos.core.errors import UnknownVariable, UnsupportedConfiguration
from algebra_cumulos.core.generators import render_descriptor
from algebra_cumulos.core.laurent import variable
from algebra_cumulos.core.skein_bridge import (
    ambient_table,
    check_flip_compatibility,
    find_digon,
    injectivity_evidence,
    loop_laurentness,
    rho,
    rho_product,
    square_generators,
    vertex_expansion,
    vertex_expansions,
    vertex_symbols,
)
from algebra_cumulos.core.surface import disk
from algebra_cumulos.core.tagging import Tag, TaggedArc


class TestTablaAmbiente:
    def test_aristas_y_punciones(self, digono):
        tabla = ambient_table(digono)
        assert tabla.names == ("x1", "x2", "x3", "x4", "v1")
        assert [s.puncture for s in vertex_symbols(tabla)] == ["v1"]

    def test_disco_sin_punciones(self):
        _, t = disk(5)
        assert vertex_symbols(ambient_table(t)) == ()


class TestRho:
    def test_arco_sin_muesca(self, digono):
        tabla = ambient_table(digono)
        imagen = rho(TaggedArc.plain("x4", "p2", "v1"), variable(tabla, "x4"))
        assert imagen.laurent == variable(tabla, "x4")
        assert imagen.vertex_exponents() == {}

    def test_arco_con_muesca(self, digono):
        tabla = ambient_table(digono)
        arco = TaggedArc("x1", (("p2", Tag.PLAIN), ("v1", Tag.NOTCHED)), underlying="x4")
        imagen = rho(arco, variable(tabla, "x4"))
        assert imagen.laurent.display() == "x4*v1"
        assert imagen.vertex_exponents() == {"v1": 1}

    def test_ambos_extremos_en_la_misma_puncion(self, toro):
        tabla = ambient_table(toro)
        arco = TaggedArc("x1", (("v1", Tag.NOTCHED), ("v1", Tag.NOTCHED)))
        imagen = rho(arco, variable(tabla, "x1"))
        assert imagen.laurent.display() == "x1*v1^2"
        assert imagen.vertex_exponents() == {"v1": 2}

    def test_producto(self, digono):
        tabla = ambient_table(digono)
        a = rho(TaggedArc.plain("x1", "p1", "v1"), variable(tabla, "x1"))
        b = rho(TaggedArc.plain("x4", "p2", "v1"), variable(tabla, "x4"))
        assert rho_product([a, b], tabla).display() == "x1*x4"


class TestExpansionDeVertices:
    def test_digono(self, digono):
        testigo = find_digon(digono, "v1")
        assert (testigo.x, testigo.y) == ("x1", "x4")
        assert set(testigo.sides) == {"x2", "x3"}
        assert vertex_expansion(digono, "v1").display() == "x1^-1*x2*x4^-1 + x1^-1*x3*x4^-1"

    def test_toro_sin_digono(self, toro):
        assert find_digon(toro, "v1") is None
        with pytest.raises(UnsupportedConfiguration):
            vertex_expansion(toro, "v1")
        assert vertex_expansions(toro) == {}

    def test_puncion_desconocida(self, digono):
        with pytest.raises(UnknownVariable):
            find_digon(digono, "v9")


class TestCompatibilidadDelVolteo:
    def test_digono_perforado(self, digono):
        s0 = initial_seed(digono)
        resultado = check_flip_compatibility(s0, "x1")
        assert resultado.case == "punctured-digon"
        assert resultado.holds
        tabla = ambient_table(digono)
        assert resultado.lhs == variable(tabla, "x2") + variable(tabla, "x3")
        assert "!=" not in resultado.identity()

    def test_volteo_de_regreso(self, digono):
        s1 = mutate(initial_seed(digono), "x1")
        resultado = check_flip_compatibility(s1, "x1", initial=digono)
        assert resultado.holds

    def test_ptolomeo(self):
        _, t = disk(4)
        resultado = check_flip_compatibility(initial_seed(t), "x5")
        assert resultado.case == "quadrilateral"
        assert resultado.holds
        assert resultado.rhs.display() == "x1*x3 + x2*x4"

    @pytest.mark.parametrize("arista", ["x1", "x2", "x3"])
    def test_toro(self, toro, arista):
        resultado = check_flip_compatibility(initial_seed(toro), arista)
        assert resultado.case == "quadrilateral"
        assert resultado.holds

    def test_todas_las_aristas_del_hexagono(self):
        _, t = disk(6)
        s = initial_seed(t)
        for arista in t.interior_edges:
            assert check_flip_compatibility(s, arista).holds

    def test_sin_triangulacion_compania(self, toro):
        s = initial_seed(toro, track_companion=False)
        with pytest.raises(UnsupportedConfiguration):
            check_flip_compatibility(s, "x3")


class TestInyectividad:
    @pytest.mark.parametrize("n, variables", [(5, 5), (6, 9)])
    def test_discos(self, n, variables):
        _, t = disk(n)
        reporte = injectivity_evidence(initial_seed(t), depth=20)
        assert reporte.passed
        assert reporte.checked == variables
        assert reporte.skipped == 0


class TestGeneradoresCuadrado:
    def test_digono(self, digono):
        descriptores = square_generators(digono)
        tipos = [d.kind for d in descriptores]
        assert tipos.count("arc") == 4
        assert tipos.count("inverse") == 2
        assert tipos.count("decorated") == 2
        lineas = [render_descriptor(d) for d in descriptores]
        assert "inverse x2 = x2^-1" in lineas
        assert "decorated v1*x1 = x1*v1 -> x2*x4^-1 + x3*x4^-1" in lineas

    def test_toro_sin_expansion(self, toro):
        decorados = [d for d in square_generators(toro) if d.kind == "decorated"]
        assert len(decorados) == 6
        assert all(d.expansion is None for d in decorados)

    def test_lazos_declarados(self, digono):
        tabla = ambient_table(digono)
        lazo = variable(tabla, "x2") * variable(tabla, "x4") ** -1
        descriptores = square_generators(digono, loops={"L1": lazo})
        assert descriptores[0].kind == "loop"
        assert render_descriptor(descriptores[0]) == "loop L1 = x2*x4^-1"


def test_lazos_de_laurent(digono):
    tabla = ambient_table(digono)
    resultado = loop_laurentness([("L1", "x2*x4^-1 + x4*x2^-1"), ("L2", "(x1 + x2)^-1")], tabla)
    assert [r.laurent for r in resultado] == [True, False]
    assert resultado[0].detail == "x2*x4^-1 + x2^-1*x4"
