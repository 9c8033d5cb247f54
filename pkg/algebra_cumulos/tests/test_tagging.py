"""Arcos etiquetados, compatibilidad y volteo etiquetado"""

import pytest

from algebra_cumulos.core.errors import FrozenEdge, IncompatibleTags
from algebra_cumulos.core.surface import disk
from algebra_cumulos.core.tagging import (
    Tag,
    TaggedArc,
    TaggedTriangulation,
    compatible,
    tagged_flip,
    tags_from_declarations,
)


class TestTaggedArc:
    def test_extremos_ordenados(self):
        arco = TaggedArc("a", (("v1", Tag.NOTCHED), ("p1", Tag.PLAIN)))
        assert arco.endpoints == ("p1", "v1")
        assert arco.notched_ends() == ("v1",)
        assert not arco.is_plain

    def test_muesca_en_el_borde(self):
        with pytest.raises(IncompatibleTags):
            TaggedArc("a", (("p1", Tag.NOTCHED), ("v1", Tag.PLAIN)))

    def test_display(self):
        assert TaggedArc.plain("a", "p2", "v1").display() == "a[p2:plain,v1:plain]"

    def test_etiquetas_distintas_en_extremo_comun(self):
        a = TaggedArc("a", (("p1", Tag.PLAIN), ("v1", Tag.PLAIN)))
        b = TaggedArc("b", (("p2", Tag.PLAIN), ("v1", Tag.NOTCHED)))
        assert not compatible(a, b)

    def test_isotopicos_con_una_etiqueta_comun(self):
        a = TaggedArc("a", (("p1", Tag.PLAIN), ("v1", Tag.PLAIN)), underlying="r")
        b = TaggedArc("b", (("p1", Tag.PLAIN), ("v1", Tag.NOTCHED)), underlying="r")
        assert compatible(a, b)

    def test_cruce_declarado(self):
        a = TaggedArc.plain("a", "p1", "p3", crossing=frozenset({"b"}))
        b = TaggedArc.plain("b", "p2", "p4")
        assert not compatible(a, b)


class TestTaggedTriangulation:
    def test_toro_sin_muescas(self, toro):
        tt = TaggedTriangulation.from_triangulation(toro)
        tt.check()
        assert all(a.is_plain for a in tt.arcs)
        assert tt.tag_state == {"v1": Tag.PLAIN}

    def test_muesca_en_punto_de_borde(self):
        _, t = disk(4)
        with pytest.raises(IncompatibleTags):
            TaggedTriangulation.from_triangulation(t, notched=["p1"])

    def test_muesca_global_en_la_puncion(self, toro):
        tt = TaggedTriangulation.from_triangulation(toro, notched=["v1"])
        assert all(a.notched_ends() == ("v1", "v1") for a in tt.arcs)
        tt.check()

    def test_digono_hacia_arco_con_muesca(self, digono):
        tt = TaggedTriangulation.from_triangulation(digono)
        volteada = tagged_flip(tt, "x1")
        x1 = volteada.arc("x1")
        assert x1.notched_ends() == ("v1",)
        assert x1.underlying == "x4"
        assert "x4" in x1.isotopic
        assert volteada.tag_state == {"v1": Tag.PLAIN}
        volteada.check()

    def test_volteo_del_radio_alterna_la_puncion(self, digono):
        tt = tagged_flip(TaggedTriangulation.from_triangulation(digono), "x1")
        otra = tagged_flip(tt, "x4")
        assert otra.tag_state == {"v1": Tag.NOTCHED}
        assert otra.arc("x1").notched_ends() == ("v1",)
        assert otra.arc("x4").notched_ends() == ("v1",)
        otra.check()

    @pytest.mark.parametrize("arista", ["x1", "x4"])
    def test_involucion_en_el_digono(self, digono, arista):
        tt = TaggedTriangulation.from_triangulation(digono)
        assert tagged_flip(tagged_flip(tt, arista), arista) == tt

    def test_involucion_tras_autoplegado(self, digono):
        tt = tagged_flip(TaggedTriangulation.from_triangulation(digono), "x1")
        for arista in ("x1", "x4"):
            assert tagged_flip(tagged_flip(tt, arista), arista) == tt

    def test_involucion_en_el_disco(self):
        _, t = disk(6)
        tt = TaggedTriangulation.from_triangulation(t)
        for arista in t.interior_edges:
            assert tagged_flip(tagged_flip(tt, arista), arista) == tt

    def test_borde_congelado(self, digono):
        with pytest.raises(FrozenEdge):
            tagged_flip(TaggedTriangulation.from_triangulation(digono), "x2")


class TestDeclaraciones:
    def test_declaracion_coherente(self, digono):
        tt = tagged_flip(TaggedTriangulation.from_triangulation(digono), "x1")
        fijada = tags_from_declarations(tt, {"x1": ((None, Tag.PLAIN), ("v1", Tag.NOTCHED))})
        assert fijada.tag_state == {"v1": Tag.PLAIN}

    def test_declaracion_contradictoria(self, digono):
        tt = tagged_flip(TaggedTriangulation.from_triangulation(digono), "x1")
        with pytest.raises(IncompatibleTags):
            tags_from_declarations(tt, {
                "x1": ((None, Tag.PLAIN), ("v1", Tag.NOTCHED)),
                "x4": ((None, Tag.PLAIN), ("v1", Tag.NOTCHED)),
            })

    def test_muesca_declarada_en_el_borde(self, digono):
        tt = TaggedTriangulation.from_triangulation(digono)
        with pytest.raises(IncompatibleTags):
            tags_from_declarations(tt, {"x1": ((None, Tag.NOTCHED), ("v1", Tag.PLAIN))})
