import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from graphprod import io
from graphprod.errors import ParseError, PreconditionViolation, UnknownVertex
from graphprod.graph import (
    Graph,
    blocking_path,
    classify_vertices,
    complement,
    complement_bfs,
    complete_graph,
    cycle_graph,
    edgeless_graph,
    induced_subgraph,
    is_coconnected,
    path_graph,
    square_plus_diagonal,
    verify_blocking_path,
    with_monoids,
    BlockingPath,
)
from graphprod.monoids import VertexMonoidSpec
from graphprod.oracles import union_find_complement_components

from helpers import atlas_up_to


@st.composite
def graphs(draw, min_vertices=1, max_vertices=7):
    n = draw(st.integers(min_vertices, max_vertices))
    vs = [f"v{i}" for i in range(1, n + 1)]
    pairs = [(a, b) for i, a in enumerate(vs) for b in vs[i + 1:]]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.build(vs, [p for p, k in zip(pairs, keep) if k])


def test_build_normalises():
    g = Graph.build(["b", "a"], [("b", "a"), ("a", "b")])
    assert g.vertices == ("a", "b")
    assert len(g.edges) == 1
    assert g.monoid("a") == VertexMonoidSpec.nat()


def test_build_rejects_loops_and_missing_monoids():
    with pytest.raises(PreconditionViolation):
        Graph.build(["a"], [("a", "a")])
    with pytest.raises(PreconditionViolation):
        Graph.build(["a", "b"], [], {"a": "N"})
    with pytest.raises(UnknownVertex):
        Graph(("a",), frozenset({frozenset(("a", "z"))}), (VertexMonoidSpec.nat(),))


def test_builtins_decompose_as_expected():
    p4 = io.builtin_graph("P4")
    assert is_coconnected(p4)
    c4 = io.builtin_graph("C4")
    assert [sorted(c) for c in c4.decomposition.components] == [["v1", "v3"], ["v2", "v4"]]
    k3 = io.builtin_graph("K3")
    assert k3.decomposition.universal_vertices == frozenset(k3.vertices)
    assert k3.decomposition.i2_indices == ()
    g5 = io.builtin_graph("G5")
    assert [sorted(c) for c in g5.decomposition.components] == [["v1"], ["v2", "v4"], ["v3"]]
    assert g5 == square_plus_diagonal()
    p3 = io.builtin_graph("P3")
    assert p3.decomposition.universal_vertices == frozenset({"v2"})


def test_component_of():
    c4 = io.builtin_graph("C4")
    assert c4.decomposition.component_of("v4") == 1
    with pytest.raises(UnknownVertex):
        c4.decomposition.component_of("nope")


def test_families():
    assert len(path_graph(5).edges) == 4
    assert len(cycle_graph(5).edges) == 5
    assert len(complete_graph(4).edges) == 6
    assert not edgeless_graph(3).edges
    assert classify_vertices(path_graph(3)) == (frozenset({"v2"}), frozenset())
    assert classify_vertices(edgeless_graph(2))[1] == frozenset({"v1", "v2"})


def test_with_monoids_keeps_edges():
    g = with_monoids(io.builtin_graph("P4"), "F2")
    assert g.edges == io.builtin_graph("P4").edges
    assert not g.is_raam
    assert io.builtin_graph("P4").is_raam


def test_induced_subgraph():
    sub = induced_subgraph(io.builtin_graph("P4"), ["v2", "v3", "v4"])
    assert sub.vertices == ("v2", "v3", "v4")
    assert len(sub.edges) == 2
    with pytest.raises(UnknownVertex):
        induced_subgraph(sub, ["v9"])


@pytest.mark.parametrize("g", atlas_up_to(5), ids=lambda g: repr(g))
def test_decomposition_matches_union_find(g):
    ours = sorted(sorted(c) for c in g.decomposition.components)
    theirs = sorted(sorted(c) for c in union_find_complement_components(g))
    assert ours == theirs


@given(graphs())
def test_complement_is_an_involution(g):
    assert complement(complement(g)) == g
    assert len(g.edges) + len(complement(g).edges) == len(g) * (len(g) - 1) // 2


@given(graphs())
def test_components_partition_and_separate(g):
    d = g.decomposition
    assert sorted(v for c in d.components for v in c) == list(g.vertices)
    # vertices in different components are always adjacent
    for i, a in enumerate(d.components):
        for b in d.components[i + 1:]:
            assert all(g.adjacent(x, y) for x in a for y in b)
    assert d.universal_vertices == classify_vertices(g)[0] or len(g) == 1


@given(graphs(min_vertices=2), st.data())
def test_blocking_paths_verify(g, data):
    if not is_coconnected(g):
        with pytest.raises(PreconditionViolation):
            blocking_path(g, [g.vertices[0]])
        return
    c = data.draw(st.sets(st.sampled_from(g.vertices), min_size=1, max_size=len(g) - 1))
    target = data.draw(st.none() | st.sampled_from(g.vertices))
    bp = blocking_path(g, c, target)
    assert verify_blocking_path(g, bp)
    if target is not None:
        assert bp.path[-1] == target


def test_blocking_path_rejections():
    p4 = io.builtin_graph("P4")
    with pytest.raises(PreconditionViolation):
        blocking_path(p4, [])
    with pytest.raises(PreconditionViolation):
        blocking_path(p4, p4.vertices)
    with pytest.raises(UnknownVertex):
        blocking_path(p4, ["v1"], "zz")
    assert not verify_blocking_path(p4, BlockingPath(("v1", "v2"), frozenset({"v3"})))
    assert not verify_blocking_path(p4, BlockingPath(("v3",), frozenset({"v3"})))


def test_complement_bfs_is_shortest():
    p4 = io.builtin_graph("P4")
    assert complement_bfs(p4, "v2", lambda w: w == "v2") == ["v2"]
    assert complement_bfs(p4, "v2", lambda w: w == "v1") == ["v2", "v4", "v1"]


def test_graph_file_round_trip(tmp_path):
    for name in io.BUILTIN_GRAPHS:
        g = io.builtin_graph(name)
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps(io.graph_to_dict(g)))
        assert io.load_graph(p) == g


@pytest.mark.parametrize(
    "text",
    [
        "{",
        "[]",
        '{"vertices": [{"id": "a"}, {"id": "a"}]}',
        '{"vertices": ["a", "b"], "edges": [["a", "c"]]}',
        '{"vertices": ["a", "b"], "edges": [["a", "b"], ["b", "a"]]}',
        '{"vertices": ["a"], "edges": [["a", "a"]]}',
        '{"vertices": [{"id": "a", "monoid": "Q"}]}',
    ],
)
def test_malformed_graph_files(text):
    with pytest.raises(ParseError):
        io.loads_graph(text)
