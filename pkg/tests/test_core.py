from __future__ import annotations

import itertools
import random

import networkx as nx
import pytest

from digitop.core import (
    DigitalImage,
    Graph6Error,
    ParameterError,
    VertexMap,
    canonical_form,
    closed_neighborhood,
    complete_image,
    compose,
    constant_map,
    continuous_maps,
    cycle_image,
    identity_map,
    induced_subimage,
    interval_image,
    is_continuous,
    is_isomorphic,
    load_image,
    parse_adjacency_list,
    parse_graph6,
    product_image,
    relabel,
    write_adjacency_list,
    write_graph6,
)
from digitop.cycles import rotation_map
from digitop.verify import all_graphs, random_connected_image, random_continuous_map


def test_image_validation():
    with pytest.raises(ParameterError):
        DigitalImage(0, ())
    with pytest.raises(ParameterError):
        DigitalImage(2, ((1,), ()))  # asymmetric
    with pytest.raises(ParameterError):
        DigitalImage(1, ((0,),))  # loop
    with pytest.raises(ParameterError):
        DigitalImage.from_edges(2, [(0, 2)])


def test_continuity_examples():
    C4 = cycle_image(4)
    assert is_continuous(identity_map(C4))
    C5 = cycle_image(5)
    assert is_continuous(constant_map(C5, C5, 0))
    I = interval_image(0, 2)
    assert not is_continuous(VertexMap(I, I, (0, 2, 2)))


def test_vertex_map_rejects_bad_values():
    I = interval_image(0, 2)
    with pytest.raises(ParameterError):
        VertexMap(I, I, (0, 1))
    with pytest.raises(ParameterError):
        VertexMap(I, I, (0, 1, 3))


def test_product_examples():
    I = interval_image(0, 1)
    assert is_isomorphic(product_image([I, I], 1), cycle_image(4))
    assert is_isomorphic(product_image([I, I], 2), complete_image(4))
    P = interval_image(0, 0)
    prod = product_image([P, P], 2)
    assert prod.n == 1 and prod.edges == ()
    with pytest.raises(ParameterError):
        product_image([I, I], 3)
    with pytest.raises(ParameterError):
        product_image([I, I], 0)


def _np_adjacent(factors, u, a, b):
    if a == b:
        return False
    diff = 0
    for F, x, y in zip(factors, a, b):
        if x == y:
            continue
        if not F.adjacent(x, y):
            return False
        diff += 1
    return diff <= u


def test_product_matches_edge_rule():
    rng = random.Random(5)
    pool = [interval_image(0, 0), interval_image(0, 1), interval_image(0, 2), cycle_image(3)]
    for _ in range(40):
        factors = [rng.choice(pool) for _ in range(rng.randint(1, 4))]
        for u in range(1, len(factors) + 1):
            P = product_image(factors, u)
            pts = list(itertools.product(*[range(F.n) for F in factors]))
            assert P.n == len(pts)
            for i, a in enumerate(pts):
                for j, b in enumerate(pts):
                    assert P.adjacent(i, j) == _np_adjacent(factors, u, a, b)


def test_np1_edges_are_np2_edges():
    for factors in ([cycle_image(4), interval_image(0, 2)],
                    [interval_image(0, 1)] * 3,
                    [complete_image(3), interval_image(0, 1)]):
        P1, P2 = product_image(factors, 1), product_image(factors, 2)
        assert set(P1.edges) <= set(P2.edges)


def test_full_u_on_two_point_factors_is_complete():
    I = interval_image(0, 1)
    for k in (1, 2, 3):
        P = product_image([I] * k, k)
        assert is_isomorphic(P, complete_image(2 ** k))


def test_interval_and_cycle():
    assert interval_image(0, 0).edges == ()
    assert interval_image(0, 1).edges == ((0, 1),)
    I = interval_image(0, 4)
    assert len(I.edges) == 4 and not I.adjacent(0, 2)
    with pytest.raises(ParameterError):
        interval_image(2, 1)
    C4 = cycle_image(4)
    assert all(len(C4.adj[x]) == 2 for x in range(4)) and C4.adjacent(0, 3)
    assert is_isomorphic(cycle_image(3), complete_image(3))
    assert not cycle_image(6).adjacent(0, 3)
    assert C4.label(2) == "c_2"
    with pytest.raises(ParameterError):
        cycle_image(2)


def test_closed_neighborhood():
    assert closed_neighborhood(cycle_image(4), 0) == {3, 0, 1}
    assert closed_neighborhood(interval_image(0, 0), 0) == {0}
    assert all(closed_neighborhood(complete_image(4), x) == {0, 1, 2, 3} for x in range(4))


def test_compose():
    C5 = cycle_image(5)
    f = rotation_map(5, 3)
    ident = identity_map(C5)
    assert compose(ident, f) == f and compose(f, ident) == f
    assert compose(rotation_map(5, 1), rotation_map(5, 1)) == rotation_map(5, 2)
    with pytest.raises(ParameterError):
        compose(identity_map(cycle_image(4)), f)


def test_compose_preserves_continuity():
    rng = random.Random(11)
    for _ in range(200):
        X = random_connected_image(rng.randint(1, 5), rng)
        Y = random_connected_image(rng.randint(1, 5), rng)
        Z = random_connected_image(rng.randint(1, 5), rng)
        f = random_continuous_map(X, Y, rng)
        g = random_continuous_map(Y, Z, rng)
        assert is_continuous(compose(g, f))


def test_continuous_maps_brute_force():
    for X in all_graphs(3):
        for Y in all_graphs(3):
            brute = [v for v in itertools.product(range(Y.n), repeat=X.n)
                     if is_continuous(VertexMap(X, Y, v))]
            assert [f.values for f in continuous_maps(X, Y)] == brute


def test_canonical_form_examples():
    C4 = cycle_image(4)
    assert canonical_form(C4) == canonical_form(relabel(C4, [2, 0, 3, 1]))
    assert canonical_form(C4) != canonical_form(interval_image(0, 3))
    assert canonical_form(cycle_image(3)) == canonical_form(complete_image(3))


@pytest.mark.parametrize("n", range(1, 7))
def test_canonical_form_relabeling_invariance(n):
    rng = random.Random(n)
    graphs = all_graphs(n) if n <= 5 else [random_connected_image(6, rng) for _ in range(40)]
    for X in graphs:
        key = canonical_form(X)
        for _ in range(20):
            perm = list(range(n))
            rng.shuffle(perm)
            assert canonical_form(relabel(X, perm)) == key


def test_canonical_form_separates_classes():
    # networkx isomorphism as an independent oracle
    for n in (4, 5):
        graphs = all_graphs(n)
        nxg = []
        for X in graphs:
            G = nx.Graph()
            G.add_nodes_from(range(n))
            G.add_edges_from(X.edges)
            nxg.append(G)
        for i, j in itertools.combinations(range(len(graphs)), 2):
            assert not nx.is_isomorphic(nxg[i], nxg[j])
        assert len(graphs) == {4: 11, 5: 34}[n]


def _nx_graph6(X):
    G = nx.Graph()
    G.add_nodes_from(range(X.n))
    G.add_edges_from(X.edges)
    return nx.to_graph6_bytes(G, header=False).decode().strip()


def test_graph6_examples_match_reference_encoder():
    point = interval_image(0, 0)
    assert write_graph6(point) == "@" == _nx_graph6(point)
    K2 = complete_image(2)
    assert write_graph6(K2) == "A_" == _nx_graph6(K2)
    assert parse_graph6("@") == point
    assert parse_graph6("A_") == K2
    C6 = cycle_image(6)
    assert parse_graph6(write_graph6(C6)).adj == C6.adj


def test_graph6_against_networkx_random():
    rng = random.Random(3)
    for _ in range(300):
        n = rng.choice([1, 2, 3, 7, 12, 40, 63, 64, 70])
        edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.3]
        X = DigitalImage.from_edges(n, edges)
        s = write_graph6(X)
        assert s == _nx_graph6(X)
        G = nx.from_graph6_bytes(s.encode())
        assert sorted(tuple(sorted(e)) for e in G.edges) == list(X.edges)
        assert parse_graph6(s) == X


def test_graph6_header_accepted():
    assert parse_graph6(">>graph6<<A_") == complete_image(2)


@pytest.mark.parametrize("line,offset", [
    ("", 0),
    ("A", 1),          # missing data byte
    ("A_?", 2),        # extra byte
    ("A`", 1),         # padding bit set
    ("A\x7f", 1),      # byte out of range
    ("B ", 0),         # header byte fine, data byte below 63
])
def test_graph6_errors_carry_offsets(line, offset):
    with pytest.raises(Graph6Error) as exc:
        parse_graph6(line)
    assert exc.value.offset in (offset, offset + 1)
    assert "offset" in str(exc.value)


def test_adjacency_list_round_trip(tmp_path):
    text = "# square\n4\n0 1\n1 2\n2 3  # closing edge next\n3 0\n"
    X = parse_adjacency_list(text)
    assert X == cycle_image(4) or is_isomorphic(X, cycle_image(4))
    assert parse_adjacency_list(write_adjacency_list(X)) == X
    p = tmp_path / "sq.txt"
    p.write_text(text)
    assert load_image(p) == X
    q = tmp_path / "k2.g6"
    q.write_text("A_\n")
    assert load_image(q) == complete_image(2)


@pytest.mark.parametrize("text,line", [
    ("3\n0 1\n1 5\n", 3),
    ("3\n0 1 2\n", 2),
    ("x\n", 1),
    ("2\n0 0\n", 2),
])
def test_adjacency_list_errors_name_line(text, line):
    with pytest.raises(ParameterError, match=f"line {line}"):
        parse_adjacency_list(text)


def test_induced_subimage_translation():
    C5 = cycle_image(5)
    Y, tr = induced_subimage(C5, [0, 1, 2])
    assert tr == {0: 0, 1: 1, 2: 2}
    assert Y.edges == ((0, 1), (1, 2))


def test_components():
    X = DigitalImage.from_edges(5, [(0, 1), (3, 4)])
    assert X.components() == [[0, 1], [2], [3, 4]]
    assert not X.is_connected()
