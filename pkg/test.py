#!/usr/bin/env python3
"""
Test script for koszul-lab components
"""
import contextlib
import io
import json
import os
import random
import sys
import tempfile
from functools import lru_cache

import config
from cohomology import cochain_dims, cohomology_dims, interval_pool, report_block
from enumeration import GraphEnumerator, canonical_form, canonical_key, count_graphs, enumerate_graphs, labeled_graphs
from koszul import (KoszulEngine, check_pinch_consistency, incremental_test, is_distributive, is_koszul,
                    lattice_closure, median_test, run_components)
from layered_graph import LayeredGraph, StructuralMode, VertexId, load_graphs, parse_graph
from linalg import DecompositionWitness, Subspace, equals, intersect, quotient_dim, span, subspace_sum, unit_vector
from main import main
from notifier import TelegramNotifier
from quadratic import (QuadraticData, build_quadratic, hilbert_B, hilbert_B_dual, hilbert_product,
                       numerically_koszul, series_inverse, series_product)
from search import SKIPPED, GraphSearch, analyse_graph, search_profiles
from storage import ResultStore
from utils import InputError, LimitError, format_profile, format_series, parse_profile, read_jsonl

UNIQUE_MAX = StructuralMode.UNIQUE_MAX
TOP_MAXIMAL = StructuralMode.TOP_MAXIMAL
UNIQUE_MIN_ONLY = StructuralMode.UNIQUE_MIN_ONLY


# Fixtures

def diamond() -> LayeredGraph:
    """D: c over a, b; a, b over *"""
    return LayeredGraph.from_edges([1, 2, 1], [
        ((1, 0), (0, 0)), ((1, 1), (0, 0)),
        ((2, 0), (1, 0)), ((2, 0), (1, 1)),
    ])


def chain(height: int) -> LayeredGraph:
    return LayeredGraph.from_edges([1] * (height + 1), [((i + 1, 0), (i, 0)) for i in range(height)])


def graph_x() -> LayeredGraph:
    """T over c1, c2; c1 over a only; c2 over b only"""
    return LayeredGraph.from_edges([1, 2, 2, 1], [
        ((1, 0), (0, 0)), ((1, 1), (0, 0)),
        ((2, 0), (1, 0)), ((2, 1), (1, 1)),
        ((3, 0), (2, 0)), ((3, 0), (2, 1)),
    ])


def double_diamond() -> LayeredGraph:
    """[1,2,1,2,1] with complete bipartite levels"""
    return LayeredGraph.glue(diamond(), diamond())


def random_graph(rng: random.Random, max_layer: int = 2, max_height: int = 3) -> LayeredGraph:
    """A random graph valid under UniqueMinOnly"""
    profile = [1] + [rng.randint(1, max_layer) for _ in range(rng.randint(1, max_height))]
    edges = []
    for level in range(1, len(profile)):
        for i in range(profile[level]):
            heads = [j for j in range(profile[level - 1]) if rng.random() < 0.5]
            if not heads:
                heads = [rng.randrange(profile[level - 1])]
            edges.extend(((level, i), (level - 1, j)) for j in heads)
    return LayeredGraph.from_edges(profile, edges)


def random_subspace(rng: random.Random, ambient_dim: int) -> Subspace:
    rows = [[rng.randint(-2, 2) for _ in range(ambient_dim)] for _ in range(rng.randint(0, ambient_dim))]
    return Subspace.span(ambient_dim, rows)


def brute_force_series(n: int, relations: Subspace, bound: int) -> list:
    """dim of T_d(V) / Σ V^i ⊗ R ⊗ V^(d-2-i), degree by degree"""
    series = []
    for d in range(bound + 1):
        if d < 2:
            series.append(n ** d)
            continue
        total = Subspace.zero(n ** d)
        for i in range(d - 1):
            total = total + relations.embed(n ** i, n ** (d - 2 - i))
        series.append(n ** d - total.dim)
    return series


@lru_cache(maxsize=None)
def searched(max_vertices: int, mode_name: str):
    return GraphSearch(StructuralMode.from_name(mode_name)).run(max_vertices)


def graph_h() -> LayeredGraph:
    report = searched(9, 'unique-max')
    assert len(report.non_koszul) == 1
    return parse_graph(json.dumps(report.non_koszul[0]["graph"]))


def run_cli(argv):
    out = io.StringIO()
    with contextlib.redirect_stdout(out):
        code = main(["--log-file", "", *argv])
    return code, out.getvalue()


# core graph

def test_validation():
    """Test structural validation"""
    print("🧪 Testing Validation...")

    assert diamond().validate(UNIQUE_MAX) == []
    broken = LayeredGraph.from_edges([1, 2, 1], [((1, 1), (0, 0)), ((2, 0), (1, 0)), ((2, 0), (1, 1))])
    for mode in StructuralMode:
        violations = broken.validate(mode)
        assert any("level-1 vertex L1_0 with no downward edge" in v for v in violations)

    two_tops = LayeredGraph.from_edges([1, 2], [((1, 0), (0, 0)), ((1, 1), (0, 0))])
    assert two_tops.validate(UNIQUE_MIN_ONLY) == []
    assert two_tops.validate(TOP_MAXIMAL) == []
    assert two_tops.validate(UNIQUE_MAX)

    # a vertex below the top with nothing above it
    stray = LayeredGraph.from_edges([1, 2, 1], [((1, 0), (0, 0)), ((1, 1), (0, 0)), ((2, 0), (1, 0))])
    assert stray.validate(UNIQUE_MIN_ONLY) == []
    assert stray.validate(TOP_MAXIMAL)

    # violations do not depend on edge insertion order
    rng = random.Random(17)
    for _ in range(40):
        profile = [rng.randint(1, 2) for _ in range(rng.randint(2, 4))]
        vertices = [(level, i) for level, size in enumerate(profile) for i in range(size)]
        edges = [(t, h) for t in vertices for h in vertices if t[0] > h[0] and rng.random() < 0.3]
        shuffled = edges[:]
        rng.shuffle(shuffled)
        g = LayeredGraph.from_edges(profile, edges)
        h = LayeredGraph.from_edges(profile, shuffled)
        for mode in StructuralMode:
            assert sorted(g.validate(mode)) == sorted(h.validate(mode))
            assert g.validate(mode) == g.validate(mode)

    print("✅ Validation test passed")


def test_covers_and_order():
    """Test lower covers, comparable pairs and uniformity"""
    print("🧪 Testing Covers and Order...")

    d = diamond()
    assert d.lower_covers((2, 0)) == {VertexId(1, 0), VertexId(1, 1)}
    assert d.lower_covers((1, 0)) == {VertexId(0, 0)}
    assert chain(2).lower_covers((2, 0)) == {VertexId(1, 0)}
    assert d.upper_covers((1, 1)) == {VertexId(2, 0)}
    try:
        d.lower_covers((5, 0))
        assert False, "unknown vertex accepted"
    except InputError:
        pass

    assert chain(2).comparable_pairs() == {((2, 0), (1, 0)), ((2, 0), (0, 0)), ((1, 0), (0, 0))}
    assert d.comparable_pairs() == {((2, 0), (1, 0)), ((2, 0), (1, 1)), ((2, 0), (0, 0)),
                                    ((1, 0), (0, 0)), ((1, 1), (0, 0))}
    assert len(graph_x().comparable_pairs()) == 11

    assert d.is_uniform()
    assert not graph_x().is_uniform()
    assert chain(3).is_uniform()

    rng = random.Random(23)
    for _ in range(40):
        g = random_graph(rng, max_layer=3)
        permutations = []
        for size in g.profile:
            perm = list(range(size))
            rng.shuffle(perm)
            permutations.append(perm)
        assert g.relabel(permutations).is_uniform() == g.is_uniform()

        if g.height < 2:
            continue
        # below a level-2 vertex every pair of lower covers meets at the minimum
        for v in g.vertices(2):
            covers = sorted(g.lower_covers(v))
            for i, w in enumerate(covers):
                for w2 in covers[i + 1:]:
                    assert g.lower_covers(w) & g.lower_covers(w2) == {VertexId(0, 0)}
        assert g.induced([v for v in g.vertices() if v.level <= 2]).is_uniform()

    print("✅ Covers and order test passed")


def test_pinch_split_interval():
    """Test pinch points, splitting, gluing and intervals"""
    print("🧪 Testing Pinch, Split and Interval...")

    dd = double_diamond()
    assert dd.profile == (1, 2, 1, 2, 1)
    assert dd.pinch_points() == [2]
    assert chain(2).pinch_points() == [1]
    assert LayeredGraph.from_edges([1, 2, 2, 2, 1], []).pinch_points() == []

    lower, upper = dd.split_at(2)
    assert lower == diamond() and upper == diamond()
    assert LayeredGraph.glue(lower, upper) == dd

    a, b = chain(2).split_at(1)
    assert a == chain(1) and b == chain(1)
    try:
        dd.split_at(1)
        assert False, "non-pinch level accepted"
    except InputError:
        pass

    assert chain(4).interval((4, 0), 4) == chain(4)
    window = diamond().interval((2, 0), 1)
    assert window.profile == (2, 1)
    try:
        diamond().interval((1, 0), 2)
        assert False, "k above the level of a accepted"
    except InputError:
        pass

    print("✅ Pinch, split and interval test passed")


def test_graph_codecs():
    """Test JSON, DOT and file loading"""
    print("🧪 Testing Graph Codecs...")

    d = diamond()
    assert d.to_json() == '{"layers":[1,2,1],"edges":[[[1,0],[0,0]],[[1,1],[0,0]],[[2,0],[1,0]],[[2,0],[1,1]]]}'
    assert parse_graph(d.to_json()) == d
    assert "L2_0 -> L1_1;" in d.to_dot()

    swapped = d.relabel([[0], [1, 0], [0]])
    assert swapped == d

    for bad, fragment in [
        ('{"layers":[1,2]}', "'layers' and 'edges'"),
        ('{"layers":[1,2],"edges":[[[1,0],[0,0]],[[2,0],[1,0]]]}', "unknown vertex"),
        ('{"layers":[1,1,1],"edges":[[[2,0],[0,0]]]}', "drop exactly one level"),
        ('{"layers":[1,1],"edges":[[[1,0],[0,0]],[[1,0],[0,0]]]}', "duplicate"),
        ('{"layers":', "invalid JSON"),
        ('{"layers":[1,2],"edges":null}', "'edges' must be a list"),
        ('{"layers":[1,2],"edges":7}', "'edges' must be a list"),
        ('{"layers":[true,2],"edges":[]}', "positive integers"),
    ]:
        try:
            parse_graph(bad, "case")
            assert False, f"accepted {bad}"
        except InputError as e:
            assert fragment in str(e), str(e)

    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "graphs.jsonl")
        with open(path, "w") as f:
            f.write(d.to_json() + "\n\n" + chain(2).to_json() + "\n")
        assert load_graphs(path) == [d, chain(2)]
        with open(path, "w") as f:
            f.write(d.to_json() + "\n{oops\n")
        try:
            load_graphs(path)
            assert False, "bad line accepted"
        except InputError as e:
            assert ":2:" in str(e)

    print("✅ Graph codecs test passed")


# enumeration

def test_canonical_key():
    """Test canonical keys"""
    print("🧪 Testing Canonical Key...")

    left = LayeredGraph.from_edges([1, 2, 1], [((1, 0), (0, 0)), ((1, 1), (0, 0)), ((2, 0), (1, 0))])
    right = LayeredGraph.from_edges([1, 2, 1], [((1, 0), (0, 0)), ((1, 1), (0, 0)), ((2, 0), (1, 1))])
    assert canonical_key(left) == canonical_key(right)
    assert canonical_key(left) != canonical_key(diamond())
    assert canonical_key(chain(2)) == bytes([3, 1, 1, 1, 1, 1])
    assert canonical_form(left) == canonical_form(right)

    rng = random.Random(7)
    for _ in range(30):
        g = random_graph(rng, max_layer=3)
        permutations = []
        for size in g.profile:
            perm = list(range(size))
            rng.shuffle(perm)
            permutations.append(perm)
        assert canonical_key(g.relabel(permutations)) == canonical_key(g)
        assert canonical_key(canonical_form(g)) == canonical_key(g)

    print("✅ Canonical key test passed")


def test_enumeration_counts():
    """Test isomorphism class counts"""
    print("🧪 Testing Enumeration Counts...")

    assert count_graphs([1, 2, 2, 2, 1], UNIQUE_MAX) == 10
    assert count_graphs([1, 2, 2, 2, 1], UNIQUE_MAX, uniform_only=True) == 5
    assert count_graphs([1, 2, 2, 2, 2], TOP_MAXIMAL) == 35
    assert count_graphs([1, 2, 2, 2, 2], TOP_MAXIMAL, uniform_only=True) == 21
    assert count_graphs([1, 3, 2, 2, 1], UNIQUE_MAX, uniform_only=True) == 10
    assert count_graphs([1, 2, 2, 3, 1], UNIQUE_MAX, uniform_only=True) == 10
    assert count_graphs([1, 2, 3, 2, 1], UNIQUE_MAX, uniform_only=True) == 23
    for mode in StructuralMode:
        assert count_graphs([1, 1, 1], mode) == 1

    expected = {(1, 2, 2, 2, 1): 33, (1, 3, 2, 2, 1): 83, (1, 2, 3, 2, 1): 170,
                (1, 2, 2, 3, 1): 93, (1, 2, 2, 2, 2): 65}
    for profile, count in expected.items():
        assert count_graphs(profile, UNIQUE_MIN_ONLY, uniform_only=True) == count, format_profile(profile)

    for profile in [(1, 2, 1), (1, 2, 2, 1), (1, 3, 2, 1), (1, 2, 1, 2, 1), (1, 2, 2, 2, 1)]:
        for uniform_only in (False, True):
            counts = [count_graphs(profile, mode, uniform_only=uniform_only)
                      for mode in (UNIQUE_MAX, TOP_MAXIMAL, UNIQUE_MIN_ONLY)]
            assert counts == sorted(counts), (format_profile(profile), counts)

    print("✅ Enumeration counts test passed")


def test_enumeration_properties():
    """Test ordering, validity and completeness of the enumerator"""
    print("🧪 Testing Enumeration Properties...")

    for profile in [(1, 2, 2), (1, 2, 1, 2), (1, 3, 2)]:
        for mode in StructuralMode:
            graphs = list(enumerate_graphs(profile, mode))
            keys = [canonical_key(g) for g in graphs]
            assert keys == sorted(keys) and len(set(keys)) == len(keys)
            assert all(g.is_valid(mode) for g in graphs)
            assert {canonical_key(g) for g in labeled_graphs(profile, mode)} == set(keys)

    enumerator = GraphEnumerator(UNIQUE_MAX, uniform_only=True)
    graphs = list(enumerator.enumerate([1, 2, 2, 2, 1]))
    assert enumerator.stats['classes'] == 10 and enumerator.stats['uniform'] == 5
    assert all(g.is_uniform() for g in graphs)

    for bad in ([2, 2], [1, 0, 1], [1, config.MAX_LAYER_SIZE + 1, 1]):
        try:
            count_graphs(bad, UNIQUE_MAX)
            assert False, f"accepted {bad}"
        except InputError:
            pass

    print("✅ Enumeration properties test passed")


# exact linear algebra

def test_subspaces():
    """Test exact subspace arithmetic"""
    print("🧪 Testing Subspaces...")

    e = [unit_vector(3, i) for i in range(3)]
    assert intersect(span(3, [e[0], e[1]]), span(3, [e[1], e[2]])) == span(3, [e[1]])
    assert subspace_sum(span(2, [[1, 0]]), span(2, [[1, 1]])) == Subspace.full(2)
    assert span(3, [[2, 4, 0], [1, 2, 0]]).dim == 1
    assert span(3, [[1, 1, 0]]).contains([3, 3, 0])
    assert span(3, [[1, 0, 0]]).is_subspace_of(Subspace.full(3))
    assert Subspace.full(3).perp() == Subspace.zero(3)

    assert quotient_dim(9, span(9, [unit_vector(9, i) for i in range(8)])) == 1
    assert quotient_dim(4, Subspace.full(4)) == 0
    first = span(27, [unit_vector(27, i) for i in range(3)])
    second = span(27, [unit_vector(27, i) for i in range(3, 6)])
    assert quotient_dim(27, first + second) == 21

    try:
        span(2, [[1, 0]]) + span(3, [[1, 0, 0]])
        assert False, "ambient mismatch accepted"
    except InputError:
        pass

    rng = random.Random(11)
    for _ in range(40):
        n = rng.randint(1, 5)
        a, b = random_subspace(rng, n), random_subspace(rng, n)
        assert (a + b).dim + (a & b).dim == a.dim + b.dim
        assert a.perp().perp() == a

    # modular law: A ⊆ C gives (A + B) ∩ C = A + (B ∩ C)
    for _ in range(100):
        n = rng.randint(1, 5)
        c = random_subspace(rng, n)
        a = span(n, [[rng.randint(-2, 2) * x for x in row] for row in c.basis])
        b = random_subspace(rng, n)
        assert a.is_subspace_of(c)
        assert equals(intersect(subspace_sum(a, b), c), subspace_sum(a, intersect(b, c)))

    line = span(2, [[1, -1]])
    embedded = line.embed(2, 3)
    assert embedded.ambient_dim == 12 and embedded.dim == 6
    assert embedded == Subspace.span(12, [row for row in embedded.basis])

    print("✅ Subspaces test passed")


# quadratic algebra

def test_quadratic_data():
    """Test relation spaces of B(Γ) and its dual"""
    print("🧪 Testing Quadratic Data...")

    q = build_quadratic(diamond())
    assert q.total_generators == 3
    assert q.relations.dim == 9 - 1
    assert q.dual[1].dim == 1

    rng = random.Random(3)
    for _ in range(20):
        g = random_graph(rng)
        q = build_quadratic(g)
        expected = sum(len(g.lower_covers(u)) - 1 for u in g.vertices() if u.level >= 2)
        assert sum(s.dim for s in q.dual.values()) == expected
        assert q.dual_relations() == q.relations.perp()

    bad = LayeredGraph.from_edges([1, 2], [((1, 0), (0, 0))])
    try:
        build_quadratic(bad)
        assert False, "invalid graph accepted"
    except InputError:
        pass

    print("✅ Quadratic data test passed")


def test_hilbert_series():
    """Test Hilbert series of B(Γ) and B(Γ)^!"""
    print("🧪 Testing Hilbert Series...")

    assert hilbert_B(chain(2), 2) == [1, 2, 0]
    assert hilbert_B(diamond(), 2) == [1, 3, 1]
    assert hilbert_B_dual(chain(2), 5) == [1, 2, 4, 8, 16, 32]
    assert hilbert_B_dual(diamond(), 4) == [1, 3, 8, 21, 55]
    star = LayeredGraph.from_edges([1, 3, 1], [((1, i), (0, 0)) for i in range(3)] +
                                   [((2, 0), (1, i)) for i in range(3)])
    assert hilbert_B_dual(star, 2)[2] == 14

    assert numerically_koszul(diamond(), 8) == (True, None)
    assert numerically_koszul(chain(2)) == (True, None)
    assert hilbert_product(diamond(), 8) == [1] + [0] * 8

    assert series_product([1, 2], [1, -2, 4, -8], 3) == [1, 0, 0, 0]
    assert series_inverse([1, -3, 1], 4) == [1, 3, 8, 21, 55]
    assert format_series("h_B", [1, 3, 1]) == "h_B = [1, 3, 1]"

    try:
        numerically_koszul(diamond(), 3)
        assert False, "bound below 2N accepted"
    except InputError:
        pass
    try:
        hilbert_B(diamond(), config.MAX_SERIES_DEGREE + 1)
        assert False, "bound above the limit accepted"
    except LimitError:
        pass

    print("✅ Hilbert series test passed")


def test_hilbert_series_brute_force():
    """Compare both series against degreewise quotient dimensions"""
    print("🧪 Testing Hilbert Series Against Brute Force...")

    rng = random.Random(5)
    graphs = [diamond(), chain(2), graph_x()]
    while len(graphs) < 12:
        g = random_graph(rng, max_layer=2, max_height=2)
        if sum(g.profile[1:]) <= 4:
            graphs.append(g)
    for g in graphs:
        q = build_quadratic(g)
        n = q.total_generators
        assert hilbert_B(g, 3) == brute_force_series(n, q.relations, 3), g.to_json()
        assert hilbert_B_dual(g, 3, q) == brute_force_series(n, q.dual_relations(), 3), g.to_json()

    print("✅ Brute force comparison passed")


# lattice engine

def test_distributivity():
    """Test the distributivity decision"""
    print("🧪 Testing Distributivity...")

    e1, e2 = span(2, [[1, 0]]), span(2, [[0, 1]])
    assert is_distributive(2, [e1, e2, Subspace.full(2)])[0]
    ok, failure = is_distributive(2, [e1, e2, span(2, [[1, 1]])])
    assert not ok
    assert failure.identity == "median" and failure.lhs.dim == 0 and failure.rhs.dim == 2

    rng = random.Random(1)
    for _ in range(20):
        n = rng.randint(1, 5)
        pair = [random_subspace(rng, n), random_subspace(rng, n)]
        ok, witness = is_distributive(n, pair)
        assert ok and isinstance(witness, DecompositionWitness) and witness.verify(pair)
    assert is_distributive(3, [])[0]

    coordinates = [span(4, [unit_vector(4, i) for i in part]) for part in ([0, 1], [1, 2], [2, 3], [0, 3])]
    ok, witness = is_distributive(4, coordinates)
    assert ok and witness.verify(coordinates)
    assert sorted(s.dim for s in witness.summands) == [1, 1, 1, 1]

    print("✅ Distributivity test passed")


def test_median_matches_closure():
    """Median identity and incremental closure agree on random triples"""
    print("🧪 Testing Median Against Closure...")

    rng = random.Random(2024)
    disagreements = 0
    for _ in range(200):
        n = rng.randint(1, 6)
        triple = [random_subspace(rng, n) for _ in range(3)]
        median_ok, _ = median_test(triple)
        closure_ok, _, _ = incremental_test(n, triple)
        disagreements += median_ok != closure_ok
    assert disagreements == 0

    try:
        lattice_closure([span(2, [[1, 0]]), span(2, [[0, 1]]), span(2, [[1, 1]])], cap=3)
        assert False, "closure cap ignored"
    except LimitError:
        pass

    print("✅ Median agreement test passed")


def test_run_components():
    """Test run decomposition of the dual relations"""
    print("🧪 Testing Run Components...")

    g = next(iter(enumerate_graphs([1, 2, 2, 2, 1], UNIQUE_MAX, uniform_only=True)))
    components = run_components(g, build_quadratic(g))
    multi = {c.run: c.slots for c in components if c.slots >= 2}
    assert multi == {(3, 2, 1): 2, (4, 3, 2): 2, (4, 3, 2, 1): 3}

    d = diamond()
    components = run_components(d, build_quadratic(d))
    assert [(c.run, c.slots) for c in components] == [((2, 1), 1)]

    g = next(iter(enumerate_graphs([1, 2, 3, 2, 1], UNIQUE_MAX)))
    q = build_quadratic(g)
    assert q.run_ambient_dim(4, 1) == 12

    print("✅ Run components test passed")


def test_koszul_small():
    """Test Koszul verdicts on small graphs"""
    print("🧪 Testing Koszul Verdicts...")

    verdict = is_koszul(diamond())
    assert verdict.is_koszul and verdict.numeric == (True, None)
    assert verdict.to_json()["status"] == "koszul"

    for g in enumerate_graphs([1, 2, 2, 2, 1], UNIQUE_MAX, uniform_only=True):
        assert is_koszul(g).is_koszul

    try:
        is_koszul(graph_x())
        assert False, "non-uniform graph accepted"
    except InputError:
        pass

    assert check_pinch_consistency(double_diamond())
    assert check_pinch_consistency(chain(3))
    assert is_koszul(double_diamond()).shortcut
    assert not is_koszul(double_diamond(), use_pinch=False).shortcut

    # same verdict under within-layer relabeling
    rng = random.Random(29)
    checked = 0
    while checked < 15:
        g = random_graph(rng, max_layer=2, max_height=4)
        if not g.is_uniform():
            continue
        permutations = []
        for size in g.profile:
            perm = list(range(size))
            rng.shuffle(perm)
            permutations.append(perm)
        relabeled = g.relabel(permutations)
        assert is_koszul(relabeled).status == is_koszul(g).status
        assert is_koszul(relabeled).numeric == is_koszul(g).numeric
        checked += 1

    # any other basis of each R! component gives the same decision
    engine = KoszulEngine(use_pinch=False)
    for g in [graph_h()] + list(enumerate_graphs([1, 2, 2, 2, 1], UNIQUE_MAX, uniform_only=True)):
        q = build_quadratic(g)
        rebased = {}
        for j, component in q.dual.items():
            rows = [list(row) for row in component.basis]
            mixed = []
            for i, row in enumerate(rows):
                vector = [rng.choice([1, 2, -3]) * x for x in row]
                for later in rows[i + 1:]:
                    c = rng.randint(-2, 2)
                    vector = [x + c * y for x, y in zip(vector, later)]
                mixed.append(vector)
            rebased[j] = span(component.ambient_dim, mixed)
            assert rebased[j] == component
        other = QuadraticData(q.graph, q.generators, q.relations, rebased)
        assert engine.direct(g, other)[1] == engine.direct(g, q)[1]

    print("✅ Koszul verdicts test passed")


def test_pinch_exhaustive():
    """(both parts Koszul) implies (whole Koszul) on every uniform [1,2,1,2,1]-graph"""
    print("🧪 Testing Pinch Consistency...")

    engine = KoszulEngine(use_pinch=False)
    for g in enumerate_graphs([1, 2, 1, 2, 1], UNIQUE_MAX, uniform_only=True):
        assert engine.check_pinch_consistency(g)
        assert is_koszul(g).is_koszul == engine.is_koszul(g).is_koszul

    print("✅ Pinch consistency test passed")


# cohomology

def test_cochains():
    """Test order-complex cochains"""
    print("🧪 Testing Cochains...")

    dims = cochain_dims(chain(4), (4, 0), 4)
    assert dims.dims == [1, 3, 3, 1] and dims.euler == 0
    assert cohomology_dims(chain(4), (4, 0), 4) == [0, 0, 0, 0]

    dims = cochain_dims(diamond(), (2, 0), 2)
    assert dims.dims == [1, 2] and dims.euler == -1
    assert cohomology_dims(diamond(), (2, 0), 2) == [0, 1]

    # bottom level kept minus the global minimum
    assert interval_pool(chain(4), (4, 0), 3, include_window_bottom=True) == [(1, 0), (2, 0), (3, 0)]
    assert interval_pool(chain(4), (4, 0), 3) == [(2, 0), (3, 0)]

    try:
        cochain_dims(diamond(), (1, 0), 2)
        assert False, "k above the level of a accepted"
    except InputError:
        pass

    block = report_block(chain(4), (4, 0), 4)
    assert block["interval"] == {"a": [4, 0], "k": 4} and block["cochain"] == [1, 3, 3, 1]

    # larger windows never lose vertices; chains never outnumber the inner levels
    rng = random.Random(31)
    for _ in range(30):
        g = random_graph(rng, max_layer=3, max_height=4)
        for a in g.vertices(g.height):
            previous = 0
            for k in range(1, g.height + 1):
                dims = cochain_dims(g, a, k).dims
                assert dims[0] == 1
                assert len(dims) <= k
                pool_size = dims[1] if len(dims) > 1 else 0
                assert pool_size >= previous
                previous = pool_size
                assert len(cochain_dims(g, a, k, include_window_bottom=True).dims) <= k + 1

    print("✅ Cochains test passed")


# search

def test_search_profiles():
    """Test profile generation and pre-filters"""
    print("🧪 Testing Search Profiles...")

    assert search_profiles(9, UNIQUE_MAX) == [(1, 2, 2, 2, 1), (1, 2, 2, 3, 1), (1, 2, 3, 2, 1), (1, 3, 2, 2, 1)]
    assert search_profiles(9, UNIQUE_MIN_ONLY) == [(1, 2, 2, 2, 1), (1, 2, 2, 2, 2), (1, 2, 2, 3, 1),
                                                   (1, 2, 3, 2, 1), (1, 3, 2, 2, 1)]
    assert search_profiles(8, UNIQUE_MAX) == [(1, 2, 2, 2, 1)]
    assert (1, 2, 1) in search_profiles(4, UNIQUE_MAX, height_filter=False)
    assert (1, 1, 1) not in search_profiles(4, UNIQUE_MAX, height_filter=False)
    assert (1, 1, 1) in search_profiles(4, UNIQUE_MAX, height_filter=False, pinch_filter=False)

    # requested profiles that a pre-filter drops are reported, not skipped silently
    search = GraphSearch(UNIQUE_MAX)
    for profiles, max_vertices, fragment in [
        ([(1, 3, 3, 1)], 9, "--no-height-filter"),
        ([(1, 1, 1)], 5, "--no-height-filter"),
        ([(1, 2, 1, 2, 1)], 9, "--no-pinch-filter"),
        ([(1, 2, 2, 2, 2)], 9, "not admissible"),
        ([(1, 3, 3, 3, 1)], 9, "more than --max-vertices"),
    ]:
        try:
            search.run(max_vertices, profiles)
            assert False, f"accepted {profiles}"
        except InputError as e:
            assert fragment in str(e), str(e)
    report = search.run(8, [(1, 3, 3, 1)], height_filter=False)
    assert [row["profile"] for row in report.rows] == [[1, 3, 3, 1]]

    print("✅ Search profiles test passed")


def test_search_eight_vertices():
    """No non-Koszul graph has fewer than nine vertices"""
    print("🧪 Testing Eight-Vertex Search...")

    report = searched(8, 'unique-max')
    assert report.non_koszul_count == 0
    assert [(r['profile'], r['total'], r['uniform']) for r in report.rows] == [([1, 2, 2, 2, 1], 10, 5)]

    print("✅ Eight-vertex search passed")


def test_search_nine_vertices():
    """Exactly one nine-vertex non-Koszul graph, with 13 edges"""
    print("🧪 Testing Nine-Vertex Search...")

    report = searched(9, 'unique-max')
    nine = [r for r in report.rows if r['vertices'] == 9]
    assert sum(r['uniform'] for r in nine) == 43
    assert report.non_koszul_count == 1
    found = report.non_koszul[0]
    assert found['vertices'] == 9 and found['edges'] == 13
    assert found['verdict']['numeric_first_fail'] == 4
    assert found['cohomology'][0]['cochain'] == [1, 7, 13, 6]

    wide = searched(9, 'unique-min-only')
    uniform = {tuple(r['profile']): r['uniform'] for r in wide.rows}
    assert uniform == {(1, 2, 2, 2, 1): 33, (1, 3, 2, 2, 1): 83, (1, 2, 3, 2, 1): 170,
                       (1, 2, 2, 3, 1): 93, (1, 2, 2, 2, 2): 65}
    assert wide.non_koszul_count == 1
    assert wide.non_koszul[0]['key'] == found['key']

    for r in report.rows + wide.rows:
        assert r['koszul'] + r['non_koszul'] == r['uniform']

    print("✅ Nine-vertex search passed")


def test_graph_h():
    """Numerical failure and interval cohomology of the minimal non-Koszul graph"""
    print("🧪 Testing Graph H...")

    h = graph_h()
    assert h.profile[-1] == 1 and h.height == 4 and h.edge_count == 13
    top = h.vertices(4)[0]
    assert h.interval(top, 4).vertex_count == 9

    verdict = is_koszul(h)
    assert not verdict.is_koszul
    assert verdict.numeric == (False, 4)
    assert not is_koszul(h, use_pinch=False).is_koszul

    dims = cochain_dims(h, top, 4)
    if dims.dims != [1, 7, 13, 6]:
        other = cochain_dims(h, top, 4, include_window_bottom=True)
        assert False, f"cochain dims {dims.dims} (open window), {other.dims} (closed window)"
    assert dims.euler == 1
    assert sum(d if i % 2 == 0 else -d for i, d in enumerate(cohomology_dims(h, top, 4))) == 1

    print("✅ Graph H test passed")


def test_numeric_implies_structural():
    """A numerical failure always comes with a structural one"""
    print("🧪 Testing Numeric/Structural Consistency...")

    for report in (searched(9, 'unique-max'), searched(9, 'unique-min-only')):
        failures = {f['key'] for f in report.non_koszul}
        assert len(failures) == report.non_koszul_count
    for profile in search_profiles(9, UNIQUE_MAX):
        for g in enumerate_graphs(profile, UNIQUE_MAX, uniform_only=True):
            verdict = is_koszul(g)
            if not verdict.numeric[0]:
                assert not verdict.is_koszul

    print("✅ Consistency test passed")


def test_search_determinism_and_storage():
    """Reports do not depend on worker count; catalogs make searches resumable"""
    print("🧪 Testing Search Determinism and Storage...")

    with tempfile.TemporaryDirectory() as tmp:
        first = GraphSearch(UNIQUE_MAX, jobs=1, store=ResultStore(os.path.join(tmp, "a"))).run(9)
        second = GraphSearch(UNIQUE_MAX, jobs=3, store=ResultStore(os.path.join(tmp, "b"))).run(9)
        assert json.dumps(first.results(), sort_keys=True) == json.dumps(second.results(), sort_keys=True)

        store = ResultStore(os.path.join(tmp, "a"))
        assert store.has_catalog((1, 2, 2, 2, 1), 'unique-max')
        records = list(read_jsonl(store.catalog_path((1, 2, 2, 2, 1), 'unique-max')))
        assert len(records) == 10 and sum(r['uniform'] for r in records) == 5
        assert [r['key'] for r in records] == sorted(r['key'] for r in records)

        resumed = GraphSearch(UNIQUE_MAX, store=store).run(9)
        assert resumed.results() == first.results()

        saved = store.load_report()
        assert saved['rows'] == first.rows and 'environment' in saved
        assert len(store.list_nonkoszul()) == 1
        with open(os.path.join(tmp, "a", config.SUMMARY_FILE)) as f:
            lines = f.read().splitlines()
        assert lines[0].startswith("profile,mode,vertices,total,uniform")
        assert len(lines) == 1 + len(first.rows)

    print("✅ Search determinism and storage test passed")


# reports and command line

def test_analyse_graph():
    """Test the single-graph report"""
    print("🧪 Testing Graph Analysis...")

    report = analyse_graph(diamond())
    assert report["uniform"] and report["koszul"]["status"] == "koszul"
    assert report["numeric"] == {"koszul": True, "first_fail": None}
    assert report["hilbert"]["h_B"] == [1, 3, 1, 0, 0]
    assert report["hilbert"]["h_B_dual"] == [1, 3, 8, 21, 55]

    report = analyse_graph(graph_x())
    assert report["uniform"] is False and report["koszul"] == SKIPPED

    report = analyse_graph(graph_h(), cohomology=(4, 4))
    assert report["koszul"]["status"] == "non-koszul"
    assert report["numeric"]["first_fail"] == 4
    assert report["cohomology"][0]["cochain"] == [1, 7, 13, 6]
    assert report["cohomology"][0]["euler"] == 1

    print("✅ Graph analysis test passed")


def test_cli():
    """Test commands and exit codes"""
    print("🧪 Testing Command Line...")

    code, out = run_cli(["enumerate", "--profile", "1,2,2,2,1"])
    assert code == 0 and out.strip() == "10"
    code, out = run_cli(["enumerate", "--profile", "1,2,2,2,1", "--uniform-only"])
    assert code == 0 and out.strip() == "5"
    code, out = run_cli(["enumerate", "--profile", "1,1,1", "--mode", "top-maximal"])
    assert code == 0 and out.strip() == "1"
    assert run_cli(["enumerate", "--profile", "2,2"])[0] == 1
    assert run_cli(["enumerate", "--profile", "1,x"])[0] == 1

    with tempfile.TemporaryDirectory() as tmp:
        catalog = os.path.join(tmp, "catalog.jsonl")
        assert run_cli(["enumerate", "--profile", "1,2,1", "--mode", "unique-min-only", "-o", catalog])[0] == 0
        assert len(load_graphs(catalog)) == 2

        path = os.path.join(tmp, "d.json")
        with open(path, "w") as f:
            f.write(diamond().to_json())
        code, out = run_cli(["check", path])
        assert code == 0 and json.loads(out)["koszul"]["status"] == "koszul"
        code, out = run_cli(["check", path, "--dot"])
        assert code == 0 and out.startswith("digraph")
        assert run_cli(["check", path, "--bound", "3"])[0] == 1
        assert run_cli(["check", path, "--bound", str(config.MAX_SERIES_DEGREE + 1)])[0] == 2

        path = os.path.join(tmp, "x.json")
        with open(path, "w") as f:
            f.write(graph_x().to_json())
        code, out = run_cli(["check", path])
        assert code == 0 and json.loads(out)["koszul"] == SKIPPED

        path = os.path.join(tmp, "bad.json")
        with open(path, "w") as f:
            f.write('{"layers":[1,1],"edges":[[[1,0],[1,0]]]}')
        assert run_cli(["check", path])[0] == 1
        with open(path, "w") as f:
            f.write('{"layers":[1,2],"edges":null}')
        assert run_cli(["check", path])[0] == 1

        code, out = run_cli(["search", "--max-vertices", "9", "--profile", "1,3,3,1", "-o", tmp])
        assert code == 1 and "non-Koszul" not in out

        out_dir = os.path.join(tmp, "results")
        code, out = run_cli(["search", "--max-vertices", "8", "-o", out_dir])
        assert code == 0 and "[1,2,2,2,1]: 10 graphs, 5 uniform, 5 Koszul, 0 non-Koszul" in out
        assert os.path.exists(os.path.join(out_dir, config.REPORT_FILE))

    print("✅ Command line test passed")


def test_utils_and_notifier():
    """Test utilities and the unconfigured notifier"""
    print("🧪 Testing Utilities and Notifier...")

    assert parse_profile("1, 2,2") == [1, 2, 2]
    assert format_profile([1, 2, 1]) == "[1,2,1]"
    try:
        parse_profile("1,0")
        assert False, "empty layer accepted"
    except InputError:
        pass

    notifier = TelegramNotifier(bot_token="", chat_id="")
    record = searched(9, 'unique-max').non_koszul[0]
    message = notifier.format_nonkoszul_message(record)
    assert "edges: 13" in message
    assert notifier.send_nonkoszul_alert(record)
    assert notifier.send_search_summary(searched(9, 'unique-max').to_json())

    print("✅ Utilities and notifier test passed")


def run_all_tests():
    """Run all tests"""
    print("🚀 Running koszul-lab Tests")
    print("=" * 50)

    tests = [
        test_validation,
        test_covers_and_order,
        test_pinch_split_interval,
        test_graph_codecs,
        test_canonical_key,
        test_enumeration_counts,
        test_enumeration_properties,
        test_subspaces,
        test_quadratic_data,
        test_hilbert_series,
        test_hilbert_series_brute_force,
        test_distributivity,
        test_median_matches_closure,
        test_run_components,
        test_koszul_small,
        test_pinch_exhaustive,
        test_cochains,
        test_search_profiles,
        test_search_eight_vertices,
        test_search_nine_vertices,
        test_graph_h,
        test_numeric_implies_structural,
        test_search_determinism_and_storage,
        test_analyse_graph,
        test_cli,
        test_utils_and_notifier,
    ]

    passed = 0
    failed = 0
    for test in tests:
        try:
            test()
            passed += 1
        except Exception as e:
            print(f"❌ {test.__name__} failed: {e!r}")
            failed += 1
        print()

    print("=" * 50)
    print(f"📊 Test Results: {passed} passed, {failed} failed")
    return failed == 0


if __name__ == "__main__":
    success = run_all_tests()
    sys.exit(0 if success else 1)
