"""
Layered graph model: validation, uniformity, pinch decomposition and intervals
"""
import json
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Optional, Sequence, Set, Tuple

import networkx as nx

import config
from utils import InputError


class VertexId(NamedTuple):
    """A vertex named by its level and its position inside that level"""
    level: int
    index: int

    def label(self) -> str:
        return f"L{self.level}_{self.index}"


Edge = Tuple[VertexId, VertexId]  # (tail, head), tail one level above head


class StructuralMode(Enum):
    """Which extremal elements a graph is required to have"""
    UNIQUE_MAX = 'unique-max'
    TOP_MAXIMAL = 'top-maximal'
    UNIQUE_MIN_ONLY = 'unique-min-only'

    @classmethod
    def from_name(cls, name: str) -> "StructuralMode":
        for mode in cls:
            if mode.value == name or config.MODE_PROFILES[mode.value]['name'] == name:
                return mode
        raise InputError(f"Unknown mode {name!r}; expected one of {', '.join(m.value for m in cls)}")

    @property
    def single_top(self) -> bool:
        return config.MODE_PROFILES[self.value]['single_top']

    @property
    def needs_upper_cover(self) -> bool:
        return config.MODE_PROFILES[self.value]['needs_upper_cover']


@dataclass(frozen=True)
class LayeredGraph:
    """A layered graph Γ = (V, E) with positional vertex names and downward edges"""
    profile: Tuple[int, ...]
    edges: FrozenSet[Edge]
    _lower: Dict[VertexId, FrozenSet[VertexId]] = field(init=False, repr=False, compare=False)
    _upper: Dict[VertexId, FrozenSet[VertexId]] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        lower: Dict[VertexId, Set[VertexId]] = {v: set() for v in self.vertices()}
        upper: Dict[VertexId, Set[VertexId]] = {v: set() for v in self.vertices()}
        for tail, head in self.edges:
            if tail not in lower or head not in lower:
                raise InputError(f"Edge {list(tail)}->{list(head)} names a vertex outside profile {list(self.profile)}")
            lower[tail].add(head)
            upper[head].add(tail)
        object.__setattr__(self, '_lower', {v: frozenset(s) for v, s in lower.items()})
        object.__setattr__(self, '_upper', {v: frozenset(s) for v, s in upper.items()})

    @classmethod
    def from_edges(cls, profile: Sequence[int], edges: Iterable[Sequence]) -> "LayeredGraph":
        """Build a graph from a profile and (tail, head) pairs of (level, index) pairs"""
        if not profile or any(int(size) < 1 for size in profile):
            raise InputError(f"Bad profile {list(profile)}: every layer needs at least one vertex")
        edge_set: Set[Edge] = set()
        for tail, head in edges:
            edge = (VertexId(*tail), VertexId(*head))
            if edge in edge_set:
                raise InputError(f"Duplicate edge {list(edge[0])}->{list(edge[1])}")
            edge_set.add(edge)
        return cls(tuple(int(size) for size in profile), frozenset(edge_set))

    @property
    def height(self) -> int:
        return len(self.profile) - 1

    @property
    def vertex_count(self) -> int:
        return sum(self.profile)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def vertices(self, level: Optional[int] = None) -> List[VertexId]:
        """All vertices in (level, index) order, or those of one level"""
        levels = range(len(self.profile)) if level is None else [level]
        return [VertexId(i, j) for i in levels for j in range(self.profile[i])]

    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges)

    def _check_vertex(self, u: VertexId):
        if u not in self._lower:
            raise InputError(f"Unknown vertex {tuple(u)} for profile {list(self.profile)}")

    def lower_covers(self, u: VertexId) -> FrozenSet[VertexId]:
        """S(u): the heads of edges leaving u"""
        u = VertexId(*u)
        self._check_vertex(u)
        return self._lower[u]

    def upper_covers(self, u: VertexId) -> FrozenSet[VertexId]:
        """Tails of edges arriving at u"""
        u = VertexId(*u)
        self._check_vertex(u)
        return self._upper[u]

    def validate(self, mode: StructuralMode = StructuralMode.UNIQUE_MIN_ONLY) -> List[str]:
        """Every violation of the layered-graph rules under a structural mode (empty = valid)"""
        violations = []
        for tail, head in self.sorted_edges():
            if tail.level != head.level + 1:
                violations.append(
                    f"edge {tail.label()}->{head.label()} does not drop exactly one level")
        if self.profile[0] != 1:
            violations.append(f"level 0 has {self.profile[0]} vertices, a unique minimal vertex needs 1")
        for v in self.vertices():
            if v.level >= 1 and not self._lower[v]:
                violations.append(f"level-{v.level} vertex {v.label()} with no downward edge")
        if mode.needs_upper_cover:
            for v in self.vertices():
                if v.level < self.height and not self._upper[v]:
                    violations.append(f"level-{v.level} vertex {v.label()} with no upward edge")
        if mode.single_top and self.profile[-1] != 1:
            violations.append(f"top level has {self.profile[-1]} vertices, a unique maximal vertex needs 1")
        return violations

    def is_valid(self, mode: StructuralMode = StructuralMode.UNIQUE_MIN_ONLY) -> bool:
        return not self.validate(mode)

    def _require_valid(self, mode: StructuralMode = StructuralMode.UNIQUE_MIN_ONLY):
        violations = self.validate(mode)
        if violations:
            raise InputError(f"Invalid layered graph: {violations[0]}")

    def is_uniform(self) -> bool:
        """True iff, below every vertex, the lower covers are linked through shared lower covers"""
        self._require_valid(StructuralMode.UNIQUE_MIN_ONLY)
        for v in self.vertices():
            covers = sorted(self._lower[v])
            if v.level < 2 or len(covers) < 2:
                continue
            linked = nx.Graph()
            linked.add_nodes_from(covers)
            for i, w in enumerate(covers):
                for w2 in covers[i + 1:]:
                    if self._lower[w] & self._lower[w2]:
                        linked.add_edge(w, w2)
            if not nx.is_connected(linked):
                logging.debug(f"Lower covers of {v.label()} are not connected: graph is not uniform")
                return False
        return True

    def pinch_points(self) -> List[int]:
        """Interior levels holding exactly one vertex"""
        return [k for k in range(1, self.height) if self.profile[k] == 1]

    def induced(self, keep: Iterable[VertexId], base_level: int = 0) -> "LayeredGraph":
        """Induced subgraph on `keep`, levels shifted down by base_level, indices compacted in order"""
        keep = set(keep)
        levels = sorted({v.level for v in keep})
        if levels != list(range(levels[0], levels[-1] + 1)) or levels[0] != base_level:
            raise InputError("Induced vertex set must cover consecutive levels starting at the base level")
        rename = {}
        profile = []
        for level in levels:
            members = sorted(v for v in keep if v.level == level)
            profile.append(len(members))
            for new_index, v in enumerate(members):
                rename[v] = VertexId(level - base_level, new_index)
        edges = [(rename[t], rename[h]) for t, h in self.edges if t in rename and h in rename]
        return LayeredGraph.from_edges(profile, edges)

    def split_at(self, k: int) -> Tuple["LayeredGraph", "LayeredGraph"]:
        """(Γ₀, Γ₁): the induced graphs on levels 0..k and k..N, the latter renumbered from 0"""
        if k not in self.pinch_points():
            raise InputError(f"Level {k} is not a pinch point of profile {list(self.profile)}")
        lower = self.induced([v for v in self.vertices() if v.level <= k])
        upper = self.induced([v for v in self.vertices() if v.level >= k], base_level=k)
        return lower, upper

    @staticmethod
    def glue(lower: "LayeredGraph", upper: "LayeredGraph") -> "LayeredGraph":
        """Inverse of split_at: identify the top singleton of `lower` with the bottom of `upper`"""
        if lower.profile[-1] != 1 or upper.profile[0] != 1:
            raise InputError("Gluing needs a singleton top level below and a singleton bottom level above")
        k = lower.height
        profile = list(lower.profile) + list(upper.profile[1:])
        edges = [tuple(e) for e in lower.edges]
        edges += [(VertexId(t.level + k, t.index), VertexId(h.level + k, h.index)) for t, h in upper.edges]
        return LayeredGraph.from_edges(profile, edges)

    def below(self, a: VertexId) -> Set[VertexId]:
        """All v with v ≤ a in the transitive order (a included)"""
        a = VertexId(*a)
        self._check_vertex(a)
        seen = {a}
        frontier = [a]
        while frontier:
            v = frontier.pop()
            for w in self._lower[v]:
                if w not in seen:
                    seen.add(w)
                    frontier.append(w)
        return seen

    def interval(self, a: VertexId, k: int) -> "LayeredGraph":
        """Γ_{a,k}: the vertices below a within k levels, with a as the unique top"""
        a = VertexId(*a)
        self._check_vertex(a)
        if k < 0 or a.level < k:
            raise InputError(f"Interval needs the level of a ({a.level}) to be at least k ({k})")
        window = [v for v in self.below(a) if a.level - v.level <= k]
        return self.induced(window, base_level=a.level - k)

    def to_networkx(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(self.vertices())
        graph.add_edges_from(self.edges)
        return graph

    def comparable_pairs(self) -> Set[Tuple[VertexId, VertexId]]:
        """All (u, w) with u > w: the reachability closure of the edge relation"""
        closure = nx.transitive_closure_dag(self.to_networkx())
        return {(VertexId(*u), VertexId(*w)) for u, w in closure.edges()}

    def relabel(self, permutations: Sequence[Sequence[int]]) -> "LayeredGraph":
        """Apply within-layer relabelings; permutations[level][old_index] = new_index"""
        if len(permutations) != len(self.profile):
            raise InputError("One permutation per level is required")
        for level, perm in enumerate(permutations):
            if sorted(perm) != list(range(self.profile[level])):
                raise InputError(f"Not a permutation of level {level}: {list(perm)}")

        def move(v: VertexId) -> VertexId:
            return VertexId(v.level, permutations[v.level][v.index])

        return LayeredGraph.from_edges(self.profile, [(move(t), move(h)) for t, h in self.edges])

    def to_dict(self) -> Dict:
        return {
            "layers": list(self.profile),
            "edges": [[list(t), list(h)] for t, h in self.sorted_edges()],
        }

    def to_json(self) -> str:
        """Canonical one-line JSON: edges sorted lexicographically"""
        return json.dumps(self.to_dict(), separators=(',', ':'))

    def to_dot(self, name: str = "G") -> str:
        """DOT rendering: one rank per level, top level first"""
        lines = [f"digraph {name} {{", "  rankdir=TB;"]
        for level in range(self.height, -1, -1):
            members = "; ".join(v.label() for v in self.vertices(level))
            lines.append(f"  {{ rank=same; {members}; }}")
        for tail, head in self.sorted_edges():
            lines.append(f"  {tail.label()} -> {head.label()};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def graph_from_dict(data: Dict, where: str = "<input>") -> LayeredGraph:
    """Build and structurally check a graph from its JSON object, with element diagnostics"""
    if not isinstance(data, dict) or "layers" not in data or "edges" not in data:
        raise InputError(f"{where}: expected an object with 'layers' and 'edges'")
    layers = data["layers"]
    if not isinstance(layers, list) or not layers or not all(
            isinstance(z, int) and not isinstance(z, bool) and z >= 1 for z in layers):
        raise InputError(f"{where}: 'layers' must be a nonempty list of positive integers")
    if not isinstance(data["edges"], list):
        raise InputError(f"{where}: 'edges' must be a list")
    edges = []
    seen = set()
    for position, element in enumerate(data["edges"]):
        try:
            (tl, ti), (hl, hi) = element
            tail, head = VertexId(int(tl), int(ti)), VertexId(int(hl), int(hi))
        except (TypeError, ValueError):
            raise InputError(f"{where}: edge #{position} {element!r} is not [[level,index],[level,index]]")
        for v in (tail, head):
            if not (0 <= v.level < len(layers) and 0 <= v.index < layers[v.level]):
                raise InputError(f"{where}: edge #{position} names unknown vertex {list(v)}")
        if tail.level != head.level + 1:
            raise InputError(f"{where}: edge #{position} {element!r} does not drop exactly one level")
        if (tail, head) in seen:
            raise InputError(f"{where}: edge #{position} {element!r} is a duplicate")
        seen.add((tail, head))
        edges.append((tail, head))
    return LayeredGraph.from_edges(layers, edges)


def parse_graph(text: str, where: str = "<input>") -> LayeredGraph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{where}: invalid JSON ({e})")
    return graph_from_dict(data, where)


def load_graphs(filepath: str) -> List[LayeredGraph]:
    """Read one graph per file, or one graph per line"""
    try:
        with open(filepath, 'r') as f:
            text = f.read()
    except OSError as e:
        raise InputError(f"Cannot read {filepath}: {e}")
    try:
        whole = json.loads(text)
    except json.JSONDecodeError:
        whole = None
    if whole is not None:
        if isinstance(whole, dict) and "graph" in whole:
            whole = whole["graph"]
        return [graph_from_dict(whole, filepath)]
    graphs = []
    for line_no, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        where = f"{filepath}:{line_no}"
        try:
            record = json.loads(line)
        except json.JSONDecodeError as e:
            raise InputError(f"{where}: invalid JSON ({e})")
        # catalog lines wrap the graph with its key and flags
        if isinstance(record, dict) and "graph" in record:
            record = record["graph"]
        graphs.append(graph_from_dict(record, where))
    if not graphs:
        raise InputError(f"{filepath}: no graph found")
    return graphs
