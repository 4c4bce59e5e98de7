"""
Exhaustive minimality search and single-graph analysis
"""
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import config
from cohomology import report_block
from enumeration import GraphEnumerator, canonical_key
from koszul import KoszulEngine, is_distributive, run_components
from layered_graph import LayeredGraph, StructuralMode, graph_from_dict
from notifier import TelegramNotifier
from quadratic import build_quadratic, default_bound, hilbert_B, hilbert_B_dual, hilbert_product, numerically_koszul
from storage import ResultStore
from utils import InputError, format_profile, get_timestamp

SKIPPED = "skipped: not quadratic-guaranteed"


def search_profiles(max_vertices: int, mode: StructuralMode, height_filter: bool = True,
                    pinch_filter: Optional[bool] = None) -> List[Tuple[int, ...]]:
    """Admissible profiles with z0 = 1 and at most max_vertices vertices, by (vertex count, profile).

    height_filter drops height ≤ 3; pinch_filter drops profiles with a singleton interior level,
    whose graphs split at that level into smaller ones.
    """
    if pinch_filter is None:
        pinch_filter = config.SKIP_PINCH_PROFILES
    profiles = []

    def extend(prefix: Tuple[int, ...], remaining: int):
        if len(prefix) >= 2:
            profiles.append(prefix)
        for z in range(1, min(remaining, config.MAX_LAYER_SIZE) + 1):
            extend(prefix + (z,), remaining - z)

    extend((1,), max_vertices - 1)

    kept = []
    for profile in profiles:
        height = len(profile) - 1
        if mode.single_top and profile[-1] != 1:
            continue
        if height_filter and height < config.MIN_SEARCH_HEIGHT:
            continue
        if pinch_filter and any(z == 1 for z in profile[1:-1]):
            continue
        kept.append(profile)
    return sorted(kept, key=lambda p: (sum(p), p))


def _exclusion_reason(profile: Tuple[int, ...], max_vertices: int, mode: StructuralMode,
                      height_filter: bool, pinch_filter: bool) -> str:
    """Why a requested profile is not among search_profiles(...)"""
    name = format_profile(profile)
    if profile in search_profiles(max_vertices, mode, height_filter=False, pinch_filter=False):
        if height_filter and len(profile) - 1 < config.MIN_SEARCH_HEIGHT:
            return (f"Profile {name} is skipped by the height filter (height < {config.MIN_SEARCH_HEIGHT}); "
                    f"pass --no-height-filter to search it")
        return f"Profile {name} is skipped by the pinch-profile filter; pass --no-pinch-filter to search it"
    if sum(profile) > max_vertices:
        return f"Profile {name} has {sum(profile)} vertices, more than --max-vertices {max_vertices}"
    return f"Profile {name} is not admissible in mode {mode.value}"


def _check_one(item: Tuple[str, Dict, bool, Optional[int]]) -> Tuple[str, Dict]:
    """Worker body: pure per-graph Koszulity check"""
    key_hex, graph_data, use_pinch, bound = item
    graph = graph_from_dict(graph_data, key_hex)
    verdict = KoszulEngine(use_pinch=use_pinch, bound=bound).is_koszul(graph)
    return key_hex, verdict.to_json()


@dataclass
class SearchReport:
    """Per-profile counts plus the non-Koszul graphs found; environment holds everything run-specific"""
    max_vertices: int
    mode: str
    height_filter: bool
    pinch_filter: bool
    rows: List[Dict] = field(default_factory=list)
    non_koszul: List[Dict] = field(default_factory=list)
    environment: Dict = field(default_factory=dict)

    @property
    def non_koszul_count(self) -> int:
        return sum(row['non_koszul'] for row in self.rows)

    def check_invariants(self):
        for row in self.rows:
            if row['koszul'] + row['non_koszul'] != row['uniform']:
                raise AssertionError(f"Row {format_profile(row['profile'])}: koszul + non_koszul != uniform")
        order = [(sum(row['profile']), tuple(row['profile'])) for row in self.rows]
        if order != sorted(order):
            raise AssertionError("Report rows are not sorted by (vertex count, profile)")

    def results(self) -> Dict:
        """The schedule-independent part of the report"""
        return {
            "max_vertices": self.max_vertices,
            "mode": self.mode,
            "height_filter": self.height_filter,
            "pinch_filter": self.pinch_filter,
            "rows": self.rows,
            "non_koszul": self.non_koszul,
        }

    def to_json(self) -> Dict:
        data = self.results()
        data["environment"] = self.environment
        return data


class GraphSearch:
    """Enumerates every admissible profile and runs the Koszulity engine on its uniform graphs"""

    def __init__(self, mode: StructuralMode = None, jobs: int = None, store: ResultStore = None,
                 notifier: TelegramNotifier = None, use_pinch: bool = None, bound: int = None,
                 resume: bool = True, write_dot: bool = False):
        self.logger = logging.getLogger(__name__)
        self.mode = mode or StructuralMode.from_name(config.DEFAULT_MODE)
        self.jobs = jobs or config.DEFAULT_JOBS
        self.store = store
        self.notifier = notifier
        self.use_pinch = config.USE_PINCH_SHORTCUT if use_pinch is None else use_pinch
        self.bound = bound
        self.resume = resume
        self.write_dot = write_dot

    def catalog(self, profile: Sequence[int]) -> List[Dict]:
        """Catalog records for a profile, reused from the store when present"""
        if self.store and self.resume and self.store.has_catalog(profile, self.mode.value):
            return self.store.load_catalog(profile, self.mode.value)

        records = []
        for graph in GraphEnumerator(self.mode).enumerate(profile):
            records.append({
                "key": canonical_key(graph).hex(),
                "edges": graph.edge_count,
                "uniform": graph.is_uniform(),
                "graph": graph,
            })
        if self.store:
            self.store.save_catalog(profile, self.mode.value,
                                    [dict(r, graph=r["graph"].to_dict()) for r in records])
        return records

    def _verdicts(self, records: List[Dict]) -> Iterator[Tuple[str, Dict]]:
        items = [(r["key"], r["graph"].to_dict(), self.use_pinch, self.bound) for r in records]
        if self.jobs <= 1 or len(items) < 2:
            yield from map(_check_one, items)
            return
        with ProcessPoolExecutor(max_workers=self.jobs) as executor:
            yield from executor.map(_check_one, items, chunksize=max(1, len(items) // (4 * self.jobs)))

    def run_profile(self, profile: Sequence[int]) -> Tuple[Dict, List[Dict]]:
        records = self.catalog(profile)
        uniform = [r for r in records if r["uniform"]]
        by_key = {r["key"]: r for r in uniform}

        found = []
        koszul = 0
        for key_hex, verdict in sorted(self._verdicts(uniform), key=lambda item: item[0]):
            if verdict["status"] == "koszul":
                koszul += 1
                continue
            graph = by_key[key_hex]["graph"]
            found.append(self._describe(key_hex, graph, verdict))

        edges = [r["edges"] for r in uniform]
        row = {
            "profile": list(profile),
            "mode": self.mode.value,
            "vertices": sum(profile),
            "total": len(records),
            "uniform": len(uniform),
            "koszul": koszul,
            "non_koszul": len(found),
            "non_koszul_keys": [f["key"] for f in found],
            "min_edges": min(edges) if edges else None,
            "max_edges": max(edges) if edges else None,
        }
        self.logger.info(f"Profile {format_profile(profile)}: {row['total']} graphs, {row['uniform']} uniform, "
                         f"{row['non_koszul']} non-Koszul")
        return row, found

    def _describe(self, key_hex: str, graph: LayeredGraph, verdict: Dict) -> Dict:
        """Record for a non-Koszul graph: verdict plus the top-interval cochain counts"""
        record = {
            "key": key_hex,
            "profile": list(graph.profile),
            "vertices": graph.vertex_count,
            "edges": graph.edge_count,
            "graph": graph.to_dict(),
            "verdict": verdict,
        }
        if graph.height >= config.MIN_SEARCH_HEIGHT:
            record["cohomology"] = [report_block(graph, top, graph.height) for top in graph.vertices(graph.height)]
        self.logger.info(f"Non-Koszul graph {key_hex} on {format_profile(graph.profile)} "
                         f"with {graph.edge_count} edges")
        if self.store:
            self.store.save_nonkoszul(graph, key_hex, verdict, with_dot=self.write_dot)
        if self.notifier:
            self.notifier.send_nonkoszul_alert(record)
        return record

    def run(self, max_vertices: int, profiles: Optional[Sequence[Sequence[int]]] = None,
            height_filter: bool = True, pinch_filter: Optional[bool] = None) -> SearchReport:
        if max_vertices < 3:
            raise InputError(f"max_vertices must be at least 3, got {max_vertices}")
        if pinch_filter is None:
            pinch_filter = config.SKIP_PINCH_PROFILES
        started = get_timestamp()
        start_time = time.time()

        candidates = search_profiles(max_vertices, self.mode, height_filter, pinch_filter)
        if profiles is not None:
            wanted = {tuple(p) for p in profiles}
            missing = sorted(wanted - set(candidates))
            if missing:
                raise InputError(_exclusion_reason(missing[0], max_vertices, self.mode, height_filter, pinch_filter))
            candidates = [p for p in candidates if p in wanted]
        self.logger.info(f"Searching {len(candidates)} profiles up to {max_vertices} vertices ({self.mode.value})")

        report = SearchReport(max_vertices, self.mode.value, height_filter, pinch_filter)
        for profile in candidates:
            row, found = self.run_profile(profile)
            report.rows.append(row)
            report.non_koszul.extend(found)
        report.check_invariants()

        report.environment = {
            "version": config.VERSION,
            "field": config.FIELD,
            "numeric_bound_factor": config.NUMERIC_BOUND_FACTOR,
            "closure_cap": config.LATTICE_CLOSURE_CAP,
            "jobs": self.jobs,
            "started": started,
            "wall_clock_seconds": round(time.time() - start_time, 3),
        }
        self.logger.info(f"Search finished: {report.non_koszul_count} non-Koszul graphs "
                         f"in {report.environment['wall_clock_seconds']}s")

        if self.store:
            self.store.save_report(report.to_json())
            self.store.save_summary(report.rows)
        if self.notifier:
            self.notifier.send_search_summary(report.to_json())
        return report


def analyse_graph(g: LayeredGraph, mode: StructuralMode = StructuralMode.UNIQUE_MIN_ONLY,
                  bound: Optional[int] = None, cohomology: Optional[Tuple[int, int]] = None,
                  use_pinch: Optional[bool] = None) -> Dict:
    """Full analysis report of one graph"""
    violations = g.validate(mode)
    report = {
        "graph": g.to_dict(),
        "vertices": g.vertex_count,
        "edges": g.edge_count,
        "validation": {"mode": mode.value, "valid": not violations, "violations": violations},
    }
    if violations:
        return report

    uniform = g.is_uniform()
    report["uniform"] = uniform
    report["pinch_points"] = g.pinch_points()

    if cohomology is not None:
        level, k = cohomology
        tops = g.vertices(level) if 0 <= level <= g.height else []
        if not tops:
            raise InputError(f"Graph has no vertices at level {level}")
        report["cohomology"] = [report_block(g, a, k) for a in tops]

    if not uniform:
        report["koszul"] = SKIPPED
        return report

    bound = default_bound(g) if bound is None else bound
    q = build_quadratic(g)
    numeric = numerically_koszul(g, bound, q)
    report["hilbert"] = {
        "bound": bound,
        "h_B": hilbert_B(g, bound),
        "h_B_dual": hilbert_B_dual(g, bound, q),
        "product": hilbert_product(g, bound, q),
    }
    report["numeric"] = {"koszul": numeric[0], "first_fail": numeric[1]}

    verdict = KoszulEngine(use_pinch=use_pinch, bound=bound).is_koszul(g, q)
    report["koszul"] = verdict.to_json(with_bases=True)
    if verdict.is_koszul:
        witnesses = {}
        for component in run_components(g, q):
            if component.slots < 2:
                continue
            ok, witness = is_distributive(component.ambient_dim, component.subspaces)
            witnesses["-".join(str(level) for level in component.run)] = witness.to_json()
        report["koszul"]["witnesses"] = witnesses
    return report
