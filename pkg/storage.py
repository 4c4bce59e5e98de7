"""
Result storage for enumeration catalogs, non-Koszul graphs and search reports
"""
import csv
import logging
import os
from typing import Dict, List, Optional, Sequence

import config
from layered_graph import LayeredGraph, graph_from_dict
from utils import InputError, read_jsonl, save_json_file, load_json_file, write_jsonl

SUMMARY_COLUMNS = ['profile', 'mode', 'vertices', 'total', 'uniform', 'koszul', 'non_koszul',
                   'min_edges', 'max_edges', 'non_koszul_keys']


def profile_slug(profile: Sequence[int]) -> str:
    return "-".join(str(z) for z in profile)


class ResultStore:
    """Manages the on-disk layout of a search run"""

    def __init__(self, out_dir: str = None):
        self.out_dir = out_dir or config.DEFAULT_OUTPUT_DIR
        self.catalog_dir = os.path.join(self.out_dir, "catalog")
        self.nonkoszul_dir = os.path.join(self.out_dir, "nonkoszul")
        for directory in (self.out_dir, self.catalog_dir, self.nonkoszul_dir):
            os.makedirs(directory, exist_ok=True)

    def catalog_path(self, profile: Sequence[int], mode_name: str) -> str:
        return os.path.join(self.catalog_dir, f"{profile_slug(profile)}_{mode_name}.jsonl")

    def has_catalog(self, profile: Sequence[int], mode_name: str) -> bool:
        return os.path.exists(self.catalog_path(profile, mode_name))

    def save_catalog(self, profile: Sequence[int], mode_name: str, records: List[Dict]) -> int:
        """Write a catalog; a partial file is never left behind under the final name"""
        path = self.catalog_path(profile, mode_name)
        partial = path + ".part"
        count = write_jsonl(partial, records)
        os.replace(partial, path)
        logging.debug(f"Catalog {path}: {count} graphs")
        return count

    def load_catalog(self, profile: Sequence[int], mode_name: str) -> List[Dict]:
        """Catalog records with their graphs rebuilt"""
        path = self.catalog_path(profile, mode_name)
        records = []
        for line_no, record in enumerate(read_jsonl(path), 1):
            if "graph" not in record or "key" not in record:
                raise InputError(f"{path}:{line_no}: catalog record without 'key' and 'graph'")
            record = dict(record)
            record["graph"] = graph_from_dict(record["graph"], f"{path}:{line_no}")
            records.append(record)
        logging.info(f"Reusing catalog {path} ({len(records)} graphs)")
        return records

    def save_nonkoszul(self, graph: LayeredGraph, key_hex: str, verdict: Dict,
                       with_dot: bool = False) -> Optional[str]:
        """Write a non-Koszul graph as canonical JSON (plus DOT when asked)"""
        stem = os.path.join(self.nonkoszul_dir, f"{profile_slug(graph.profile)}_{key_hex}")
        data = {
            "key": key_hex,
            "graph": graph.to_dict(),
            "vertices": graph.vertex_count,
            "edges": graph.edge_count,
            "verdict": verdict,
        }
        if not save_json_file(stem + ".json", data):
            return None
        if with_dot:
            try:
                with open(stem + ".dot", 'w') as f:
                    f.write(graph.to_dot("H"))
            except OSError as e:
                logging.error(f"Error writing DOT file {stem}.dot: {e}")
        return stem + ".json"

    def list_nonkoszul(self) -> List[Dict]:
        found = []
        for name in sorted(os.listdir(self.nonkoszul_dir)):
            if name.endswith(".json"):
                found.append(load_json_file(os.path.join(self.nonkoszul_dir, name)))
        return found

    def save_report(self, report: Dict) -> bool:
        return save_json_file(os.path.join(self.out_dir, config.REPORT_FILE), report)

    def load_report(self) -> Dict:
        return load_json_file(os.path.join(self.out_dir, config.REPORT_FILE))

    def save_summary(self, rows: List[Dict]) -> bool:
        """One CSV row per profile"""
        path = os.path.join(self.out_dir, config.SUMMARY_FILE)
        try:
            with open(path, 'w', newline='') as f:
                writer = csv.DictWriter(f, fieldnames=SUMMARY_COLUMNS, extrasaction='ignore')
                writer.writeheader()
                for row in rows:
                    flat = dict(row)
                    flat['profile'] = profile_slug(row['profile'])
                    flat['non_koszul_keys'] = " ".join(row['non_koszul_keys'])
                    writer.writerow(flat)
            return True
        except OSError as e:
            logging.error(f"Error saving summary {path}: {e}")
            return False
