"""Benchmark result aggregation and reporting."""

from typing import Dict, List, Optional

import numpy as np
import pandas as pd

from ..core.models import BenchRecord

COLUMNS = ["instance", "problem", "join_mode", "wall_time", "width", "n", "node_count", "value", "answer"]


class BenchAggregator:
    """Collects bench records and formats them for export."""

    def __init__(self):
        self.results: List[BenchRecord] = []

    def add_result(self, result: BenchRecord) -> None:
        """Add a single bench record."""
        self.results.append(result)

    def clear(self) -> None:
        """Drop all records."""
        self.results = []

    def to_dataframe(self) -> pd.DataFrame:
        """Records as a DataFrame; an empty aggregator still has all columns."""
        return pd.DataFrame([r.to_dict() for r in self.results], columns=COLUMNS)

    def to_csv(self, path: str) -> None:
        """Export to CSV file (header only when there are no records)."""
        self.to_dataframe().to_csv(path, index=False)

    def scaling_slopes(self) -> Dict[str, float]:
        """Least-squares slope of log2(wall_time) against width, per join mode.

        Modes with fewer than two distinct widths are left out.
        """
        df = self.to_dataframe()
        slopes = {}
        for mode, group in df.groupby("join_mode"):
            per_width = group.groupby("width")["wall_time"].median()
            per_width = per_width[per_width > 0]
            if len(per_width) < 2:
                continue
            slope, _ = np.polyfit(per_width.index.to_numpy(dtype=float), np.log2(per_width.to_numpy(dtype=float)), 1)
            slopes[str(mode)] = float(slope)
        return slopes

    def print_summary_table(self, title: Optional[str] = None) -> None:
        """Print formatted summary table to console."""
        if not self.results:
            print("No results to display.")
            return

        print()
        print("=" * 100)
        print((title or "BENCHMARK RESULTS SUMMARY").center(100))
        print("=" * 100)
        df = self.to_dataframe()
        df["wall_time"] = df["wall_time"].map(lambda t: f"{t:.4f}")
        print(df.to_string(index=False))

        slopes = self.scaling_slopes()
        if slopes:
            print("-" * 100)
            for mode, slope in sorted(slopes.items()):
                print(f"log2(time) per width, {mode}: {slope:.3f}")
        print("=" * 100)
