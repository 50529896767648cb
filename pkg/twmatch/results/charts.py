"""Scaling charts for bench results."""

from typing import List, Optional

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from ..core.models import BenchRecord  # noqa: E402


def generate_scaling_chart(
    results: List[BenchRecord],
    output_path: str,
    x_label: str = "Decomposition width",
) -> Optional[str]:
    """
    Plot wall time (log scale) against width, one line per join mode.

    Args:
        results: Bench records to plot
        output_path: Path of the PNG to write
        x_label: Label for x-axis

    Returns:
        Path to saved chart file, or None when there is nothing to plot
    """
    if not results:
        print("No results to chart.")
        return None

    fig, ax = plt.subplots(figsize=(10, 6))
    fig.suptitle("Join Scaling", fontsize=16, fontweight="bold")

    styles = {"naive": "r-o", "conv": "b-o"}
    for mode in sorted({r.join_mode for r in results}):
        points = sorted((r.width, r.wall_time) for r in results if r.join_mode == mode)
        ax.plot(
            [w for w, _ in points],
            [max(t, 1e-6) for _, t in points],
            styles.get(mode, "g-o"),
            label=mode,
            linewidth=2,
            markersize=6,
        )

    ax.set_yscale("log", base=2)
    ax.set_xlabel(x_label)
    ax.set_ylabel("Wall time (s)")
    ax.legend()
    ax.grid(True, alpha=0.3)

    plt.tight_layout()
    plt.savefig(output_path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    print(f"\nChart saved as: {output_path}")
    return output_path
