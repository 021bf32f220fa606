"""Figure rendering for verification reports.

Reports carry at most two kinds of distribution data: a codeword weight
histogram (when a weight enumerator was computed) and the histogram of
flattened fixed-space dimensions over the involutions of H (when a scan
ran).  Whatever is present is rendered to one file; nothing is computed
here that the run did not already compute.
"""

from __future__ import annotations

from pathlib import Path


def render_report_figure(report, path: str | Path) -> bool:
    """Write a figure for the report's distribution data; False if none."""
    details = report.details or {}
    weight_counts = details.get("weight_distribution")
    dim_hist = details.get("fixed_dim_histogram")
    if not weight_counts and not dim_hist:
        return False

    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    n_panels = (1 if weight_counts else 0) + (1 if dim_hist else 0)
    fig, axes = plt.subplots(1, n_panels, figsize=(6 * n_panels, 4))
    if n_panels == 1:
        axes = [axes]
    panel = 0
    if weight_counts:
        ax = axes[panel]
        panel += 1
        weights = [w for w, c in enumerate(weight_counts) if c]
        counts = [weight_counts[w] for w in weights]
        ax.bar(weights, counts, width=max(1.0, (max(weights) - min(weights)) / 40), color="#336699")
        ax.set_yscale("log")
        ax.set_xlabel("codeword weight")
        ax.set_ylabel("count")
        ax.set_title("weight distribution")
    if dim_hist:
        ax = axes[panel]
        dims = sorted(int(d) for d in dim_hist)
        counts = [dim_hist[str(d)] for d in dims]
        ax.bar(dims, counts, color="#996633")
        ax.set_xlabel("flattened fixed-space dimension")
        ax.set_ylabel("involutions of H")
        ax.set_title("fixed-space dimensions")
        ax.set_xticks(dims)
    fig.suptitle(f"{report.claim} {report.params}", fontsize=9)
    fig.tight_layout()
    fig.savefig(Path(path), dpi=150)
    plt.close(fig)
    return True
