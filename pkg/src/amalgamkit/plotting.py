"""Figures written next to a report: enumeration traces and distance towers."""

from __future__ import annotations

from pathlib import Path
from typing import Mapping, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402


def figure_path(report: Path | str, tag: str) -> Path:
    report = Path(report)
    return report.with_name(f"{report.stem}.{tag}.png")


def plot_traces(traces: Mapping[str, np.ndarray], path: Path | str) -> Path | None:
    """Live and defined cosets against definition steps, one panel per run."""
    traces = {k: v for k, v in traces.items() if v is not None and len(v)}
    if not traces:
        return None
    fig, axes = plt.subplots(1, len(traces), figsize=(4.5 * len(traces), 3.5), squeeze=False)
    for ax, (label, tr) in zip(axes[0], sorted(traces.items())):
        ax.plot(tr[:, 0], tr[:, 1], label="live")
        ax.plot(tr[:, 0], tr[:, 2], label="defined", linestyle="--")
        ax.set_title(label, fontsize=9)
        ax.set_xlabel("step")
        ax.set_ylabel("cosets")
        ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)
    return Path(path)


def plot_towers(delta_quotients: Sequence[int], gamma_orders: Sequence[int], path: Path | str,
                title: str = "") -> Path:
    """Bar charts of Delta distance factors and Gamma ball-stabiliser orders (log2)."""
    fig, (a, b) = plt.subplots(1, 2, figsize=(8, 3.2))
    a.bar(range(len(delta_quotients)), np.log2(np.asarray(delta_quotients, dtype=float)))
    a.set_xticks(range(len(delta_quotients)),
                 [f"G{i}/G{i + 1}" for i in range(len(delta_quotients))], fontsize=7)
    a.set_ylabel("log2 order")
    a.set_title("Delta distance factors", fontsize=9)
    for i, q in enumerate(delta_quotients):
        a.annotate(str(q), (i, np.log2(q)), ha="center", va="bottom", fontsize=7)
    b.bar(range(len(gamma_orders)), np.log2(np.asarray(gamma_orders, dtype=float)))
    b.set_xticks(range(len(gamma_orders)), [f"Q{i}" if i else "G(x)" for i in range(len(gamma_orders))],
                 fontsize=7)
    b.set_title("Gamma ball stabilisers", fontsize=9)
    for i, q in enumerate(gamma_orders):
        b.annotate(str(q), (i, np.log2(q)), ha="center", va="bottom", fontsize=7)
    if title:
        fig.suptitle(title, fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)
    return Path(path)
