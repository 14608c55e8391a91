"""Render benchmark figures next to the CSV they describe."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


def _series(rows: list[dict]) -> dict[str, tuple[list[int], list[float], list[int]]]:
    out: dict[str, tuple[list[int], list[float], list[int]]] = {}
    for row in rows:
        ns, walls, ops = out.setdefault(row["algo"], ([], [], []))
        ns.append(int(row["n"]))
        walls.append(float(row["wall_ms"]))
        ops.append(int(row["min_plus_ops"]))
    return out


def render_figures(rows: list[dict], csv_path: str) -> list[Path]:
    """Write wall-time and operation-count figures beside the CSV file."""
    base = Path(csv_path)
    series = _series(rows)
    written: list[Path] = []

    for suffix, idx, ylabel in (
        ("time", 1, "wall time (ms)"),
        ("ops", 2, "min-plus operations"),
    ):
        fig, ax = plt.subplots(figsize=(6, 4))
        for algo, data in sorted(series.items()):
            ax.plot(data[0], data[idx], marker="o", label=algo)
        ax.set_xlabel("input length n")
        ax.set_ylabel(ylabel)
        ax.set_xscale("log", base=2)
        ax.set_yscale("log")
        ax.grid(True, which="both", alpha=0.3)
        ax.legend()
        fig.tight_layout()
        path = base.with_name(f"{base.stem}_{suffix}.png")
        fig.savefig(path, dpi=120)
        plt.close(fig)
        written.append(path)
    return written
