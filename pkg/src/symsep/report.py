"""Files written next to a verification run: a TSV table, the JSON array,
and PNG figures of symmetric tilings of the top cell."""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .collection import enumerate_maximal_symmetric  # noqa: E402
from .positroid import Color, Positroid, top_cell_perm  # noqa: E402
from .tiling import PlabicTiling, build_tiling  # noqa: E402
from .verify import CheckReport, format_json  # noqa: E402

TSV_FIELDS = ("name", "instance", "passed", "wall_time", "details", "counterexample")


def write_tsv(reports: list[CheckReport], path: Path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, delimiter="\t", lineterminator="\n")
        w.writerow(TSV_FIELDS)
        for r in reports:
            w.writerow([r.name, r.instance, "PASS" if r.passed else "FAIL", f"{r.wall_time:.4f}",
                        json.dumps(r.details, sort_keys=True),
                        "" if r.counterexample is None else json.dumps(r.counterexample, sort_keys=True)])


def draw_tiling(T: PlabicTiling, ax, labels: bool = True) -> None:
    for cell in T.cells:
        poly = T.polygon(cell)
        face = "white" if cell.color is Color.WHITE else "0.35"
        ax.fill([p[0] for p in poly], [p[1] for p in poly], facecolor=face, edgecolor="black", lw=1)
    for I, J in T.edges:
        (x1, y1), (x2, y2) = T.positions[I], T.positions[J]
        ax.plot([x1, x2], [y1, y2], color="black", lw=1)
    ys = [p[1] for p in T.positions.values()]
    if T.m % 2 == 0 and ys:
        ax.axvline(0.0, color="tab:blue", ls="--", lw=0.8)
    for I, (x, y) in T.positions.items():
        ax.plot([x], [y], "o", color="tab:red", ms=3)
        if labels:
            ax.annotate("".join(map(str, I.members)), (x, y), xytext=(3, 3),
                        textcoords="offset points", fontsize=6)
    ax.set_aspect("equal")
    ax.axis("off")


def save_tiling(T: PlabicTiling, path: Path) -> None:
    fig, ax = plt.subplots(figsize=(4, 4))
    draw_tiling(T, ax)
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)


def symmetric_gallery(n: int, path: Path, limit: int = 16) -> int:
    """Grid of symmetric maximal tilings of the top cell; returns how many were drawn."""
    M = Positroid.from_perm(top_cell_perm(n))
    tilings = [build_tiling(C) for C in enumerate_maximal_symmetric(M)[:limit]]
    cols = min(4, len(tilings))
    rows = math.ceil(len(tilings) / cols)
    fig, axes = plt.subplots(rows, cols, figsize=(3 * cols, 3 * rows), squeeze=False)
    for ax in axes.flat:
        ax.axis("off")
    for ax, T in zip(axes.flat, tilings):
        draw_tiling(T, ax, labels=n <= 3)
    fig.suptitle(f"symmetric maximal tilings, top cell n={n}")
    fig.savefig(path, dpi=110, bbox_inches="tight")
    plt.close(fig)
    return len(tilings)


def timing_chart(reports: list[CheckReport], path: Path) -> None:
    names = [f"{r.name} {r.instance}" for r in reports]
    fig, ax = plt.subplots(figsize=(6, 0.22 * len(reports) + 1))
    ax.barh(names, [r.wall_time for r in reports],
            color=["tab:green" if r.passed else "tab:red" for r in reports])
    ax.invert_yaxis()
    ax.set_xlabel("seconds")
    ax.tick_params(axis="y", labelsize=6)
    fig.savefig(path, dpi=110, bbox_inches="tight")
    plt.close(fig)


def write_report(reports: list[CheckReport], outdir: str | Path, n: int) -> list[Path]:
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    paths = [out / "report.tsv", out / "report.json", out / "timings.png"]
    write_tsv(reports, paths[0])
    paths[1].write_text(format_json(reports) + "\n")
    timing_chart(reports, paths[2])
    if 1 <= n <= 4:
        gallery = out / f"symmetric_tilings_n{n}.png"
        symmetric_gallery(n, gallery)
        paths.append(gallery)
    return paths
