#!/usr/bin/env python3
"""Ingest every bundled figure and write golden MSG files to assets/msg/.

The goldens are committed so downstream tools can load graphs without
re-parsing the TikZ bodies; re-running this script must be a no-op diff.
"""

from __future__ import annotations

from matchsticks.figures import FIGURES, asset_root, load_figure
from matchsticks.msgio import write_msg


def main() -> None:
    out_dir = asset_root() / "msg"
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, spec in sorted(FIGURES.items()):
        fig = load_figure(name)
        path = out_dir / f"{name}.msg"
        path.write_text(write_msg(fig.graph, fig.embedding, fig.names))
        tag = "patch" if spec.patch else ("block" if spec.block else "graph")
        print(f"{name:30s} {fig.graph.n_vertices:4d} vertices {fig.graph.n_edges:4d} edges "
              f"[{tag}] -> {path.relative_to(asset_root().parent)}")


if __name__ == "__main__":
    main()
