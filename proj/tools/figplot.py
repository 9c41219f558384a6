#!/usr/bin/env python3
"""Render fig1/fig2/fig3 from a `fermi sweep` CSV. No physics here: every number comes from the file."""

import argparse
import csv
import sys
from collections import OrderedDict
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

COLUMNS = [
    "z", "x", "re_a", "im_a", "re_b", "im_b", "u2", "v2", "re_l", "im_l", "f2", "g2", "re_fg", "im_fg",
    "conc0", "ent0", "conc1", "ent1", "conc2", "ent2", "conc_mix", "mutual_info", "norm_N",
]
FIGURES = {
    "fig1": ("conc0", r"$C^{(0)}$"),
    "fig2": ("conc1", r"$C^{(1)}$"),
    "fig3": ("mutual_info", "mutual information (bits)"),
}
STYLES = ["-", "--", ":", "-."]
INSET_RANGE = (0.01, 0.3)


class SchemaError(ValueError):
    pass


def read_sweep(path):
    with open(path, newline="") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header != COLUMNS:
            raise SchemaError(f"{path}: header does not match the sweep schema")
        series = OrderedDict()
        for n, row in enumerate(reader, start=2):
            if len(row) != len(COLUMNS):
                raise SchemaError(f"{path}:{n}: expected {len(COLUMNS)} fields, got {len(row)}")
            rec = dict(zip(COLUMNS, map(float, row)))
            series.setdefault(rec["z"], []).append(rec)
    if not series:
        raise SchemaError(f"{path}: no data rows")
    return series


def render(figure, series, output):
    column, label = FIGURES[figure]
    fig, ax = plt.subplots(figsize=(6, 4.2))
    for i, (z, rows) in enumerate(series.items()):
        ax.plot([r["x"] for r in rows], [r[column] for r in rows], STYLES[i % len(STYLES)], color="k",
                lw=1.2, label=f"z = {z:g}")
    ax.set_xlabel(r"$x = L/(c\,t)$")
    ax.set_ylabel(label)
    ax.set_xlim(0.05, 3.0)
    ax.legend(frameon=False, loc="upper left")

    if figure == "fig3":
        inset = ax.inset_axes([0.55, 0.45, 0.4, 0.4])
        for i, (z, rows) in enumerate(series.items()):
            sel = [r for r in rows if INSET_RANGE[0] <= r["x"] <= INSET_RANGE[1]]
            inset.plot([r["x"] for r in sel], [r["conc_mix"] for r in sel], STYLES[i % len(STYLES)], color="k",
                       lw=1.0)
        inset.set_xlim(*INSET_RANGE)
        inset.set_title(r"$C_{\mathrm{mix}}$", fontsize=9)
        inset.tick_params(labelsize=7)

    fig.tight_layout()
    fmt = Path(output).suffix.lstrip(".").lower()
    if fmt == "svg":
        plt.rcParams["svg.hashsalt"] = "figplot"
        fig.savefig(output, format="svg", metadata={"Date": None})
    else:
        fig.savefig(output, format="png", dpi=150, metadata={"Software": None})
    plt.close(fig)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--figure", required=True, choices=sorted(FIGURES))
    ap.add_argument("--input", required=True)
    ap.add_argument("--output", required=True, help="output image (.png or .svg)")
    args = ap.parse_args(argv)
    if Path(args.output).suffix.lower() not in (".png", ".svg"):
        ap.error("--output must end in .png or .svg")
    try:
        series = read_sweep(args.input)
    except (OSError, SchemaError, ValueError) as e:
        print(f"figplot: {e}", file=sys.stderr)
        return 1
    render(args.figure, series, args.output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
