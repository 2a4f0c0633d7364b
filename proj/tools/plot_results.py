#!/usr/bin/env python3
"""Render the CSV artifacts written by `qsync run` into PNG figures.

Developer tooling; the simulator itself never plots. The artifact kind is
detected from the CSV header:

  time series   (t, ...)                      -> traces over time
  sweep         (delta_a, j2, mutual_information) -> heatmap
  fidelity      (kappa_t, n, fidelity)        -> fidelity vs n per horizon

Usage:
  tools/plot_results.py out/fig2_analog.csv out/fig2_digital.csv -o fig2.png
  tools/plot_results.py out/fig4_feedback_on.csv -o fig4.png
  tools/plot_results.py out/fig7_fidelity.csv -o fig7.png
"""

import argparse
import csv
import math
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np


def read_csv(path):
    header, rows = None, []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            fields = line.split(",")
            if header is None:
                header = fields
            else:
                rows.append([float(x) if x != "nan" else math.nan for x in fields])
    return header, np.array(rows)


def plot_series(paths, out):
    fig, ax = plt.subplots(figsize=(9, 5))
    styles = ["-", "--", ":", "-."]
    for i, path in enumerate(paths):
        header, data = read_csv(path)
        t = data[:, 0]
        for c, name in enumerate(header[1:], start=1):
            if name.startswith(("p_", "mi_", "n_")):
                continue
            ax.plot(t, data[:, c], styles[i % len(styles)], lw=1, label=f"{name} [{path}]")
    ax.set_xlabel("t")
    ax.set_ylabel("expectation value")
    ax.legend(fontsize=6, ncol=2)
    fig.savefig(out, dpi=160, bbox_inches="tight")


def plot_sweep(path, out):
    _, data = read_csv(path)
    das = np.unique(data[:, 0])
    j2s = np.unique(data[:, 1])
    grid = data[:, 2].reshape(len(das), len(j2s))
    fig, ax = plt.subplots(figsize=(6, 5))
    im = ax.pcolormesh(j2s, das, grid, shading="nearest")
    fig.colorbar(im, ax=ax, label="mutual information (nats)")
    ax.set_xlabel("J2")
    ax.set_ylabel("delta_A")
    fig.savefig(out, dpi=160, bbox_inches="tight")


def plot_fidelity(path, out):
    _, data = read_csv(path)
    fig, ax = plt.subplots(figsize=(7, 5))
    for kt in np.unique(data[:, 0]):
        sel = data[data[:, 0] == kt]
        ax.plot(sel[:, 1], sel[:, 2], "o-", label=f"kappa t = {kt:g}")
    ax.set_xlabel("n (Trotter steps)")
    ax.set_ylabel("fidelity")
    ax.set_xscale("log")
    ax.legend()
    fig.savefig(out, dpi=160, bbox_inches="tight")


def main():
    parser = argparse.ArgumentParser(description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("csv", nargs="+", help="artifact file(s); series plots accept several")
    parser.add_argument("-o", "--out", default="plot.png")
    args = parser.parse_args()

    header, _ = read_csv(args.csv[0])
    if header[:2] == ["delta_a", "j2"]:
        plot_sweep(args.csv[0], args.out)
    elif header[:2] == ["kappa_t", "n"]:
        plot_fidelity(args.csv[0], args.out)
    elif header[0] == "t":
        plot_series(args.csv, args.out)
    else:
        sys.exit(f"unrecognized artifact header: {header}")
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
