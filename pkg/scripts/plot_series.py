"""Plot a series CSV written by ``pocnot simulate`` or run_presets.py (needs matplotlib).

    python scripts/plot_series.py runs/presets/preset_i_effective_full.csv -o preset_i.png
"""
import argparse
import csv
import sys


def read_series(path):
    with open(path) as fh:
        lines = [ln for ln in fh if not ln.startswith("#")]
    rows = list(csv.reader(lines))
    cols = rows[0]
    data = [[float(x) for x in r] for r in rows[1:]]
    return cols, list(zip(*data))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("csv")
    ap.add_argument("-o", "--output", default=None)
    args = ap.parse_args()
    try:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        sys.exit("matplotlib is not installed; pip install matplotlib")
    cols, data = read_series(args.csv)
    fig, axes = plt.subplots(3, 2, figsize=(8, 7), sharex=True)
    for ax, name, values in zip(axes.ravel(), cols[1:], data[1:]):
        ax.plot(data[0], values, "o-", ms=3)
        ax.set_title(name)
        ax.set_ylim(-1.1, 1.1)
    for ax in axes[-1]:
        ax.set_xlabel("t (s)")
    fig.tight_layout()
    fig.savefig(args.output or args.csv.rsplit(".", 1)[0] + ".png", dpi=120)


if __name__ == "__main__":
    main()
