"""Zeros of the leading minors, and a plot of one figure dataset.

The dataset can also be written from the shell::

    apotent figure 3 -o fig3.csv
    python demos/03_zero_loci.py fig3.csv

Plotting needs matplotlib (``pip install artifact[plot]``).
"""

import csv
import sys
from fractions import Fraction

from apotent.bessel import compare_to_bessel
from apotent.roots import cluster_distance, halfplane_verdict, pk_roots


def load(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def plot(rows, out="zeros.png"):
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 6))
    lim = [r for r in rows if r["n"] == "inf"]
    fin = [r for r in rows if r["n"] != "inf"]
    ax.scatter([float(r["root_re"]) for r in fin], [float(r["root_im"]) for r in fin], s=4,
               label="finite n")
    if lim:
        ax.scatter([float(r["root_re"]) for r in lim], [float(r["root_im"]) for r in lim],
                   s=10, marker="x", label="Bessel limit")
    ax.set_aspect("equal")
    ax.legend()
    fig.savefig(out, dpi=150)
    print("wrote", out)


if __name__ == "__main__":
    # %% Two solvers on the same block
    n, k = 60, 30
    a = Fraction(-1, n)
    ab = pk_roots(n, k, a, 256)
    qr = pk_roots(n, k, a, 256, solver="hessenberg_qr")
    print("solver gap:", float(cluster_distance(ab, qr)))
    print("all zeros in Re(z/a) > 0:", halfplane_verdict(ab, a).ok)

    # %% Coefficients approach the Bessel polynomials like 1/n^2
    for m in (100, 200, 400):
        print(m, float(compare_to_bessel(4, m)))

    if len(sys.argv) > 1:
        plot(load(sys.argv[1]))
