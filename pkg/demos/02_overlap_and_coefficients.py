"""Locality of measurement overlaps on the dense frequency grid.

Two far-field samples separated by (u1, u2) in units of lambda/l overlap
by sinc(u1)*sinc(u2): unity at zero separation, exactly zero at the
orthogonal (integer) spacings, and decaying in between.  Fractional
samples therefore tie neighboring orthogonal measurements together,
which is what makes intensity-only phase retrieval possible.
"""

import os

import numpy as np

from hftphase import coeff_ratio, inner_product, inner_product_general

print("overlap along one axis (u2 = 0):")
for u in (0.0, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0):
    print(f"  u1 = {u:4.2f}: P = {inner_product(u, 0.0):+.6f}")

print("\nwindow origin only rotates the overlap phase, never its size:")
for w in (-0.5, 0.0, 0.25):
    p = inner_product_general(0.5, 0.0, w, -0.5)
    print(f"  w/l = {w:+5.2f}: |P| = {abs(p):.6f}, phase = {np.angle(p):+.4f} rad")

print("\ncoefficient-change ratio q between the neighbor (j=0) and the")
print("non-neighbor (j=-1) measurement as the sample at k=1/20 moves by 1/r:")
rows = []
for r in (2, 4, 8, 16, 32, 64):
    q = coeff_ratio(1 / 20, r, j1=0, j2=-1)
    rows.append((r, q))
    print(f"  r = {r:2d}: q = {q:.5f}")

os.makedirs(os.path.join(os.path.dirname(__file__), "out"), exist_ok=True)
csv_path = os.path.join(os.path.dirname(__file__), "out", "coeff_ratio.csv")
with open(csv_path, "w", encoding="ascii") as fh:
    fh.write("r,q\n")
    for r, q in rows:
        fh.write(f"{r},{q:.8f}\n")
print(f"\nwrote {csv_path}")
