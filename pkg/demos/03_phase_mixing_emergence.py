"""A glyph and its twin appear from intensity alone at high sampling ratio.

Take an object that is 1 on the background and i on a glyph-shaped
region, keep only the MAGNITUDE of its densely sampled transform (with
heavy noise), multiply by the phase of an all-ones object's transform,
and invert.  No iteration happens anywhere; yet as the sampling ratio
grows, the imaginary part of the result increasingly correlates with the
glyph overlapped with its point-reflected twin.
"""

import os

import numpy as np

from hftphase import (
    NoiseParams,
    SamplingConfig,
    add_noise,
    emergence_score,
    fileio,
    hft_forward,
    unit_phase,
)


def glyph(n=32):
    m = np.zeros((n, n), dtype=bool)
    m[4:28, 6:10] = True
    m[4:8, 6:22] = True
    m[14:18, 6:18] = True
    m[22:26, 24:28] = True
    return m


out_dir = os.path.join(os.path.dirname(__file__), "out")
os.makedirs(out_dir, exist_ok=True)

shape = glyph()
o1 = np.where(shape, 1j, 1.0 + 0.0j)
o2 = np.ones((32, 32), dtype=np.complex128)

print("mixing |F(glyph)| (noisy, rnoi=0.5) with the all-ones phase:")
for r in (2, 10, 20):
    cfg = SamplingConfig(32, 32, r)
    a = np.abs(hft_forward(o1, cfg))
    noisy = add_noise(a, NoiseParams(rnoi=0.5, anoi=0.03 * float(a.max()), seed=123))
    omix = np.fft.ifft2(noisy * unit_phase(hft_forward(o2, cfg)))
    score = emergence_score(omix, shape, cfg)
    png = os.path.join(out_dir, f"mix_imag_R{r*r}.png")
    fileio.write_png16(png, fileio.linear_view_u16(np.imag(omix[:32, :32])))
    print(f"  R = {r*r:3d}: correlation with glyph+twin mask = {score:.3f}   ({png})")
