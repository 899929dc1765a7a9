"""Conjugate-solution handling, reconstruction scoring, and diagnostics.

A magnitude-only Fourier measurement cannot distinguish a field from its
conjugated, origin-inverted copy (the twin), nor fix a global phase.
This module provides the twin map, a scorer that reports the best
alignment over {identity, twin} x global phase, the no-iteration
phase-mixing construction that makes the twin pair visible directly, and
the support-size sweep that locates the true object size from the
zero-zone residual S.
"""

from dataclasses import dataclass, replace

import numpy as np

from .field import as_field, embed, extract, unit_phase
from .hio import HioParams, derive_seed, hio_run, make_mask


def twin(z):
    """Conjugate of z circularly inverted about the index origin.

    twin(z)[n1, n2] = conj(z[(-n1) mod m1, (-n2) mod m2]).  An involution
    and an isometry; its forward transform is the conjugate of z's, so
    the Fourier magnitude is identical.
    """
    z = as_field(z)
    m1, m2 = z.shape
    return np.conj(z[np.ix_((-np.arange(m1)) % m1, (-np.arange(m2)) % m2)])


def window_twin(z, mask):
    """The twin as it can actually appear inside the support window.

    The plain :func:`twin` of a G1-supported field lives in the wrap-around
    corner of the padded grid and therefore violates the support
    constraint.  The support-compatible form is the conjugate reflected
    about the center of G1's bounding box; solver runs that lock onto the
    conjugate solution converge to this field (up to global phase).
    """
    z = as_field(z)
    if z.shape != mask.grid.shape:
        raise ValueError(f"field shape {z.shape} does not match mask {mask.grid.shape}")
    m1, m2 = z.shape
    rows = np.flatnonzero(mask.grid.any(axis=1))
    cols = np.flatnonzero(mask.grid.any(axis=0))
    c1 = rows[0] + rows[-1]
    c2 = cols[0] + cols[-1]
    return np.conj(z[np.ix_((c1 - np.arange(m1)) % m1, (c2 - np.arange(m2)) % m2)])


@dataclass(frozen=True)
class AlignmentReport:
    """Best match of a reconstruction against ground truth on G1.

    flipped marks whether the twin candidate won; global_phase is the
    phase of the winning candidate relative to truth, in (-pi, pi].
    """

    flipped: bool
    global_phase: float
    rel_error: float


def _phase_and_error(candidate, truth, truth_norm):
    ip = np.sum(np.conj(truth) * candidate)
    phase = float(np.angle(ip)) if ip != 0 else 0.0
    err = float(np.linalg.norm(candidate * np.exp(-1j * phase) - truth) / truth_norm)
    return phase, err


def align_and_error(recon, truth, mask):
    """Score a reconstruction against truth over {identity, twin}.

    For each candidate the optimal global phase has the closed form
    arg(<truth, candidate>) over G1; the report carries the better
    candidate's phase and relative error.  Interior comparisons are
    restricted to the object zone, so the padding never dilutes the
    error.
    """
    recon = as_field(recon, "recon")
    truth = as_field(truth, "truth")
    if recon.shape != truth.shape or recon.shape != mask.grid.shape:
        raise ValueError("recon, truth, and mask must share the padded shape")
    g1 = mask.grid
    t = truth[g1]
    truth_norm = float(np.linalg.norm(t))
    if truth_norm == 0.0:
        raise ValueError("truth is zero on G1; alignment is undefined")
    best = None
    for flipped, candidate in ((False, recon), (True, twin(recon))):
        phase, err = _phase_and_error(candidate[g1], t, truth_norm)
        if best is None or err < best.rel_error:
            best = AlignmentReport(flipped=flipped, global_phase=phase, rel_error=err)
    return best


def phase_mix(o1, o2, cfg):
    """Magnitude of one object recombined with the phase of another.

    Computes the padded-grid inverse transform of |F(o1)| * phase(F(o2)),
    both transforms taken on the dense grid of ``cfg``.  Zero-magnitude
    samples of F(o2) contribute phase 1.  With o1 == o2 this reproduces
    embed(o1); with o2 all-ones and high sampling ratio the imaginary
    part reveals the twin pair of o1 without any iteration.
    """
    o1 = as_field(o1, "o1")
    o2 = as_field(o2, "o2")
    if o1.shape != o2.shape:
        raise ValueError(f"objects differ in shape: {o1.shape} vs {o2.shape}")
    mag = np.abs(np.fft.fft2(embed(o1, cfg)))
    ph = unit_phase(np.fft.fft2(embed(o2, cfg)))
    return np.fft.ifft2(mag * ph)


def emergence_score(omix, shape_mask, cfg):
    """Correlation of |imag(O_mix)| on G1 with the shape-and-twin mask.

    The reference mask is the union of the binary shape with its 180-degree
    rotation inside the object window (where the twin overlaps the
    object).  Returns the Pearson correlation coefficient.
    """
    shape_mask = np.asarray(shape_mask, dtype=bool)
    if shape_mask.shape != (cfg.n1, cfg.n2):
        raise ValueError(f"shape mask {shape_mask.shape} does not match object {(cfg.n1, cfg.n2)}")
    im = np.abs(np.imag(extract(omix, cfg)))
    union = (shape_mask | shape_mask[::-1, ::-1]).astype(np.float64)
    x = im.ravel() - im.mean()
    y = union.ravel() - union.mean()
    denom = float(np.linalg.norm(x) * np.linalg.norm(y))
    if denom == 0.0:
        return 0.0
    return float(np.dot(x, y) / denom)


@dataclass(frozen=True)
class SweepReport:
    """Mean log10 zero-zone residual per tested support size."""

    sizes: tuple
    mean_log_s: tuple
    runs_per_size: int


def support_sweep(a, cfg, sizes, params=HioParams(), runs_per_size=1):
    """Estimate the object size from the residual S across mask sizes.

    For each square support size, runs :func:`hio_run` ``runs_per_size``
    times from random starts (seeds derived from params.seed, the size,
    and the run index) and records the mean of log10(final S).  Sizes
    below the true object side leave a large infeasibility residual;
    at and beyond it the residual drops to the solver floor, so the knee
    of the curve marks the object size.
    """
    if not isinstance(runs_per_size, (int, np.integer)) or runs_per_size < 1:
        raise ValueError("runs_per_size must be a positive integer")
    sizes = [int(s) for s in sizes]
    tiny = np.finfo(np.float64).tiny
    means = []
    for size in sizes:
        mask = make_mask(cfg, "square", size)
        logs = []
        for j in range(runs_per_size):
            run_params = replace(params, init="random", seed=derive_seed(params.seed, size, j))
            result = hio_run(a, mask, run_params)
            logs.append(np.log10(max(result.final_s, tiny)))
        means.append(float(np.mean(logs)))
    return SweepReport(sizes=tuple(sizes), mean_log_s=tuple(means), runs_per_size=int(runs_per_size))
