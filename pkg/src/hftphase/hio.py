"""Hybrid input-output solver on the padded grid.

The object-domain constraint is purely geometric: all energy outside the
support zone G1 must vanish.  Each iteration replaces the Fourier
magnitude of the current iterate by the measurement (keeping the phase)
and then relaxes the zero-zone violation with the feedback parameter
beta.  No reality or nonnegativity constraint is applied anywhere; the
object is complex by design.

Iteration, given measurement a on the padded grid:

    (1) pfz = unit phase of FFT(z)
    (2) tz  = IFFT(pfz * a)
    (3) gz  = tz on G2, 0 on G1
    (4) z   = tz on G1, z - beta*gz on G2

tz is the magnitude-consistent estimate: its Fourier magnitude equals a
by construction, so its zero-zone energy S = sum over G2 of |tz|^2
measures how badly the current estimate violates the support.  S is the
stopping quantity, the per-iteration trace, and the support-size
diagnostic; the solver returns the final tz.  (The relaxed state z keeps
its G2 component small by construction whether or not the problem is
feasible, so its zero-zone energy carries no diagnostic signal.)
"""

from dataclasses import dataclass, replace

import numpy as np

from .field import as_field, as_magnitude, unit_phase


@dataclass(frozen=True)
class SupportMask:
    """Boolean partition of the padded grid: True = object zone G1."""

    grid: np.ndarray
    shape: str = "square"
    size: float = 0

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=bool)
        if grid.ndim != 2 or grid.size == 0:
            raise ValueError("mask grid must be a non-empty 2-D boolean array")
        if not grid.any():
            raise ValueError("object zone G1 is empty")
        if grid.all():
            raise ValueError("zero zone G2 is empty; the support must not cover the grid")
        object.__setattr__(self, "grid", grid)

    @property
    def rows(self):
        return self.grid.shape[0]

    @property
    def cols(self):
        return self.grid.shape[1]

    @property
    def g1_size(self):
        """Number of pixels in the object zone."""
        return int(np.count_nonzero(self.grid))


def make_mask(cfg, shape="square", size=None):
    """Build a support mask on the padded grid of ``cfg``.

    square : G1 is the size x size block at the index origin
             (default size = n1, the nominal object side).
    circle : G1 is the set of pixels within Euclidean distance ``size``
             of the center pixel (ceil(size), ceil(size)), so the disk
             hugs the index-origin corner like the square does.
    """
    m1, m2 = cfg.padded_shape
    if shape == "square":
        if size is None:
            size = cfg.n1
        size = int(size)
        if size < 1:
            raise ValueError("square size must be at least 1")
        if size > m1 or size > m2:
            raise ValueError(f"square size {size} exceeds padded grid {(m1, m2)}")
        grid = np.zeros((m1, m2), dtype=bool)
        grid[:size, :size] = True
    elif shape == "circle":
        if size is None:
            raise ValueError("circle mask requires a radius")
        radius = float(size)
        if radius < 0:
            raise ValueError("circle radius must be nonnegative")
        c = int(np.ceil(radius))
        if c + radius > min(m1, m2) - 1:
            raise ValueError(f"circle of radius {radius} exceeds padded grid {(m1, m2)}")
        i1, i2 = np.ogrid[:m1, :m2]
        grid = (i1 - c) ** 2 + (i2 - c) ** 2 <= radius**2
    else:
        raise ValueError(f"unknown mask shape {shape!r}")
    return SupportMask(grid=grid, shape=shape, size=size)


@dataclass(frozen=True)
class HioParams:
    """Solver settings.

    beta may be a scalar in (0, 1] or a per-pixel array (entries in
    [0, 1]) applied on the zero zone.  init selects the starting guess:
    'ones', 'random' (seeded), or an explicit complex array on the padded
    grid.  tol=None uses the scale-free default 1e-8 * sum(a**2).
    """

    beta: object = 0.9
    t_max: int = 1000
    tol: float | None = None
    init: object = "ones"
    seed: int = 0

    def __post_init__(self):
        if np.isscalar(self.beta):
            if not 0.0 < float(self.beta) <= 1.0:
                raise ValueError("scalar beta must be in (0, 1]")
        else:
            b = np.asarray(self.beta, dtype=np.float64)
            if b.ndim != 2 or np.any(b < 0.0) or np.any(b > 1.0):
                raise ValueError("beta grid entries must be in [0, 1]")
        if not isinstance(self.t_max, (int, np.integer)) or self.t_max < 1:
            raise ValueError("t_max must be a positive integer")
        if self.tol is not None and self.tol < 0:
            raise ValueError("tol must be nonnegative")


@dataclass(frozen=True)
class ReconResult:
    """Reconstructed field plus the per-iteration zero-zone energy trace.

    z is the final magnitude-consistent estimate; s_trace[i] is the
    zero-zone energy of the estimate at iteration i+1, so
    compute_S(z, mask) equals the last trace entry.
    """

    z: np.ndarray
    s_trace: np.ndarray
    iterations: int
    converged: bool

    @property
    def final_s(self):
        return float(self.s_trace[-1])


def _g2_rectangles(mask):
    """Slice decomposition of G2 when G1 is a corner rectangle, else None."""
    grid = mask.grid
    m1, m2 = grid.shape
    rows = np.flatnonzero(grid.any(axis=1))
    cols = np.flatnonzero(grid.any(axis=0))
    h = rows[-1] + 1
    w = cols[-1] + 1
    if rows[0] != 0 or cols[0] != 0 or mask.g1_size != h * w:
        return None
    rects = []
    if w < m2:
        rects.append((slice(0, h), slice(w, m2)))
    if h < m1:
        rects.append((slice(h, m1), slice(0, m2)))
    return rects


def _zero_zone_energy(field, g2, rects):
    if rects is not None:
        return float(sum(np.sum(np.abs(field[r]) ** 2) for r in rects))
    return float(np.sum(np.abs(field[g2]) ** 2))


def compute_S(z, mask):
    """Residual energy in the zero zone: sum over G2 of |z|^2."""
    z = as_field(z)
    if z.shape != mask.grid.shape:
        raise ValueError(f"field shape {z.shape} does not match mask {mask.grid.shape}")
    rects = _g2_rectangles(mask)
    return _zero_zone_energy(z, None if rects is not None else ~mask.grid, rects)


def _initial_guess(mask, params):
    m = mask.grid.shape
    if isinstance(params.init, str):
        if params.init == "ones":
            z0 = np.ones(m, dtype=np.complex128)
        elif params.init == "random":
            rng = np.random.default_rng(params.seed)
            z0 = rng.standard_normal(m) + 1j * rng.standard_normal(m)
        else:
            raise ValueError(f"unknown init {params.init!r}")
    else:
        z0 = as_field(params.init, "init")
        if z0.shape != m:
            raise ValueError(f"init shape {z0.shape} does not match mask {m}")
    return np.where(mask.grid, z0, 0.0 + 0.0j)


def hio_run(a, mask, params=HioParams()):
    """Run hybrid input-output until the iteration cap or S <= tol.

    Parameters
    ----------
    a : nonnegative magnitude grid, same shape as the mask
    mask : SupportMask
    params : HioParams

    Returns
    -------
    ReconResult with the final magnitude-consistent estimate, the S
    trace (one entry per completed iteration), and whether the tolerance
    was reached.
    """
    a = as_magnitude(a)
    if a.shape != mask.grid.shape:
        raise ValueError(f"measurement shape {a.shape} does not match mask {mask.grid.shape}")
    if not np.isscalar(params.beta):
        beta = np.asarray(params.beta, dtype=np.float64)
        if beta.shape != a.shape:
            raise ValueError(f"beta grid shape {beta.shape} does not match grid {a.shape}")
    else:
        beta = float(params.beta)

    tol = params.tol if params.tol is not None else 1e-8 * float(np.sum(a * a))
    g1 = mask.grid
    rects = _g2_rectangles(mask)
    g2 = None if rects is not None else ~g1

    z = _initial_guess(mask, params)
    scratch = np.empty_like(z)
    s_trace = []
    converged = False
    estimate = None
    for _ in range(params.t_max):
        pfz = unit_phase(np.fft.fft2(z))
        np.multiply(pfz, a, out=pfz)
        estimate = np.fft.ifft2(pfz)
        s = _zero_zone_energy(estimate, g2, rects)
        s_trace.append(s)
        if s <= tol:
            converged = True
            break
        np.multiply(estimate, beta, out=scratch)
        np.subtract(z, scratch, out=z)
        z[g1] = estimate[g1]
    return ReconResult(
        z=estimate,
        s_trace=np.asarray(s_trace, dtype=np.float64),
        iterations=len(s_trace),
        converged=converged,
    )


def derive_seed(base_seed, *key):
    """Deterministic child seed for run (base, *key); stable across runs."""
    ss = np.random.SeedSequence([int(base_seed), *(int(k) for k in key)])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def multistart(a, mask, params=HioParams(), restarts=1):
    """Best-of-N hybrid input-output with independent random starts.

    With restarts=1 this is exactly :func:`hio_run` with the given
    params.  Otherwise each run uses a random initial guess whose seed is
    derived deterministically from ``params.seed`` and the restart index;
    the result with the smallest final S wins.
    """
    if not isinstance(restarts, (int, np.integer)) or restarts < 1:
        raise ValueError("restarts must be a positive integer")
    if restarts == 1:
        return hio_run(a, mask, params)
    best = None
    for i in range(restarts):
        run_params = replace(params, init="random", seed=derive_seed(params.seed, i))
        result = hio_run(a, mask, run_params)
        if best is None or result.final_s < best.final_s:
            best = result
    return best
