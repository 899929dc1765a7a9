"""Dense Fourier sampling of a complex field via zero-padded transforms.

A complex object of size n1 x n2 is measured in the far field on a grid
whose frequency spacing is 1/r of the orthogonal DFT grid.  Sampling the
transform at those fractional frequencies is identical to taking the
plain DFT of the object embedded in an (n1*r) x (n2*r) array of zeros,
which is how everything here is computed.

Conventions, fixed across the package:

* forward transform is the unnormalized DFT with kernel exp(-2*pi*i*n*k/M);
* inverse transform carries the 1/(M1*M2) factor, so inverse(forward(x))
  is the identity;
* the object occupies the index-origin (top-left) corner of the padded
  grid; that corner block is the object zone G1, the zero padding is the
  zero zone G2;
* "shifted" views move the zero-frequency sample to the center by a
  circular shift of floor(M/2) per axis, for display and table comparison
  only -- never inside iterative solvers.
"""

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class SamplingConfig:
    """Object dimensions and the per-axis oversampling factor r.

    The measurement grid has shape (n1*r, n2*r); the sampling ratio
    (density of measurements relative to an orthogonal DFT) is r**2.
    """

    n1: int
    n2: int
    r: int = 1

    def __post_init__(self):
        for name in ("n1", "n2", "r"):
            v = getattr(self, name)
            if not isinstance(v, (int, np.integer)) or v < 1:
                raise ValueError(f"{name} must be a positive integer, got {v!r}")

    @property
    def padded_shape(self):
        """Shape (m1, m2) of the zero-padded grid."""
        return (self.n1 * self.r, self.n2 * self.r)

    @property
    def sampling_ratio(self):
        """Measurement density relative to the orthogonal DFT grid: r**2."""
        return self.r * self.r


def as_field(values, name="field"):
    """Coerce to a 2-D complex128 array and reject non-finite entries."""
    arr = np.asarray(values, dtype=np.complex128)
    if arr.ndim != 2 or arr.size == 0:
        raise ValueError(f"{name} must be a non-empty 2-D array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
        raise ValueError(f"{name} contains non-finite values")
    return arr


def as_magnitude(values, name="magnitude"):
    """Coerce to a 2-D float64 array of finite, nonnegative entries."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 2 or arr.size == 0:
        raise ValueError(f"{name} must be a non-empty 2-D array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    if np.any(arr < 0):
        raise ValueError(f"{name} contains negative values")
    return arr


def embed(obj, cfg):
    """Place the object in the G1 corner of an all-zero padded grid.

    Parameters
    ----------
    obj : (n1, n2) complex array
    cfg : SamplingConfig

    Returns
    -------
    (n1*r, n2*r) complex array, zero outside the leading n1 x n2 block.
    """
    obj = as_field(obj, "object")
    if obj.shape != (cfg.n1, cfg.n2):
        raise ValueError(f"object shape {obj.shape} does not match config {(cfg.n1, cfg.n2)}")
    out = np.zeros(cfg.padded_shape, dtype=np.complex128)
    out[: cfg.n1, : cfg.n2] = obj
    return out


def extract(field, cfg):
    """Return a copy of the G1 corner block of a padded field."""
    field = as_field(field)
    if field.shape != cfg.padded_shape:
        raise ValueError(f"field shape {field.shape} does not match padded {cfg.padded_shape}")
    return field[: cfg.n1, : cfg.n2].copy()


def hft_forward(obj, cfg):
    """Transform the object to the dense (fractional-frequency) k grid.

    Equals the unnormalized DFT of ``embed(obj, cfg)``.  With r=1 this is
    the ordinary DFT of the object.
    """
    return np.fft.fft2(embed(obj, cfg))


def hft_inverse(field, cfg):
    """Inverse of :func:`hft_forward`, normalized by 1/(m1*m2).

    Maps a padded k-grid field back to the padded object grid, so that
    ``hft_inverse(hft_forward(o, cfg), cfg) == embed(o, cfg)`` up to
    floating-point error.
    """
    field = as_field(field)
    if field.shape != cfg.padded_shape:
        raise ValueError(f"field shape {field.shape} does not match padded {cfg.padded_shape}")
    return np.fft.ifft2(field)


def shifted_magnitude(field):
    """Magnitude with the zero-frequency sample moved to the grid center.

    Display/table helper: circular shift by floor(M/2) per axis.
    """
    return np.fft.fftshift(np.abs(np.asarray(field)))


def unit_phase(field):
    """Return field/|field| with the zero-magnitude convention.

    Where |field| < 1e-300 the phase factor is defined as 1 (phase zero),
    keeping the operation total and deterministic.
    """
    field = np.asarray(field, dtype=np.complex128)
    mag = np.abs(field)
    small = mag < 1e-300
    np.maximum(mag, 1e-300, out=mag)
    out = field / mag
    if small.any():
        out[small] = 1.0 + 0.0j
    return out


def _sinc(u):
    """sin(pi*u)/(pi*u) with exact values at integers.

    Returns 1.0 at u=0 and exactly 0.0 at every nonzero integer, so that
    orthogonality of integer-spaced measurements is exact rather than
    rounded.
    """
    u = float(u)
    if not math.isfinite(u):
        raise ValueError("offset must be finite")
    n = round(u)
    if u == n:
        return 1.0 if n == 0 else 0.0
    return math.sin(math.pi * u) / (math.pi * u)


def inner_product(u1, u2):
    """Overlap of two measurement vectors separated by (u1, u2).

    Offsets are k-space separations in units of lambda/l (l = window side).
    For the centered window the overlap is real and separable:

        P(u1, u2) = sinc(u1) * sinc(u2),   sinc(u) = sin(pi*u)/(pi*u).

    It is 1 at (0, 0), exactly 0 whenever u1 or u2 is a nonzero integer,
    and |P| <= 1 everywhere.
    """
    return _sinc(u1) * _sinc(u2)


def inner_product_general(u1, u2, w1_over_l, w2_over_l):
    """Complex overlap for an arbitrary window origin (w1, w2).

    The window spans [w, w+l] per axis; ``w1_over_l``/``w2_over_l`` give
    the origin in units of l.  Per axis the overlap is

        exp(i*pi*u*(2*w/l + 1)) * sinc(u),

    so the modulus never depends on the window origin and the centered
    case w/l = -1/2 reduces to :func:`inner_product` exactly.
    """
    out = 1.0 + 0.0j
    for u, wl in ((u1, w1_over_l), (u2, w2_over_l)):
        u = float(u)
        wl = float(wl)
        if not (math.isfinite(u) and math.isfinite(wl)):
            raise ValueError("offset and window origin must be finite")
        out *= complex(math.cos(math.pi * u * (2.0 * wl + 1.0)),
                       math.sin(math.pi * u * (2.0 * wl + 1.0))) * _sinc(u)
    return out


def coeff_ratio(k, r, j1, j2):
    """Ratio of overlap-coefficient changes when a sample moves by 1/r.

    For a 1-D sample moving from k to k' = k + 1/r (all in units of
    lambda/l), the coefficient on the integer measurement j changes by
    dP_j = P(k'-j) - P(k-j).  Returns dP_j1 / dP_j2.

    Raises if the denominator change vanishes (degenerate offsets).
    """
    if not isinstance(r, (int, np.integer)) or r < 1:
        raise ValueError(f"r must be a positive integer, got {r!r}")
    k = float(k)
    kp = k + 1.0 / r
    num = _sinc(kp - j1) - _sinc(k - j1)
    den = _sinc(kp - j2) - _sinc(k - j2)
    if den == 0.0:
        raise ValueError(f"degenerate offsets: coefficient change for j2={j2} is zero")
    return num / den
