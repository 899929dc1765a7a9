"""Detector-frame preprocessing: HDR composition, despeckling, binning.

Raw diffraction frames span an enormous dynamic range, so a usable
magnitude grid is composed from several exposures taken through different
attenuation (each frame carries its linear gain back to a common scale).
Isolated hot pixels are removed against the local median -- a densely
sampled diffraction pattern is locally continuous, so a pixel far above
its neighborhood is detector noise, not signal.
"""

import hashlib
import json
from dataclasses import dataclass

import numpy as np
from scipy import ndimage


@dataclass(frozen=True)
class RawFrame:
    """One detector exposure.

    pixels are raw counts; exposure_scale is the linear factor that maps
    background-subtracted counts back to the common unattenuated scale
    (10**OD for a filter stack of optical density OD); counts at or above
    saturation_level are treated as clipped.
    """

    pixels: np.ndarray
    saturation_level: float
    exposure_scale: float = 1.0

    def __post_init__(self):
        px = np.asarray(self.pixels, dtype=np.float64)
        if px.ndim != 2 or px.size == 0:
            raise ValueError("pixels must be a non-empty 2-D array")
        if not np.all(np.isfinite(px)) or np.any(px < 0):
            raise ValueError("pixels must be finite and nonnegative")
        if self.saturation_level <= 0 or self.exposure_scale <= 0:
            raise ValueError("saturation_level and exposure_scale must be positive")
        object.__setattr__(self, "pixels", px)


@dataclass(frozen=True)
class IngestConfig:
    """Pipeline settings for :func:`to_measurement`.

    crop is (row_offset, col_offset, rows, cols) or None for the full
    frame.  despeckle_threshold=None disables despeckling.  When
    bin_factor does not divide the crop, the window is center-cropped to
    the nearest divisible size (recorded in the provenance).
    """

    bin_factor: int = 1
    crop: tuple | None = None
    despeckle_threshold: float | None = 3.0
    background_level: float = 0.0

    def __post_init__(self):
        if not isinstance(self.bin_factor, (int, np.integer)) or self.bin_factor < 1:
            raise ValueError("bin_factor must be a positive integer")
        if self.crop is not None:
            crop = tuple(int(c) for c in self.crop)
            if len(crop) != 4 or crop[0] < 0 or crop[1] < 0 or crop[2] < 1 or crop[3] < 1:
                raise ValueError("crop must be (row_offset, col_offset, rows, cols)")
            object.__setattr__(self, "crop", crop)
        if self.despeckle_threshold is not None and self.despeckle_threshold <= 1:
            raise ValueError("despeckle_threshold must exceed 1")
        if self.background_level < 0:
            raise ValueError("background_level must be nonnegative")


def hdr_compose(frames, background_level=0.0):
    """Merge exposures into one grid on the common unattenuated scale.

    A pixel of a frame is valid when strictly below that frame's
    saturation level and strictly above the background.  Valid estimates
    exposure_scale*(counts - background) are averaged with weights
    proportional to the raw counts, so better-exposed frames dominate.
    Pixels valid in no frame fall back to the estimate of the
    highest-gain frame and are flagged False in the returned mask.

    Returns
    -------
    (composite, valid) : float grid and boolean per-pixel validity mask.
    """
    frames = list(frames)
    if not frames:
        raise ValueError("at least one frame is required")
    shape = frames[0].pixels.shape
    for f in frames:
        if f.pixels.shape != shape:
            raise ValueError(f"frame shapes differ: {f.pixels.shape} vs {shape}")

    weight_sum = np.zeros(shape)
    estimate_sum = np.zeros(shape)
    for f in frames:
        valid = (f.pixels < f.saturation_level) & (f.pixels > background_level)
        est = f.exposure_scale * (f.pixels - background_level)
        w = np.where(valid, f.pixels, 0.0)
        weight_sum += w
        estimate_sum += w * est

    covered = weight_sum > 0.0
    fallback = max(frames, key=lambda f: f.exposure_scale)
    fb_est = fallback.exposure_scale * (fallback.pixels - background_level)
    composite = np.where(covered, estimate_sum / np.where(covered, weight_sum, 1.0), fb_est)
    return composite, covered


def despeckle(m, threshold=3.0):
    """Replace pixels far above their 8-neighborhood median.

    A pixel strictly exceeding threshold times the median of its eight
    surrounding pixels is set to that median; everything else is
    untouched.  Idempotent for isolated spikes.
    """
    if threshold <= 1:
        raise ValueError("threshold must exceed 1")
    m = np.asarray(m, dtype=np.float64)
    ring = np.ones((3, 3), dtype=bool)
    ring[1, 1] = False
    med = ndimage.median_filter(m, footprint=ring, mode="mirror")
    return np.where(m > threshold * med, med, m)


def bin_average(m, factor):
    """Reduce resolution by averaging factor x factor blocks."""
    m = np.asarray(m, dtype=np.float64)
    if not isinstance(factor, (int, np.integer)) or factor < 1:
        raise ValueError("factor must be a positive integer")
    rows, cols = m.shape
    if rows % factor or cols % factor:
        raise ValueError(f"factor {factor} does not divide grid {m.shape}")
    return m.reshape(rows // factor, factor, cols // factor, factor).mean(axis=(1, 3))


def _center_crop_divisible(m, factor):
    rows, cols = m.shape
    new_rows = (rows // factor) * factor
    new_cols = (cols // factor) * factor
    if new_rows == 0 or new_cols == 0:
        raise ValueError(f"grid {m.shape} too small for bin factor {factor}")
    r0 = (rows - new_rows) // 2
    c0 = (cols - new_cols) // 2
    return m[r0 : r0 + new_rows, c0 : c0 + new_cols], (r0, c0, new_rows, new_cols)


def to_measurement(m, cfg):
    """Crop, despeckle, bin, and clamp a grid into a valid measurement.

    Returns the nonnegative measurement grid together with a provenance
    record (input hash, resolved configuration, effective windows) that
    suffices to re-run the pipeline bit-identically.
    """
    m = np.asarray(m, dtype=np.float64)
    if m.ndim != 2 or m.size == 0:
        raise ValueError("input grid must be a non-empty 2-D array")
    if not np.all(np.isfinite(m)):
        raise ValueError("input grid contains non-finite values")
    input_hash = hashlib.sha256(np.ascontiguousarray(m).tobytes()).hexdigest()

    if cfg.crop is not None:
        r0, c0, rows, cols = cfg.crop
        if r0 + rows > m.shape[0] or c0 + cols > m.shape[1]:
            raise ValueError(f"crop {cfg.crop} exceeds grid {m.shape}")
        work = m[r0 : r0 + rows, c0 : c0 + cols]
        crop_effective = cfg.crop
    else:
        work = m
        crop_effective = (0, 0, m.shape[0], m.shape[1])

    if cfg.despeckle_threshold is not None:
        work = despeckle(work, cfg.despeckle_threshold)

    bin_window = None
    if work.shape[0] % cfg.bin_factor or work.shape[1] % cfg.bin_factor:
        work, bin_window = _center_crop_divisible(work, cfg.bin_factor)
    out = np.maximum(bin_average(work, cfg.bin_factor), 0.0)

    provenance = {
        "input_sha256": input_hash,
        "input_shape": list(m.shape),
        "crop": list(crop_effective),
        "bin_window": list(bin_window) if bin_window is not None else None,
        "bin_factor": int(cfg.bin_factor),
        "despeckle_threshold": cfg.despeckle_threshold,
        "background_level": cfg.background_level,
        "output_shape": list(out.shape),
    }
    return out, provenance


def provenance_json(provenance):
    """Canonical JSON text for a provenance record."""
    return json.dumps(provenance, indent=2, sort_keys=True)
