"""On-disk formats: CFLD complex fields, MAG1 magnitude grids, PNG views.

Both binary formats are a single JSON header line terminated by a
newline, followed by the row-major payload in little-endian IEEE-754:

    {"magic": "CFLD1", "rows": R, "cols": C, "dtype": "c128le"}\\n
    ... R*C interleaved (re, im) float64 pairs ...

    {"magic": "MAG1", "rows": R, "cols": C, "dtype": "f64le"}\\n
    ... R*C float64 values, all finite and nonnegative ...

PNG support covers 8- and 16-bit grayscale reading (detector frames) and
16-bit writing for display renderings.
"""

import json

import numpy as np
from PIL import Image

from .field import as_field, as_magnitude

FIELD_MAGIC = "CFLD1"
FIELD_DTYPE = "c128le"
MEAS_MAGIC = "MAG1"
MEAS_DTYPE = "f64le"

_MAX_HEADER = 4096


def _write_header(fh, magic, rows, cols, dtype):
    header = {"magic": magic, "rows": int(rows), "cols": int(cols), "dtype": dtype}
    fh.write(json.dumps(header, sort_keys=True).encode("ascii") + b"\n")


def _read_header(fh, path):
    line = fh.readline(_MAX_HEADER)
    if not line.endswith(b"\n"):
        raise ValueError(f"{path}: missing or oversized header line")
    try:
        header = json.loads(line.decode("ascii"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ValueError(f"{path}: malformed header: {exc}") from exc
    for key in ("magic", "rows", "cols", "dtype"):
        if key not in header:
            raise ValueError(f"{path}: header missing {key!r}")
    rows, cols = header["rows"], header["cols"]
    if not (isinstance(rows, int) and isinstance(cols, int) and rows > 0 and cols > 0):
        raise ValueError(f"{path}: invalid dimensions {rows!r} x {cols!r}")
    return header


def _read_payload(fh, path, rows, cols, dtype):
    itemsize = np.dtype(dtype).itemsize
    expected = rows * cols * itemsize
    buf = fh.read(expected + 1)
    if len(buf) != expected:
        raise ValueError(f"{path}: payload is {len(buf)} bytes, expected {expected}")
    return np.frombuffer(buf, dtype=dtype).reshape(rows, cols)


def write_field(path, values):
    """Write a complex field as CFLD."""
    values = as_field(values)
    with open(path, "wb") as fh:
        _write_header(fh, FIELD_MAGIC, values.shape[0], values.shape[1], FIELD_DTYPE)
        fh.write(np.ascontiguousarray(values, dtype="<c16").tobytes())


def read_field(path):
    """Read a CFLD complex field."""
    with open(path, "rb") as fh:
        header = _read_header(fh, path)
        if header["magic"] != FIELD_MAGIC or header["dtype"] != FIELD_DTYPE:
            raise ValueError(f"{path}: not a {FIELD_MAGIC}/{FIELD_DTYPE} file")
        raw = _read_payload(fh, path, header["rows"], header["cols"], "<c16")
    return as_field(raw.astype(np.complex128), str(path))


def write_measurement(path, values):
    """Write a nonnegative magnitude grid as MAG1."""
    values = as_magnitude(values)
    with open(path, "wb") as fh:
        _write_header(fh, MEAS_MAGIC, values.shape[0], values.shape[1], MEAS_DTYPE)
        fh.write(np.ascontiguousarray(values, dtype="<f8").tobytes())


def read_measurement(path):
    """Read a MAG1 magnitude grid."""
    with open(path, "rb") as fh:
        header = _read_header(fh, path)
        if header["magic"] != MEAS_MAGIC or header["dtype"] != MEAS_DTYPE:
            raise ValueError(f"{path}: not a {MEAS_MAGIC}/{MEAS_DTYPE} file")
        raw = _read_payload(fh, path, header["rows"], header["cols"], "<f8")
    return as_magnitude(raw.astype(np.float64), str(path))


def log_view_u16(a):
    """Map a magnitude grid to 16-bit display values.

    p = 65535 * log10(1 + a) / log10(1 + max(a)); an all-zero grid maps
    to all zeros.
    """
    a = as_magnitude(a)
    peak = float(a.max())
    if peak == 0.0:
        return np.zeros(a.shape, dtype=np.uint16)
    scaled = 65535.0 * np.log10(1.0 + a) / np.log10(1.0 + peak)
    return np.round(scaled).astype(np.uint16)


def linear_view_u16(values):
    """Min-max scale a real grid to the full 16-bit range."""
    values = np.asarray(values, dtype=np.float64)
    lo = float(values.min())
    hi = float(values.max())
    if hi == lo:
        return np.zeros(values.shape, dtype=np.uint16)
    return np.round(65535.0 * (values - lo) / (hi - lo)).astype(np.uint16)


def write_png16(path, values):
    """Write a uint16 grid as 16-bit grayscale PNG."""
    arr = np.asarray(values)
    if arr.dtype != np.uint16 or arr.ndim != 2:
        raise ValueError("expected a 2-D uint16 array")
    Image.fromarray(arr).save(path, format="PNG")


def read_grayscale(path):
    """Read an 8- or 16-bit grayscale PNG as a float grid of counts."""
    with Image.open(path) as img:
        if img.mode not in ("L", "I", "I;16", "I;16B", "I;16L"):
            raise ValueError(f"{path}: unsupported image mode {img.mode!r}; expected grayscale")
        arr = np.asarray(img, dtype=np.float64)
    if arr.ndim != 2:
        raise ValueError(f"{path}: expected a single-channel image")
    return arr


def write_json(path, payload):
    """Write a JSON sidecar with stable key order."""
    with open(path, "w", encoding="ascii") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
