"""Command-line driver: simulate | reconstruct | sweep | mix | ingest.

Every command is a pure function of its input files and resolved
parameters: outputs land in --out together with a config echo
(``config_echo.txt``, one ``key = value`` line per parameter) that
re-runs the command bit-identically.  Values given on the command line
override values from --config; unset parameters fall back to defaults.
The master seed defaults to 0.
"""

import argparse
import os
import sys

import numpy as np

from . import analysis, fileio, ingest
from .field import SamplingConfig, embed, hft_forward, unit_phase
from .hio import HioParams, make_mask, multistart
from .noise import NoiseParams, add_noise

# parameter table per command: name -> (type tag, default); None = required
_COMMON = {"seed": ("int", 0), "out": ("str", None)}

_PARAMS = {
    "simulate": {
        "object": ("str", None),
        "r": ("int", 1),
        "rnoi": ("float", 0.0),
        "anoi": ("float", 0.0),
        **_COMMON,
    },
    "reconstruct": {
        "measurement": ("str", None),
        "r": ("int", None),
        "mask_shape": ("str", "square"),
        "mask_size": ("float", -1.0),
        "beta": ("float", 0.9),
        "iters": ("int", 1000),
        "tol": ("float", -1.0),
        "init": ("str", "ones"),
        "restarts": ("int", 1),
        "truth": ("str", ""),
        **_COMMON,
    },
    "sweep": {
        "measurement": ("str", None),
        "r": ("int", None),
        "sizes": ("intlist", None),
        "runs_per_size": ("int", 1),
        "beta": ("float", 0.9),
        "iters": ("int", 1000),
        "tol": ("float", -1.0),
        **_COMMON,
    },
    "mix": {
        "o1": ("str", None),
        "o2": ("str", "ones"),
        "r": ("int", 1),
        "rnoi": ("float", 0.0),
        "anoi": ("float", 0.0),
        **_COMMON,
    },
    "ingest": {
        "frames": ("strlist", None),
        "scales": ("floatlist", (1.0,)),
        "saturation": ("float", 65535.0),
        "background": ("float", 0.0),
        "despeckle": ("float", 3.0),
        "bin_factor": ("int", 1),
        "crop": ("intlist", ()),
        **_COMMON,
    },
}


def _parse_value(tag, text):
    text = text.strip()
    if tag == "int":
        return int(text)
    if tag == "float":
        return float(text)
    if tag == "str":
        return text
    if tag in ("intlist", "floatlist", "strlist"):
        if not text:
            return ()
        if tag == "intlist" and ":" in text:
            lo, hi = text.split(":")
            return tuple(range(int(lo), int(hi) + 1))
        cast = {"intlist": int, "floatlist": float, "strlist": str}[tag]
        return tuple(cast(part.strip()) for part in text.split(","))
    raise ValueError(f"unknown parameter type {tag!r}")


def _format_value(value):
    if isinstance(value, tuple):
        return ",".join(str(v) for v in value)
    return str(value)


def parse_config(path):
    """Read a key = value config file into a dict of strings."""
    values = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value'")
            key, _, raw = line.partition("=")
            values[key.strip()] = raw.strip()
    return values


def _resolve(command, args):
    table = _PARAMS[command]
    file_values = parse_config(args.config) if args.config else {}
    unknown = set(file_values) - set(table)
    if unknown:
        raise ValueError(f"unknown config keys for {command}: {sorted(unknown)}")
    resolved = {}
    for name, (tag, default) in table.items():
        flag_value = getattr(args, name)
        if flag_value is not None:
            resolved[name] = _parse_value(tag, flag_value)
        elif name in file_values:
            resolved[name] = _parse_value(tag, file_values[name])
        elif default is not None:
            resolved[name] = default
        else:
            raise ValueError(f"missing required parameter --{name.replace('_', '-')}")
    return resolved


def _write_echo(out_dir, resolved):
    lines = [f"{key} = {_format_value(resolved[key])}" for key in sorted(resolved)]
    path = os.path.join(out_dir, "config_echo.txt")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def _out_dir(resolved):
    out = resolved["out"]
    os.makedirs(out, exist_ok=True)
    return out


def _sampling_from_measurement(a, r):
    rows, cols = a.shape
    if rows % r or cols % r:
        raise ValueError(f"measurement {a.shape} is not divisible by r={r}")
    return SamplingConfig(rows // r, cols // r, r)


def _hio_params(resolved):
    tol = None if resolved["tol"] < 0 else resolved["tol"]
    return HioParams(
        beta=resolved["beta"],
        t_max=resolved["iters"],
        tol=tol,
        init=resolved.get("init", "ones"),
        seed=resolved["seed"],
    )


def cmd_simulate(resolved):
    obj = fileio.read_field(resolved["object"])
    cfg = SamplingConfig(obj.shape[0], obj.shape[1], resolved["r"])
    a = np.abs(hft_forward(obj, cfg))
    noisy = add_noise(a, NoiseParams(resolved["rnoi"], resolved["anoi"], resolved["seed"]))
    out = _out_dir(resolved)
    fileio.write_measurement(os.path.join(out, "measurement.mag1"), noisy)
    fileio.write_png16(os.path.join(out, "measurement.png"), fileio.log_view_u16(noisy))
    _write_echo(out, resolved)
    return 0


def cmd_reconstruct(resolved):
    a = fileio.read_measurement(resolved["measurement"])
    cfg = _sampling_from_measurement(a, resolved["r"])
    size = resolved["mask_size"] if resolved["mask_size"] >= 0 else cfg.n1
    mask = make_mask(cfg, resolved["mask_shape"], size)
    params = _hio_params(resolved)
    result = multistart(a, mask, params, resolved["restarts"])

    out = _out_dir(resolved)
    fileio.write_field(os.path.join(out, "recon.cfld"), result.z)
    block = result.z[: cfg.n1, : cfg.n2]
    fileio.write_png16(os.path.join(out, "recon_real.png"), fileio.linear_view_u16(block.real))
    fileio.write_png16(os.path.join(out, "recon_imag.png"), fileio.linear_view_u16(block.imag))
    fileio.write_png16(os.path.join(out, "recon_phase.png"), fileio.linear_view_u16(np.angle(block)))
    sidecar = {
        "iterations": result.iterations,
        "converged": result.converged,
        "s_trace": [float(s) for s in result.s_trace],
        "params": {key: _format_value(resolved[key]) for key in sorted(resolved)},
    }
    fileio.write_json(os.path.join(out, "recon.json"), sidecar)

    if resolved["truth"]:
        truth_obj = fileio.read_field(resolved["truth"])
        if truth_obj.shape == (cfg.n1, cfg.n2):
            truth = np.zeros(cfg.padded_shape, dtype=np.complex128)
            truth[: cfg.n1, : cfg.n2] = truth_obj
        elif truth_obj.shape == cfg.padded_shape:
            truth = truth_obj
        else:
            raise ValueError(f"truth shape {truth_obj.shape} matches neither object nor padded grid")
        report = analysis.align_and_error(result.z, truth, mask)
        fileio.write_json(
            os.path.join(out, "alignment.json"),
            {
                "flipped": report.flipped,
                "global_phase": report.global_phase,
                "rel_error": report.rel_error,
            },
        )
    _write_echo(out, resolved)
    return 0


def cmd_sweep(resolved):
    a = fileio.read_measurement(resolved["measurement"])
    cfg = _sampling_from_measurement(a, resolved["r"])
    report = analysis.support_sweep(
        a, cfg, resolved["sizes"], _hio_params(resolved), resolved["runs_per_size"]
    )
    out = _out_dir(resolved)
    with open(os.path.join(out, "sweep.csv"), "w", encoding="ascii") as fh:
        fh.write("size,mean_log_s,runs\n")
        for size, mean_log_s in zip(report.sizes, report.mean_log_s):
            fh.write(f"{size},{mean_log_s:.6f},{report.runs_per_size}\n")
    _write_echo(out, resolved)
    return 0


def cmd_mix(resolved):
    o1 = fileio.read_field(resolved["o1"])
    cfg = SamplingConfig(o1.shape[0], o1.shape[1], resolved["r"])
    if resolved["o2"] == "ones":
        o2 = np.ones(o1.shape, dtype=np.complex128)
    else:
        o2 = fileio.read_field(resolved["o2"])

    if resolved["rnoi"] == 0.0 and resolved["anoi"] == 0.0:
        omix = analysis.phase_mix(o1, o2, cfg)
    else:
        mag = np.abs(np.fft.fft2(embed(o1, cfg)))
        noisy = add_noise(mag, NoiseParams(resolved["rnoi"], resolved["anoi"], resolved["seed"]))
        omix = np.fft.ifft2(noisy * unit_phase(np.fft.fft2(embed(o2, cfg))))

    out = _out_dir(resolved)
    fileio.write_field(os.path.join(out, "mix.cfld"), omix)
    block = omix[: cfg.n1, : cfg.n2]
    fileio.write_png16(os.path.join(out, "mix_imag.png"), fileio.linear_view_u16(block.imag))
    _write_echo(out, resolved)
    return 0


def cmd_ingest(resolved):
    frames = resolved["frames"]
    scales = resolved["scales"]
    if len(scales) == 1 and len(frames) > 1:
        scales = scales * len(frames)
    if len(scales) != len(frames):
        raise ValueError(f"{len(frames)} frames but {len(scales)} scales")

    raw_frames = []
    for path, scale in zip(frames, scales):
        if path.endswith(".mag1"):
            pixels = fileio.read_measurement(path)
        else:
            pixels = fileio.read_grayscale(path)
        raw_frames.append(
            ingest.RawFrame(pixels=pixels, saturation_level=resolved["saturation"], exposure_scale=scale)
        )
    composite, valid = ingest.hdr_compose(raw_frames, resolved["background"])

    crop = tuple(resolved["crop"]) if resolved["crop"] else None
    cfg = ingest.IngestConfig(
        bin_factor=resolved["bin_factor"],
        crop=crop,
        despeckle_threshold=resolved["despeckle"] if resolved["despeckle"] > 0 else None,
        background_level=resolved["background"],
    )
    measurement, provenance = ingest.to_measurement(composite, cfg)
    provenance["frames"] = list(frames)
    provenance["scales"] = list(scales)
    provenance["valid_fraction"] = float(np.mean(valid))

    out = _out_dir(resolved)
    fileio.write_measurement(os.path.join(out, "measurement.mag1"), measurement)
    with open(os.path.join(out, "provenance.json"), "w", encoding="ascii") as fh:
        fh.write(ingest.provenance_json(provenance) + "\n")
    _write_echo(out, resolved)
    return 0


_HANDLERS = {
    "simulate": cmd_simulate,
    "reconstruct": cmd_reconstruct,
    "sweep": cmd_sweep,
    "mix": cmd_mix,
    "ingest": cmd_ingest,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hftphase",
        description="Phase retrieval from a single densely sampled diffraction magnitude.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for command, table in _PARAMS.items():
        p = sub.add_parser(command)
        p.add_argument("--config", default=None, help="key = value parameter file")
        for name in table:
            p.add_argument(f"--{name.replace('_', '-')}", dest=name, default=None)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        resolved = _resolve(args.command, args)
        return _HANDLERS[args.command](resolved)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
