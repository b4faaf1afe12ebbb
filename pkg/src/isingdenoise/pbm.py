"""Portable-bitmap codec plus the trace CSV and run-summary JSON writers.

Netpbm conventions: magic P1 (ASCII) or P4 (packed binary), optional
'#'-comments in the header, width then height, then the raster. Bit/char
0 is white and maps to spin +1; 1 is black and maps to spin -1. P4 rows
are padded to whole bytes, most significant bit first.
"""

from __future__ import annotations

import json

import numpy as np

from .metrics import EnergyTrace, agreement_percent
from .model import SpinImage

__all__ = [
    "PbmParseError",
    "load_pbm",
    "save_pbm",
    "pbm_format",
    "write_trace_csv",
    "run_summary",
    "write_summary_json",
]

_WHITESPACE = b" \t\n\r\x0b\x0c"

# Plain-format lines should stay at or under 70 characters.
_P1_TOKENS_PER_LINE = 35


class PbmParseError(ValueError):
    """Malformed PBM input; carries the byte offset of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


def _skip_space_and_comments(data: bytes, pos: int) -> int:
    while pos < len(data):
        c = data[pos:pos + 1]
        if c in _WHITESPACE:
            pos += 1
        elif c == b"#":
            while pos < len(data) and data[pos:pos + 1] not in (b"\n", b"\r"):
                pos += 1
        else:
            break
    return pos


def _read_int(data: bytes, pos: int, what: str) -> tuple[int, int]:
    start = pos
    while pos < len(data) and data[pos:pos + 1].isdigit():
        pos += 1
    if pos == start:
        raise PbmParseError(f"expected {what} digits", start)
    return int(data[start:pos]), pos


def pbm_format(data: bytes) -> str:
    """The magic of a PBM payload, 'P1' or 'P4'."""
    magic = bytes(data[:2])
    if magic not in (b"P1", b"P4"):
        raise PbmParseError(
            f"unsupported magic {magic!r}, expected b'P1' or b'P4'", 0
        )
    return magic.decode("ascii")


def _parse_header(data: bytes) -> tuple[str, int, int, int]:
    if len(data) < 2:
        raise PbmParseError("input too short for a PBM magic number", 0)
    fmt = pbm_format(data)
    pos = 2
    if pos >= len(data) or data[pos:pos + 1] not in _WHITESPACE + b"#":
        raise PbmParseError("expected whitespace after the magic number", pos)
    pos = _skip_space_and_comments(data, pos)
    width, pos = _read_int(data, pos, "width")
    pos = _skip_space_and_comments(data, pos)
    height, pos = _read_int(data, pos, "height")
    if width < 1 or height < 1:
        raise PbmParseError(f"dimensions must be positive, got {width}x{height}", pos)
    return fmt, width, height, pos


def load_pbm(data: bytes) -> SpinImage:
    """Decode a P1 or P4 payload into a SpinImage (white -> +1, black -> -1)."""
    data = bytes(data)
    fmt, width, height, pos = _parse_header(data)
    n = width * height
    if fmt == "P1":
        spins = np.empty(n, dtype=np.int8)
        count = 0
        while count < n:
            pos = _skip_space_and_comments(data, pos)
            if pos >= len(data):
                raise PbmParseError(
                    f"raster ended after {count} of {n} pixels", len(data)
                )
            c = data[pos:pos + 1]
            if c == b"0":
                spins[count] = 1
            elif c == b"1":
                spins[count] = -1
            else:
                raise PbmParseError(
                    f"invalid raster character {c!r}, expected '0' or '1'", pos
                )
            count += 1
            pos += 1
        pos = _skip_space_and_comments(data, pos)
        if pos != len(data):
            raise PbmParseError("trailing data after the raster", pos)
        return SpinImage(width, height, spins)

    # P4: exactly one whitespace byte separates the header from the raster
    if pos >= len(data) or data[pos:pos + 1] not in _WHITESPACE:
        raise PbmParseError("expected a single whitespace byte before the raster", pos)
    pos += 1
    row_bytes = (width + 7) // 8
    need = height * row_bytes
    if len(data) - pos < need:
        raise PbmParseError(
            f"raster truncated: need {need} bytes, found {len(data) - pos}",
            len(data),
        )
    if len(data) - pos > need:
        raise PbmParseError("trailing data after the raster", pos + need)
    rows = np.frombuffer(data, dtype=np.uint8, count=need, offset=pos)
    bits = np.unpackbits(rows.reshape(height, row_bytes), axis=1)[:, :width]
    spins = np.where(bits == 1, -1, 1).astype(np.int8)
    return SpinImage(width, height, spins)


def save_pbm(image: SpinImage, fmt: str) -> bytes:
    """Encode an image as P1 or P4 bytes; load_pbm inverts this exactly."""
    if fmt not in ("P1", "P4"):
        raise ValueError(f"format must be 'P1' or 'P4', got {fmt!r}")
    header = f"{fmt}\n{image.width} {image.height}\n".encode("ascii")
    grid = image.spins.reshape(image.height, image.width)
    if fmt == "P1":
        lines = []
        for row in grid:
            tokens = ["1" if v == -1 else "0" for v in row]
            for i in range(0, len(tokens), _P1_TOKENS_PER_LINE):
                lines.append(" ".join(tokens[i:i + _P1_TOKENS_PER_LINE]))
        return header + ("\n".join(lines) + "\n").encode("ascii")
    bits = (grid == -1).astype(np.uint8)
    return header + np.packbits(bits, axis=1).tobytes()


def load_pbm_file(path) -> SpinImage:
    with open(path, "rb") as f:
        return load_pbm(f.read())


def save_pbm_file(image: SpinImage, path, fmt: str) -> None:
    with open(path, "wb") as f:
        f.write(save_pbm(image, fmt))


def write_trace_csv(trace: EnergyTrace) -> bytes:
    """Render a trace as 'sweep,energy' CSV rows.

    Energies use Python's shortest round-trip float representation, which
    preserves the value exactly (and well beyond 12 significant digits
    when they are needed).
    """
    lines = ["sweep,energy"]
    for sweep, e in trace:
        lines.append(f"{sweep},{e!r}")
    return ("\n".join(lines) + "\n").encode("ascii")


def run_summary(method: str, params, k_max: int, seed,
                report, noisy: SpinImage,
                original: SpinImage | None = None) -> dict:
    """The documented summary record for one denoise run.

    agreement_vs_original_percent is null when no reference image is
    available; agreement_vs_noisy_percent always compares the restored
    image against the optimizer's input.
    """
    return {
        "method": method,
        "params": {"h": params.h, "beta": params.beta, "eta": params.eta},
        "k_max": k_max,
        "seed": seed,
        "final_energy": report.final_energy,
        "best_energy": report.best_energy,
        "agreement_vs_original_percent": (
            None if original is None
            else agreement_percent(report.restored, original)
        ),
        "agreement_vs_noisy_percent": agreement_percent(report.restored, noisy),
        "flips_accepted": report.flips_accepted,
        "sweeps_run": report.sweeps_run,
    }


def write_summary_json(summary: dict) -> bytes:
    return (json.dumps(summary, indent=2) + "\n").encode("ascii")
