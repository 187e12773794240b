"""Bit-exact binary grid files.

Layout (all little-endian):

    bytes 0..3   magic "FT3D"
    bytes 4..7   version, uint32 (currently 1)
    bytes 8..11  n, uint32 (grid edge)
    byte  12     precision code, uint8: 0=double, 1=single, 2=custom
    byte  13     mantissa bits, uint8
    payload      n^3 interleaved (re, im) pairs, x fastest; float64 pairs for
                 double/custom, float32 pairs for single

Custom-precision payloads are stored as float64 values already rounded to
the declared mantissa width, so no packed encoding is needed and a
write/read/write cycle is byte-identical.  Writes go through a temp file and
an atomic rename, so a failed write never leaves a partial output behind.
"""

import os
import struct
import tempfile

import numpy as np

from .errors import FormatError
from .precision import DOUBLE, SINGLE, PrecisionSpec, round_complex
from .validation import check_cube

MAGIC = b"FT3D"
VERSION = 1

_HEADER = struct.Struct("<4sIIBB")

_CODE_FOR_MODE = {"double": 0, "single": 1, "custom": 2}
_MODE_FOR_CODE = {v: k for k, v in _CODE_FOR_MODE.items()}


def write_tensor(path, tensor, spec: PrecisionSpec = DOUBLE) -> None:
    """Write a grid at the given precision; atomic replace on success."""
    a = check_cube(tensor)
    n = a.shape[0]
    if spec.mode == "single":
        payload = a.astype("<c8").tobytes()
    else:
        payload = round_complex(a, spec).astype("<c16").tobytes()
    header = _HEADER.pack(MAGIC, VERSION, n, _CODE_FOR_MODE[spec.mode], spec.mantissa_bits)

    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".ft3d-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(header)
            fh.write(payload)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_tensor(path):
    """Read a grid file; returns (complex128 array indexed [z,y,x], PrecisionSpec)."""
    with open(path, "rb") as fh:
        raw = fh.read()
    if len(raw) < _HEADER.size:
        raise FormatError(f"{path}: truncated header ({len(raw)} bytes)")
    magic, version, n, code, mantissa = _HEADER.unpack_from(raw)
    if magic != MAGIC:
        raise FormatError(f"{path}: bad magic {magic!r}")
    if version != VERSION:
        raise FormatError(f"{path}: unsupported version {version}")
    if code not in _MODE_FOR_CODE:
        raise FormatError(f"{path}: unknown precision code {code}")
    mode = _MODE_FOR_CODE[code]
    if mode == "custom":
        if not 1 <= mantissa <= 52:
            raise FormatError(f"{path}: invalid mantissa width {mantissa}")
        spec = PrecisionSpec("custom", mantissa)
    else:
        spec = DOUBLE if mode == "double" else SINGLE
        if mantissa != spec.mantissa_bits:
            raise FormatError(f"{path}: mantissa byte {mantissa} inconsistent with {mode}")

    width = 8 if mode == "single" else 16
    expected = n**3 * width
    payload = raw[_HEADER.size :]
    if len(payload) != expected:
        raise FormatError(
            f"{path}: payload is {len(payload)} bytes, expected {expected} for n={n}"
        )
    dtype = "<c8" if mode == "single" else "<c16"
    data = np.frombuffer(payload, dtype=dtype).astype(np.complex128).reshape(n, n, n)
    return data, spec
