"""Byte-exact file formats for build results.

LBPS (succinct tree):  magic "LBPS", version byte 1, n as 64-bit
little-endian, then ceil((2n+2)/8) payload bytes, bits packed
most-significant-first, open = 1, zero padding in the final byte.

LYAR (plain array):  magic "LYAR", version byte 1, width byte (4 or 8),
n as 64-bit little-endian, then n little-endian values of that width.
Values are the Lyndon lengths; consumers derive nss(i) = i + value[i].

Both formats are byte-stable: identical inputs produce identical files.
"""

from __future__ import annotations

import struct

import numpy as np

from .errors import IntegrityError

LBPS_MAGIC = b"LBPS"
LYAR_MAGIC = b"LYAR"
VERSION = 1


def pack_lbps(n: int, payload: bytes) -> bytes:
    nbytes = (2 * n + 2 + 7) // 8
    if len(payload) != nbytes:
        raise IntegrityError(f"payload is {len(payload)} bytes, expected {nbytes}")
    return LBPS_MAGIC + bytes([VERSION]) + struct.pack("<Q", n) + payload


def unpack_lbps(blob: bytes):
    """(n, payload) from an LBPS blob; raises IntegrityError when malformed."""
    if len(blob) < 13 or blob[:4] != LBPS_MAGIC:
        raise IntegrityError("not an LBPS file")
    if blob[4] != VERSION:
        raise IntegrityError(f"unsupported LBPS version {blob[4]}")
    (n,) = struct.unpack_from("<Q", blob, 5)
    nbytes = (2 * n + 2 + 7) // 8
    payload = blob[13 : 13 + nbytes]
    if len(payload) != nbytes or len(blob) != 13 + nbytes:
        raise IntegrityError("LBPS payload truncated or oversized")
    return n, payload


def pack_lyar(values: np.ndarray) -> bytes:
    n = len(values)
    if values.dtype == np.uint32:
        width = 4
    elif values.dtype == np.uint64:
        width = 8
    else:
        raise IntegrityError(f"unsupported value dtype {values.dtype}")
    head = LYAR_MAGIC + bytes([VERSION, width]) + struct.pack("<Q", n)
    return head + values.astype(values.dtype.newbyteorder("<")).tobytes()


def unpack_lyar(blob: bytes) -> np.ndarray:
    if len(blob) < 14 or blob[:4] != LYAR_MAGIC:
        raise IntegrityError("not an LYAR file")
    if blob[4] != VERSION:
        raise IntegrityError(f"unsupported LYAR version {blob[4]}")
    width = blob[5]
    if width not in (4, 8):
        raise IntegrityError(f"unsupported LYAR width {width}")
    (n,) = struct.unpack_from("<Q", blob, 6)
    body = blob[14:]
    if len(body) != n * width:
        raise IntegrityError("LYAR body truncated or oversized")
    dtype = np.dtype("<u4" if width == 4 else "<u8")
    return np.frombuffer(body, dtype=dtype).astype(
        np.uint32 if width == 4 else np.uint64
    )


def write_file(path, blob: bytes) -> None:
    with open(path, "wb") as fh:
        fh.write(blob)


def read_file(path) -> bytes:
    with open(path, "rb") as fh:
        return fh.read()
