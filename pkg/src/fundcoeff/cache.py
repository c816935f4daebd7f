"""Optional on-disk memo for exact q-expansions.

Active only when FUNDCOEFF_CACHE_DIR is set. One file per key: the magic
header b"FCQ1", the key's repr, then length-prefixed gmpy2 binary integers.
"""
from __future__ import annotations

import hashlib
import os
import struct
from pathlib import Path
from typing import List, Optional

import gmpy2

MAGIC = b"FCQ1"
ENV = "FUNDCOEFF_CACHE_DIR"


def _path(key) -> Optional[Path]:
    root = os.environ.get(ENV)
    if not root:
        return None
    h = hashlib.sha256(repr(key).encode()).hexdigest()[:32]
    return Path(root) / f"{h}.fcq"


def store(key, values: List[int]) -> None:
    p = _path(key)
    if p is None:
        return
    p.parent.mkdir(parents=True, exist_ok=True)
    kb = repr(key).encode()
    parts = [MAGIC, struct.pack("<I", len(kb)), kb, struct.pack("<Q", len(values))]
    for v in values:
        b = gmpy2.to_binary(gmpy2.mpz(v))
        parts.append(struct.pack("<I", len(b)))
        parts.append(b)
    tmp = p.with_suffix(".tmp")
    tmp.write_bytes(b"".join(parts))
    os.replace(tmp, p)


def load(key) -> Optional[List[int]]:
    p = _path(key)
    if p is None or not p.exists():
        return None
    data = p.read_bytes()
    if data[:4] != MAGIC:
        return None
    (klen,) = struct.unpack_from("<I", data, 4)
    pos = 8
    if data[pos: pos + klen] != repr(key).encode():
        return None
    pos += klen
    (count,) = struct.unpack_from("<Q", data, pos)
    pos += 8
    out = []
    for _ in range(count):
        (ln,) = struct.unpack_from("<I", data, pos)
        pos += 4
        out.append(int(gmpy2.from_binary(data[pos: pos + ln])))
        pos += ln
    return out
