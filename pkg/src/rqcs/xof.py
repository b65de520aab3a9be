"""Deterministic bit streams from SHAKE-256 in counter mode."""

from __future__ import annotations

import hashlib


class Xof:
    """Byte/bit source with the ``getrandbits`` interface of ``random.Random``.

    Block i of the stream is SHAKE-256(seed || i as 8 little-endian bytes)
    truncated to 136 bytes.
    """

    BLOCK = 136

    def __init__(self, seed: bytes):
        self.seed = bytes(seed)
        self._counter = 0
        self._buf = bytearray()

    def read(self, k: int) -> bytes:
        while len(self._buf) < k:
            h = hashlib.shake_256(self.seed + self._counter.to_bytes(8, "little"))
            self._buf += h.digest(self.BLOCK)
            self._counter += 1
        out = bytes(self._buf[:k])
        del self._buf[:k]
        return out

    def getrandbits(self, k: int) -> int:
        if k <= 0:
            return 0
        v = int.from_bytes(self.read((k + 7) // 8), "little")
        return v & ((1 << k) - 1)

    randbytes = read


def derive_seed(master: bytes, *labels) -> bytes:
    """32-byte child seed; labels are str/bytes/int (ints as 8-byte LE)."""
    h = hashlib.shake_256(b"rqcs-derive")
    h_parts = [master]
    for lab in labels:
        if isinstance(lab, int):
            lab = lab.to_bytes(8, "little")
        elif isinstance(lab, str):
            lab = lab.encode()
        h_parts.append(len(lab).to_bytes(4, "little") + lab)
    for p in h_parts:
        h.update(p)
    return h.digest(32)
