"""graph6 and sparse6 interchange formats, plus the registry of search graphs.

Both formats follow McKay's published description. sparse6 carries loops;
graph6 does not. Multigraphs are rejected on decode.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .graph import LoopedGraph, closed_complement

SPARSE6_HEADER = b">>sparse6<<"
GRAPH6_HEADER = b">>graph6<<"


class FormatError(ValueError):
    pass


def _as_bytes(s: str | bytes) -> bytes:
    if isinstance(s, str):
        try:
            s = s.encode("ascii")
        except UnicodeEncodeError:
            raise FormatError("graph strings are ASCII") from None
    return s.strip()


def _encode_size(n: int) -> bytes:
    if n < 0:
        raise FormatError("negative vertex count")
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    if n < 1 << 36:
        return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])
    raise FormatError(f"vertex count {n} too large")


def _decode_size(data: bytes) -> tuple[int, bytes]:
    if not data:
        raise FormatError("missing vertex count")
    if data[0] != 126:
        return data[0] - 63, data[1:]
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise FormatError("truncated 8-byte vertex count")
        n = 0
        for c in data[2:8]:
            n = (n << 6) | (c - 63)
        return n, data[8:]
    if len(data) < 4:
        raise FormatError("truncated 4-byte vertex count")
    n = 0
    for c in data[1:4]:
        n = (n << 6) | (c - 63)
    return n, data[4:]


def _check_payload(data: bytes) -> None:
    for c in data:
        if not 63 <= c <= 126:
            raise FormatError(f"byte {c!r} outside the printable range 63..126")


def _bits(data: bytes) -> Iterator[int]:
    for c in data:
        v = c - 63
        for s in range(5, -1, -1):
            yield (v >> s) & 1


def _pack(bits: list[int]) -> bytes:
    out = bytearray()
    for p in range(0, len(bits), 6):
        chunk = bits[p : p + 6]
        v = 0
        for b in chunk:
            v = (v << 1) | b
        out.append(v + 63)
    return bytes(out)


def _width(n: int) -> int:
    """Bits needed for n - 1 (at least 1)."""
    k = 1
    while (1 << k) < n:
        k += 1
    return k


def sparse6_decode(s: str | bytes) -> LoopedGraph:
    data = _as_bytes(s)
    if data.startswith(SPARSE6_HEADER):
        data = data[len(SPARSE6_HEADER) :]
    if not data.startswith(b":"):
        raise FormatError("sparse6 strings start with ':'")
    data = data[1:]
    _check_payload(data)
    n, data = _decode_size(data)
    if n < 1:
        raise FormatError("graphs need at least one vertex")
    k = _width(n)
    stream = list(_bits(data))
    a = np.zeros((n, n), dtype=np.uint8)
    v = 0
    pos = 0
    # a trailing partial group is padding
    while pos + k + 1 <= len(stream):
        b = stream[pos]
        x = 0
        for bit in stream[pos + 1 : pos + k + 1]:
            x = (x << 1) | bit
        pos += k + 1
        if b:
            v += 1
        if v >= n:
            break
        if x > v:
            v = x
        else:
            if a[x, v]:
                raise FormatError(f"repeated edge {{{x}, {v}}}: multigraphs are not supported")
            a[x, v] = a[v, x] = 1
    return LoopedGraph(a)


def sparse6_encode(g: LoopedGraph, header: bool = False) -> str:
    n = g.n
    k = _width(n)

    def enc(x: int) -> list[int]:
        return [(x >> s) & 1 for s in range(k - 1, -1, -1)]

    us, vs = np.nonzero(np.triu(g.adj))
    edges = sorted(zip(vs.tolist(), us.tolist()))  # (larger, smaller)
    bits: list[int] = []
    cur = 0
    for v, u in edges:
        if v == cur:
            bits += [0] + enc(u)
        elif v == cur + 1:
            cur = v
            bits += [1] + enc(u)
        else:
            cur = v
            bits += [1] + enc(v) + [0] + enc(u)
    pad = -len(bits) % 6
    # padding with 1s would read back as an edge {n-1, n-1}... unless
    # a 0 bit breaks the group first
    if k < 6 and n == 1 << k and cur == n - 2 and pad >= k + 1:
        bits.append(0)
        pad -= 1
    bits += [1] * pad
    out = b":" + _encode_size(n) + _pack(bits)
    if header:
        out = SPARSE6_HEADER + out
    return out.decode("ascii")


def graph6_decode(s: str | bytes) -> LoopedGraph:
    data = _as_bytes(s)
    if data.startswith(GRAPH6_HEADER):
        data = data[len(GRAPH6_HEADER) :]
    _check_payload(data)
    n, data = _decode_size(data)
    if n < 1:
        raise FormatError("graphs need at least one vertex")
    need = n * (n - 1) // 2
    if len(data) * 6 < need:
        raise FormatError(f"graph6 payload too short for n={n}")
    if len(data) != (need + 5) // 6:
        raise FormatError(f"graph6 payload has {len(data)} bytes, expected {(need + 5) // 6}")
    stream = _bits(data)
    a = np.zeros((n, n), dtype=np.uint8)
    for v in range(1, n):
        for u in range(v):
            if next(stream):
                a[u, v] = a[v, u] = 1
    return LoopedGraph(a)


def graph6_encode(g: LoopedGraph, header: bool = False) -> str:
    if not g.is_simple:
        raise FormatError("graph6 cannot represent loops; use sparse6")
    n = g.n
    bits = [int(g.adj[u, v]) for v in range(1, n) for u in range(v)]
    bits += [0] * (-len(bits) % 6)
    out = _encode_size(n) + _pack(bits)
    if header:
        out = GRAPH6_HEADER + out
    return out.decode("ascii")


def decode(s: str | bytes) -> LoopedGraph:
    """Decode either format, dispatching on the leading ':'."""
    data = _as_bytes(s)
    if data.startswith(b":") or data.startswith(SPARSE6_HEADER):
        return sparse6_decode(data)
    return graph6_decode(data)


def read_graphs(path) -> list[LoopedGraph]:
    """One graph per line; blank lines and lines starting with '#' are skipped."""
    graphs = []
    with open(path, "rb") as fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith(b"#"):
                graphs.append(decode(line))
    return graphs


# -- search graphs -------------------------------------------------------------


@dataclass(frozen=True)
class SearchGraph:
    name: str
    sparse6: str | None
    cell: tuple[int, int]
    complement_of: str | None = None

    @property
    def available(self) -> bool:
        return self.sparse6 is not None

    def graph(self) -> LoopedGraph:
        if not self.available:
            raise UnavailableCertificate(self.name)
        if self.complement_of is not None:
            return closed_complement(sparse6_decode(self.sparse6))
        return sparse6_decode(self.sparse6)


class UnavailableCertificate(LookupError):
    def __init__(self, name: str):
        super().__init__(f"{name} unavailable")
        self.name = name


_SPARSE6 = {
    "G1": (r":K_ES`s_QOqDL?G`f_C`SOAGXsoAOiCqEOhdJ", (2, 2)),
    "G2": (r":N_EC?aF?G`c_E?Qe_CXAecaPSQEPATQEPATTK`IdtK\ATkiWyCkYz", (2, 3)),
    "G3": (r":Oc?GgbaMGqOL?PbsIWyIDK\AXcIXATOAGXW@CKawAK\ATk_CXAiUq?PEMlbV^", (2, 4)),
    "G4": (r":FehIA_t_S", (3, 2)),
    "G5": (None, (3, 3)),  # 20-vertex graph published only by reference
    "G6": (r":K@GKPT?QXAecOhxBGWyG@CLC?bGSqTOAG`RhV", (3, 4)),
    "G7": (r":J`?S@oBG[aDeOpwbJCPsHaOhc^", (4, 4)),
}
_COMPLEMENTS = {"G1c": ("G1", (3, 1)), "G2c": ("G2", (4, 1)), "G5c": ("G5", (4, 2))}


def _build_registry() -> dict[str, SearchGraph]:
    reg = {name: SearchGraph(name, s, cell) for name, (s, cell) in _SPARSE6.items()}
    for name, (base, cell) in _COMPLEMENTS.items():
        reg[name] = SearchGraph(name, reg[base].sparse6, cell, complement_of=base)
    return reg


SEARCH_GRAPHS: dict[str, SearchGraph] = _build_registry()
