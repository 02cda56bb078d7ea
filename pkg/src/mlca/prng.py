"""Bitstreams from maximal-length CAs, smoke statistics and file export."""

from __future__ import annotations

import enum
import json
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Sequence

from .automaton import int_stepper
from .maximality import decide_maximal_exhaustive, decide_maximal_primitive
from .rules import Kind, RuleVector, config_to_int, format_config, format_rules

__all__ = [
    "StreamSpec",
    "BitFormat",
    "sample_sites",
    "iter_bits",
    "stream_bits",
    "monobit",
    "runs",
    "export_bits",
    "pack_bits",
]

ASCII_LINE = 64


def sample_sites(n: int, gamma: int) -> tuple[int, ...]:
    """Output cells 0, gamma+1, 2(gamma+1), ... below n."""
    if gamma < 0:
        raise ValueError("site spacing must be >= 0")
    return tuple(range(0, n, gamma + 1))


@dataclass(frozen=True)
class StreamSpec:
    """A validated generator: maximal rules, a seed on the long cycle and the
    site spacing.  Maximality is checked at construction (primitivity test
    for linear rules, exhaustive walk otherwise)."""

    rules: RuleVector
    seed: tuple[int, ...]
    gamma: int = 0
    sites: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        n = len(self.rules)
        if self.rules.q != 2:
            raise ValueError("bitstreams need a binary CA")
        if len(self.seed) != n or any(v not in (0, 1) for v in self.seed):
            raise ValueError(f"seed must be {n} binary cells")
        if self.rules.is_linear:
            verdict = decide_maximal_primitive(self.rules)
        else:
            verdict = decide_maximal_exhaustive(self.rules)
        if not verdict.maximal:
            raise ValueError(f"rule vector {format_rules(self.rules)} is not maximal")
        if tuple(self.seed) == verdict.marginal:
            raise ValueError("seed is the fixed point, not on the long cycle")
        object.__setattr__(self, "seed", tuple(self.seed))
        object.__setattr__(self, "sites", sample_sites(n, self.gamma))

    def header(self, steps: int, bit_count: int) -> dict:
        return {
            "rules": format_rules(self.rules),
            "seed": format_config(self.seed),
            "gamma": self.gamma,
            "sites": list(self.sites),
            "steps": steps,
            "bits": bit_count,
        }


def iter_bits(spec: StreamSpec, steps: int) -> Iterator[int]:
    """Sampled cells of the seed and the following configurations, in
    ascending cell order within each step."""
    if steps < 1:
        raise ValueError("steps must be >= 1")
    f = int_stepper(spec.rules)
    x = config_to_int(spec.seed)
    sites = spec.sites
    for _ in range(steps):
        for s in sites:
            yield (x >> s) & 1
        x = f(x)


def stream_bits(spec: StreamSpec, steps: int) -> list[int]:
    return list(iter_bits(spec, steps))


def monobit(bits: Sequence[int]) -> tuple[int, int]:
    """(ones, zeros)."""
    if not len(bits):
        raise ValueError("empty bit sequence")
    ones = sum(1 for b in bits if b)
    return ones, len(bits) - ones


def runs(bits: Sequence[int]) -> dict[int, list[int]]:
    """Lengths of maximal runs of each symbol, in order of appearance."""
    if not len(bits):
        raise ValueError("empty bit sequence")
    out: dict[int, list[int]] = {0: [], 1: []}
    cur, length = bits[0], 0
    for b in bits:
        if b == cur:
            length += 1
        else:
            out[cur].append(length)
            cur, length = b, 1
    out[cur].append(length)
    return out


class BitFormat(enum.Enum):
    RAW = "raw"
    ASCII01 = "ascii01"


def pack_bits(bits: Sequence[int]) -> bytes:
    """Eight bits per byte, first bit in the least significant position."""
    out = bytearray((len(bits) + 7) // 8)
    for i, b in enumerate(bits):
        if b:
            out[i >> 3] |= 1 << (i & 7)
    return bytes(out)


def _ascii01(bits: Sequence[int]) -> bytes:
    text = "".join("1" if b else "0" for b in bits)
    lines = [text[i : i + ASCII_LINE] for i in range(0, len(text), ASCII_LINE)]
    return "\n".join(lines).encode("ascii")


def _atomic_write(path: Path, data: bytes) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=path.name + ".")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def export_bits(bits: Sequence[int], path: str | os.PathLike, fmt: BitFormat | str = BitFormat.RAW,
                header: dict | None = None) -> int:
    """Write ``bits`` and return the number of bytes written.

    A JSON sidecar ``<path>.json`` records the bit count (raw files pad the
    last byte with zeros) plus whatever ``header`` supplies.
    """
    fmt = BitFormat(fmt)
    path = Path(path)
    data = pack_bits(bits) if fmt is BitFormat.RAW else _ascii01(bits)
    _atomic_write(path, data)
    meta = dict(header or {})
    meta.update({"format": fmt.value, "bits": len(bits), "bytes": len(data)})
    _atomic_write(path.with_name(path.name + ".json"),
                  (json.dumps(meta, indent=2, sort_keys=True) + "\n").encode())
    return len(data)
