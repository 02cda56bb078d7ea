"""Rule numbers, rule vectors and configurations."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .gfpoly import field

__all__ = [
    "Boundary",
    "Kind",
    "RuleInfo",
    "RuleVector",
    "decode_rule_number",
    "rule_table",
    "parse_rules",
    "format_rules",
    "parse_config",
    "format_config",
    "config_to_int",
    "int_to_config",
]

R90 = (1, 0, 1)
R150 = (1, 1, 1)


class Boundary(enum.Enum):
    NULL = "null"
    PERIODIC = "periodic"
    INTERMEDIATE = "intermediate"

    @classmethod
    def parse(cls, text: str | "Boundary") -> "Boundary":
        if isinstance(text, Boundary):
            return text
        try:
            return cls(text.lower())
        except ValueError:
            raise ValueError(f"unknown boundary {text!r}; expected null|periodic|intermediate") from None


class Kind(enum.Enum):
    LINEAR_90_150 = "linear-90-150"
    LINEAR_GFQ = "linear-gfq"
    GENERAL_BINARY = "general-binary"
    COMPLEMENTED = "complemented"


def rule_table(w: int) -> tuple[int, ...]:
    """Next state indexed by the neighbourhood value 4*left + 2*self + right."""
    if not 0 <= w <= 255:
        raise ValueError(f"rule number must be in 0..255, got {w}")
    return tuple((w >> k) & 1 for k in range(8))


def _linear_number(a: int, d: int, b: int) -> int:
    w = 0
    for k in range(8):
        x, y, z = (k >> 2) & 1, (k >> 1) & 1, k & 1
        w |= ((a * x + d * y + b * z) & 1) << k
    return w


_LINEAR = {_linear_number(a, d, b): (a, d, b) for a in (0, 1) for d in (0, 1) for b in (0, 1)}
_COMPLEMENTED = {255 - w: t for w, t in _LINEAR.items()}


@dataclass(frozen=True)
class RuleInfo:
    number: int
    category: str  # "linear" | "complemented" | "nonlinear"
    triple: tuple[int, int, int] | None
    table: tuple[int, ...]

    @property
    def bits(self) -> str:
        """Next states for RMT 7..0, as usually tabulated."""
        return "".join(str(b) for b in reversed(self.table))


def decode_rule_number(w: int) -> RuleInfo:
    table = rule_table(w)
    if w in _LINEAR:
        return RuleInfo(w, "linear", _LINEAR[w], table)
    if w in _COMPLEMENTED:
        return RuleInfo(w, "complemented", _COMPLEMENTED[w], table)
    return RuleInfo(w, "nonlinear", None, table)


@dataclass(frozen=True)
class RuleVector:
    """Per-cell rules of a one-dimensional, three-neighbourhood CA.

    ``triples`` holds the linear part (a_i, d_i, b_i) of every cell for the
    linear and complemented kinds; ``numbers`` holds Wolfram numbers for
    every binary kind; ``inversion`` is the F vector of a complemented CA.
    Build instances with the classmethods, not the raw constructor.
    """

    q: int
    kind: Kind
    triples: tuple[tuple[int, int, int], ...] | None = None
    numbers: tuple[int, ...] | None = None
    inversion: tuple[int, ...] | None = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_d(cls, ds: Iterable[int]) -> "RuleVector":
        """90/150 vector from main-diagonal bits (0 -> 90, 1 -> 150)."""
        ds = tuple(int(d) for d in ds)
        if not ds:
            raise ValueError("rule vector must have at least one cell")
        if any(d not in (0, 1) for d in ds):
            raise ValueError("90/150 diagonal bits must be 0 or 1")
        return cls(2, Kind.LINEAR_90_150, tuple(R150 if d else R90 for d in ds),
                   tuple(150 if d else 90 for d in ds))

    @classmethod
    def linear(cls, triples: Iterable[Sequence[int]], q: int = 2) -> "RuleVector":
        fld = field(q)
        ts = tuple(tuple(int(v) for v in t) for t in triples)
        if not ts:
            raise ValueError("rule vector must have at least one cell")
        for t in ts:
            if len(t) != 3 or any(not 0 <= v < fld.q for v in t):
                raise ValueError(f"bad rule triple {t} over GF({q})")
        if q == 2 and all(t in (R90, R150) for t in ts):
            return cls.from_d(t[1] for t in ts)
        numbers = tuple(_linear_number(*t) for t in ts) if q == 2 else None
        return cls(q, Kind.LINEAR_GFQ, ts, numbers)

    @classmethod
    def general(cls, numbers: Iterable[int]) -> "RuleVector":
        ns = tuple(int(w) for w in numbers)
        if not ns:
            raise ValueError("rule vector must have at least one cell")
        for w in ns:
            rule_table(w)
        return cls(2, Kind.GENERAL_BINARY, numbers=ns)

    @classmethod
    def complemented(cls, core: "RuleVector", inversion: Iterable[int]) -> "RuleVector":
        if core.kind not in (Kind.LINEAR_90_150, Kind.LINEAR_GFQ) or core.q != 2:
            raise ValueError("complemented CAs need a linear GF(2) core")
        f = tuple(int(v) for v in inversion)
        if len(f) != len(core):
            raise ValueError("inversion vector length differs from rule vector")
        if any(v not in (0, 1) for v in f):
            raise ValueError("inversion vector must be binary")
        if not any(f):
            raise ValueError("inversion vector is zero; the CA would be linear")
        numbers = tuple(255 - w if fi else w for w, fi in zip(core.numbers, f))
        return cls(2, Kind.COMPLEMENTED, core.triples, numbers, f)

    @classmethod
    def from_numbers(cls, numbers: Iterable[int]) -> "RuleVector":
        """Classify Wolfram numbers into the narrowest kind that fits."""
        infos = [decode_rule_number(int(w)) for w in numbers]
        if not infos:
            raise ValueError("rule vector must have at least one cell")
        if any(i.category == "nonlinear" for i in infos):
            return cls.general(i.number for i in infos)
        core = cls.linear([i.triple for i in infos], 2)
        f = [1 if i.category == "complemented" else 0 for i in infos]
        if any(f):
            return cls.complemented(core, f)
        return core

    # -- views --------------------------------------------------------------

    def __len__(self) -> int:
        return len(self.numbers) if self.triples is None else len(self.triples)

    @property
    def n(self) -> int:
        return len(self)

    @property
    def is_linear(self) -> bool:
        return self.kind in (Kind.LINEAR_90_150, Kind.LINEAR_GFQ)

    @property
    def d_bits(self) -> tuple[int, ...]:
        if self.kind is not Kind.LINEAR_90_150:
            raise ValueError("diagonal bits are only defined for 90/150 vectors")
        return tuple(t[1] for t in self.triples)

    @property
    def core(self) -> "RuleVector":
        """The linear rule vector underneath (self for linear kinds)."""
        if self.is_linear:
            return self
        if self.kind is Kind.COMPLEMENTED:
            return RuleVector.linear(self.triples, 2)
        raise ValueError("general binary rule vectors have no linear core")

    def tables(self) -> tuple[tuple[int, ...], ...]:
        if self.numbers is None:
            raise ValueError("rule tables exist only for binary rule vectors")
        return tuple(rule_table(w) for w in self.numbers)

    def reverse(self) -> "RuleVector":
        """Mirror image; each (a, d, b) becomes (b, d, a)."""
        if self.kind is Kind.GENERAL_BINARY:
            return RuleVector.general(_mirror_number(w) for w in reversed(self.numbers))
        core = RuleVector.linear([(b, d, a) for a, d, b in reversed(self.triples)], self.q)
        if self.kind is Kind.COMPLEMENTED:
            return RuleVector.complemented(core, reversed(self.inversion))
        return core

    def __str__(self):
        return format_rules(self)


def _mirror_number(w: int) -> int:
    t = rule_table(w)
    out = 0
    for k in range(8):
        mk = ((k & 1) << 2) | (k & 2) | ((k >> 2) & 1)
        out |= t[k] << mk
    return out


# -- text formats -------------------------------------------------------------


def parse_rules(text: str, q: int = 2) -> RuleVector:
    """``"90,150,90,150"`` for binary rules, or a JSON array of ``[a,d,b]``
    triples (any prime q)."""
    s = text.strip()
    if s.startswith("[["):
        return RuleVector.linear(json.loads(s), q)
    if q != 2:
        raise ValueError("rule numbers are binary; give [a,d,b] triples for GF(q)")
    try:
        nums = [int(tok) for tok in s.replace(" ", "").split(",") if tok]
    except ValueError:
        raise ValueError(f"cannot parse rule vector {text!r}") from None
    return RuleVector.from_numbers(nums)


def format_rules(rules: RuleVector) -> str:
    if rules.numbers is not None:
        return ",".join(str(w) for w in rules.numbers)
    return json.dumps([list(t) for t in rules.triples], separators=(",", ":"))


def parse_config(text: str, q: int = 2) -> tuple[int, ...]:
    """Cell 0 first: ``"1000"`` has cell 0 set.  Digits must be < q."""
    s = text.strip().replace(" ", "").replace(",", "")
    if not s or any(not ch.isdigit() or int(ch) >= q for ch in s):
        raise ValueError(f"bad configuration {text!r} over GF({q})")
    return tuple(int(ch) for ch in s)


def format_config(x: Sequence[int]) -> str:
    return "".join(str(v) for v in x)


def config_to_int(x: Sequence[int], q: int = 2) -> int:
    """Cell i is digit i (least significant first); bit i when q == 2."""
    v = 0
    for i in range(len(x) - 1, -1, -1):
        v = v * q + x[i]
    return v


def int_to_config(v: int, n: int, q: int = 2) -> tuple[int, ...]:
    out = []
    for _ in range(n):
        v, r = divmod(v, q)
        out.append(r)
    return tuple(out)
