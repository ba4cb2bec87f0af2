"""Subsets of GF(q), productsets A*B, shifts, and the representation function.

ElementSet is the shared set carrier: a boolean membership array over element
indices with a cached cardinality, plus a line-oriented text format used by
the CLI (`q=<int>` header, optional `#` comments, one index per line).
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, FieldMismatch, IdentityViolation, SetFileError
from .field import FieldTables

# rep_function switches to the dlog-domain cyclic-convolution path above this
# many (a, b) pairs; below it the direct pair loop is the oracle-grade path.
_CONV_FACTOR = 16.0


class ElementSet:
    """Immutable-by-convention subset of the field, indexed by element index."""

    __slots__ = ("q", "mask", "card")

    def __init__(self, q: int, mask: np.ndarray):
        mask = np.asarray(mask, dtype=bool)
        if mask.shape != (q,):
            raise ValueError(f"mask length {mask.shape} does not match q={q}")
        self.q = q
        self.mask = mask
        self.card = int(mask.sum())

    @classmethod
    def from_indices(cls, q: int, indices) -> "ElementSet":
        mask = np.zeros(q, dtype=bool)
        for i in indices:
            i = int(i)
            if not 0 <= i < q:
                raise ValueError(f"element index {i} out of range [0, {q})")
            mask[i] = True
        return cls(q, mask)

    @classmethod
    def empty(cls, q: int) -> "ElementSet":
        return cls(q, np.zeros(q, dtype=bool))

    @classmethod
    def full(cls, q: int) -> "ElementSet":
        return cls(q, np.ones(q, dtype=bool))

    @classmethod
    def full_nonzero(cls, q: int) -> "ElementSet":
        mask = np.ones(q, dtype=bool)
        mask[0] = False
        return cls(q, mask)

    def indices(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    def nonzero(self) -> "ElementSet":
        """Copy with the zero element removed."""
        if not self.mask[0]:
            return self
        mask = self.mask.copy()
        mask[0] = False
        return ElementSet(self.q, mask)

    def contains(self, idx: int) -> bool:
        return bool(self.mask[idx])

    __contains__ = contains

    def __len__(self) -> int:
        return self.card

    def __eq__(self, other) -> bool:
        if not isinstance(other, ElementSet):
            return NotImplemented
        return self.q == other.q and bool(np.array_equal(self.mask, other.mask))

    def __hash__(self):
        return hash((self.q, self.mask.tobytes()))

    def __repr__(self) -> str:
        return f"ElementSet(q={self.q}, card={self.card})"


def load_set(source) -> ElementSet:
    """Read an ElementSet from a path or text stream.

    Format: first line `q=<int>`, then one decimal element index per line;
    `#` comment lines and blank lines are permitted after the header.
    Duplicate or out-of-range indices are rejected.
    """
    if hasattr(source, "read"):
        lines = source.read().splitlines()
    else:
        with open(source, "r", encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    if not lines or not lines[0].startswith("q="):
        raise SetFileError("first line must be 'q=<int>'")
    try:
        q = int(lines[0][2:])
    except ValueError as exc:
        raise SetFileError(f"bad header {lines[0]!r}") from exc
    if q < 2:
        raise SetFileError(f"q={q} is not a valid field size")
    mask = np.zeros(q, dtype=bool)
    for ln, raw in enumerate(lines[1:], start=2):
        text = raw.strip()
        if not text or text.startswith("#"):
            continue
        try:
            idx = int(text)
        except ValueError as exc:
            raise SetFileError(f"line {ln}: {raw!r} is not an element index") from exc
        if not 0 <= idx < q:
            raise SetFileError(f"line {ln}: index {idx} out of range [0, {q})")
        if mask[idx]:
            raise SetFileError(f"line {ln}: duplicate index {idx}")
        mask[idx] = True
    return ElementSet(q, mask)


def save_set(es: ElementSet, target) -> None:
    """Write an ElementSet in the text format (indices ascending)."""
    if hasattr(target, "write"):
        _write_set(es, target)
    else:
        with open(target, "w", encoding="utf-8") as fh:
            _write_set(es, fh)


def _write_set(es: ElementSet, fh: io.TextIOBase) -> None:
    fh.write(f"q={es.q}\n")
    for idx in es.indices():
        fh.write(f"{int(idx)}\n")


@dataclass(frozen=True)
class RepFunction:
    """counts[x] = number of pairs (a, b) in A x B with a*b = x."""

    q: int
    counts: np.ndarray
    restricted: bool


def _check_same_field(t: FieldTables, *sets: ElementSet) -> None:
    for s in sets:
        if s.q != t.q:
            raise FieldMismatch(f"set over q={s.q} used with field q={t.q}")


def productset(t: FieldTables, a: ElementSet, b: ElementSet) -> ElementSet:
    """Exact set of products {x*y : x in A, y in B}."""
    _check_same_field(t, a, b)
    q = t.q
    group = t.order
    da = t.dlog[a.nonzero().indices()]
    db = t.dlog[b.nonzero().indices()]
    hit = np.zeros(group, dtype=bool)
    for i, d in enumerate(da):
        hit[(int(d) + db) % group] = True
        if i % 16 == 15 and hit.all():  # support saturated; dense sets hit this fast
            break
    mask = np.zeros(q, dtype=bool)
    mask[t.exp[np.flatnonzero(hit)]] = True
    if (a.contains(0) and b.card > 0) or (b.contains(0) and a.card > 0):
        mask[0] = True
    return ElementSet(q, mask)


def shifted_productset(t: FieldTables, a: ElementSet, b: ElementSet, h: int) -> ElementSet:
    """{x + h : x in A*B}."""
    prod = productset(t, a, b)
    mask = np.zeros(t.q, dtype=bool)
    mask[t.add_vec(prod.indices(), h)] = True
    return ElementSet(t.q, mask)


def rep_function(
    t: FieldTables, a: ElementSet, b: ElementSet, restrict_nonzero: bool = False
) -> RepFunction:
    """Exact multiplicities of products; with restrict_nonzero, over A\\{0} x B\\{0}."""
    _check_same_field(t, a, b)
    q = t.q
    group = t.order
    ia = a.nonzero().indices()
    ib = b.nonzero().indices()
    counts = np.zeros(q, dtype=np.int64)
    pairs = len(ia) * len(ib)
    if pairs > 0:
        da = t.dlog[ia]
        db = t.dlog[ib]
        if pairs <= _CONV_FACTOR * q * max(1.0, math.log(q)):
            for x in da:
                for y in db:
                    counts[t.exp[(int(x) + int(y)) % group]] += 1
        else:
            acc = np.zeros(group, dtype=np.int64)
            for x in da:
                acc += np.bincount((int(x) + db) % group, minlength=group)
            counts[t.exp] = acc
    if not restrict_nonzero:
        za = 1 if a.contains(0) else 0
        zb = 1 if b.contains(0) else 0
        counts[0] = za * b.card + zb * a.card - za * zb
    return RepFunction(q=q, counts=counts, restricted=restrict_nonzero)


def verify_rep_charsum(t: FieldTables, a: ElementSet, b: ElementSet, tol: float):
    """Check the character expansion of the representation function.

    For every x != 0, r*(x) must equal
        (1/(q-1)) * sum_t chi_t(x) * conj(S_A*(chi_t)) * conj(S_B*(chi_t)),
    where S_A*(chi) sums chi over A with zero removed.
    """
    from .characters import all_set_char_sums  # local import: layering, not cycle
    from .reports import PropertyReport

    _check_same_field(t, a, b)
    if t.q > 1 << 12:
        raise ConfigError("character expansion check capped at q <= 4096 (O(q^2) cost)")
    group = t.order
    r = rep_function(t, a, b, restrict_nonzero=True).counts
    v = np.conj(all_set_char_sums(t, a)) * np.conj(all_set_char_sums(t, b))
    tvec = np.arange(group)
    worst = 0.0
    worst_x = None
    for dx in range(group):
        rhs = (t.roots[(dx * tvec) % group] * v).sum() / group
        x = int(t.exp[dx])
        dev = abs(rhs - r[x])
        if dev > worst:
            worst, worst_x = dev, x
    if worst >= tol:
        raise IdentityViolation(f"r({worst_x})", worst)
    return PropertyReport(
        suite="repfn",
        passed=True,
        checks=group,
        max_residual=worst,
        tolerance=tol,
        details={"q": t.q, "card_a": a.card, "card_b": b.card},
    )
