"""Search for arithmetic progressions in subsets of F_q and geometric
progressions in subsets of F_q^*, plus the admissible-ratio set M.

Arithmetic search walks, for each common difference mu, the additive orbits
of +mu (cycles of length p) and takes the longest circular run of membership;
geometric search is the same picture in discrete-log space, where a ratio mu
of order d induces cycles of length d on Z_{q-1}.  Witnesses are canonical:
smallest dlog(mu) first, then smallest lambda index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import FieldMismatch, KExceedsCharacteristic, KTooSmall, SetTooSmall
from .field import FieldTables
from .productsets import ElementSet

ARITHMETIC = "arithmetic"
GEOMETRIC = "geometric"


@dataclass(frozen=True)
class ProgressionWitness:
    """A concrete k-term progression with its defining parameters."""

    kind: str
    lam: int
    mu: int
    k: int
    terms: tuple[int, ...]

    def regenerate(self, t: FieldTables) -> tuple[int, ...]:
        """Recompute the terms from (kind, lam, mu, k)."""
        out = [self.lam]
        cur = self.lam
        for _ in range(self.k - 1):
            cur = t.add(cur, self.mu) if self.kind == ARITHMETIC else t.mul(cur, self.mu)
            out.append(cur)
        return tuple(out)

    def is_valid(self, t: FieldTables, within: ElementSet | None = None) -> bool:
        """Terms match the formula, are pairwise distinct, and lie in `within`."""
        if self.k < 1 or len(self.terms) != self.k:
            return False
        if self.kind == ARITHMETIC:
            if self.k > 1 and self.mu == 0:
                return False
        elif self.kind == GEOMETRIC:
            if self.lam == 0 or self.mu == 0:
                return False
        else:
            return False
        if self.regenerate(t) != self.terms:
            return False
        if len(set(self.terms)) != self.k:
            return False
        if within is not None and not all(within.contains(x) for x in self.terms):
            return False
        return True


def _check_field(t: FieldTables, s: ElementSet) -> None:
    if s.q != t.q:
        raise FieldMismatch(f"set over q={s.q} used with field q={t.q}")


def _trivial_witness(kind: str, member: int) -> ProgressionWitness:
    return ProgressionWitness(kind=kind, lam=member, mu=1, k=1, terms=(member,))


def find_ap_of_length(t: FieldTables, s: ElementSet, k: int) -> ProgressionWitness | None:
    """First k-term arithmetic progression inside s, scanning mu by dlog.

    Returns None when no progression exists.  k = 1 degenerates to any member
    (smallest index); k > p is impossible since terms could not be distinct.
    """
    _check_field(t, s)
    if k < 1:
        raise KTooSmall("k must be >= 1")
    if k > t.p:
        raise KExceedsCharacteristic(f"k={k} > characteristic p={t.p}")
    if k == 1:
        if s.card == 0:
            return None
        return _trivial_witness(ARITHMETIC, int(s.indices()[0]))
    lam_all = np.arange(t.q)
    for mu in (int(v) for v in t.exp):
        ok = s.mask.copy()
        off = 0
        for _ in range(k - 1):
            off = t.add(off, mu)
            ok &= s.mask[t.add_vec(lam_all, off)]
            if not ok.any():
                break
        else:
            lam = int(np.flatnonzero(ok)[0])
            w = ProgressionWitness(ARITHMETIC, lam, mu, k, ())
            return ProgressionWitness(ARITHMETIC, lam, mu, k, w.regenerate(t))
    return None


def find_gp_of_length(t: FieldTables, s: ElementSet, k: int) -> ProgressionWitness | None:
    """First k-term geometric progression inside s (zero excluded)."""
    _check_field(t, s)
    if k < 1:
        raise KTooSmall("k must be >= 1")
    group = t.order
    nonzero_members = s.nonzero()
    if k == 1:
        if nonzero_members.card == 0:
            return None
        return _trivial_witness(GEOMETRIC, int(nonzero_members.indices()[0]))
    mexp = nonzero_members.mask[t.exp]
    jvec = np.arange(group)
    for dmu in range(1, group):
        if group // math.gcd(dmu, group) < k:
            continue  # ratio order too small for distinct terms
        ok = mexp.copy()
        for i in range(1, k):
            ok &= mexp[(jvec + i * dmu) % group]
            if not ok.any():
                break
        else:
            cand = t.exp[np.flatnonzero(ok)]
            lam = int(cand.min())
            mu = int(t.exp[dmu])
            w = ProgressionWitness(GEOMETRIC, lam, mu, k, ())
            return ProgressionWitness(GEOMETRIC, lam, mu, k, w.regenerate(t))
    return None


def _max_runs_in_cycles(vals: np.ndarray) -> tuple[int, np.ndarray, np.ndarray]:
    """Longest circular run of True along each row of a cycle matrix.

    vals is (rows, L) with each row one cycle.  Returns (best, starts, full)
    where best is the maximum circular run over all rows capped at L, starts
    holds (row, col) pairs where a maximal run starts (cols taken mod L), and
    full flags rows that are entirely True (only populated when best == L).
    """
    rows, length = vals.shape
    full = vals.all(axis=1)
    if full.any():
        return length, np.empty((0, 2), dtype=np.int64), full
    doubled = np.concatenate(
        [vals, vals, np.zeros((rows, 1), dtype=bool)], axis=1
    ).ravel()
    falses = np.flatnonzero(~doubled)
    # run lengths between consecutive falses; the run before the first false
    runs = np.diff(falses) - 1
    head = int(falses[0]) if falses.size else 0
    best = int(runs.max(initial=0))
    if head > best:
        best = head
    if best == 0:
        return 0, np.empty((0, 2), dtype=np.int64), full
    starts = falses[:-1][runs == best] + 1
    if head == best:
        starts = np.concatenate([[0], starts])
    width = 2 * length + 1
    rc = np.stack([starts // width, (starts % width) % length], axis=1)
    return best, rc, full


def longest_ap(t: FieldTables, s: ElementSet) -> tuple[int, ProgressionWitness]:
    """Maximal arithmetic progression length in s with a canonical witness.

    For each mu (by dlog) the additive +mu orbits are cycles of length p; the
    answer is the longest circular membership run, structurally capped at p.
    """
    _check_field(t, s)
    if s.card < 2:
        raise SetTooSmall("need at least two members for an arithmetic progression")
    p, q = t.p, t.q
    best_k = 0
    best_lam = best_mu = None
    if t.n == 1:
        pos = np.arange(p)
        for mu in (int(v) for v in t.exp):
            cycle = (mu * pos) % p
            run, rc, full = _max_runs_in_cycles(s.mask[cycle][None, :])
            if run > best_k:
                if full.any():
                    lam_cand = 0  # whole field: orbit minimum
                else:
                    lam_cand = int(cycle[rc[:, 1]].min())
                best_k, best_lam, best_mu = run, lam_cand, mu
                if best_k == p:
                    break
    else:
        lam_all = np.arange(q)
        for mu in (int(v) for v in t.exp):
            # prefix run length R(x) along x, x+mu, ...; max R = max circular run
            r = np.zeros(q, dtype=np.int64)
            alive = s.mask.copy()
            y = lam_all
            for _ in range(p):
                alive = alive & s.mask[y]
                if not alive.any():
                    break
                r[alive] += 1
                y = t.add_vec(y, mu)
            run = int(r.max())
            if run > best_k:
                best_k = run
                best_lam = int(np.flatnonzero(r == run)[0])
                best_mu = mu
                if best_k == p:
                    break
    w = ProgressionWitness(ARITHMETIC, best_lam, best_mu, best_k, ())
    w = ProgressionWitness(ARITHMETIC, best_lam, best_mu, best_k, w.regenerate(t))
    return best_k, w


def longest_gp(t: FieldTables, s: ElementSet) -> tuple[int, ProgressionWitness]:
    """Maximal geometric progression length in s (zero ignored), with witness."""
    _check_field(t, s)
    nz = s.nonzero()
    if nz.card < 1:
        raise SetTooSmall("need a nonzero member for a geometric progression")
    group = t.order
    best_k = 1
    best_w = _trivial_witness(GEOMETRIC, int(nz.indices()[0]))
    mexp = nz.mask[t.exp]
    for dmu in range(1, group):
        g = math.gcd(dmu, group)
        cyc_len = group // g
        if cyc_len <= best_k:
            continue  # cannot beat the current best
        reps = np.arange(g)
        cols = np.arange(cyc_len)
        emat = (reps[:, None] + cols[None, :] * dmu) % group
        vals = mexp[emat]
        run, rc, full = _max_runs_in_cycles(vals)
        if run <= best_k:
            continue
        if full.any():
            exps = emat[full].ravel()
        else:
            exps = emat[rc[:, 0], rc[:, 1]]
        lam = int(t.exp[exps].min())
        mu = int(t.exp[dmu])
        w = ProgressionWitness(GEOMETRIC, lam, mu, run, ())
        best_k = run
        best_w = ProgressionWitness(GEOMETRIC, lam, mu, run, w.regenerate(t))
        if best_k == group:
            break
    return best_k, best_w


def compute_m_set(t: FieldTables, k: int) -> ElementSet:
    """Ratios mu in F_q^* whose first k powers 1, mu, ..., mu^(k-1) are distinct.

    Exactly the mu of multiplicative order >= k.
    """
    if k < 2:
        raise KTooSmall("k must be >= 2")
    group = t.order
    orders = group // np.gcd(np.arange(group), group)
    keep = np.flatnonzero(orders >= k)
    mask = np.zeros(t.q, dtype=bool)
    mask[t.exp[keep]] = True
    return ElementSet(t.q, mask)


def m_set_floor(q: int, k: int) -> int:
    """Safe lower bound for #M: at most j ratios have order j, summed below k."""
    return q - 1 - k * (k - 1) // 2
