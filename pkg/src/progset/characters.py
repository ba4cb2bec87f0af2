"""Multiplicative characters of GF(q), their sums, and Weil-bound checks.

A character is identified by its exponent t in [0, q-1): chi_t(g^j) =
e^(2*pi*i*t*j/(q-1)) against the field's fixed generator g, with chi_t(0) = 0.
t = 0 is the principal character.  The zero convention makes the counting
identities in `counting` exact statements about solutions with nonzero
products.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .errors import (
    ConfigError,
    GpStructureViolation,
    KTooLarge,
    OrthogonalityViolation,
    WeilViolation,
    ZeroShift,
)
from .field import FieldTables
from .productsets import ElementSet
from .reports import PropertyReport
from .rng import counter_values

PRINCIPAL = 0

# exhaustive tuple enumeration is only allowed up to this many tuples
EXHAUSTIVE_TUPLE_CAP = 10**6
# orthogonality is an O(q^2) exhaustive identity check
ORTHOGONALITY_Q_CAP = 1 << 12


def default_tol(q: int) -> float:
    # sums of q unit-modulus terms carry roundoff proportional to q
    return 1e-9 * q


def char_eval(t: FieldTables, char: int, x: int) -> complex:
    """chi_char(x); exactly 0 at x = 0."""
    if x == 0:
        return 0j
    return complex(t.roots[(char * t.dlog_of(x)) % t.order])


def char_values(t: FieldTables, char: int, xs: np.ndarray) -> np.ndarray:
    """Vectorized chi_char over element indices (zeros map to 0)."""
    d = t.dlog[xs]
    vals = t.roots[(char * d) % t.order]
    return np.where(d < 0, 0j, vals)


def char_sum_over_set(t: FieldTables, char: int, s: ElementSet) -> complex:
    """Sum of chi_char over the members of s (a zero member contributes 0)."""
    return complex(char_values(t, char, s.indices()).sum())


def all_set_char_sums(t: FieldTables, s: ElementSet) -> np.ndarray:
    """Array over every character index of its sum over s \\ {0}."""
    group = t.order
    out = np.zeros(group, dtype=complex)
    for x in s.nonzero().indices():
        d = int(t.dlog[x])
        out += t.roots[(d * np.arange(group)) % group]
    return out


def conj_char(t: FieldTables, char: int) -> int:
    """Index of the complex-conjugate character."""
    return (t.order - char) % t.order


def verify_orthogonality(t: FieldTables, tol: float | None = None, samples: int = 8) -> PropertyReport:
    """Exhaustive orthogonality check of the character group.

    (a) each nonprincipal character sums to ~0 over the nonzero elements,
    (b) over all nonzero element pairs x != y, sum_t chi_t(x)conj(chi_t(y)) ~ 0
        while the diagonal gives exactly q-1,
    (c) norm sums for a few elements equal q-1.
    Raises OrthogonalityViolation on the first residual at or above tol.
    """
    q = t.q
    if q > ORTHOGONALITY_Q_CAP:
        raise ConfigError(f"orthogonality check capped at q <= {ORTHOGONALITY_Q_CAP}")
    if tol is None:
        tol = default_tol(q)
    group = t.order
    nonzero = np.arange(1, q)
    dl = t.dlog[nonzero]
    worst = 0.0
    checks = 0

    for char in range(1, group):
        resid = abs(t.roots[(char * dl) % group].sum())
        checks += 1
        if resid >= tol:
            raise OrthogonalityViolation(f"character t={char}", resid)
        worst = max(worst, resid)

    # pair sums depend only on the dlog difference; psum over the raw exponent
    # range is independent of the dlog table, so duplicated/corrupted dlog
    # entries surface as a q-1 residual at the offending pair.
    tvec = np.arange(group)
    psum = np.empty(group, dtype=complex)
    for d in range(group):
        psum[d] = t.roots[(d * tvec) % group].sum()
    for x in nonzero:
        dx = int(t.dlog[x])
        diffs = (dx - dl) % group
        resids = np.abs(psum[diffs])
        resids[x - 1] = abs(psum[diffs[x - 1]] - group)  # diagonal expects q-1
        checks += len(nonzero)
        j = int(np.argmax(resids))
        if resids[j] >= tol:
            raise OrthogonalityViolation(f"pair x={int(x)}, y={int(nonzero[j])}", float(resids[j]))
        worst = max(worst, float(resids[j]))

    step = max(1, (q - 1) // samples)
    for x in range(1, q, step):
        vals = t.roots[(int(t.dlog[x]) * tvec) % group]
        resid = abs((vals * np.conj(vals)).sum() - group)
        checks += 1
        if resid >= tol:
            raise OrthogonalityViolation(f"norm at x={x}", resid)
        worst = max(worst, resid)

    return PropertyReport(
        suite="orthogonality",
        passed=True,
        checks=checks,
        max_residual=worst,
        tolerance=tol,
        details={"q": q},
    )


# --- progression-structure sums ----------------------------------------------


def _ap_dlog_matrix(t: FieldTables, k: int) -> np.ndarray:
    """dlogs of lambda + i for i = 0..k-1 over all lambda; -1 marks zero."""
    lam = np.arange(t.q)
    return np.stack([t.dlog[t.add_vec(lam, t.scalar(i))] for i in range(k)])


def weil_sum_ap(t: FieldTables, chars) -> complex:
    """sum over lambda in F_q of prod_i chi_{chars[i]}(lambda + i)."""
    chars = [c % t.order for c in chars]
    if len(chars) < 2:
        raise ConfigError("need at least two characters")
    dmat = _ap_dlog_matrix(t, len(chars))
    return _tuple_sum(t, chars, dmat)


def _tuple_sum(t: FieldTables, chars, dmat: np.ndarray) -> complex:
    group = t.order
    vals = np.ones(dmat.shape[1], dtype=complex)
    for c, row in zip(chars, dmat):
        vals = vals * np.where(row < 0, 0j, t.roots[(c * row) % group])
    return complex(vals.sum())


def weil_bound_ap(q: int, k: int, mixed: bool) -> float:
    """(k-1)*sqrt(q), plus slack k when principal components delete terms."""
    b = (k - 1) * math.sqrt(q)
    return b + k if mixed else b


def _iter_tuples(group: int, k: int, mode: str, samples: int, seed: int):
    """Deterministic tuple stream; the all-principal tuple is never yielded."""
    if mode == "exhaustive":
        for tup in itertools.product(range(group), repeat=k):
            if any(tup):
                yield tup
    else:
        ctr = 0
        produced = 0
        while produced < samples:
            vals = counter_values(seed, np.arange(ctr, ctr + k)) % np.uint64(group)
            ctr += k
            tup = tuple(int(v) for v in vals)
            if not any(tup):
                continue
            produced += 1
            yield tup


def _resolve_mode(group: int, k: int, mode: str) -> str:
    if mode == "auto":
        return "exhaustive" if group**k <= EXHAUSTIVE_TUPLE_CAP else "sampled"
    if mode == "exhaustive" and group**k > EXHAUSTIVE_TUPLE_CAP:
        raise ConfigError(
            f"exhaustive enumeration of {group}^{k} tuples exceeds cap {EXHAUSTIVE_TUPLE_CAP}"
        )
    if mode not in ("exhaustive", "sampled"):
        raise ConfigError(f"unknown mode {mode!r}")
    return mode


def verify_weil_bound_ap(
    t: FieldTables,
    k: int,
    mode: str = "auto",
    samples: int = 10000,
    seed: int = 0,
) -> PropertyReport:
    """Check |weil_sum_ap| against (k-1)*sqrt(q) over character tuples.

    Tuples whose characters are all nonprincipal must obey the plain bound;
    mixed tuples get additive slack k for the chi(0) = 0 convention.  The
    all-principal tuple is excluded.  Raises WeilViolation on the first
    offender in enumeration order.
    """
    if k < 2:
        raise ConfigError("k must be >= 2")
    if k >= t.p:
        raise KTooLarge(f"k={k} must be < characteristic p={t.p}")
    group = t.order
    mode = _resolve_mode(group, k, mode)
    dmat = _ap_dlog_matrix(t, k)
    eps = default_tol(t.q)
    checks = 0
    worst_ratio = 0.0
    worst_tuple = None
    for tup in _iter_tuples(group, k, mode, samples, seed):
        s = abs(_tuple_sum(t, tup, dmat))
        bound = weil_bound_ap(t.q, k, mixed=(0 in tup))
        checks += 1
        # Jacobi-sum equality cases sit exactly on the bound; eps absorbs roundoff
        if s > bound + eps:
            raise WeilViolation(tup, s, bound)
        ratio = s / bound
        if ratio > worst_ratio:
            worst_ratio, worst_tuple = ratio, tup
    return PropertyReport(
        suite="weil-ap",
        passed=True,
        checks=checks,
        max_residual=worst_ratio,
        tolerance=None,
        details={"q": t.q, "k": k, "mode": mode, "worst_tuple": worst_tuple},
    )


def gp_structure_sum(t: FieldTables, chars, h: int, m_set: ElementSet) -> complex:
    """sum over lambda in F_q^*, mu in M of prod_i chi_i(lambda*mu^i - h)."""
    if h == 0:
        raise ZeroShift("shift h must be nonzero")
    chars = [c % t.order for c in chars]
    dmat = _gp_dlog_matrix(t, len(chars), h, m_set)
    return _tuple_sum(t, chars, dmat)


def _gp_dlog_matrix(t: FieldTables, k: int, h: int, m_set: ElementSet) -> np.ndarray:
    """dlogs of lambda*mu^i - h over all (mu in M) x (lambda != 0), flattened."""
    group = t.order
    neg_h = t.neg(h)
    dlam = t.dlog[np.arange(1, t.q)]
    rows = []
    mus = m_set.indices()
    for i in range(k):
        cols = []
        for mu in mus:
            dmu = int(t.dlog[mu])
            arg = t.exp[(dlam + i * dmu) % group]
            cols.append(t.dlog[t.add_vec(arg, neg_h)])
        rows.append(np.concatenate(cols) if cols else np.empty(0, dtype=np.int64))
    return np.stack(rows)


def gp_structure_bound(q: int, k: int) -> float:
    return 2.0 * (k - 1) * (q - 1) * math.sqrt(q)


def verify_gp_structure_bound(
    t: FieldTables,
    k: int,
    h: int,
    mode: str = "auto",
    samples: int = 10000,
    seed: int = 0,
) -> PropertyReport:
    """Check |gp_structure_sum| < 2(k-1)(q-1)sqrt(q) over character tuples.

    Requires h != 0; the all-principal tuple is excluded.  The bound is
    derived under k <= sqrt(q); that hypothesis is reported, not enforced,
    and any tuple exceeding the bound raises GpStructureViolation for review.
    """
    if h == 0:
        raise ZeroShift("shift h must be nonzero")
    if k < 2:
        raise ConfigError("k must be >= 2")
    from .progressions import compute_m_set  # local import: layering, not cycle

    group = t.order
    mode = _resolve_mode(group, k, mode)
    m_set = compute_m_set(t, k)
    dmat = _gp_dlog_matrix(t, k, h, m_set)
    bound = gp_structure_bound(t.q, k)
    eps = default_tol(t.q)
    checks = 0
    worst_ratio = 0.0
    worst_tuple = None
    for tup in _iter_tuples(group, k, mode, samples, seed):
        s = abs(_tuple_sum(t, tup, dmat))
        checks += 1
        if not s < bound + eps:
            raise GpStructureViolation(tup, s, bound)
        ratio = s / bound
        if ratio > worst_ratio:
            worst_ratio, worst_tuple = ratio, tup
    return PropertyReport(
        suite="gp-structure",
        passed=True,
        checks=checks,
        max_residual=worst_ratio,
        tolerance=None,
        details={"q": t.q, "k": k, "h": h, "mode": mode, "worst_tuple": worst_tuple,
                 "m_card": m_set.card, "bound": bound, "k_le_sqrt_q": k * k <= t.q},
    )
