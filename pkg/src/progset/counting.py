"""Exact counts of progression-producing solutions and the proof inequalities.

T counts solutions of lambda + (j-1)mu = a_j b_j (j = 1..k, mu != 0) and Q
counts lambda mu^(j-1) = a_j b_j + h over admissible ratios; both restrict to
nonzero products a_j b_j, matching the chi(0) = 0 character convention, so the
sets enter through A* = A\\{0}, B* = B\\{0}.  Main terms are exact rationals
and every inequality decision is made in exact integer arithmetic.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .characters import all_set_char_sums
from .errors import (
    CauchyViolation,
    ConfigError,
    IdentityViolation,
    KTooLarge,
    KTooSmall,
    ZeroShift,
)
from .field import FieldTables
from .productsets import ElementSet, productset, rep_function, shifted_productset
from .progressions import (
    ProgressionWitness,
    compute_m_set,
    find_ap_of_length,
    find_gp_of_length,
)
from .reports import PropertyReport

# the O(q^2 k) counting loops stay desk-scale
DEFAULT_OP_BUDGET = 10**9
# full character expansion is O((q-1)^k q^2); tiny fields only
IDENTITY_TUPLE_CAP = 10**5
CAUCHY_Q_CAP = 1 << 12


@dataclass(frozen=True)
class CountReport:
    """Exact solution count with the proof's main term and error bound.

    main_term and the squared error bound are exact rationals;
    inequality_holds is decided by comparing (count - main)^2 against the
    squared bound in exact arithmetic.  threshold_satisfied applies the
    theorem hypothesis to the raw cardinalities; the main term and bound use
    the starred (zero-free) ones.
    """

    kind: str  # "T" or "Q"
    q: int
    k: int
    h: int | None
    count: int
    main_term: Fraction
    error_bound: float
    error_bound_sq: Fraction
    inequality_holds: bool
    threshold_satisfied: bool
    bound_applicable: bool
    card_a: int
    card_b: int
    card_a_star: int
    card_b_star: int
    m_card: int | None


@dataclass(frozen=True)
class TheoremCheck:
    """Exact hypothesis check plus the progression search it guarantees."""

    theorem: int
    q: int
    k: int
    h: int | None
    card_a: int
    card_b: int
    threshold_lhs: int
    threshold_rhs: int
    threshold_satisfied: bool
    simplified_rhs: int
    simplified_satisfied: bool
    found: bool
    witness: ProgressionWitness | None
    consistent: bool


def _star_cards(a: ElementSet, b: ElementSet) -> tuple[int, int]:
    return a.nonzero().card, b.nonzero().card


def _budget_check(q: int, k: int, max_ops: int) -> None:
    if q * q * k > max_ops:
        raise ConfigError(f"q^2*k = {q * q * k} exceeds the op budget {max_ops}")


def _product_sum(r: np.ndarray, index_rows: list[np.ndarray]) -> int:
    """Exact sum over positions of the product of r at each index row."""
    maxr = int(r.max())
    if maxr == 0:
        return 0
    k = len(index_rows)
    width = len(index_rows[0])
    # keep the per-row product and its sum inside int64 when provably safe
    if k * math.log2(maxr if maxr > 1 else 2) + math.log2(width) <= 62:
        prod = r[index_rows[0]].copy()
        for row in index_rows[1:]:
            prod *= r[row]
        return int(prod.sum())
    ro = r.astype(object)
    prod = ro[index_rows[0]]
    for row in index_rows[1:]:
        prod = prod * ro[row]
    return int(prod.sum())


def count_ap_solutions(
    t: FieldTables,
    a: ElementSet,
    b: ElementSet,
    k: int,
    max_ops: int = DEFAULT_OP_BUDGET,
) -> CountReport:
    """Exact T = #solutions of lambda + (j-1)mu = a_j b_j with nonzero products."""
    if k < 3:
        raise KTooSmall(f"k={k}; the count is defined for k >= 3")
    if k >= t.p:
        raise KTooLarge(f"k={k} must be < characteristic p={t.p}")
    _budget_check(t.q, k, max_ops)
    q = t.q
    r = rep_function(t, a, b, restrict_nonzero=True).counts
    lam = np.arange(q)
    total = 0
    for mu in (int(v) for v in t.exp):
        rows = [lam]
        off = 0
        for _ in range(k - 1):
            off = t.add(off, mu)
            rows.append(t.add_vec(lam, off))
        total += _product_sum(r, rows)

    ca, cb = a.card, b.card
    cas, cbs = _star_cards(a, b)
    pstar = cas * cbs
    main = Fraction(q * pstar**k, (q - 1) ** (k - 1))
    err_sq = (k - 1) ** 2 * q * pstar ** (k + 1)
    holds = (Fraction(total) - main) ** 2 <= Fraction(err_sq)
    thr = (ca * cb) ** (k - 1) >= (k - 1) ** 2 * q ** (2 * k - 3)
    return CountReport(
        kind="T",
        q=q,
        k=k,
        h=None,
        count=total,
        main_term=main,
        error_bound=math.sqrt(err_sq),
        error_bound_sq=Fraction(err_sq),
        inequality_holds=holds,
        threshold_satisfied=thr,
        bound_applicable=True,
        card_a=ca,
        card_b=cb,
        card_a_star=cas,
        card_b_star=cbs,
        m_card=None,
    )


def count_gp_solutions(
    t: FieldTables,
    a: ElementSet,
    b: ElementSet,
    k: int,
    h: int,
    max_ops: int = DEFAULT_OP_BUDGET,
) -> CountReport:
    """Exact Q = #solutions of lambda mu^(j-1) = a_j b_j + h, mu of order >= k.

    The error bound carries the proof hypothesis k <= sqrt(q);
    bound_applicable records whether it held.
    """
    if k < 3:
        raise KTooSmall(f"k={k}; the count is defined for k >= 3")
    _budget_check(t.q, k, max_ops)
    q = t.q
    group = t.order
    m_set = compute_m_set(t, k)
    r = rep_function(t, a, b, restrict_nonzero=True).counts
    neg_h = t.neg(h)
    dlam = t.dlog[np.arange(1, q)]
    total = 0
    for mu in (int(v) for v in m_set.indices()):
        dmu = int(t.dlog[mu])
        rows = []
        for j in range(k):
            args = t.exp[(dlam + j * dmu) % group]
            rows.append(t.add_vec(args, neg_h))
        total += _product_sum(r, rows)

    ca, cb = a.card, b.card
    cas, cbs = _star_cards(a, b)
    pstar = cas * cbs
    main = Fraction(pstar**k * m_set.card, (q - 1) ** (k - 1))
    err_sq = 4 * (k - 1) ** 2 * q * pstar ** (k + 1)
    holds = (Fraction(total) - main) ** 2 <= Fraction(err_sq)
    thr = (ca * cb) ** (k - 1) >= (4 * k - 4) ** 2 * q ** (2 * k - 3)
    return CountReport(
        kind="Q",
        q=q,
        k=k,
        h=h,
        count=total,
        main_term=main,
        error_bound=math.sqrt(err_sq),
        error_bound_sq=Fraction(err_sq),
        inequality_holds=holds,
        threshold_satisfied=thr,
        bound_applicable=k * k <= q,
        card_a=ca,
        card_b=cb,
        card_a_star=cas,
        card_b_star=cbs,
        m_card=m_set.card,
    )


def verify_counting_identity_ap(
    t: FieldTables, a: ElementSet, b: ElementSet, k: int, tol: float
) -> PropertyReport:
    """Evaluate T through the full character expansion and compare exactly.

    Also asserts that the (lambda, mu) structure factor vanishes for every
    character tuple whose product is nonprincipal.
    """
    q = t.q
    group = t.order
    if group ** (k - 1) > IDENTITY_TUPLE_CAP:
        raise ConfigError(f"(q-1)^(k-1) exceeds {IDENTITY_TUPLE_CAP}; tiny fields only")
    count = count_ap_solutions(t, a, b, k).count

    sa = all_set_char_sums(t, a)
    sb = all_set_char_sums(t, b)

    # dlogs of lambda + (j-1)mu over (j, mu, lambda), flattened per j
    lam = np.arange(q)
    rows = []
    for j in range(k):
        cols = []
        for mu in (int(v) for v in t.exp):
            off = t.mul(t.scalar(j), mu)
            cols.append(t.dlog[t.add_vec(lam, off)])
        rows.append(np.concatenate(cols))
    dmat = np.stack(rows)

    worst_structure = 0.0
    expansion = 0j
    for tup in itertools.product(range(group), repeat=k):
        vals = np.ones(dmat.shape[1], dtype=complex)
        for c, row in zip(tup, dmat):
            vals = vals * np.where(row < 0, 0j, t.roots[(c * row) % group])
        w = vals.sum()
        if sum(tup) % group != 0:
            mag = abs(w)
            if mag >= tol:
                raise IdentityViolation(f"structure factor at tuple {tup}", mag)
            worst_structure = max(worst_structure, mag)
        term = w
        for c in tup:
            term *= np.conj(sa[c]) * np.conj(sb[c])
        expansion += term
    expansion /= group**k
    dev = abs(expansion - count)
    if dev >= tol:
        raise IdentityViolation(f"expansion={expansion} vs count={count}", dev)
    return PropertyReport(
        suite="identity",
        passed=True,
        checks=group**k,
        max_residual=max(dev, worst_structure),
        tolerance=tol,
        details={
            "q": q,
            "k": k,
            "count": count,
            "expansion_re": expansion.real,
            "structure_residual": worst_structure,
        },
    )


def verify_cauchy_step(
    t: FieldTables, a: ElementSet, b: ElementSet, tol: float | None = None
) -> PropertyReport:
    """Check sum over characters of |S_A*(chi)| |S_B*(chi)| <= (q-1)sqrt(#A* #B*)."""
    if t.q > CAUCHY_Q_CAP:
        raise ConfigError(f"Cauchy check capped at q <= {CAUCHY_Q_CAP}")
    if tol is None:
        tol = 1e-9 * t.q
    cas, cbs = _star_cards(a, b)
    lhs = float(np.abs(all_set_char_sums(t, a)) @ np.abs(all_set_char_sums(t, b)))
    rhs = (t.q - 1) * math.sqrt(cas * cbs)
    if lhs > rhs + tol:
        raise CauchyViolation(lhs, rhs)
    return PropertyReport(
        suite="cauchy",
        passed=True,
        checks=t.order,
        max_residual=lhs - rhs,
        tolerance=tol,
        details={"q": t.q, "lhs": lhs, "rhs": rhs, "card_a_star": cas, "card_b_star": cbs},
    )


def check_theorem1(t: FieldTables, a: ElementSet, b: ElementSet, k: int) -> TheoremCheck:
    """Exact threshold (#A#B)^(k-1) >= (k-1)^2 q^(2k-3), then search A*B.

    The search runs regardless so unsatisfied instances still report what was
    found; a satisfied threshold with no progression is a soundness failure
    surfaced by the caller.
    """
    if k < 3:
        raise KTooSmall(f"k={k}; the theorem needs k >= 3")
    if k >= t.p:
        raise KTooLarge(f"k={k} must be < characteristic p={t.p}")
    q = t.q
    lhs = (a.card * b.card) ** (k - 1)
    rhs = (k - 1) ** 2 * q ** (2 * k - 3)
    simplified_rhs = 2 ** (k - 1) * q ** (2 * k - 3)
    prod = productset(t, a, b)
    witness = find_ap_of_length(t, prod, k)
    found = witness is not None
    sat = lhs >= rhs
    return TheoremCheck(
        theorem=1,
        q=q,
        k=k,
        h=None,
        card_a=a.card,
        card_b=b.card,
        threshold_lhs=lhs,
        threshold_rhs=rhs,
        threshold_satisfied=sat,
        simplified_rhs=simplified_rhs,
        simplified_satisfied=lhs >= simplified_rhs,
        found=found,
        witness=witness,
        consistent=(not sat) or found,
    )


def check_theorem2(
    t: FieldTables, a: ElementSet, b: ElementSet, k: int, h: int
) -> TheoremCheck:
    """Exact threshold (#A#B)^(k-1) >= (4k-4)^2 q^(2k-3), then search A*B + h."""
    if h == 0:
        raise ZeroShift("shift h must be nonzero")
    if k < 3:
        raise KTooSmall(f"k={k}; the theorem needs k >= 3")
    q = t.q
    lhs = (a.card * b.card) ** (k - 1)
    rhs = (4 * k - 4) ** 2 * q ** (2 * k - 3)
    simplified_rhs = 8 ** (k - 1) * q ** (2 * k - 3)
    shifted = shifted_productset(t, a, b, h)
    witness = find_gp_of_length(t, shifted, k)
    found = witness is not None
    sat = lhs >= rhs
    return TheoremCheck(
        theorem=2,
        q=q,
        k=k,
        h=h,
        card_a=a.card,
        card_b=b.card,
        threshold_lhs=lhs,
        threshold_rhs=rhs,
        threshold_satisfied=sat,
        simplified_rhs=simplified_rhs,
        simplified_satisfied=lhs >= simplified_rhs,
        found=found,
        witness=witness,
        consistent=(not sat) or found,
    )
