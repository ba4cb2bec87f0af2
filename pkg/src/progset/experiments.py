"""Desk-scale studies: threshold sweeps, growth measurements, QR tables.

Trials are independent tasks keyed by (grid point, trial index); results are
assembled in key order, so identical configurations produce identical tables
for any worker count.  Per-trial seeds derive from hash(base seed, q, grid
index, trial index).
"""

from __future__ import annotations

import functools
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .counting import check_theorem1, check_theorem2
from .errors import ConfigError, TheoremCounterexample, VerificationError
from .field import FieldTables, build_field, factorize, is_prime
from .generators import quadratic_residues, random_subset
from .productsets import productset, shifted_productset
from .progressions import find_ap_of_length, longest_ap, longest_gp
from .rng import derive_seed

SWEEP_Q_CAP = 1 << 14
QR_P_CAP = 1 << 14


@functools.lru_cache(maxsize=32)
def _cached_field(p: int, n: int, modulus: tuple | None) -> FieldTables:
    return build_field(p, n, modulus)


def field_params_for(q: int) -> tuple[int, int]:
    """(p, n) for a prime power q; ConfigError otherwise."""
    fac = factorize(q)
    if len(fac) != 1:
        raise ConfigError(f"q={q} is not a prime power")
    ((p, n),) = fac.items()
    return p, n


@dataclass(frozen=True)
class SweepConfig:
    kind: str  # "ap" | "gp"
    p: int
    n: int = 1
    modulus: tuple | None = None
    k: int = 3
    h: int = 1
    densities: tuple = (0.3, 0.5, 0.7, 0.82, 1.0)
    trials: int = 20
    seed: int = 0
    workers: int = 1

    def validate(self) -> None:
        if self.kind not in ("ap", "gp"):
            raise ConfigError(f"kind must be ap or gp, got {self.kind!r}")
        if not self.densities:
            raise ConfigError("density grid is empty")
        if any(not 0.0 < d <= 1.0 for d in self.densities):
            raise ConfigError("densities must lie in (0, 1]")
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if self.kind == "gp" and self.h == 0:
            raise ConfigError("gp sweep needs a nonzero shift h")
        if self.p**self.n > SWEEP_Q_CAP:
            raise ConfigError(f"sweep capped at q <= {SWEEP_Q_CAP}")


@dataclass
class SweepPoint:
    density: float
    trials: int
    success_fraction: float
    hypothesis_fraction: float
    mean_longest: float
    theorem_marker: float
    timing_ms: float


@dataclass
class SweepResult:
    kind: str
    q: int
    k: int
    h: int | None
    seed: int
    theorem_marker: float
    rows: list = field(default_factory=list)


def _theorem_marker(kind: str, q: int, k: int) -> float:
    """Density alpha with (alpha q)^2 equal to the theorem's cardinality bound."""
    c = (k - 1) if kind == "ap" else (4 * k - 4)
    bound = c ** (2.0 / (k - 1)) * q ** (2.0 - 1.0 / (k - 1))
    return math.sqrt(bound) / q


def _sweep_trial(task) -> dict:
    p, n, modulus, kind, k, h, density, tseed = task
    t = _cached_field(p, n, modulus)
    t0 = time.perf_counter()
    a = random_subset(t, density, derive_seed(tseed, 1))
    b = random_subset(t, density, derive_seed(tseed, 2))
    if kind == "ap":
        s = productset(t, a, b)
        if k < p:
            chk = check_theorem1(t, a, b, k)
            hyp, found = chk.threshold_satisfied, chk.found
        else:
            # theorem hypothesis needs k < p; exploratory data only
            hyp = False
            found = k <= p and find_ap_of_length(t, s, k) is not None
        longest = longest_ap(t, s)[0] if s.card >= 2 else s.card
    else:
        chk = check_theorem2(t, a, b, k, h)
        hyp, found = chk.threshold_satisfied, chk.found
        s = shifted_productset(t, a, b, h)
        longest = longest_gp(t, s)[0] if s.nonzero().card >= 1 else 0
    out = {
        "found": found,
        "hyp": hyp,
        "longest": longest,
        "elapsed_ms": (time.perf_counter() - t0) * 1000.0,
    }
    if hyp and not found:
        out["dump"] = {
            "q": t.q,
            "k": k,
            "h": h if kind == "gp" else None,
            "density": density,
            "trial_seed": tseed,
            "set_a": [int(i) for i in a.indices()],
            "set_b": [int(i) for i in b.indices()],
        }
    return out


def _run_tasks(fn, tasks, workers: int):
    if workers <= 1:
        return [fn(task) for task in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks, chunksize=max(1, len(tasks) // (4 * workers))))


def threshold_sweep(cfg: SweepConfig) -> SweepResult:
    """Success curve of k-progression presence against sampling density.

    Every trial whose exact theorem hypothesis holds must find a progression;
    the first violation in grid order aborts with a counterexample dump.
    """
    cfg.validate()
    q = cfg.p**cfg.n
    h = cfg.h if cfg.kind == "gp" else None
    tasks = []
    for di, density in enumerate(cfg.densities):
        for ti in range(cfg.trials):
            tseed = derive_seed(cfg.seed, q, di, ti)
            tasks.append((cfg.p, cfg.n, cfg.modulus, cfg.kind, cfg.k, cfg.h, density, tseed))
    results = _run_tasks(_sweep_trial, tasks, cfg.workers)

    marker = _theorem_marker(cfg.kind, q, cfg.k)
    rows = []
    idx = 0
    for di, density in enumerate(cfg.densities):
        chunk = results[idx : idx + cfg.trials]
        idx += cfg.trials
        for ti, res in enumerate(chunk):
            if "dump" in res:
                raise TheoremCounterexample(
                    f"hypothesis satisfied but no {cfg.kind} progression found "
                    f"(density={density}, trial={ti})",
                    res["dump"],
                )
        rows.append(
            SweepPoint(
                density=density,
                trials=cfg.trials,
                success_fraction=sum(r["found"] for r in chunk) / cfg.trials,
                hypothesis_fraction=sum(r["hyp"] for r in chunk) / cfg.trials,
                mean_longest=sum(r["longest"] for r in chunk) / cfg.trials,
                theorem_marker=marker,
                timing_ms=sum(r["elapsed_ms"] for r in chunk),
            )
        )
    return SweepResult(
        kind=cfg.kind, q=q, k=cfg.k, h=h, seed=cfg.seed, theorem_marker=marker, rows=rows
    )


@dataclass
class GrowthRow:
    q: int
    log_q: float
    trials: int
    mean_longest: float
    min_longest: int


@dataclass
class GrowthTable:
    kind: str
    alpha: float
    beta: float
    h: int | None
    seed: int
    kappa_hat: float | None
    rows: list = field(default_factory=list)


def _growth_trial(task) -> int:
    p, n, kind, h, alpha, beta, tseed = task
    t = _cached_field(p, n, None)
    a = random_subset(t, alpha, derive_seed(tseed, 1))
    b = random_subset(t, beta, derive_seed(tseed, 2))
    if kind == "ap":
        s = productset(t, a, b)
        return longest_ap(t, s)[0] if s.card >= 2 else s.card
    s = shifted_productset(t, a, b, h)
    return longest_gp(t, s)[0] if s.nonzero().card >= 1 else 0


def growth_experiment(
    kind: str,
    qs,
    alpha: float,
    beta: float,
    trials: int,
    seed: int,
    h: int = 1,
    workers: int = 1,
) -> GrowthTable:
    """Longest-progression growth against log q over random dense sets.

    kappa_hat is the least-squares slope of min longest length on log q; the
    guarantee is only that some positive slope exists, so the fit is reported,
    never asserted.
    """
    if kind not in ("ap", "gp"):
        raise ConfigError(f"kind must be ap or gp, got {kind!r}")
    if not qs:
        raise ConfigError("need at least one field size")
    if not (0.0 < alpha <= 1.0 and 0.0 < beta <= 1.0):
        raise ConfigError("alpha and beta must lie in (0, 1]")
    if trials < 1:
        raise ConfigError("trials must be >= 1")
    if kind == "gp" and h == 0:
        raise ConfigError("gp growth needs a nonzero shift h")

    tasks = []
    params = []
    for q in qs:
        p, n = field_params_for(q)
        params.append((q, p, n))
        for ti in range(trials):
            tasks.append((p, n, kind, h, alpha, beta, derive_seed(seed, q, 0, ti)))
    results = _run_tasks(_growth_trial, tasks, workers)

    rows = []
    idx = 0
    for q, p, n in params:
        chunk = results[idx : idx + trials]
        idx += trials
        rows.append(
            GrowthRow(
                q=q,
                log_q=math.log(q),
                trials=trials,
                mean_longest=sum(chunk) / trials,
                min_longest=min(chunk),
            )
        )
    kappa = None
    if len(rows) >= 2:
        xs = np.array([r.log_q for r in rows])
        ys = np.array([r.min_longest for r in rows], dtype=float)
        kappa = float(np.polyfit(xs, ys, 1)[0])
    return GrowthTable(
        kind=kind, alpha=alpha, beta=beta, h=h if kind == "gp" else None,
        seed=seed, kappa_hat=kappa, rows=rows,
    )


@dataclass
class QRRow:
    p: int
    qr_card: int
    closure_ok: bool
    longest_ap: int
    p_quarter: float
    p_half: float


@dataclass
class QRTable:
    rows: list = field(default_factory=list)


def qr_experiment(primes) -> QRTable:
    """Quadratic-residue productsets: closure, longest AP, and p^(1/4) reference.

    Asserts QR*QR = QR exactly and the loose sanity bound longest <= sqrt(p);
    the p^(1/4) column is informational only.
    """
    primes = list(primes)
    if not primes:
        raise ConfigError("need at least one prime")
    for p in primes:
        if p == 2 or not is_prime(p) or p > QR_P_CAP:
            raise ConfigError(f"p={p} must be an odd prime <= {QR_P_CAP}")
    rows = []
    for p in primes:
        t = _cached_field(p, 1, None)
        qr = quadratic_residues(t)
        closure = productset(t, qr, qr) == qr
        if not closure:
            raise VerificationError(f"QR productset not closed at p={p}")
        longest = longest_ap(t, qr)[0] if qr.card >= 2 else qr.card
        if longest > math.sqrt(p):
            raise VerificationError(
                f"longest AP {longest} in QR({p}) exceeds sqrt(p) sanity bound"
            )
        rows.append(
            QRRow(
                p=p,
                qr_card=qr.card,
                closure_ok=closure,
                longest_ap=longest,
                p_quarter=p**0.25,
                p_half=math.sqrt(p),
            )
        )
    return QRTable(rows=rows)
