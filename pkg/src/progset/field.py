"""Exact arithmetic for GF(p^n) via exp/dlog tables against a fixed generator.

Elements are integer indices in [0, q): the index packs the coefficient
vector (a_0, ..., a_{n-1}) of the element as sum a_i * p^i, so index 0 is the
additive zero and, for n = 1, the index is the residue itself.  Addition is
coefficient arithmetic; multiplication goes through the discrete-log tables.
Tables are immutable after construction and safe to share across threads.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

from .errors import (
    ConfigError,
    DlogOfZero,
    FieldTooLarge,
    NotPrime,
    ReducibleModulus,
    ZeroInverse,
)

DEFAULT_MAX_Q = 1 << 20


def max_field_size() -> int:
    """Configured field-size cap (env PROGSET_MAX_Q overrides the default)."""
    raw = os.environ.get("PROGSET_MAX_Q")
    if raw is None:
        return DEFAULT_MAX_Q
    try:
        return int(raw)
    except ValueError as exc:
        raise ConfigError(f"PROGSET_MAX_Q={raw!r} is not an integer") from exc


def is_prime(v: int) -> bool:
    """Deterministic trial-division primality test, fine at desk scale."""
    if v < 2:
        return False
    if v < 4:
        return True
    if v % 2 == 0:
        return False
    f = 3
    while f * f <= v:
        if v % f == 0:
            return False
        f += 2
    return True


def factorize(v: int) -> dict[int, int]:
    """Prime factorization by trial division."""
    out: dict[int, int] = {}
    f = 2
    while f * f <= v:
        while v % f == 0:
            out[f] = out.get(f, 0) + 1
            v //= f
        f += 1 if f == 2 else 2
    if v > 1:
        out[v] = out.get(v, 0) + 1
    return out


# --- polynomial helpers over F_p (little-endian coefficient lists) ----------

def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mulmod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    prod = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            prod[i + j] = (prod[i + j] + ai * bj) % p
    return _poly_mod(prod, mod, p)


def _poly_mod(a: list[int], mod: list[int], p: int) -> list[int]:
    # mod is monic
    a = a[:]
    deg_m = len(mod) - 1
    for i in range(len(a) - 1, deg_m - 1, -1):
        c = a[i] % p
        if c:
            for j in range(deg_m + 1):
                a[i - deg_m + j] = (a[i - deg_m + j] - c * mod[j]) % p
    del a[deg_m:]
    return _poly_trim(a)


def _poly_powmod(a: list[int], e: int, mod: list[int], p: int) -> list[int]:
    result = [1]
    base = _poly_mod(a[:], mod, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        e >>= 1
    return result


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _poly_trim(a[:]), _poly_trim(b[:])
    while b:
        lc_inv = pow(b[-1], p - 2, p)
        monic_b = [(c * lc_inv) % p for c in b]
        a, b = b, _poly_mod(a, monic_b, p)
    return a


def _has_root(f: list[int], p: int) -> bool:
    for x in range(p):
        acc = 0
        for c in reversed(f):
            acc = (acc * x + c) % p
        if acc == 0:
            return True
    return False


def is_irreducible(coeffs: list[int], p: int) -> bool:
    """Irreducibility over F_p: root check up to degree 3, Frobenius gcds above."""
    deg = len(coeffs) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    if coeffs[0] == 0:
        return False
    if deg <= 3:
        return not _has_root(coeffs, p)
    # x^{p^i} - x shares a factor with f iff f has an irreducible factor of
    # degree dividing i; checking i <= deg/2 covers every proper factor.
    cur = [0, 1]
    for _ in range(deg // 2):
        cur = _poly_powmod(cur, p, coeffs, p)
        diff = cur[:]
        while len(diff) < 2:
            diff.append(0)
        diff[1] = (diff[1] - 1) % p
        g = _poly_gcd(coeffs, diff, p)
        if len(g) - 1 > 0:
            return False
    return True


def _smallest_irreducible(p: int, n: int) -> tuple[int, ...]:
    """Monic irreducible of degree n minimizing the packed low-coefficient index."""
    for m in range(p**n):
        coeffs = [(m // p**i) % p for i in range(n)] + [1]
        if is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise ReducibleModulus(f"no irreducible of degree {n} over F_{p}")  # unreachable


@dataclass(frozen=True)
class FieldSpec:
    """Field parameters: q = p^n with a monic irreducible modulus for n > 1."""

    p: int
    n: int
    modulus: tuple[int, ...] | None
    q: int


class FieldTables:
    """Prebuilt exp/dlog tables for GF(q) with the smallest-index generator.

    exp[j] = g^j for j in [0, q-1); dlog[x] recovers j for nonzero x and is -1
    at the zero element.
    """

    __slots__ = ("spec", "g", "exp", "dlog", "_roots")

    def __init__(self, spec: FieldSpec, g: int, exp: np.ndarray, dlog: np.ndarray):
        self.spec = spec
        self.g = g
        self.exp = exp
        self.dlog = dlog
        self._roots = None

    @property
    def p(self) -> int:
        return self.spec.p

    @property
    def n(self) -> int:
        return self.spec.n

    @property
    def q(self) -> int:
        return self.spec.q

    @property
    def order(self) -> int:
        """Size of the multiplicative group, q - 1."""
        return self.spec.q - 1

    def __repr__(self) -> str:
        return f"FieldTables(GF({self.p}^{self.n}), g={self.g})"

    # --- scalar operations ---------------------------------------------

    def add(self, x: int, y: int) -> int:
        p, n = self.spec.p, self.spec.n
        if n == 1:
            return (x + y) % p
        if p == 2:
            return x ^ y
        out = 0
        pw = 1
        for _ in range(n):
            out += ((x % p + y % p) % p) * pw
            x //= p
            y //= p
            pw *= p
        return out

    def neg(self, x: int) -> int:
        p, n = self.spec.p, self.spec.n
        if n == 1:
            return (-x) % p
        if p == 2:
            return x
        out = 0
        pw = 1
        for _ in range(n):
            out += ((-(x % p)) % p) * pw
            x //= p
            pw *= p
        return out

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        j = (int(self.dlog[x]) + int(self.dlog[y])) % self.order
        return int(self.exp[j])

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroInverse("zero has no multiplicative inverse")
        j = (-int(self.dlog[x])) % self.order
        return int(self.exp[j])

    def pow(self, x: int, e: int) -> int:
        if x == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroInverse("negative power of zero")
            return 0
        j = (int(self.dlog[x]) * e) % self.order
        return int(self.exp[j])

    def dlog_of(self, x: int) -> int:
        if x == 0:
            raise DlogOfZero("discrete log of zero is undefined")
        return int(self.dlog[x])

    def scalar(self, j: int) -> int:
        """The element j * 1 (integer embedded through the prime subfield)."""
        return j % self.spec.p

    # --- vectorized operations ------------------------------------------

    def add_vec(self, xs: np.ndarray, y: int) -> np.ndarray:
        """Elementwise xs + y over the field (y a single element index)."""
        p, n = self.spec.p, self.spec.n
        if n == 1:
            return (xs + y) % p
        if p == 2:
            return xs ^ y
        out = np.zeros_like(xs)
        rx = xs
        ry = y
        pw = 1
        for _ in range(n):
            out += ((rx % p + ry % p) % p) * pw
            rx = rx // p
            ry //= p
            pw *= p
        return out

    # --- characters -------------------------------------------------------

    @property
    def roots(self) -> np.ndarray:
        """(q-1)-th roots of unity; roots[j] = e^(2*pi*i*j/(q-1))."""
        if self._roots is None:
            theta = 2.0 * np.pi * np.arange(self.order) / self.order
            self._roots = np.cos(theta) + 1j * np.sin(theta)
        return self._roots


def _find_generator(p: int, n: int, q: int, modulus: tuple[int, ...] | None) -> int:
    """Smallest element index of multiplicative order exactly q - 1."""
    group = q - 1
    prime_factors = list(factorize(group))

    if n == 1:
        def pow_idx(x: int, e: int) -> int:
            return pow(x, e, p)
    else:
        mod = list(modulus)

        def pow_idx(x: int, e: int) -> int:
            coeffs = [(x // p**i) % p for i in range(n)]
            res = _poly_powmod(coeffs, e, mod, p)
            return sum(c * p**i for i, c in enumerate(res))

    for cand in range(1, q):
        if all(pow_idx(cand, group // f) != 1 for f in prime_factors):
            return cand
    raise ConfigError(f"no generator found for q={q}")  # unreachable for a true field


def build_field(
    p: int,
    n: int = 1,
    modulus: list[int] | tuple[int, ...] | None = None,
    max_q: int | None = None,
) -> FieldTables:
    """Construct GF(p^n) with exp/dlog tables.

    Deterministic for fixed inputs: the modulus, when omitted, is the monic
    irreducible of degree n whose packed low-coefficient index is smallest,
    and the generator is the smallest-index element of full order.
    """
    if not is_prime(p):
        raise NotPrime(p)
    if n < 1:
        raise ConfigError(f"extension degree must be >= 1, got {n}")
    q = p**n
    cap = max_field_size() if max_q is None else max_q
    if q > cap:
        raise FieldTooLarge(q, cap)

    if n == 1:
        if modulus is not None:
            raise ConfigError("modulus is only meaningful for n > 1")
        mod_t: tuple[int, ...] | None = None
    elif modulus is None:
        mod_t = _smallest_irreducible(p, n)
    else:
        mod_t = tuple(int(c) % p for c in modulus)
        if len(mod_t) != n + 1 or mod_t[-1] != 1:
            raise ConfigError(f"modulus must be monic of degree {n}")
        if not is_irreducible(list(mod_t), p):
            raise ReducibleModulus(f"modulus {list(mod_t)} is reducible over F_{p}")

    spec = FieldSpec(p=p, n=n, modulus=mod_t, q=q)
    g = _find_generator(p, n, q, mod_t)

    exp = np.empty(q - 1, dtype=np.int64)
    if n == 1:
        acc = 1
        for j in range(q - 1):
            exp[j] = acc
            acc = (acc * g) % p
    else:
        mod = list(mod_t)
        g_poly = [(g // p**i) % p for i in range(n)]
        acc_poly = [1]
        for j in range(q - 1):
            exp[j] = sum(c * p**i for i, c in enumerate(acc_poly))
            acc_poly = _poly_mulmod(acc_poly, g_poly, mod, p)

    dlog = np.full(q, -1, dtype=np.int64)
    dlog[exp] = np.arange(q - 1)
    if dlog[0] != -1 or np.count_nonzero(dlog >= 0) != q - 1:
        raise ConfigError("exp table is not a bijection; generator order wrong")

    return FieldTables(spec, g, exp, dlog)
