"""Exact arithmetic in GF(q) for prime powers q = p^m.

Elements are encoded as integers in [0, q): the element sum(a_i * alpha^i)
maps to sum(a_i * p^i) with digits a_i in [0, p), where alpha is a root of
the canonical irreducible polynomial.  The canonical irreducible for each
extension degree is the first irreducible monic x^m + sum(c_i x^i) found
when scanning coefficient encodings sum(c_i p^i) in ascending order, so a
given q always yields the same field, the same encodings, and the same
files on every run.

Prime fields (m = 1) reduce to plain modular arithmetic.  Extension fields
multiply via polynomial convolution reduced by the canonical irreducible;
for small q the full q x q operation tables are cached so element ops are
two list lookups.  Numpy copies of the tables back the bulk enumeration
engines elsewhere in the package.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .errors import DivisionByZero, FieldMismatch, NotPrimePower, TooLarge

MAX_FIELD_SIZE = 1 << 16
# Full q x q tables are only materialized below this size (memory bound).
TABLE_MAX_Q = 4096
# Python-side lookup tables for hot scalar paths.
_SCALAR_TABLE_MAX_Q = 1024


@dataclass(frozen=True)
class FieldSpec:
    """Immutable description of GF(q) with q = p^m.

    irr holds the low coefficients c_0..c_{m-1} of the monic irreducible
    x^m + sum(c_i x^i); it is empty for prime fields.
    """

    q: int
    p: int
    m: int
    irr: tuple[int, ...]

    def element(self, enc: int) -> "FieldElement":
        if not 0 <= enc < self.q:
            raise ValueError(f"encoding {enc} out of range for GF({self.q})")
        return FieldElement(enc, self)

    def zero(self) -> "FieldElement":
        return FieldElement(0, self)

    def one(self) -> "FieldElement":
        return FieldElement(1, self)

    def __repr__(self) -> str:
        return f"FieldSpec(GF({self.q}))"


class FieldElement:
    """An element of a FieldSpec, identified by its integer encoding."""

    __slots__ = ("enc", "field")

    def __init__(self, enc: int, field: FieldSpec):
        self.enc = enc
        self.field = field

    def _check(self, other: "FieldElement") -> None:
        if not isinstance(other, FieldElement):
            raise TypeError(f"cannot combine FieldElement with {type(other).__name__}")
        if other.field is not self.field and other.field != self.field:
            raise FieldMismatch(f"mixed fields GF({self.field.q}) and GF({other.field.q})")

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(_ops(self.field).add(self.enc, other.enc), self.field)

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(_ops(self.field).sub(self.enc, other.enc), self.field)

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(_ops(self.field).mul(self.enc, other.enc), self.field)

    def __neg__(self) -> "FieldElement":
        return FieldElement(_ops(self.field).neg(self.enc), self.field)

    def __pow__(self, n: int) -> "FieldElement":
        if n < 0:
            return invert(self) ** (-n)
        ops = _ops(self.field)
        result, base = 1, self.enc
        while n:
            if n & 1:
                result = ops.mul(result, base)
            base = ops.mul(base, base)
            n >>= 1
        return FieldElement(result, self.field)

    def inverse(self) -> "FieldElement":
        return invert(self)

    def __bool__(self) -> bool:
        return self.enc != 0

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FieldElement)
            and self.enc == other.enc
            and self.field == other.field
        )

    def __hash__(self) -> int:
        return hash((self.enc, self.field.q))

    def __repr__(self) -> str:
        return f"GF{self.field.q}({self.enc})"


# --- field construction -------------------------------------------------


def make_field(q: int) -> FieldSpec:
    """Build the canonical FieldSpec for GF(q).

    Raises NotPrimePower if q is not a prime power >= 2, TooLarge past the
    size cap.  Repeated calls return the identical cached spec.
    """
    if not isinstance(q, int) or isinstance(q, bool):
        raise NotPrimePower(f"field size must be an integer, got {q!r}")
    if q > MAX_FIELD_SIZE:
        raise TooLarge(f"field size {q} exceeds cap {MAX_FIELD_SIZE}")
    if q < 2:
        raise NotPrimePower(f"field size must be at least 2, got {q}")
    return _make_field_cached(q)


@functools.lru_cache(maxsize=None)
def _make_field_cached(q: int) -> FieldSpec:
    p, m = _factor_prime_power(q)
    irr = () if m == 1 else _smallest_irreducible(p, m)
    return FieldSpec(q=q, p=p, m=m, irr=irr)


def _factor_prime_power(q: int) -> tuple[int, int]:
    p = q
    for d in range(2, q + 1):
        if d * d > q:
            break
        if q % d == 0:
            p = d
            break
    n, m = q, 0
    while n % p == 0:
        n //= p
        m += 1
    if n != 1:
        raise NotPrimePower(f"{q} is not a prime power")
    return p, m


def _digits(enc: int, p: int, m: int) -> list[int]:
    out = []
    for _ in range(m):
        out.append(enc % p)
        enc //= p
    return out


def _poly_divmod(num: list[int], den: list[int], p: int) -> tuple[list[int], list[int]]:
    """Long division of dense coefficient lists (low-to-high) over GF(p)."""
    num = list(num)
    dlead = den[-1]
    dinv = pow(dlead, p - 2, p)
    deg_d = len(den) - 1
    quot = [0] * max(1, len(num) - deg_d)
    for i in range(len(num) - 1, deg_d - 1, -1):
        c = num[i]
        if c == 0:
            continue
        factor = (c * dinv) % p
        quot[i - deg_d] = factor
        for j, dc in enumerate(den):
            num[i - deg_d + j] = (num[i - deg_d + j] - factor * dc) % p
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return quot, num


def _is_irreducible(coeffs: list[int], p: int) -> bool:
    """Brute-force irreducibility: no roots, then no monic divisor up to deg m/2."""
    m = len(coeffs) - 1
    for x in range(p):
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * x + c) % p
        if acc == 0:
            return False
    for deg in range(2, m // 2 + 1):
        for denc in range(p**deg):
            den = _digits(denc, p, deg) + [1]
            _, rem = _poly_divmod(coeffs, den, p)
            if rem == [0]:
                return False
    return True


def _smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    for enc in range(p**m):
        low = _digits(enc, p, m)
        if _is_irreducible(low + [1], p):
            return tuple(low)
    raise NotPrimePower(f"no irreducible of degree {m} over GF({p})")  # unreachable


# --- element-level operation kernels ------------------------------------


class _FieldOps:
    """Per-field scalar kernels on integer encodings."""

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        p, m, q = spec.p, spec.m, spec.q
        if m == 1:
            self.add = lambda a, b: (a + b) % p
            self.sub = lambda a, b: (a - b) % p
            self.neg = lambda a: (-a) % p
            self.mul = lambda a, b: (a * b) % p
        elif q <= _SCALAR_TABLE_MAX_Q:
            add_t, mul_t = _int_tables(spec)
            neg_row = [0] * q
            for a in range(q):
                row = add_t[a]
                neg_row[a] = next(b for b in range(q) if row[b] == 0)
            self.add = lambda a, b: add_t[a][b]
            self.sub = lambda a, b: add_t[a][neg_row[b]]
            self.neg = lambda a: neg_row[a]
            self.mul = lambda a, b: mul_t[a][b]
        else:
            self.add = lambda a, b: _add_ext(a, b, p, m)
            self.sub = lambda a, b: _add_ext(a, _neg_ext(b, p, m), p, m)
            self.neg = lambda a: _neg_ext(a, p, m)
            self.mul = lambda a, b: _mul_ext(a, b, spec)


def _add_ext(a: int, b: int, p: int, m: int) -> int:
    if p == 2:
        return a ^ b
    out, mult = 0, 1
    for _ in range(m):
        out += ((a + b) % p) * mult
        a //= p
        b //= p
        mult *= p
    return out


def _neg_ext(a: int, p: int, m: int) -> int:
    if p == 2:
        return a
    out, mult = 0, 1
    for _ in range(m):
        out += ((-a) % p) * mult
        a //= p
        mult *= p
    return out


def _mul_ext(a: int, b: int, spec: FieldSpec) -> int:
    """Polynomial product of encodings reduced by the canonical irreducible."""
    p, m = spec.p, spec.m
    da = _digits(a, p, m)
    db = _digits(b, p, m)
    prod = [0] * (2 * m - 1)
    for i, ai in enumerate(da):
        if ai == 0:
            continue
        for j, bj in enumerate(db):
            prod[i + j] = (prod[i + j] + ai * bj) % p
    # reduce: x^m = -sum(c_i x^i)
    for i in range(2 * m - 2, m - 1, -1):
        c = prod[i]
        if c == 0:
            continue
        prod[i] = 0
        for j, cj in enumerate(spec.irr):
            prod[i - m + j] = (prod[i - m + j] - c * cj) % p
    out, mult = 0, 1
    for d in prod[:m]:
        out += d * mult
        mult *= p
    return out


@functools.lru_cache(maxsize=None)
def _ops(spec: FieldSpec) -> _FieldOps:
    return _FieldOps(spec)


@functools.lru_cache(maxsize=None)
def _int_tables(spec: FieldSpec) -> tuple[list[list[int]], list[list[int]]]:
    add_np, mul_np = tables(spec)
    return add_np.tolist(), mul_np.tolist()


# --- public operations ---------------------------------------------------


def arith(a: FieldElement, b: FieldElement, kind: str) -> FieldElement:
    """Apply add / sub / mul to two elements of the same field."""
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    raise ValueError(f"unknown arithmetic kind {kind!r}")


def invert(a: FieldElement) -> FieldElement:
    """Multiplicative inverse; DivisionByZero for 0."""
    if a.enc == 0:
        raise DivisionByZero(f"inverse of zero in GF({a.field.q})")
    # a^(q-2) works in every finite field; q <= 2^16 keeps this cheap.
    return a ** (a.field.q - 2)


def elements(field: FieldSpec) -> list[FieldElement]:
    """All q elements in ascending encoding order, starting 0, 1, ..."""
    return [FieldElement(e, field) for e in range(field.q)]


# --- bulk numpy tables ----------------------------------------------------


@functools.lru_cache(maxsize=8)
def tables(spec: FieldSpec) -> tuple[np.ndarray, np.ndarray]:
    """(add, mul) q x q uint16 lookup tables for vectorized enumeration.

    mul is built from exp/log over a multiplicative generator, add from
    digitwise sums; both therefore derive from the same canonical
    representation as the scalar kernels.
    """
    q, p, m = spec.q, spec.p, spec.m
    if q > TABLE_MAX_Q:
        raise TooLarge(f"operation tables unsupported above q={TABLE_MAX_Q}, got {q}")
    idx = np.arange(q, dtype=np.int64)
    if m == 1:
        add = (idx[:, None] + idx[None, :]) % p
        mul = (idx[:, None] * idx[None, :]) % p
        return add.astype(np.uint16), mul.astype(np.uint16)

    digits = np.zeros((q, m), dtype=np.int64)
    rest = idx.copy()
    for i in range(m):
        digits[:, i] = rest % p
        rest //= p
    weights = p ** np.arange(m, dtype=np.int64)
    add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights

    exp, log = _exp_log(spec)
    exp_np = np.asarray(exp, dtype=np.int64)
    log_np = np.asarray(log, dtype=np.int64)
    mul = np.zeros((q, q), dtype=np.int64)
    nz = np.arange(1, q, dtype=np.int64)
    mul[1:, 1:] = exp_np[(log_np[nz][:, None] + log_np[nz][None, :]) % (q - 1)]
    return add.astype(np.uint16), mul.astype(np.uint16)


@functools.lru_cache(maxsize=8)
def _exp_log(spec: FieldSpec) -> tuple[list[int], list[int]]:
    q = spec.q
    g = _find_generator(spec)
    exp = [1] * (q - 1)
    for i in range(1, q - 1):
        exp[i] = _mul_ext(exp[i - 1], g, spec) if spec.m > 1 else (exp[i - 1] * g) % spec.p
    log = [0] * q
    for i, e in enumerate(exp):
        log[e] = i
    return exp, log


def _find_generator(spec: FieldSpec) -> int:
    q = spec.q
    factors = _prime_factors(q - 1)
    mul = (lambda a, b: _mul_ext(a, b, spec)) if spec.m > 1 else (lambda a, b: (a * b) % spec.p)

    def order_ok(g: int) -> bool:
        for f in factors:
            e, acc, base = (q - 1) // f, 1, g
            while e:
                if e & 1:
                    acc = mul(acc, base)
                base = mul(base, base)
                e >>= 1
            if acc == 1:
                return False
        return True

    for g in range(2, q):
        if order_ok(g):
            return g
    raise RuntimeError(f"no generator found for GF({q})")  # unreachable for true fields


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out
