"""Finite fields GF(p^m) defined by canonical primitive polynomials.

An element is an integer in ``[0, p**m)``; its base-p digits, least
significant first, are the coefficients ``(v0, ..., v_{m-1})`` of
``v0 + v1*x + ... + v_{m-1}*x**(m-1)`` modulo the field polynomial.

Scalar functions (:func:`mul`, :func:`inv`, ...) work for any field up to
order 2**63.  The vectorised methods on :class:`FieldSpec` rely on
log/antilog tables and are limited to orders up to :data:`TABLE_LIMIT`.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .errors import (
    DivisionByZero,
    FieldMismatch,
    LogOfZero,
    NotPrime,
    Overflow,
    TooLarge,
    ValueOutOfRange,
)

TABLE_LIMIT = 1 << 20
ADD_TABLE_LIMIT = 1 << 10
MAX_ORDER = 1 << 63


# -- polynomials over GF(p), coefficient lists low -> high ------------------

def _poly_mulmod(a, b, f, p):
    m = len(f) - 1
    res = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] += ai * bj
    for i in range(len(res) - 1, m - 1, -1):
        c = res[i] % p
        if c:
            for j in range(m):
                res[i - m + j] -= c * f[j]
        res[i] = 0
    out = [c % p for c in res[:m]]
    return out + [0] * (m - len(out))


def _poly_powmod(base, e, f, p):
    m = len(f) - 1
    result = [1] + [0] * (m - 1)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, f, p)
        base = _poly_mulmod(base, base, f, p)
        e >>= 1
    return result


def _is_primitive(f, p, m, prime_factors):
    if f[0] == 0:
        return False
    x = [0, 1] + [0] * (m - 2)
    one = [1] + [0] * (m - 1)
    order = p**m - 1
    if _poly_powmod(x, order, f, p) != one:
        return False
    return all(_poly_powmod(x, order // r, f, p) != one for r in prime_factors)


@dataclass(frozen=True)
class FieldSpec:
    """GF(p^m) fixed by its characteristic and monic primitive polynomial.

    ``poly`` lists ``(a0, ..., a_{m-1}, 1)``.  For prime fields the
    conventional placeholder ``(0, 1)`` is stored.
    """

    p: int
    m: int
    poly: tuple

    @property
    def q(self) -> int:
        return self.p**self.m

    def __str__(self) -> str:
        return f"{self.p}^{self.m}"

    def __repr__(self) -> str:
        return f"FieldSpec(GF({self.p}^{self.m}), poly={self.poly})"

    @property
    def is_prime(self) -> bool:
        return self.m == 1

    @cached_property
    def generator(self) -> int:
        """Encoding of the canonical multiplicative generator."""
        if self.m == 1:
            from sympy.ntheory import primitive_root

            return 1 if self.p == 2 else int(primitive_root(self.p))
        return self.p

    def check(self, a) -> np.ndarray:
        arr = np.asarray(a, dtype=np.int64)
        if arr.size and (arr.min() < 0 or arr.max() >= self.q):
            raise ValueOutOfRange(f"element outside GF({self}): {a!r}")
        return arr

    # -- tables ------------------------------------------------------------

    def _require_tables(self):
        if self.q > TABLE_LIMIT:
            raise TooLarge(f"GF({self}) is too large for table arithmetic")

    @cached_property
    def exp_table(self) -> np.ndarray:
        """``exp_table[r]`` is the generator raised to ``r``, for r < q-1."""
        self._require_tables()
        q, p, m = self.q, self.p, self.m
        out = np.empty(q - 1, dtype=np.int64)
        if m == 1:
            g, v = self.generator, 1
            for r in range(q - 1):
                out[r] = v
                v = v * g % p
            return out
        if p == 2:
            full = sum(c << i for i, c in enumerate(self.poly))
            v = 1
            for r in range(q - 1):
                out[r] = v
                v <<= 1
                if v & q:
                    v ^= full
            return out
        top = p ** (m - 1)
        red = [(-c) % p for c in self.poly[:m]]
        v = 1
        for r in range(q - 1):
            out[r] = v
            hi, lo = divmod(v, top)
            digits = [0] + _digits(lo, p, m - 1)
            v = sum(((d + hi * red[i]) % p) * p**i for i, d in enumerate(digits))
        return out

    @cached_property
    def log_table(self) -> np.ndarray:
        """Discrete logarithms; ``log_table[0]`` is -1."""
        exp = self.exp_table
        log = np.full(self.q, -1, dtype=np.int64)
        log[exp] = np.arange(self.q - 1, dtype=np.int64)
        return log

    @cached_property
    def _digit_table(self) -> np.ndarray:
        self._require_tables()
        v = np.arange(self.q, dtype=np.int64)
        return np.stack([(v // self.p**i) % self.p for i in range(self.m)], axis=-1)

    @cached_property
    def _add_table(self) -> np.ndarray:
        d = self._digit_table
        s = (d[:, None, :] + d[None, :, :]) % self.p
        return s @ (self.p ** np.arange(self.m, dtype=np.int64))

    @cached_property
    def _neg_table(self) -> np.ndarray:
        d = (-self._digit_table) % self.p
        return d @ (self.p ** np.arange(self.m, dtype=np.int64))

    # -- vectorised arithmetic ---------------------------------------------

    def digits(self, a) -> np.ndarray:
        """Base-p digits (least significant first) along a new last axis."""
        a = np.asarray(a, dtype=np.int64)
        return np.stack([(a // self.p**i) % self.p for i in range(self.m)], axis=-1)

    def from_digits(self, d) -> np.ndarray:
        d = np.asarray(d, dtype=np.int64)
        return d @ (self.p ** np.arange(self.m, dtype=np.int64))

    def add(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        if self.m == 1:
            return (a + b) % self.p
        if self.q <= ADD_TABLE_LIMIT:
            return self._add_table[a, b]
        return self.from_digits((self.digits(a) + self.digits(b)) % self.p)

    def neg(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return a
        if self.m == 1:
            return (-a) % self.p
        if self.q <= ADD_TABLE_LIMIT:
            return self._neg_table[a]
        return self.from_digits((-self.digits(a)) % self.p)

    def sub(self, a, b) -> np.ndarray:
        return self.add(a, self.neg(b))

    def mul(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.m == 1 and self.p < (1 << 31):
            return a * b % self.p
        log, exp = self.log_table, self.exp_table
        la, lb = log[a], log[b]
        out = exp[(la + lb) % (self.q - 1)]
        return np.where((la < 0) | (lb < 0), 0, out)

    def inv(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise DivisionByZero("inverse of zero")
        log = self.log_table[a]
        return self.exp_table[(-log) % (self.q - 1)]

    def matmul(self, A, B) -> np.ndarray:
        """Matrix product over the field."""
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        if self.m == 1:
            inner = A.shape[-1]
            if inner * (self.p - 1) ** 2 < (1 << 52):
                prod = A.astype(np.float64) @ B.astype(np.float64)
                return prod.astype(np.int64) % self.p
            return (A @ B) % self.p
        out = np.zeros(A.shape[:-1] + B.shape[-1:], dtype=np.int64)
        for t in range(A.shape[-1]):
            out = self.add(out, self.mul(A[..., t, None], B[..., t, :][None, :]))
        return out


def _digits(v, p, m):
    out = []
    for _ in range(m):
        v, d = divmod(v, p)
        out.append(d)
    return out


# -- construction ------------------------------------------------------------

@lru_cache(maxsize=None)
def find_field(p: int, m: int = 1) -> FieldSpec:
    """Return GF(p^m) with the lexicographically smallest primitive polynomial.

    Coefficient tuples ``(a0, ..., a_{m-1})`` are compared as integer tuples.
    """
    from sympy import factorint, isprime

    if not isprime(p):
        raise NotPrime(f"{p} is not prime")
    if m < 1:
        raise ValueError("extension degree must be positive")
    if p**m > MAX_ORDER:
        raise Overflow(f"{p}^{m} exceeds 2^63")
    if m == 1:
        return FieldSpec(p, 1, (0, 1))
    factors = list(factorint(p**m - 1))
    # a0 = 0 means x divides f; skipping that block keeps the order intact
    for a0 in range(1, p):
        for rest in itertools.product(range(p), repeat=m - 1):
            f = [a0, *rest, 1]
            if _is_primitive(f, p, m, factors):
                return FieldSpec(p, m, tuple(f))
    raise AssertionError("no primitive polynomial found")  # pragma: no cover


def field_of_order(q: int) -> FieldSpec:
    """GF(q) for a prime power q."""
    from sympy import factorint

    if q < 2:
        raise NotPrime(f"{q} is not a prime power")
    f = factorint(q)
    if len(f) != 1:
        raise NotPrime(f"{q} is not a prime power")
    (p, m), = f.items()
    return find_field(int(p), int(m))


def parse_field(text: str) -> FieldSpec:
    """Parse ``"p^m"`` (or a bare prime power ``"q"``)."""
    text = text.strip()
    if "^" in text:
        p, m = text.split("^", 1)
        return find_field(int(p), int(m))
    return field_of_order(int(text))


# -- scalar operations -----------------------------------------------------

def _scalar(spec: FieldSpec, a) -> int:
    a = int(a)
    if not 0 <= a < spec.q:
        raise ValueOutOfRange(f"{a} is not an element of GF({spec})")
    return a


def add(spec: FieldSpec, a, b) -> int:
    a, b = _scalar(spec, a), _scalar(spec, b)
    da, db = _digits(a, spec.p, spec.m), _digits(b, spec.p, spec.m)
    return sum(((x + y) % spec.p) * spec.p**i for i, (x, y) in enumerate(zip(da, db)))


def mul(spec: FieldSpec, a, b) -> int:
    a, b = _scalar(spec, a), _scalar(spec, b)
    if spec.m == 1:
        return a * b % spec.p
    if a == 0 or b == 0:
        return 0
    if spec.q <= TABLE_LIMIT:
        log, exp = spec.log_table, spec.exp_table
        return int(exp[(log[a] + log[b]) % (spec.q - 1)])
    prod = _poly_mulmod(_digits(a, spec.p, spec.m), _digits(b, spec.p, spec.m),
                        list(spec.poly), spec.p)
    return sum(c * spec.p**i for i, c in enumerate(prod))


def power(spec: FieldSpec, a, e: int) -> int:
    a = _scalar(spec, a)
    if e < 0:
        a, e = inv(spec, a), -e
    result = 1
    while e:
        if e & 1:
            result = mul(spec, result, a)
        a = mul(spec, a, a)
        e >>= 1
    return result


def inv(spec: FieldSpec, a) -> int:
    a = _scalar(spec, a)
    if a == 0:
        raise DivisionByZero("inverse of zero")
    if spec.m == 1:
        return pow(a, -1, spec.p)
    if spec.q <= TABLE_LIMIT:
        return int(spec.exp_table[(-spec.log_table[a]) % (spec.q - 1)])
    return power(spec, a, spec.q - 2)


def dlog(spec: FieldSpec, a) -> int:
    """Exponent r in [0, q-1) with generator**r == a."""
    a = _scalar(spec, a)
    if a == 0:
        raise LogOfZero("discrete log of zero")
    return int(spec.log_table[a])


def phi(spec: FieldSpec, a) -> np.ndarray:
    """Coefficient vector of ``a`` in the basis 1, x, ..., x^(m-1)."""
    a = _scalar(spec, a)
    return np.array(_digits(a, spec.p, spec.m), dtype=np.int64)


def _matmul_mod(A, B, p):
    return (A @ B) % p


def _matpow_mod(A, e, p):
    result = np.eye(A.shape[0], dtype=np.int64)
    while e:
        if e & 1:
            result = _matmul_mod(result, A, p)
        A = _matmul_mod(A, A, p)
        e >>= 1
    return result


def companion_matrix(spec: FieldSpec) -> np.ndarray:
    """Companion matrix of the field polynomial, over GF(p).

    Ones on the superdiagonal and ``(-a0, ..., -a_{m-1})`` as last row, so
    that ``phi(v) @ A == phi(v * x)``.  Prime fields get ``[[1]]``.
    """
    m, p = spec.m, spec.p
    if m == 1:
        return np.ones((1, 1), dtype=np.int64)
    A = np.zeros((m, m), dtype=np.int64)
    A[np.arange(m - 1), np.arange(1, m)] = 1
    A[m - 1] = [(-c) % p for c in spec.poly[:m]]
    return A


def matrix_rep(spec: FieldSpec, a) -> np.ndarray:
    """``A ** dlog(a)`` (zero matrix for 0); prime fields give ``[[a]]``."""
    a = _scalar(spec, a)
    if spec.m == 1:
        return np.array([[a]], dtype=np.int64)
    if a == 0:
        return np.zeros((spec.m, spec.m), dtype=np.int64)
    return _matpow_mod(companion_matrix(spec), dlog(spec, a), spec.p)


# -- subfields and towers ----------------------------------------------------

def subfield_embedding(small: FieldSpec, big: FieldSpec) -> np.ndarray:
    """Field embedding GF(small) -> GF(big) as a value lookup array.

    Prime subfields embed by value.  Otherwise x of the small field is sent
    to the first root of its defining polynomial among the powers
    ``w**(j*(Q-1)/(q-1))`` of the big generator ``w``.
    """
    if small.p != big.p or big.m % small.m:
        raise FieldMismatch(f"GF({small}) is not a subfield of GF({big})")
    if small.m == 1 or small == big:
        return np.arange(small.q, dtype=np.int64)
    Q, q = big.q, small.q
    step = (Q - 1) // (q - 1)
    exp = big.exp_table
    for j in range(1, q - 1):
        if math.gcd(j, q - 1) != 1:
            continue
        gamma = int(exp[(j * step) % (Q - 1)])
        val, pw = 0, 1
        for c in small.poly:
            val = add(big, val, mul(big, c, pw))
            pw = mul(big, pw, gamma)
        if val == 0:
            break
    else:  # pragma: no cover
        raise AssertionError("no root of the subfield polynomial found")
    gpow = [power(big, gamma, i) for i in range(small.m)]
    d = small.digits(np.arange(q))
    out = np.zeros(q, dtype=np.int64)
    for i in range(small.m):
        out = big.add(out, big.mul(d[:, i], gpow[i]))
    return out


class Tower:
    """GF(Q) = GF(q^k) as a k-dimensional vector space over GF(q).

    Provides the companion matrix ``A`` of the minimal polynomial of the big
    field's generator ``w`` over GF(q), the map ``a -> A**dlog(a)`` and the
    coordinate isomorphism ``phi`` in the basis ``1, w, ..., w**(k-1)``.
    For a prime base field these coincide with :func:`companion_matrix`,
    :func:`matrix_rep` and :func:`phi` of the big field.
    """

    def __init__(self, base: FieldSpec, ext: FieldSpec):
        if ext.p != base.p or ext.m % base.m:
            raise FieldMismatch(f"GF({ext}) is not an extension of GF({base})")
        self.base = base
        self.ext = ext
        self.k = ext.m // base.m
        self.embedding = subfield_embedding(base, ext)
        self._pullback = {int(v): i for i, v in enumerate(self.embedding)}
        self._reps = {}

    @cached_property
    def min_poly(self) -> tuple:
        """Minimal polynomial of the generator over the base, low -> high."""
        if self.base.m == 1:
            return tuple(self.ext.poly) if self.ext.m > 1 else (
                (-self.ext.generator) % self.ext.p, 1)
        ext, q, w = self.ext, self.base.q, self.ext.generator
        coeffs = [1]
        for i in range(self.k):
            root = power(ext, w, q**i)
            nxt = [0] * (len(coeffs) + 1)
            for d, c in enumerate(coeffs):
                nxt[d + 1] = add(ext, nxt[d + 1], c)
                nxt[d] = add(ext, nxt[d], mul(ext, c, int(ext.neg(root))))
            coeffs = nxt
        return tuple(self._pullback[c] for c in coeffs)

    @cached_property
    def companion(self) -> np.ndarray:
        k, base = self.k, self.base
        A = np.zeros((k, k), dtype=np.int64)
        A[np.arange(k - 1), np.arange(1, k)] = 1
        A[k - 1] = base.neg(np.array(self.min_poly[:k], dtype=np.int64))
        return A

    def matrix_rep(self, a) -> np.ndarray:
        a = _scalar(self.ext, a)
        if a not in self._reps:
            if a == 0:
                rep = np.zeros((self.k, self.k), dtype=np.int64)
            else:
                rep = self._power(dlog(self.ext, a))
            self._reps[a] = rep
        return self._reps[a]

    def _power(self, e):
        base = self.base
        A = self.companion
        result = np.eye(self.k, dtype=np.int64)
        while e:
            if e & 1:
                result = base.matmul(result, A)
            A = base.matmul(A, A)
            e >>= 1
        return result

    @cached_property
    def phi_table(self) -> np.ndarray:
        """Row ``v`` holds the base-field coordinates of element ``v``."""
        ext, base, k = self.ext, self.base, self.k
        if base.m == 1:
            return ext.digits(np.arange(ext.q))
        out = np.zeros((ext.q, k), dtype=np.int64)
        vec = np.zeros((1, k), dtype=np.int64)
        vec[0, 0] = 1
        A = self.companion
        for r in range(ext.q - 1):
            out[ext.exp_table[r]] = vec[0]
            vec = base.matmul(vec, A)
        return out

    def phi(self, a) -> np.ndarray:
        return self.phi_table[_scalar(self.ext, a)].copy()

    @cached_property
    def _phi_index(self) -> dict:
        return {tuple(int(x) for x in row): v for v, row in enumerate(self.phi_table)}

    def phi_inv(self, vec) -> int:
        return self._phi_index[tuple(int(x) for x in vec)]
