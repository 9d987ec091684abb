"""Concatenation of an outer GF(q^k) code with an inner GF(q) code."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .code import LinearCode, weight_distribution
from .errors import FieldMismatch, TooLarge
from .gf import Tower
from .linalg import encode, normalize_rows, normalized_vectors
from .minimal import PAIR_GUARD, Certificate, Method, Verdict, is_minimal_code, outer_ab


@dataclass(frozen=True)
class ConcatSpec:
    """Outer code over GF(q^k) and inner code over GF(q) of dimension k.

    The embedding is ``beta -> phi(beta) @ G_inner``.
    """

    outer: LinearCode
    inner: LinearCode

    def __post_init__(self):
        base, ext = self.inner.field, self.outer.field
        if ext.p != base.p or ext.m != base.m * self.inner.k:
            raise FieldMismatch(
                f"outer field GF({ext}) must have order |GF({base})|^{self.inner.k}")

    @cached_property
    def tower(self) -> Tower:
        return Tower(self.inner.field, self.outer.field)

    @property
    def q(self) -> int:
        return self.inner.q


def concatenated_generator(spec: ConcatSpec) -> np.ndarray:
    """The Kk x Nn matrix whose (i, j) block is ``A(alpha_ij) @ G_inner``."""
    outer, inner, tower = spec.outer, spec.inner, spec.tower
    K, N = outer.gen.shape
    k, n = inner.gen.shape
    base = inner.field
    G = np.zeros((K * k, N * n), dtype=np.int64)
    blocks = {}
    for i in range(K):
        for j in range(N):
            a = int(outer.gen[i, j])
            if a not in blocks:
                blocks[a] = base.matmul(tower.matrix_rep(a), inner.gen)
            G[i * k:(i + 1) * k, j * n:(j + 1) * n] = blocks[a]
    return G


def concatenate(spec: ConcatSpec) -> LinearCode:
    """Generator of the concatenated [Nn, Kk, >= D d]_q code."""
    bound = None
    inner_d = spec.inner.known_distance
    if inner_d is None and spec.inner.size <= PAIR_GUARD:
        inner_d = weight_distribution(spec.inner).d
    if spec.outer.known_distance and inner_d:
        bound = spec.outer.known_distance * inner_d
    return LinearCode(spec.inner.field, concatenated_generator(spec),
                      distance_lower_bound=bound, name=_label(spec))


def _label(spec: ConcatSpec) -> str:
    o, i = spec.outer, spec.inner
    return f"[{o.n},{o.k}]_{o.q} x [{i.n},{i.k}]_{i.q}"


def is_simplex(c: LinearCode) -> bool:
    """True when the columns are exactly the points of PG(k-1, q), once each."""
    F = c.field
    if c.n != (F.q**c.k - 1) // (F.q - 1):
        return False
    cols = c.gen.T
    if not cols.any(axis=1).all():
        return False
    codes = np.sort(encode(F, normalize_rows(F, cols)))
    return bool(np.array_equal(codes, np.sort(encode(F, normalized_vectors(F, c.k)))))


def certify_minimal_concat(spec: ConcatSpec, *, inner_certificate: Certificate | None = None
                           ) -> Certificate:
    """Certify minimality of the concatenation with the outer ratio test.

    Needs a minimal inner code (simplex, a supplied positive certificate, or
    brute force) and an outer code with D/W > (q-1)/q for the base order q.
    Anything else is ``Inconclusive``: the condition is only sufficient.
    """
    inner = spec.inner
    if inner_certificate is None:
        if is_simplex(inner):
            inner_certificate = Certificate(Verdict.CERTIFIED, Method.SIMPLEX)
        elif inner.size <= PAIR_GUARD:
            inner_certificate = is_minimal_code(inner)
        else:
            raise TooLarge("inner code too large for brute-force minimality")
    outer_cert = outer_ab(spec.outer, spec.q)
    details = {"inner": inner_certificate.to_dict(), "outer": outer_cert.to_dict()}
    if inner_certificate.positive and outer_cert.positive:
        return Certificate(Verdict.CERTIFIED, Method.OUTER_AB, details=details)
    return Certificate(Verdict.INCONCLUSIVE, Method.OUTER_AB, details=details)


def simplex_weight_identity(spec: ConcatSpec) -> bool:
    """Check A_{q^(k-1) i}(concat) == A_i(outer) and zero off multiples."""
    step = spec.q ** (spec.inner.k - 1)
    outer = weight_distribution(spec.outer)
    cat = weight_distribution(concatenate(spec))
    if any(w % step for w in cat.counts):
        return False
    return all(cat[step * i] == outer[i] for i in range(spec.outer.n + 1))
