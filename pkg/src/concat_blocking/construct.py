"""Deterministic constructors: simplex, GRS/MDS, stored fixtures, and an
exhaustive search for the shortest projective minimal codes."""
from __future__ import annotations

from enum import Enum
from importlib import resources
from math import comb

import numpy as np

from .code import LinearCode, parse_gmat
from .errors import BadParams, LengthTooLong, NotFound, TooLarge
from .gf import FieldSpec, field_of_order
from .geometry import enumerate_points, incidence
from .linalg import rank

SIMPLEX_GUARD = 1 << 16
SEARCH_GUARD = 5_000_000


def simplex(field: FieldSpec, k: int) -> LinearCode:
    """One normalized column per point of PG(k-1, q), in encoding order."""
    if k < 1:
        raise BadParams("dimension must be positive")
    q = field.q
    n = (q**k - 1) // (q - 1)
    if n > SIMPLEX_GUARD:
        raise TooLarge(f"simplex code of length {n}")
    return LinearCode(field, enumerate_points(field, k).T, known_distance=q ** (k - 1),
                      name=f"S_{q}({k})")


def evaluation_points(field: FieldSpec, N: int) -> list:
    """``0, w^0, w^1, ...``; the point at infinity is not included."""
    pts = [0] + [int(v) for v in field.exp_table[: field.q - 1]]
    return pts[: min(N, field.q)]


def grs(field: FieldSpec, N: int, K: int) -> LinearCode:
    """Reed-Solomon code, doubly extended when ``N == q + 1``.

    Rows are the monomials ``1, x, ..., x^(K-1)`` evaluated at
    :func:`evaluation_points`; the extra column for infinity picks the
    coefficient of ``x^(K-1)``.
    """
    q = field.q
    if not 1 <= K <= N:
        raise BadParams(f"need 1 <= K <= N, got K={K}, N={N}")
    if N > q + 1:
        raise LengthTooLong(f"N={N} exceeds q+1={q + 1}")
    pts = np.array(evaluation_points(field, N), dtype=np.int64)
    gen = np.zeros((K, N), dtype=np.int64)
    row = np.ones(len(pts), dtype=np.int64)
    for i in range(K):
        gen[i, : len(pts)] = row
        row = field.mul(row, pts)
    if N == q + 1:
        gen[K - 1, q] = 1
    return LinearCode(field, gen, known_distance=N - K + 1, name=f"GRS[{N},{K}]_{q}")


def _base_degree(field: FieldSpec, q: int) -> int:
    k, size = 0, 1
    while size < field.q:
        size *= q
        k += 1
    if size != field.q or k < 2:
        raise BadParams(f"GF({field}) is not GF({q}^k) with k >= 2")
    return k


def mds_outer(field: FieldSpec, q: int, K: int) -> LinearCode:
    """The MDS outer code of length ``qK - (q-1)`` over GF(q^k)."""
    k = _base_degree(field, q)
    if K < 1 or K > q ** (k - 1) + 1:
        raise BadParams(f"need 1 <= K <= q^(k-1)+1 = {q ** (k - 1) + 1}")
    return grs(field, q * K - (q - 1), K)


class Fixture(str, Enum):
    PAPER_TERNARY_935 = "PaperTernary935"
    PAPER_BINARY_1566 = "PaperBinary1566"
    ALFARANO_OUTER = "AlfaranoOuter"


_FIXTURE_FILES = {
    Fixture.PAPER_TERNARY_935: "ternary935.gmat",
    Fixture.PAPER_BINARY_1566: "binary1566.gmat",
}


def fixture_text(name) -> str:
    name = Fixture(name)
    return resources.files("concat_blocking.data").joinpath(_FIXTURE_FILES[name]).read_text()


def fixture(name, field: FieldSpec | None = None, i: int | None = None,
            j: int | None = None) -> LinearCode:
    """Stored matrices, or the 2 x 4 outer matrix ``[[1,1,1,0],[0,w^i,w^j,1]]``."""
    name = Fixture(name)
    if name is Fixture.ALFARANO_OUTER:
        if field is None or i is None or j is None:
            raise BadParams("AlfaranoOuter needs a field and exponents i < j")
        if not 0 < i < j < field.q:
            raise BadParams(f"need 0 < i < j < {field.q}")
        exp = field.exp_table
        wi, wj = int(exp[i % (field.q - 1)]), int(exp[j % (field.q - 1)])
        return LinearCode(field, [[1, 1, 1, 0], [0, wi, wj, 1]], name=f"Alfarano({i},{j})")
    code = parse_gmat(fixture_text(name))
    code.name = name.value
    return code


def search_shortest_minimal(q: int, k: int, n_max: int, *, allow_large: bool = False):
    """Smallest n <= n_max admitting a projective minimal [n, k]_q code.

    Point subsets of PG(k-1, q) are scanned in lexicographic order, starting
    from the size lower bound (q+1)(k-1).  A branch is cut as soon as some
    hyperplane can no longer collect k-1 points.  Returns ``(n, witness)``.
    """
    if not allow_large and (q not in (2, 3) or k > 4):
        raise TooLarge("search limited to q in {2,3}, k <= 4 without allow_large")
    F = field_of_order(q)
    if k < 2:
        raise BadParams("dimension must be at least 2")
    pts = enumerate_points(F, k)
    P = len(pts)
    inc = incidence(F, pts, enumerate_points(F, k))
    masks = [sum(1 << i for i in np.flatnonzero(row)) for row in inc]
    suffix = [((1 << P) - 1) >> i << i for i in range(P + 1)]
    need = k - 1
    rank_cache = {}

    def section_ok(mask):
        if k <= 3:
            return True
        if mask not in rank_cache:
            idx = [i for i in range(P) if mask >> i & 1]
            rank_cache[mask] = rank(F, pts[idx]) >= need
        return rank_cache[mask]

    def feasible(chosen, nxt, left):
        for h in masks:
            have = (chosen & h).bit_count()
            if have < need and have + min((h & suffix[nxt]).bit_count(), left) < need:
                return False
        return True

    def dfs(chosen, start, left):
        if left == 0:
            if all(section_ok(chosen & h) for h in masks):
                return chosen
            return None
        for i in range(start, P - left + 1):
            nxt = chosen | (1 << i)
            if feasible(nxt, i + 1, left - 1):
                found = dfs(nxt, i + 1, left - 1)
                if found is not None:
                    return found
        return None

    start_n = max(k, (q + 1) * (k - 1))
    for n in range(start_n, min(n_max, P) + 1):
        if not allow_large and comb(P, n) > SEARCH_GUARD:
            raise TooLarge(f"C({P},{n}) subsets exceed the search guard")
        found = dfs(0, 0, n)
        if found is not None:
            idx = [i for i in range(P) if found >> i & 1]
            return n, LinearCode(F, pts[idx].T, name=f"shortest minimal [{n},{k}]_{q}")
    raise NotFound(f"no projective minimal [n,{k}]_{q} code with n <= {n_max}")
