"""Linear algebra over a :class:`~concat_blocking.gf.FieldSpec`.

Vectors of length k over GF(q) are encoded as integers with the *first*
coordinate most significant, so integer order equals lexicographic order.
"""
from __future__ import annotations

import numpy as np

from .errors import TooLarge
from .gf import FieldSpec

ENUM_LIMIT = 1 << 24


def encode(F: FieldSpec, vecs) -> np.ndarray:
    vecs = np.asarray(vecs, dtype=np.int64)
    k = vecs.shape[-1]
    weights = F.q ** np.arange(k - 1, -1, -1, dtype=np.int64)
    return vecs @ weights


def decode(F: FieldSpec, codes, k: int) -> np.ndarray:
    codes = np.asarray(codes, dtype=np.int64)
    if k == 0:
        return np.zeros(codes.shape + (0,), dtype=np.int64)
    cols =[(codes // F.q ** (k - 1 - i)) % F.q for i in range(k)]
    return np.stack(cols, axis=-1)


def all_vectors(F: FieldSpec, k: int, start: int = 0, stop: int | None = None) -> np.ndarray:
    """Vectors of GF(q)^k with encodings in ``[start, stop)``, in order."""
    total = F.q**k
    stop = total if stop is None else min(stop, total)
    if stop - start > ENUM_LIMIT:
        raise TooLarge(f"{stop - start} vectors requested")
    return decode(F, np.arange(start, stop, dtype=np.int64), k)


def normalized_vectors(F: FieldSpec, k: int) -> np.ndarray:
    """One representative per point of PG(k-1, q), first nonzero entry 1.

    Rows come out in increasing encoding order.
    """
    count = (F.q**k - 1) // (F.q - 1)
    if count > ENUM_LIMIT:
        raise TooLarge(f"PG({k - 1},{F.q}) has {count} points")
    blocks = []
    for lead in range(k - 1, -1, -1):
        tail = all_vectors(F, k - 1 - lead)
        block = np.zeros((len(tail), k), dtype=np.int64)
        block[:, lead] = 1
        block[:, lead + 1:] = tail
        blocks.append(block)
    return np.concatenate(blocks, axis=0)


def normalize_rows(F: FieldSpec, M) -> np.ndarray:
    """Scale every nonzero row so its first nonzero entry is 1."""
    M = np.asarray(M, dtype=np.int64)
    nz = M != 0
    has = nz.any(axis=-1)
    first = np.argmax(nz, axis=-1)
    lead = np.take_along_axis(M, first[..., None], axis=-1)[..., 0]
    lead = np.where(has, lead, 1)
    return F.mul(M, F.inv(lead)[..., None])


def rref(F: FieldSpec, M) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    R = np.array(M, dtype=np.int64, copy=True)
    if R.ndim != 2:
        raise ValueError("rref expects a matrix")
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        R[r] = F.mul(R[r], F.inv(R[r, c]))
        factors = R[:, c].copy()
        factors[r] = 0
        hit = np.nonzero(factors)[0]
        if hit.size:
            R[hit] = F.sub(R[hit], F.mul(factors[hit, None], R[r][None, :]))
        pivots.append(c)
        r += 1
    return R, pivots


def rank(F: FieldSpec, M) -> int:
    M = np.asarray(M, dtype=np.int64)
    if M.size == 0:
        return 0
    if F.p == 2 and F.m == 1:
        return _rank_gf2(M)
    return len(rref(F, M)[1])


def _rank_gf2(M) -> int:
    pivots = {}
    for row in (M & 1).tolist():
        v = int("".join(map(str, row)), 2)
        while v:
            top = v.bit_length() - 1
            if top not in pivots:
                pivots[top] = v
                break
            v ^= pivots[top]
    return len(pivots)


def nullspace(F: FieldSpec, M) -> np.ndarray:
    """Basis (as rows) of ``{x : M @ x == 0}``."""
    M = np.asarray(M, dtype=np.int64)
    cols = M.shape[1]
    R, pivots = rref(F, M)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for r, pc in enumerate(pivots):
            basis[i, pc] = F.neg(R[r, f])
    return basis
