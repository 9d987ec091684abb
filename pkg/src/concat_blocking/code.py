"""Linear codes given by generator matrices, and the ``.gmat`` text format."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import BadParams, GmatSyntaxError, RankDeficient, TooLarge, ValueOutOfRange
from .gf import FieldSpec, find_field
from .linalg import all_vectors, decode, encode, normalize_rows, normalized_vectors, nullspace, rank

ENUM_GUARD = 1 << 32
STORE_GUARD = 1 << 24
SYNDROME_GUARD = 1 << 22
CHUNK_ENTRIES = 1 << 22


class LinearCode:
    """A k-dimensional code of length n over GF(q), stored as its generator."""

    def __init__(self, field: FieldSpec, gen, *, known_distance: int | None = None,
                 distance_lower_bound: int | None = None, name: str | None = None,
                 check: bool = True):
        gen = np.array(gen, dtype=np.int64, ndmin=2)
        if gen.ndim != 2 or gen.shape[0] < 1 or gen.shape[1] < gen.shape[0]:
            raise BadParams(f"generator must be k x n with 1 <= k <= n, got {gen.shape}")
        if gen.min() < 0 or gen.max() >= field.q:
            raise ValueOutOfRange(f"generator entries outside GF({field})")
        if check and rank(field, gen) != gen.shape[0]:
            raise RankDeficient(f"generator of shape {gen.shape} is not full rank")
        gen.setflags(write=False)
        self.field = field
        self.gen = gen
        self.known_distance = known_distance
        self.distance_lower_bound = distance_lower_bound or known_distance
        self.name = name

    @property
    def k(self) -> int:
        return self.gen.shape[0]

    @property
    def n(self) -> int:
        return self.gen.shape[1]

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def size(self) -> int:
        return self.q**self.k

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<LinearCode{label} [{self.n},{self.k}]_{self.q}>"

    def encode(self, messages) -> np.ndarray:
        return self.field.matmul(np.asarray(messages, dtype=np.int64), self.gen)

    def check_enumerable(self, limit: int = ENUM_GUARD):
        if self.size > limit:
            raise TooLarge(f"{self.q}^{self.k} codewords exceed the guard {limit}")

    def chunks(self, start: int = 0, stop: int | None = None):
        """Yield ``(first_message_index, codewords)`` in message order."""
        self.check_enumerable()
        stop = self.size if stop is None else stop
        step = max(1, CHUNK_ENTRIES // max(self.n, self.k))
        for lo in range(start, stop, step):
            hi = min(stop, lo + step)
            yield lo, self.encode(all_vectors(self.field, self.k, lo, hi))

    @cached_property
    def weights(self) -> np.ndarray:
        """Hamming weight of every codeword, indexed by message encoding."""
        self.check_enumerable(STORE_GUARD)
        out = np.empty(self.size, dtype=np.int32)
        for lo, cw in self.chunks():
            out[lo:lo + len(cw)] = np.count_nonzero(cw, axis=1)
        return out

    @cached_property
    def projective_messages(self) -> np.ndarray:
        """One normalized message per projective class of nonzero codewords."""
        return normalized_vectors(self.field, self.k)

    def same_codewords(self, other: "LinearCode") -> bool:
        if self.field != other.field or self.n != other.n or self.k != other.k:
            return False
        return rank(self.field, np.vstack([self.gen, other.gen])) == self.k


@dataclass
class WeightDistribution:
    counts: dict
    n: int
    q: int
    k: int

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @property
    def d(self) -> int | None:
        """Minimum positive weight."""
        pos = [w for w, c in self.counts.items() if w > 0 and c]
        return min(pos) if pos else None

    @property
    def w(self) -> int:
        """Maximum weight."""
        return max(w for w, c in self.counts.items() if c)

    def __getitem__(self, weight: int) -> int:
        return self.counts.get(weight, 0)

    def as_dict(self) -> dict:
        return {str(w): c for w, c in sorted(self.counts.items())}


def weight_distribution(c: LinearCode) -> WeightDistribution:
    """Exact weight distribution by enumerating all q^k codewords."""
    cached = c.__dict__.get("_wd")
    if cached is not None:
        return cached
    c.check_enumerable()
    if c.size <= STORE_GUARD:
        hist = np.bincount(c.weights, minlength=c.n + 1)
    else:
        hist = np.zeros(c.n + 1, dtype=np.int64)
        for _, cw in c.chunks():
            hist += np.bincount(np.count_nonzero(cw, axis=1), minlength=c.n + 1)
    wd = WeightDistribution({int(i): int(a) for i, a in enumerate(hist) if a}, c.n, c.q, c.k)
    c.__dict__["_wd"] = wd
    return wd


def minimum_distance(c: LinearCode) -> int:
    return weight_distribution(c).d


def degeneracy_flags(c: LinearCode) -> tuple[bool, bool]:
    """``(projective, nondegenerate)`` for the generator's columns."""
    cols = c.gen.T
    nondegenerate = bool(np.all(cols.any(axis=1)))
    normed = encode(c.field, normalize_rows(c.field, cols))
    projective = len(np.unique(normed)) == c.n
    return projective, nondegenerate


def parity_check(c: LinearCode) -> np.ndarray:
    """An (n-k) x n full-rank matrix H with gen @ H.T == 0."""
    return nullspace(c.field, c.gen)


def dual(c: LinearCode) -> LinearCode:
    if c.k == c.n:
        raise BadParams("the dual of the full space is the zero code")
    return LinearCode(c.field, parity_check(c), check=False)


def covering_radius(c: LinearCode) -> int:
    """Largest coset-leader weight, found by breadth-first search on syndromes.

    Syndromes reachable with t columns of the parity-check matrix are
    exactly the cosets whose leader has weight t.
    """
    F, r = c.field, c.n - c.k
    if r == 0:
        return 0
    size = F.q**r
    if size > SYNDROME_GUARD:
        raise TooLarge(f"{size} cosets exceed the guard {SYNDROME_GUARD}")
    H = parity_check(c)
    cols = H.T
    steps = np.concatenate([F.mul(cols, lam) for lam in range(1, F.q)])
    steps = np.unique(encode(F, steps))
    steps = steps[steps != 0]
    step_vecs = decode(F, steps, r)
    seen = np.zeros(size, dtype=bool)
    seen[0] = True
    frontier = np.array([0], dtype=np.int64)
    radius = 0
    batch = max(1, CHUNK_ENTRIES // (len(steps) * r))
    while True:
        found = []
        for lo in range(0, len(frontier), batch):
            vecs = decode(F, frontier[lo:lo + batch], r)
            nxt = encode(F, F.add(vecs[:, None, :], step_vecs[None, :, :])).ravel()
            nxt = np.unique(nxt)
            nxt = nxt[~seen[nxt]]
            seen[nxt] = True
            found.append(nxt)
        frontier = np.concatenate(found) if found else np.array([], dtype=np.int64)
        if frontier.size == 0:
            break
        radius += 1
    return radius


# -- .gmat ------------------------------------------------------------------

def _tokens(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _ints(tokens, lineno):
    try:
        return [int(t) for t in tokens]
    except ValueError as exc:
        raise GmatSyntaxError(f"line {lineno}: {exc}") from None


def parse_gmat(text: str) -> LinearCode:
    """Parse ``p m n k`` followed by k rows of n element encodings."""
    lines = list(_tokens(text))
    if not lines:
        raise GmatSyntaxError("empty .gmat")
    lineno, head = lines[0]
    head = _ints(head, lineno)
    if len(head) != 4:
        raise GmatSyntaxError(f"line {lineno}: header must be 'p m n k'")
    p, m, n, k = head
    if len(lines) - 1 != k:
        raise GmatSyntaxError(f"expected {k} matrix rows, found {len(lines) - 1}")
    rows = []
    for lineno, toks in lines[1:]:
        row = _ints(toks, lineno)
        if len(row) != n:
            raise GmatSyntaxError(f"line {lineno}: expected {n} entries, found {len(row)}")
        rows.append(row)
    F = find_field(p, m)
    gen = np.array(rows, dtype=np.int64).reshape(k, n)
    if gen.size and (gen.min() < 0 or gen.max() >= F.q):
        raise ValueOutOfRange(f"entries must lie in [0, {F.q})")
    return LinearCode(F, gen)


def write_gmat(c: LinearCode) -> str:
    F = c.field
    lines = [f"{F.p} {F.m} {c.n} {c.k}"]
    lines += [" ".join(str(int(v)) for v in row) for row in c.gen]
    return "\n".join(lines) + "\n"


def read_gmat(path) -> LinearCode:
    with open(path, encoding="utf-8") as fh:
        return parse_gmat(fh.read())
