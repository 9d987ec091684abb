"""Projective systems in PG(k-1, q): blocking properties and saturation.

Points are tuples of field encodings normalized so that the first nonzero
coordinate is 1.  Hyperplanes are named by their normalized normal vector
``u`` and contain the points ``P`` with ``u . P == 0``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .code import LinearCode
from .errors import DegenerateColumn, GmatSyntaxError, NotSpanning, TooLarge, ValueOutOfRange
from .gf import FieldSpec, find_field, subfield_embedding
from .linalg import decode, encode, normalize_rows, normalized_vectors, rank
from .minimal import Certificate, Method, Verdict

POINT_GUARD = 1 << 20
SATURATION_POINT_GUARD = 1 << 16
SATURATION_SET_GUARD = 64


def enumerate_points(F: FieldSpec, k: int) -> np.ndarray:
    """All points of PG(k-1, q) as rows, in increasing encoding order."""
    count = (F.q**k - 1) // (F.q - 1)
    if count > POINT_GUARD:
        raise TooLarge(f"PG({k - 1},{F.q}) has {count} points")
    return normalized_vectors(F, k)


def normalize_point(F: FieldSpec, coords) -> tuple:
    vec = F.check(np.asarray(coords, dtype=np.int64))
    if not vec.any():
        raise ValueError("the zero vector is not a projective point")
    return tuple(int(x) for x in normalize_rows(F, vec[None, :])[0])


@dataclass(frozen=True)
class ProjectiveSystem:
    """An ordered multiset of points of PG(k-1, q)."""

    field: FieldSpec
    k: int
    points: tuple

    @classmethod
    def from_points(cls, F: FieldSpec, k: int, points) -> "ProjectiveSystem":
        pts = []
        for p in points:
            if len(p) != k:
                raise ValueError(f"point {p} does not have {k} coordinates")
            pts.append(normalize_point(F, p))
        return cls(F, k, tuple(pts))

    @property
    def n(self) -> int:
        return len(self.points)

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.points, dtype=np.int64).reshape(self.n, self.k)

    @cached_property
    def support(self) -> np.ndarray:
        """Distinct points, in encoding order."""
        _, idx = np.unique(encode(self.field, self.array), return_index=True)
        return self.array[idx]

    @property
    def has_multiplicity(self) -> bool:
        return len(self.support) < self.n

    @cached_property
    def rank(self) -> int:
        return rank(self.field, self.array)


def system_from_code(c: LinearCode) -> ProjectiveSystem:
    cols = c.gen.T
    if not np.all(cols.any(axis=1)):
        raise DegenerateColumn("code has a zero column")
    normed = normalize_rows(c.field, cols)
    return ProjectiveSystem(c.field, c.k, tuple(tuple(int(x) for x in r) for r in normed))


def code_from_system(s: ProjectiveSystem) -> LinearCode:
    return LinearCode(s.field, s.array.T)


def incidence(F: FieldSpec, points: np.ndarray, normals: np.ndarray) -> np.ndarray:
    """``inc[h, i]`` is True when point i lies on hyperplane h."""
    return F.matmul(normals, points.T) == 0


@dataclass
class Profile:
    n: int
    m: int
    M: int
    certificate: Certificate

    def to_dict(self) -> dict:
        return {"n": self.n, "min_intersection": self.m, "max_intersection": self.M,
                "d": self.n - self.M, "certificate": self.certificate.to_dict()}


def _hyperplanes(s: ProjectiveSystem) -> np.ndarray:
    return enumerate_points(s.field, s.k)


def hyperplane_profile(s: ProjectiveSystem) -> Profile:
    """Minimum and maximum hyperplane intersection sizes (with multiplicity)
    plus the geometric ratio test (n-M)/(n-m) > (q-1)/q."""
    inc = incidence(s.field, s.array, _hyperplanes(s))
    counts = inc.sum(axis=1)
    m, M, n, q = int(counts.min()), int(counts.max()), s.n, s.field.q
    holds = n > m and (n - M) * q > (n - m) * (q - 1)
    cert = Certificate(Verdict.CERTIFIED if holds else Verdict.INCONCLUSIVE, Method.AB,
                       details={"n": n, "m": m, "M": M, "q": q})
    return Profile(n, m, M, cert)


def fold_blocking_level(s: ProjectiveSystem) -> int:
    """Largest t such that every hyperplane meets the system in >= t points."""
    return hyperplane_profile(s).m


def is_strong_blocking(s: ProjectiveSystem) -> Certificate:
    """Every hyperplane section must span the hyperplane (rank k-1).

    The witness of a failure is the normal vector of the first failing
    hyperplane.
    """
    F, k = s.field, s.k
    if s.rank < k:
        raise NotSpanning(f"points span only rank {s.rank} < {k}")
    pts = s.support
    normals = _hyperplanes(s)
    inc = incidence(F, pts, normals)
    counts = inc.sum(axis=1)
    for h in range(len(normals)):
        if counts[h] < k - 1 or rank(F, pts[inc[h]]) < k - 1:
            return Certificate(Verdict.NOT_MINIMAL, Method.BRUTE_FORCE,
                               witness=(tuple(normals[h].tolist()),),
                               details={"points_on_hyperplane": int(counts[h])})
    return Certificate(Verdict.MINIMAL, Method.BRUTE_FORCE)


def subgeometry_embed(s: ProjectiveSystem, e: int) -> ProjectiveSystem:
    """Reinterpret the points over GF(q^e) through the subfield embedding."""
    F = s.field
    big = find_field(F.p, F.m * e)
    count = (big.q**s.k - 1) // (big.q - 1)
    if count > POINT_GUARD:
        raise TooLarge(f"PG({s.k - 1},{big.q}) has {count} points")
    emb = subfield_embedding(F, big)
    pts = tuple(tuple(int(emb[x]) for x in p) for p in s.points)
    return ProjectiveSystem(big, s.k, pts)


def saturation_radius(s: ProjectiveSystem) -> int:
    """Smallest rho such that every point off the set lies in the span of
    rho + 1 of its points.  The whole space has radius 0.

    Spans of independent subsets are grown one point at a time, level by
    level, until every external point is covered.
    """
    F, k = s.field, s.k
    total = (F.q**k - 1) // (F.q - 1)
    if total > SATURATION_POINT_GUARD:
        raise TooLarge(f"ambient space has {total} points")
    pts = s.support
    if len(pts) > SATURATION_SET_GUARD:
        raise TooLarge(f"{len(pts)} points exceed the saturation guard")
    if s.rank < k:
        raise NotSpanning(f"points span only rank {s.rank} < {k}")

    size = F.q**k
    allv = decode(F, np.arange(size), k)
    point_of = np.full(size, -1, dtype=np.int64)
    point_of[1:] = encode(F, normalize_rows(F, allv[1:]))
    level = np.full(size, -1, dtype=np.int64)
    level[encode(F, pts)] = 1
    remaining = int(np.sum(level[encode(F, normalized_vectors(F, k))] < 0))
    if remaining == 0:
        return 0
    scalars = np.arange(1, F.q, dtype=np.int64)
    pt_codes = encode(F, pts)

    def grow(span, idx):
        shifted = F.mul(scalars[:, None], pts[idx][None, :])
        new = F.add(decode(F, span, k)[:, None, :], shifted[None, :, :])
        return np.concatenate([span, encode(F, new).ravel()])

    for t in range(2, k + 1):
        def dfs(span, start, depth):
            nonlocal remaining
            for i in range(start, len(pts)):
                if depth > 1 and np.isin(pt_codes[i], span).item():
                    continue
                nxt = grow(span, i)
                if depth == t:
                    targets = np.unique(point_of[nxt[nxt != 0]])
                    fresh = targets[level[targets] < 0]
                    level[fresh] = t
                    remaining -= len(fresh)
                    if remaining == 0:
                        return True
                elif dfs(nxt, i + 1, depth + 1):
                    return True
            return False

        if dfs(np.array([0], dtype=np.int64), 0, 1):
            return t - 1
    raise AssertionError("spanning set failed to cover the space")  # pragma: no cover


# -- .pts ---------------------------------------------------------------------

def parse_pts(text: str) -> ProjectiveSystem:
    """Parse ``p m k n`` followed by n point rows."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            try:
                rows.append((lineno, [int(t) for t in line.split()]))
            except ValueError as exc:
                raise GmatSyntaxError(f"line {lineno}: {exc}") from None
    if not rows or len(rows[0][1]) != 4:
        raise GmatSyntaxError("header must be 'p m k n'")
    p, m, k, n = rows[0][1]
    if len(rows) - 1 != n:
        raise GmatSyntaxError(f"expected {n} points, found {len(rows) - 1}")
    F = find_field(p, m)
    pts = []
    for lineno, vals in rows[1:]:
        if len(vals) != k:
            raise GmatSyntaxError(f"line {lineno}: expected {k} coordinates")
        if min(vals) < 0 or max(vals) >= F.q:
            raise ValueOutOfRange(f"line {lineno}: coordinates outside GF({F})")
        pts.append(vals)
    return ProjectiveSystem.from_points(F, k, pts)


def write_pts(s: ProjectiveSystem) -> str:
    F = s.field
    lines = [f"{F.p} {F.m} {s.k} {s.n}"]
    lines += [" ".join(map(str, p)) for p in s.points]
    return "\n".join(lines) + "\n"
