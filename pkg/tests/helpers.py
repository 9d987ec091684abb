"""Random generators shared by the test modules."""
import numpy as np

from concat_blocking.code import LinearCode
from concat_blocking.geometry import enumerate_points
from concat_blocking.linalg import rank


def random_full_rank(field, k, n, rng):
    while True:
        G = rng.integers(0, field.q, size=(k, n))
        if rank(field, G) == k:
            return G


def random_projective_code(field, k, n, rng):
    """n distinct points of PG(k-1, q) spanning the space, as columns."""
    pts = enumerate_points(field, k)
    while True:
        idx = np.sort(rng.choice(len(pts), size=n, replace=False))
        G = pts[idx].T
        if rank(field, G) == k:
            return LinearCode(field, G)
