"""Closed-form size bounds and parameter formulas.

Integer formulas use exact integer arithmetic; real-valued ones are plain
floats, compared with a 1e-9 tolerance where it matters.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from .errors import BadDim, BadParams, DomainError

TOL = 1e-9


def _prime_power(q: int) -> bool:
    from sympy import factorint

    return q >= 2 and len(factorint(q)) == 1


def _check_q(q: int):
    if not _prime_power(q):
        raise BadParams(f"{q} is not a prime power")


# -- strong blocking set sizes -----------------------------------------------

def sbs_lower_bound(k: int, q: int) -> int:
    """Every strong blocking set of PG(k-1, q) has at least (q+1)(k-1) points."""
    if k < 2:
        raise BadDim("dimension must be at least 2")
    return (q + 1) * (k - 1)


def sbs_upper_bound(k: int, q: int) -> int:
    """Size achievable by the smallest strong blocking sets (probabilistic).

    The q = 2 value is a real number and is floored to a size.
    """
    if k < 2:
        raise BadDim("dimension must be at least 2")
    if q == 2:
        return math.floor((2 * k - 1) / math.log2(4 / 3))
    factor = 2 / (1 + 1 / ((q + 1) ** 2 * math.log(q)))
    return (q + 1) * math.ceil(factor * (k - 1))


# -- Gilbert-Varshamov ---------------------------------------------------------

def q_entropy(q: int, x: float) -> float:
    if q < 2:
        raise DomainError("q must be at least 2")
    if not 0 <= x <= 1:
        raise DomainError(f"entropy argument {x} outside [0, 1]")

    def xlog(a):
        return 0.0 if a == 0 else a * math.log(a, q)

    return x * math.log(q - 1, q) - xlog(x) - xlog(1 - x) if q > 2 else -xlog(x) - xlog(1 - x)


def gv_rate(q: int, delta: float) -> float:
    """Rate guaranteed for relative distance ``delta``: 1 - H_q(delta)."""
    return 1 - q_entropy(q, delta)


def gv_sbs_size_factor(q: int, eps: float) -> float:
    """Size per dimension, q^(1+2 eps)(q+1)/(1-eps), of the GV-based family."""
    if not 0 < eps < 1:
        raise DomainError("eps must lie in (0, 1)")
    return q ** (1 + 2 * eps) * (q + 1) / (1 - eps)


# -- concatenation arithmetic ----------------------------------------------------

def mds_outer_params(q: int, K: int) -> tuple[int, int]:
    """Length and distance (N, D) of the MDS outer code of dimension K."""
    if q < 2 or K < 1:
        raise BadParams("need q >= 2 and K >= 1")
    return q * K - q + 1, (q - 1) * (K - 1) + 1


def simplex_concat_params(N: int, K: int, D: int, q: int, k: int) -> tuple[int, int, int]:
    """[N(q^k-1)/(q-1), Kk, D q^(k-1)] for an [N, K, D]_{q^k} outer code
    concatenated with the simplex code of dimension k over GF(q)."""
    return N * (q**k - 1) // (q - 1), K * k, D * q ** (k - 1)


def simplex_rate_ceiling(q: int, k: int, n: int) -> float:
    """Rate ceiling k(q-1)/(q^k-1) (1/q + 1/n) of simplex concatenations."""
    return k * (q - 1) / (q**k - 1) * (1 / q + 1 / n)


def simplex_concat_size_floor(q: int, k: int) -> Fraction:
    """Size floor q(q+1)/2 * k - q for simplex concatenations."""
    return Fraction(q * (q + 1), 2) * k - q


# -- AG tower families ---------------------------------------------------------------

@dataclass
class TowerParams:
    q0: int
    h: int
    n: int
    N: int
    lam: int
    n_n: int
    m_n: int
    k_n: int
    outer_dist_lb: int
    divisor_degree_valid: bool
    concat_len: int
    concat_dim: int
    concat_dist_lb: int
    K_n: int | None
    sbs_size_bound: Fraction | None = None
    sbs_size_bound_simple: Fraction | None = None

    def to_dict(self) -> dict:
        out = asdict(self)
        for key in ("sbs_size_bound", "sbs_size_bound_simple"):
            if out[key] is not None:
                out[key] = float(out[key])
        out["lambda"] = out.pop("lam")
        return out


def tower_length(q0: int, h: int, n: int) -> int:
    return q0 ** (h * (n + 1)) - q0 ** (h * n) - 1


def tower_genus(q0: int, h: int, n: int) -> int:
    if n % 2 == 0:
        return (q0 ** (n * h // 2) - 1) ** 2
    return (q0 ** ((n + 1) * h // 2) - 1) * (q0 ** ((n - 1) * h // 2) - 1)


def tower_params(q0: int, h: int, n: int) -> TowerParams:
    """Parameters of the AG-tower outer code and its simplex concatenation."""
    _check_q(q0)
    if h < 2:
        raise BadParams("h >= 2 is required")
    if n < 1:
        raise BadParams("n >= 1 is required")
    N = tower_length(q0, h, n)
    lam = tower_genus(q0, h, n)
    m_n = (N - 1) // q0
    k_n = m_n - lam + 1
    concat_len = N * (q0 ** (2 * h) - 1) // (q0 - 1)
    concat_dist = q0 ** (2 * h - 2) * N * (q0 - 1)
    params = TowerParams(
        q0=q0, h=h, n=n, N=N, lam=lam, n_n=N, m_n=m_n, k_n=k_n, outer_dist_lb=N - m_n,
        divisor_degree_valid=2 * lam - 2 < m_n < N,
        concat_len=concat_len, concat_dim=2 * h * k_n, concat_dist_lb=concat_dist,
        K_n=None,
    )
    if h == 2:
        params.K_n = 4 * m_n - 4 * lam + 4
        params.sbs_size_bound = particular_sbs_coefficient(q0) * params.K_n
        params.sbs_size_bound_simple = Fraction(q0 * (q0**3 + 2 * q0**2 + q0 - 1), 4) * params.K_n
    return params


def particular_sbs_coefficient(q0: int) -> Fraction:
    """q0(q0^4-1)(q0+1) / (4(q0^2-q0+1)): size per dimension for h = 2."""
    return Fraction(q0 * (q0**4 - 1) * (q0 + 1), 4 * (q0**2 - q0 + 1))


def tower_relative_distance_floor(q0: int, h: int) -> Fraction:
    return Fraction(q0 ** (2 * h - 2) * (q0 - 1) ** 2, q0 ** (2 * h) - 1)


def tower_rate_floor(q0: int, h: int) -> Fraction:
    return Fraction(2 * h * (q0 - 1), q0 ** (2 * h) - 1) * (
        Fraction(1, q0) - Fraction(1, q0**h - 1))


def rt4_params(q0: int) -> dict:
    """Two-weight RT4 inner code parameters and the derived rate bound."""
    _check_q(q0)
    n_tilde = (q0**5 - 1) * (q0**2 + 1) // (q0 - 1)
    d, w = q0**6, q0**6 + q0**4
    ratio = Fraction(d, w)
    rate = Fraction(10 * (q0 - 1), q0**10 * (q0**5 - 1) * (q0**2 + 1)) * (
        q0**7 * (q0**2 - q0 + 1) - 2)
    return {
        "n_tilde": n_tilde, "dim": 10, "d_tilde": d, "w_tilde": w, "ratio": ratio,
        "ratio_exceeds": ratio > 1 - Fraction(1, q0),
        "rate_lower_bound": rate,
        "relative_distance_floor": Fraction(q0**3 - q0**2 + q0 - 1, q0**3),
    }


def rt4_degree(q0: int, n_n: int) -> int:
    """Divisor degree floor((n_n (q0^2-q0+1) - 1) / q0^3) used with RT4."""
    return (n_n * (q0**2 - q0 + 1) - 1) // q0**3


def epsilon_ceiling(q0: int, h: int, d: int, w: int) -> Fraction:
    """Upper limit 1 - 1/(q0^h-1) - (w/d)(1-1/q0) for the rate parameter."""
    return 1 - Fraction(1, q0**h - 1) - Fraction(w, d) * (1 - Fraction(1, q0))


def epsilon_admissible(q0: int, h: int, d: int, w: int, eps) -> bool:
    return 0 < eps < epsilon_ceiling(q0, h, d, w)


@dataclass
class GeneralFamily:
    K: int
    size_bound: float
    rate_lower_bound: float


def general_family(q0: int, h: int, n: int, n_tilde: int, d: int, w: int,
                   eps: float) -> GeneralFamily:
    """Dimension and size bound from an arbitrary [n_tilde, 2h, d]_q0 inner code."""
    if not epsilon_admissible(q0, h, d, w, Fraction(eps).limit_denominator(10**12)):
        raise DomainError("eps violates 0 < eps < 1 - 1/(q0^h-1) - (w/d)(1-1/q0)")
    N = tower_length(q0, h, n)
    K = math.floor(N * (1 - Fraction(w, d) * (1 - Fraction(1, q0))) - 1)
    return GeneralFamily(K=K, size_bound=n_tilde / (2 * h * eps) * K,
                         rate_lower_bound=2 * h * eps / n_tilde)


def inner_code_score(q0: int, h: int, n: int, d: int, w: int) -> float:
    """(2h/n)(1 - 1/(q0^h-1) - (w/d)(1-1/q0)), the quantity worth maximizing."""
    return 2 * h / n * (1 - 1 / (q0**h - 1) - w / d * (1 - 1 / q0))


# -- saturating sets ---------------------------------------------------------------

def saturating_bounds(k: int, q: int, rho: int) -> tuple[float, float, int]:
    """Bounds on s_{q^(rho+1)}(k-1, rho) and the rho = k-2 special upper bound."""
    if not 1 <= rho <= k - 2:
        raise BadParams(f"need 1 <= rho <= k-2, got rho={rho}, k={k}")
    e = q ** (k - 1 - rho)
    lower = (rho + 1) / math.e * e
    upper = rho * (rho + 1) * (e / 2 + (e - 1) / (q - 1))
    special = q * math.comb(k - 1, 2) + (k - 1) * (k - 2)
    return lower, upper, special


def explicit_saturating_size(q0: int, n: int) -> dict:
    """Size bound of the explicit (K_n - 2)-saturating set in PG(K_n - 1, .)."""
    p = tower_params(q0, 2, n)
    return {"K_n": p.K_n, "size_bound": float(p.sbs_size_bound),
            "size_bound_simple": float(p.sbs_size_bound_simple),
            "approx": q0**4 / 4 * p.K_n}


@dataclass
class BoundsReport:
    context: dict
    results: dict = field(default_factory=dict)

    def add(self, name: str, value, tag: str):
        if isinstance(value, Fraction):
            value = {"fraction": str(value), "value": float(value)}
        self.results[name] = {"value": value, "formula": tag}

    def to_dict(self) -> dict:
        return {"context": self.context, "results": self.results}
