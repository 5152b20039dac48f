"""Singular value functions on contracting non-singular diagonal maps.

phi interpolates the volume of q-dimensional images through the descending
singular value list; psi is its ascending-order counterpart.  Both are
continuous and strictly decreasing in q, phi is submultiplicative under
composition and psi supermultiplicative, and psi(q, T) = 1/phi(q, T^-1).

Evaluation is done in the log domain so long path compositions (products of
dozens of alphas) cannot underflow.
"""

from __future__ import annotations

import math
from typing import Sequence


def _validate(alphas: Sequence[float], d: int | None,
              allow_expanding: bool) -> int:
    n = len(alphas)
    if d is None:
        d = n
    if d != n or n == 0:
        raise ValueError(f"expected {d} singular values, got {n}")
    for i in range(n - 1):
        if alphas[i] < alphas[i + 1]:
            raise ValueError("singular values must be sorted in descending order")
    if alphas[-1] <= 0:
        raise ValueError("singular values must be positive (non-singular map)")
    if not allow_expanding and alphas[0] >= 1:
        raise ValueError("singular values must lie in (0, 1) (contracting map); "
                         "pass allow_expanding=True to evaluate anyway")
    return n


def log_phi(q: float, logs_desc: Sequence[float]) -> float:
    """log of phi from precomputed descending log singular values.
    No validation; this is the solver hot path."""
    d = len(logs_desc)
    if q == 0:
        return 0.0
    if q > d:
        return (q / d) * math.fsum(logs_desc)
    j = math.ceil(q)
    return math.fsum(logs_desc[:j - 1]) + (q - j + 1) * logs_desc[j - 1]


def phi(q: float, alphas: Sequence[float], d: int | None = None, *,
        allow_expanding: bool = False) -> float:
    """Descending singular value function: 1 at q = 0, then
    a_1...a_{j-1} * a_j**(q-j+1) on (j-1, j], and (a_1...a_d)**(q/d) beyond d."""
    if q < 0:
        raise ValueError("q must be >= 0")
    _validate(alphas, d, allow_expanding)
    return math.exp(log_phi(q, [math.log(a) for a in alphas]))


def psi(q: float, alphas: Sequence[float], d: int | None = None, *,
        allow_expanding: bool = False) -> float:
    """Ascending-order counterpart of phi, evaluated on the same descending
    input list: a_d...a_{d-j+2} * a_{d-j+1}**(q-j+1) on (j-1, j]."""
    if q < 0:
        raise ValueError("q must be >= 0")
    n = _validate(alphas, d, allow_expanding)
    logs_asc = [math.log(a) for a in reversed(alphas)]
    return math.exp(log_phi(q, logs_asc))


def phi_of_map(q: float, linear) -> float:
    """phi evaluated on a DiagonalMap's singular values."""
    return phi(q, linear.singular_values())


def psi_of_map(q: float, linear) -> float:
    return psi(q, linear.singular_values())
