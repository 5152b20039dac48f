"""Affinity and lower affinity dimension solvers.

Three routes:

* closed form for systems whose edges share one linear part T: the unique
  q with phi(q, T) * rho(F) = 1, solved segment by segment (log-linear in q
  on each integer segment), and the psi analogue for the lower dimension;
* matrix-spectral iteration for general graphs: for path lengths
  l = 1, 2, 4, ... build the matrix of per-path phi sums and bisect for the
  q where its spectral radius crosses 1.  Submultiplicativity makes the
  doubling-l roots a non-increasing chain of upper bounds (psi: lower
  bounds, non-decreasing);
* a partial-sum probe that classifies a given q as diverging/converging
  from the tail growth ratio of the level sums, with a bisection wrapper.

All quantities are evaluated in the log domain; path sums use numpy
logsumexp-style reductions so 60-level recursions cannot under/overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .gifs import (
    GifsGraph,
    adjacency_matrix,
    is_strongly_connected,
    spectral_radius,
    uniform_linear,
)
from .space import DiagonalMap
from .svf import log_phi


class HypothesisViolation(ValueError):
    """A mathematical precondition of a solver does not hold."""


@dataclass
class DimensionReport:
    """Solver output: the dimension values plus diagnostics."""

    affinity_dim: float | None = None
    lower_affinity_dim: float | None = None
    method: str = "closed_form"  # closed_form | spectral_iter | partial_sum
    bracket: tuple[float, float] = (math.nan, math.nan)
    levels: tuple[int, ...] = ()
    iterations: int = 0
    converged: bool = True
    disjointness_asserted: bool = False
    notes: str = ""

    def to_json(self) -> str:
        import json
        payload = {
            "affinity_dim": self.affinity_dim,
            "lower_affinity_dim": self.lower_affinity_dim,
            "method": self.method,
            "bracket": list(self.bracket),
            "levels": list(self.levels),
            "iterations": self.iterations,
            "converged": self.converged,
            "disjointness_asserted": self.disjointness_asserted,
            "notes": self.notes,
        }
        return json.dumps(payload, indent=2)

    def to_table(self) -> str:
        def num(x):
            return "-" if x is None or (isinstance(x, float) and math.isnan(x)) \
                else f"{x:.9f}"
        rows = [
            ("affinity_dim", num(self.affinity_dim)),
            ("lower_affinity_dim", num(self.lower_affinity_dim)),
            ("method", self.method),
            ("bracket", f"[{num(self.bracket[0])}, {num(self.bracket[1])}]"),
            ("levels", ",".join(str(v) for v in self.levels) or "-"),
            ("iterations", str(self.iterations)),
            ("converged", str(self.converged).lower()),
            ("disjointness_asserted", str(self.disjointness_asserted).lower()),
        ]
        if self.notes:
            rows.append(("notes", self.notes))
        width = max(len(k) for k, _ in rows)
        return "\n".join(f"{k:<{width}}  {v}" for k, v in rows)


# ---------------------------------------------------------------------------
# Closed form (uniform linear part)
# ---------------------------------------------------------------------------


def _solve_segments(logs: list[float], rho: float) -> float:
    """Unique q >= 0 with exp(segmentwise-interpolated log product(q)) * rho = 1.

    ``logs`` are the per-coordinate logs in the order the segments consume
    them: descending singular values for phi, ascending for psi.
    """
    if rho < 1:
        raise HypothesisViolation(
            f"spectral radius {rho} < 1: no q >= 0 solves the equation")
    target = -math.log(rho)
    if target == 0:
        return 0.0
    d = len(logs)
    acc = 0.0
    for j in range(1, d + 1):
        q = (j - 1) + (target - acc) / logs[j - 1]
        if q <= j + 1e-12:
            return q
        acc += logs[j - 1]
    return d * target / acc


def _check_map(t: DiagonalMap) -> None:
    if not t.is_contracting():
        raise HypothesisViolation("linear part is not contracting")
    if not t.is_nonsingular():
        raise HypothesisViolation("linear part is singular")


def affinity_dim_uniform(t: DiagonalMap, rho: float) -> float:
    """Closed-form affinity dimension for a shared linear part."""
    _check_map(t)
    return _solve_segments([math.log(a) for a in t.singular_values()], rho)


def lower_affinity_dim_uniform(t: DiagonalMap, rho: float) -> float:
    """Closed-form lower affinity dimension (ascending singular values)."""
    _check_map(t)
    return _solve_segments(
        [math.log(a) for a in reversed(t.singular_values())], rho)


# ---------------------------------------------------------------------------
# Spectral iteration (general graphs)
# ---------------------------------------------------------------------------


def _path_log_tables(g: GifsGraph, length: int, ascending: bool):
    """Per-(i, j) arrays of sorted per-path log singular values, built by
    extending per-coordinate log-magnitude vectors along edges."""
    sig = g.signature
    r, s = sig.r, sig.s
    edge_vecs = []
    dst_index = []
    for e in g.edges:
        lin = e.map.linear
        vec = [math.log(abs(a)) for a in lin.reals]
        vec += [math.log(abs(z)) for z in lin.complexes]
        vec += [math.log(float(x.norm())) for x in lin.padics]
        edge_vecs.append(np.array(vec))
        dst_index.append(g.vertex_index(e.dst))
    out = g.out_edges()
    n = len(g.vertices)
    frontier: list[list[tuple[int, np.ndarray]]] = [
        [(i, np.zeros(r + s + sig.k))] for i in range(n)
    ]
    for _ in range(length):
        frontier = [
            [(dst_index[ei], vec + edge_vecs[ei])
             for v, vec in rows for ei in out[v]]
            for rows in frontier
        ]
    tables: dict[tuple[int, int], np.ndarray] = {}
    for i in range(n):
        by_end: dict[int, list[np.ndarray]] = {}
        for j, vec in frontier[i]:
            by_end.setdefault(j, []).append(vec)
        for j, vecs in by_end.items():
            m = np.stack(vecs)
            # complex coordinates contribute their log twice
            full = np.concatenate([m[:, :r], m[:, r:r + s], m[:, r:]], axis=1)
            full.sort(axis=1)
            tables[(i, j)] = full if ascending else full[:, ::-1]
    return tables


def _log_rho_of_phi_matrix(tables, n: int, q: float, d: int,
                           power_tol: float) -> float:
    if not tables:
        raise HypothesisViolation("graph has no paths of the requested length")
    logm = np.full((n, n), -np.inf)
    for (i, j), arr in tables.items():
        if q == 0:
            vals = np.zeros(arr.shape[0])
        elif q > d:
            vals = (q / d) * arr.sum(axis=1)
        else:
            seg = math.ceil(q)
            vals = arr[:, :seg - 1].sum(axis=1) + (q - seg + 1) * arr[:, seg - 1]
        top = vals.max()
        logm[i, j] = top + math.log(np.exp(vals - top).sum())
    shift = logm[np.isfinite(logm)].max()
    scaled = np.exp(logm - shift)
    rho = spectral_radius(scaled, tol=power_tol)
    if rho == 0.0:
        return -math.inf
    return shift + math.log(rho)


def _spectral_report(g: GifsGraph, l_max: int, tol: float, max_paths: int,
                     ascending: bool) -> DimensionReport:
    if not is_strongly_connected(g):
        raise HypothesisViolation("graph is not strongly connected")
    n = len(g.vertices)
    d = g.signature.metric_dim
    inner = max(min(tol, 1e-9) / 8, 1e-13)
    f = adjacency_matrix(g)
    roots: list[float] = []
    levels: list[int] = []
    notes = []
    length = 1
    converged = False
    while length <= l_max:
        total_paths = int(np.linalg.matrix_power(f, length).sum())
        if total_paths > max_paths:
            notes.append(f"stopped: {total_paths} paths at level {length} "
                         f"exceed the budget {max_paths}")
            break
        tables = _path_log_tables(g, length, ascending)

        def fn(q: float) -> float:
            return _log_rho_of_phi_matrix(tables, n, q, d, inner)

        if fn(0.0) <= 0.0:
            root = 0.0
        else:
            hi = float(d + 1)
            while fn(hi) >= 0.0:
                hi *= 2
                if hi > d + 64:
                    raise HypothesisViolation(
                        "no root below q = d + 64; maps are too weakly contracting")
            lo = 0.0
            while hi - lo > inner:
                mid = 0.5 * (lo + hi)
                if fn(mid) >= 0.0:
                    lo = mid
                else:
                    hi = mid
            root = 0.5 * (lo + hi)
        roots.append(root)
        levels.append(length)
        if len(roots) >= 2 and abs(roots[-1] - roots[-2]) < tol:
            converged = True
            break
        length *= 2
    if not roots:
        raise HypothesisViolation("path budget too small for level 1")
    if not converged and not notes:
        notes.append(f"level budget l_max={l_max} reached without convergence")
    report = DimensionReport(
        method="spectral_iter",
        bracket=(min(roots), max(roots)),
        levels=tuple(levels),
        iterations=len(roots),
        converged=converged,
        notes="; ".join(notes),
    )
    if ascending:
        report.lower_affinity_dim = roots[-1]
    else:
        report.affinity_dim = roots[-1]
    return report


def affinity_dim_spectral(g: GifsGraph, l_max: int = 8, tol: float = 1e-9,
                          max_paths: int = 200_000) -> DimensionReport:
    """Upper-bound chain of spectral roots; see module docstring."""
    return _spectral_report(g, l_max, tol, max_paths, ascending=False)


def lower_affinity_dim_spectral(g: GifsGraph, l_max: int = 8, tol: float = 1e-9,
                                max_paths: int = 200_000) -> DimensionReport:
    """Lower-bound chain (non-decreasing roots) via the psi sums."""
    return _spectral_report(g, l_max, tol, max_paths, ascending=True)


# ---------------------------------------------------------------------------
# Partial sums
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PartialSumProbe:
    classification: str  # diverging | converging | inconclusive
    ratios: tuple[float, ...]
    exact: bool  # per-edge recursion is exact only for uniform systems


def _edge_weight_matrix(g: GifsGraph, q: float) -> np.ndarray:
    n = len(g.vertices)
    w = np.zeros((n, n))
    d = g.signature.metric_dim
    for e in g.edges:
        logs = sorted((math.log(a) for a in e.map.linear.singular_values()),
                      reverse=True)
        w[g.vertex_index(e.src), g.vertex_index(e.dst)] += \
            math.exp(log_phi(q, logs))
    return w


def partial_sum_probe(g: GifsGraph, q: float, levels: int = 60,
                      tol: float = 1e-6) -> PartialSumProbe:
    """Classify q by the growth of the level sums S_l(q) for l <= levels.

    The vector recursion weights every edge separately, which reproduces the
    per-path sums exactly when all edges share one linear part and otherwise
    over-estimates them (submultiplicativity); ``exact`` records which case
    applies.
    """
    if levels < 2:
        raise ValueError("need at least 2 levels")
    if q < 0:
        raise ValueError("q must be >= 0")
    w = _edge_weight_matrix(g, q)
    s = np.ones(len(g.vertices))
    ratios = []
    for _ in range(levels - 1):
        nxt = w @ s
        total_prev, total = float(s.sum()), float(nxt.sum())
        if total == 0.0:
            ratios.append(0.0)
            break
        ratios.append(total / total_prev)
        s = nxt / total
    margin = 10 * tol
    final = ratios[-1]
    if final > 1 + margin:
        classification = "diverging"
    elif final < 1 - margin:
        classification = "converging"
    else:
        classification = "inconclusive"
    return PartialSumProbe(classification, tuple(ratios[-8:]),
                           exact=uniform_linear(g) is not None)


def partial_sum_bracket(g: GifsGraph, levels: int = 60, tol: float = 1e-6,
                        max_iter: int = 200) -> DimensionReport:
    """Bisect the partial-sum growth ratio over q; returns a bracket for the
    affinity dimension."""
    if not is_strongly_connected(g):
        raise HypothesisViolation("graph is not strongly connected")
    d = g.signature.metric_dim
    lo = 0.0
    hi = float(d + 1)
    while partial_sum_probe(g, hi, levels, tol).ratios[-1] >= 1.0:
        hi *= 2
        if hi > d + 64:
            raise HypothesisViolation("no convergent q below d + 64")
    iterations = 0
    while hi - lo > tol and iterations < max_iter:
        mid = 0.5 * (lo + hi)
        if partial_sum_probe(g, mid, levels, tol).ratios[-1] >= 1.0:
            lo = mid
        else:
            hi = mid
        iterations += 1
    probe = partial_sum_probe(g, 0.5 * (lo + hi), levels, tol)
    return DimensionReport(
        affinity_dim=0.5 * (lo + hi),
        method="partial_sum",
        bracket=(lo, hi),
        levels=(levels,),
        iterations=iterations,
        converged=hi - lo <= tol,
        notes="" if probe.exact else
        "per-edge recursion over-estimates path sums on non-uniform graphs",
    )


# ---------------------------------------------------------------------------
# Hausdorff bounds
# ---------------------------------------------------------------------------


def analyze(g: GifsGraph, method: str = "auto", tol: float = 1e-9,
            l_max: int = 8, assert_disjoint: bool = False) -> DimensionReport:
    """Full report: affinity and lower affinity dimension by the requested
    method ("closed", "spectral", "partial", or "auto")."""
    if not is_strongly_connected(g):
        raise HypothesisViolation("graph is not strongly connected")
    shared = uniform_linear(g)
    if method == "auto":
        method = "closed" if shared is not None else "spectral"
    if method == "closed":
        if shared is None:
            raise HypothesisViolation(
                "closed-form solver needs all edges to share one linear part")
        rho = spectral_radius(adjacency_matrix(g))
        upper = affinity_dim_uniform(shared, rho)
        lower = lower_affinity_dim_uniform(shared, rho)
        report = DimensionReport(affinity_dim=upper, lower_affinity_dim=lower,
                                 method="closed_form", bracket=(upper, upper),
                                 levels=(), iterations=1)
    elif method == "spectral":
        report = affinity_dim_spectral(g, l_max=l_max, tol=tol)
        low = lower_affinity_dim_spectral(g, l_max=l_max, tol=tol)
        report.lower_affinity_dim = low.lower_affinity_dim
        report.converged = report.converged and low.converged
        if low.notes:
            report.notes = "; ".join(x for x in (report.notes, low.notes) if x)
    elif method == "partial":
        report = partial_sum_bracket(g, tol=max(tol, 1e-9))
    else:
        raise ValueError(f"unknown method {method!r}")
    report.disjointness_asserted = assert_disjoint
    return report


def hausdorff_bounds(g: GifsGraph, assert_disjoint: bool = False,
                     tol: float = 1e-9) -> tuple[float, float]:
    """(lower, upper) bounds for the Hausdorff dimension of the solution
    sets.  The upper bound is the affinity dimension; the lower bound is the
    lower affinity dimension and applies only when the caller asserts the
    disjointness hypotheses (never verified numerically), else 0."""
    report = analyze(g, method="auto", tol=tol, assert_disjoint=assert_disjoint)
    upper = report.affinity_dim
    lower = report.lower_affinity_dim if assert_disjoint else 0.0
    return (float(lower), float(upper))
