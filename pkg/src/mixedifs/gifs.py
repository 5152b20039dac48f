"""Graph-directed IFS data model.

A GifsGraph is a directed multigraph whose edges carry contracting
non-singular affine maps.  An edge u -> w labelled f means the term f(set_w)
appears in the defining equation of set_u, so the entry (i, j) of the
adjacency matrix counts edges i -> j and its spectral radius matches the
convention used by the dimension solvers.

The module also owns the JSON spec-file format (space signature, named exact
constants with p-adic branch selectors, edges with per-coordinate linear
multipliers and translations as rational combinations of the constants) and
three built-in example systems: a two-set tiling system in R x Q_2 and the
full/reduced systems describing its boundary.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .algebraic import QuadraticNumber, parse_quadratic, sqrt_from_embedding
from .padic import (
    DEFAULT_PRECISION,
    PadicNumber,
    from_rational,
    padic_zero,
)
from .space import AffineMap, DiagonalMap, Point, SpaceSignature, identity_affine


class SpecFormatError(ValueError):
    """Malformed GIFS spec document."""


@dataclass(frozen=True)
class GifsEdge:
    src: str
    dst: str
    map: AffineMap
    label: str = ""


@dataclass(frozen=True)
class PathSlice:
    """A path of length len(edges) following edges head-to-tail."""

    edges: tuple[int, ...]
    start: str
    end: str


@dataclass(frozen=True)
class GifsGraph:
    signature: SpaceSignature
    vertices: tuple[str, ...]
    edges: tuple[GifsEdge, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("vertex names must be unique")
        names = set(self.vertices)
        for e in self.edges:
            if e.src not in names or e.dst not in names:
                raise ValueError(f"edge {e.src}->{e.dst} references unknown vertex")
            if not e.map.linear.is_contracting():
                raise ValueError(f"edge map {e.label!r} is not contracting")
            if not e.map.linear.is_nonsingular():
                raise ValueError(f"edge map {e.label!r} is singular")
            if not e.map.translate.matches(self.signature):
                raise ValueError(f"edge {e.label!r} does not match the signature")

    def vertex_index(self, name: str) -> int:
        return self.vertices.index(name)

    def out_edges(self) -> list[list[int]]:
        """Edge indices grouped by source vertex."""
        out: list[list[int]] = [[] for _ in self.vertices]
        for idx, e in enumerate(self.edges):
            out[self.vertex_index(e.src)].append(idx)
        return out


def adjacency_matrix(g: GifsGraph) -> np.ndarray:
    """Entry (i, j) counts the edges i -> j."""
    n = len(g.vertices)
    f = np.zeros((n, n), dtype=np.int64)
    for e in g.edges:
        f[g.vertex_index(e.src), g.vertex_index(e.dst)] += 1
    return f


def _tarjan_scc(n: int, adj: list[list[int]]) -> list[list[int]]:
    """Iterative Tarjan; components in reverse topological order."""
    preorder: dict[int, int] = {}
    lowlink: dict[int, int] = {}
    found: set[int] = set()
    pending: list[int] = []
    components: list[list[int]] = []
    counter = 0
    for source in range(n):
        if source in found:
            continue
        stack = [source]
        while stack:
            v = stack[-1]
            if v not in preorder:
                counter += 1
                preorder[v] = counter
            done = True
            for w in adj[v]:
                if w not in preorder:
                    stack.append(w)
                    done = False
                    break
            if not done:
                continue
            lowlink[v] = preorder[v]
            for w in adj[v]:
                if w not in found:
                    lowlink[v] = min(lowlink[v],
                                     lowlink[w] if preorder[w] > preorder[v]
                                     else preorder[w])
            stack.pop()
            if lowlink[v] == preorder[v]:
                comp = [v]
                found.add(v)
                while pending and preorder[pending[-1]] > preorder[v]:
                    k = pending.pop()
                    found.add(k)
                    comp.append(k)
                components.append(comp)
            else:
                pending.append(v)
    return components


def is_strongly_connected(g: GifsGraph) -> bool:
    n = len(g.vertices)
    if n == 0:
        return False
    adj: list[list[int]] = [[] for _ in range(n)]
    for e in g.edges:
        adj[g.vertex_index(e.src)].append(g.vertex_index(e.dst))
    return len(_tarjan_scc(n, adj)) == 1


def spectral_radius(matrix, tol: float = 1e-13, max_iter: int = 100_000) -> float:
    """Largest eigenvalue modulus of a nonnegative matrix.

    Power iteration with a deterministic all-ones start, run per strongly
    connected block.  Iterating on B + I (same Perron vector, radius shifted
    by exactly 1) keeps periodic blocks from cycling.
    """
    f = np.asarray(matrix, dtype=float)
    if f.ndim != 2 or f.shape[0] != f.shape[1]:
        raise ValueError("matrix must be square")
    if (f < 0).any():
        raise ValueError("matrix must be nonnegative")
    n = f.shape[0]
    if n == 0:
        return 0.0
    adj = [list(np.nonzero(f[i])[0]) for i in range(n)]
    best = 0.0
    for comp in _tarjan_scc(n, adj):
        if len(comp) == 1:
            i = comp[0]
            best = max(best, float(f[i, i]))
            continue
        b = f[np.ix_(comp, comp)] + np.eye(len(comp))
        x = np.ones(len(comp))
        est = 1.0
        for _ in range(max_iter):
            y = b @ x
            est = float(y.max())
            x = y / est
            # residual test: successive-estimate deltas can vanish spuriously
            if float(np.abs(b @ x - est * x).max()) <= tol * est:
                break
        best = max(best, est - 1.0)
    return best


def enumerate_paths(g: GifsGraph, length: int) -> dict[tuple[str, str], list[PathSlice]]:
    """All paths of the given length, grouped by (start, end); counts equal
    the entries of the adjacency matrix power.  Length 0 is the empty set."""
    if length < 0:
        raise ValueError("path length must be >= 0")
    groups: dict[tuple[str, str], list[PathSlice]] = {}
    if length == 0:
        return groups
    out = g.out_edges()
    dst_index = [g.vertex_index(e.dst) for e in g.edges]
    for start in range(len(g.vertices)):
        frontier: list[tuple[int, tuple[int, ...]]] = [(start, ())]
        for _ in range(length):
            frontier = [(dst_index[ei], path + (ei,))
                        for v, path in frontier for ei in out[v]]
        for end, path in frontier:
            key = (g.vertices[start], g.vertices[end])
            groups.setdefault(key, []).append(
                PathSlice(path, g.vertices[start], g.vertices[end]))
    return groups


def _check_path(g: GifsGraph, path: PathSlice) -> None:
    prev = path.start
    for ei in path.edges:
        e = g.edges[ei]
        if e.src != prev:
            raise ValueError("path edges do not compose head-to-tail")
        prev = e.dst
    if prev != path.end:
        raise ValueError("path end vertex does not match its edges")


def path_linear(g: GifsGraph, path: PathSlice,
                precision: int = DEFAULT_PRECISION) -> DiagonalMap:
    """Composition of the linear parts along the path (identity for the
    empty path)."""
    _check_path(g, path)
    lin = DiagonalMap.identity(g.signature, precision)
    for ei in path.edges:
        lin = lin.compose(g.edges[ei].map.linear)
    return lin


def path_affine(g: GifsGraph, path: PathSlice,
                precision: int = DEFAULT_PRECISION) -> AffineMap:
    """Full affine composition along the path."""
    _check_path(g, path)
    f = identity_affine(g.signature, precision)
    for ei in path.edges:
        f = f.compose(g.edges[ei].map)
    return f


def uniform_linear(g: GifsGraph) -> DiagonalMap | None:
    """The shared linear part when every edge uses the same one, else None."""
    if not g.edges:
        return None
    first = g.edges[0].map.linear
    for e in g.edges[1:]:
        if e.map.linear != first:
            return None
    return first


# ---------------------------------------------------------------------------
# Spec file format (JSON)
# ---------------------------------------------------------------------------

_TERM = re.compile(
    r"^(?:(\d+(?:/\d+)?)\s*\*\s*)?([A-Za-z_]\w*)(?:\s*/\s*(\d+))?$")
_RATIONAL_TERM = re.compile(r"^(\d+(?:/\d+)?)$")


def _split_terms(expr: str) -> list[tuple[int, str]]:
    s = expr.replace("−", "-").strip()
    if not s:
        raise SpecFormatError("empty expression")
    terms: list[tuple[int, str]] = []
    sign, buf = 1, []
    first = True
    for ch in s:
        if ch in "+-" and buf:
            terms.append((sign, "".join(buf).strip()))
            sign, buf = (1 if ch == "+" else -1), []
        elif ch in "+-" and first:
            sign = 1 if ch == "+" else -1
        else:
            buf.append(ch)
        first = False
    terms.append((sign, "".join(buf).strip()))
    return terms


def _parse_combination(expr: str, constants: dict[str, QuadraticNumber],
                       default_d: int) -> QuadraticNumber:
    """Rational-coefficient combination of named constants, e.g.
    "kappa/2 + 1" or "1/2*lam"."""
    total: QuadraticNumber | None = None
    for sign, body in _split_terms(expr):
        m = _RATIONAL_TERM.match(body)
        if m:
            value = QuadraticNumber.from_rational(Fraction(m.group(1)), default_d)
        else:
            m = _TERM.match(body)
            if not m:
                raise SpecFormatError(f"cannot parse term {body!r} in {expr!r}")
            name = m.group(2)
            if name not in constants:
                raise SpecFormatError(f"unknown constant {name!r}")
            value = constants[name]
            if m.group(1):
                value = value * Fraction(m.group(1))
            if m.group(3):
                value = value / int(m.group(3))
        total = value * sign if total is None else total + value * sign
    assert total is not None
    return total


class _PadicContext:
    """Branch-consistent p-adic images of the named constants."""

    def __init__(self, constants: dict[str, QuadraticNumber],
                 selectors: dict[str, dict[int, int]], primes: tuple[int, ...],
                 precision: int):
        self.precision = precision
        self.roots: dict[tuple[int, int], PadicNumber] = {}
        for p in primes:
            for name, value in constants.items():
                sel = selectors.get(name, {}).get(p)
                if sel is None or value.b == 0:
                    continue
                try:
                    image = value.embed_padic(p, sel, precision)
                except ValueError as exc:
                    raise SpecFormatError(
                        f"constant {name!r} has no p-adic image for p={p} "
                        f"at selector {sel}: {exc}") from exc
                root = sqrt_from_embedding(value, image)
                key = (p, value.d)
                if key in self.roots:
                    seen = self.roots[key]
                    k = min(seen.precision, root.precision)
                    if (seen.valuation != root.valuation
                            or seen.digits[:k] != root.digits[:k]):
                        raise SpecFormatError(
                            f"selectors for p={p} pick inconsistent "
                            f"square roots of {value.d}")
                else:
                    self.roots[key] = root

    def embed(self, value: QuadraticNumber, p: int) -> PadicNumber:
        if value.b == 0:
            return from_rational(value.a, value.c, p, self.precision)
        root = self.roots.get((p, value.d))
        if root is None:
            raise SpecFormatError(
                f"no selector establishes sqrt({value.d}) in Q_{p}; "
                "give one constant a selector entry for this prime")
        return value.embed_padic_with_root(root)


def _coord_exact(entry, constants, default_d) -> QuadraticNumber | None:
    if isinstance(entry, str):
        return _parse_combination(entry, constants, default_d)
    return None


def _parse_padic_literal(entry, p: int) -> PadicNumber:
    digits = entry.get("digits", "")
    valuation = entry.get("valuation", 0)
    s = str(digits)
    if all(c == "0" for c in s.replace(" ", "")) or not s:
        return padic_zero(p)
    parts = s.split() if " " in s else list(s)
    lead = next(i for i, c in enumerate(parts) if int(c) != 0)
    return PadicNumber(p, int(valuation) + lead,
                       tuple(int(c) for c in parts[lead:]))


def parse_spec(text: str) -> GifsGraph:
    """Parse the JSON GIFS document; see the built-in examples for the shape."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecFormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise SpecFormatError("top level must be an object")
    try:
        space = doc["space"]
        sig = SpaceSignature(int(space.get("real", 0)),
                             int(space.get("complex", 0)),
                             tuple(int(p) for p in space.get("primes", ())))
        vertices = tuple(str(v) for v in doc["vertices"])
        edge_docs = doc["edges"]
    except (KeyError, TypeError, ValueError) as exc:
        raise SpecFormatError(f"bad document structure: {exc}") from exc
    precision = int(doc.get("precision", DEFAULT_PRECISION))

    constants: dict[str, QuadraticNumber] = {}
    selectors: dict[str, dict[int, int]] = {}
    default_d = 2
    for name, entry in doc.get("constants", {}).items():
        try:
            value = parse_quadratic(str(entry["value"]), default_d)
        except (KeyError, ValueError) as exc:
            raise SpecFormatError(f"bad constant {name!r}: {exc}") from exc
        constants[name] = value
        if value.b != 0:
            default_d = value.d
        selectors[name] = {int(p): int(r)
                           for p, r in entry.get("selector", {}).items()}
    # retag rationals so combinations share one field
    constants = {name: (QuadraticNumber(v.a, 0, v.c, default_d) if v.b == 0 else v)
                 for name, v in constants.items()}

    ctx = _PadicContext(constants, selectors, sig.primes, precision)

    def parse_coords(entries, what: str):
        if len(entries) != sig.r + sig.s + sig.k:
            raise SpecFormatError(
                f"{what} needs {sig.r + sig.s + sig.k} coordinates, "
                f"got {len(entries)}")
        reals: list[float] = []
        complexes: list[complex] = []
        padics: list[PadicNumber] = []
        exact: list[QuadraticNumber | None] = []
        for i, entry in enumerate(entries):
            if i < sig.r:
                if isinstance(entry, str):
                    value = _parse_combination(entry, constants, default_d)
                    exact.append(value)
                    reals.append(value.embed_real())
                elif isinstance(entry, (int, float)):
                    exact.append(None)
                    reals.append(float(entry))
                else:
                    raise SpecFormatError(f"bad real coordinate in {what}")
            elif i < sig.r + sig.s:
                if (isinstance(entry, (list, tuple)) and len(entry) == 2
                        and all(isinstance(v, (int, float)) for v in entry)):
                    complexes.append(complex(entry[0], entry[1]))
                else:
                    raise SpecFormatError(
                        f"complex coordinate in {what} must be [re, im]")
            else:
                p = sig.primes[i - sig.r - sig.s]
                if isinstance(entry, str):
                    value = _parse_combination(entry, constants, default_d)
                    exact.append(value)
                    padics.append(ctx.embed(value, p))
                elif isinstance(entry, dict):
                    exact.append(None)
                    padics.append(_parse_padic_literal(entry, p))
                else:
                    raise SpecFormatError(f"bad p-adic coordinate in {what}")
        exact_tuple = tuple(exact) if sig.s == 0 else None
        return tuple(reals), tuple(complexes), tuple(padics), exact_tuple

    edges = []
    for idx, entry in enumerate(edge_docs):
        try:
            src, dst = str(entry["from"]), str(entry["to"])
            lin_entries = entry["linear"]
            tr_entries = entry["translate"]
        except (KeyError, TypeError) as exc:
            raise SpecFormatError(f"bad edge #{idx}: {exc}") from exc
        label = str(entry.get("label", f"f{idx}"))
        lr, lc, lp, lexact = parse_coords(lin_entries, f"edge #{idx} linear")
        tr, tc, tp, texact = parse_coords(tr_entries, f"edge #{idx} translate")
        edges.append(GifsEdge(src, dst,
                              AffineMap(DiagonalMap(lr, lc, lp, lexact),
                                        Point(tr, tc, tp, texact)),
                              label))
    try:
        return GifsGraph(sig, vertices, tuple(edges))
    except ValueError as exc:
        raise SpecFormatError(str(exc)) from exc


def _padic_literal(x: PadicNumber) -> dict:
    if x.is_zero:
        return {"digits": "0", "valuation": 0}
    sep = "" if x.prime <= 10 else " "
    return {"digits": sep.join(str(d) for d in x.digits),
            "valuation": x.valuation}


def serialize_spec(g: GifsGraph) -> str:
    """Emit a spec document with literal coordinates; parse_spec round-trips
    it to an equal graph (exact constant backing is not preserved)."""
    sig = g.signature
    precision = max([x.precision for e in g.edges
                     for x in e.map.linear.padics + e.map.translate.padics
                     if not x.is_zero] or [DEFAULT_PRECISION])
    doc = {
        "space": {"real": sig.r, "complex": sig.s, "primes": list(sig.primes)},
        "precision": precision,
        "vertices": list(g.vertices),
        "edges": [],
    }
    for e in g.edges:
        def coords(lin_reals, lin_complexes, lin_padics):
            out: list = [float(a) for a in lin_reals]
            out += [[z.real, z.imag] for z in lin_complexes]
            out += [_padic_literal(x) for x in lin_padics]
            return out
        doc["edges"].append({
            "from": e.src, "to": e.dst, "label": e.label,
            "linear": coords(e.map.linear.reals, e.map.linear.complexes,
                             e.map.linear.padics),
            "translate": coords(e.map.translate.reals,
                                e.map.translate.complexes,
                                e.map.translate.padics),
        })
    return json.dumps(doc, indent=2)


# ---------------------------------------------------------------------------
# Built-in example systems
# ---------------------------------------------------------------------------

# exact constants of the R x Q_2 example: the two roots of x^2 - 3x - 2
EXAMPLE_KAPPA = QuadraticNumber(3, -1, 2, 17)
EXAMPLE_LAM = QuadraticNumber(3, 1, 2, 17)

_EXAMPLE_CONSTANTS = {
    "kappa": {"value": "(3-1*sqrt(17))/2"},
    "lam": {"value": "(3+1*sqrt(17))/2", "selector": {"2": 0}},
}

_T = ["kappa", "lam"]
_ZERO = ["0", "0"]
_HALF_T1 = ["kappa/2", "lam/2"]
_T1 = ["kappa", "lam"]
_T2 = ["kappa+1", "lam+1"]


def _doc(vertices, edges, precision):
    return json.dumps({
        "space": {"real": 1, "complex": 0, "primes": [2]},
        "precision": precision,
        "constants": _EXAMPLE_CONSTANTS,
        "vertices": vertices,
        "edges": [{"from": s, "to": d, "linear": _T, "translate": t,
                   "label": lab} for s, d, t, lab in edges],
    })


def main_example_spec(precision: int = DEFAULT_PRECISION) -> str:
    """Two-set system whose solution tiles R x Q_2."""
    edges = [
        ("Omega_a", "Omega_a", _ZERO, "T(x)"),
        ("Omega_a", "Omega_b", _ZERO, "T(x)"),
        ("Omega_a", "Omega_a", _HALF_T1, "T(x)+t1/2"),
        ("Omega_a", "Omega_b", _HALF_T1, "T(x)+t1/2"),
        ("Omega_a", "Omega_a", _T2, "T(x)+t2"),
        ("Omega_b", "Omega_a", _T1, "T(x)+t1"),
    ]
    return _doc(["Omega_a", "Omega_b"], edges, precision)


def boundary_full_spec(precision: int = DEFAULT_PRECISION) -> str:
    """Eight-piece system for the boundaries of the two prototiles."""
    v = ["Xi_ab_0", "Xi_ba_0", "Xi_aa_1", "Xi_aa_m1",
         "Xi_aa_hm1", "Xi_aa_1mh", "Xi_ab_1mh", "Xi_ba_hm1"]
    edges = [
        ("Xi_ab_0", "Xi_aa_1", _ZERO, "T(x)"),
        ("Xi_ba_0", "Xi_aa_m1", _T1, "T(x)+t1"),
        ("Xi_aa_1", "Xi_aa_m1", _T1, "T(x)+t1"),
        ("Xi_aa_1", "Xi_aa_hm1", _ZERO, "T(x)"),
        ("Xi_aa_1", "Xi_ba_hm1", _ZERO, "T(x)"),
        ("Xi_aa_m1", "Xi_aa_1", _ZERO, "T(x)"),
        ("Xi_aa_m1", "Xi_aa_1mh", _HALF_T1, "T(x)+t1/2"),
        ("Xi_aa_m1", "Xi_ab_1mh", _HALF_T1, "T(x)+t1/2"),
        ("Xi_aa_hm1", "Xi_aa_1", _HALF_T1, "T(x)+t1/2"),
        ("Xi_aa_1mh", "Xi_aa_m1", _T2, "T(x)+t2"),
        ("Xi_ab_1mh", "Xi_aa_hm1", _ZERO, "T(x)"),
        ("Xi_ab_1mh", "Xi_ba_hm1", _ZERO, "T(x)"),
        ("Xi_ba_hm1", "Xi_aa_1mh", _T1, "T(x)+t1"),
        ("Xi_ba_hm1", "Xi_ab_1mh", _T1, "T(x)+t1"),
    ]
    return _doc(v, edges, precision)


def boundary_reduced_spec(precision: int = DEFAULT_PRECISION) -> str:
    """Strongly connected five-piece reduction of the boundary system."""
    v = ["Xi_ab_0", "Xi_aa_hm1", "Xi_aa_1mh", "Xi_ab_1mh", "Xi_ba_hm1"]
    edges = [
        ("Xi_ab_0", "Xi_aa_1mh", _ZERO, "T(x)"),
        ("Xi_ab_0", "Xi_ab_1mh", _ZERO, "T(x)"),
        ("Xi_aa_hm1", "Xi_aa_1mh", _HALF_T1, "T(x)+t1/2"),
        ("Xi_aa_hm1", "Xi_ab_1mh", _HALF_T1, "T(x)+t1/2"),
        ("Xi_aa_1mh", "Xi_aa_hm1", _T2, "T(x)+t2"),
        ("Xi_aa_1mh", "Xi_ab_0", _T2, "T(x)+t2"),
        ("Xi_ab_1mh", "Xi_aa_hm1", _ZERO, "T(x)"),
        ("Xi_ab_1mh", "Xi_ba_hm1", _ZERO, "T(x)"),
        ("Xi_ba_hm1", "Xi_aa_1mh", _T1, "T(x)+t1"),
        ("Xi_ba_hm1", "Xi_ab_1mh", _T1, "T(x)+t1"),
    ]
    return _doc(v, edges, precision)


def example_main(precision: int = DEFAULT_PRECISION) -> GifsGraph:
    return parse_spec(main_example_spec(precision))


def example_boundary_full(precision: int = DEFAULT_PRECISION) -> GifsGraph:
    return parse_spec(boundary_full_spec(precision))


def example_boundary_reduced(precision: int = DEFAULT_PRECISION) -> GifsGraph:
    return parse_spec(boundary_reduced_spec(precision))


FIXTURES = {
    "main": example_main,
    "boundary-full": example_boundary_full,
    "boundary": example_boundary_reduced,
}
