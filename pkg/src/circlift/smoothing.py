"""Harmonic smoothing of integer cocycles and circular coordinates.

The smoothed representative is the minimum-norm real cocycle cohomologous
to the input; it is the unique one orthogonal to the coboundaries, found by
solving the graph-Laplacian normal equations. Integrating it along a
spanning tree then produces the circle-valued vertex coordinates.
"""

from __future__ import annotations

import csv
import json
from collections import deque
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .complexes import Cochain, FilteredComplex, RR, ZZ, apply_coboundary
from .errors import InconsistentCocycle, NotACocycle, SolverDiverged, VertexSetMismatch

DENSE_VERTEX_LIMIT = 500
RESIDUAL_RTOL = 1e-9
EDGE_TOL = 1e-6


@dataclass(frozen=True)
class SmoothedCocycle:
    """Real cocycle alpha_tilde = alpha + delta0(potential) with vanishing
    divergence; residual_norm records ||delta0^T alpha_tilde||."""

    alpha_tilde: Cochain
    potential: Cochain
    residual_norm: float

    def to_json_dict(self) -> dict:
        return {
            "alpha_tilde": self.alpha_tilde.to_json_dict(),
            "potential": self.potential.to_json_dict(),
            "residual_norm": self.residual_norm,
        }

    def write_json(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_json_dict(), fh, indent=1, sort_keys=True)


@dataclass(frozen=True)
class CircularCoords:
    """Map vertex id -> coordinate in [0, 1) (fraction of a full turn)."""

    values: dict[int, float]

    def as_array(self, vertex_ids) -> np.ndarray:
        return np.array([self.values[v] for v in vertex_ids])

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["vertex_id", "theta"])
            for v in sorted(self.values):
                writer.writerow([v, repr(self.values[v])])


def _components(cx: FilteredComplex) -> list[list[int]]:
    """Connected components as sorted lists of vertex indices."""
    n = cx.n_vertices
    adj: list[list[int]] = [[] for _ in range(n)]
    for a, b in cx.simplices(1):
        ia, ib = cx.index((a,)), cx.index((b,))
        adj[ia].append(ib)
        adj[ib].append(ia)
    seen = [False] * n
    comps = []
    for start in range(n):
        if seen[start]:
            continue
        queue = deque([start])
        seen[start] = True
        comp = []
        while queue:
            v = queue.popleft()
            comp.append(v)
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def _jacobi_cg(L: np.ndarray, rhs: np.ndarray, rtol: float = 1e-12,
               max_iter: int = 20000) -> np.ndarray:
    """Conjugate gradients with Jacobi preconditioning; deterministic."""
    diag = np.where(np.abs(np.diag(L)) > 0, np.diag(L), 1.0)
    x = np.zeros_like(rhs)
    r = rhs - L @ x
    z = r / diag
    p = z.copy()
    rz = float(r @ z)
    bnorm = float(np.linalg.norm(rhs)) or 1.0
    for _ in range(max_iter):
        if np.linalg.norm(r) <= rtol * bnorm:
            break
        Lp = L @ p
        a = rz / float(p @ Lp)
        x = x + a * p
        r = r - a * Lp
        z = r / diag
        rz_new = float(r @ z)
        p = z + (rz_new / rz) * p
        rz = rz_new
    return x


def harmonic_smooth(alpha: Cochain) -> SmoothedCocycle:
    """Minimum-norm real representative of an integer 1-cocycle's class.

    Solves the normal equations L f = -delta0^T alpha with one anchored
    vertex per connected component (the Laplacian kernel), then returns
    alpha_tilde = alpha + delta0 f.
    """
    if alpha.dim != 1:
        raise ValueError("smoothing applies to 1-cochains")
    if alpha.ring is not ZZ:
        raise ValueError("smoothing expects integer coefficients")
    if not apply_coboundary(alpha).is_zero():
        raise NotACocycle("smoothing requires a cocycle",
                          operation="smoothing_coords.harmonic_smooth")
    cx = alpha.complex
    n_v, n_e = cx.n_vertices, cx.n_simplices(1)

    B = np.zeros((n_e, n_v))
    for j, s in enumerate(cx.simplices(1)):
        for idx, sign in cx.boundary_faces(s):
            B[j, idx] = sign
    a = np.zeros(n_e)
    for i, v in alpha.entries.items():
        a[i] = float(v)

    anchors = [comp[0] for comp in _components(cx)]
    keep = np.array([i for i in range(n_v) if i not in set(anchors)], dtype=int)
    f = np.zeros(n_v)
    if keep.size:
        Bk = B[:, keep]
        L = Bk.T @ Bk
        rhs = -(Bk.T @ a)
        if keep.size <= DENSE_VERTEX_LIMIT:
            f[keep] = np.linalg.solve(L, rhs)
        else:
            f[keep] = _jacobi_cg(L, rhs)

    alpha_tilde_vec = a + B @ f
    residual = float(np.linalg.norm(B.T @ alpha_tilde_vec))
    scale = max(1.0, float(np.linalg.norm(a)))
    if residual > RESIDUAL_RTOL * scale:
        raise SolverDiverged(
            f"normal-equation residual {residual:.3e} above tolerance",
            operation="smoothing_coords.harmonic_smooth")

    alpha_tilde = Cochain(cx, 1, RR,
                          {i: float(v) for i, v in enumerate(alpha_tilde_vec)
                           if abs(v) > 0.0})
    potential = Cochain(cx, 0, RR,
                        {i: float(v) for i, v in enumerate(f) if v != 0.0})
    return SmoothedCocycle(alpha_tilde, potential, residual)


def naive_circular_map(alpha: Cochain, cx: FilteredComplex | None = None) -> CircularCoords:
    """The base construction sends every vertex to 0: circular variation
    lives entirely on the edges. Exposed for completeness and testing."""
    cx = cx or alpha.complex
    return CircularCoords({v: 0.0 for v in cx.vertex_ids})


def circular_map(smoothed: SmoothedCocycle,
                 base_vertex: int | None = None) -> CircularCoords:
    """Integrate the smoothed cocycle along a breadth-first spanning tree.

    theta(base) = 0 per component and theta(b) = theta(a) + alpha_tilde(ab)
    mod 1 along tree edges; consistency is then asserted on every edge
    (off-tree edges close up because the holonomy of an integer class is an
    integer). Components other than the base vertex's start at their
    lowest-index vertex.
    """
    alpha = smoothed.alpha_tilde
    cx = alpha.complex
    n_v = cx.n_vertices
    vids = cx.vertex_ids

    edge_value: dict[tuple[int, int], float] = {}
    adj: list[list[tuple[int, float]]] = [[] for _ in range(n_v)]
    for j, s in enumerate(cx.simplices(1)):
        ia, ib = cx.index((s[0],)), cx.index((s[1],))
        v = float(alpha.entries.get(j, 0.0))
        edge_value[(ia, ib)] = v
        adj[ia].append((ib, v))       # theta(b) - theta(a) = v
        adj[ib].append((ia, -v))

    theta = np.full(n_v, np.nan)
    for comp in _components(cx):
        root = comp[0]
        if base_vertex is not None and cx.index((base_vertex,)) in comp:
            root = cx.index((base_vertex,))
        theta[root] = 0.0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w, v in adj[u]:
                if np.isnan(theta[w]):
                    theta[w] = (theta[u] + v) % 1.0
                    queue.append(w)

    for (ia, ib), v in edge_value.items():
        gap = (theta[ib] - theta[ia] - v) % 1.0
        if min(gap, 1.0 - gap) > EDGE_TOL:
            raise InconsistentCocycle(
                f"edge ({vids[ia]},{vids[ib]}) off by {min(gap, 1.0 - gap):.3e}",
                operation="smoothing_coords.circular_map")

    return CircularCoords({vids[i]: float(theta[i] % 1.0) for i in range(n_v)})


def _circular_distance(x: np.ndarray) -> np.ndarray:
    g = np.mod(x, 1.0)
    return np.minimum(g, 1.0 - g)


def circular_correlation(computed: CircularCoords,
                         truth: Mapping[int, float]) -> float:
    """Alignment score in [0, 1], invariant under rotation and reflection.

    Score is 1 - 2 * mean circular distance after the best orientation and
    offset; the optimum over offsets is attained where some pair aligns
    exactly or antipodally, so those breakpoints are scanned.
    """
    if set(computed.values) != set(truth):
        raise VertexSetMismatch("coordinate maps cover different vertices",
                                operation="smoothing_coords.circular_correlation")
    keys = sorted(computed.values)
    c = np.array([computed.values[k] for k in keys])
    t = np.array([truth[k] for k in keys])
    best = 0.0
    for orient in (1.0, -1.0):
        diffs = np.mod(c - orient * t, 1.0)
        offsets = np.concatenate([diffs, diffs + 0.5])
        for phi in offsets:
            score = 1.0 - 2.0 * float(np.mean(_circular_distance(c - orient * t - phi)))
            if score > best:
                best = score
    return best
