"""End-to-end pipeline: point cloud (or explicit complex) to circle-valued
vertex coordinates.

Order of operations: Rips complex, persistent cohomology, class selection,
restriction to the representative scale, dual cycle, integer lift of the
cocycle and the cycle, winding reduction, harmonic smoothing, tree
integration. The winding reduction step is what guarantees the final
cocycle is a generator, so coordinates wrap exactly once.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .complexes import FilteredComplex, build_rips
from .fields import OddPrime
from .lifting import DEFAULT_SNF_CAP, LiftReport, lift_closed
from .persistence import (Diagram, PersistencePair, cycle_representative,
                          persistent_cohomology, select_class)
from .smoothing import (CircularCoords, SmoothedCocycle, circular_map,
                        harmonic_smooth)
from .winding import WindingReport, reduce_winding


@dataclass
class PipelineResult:
    complex: FilteredComplex
    diagram: Diagram
    pair: PersistencePair
    scale: float
    working_complex: FilteredComplex
    cocycle_lift: LiftReport
    cycle_lift: LiftReport
    winding_report: WindingReport | None
    smoothed: SmoothedCocycle
    coords: CircularCoords

    def coordinate_array(self) -> np.ndarray:
        return np.array([self.coords.values[v]
                         for v in sorted(self.coords.values)])


def enclosing_radius(points) -> float:
    """min over points of the max distance to the rest: beyond this scale
    the Rips complex is a cone and carries no new classes."""
    pts = np.asarray(points, dtype=float)
    diff = pts[:, None, :] - pts[None, :, :]
    dist = np.sqrt((diff * diff).sum(axis=-1))
    return float(dist.max(axis=1).min())


def run_pipeline(points=None, complex: FilteredComplex | None = None, *,
                 prime: int = 47, max_dim: int = 1,
                 threshold: float | str = "auto",
                 class_strategy: str = "max-persistence",
                 scale_policy: str | float = "midpoint",
                 reduce: bool = True,
                 snf_cap: int = DEFAULT_SNF_CAP) -> PipelineResult:
    """Run the full pipeline on a point cloud or a prebuilt complex.

    ``threshold="auto"`` builds the initial complex at the enclosing radius
    and then works at the selected class's representative scale.
    """
    p = OddPrime(prime)
    if complex is None:
        if points is None:
            raise ValueError("need points or a complex")
        t = enclosing_radius(points) if threshold == "auto" else float(threshold)
        complex = build_rips(points, t, max_dim + 1)

    diagram = persistent_cohomology(complex, p, max_dim, scale_policy=scale_policy)
    pair = select_class(diagram, class_strategy, dim=1)
    cycle = cycle_representative(complex, p, pair)
    pair.representative_cycle = cycle

    scale = pair.scale
    sub = complex.restrict(scale)
    cocycle_p = pair.representative_cocycle.push_to(sub)
    cycle_p = cycle.push_to(sub)

    cocycle_lift = lift_closed(cocycle_p, "cocycle", snf_cap=snf_cap)
    cycle_lift = lift_closed(cycle_p, "cycle", snf_cap=snf_cap)

    alpha = cocycle_lift.working_lift
    winding_report = None
    if reduce:
        winding_report = reduce_winding(alpha, cycle_lift.working_lift,
                                        snf_cap=snf_cap)
        alpha = winding_report.reduced_cocycle

    smoothed = harmonic_smooth(alpha)
    coords = circular_map(smoothed)
    return PipelineResult(
        complex=complex, diagram=diagram, pair=pair, scale=scale,
        working_complex=sub, cocycle_lift=cocycle_lift, cycle_lift=cycle_lift,
        winding_report=winding_report, smoothed=smoothed, coords=coords)
