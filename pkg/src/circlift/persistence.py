"""Persistent cohomology over F_p with representative cocycles.

The reduction maintains one live cocycle per unpaired simplex and processes
simplices in filtration order (faces before cofaces). When a new simplex
evaluates nonzero against some live cocycles of one degree lower, the
youngest of them dies and absorbs the others; its value just before death is
the representative for the finite interval. Cocycles still alive at the end
give the essential intervals. Intervals agree with persistent homology,
which is implemented independently below both as a cross-check and as the
source of homology cycle representatives.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field

from .complexes import Chain, Cochain, FilteredComplex, GF
from .errors import EmptyDiagram, NoDualCycle
from .fields import OddPrime, inv_mod


@dataclass
class PersistencePair:
    """One interval [birth, death) with its representative data.

    The representative cocycle is stored restricted to the representative
    scale (a sublevel complex between birth and death); the unrestricted
    cocycle, valid anywhere below the death scale, is kept alongside so the
    scale can be revisited.
    """

    dimension: int
    birth: float
    death: float
    scale: float
    representative_cocycle: Cochain
    cocycle_below_death: Cochain
    birth_simplex: tuple[int, ...]
    death_simplex: tuple[int, ...] | None
    representative_cycle: Chain | None = None

    @property
    def persistence(self) -> float:
        return self.death - self.birth

    def cocycle_at(self, scale: float) -> Cochain:
        """Restriction of the representative to the sublevel complex at
        ``scale`` (entries on later simplices are dropped)."""
        cx = self.cocycle_below_death.complex
        simp = cx.simplices(self.dimension)
        kept = {i: v for i, v in self.cocycle_below_death.entries.items()
                if cx.filtration(simp[i]) <= scale}
        return Cochain(cx, self.dimension, self.cocycle_below_death.ring, kept)

    def to_json_dict(self) -> dict:
        out = {
            "dimension": self.dimension,
            "birth": self.birth,
            "death": None if math.isinf(self.death) else self.death,
            "scale": self.scale,
            "representative_cocycle": self.representative_cocycle.to_json_dict(),
        }
        if self.representative_cycle is not None:
            out["representative_cycle"] = self.representative_cycle.to_json_dict()
        return out


@dataclass
class Diagram:
    """Persistence pairs grouped by dimension, most persistent first."""

    prime: int
    complex: FilteredComplex
    pairs_by_dim: dict[int, list[PersistencePair]] = field(default_factory=dict)

    def pairs(self, dim: int) -> list[PersistencePair]:
        return self.pairs_by_dim.get(dim, [])

    def all_pairs(self) -> list[PersistencePair]:
        return [p for d in sorted(self.pairs_by_dim) for p in self.pairs_by_dim[d]]

    def to_json_dict(self) -> dict:
        return {
            "prime": self.prime,
            "pairs": [p.to_json_dict() for p in self.all_pairs()],
        }

    def write_json(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_json_dict(), fh, indent=1, sort_keys=True)

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["dimension", "birth", "death"])
            for p in self.all_pairs():
                writer.writerow([p.dimension, repr(p.birth),
                                 "inf" if math.isinf(p.death) else repr(p.death)])


def _simplex_stream(cx: FilteredComplex, top_dim: int):
    """All simplices of dimension <= top_dim in (filtration, dim, lex) order,
    which guarantees faces precede cofaces."""
    stream = []
    for m in range(min(top_dim, cx.dimension) + 1):
        filt = cx.filtration_values(m)
        for idx, s in enumerate(cx.simplices(m)):
            stream.append((filt[idx], m, s, idx))
    stream.sort(key=lambda e: (e[0], e[1], e[2]))
    return stream


def persistent_cohomology(cx: FilteredComplex, p: OddPrime, max_dim: int, *,
                          scale_policy: str | float = "midpoint") -> Diagram:
    """Persistence diagram over F_p with representative cocycles in
    dimensions 0..max_dim.

    ``scale_policy`` fixes where finite-interval representatives are
    restricted: "midpoint" (default) uses (birth+death)/2; a float uses that
    scale for every pair it is valid for. Essential intervals always use the
    final scale of the complex.
    """
    if max_dim > cx.dimension:
        raise ValueError(f"max_dim {max_dim} exceeds complex dimension {cx.dimension}")
    q = p.p

    live: dict[int, dict[int, int]] = {}          # cocycle id -> support map
    birth_info: dict[int, tuple[float, int, tuple, int]] = {}
    dim_of: dict[int, int] = {}
    by_simplex: dict[tuple[int, int], set[int]] = {}   # (dim, idx) -> cocycle ids
    finished: list[tuple] = []
    next_id = 0

    def attach(cid: int, d: int, idx: int) -> None:
        by_simplex.setdefault((d, idx), set()).add(cid)

    def detach(cid: int, d: int, idx: int) -> None:
        group = by_simplex.get((d, idx))
        if group is not None:
            group.discard(cid)
            if not group:
                del by_simplex[(d, idx)]

    for order, (f, d, s, idx) in enumerate(_simplex_stream(cx, max_dim + 1)):
        if d > 0:
            faces = cx.boundary_faces(s)
            values: dict[int, int] = {}
            for fidx, sign in faces:
                for cid in by_simplex.get((d - 1, fidx), ()):
                    values[cid] = (values.get(cid, 0) + sign * live[cid][fidx]) % q
            values = {cid: v for cid, v in values.items() if v}
            if values:
                # youngest nonzero evaluation dies; the rest absorb it
                victim = max(values, key=lambda cid: birth_info[cid][1])
                vb_filt, _, vb_simplex, _ = birth_info[victim]
                support = live[victim]
                if f > vb_filt:
                    finished.append((d - 1, vb_filt, f, dict(support), vb_simplex, s))
                inv = inv_mod(values[victim], q)
                for cid, v in values.items():
                    if cid == victim:
                        continue
                    factor = (v * inv) % q
                    target = live[cid]
                    for fidx, w in support.items():
                        nv = (target.get(fidx, 0) - factor * w) % q
                        if nv:
                            if fidx not in target:
                                attach(cid, d - 1, fidx)
                            target[fidx] = nv
                        elif fidx in target:
                            del target[fidx]
                            detach(cid, d - 1, fidx)
                for fidx in support:
                    detach(victim, d - 1, fidx)
                del live[victim], birth_info[victim], dim_of[victim]
                continue
        if d <= max_dim:
            cid = next_id
            next_id += 1
            live[cid] = {idx: 1}
            birth_info[cid] = (f, order, s, idx)
            dim_of[cid] = d
            attach(cid, d, idx)

    for cid, support in live.items():
        f, _, s, _ = birth_info[cid]
        finished.append((dim_of[cid], f, math.inf, dict(support), s, None))

    final_scale = cx.max_filtration()
    diagram = Diagram(prime=q, complex=cx)
    ring = GF(q)
    for d, birth, death, support, bsimplex, dsimplex in finished:
        raw = Cochain(cx, d, ring, support)
        if scale_policy != "midpoint" and birth <= float(scale_policy) < death:
            scale = float(scale_policy)
        elif math.isinf(death):
            scale = final_scale
        else:
            scale = (birth + death) / 2.0
        pair = PersistencePair(
            dimension=d, birth=birth, death=death, scale=scale,
            representative_cocycle=raw, cocycle_below_death=raw,
            birth_simplex=bsimplex, death_simplex=dsimplex)
        pair.representative_cocycle = pair.cocycle_at(scale)
        diagram.pairs_by_dim.setdefault(d, []).append(pair)

    for pairs in diagram.pairs_by_dim.values():
        pairs.sort(key=lambda pr: (-pr.persistence, pr.birth, pr.birth_simplex))
    return diagram


def persistent_homology_intervals(cx: FilteredComplex, p: OddPrime,
                                  max_dim: int) -> list[tuple[int, float, float]]:
    """Barcode by standard boundary-matrix column reduction (no
    representatives). Independent of the cohomology reduction above."""
    q = p.p
    stream = _simplex_stream(cx, max_dim + 1)
    position = {(d, idx): pos for pos, (_, d, _, idx) in enumerate(stream)}
    columns: list[dict[int, int]] = []
    for f, d, s, idx in stream:
        if d == 0:
            columns.append({})
        else:
            columns.append({position[(d - 1, fidx)]: sign % q
                            for fidx, sign in cx.boundary_faces(s)})

    low_to_col: dict[int, int] = {}
    intervals: list[tuple[int, float, float]] = []
    paired: set[int] = set()
    for j, col in enumerate(columns):
        while col:
            low = max(col)
            other = low_to_col.get(low)
            if other is None:
                break
            factor = (col[low] * inv_mod(columns[other][low], q)) % q
            for i, v in columns[other].items():
                nv = (col.get(i, 0) - factor * v) % q
                if nv:
                    col[i] = nv
                elif i in col:
                    del col[i]
        if col:
            low = max(col)
            low_to_col[low] = j
            paired.add(low)
            paired.add(j)
            birth_f, birth_d = stream[low][0], stream[low][1]
            death_f = stream[j][0]
            if death_f > birth_f:
                intervals.append((birth_d, birth_f, death_f))
    for j, (f, d, s, idx) in enumerate(stream):
        if j not in paired and not columns[j] and d <= max_dim:
            intervals.append((d, f, math.inf))
    intervals.sort(key=lambda t: (t[0], t[1], t[2]))
    return intervals


def cycle_representative(cx: FilteredComplex, p: OddPrime,
                         pair: PersistencePair) -> Chain:
    """A homology cycle at the pair's representative scale that pairs
    nonzero (mod p) with the pair's cocycle.

    Cycles are read off a boundary-matrix reduction at the scale: every
    column that reduces to zero yields an explicit cycle through the
    recorded column operations. The column of the pair's birth simplex is
    the natural candidate; all cycle columns are scanned before giving up.
    """
    if pair.representative_cocycle.complex is not cx:
        raise ValueError("pair was computed on a different complex")
    q = p.p
    m = pair.dimension
    if m < 1:
        raise NoDualCycle("degree-0 pairs carry no dual cycle",
                          operation="persistence.cycle_representative")
    scale = pair.scale
    filt = cx.filtration_values(m)
    kept = [i for i, f in enumerate(filt) if f <= scale]
    order = sorted(kept, key=lambda i: (filt[i], cx.simplices(m)[i]))
    simp = cx.simplices(m)

    columns: list[dict[int, int]] = []
    combos: list[dict[int, int]] = []
    for i in order:
        columns.append({fidx: sign % q for fidx, sign in cx.boundary_faces(simp[i])})
        combos.append({i: 1})
    low_to_col: dict[int, int] = {}
    cycles: dict[int, dict[int, int]] = {}
    for j, col in enumerate(columns):
        combo = combos[j]
        while col:
            low = max(col)
            other = low_to_col.get(low)
            if other is None:
                break
            factor = (col[low] * inv_mod(columns[other][low], q)) % q
            for i, v in columns[other].items():
                nv = (col.get(i, 0) - factor * v) % q
                if nv:
                    col[i] = nv
                else:
                    col.pop(i, None)
            for i, v in combos[other].items():
                nv = (combo.get(i, 0) - factor * v) % q
                if nv:
                    combo[i] = nv
                else:
                    combo.pop(i, None)
        if col:
            low_to_col[max(col)] = j
        else:
            cycles[order[j]] = combo

    cocycle = pair.representative_cocycle.entries

    def pairs_nonzero(candidate: dict[int, int]) -> bool:
        total = sum(v * cocycle.get(i, 0) for i, v in candidate.items()) % q
        return total != 0

    birth_idx = cx.index(pair.birth_simplex) if len(pair.birth_simplex) - 1 == m else None
    if birth_idx is not None and birth_idx in cycles and pairs_nonzero(cycles[birth_idx]):
        return Chain(cx, m, GF(q), cycles[birth_idx])
    for j in order:
        if j in cycles and pairs_nonzero(cycles[j]):
            return Chain(cx, m, GF(q), cycles[j])
    raise NoDualCycle("no reduced cycle pairs nonzero with the cocycle",
                      operation="persistence.cycle_representative")


def select_class(diagram: Diagram, strategy: str = "max-persistence",
                 dim: int = 1) -> PersistencePair:
    """Pick a pair from the diagram: "max-persistence" or "index:k"."""
    pairs = diagram.pairs(dim)
    if not pairs:
        raise EmptyDiagram(f"no intervals in dimension {dim}",
                           operation="persistence.select_class")
    if strategy == "max-persistence":
        return pairs[0]
    if strategy.startswith("index:"):
        k = int(strategy.split(":", 1)[1])
        if not 0 <= k < len(pairs):
            raise EmptyDiagram(f"index {k} out of range ({len(pairs)} pairs)",
                               operation="persistence.select_class")
        return pairs[k]
    raise ValueError(f"unknown selection strategy {strategy!r}")
