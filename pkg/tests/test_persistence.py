import math

import numpy as np
import pytest

from circlift import (OddPrime, apply_boundary, apply_coboundary,
                      build_rips, cycle_representative, kronecker_pairing,
                      persistent_cohomology, select_class)
from circlift.errors import EmptyDiagram, NoDualCycle
from circlift.persistence import PersistencePair, persistent_homology_intervals
from circlift.experiments import sample_circle
from conftest import dense_rank_mod, random_complex


class TestDiagrams:
    def test_hexagon_has_one_essential_circle_class(self, hexagon):
        dg = persistent_cohomology(hexagon, OddPrime(7), 1)
        ones = dg.pairs(1)
        assert len(ones) == 1
        assert math.isinf(ones[0].death)

    def test_filled_triangle_has_no_circle_class(self, filled_triangle):
        dg = persistent_cohomology(filled_triangle, OddPrime(7), 1)
        assert dg.pairs(1) == []

    def test_clean_circle_sample_has_dominant_class(self):
        pts, _ = sample_circle(60, 0.0, 2, seed=0)
        cx = build_rips(pts, 1.0, 2)
        dg = persistent_cohomology(cx, OddPrime(47), 1)
        top = dg.pairs(1)[0]
        assert top.persistence > 0.5
        # brute-force check: at the representative scale, first Betti number
        # over F_47 must match the number of intervals alive there
        sub = cx.restrict(top.scale)
        q = 47
        d1 = [[0] * sub.n_simplices(1) for _ in range(sub.n_simplices(2))] \
            if sub.dimension >= 2 else []
        if sub.dimension >= 2:
            for j, s in enumerate(sub.simplices(2)):
                for idx, sign in sub.boundary_faces(s):
                    d1[j][idx] = sign % q
        d0 = [[0] * sub.n_vertices for _ in range(sub.n_simplices(1))]
        for j, s in enumerate(sub.simplices(1)):
            for idx, sign in sub.boundary_faces(s):
                d0[j][idx] = sign % q
        betti1 = (sub.n_simplices(1) - dense_rank_mod(d0, q)
                  - (dense_rank_mod(d1, q) if d1 else 0))
        alive = sum(1 for pr in dg.pairs(1)
                    if pr.birth <= top.scale < pr.death)
        assert betti1 == alive == 1

    def test_pairs_sorted_by_persistence(self):
        rng = np.random.default_rng(14)
        for _ in range(10):
            cx = random_complex(rng)
            dg = persistent_cohomology(cx, OddPrime(5), min(1, cx.dimension))
            for pairs in dg.pairs_by_dim.values():
                pers = [p.persistence for p in pairs]
                assert pers == sorted(pers, reverse=True)

    def test_reduction_is_deterministic(self):
        rng = np.random.default_rng(88)
        cx = random_complex(rng, n_max=12)
        md = min(cx.dimension, 1)
        a = persistent_cohomology(cx, OddPrime(7), md)
        b = persistent_cohomology(cx, OddPrime(7), md)
        for dim in a.pairs_by_dim:
            for pa, pb in zip(a.pairs(dim), b.pairs(dim)):
                assert (pa.birth, pa.death, pa.scale) == (pb.birth, pb.death, pb.scale)
                assert pa.representative_cocycle.entries == \
                    pb.representative_cocycle.entries

    def test_births_strictly_before_deaths(self):
        rng = np.random.default_rng(15)
        for _ in range(10):
            cx = random_complex(rng)
            dg = persistent_cohomology(cx, OddPrime(3), min(1, cx.dimension))
            for pr in dg.all_pairs():
                assert pr.birth < pr.death


class TestBarcodeOracle:
    def test_matches_homology_reduction(self):
        # independent boundary-matrix reduction must give identical barcodes
        rng = np.random.default_rng(42)
        for _ in range(80):
            cx = random_complex(rng, n_max=12)
            p = OddPrime(int(rng.choice([3, 5, 7, 13])))
            md = cx.dimension
            dg = persistent_cohomology(cx, p, md)
            co = sorted((d, pr.birth, pr.death)
                        for d in dg.pairs_by_dim for pr in dg.pairs(d))
            ho = sorted(persistent_homology_intervals(cx, p, md))
            assert co == ho

    def test_diagram_independent_of_prime_without_torsion(self):
        from circlift.snf import rank_integer, sparse_to_rows
        from circlift import ZZ

        rng = np.random.default_rng(6)
        trials = 0
        while trials < 15:
            cx = random_complex(rng, n_max=9)
            md = min(cx.dimension, 1)
            barcodes = []
            for p in (3, 5, 7):
                dg = persistent_cohomology(cx, OddPrime(p), md)
                barcodes.append(sorted((d, pr.birth, pr.death)
                                       for d in dg.pairs_by_dim
                                       for pr in dg.pairs(d)))
            assert barcodes[0] == barcodes[1] == barcodes[2]
            # essential counts must equal the integer Betti numbers
            ranks = {m: rank_integer(sparse_to_rows(cx.boundary_matrix(m, ZZ)))
                     for m in range(1, cx.dimension + 1)}
            for m in range(md + 1):
                betti = cx.n_simplices(m) - ranks.get(m, 0) - ranks.get(m + 1, 0)
                essential = sum(1 for d, birth, death in barcodes[0]
                                if d == m and math.isinf(death))
                assert essential == betti
            trials += 1


class TestRepresentatives:
    def test_cocycles_closed_at_their_scale(self):
        rng = np.random.default_rng(33)
        for _ in range(30):
            cx = random_complex(rng, n_max=10)
            p = OddPrime(7)
            dg = persistent_cohomology(cx, p, min(cx.dimension, 1))
            for pr in dg.pairs(1):
                sub = cx.restrict(pr.scale)
                assert apply_coboundary(pr.representative_cocycle.push_to(sub)).is_zero()

    def test_hexagon_cycle_representative(self, hexagon):
        p = OddPrime(7)
        dg = persistent_cohomology(hexagon, p, 1)
        pair = dg.pairs(1)[0]
        cyc = cycle_representative(hexagon, p, pair)
        assert len(cyc.entries) == 6
        assert apply_boundary(cyc).is_zero()
        pairing = kronecker_pairing(pair.representative_cocycle, cyc)
        assert pairing % 7 in (1, 6)

    def test_cycles_pair_nonzero_on_random_complexes(self):
        rng = np.random.default_rng(55)
        for _ in range(25):
            cx = random_complex(rng, n_max=10)
            p = OddPrime(7)
            dg = persistent_cohomology(cx, p, min(cx.dimension, 1))
            for pr in dg.pairs(1):
                cyc = cycle_representative(cx, p, pr)
                assert apply_boundary(cyc).is_zero()
                assert kronecker_pairing(pr.representative_cocycle, cyc) % 7 != 0

    def test_fabricated_pair_has_no_dual_cycle(self, filled_triangle, triangle_cocycle_f7):
        fake = PersistencePair(
            dimension=1, birth=0.5, death=2.0, scale=1.0,
            representative_cocycle=triangle_cocycle_f7,
            cocycle_below_death=triangle_cocycle_f7,
            birth_simplex=(0, 1), death_simplex=None)
        with pytest.raises(NoDualCycle):
            cycle_representative(filled_triangle, OddPrime(7), fake)


class TestDiagramExports:
    def test_json_and_csv(self, hexagon, tmp_path):
        dg = persistent_cohomology(hexagon, OddPrime(7), 1)
        jpath = tmp_path / "diagram.json"
        cpath = tmp_path / "diagram.csv"
        dg.write_json(jpath)
        dg.write_csv(cpath)
        import json as _json
        data = _json.loads(jpath.read_text())
        assert data["prime"] == 7
        essential = [p for p in data["pairs"] if p["death"] is None]
        assert any(p["dimension"] == 1 for p in essential)
        lines = cpath.read_text().splitlines()
        assert lines[0] == "dimension,birth,death"
        assert any(line.startswith("1,") and line.endswith("inf")
                   for line in lines[1:])


class TestSelectClass:
    def test_max_persistence(self, hexagon):
        dg = persistent_cohomology(hexagon, OddPrime(7), 1)
        assert select_class(dg, "max-persistence", dim=1) is dg.pairs(1)[0]

    def test_index_strategy(self):
        rng = np.random.default_rng(1)
        cx = None
        while cx is None:
            cand = random_complex(rng, n_max=12)
            dg = persistent_cohomology(cand, OddPrime(5), min(1, cand.dimension))
            if len(dg.pairs(0)) >= 2:
                cx, diagram = cand, dg
        assert select_class(diagram, "index:1", dim=0) is diagram.pairs(0)[1]

    def test_empty_diagram(self, filled_triangle):
        dg = persistent_cohomology(filled_triangle, OddPrime(7), 1)
        with pytest.raises(EmptyDiagram):
            select_class(dg, "max-persistence", dim=1)
