from math import comb

import pytest

from bergeham.berge import BergeDecider
from bergeham.canonical import canonical_form
from bergeham.enumeration import (
    BudgetExceeded,
    LevelSpec,
    colex_rank,
    colex_unrank,
    enumerate_level,
    hypergraph_at,
    iter_level_masks,
    level_size,
    monotone_reduction_plan,
    next_same_popcount,
    run_chunks,
)
from bergeham.hypergraph import (
    clique_plus_pendant,
    labeled_pendant_copies,
    universe_masks,
)


def test_level_sizes():
    assert level_size(LevelSpec(6, 4, 6)) == comb(15, 6) == 5005
    assert level_size(LevelSpec(8, 6, 8)) == comb(28, 8) == 3108105
    base = clique_plus_pendant(6, 3)
    assert level_size(LevelSpec(6, 3, 12, "supergraphs", base=base)) == comb(9, 1) == 9
    assert level_size(LevelSpec(5, 3, 0)) == 1


def test_spec_validation():
    with pytest.raises(ValueError):
        LevelSpec(5, 3, 11)  # m > C(5,3)
    with pytest.raises(ValueError):
        LevelSpec(5, 3, 5, "weird")
    with pytest.raises(ValueError):
        LevelSpec(5, 3, 5, "supergraphs")  # missing base
    with pytest.raises(ValueError):
        LevelSpec(5, 3, 3, "supergraphs", base=clique_plus_pendant(5, 3))  # base bigger
    with pytest.raises(ValueError):
        LevelSpec(6, 3, 5, base=clique_plus_pendant(6, 3))  # base without mode


def test_colex_rank_unrank_round_trip():
    for m in (1, 2, 4):
        mask = colex_unrank(0, m)
        for t in range(comb(9, m)):
            assert colex_rank(mask) == t
            assert colex_unrank(t, m) == mask
            if t + 1 < comb(9, m):
                nxt = next_same_popcount(mask)
                assert nxt > mask and nxt.bit_count() == m
                mask = nxt


def test_chunks_partition_the_level_exactly():
    spec = LevelSpec(5, 3, 5)
    whole = list(iter_level_masks(spec))
    assert len(whole) == 252 and len(set(whole)) == 252
    pieces = []
    for lo in range(0, 252, 37):
        pieces.extend(iter_level_masks(spec, lo, min(lo + 37, 252)))
    assert pieces == whole
    # checksum by canonical codes on a small level
    codes_whole = sorted(canonical_form(hypergraph_at(spec, ch)).compact() for _, ch in whole)
    codes_pieces = sorted(canonical_form(hypergraph_at(spec, ch)).compact() for _, ch in pieces)
    assert codes_whole == codes_pieces


def test_sum_of_edges_identity():
    spec = LevelSpec(6, 4, 3)
    res = enumerate_level(spec, lambda h: h.m)
    assert res.visited == level_size(spec)
    assert sum(v for _, v in res.hits) == 3 * level_size(spec)


def _first_edge_is_even(h):
    return 1 if h.edges and not (h.edges[0] & 1) else None


def test_aggregate_is_identical_for_any_worker_count():
    spec = LevelSpec(6, 3, 4)
    runs = [
        enumerate_level(spec, _first_edge_is_even, jobs=j, chunk_size=301)
        for j in (1, 2, 8)
    ]
    assert runs[0].hits == runs[1].hits == runs[2].hits
    assert runs[0].visited == runs[1].visited == runs[2].visited


def _kpe_code_marker(h):
    return 1 if canonical_form(h) == _KPE_CODE else None


_KPE_CODE = canonical_form(clique_plus_pendant(5, 3))


def test_canonical_only_visits_one_pendant_representative():
    spec = LevelSpec(5, 3, 5, "canonical_only")
    res = enumerate_level(spec, _kpe_code_marker)
    assert res.scanned == 252
    assert len(res.hits) == 1


def test_supergraph_mode_enumerates_exactly_the_supergraphs():
    base = clique_plus_pendant(6, 3)
    spec = LevelSpec(6, 3, 12, "supergraphs", base=base)
    seen = list(iter_level_masks(spec))
    assert len(seen) == 9
    for _, ch in seen:
        h = hypergraph_at(spec, ch)
        assert set(base.edges) <= set(h.edges) and h.m == 12


def test_nonhamiltonian_count_at_7_5_7():
    # the non-Hamiltonian graphs at this level are exactly the labeled
    # pendant-clique copies: 7 * C(6, 4) = 105 of them
    u = universe_masks(7, 5)
    spec = LevelSpec(7, 5, 7)

    def classify(lo, hi, acc=None):
        d = BergeDecider(7, u)
        neg = 0
        for _, ch in iter_level_masks(spec, lo, hi):
            if not d.cycle_exists(ch):
                neg += 1
        return neg

    total = level_size(spec)
    neg = classify(0, total)
    assert total == comb(21, 7) == 116280
    assert neg == 105 == len(labeled_pendant_copies(7, 5))


def test_budget_exceeded_reports_exact_size():
    spec = LevelSpec(8, 4, 35)
    with pytest.raises(BudgetExceeded) as exc:
        enumerate_level(spec, lambda h: None, budget=10 ** 6)
    assert exc.value.size == comb(comb(8, 4), 35)


def _first_rank(spec, lo, hi):
    return lo


def test_run_chunks_merges_in_rank_order():
    spec = LevelSpec(5, 3, 2)
    for jobs in (1, 3):
        out = run_chunks(spec, _first_rank, jobs=jobs, chunk_size=10)
        assert out == sorted(out)


def test_reduction_plan_shapes():
    p = monotone_reduction_plan(6, 3)
    assert p.cycle_level.m == 11 and level_size(p.cycle_level) == 167960
    assert len(p.cycle_supergraph_levels) == 60
    assert all(s.m == 12 for s in p.cycle_supergraph_levels)
    assert p.path_level.m == 10

    p = monotone_reduction_plan(7, 5)
    assert p.cycle_level.m == 7 and level_size(p.cycle_level) == comb(21, 7) == 116280
    assert len(p.cycle_supergraph_levels) == 105

    p = monotone_reduction_plan(5, 3)
    assert p.cycle_level.m == 5 and level_size(p.cycle_level) == 252
    assert p.path_level.m == 4
    with pytest.raises(ValueError):
        monotone_reduction_plan(5, 4)


def test_reduction_soundness_by_brute_force_5_3():
    # sweep every level above the threshold: non-Hamiltonian graphs appear
    # only at m = 5 and are exactly the 30 labeled pendant copies
    u = universe_masks(5, 3)
    d = BergeDecider(5, u)
    pendant_edge_sets = {c.edges for c in labeled_pendant_copies(5, 3)}
    for m in range(5, 11):
        spec = LevelSpec(5, 3, m)
        bad = []
        for _, ch in iter_level_masks(spec):
            if not d.cycle_exists(ch):
                bad.append(hypergraph_at(spec, ch).edges)
        if m == 5:
            assert len(bad) == 30 and set(bad) == pendant_edge_sets
        else:
            assert not bad, m


def test_reduction_soundness_by_brute_force_6_4():
    u = universe_masks(6, 4)
    d = BergeDecider(6, u)
    t = comb(5, 4)
    for m in range(t + 1, comb(6, 4) + 1):
        spec = LevelSpec(6, 4, m)
        bad = sum(0 if d.cycle_exists(ch) else 1 for _, ch in iter_level_masks(spec))
        if m == t + 1:
            assert bad == 6 * comb(5, 3) == 60
        else:
            assert bad == 0, m
