import random
from fractions import Fraction
from math import comb

import numpy as np
import pytest

from bergeham.bounds import bai_lu_bound
from bergeham.hypergraph import (
    Hypergraph,
    clique_plus_isolated,
    clique_plus_pendant,
    complete,
    universe_masks,
)
from bergeham.spectral import (
    CERTIFIED_ABOVE,
    CERTIFIED_BELOW_OR_EQUAL,
    UNDECIDED,
    SpectralEstimate,
    evaluate_form,
    exact_form_ratio,
    exceeds_threshold,
    gradient_form,
    spectral_radius,
    threshold_verdict,
)
from conftest import random_hypergraph


def test_form_on_uniform_vector_of_k43():
    h = complete(4, 3)
    x = np.full(4, 4 ** (-1 / 3))
    assert abs(evaluate_form(h, x) - 3.0) < 1e-12  # = lambda of K_4^3


def test_form_zero_vector_and_single_edge():
    h = Hypergraph(5, 3, [{0, 1, 2}])
    assert evaluate_form(h, np.zeros(5)) == 0.0
    x = np.zeros(5)
    x[:3] = 3 ** (-1 / 3)
    assert abs(evaluate_form(h, x) - 1.0) < 1e-12


def test_form_dimension_mismatch():
    with pytest.raises(ValueError):
        evaluate_form(complete(4, 3), np.ones(5))
    with pytest.raises(ValueError):
        gradient_form(complete(4, 3), np.ones(5))


def test_gradient_matches_finite_differences():
    rng = np.random.default_rng(1)
    h = 1e-5
    for _ in range(15):
        n = int(rng.integers(4, 9))
        r = int(rng.integers(3, n)) if n > 3 else 3
        u = universe_masks(n, r)
        m = int(rng.integers(1, len(u) + 1))
        hh = Hypergraph(n, r, [int(e) for e in rng.choice(u, size=m, replace=False)])
        x = rng.uniform(0.2, 1.5, size=n)
        g = gradient_form(hh, x)
        fd = np.zeros(n)
        for i in range(n):
            xp, xm = x.copy(), x.copy()
            xp[i] += h
            xm[i] -= h
            fd[i] = (evaluate_form(hh, xp) - evaluate_form(hh, xm)) / (2 * h)
        assert np.allclose(g, fd, rtol=1e-6, atol=1e-9)


def test_gradient_isolated_vertex_is_zero():
    h = Hypergraph(5, 3, [{0, 1, 2}])
    g = gradient_form(h, np.ones(5))
    assert g[3] == 0.0 and g[4] == 0.0 and g[0] == 3.0


def test_euler_identity():
    rng = np.random.default_rng(2)
    h = complete(6, 3)
    for _ in range(10):
        x = rng.uniform(0.1, 2.0, size=6)
        lhs = float(x @ gradient_form(h, x))
        rhs = h.r * evaluate_form(h, x)
        assert abs(lhs - rhs) <= 1e-9 * max(1.0, abs(rhs))


@pytest.mark.parametrize("k,r", [(4, 3), (5, 3), (6, 3), (6, 4), (7, 5)])
def test_complete_graph_spectral_radius(k, r):
    est = spectral_radius(complete(k, r), tol=1e-10)
    target = comb(k - 1, r - 1)
    assert est.converged
    assert est.lower <= target + 1e-8 and target - 1e-8 <= est.upper
    assert est.upper - est.lower <= 1e-8


def test_isolated_vertex_is_irrelevant():
    est = spectral_radius(clique_plus_isolated(6, 3), tol=1e-10)
    assert abs(est.lower - 6) <= 1e-8 and abs(est.upper - 6) <= 1e-8
    assert est.vector[5] == 0.0


def test_single_edge_lambda_is_one():
    est = spectral_radius(Hypergraph(5, 3, [{0, 1, 2}]), tol=1e-10)
    assert abs(est.lower - 1.0) <= 1e-9 and abs(est.upper - 1.0) <= 1e-9


def test_empty_graph():
    est = spectral_radius(Hypergraph(5, 3, []), tol=1e-9)
    assert est.lower == est.upper == 0.0 and est.converged


def test_lower_is_exactly_the_form_at_the_vector():
    rng = random.Random(3)
    for _ in range(30):
        h = random_hypergraph(rng, rng.randint(5, 8), 3)
        est = spectral_radius(h, tol=1e-9, max_iter=5000)
        assert est.lower == evaluate_form(h, est.vector)
        assert est.upper >= est.lower


def test_unconverged_bracket_is_still_valid():
    h = clique_plus_pendant(7, 3)
    est = spectral_radius(h, tol=1e-12, max_iter=2)
    assert not est.converged
    tight = spectral_radius(h, tol=1e-11)
    assert est.lower <= tight.lower <= tight.upper <= est.upper


def test_exceeds_threshold_trio():
    assert exceeds_threshold(clique_plus_pendant(6, 3), 6) == CERTIFIED_ABOVE
    assert exceeds_threshold(clique_plus_isolated(6, 3), 6) == CERTIFIED_BELOW_OR_EQUAL
    assert exceeds_threshold(complete(6, 3), comb(4, 2)) == CERTIFIED_ABOVE


def test_exact_equality_case_is_decided_exactly():
    # lambda(K_5^3) = 6 exactly; the exact rational lower bound at the uniform
    # iterate equals 6, so any threshold below 6 is certified strictly exceeded
    h = complete(5, 3)
    est = spectral_radius(h, tol=1e-10)
    assert exact_form_ratio(h, est.vector) == Fraction(6)
    assert threshold_verdict(h, est, 6 - 1e-9, tol=1e-12) == CERTIFIED_ABOVE
    assert threshold_verdict(h, est, 6, tol=1e-9) == CERTIFIED_BELOW_OR_EQUAL


def test_wide_bracket_is_undecided():
    h = clique_plus_pendant(7, 3)
    est = spectral_radius(h, tol=1e-12, max_iter=1)
    mid = (est.lower + est.upper) / 2
    if est.upper - est.lower > 1e-6:
        assert threshold_verdict(h, est, mid, tol=1e-9) == UNDECIDED


def test_bai_lu_bound_holds_on_random_graphs():
    rng = random.Random(4)
    for _ in range(300):
        n = rng.randint(5, 8)
        r = rng.randint(3, n - 2)
        h = random_hypergraph(rng, n, r)
        est = spectral_radius(h, tol=1e-10, max_iter=20000)
        assert est.upper <= bai_lu_bound(r, h.m) + 1e-9


def test_adding_an_edge_never_lowers_the_old_bound():
    rng = random.Random(5)
    for _ in range(40):
        n = rng.randint(5, 7)
        r = rng.randint(3, n - 2)
        u = universe_masks(n, r)
        m = rng.randint(1, len(u) - 1)
        h = Hypergraph(n, r, rng.sample(u, m))
        est = spectral_radius(h, tol=1e-9)
        extra = rng.choice([e for e in u if e not in set(h.edges)])
        assert evaluate_form(h.add_edge(extra), est.vector) >= est.lower - 1e-12


def test_estimate_is_a_dataclass_with_vector():
    est = spectral_radius(complete(4, 3))
    assert isinstance(est, SpectralEstimate)
    assert est.vector.shape == (4,)
    assert abs(float((est.vector ** 3).sum()) - 1.0) < 1e-9
