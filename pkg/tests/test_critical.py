"""Point sets, distinguishing densities, averages (size- and
rank-constrained) and the block-code bridge, all against brute force."""

import itertools
import math
import random
from fractions import Fraction

import pytest

from rankmetric.codes import Grassmannian, density_bruteforce
from rankmetric.critical import (
    PointSet,
    all_points,
    arc_plus_point_density,
    arc_plus_point_gap,
    arc_plus_point_pointset,
    avg_asymptotics,
    avg_density_exhaustive,
    avg_density_formula,
    avg_density_limit_qlarge,
    avg_density_rank_formula,
    ball_avg_limit,
    code_from_pointset,
    collinear_pointset,
    delta_bruteforce,
    distinguishes,
    hyperplane_density_collinear,
    hyperplane_density_independent,
    hyperplane_density_via_weights,
    independent_pointset,
    lambda_count,
    lambda_exhaustive,
    mds_arc_density,
    moment_curve_arc,
    rank_average_table,
    rank_ball_pointset,
    weight_distribution,
)
from rankmetric.errors import BudgetExceededError
from rankmetric.qcomb import binom, qbinom


# ------------------------------------------------------- basic objects

def test_pointset_canonicalization():
    P = PointSet(2, 3, [(2, 1), (1, 2)])
    # (2,1) ~ (1,2) projectively over GF(3): 2*(2,1) = (4,2) = (1,2)
    assert P.size == 1
    assert P.span_dim == 1
    with pytest.raises(ValueError):
        PointSet(2, 2, [])
    with pytest.raises(ValueError):
        PointSet(2, 2, [(0, 0)])


def test_all_points_count():
    assert len(all_points(3, 2)) == 7
    assert len(all_points(2, 3)) == 4
    assert len(all_points(4, 2)) == 15
    assert len(set(all_points(3, 3))) == 13


def test_distinguishes_basics():
    P_inside = PointSet(2, 2, [(1, 0)])
    assert not distinguishes(((1, 0),), P_inside)
    P_outside = PointSet(2, 2, [(0, 1), (1, 1)])
    assert distinguishes(((1, 0),), P_outside)
    with pytest.raises(ValueError):
        distinguishes(((1, 0, 0),), P_inside)


def test_delta_bruteforce_examples():
    # one point, hyperplanes of GF(2)^2: 2 of the 3 lines avoid it
    P = PointSet(2, 2, [(1, 1)])
    assert delta_bruteforce(P, 1) == Fraction(2, 3)
    # all points: nothing avoids them
    full = PointSet(2, 2, all_points(2, 2))
    assert delta_bruteforce(full, 1) == 0


@pytest.mark.parametrize("q", [2, 3])
def test_rank_ball_instance_matches_matrix_density(q):
    # the 2x2 rank-metric instance: avoiding the radius-1 ball equals
    # having min distance >= 2
    P = rank_ball_pointset(2, 2, 1, q)
    from rankmetric.qcomb import pointset_size

    assert P.size == pointset_size(2, 2, 1, q)
    for k in range(1, 5):
        lhs = delta_bruteforce(P, k)
        rhs = density_bruteforce(2, 2, k, 2, q).density
        assert lhs == rhs


# ------------------------------------------------------- averages

@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("N", [2, 3])
def test_avg_density_formula_equals_exhaustive(N, q):
    npoints = (q**N - 1) // (q - 1)
    for k in range(1, N):
        for ell in range(1, min(6, npoints) + 1):
            assert avg_density_formula(N, k, ell, q) == avg_density_exhaustive(
                N, k, ell, q
            )


def test_avg_density_examples():
    assert avg_density_formula(2, 1, 1, 2) == Fraction(2, 3)
    # oversize point sets cannot be avoided
    assert avg_density_formula(3, 2, 5, 2) == 0
    # the corrected worked example: every pair of points of PG(2,2) is
    # avoided by exactly 5 of the 7 lines
    assert avg_density_formula(3, 1, 2, 2) == Fraction(5, 7)


def test_avg_density_limit_instances():
    # hyperplanes vs point sets of size ~ q: limit 1/e, independent of q
    assert avg_asymptotics("q_large", N=3, k=2, s=1, q=5) == pytest.approx(
        math.exp(-1)
    )
    # the matrix-ball instance at n=d=2 for growing column count
    assert ball_avg_limit(2, 2, 3, "m_large") == pytest.approx(math.exp(-2))
    assert avg_asymptotics("m_large", n=2, d=2, q=3) == pytest.approx(math.exp(-2))
    assert ball_avg_limit(2, 2, 2, "q_large") == pytest.approx(math.exp(-1))
    with pytest.raises(ValueError):
        avg_asymptotics("sideways", n=2, d=2, q=2)


def test_avg_density_approaches_limit_monotonically():
    # hyperplane case ell = q in dimension 3: |avg - 1/e| strictly decreasing
    errors = []
    for q in (2, 3, 4, 5, 7, 8, 9):
        value = float(avg_density_formula(3, 2, q, q))
        errors.append(abs(value - math.exp(-1)))
    assert all(a > b for a, b in zip(errors, errors[1:]))


# ---------------------------------------------- rank-constrained averages

def test_lambda_examples():
    assert lambda_count(2, 0, 2, 2, 2) == 3
    assert lambda_count(2, 1, 2, 2, 2) == 1
    with pytest.raises(ValueError):
        lambda_count(2, 0, 2, 1, 2)
    with pytest.raises(ValueError):
        lambda_count(3, 0, 8, 2, 2)


def test_lambda_oracle_full_grid():
    for Nmax, q, ellmax in ((4, 2, 5), (3, 3, 4)):
        for N in range(2, Nmax + 1):
            for rho in range(2, N + 1):
                top = min(ellmax, (q**rho - 1) // (q - 1))
                for ell in range(rho, top + 1):
                    for s in range(N + 1):
                        assert lambda_count(N, s, ell, rho, q) == lambda_exhaustive(
                            N, s, ell, rho, q
                        ), (N, s, ell, rho, q)


def test_lambda_is_independent_of_the_fixed_subspace():
    # recount against a non-coordinate 2-dim subspace of GF(2)^4
    from rankmetric import linalg
    from rankmetric.codes import field_for_order

    fld = field_for_order(2)
    V = ((1, 0, 1, 0), (0, 1, 1, 1))
    reduced, pivots = linalg.rref(V, fld)
    points = all_points(4, 2)
    for ell, rho in ((3, 3), (4, 3), (4, 4), (5, 4)):
        direct = 0
        for combo in itertools.combinations(points, ell):
            if linalg.rank(combo, fld) != rho:
                continue
            if any(linalg.in_rowspan(reduced, pivots, p, fld) for p in combo):
                continue
            direct += 1
        assert direct == lambda_count(4, 2, ell, rho, 2)


def test_lambda_zero_s_sums_to_all_point_sets():
    for N, q in ((3, 2), (4, 2), (3, 3)):
        npoints = (q**N - 1) // (q - 1)
        for ell in range(2, 6):
            if ell > npoints:
                continue
            total = sum(
                lambda_count(N, 0, ell, rho, q)
                for rho in range(2, min(N, ell) + 1)
                if ell <= (q**rho - 1) // (q - 1)
            )
            assert total == binom(npoints, ell)


def test_rank_average_worked_table():
    # exact rationals; the printed reference values are truncations
    table = rank_average_table()
    floats = [float(v) for _, v in table]
    truncated = [math.floor(v * 10**4) / 10**4 for v in floats]
    assert truncated == [0.1352, 0.1333, 0.1295, 0.1211, 0.1003, 0.0]
    # the density decreases with the span dimension on this parameter set
    values = [v for _, v in table]
    assert all(a > b for a, b in zip(values, values[1:]))
    assert values[-1] == 0
    # one fewer point makes rank-5 sets avoidable
    assert avg_density_rank_formula(10, 6, 30, 5, 2) > 0


def test_rank_average_empty_family_rejected():
    with pytest.raises(ValueError):
        # rank-2 point sets of size 8 need (q^2-1)/(q-1) >= 8
        avg_density_rank_formula(4, 1, 8, 2, 2)


# ------------------------------------------------- structured families

def test_structured_hyperplane_families_against_bruteforce():
    for q, N in ((2, 3), (3, 3), (3, 4)):
        for i in range(2, min(q, 4) + 1):
            formula = hyperplane_density_collinear(N, i, q)
            brute = delta_bruteforce(collinear_pointset(N, i, q), N - 1)
            assert formula == brute, ("collinear", N, i, q)
        for i in range(2, N):
            formula = hyperplane_density_independent(N, i, q)
            brute = delta_bruteforce(independent_pointset(N, i, q), N - 1)
            assert formula == brute, ("independent", N, i, q)
    assert hyperplane_density_collinear(4, 4, 3) == 0  # the full line
    assert hyperplane_density_independent(3, 2, 2) == Fraction(2, 7)


def test_large_span_beats_small_span():
    # (q-1)^i q^(N-i) > (q+1-i)(q-1) q^(N-2) for i >= 3 on the tested grid
    for q in (2, 3, 4, 5, 7, 8, 9):
        for i in range(3, q + 2):
            N = max(i + 1, 4)
            lhs = (q - 1) ** i * q ** (N - i)
            rhs = (q + 1 - i) * (q - 1) * q ** (N - 2)
            assert lhs > rhs, (q, i)


# ------------------------------------------------- block-code bridge

def test_weight_distribution_and_bridge():
    P = independent_pointset(3, 3, 2)
    C = code_from_pointset(P)
    W = weight_distribution(C)
    assert sum(W) == 2**3
    assert W[3] == 1  # only the all-ones message hits full weight
    assert hyperplane_density_via_weights(P) == Fraction(1, 7)
    assert delta_bruteforce(P, 2) == Fraction(1, 7)
    # the full projective line supports no avoiding hyperplane
    full_line = PointSet(2, 2, all_points(2, 2))
    Cf = code_from_pointset(full_line)
    assert weight_distribution(Cf)[full_line.size] == 0


def test_code_from_pointset_requires_spanning():
    with pytest.raises(ValueError):
        code_from_pointset(PointSet(3, 2, [(1, 0, 0)]))


def test_cw_bridge_on_seeded_point_sets():
    rng = random.Random(0)
    for _ in range(20):
        N = rng.choice([3, 4])
        q = rng.choice([2, 3])
        pts = all_points(N, q)
        while True:
            ell = rng.randint(N, min(len(pts), 8))
            P = PointSet(N, q, rng.sample(pts, ell))
            if P.span_dim == N:
                break
        assert delta_bruteforce(P, N - 1) == hyperplane_density_via_weights(P)


# ------------------------------------------------- arcs

def test_mds_arc_density_examples():
    assert mds_arc_density(2, 3, 2) == 0
    assert mds_arc_density(2, 2, 3) == Fraction(1, 2)


@pytest.mark.parametrize("N,ell,q", [(2, 2, 3), (2, 3, 3), (3, 3, 3), (3, 4, 3), (2, 3, 2), (3, 4, 4), (4, 5, 4)])
def test_mds_arc_density_matches_moment_curve_bruteforce(N, ell, q):
    P = moment_curve_arc(N, ell, q)
    assert P.size == ell and P.span_dim == N
    # every N points of the arc span (Vandermonde): verify directly
    from rankmetric import linalg
    from rankmetric.codes import field_for_order

    fld = field_for_order(q)
    for combo in itertools.combinations(P.sorted_points(), N):
        assert linalg.rank(combo, fld) == N
    assert delta_bruteforce(P, N - 1) == mds_arc_density(N, ell, q)


def test_mds_arc_limit_value():
    # at ell = q+1, N = 4, large q the density approaches 1 - 1 + 1/2 - 1/6
    target = sum((-1) ** j / math.factorial(j) for j in range(4))
    value = float(mds_arc_density(4, 102, 101))
    assert abs(value - target) <= 0.05 * target


def test_arc_plus_point_identity_and_sign():
    for q in (7, 8, 9):
        for N in range(2, 7):
            for ell in range(max(2, N), q):
                gap = arc_plus_point_gap(N, ell, q)
                assert arc_plus_point_density(N, ell, q) - mds_arc_density(N, ell, q) == gap
                assert (gap > 0) == (N % 2 == 0 and ell >= N + 1)
                if N % 2 == 1:
                    assert gap <= 0
    # explicit positive case: N=4, ell=5: gap = (q-1)/(q^4-1) * C(3,3)
    for q in (7, 8, 9):
        assert arc_plus_point_gap(4, 5, q) == Fraction(q - 1, q**4 - 1)


def test_arc_plus_point_construction_matches_formula():
    P = arc_plus_point_pointset(3, 4, 7)
    assert delta_bruteforce(P, 2) == arc_plus_point_density(3, 4, 7)
    P2 = arc_plus_point_pointset(4, 5, 7)
    assert delta_bruteforce(P2, 3) == arc_plus_point_density(4, 5, 7)


# ------------------------------------------------- budget behaviour

def test_budget_errors():
    P = PointSet(2, 2, [(1, 1)])
    with pytest.raises(BudgetExceededError):
        delta_bruteforce(P, 1, budget=1)
    with pytest.raises(BudgetExceededError):
        lambda_exhaustive(4, 2, 5, 4, 2, budget=10)
