"""Matrix codes, Grassmannian enumeration, brute-force densities and the
closed counting formulas, each checked against an independent path."""

import itertools
import math
from fractions import Fraction

import pytest

from rankmetric import linalg
from rankmetric.codes import (
    Grassmannian,
    MatrixCode,
    asymptotic_constants,
    density_3x3_formula,
    density_bruteforce,
    enumerate_subspaces,
    field_for_order,
    spectrum_free_identity_check,
    kantor_lowerbound,
    mrd_lowerbound_formula,
    prime_factor_count,
    spectrum_free_count,
)
from rankmetric.errors import BudgetExceededError
from rankmetric.fields import make_field
from rankmetric.qcomb import gl_order, qbinom

F2 = make_field(2)
F3 = make_field(3)


# ---------------------------------------------------------------- codes

def companion_code_f4_model():
    """span{I, companion matrix of x^2+x+1} inside GF(2)^(2x2)."""
    ident = ((1, 0), (0, 1))
    comp = ((0, 1), (1, 1))
    return MatrixCode.from_matrices(F2, [ident, comp])


def test_matrix_code_canonical_and_dim():
    C = companion_code_f4_model()
    assert C.dim == 2
    # same code from a different spanning set
    other = MatrixCode.from_matrices(F2, [((0, 1), (1, 1)), ((1, 1), (1, 0))])
    assert C == other
    with pytest.raises(ValueError):
        MatrixCode.from_matrices(F2, [((0, 0), (0, 0))])


def test_min_distance_examples():
    ident = MatrixCode.from_matrices(F3, [((1, 0), (0, 1))])
    assert ident.min_distance() == 2
    full = MatrixCode(F2, 2, 2, [tuple(1 if i == j else 0 for j in range(4)) for i in range(4)])
    assert full.min_distance() == 1
    assert companion_code_f4_model().min_distance() == 2


def test_min_distance_generic_matches_packed():
    # every 2-dim code in GF(2)^(2x2): packed and generic kernels agree
    g = Grassmannian(4, 2, 2)
    for rows in g.iter_range():
        C = MatrixCode(F2, 2, 2, rows)
        generic = min(
            linalg.rank([v[0:2], v[2:4]], F2)
            for v in linalg.span_elements(C.basis, F2)
            if any(v)
        )
        assert C.min_distance() == generic


def test_is_mrd():
    assert companion_code_f4_model().is_mrd()  # k=2=m(n-d+1), d=2
    full = MatrixCode(F2, 2, 2, [tuple(1 if i == j else 0 for j in range(4)) for i in range(4)])
    assert full.is_mrd()  # d=1, k=4=m*n
    singular = MatrixCode.from_matrices(F2, [((1, 0), (0, 0))])
    assert singular.min_distance() == 1
    assert not singular.is_mrd()  # k=1 < m(n-d+1)=4


# ------------------------------------------------------- enumeration

@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("N", [1, 2, 3, 4, 5, 6])
def test_stream_length_is_qbinom(N, q):
    for k in range(N + 1):
        assert sum(1 for _ in enumerate_subspaces(N, k, q)) == qbinom(N, k, q)


def test_stream_yields_distinct_rref_bases():
    seen = set()
    for rows in enumerate_subspaces(4, 2, 3):
        assert rows not in seen
        seen.add(rows)
        # rows are in reduced echelon form: leading ones, cleared pivot columns
        pivots = [next(j for j, x in enumerate(r) if x) for r in rows]
        assert pivots == sorted(pivots)
        for r, p in zip(rows, pivots):
            assert r[p] == 1
            assert all(other[p] == 0 for other in rows if other is not r)
    assert len(seen) == qbinom(4, 2, 3)


def test_chunked_enumeration_is_a_partition():
    g = Grassmannian(6, 3, 2)
    whole = list(g.iter_range())
    for parts in (2, 3, 8):
        bounds = [g.total * i // parts for i in range(parts + 1)]
        glued = []
        for lo, hi in zip(bounds, bounds[1:]):
            glued.extend(g.iter_range(lo, hi))
        assert glued == whole


def test_rows_at_random_access():
    g = Grassmannian(5, 2, 3)
    stream = list(g.iter_range())
    for idx in (0, 1, 7, 100, g.total - 1):
        assert g.rows_at(idx) == stream[idx]


def test_streaming_count_9_3_2():
    g = Grassmannian(9, 3, 2)
    assert g.total == 788035
    assert sum(1 for _ in g.iter_packed_range()) == 788035


def test_enumeration_budget():
    with pytest.raises(BudgetExceededError):
        list(enumerate_subspaces(9, 3, 2, budget=1000))


# ------------------------------------------------------- densities

def test_density_2x2_value_and_monotonicity():
    r = density_bruteforce(2, 2, 2, 2, 2)
    assert (r.count, r.total) == (2, 35)
    assert r.density == Fraction(2, 35)
    # trivially all codes have distance >= 1
    assert density_bruteforce(2, 2, 2, 1, 2).density == 1
    # monotone non-increasing in d
    for k in (1, 2, 3):
        densities = [density_bruteforce(2, 2, k, d, 2).density for d in (1, 2)]
        assert densities[0] >= densities[1]


def test_density_parallel_chunking_identical():
    for jobs in (1, 2, 5):
        assert density_bruteforce(2, 3, 3, 2, 2, jobs=jobs).count == 48


def test_density_generic_path_q3():
    r = density_bruteforce(2, 2, 2, 2, 3)
    assert r.count == spectrum_free_count(2, 3)


def test_density_result_json():
    r = density_bruteforce(2, 2, 2, 2, 2)
    d = r.to_json()
    assert d["density_num"] == "2" and d["density_den"] == "35"
    assert "elapsed_ms" not in d
    assert "elapsed_ms" in r.to_json(include_timing=True)


def test_density_budget_error():
    with pytest.raises(BudgetExceededError):
        density_bruteforce(3, 3, 3, 3, 2, budget=10)


# ------------------------------------------------- spectrum-free counts

def test_spectrum_free_values():
    assert spectrum_free_count(1, 2) == 0
    assert spectrum_free_count(1, 3) == 0
    assert spectrum_free_count(2, 2) == 2
    assert spectrum_free_count(2, 3) == 18
    assert spectrum_free_count(3, 2) == 48


def test_spectrum_free_oracle_q3():
    # independent oracle: direct eigenvalue test via determinant over GF(3)
    fld = field_for_order(3)
    count = 0
    for flat in itertools.product(range(3), repeat=4):
        ok = True
        for lam in range(3):
            m = [
                [fld.sub(flat[0], lam), flat[1]],
                [flat[2], fld.sub(flat[3], lam)],
            ]
            det = fld.sub(fld.mul(m[0][0], m[1][1]), fld.mul(m[0][1], m[1][0]))
            if det == 0:
                ok = False
                break
        if ok:
            count += 1
    assert count == spectrum_free_count(2, 3) == 18


@pytest.mark.parametrize("m,q", [(2, 2), (2, 3), (3, 2)])
def test_spectrum_free_identity(m, q):
    assert spectrum_free_identity_check(m, q)


# ------------------------------------------------- closed formulas

def test_density_3x3_formula_values():
    assert density_3x3_formula(2) == Fraction(192, 788035)
    # agrees with the counting lower bound at n = 3 for several q
    for q in (2, 3, 4, 5):
        count, density = mrd_lowerbound_formula(3, q)
        assert density_3x3_formula(q) == density
        assert density_3x3_formula(q) * qbinom(9, 3, q) == count


def test_density_3x3_asymptotic_constant():
    v = float(density_3x3_formula(101)) * 101**3
    assert abs(v - 1 / 3) <= 0.05 * (1 / 3)


def test_mrd_lowerbound_values():
    assert mrd_lowerbound_formula(3, 2)[0] == 192
    # n = 2: the bracket collapses to 1
    for q in (2, 3, 4):
        count, _ = mrd_lowerbound_formula(2, q)
        assert count == gl_order(2, q) ** 2 // (2 * (q**2 - 1) ** 2)
    # the bound is a lower bound on the brute-force count where computable
    assert mrd_lowerbound_formula(2, 2)[0] <= density_bruteforce(2, 2, 2, 2, 2).count


def test_prime_factor_count():
    assert prime_factor_count(4) == 2
    assert prime_factor_count(12) == 3
    assert prime_factor_count(7) == 1


def test_kantor_lowerbound():
    assert kantor_lowerbound(4) == gl_order(4, 2) ** 2 * 16 // 8  # gamma(4) = 2
    assert kantor_lowerbound(6) == gl_order(6, 2) ** 2 * 2**6 // 12  # gamma(6) = 2
    assert (
        kantor_lowerbound(8)
        == gl_order(8, 2) ** 2 * 2**8 * (2**8 - 1) // 16  # gamma(8) = 3
    )
    with pytest.raises(ValueError):
        kantor_lowerbound(9)
    with pytest.raises(ValueError):
        kantor_lowerbound(5)


def test_asymptotic_constants():
    out = asymptotic_constants(3, 3, q=2, eps=1e-9)
    lower = out["lower_q"]
    assert lower.constant == Fraction(1, 3)
    assert lower.exponent == -(3**3) + 3 * 9 - 3
    assert out["upper_q"].exponent == -(3 - 1) * (3 - 3 + 1) + 1 == -1
    # both m->inf branches present with certified pi truncation
    out2 = asymptotic_constants(2, 2, q=2, eps=1e-9)
    assert out2["pi_q_bound"] < 1e-9
    b1, b2 = out2["upper_m_branch1"], out2["upper_m_branch2"]
    assert abs(b1 - 1 / 3.4627466 ** 3) < 1e-4
    assert abs(b2 - 1 / (3 * 2.4627466 + 1)) < 1e-4
    assert out2["upper_m"] == min(b1, b2)


def test_asymptotic_upper_exponent_example():
    out = asymptotic_constants(3, 3)
    assert float(out["upper_q"].evaluate(q=2)) == 0.5
