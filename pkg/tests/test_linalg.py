"""Internal exact linear algebra: canonical forms and the GF(2) kernels."""

from hypothesis import given, settings
from hypothesis import strategies as st

from rankmetric import linalg
from rankmetric.codes import field_for_order


@st.composite
def small_matrix(draw):
    q = draw(st.sampled_from([2, 3, 4]))
    rows = draw(st.integers(1, 4))
    cols = draw(st.integers(1, 5))
    data = [
        tuple(draw(st.integers(0, q - 1)) for _ in range(cols)) for _ in range(rows)
    ]
    return q, data


@given(small_matrix())
@settings(max_examples=150, deadline=None)
def test_rref_is_canonical_and_preserves_rowspan(mq):
    q, rows = mq
    fld = field_for_order(q)
    reduced, pivots = linalg.rref(rows, fld)
    # idempotent
    again, pivots2 = linalg.rref(reduced, fld)
    assert again == reduced and pivots2 == pivots
    # every original row lies in the reduced span and vice versa
    for r in rows:
        assert linalg.in_rowspan(reduced, pivots, r, fld)
    if reduced:
        full, fp = linalg.rref(list(rows) + list(reduced), fld)
        assert full == reduced
    # pivot structure: strictly increasing, unit leading entries, cleared cols
    assert list(pivots) == sorted(set(pivots))
    for row, p in zip(reduced, pivots):
        assert row[p] == 1
        assert all(other[p] == 0 for other in reduced if other is not row)


@given(small_matrix())
@settings(max_examples=150, deadline=None)
def test_rank_agrees_with_bit_kernel_on_gf2(mq):
    q, rows = mq
    if q != 2:
        return
    packed = [linalg.pack_row(r) for r in rows]
    assert linalg.rank_bits(packed) == linalg.rank(rows, field_for_order(2))


def test_gf2_rank_table_agrees_with_elimination():
    table = linalg.gf2_rank_table(2, 3)
    fld = field_for_order(2)
    for code in range(1 << 6):
        rows = [tuple((code >> (3 * i + j)) & 1 for j in range(3)) for i in range(2)]
        assert table[code] == linalg.rank(rows, fld)


def test_nullspace_orthogonal_and_complementary():
    fld = field_for_order(3)
    rows = [(1, 2, 0, 1), (0, 1, 1, 1)]
    null = linalg.nullspace(rows, fld)
    assert len(null) == 2  # 4 - rank
    assert linalg.rank(null, fld) == 2
    for v in null:
        assert linalg.mat_vec(rows, v, fld) == (0, 0)


def test_mat_inv_round_trip():
    fld = field_for_order(3)
    m = ((1, 2), (1, 1))
    inv = linalg.mat_inv(m, fld)
    assert linalg.mat_mul(m, inv, fld) == linalg.identity(2)
    singular = ((1, 2), (2, 1))
    assert linalg.mat_inv(singular, fld) is None


def test_projective_reps_count():
    reps = list(linalg.projective_reps(3, 3))
    assert len(reps) == 13
    assert len(set(reps)) == 13
    for r in reps:
        first = next(x for x in r if x)
        assert first == 1
