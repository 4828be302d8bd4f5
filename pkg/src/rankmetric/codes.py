"""Rank-metric codes as GF(q)-subspaces of n x m matrices.

Canonical form: a code is the row space of the RREF of its flattened
(row-major) basis vectors, so equal codes compare equal.  The Grassmannian
enumeration is indexed and deterministically ordered (pivot patterns in
lexicographic order, free entries counting in base q), which gives exact
chunked splitting for parallel sweeps: chunk [lo, hi) always yields the
same subspaces in the same order.

GF(2) sweeps run on bit-packed rows with a precomputed rank table; packing
never appears in any public signature.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from . import linalg
from .errors import charge, resolve_budget
from .fields import FiniteField, make_field
from .qcomb import AsymptoticEstimate, gl_order, pi_q_limit, qbinom


@lru_cache(maxsize=None)
def field_for_order(q: int) -> FiniteField:
    """GF(q) for a prime power q given as a plain integer."""
    n, p = q, None
    for f in range(2, q + 1):
        if n % f == 0:
            p = f
            break
    h = 0
    while n % p == 0:
        n //= p
        h += 1
    if n != 1:
        raise ValueError(f"q = {q} is not a prime power")
    return make_field(p, h)


# ----------------------------------------------------------------------
# Grassmannian enumeration
# ----------------------------------------------------------------------

class Grassmannian:
    """Indexed enumeration of the k-dim subspaces of GF(q)^N in RREF form."""

    def __init__(self, N: int, k: int, q: int):
        if not 0 <= k <= N:
            raise ValueError(f"need 0 <= k <= N, got k={k}, N={N}")
        self.N = N
        self.k = k
        self.q = q
        self.field = field_for_order(q)
        patterns = []
        offset = 0
        for pivots in itertools.combinations(range(N), k):
            pivot_set = set(pivots)
            free = tuple(
                (r, j)
                for r in range(k)
                for j in range(pivots[r] + 1, N)
                if j not in pivot_set
            )
            count = q ** len(free)
            patterns.append((pivots, free, offset))
            offset += count
        self._patterns = patterns
        self.total = offset
        assert self.total == qbinom(N, k, q)

    def _locate(self, index: int) -> int:
        lo, hi = 0, len(self._patterns) - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self._patterns[mid][2] <= index:
                lo = mid
            else:
                hi = mid - 1
        return lo

    def rows_at(self, index: int) -> linalg.Matrix:
        if not 0 <= index < self.total:
            raise IndexError(index)
        pi = self._locate(index)
        pivots, free, offset = self._patterns[pi]
        return next(self._emit(pivots, free, index - offset, index - offset + 1))

    def _emit(
        self, pivots: Sequence[int], free: Sequence[tuple[int, int]], lo: int, hi: int
    ) -> Iterator[linalg.Matrix]:
        q, k, N = self.q, self.k, self.N
        template = [[0] * N for _ in range(k)]
        for r, c in enumerate(pivots):
            template[r][c] = 1
        for fill in range(lo, hi):
            rows = [row[:] for row in template]
            e = fill
            for r, j in free:
                rows[r][j] = e % q
                e //= q
            yield tuple(tuple(row) for row in rows)

    def _emit_packed(
        self, pivots: Sequence[int], free: Sequence[tuple[int, int]], lo: int, hi: int
    ) -> Iterator[tuple[int, ...]]:
        template = [1 << c for c in pivots]
        masks = [(r, 1 << j) for r, j in free]
        for fill in range(lo, hi):
            rows = template[:]
            e = fill
            for r, mask in masks:
                if e & 1:
                    rows[r] |= mask
                e >>= 1
            yield tuple(rows)

    def iter_range(self, lo: int = 0, hi: int | None = None) -> Iterator[linalg.Matrix]:
        """Subspaces lo..hi-1 in canonical order, as tuples of row tuples."""
        hi = self.total if hi is None else hi
        for pivots, free, offset, a, b in self._pattern_slices(lo, hi):
            yield from self._emit(pivots, free, a, b)

    def iter_packed_range(self, lo: int = 0, hi: int | None = None) -> Iterator[tuple[int, ...]]:
        """q = 2 only: subspaces as tuples of bit-packed rows (bit j = col j)."""
        if self.q != 2:
            raise ValueError("packed enumeration is a GF(2) internal")
        hi = self.total if hi is None else hi
        for pivots, free, offset, a, b in self._pattern_slices(lo, hi):
            yield from self._emit_packed(pivots, free, a, b)

    def _pattern_slices(self, lo: int, hi: int):
        if not 0 <= lo <= hi <= self.total:
            raise IndexError((lo, hi))
        for pivots, free, offset in self._patterns:
            count = self.q ** len(free)
            a = max(lo, offset) - offset
            b = min(hi, offset + count) - offset
            if a < b:
                yield pivots, free, offset, a, b


def enumerate_subspaces(
    N: int,
    k: int,
    q,
    budget: int | None = None,
    start: int = 0,
    stop: int | None = None,
) -> Iterator[linalg.Matrix]:
    """Deterministic stream of the k-dim subspaces of GF(q)^N (RREF bases).

    Yields each subspace exactly once; the count equals qbinom(N, k, q).
    [start, stop) selects a chunk of the stream for parallel traversal.
    """
    q = getattr(q, "q", q)
    g = Grassmannian(N, k, q)
    stop = g.total if stop is None else stop
    charge(stop - start, resolve_budget(budget), f"enumerating G_{q}({N},{k})")
    return g.iter_range(start, stop)


# ----------------------------------------------------------------------
# MatrixCode
# ----------------------------------------------------------------------

class MatrixCode:
    """A nonzero GF(q)-subspace of n x m matrices in canonical RREF form."""

    __slots__ = ("field", "n", "m", "basis")

    def __init__(self, field: FiniteField, n: int, m: int, vectors: Iterable[Sequence[int]]):
        rows, _ = linalg.rref(vectors, field)
        if not rows:
            raise ValueError("the zero code is not a rank-metric code")
        if len(rows[0]) != n * m:
            raise ValueError(f"flattened vectors must have length n*m = {n * m}")
        self.field = field
        self.n = n
        self.m = m
        self.basis = rows

    @classmethod
    def from_matrices(
        cls, field: FiniteField, mats: Iterable[Sequence[Sequence[int]]]
    ) -> "MatrixCode":
        mats = list(mats)
        n = len(mats[0])
        m = len(mats[0][0])
        return cls(field, n, m, [tuple(x for row in mat for x in row) for mat in mats])

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def q(self) -> int:
        return self.field.order

    def basis_matrices(self) -> list[linalg.Matrix]:
        return [self._reshape(v) for v in self.basis]

    def _reshape(self, vec: Sequence[int]) -> linalg.Matrix:
        m = self.m
        return tuple(tuple(vec[r * m : (r + 1) * m]) for r in range(self.n))

    def codewords(self) -> Iterator[linalg.Matrix]:
        """All q^k codewords as matrices, zero included."""
        for vec in linalg.span_elements(self.basis, self.field):
            yield self._reshape(vec)

    def min_distance(self, budget: int | None = None) -> int:
        """Minimum rank over all nonzero codewords, by full enumeration
        of one representative per projective point of the code."""
        return _min_rank(self.field, self.n, self.m, self.basis, budget=budget)

    def is_mrd(self) -> bool:
        """dim == m*(n - d + 1) for d = min_distance (Singleton-like bound
        met with equality)."""
        d = self.min_distance()
        n, m = (self.n, self.m) if self.n <= self.m else (self.m, self.n)
        return self.dim == m * (n - d + 1)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, MatrixCode)
            and self.field == other.field
            and (self.n, self.m) == (other.n, other.m)
            and self.basis == other.basis
        )

    def __hash__(self) -> int:
        return hash((self.field, self.n, self.m, self.basis))

    def __repr__(self) -> str:
        return f"MatrixCode(GF({self.q}), {self.n}x{self.m}, dim={self.dim})"


def _min_rank(
    fld: FiniteField,
    n: int,
    m: int,
    basis: Sequence[Sequence[int]],
    budget: int | None = None,
) -> int:
    k = len(basis)
    q = fld.order
    reps = (q**k - 1) // (q - 1)
    charge(reps, resolve_budget(budget), f"min-distance sweep over {reps} codewords")
    best = min(n, m)
    if q == 2 and n * m <= 16:
        table = linalg.gf2_rank_table(n, m)
        rows = [linalg.pack_row(v) for v in basis]
        word = 0
        for s in range(1, 1 << k):
            word ^= rows[(s & -s).bit_length() - 1]
            r = table[word]
            if r < best:
                best = r
                if best == 1:
                    break
        return best
    for coeffs in linalg.projective_reps(k, q):
        vec = [0] * (n * m)
        for c, b in zip(coeffs, basis):
            if c:
                vec = [fld.add(x, fld.mul(c, y)) for x, y in zip(vec, b)]
        mat = [vec[r * m : (r + 1) * m] for r in range(n)]
        r = linalg.rank(mat, fld)
        if r < best:
            best = r
            if best == 1:
                break
    return best


def min_distance(code: MatrixCode, budget: int | None = None) -> int:
    return code.min_distance(budget=budget)


def is_mrd(code: MatrixCode) -> bool:
    return code.is_mrd()


# ----------------------------------------------------------------------
# densities by enumeration
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class DensityResult:
    """Exact density of codes with minimum distance >= d among the
    k-dimensional ones, with full provenance."""

    q: int
    n: int
    m: int
    k: int
    d: int
    count: int
    total: int
    method: str
    elapsed_ms: float
    kind: str | None = dc_field(default=None)

    @property
    def density(self) -> Fraction:
        return Fraction(self.count, self.total)

    def to_json(self, include_timing: bool = False) -> dict:
        d = self.density
        out = {
            "q": self.q,
            "n": self.n,
            "m": self.m,
            "k": self.k,
            "d": self.d,
            "count": str(self.count),
            "total": str(self.total),
            "density_num": str(d.numerator),
            "density_den": str(d.denominator),
            "density_float": float(d),
            "method": self.method,
        }
        if self.kind is not None:
            out["kind"] = self.kind
        if include_timing:
            out["elapsed_ms"] = self.elapsed_ms
        return out


def _count_chunk_packed(n: int, m: int, k: int, d: int, lo: int, hi: int) -> int:
    """GF(2) kernel: subspaces in [lo, hi) whose nonzero words all have
    rank >= d.  Gray-code traversal, one XOR and one table probe per word."""
    g = Grassmannian(n * m, k, 2)
    table = linalg.gf2_rank_table(n, m)
    ctz = [(s & -s).bit_length() - 1 for s in range(1 << k)]
    count = 0
    nwords = 1 << k
    for rows in g.iter_packed_range(lo, hi):
        word = 0
        for s in range(1, nwords):
            word ^= rows[ctz[s]]
            if table[word] < d:
                break
        else:
            count += 1
    return count


def _count_chunk_generic(n: int, m: int, k: int, d: int, q: int, lo: int, hi: int) -> int:
    g = Grassmannian(n * m, k, q)
    fld = g.field
    count = 0
    for basis in g.iter_range(lo, hi):
        ok = True
        for coeffs in linalg.projective_reps(k, q):
            vec = [0] * (n * m)
            for c, b in zip(coeffs, basis):
                if c:
                    vec = [fld.add(x, fld.mul(c, y)) for x, y in zip(vec, b)]
            mat = [vec[r * m : (r + 1) * m] for r in range(n)]
            if linalg.rank(mat, fld) < d:
                ok = False
                break
        if ok:
            count += 1
    return count


def _density_worker(args: tuple) -> int:
    n, m, k, d, q, lo, hi = args
    if q == 2 and n * m <= 16:
        return _count_chunk_packed(n, m, k, d, lo, hi)
    return _count_chunk_generic(n, m, k, d, q, lo, hi)


def density_bruteforce(
    n: int,
    m: int,
    k: int,
    d: int,
    q,
    budget: int | None = None,
    jobs: int = 1,
) -> DensityResult:
    """Exact count of k-dim codes in GF(q)^(n x m) with min distance >= d,
    over the full Grassmannian.  jobs > 1 splits the sweep into
    deterministic chunks; the reduction is an integer sum, so the result
    is identical for any chunking."""
    q = getattr(q, "q", q)
    if not (1 <= k <= n * m and 1 <= d <= min(n, m)):
        raise ValueError(f"bad parameters n={n}, m={m}, k={k}, d={d}")
    total = qbinom(n * m, k, q)
    charge(total, resolve_budget(budget), f"G_{q}({n * m},{k}) sweep")
    t0 = time.perf_counter()
    if jobs <= 1:
        count = _density_worker((n, m, k, d, q, 0, total))
    else:
        import multiprocessing

        bounds = [total * i // jobs for i in range(jobs + 1)]
        tasks = [
            (n, m, k, d, q, bounds[i], bounds[i + 1])
            for i in range(jobs)
            if bounds[i] < bounds[i + 1]
        ]
        with multiprocessing.Pool(processes=jobs) as pool:
            count = sum(pool.map(_density_worker, tasks))
    elapsed = (time.perf_counter() - t0) * 1000.0
    return DensityResult(q, n, m, k, d, count, total, "brute_force", elapsed)


# ----------------------------------------------------------------------
# spectrum-free matrices and the 2 x m identity
# ----------------------------------------------------------------------

def spectrum_free_count(m: int, q, budget: int | None = None) -> int:
    """Number of m x m matrices over GF(q) with no eigenvalue in GF(q),
    i.e. det(M - lambda*I) != 0 for every lambda, by full enumeration."""
    q = getattr(q, "q", q)
    fld = field_for_order(q)
    cells = m * m
    charge(q**cells, resolve_budget(budget), f"enumerating GF({q})^({m}x{m})")
    count = 0
    if q == 2 and cells <= 16:
        table = linalg.gf2_rank_table(m, m)
        diag = sum(1 << (i * m + i) for i in range(m))
        for code in range(1 << cells):
            if table[code] == m and table[code ^ diag] == m:
                count += 1
        return count
    for flat in itertools.product(range(q), repeat=cells):
        ok = True
        for lam in range(q):
            mat = [
                [
                    fld.sub(flat[i * m + j], lam) if i == j else flat[i * m + j]
                    for j in range(m)
                ]
                for i in range(m)
            ]
            if linalg.rank(mat, fld) < m:
                ok = False
                break
        if ok:
            count += 1
    return count


def spectrum_free_identity_check(m: int, q, budget: int | None = None) -> bool:
    """True iff the brute-force count of m-dim codes in GF(q)^(2 x m) with
    min distance 2 equals the brute-force spectrum-free count s_q(m); the
    two sides are computed independently."""
    lhs = density_bruteforce(2, m, m, 2, q, budget=budget).count
    rhs = spectrum_free_count(m, q, budget=budget)
    return lhs == rhs


# ----------------------------------------------------------------------
# closed formulas and asymptotic evaluators
# ----------------------------------------------------------------------

def density_3x3_formula(q) -> Fraction:
    """Exact density of 3-dim codes in GF(q)^(3x3) with min distance 3."""
    q = getattr(q, "q", q)
    num = (
        (q - 1)
        * (q**3 - 1)
        * (q**3 - q) ** 3
        * (q**3 - q**2) ** 2
        * (q**3 - q**2 - q - 1)
    )
    den = 3 * (q**7 - 1) * (q**9 - 1) * (q**9 - q)
    return Fraction(num, den)


def mrd_lowerbound_formula(n: int, q) -> tuple[int, Fraction]:
    """Lower bound on the number of full-rank MRD codes in GF(q)^(n x n)
    (sharp for n = 3 and any q, and for n prime with q large):

        |GL_n(q)|^2/(n (q^n-1)^2) * (1 + C(n-1,2) (q^n-1)(q-2)/(q-1))

    Returns (count, count / qbinom(n^2, n, q))."""
    q = getattr(q, "q", q)
    if n < 2:
        raise ValueError("need n >= 2")
    glsq = Fraction(gl_order(n, q) ** 2)
    bracket = 1 + Fraction(math.comb(n - 1, 2) * (q**n - 1) * (q - 2), q - 1)
    count = glsq / (n * (q**n - 1) ** 2) * bracket
    assert count.denominator == 1, "lower-bound formula must be integral"
    count_int = count.numerator
    return count_int, Fraction(count_int, qbinom(n * n, n, q))


def prime_factor_count(n: int) -> int:
    """Number of prime factors of n, counted with multiplicity."""
    out = 0
    f = 2
    while f * f <= n:
        while n % f == 0:
            out += 1
            n //= f
        f += 1
    if n > 1:
        out += 1
    return out


def kantor_lowerbound(n: int) -> int:
    """q = 2 only: lower bound |GL_n(2)|^2 2^n (2^n-1)^(gamma(n)-2) / (2n)
    on the number of full-rank MRD codes in GF(2)^(n x n); requires n
    composite and not a power of 3."""
    gamma = prime_factor_count(n)
    if gamma < 2:
        raise ValueError(f"n = {n} is prime (or 1); the bound does not apply")
    k = n
    while k % 3 == 0:
        k //= 3
    if k == 1:
        raise ValueError(f"n = {n} is a power of 3; the bound does not apply")
    value = Fraction(gl_order(n, 2) ** 2 * 2**n * (2**n - 1) ** (gamma - 2), 2 * n)
    assert value.denominator == 1
    return value.numerator


def asymptotic_constants(
    n: int, d: int, q: int | None = None, eps: float = 1e-9
) -> dict:
    """Evaluated asymptotic expressions for the density of MRD codes in
    GF(q)^(n x n) / GF(q)^(n x m):

    - 'lower_q': the sharp q -> inf estimate (n-1)(n-2)/(2n) q^(-n^3+3n^2-n)
      (exact asymptotics when n is prime; an Omega bound in general).
    - 'upper_q': the q -> inf upper bound exponent O(q^(-(d-1)(n-d+1)+1)).
    - 'upper_m_*': both branch values of the m -> inf limsup bound, with
      pi(q) evaluated to certified precision eps; 'upper_m' is their min.
    """
    out: dict = {
        "lower_q": AsymptoticEstimate(
            Fraction((n - 1) * (n - 2), 2 * n), "q", -(n**3) + 3 * n**2 - n
        ),
        "upper_q": AsymptoticEstimate(Fraction(1), "q", -(d - 1) * (n - d + 1) + 1),
    }
    if q is not None:
        piq, bound = pi_q_limit(q, eps)
        b1 = 1.0 / piq ** (q * (d - 1) * (n - d + 1) + 1)
        b2 = 1.0 / (qbinom(n, d - 1, q) * (piq - 1.0) + 1.0)
        out["pi_q"] = piq
        out["pi_q_bound"] = bound
        out["upper_m_branch1"] = b1
        out["upper_m_branch2"] = b2
        out["upper_m"] = min(b1, b2)
    return out
