"""Product-chart section cutting out the diagonal, and its Koszul complex.

On a product of two chart neighbourhoods of Gr(k, n) there is a natural
pairing between the subspace frame attached to the first factor and the
quotient coframe attached to the second.  Its entry matrix vanishes exactly
where the two factor points coincide.  This module builds that matrix
symbolically, checks its same-chart normal form (coordinate differences),
evaluates the associated Koszul complex at point pairs, and filters exterior
powers of the underlying rank-k(n-k) bundle into Schur/Weyl pieces.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field

from .charts import Atlas, atlas, build_chart
from .errors import ChartMismatch, InvalidDims, SodkitError
from .localized import Poly, PolyRing
from .matrices import ExactMatrix, rank
from .partitions import Partition
from .rings import QQ, RingSpec
from .schur_weyl import FiltrationReport, cauchy_filtration


@dataclass(frozen=True)
class ProductChart:
    """Chart-pair data for the cross-factor frame/coframe pairing.

    The polynomial ring carries one block of variables per factor, first
    factor first.  ``section[l-1][m-1]`` applies row m of the second
    factor's quotient coframe to column l of the first factor's frame; on a
    same-chart pair it reduces to ``x1(l, m) - x2(l, m)``.
    """

    k: int
    n: int
    left_index_set: tuple[int, ...]
    right_index_set: tuple[int, ...]
    ring: RingSpec
    pring: PolyRing = field(compare=False, repr=False)
    section: tuple = field(compare=False, repr=False)  # k x (n-k) of Poly

    def x1(self, l: int, m: int) -> Poly:
        """First-factor coordinate, 1-based in both slots."""
        return self.pring.var((l - 1) * (self.n - self.k) + (m - 1))

    def x2(self, l: int, m: int) -> Poly:
        """Second-factor coordinate, 1-based in both slots."""
        off = self.k * (self.n - self.k)
        return self.pring.var(off + (l - 1) * (self.n - self.k) + (m - 1))

    def entries(self) -> list[Poly]:
        """Section entries flattened row-major; index (l-1)(n-k)+(m-1)."""
        return [e for row in self.section for e in row]


def diagonal_section(I, J, k: int, n: int, ring: RingSpec = QQ) -> ProductChart:
    """Entry matrix of the frame/coframe pairing on the chart pair (I, J).

    Entry (l, m) is the m-th quotient functional of the J-chart, in the
    second variable block, applied to the l-th frame column of the I-chart,
    in the first block.  All entries vanish at a point pair exactly when the
    two points are the same subspace.
    """
    left = build_chart(I, k, n, ring)
    right = build_chart(J, k, n, ring)
    L = k * (n - k)
    names = tuple(f"x1_{s[1:]}" for s in left.pring.names) + tuple(
        f"x2_{s[1:]}" for s in right.pring.names
    )
    pring = PolyRing(ring, names)
    lift1 = [pring.var(i) for i in range(L)]
    lift2 = [pring.var(L + i) for i in range(L)]
    sec = []
    for l in range(1, k + 1):
        row = []
        for m in range(1, n - k + 1):
            acc = pring.zero()
            for r in range(1, n + 1):
                a = right.quot_dual_basis[m - 1][r - 1]
                b = left.taut_basis[r - 1][l - 1]
                if not a or not b:
                    continue
                term = pring.mul(
                    right.pring.subs(a, lift2, pring),
                    left.pring.subs(b, lift1, pring),
                )
                acc = pring.add(acc, term)
            row.append(acc)
        sec.append(tuple(row))
    return ProductChart(
        k, n, left.index_set, right.index_set, ring, pring, tuple(sec)
    )


def _freeze(p: Poly):
    return frozenset(p.items())


def same_chart_ideal_check(I, k: int, n: int, ring: RingSpec = QQ) -> bool:
    """True iff the (I, I) section entries are exactly the coordinate differences.

    The generators of the diagonal's ideal on a same-chart product are the
    differences ``x1(l, m) - x2(l, m)``; this compares the computed entry
    set against them as polynomials.
    """
    pc = diagonal_section(I, I, k, n, ring)
    got = {_freeze(e) for e in pc.entries()}
    P = pc.pring
    want = {
        _freeze(P.sub(pc.x1(l, m), pc.x2(l, m)))
        for l in range(1, k + 1)
        for m in range(1, n - k + 1)
    }
    return got == want


def _koszul_boundary(entries, i: int, zero, neg):
    """Matrix of the i-th contraction map against increasing-index bases.

    Columns run over i-subsets, rows over (i-1)-subsets, both in
    lexicographic order; removing position j from a column subset lands in
    the row subset with sign (-1)^j.
    """
    L = len(entries)
    rows_ix = {S: r for r, S in enumerate(itertools.combinations(range(L), i - 1))}
    cols = list(itertools.combinations(range(L), i))
    M = [[zero for _ in cols] for _ in rows_ix]
    for c, S in enumerate(cols):
        for j, e in enumerate(S):
            T = S[:j] + S[j + 1 :]
            M[rows_ix[T]][c] = entries[e] if j % 2 == 0 else neg(entries[e])
    return M


def koszul_boundary_matrices(pc: ProductChart) -> list:
    """Symbolic contraction matrices d_i, i = 1..k(n-k), over the product ring."""
    P = pc.pring
    ents = pc.entries()
    return [
        _koszul_boundary(ents, i, P.zero(), P.neg)
        for i in range(1, len(ents) + 1)
    ]


def koszul_d2_is_zero(pc: ProductChart) -> bool:
    """Check d_i . d_{i+1} = 0 symbolically for every consecutive pair."""
    P = pc.pring
    mats = koszul_boundary_matrices(pc)
    for A, B in zip(mats, mats[1:]):
        for r in range(len(A)):
            for c in range(len(B[0])):
                acc = P.zero()
                for t in range(len(B)):
                    acc = P.add(acc, P.mul(A[r][t], B[t][c]))
                if acc:
                    return False
    return True


def wedge_rank_euler(k: int, n: int) -> int:
    """Alternating sum of exterior-power ranks of the rank-k(n-k) bundle."""
    L = k * (n - k)
    return sum((-1) ** i * math.comb(L, i) for i in range(L + 1))


def _resolve_point(pt):
    """Validate a (index_set, values) pair and infer (k, n) from its shape."""
    try:
        iset, vals = pt
        iset = tuple(int(v) for v in iset)
        vals = tuple(vals)
    except (TypeError, ValueError) as exc:
        raise ChartMismatch(f"point must be (index_set, values), got {pt!r}") from exc
    nk = len(iset)
    if nk == 0 or len(set(iset)) != nk:
        raise ChartMismatch(f"index set {iset} has repeats or is empty")
    if not vals or len(vals) % nk:
        raise ChartMismatch(
            f"{len(vals)} coordinate values do not fill a chart with {nk} quotient rows"
        )
    k = len(vals) // nk
    n = k + nk
    if any(not 1 <= v <= n for v in iset):
        raise ChartMismatch(f"index set {iset} is not a subset of 1..{n}")
    return k, n, iset, vals


def _frame_at(iset, vals, k: int, n: int, ring: RingSpec):
    """The n x k frame of the point's subspace, evaluated at its coordinates."""
    ch = build_chart(iset, k, n, ring)
    return [[ch.pring.evaluate(p, vals) for p in row] for row in ch.taut_basis]


def points_equal(x, y, ring: RingSpec = QQ) -> bool:
    """Whether two chart-presented points are the same k-dimensional subspace.

    Stacks the two evaluated frames side by side; the points agree exactly
    when the combined n x 2k matrix still has rank k.
    """
    kx, nx, ix, vx = _resolve_point(x)
    ky, ny, iy, vy = _resolve_point(y)
    if (kx, nx) != (ky, ny):
        raise ChartMismatch(f"points live on Gr({kx},{nx}) and Gr({ky},{ny})")
    A = _frame_at(ix, vx, kx, nx, ring)
    B = _frame_at(iy, vy, ky, ny, ring)
    M = ExactMatrix([ra + rb for ra, rb in zip(A, B)])
    return rank(M, ring) == kx


def _constant_koszul_homology(svals, ring: RingSpec) -> list[int]:
    """Homology sizes of the Koszul complex on constant entries, degrees 0..L."""
    L = len(svals)
    dims = [math.comb(L, i) for i in range(L + 1)]
    r = [0]
    for i in range(1, L + 1):
        M = _koszul_boundary(svals, i, ring.zero(), ring.neg)
        r.append(rank(ExactMatrix(M), ring))
    r.append(0)
    return [dims[i] - r[i] - r[i + 1] for i in range(L + 1)]


def koszul_homology_at_point(x, y, ring: RingSpec = QQ) -> list[int]:
    """Koszul homology sizes at a point pair, listed by degree 0..k(n-k).

    Away from the diagonal the entries of the section do not all vanish and
    the evaluated complex is exact; the ranks are computed from the constant
    contraction matrices.  At a diagonal point every entry vanishes, so the
    constant matrices are zero and carry no information; there the entries
    are checked to cut the point's locus transversally (evaluated Jacobian
    of full rank k(n-k)), which makes the complex a resolution of the locus
    they cut out, with homology of rank one concentrated in degree zero.

    Both routes are guarded against each other: the vanishing of the section
    must agree with frame-rank point equality, else this raises.
    """
    kx, nx, ix, vx = _resolve_point(x)
    ky, ny, iy, vy = _resolve_point(y)
    if (kx, nx) != (ky, ny):
        raise ChartMismatch(f"points live on Gr({kx},{nx}) and Gr({ky},{ny})")
    k, n = kx, nx
    L = k * (n - k)
    pc = diagonal_section(ix, iy, k, n, ring)
    pointvals = [ring.coerce(v) for v in vx] + [ring.coerce(v) for v in vy]
    svals = [pc.pring.evaluate(e, pointvals) for e in pc.entries()]
    same = points_equal((ix, vx), (iy, vy), ring)
    if all(ring.is_zero(v) for v in svals):
        if not same:
            raise SodkitError("section vanished at a pair of distinct points")
        jac = [
            [
                pc.pring.evaluate(pc.pring.partial(e, i), pointvals)
                for e in pc.entries()
            ]
            for i in range(2 * L)
        ]
        if rank(ExactMatrix(jac), ring) != L:
            raise SodkitError(
                "section entries do not cut the diagonal transversally here"
            )
        return [1] + [0] * L
    if same:
        raise SodkitError("section nonzero at a diagonal point")
    return _constant_koszul_homology(svals, ring)


def wedge_box_filtration(i: int, k: int, n: int, ring: RingSpec = QQ) -> FiltrationReport:
    """Schur/Weyl filtration of the i-th exterior power of the pairing bundle.

    Runs the exterior-power filtration with factor ranks k and n-k and
    cross-checks that the labels with nonzero graded piece are exactly the
    partitions fitting the (n-k) x k box: at most n-k rows, parts at most k.
    """
    if not 0 < k < n:
        raise InvalidDims(f"need 0 < k < n, got k={k}, n={n}")
    L = k * (n - k)
    if not 0 <= i <= L:
        raise InvalidDims(f"wedge degree {i} outside 0..{L}")
    rep = cauchy_filtration(i, k, n - k, ring)
    for st in rep.steps:
        fits = len(st.alpha) <= n - k and (st.alpha[0] if st.alpha else 0) <= k
        if fits != (st.expected > 0):
            raise SodkitError(
                f"box membership and tableau-count support disagree at {st.alpha}"
            )
    return rep


def surviving_labels(rep: FiltrationReport) -> list[Partition]:
    """Partitions whose graded piece in a filtration report is nonzero."""
    return [st.alpha for st in rep.steps if st.expected > 0]


@dataclass
class KoszulSampleReport:
    """Outcome of randomized pointwise Koszul checks on Gr(k, n) x Gr(k, n)."""

    k: int
    n: int
    ring: RingSpec
    seed: int
    off_pairs: int
    diag_points: int
    mixed_diag: int
    off_all_zero: bool
    diag_all_unit: bool
    failures: list

    @property
    def passed(self) -> bool:
        return self.off_all_zero and self.diag_all_unit and not self.failures


def _random_values(rng: random.Random, count: int, ring: RingSpec):
    p = ring.characteristic
    if p:
        return tuple(ring.coerce(rng.randrange(p)) for _ in range(count))
    return tuple(ring.coerce(rng.randint(-9, 9)) for _ in range(count))


def _chart_image(at: Atlas, a: int, b: int, vals, ring: RingSpec):
    """Re-express a chart-a point in chart b, or None when b misses it."""
    pd = at.pair(a, b)
    mval = at.charts[a].pring.evaluate(pd.minor, vals)
    if ring.is_zero(mval):
        return None
    out = []
    for f in pd.phi:
        num = at.charts[a].pring.evaluate(f.num, vals)
        den = ring.one()
        for _ in range(f.den[0]):
            den = ring.mul(den, mval)
        out.append(ring.div(num, den))
    return tuple(out)


def sample_koszul_checks(
    k: int,
    n: int,
    ring: RingSpec,
    off_pairs: int = 100,
    diag_points: int = 20,
    seed: int = 0,
) -> KoszulSampleReport:
    """Randomized verification that the Koszul complex sees only the diagonal.

    Samples ``off_pairs`` pairs of distinct points (any two charts) and
    checks all homology vanishes, then ``diag_points`` single points checked
    against themselves, alternating same-chart with a re-expression of the
    point in a different chart whenever one contains it.  Deterministic for
    a fixed seed.
    """
    if not 0 < k < n:
        raise InvalidDims(f"need 0 < k < n, got k={k}, n={n}")
    rng = random.Random(seed)
    at = atlas(k, n, ring)
    L = k * (n - k)
    zero_profile = [0] * (L + 1)
    unit_profile = [1] + [0] * L
    failures: list = []
    off_ok = True
    for _ in range(off_pairs):
        for _ in range(64):
            a = rng.randrange(len(at.charts))
            b = rng.randrange(len(at.charts))
            x = (at.charts[a].index_set, _random_values(rng, L, ring))
            y = (at.charts[b].index_set, _random_values(rng, L, ring))
            if not points_equal(x, y, ring):
                break
        else:
            raise SodkitError("could not sample distinct points; field too small")
        got = koszul_homology_at_point(x, y, ring)
        if got != zero_profile:
            off_ok = False
            failures.append(("off-diagonal", x, y, got))
    diag_ok = True
    mixed = 0
    for idx in range(diag_points):
        a = rng.randrange(len(at.charts))
        vals = _random_values(rng, L, ring)
        x = (at.charts[a].index_set, vals)
        y = x
        if idx % 2 and len(at.charts) > 1:
            b = rng.randrange(len(at.charts) - 1)
            if b >= a:
                b += 1
            image = _chart_image(at, a, b, vals, ring)
            if image is not None:
                y = (at.charts[b].index_set, image)
                mixed += 1
        got = koszul_homology_at_point(x, y, ring)
        if got != unit_profile:
            diag_ok = False
            failures.append(("diagonal", x, y, got))
    return KoszulSampleReport(
        k, n, ring, seed, off_pairs, diag_points, mixed, off_ok, diag_ok, failures
    )
