"""Affine charts of Gr(k, n), transition cocycles, and bundle constructions.

A chart is labelled by an (n-k)-element subset I of {1..n}: the open locus
where the quotient map restricted to the coordinates outside I stays an
isomorphism.  Writing the complement as {j_1 < ... < j_k}, the tautological
subbundle is framed by the columns e_{j_l} + sum_m x_{lm} e_{i_m}, and the
dual of the quotient by the covectors e*_{i_m} - sum_l x_{lm} e*_{j_l}.

Transitions are stored one-directionally, for pairs of charts in increasing
lexicographic order; inverses, when a construction needs them, come from the
adjugate divided by the determinant.  For a pair (A, B) the single inverted
element is the k x k minor of the chart-A tautological frame in the rows
outside B; g_AB expresses the chart-B frame in the chart-A frame (the
solve), so sections transform by s_A = g_AB . s_B(phi_AB).

The quotient transitions are the (n-k) x (n-k) submatrices of the dual
covector matrix in the columns of the other chart, conjugated by a per-chart
orientation sign so that det(g^taut) . det(g^quot) = 1 exactly on every
overlap, as the tautological exact sequence demands.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import BadIndexSet, DenominatorViolation, InvalidDims
from .localized import (
    LocFrac,
    Localization,
    LocalizedPolyMatrix,
    PolyRing,
    _det_locfrac,
    solve_in_localization,
)
from .partitions import check_partition, count_ssyt
from .rings import QQ, RingSpec
from .schur_weyl import weyl_on_morphism


def _chart_var_names(k: int, n: int) -> tuple[str, ...]:
    return tuple(f"x{l}_{m}" for l in range(1, k + 1) for m in range(1, n - k + 1))


def orientation_sign(index_set: tuple[int, ...], n: int) -> int:
    """Parity of the shuffle (complement, index_set) of {1..n}."""
    comp = [v for v in range(1, n + 1) if v not in set(index_set)]
    seq = comp + list(index_set)
    inv = sum(
        1
        for i in range(len(seq))
        for j in range(i + 1, len(seq))
        if seq[i] > seq[j]
    )
    return -1 if inv % 2 else 1


@dataclass(frozen=True)
class Chart:
    k: int
    n: int
    index_set: tuple[int, ...]
    complement: tuple[int, ...]
    ring: RingSpec
    pring: PolyRing = field(compare=False, repr=False)
    taut_basis: tuple = field(compare=False, repr=False)    # n x k of Poly
    quot_dual_basis: tuple = field(compare=False, repr=False)  # (n-k) x n of Poly

    @property
    def orientation(self) -> int:
        return orientation_sign(self.index_set, self.n)

    def variable(self, l: int, m: int):
        """The coordinate x_{lm}, 1-based in both slots."""
        return self.pring.var((l - 1) * (self.n - self.k) + (m - 1))


def build_chart(index_set, k: int, n: int, ring: RingSpec = QQ) -> Chart:
    if not (0 < k < n):
        raise InvalidDims(f"need 0 < k < n, got k={k}, n={n}")
    I = tuple(sorted(index_set))
    if len(I) != n - k or len(set(I)) != len(I) or any(not 1 <= v <= n for v in I):
        raise BadIndexSet(f"index set {index_set} is not an (n-k)-subset of 1..{n}")
    comp = tuple(v for v in range(1, n + 1) if v not in set(I))
    pring = PolyRing(ring, _chart_var_names(k, n))

    def x(l, m):  # 1-based
        return pring.var((l - 1) * (n - k) + (m - 1))

    taut = [[pring.zero() for _ in range(k)] for _ in range(n)]
    for l, j in enumerate(comp, start=1):
        taut[j - 1][l - 1] = pring.one()
        for m, i in enumerate(I, start=1):
            taut[i - 1][l - 1] = x(l, m)
    quot = [[pring.zero() for _ in range(n)] for _ in range(n - k)]
    for m, i in enumerate(I, start=1):
        quot[m - 1][i - 1] = pring.one()
        for l, j in enumerate(comp, start=1):
            quot[m - 1][j - 1] = pring.neg(x(l, m))
    return Chart(k, n, I, comp, ring, pring, tuple(map(tuple, taut)), tuple(map(tuple, quot)))


@dataclass(frozen=True)
class PairData:
    """Everything attached to an ordered chart pair (A, B), in chart-A coordinates."""

    minor: dict                     # the inverted k x k minor polynomial
    loc: Localization               # chart-A ring with the minor inverted
    taut_transition: LocalizedPolyMatrix
    phi: tuple                      # chart-B variable images, LocFrac in loc
    quot_raw: tuple                 # (n-k) x (n-k) polynomial submatrix of P_A


class Atlas:
    """All charts of Gr(k, n) over a ring, sorted by index set."""

    def __init__(self, k: int, n: int, ring: RingSpec = QQ):
        if not (0 < k < n):
            raise InvalidDims(f"need 0 < k < n, got k={k}, n={n}")
        self.k, self.n, self.ring = k, n, ring
        self.charts = tuple(
            build_chart(I, k, n, ring) for I in combinations(range(1, n + 1), n - k)
        )
        self.position = {c.index_set: i for i, c in enumerate(self.charts)}
        self._pairs: dict[tuple[int, int], PairData] = {}

    def chart(self, index_set) -> Chart:
        return self.charts[self.position[tuple(sorted(index_set))]]

    def pair(self, a: int, b: int) -> PairData:
        """Data for the ordered chart pair (charts[a], charts[b]), a < b."""
        if a == b or not (0 <= a < len(self.charts) and 0 <= b < len(self.charts)):
            raise BadIndexSet(f"bad chart pair ({a}, {b})")
        key = (a, b)
        if key in self._pairs:
            return self._pairs[key]
        A, B = self.charts[a], self.charts[b]
        k, n = self.k, self.n
        pring = A.pring
        rows_outside_B = [v for v in range(1, n + 1) if v not in set(B.index_set)]
        sub = [[A.taut_basis[r - 1][c] for c in range(k)] for r in rows_outside_B]
        triv = Localization(pring, ())
        minor = _det_locfrac(triv, [[triv.from_poly(e) for e in row] for row in sub]).num
        loc = Localization(pring, (minor,))
        A_loc = LocalizedPolyMatrix.from_polys(loc, sub)
        g = solve_in_localization(A_loc, LocalizedPolyMatrix.identity(loc, k))
        # frame of chart B written in chart-A coordinates: rows outside B
        # become the identity, rows in B carry the chart-B variable values
        T_loc = LocalizedPolyMatrix.from_polys(
            loc, [[A.taut_basis[r][c] for c in range(k)] for r in range(n)]
        )
        N = T_loc.mul(g)
        phi = tuple(
            N[i - 1, l] for l in range(k) for i in B.index_set
        )
        quot_raw = tuple(
            tuple(A.quot_dual_basis[m][i - 1] for i in B.index_set)
            for m in range(n - k)
        )
        data = PairData(minor, loc, g, phi, quot_raw)
        self._pairs[key] = data
        return data


_ATLASES: dict[tuple[int, int, RingSpec], Atlas] = {}


def atlas(k: int, n: int, ring: RingSpec = QQ) -> Atlas:
    key = (k, n, ring)
    if key not in _ATLASES:
        _ATLASES[key] = Atlas(k, n, ring)
    return _ATLASES[key]


# -- cocycles ---------------------------------------------------------------


@dataclass
class BundleCocycle:
    atlas: Atlas
    rank: int
    transitions: dict  # (a, b) chart positions, a < b -> LocalizedPolyMatrix
    label: str = ""

    def transition(self, a: int, b: int) -> LocalizedPolyMatrix:
        if a == b:
            loc = Localization(self.atlas.charts[a].pring, ())
            return LocalizedPolyMatrix.identity(loc, self.rank)
        if a < b:
            return self.transitions[(a, b)]
        raise BadIndexSet("transitions are stored for increasing chart pairs only")


def trivial_cocycle(k: int, n: int, rank: int = 1, ring: RingSpec = QQ) -> BundleCocycle:
    at = atlas(k, n, ring)
    trans = {}
    for a in range(len(at.charts)):
        for b in range(a + 1, len(at.charts)):
            trans[(a, b)] = LocalizedPolyMatrix.identity(at.pair(a, b).loc, rank)
    return BundleCocycle(at, rank, trans, label=f"O^{rank}")


def tautological_cocycle(k: int, n: int, ring: RingSpec = QQ) -> BundleCocycle:
    at = atlas(k, n, ring)
    trans = {}
    for a in range(len(at.charts)):
        for b in range(a + 1, len(at.charts)):
            trans[(a, b)] = at.pair(a, b).taut_transition
    return BundleCocycle(at, k, trans, label="T")


def quotient_cocycle(k: int, n: int, ring: RingSpec = QQ) -> BundleCocycle:
    at = atlas(k, n, ring)
    trans = {}
    for a in range(len(at.charts)):
        for b in range(a + 1, len(at.charts)):
            pd = at.pair(a, b)
            eps_a = at.charts[a].orientation
            eps_b = at.charts[b].orientation
            rows = [list(r) for r in pd.quot_raw]
            pring = at.charts[a].pring
            if eps_a < 0:
                rows[0] = [pring.neg(e) for e in rows[0]]
            if eps_b < 0:
                for r in rows:
                    r[0] = pring.neg(r[0])
            trans[(a, b)] = LocalizedPolyMatrix.from_polys(pd.loc, rows)
    return BundleCocycle(at, n - k, trans, label="Q")


def weyl_bundle(alpha, k: int, n: int, ring: RingSpec = QQ) -> BundleCocycle:
    a = check_partition(alpha)
    if len(a) > k or (a and a[0] > n - k):
        raise InvalidDims(f"partition {a} does not fit the {k} x {n - k} box")
    taut = tautological_cocycle(k, n, ring)
    r = count_ssyt(a, k)
    if not a:
        return trivial_cocycle(k, n, 1, ring)
    trans = {
        key: weyl_on_morphism(a, g) for key, g in taut.transitions.items()
    }
    return BundleCocycle(taut.atlas, r, trans, label=f"W^{a} T")


def dual_cocycle(E: BundleCocycle) -> BundleCocycle:
    trans = {
        key: g.inverse().transpose() for key, g in E.transitions.items()
    }
    return BundleCocycle(E.atlas, E.rank, trans, label=f"({E.label})*")


def tensor_cocycle(E: BundleCocycle, F: BundleCocycle) -> BundleCocycle:
    if E.atlas is not F.atlas:
        raise BadIndexSet("cocycles live on different atlases")
    trans = {}
    for key, g in E.transitions.items():
        h = F.transitions[key]
        loc = g.loc
        rows = []
        for ie in range(g.rows):
            for ih in range(h.rows):
                row = []
                for je in range(g.cols):
                    for jh in range(h.cols):
                        row.append(loc.mul(g[ie, je], h[ih, jh]))
                rows.append(row)
        trans[key] = LocalizedPolyMatrix(loc, rows)
    return BundleCocycle(E.atlas, E.rank * F.rank, trans, label=f"{E.label} (x) {F.label}")


def hom_cocycle(E: BundleCocycle, F: BundleCocycle) -> BundleCocycle:
    out = tensor_cocycle(dual_cocycle(E), F)
    out.label = f"Hom({E.label}, {F.label})"
    return out


# -- transport between charts ----------------------------------------------


def transport_frac(target: Localization, f: LocFrac, src: Localization, images) -> LocFrac:
    """Push a chart-B fraction through phi into a chart-A localization.

    Every inverted element of the source must become a unit in the target
    after substitution; its image's numerator has to divide out, which holds
    exactly when the target localization inverts the right overlap minors.
    """
    out = target.subs_poly(f.num, src.pring, images)
    for d, e in zip(src.inverted, f.den):
        if e:
            inv = target.invert(target.subs_poly(d, src.pring, images))
            for _ in range(e):
                out = target.mul(out, inv)
    return out


def transport_matrix(
    target: Localization, M: LocalizedPolyMatrix, images
) -> LocalizedPolyMatrix:
    rows = [
        [transport_frac(target, M[i, j], M.loc, images) for j in range(M.cols)]
        for i in range(M.rows)
    ]
    return LocalizedPolyMatrix(target, rows)


# -- cocycle verification ---------------------------------------------------


@dataclass
class CocycleCheck:
    label: str
    pairs_ok: bool
    triples_ok: bool
    triples_checked: int

    @property
    def passed(self) -> bool:
        return self.pairs_ok and self.triples_ok


def verify_cocycle(E: BundleCocycle) -> CocycleCheck:
    """Invertibility of every stored transition plus the triple condition
    g_AB . (g_BC after phi_AB) = g_AC on all increasing chart triples."""
    at = E.atlas
    pairs_ok = True
    for key, g in E.transitions.items():
        det = g.determinant()
        try:
            g.loc.invert(det)
        except (DenominatorViolation, ZeroDivisionError):
            pairs_ok = False
    triples_ok = True
    count = 0
    m = len(at.charts)
    for a in range(m):
        for b in range(a + 1, m):
            for c in range(b + 1, m):
                if not _triple_holds(E, a, b, c):
                    triples_ok = False
                count += 1
    return CocycleCheck(E.label, pairs_ok, triples_ok, count)


def _triple_holds(E: BundleCocycle, a: int, b: int, c: int) -> bool:
    at = E.atlas
    g_ab, g_ac, g_bc = E.transition(a, b), E.transition(a, c), E.transition(b, c)
    pd_ab, pd_ac = at.pair(a, b), at.pair(a, c)
    pring = at.charts[a].pring
    # target ring: chart A with both pair minors and the transported
    # numerator of the (b, c) minor inverted
    img_minor = pd_ab.loc.subs_poly(at.pair(b, c).minor, at.charts[b].pring, pd_ab.phi)
    inv3 = (pd_ab.minor, pd_ac.minor, pd_ab.loc.canonical(img_minor).num)
    loc3 = Localization(pring, inv3)

    def widen(M: LocalizedPolyMatrix) -> LocalizedPolyMatrix:
        return LocalizedPolyMatrix(
            loc3,
            [[loc3.convert(M[i, j], M.loc) for j in range(M.cols)] for i in range(M.rows)],
        )

    phi_images = tuple(loc3.convert(f, pd_ab.loc) for f in pd_ab.phi)
    g_bc_in_a = transport_matrix(loc3, g_bc, phi_images)
    lhs = widen(g_ab).mul(g_bc_in_a)
    return lhs.equals(widen(g_ac))


def det_product_check(k: int, n: int, ring: RingSpec = QQ) -> bool:
    """det(g^taut_AB) . det(g^quot_AB) = 1 on every stored overlap."""
    T = tautological_cocycle(k, n, ring)
    Q = quotient_cocycle(k, n, ring)
    for key, g in T.transitions.items():
        loc = g.loc
        prod = loc.mul(g.determinant(), Q.transitions[key].determinant())
        if not loc.eq(prod, loc.one()):
            return False
    return True
