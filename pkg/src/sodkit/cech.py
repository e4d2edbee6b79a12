"""Truncated Cech cohomology of bundle cocycles over a field.

The alternating Cech complex of the standard chart cover is truncated by a
single degree bound D: on each chart tuple, a cochain is a combination of
monomial "keys" in the anchor chart's coordinates, where the numerator's
total degree, every inverted-coordinate exponent, and the exponent of the
one binomial minor are each capped by D.  Sections on a tuple are
trivialized in the smallest chart of the tuple, so only the face that
prepends a new minimal chart needs a coordinate substitution and a
transition factor.

Three structural facts keep this computable:

* Every chart-overlap minor on the supported Grassmannians is, up to a unit,
  either a single coordinate or one two-term determinant per anchor (the
  minor against the complementary chart).  Keys are Laurent exponent vectors
  plus one power of the inverse of that binomial, normalized by the rewrite
  that trades the binomial's leading monomial against its trailing one.
* The diagonal torus acts on everything and the transition entries are
  weight-pure, so the differential preserves a global weight and the whole
  complex is a direct sum of independent towers, one per weight.
* Within a fixed weight tower the keys per tuple form a short lattice
  segment, so a tower holds O(D) chains per tuple and can be pushed to
  higher bounds at negligible cost.

Truncation produces junk cohomology classes that die at larger bounds.  The
reported dimension in degree p at bound D is therefore the dimension of the
image of H^p(C_D) -> H^p(C_B), namely dim(Z_p(D) + B_p(B)) - dim B_p(B),
computed tower by tower with the boundary bound B >= D+1 escalating until
the (monotone non-increasing) image dimension repeats twice.  Stabilization
means the reported vector agrees at bounds D and D+1.  Both stalls are
finite-window heuristics: they are pragmatic certificates, stated as such
in the reports, not proofs.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import factorial

from .charts import BundleCocycle, atlas, hom_cocycle, weyl_bundle
from .errors import ChartMismatch, InvalidDims, SodkitError
from .localized import LocFrac
from .matrices import ExactMatrix, smith_normal_form
from .partitions import Partition, compare, enumerate_box, Order
from .rings import QQ, GF, RingSpec

_FILTER_PRIMES = (1_000_000_007, 998_244_353)


# -- chart geometry metadata -------------------------------------------------


class _MinorInfo:
    __slots__ = ("kind", "unit", "vec", "c1", "m1", "c2", "m2")

    def __init__(self, kind, unit=None, vec=None, c1=None, m1=None, c2=None, m2=None):
        self.kind = kind  # "mono" | "bin"
        self.unit, self.vec = unit, vec
        self.c1, self.m1, self.c2, self.m2 = c1, m1, c2, m2


def _classify_minor(poly, nv) -> _MinorInfo:
    terms = sorted(poly.items(), reverse=True)
    if len(terms) == 1:
        (vec, c), = terms
        return _MinorInfo("mono", unit=c, vec=vec)
    if len(terms) == 2:
        (m1, c1), (m2, c2) = terms
        if any(a and b for a, b in zip(m1, m2)):
            raise SodkitError(
                "binomial overlap minor with entangled support is not supported"
            )
        return _MinorInfo("bin", c1=c1, m1=m1, c2=c2, m2=m2)
    raise SodkitError("chart-overlap minor with more than two terms is not supported")


class _ChartMeta:
    """Per-anchor data: variable weights, minor classification, the binomial."""

    def __init__(self, ctx, pos):
        self.ctx = ctx
        self.pos = pos
        at = ctx.atlas
        chart = at.charts[pos]
        k, n = at.k, at.n
        self.nv = k * (n - k)
        wts = []
        for l in range(k):
            for m in range(n - k):
                w = [0] * n
                w[chart.index_set[m] - 1] += 1
                w[chart.complement[l] - 1] -= 1
                wts.append(tuple(w))
        self.var_weights = tuple(wts)
        self.minors: dict[int, _MinorInfo] = {}      # other chart pos -> info
        self.var_to_chart: dict[int, tuple[int, object]] = {}  # var -> (pos, unit)
        self.q: _MinorInfo | None = None
        self.q_pos: int | None = None
        self.wty: tuple[int, ...] | None = None
        self._wt_cache: dict = {}

    def finalize(self):
        for b, info in self.minors.items():
            if info.kind == "mono":
                if sum(info.vec) != 1:
                    raise SodkitError(
                        "multi-variable monomial overlap minor is not supported"
                    )
                v = info.vec.index(1)
                if v in self.var_to_chart:
                    raise SodkitError("two charts invert the same coordinate")
                self.var_to_chart[v] = (b, info.unit)
            else:
                if self.q is not None:
                    raise SodkitError("anchor with two binomial overlap minors")
                self.q, self.q_pos = info, b
        if self.q is not None:
            w = [0] * len(self.var_weights[0])
            for i, e in enumerate(self.q.m1):
                for _ in range(e):
                    w = [a + b for a, b in zip(w, self.var_weights[i])]
            self.wty = tuple(-a for a in w)
        # Smith form of the weight matrix, for solving v . weights = target
        n = len(self.var_weights[0]) if self.var_weights else 0
        W = ExactMatrix(
            [[self.var_weights[j][i] for j in range(self.nv)] for i in range(n)]
        )
        self._wU, self._wD, self._wV = smith_normal_form(W)
        self._wrank = sum(
            1
            for i in range(min(self._wD.rows, self._wD.cols))
            if self._wD[i, i] != 0
        )
        self._wker = [
            tuple(self._wV[i, j] for i in range(self.nv))
            for j in range(self._wrank, self.nv)
        ]
        self._wsolve_cache: dict = {}

    def solve_weight(self, target) -> tuple | None:
        """One integer v with sum v_i * var_weight_i = target, or None."""
        got = self._wsolve_cache.get(target, False)
        if got is not False:
            return got
        n = len(target)
        ub = [
            sum(self._wU[i, j] * target[j] for j in range(n)) for i in range(n)
        ]
        y = [0] * self.nv
        sol: tuple | None = tuple()
        for i in range(n):
            d = self._wD[i, i] if i < min(self._wD.rows, self._wD.cols) else 0
            if d != 0:
                if ub[i] % d:
                    sol = None
                    break
                y[i] = ub[i] // d
            elif ub[i] != 0:
                sol = None
                break
        if sol is not None:
            sol = tuple(
                sum(self._wV[i, j] * y[j] for j in range(self.nv))
                for i in range(self.nv)
            )
        self._wsolve_cache[target] = sol
        return sol

    def key_weight(self, key) -> tuple[int, ...]:
        got = self._wt_cache.get(key)
        if got is not None:
            return got
        v, e = key
        n = len(self.var_weights[0]) if self.var_weights else 0
        w = [0] * n
        for i, a in enumerate(v):
            if a:
                for j in range(n):
                    w[j] += a * self.var_weights[i][j]
        if e:
            for j in range(n):
                w[j] += e * self.wty[j]
        out = tuple(w)
        self._wt_cache[key] = out
        return out


class _Locale:
    """Normal form of the localized ring of one chart tuple.

    The ring is F[x][1/x_i : i in inv_vars][y]/(y*q - 1) on the tuple's
    anchor.  Which monomial keys (v, e) form a basis depends on how the two
    monomials of q = c1*x^m1 + c2*x^m2 sit relative to the inverted
    variables:

    * some m1 variable stays polynomial: reduce keys with e >= 1 that reach
      m1 on those variables (y*x^m1 -> (1 - c2*y*x^m2)/c1);
    * m1 fully inverted but not m2: the mirrored rule on the m2 side;
    * both fully inverted: q = x^m1 * (c1 + c2*x^t) with t = m2 - m1 a unit
      direction, so each y-power carries a whole x^t-line of dependent keys;
      a basis takes one representative per line, pinned by a window
      0 <= v[i0] < |t[i0]| on a fixed pivot variable i0.

    Divisibility on inverted variables is vacuous, which is why the anchor
    alone cannot own the normal form: a key can be reduced in one tuple and
    basic in a smaller one.
    """

    __slots__ = ("ctx", "anchor", "inv_vars", "has_q", "meta", "mode",
                 "p1", "p2", "i0", "window", "_norm", "_phi", "_psi", "_xi",
                 "_transport")

    def __init__(self, ctx, anchor: int, inv_vars: frozenset, has_q: bool):
        self.ctx = ctx
        self.anchor = anchor
        self.inv_vars = inv_vars
        self.has_q = has_q
        self.meta = ctx.charts[anchor]
        q = self.meta.q
        if not has_q or q is None:
            self.mode = "free"
        else:
            self.p1 = tuple(
                i for i, x in enumerate(q.m1) if x and i not in inv_vars
            )
            self.p2 = tuple(
                i for i, x in enumerate(q.m2) if x and i not in inv_vars
            )
            if self.p1:
                self.mode = "m1"
            elif self.p2:
                self.mode = "m2"
            else:
                t = tuple(a - b for a, b in zip(q.m2, q.m1))
                self.i0 = next(i for i, x in enumerate(t) if x)
                self.window = abs(t[self.i0])
                self.mode = "window"
        self._norm: dict = {}
        self._phi: dict = {}
        self._psi: dict = {}
        self._xi: dict = {}
        self._transport: dict = {}

    def is_normal(self, key) -> bool:
        v, e = key
        if e == 0:
            return True
        q = self.meta.q
        mode = self.mode
        if mode == "m1":
            return not all(v[i] >= q.m1[i] for i in self.p1)
        if mode == "m2":
            return not all(v[i] >= q.m2[i] for i in self.p2)
        if mode == "window":
            return 0 <= v[self.i0] < self.window
        return False  # e > 0 cannot appear without q ("free")

    def _rewrite(self, key):
        """One rewrite step: key -> [(key', scale)] summing to the same ring
        element, strictly closer to normal form."""
        v, e = key
        F = self.ctx.F
        q = self.meta.q
        m1, m2 = q.m1, q.m2
        use_m2 = self.mode == "m2"
        if self.mode == "window":
            t0 = m2[self.i0] - m1[self.i0]
            # pick the side that moves v[i0] back toward the window
            use_m2 = (v[self.i0] >= self.window) == (t0 > 0)
        if use_m2:
            lead, trail, cl, ct = m2, m1, q.c2, q.c1
        else:
            lead, trail, cl, ct = m1, m2, q.c1, q.c2
        inv = F.inv(F.coerce(cl))
        dropped = tuple(a - b for a, b in zip(v, lead))
        swapped = tuple(a + b for a, b in zip(dropped, trail))
        return (
            ((dropped, e - 1), inv),
            ((swapped, e), F.neg(F.mul(inv, F.coerce(ct)))),
        )

    def normalize(self, key, coeff, out: dict):
        """Accumulate coeff * key into out over the locale's basis."""
        F = self.ctx.F
        if self.is_normal(key):
            prev = out.get(key)
            s = F.add(prev, coeff) if prev is not None else coeff
            if F.is_zero(s):
                out.pop(key, None)
            else:
                out[key] = s
            return
        cached = self._norm.get(key)
        if cached is None:
            cached = {}
            for kk, c in self._rewrite(key):
                self.normalize(kk, c, cached)
            self._norm[key] = cached
        for kk, c in cached.items():
            v = F.mul(coeff, c)
            prev = out.get(kk)
            s = F.add(prev, v) if prev is not None else v
            if F.is_zero(s):
                out.pop(kk, None)
            else:
                out[kk] = s


# -- shared per-(k, n, field) context ---------------------------------------


class _Context:
    def __init__(self, k: int, n: int, F: RingSpec):
        if not F.is_field:
            raise InvalidDims("cech cohomology is computed over a field")
        self.k, self.n, self.F = k, n, F
        self.atlas = atlas(k, n, F)
        m = len(self.atlas.charts)
        self.m = m
        self.L = k * (n - k)
        if self.L > m - 1:
            raise InvalidDims("chart cover too small for the cohomology range")
        self.charts = [_ChartMeta(self, a) for a in range(m)]
        for a in range(m):
            for b in range(a + 1, m):
                pd = self.atlas.pair(a, b)
                info = _classify_minor(pd.minor, k * (n - k))
                self.charts[a].minors[b] = info
        for meta in self.charts:
            meta.finalize()
        # tuples per level, with face data
        self.tuples: list[list[tuple[int, ...]]] = [
            [tuple(t) for t in combinations(range(m), p + 1)]
            for p in range(self.L + 2)
        ]
        self.tuple_pos = [
            {t: i for i, t in enumerate(lev)} for lev in self.tuples
        ]
        self.faces: list[list[list[tuple[int, int, int]]]] = []
        for p in range(self.L + 1):
            per_level = []
            for t in self.tuples[p]:
                fl = []
                if p + 1 < len(self.tuples):
                    ts = set(t)
                    for c in range(m):
                        if c in ts:
                            continue
                        sigma = tuple(sorted(t + (c,)))
                        j = sigma.index(c)
                        fl.append((c, j, self.tuple_pos[p + 1][sigma]))
                per_level.append(fl)
            self.faces.append(per_level)
        self._locales: dict = {}
        self._keys_cache: dict = {}
        self._gkeys_cache: dict = {}
        self._wkeys_cache: dict = {}
        self._wline_cache: dict = {}
        self._phi_expansions: dict = {}

    def locale(self, anchor: int, inv_vars: frozenset, has_q: bool) -> _Locale:
        lk = (anchor, inv_vars, has_q)
        got = self._locales.get(lk)
        if got is None:
            got = _Locale(self, anchor, inv_vars, has_q)
            self._locales[lk] = got
        return got

    # -- combo arithmetic (combo: dict key -> field element) --

    def combo_mul(self, loc: _Locale, a: dict, b: dict) -> dict:
        F = self.F
        out: dict = {}
        for (v1, e1), c1 in a.items():
            for (v2, e2), c2 in b.items():
                key = (tuple(x + y for x, y in zip(v1, v2)), e1 + e2)
                loc.normalize(key, F.mul(c1, c2), out)
        return out

    def expand_locfrac(self, anchor: int, other: int, fr: LocFrac) -> dict:
        """Expansion of a fraction over the (anchor, other) pair localization
        into raw anchor keys (normalization happens at the point of use,
        where the target tuple's locale is known)."""
        F = self.F
        info = self.charts[anchor].minors[other]
        j = fr.den[0] if fr.den else 0
        out: dict = {}

        def add(key, cc):
            prev = out.get(key)
            s = F.add(prev, cc) if prev is not None else cc
            if F.is_zero(s):
                out.pop(key, None)
            else:
                out[key] = s

        for mono, c in fr.num.items():
            cc = F.coerce(c)
            if j == 0:
                add((mono, 0), cc)
            elif info.kind == "mono":
                u_inv = F.inv(F.coerce(info.unit))
                for _ in range(j):
                    cc = F.mul(cc, u_inv)
                add((tuple(a - j * b for a, b in zip(mono, info.vec)), 0), cc)
            else:
                add((mono, j), cc)
        return out

    def _phi_expansion(self, a: int, b: int):
        got = self._phi_expansions.get((a, b))
        if got is None:
            pd = self.atlas.pair(a, b)
            got = [self.expand_locfrac(a, b, f) for f in pd.phi]
            self._phi_expansions[(a, b)] = got
        return got

    def _one(self, loc: _Locale) -> dict:
        return {(tuple([0] * self.charts[loc.anchor].nv), 0): self.F.one()}

    def _phi_pow(self, loc: _Locale, b: int, i: int, p: int) -> dict:
        key = (b, i, p)
        got = loc._phi.get(key)
        if got is None:
            if p == 0:
                got = self._one(loc)
            else:
                got = self.combo_mul(
                    loc,
                    self._phi_pow(loc, b, i, p - 1),
                    self._phi_expansion(loc.anchor, b)[i],
                )
            loc._phi[key] = got
        return got

    def _minor_inverse_combo(self, a: int, c: int) -> dict:
        """1/d_{a,c} as a raw anchor-a combo."""
        F = self.F
        info = self.charts[a].minors[c]
        if info.kind == "mono":
            key = (tuple(-x for x in info.vec), 0)
            return {key: F.inv(F.coerce(info.unit))}
        nv = self.charts[a].nv
        return {(tuple([0] * nv), 1): F.one()}

    def _minor_combo(self, a: int, c: int) -> dict:
        F = self.F
        info = self.charts[a].minors[c]
        if info.kind == "mono":
            return {(info.vec, 0): F.coerce(info.unit)}
        return {(info.m1, 0): F.coerce(info.c1), (info.m2, 0): F.coerce(info.c2)}

    def _psi_pow(self, loc: _Locale, b: int, i: int, p: int) -> dict:
        """(1/phi(x^b_i))^p: needs chart b to invert x_i toward its unique chart."""
        key = (b, i, p)
        got = loc._psi.get(key)
        if got is None:
            if p == 0:
                got = self._one(loc)
            else:
                F = self.F
                a = loc.anchor
                cb, unit = self.charts[b].var_to_chart[i]
                # 1/x^b_i = unit / d_{b,cb}; phi(d_{b,cb}) = d_{a,cb} / d_{a,b}
                base = self.combo_mul(
                    loc, self._minor_combo(a, b), self._minor_inverse_combo(a, cb)
                )
                base = {k: F.mul(F.coerce(unit), v) for k, v in base.items()}
                got = self.combo_mul(loc, self._psi_pow(loc, b, i, p - 1), base)
            loc._psi[key] = got
        return got

    def _xi_pow(self, loc: _Locale, b: int, p: int) -> dict:
        """(1/phi(q_b))^p = (d_{a,b}/d_{a,opp(b)})^p as an anchor-a combo."""
        key = (b, p)
        got = loc._xi.get(key)
        if got is None:
            if p == 0:
                got = self._one(loc)
            else:
                a = loc.anchor
                qb_pos = self.charts[b].q_pos
                base = self.combo_mul(
                    loc, self._minor_combo(a, b), self._minor_inverse_combo(a, qb_pos)
                )
                got = self.combo_mul(loc, self._xi_pow(loc, b, p - 1), base)
            loc._xi[key] = got
        return got

    def transport(self, loc: _Locale, b: int, key) -> dict:
        """Rewrite an anchor-b key over the target locale (whose anchor joins
        the tuple) through the pair transition."""
        got = loc._transport.get((b, key))
        if got is None:
            v, e = key
            out = self._one(loc)
            for i, x in enumerate(v):
                if x > 0:
                    out = self.combo_mul(loc, out, self._phi_pow(loc, b, i, x))
                elif x < 0:
                    out = self.combo_mul(loc, out, self._psi_pow(loc, b, i, -x))
            if e:
                out = self.combo_mul(loc, out, self._xi_pow(loc, b, e))
            got = out
            loc._transport[(b, key)] = got
        return got

    # -- seed enumeration (geometry-keyed, bundle independent) --

    def keys_new_at(self, anchor: int, inv_vars: frozenset, has_q: bool, B: int):
        sig = (anchor, inv_vars, has_q, B)
        got = self._keys_cache.get(sig)
        if got is not None:
            return got
        meta = self.charts[anchor]
        loc = self.locale(anchor, inv_vars, has_q)
        nv = meta.nv
        inv_list = sorted(inv_vars)
        out = []

        def neg_parts(idx, acc):
            if idx == len(inv_list):
                yield dict(acc)
                return
            for val in range(B + 1):
                acc[inv_list[idx]] = val
                yield from neg_parts(idx + 1, acc)
            acc.pop(inv_list[idx], None)

        def pos_parts(vars_left, budget):
            if not vars_left:
                yield {}
                return
            head, *rest = vars_left
            for val in range(budget + 1):
                for tail in pos_parts(rest, budget - val):
                    if val:
                        tail = dict(tail)
                        tail[head] = val
                    yield tail

        e_range = range(B + 1) if has_q else range(1)
        for negs in neg_parts(0, {}):
            neg_used = {i for i, x in negs.items() if x > 0}
            free = [i for i in range(nv) if i not in neg_used]
            maxneg = max((x for x in negs.values()), default=0)
            for pos in pos_parts(free, B):
                tot = sum(pos.values())
                for e in e_range:
                    if max(maxneg, tot, e) != B:
                        continue
                    v = [0] * nv
                    for i, x in negs.items():
                        v[i] = -x
                    for i, x in pos.items():
                        v[i] = x
                    key = (tuple(v), e)
                    if e and not loc.is_normal(key):
                        continue
                    out.append(key)
        out.sort()
        got = tuple(out)
        self._keys_cache[sig] = got
        return got

    def metric(self, key) -> int:
        v, e = key
        neg = 0
        pos = 0
        for x in v:
            if x < 0:
                if -x > neg:
                    neg = -x
            else:
                pos += x
        return max(e, neg, pos)

    def keys_by_weight(self, anchor: int, inv_vars: frozenset, has_q: bool, m: int):
        """keys_new_at grouped by anchor key weight (the bulk ingestion path
        touches each weight group once instead of each key)."""
        sig = (anchor, inv_vars, has_q, m)
        got = self._gkeys_cache.get(sig)
        if got is None:
            wt = self.charts[anchor].key_weight
            groups: dict = {}
            for key in self.keys_new_at(anchor, inv_vars, has_q, m):
                groups.setdefault(wt(key), []).append(key)
            got = {w: tuple(ks) for w, ks in groups.items()}
            self._gkeys_cache[sig] = got
            # the flat list is redundant next to the grouped one
            self._keys_cache.pop(sig, None)
        return got

    def _key_ok(self, loc: _Locale, v, e, m) -> bool:
        maxneg = 0
        pos = 0
        inv_vars = loc.inv_vars
        for i, x in enumerate(v):
            if x < 0:
                if i not in inv_vars:
                    return False
                if -x > maxneg:
                    maxneg = -x
            else:
                pos += x
        if max(maxneg, pos, e) != m:
            return False
        return not e or loc.is_normal((v, e))

    def keys_of_weight(self, anchor: int, inv_vars: frozenset, has_q: bool, nu, m: int):
        """All keys of the given anchor weight with metric exactly m."""
        sig = (anchor, inv_vars, has_q, nu, m)
        got = self._wkeys_cache.get(sig)
        if got is not None:
            return got
        meta = self.charts[anchor]
        loc = self.locale(anchor, inv_vars, has_q)
        out = []
        e_range = range(m + 1) if (has_q and meta.q is not None) else range(1)
        for e in e_range:
            if meta.wty is not None and e:
                target = tuple(a - e * b for a, b in zip(nu, meta.wty))
            else:
                target = nu
            v0 = meta.solve_weight(target)
            if v0 is None:
                continue
            if not meta._wker:
                if self._key_ok(loc, v0, e, m):
                    out.append((v0, e))
                continue
            (u,) = meta._wker
            sig2 = (anchor, inv_vars, has_q, nu, e)
            st = self._wline_cache.get(sig2)
            if st is None:
                st = _WLine(self, loc, v0, u, e)
                self._wline_cache[sig2] = st
            out.extend(st.at(m))
        out.sort()
        got = tuple(out)
        self._wkeys_cache[sig] = got
        return got


class _WLine:
    """Incremental key enumeration along a rank-one weight-kernel line.

    The metric is an integer convex function of the line parameter, so
    {t : metric <= m} is an interval that widens with m; each new metric
    only adds short tails (at most one new t per side per metric once past
    the minimum plateau), instead of a full rescan."""

    __slots__ = ("ctx", "loc", "v0", "u", "e", "lo", "hi", "fmin",
                 "covered", "by_m")

    def __init__(self, ctx, loc, v0, u, e):
        self.ctx = ctx
        self.loc = loc
        self.v0 = tuple(v0)
        self.u = tuple(u)
        self.e = e
        f = self._f
        t = 0
        if f(t - 1) < f(t):
            d = -1
        elif f(t + 1) < f(t):
            d = 1
        else:
            d = 0
        if d:
            while f(t + d) < f(t):
                t += d
        self.fmin = f(t)
        lo = hi = t
        while f(lo - 1) == self.fmin:
            lo -= 1
        while f(hi + 1) == self.fmin:
            hi += 1
        self.lo, self.hi = lo, hi
        self.covered = self.fmin - 1
        self.by_m: dict = {}

    def _f(self, t) -> int:
        neg = 0
        pos = 0
        for a, b in zip(self.v0, self.u):
            x = a + t * b
            if x < 0:
                if -x > neg:
                    neg = -x
            else:
                pos += x
        return max(self.e, neg, pos)

    def at(self, m):
        """Valid keys of metric exactly m on this line."""
        while self.covered < m:
            mm = self.covered + 1
            ts = []
            if mm == self.fmin:
                ts.extend(range(self.lo, self.hi + 1))
            elif mm > self.fmin:
                f = self._f
                while f(self.lo - 1) <= mm:
                    self.lo -= 1
                    ts.append(self.lo)
                while f(self.hi + 1) <= mm:
                    self.hi += 1
                    ts.append(self.hi)
            if ts:
                keys = []
                v0, u, e = self.v0, self.u, self.e
                for t in ts:
                    v = tuple(a + t * b for a, b in zip(v0, u))
                    if self.ctx._key_ok(self.loc, v, e, mm):
                        keys.append((v, e))
                if keys:
                    keys.sort()
                    self.by_m[mm] = tuple(keys)
            self.covered = mm
        return self.by_m.get(m, ())


_CONTEXTS: dict = {}


def _context(k: int, n: int, F: RingSpec) -> _Context:
    key = (k, n, F)
    if key not in _CONTEXTS:
        _CONTEXTS[key] = _Context(k, n, F)
    return _CONTEXTS[key]


# -- sparse echelon with optional combination tracking ----------------------


class _Echelon:
    def __init__(self, F: RingSpec, track: bool = False):
        self.F = F
        self.track = track
        self.cols: dict = {}   # pivot id -> (column dict, combo dict | None)
        self.rank = 0

    def insert(self, col: dict, tag=None):
        """Reduce col against the echelon.  Returns None if it extended the
        echelon, else the zero-reduction combination over inserted tags."""
        F = self.F
        combo = {tag: F.one()} if self.track else None
        col = dict(col)
        while col:
            p = max(col)
            hit = self.cols.get(p)
            if hit is None:
                inv = F.inv(col[p])
                col = {i: F.mul(inv, c) for i, c in col.items()}
                if self.track:
                    combo = {t: F.mul(inv, c) for t, c in combo.items()}
                self.cols[p] = (col, combo)
                self.rank += 1
                return None
            pc, pcombo = hit
            f = col[p]
            for i, c in pc.items():
                cur = col.get(i)
                vnew = F.sub(cur, F.mul(f, c)) if cur is not None else F.neg(F.mul(f, c))
                if F.is_zero(vnew):
                    col.pop(i, None)
                else:
                    col[i] = vnew
            if self.track:
                for t, c in pcombo.items():
                    cur = combo.get(t)
                    vnew = F.sub(cur, F.mul(f, c)) if cur is not None else F.neg(F.mul(f, c))
                    if F.is_zero(vnew):
                        combo.pop(t, None)
                    else:
                        combo[t] = vnew
        return combo if self.track else {}


class _Tower:
    """Chain data of one torus weight.

    Per level: a coordinate table shared by seeds and boundary targets, the
    incremental echelon dS of seed boundaries, the stored boundary columns
    landing at that level (bnd) and the kernel combinations over seed tags
    (z), both tagged by the metric that produced them, and the rank history
    of dS per sealed metric (s_hist).  M is the highest ingested metric.
    """

    __slots__ = ("eng", "lam", "index", "rev", "seed_metric", "dS", "bnd",
                 "z", "s_hist", "M", "_nu", "_im_cache", "_stall_cache")

    def __init__(self, eng, lam, born: int):
        self.eng = eng
        self.lam = lam
        L = eng.ctx.L
        self.index = [dict() for _ in range(L + 2)]
        self.rev = [[] for _ in range(L + 2)]
        self.seed_metric = [dict() for _ in range(L + 1)]
        self.dS = [_Echelon(eng.F, track=True) for _ in range(L + 1)]
        self.bnd = [[] for _ in range(L + 2)]
        self.z = [[] for _ in range(L + 1)]
        self.s_hist = [dict() for _ in range(L + 1)]
        # highest ingested metric, per seed level (a stalled level only needs
        # the one level below it, so levels advance independently)
        self.M = [born - 1] * (L + 1)
        self._nu: dict = {}
        self._im_cache: dict = {}
        self._stall_cache: dict = {}

    def coord(self, p, c) -> int:
        got = self.index[p].get(c)
        if got is None:
            got = len(self.rev[p])
            self.index[p][c] = got
            self.rev[p].append(c)
        return got

    def nu(self, anchor, r):
        """Key weight a level seed of component r must have on this anchor."""
        got = self._nu.get((anchor, r))
        if got is None:
            got = tuple(
                x - y for x, y in zip(self.lam, self.eng._U[anchor][r])
            )
            self._nu[(anchor, r)] = got
        return got

    def take(self, m, p, ti, r, keys):
        eng = self.eng
        metric = eng.ctx.metric
        for key in keys:
            sid = self.coord(p, (ti, r, key))
            self.seed_metric[p][sid] = m
            col = eng._boundary_column(self, p, ti, r, key)
            if col and p + 1 <= eng.ctx.L:
                for cid in col:
                    shift = m - metric(self.rev[p + 1][cid][2])
                    if shift > eng._dmax:
                        eng._dmax = shift
                    elif -shift > eng._umax:
                        eng._umax = -shift
                self.bnd[p + 1].append((m, col))
            combo = self.dS[p].insert(col, tag=sid)
            if combo is not None:
                self.z[p].append((m, combo))

    def seal(self, m):
        for p in range(self.eng.ctx.L + 1):
            if self.M[p] == m - 1:
                self.s_hist[p][m] = self.dS[p].rank
                self.M[p] = m

    def ensure_level(self, p: int, B: int):
        """Ingest this tower's own level-p seeds up to metric B, without
        touching the other towers or levels (used when a stalled level pulls
        its feeding level past the engine's globally pushed metric)."""
        eng = self.eng
        ctx = eng.ctx
        geo = eng._geometry[p]
        while self.M[p] < B:
            m = self.M[p] + 1
            for ti in range(len(geo)):
                loc = geo[ti]
                for r in range(eng.rank):
                    keys = ctx.keys_of_weight(
                        loc.anchor, loc.inv_vars, loc.has_q, self.nu(loc.anchor, r), m
                    )
                    if keys:
                        self.take(m, p, ti, r, keys)
            self.s_hist[p][m] = self.dS[p].rank
            self.M[p] = m

    def ensure(self, B: int):
        for p in range(self.eng.ctx.L + 1):
            self.ensure_level(p, B)

    def _brank(self, p, B) -> int:
        hist = self.s_hist[p]
        got = hist.get(B)
        if got is not None:
            return got
        for st in range(B - 1, -1, -1):
            if st in hist:
                return hist[st]
        return 0

    def imdim(self, p, D, B) -> int:
        """dim im(H^p(C_D) -> H^p(C_B)) within this weight."""
        if p:
            self.ensure_level(p - 1, B)
        got = self._im_cache.get((p, D, B))
        if got is None:
            ech = _Echelon(self.eng.F)
            for mt, c in self.z[p]:
                if mt <= D:
                    ech.insert(c)
            for mt, c in self.bnd[p]:
                if mt <= B:
                    ech.insert(c)
            got = ech.rank - (self._brank(p - 1, B) if p else 0)
            self._im_cache[(p, D, B)] = got
        return got

    def stall_im(self, p, D) -> int:
        """Escalate the boundary bound past D+1 until the image dimension
        stalls.

        The dimension is non-increasing in the bound and only moves when new
        boundary data arrives in this tower, so metrics that bring nothing
        relevant never consume patience.  A kill can telescope over many flat
        arrivals before the last piece lands (each new column may open a
        coordinate at a higher metric; the circle closes only once the chain
        stops climbing), so patience scales with the measured metric spread
        between a seed and its boundary keys."""
        got = self._stall_cache.get((p, D))
        if got is not None:
            return got
        eng = self.eng
        ech = _Echelon(eng.F)
        for mt, c in self.z[p]:
            if mt <= D:
                ech.insert(c)
        if ech.rank == 0 or p == 0:
            # level 0 has no boundaries; the image dimension is exact
            self._stall_cache[(p, D)] = ech.rank
            return ech.rank
        self.ensure_level(p - 1, D + 1)
        bnd = self.bnd[p]
        ptr = 0
        b = D + 1
        while ptr < len(bnd) and bnd[ptr][0] <= b:
            ech.insert(bnd[ptr][1])
            ptr += 1
        val = ech.rank - self._brank(p - 1, b)
        quiet = 0
        idle = 0
        hard = b + 4 * (eng._dmax + eng._umax + 2)
        while val and quiet < max(8, eng._dmax + eng._umax + 4) and b < hard:
            b += 1
            before = (len(bnd), self._brank(p - 1, b - 1))
            self.ensure_level(p - 1, b)
            after = (len(bnd), self._brank(p - 1, b))
            if after != before:
                idle = 0
                while ptr < len(bnd) and bnd[ptr][0] <= b:
                    ech.insert(bnd[ptr][1])
                    ptr += 1
                cur = ech.rank - self._brank(p - 1, b)
                if cur < val:
                    val = cur
                    quiet = 0
                else:
                    quiet += 1
            else:
                idle += 1
                if idle > eng._dmax + eng._umax + 2:
                    break
        self._stall_cache[(p, D)] = val
        return val


# -- the engine --------------------------------------------------------------


class CechEngine:
    def __init__(self, E: BundleCocycle, F: RingSpec, shard: bool = False):
        if E.atlas.ring != F:
            raise ChartMismatch("bundle atlas ring does not match the requested field")
        ctx = _context(E.atlas.k, E.atlas.n, F)
        if ctx.atlas is not E.atlas:
            raise ChartMismatch("bundle was not built on the shared atlas")
        self.ctx = ctx
        self.F = F
        self.E = E
        self.rank = E.rank
        # coordinate permutations act on the atlas and commute with the
        # boundary, permuting the torus weights; with shard on, only one
        # tower per sorted-weight orbit is computed and its contribution is
        # scaled by the orbit size
        self.shard = shard
        self._entries: dict = {}
        for (a, b), g in E.transitions.items():
            self._entries[(a, b)] = [
                [ctx.expand_locfrac(a, b, g[i, j]) for j in range(g.cols)]
                for i in range(g.rows)
            ]
        self._U = self._infer_component_weights()
        self._w = self._orbit_shift() if shard else None
        self._geometry = [
            [self._tuple_geometry(p, ti) for ti in range(len(ctx.tuples[p]))]
            for p in range(ctx.L + 2)
        ]
        self._towers: dict = {}
        self._pushed = -1
        # max observed drop/rise from a seed's metric to a key in its
        # boundary; bounds how far past the frontier the killer of a junk
        # class can sit
        self._dmax = 2
        self._umax = 0

    def _orbit_shift(self):
        """The tower labels are gauged by anchoring one chart frame at weight
        zero, so a coordinate permutation sigma sends the tower of label lam
        to the tower of label sigma(lam + c) - c for a fixed shift c.  Summing
        each chart's component weights gives linear equations pinning
        w = rank * c (up to an all-ones shift, which sorting ignores); the
        guard checks the full symmetry before sharding relies on it."""
        ctx = self.ctx
        n = ctx.n
        R = self.rank
        sets = [ctx.atlas.charts[a].index_set for a in range(ctx.m)]
        pos = {s: a for a, s in enumerate(sets)}
        S = [
            tuple(sum(self._U[a][r][i] for r in range(R)) for i in range(n))
            for a in range(ctx.m)
        ]
        w = [0] * n
        for i in range(n - 1):
            lo, hi = i + 1, i + 2
            a = next(a for a, s in enumerate(sets) if lo in s and hi not in s)
            b = pos[tuple(sorted(hi if v == lo else v for v in sets[a]))]
            w[i + 1] = S[b][i] + w[i] - S[a][i + 1]
        for i in range(n - 1):
            lo, hi = i + 1, i + 2
            for a in range(ctx.m):
                b = pos[tuple(sorted(
                    hi if v == lo else (lo if v == hi else v) for v in sets[a]
                ))]
                va = [S[a][j] + w[j] for j in range(n)]
                va[i], va[i + 1] = va[i + 1], va[i]
                if va != [S[b][j] + w[j] for j in range(n)]:
                    raise SodkitError(
                        "transitions lack the coordinate-permutation symmetry "
                        "orbit sharding relies on"
                    )
        return tuple(w)

    def _label(self, lam):
        w = self._w
        R = self.rank
        return tuple(R * x + y for x, y in zip(lam, w))

    def _is_rep(self, lam) -> bool:
        v = self._label(lam)
        return all(v[i] >= v[i + 1] for i in range(len(v) - 1))

    def _orbit_size(self, lam) -> int:
        v = self._label(lam)
        size = factorial(len(v))
        run = 1
        for i in range(1, len(v)):
            if v[i] == v[i - 1]:
                run += 1
            else:
                size //= factorial(run)
                run = 1
        return size // factorial(run)

    # component weights U[chart][r] with wt(g_ab[r][s]) = U[b][s] - U[a][r]
    def _infer_component_weights(self):
        ctx, F = self.ctx, self.F
        m, r = ctx.m, self.rank
        U: list = [[None] * r for _ in range(m)]
        edges: dict = {}
        for (a, b), rows in self._entries.items():
            for i in range(r):
                for j in range(r):
                    combo = rows[i][j]
                    if not combo:
                        continue
                    wts = {ctx.charts[a].key_weight(k) for k in combo}
                    if len(wts) != 1:
                        raise SodkitError(
                            "transition entry is not weight-homogeneous; "
                            "torus block decomposition unavailable"
                        )
                    edges.setdefault((a, i), []).append(((b, j), wts.pop()))
                    # reverse edge with negated weight
        # undirected propagation
        rev: dict = {}
        for (src, lst) in edges.items():
            for dst, w in lst:
                rev.setdefault(dst, []).append((src, tuple(-x for x in w)))
        n = ctx.n
        for a0 in range(m):
            for r0 in range(r):
                if U[a0][r0] is not None:
                    continue
                U[a0][r0] = tuple([0] * n)
                stack = [(a0, r0)]
                while stack:
                    node = stack.pop()
                    base = U[node[0]][node[1]]
                    for (dst, w) in edges.get(node, ()) :
                        val = tuple(x + y for x, y in zip(base, w))
                        cur = U[dst[0]][dst[1]]
                        if cur is None:
                            U[dst[0]][dst[1]] = val
                            stack.append(dst)
                        elif cur != val:
                            raise SodkitError("inconsistent torus weights on transitions")
                    for (dst, w) in rev.get(node, ()):
                        val = tuple(x + y for x, y in zip(base, w))
                        cur = U[dst[0]][dst[1]]
                        if cur is None:
                            U[dst[0]][dst[1]] = val
                            stack.append(dst)
                        elif cur != val:
                            raise SodkitError("inconsistent torus weights on transitions")
        return U

    def _tuple_geometry(self, p, ti) -> _Locale:
        ctx = self.ctx
        t = ctx.tuples[p][ti]
        anchor = t[0]
        meta = ctx.charts[anchor]
        inv_vars = []
        has_q = False
        for c in t[1:]:
            info = meta.minors[c]
            if info.kind == "mono":
                inv_vars.append(info.vec.index(1))
            else:
                has_q = True
        return ctx.locale(anchor, frozenset(inv_vars), has_q)

    def _boundary_column(self, tower: _Tower, p, ti, r, key):
        """Sparse boundary of the (tuple, component, key) cochain basis vector,
        as {tower coord id at level p+1: coeff}.  Every face lands in the
        bigger tuple's locale, so each contribution is renormalized there;
        a key normal for the source tuple need not stay normal once more
        charts (hence more invertible variables) join."""
        ctx, F = self.ctx, self.F
        anchor = ctx.tuples[p][ti][0]
        col: dict = {}

        def put(sigma_id, rr, combo):
            for kk, cf in combo.items():
                cid = tower.coord(p + 1, (sigma_id, rr, kk))
                cur = col.get(cid)
                s = F.add(cur, cf) if cur is not None else cf
                if F.is_zero(s):
                    col.pop(cid, None)
                else:
                    col[cid] = s

        for (c, j, sigma_id) in ctx.faces[p][ti]:
            loc_s = self._geometry[p + 1][sigma_id]
            sgn = F.one() if j % 2 == 0 else F.neg(F.one())
            if j >= 1:
                tmp: dict = {}
                loc_s.normalize(key, sgn, tmp)
                put(sigma_id, r, tmp)
            else:
                # c becomes the new anchor; transport through (c, anchor)
                moved = ctx.transport(loc_s, anchor, key)
                rows = self._entries[(c, anchor)]
                for rp in range(self.rank):
                    g_entry = rows[rp][r]
                    if not g_entry:
                        continue
                    prod = ctx.combo_mul(loc_s, g_entry, moved)
                    put(sigma_id, rp, prod)
        return col

    def _tower(self, lam, born: int) -> _Tower:
        got = self._towers.get(lam)
        if got is None:
            got = _Tower(self, lam, born)
            self._towers[lam] = got
        return got

    def push_metric(self, B: int):
        """Ingest every seed of metric <= B, routed to its weight tower."""
        ctx = self.ctx
        shard = self.shard
        rep = self._is_rep
        while self._pushed < B:
            m = self._pushed + 1
            for p in range(ctx.L + 1):
                geo = self._geometry[p]
                for ti in range(len(geo)):
                    loc = geo[ti]
                    groups = ctx.keys_by_weight(loc.anchor, loc.inv_vars, loc.has_q, m)
                    if not groups:
                        continue
                    U = self._U[loc.anchor]
                    for kw, keys in groups.items():
                        for r in range(self.rank):
                            lam = tuple(x + y for x, y in zip(kw, U[r]))
                            if shard and not rep(lam):
                                continue
                            tw = self._tower(lam, m)
                            if tw.M[p] < m:
                                tw.take(m, p, ti, r, keys)
            for tw in self._towers.values():
                tw.seal(m)
            self._pushed = m

    def reported(self, D: int):
        """Persistent-image dims at bound D, summed over weight towers.  A
        tower with no kernel element of metric <= D at a level contributes
        zero there and is skipped without rank work."""
        self.push_metric(D)
        L = self.ctx.L
        dims = [0] * (L + 1)
        for lam in sorted(self._towers):
            tw = self._towers[lam]
            mult = self._orbit_size(lam) if self.shard else 1
            for p in range(L + 1):
                if any(mt <= D for mt, _ in tw.z[p]):
                    dims[p] += mult * tw.stall_im(p, D)
        return dims


def cech_cohomology_dims(E: BundleCocycle, F: RingSpec, D: int, shard: bool = True):
    """Reported cohomology dims of E at bound D, plus the stabilization flag
    (dims at D agree with dims at D+1)."""
    if D < 0:
        raise InvalidDims("degree bound must be nonnegative")
    eng = CechEngine(E, F, shard=shard)
    dims = eng.reported(D)
    stab = dims == eng.reported(D + 1)
    return dims, stab


def boundary_squared_is_zero(E: BundleCocycle, F: RingSpec, D: int) -> bool:
    """Check d(d(seed)) = 0 exactly for every seed at metric <= D."""
    eng = CechEngine(E, F)
    eng.push_metric(D)
    ctx, F = eng.ctx, eng.F
    for tw in eng._towers.values():
        for p in range(ctx.L):
            for sid in list(tw.seed_metric[p]):
                ti, r, key = tw.rev[p][sid]
                col = eng._boundary_column(tw, p, ti, r, key)
                acc: dict = {}
                for cid, cf in col.items():
                    ti2, r2, key2 = tw.rev[p + 1][cid]
                    col2 = eng._boundary_column(tw, p + 1, ti2, r2, key2)
                    for cid2, cf2 in col2.items():
                        cur = acc.get(cid2)
                        v = F.mul(cf, cf2)
                        s = F.add(cur, v) if cur is not None else v
                        if F.is_zero(s):
                            acc.pop(cid2, None)
                        else:
                            acc[cid2] = s
                if acc:
                    return False
    return True


def truncation_euler_profile(E: BundleCocycle, F: RingSpec, D: int):
    """(sum (-1)^p dim C_D^p, chain dims, reported dims at D).

    dim C_D^p = #seeds_p(<=D) + rank of the boundary columns landing at level
    p restricted to the non-seed coordinates (the truncated complex is the
    seed span enlarged by the boundaries of the level below, so that it is
    closed under d)."""
    eng = CechEngine(E, F)
    eng.push_metric(D)
    ctx = eng.ctx
    chain_dims = []
    euler = 0
    for p in range(ctx.L + 1):
        dim = 0
        for tw in eng._towers.values():
            seeds = {s for s, mt in tw.seed_metric[p].items() if mt <= D}
            dim += len(seeds)
            ech = _Echelon(F)
            for mt, col in tw.bnd[p]:
                if mt > D:
                    continue
                flat = {cid: cf for cid, cf in col.items() if cid not in seeds}
                if flat:
                    ech.insert(flat)
            dim += ech.rank
        chain_dims.append(dim)
        euler += dim if p % 2 == 0 else -dim
    dims = eng.reported(D)
    return euler, chain_dims, dims


# -- RHom tables -------------------------------------------------------------


@dataclass
class RHomEntry:
    alpha: Partition
    beta: Partition
    dims: list[int]
    stabilized: bool
    bound: int


@dataclass
class RHomTable:
    k: int
    n: int
    field_label: str
    entries: dict
    semiorthogonal_ok: bool
    endomorphism_ok: bool
    all_stabilized: bool
    method: str
    violations: list


def _required_zero(alpha: Partition, beta: Partition) -> bool:
    return compare(alpha, beta) is Order.PRECEDES


def _default_bound(alpha: Partition, beta: Partition) -> int:
    return 2 + sum(alpha) + sum(beta)


def _escalation_ceiling(k: int, n: int, start: int) -> int:
    return max(start, 2 + 2 * k * (n - k))


def _run_cell(k, n, F, alpha, beta, D, ceiling=None, engines_cache=None):
    """dims/stabilization for Hom(W^alpha T, W^beta T), escalating the bound
    from D (or the per-cell default) up to the ceiling."""
    start = D if D is not None else _default_bound(alpha, beta)
    ceiling = (
        _escalation_ceiling(k, n, start) if ceiling is None else max(start, ceiling)
    )
    E = hom_cocycle(weyl_bundle(alpha, k, n, F), weyl_bundle(beta, k, n, F))
    eng = CechEngine(E, F, shard=True)
    d = start
    while True:
        dims = eng.reported(d)
        nxt = eng.reported(d + 1)
        if dims == nxt:
            return RHomEntry(alpha, beta, dims, True, d)
        if d >= ceiling:
            return RHomEntry(alpha, beta, nxt, False, d + 1)
        d += 1


def rhom_cell(
    k: int,
    n: int,
    F: RingSpec,
    alpha,
    beta,
    D: int | None = None,
    ceiling: int | None = None,
) -> RHomEntry:
    """Cohomology of the single Hom-bundle between two Weyl-functor bundles.

    Same bound policy as rhom_table: start at D (or 2 + |alpha| + |beta|)
    and escalate until the reported vector repeats at consecutive bounds or
    the ceiling is hit.
    """
    if not (0 < k < n):
        raise InvalidDims(f"need 0 < k < n, got k={k}, n={n}")
    return _run_cell(k, n, F, tuple(alpha), tuple(beta), D, ceiling)


def _rhom_cell_worker(args):
    k, n, field_label, alpha, beta, D, ceiling = args
    from .rings import ring_from_label

    F = ring_from_label(field_label)
    e = _run_cell(k, n, F, alpha, beta, D, ceiling)
    return (alpha, beta, e.dims, e.stabilized, e.bound)


def _assemble_table(k, n, field_label, cells, method) -> RHomTable:
    entries = {}
    violations = []
    semi_ok = True
    endo_ok = True
    allstab = True
    expected_len = k * (n - k) + 1
    for (alpha, beta, dims, stab, bound) in cells:
        entries[(alpha, beta)] = RHomEntry(alpha, beta, list(dims), stab, bound)
        if not stab:
            allstab = False
            continue  # unstabilized entries are excluded from verdicts
        assert len(dims) == expected_len
        if _required_zero(alpha, beta) and any(dims):
            semi_ok = False
            violations.append(("semiorthogonality", alpha, beta, list(dims)))
        if alpha == beta and dims != [1] + [0] * (expected_len - 1):
            endo_ok = False
            violations.append(("endomorphism", alpha, beta, list(dims)))
    return RHomTable(
        k, n, field_label, entries, semi_ok, endo_ok, allstab, method, violations
    )


def rhom_table(
    k: int,
    n: int,
    F: RingSpec,
    D: int | None = None,
    jobs: int = 1,
    ceiling: int | None = None,
) -> RHomTable:
    """Pairwise Hom-bundle cohomology table over the partition box.

    Over Q the table is computed modulo two fixed large primes; agreement of
    the two runs is accepted as the rational answer, disagreement falls back
    to exact rational arithmetic cell by cell.
    """
    if not (0 < k < n):
        raise InvalidDims(f"need 0 < k < n, got k={k}, n={n}")
    box = enumerate_box(k, n)
    pairs = [(a, b) for a in box for b in box]
    if F.kind == "Q":
        t1 = _rhom_single(k, n, GF(_FILTER_PRIMES[0]), pairs, D, jobs, ceiling)
        t2 = _rhom_single(k, n, GF(_FILTER_PRIMES[1]), pairs, D, jobs, ceiling)
        cells = []
        for (a, b) in pairs:
            e1, e2 = t1[(a, b)], t2[(a, b)]
            if (e1.dims, e1.stabilized) == (e2.dims, e2.stabilized):
                cells.append((a, b, e1.dims, e1.stabilized, e1.bound))
            else:
                e = _run_cell(k, n, QQ, a, b, D, ceiling)
                cells.append((a, b, e.dims, e.stabilized, e.bound))
        return _assemble_table(k, n, F.label, cells, "two-prime")
    table = _rhom_single(k, n, F, pairs, D, jobs, ceiling)
    cells = [
        (a, b, e.dims, e.stabilized, e.bound) for (a, b), e in table.items()
    ]
    return _assemble_table(k, n, F.label, cells, "direct")


def _rhom_single(k, n, F, pairs, D, jobs, ceiling=None):
    out = {}
    if jobs and jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        args = [(k, n, F.label, a, b, D, ceiling) for (a, b) in pairs]
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            for (alpha, beta, dims, stab, bound) in ex.map(_rhom_cell_worker, args):
                out[(alpha, beta)] = RHomEntry(alpha, beta, dims, stab, bound)
        return out
    for (a, b) in pairs:
        out[(a, b)] = _run_cell(k, n, F, a, b, D, ceiling)
    return out


@dataclass
class ExceptionalityReport:
    k: int
    n: int
    tables: dict
    passed: bool


def exceptionality_report(
    k: int,
    n: int,
    fields,
    D: int | None = None,
    jobs: int = 1,
    ceiling: int | None = None,
) -> ExceptionalityReport:
    tables = {}
    ok = True
    for F in fields:
        t = rhom_table(k, n, F, D, jobs, ceiling)
        tables[F.label] = t
        if not (t.semiorthogonal_ok and t.endomorphism_ok and t.all_stabilized):
            ok = False
    return ExceptionalityReport(k, n, tables, ok)
