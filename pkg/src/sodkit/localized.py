"""Multivariate polynomials and localizations at designated chart minors.

Polynomials are dicts mapping exponent tuples to nonzero coefficients, with
all coefficient arithmetic delegated to a :class:`RingSpec`.  A localized
fraction keeps its denominator implicitly, as a vector of exponents over the
localization's list of inverted polynomials; canonical form uses the minimal
exponents reachable by exact division.  Linear systems are solved by Cramer's
rule with fraction-free (Bareiss) determinants, so the only divisions happen
at the very end, where a denominator outside the localization is a contract
violation and raises.
"""

from __future__ import annotations

from typing import NamedTuple, Sequence

from .errors import DenominatorViolation, NoSolutionError
from .rings import QQ, RingSpec

Mono = tuple[int, ...]
Poly = dict  # Mono -> coefficient


class PolyRing:
    """Polynomial ring over a RingSpec with named variables."""

    def __init__(self, ring: RingSpec, names: Sequence[str]):
        self.ring = ring
        self.names = tuple(names)
        self.nvars = len(self.names)
        self._zero_mono = (0,) * self.nvars

    def __repr__(self):
        return f"PolyRing({self.ring.label}, {list(self.names)})"

    def zero(self) -> Poly:
        return {}

    def const(self, c) -> Poly:
        c = self.ring.coerce(c)
        return {} if self.ring.is_zero(c) else {self._zero_mono: c}

    def one(self) -> Poly:
        return self.const(1)

    def var(self, i: int) -> Poly:
        e = [0] * self.nvars
        e[i] = 1
        return {tuple(e): self.ring.one()}

    def monomial(self, exps: Mono, c=1) -> Poly:
        c = self.ring.coerce(c)
        return {} if self.ring.is_zero(c) else {tuple(exps): c}

    def is_zero(self, p: Poly) -> bool:
        return not p

    def add(self, p: Poly, q: Poly) -> Poly:
        out = dict(p)
        R = self.ring
        for m, c in q.items():
            s = R.add(out.get(m, 0), c)
            if R.is_zero(s):
                out.pop(m, None)
            else:
                out[m] = s
        return out

    def neg(self, p: Poly) -> Poly:
        R = self.ring
        return {m: R.neg(c) for m, c in p.items()}

    def sub(self, p: Poly, q: Poly) -> Poly:
        return self.add(p, self.neg(q))

    def scale(self, c, p: Poly) -> Poly:
        R = self.ring
        c = R.coerce(c)
        if R.is_zero(c):
            return {}
        out = {}
        for m, v in p.items():
            w = R.mul(c, v)
            if not R.is_zero(w):
                out[m] = w
        return out

    def mul_mono(self, p: Poly, exps: Mono, c=1) -> Poly:
        R = self.ring
        c = R.coerce(c)
        if R.is_zero(c) or not p:
            return {}
        return {
            tuple(a + b for a, b in zip(m, exps)): R.mul(c, v)
            for m, v in p.items()
        }

    def mul(self, p: Poly, q: Poly) -> Poly:
        R = self.ring
        if not p or not q:
            return {}
        out: Poly = {}
        for m1, c1 in p.items():
            for m2, c2 in q.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = R.add(out.get(m, 0), R.mul(c1, c2))
                if R.is_zero(s):
                    out.pop(m, None)
                else:
                    out[m] = s
        return out

    def pow(self, p: Poly, e: int) -> Poly:
        out = self.one()
        for _ in range(e):
            out = self.mul(out, p)
        return out

    def total_degree(self, p: Poly) -> int:
        return max((sum(m) for m in p), default=0)

    def evaluate(self, p: Poly, values):
        R = self.ring
        acc = R.zero()
        vals = [R.coerce(v) for v in values]
        for m, c in p.items():
            term = c
            for i, e in enumerate(m):
                for _ in range(e):
                    term = R.mul(term, vals[i])
            acc = R.add(acc, term)
        return acc

    def partial(self, p: Poly, i: int) -> Poly:
        R = self.ring
        out: Poly = {}
        for m, c in p.items():
            if m[i] == 0:
                continue
            coeff = R.mul(c, R.coerce(m[i]))
            if R.is_zero(coeff):
                continue
            e = list(m)
            e[i] -= 1
            out[tuple(e)] = coeff
        return out

    def subs(self, p: Poly, images: Sequence[Poly], target: "PolyRing") -> Poly:
        """Substitute target-ring polynomials for this ring's variables."""
        out = target.zero()
        powers: list[dict[int, Poly]] = [{0: target.one()} for _ in range(self.nvars)]

        def pw(i, e):
            cache = powers[i]
            if e not in cache:
                cache[e] = target.mul(pw(i, e - 1), images[i])
            return cache[e]

        for m, c in p.items():
            term = target.const(c)
            for i, e in enumerate(m):
                if e:
                    term = target.mul(term, pw(i, e))
            out = target.add(out, term)
        return out

    def divide_exact(self, p: Poly, d: Poly) -> Poly | None:
        """Quotient p/d when d divides p exactly, else None."""
        if not d:
            raise ZeroDivisionError("division by zero polynomial")
        R = self.ring
        lead = max(d)
        lc = d[lead]
        rem = dict(p)
        quot: Poly = {}
        while rem:
            m = max(rem)
            diff = tuple(a - b for a, b in zip(m, lead))
            if any(e < 0 for e in diff):
                return None
            if R.kind == "Z":
                if rem[m] % lc:
                    return None
                c = rem[m] // lc
            else:
                c = R.mul(rem[m], R.inv(lc))
            quot[diff] = c
            rem = self.sub(rem, self.mul_mono(d, diff, c))
        return quot

    def to_string(self, p: Poly) -> str:
        if not p:
            return "0"
        parts = []
        for m in sorted(p, reverse=True):
            c = p[m]
            factors = [
                self.names[i] if e == 1 else f"{self.names[i]}^{e}"
                for i, e in enumerate(m)
                if e
            ]
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            elif c == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append(f"{c}*" + "*".join(factors))
        s = " + ".join(parts)
        return s.replace("+ -", "- ")


class LocFrac(NamedTuple):
    num: Poly
    den: tuple[int, ...]  # exponent per inverted element


class Localization:
    """A polynomial ring with a fixed list of inverted polynomials."""

    def __init__(self, pring: PolyRing, inverted: Sequence[Poly]):
        self.pring = pring
        self.inverted = tuple(dict(d) for d in inverted)
        self.nden = len(self.inverted)

    def __repr__(self):
        dens = ", ".join(self.pring.to_string(d) for d in self.inverted)
        return f"Localization({self.pring!r}; inverted=[{dens}])"

    def zero(self) -> LocFrac:
        return LocFrac({}, (0,) * self.nden)

    def one(self) -> LocFrac:
        return LocFrac(self.pring.one(), (0,) * self.nden)

    def from_poly(self, p: Poly) -> LocFrac:
        return LocFrac(dict(p), (0,) * self.nden)

    def const(self, c) -> LocFrac:
        return self.from_poly(self.pring.const(c))

    def is_zero(self, f: LocFrac) -> bool:
        return not f.num

    def canonical(self, f: LocFrac) -> LocFrac:
        num, den = dict(f.num), list(f.den)
        if not num:
            return self.zero()
        for i, d in enumerate(self.inverted):
            while den[i] > 0:
                q = self.pring.divide_exact(num, d)
                if q is None:
                    break
                num = q
                den[i] -= 1
        return LocFrac(num, tuple(den))

    def _common(self, a: LocFrac, b: LocFrac):
        den = tuple(max(x, y) for x, y in zip(a.den, b.den))
        pa, pb = dict(a.num), dict(b.num)
        for i, d in enumerate(self.inverted):
            for _ in range(den[i] - a.den[i]):
                pa = self.pring.mul(pa, d)
            for _ in range(den[i] - b.den[i]):
                pb = self.pring.mul(pb, d)
        return pa, pb, den

    def add(self, a: LocFrac, b: LocFrac) -> LocFrac:
        pa, pb, den = self._common(a, b)
        return self.canonical(LocFrac(self.pring.add(pa, pb), den))

    def sub(self, a: LocFrac, b: LocFrac) -> LocFrac:
        pa, pb, den = self._common(a, b)
        return self.canonical(LocFrac(self.pring.sub(pa, pb), den))

    def neg(self, a: LocFrac) -> LocFrac:
        return LocFrac(self.pring.neg(a.num), a.den)

    def mul(self, a: LocFrac, b: LocFrac) -> LocFrac:
        num = self.pring.mul(a.num, b.num)
        den = tuple(x + y for x, y in zip(a.den, b.den))
        return self.canonical(LocFrac(num, den))

    def scale(self, c, a: LocFrac) -> LocFrac:
        return LocFrac(self.pring.scale(c, a.num), a.den)

    def eq(self, a: LocFrac, b: LocFrac) -> bool:
        return self.is_zero(self.sub(a, b))

    def invert(self, f: LocFrac) -> LocFrac:
        """Inverse of a unit c·Π d_i^{g_i}; DenominatorViolation otherwise."""
        if not f.num:
            raise ZeroDivisionError("inverting zero")
        num = dict(f.num)
        strip = [0] * self.nden
        for i, d in enumerate(self.inverted):
            while True:
                q = self.pring.divide_exact(num, d)
                if q is None:
                    break
                num = q
                strip[i] += 1
        if len(num) != 1 or any(e for e in next(iter(num))):
            raise DenominatorViolation(
                f"not a unit in the localization: {self.pring.to_string(f.num)}"
            )
        c = next(iter(num.values()))
        inv_num = self.pring.const(self.pring.ring.inv(c))
        for i, d in enumerate(self.inverted):
            for _ in range(f.den[i]):
                inv_num = self.pring.mul(inv_num, d)
        return self.canonical(LocFrac(inv_num, tuple(strip)))

    def div(self, a: LocFrac, b: LocFrac) -> LocFrac:
        return self.mul(a, self.invert(b))

    def convert(self, f: LocFrac, src: "Localization") -> LocFrac:
        """Reinterpret a fraction from a localization at a sublist of our
        inverted elements (matched by polynomial equality)."""
        positions = []
        for d in src.inverted:
            for j, e in enumerate(self.inverted):
                if d == e:
                    positions.append(j)
                    break
            else:
                raise ValueError("source inverted element not present here")
        den = [0] * self.nden
        for pos, exp in zip(positions, f.den):
            den[pos] += exp
        return LocFrac(dict(f.num), tuple(den))

    def subs_poly(self, p: Poly, src: PolyRing, images: Sequence[LocFrac]) -> LocFrac:
        """Evaluate a src-ring polynomial at fraction images of its variables."""
        out = self.zero()
        powers: list[dict[int, LocFrac]] = [{0: self.one()} for _ in range(src.nvars)]

        def pw(i, e):
            cache = powers[i]
            if e not in cache:
                cache[e] = self.mul(pw(i, e - 1), images[i])
            return cache[e]

        for m, c in p.items():
            term = self.const(c)
            for i, e in enumerate(m):
                if e:
                    term = self.mul(term, pw(i, e))
            out = self.add(out, term)
        return out

    def to_string(self, f: LocFrac) -> str:
        num = self.pring.to_string(f.num)
        dens = [
            f"({self.pring.to_string(d)})^{e}" if e > 1 else f"({self.pring.to_string(d)})"
            for d, e in zip(self.inverted, f.den)
            if e > 0
        ]
        return num if not dens else f"({num})/({'*'.join(dens)})"


class LocalizedPolyMatrix:
    """Matrix over a localization; rows of LocFrac entries."""

    __slots__ = ("loc", "entries", "rows", "cols")

    def __init__(self, loc: Localization, entries):
        self.loc = loc
        self.entries = tuple(tuple(e) for e in entries)
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.entries else 0

    @classmethod
    def identity(cls, loc: Localization, n: int) -> "LocalizedPolyMatrix":
        return cls(loc, [[loc.one() if i == j else loc.zero() for j in range(n)] for i in range(n)])

    @classmethod
    def from_polys(cls, loc: Localization, rows) -> "LocalizedPolyMatrix":
        return cls(loc, [[loc.from_poly(p) for p in row] for row in rows])

    @property
    def variables(self):
        return self.loc.pring.names

    @property
    def inverted_elements(self):
        return self.loc.inverted

    def __getitem__(self, ij):
        return self.entries[ij[0]][ij[1]]

    def transpose(self) -> "LocalizedPolyMatrix":
        return LocalizedPolyMatrix(self.loc, list(zip(*self.entries)))

    def mul(self, other: "LocalizedPolyMatrix") -> "LocalizedPolyMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        loc = self.loc
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = loc.zero()
                for t in range(self.cols):
                    acc = loc.add(acc, loc.mul(self.entries[i][t], other.entries[t][j]))
                row.append(acc)
            out.append(row)
        return LocalizedPolyMatrix(loc, out)

    def equals(self, other: "LocalizedPolyMatrix") -> bool:
        if (self.rows, self.cols) != (other.rows, other.cols):
            return False
        loc = self.loc
        return all(
            loc.eq(a, b)
            for ra, rb in zip(self.entries, other.entries)
            for a, b in zip(ra, rb)
        )

    def determinant(self) -> LocFrac:
        if self.rows != self.cols:
            raise ValueError("determinant of non-square matrix")
        return _det_locfrac(self.loc, self.entries)

    def adjugate(self) -> "LocalizedPolyMatrix":
        n = self.rows
        loc = self.loc
        if n == 1:
            return LocalizedPolyMatrix(loc, [[loc.one()]])
        out = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                minor = [
                    [self.entries[r][c] for c in range(n) if c != j]
                    for r in range(n)
                    if r != i
                ]
                cof = _det_locfrac(loc, minor)
                if (i + j) % 2:
                    cof = loc.neg(cof)
                out[j][i] = cof
        return LocalizedPolyMatrix(loc, out)

    def inverse(self) -> "LocalizedPolyMatrix":
        det_inv = self.loc.invert(self.determinant())
        adj = self.adjugate()
        return LocalizedPolyMatrix(
            self.loc,
            [[self.loc.mul(det_inv, e) for e in row] for row in adj.entries],
        )


def _det_locfrac(loc: Localization, rows) -> LocFrac:
    n = len(rows)
    if n == 0:
        return loc.one()
    if n == 1:
        return rows[0][0]
    acc = loc.zero()
    for j in range(n):
        e = rows[0][j]
        if loc.is_zero(e):
            continue
        minor = [[row[c] for c in range(n) if c != j] for row in rows[1:]]
        term = loc.mul(e, _det_locfrac(loc, minor))
        acc = loc.add(acc, term) if j % 2 == 0 else loc.sub(acc, term)
    return acc


def solve_in_localization(A: LocalizedPolyMatrix, B: LocalizedPolyMatrix) -> LocalizedPolyMatrix:
    """X with A·X = B, X over the localization.

    A must have full column rank over the fraction field.  Works by Cramer's
    rule on a row subset with symbolically nonzero maximal minor; remaining
    rows are checked for consistency (NoSolutionError otherwise).  A result
    entry whose denominator is not a permitted minor raises
    DenominatorViolation.
    """
    loc = A.loc
    n, r = A.rows, A.cols
    if B.rows != n:
        raise ValueError("shape mismatch")
    # greedy pivot-row selection by symbolic rank
    pivot_rows: list[int] = []
    for i in range(n):
        if len(pivot_rows) == r:
            break
        trial = pivot_rows + [i]
        sub = [[A.entries[t][j] for j in range(r)] for t in trial]
        if _symbolic_row_rank(loc, sub) == len(trial):
            pivot_rows.append(i)
    if len(pivot_rows) < r:
        raise NoSolutionError("coefficient matrix is column-rank deficient")
    S = [[A.entries[t][j] for j in range(r)] for t in pivot_rows]
    det_S = _det_locfrac(loc, S)
    out = [[None] * B.cols for _ in range(r)]
    for jb in range(B.cols):
        rhs = [B.entries[t][jb] for t in pivot_rows]
        for jx in range(r):
            repl = [
                [rhs[t] if c == jx else S[t][c] for c in range(r)]
                for t in range(r)
            ]
            out[jx][jb] = loc.div(_det_locfrac(loc, repl), det_S)
    X = LocalizedPolyMatrix(loc, out)
    # consistency of the remaining rows
    rest = [i for i in range(n) if i not in pivot_rows]
    for i in rest:
        for jb in range(B.cols):
            acc = loc.zero()
            for t in range(r):
                acc = loc.add(acc, loc.mul(A.entries[i][t], X.entries[t][jb]))
            if not loc.eq(acc, B.entries[i][jb]):
                raise NoSolutionError("inconsistent system over the localization")
    return X


def _symbolic_row_rank(loc: Localization, rows) -> int:
    """Rank over the fraction field via fraction-free elimination on
    denominator-cleared rows."""
    pring = loc.pring
    cleared = []
    for row in rows:
        den = tuple(max(e.den[i] for e in row) for i in range(loc.nden))
        newrow = []
        for e in row:
            p = dict(e.num)
            for i, d in enumerate(loc.inverted):
                for _ in range(den[i] - e.den[i]):
                    p = pring.mul(p, d)
            newrow.append(p)
        cleared.append(newrow)
    m = len(cleared)
    ncols = len(cleared[0]) if m else 0
    rank = 0
    row_idx = 0
    for col in range(ncols):
        piv = next(
            (i for i in range(row_idx, m) if cleared[i][col]),
            None,
        )
        if piv is None:
            continue
        cleared[row_idx], cleared[piv] = cleared[piv], cleared[row_idx]
        pv = cleared[row_idx][col]
        for i in range(row_idx + 1, m):
            f = cleared[i][col]
            if f:
                cleared[i] = [
                    pring.sub(pring.mul(pv, cleared[i][j]), pring.mul(f, cleared[row_idx][j]))
                    for j in range(ncols)
                ]
        rank += 1
        row_idx += 1
    return rank


def poly_ring(names: Sequence[str], ring: RingSpec = QQ) -> PolyRing:
    return PolyRing(ring, names)
