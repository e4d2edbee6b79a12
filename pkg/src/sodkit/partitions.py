"""Partition combinatorics: box sets, the component order, tableau counts.

A partition is a tuple of weakly decreasing positive ints; () is the empty
partition.  The order used throughout the catalog modules compares first by
degree (total size) and breaks ties by *reverse* lexicographic order, so
within one degree (2) comes before (1,1).  Catalogs list components in the
opposite (descending) order.
"""

from __future__ import annotations

import enum
from functools import cache
from itertools import product
from math import factorial

from .errors import InvalidDims

Partition = tuple[int, ...]


def check_partition(alpha) -> Partition:
    a = tuple(int(x) for x in alpha)
    if any(x <= 0 for x in a):
        raise InvalidDims(f"partition parts must be positive: {a}")
    if any(a[i] < a[i + 1] for i in range(len(a) - 1)):
        raise InvalidDims(f"parts must be weakly decreasing: {a}")
    return a


def degree(alpha: Partition) -> int:
    return sum(alpha)


def transpose(alpha) -> Partition:
    """Conjugate partition: column lengths of the Young diagram."""
    a = check_partition(alpha)
    if not a:
        return ()
    return tuple(sum(1 for x in a if x >= j) for j in range(1, a[0] + 1))


class Order(enum.Enum):
    PRECEDES = "precedes"
    EQUALS = "equals"
    SUCCEEDS = "succeeds"


def compare(alpha, beta) -> Order:
    """Total order: lower degree first, then reverse-lex within a degree."""
    a, b = check_partition(alpha), check_partition(beta)
    if a == b:
        return Order.EQUALS
    if degree(a) != degree(b):
        return Order.PRECEDES if degree(a) < degree(b) else Order.SUCCEEDS
    # equal degree: the lex-larger partition comes first
    return Order.PRECEDES if a > b else Order.SUCCEEDS


def sort_key(alpha: Partition):
    """Sorting by this key lists partitions ascending in the order above."""
    return (degree(alpha), tuple(-x for x in alpha))


def _box_members(rows: int, cols: int) -> list[Partition]:
    out: list[Partition] = []

    def go(prefix: list[int], maxpart: int) -> None:
        out.append(tuple(prefix))
        if len(prefix) == rows:
            return
        for part in range(maxpart, 0, -1):
            prefix.append(part)
            go(prefix, part)
            prefix.pop()

    go([], cols)
    return sorted(out, key=sort_key)


def enumerate_box(k: int, n: int) -> list[Partition]:
    """Partitions with at most k rows and n−k columns, ascending order."""
    if k <= 0 or k >= n:
        raise InvalidDims(f"need 0 < k < n, got k={k} n={n}")
    return _box_members(k, n - k)


def enumerate_flag_tuples(ranks) -> list[tuple[Partition, ...]]:
    """Index tuples for a flag of subspace ranks ending at the ambient n.

    Position j runs over the box with at most ranks[j] rows and
    ranks[j+1] − ranks[j] columns.  Tuples come in dictionary order with
    the leftmost position most significant.
    """
    rs = [int(r) for r in ranks]
    if len(rs) < 2 or any(rs[i] >= rs[i + 1] for i in range(len(rs) - 1)) or rs[0] <= 0:
        raise InvalidDims(f"ranks must be strictly increasing positive: {rs}")
    boxes = [_box_members(rs[j], rs[j + 1] - rs[j]) for j in range(len(rs) - 1)]
    return [tuple(t) for t in product(*boxes)]


def flag_tuple_count(ranks) -> int:
    rs = [int(r) for r in ranks]
    total = factorial(rs[-1])
    prev = 0
    for r in rs:
        total //= factorial(r - prev)
        prev = r
    return total


def count_ssyt(alpha, n: int) -> int:
    """Number of semistandard fillings with entries in 1..n (rows weakly
    increase, columns strictly increase).  Zero when alpha has more than
    n rows."""
    if n < 0:
        raise InvalidDims(f"alphabet size must be >= 0, got {n}")
    return _count_ssyt(check_partition(alpha), n)


@cache
def _count_ssyt(a: Partition, n: int) -> int:
    if not a:
        return 1
    if len(a) > n:
        return 0

    # row by row; each row is a weakly increasing word bounded below by the
    # previous row shifted up by one (column strictness)
    def rows_from(idx: int, lower: tuple[int, ...]) -> int:
        if idx == len(a):
            return 1
        width = a[idx]
        total = 0

        def fill(col: int, minval: int, word: list[int]) -> None:
            nonlocal total
            if col == width:
                total += rows_from(idx + 1, tuple(word))
                return
            lo = max(minval, lower[col] + 1 if col < len(lower) else 1)
            for v in range(lo, n + 1):
                word.append(v)
                fill(col + 1, v, word)
                word.pop()

        fill(0, 1, [])
        return total

    return rows_from(0, ())


def hook_content_count(alpha: Partition, n: int) -> int:
    """Independent tableau count via the hook content formula."""
    a = check_partition(alpha)
    if not a:
        return 1
    conj = transpose(a)
    num = 1
    den = 1
    for i, row in enumerate(a):
        for j in range(row):
            num *= n + j - i
            den *= (row - j) + (conj[j] - i) - 1
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError("hook content product failed to divide")
    return q
