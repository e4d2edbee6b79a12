"""Component catalogs of the standard semiorthogonal decompositions.

The derived category of Gr(k, n) splits into components indexed by the
partitions in the k x (n-k) box, listed here from the top of the
degree-then-reverse-lex order downward so that Homs between components run
strictly one way.  Partial flag varieties get one box per rank step with
the product order, and twisted forms of the Grassmannian reuse the same
labels with a twist grading and per-degree multiplicities.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .errors import InvalidDims, SodkitError
from .partitions import (
    Order,
    Partition,
    compare,
    degree,
    enumerate_box,
    enumerate_flag_tuples,
    flag_tuple_count,
)


@dataclass(frozen=True)
class SodCatalogEntry:
    """One component of a semiorthogonal decomposition catalog.

    ``position`` is 1 for the leftmost component.  ``label`` is a partition,
    or a tuple of partitions for a flag.  ``twist`` is the total degree of
    the label, which grades the twisted-sheaf forms.
    """

    position: int
    label: object
    kernel: str
    twist: int
    component_category: str


def _fmt_partition(a: Partition) -> str:
    return "(" + ",".join(str(x) for x in a) + ")"


def _as_tuple_label(label):
    if label and isinstance(label[0], tuple):
        return label
    return (label,)


def label_precedes(a, b) -> bool:
    """Strict order on labels: per-slot degree-then-reverse-lex, leftmost slot
    most significant.  Bare partitions count as one-slot labels."""
    sa, sb = _as_tuple_label(a), _as_tuple_label(b)
    if len(sa) != len(sb):
        raise InvalidDims("labels with different slot counts are not comparable")
    for x, y in zip(sa, sb):
        c = compare(x, y)
        if c is Order.PRECEDES:
            return True
        if c is Order.SUCCEEDS:
            return False
    return False


def validate_catalog(entries: list[SodCatalogEntry]) -> bool:
    """Positions are 1..N without gaps and labels strictly descend."""
    if [e.position for e in entries] != list(range(1, len(entries) + 1)):
        return False
    return all(
        label_precedes(nxt.label, cur.label)
        for cur, nxt in zip(entries, entries[1:])
    )


def _checked(entries: list[SodCatalogEntry]) -> list[SodCatalogEntry]:
    if not validate_catalog(entries):
        raise SodkitError("catalog ordering invariant failed")
    return entries


def grassmann_sod(k: int, n: int) -> list[SodCatalogEntry]:
    """Catalog for Gr(k, n): box partitions from the top order downward.

    The component at label alpha is generated by the Weyl-functor bundle of
    the tautological subbundle; there are C(n, k) components.
    """
    if not 0 < k < n:
        raise InvalidDims(f"need 0 < k < n, got k={k}, n={n}")
    labels = list(reversed(enumerate_box(k, n)))
    entries = [
        SodCatalogEntry(
            i + 1, a, f"W^{_fmt_partition(a)} T", degree(a), "Dqc(X)"
        )
        for i, a in enumerate(labels)
    ]
    if len(entries) != comb(n, k):
        raise SodkitError("box size does not match the binomial count")
    return _checked(entries)


def flag_sod(ranks) -> list[SodCatalogEntry]:
    """Catalog for the partial flag of the given subspace ranks.

    ``ranks`` is strictly increasing and ends at the ambient dimension; slot
    j of a label runs over the box of the j-th rank step, and the kernel is
    the tensor product of one Weyl-functor bundle per step.  A one-step
    flag reproduces the Grassmannian labels exactly.
    """
    rs = tuple(int(r) for r in ranks)
    tuples = list(reversed(enumerate_flag_tuples(rs)))
    entries = []
    for i, t in enumerate(tuples):
        kernel = " (x) ".join(
            f"W^{_fmt_partition(a)} S{j + 1}" for j, a in enumerate(t)
        )
        label = t[0] if len(t) == 1 else t
        entries.append(
            SodCatalogEntry(
                i + 1, label, kernel, sum(degree(a) for a in t), "Dqc(X)"
            )
        )
    if len(entries) != flag_tuple_count(rs):
        raise SodkitError("flag tuple count does not match the multinomial")
    return _checked(entries)


def severi_brauer_multiplicities(k: int, n: int) -> tuple[int, ...]:
    """Per-degree component counts for the twisted form: entry i is the
    number of box partitions of degree i, i = 0..k(n-k)."""
    if not 0 < k < n:
        raise InvalidDims(f"need 0 < k < n, got k={k}, n={n}")
    counts = [0] * (k * (n - k) + 1)
    for a in enumerate_box(k, n):
        counts[degree(a)] += 1
    return tuple(counts)


def _twist_category(i: int) -> str:
    if i == 0:
        return "D^b(K)"
    if i == 1:
        return "D^b(B)"
    return f"D^b(B^{i})"


def severi_brauer_sod(k: int, n: int) -> list[SodCatalogEntry]:
    """Catalog for a twisted form of Gr(k, n), grouped by twist.

    Labels and order match grassmann_sod; each component lands in modules
    over the twist-th tensor power of the underlying algebra, so entries
    with equal twist share a category and their count per degree is the
    box-partition count of that degree.
    """
    entries = [
        SodCatalogEntry(
            e.position, e.label, e.kernel, e.twist, _twist_category(e.twist)
        )
        for e in grassmann_sod(k, n)
    ]
    mults = severi_brauer_multiplicities(k, n)
    if sum(mults) != len(entries):
        raise SodkitError("twist multiplicities do not sum to the component count")
    return _checked(entries)
