"""Named families of small semigroups used by the corpus and the searches."""
from __future__ import annotations

from functools import lru_cache

from .semigroup import (
    DEFAULT_CAPS, SemigroupTable, chain_semilattice, direct_product, enumerate_semigroups,
    null_semigroup, subset_meet_semilattice, zn_multiplicative,
)


@lru_cache(maxsize=None)
def enumerated(order: int) -> tuple[SemigroupTable, ...]:
    return tuple(enumerate_semigroups(order))


def catalog_semigroups(max_order: int, families: tuple[str, ...] = ("zn", "null", "chain",
                       "semilattice", "product", "enumerated"),
                       enum_max: int = DEFAULT_CAPS.enum_order) -> list[tuple[str, SemigroupTable]]:
    """Deterministically ordered ``(name, table)`` pairs of order <= ``max_order``.

    Families may overlap up to isomorphism; that only repeats work.
    """
    out: list[tuple[str, SemigroupTable]] = []
    if "zn" in families:
        out += [(f"Z{n}", zn_multiplicative(n)) for n in range(2, max_order + 1)]
    if "null" in families:
        out += [(f"null{n}", null_semigroup(n)) for n in range(2, max_order + 1)]
    if "chain" in families:
        out += [(f"chain{n}", chain_semilattice(n).base) for n in range(2, max_order + 1)]
    if "semilattice" in families:
        k = 1
        while 1 << k <= max_order:
            out.append((f"subsets{k}", subset_meet_semilattice(k).base))
            k += 1
    if "product" in families:
        for a in range(2, max_order + 1):
            for b in range(a, max_order // a + 1):
                out.append((f"Z{a}xZ{b}", direct_product(zn_multiplicative(a), zn_multiplicative(b))))
    if "enumerated" in families:
        for n in range(2, min(max_order, enum_max) + 1):
            out += [(f"enum{n}#{i}", S) for i, S in enumerate(enumerated(n))]
    return out
