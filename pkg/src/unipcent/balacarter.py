"""Distinguished unipotent classes of irreducible types and their products.

A distinguished class is encoded by its {0,2}-labeling of the simple roots;
the labeling is kept iff the centralizer dimension count balances:
#roots at pairing 0 plus the rank equals #roots at pairing 2.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import InputError
from .pseudolevi import base_components
from .rootsys import CartanType, RootSystem, RootVec, all_roots, build_root_system

LabeledSubDiagram = tuple[tuple[RootVec, int], ...]


def is_distinguished(rs_factor: RootSystem, labels: Sequence[int]) -> bool:
    """Dimension criterion for a {0,2}-labeling of an irreducible factor."""
    if len(labels) != rs_factor.rank:
        raise InputError("label vector length must match the rank")
    if any(v not in (0, 2) for v in labels):
        raise InputError(f"labels must lie in {{0, 2}}, got {tuple(labels)}")
    zero = two = 0
    for gamma in all_roots(rs_factor):
        val = sum(c * l for c, l in zip(gamma, labels))
        if val == 0:
            zero += 1
        elif val == 2:
            two += 1
    return zero + rs_factor.rank == two


@lru_cache(maxsize=None)
def distinguished_classes(ctype: CartanType) -> tuple[tuple[int, ...], ...]:
    """All distinguished {0,2}-labelings of an irreducible type, sorted."""
    rsf = build_root_system(ctype)
    out = [
        labels
        for labels in itertools.product((0, 2), repeat=ctype.rank)
        if is_distinguished(rsf, labels)
    ]
    return tuple(sorted(out))


@dataclass(frozen=True)
class DistinguishedClass:
    """A distinguished class of a product, one labeling per factor (audit dims kept)."""

    factors: tuple[CartanType, ...]
    per_factor: tuple[tuple[int, ...], ...]
    dim_g0: int
    dim_g2: int


def _factor_dims(ctype: CartanType, labels: Sequence[int]) -> tuple[int, int]:
    rsf = build_root_system(ctype)
    zero = two = 0
    for gamma in all_roots(rsf):
        val = sum(c * l for c, l in zip(gamma, labels))
        if val == 0:
            zero += 1
        elif val == 2:
            two += 1
    return zero + ctype.rank, two


def distinguished_classes_product(
    factors: Iterable[CartanType],
) -> tuple[DistinguishedClass, ...]:
    """Cartesian product of per-factor classes; no factors gives the trivial class."""
    factors = tuple(factors)
    per = [distinguished_classes(ct) for ct in factors]
    out = []
    for combo in itertools.product(*per):
        g0 = g2 = 0
        for ct, labels in zip(factors, combo):
            a, b = _factor_dims(ct, labels)
            g0 += a
            g2 += b
        out.append(DistinguishedClass(factors, tuple(combo), g0, g2))
    return tuple(out)


def distinguished_labelings_for_base(
    rs: RootSystem, base: Sequence[RootVec]
) -> tuple[LabeledSubDiagram, ...]:
    """Distinguished labelings of an ambient base, as (root, label) item tuples.

    The base is split into irreducible components, each matched to its
    standard type; the per-type labelings are pulled back along the match.
    The resulting set is independent of the matching chosen, since diagram
    automorphisms permute the distinguished labelings of a type.
    """
    comps = base_components(rs, tuple(base))
    per = [distinguished_classes(ct) for ct, _ in comps]
    out = []
    for combo in itertools.product(*per):
        items = []
        for (_, roots), labels in zip(comps, combo):
            items.extend(zip(roots, labels))
        out.append(tuple(sorted(items)))
    return tuple(sorted(out))
