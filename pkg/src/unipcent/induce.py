"""From a labeled subsystem base to the ambient labeled diagram.

The cocharacter of a {0,2}-labeled base is the unique solution of the pairing
equations inside the span of the base's coroots; its dominant form read on the
simple roots is the labeled (weighted) diagram of the induced unipotent class.
"""
from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .balacarter import LabeledSubDiagram
from .errors import InputError, InvariantViolation
from .pseudolevi import _check_subset, extended_diagram
from .rootsys import (
    CocharVec,
    RootSystem,
    RootVec,
    as_cochar,
    solve_cochar_for_base,
    to_dominant,
    zero_cochar,
)

LabeledDiagram = tuple[int, ...]


def cochar_for_labeled_base(
    rs: RootSystem, items: Iterable[tuple[RootVec, int]]
) -> CocharVec:
    """Solve for the cocharacter of a labeled base; must come out integral."""
    items = tuple(items)
    if not items:
        return zero_cochar(rs)
    base = [r for r, _ in items]
    targets = [l for _, l in items]
    lam = solve_cochar_for_base(rs, base, targets)
    if any(c.denominator != 1 for c in lam):
        raise InvariantViolation(
            f"cocharacter of labeled base {items} is not integral: {lam}"
        )
    return lam


def cochar_from_labels(
    rs: RootSystem,
    J: Iterable[int],
    labels: Mapping[RootVec, int] | LabeledSubDiagram,
) -> CocharVec:
    """Cocharacter of a {0,2}-labeling of the node subset J."""
    ext = extended_diagram(rs)
    J = _check_subset(ext, J)
    label_map = dict(labels if not isinstance(labels, Mapping) else labels.items())
    base = [ext.root_of[j] for j in J]
    if set(label_map) != set(base):
        raise InputError("labels must be given exactly on the roots of J")
    if any(v not in (0, 2) for v in label_map.values()):
        raise InputError("labels must lie in {0, 2}")
    return cochar_for_labeled_base(rs, tuple((b, label_map[b]) for b in base))


def induced_diagram(rs: RootSystem, lam: Sequence) -> LabeledDiagram:
    """Dominant pairings with the simple roots; must land in {0, 1, 2}."""
    lam = as_cochar(lam)
    if any(c.denominator != 1 for c in lam):
        raise InputError(f"cocharacter {lam} is not integral on the roots")
    dom, _ = to_dominant(rs, lam)
    labels = tuple(int(c) for c in dom)
    if any(v not in (0, 1, 2) for v in labels):
        raise InvariantViolation(
            f"induced labels {labels} leave {{0,1,2}}; upstream data is corrupt"
        )
    return labels
