"""Independent small-scale ground truth for tests and verification.

Three separate routes that never feed the main pipeline: rational alcove
points (subsystems found from points, not subsets), classical partition
combinatorics for types A-D, and brute-force Weyl orbits.  A Smith-form
utility exposes the torsion of the span quotient for the residue checks.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .errors import BudgetExceeded, InputError
from .induce import LabeledDiagram
from .pseudolevi import canonical_subsystem
from .rootsys import RootSystem, RootVec, all_roots, _dot


def default_denominator_bound(rs: RootSystem) -> int:
    """1 + sum of the marks: every alcove face holds a point of this denominator."""
    return 1 + sum(rs.marks)


def integrality_subsystem(rs: RootSystem, point: Sequence[Fraction]) -> frozenset[RootVec]:
    """Roots pairing integrally with the point; computed root by root."""
    return frozenset(
        g for g in all_roots(rs) if Fraction(_dot(g, point)).denominator == 1
    )


def _alcove_grid(rs: RootSystem, q: int):
    """Integer coefficient vectors c >= 0 with sum marks[i]*c[i] <= q."""
    n = rs.rank
    marks = rs.marks

    def rec(i: int, left: int, cur: list[int]):
        if i == n:
            yield tuple(cur)
            return
        step = marks[i]
        for c in range(left // step + 1):
            cur.append(c)
            yield from rec(i + 1, left - step * c, cur)
            cur.pop()

    yield from rec(0, q, [])


def alcove_points(rs: RootSystem, max_denominator: int) -> list[tuple[Fraction, ...]]:
    """All points of the closed fundamental alcove with denominator <= bound."""
    if max_denominator < 1:
        raise InputError("max_denominator must be >= 1")
    seen: set[tuple[Fraction, ...]] = set()
    for q in range(1, max_denominator + 1):
        for c in _alcove_grid(rs, q):
            point = tuple(Fraction(v, q) for v in c)
            seen.add(point)
    return sorted(seen)


def alcove_pseudolevis(rs: RootSystem, max_denominator: int) -> frozenset[tuple]:
    """Canonical forms of every integrality subsystem of a bounded-denominator point."""
    canon_of: dict[frozenset, tuple] = {}
    out = set()
    roots = sorted(all_roots(rs))
    for q in range(1, max_denominator + 1):
        for c in _alcove_grid(rs, q):
            sub = frozenset(g for g in roots if _dot(g, c) % q == 0)
            canon = canon_of.get(sub)
            if canon is None:
                canon = canonical_subsystem(rs, sub)
                canon_of[sub] = canon
            out.add(canon)
    return frozenset(out)


@dataclass(frozen=True)
class Partition:
    """A weakly decreasing tuple of positive parts."""

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(p < 1 for p in self.parts):
            raise InputError(f"parts must be positive: {self.parts}")
        if any(a < b for a, b in zip(self.parts, self.parts[1:])):
            raise InputError(f"parts must be weakly decreasing: {self.parts}")

    @property
    def total(self) -> int:
        return sum(self.parts)


def _partitions_of(n: int):
    def rec(left: int, biggest: int, cur: list[int]):
        if left == 0:
            yield tuple(cur)
            return
        for p in range(min(left, biggest), 0, -1):
            cur.append(p)
            yield from rec(left - p, p, cur)
            cur.pop()

    yield from rec(n, n, [])


def _admissible(family: str, parts: tuple[int, ...]) -> bool:
    counts: dict[int, int] = {}
    for p in parts:
        counts[p] = counts.get(p, 0) + 1
    if family == "A":
        return True
    if family in ("B", "D"):
        return all(c % 2 == 0 for p, c in counts.items() if p % 2 == 0)
    if family == "C":
        return all(c % 2 == 0 for p, c in counts.items() if p % 2 == 1)
    raise InputError(f"no partition classification for family {family!r}")


ORACLE_RANK_BOUND = 4


def classical_partitions(
    family: str, rank: int, rank_bound: int = ORACLE_RANK_BOUND
) -> tuple[Partition, ...]:
    """Admissible partitions for the classical family at the given rank."""
    if rank > rank_bound:
        raise InputError(f"partition oracle capped at rank {rank_bound}, got {rank}")
    n = {"A": rank + 1, "B": 2 * rank + 1, "C": 2 * rank, "D": 2 * rank}[family]
    return tuple(
        Partition(p) for p in sorted(_partitions_of(n), reverse=True)
        if _admissible(family, p)
    )


def distinguished_partitions(
    family: str, rank: int, rank_bound: int = ORACLE_RANK_BOUND
) -> tuple[Partition, ...]:
    """Partitions of distinguished classes: one part (A), odd distinct (B, D),
    even distinct (C)."""
    out = []
    for part in classical_partitions(family, rank, rank_bound):
        parts = part.parts
        if family == "A":
            ok = len(parts) == 1
        elif family in ("B", "D"):
            ok = len(set(parts)) == len(parts) and all(p % 2 == 1 for p in parts)
        else:
            ok = len(set(parts)) == len(parts) and all(p % 2 == 0 for p in parts)
        if ok:
            out.append(part)
    return tuple(out)


def _exponent_string(parts: tuple[int, ...]) -> list[int]:
    out: list[int] = []
    for p in parts:
        out.extend(range(p - 1, -p, -2))
    out.sort(reverse=True)
    return out


def partition_diagrams(
    family: str, rank: int, partition: Partition
) -> tuple[LabeledDiagram, ...]:
    """Labeled diagram(s) of the partition; two for the very even D cases."""
    h = _exponent_string(partition.parts)
    if family == "A":
        return (tuple(h[i] - h[i + 1] for i in range(rank)),)
    top = h[:rank]
    if family == "B":
        return (tuple(top[i] - top[i + 1] for i in range(rank - 1)) + (top[-1],),)
    if family == "C":
        return (tuple(top[i] - top[i + 1] for i in range(rank - 1)) + (2 * top[-1],),)
    if family == "D":
        body = tuple(top[i] - top[i + 1] for i in range(rank - 2))
        a, b = top[-2] - top[-1], top[-2] + top[-1]
        if a == b:
            return (body + (a, b),)
        return (body + (a, b), body + (b, a))
    raise InputError(f"no diagram recipe for family {family!r}")


def classical_nilpotent_classes(
    family: str, rank: int, rank_bound: int = ORACLE_RANK_BOUND
) -> tuple[tuple[Partition, LabeledDiagram], ...]:
    """All (partition, diagram) pairs; very even D partitions appear twice."""
    out = []
    for part in classical_partitions(family, rank, rank_bound):
        for diag in partition_diagrams(family, rank, part):
            out.append((part, diag))
    return tuple(out)


def brute_orbit(
    rs: RootSystem,
    seed,
    action: Callable[[RootSystem, int, object], object],
    budget: int = 2_000_000,
) -> frozenset:
    """Full breadth-first orbit of a state under the simple reflections."""
    seen = {seed}
    frontier = [seed]
    while frontier:
        nxt = []
        for state in frontier:
            for i in range(rs.rank):
                image = action(rs, i, state)
                if image not in seen:
                    if len(seen) >= budget:
                        raise BudgetExceeded(f"orbit budget {budget} exceeded")
                    seen.add(image)
                    nxt.append(image)
        frontier = nxt
    return frozenset(seen)


def act_cochar(rs: RootSystem, i: int, vec):
    from .rootsys import reflect_cochar

    return reflect_cochar(rs, i, vec)


def act_labeled_set(rs: RootSystem, i: int, items):
    from .rootsys import reflect_root

    return tuple(sorted((reflect_root(rs, i, r), l) for r, l in items))


def span_quotient_torsion(
    vectors: Sequence[RootVec], dim: int
) -> tuple[tuple[tuple[int, int], ...], list[list[int]]]:
    """Torsion data of Z^dim / span(vectors) by integer diagonalization.

    Returns (torsion, U): torsion lists (row index, diagonal entry) pairs with
    entry > 1, and U is the unimodular row transform, so the class of v in the
    quotient has torsion coordinates ((U v)[i] mod d) over those pairs.  The
    diagonal is not normalized to a divisibility chain; the torsion subgroup
    is the direct sum of Z/d over the returned pairs.
    """
    k = len(vectors)
    A = [[vectors[c][r] for c in range(k)] for r in range(dim)]
    U = [[1 if i == j else 0 for j in range(dim)] for i in range(dim)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def add_row(src, dst, mult):
        for c in range(k):
            A[dst][c] += mult * A[src][c]
        for c in range(dim):
            U[dst][c] += mult * U[src][c]

    def swap_cols(i, j):
        for r in range(dim):
            A[r][i], A[r][j] = A[r][j], A[r][i]

    def add_col(src, dst, mult):
        for r in range(dim):
            A[r][dst] += mult * A[r][src]

    t = 0
    while t < min(dim, k):
        pivot = None
        for r in range(t, dim):
            for c in range(t, k):
                if A[r][c] != 0 and (
                    pivot is None or abs(A[r][c]) < abs(A[pivot[0]][pivot[1]])
                ):
                    pivot = (r, c)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        for r in range(t + 1, dim):
            if A[r][t]:
                add_row(t, r, -(A[r][t] // A[t][t]))
        for c in range(t + 1, k):
            if A[t][c]:
                add_col(t, c, -(A[t][c] // A[t][t]))
        if any(A[r][t] for r in range(t + 1, dim)) or any(
            A[t][c] for c in range(t + 1, k)
        ):
            continue
        t += 1
    torsion = tuple(
        (i, abs(A[i][i])) for i in range(min(dim, k)) if abs(A[i][i]) > 1
    )
    return torsion, U
