"""Extended diagram, subsystem closure, enumeration, torsion, witnesses."""
import itertools
from fractions import Fraction

import pytest

from unipcent import (
    CartanType,
    InputError,
    alcove_reduce,
    build_root_system,
    canonical_subsystem,
    classify_factors,
    coroot,
    enumerate_pseudolevis,
    extended_diagram,
    good_inheritance_check,
    lattice_root_closure,
    point_order,
    subsystem_base,
    subsystem_closure,
    torsion_order,
    witness_element,
)
from unipcent.oracle import span_quotient_torsion
from unipcent.pseudolevi import base_components
from unipcent.rootsys import all_roots, pairing


def rs_of(name):
    return build_root_system(CartanType.parse(name))


def reflection_closure(rs, seeds):
    """Independent route: close the seed roots under their own reflections."""
    current = set(seeds)
    grew = True
    while grew:
        grew = False
        for g in list(current):
            for b in list(current):
                cb = coroot(rs, b)
                p = sum(x * y for x, y in zip(g, cb))
                image = tuple(gi - p * bi for gi, bi in zip(g, b))
                if image not in current:
                    current.add(image)
                    grew = True
    return frozenset(current)


def test_extended_diagram_basics():
    a1 = rs_of("A1")
    ext = extended_diagram(a1)
    assert len(ext.root_of) == 2
    assert ext.mark_of == (1, 1)
    assert ext.root_of[1] == (-1,)

    g2 = rs_of("G2")
    ext = extended_diagram(g2)
    assert sorted(ext.mark_of) == [1, 2, 3]

    for name in ("A3", "B4", "E6"):
        rs = rs_of(name)
        ext = extended_diagram(rs)
        total = [0] * rs.rank
        for root, mark in zip(ext.root_of, ext.mark_of):
            total = [t + mark * c for t, c in zip(total, root)]
        assert not any(total)


def test_extended_a_n_is_a_cycle():
    for n in (2, 3, 5):
        rs = rs_of(f"A{n}")
        ext = extended_diagram(rs)
        nodes = list(ext.nodes)
        degree = {v: 0 for v in nodes}
        for a, b in itertools.combinations(nodes, 2):
            if pairing(ext.root_of[a], coroot(rs, ext.root_of[b])) != 0:
                degree[a] += 1
                degree[b] += 1
        assert all(d == 2 for d in degree.values())


def test_subsystem_closure_basics():
    a2 = rs_of("A2")
    ext = extended_diagram(a2)
    assert subsystem_closure(ext, ()) == frozenset()
    assert subsystem_closure(ext, (0, 1)) == all_roots(a2)
    assert subsystem_closure(ext, (0, 2)) == all_roots(a2)
    with pytest.raises(InputError):
        subsystem_closure(ext, (0, 1, 2))
    with pytest.raises(InputError):
        subsystem_closure(ext, (0, 5))


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "A3", "B3", "C3", "D4", "F4"])
def test_span_closure_equals_reflection_closure(name):
    rs = rs_of(name)
    ext = extended_diagram(rs)
    for size in range(rs.rank + 1):
        for J in itertools.combinations(range(rs.rank + 1), size):
            seeds = [ext.root_of[j] for j in J]
            assert subsystem_closure(ext, J) == reflection_closure(rs, seeds)


@pytest.mark.parametrize("name", ["A3", "B3", "G2", "F4"])
def test_node_subset_is_base_of_its_closure(name):
    rs = rs_of(name)
    ext = extended_diagram(rs)
    for size in range(rs.rank + 1):
        for J in itertools.combinations(range(rs.rank + 1), size):
            sub = subsystem_closure(ext, J)
            jroots = sorted(ext.root_of[j] for j in J)
            comps_j = [t for t, _ in base_components(rs, tuple(jroots))]
            comps_base = [t for t, _ in base_components(rs, subsystem_base(rs, sub))]
            assert sorted(comps_j) == sorted(comps_base)
            assert len(sub) == 2 * sum(
                len(build_root_system(t).positive_roots) for t in comps_j
            )


def test_classify_factors_examples():
    f4 = rs_of("F4")
    assert classify_factors(f4, frozenset()) == ()
    assert classify_factors(f4, all_roots(f4)) == (CartanType("F", 4),)
    g2 = rs_of("G2")
    ext = extended_diagram(g2)
    assert classify_factors(g2, subsystem_closure(ext, (0, 2))) == (
        CartanType("A", 1),
        CartanType("A", 1),
    )
    assert classify_factors(g2, subsystem_closure(ext, (1, 2))) == (CartanType("A", 2),)
    d4 = rs_of("D4")
    ext4 = extended_diagram(d4)
    assert classify_factors(d4, subsystem_closure(ext4, (0, 2, 3, 4))) == (
        CartanType("A", 1),
    ) * 4


def test_torsion_order_examples():
    g2 = rs_of("G2")
    ext = extended_diagram(g2)
    assert torsion_order(ext, (0, 1)) == 1  # J = S, affine mark is 1
    assert torsion_order(ext, ()) == 1
    assert torsion_order(ext, (1, 2)) == 3  # removes the mark-3 node
    assert torsion_order(ext, (0, 2)) == 2
    with pytest.raises(InputError):
        torsion_order(ext, (0, 1, 2))


@pytest.mark.parametrize("name", ["A1", "A2", "B2", "G2", "A3", "C3"])
def test_torsion_constant_on_classes(name):
    rs = rs_of(name)
    ext = extended_diagram(rs)
    by_class = {}
    for size in range(rs.rank + 1):
        for J in itertools.combinations(range(rs.rank + 1), size):
            sub = subsystem_closure(ext, J)
            by_class.setdefault(canonical_subsystem(rs, sub), set()).add(
                torsion_order(ext, J)
            )
    for orders in by_class.values():
        assert len(orders) == 1


def test_enumerate_small_types():
    assert len(enumerate_pseudolevis(rs_of("A1"))) == 2
    a2 = enumerate_pseudolevis(rs_of("A2"))
    assert [pl.factor_types for pl in a2] == [
        (),
        (CartanType("A", 1),),
        (CartanType("A", 2),),
    ]
    g2 = enumerate_pseudolevis(rs_of("G2"))
    assert len(g2) == 6
    types = [pl.factor_types for pl in g2]
    assert types.count((CartanType("A", 1), CartanType("A", 1))) == 1
    assert types.count((CartanType("A", 2),)) == 1
    # Levi representatives preferred: the full system is represented by J = S.
    full = [pl for pl in g2 if len(pl.subsystem) == 12]
    assert full[0].J == (0, 1)


def test_e8_torsion_five_and_six_classes():
    e8 = rs_of("E8")
    pls = enumerate_pseudolevis(e8)
    a4a4 = [pl for pl in pls if pl.factor_types == (CartanType("A", 4),) * 2]
    assert len(a4a4) == 1 and a4a4[0].dJ == 5
    order6 = [pl for pl in pls if pl.dJ == 6]
    assert len(order6) == 1
    assert order6[0].factor_types == (
        CartanType("A", 1),
        CartanType("A", 2),
        CartanType("A", 5),
    )
    assert max(pl.dJ for pl in pls) == 6


def test_representative_prefers_simple_nodes():
    for name in ("A3", "B3", "C3"):
        rs = rs_of(name)
        aff = rs.rank
        for pl in enumerate_pseudolevis(rs):
            if aff in pl.J:
                # no member of the class avoids the affine node
                ext = extended_diagram(rs)
                canon = canonical_subsystem(rs, pl.subsystem)
                for size in range(len(pl.J) + 1):
                    for K in itertools.combinations(range(rs.rank), size):
                        sub = subsystem_closure(ext, K)
                        if len(sub) != len(pl.subsystem):
                            continue
                        assert canonical_subsystem(rs, sub) != canon


def test_witness_identity_case():
    a2 = rs_of("A2")
    vec = witness_element(a2, (0, 1), 0)
    assert vec == (Fraction(0), Fraction(0))
    _, walls = alcove_reduce(a2, vec)
    assert walls == frozenset((0, 1))


def test_witness_g2_order_three():
    g2 = rs_of("G2")
    vec = witness_element(g2, (1, 2), 5)  # removes the mark-3 node
    assert point_order(vec) == 3
    _, walls = alcove_reduce(g2, vec)
    assert walls == frozenset((1, 2))


def test_witness_f4_two_nodes_removed():
    f4 = rs_of("F4")
    J = (0, 1, 4)  # affine node kept, two simple nodes removed
    vec = witness_element(f4, J, 0)
    _, walls = alcove_reduce(f4, vec)
    assert walls == frozenset(J)
    order = point_order(vec)
    assert order > 1
    # the auxiliary prime divides the order (affine construction, >1 node removed)
    assert any(order % ell == 0 for ell in (2, 3, 5, 7, 11, 13))


def test_witness_rejects_bad_characteristic():
    g2 = rs_of("G2")
    with pytest.raises(InputError):
        witness_element(g2, (0, 1), 3)


def test_witness_unrealizable_wall_set():
    # removing a single mark-1 simple node spans the whole system, so the
    # requested wall set can never be certified; the search reports its bound
    from unipcent import WitnessSearchExhausted

    a2 = rs_of("A2")
    with pytest.raises(WitnessSearchExhausted) as info:
        witness_element(a2, (1, 2), 0)
    assert "1000" in str(info.value)


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "C3", "D4"])
@pytest.mark.parametrize("p", [0, 7])
def test_witness_round_trip_all_classes(name, p):
    rs = rs_of(name)
    for pl in enumerate_pseudolevis(rs):
        vec = witness_element(rs, pl.J, p)
        _, walls = alcove_reduce(rs, vec)
        assert walls == frozenset(pl.J)
        if p:
            assert point_order(vec) % p != 0


ALL_TYPES = (
    [f"A{r}" for r in range(1, 9)]
    + [f"B{r}" for r in range(2, 9)]
    + [f"C{r}" for r in range(2, 9)]
    + [f"D{r}" for r in range(3, 9)]
    + ["E6", "E7", "E8", "F4", "G2"]
)


@pytest.mark.parametrize("name", ALL_TYPES)
def test_good_inheritance_exhaustive(name):
    from unipcent import is_good_prime

    rs = rs_of(name)
    for pl in enumerate_pseudolevis(rs):
        for p in (0, 2, 3, 5, 7):
            if is_good_prime(rs, p):
                assert good_inheritance_check(rs, pl, p)


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "A3", "C3", "D4", "F4"])
def test_center_torsion_matches_lattice_quotient(name):
    """d_J equals the torsion of the span quotient, which is cyclic, and every
    residue class is hit by a root."""
    rs = rs_of(name)
    ext = extended_diagram(rs)
    for size in range(rs.rank + 1):
        for J in itertools.combinations(range(rs.rank + 1), size):
            d = torsion_order(ext, J)
            vectors = [ext.root_of[j] for j in J]
            torsion, U = span_quotient_torsion(vectors, rs.rank)
            total = 1
            for _, f in torsion:
                total *= f
            assert total == d
            from math import gcd

            for (_, f1), (_, f2) in itertools.combinations(torsion, 2):
                assert gcd(f1, f2) == 1  # cyclic quotient
            if d > 1:
                seen = set()
                for g in all_roots(rs):
                    coords = tuple(
                        sum(U[i][k] * g[k] for k in range(rs.rank)) % f
                        for i, f in torsion
                    )
                    seen.add(coords)
                assert len(seen) == d


def test_lattice_closure_is_weyl_stable():
    from unipcent.rootsys import reflect_root

    g2 = rs_of("G2")
    ext = extended_diagram(g2)
    for J in [(0,), (0, 2), (1, 2)]:
        seeds = [ext.root_of[j] for j in J]
        closed = lattice_root_closure(g2, seeds)
        for word in [(0,), (1,), (0, 1), (1, 0, 1)]:
            moved = seeds
            for i in word:
                moved = [reflect_root(g2, i, g) for g in moved]
            image = lattice_root_closure(g2, moved)
            expect = closed
            for i in word:
                expect = frozenset(reflect_root(g2, i, g) for g in expect)
            assert image == expect
