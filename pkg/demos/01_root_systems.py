"""Build exact root systems and poke at their basic structure.

Roots live in simple-root coordinates (integer tuples); cocharacters in
fundamental-coweight coordinates (Fractions), so <root, cochar> is a dot
product. Run with: python demos/01_root_systems.py
"""
from fractions import Fraction

from unipcent import (
    CartanType,
    alcove_reduce,
    bad_primes,
    build_root_system,
    is_good_prime,
    to_dominant,
)

for name in ("A2", "B2", "G2", "F4", "E8"):
    rs = build_root_system(CartanType.parse(name))
    print(f"{name}: {len(rs.positive_roots)} positive roots, "
          f"marks {rs.marks}, bad primes {bad_primes(rs) or 'none'}")

g2 = build_root_system(CartanType.parse("G2"))
print()
print("G2 positive roots (coefficients on the simple basis):")
for gamma in g2.positive_roots:
    print("  ", gamma)

# p is good when it divides no mark; 7 is good for everything up to rank 8
print()
print("is 7 good for E8?", is_good_prime(build_root_system(CartanType.parse("E8")), 7))

# dominant reduction returns the reflection word it applied
lam = (Fraction(-3), Fraction(2))
dom, word = to_dominant(g2, lam)
print()
print(f"dominant form of {lam} in G2 is {dom}, via reflections {word}")

# alcove reduction: a representative in the fundamental alcove plus the set
# of walls (node ids, rank = affine node) where the pairing is integral
point = (Fraction(7, 3), Fraction(-1, 2))
vec, walls = alcove_reduce(g2, point)
print(f"alcove representative of {point}: {vec}, integral walls {sorted(walls)}")
