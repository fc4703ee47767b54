"""Finite algebras as operation tables: the generic constructions.

Builds the small canonical fixtures, evaluates operations, generates
subuniverses, forms products and quotients, enumerates unary polynomials,
and runs the isomorphism search.
"""

from finalg import (
    Partition,
    evaluate,
    find_isomorphism,
    fixtures,
    generate_subuniverse,
    product,
    quotient,
    unary_polynomials,
)

z4 = fixtures.z4()
z2 = fixtures.z2()
s2 = fixtures.s2()

print("== evaluation ==")
print("four-element affine fixture: p(1, 2, 3) =", evaluate(z4, "p", (1, 2, 3)))
print("two-element semilattice:  meet(0, 1) =", evaluate(s2, "meet", (0, 1)))

print("\n== subuniverse generation ==")
print("closure of {0, 1} under x - y + z (mod 4):", sorted(generate_subuniverse(z4, [0, 1])))
print("closure of {0}:", sorted(generate_subuniverse(z4, [0])))

print("\n== products and quotients ==")
sq = product(z2, z2)
print("the square of the two-element affine algebra has", sq.algebra.size, "elements")
a = sq.encode(1, 0)
b = sq.encode(0, 1)
print(f"d((1,0), (0,0), (0,1)) = {sq.decode(evaluate(sq.algebra, 'd', (a, sq.encode(0, 0), b)))}")
theta = Partition(4, [[0, 2], [1, 3]])
q = quotient(z4, theta)
print("four elements mod {{0,2},{1,3}} ->", q.algebra.size, "elements;",
      "isomorphic to the two-element affine algebra:",
      find_isomorphism(q.algebra, z2.rename_operations(["p"])) is not None)

print("\n== unary polynomials ==")
for name, alg in (("affine mod 4", z4), ("affine mod 2", z2), ("semilattice", s2)):
    fns = unary_polynomials(alg)
    print(f"{name}: {len(fns)} unary polynomial functions")
print("(the affine mod 4 count includes the coefficient-2 maps such as x -> 2x,")
print(" which arise as p(x, 0, x))")

print("\n== isomorphism search ==")
print("two-element affine vs. semilattice:", find_isomorphism(z2, s2))
h = find_isomorphism(z4, z4)
print("least automorphism of the affine fixture:", h.images)
