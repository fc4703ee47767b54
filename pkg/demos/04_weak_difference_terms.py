"""Weak difference terms: verification, clone search, the abelian group on
a congruence class, and affine decomposition of polynomials."""

from itertools import product as iproduct

from finalg import (
    FiniteAlgebra,
    Partition,
    affine_decompose,
    certificate_from_operation,
    check_wdt_laws,
    class_group,
    connecting_polynomial,
    evaluate,
    fixtures,
    principal_congruence,
    search_wdt,
    verify_wdt,
)

z4 = fixtures.z4()
s2 = fixtures.s2()
theta = principal_congruence(z4, 0, 2)

print("== verification ==")
cert = certificate_from_operation(z4, "p")
print("p(x,y,z) = x - y + z is a weak difference term:", cert.verdict)
proj = [x for x, y, z in iproduct(range(2), repeat=3)]
print("a projection on the affine two-element algebra:",
      verify_wdt(fixtures.z2(), proj).verdict)

print("\n== search in the ternary clone ==")
found = search_wdt(z4)
print("search recovers the affine operation:", found.d == z4.operation("p").table)
unary = FiniteAlgebra(2, [("f", 1, [0, 1])])
print("an essentially unary algebra has none:", search_wdt(unary))

print("\n== the group on a class ==")
grp = class_group(z4, cert, theta, 0)
print("class {0, 2} with zero 0:  2 + 2 =", grp.add(2, 2), "| -2 =", grp.neg(2))

print("\n== affine decomposition ==")
f = lambda x, y: evaluate(z4, "p", (x, 0, y))
dec = affine_decompose(z4, cert, theta, f, 2, (0, 0), 0)
print("x + y on the class of 0 decomposes as r1 + r2 + const:",
      dec.r_maps[0], dec.r_maps[1], "| const", dec.constant)

print("\n== connecting polynomials on a minimal abelian congruence ==")
fmap = connecting_polynomial(z4, theta, (0, 2), (1, 3))
print("a unary polynomial sending (0, 2) to (1, 3):", fmap.images)

print("\n== the law harness ==")
report = check_wdt_laws(z4, cert)
for item in report.items:
    print(f"  {item.id}: {item.verdict}")
