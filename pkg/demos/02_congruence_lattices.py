"""Congruence lattices: principal congruences, covers, monoliths,
perspectivity, and modular intervals."""

from finalg import (
    Partition,
    check_interval_modular_permuting,
    check_perspectivity,
    congruence_lattice,
    fixtures,
    principal_congruence,
    structure_report,
)

z4 = fixtures.z4()
sq = fixtures.two_squared()

print("== principal congruences ==")
print("Cg(0, 2) in the affine fixture:", principal_congruence(z4, 0, 2))
print("Cg(0, 1) collapses everything:", principal_congruence(z4, 0, 1))

print("\n== the lattice ==")
lat = congruence_lattice(z4)
print("congruences of the affine fixture:", [p.blocks for p in lat.elements])
rep = structure_report(lat)
print("monolith:", rep.monolith, "| subdirectly irreducible:", rep.is_si)

lat_sq = congruence_lattice(sq)
print("\nthe squared fixture has", len(lat_sq), "congruences, including the skew one:")
for p in lat_sq.elements:
    print("  ", p)
print("three atoms, so no monolith:", structure_report(lat_sq).monolith)

print("\n== perspectivity ==")
zero, one = Partition.zero(4), Partition.one(4)
eta1 = Partition(4, [[0, 1], [2, 3]])
eta2 = Partition(4, [[0, 2], [1, 3]])
print("(0, eta1) transposes up to (eta2, 1):", check_perspectivity(lat_sq, (zero, eta1), (eta2, one)))

print("\n== modular permuting intervals ==")
report = check_interval_modular_permuting(sq, lat_sq, zero, one, quotient_abelian=True)
print("I[0, 1] of the squared fixture: modular =", report.modular, "| permuting =", report.permuting)
