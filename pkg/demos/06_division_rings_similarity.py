"""Division rings of abelian minimal congruences and the similarity
relation between subdirectly irreducible algebras, with bridges."""

from finalg import (
    bridge_construct,
    canonical_action,
    certificate_from_operation,
    diff_of,
    difference_algebra,
    division_ring,
    find_isomorphism,
    fixtures,
    freese_ring,
    is_similar,
    perspective_diff_iso,
    principal_congruence,
    Partition,
)
from finalg.generator import fixture_gen2

z4 = fixtures.z4()
theta = principal_congruence(z4, 0, 2)
cert = certificate_from_operation(z4, "p")

print("== the division ring and its action ==")
da = difference_algebra(z4, theta, cert)
ring = division_ring(da.algebra, da.phi, da.transversal, da.certificate_d)
print("ring size:", len(ring), "(the two-element field)")
act = canonical_action(da, ring, 0)
print("the class of 0 is a vector space of dimension", act.dimension)

gen = fixture_gen2()
certg = certificate_from_operation(gen.algebra, "d")
dag = difference_algebra(gen.algebra, gen.mu, certg)
ringg = division_ring(dag.algebra, dag.phi, dag.transversal, dag.certificate_d)
print("generated fixture: ring size", len(ringg),
      "| dimensions", canonical_action(dag, ringg, gen.sort_elements[0][0]).dimension,
      "and", canonical_action(dag, ringg, gen.sort_elements[1][0]).dimension)

print("\n== the hom-set ring over a transversal agrees ==")
fr = freese_ring(z4, theta, [0, 1], cert)
print("hom-set ring size:", len(fr.carrier), "== division ring size:", fr.division_ring_size)

print("\n== similarity ==")
d4 = diff_of(z4, cert)
print("the affine fixture is similar to its difference algebra:",
      is_similar(z4, d4.algebra, cert, d4.construction.certificate_d).similar)
dd = diff_of(d4.algebra, d4.construction.certificate_d)
print("applying the operator twice changes nothing:",
      find_isomorphism(dd.algebra, d4.algebra) is not None)

print("\n== similarity bridges ==")
bridge = bridge_construct(z4, d4.algebra, "canonical-to-d", cert_a=cert)
print("canonical bridge verified:", bridge.report.passed,
      "| members:", len(bridge.tuples))
for item in bridge.report.items:
    print(f"  {item.id}: {item.verdict}")

print("\n== perspectivity transfer ==")
sq = fixtures.two_squared()
certsq = certificate_from_operation(sq, "d")
eta1 = Partition(4, [[0, 1], [2, 3]])
eta2 = Partition(4, [[0, 2], [1, 3]])
transfer = perspective_diff_iso(sq, (Partition.zero(4), eta1), (eta2, Partition.one(4)), certsq)
print("difference algebras across the perspectivity are isomorphic:",
      transfer.isomorphism.images, "| rings match:", len(transfer.left_ring), "=", len(transfer.right_ring))
