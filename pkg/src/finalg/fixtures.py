"""Canonical small algebras used across the test suite and the demos.

FIX-Z2   two-element affine algebra, d(x, y, z) = x xor y xor z
FIX-Z4   four-element affine algebra, p(x, y, z) = x - y + z (mod 4)
FIX-S2   two-element meet semilattice
FIX-2SQ  FIX-Z2 squared
FIX-GEN1/GEN2/GEN3 are produced by the generator module; see
`finalg.generator.fixture_gen1` and friends.
"""

from __future__ import annotations

from itertools import product as iproduct

from .core import FiniteAlgebra, product


def z2() -> FiniteAlgebra:
    table = [x ^ y ^ z for x, y, z in iproduct(range(2), repeat=3)]
    return FiniteAlgebra(2, [("d", 3, table)])


def z4() -> FiniteAlgebra:
    table = [(x - y + z) % 4 for x, y, z in iproduct(range(4), repeat=3)]
    return FiniteAlgebra(4, [("p", 3, table)])


def s2() -> FiniteAlgebra:
    table = [x & y for x, y in iproduct(range(2), repeat=2)]
    return FiniteAlgebra(2, [("meet", 2, table)])


def two_squared() -> FiniteAlgebra:
    return product(z2(), z2()).algebra
