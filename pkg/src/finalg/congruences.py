"""Partitions, congruences, and the congruence lattice of a finite algebra.

Partitions are stored normalized (blocks sorted by least element, elements
sorted inside each block) so they are hashable and can be compared in the
refinement order.  Principal congruences are generated with the classic
worklist: when two classes merge, the merged pair is pushed through every
unary basic translation (one basic operation, one free slot, all parameter
tuples).
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .core import CapExceededError, FiniteAlgebra

DEFAULT_LATTICE_CAP = 10**5


class UnionFind:
    __slots__ = ("parent",)

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra > rb:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


class Partition:
    """An equivalence relation on {0..n-1} in normalized block form."""

    __slots__ = ("size", "blocks", "index", "_hash")

    def __init__(self, size: int, blocks: Iterable[Iterable[int]]):
        size = int(size)
        seen = [False] * size
        norm = []
        for blk in blocks:
            blk = tuple(sorted(int(x) for x in blk))
            if not blk:
                continue
            for x in blk:
                if not 0 <= x < size:
                    raise ValueError(f"element {x} out of range")
                if seen[x]:
                    raise ValueError(f"element {x} appears in two blocks")
                seen[x] = True
            norm.append(blk)
        if not all(seen):
            missing = [x for x in range(size) if not seen[x]]
            raise ValueError(f"elements {missing} not covered")
        norm.sort(key=lambda blk: blk[0])
        self.size = size
        self.blocks = tuple(norm)
        index = [0] * size
        for i, blk in enumerate(norm):
            for x in blk:
                index[x] = i
        self.index = tuple(index)
        self._hash = hash((self.size, self.blocks))

    # -- constructors --------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "Partition":
        return cls(n, [[x] for x in range(n)])

    @classmethod
    def one(cls, n: int) -> "Partition":
        return cls(n, [range(n)])

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "Partition":
        uf = UnionFind(n)
        for a, b in pairs:
            uf.union(a, b)
        return cls.from_labels(n, [uf.find(x) for x in range(n)])

    @classmethod
    def from_labels(cls, n: int, labels: Sequence[int]) -> "Partition":
        groups: dict[int, list[int]] = {}
        for x, lab in enumerate(labels):
            groups.setdefault(lab, []).append(x)
        return cls(n, groups.values())

    # -- relation view ---------------------------------------------------

    def related(self, a: int, b: int) -> bool:
        return self.index[a] == self.index[b]

    def block_of(self, a: int) -> tuple[int, ...]:
        return self.blocks[self.index[a]]

    def pairs(self) -> Iterable[tuple[int, int]]:
        for blk in self.blocks:
            for a in blk:
                for b in blk:
                    yield (a, b)

    @property
    def rank(self) -> int:
        return self.size - len(self.blocks)

    # -- order and lattice operations -------------------------------------

    def leq(self, other: "Partition") -> bool:
        """Refinement order: every block of self lies inside a block of other."""
        if self.size != other.size:
            raise ValueError("size mismatch")
        return all(len({other.index[x] for x in blk}) == 1 for blk in self.blocks)

    def join(self, other: "Partition") -> "Partition":
        if self.size != other.size:
            raise ValueError("size mismatch")
        uf = UnionFind(self.size)
        for blk in itertools.chain(self.blocks, other.blocks):
            first = blk[0]
            for x in blk[1:]:
                uf.union(first, x)
        return Partition.from_labels(self.size, [uf.find(x) for x in range(self.size)])

    def meet(self, other: "Partition") -> "Partition":
        if self.size != other.size:
            raise ValueError("size mismatch")
        labels = [(self.index[x], other.index[x]) for x in range(self.size)]
        lut = {lab: i for i, lab in enumerate(dict.fromkeys(labels))}
        return Partition.from_labels(self.size, [lut[lab] for lab in labels])

    def __or__(self, other):
        return self.join(other)

    def __and__(self, other):
        return self.meet(other)

    def __le__(self, other):
        return self.leq(other)

    def __lt__(self, other):
        return self != other and self.leq(other)

    def __eq__(self, other):
        return (
            isinstance(other, Partition)
            and self.size == other.size
            and self.blocks == other.blocks
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        body = "|".join(",".join(str(x) for x in blk) for blk in self.blocks)
        return f"Partition({body})"


def compose_relations(p: Partition, q: Partition) -> frozenset[tuple[int, int]]:
    """Relation composition p o q = {(a, c) : exists b with a p b and b q c}."""
    out = set()
    for a in range(p.size):
        blk = p.block_of(a)
        for b in blk:
            out.update((a, c) for c in q.block_of(b))
    return frozenset(out)


# ---------------------------------------------------------------------------
# Principal congruences and generated congruences.
# ---------------------------------------------------------------------------


def _translation_matrix(algebra: FiniteAlgebra) -> np.ndarray:
    """All unary basic translations as one (T, n) table, deduplicated.

    A basic translation fixes one argument slot of a basic operation and
    fills the rest with constants.  Identity and constant rows are dropped;
    they never merge anything new.
    """
    cached = algebra._cache.get("translations")
    if cached is not None:
        return cached
    n = algebra.size
    rows: set[tuple[int, ...]] = set()
    ident = tuple(range(n))
    xs = np.arange(n, dtype=np.int64)
    for op in algebra.operations:
        k = op.arity
        tab = op.array()
        if k == 1:
            row = tuple(tab.tolist())
            if row != ident and len(set(row)) > 1:
                rows.add(row)
            continue
        for pos in range(k):
            for params in itertools.product(range(n), repeat=k - 1):
                idx = np.zeros(n, dtype=np.int64)
                pj = 0
                for j in range(k):
                    if j == pos:
                        idx = idx * n + xs
                    else:
                        idx = idx * n + params[pj]
                        pj += 1
                row = tuple(tab[idx].tolist())
                if row != ident and len(set(row)) > 1:
                    rows.add(row)
    mat = np.array(sorted(rows), dtype=np.int64) if rows else np.empty((0, n), dtype=np.int64)
    algebra._cache["translations"] = mat
    return mat


def congruence_generated(algebra: FiniteAlgebra, pairs: Iterable[tuple[int, int]]) -> Partition:
    """Least congruence of `algebra` containing all the given pairs."""
    n = algebra.size
    trans = _translation_matrix(algebra)
    uf = UnionFind(n)
    queue = deque()
    for a, b in pairs:
        if not (0 <= a < n and 0 <= b < n):
            raise ValueError(f"pair ({a}, {b}) out of range")
        queue.append((a, b))
    while queue:
        a, b = queue.popleft()
        if not uf.union(a, b):
            continue
        if trans.shape[0]:
            ta = trans[:, a]
            tb = trans[:, b]
            mask = ta != tb
            if mask.any():
                queue.extend(zip(ta[mask].tolist(), tb[mask].tolist()))
    return Partition.from_labels(n, [uf.find(x) for x in range(n)])


def principal_congruence(algebra: FiniteAlgebra, a: int, b: int) -> Partition:
    """Cg(a, b): least congruence identifying a and b."""
    return congruence_generated(algebra, [(a, b)])


def _distinct_principal_congruences(algebra: FiniteAlgebra) -> list[Partition]:
    cached = algebra._cache.get("principals")
    if cached is not None:
        return cached
    found: dict[Partition, None] = {}
    for a in range(algebra.size):
        for b in range(a + 1, algebra.size):
            found.setdefault(principal_congruence(algebra, a, b))
    out = sorted(found, key=lambda p: (p.rank, p.blocks))
    algebra._cache["principals"] = out
    return out


@dataclass(frozen=True)
class CoverPair:
    lower: Partition
    upper: Partition


class CongruenceLattice:
    """Con(A): all congruences with join/meet tables and the cover relation."""

    __slots__ = ("algebra", "elements", "_pos", "leq_matrix", "join_table", "meet_table", "covers")

    def __init__(self, algebra: FiniteAlgebra, elements: Sequence[Partition]):
        self.algebra = algebra
        self.elements = tuple(sorted(elements, key=lambda p: (p.rank, p.blocks)))
        self._pos = {p: i for i, p in enumerate(self.elements)}
        m = len(self.elements)
        leq = [[self.elements[i].leq(self.elements[j]) for j in range(m)] for i in range(m)]
        self.leq_matrix = leq
        self.join_table = [
            [self._pos[self.elements[i].join(self.elements[j])] for j in range(m)] for i in range(m)
        ]
        self.meet_table = [
            [self._pos[self.elements[i].meet(self.elements[j])] for j in range(m)] for i in range(m)
        ]
        covers = set()
        for i in range(m):
            for j in range(m):
                if i == j or not leq[i][j]:
                    continue
                if not any(k != i and k != j and leq[i][k] and leq[k][j] for k in range(m)):
                    covers.add((i, j))
        self.covers = frozenset(covers)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, p: Partition):
        return p in self._pos

    def position(self, p: Partition) -> int:
        try:
            return self._pos[p]
        except KeyError:
            raise ValueError("partition is not a congruence in this lattice") from None

    @property
    def zero(self) -> Partition:
        return self.elements[0]

    @property
    def one(self) -> Partition:
        return self.elements[-1]

    def upper_covers(self, p: Partition) -> list[Partition]:
        i = self.position(p)
        return [self.elements[j] for (lo, j) in self.covers if lo == i]

    def lower_covers(self, p: Partition) -> list[Partition]:
        j = self.position(p)
        return [self.elements[i] for (i, hi) in self.covers if hi == j]

    def interval(self, lo: Partition, hi: Partition) -> list[Partition]:
        i, j = self.position(lo), self.position(hi)
        return [self.elements[k] for k in range(len(self.elements)) if self.leq_matrix[i][k] and self.leq_matrix[k][j]]

    def atoms(self) -> list[Partition]:
        return self.upper_covers(self.zero)


def congruence_lattice(
    algebra: FiniteAlgebra, *, cap: int = DEFAULT_LATTICE_CAP
) -> CongruenceLattice:
    """Con(A): close the principal congruences under binary join."""
    cached = algebra._cache.get("con")
    if cached is not None:
        return cached
    zero = Partition.zero(algebra.size)
    elements: set[Partition] = {zero}
    elements.update(_distinct_principal_congruences(algebra))
    worklist = deque(elements)
    while worklist:
        p = worklist.popleft()
        for q in list(elements):
            j = p.join(q)
            if j not in elements:
                elements.add(j)
                worklist.append(j)
                if len(elements) > cap:
                    raise CapExceededError("congruence lattice", cap)
    lat = CongruenceLattice(algebra, elements)
    algebra._cache["con"] = lat
    return lat


def join(p: Partition, q: Partition) -> Partition:
    """Least common coarsening of two partitions."""
    return p.join(q)


@dataclass(frozen=True)
class StructureReport:
    covers: tuple[CoverPair, ...]
    meet_irreducibles: tuple[Partition, ...]
    completely_meet_irreducibles: tuple[tuple[Partition, Partition], ...]
    monolith: Partition | None
    is_si: bool


def structure_report(lattice: CongruenceLattice) -> StructureReport:
    """Covers, (completely) meet-irreducible elements, monolith, SI verdict.

    In a finite lattice an element is completely meet-irreducible iff it has a
    unique upper cover below everything strictly above it; both notions are
    computed independently as a cross-check.
    """
    elements = lattice.elements
    m = len(elements)
    covers = tuple(
        CoverPair(elements[i], elements[j]) for (i, j) in sorted(lattice.covers)
    )
    meet_irr = []
    for i in range(m):
        if elements[i] == lattice.one:
            continue
        strictly_above = [j for j in range(m) if j != i and lattice.leq_matrix[i][j]]
        reducible = any(
            lattice.meet_table[j][k] == i for j in strictly_above for k in strictly_above
        )
        if not reducible:
            meet_irr.append(elements[i])
    cmi = []
    for i in range(m):
        if elements[i] == lattice.one:
            continue
        ups = [j for (lo, j) in lattice.covers if lo == i]
        if len(ups) != 1:
            continue
        plus = ups[0]
        if all(
            lattice.leq_matrix[plus][j]
            for j in range(m)
            if j != i and lattice.leq_matrix[i][j]
        ):
            cmi.append((elements[i], elements[plus]))
    atoms = lattice.atoms()
    monolith = atoms[0] if len(atoms) == 1 else None
    return StructureReport(
        covers=covers,
        meet_irreducibles=tuple(meet_irr),
        completely_meet_irreducibles=tuple(cmi),
        monolith=monolith,
        is_si=monolith is not None,
    )


def check_perspectivity(
    lattice: CongruenceLattice,
    low: CoverPair | tuple[Partition, Partition],
    high: CoverPair | tuple[Partition, Partition],
) -> bool:
    """(alpha, beta) transposes up to (gamma, delta): beta ^ gamma = alpha and
    beta v gamma = delta.  Cover-ness is checked only for CoverPair arguments."""
    if isinstance(low, CoverPair):
        if (lattice.position(low.lower), lattice.position(low.upper)) not in lattice.covers:
            raise ValueError("low CoverPair is not a cover in this lattice")
        alpha, beta = low.lower, low.upper
    else:
        alpha, beta = low
    if isinstance(high, CoverPair):
        if (lattice.position(high.lower), lattice.position(high.upper)) not in lattice.covers:
            raise ValueError("high CoverPair is not a cover in this lattice")
        gamma, delta = high.lower, high.upper
    else:
        gamma, delta = high
    for p in (alpha, beta, gamma, delta):
        lattice.position(p)
    return beta.meet(gamma) == alpha and beta.join(gamma) == delta


@dataclass(frozen=True)
class IntervalReport:
    modular: bool
    permuting: bool
    precondition_verified: bool
    modular_witness: tuple | None
    permuting_witness: tuple | None

    @property
    def passed(self) -> bool:
        return self.modular and self.permuting


def check_interval_modular_permuting(
    algebra: FiniteAlgebra,
    lattice: CongruenceLattice,
    alpha: Partition,
    beta: Partition,
    *,
    quotient_abelian: bool = False,
) -> IntervalReport:
    """Check that I[alpha, beta] is modular and consists of pairwise permuting
    relations.  `quotient_abelian` records whether the caller verified the
    hypothesis (beta/alpha abelian); the checks run either way."""
    if not alpha.leq(beta):
        raise ValueError("alpha must lie below beta")
    interval = lattice.interval(alpha, beta)
    permuting = True
    perm_witness = None
    for p, q in itertools.combinations(interval, 2):
        if compose_relations(p, q) != compose_relations(q, p):
            permuting = False
            perm_witness = (p, q)
            break
    modular = True
    mod_witness = None
    for x, y, z in itertools.product(interval, repeat=3):
        if x.leq(z):
            lhs = x.join(y.meet(z))
            rhs = x.join(y).meet(z)
            if lhs != rhs:
                modular = False
                mod_witness = (x, y, z)
                break
    return IntervalReport(
        modular=modular,
        permuting=permuting,
        precondition_verified=quotient_abelian,
        modular_witness=mod_witness,
        permuting_witness=perm_witness,
    )


# -- helpers shared by later modules ----------------------------------------


def push_partition(theta: Partition, proj, m: int) -> Partition:
    """Image of a partition >= ker(proj) under a surjection proj: n -> m."""
    labels = [0] * m
    for x in range(theta.size):
        labels[proj(x)] = theta.index[x]
    return Partition.from_labels(m, labels)


def pull_partition(lam: Partition, proj, n: int) -> Partition:
    """Preimage f^{-1}(lam) of a partition on the target of proj: n -> m."""
    return Partition.from_labels(n, [lam.index[proj(x)] for x in range(n)])


def restriction_to(theta: Partition, subset: Sequence[int]) -> Partition:
    """theta restricted to `subset`, reindexed by position in `subset`."""
    return Partition.from_labels(len(subset), [theta.index[x] for x in subset])


def is_congruence(algebra: FiniteAlgebra, theta: Partition) -> bool:
    """Exhaustive compatibility check of a partition with every operation."""
    n = algebra.size
    labels = np.asarray(theta.index, dtype=np.int64)
    for op in algebra.operations:
        k = op.arity
        tab = op.array()
        full = np.indices((n,) * k).reshape(k, -1)
        fidx = np.zeros(full.shape[1], dtype=np.int64)
        for j in range(k):
            fidx = fidx * n + full[j]
        res = labels[tab[fidx]]
        # group argument tuples by their label pattern; results must agree
        key = np.zeros(full.shape[1], dtype=np.int64)
        nb = len(theta.blocks)
        for j in range(k):
            key = key * nb + labels[full[j]]
        order = np.argsort(key, kind="stable")
        ks, rs = key[order], res[order]
        starts = np.ones(len(ks), dtype=bool)
        starts[1:] = ks[1:] != ks[:-1]
        group_first = np.maximum.accumulate(np.where(starts, np.arange(len(ks)), 0))
        if not np.array_equal(rs, rs[group_first]):
            return False
    return True
