"""Independent brute-force oracles used to pin expected values.

Everything here is deliberately naive: set partitions are enumerated
directly, congruences are filtered by exhaustive compatibility checks, and
matrix sets are closed by full-grid fixpoint iteration.  None of it shares
code with the library's incremental engines.
"""

from __future__ import annotations

import itertools

import numpy as np

from finalg import FiniteAlgebra, Partition


def all_partitions(n: int):
    """Every partition of {0..n-1}, as tuples of sorted blocks."""

    def rec(x: int, blocks: list[list[int]]):
        if x == n:
            yield tuple(tuple(b) for b in blocks)
            return
        for b in blocks:
            b.append(x)
            yield from rec(x + 1, blocks)
            b.pop()
        blocks.append([x])
        yield from rec(x + 1, blocks)
        blocks.pop()

    yield from rec(0, [])


def compatible(algebra: FiniteAlgebra, blocks) -> bool:
    """Is a partition compatible with every operation table?"""
    n = algebra.size
    index = {}
    for i, blk in enumerate(blocks):
        for x in blk:
            index[x] = i
    for op in algebra.operations:
        for args in itertools.product(range(n), repeat=op.arity):
            for pos in range(op.arity):
                for alt in blocks[index[args[pos]]]:
                    other = list(args)
                    other[pos] = alt
                    i1 = 0
                    i2 = 0
                    for a, b in zip(args, other):
                        i1 = i1 * n + a
                        i2 = i2 * n + b
                    if index[op.table[i1]] != index[op.table[i2]]:
                        return False
    return True


def brute_congruences(algebra: FiniteAlgebra) -> list[Partition]:
    return [
        Partition(algebra.size, blocks)
        for blocks in all_partitions(algebra.size)
        if compatible(algebra, blocks)
    ]


def brute_principal(algebra: FiniteAlgebra, a: int, b: int) -> Partition:
    """Smallest congruence containing (a, b): congruences containing a pair
    are meet-closed, so take the meet of them all."""
    congs = [c for c in brute_congruences(algebra) if c.related(a, b)]
    out = congs[0]
    for c in congs[1:]:
        out = out.meet(c)
    return out


def naive_matrix_closure(algebra: FiniteAlgebra, seeds) -> frozenset:
    """Full-grid fixpoint closure of 4-tuples under entrywise operations."""
    n = algebra.size
    rows = np.array(sorted(set(seeds)), dtype=np.int64)
    while True:
        batches = [rows]
        for op in algebra.operations:
            tab = op.array()
            k = op.arity
            if k == 1:
                batches.append(tab[rows])
            elif k == 2:
                idx = rows[:, None, :] * n + rows[None, :, :]
                batches.append(tab[idx.reshape(-1, 4)])
            elif k == 3:
                idx = (rows[:, None, None, :] * n + rows[None, :, None, :]) * n + rows[
                    None, None, :, :
                ]
                batches.append(tab[idx.reshape(-1, 4)])
            else:
                for combo in itertools.product(range(rows.shape[0]), repeat=k):
                    pick = 0
                    for c in combo:
                        pick = pick * n + rows[c]
                    batches.append(tab[pick].reshape(1, 4))
        merged = np.unique(np.concatenate(batches, axis=0), axis=0)
        if merged.shape[0] == rows.shape[0]:
            return frozenset(map(tuple, merged.tolist()))
        rows = merged


def seed_matrices(theta_pairs, phi_pairs):
    out = set()
    for c, d in theta_pairs:
        out.add((c, d, c, d))
    for a, b in phi_pairs:
        out.add((a, a, b, b))
    return out


def brute_centralizes(algebra: FiniteAlgebra, phi: Partition, theta: Partition, delta: Partition) -> bool:
    """Row condition on M(phi, theta) and column condition on M(theta, phi),
    both by naive closure; they must agree."""
    m1 = naive_matrix_closure(
        algebra, seed_matrices(phi.pairs(), theta.pairs())
    )
    rows_ok = all(
        delta.related(a1, a3) == delta.related(a2, a4) for a1, a2, a3, a4 in m1
    )
    m2 = naive_matrix_closure(
        algebra, seed_matrices(theta.pairs(), phi.pairs())
    )
    cols_ok = all(
        delta.related(a1, a2) == delta.related(a3, a4) for a1, a2, a3, a4 in m2
    )
    assert rows_ok == cols_ok, "oracle conditions disagree"
    return rows_ok


def brute_centralizer(algebra: FiniteAlgebra, delta: Partition, theta: Partition) -> Partition:
    """Largest congruence centralizing theta modulo delta, over the full
    brute-force congruence list."""
    best = Partition.zero(algebra.size)
    for cand in brute_congruences(algebra):
        if brute_centralizes(algebra, cand, theta, delta) and best.leq(cand):
            best = cand
    return best


def brute_pol1(algebra: FiniteAlgebra) -> frozenset:
    """All unary polynomials as image tuples, by naive fixpoint."""
    n = algebra.size
    fns = {tuple(range(n))} | {(c,) * n for c in range(n)}
    while True:
        fresh = set()
        for op in algebra.operations:
            for args in itertools.product(sorted(fns), repeat=op.arity):
                img = []
                for x in range(n):
                    idx = 0
                    for g in args:
                        idx = idx * n + g[x]
                    img.append(op.table[idx])
                fresh.add(tuple(img))
        if fresh <= fns:
            return frozenset(fns)
        fns |= fresh
