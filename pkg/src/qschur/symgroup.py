"""Symmetric-group combinatorics: permutations, Young subgroups, minimal
coset and double-coset representatives, and the matrix <-> (lam, d, mu)
dictionary.

Conventions (fixed once, used everywhere):

- A permutation of S_r is a tuple ``w`` of length r in one-line notation,
  0-based internally: ``w[x]`` is the image of position ``x``.  The wire
  format is 1-based.
- Composition is ``(u o v)(x) = u(v(x))``.
- ``s_i`` (1 <= i <= r-1) swaps i and i+1 (1-based), i.e. positions i-1, i.
- ``length(w)`` is the inversion count of the one-line word, which equals
  the minimal word length in the ``s_i``.
- A composition of r into n parts is a tuple of n nonnegative integers
  summing to r; zero parts are allowed.  The Young subgroup S_lam fixes the
  consecutive blocks {1..lam_1}, {lam_1+1..lam_1+lam_2}, ... setwise.
- ``d`` is a minimal right-coset representative of S_nu (d in D_nu) iff
  the values of every nu-block appear in increasing order in d's one-line
  word; equivalently l(sigma*d) = l(sigma) + l(d) for all sigma in S_nu.
- The matrix attached to a double coset S_lam w S_mu has entries
  ``m[i][j] = |block_i(lam) & w(block_j(mu))|``.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

Perm = tuple[int, ...]
Composition = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]


# ---------------------------------------------------------------------------
# permutations


def identity_perm(r: int) -> Perm:
    return tuple(range(r))


def is_permutation(w: Sequence[int]) -> bool:
    return sorted(w) == list(range(len(w)))


def simple_reflection(i: int, r: int) -> Perm:
    """The generator s_i of S_r, 1 <= i <= r-1 (swaps i and i+1, 1-based)."""
    if not 1 <= i <= r - 1:
        raise ValueError(f"s_{i} is not a generator of S_{r}")
    w = list(range(r))
    w[i - 1], w[i] = w[i], w[i - 1]
    return tuple(w)


def compose(u: Perm, v: Perm) -> Perm:
    """(u o v)(x) = u(v(x)).  Degrees must match."""
    if len(u) != len(v):
        raise ValueError("degree mismatch")
    return tuple(u[x] for x in v)


def inverse(w: Perm) -> Perm:
    inv = [0] * len(w)
    for x, y in enumerate(w):
        inv[y] = x
    return tuple(inv)


def length(w: Perm) -> int:
    """Inversion count; equals the minimal s_i-word length."""
    r = len(w)
    return sum(1 for x in range(r) for y in range(x + 1, r) if w[x] > w[y])


def perm_from_word(word: Iterable[int], r: int) -> Perm:
    """Product of simple reflections, leftmost factor applied last
    (word concatenation matches ``compose``)."""
    w = identity_perm(r)
    for i in word:
        w = compose(w, simple_reflection(i, r))
    return w


def ascending_run(lo: int, hi: int) -> list[int]:
    """Indices [lo, lo+1, ..., hi]; empty if lo > hi."""
    return list(range(lo, hi + 1))


def descending_run(hi: int, lo: int) -> list[int]:
    """Indices [hi, hi-1, ..., lo]; empty if hi < lo."""
    return list(range(hi, lo - 1, -1))


# ---------------------------------------------------------------------------
# compositions and Young subgroups


def compositions(n: int, r: int) -> Iterator[Composition]:
    """All compositions of r into n nonnegative parts, lexicographic."""
    if n == 0:
        if r == 0:
            yield ()
        return
    if n == 1:
        yield (r,)
        return
    for first in range(r + 1):
        for rest in compositions(n - 1, r - first):
            yield (first,) + rest


def prefix_sums(lam: Composition) -> tuple[int, ...]:
    """(lam~_1, ..., lam~_n) with lam~_i = lam_1 + ... + lam_i."""
    out, acc = [], 0
    for part in lam:
        acc += part
        out.append(acc)
    return tuple(out)


def young_blocks(lam: Composition) -> list[range]:
    """0-based position ranges of the blocks of S_lam (empty blocks kept)."""
    out, start = [], 0
    for part in lam:
        out.append(range(start, start + part))
        start += part
    return out


def block_of_position(lam: Composition) -> tuple[int, ...]:
    """Array mapping 0-based position to its lam-block index."""
    out = []
    for i, part in enumerate(lam):
        out.extend([i] * part)
    return tuple(out)


def young_subgroup_members(lam: Composition) -> Iterator[Perm]:
    """All of S_lam; cardinality is the product of the lam_i!."""
    r = sum(lam)
    blocks = young_blocks(lam)
    pools = [list(itertools.permutations(b)) for b in blocks]
    for choice in itertools.product(*pools):
        w = list(range(r))
        for block, images in zip(blocks, choice):
            for pos, img in zip(block, images):
                w[pos] = img
        yield tuple(w)


def refines(nu: Composition, mu: Composition) -> bool:
    """True if the blocks of nu subdivide the blocks of mu."""
    cuts_nu = set(prefix_sums(nu))
    return set(prefix_sums(mu)) <= cuts_nu | {0, sum(mu)}


# ---------------------------------------------------------------------------
# minimal coset representatives


def is_min_coset_rep(w: Perm, nu: Composition) -> bool:
    """w in D_nu: the values of each nu-block occur in increasing order."""
    winv = inverse(w)
    for block in young_blocks(nu):
        for v in block[:-1] if len(block) > 1 else []:
            if winv[v] > winv[v + 1]:
                return False
    return True


def min_coset_rep(w: Perm, nu: Composition) -> Perm:
    """The minimal representative of the coset S_nu * w."""
    blocks = young_blocks(nu)
    d = list(w)
    for block in blocks:
        vals = set(block)
        positions = sorted(x for x in range(len(w)) if w[x] in vals)
        for pos, v in zip(positions, block):
            d[pos] = v
    return tuple(d)


def min_right_coset_reps(nu: Composition) -> list[Perm]:
    """D_nu, one minimal-length representative per coset S_nu d."""
    r = sum(nu)
    blocks = young_blocks(nu)
    reps = []
    for labelling in _block_shuffles(r, blocks):
        d = [0] * r
        for block, positions in zip(blocks, labelling):
            for pos, v in zip(positions, block):
                d[pos] = v
        reps.append(tuple(d))
    return reps


def _block_shuffles(r: int, blocks: list[range]) -> Iterator[list[list[int]]]:
    """All ways to deal positions 0..r-1 into ordered lists of the block
    sizes (positions inside each list are increasing)."""
    sizes = [len(b) for b in blocks]

    def rec(avail: list[int], k: int):
        if k == len(sizes):
            yield []
            return
        for chosen in itertools.combinations(avail, sizes[k]):
            rest = [x for x in avail if x not in chosen]
            for tail in rec(rest, k + 1):
                yield [list(chosen)] + tail

    yield from rec(list(range(r)), 0)


@functools.lru_cache(maxsize=None)
def min_reps_in_parabolic(nu: Composition, mu: Composition) -> tuple[Perm, ...]:
    """D_nu intersected with S_mu, for nu refining mu.

    Computed blockwise inside each mu-block, so the count is the product of
    per-block multinomials rather than a filter over all of D_nu.
    """
    if not refines(nu, mu):
        raise ValueError("nu must refine mu")
    r = sum(mu)
    mu_blocks = young_blocks(mu)
    nu_blocks = [b for b in young_blocks(nu)]
    per_block: list[list[list[tuple[int, int]]]] = []
    for mblock in mu_blocks:
        cells = [b for b in nu_blocks if b and b.start >= mblock.start and b.stop <= mblock.stop]
        local: list[list[tuple[int, int]]] = []
        for labelling in _block_shuffles(len(mblock), [range(len(c)) for c in cells]):
            assignment = []
            for cell, positions in zip(cells, labelling):
                for pos, v in zip(positions, cell):
                    assignment.append((mblock.start + pos, v))
            local.append(assignment)
        per_block.append(local)
    reps = []
    for choice in itertools.product(*per_block):
        d = list(range(r))
        for assignment in choice:
            for pos, v in assignment:
                d[pos] = v
        reps.append(tuple(d))
    return tuple(reps)


# ---------------------------------------------------------------------------
# double cosets and the matrix dictionary


def row_sums(m: Matrix) -> Composition:
    return tuple(sum(row) for row in m)


def col_sums(m: Matrix) -> Composition:
    n = len(m)
    return tuple(sum(m[i][j] for i in range(n)) for j in range(n))


def double_coset_matrix(w: Perm, lam: Composition, mu: Composition) -> Matrix:
    """m[i][j] = |block_i(lam) & w(block_j(mu))|."""
    n = len(lam)
    rowblk = block_of_position(lam)
    colblk = block_of_position(mu)
    m = [[0] * n for _ in range(n)]
    for x in range(len(w)):
        m[rowblk[w[x]]][colblk[x]] += 1
    return tuple(tuple(row) for row in m)


def is_min_double_rep(w: Perm, lam: Composition, mu: Composition) -> bool:
    """Minimal in S_lam w S_mu: left-minimal for lam and right-minimal
    for mu."""
    winv = inverse(w)
    for block in young_blocks(lam):
        for v in list(block)[:-1]:
            if winv[v] > winv[v + 1]:
                return False
    for block in young_blocks(mu):
        for x in list(block)[:-1]:
            if w[x] > w[x + 1]:
                return False
    return True


def min_double_coset_reps(lam: Composition, mu: Composition) -> list[Perm]:
    """One minimal-length representative per S_lam-S_mu double coset.

    Brute force over S_r; intended for tests and oracles at desk scale.
    """
    if sum(lam) != sum(mu):
        raise ValueError("lam and mu must be compositions of the same r")
    r = sum(lam)
    return [w for w in itertools.permutations(range(r)) if is_min_double_rep(w, lam, mu)]


def double_coset_min_table(lam: Composition, mu: Composition) -> dict[Matrix, Perm]:
    """matrix -> minimal-length element of the corresponding double coset,
    by exhaustive scan of S_r (the brute-force oracle)."""
    r = sum(lam)
    best: dict[Matrix, tuple[int, Perm]] = {}
    for w in itertools.permutations(range(r)):
        m = double_coset_matrix(w, lam, mu)
        l = length(w)
        cur = best.get(m)
        if cur is None or l < cur[0]:
            best[m] = (l, w)
    return {m: w for m, (_, w) in best.items()}


@functools.lru_cache(maxsize=None)
def dmin_of_matrix(m: Matrix) -> Perm:
    """The distinguished minimal double-coset representative d_M.

    Order-preserving construction: the cell (i, j) sends the positions of
    mu-block j that come after the cells (i', j), i' < i, to the slice of
    lam-block i that comes after the cells (i, j'), j' < j.
    """
    n = len(m)
    lam, mu = row_sums(m), col_sums(m)
    lam_tilde = (0,) + prefix_sums(lam)
    mu_tilde = (0,) + prefix_sums(mu)
    r = sum(lam)
    d = [0] * r
    row_used = [0] * n
    for j in range(n):
        src = mu_tilde[j]
        for i in range(n):
            cnt = m[i][j]
            tgt = lam_tilde[i] + row_used[i]
            for t in range(cnt):
                d[src + t] = tgt + t
            src += cnt
            row_used[i] += cnt
    return tuple(d)


def matrix_to_triple(m: Matrix) -> tuple[Composition, Perm, Composition]:
    """M |-> (ro(M), d_M, co(M)); inverse of :func:`triple_to_matrix`."""
    return row_sums(m), dmin_of_matrix(m), col_sums(m)


def triple_to_matrix(lam: Composition, d: Perm, mu: Composition) -> Matrix:
    return double_coset_matrix(d, lam, mu)


# ---------------------------------------------------------------------------
# the explicit representative of the d_A product formula


@dataclass(frozen=True)
class SigmaTable:
    """The partial-sum tables behind the w_{i,j} chains.

    ``atilde[i][j]`` (1-based i in 0..n, j in 1..n) sums the full columns
    left of j plus rows <= i of column j; ``sigma[i][j]`` sums the full
    columns left of j plus all entries in rows <= i, columns >= j.  Always
    sigma[i][j] >= atilde[i][j].
    """

    n: int
    atilde: tuple[tuple[int, ...], ...]
    sigma: tuple[tuple[int, ...], ...]

    @staticmethod
    def of(m: Matrix) -> "SigmaTable":
        n = len(m)
        atilde = [[0] * (n + 1) for _ in range(n + 1)]
        sigma = [[0] * (n + 1) for _ in range(n + 1)]
        colsum = [sum(m[i][j] for i in range(n)) for j in range(n)]
        for j in range(1, n + 1):
            left = sum(colsum[: j - 1])
            for i in range(0, n + 1):
                atilde[i][j] = left + sum(m[t][j - 1] for t in range(i))
                sigma[i][j] = left + sum(
                    m[t][k] for t in range(i) for k in range(j - 1, n)
                )
        return SigmaTable(n, tuple(map(tuple, atilde)), tuple(map(tuple, sigma)))


def d_of_matrix(m: Matrix) -> Perm:
    """d_A as the printed product of chains w_{2,1} ... w_{n,n-1}.

    Each w_{i,j} is a product of a_{i,j} descending runs, the t-th running
    from sigma_{i-1,j}+t down to atilde_{i-1,j}+1+t.  Must agree with the
    brute-force minimal double-coset representative; that equality is the
    conformance gate for the whole convention stack.
    """
    n = len(m)
    r = sum(row_sums(m))
    tables = SigmaTable.of(m)
    word: list[int] = []
    for j in range(1, n):
        for i in range(2, n + 1):
            a = m[i - 1][j - 1]
            if a == 0:
                continue
            top = tables.sigma[i - 1][j]
            bot = tables.atilde[i - 1][j]
            if top == bot:
                continue
            for t in range(a):
                word.extend(descending_run(top + t, bot + 1 + t))
    return perm_from_word(word, r)
