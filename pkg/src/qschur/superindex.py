"""Indexing combinatorics of Q(n,r): super matrices (A0|A1), row/column
sums, the column-major cell composition nu_M, partial-sum tables, shift
maps, the dominance-style order on matrices, and the total order on
positions used by the triangular multiplication formula.

A super matrix is a pair of n x n matrices: the even part has natural
entries, the odd part entries in {0,1}.  ``|M|`` denotes the entrywise sum
even + odd; row/column sums, nu_M and the partial sums m~_{h,k} are all
computed on |M|.  Invalid shift results are represented by ``None`` (the
paper's phi_M = 0 for M outside M(N|Z_2) rule), never by exceptions.
"""

from __future__ import annotations

import itertools
from typing import Iterator, Optional

from qschur import symgroup as sg

IntMatrix = tuple[tuple[int, ...], ...]


def _zero(n: int) -> IntMatrix:
    return tuple((0,) * n for _ in range(n))


def mtilde(m: IntMatrix, h: int, k: int) -> int:
    """Sum of the full columns left of k plus rows <= h of column k
    (1-based h in 0..n, k in 1..n)."""
    n = len(m)
    total = sum(m[i][j] for j in range(k - 1) for i in range(n))
    total += sum(m[i][k - 1] for i in range(h))
    return total


class SuperMatrix:
    """Immutable pair (even | odd) indexing the basis phi_M."""

    __slots__ = ("n", "even", "odd", "_hash", "_absum", "_ro", "_co")

    def __init__(self, even, odd):
        even = tuple(tuple(int(x) for x in row) for row in even)
        odd = tuple(tuple(int(x) for x in row) for row in odd)
        n = len(even)
        if len(odd) != n or any(len(row) != n for row in even + odd):
            raise ValueError("even and odd parts must be square of equal size")
        if any(x < 0 for row in even for x in row):
            raise ValueError("negative even entry")
        if any(x not in (0, 1) for row in odd for x in row):
            raise ValueError("odd entries must lie in {0,1}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "even", even)
        object.__setattr__(self, "odd", odd)
        object.__setattr__(self, "_hash", hash((even, odd)))
        object.__setattr__(self, "_absum", None)
        object.__setattr__(self, "_ro", None)
        object.__setattr__(self, "_co", None)

    def __setattr__(self, name, value):
        raise AttributeError("SuperMatrix is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, SuperMatrix)
            and self.even == other.even
            and self.odd == other.odd
        )

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        # canonical output order: row-major lexicographic on (even, odd)
        return (self.even, self.odd) < (other.even, other.odd)

    def __repr__(self):
        return f"SuperMatrix({list(map(list, self.even))}|{list(map(list, self.odd))})"

    # -- derived data ----------------------------------------------------

    def absum(self) -> IntMatrix:
        """|M| = even + odd entrywise."""
        if self._absum is None:
            n = self.n
            object.__setattr__(
                self,
                "_absum",
                tuple(
                    tuple(self.even[i][j] + self.odd[i][j] for j in range(n))
                    for i in range(n)
                ),
            )
        return self._absum

    def total(self) -> int:
        return sum(x for row in self.absum() for x in row)

    def ro(self) -> tuple[int, ...]:
        if self._ro is None:
            object.__setattr__(self, "_ro", sg.row_sums(self.absum()))
        return self._ro

    def co(self) -> tuple[int, ...]:
        if self._co is None:
            object.__setattr__(self, "_co", sg.col_sums(self.absum()))
        return self._co

    def nu(self) -> tuple[int, ...]:
        """Column-major cell sizes (m_11, ..., m_n1, m_12, ..., m_nn) of |M|."""
        m = self.absum()
        n = self.n
        return tuple(m[i][j] for j in range(n) for i in range(n))

    def nu_odd(self) -> tuple[int, ...]:
        """Column-major listing of the odd part (the Clifford mask of c_M)."""
        n = self.n
        return tuple(self.odd[i][j] for j in range(n) for i in range(n))

    def mtilde(self, h: int, k: int) -> int:
        return mtilde(self.absum(), h, k)

    def mtilde_odd(self, h: int, k: int) -> int:
        """m~_{h,k} computed on the odd part alone (sign exponents)."""
        return mtilde(self.odd, h, k)

    def is_strict(self) -> bool:
        """Zero even diagonal (odd diagonal free)."""
        return all(self.even[i][i] == 0 for i in range(self.n))

    def strict_part(self) -> "SuperMatrix":
        """A^pm: zero out the diagonal of the odd part, keep the rest.

        Only meaningful for strict matrices; pairs with diag_support to
        parameterize M^pm(n) x Z_2^n.
        """
        n = self.n
        odd = tuple(
            tuple(0 if i == j else self.odd[i][j] for j in range(n)) for i in range(n)
        )
        return SuperMatrix(self.even, odd)

    def diag_support(self) -> frozenset[int]:
        """D(A) = {i : odd[i][i] == 1}, 1-based."""
        return frozenset(i + 1 for i in range(self.n) if self.odd[i][i])

    # -- shifts -----------------------------------------------------------

    def apply_deltas(
        self,
        even_deltas: tuple[tuple[int, int, int], ...] = (),
        odd_deltas: tuple[tuple[int, int, int], ...] = (),
    ) -> Optional["SuperMatrix"]:
        """Add the (i, j, +-1) bumps (1-based); None if the result leaves
        M(N|Z_2)."""
        even = [list(row) for row in self.even]
        odd = [list(row) for row in self.odd]
        for i, j, d in even_deltas:
            even[i - 1][j - 1] += d
            if even[i - 1][j - 1] < 0:
                return None
        for i, j, d in odd_deltas:
            odd[i - 1][j - 1] += d
            if odd[i - 1][j - 1] not in (0, 1):
                return None
        return SuperMatrix(even, odd)

    def to_json(self) -> dict:
        return {"even": [list(r) for r in self.even], "odd": [list(r) for r in self.odd]}

    @staticmethod
    def from_json(obj: dict) -> "SuperMatrix":
        return SuperMatrix(obj["even"], obj["odd"])

    @staticmethod
    def zero(n: int) -> "SuperMatrix":
        return SuperMatrix(_zero(n), _zero(n))

    @staticmethod
    def diagonal(lam: tuple[int, ...]) -> "SuperMatrix":
        """(diag(lam) | O)."""
        n = len(lam)
        even = tuple(
            tuple(lam[i] if i == j else 0 for j in range(n)) for i in range(n)
        )
        return SuperMatrix(even, _zero(n))

    @staticmethod
    def unit(n: int, i: int, j: int, part: str) -> "SuperMatrix":
        """(E_ij | O) or (O | E_ij), 1-based."""
        m = [[0] * n for _ in range(n)]
        m[i - 1][j - 1] = 1
        if part == "even":
            return SuperMatrix(m, _zero(n))
        if part == "odd":
            return SuperMatrix(_zero(n), m)
        raise ValueError("part must be 'even' or 'odd'")


def shift_plus(a: SuperMatrix, h: int, k: int, part: str) -> Optional[SuperMatrix]:
    """A + E_{h,k} - E_{h+1,k} on the given part; None when invalid."""
    deltas = ((h, k, 1), (h + 1, k, -1))
    if part == "even":
        return a.apply_deltas(even_deltas=deltas)
    return a.apply_deltas(odd_deltas=deltas)


def shift_minus(a: SuperMatrix, h: int, k: int, part: str) -> Optional[SuperMatrix]:
    """A - E_{h,k} + E_{h+1,k} on the given part; None when invalid."""
    deltas = ((h, k, -1), (h + 1, k, 1))
    if part == "even":
        return a.apply_deltas(even_deltas=deltas)
    return a.apply_deltas(odd_deltas=deltas)


# ---------------------------------------------------------------------------
# enumeration


def super_matrices(n: int, r: int) -> list[SuperMatrix]:
    """All of M(N|Z_2)(n, r), sorted row-major lexicographic on (even, odd)."""
    out = []
    for combined in _nat_matrices(n, r):
        for m in _split(combined, strict=False):
            out.append(m)
    out.sort()
    return out


def strict_super_matrices(n: int, max_total: int) -> list[SuperMatrix]:
    """All of M(N|Z_2)^pm(n) with |A| <= max_total (zero even diagonal)."""
    out = []
    for r in range(max_total + 1):
        for combined in _nat_matrices(n, r):
            for m in _split(combined, strict=True):
                out.append(m)
    out.sort()
    return out


def _nat_matrices(n: int, r: int) -> Iterator[IntMatrix]:
    for flat in sg.compositions(n * n, r):
        yield tuple(flat[i * n : (i + 1) * n] for i in range(n))


def _split(combined: IntMatrix, strict: bool) -> Iterator[SuperMatrix]:
    n = len(combined)
    cells = [(i, j) for i in range(n) for j in range(n)]
    choices = []
    for i, j in cells:
        c = combined[i][j]
        if c == 0:
            choices.append([(0, 0)])
        elif strict and i == j:
            if c == 1:
                choices.append([(0, 1)])
            else:
                choices.append([])
        else:
            choices.append([(c, 0), (c - 1, 1)])
    for picks in itertools.product(*choices):
        even = [[0] * n for _ in range(n)]
        odd = [[0] * n for _ in range(n)]
        for (i, j), (e, o) in zip(cells, picks):
            even[i][j], odd[i][j] = e, o
        yield SuperMatrix(even, odd)


# ---------------------------------------------------------------------------
# the order on matrices


def preceq_int(b: IntMatrix, a: IntMatrix) -> bool:
    """B <= A: both families of corner sums dominate."""
    n = len(a)
    for s in range(1, n + 1):
        for t in range(s + 1, n + 1):
            # upper-right corners, s < t
            bs = sum(b[i][j] for i in range(s) for j in range(t - 1, n))
            as_ = sum(a[i][j] for i in range(s) for j in range(t - 1, n))
            if bs > as_:
                return False
    for s in range(1, n + 1):
        for t in range(1, s):
            # lower-left corners, s > t
            bs = sum(b[i][j] for i in range(s - 1, n) for j in range(t))
            as_ = sum(a[i][j] for i in range(s - 1, n) for j in range(t))
            if bs > as_:
                return False
    return True


def offdiag(m: IntMatrix) -> IntMatrix:
    n = len(m)
    return tuple(
        tuple(0 if i == j else m[i][j] for j in range(n)) for i in range(n)
    )


def preceq(b: SuperMatrix, a: SuperMatrix) -> bool:
    return preceq_int(b.absum(), a.absum())


def compare(b: SuperMatrix, a: SuperMatrix) -> str:
    """One of 'less', 'equal-class', 'greater', 'incomparable' under <=."""
    ba = preceq(b, a)
    ab = preceq(a, b)
    if ba and ab:
        return "equal-class"
    if ba:
        return "less"
    if ab:
        return "greater"
    return "incomparable"


def strict_prec(b: SuperMatrix, a: SuperMatrix) -> bool:
    """B strictly below A: |B| < |A| with distinct off-diagonal parts, or
    equal off-diagonal parts with strictly smaller odd-diagonal support."""
    bs, as_ = b.absum(), a.absum()
    if preceq_int(bs, as_) and offdiag(bs) != offdiag(as_):
        return True
    return offdiag(bs) == offdiag(as_) and b.diag_support() < a.diag_support()


# ---------------------------------------------------------------------------
# the order on positions


def position_class(p: tuple[int, int]) -> int:
    """0 for below the diagonal, 1 on it, 2 above."""
    i, j = p
    return 0 if i > j else (1 if i == j else 2)


def position_key(p: tuple[int, int]):
    """Sort key realizing the total order on [1,n] x [1,n]:
    lower positions by (column, row), then the diagonal, then upper
    positions by (column desc, row desc)."""
    i, j = p
    cls = position_class(p)
    if cls == 0:
        return (0, j, i)
    if cls == 1:
        return (1, i)
    return (2, -j, -i)


def position_leq(p: tuple[int, int], q: tuple[int, int]) -> bool:
    return position_key(p) <= position_key(q)


def positions_sorted(n: int) -> list[tuple[int, int]]:
    return sorted(
        ((i, j) for i in range(1, n + 1) for j in range(1, n + 1)), key=position_key
    )
