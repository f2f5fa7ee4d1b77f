"""The queer Schur superalgebra Q(n,r) in the basis {phi_M}.

Two product engines live here and everything downstream is gated on their
agreement:

- the composition oracle: phi_X phi_A is computed literally as the product
  z = (x_xi d_X c_X sum sigma)(d_A c_A sum sigma') inside H^c_r, expanded
  in the coordinates {x_xi d c^mask : d in D_xi} of the cyclic module
  x_xi H^c_r, and decomposed against the T_M with ro = xi, co = co(A) by
  an exact linear solve;
- the closed-form engine: the six multiplication formulas for the
  almost-diagonal left factors (upper/lower even and odd, odd diagonal,
  even diagonal), with invalid shift targets dropped.

Structure constants are exact; a nonzero residual in the oracle solve is
a hard error, never rounded away.
"""

from __future__ import annotations

from typing import Iterable, Optional

from qschur import sergeev as sv
from qschur import symgroup as sg
from qschur.scalars import ONE, GaussianRational
from qschur.superindex import SuperMatrix, super_matrices

Coord = dict[sv.Term, GaussianRational]


class ConsistencyError(RuntimeError):
    """The oracle decomposition left a residual; indicates a bug or an
    invalid input, never a legitimate outcome."""


class QElement:
    """Finite combination of basis keys phi_M over Q(eps)."""

    __slots__ = ("n", "r", "terms")

    def __init__(self, n: int, r: int, terms: dict[SuperMatrix, GaussianRational] | None = None):
        self.n = n
        self.r = r
        self.terms = {} if terms is None else terms

    @staticmethod
    def zero(n: int, r: int) -> "QElement":
        return QElement(n, r)

    def __add__(self, other: "QElement") -> "QElement":
        self._check(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            acc = terms.get(m)
            acc = c if acc is None else acc + c
            if acc:
                terms[m] = acc
            elif m in terms:
                del terms[m]
        return QElement(self.n, self.r, terms)

    def __sub__(self, other: "QElement") -> "QElement":
        return self + (-other)

    def __neg__(self) -> "QElement":
        return QElement(self.n, self.r, {m: -c for m, c in self.terms.items()})

    def scale(self, a) -> "QElement":
        if not a:
            return QElement.zero(self.n, self.r)
        return QElement(self.n, self.r, {m: c * a for m, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, QElement)
            and (self.n, self.r) == (other.n, other.r)
            and self.terms == other.terms
        )

    def __bool__(self) -> bool:
        return bool(self.terms)

    def _check(self, other: "QElement") -> None:
        if (self.n, self.r) != (other.n, other.r):
            raise ValueError("Q(n,r) dimension mismatch")

    def __repr__(self) -> str:
        if not self.terms:
            return f"0 in Q({self.n},{self.r})"
        bits = [f"({c})*phi{m.to_json()}" for m, c in sorted(self.terms.items())]
        return " + ".join(bits)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "terms": [
                {"matrix": m.to_json(), "coeff": c.to_json()}
                for m, c in sorted(self.terms.items())
            ],
        }

    @staticmethod
    def from_json(obj: dict) -> "QElement":
        terms = {}
        for entry in obj["terms"]:
            terms[SuperMatrix.from_json(entry["matrix"])] = GaussianRational.from_json(
                entry["coeff"]
            )
        return QElement(obj["n"], obj["r"], terms)


class _Block:
    """Cached decomposition data for one (ro, co) pair: the candidate
    basis keys, their coordinate vectors in x_xi H^c_r, pivot keys and the
    inverse of the pivot submatrix."""

    __slots__ = ("candidates", "columns", "pivots", "inverse")

    def __init__(self, candidates, columns, pivots, inverse):
        self.candidates = candidates
        self.columns = columns
        self.pivots = pivots
        self.inverse = inverse


class QSchur:
    """Q(n,r) with memoized basis/coset data and both product engines."""

    _instances: dict[tuple[int, int], "QSchur"] = {}

    def __new__(cls, n: int, r: int):
        key = (n, r)
        inst = cls._instances.get(key)
        if inst is None:
            inst = super().__new__(cls)
            inst._init(n, r)
            cls._instances[key] = inst
        return inst

    def _init(self, n: int, r: int) -> None:
        if n < 1 or r < 0:
            raise ValueError("need n >= 1, r >= 0")
        self.n = n
        self.r = r
        self._basis: list[SuperMatrix] | None = None
        self._blocks: dict[tuple, _Block] = {}
        self._tails: dict[SuperMatrix, sv.SergeevElement] = {}
        self._product_cache: dict[tuple[SuperMatrix, SuperMatrix], QElement] = {}

    # -- basis -------------------------------------------------------------

    def basis(self) -> list[SuperMatrix]:
        if self._basis is None:
            self._basis = super_matrices(self.n, self.r)
        return self._basis

    def zero(self) -> QElement:
        return QElement.zero(self.n, self.r)

    def phi(self, m: SuperMatrix | None, coeff=ONE) -> QElement:
        """Basis element; None keys (invalid shifts) give the zero element."""
        if m is None or not coeff:
            return self.zero()
        if m.n != self.n or m.total() != self.r:
            raise ValueError(f"{m!r} is not a key of M({self.n},{self.r})")
        return QElement(self.n, self.r, {m: coeff if isinstance(coeff, GaussianRational) else GaussianRational(coeff)})

    def one(self) -> QElement:
        terms = {}
        for lam in sg.compositions(self.n, self.r):
            terms[SuperMatrix.diagonal(lam)] = ONE
        return QElement(self.n, self.r, terms)

    def _tail(self, m: SuperMatrix) -> sv.SergeevElement:
        el = self._tails.get(m)
        if el is None:
            el = sv.t_tail(m)
            self._tails[m] = el
        return el

    def t_coordinates(self, m: SuperMatrix) -> Coord:
        """Coordinates of T_M in the x_{ro(M)}-basis."""
        return sv.project_coordinates(self._tail(m), m.ro())

    # -- oracle engine -------------------------------------------------------

    def _block(self, xi: tuple[int, ...], mu: tuple[int, ...]) -> _Block:
        key = (xi, mu)
        block = self._blocks.get(key)
        if block is not None:
            return block
        candidates = [m for m in self.basis() if m.ro() == xi and m.co() == mu]
        columns = [self.t_coordinates(m) for m in candidates]
        pivots, inverse = _pivot_inverse(columns)
        if len(pivots) != len(candidates):
            raise ConsistencyError(
                f"T-coordinates rank-deficient on block ro={xi}, co={mu}"
            )
        block = _Block(candidates, columns, pivots, inverse)
        self._blocks[key] = block
        return block

    def block_rank(self, xi, mu) -> tuple[int, int]:
        """(candidate count, coordinate rank) for one (ro, co) block."""
        candidates = [m for m in self.basis() if m.ro() == xi and m.co() == mu]
        columns = [self.t_coordinates(m) for m in candidates]
        pivots, _ = _pivot_inverse(columns)
        return len(candidates), len(pivots)

    def oracle_product(self, x: SuperMatrix, a: SuperMatrix) -> QElement:
        """phi_X phi_A via composition in H^c_r (the brute-force engine)."""
        cached = self._product_cache.get((x, a))
        if cached is not None:
            return cached
        if x.co() != a.ro():
            result = self.zero()
        else:
            xi, mu = x.ro(), a.co()
            z_tail = self._tail(x) * self._tail(a)
            rhs = sv.project_coordinates(z_tail, xi)
            block = self._block(xi, mu)
            coeffs = _solve_block(block, rhs)
            terms = {
                m: c for m, c in zip(block.candidates, coeffs) if c
            }
            result = QElement(self.n, self.r, terms)
        self._product_cache[(x, a)] = result
        return result

    def general_product(self, a: QElement, b: QElement) -> QElement:
        """Bilinear extension of the oracle over basis pairs."""
        a._check(b)
        out = self.zero()
        for mx, cx in a.terms.items():
            for ma, ca in b.terms.items():
                out = out + self.oracle_product(mx, ma).scale(cx * ca)
        return out

    # -- closed-form engine ---------------------------------------------------

    def left_mul_upper0(self, h: int, a: SuperMatrix) -> QElement:
        """X = (lam + E_{h,h+1} - E_{h+1,h+1} | O), lam = ro(A)."""
        lam = a.ro()
        self._require(1 <= h < self.n and lam[h] >= 1, "upper0", h, lam)
        out = self.zero()
        ab = a.absum()
        for k in range(1, self.n + 1):
            if ab[h][k - 1] < 1:
                continue
            even = a.apply_deltas(even_deltas=((h, k, 1), (h + 1, k, -1)))
            out = out + self.phi(even, GaussianRational(a.even[h - 1][k - 1] + 1))
            odd = a.apply_deltas(odd_deltas=((h, k, 1), (h + 1, k, -1)))
            out = out + self.phi(odd)
        return out

    def left_mul_upper1(self, h: int, a: SuperMatrix) -> QElement:
        """X = (lam - E_{h+1,h+1} | E_{h,h+1})."""
        lam = a.ro()
        self._require(1 <= h < self.n and lam[h] >= 1, "upper1", h, lam)
        out = self.zero()
        ab = a.absum()
        for k in range(1, self.n + 1):
            if ab[h][k - 1] < 1:
                continue
            sign_even = -ONE if a.mtilde_odd(h + 1, k) % 2 else ONE
            even = a.apply_deltas(
                even_deltas=((h, k, 1),), odd_deltas=((h + 1, k, -1),)
            )
            out = out + self.phi(
                even, sign_even * GaussianRational(a.even[h - 1][k - 1] + 1)
            )
            sign_odd = -ONE if a.mtilde_odd(h, k) % 2 else ONE
            odd = a.apply_deltas(
                even_deltas=((h + 1, k, -1),), odd_deltas=((h, k, 1),)
            )
            out = out + self.phi(odd, sign_odd)
        return out

    def left_mul_diag_odd(self, h: int, a: SuperMatrix) -> QElement:
        """X = (lam - E_{h,h} | E_{h,h})."""
        lam = a.ro()
        self._require(1 <= h <= self.n and lam[h - 1] >= 1, "diag1", h, lam)
        out = self.zero()
        ab = a.absum()
        for k in range(1, self.n + 1):
            if ab[h - 1][k - 1] < 1:
                continue
            sign = -ONE if a.mtilde_odd(h, k) % 2 else ONE
            to_odd = a.apply_deltas(
                even_deltas=((h, k, -1),), odd_deltas=((h, k, 1),)
            )
            out = out + self.phi(to_odd, sign)
            to_even = a.apply_deltas(
                even_deltas=((h, k, 1),), odd_deltas=((h, k, -1),)
            )
            out = out + self.phi(
                to_even, sign * GaussianRational(a.even[h - 1][k - 1] + 1)
            )
        return out

    def left_mul_diag_even(self, a: SuperMatrix) -> QElement:
        """X = (ro(A) | O): the idempotent acts as the identity."""
        return self.phi(a)

    def left_mul_lower0(self, h: int, a: SuperMatrix) -> QElement:
        """X = (lam - E_{h,h} + E_{h+1,h} | O)."""
        lam = a.ro()
        self._require(1 <= h < self.n and lam[h - 1] >= 1, "lower0", h, lam)
        out = self.zero()
        ab = a.absum()
        for k in range(1, self.n + 1):
            if ab[h - 1][k - 1] < 1:
                continue
            even = a.apply_deltas(even_deltas=((h, k, -1), (h + 1, k, 1)))
            out = out + self.phi(even, GaussianRational(a.even[h][k - 1] + 1))
            odd = a.apply_deltas(odd_deltas=((h, k, -1), (h + 1, k, 1)))
            out = out + self.phi(odd)
        return out

    def left_mul_lower1(self, h: int, a: SuperMatrix) -> QElement:
        """X = (lam - E_{h,h} | E_{h+1,h})."""
        lam = a.ro()
        self._require(1 <= h < self.n and lam[h - 1] >= 1, "lower1", h, lam)
        out = self.zero()
        ab = a.absum()
        for k in range(1, self.n + 1):
            if ab[h - 1][k - 1] < 1:
                continue
            sign = -ONE if a.mtilde_odd(h, k) % 2 else ONE
            even = a.apply_deltas(
                even_deltas=((h + 1, k, 1),), odd_deltas=((h, k, -1),)
            )
            out = out + self.phi(even, sign * GaussianRational(a.even[h][k - 1] + 1))
            odd = a.apply_deltas(
                even_deltas=((h, k, -1),), odd_deltas=((h + 1, k, 1),)
            )
            out = out + self.phi(odd, sign)
        return out

    def _require(self, ok: bool, shape: str, h: int, lam) -> None:
        if not ok:
            raise ValueError(f"invalid left factor: shape {shape}, h={h}, ro(A)={lam}")

    # -- shape dispatch ---------------------------------------------------------

    def generator_shape(self, x: SuperMatrix) -> Optional[tuple[str, int]]:
        """Recognize X as one of the six closed-form left-factor shapes
        relative to its own column sums; returns (tag, h) or None."""
        n = self.n
        ab = x.absum()
        off = [(i, j) for i in range(n) for j in range(n) if i != j and ab[i][j]]
        if not off:
            if all(not x.odd[i][j] for i in range(n) for j in range(n) if i != j):
                diag_odd = [i for i in range(n) if x.odd[i][i]]
                if not diag_odd:
                    return ("diag0", 0)
                if len(diag_odd) == 1:
                    return ("diag1", diag_odd[0] + 1)
            return None
        if len(off) != 1:
            return None
        i, j = off[0]
        if ab[i][j] != 1:
            return None
        if j == i + 1:
            tag = "upper0" if x.even[i][j] else "upper1"
            h = i + 1
        elif i == j + 1:
            tag = "lower0" if x.even[i][j] else "lower1"
            h = j + 1
        else:
            return None
        if tag in ("upper1", "lower1") and any(
            x.odd[a][b] for a in range(n) for b in range(n) if (a, b) != (i, j)
        ):
            return None
        if tag in ("upper0", "lower0") and any(
            x.odd[a][b] for a in range(n) for b in range(n)
        ):
            return None
        return (tag, h)

    def formula_product(self, x: SuperMatrix, a: SuperMatrix) -> QElement:
        """Closed-form phi_X phi_A; X must match a generator shape and its
        column sums must match ro(A) (otherwise the product is zero)."""
        if x.co() != a.ro():
            return self.zero()
        shape = self.generator_shape(x)
        if shape is None:
            raise ValueError(f"no closed-form shape matches X={x!r}")
        tag, h = shape
        return self.left_mul(tag, h, a)

    def left_mul(self, tag: str, h: int, a: SuperMatrix) -> QElement:
        if tag == "upper0":
            return self.left_mul_upper0(h, a)
        if tag == "upper1":
            return self.left_mul_upper1(h, a)
        if tag == "diag1":
            return self.left_mul_diag_odd(h, a)
        if tag == "diag0":
            return self.left_mul_diag_even(a)
        if tag == "lower0":
            return self.left_mul_lower0(h, a)
        if tag == "lower1":
            return self.left_mul_lower1(h, a)
        raise ValueError(f"unknown shape tag {tag!r}")

    def shape_x(self, tag: str, h: int, lam: tuple[int, ...]) -> Optional[SuperMatrix]:
        """The left-factor key of the given shape with co(X) = lam, or None
        when it falls outside M(N|Z_2)."""
        base = SuperMatrix.diagonal(lam)
        if tag == "diag0":
            return base
        if tag == "diag1":
            return base.apply_deltas(
                even_deltas=((h, h, -1),), odd_deltas=((h, h, 1),)
            )
        if tag == "upper0":
            return base.apply_deltas(even_deltas=((h, h + 1, 1), (h + 1, h + 1, -1)))
        if tag == "upper1":
            return base.apply_deltas(
                even_deltas=((h + 1, h + 1, -1),), odd_deltas=((h, h + 1, 1),)
            )
        if tag == "lower0":
            return base.apply_deltas(even_deltas=((h, h, -1), (h + 1, h, 1)))
        if tag == "lower1":
            return base.apply_deltas(
                even_deltas=((h, h, -1),), odd_deltas=((h + 1, h, 1),)
            )
        raise ValueError(f"unknown shape tag {tag!r}")


# ---------------------------------------------------------------------------
# exact sparse linear algebra over Q(eps)


def _pivot_inverse(columns: list[Coord]) -> tuple[list, list[list[GaussianRational]]]:
    """Column-echelon reduction over sparse coordinate dicts: select one
    pivot key per independent column, then invert the square pivot
    submatrix.  Fewer pivots than columns means the columns are dependent
    (and no inverse is returned)."""
    k = len(columns)
    if k == 0:
        return [], []
    reduced: list[tuple[object, Coord]] = []  # (pivot key, normalized column)
    pivots: list = []
    for col in columns:
        cur = dict(col)
        for pkey, pcol in reduced:
            factor = cur.get(pkey)
            if factor:
                for key, v in pcol.items():
                    acc = cur.get(key)
                    acc = -factor * v if acc is None else acc - factor * v
                    if acc:
                        cur[key] = acc
                    elif key in cur:
                        del cur[key]
        if not cur:
            continue
        pkey = next(iter(cur))
        inv_pv = ONE / cur[pkey]
        cur = {key: v * inv_pv for key, v in cur.items()}
        reduced.append((pkey, cur))
        pivots.append(pkey)
    if len(pivots) < k:
        return pivots, []
    zero = GaussianRational(0)
    mat = [[col.get(key, zero) for col in columns] for key in pivots]
    return pivots, _invert(mat)


def _invert(mat: list[list[GaussianRational]]) -> list[list[GaussianRational]]:
    k = len(mat)
    zero = GaussianRational(0)
    aug = [list(row) + [ONE if i == j else zero for j in range(k)] for i, row in enumerate(mat)]
    for col in range(k):
        pivot = next((i for i in range(col, k) if aug[i][col]), None)
        if pivot is None:
            raise ConsistencyError("singular pivot submatrix")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv_pv = ONE / aug[col][col]
        aug[col] = [v * inv_pv for v in aug[col]]
        for i in range(k):
            if i != col and aug[i][col]:
                factor = aug[i][col]
                aug[i] = [v - factor * p for v, p in zip(aug[i], aug[col])]
    return [row[k:] for row in aug]


def _solve_block(block: _Block, rhs: Coord) -> list[GaussianRational]:
    """Solve sum_j f_j * column_j = rhs exactly; raise on any residual."""
    zero = GaussianRational(0)
    k = len(block.candidates)
    if k == 0:
        if rhs:
            raise ConsistencyError("nonzero product with no candidate keys")
        return []
    b = [rhs.get(key, zero) for key in block.pivots]
    coeffs = [
        sum((block.inverse[i][j] * b[j] for j in range(k)), zero) for i in range(k)
    ]
    # full residual check against every coordinate
    residual = dict(rhs)
    for c, col in zip(coeffs, block.columns):
        if not c:
            continue
        for key, v in col.items():
            acc = residual.get(key, zero) - c * v
            if acc:
                residual[key] = acc
            elif key in residual:
                del residual[key]
    if residual:
        raise ConsistencyError("oracle decomposition has nonzero residual")
    return coeffs
