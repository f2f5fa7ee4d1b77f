"""Degreewise realization of the enveloping algebra inside the product of
the Q(n,r): spanning elements A(j,r), generator multiplication, relation
suites, the triangular multiplication formula and the ordered-monomial
independence check.

The canonical representation of an element of the realized algebra is its
expansion in the spanning set {A(j)}: a finite map from (strict super
matrix, exponent vector) to Q(eps).  A(j,r) evaluates at level r to
sum_lam lam^j phi_{A + diag(lam)} (with 0^0 = 1), and the generator
formulas rewrite products back into the same spanning set with
coefficients independent of r, so all products here are symbolic and only
verification descends to Q(n,r).

Generator tags: ("h", i) is the weight element O(e_i); ("hbar", i),
("ebar", j), ("fbar", j) carry the scalar eps; ("e", j), ("f", j) are the
even upper/lower units.  Barred tags are odd, the rest even.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Optional

from qschur import symgroup as sg
from qschur.scalars import EPS, ONE, GaussianRational
from qschur.schur import QElement, QSchur, ConsistencyError
from qschur.superindex import (
    SuperMatrix,
    position_class,
    positions_sorted,
    strict_super_matrices,
    super_matrices,
    strict_prec,
)

ASpec = tuple[SuperMatrix, tuple[int, ...]]
Tag = tuple[str, int]

_PARITY = {"h": 0, "hbar": 1, "e": 0, "ebar": 1, "f": 0, "fbar": 1}
_SCALAR = {
    "h": ONE,
    "hbar": EPS,
    "e": ONE,
    "ebar": EPS,
    "f": ONE,
    "fbar": EPS,
}


class BLMElement:
    """Element of the realized algebra in the {A(j)} coordinates."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict[ASpec, GaussianRational] | None = None):
        self.n = n
        self.terms = {} if terms is None else terms

    def __add__(self, other: "BLMElement") -> "BLMElement":
        if self.n != other.n:
            raise ValueError("rank mismatch")
        terms = dict(self.terms)
        for k, c in other.terms.items():
            acc = terms.get(k)
            acc = c if acc is None else acc + c
            if acc:
                terms[k] = acc
            elif k in terms:
                del terms[k]
        return BLMElement(self.n, terms)

    def __sub__(self, other: "BLMElement") -> "BLMElement":
        return self + (-other)

    def __neg__(self) -> "BLMElement":
        return BLMElement(self.n, {k: -c for k, c in self.terms.items()})

    def scale(self, a) -> "BLMElement":
        if not a:
            return BLMElement(self.n)
        return BLMElement(self.n, {k: c * a for k, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BLMElement)
            and self.n == other.n
            and self.terms == other.terms
        )

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for (m, j), c in sorted(self.terms.items(), key=lambda kv: (kv[0][1], kv[0][0])):
            bits.append(f"({c})*A({m.to_json()}, j={list(j)})")
        return " + ".join(bits)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "terms": [
                {"matrix": m.to_json(), "j": list(j), "coeff": c.to_json()}
                for (m, j), c in sorted(
                    self.terms.items(), key=lambda kv: (kv[0][1], kv[0][0])
                )
            ],
        }


@dataclass(frozen=True)
class TruncatedFamily:
    """Components of an element of prod_r Q(n,r) through level R."""

    n: int
    R: int
    components: tuple[QElement, ...]

    def __add__(self, other: "TruncatedFamily") -> "TruncatedFamily":
        self._check(other)
        return TruncatedFamily(
            self.n, self.R, tuple(a + b for a, b in zip(self.components, other.components))
        )

    def __sub__(self, other: "TruncatedFamily") -> "TruncatedFamily":
        self._check(other)
        return TruncatedFamily(
            self.n, self.R, tuple(a - b for a, b in zip(self.components, other.components))
        )

    def scale(self, a) -> "TruncatedFamily":
        return TruncatedFamily(self.n, self.R, tuple(c.scale(a) for c in self.components))

    def mul(self, other: "TruncatedFamily") -> "TruncatedFamily":
        """Componentwise product (components of distinct degrees multiply
        to zero)."""
        self._check(other)
        out = []
        for r, (a, b) in enumerate(zip(self.components, other.components)):
            out.append(QSchur(self.n, r).general_product(a, b))
        return TruncatedFamily(self.n, self.R, tuple(out))

    def __bool__(self) -> bool:
        return any(self.components)

    def _check(self, other: "TruncatedFamily") -> None:
        if (self.n, self.R) != (other.n, other.R):
            raise ValueError("family shape mismatch")

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "R": self.R,
            "components": [c.to_json() for c in self.components],
        }


def exponent_vectors(n: int, max_total: int) -> list[tuple[int, ...]]:
    """{j in N^n : j_n = 0, |j| <= max_total}, the exponent index of the
    level-r basis."""
    out = []
    for total in range(max_total + 1):
        for head in sg.compositions(n - 1, total) if n > 1 else ([()] if total == 0 else []):
            out.append(tuple(head) + (0,))
    return out


def lam_power(lam: tuple[int, ...], j: tuple[int, ...]) -> int:
    """lam^j with the 0^0 = 1 convention."""
    out = 1
    for base, exp in zip(lam, j):
        if exp:
            if base == 0:
                return 0
            out *= base**exp
    return out


class BLMAlgebra:
    """The realization machinery at a fixed matrix rank n."""

    _instances: dict[int, "BLMAlgebra"] = {}

    def __new__(cls, n: int):
        inst = cls._instances.get(n)
        if inst is None:
            inst = super().__new__(cls)
            inst.n = n
            cls._instances[n] = inst
        return inst

    # -- construction -------------------------------------------------------

    def zero(self) -> BLMElement:
        return BLMElement(self.n)

    def element(self, matrix: SuperMatrix, j: tuple[int, ...], coeff=ONE) -> BLMElement:
        if not matrix.is_strict():
            raise ValueError("spanning keys need a zero even diagonal")
        if len(j) != self.n or any(x < 0 for x in j):
            raise ValueError("exponent vector must be a length-n natural vector")
        coeff = coeff if isinstance(coeff, GaussianRational) else GaussianRational(coeff)
        if not coeff:
            return self.zero()
        return BLMElement(self.n, {(matrix, tuple(j)): coeff})

    def one(self) -> BLMElement:
        return self.element(SuperMatrix.zero(self.n), (0,) * self.n)

    def generator(self, tag: Tag) -> BLMElement:
        """The distinguished generators, with eps on the odd ones."""
        kind, idx = tag
        n = self.n
        zero_j = (0,) * n
        if kind == "h":
            if not 1 <= idx <= n:
                raise ValueError(f"h_{idx} out of range")
            j = tuple(1 if k == idx - 1 else 0 for k in range(n))
            return self.element(SuperMatrix.zero(n), j)
        if kind == "hbar":
            if not 1 <= idx <= n:
                raise ValueError(f"hbar_{idx} out of range")
            return self.element(SuperMatrix.unit(n, idx, idx, "odd"), zero_j, EPS)
        if not 1 <= idx <= n - 1:
            raise ValueError(f"{kind}_{idx} out of range")
        if kind == "e":
            return self.element(SuperMatrix.unit(n, idx, idx + 1, "even"), zero_j)
        if kind == "ebar":
            return self.element(SuperMatrix.unit(n, idx, idx + 1, "odd"), zero_j, EPS)
        if kind == "f":
            return self.element(SuperMatrix.unit(n, idx + 1, idx, "even"), zero_j)
        if kind == "fbar":
            return self.element(SuperMatrix.unit(n, idx + 1, idx, "odd"), zero_j, EPS)
        raise ValueError(f"unknown generator kind {kind!r}")

    def generators(self) -> dict[Tag, BLMElement]:
        out = {}
        for i in range(1, self.n + 1):
            out[("h", i)] = self.generator(("h", i))
            out[("hbar", i)] = self.generator(("hbar", i))
        for j in range(1, self.n):
            for kind in ("e", "ebar", "f", "fbar"):
                out[(kind, j)] = self.generator((kind, j))
        return out

    # -- generator multiplication (the closed forms, r-uniform) -------------

    def apply_gen(self, tag: Tag, elt: BLMElement) -> BLMElement:
        """Left-multiply by the generator named by ``tag`` (including its
        eps scalar for the odd ones)."""
        kind, h = tag
        out = self.zero()
        for (a, j), coeff in elt.terms.items():
            out = out + self._gen_key(kind, h, a, j).scale(coeff)
        scalar = _SCALAR[kind]
        return out if scalar is ONE else out.scale(scalar)

    def gen_mul_key(self, kind: str, h: int, a: SuperMatrix, j: tuple[int, ...]) -> BLMElement:
        """Product (un-scaled generator) * A(j) in the spanning set."""
        return self._gen_key(kind, h, a, j)

    def gen_mul(
        self, kind: str, h: int, a: SuperMatrix, j: tuple[int, ...], r: int
    ) -> QElement:
        """The level-r product, evaluated through A(j,r)."""
        return self.eval_level(self._gen_key(kind, h, a, j), r)

    def _gen_key(self, kind: str, h: int, a: SuperMatrix, j: tuple[int, ...]) -> BLMElement:
        n = self.n
        if kind == "h":
            row = sum(a.absum()[h - 1])
            out = self.element(a, _bump_j(j, h, +1))
            if row:
                out = out + self.element(a, j, GaussianRational(row))
            return out
        if kind == "hbar":
            return self._hbar_key(h, a, j)
        if kind == "e":
            return self._e_key(h, a, j)
        if kind == "ebar":
            return self._ebar_key(h, a, j)
        if kind == "f":
            return self._f_key(h, a, j)
        if kind == "fbar":
            return self._fbar_key(h, a, j)
        raise ValueError(f"unknown generator kind {kind!r}")

    def _acc(self, out, a, deltas_even, deltas_odd, j, coeff):
        if not coeff:
            return out
        target = a.apply_deltas(deltas_even, deltas_odd)
        if target is None or not target.is_strict():
            return out
        return out + self.element(target, j, coeff)

    def _hbar_key(self, h, a, j):
        n = self.n
        ab, ae = a.absum(), a.even
        out = self.zero()
        for k in range(1, n + 1):
            if k == h:
                continue
            sign = -ONE if a.mtilde_odd(h, k) % 2 else ONE
            if a.odd[h - 1][k - 1]:
                coeff = sign * GaussianRational(ab[h - 1][k - 1])
                out = self._acc(out, a, ((h, k, 1),), ((h, k, -1),), j, coeff)
            else:
                out = self._acc(out, a, ((h, k, -1),), ((h, k, 1),), j, sign)
        sgn = -ONE if a.mtilde_odd(h, h) % 2 else ONE
        jh = j[h - 1]
        for k in range(jh + 1):
            binom = GaussianRational(math.comb(jh, k))
            out = self._acc(out, a, (), ((h, h, 1),), _bump_j(j, h, -k), sgn * binom)
            sign_k = -binom if k % 2 else binom
            out = self._acc(
                out, a, (), ((h, h, -1),), _bump_j(j, h, 1 - k), sgn * sign_k
            )
        return out

    def _e_key(self, h, a, j):
        n = self.n
        ae = a.even
        out = self.zero()
        for k in range(1, n + 1):
            if k in (h, h + 1):
                continue
            coeff = GaussianRational(ae[h - 1][k - 1] + 1)
            out = self._acc(out, a, ((h, k, 1), (h + 1, k, -1)), (), j, coeff)
        jh = j[h - 1]
        for k in range(jh + 1):
            binom = math.comb(jh, k)
            coeff = GaussianRational(-binom if k % 2 else binom)
            out = self._acc(out, a, ((h + 1, h, -1),), (), _bump_j(j, h, 1 - k), coeff)
        jh1 = j[h]
        lead = GaussianRational(ae[h - 1][h] + 1)
        for k in range(jh1 + 1):
            coeff = lead * GaussianRational(math.comb(jh1, k))
            out = self._acc(out, a, ((h, h + 1, 1),), (), _bump_j(j, h + 1, -k), coeff)
        for k in range(1, n + 1):
            out = self._acc(out, a, (), ((h, k, 1), (h + 1, k, -1)), j, ONE)
        return out

    def _ebar_key(self, h, a, j):
        n = self.n
        ae = a.even
        out = self.zero()
        for k in range(1, n + 1):
            if k != h:
                sign = -ONE if a.mtilde_odd(h + 1, k) % 2 else ONE
                coeff = sign * GaussianRational(ae[h - 1][k - 1] + 1)
                out = self._acc(out, a, ((h, k, 1),), ((h + 1, k, -1),), j, coeff)
            if k != h + 1:
                sign = -ONE if a.mtilde_odd(h, k) % 2 else ONE
                out = self._acc(out, a, ((h + 1, k, -1),), ((h, k, 1),), j, sign)
        sgn = -ONE if a.mtilde_odd(h + 1, h) % 2 else ONE
        jh = j[h - 1]
        for k in range(jh + 1):
            binom = math.comb(jh, k)
            coeff = sgn * GaussianRational(-binom if k % 2 else binom)
            out = self._acc(out, a, (), ((h + 1, h, -1),), _bump_j(j, h, 1 - k), coeff)
        sgn = -ONE if a.mtilde_odd(h, h + 1) % 2 else ONE
        jh1 = j[h]
        for k in range(jh1 + 1):
            coeff = sgn * GaussianRational(math.comb(jh1, k))
            out = self._acc(out, a, (), ((h, h + 1, 1),), _bump_j(j, h + 1, -k), coeff)
        return out

    def _f_key(self, h, a, j):
        n = self.n
        ae = a.even
        out = self.zero()
        for k in range(1, n + 1):
            if k in (h, h + 1):
                continue
            coeff = GaussianRational(ae[h][k - 1] + 1)
            out = self._acc(out, a, ((h, k, -1), (h + 1, k, 1)), (), j, coeff)
        jh = j[h - 1]
        lead = GaussianRational(ae[h][h - 1] + 1)
        for k in range(jh + 1):
            coeff = lead * GaussianRational(math.comb(jh, k))
            out = self._acc(out, a, ((h + 1, h, 1),), (), _bump_j(j, h, -k), coeff)
        jh1 = j[h]
        for k in range(jh1 + 1):
            binom = math.comb(jh1, k)
            coeff = GaussianRational(-binom if k % 2 else binom)
            out = self._acc(
                out, a, ((h, h + 1, -1),), (), _bump_j(j, h + 1, 1 - k), coeff
            )
        for k in range(1, n + 1):
            out = self._acc(out, a, (), ((h, k, -1), (h + 1, k, 1)), j, ONE)
        return out

    def _fbar_key(self, h, a, j):
        n = self.n
        ae = a.even
        out = self.zero()
        for k in range(1, n + 1):
            if k != h + 1:
                sign = -ONE if a.mtilde_odd(h, k) % 2 else ONE
                coeff = sign * GaussianRational(ae[h][k - 1] + 1)
                out = self._acc(out, a, ((h + 1, k, 1),), ((h, k, -1),), j, coeff)
            if k != h:
                sign = -ONE if a.mtilde_odd(h, k) % 2 else ONE
                out = self._acc(out, a, ((h, k, -1),), ((h + 1, k, 1),), j, sign)
        sgn = -ONE if a.mtilde_odd(h, h + 1) % 2 else ONE
        jh1 = j[h]
        for k in range(jh1 + 1):
            binom = math.comb(jh1, k)
            coeff = sgn * GaussianRational(-binom if k % 2 else binom)
            out = self._acc(
                out, a, (), ((h, h + 1, -1),), _bump_j(j, h + 1, 1 - k), coeff
            )
        sgn = -ONE if a.mtilde_odd(h, h) % 2 else ONE
        jh = j[h - 1]
        for k in range(jh + 1):
            coeff = sgn * GaussianRational(math.comb(jh, k))
            out = self._acc(out, a, (), ((h + 1, h, 1),), _bump_j(j, h, -k), coeff)
        return out

    # -- evaluation ---------------------------------------------------------

    def a_jr(self, a: SuperMatrix, j: tuple[int, ...], r: int) -> QElement:
        """A(j,r) = sum_lam lam^j phi_{A+lam}, zero when |A| > r."""
        q = QSchur(self.n, r)
        total = a.total()
        if total > r:
            return q.zero()
        terms = {}
        for lam in sg.compositions(self.n, r - total):
            coeff = lam_power(lam, j)
            if not coeff:
                continue
            key = a.apply_deltas(
                even_deltas=tuple((i + 1, i + 1, lam[i]) for i in range(self.n) if lam[i])
            )
            terms[key] = GaussianRational(coeff)
        return QElement(self.n, r, terms)

    def eval_level(self, elt: BLMElement, r: int) -> QElement:
        out = QSchur(self.n, r).zero()
        for (a, j), coeff in elt.terms.items():
            out = out + self.a_jr(a, j, r).scale(coeff)
        return out

    def truncate(self, elt: BLMElement, R: int) -> TruncatedFamily:
        return TruncatedFamily(
            self.n, R, tuple(self.eval_level(elt, r) for r in range(R + 1))
        )

    # -- words in the generators ---------------------------------------------

    def eval_word(self, word: tuple[Tag, ...]) -> BLMElement:
        out = self.one()
        for tag in reversed(word):
            out = self.apply_gen(tag, out)
        return out

    def eval_expr(self, expr: dict[tuple[Tag, ...], GaussianRational]) -> BLMElement:
        out = self.zero()
        for word, coeff in expr.items():
            out = out + self.eval_word(word).scale(coeff)
        return out


def _bump_j(j: tuple[int, ...], h: int, delta: int) -> tuple[int, ...]:
    out = list(j)
    out[h - 1] += delta
    return tuple(out)


def blm_algebra(n: int) -> BLMAlgebra:
    return BLMAlgebra(n)


# ---------------------------------------------------------------------------
# word expressions (free combinations of generator words)

Expr = dict[tuple[Tag, ...], GaussianRational]


def word(*tags: Tag) -> Expr:
    return {tuple(tags): ONE}


def expr_add(*parts: Expr) -> Expr:
    out: Expr = {}
    for part in parts:
        for w, c in part.items():
            acc = out.get(w)
            acc = c if acc is None else acc + c
            if acc:
                out[w] = acc
            elif w in out:
                del out[w]
    return out


def expr_scale(expr: Expr, a) -> Expr:
    if not a:
        return {}
    return {w: c * a for w, c in expr.items()}


def expr_mul(x: Expr, y: Expr) -> Expr:
    out: Expr = {}
    for wx, cx in x.items():
        for wy, cy in y.items():
            w = wx + wy
            c = cx * cy
            acc = out.get(w)
            acc = c if acc is None else acc + c
            if acc:
                out[w] = acc
            elif w in out:
                del out[w]
    return out


def expr_parity(expr: Expr) -> int:
    """Parity of a homogeneous expression (error on mixed parity)."""
    parities = {
        sum(_PARITY[kind] for kind, _ in w) % 2 for w in expr if expr[w]
    }
    if len(parities) > 1:
        raise ValueError("super bracket of a mixed-parity expression")
    return parities.pop() if parities else 0


def super_bracket(x: Expr, y: Expr) -> Expr:
    """[x, y] = xy - (-1)^{p(x)p(y)} yx on homogeneous expressions."""
    sign = -1 if expr_parity(x) * expr_parity(y) else 1
    return expr_add(expr_mul(x, y), expr_scale(expr_mul(y, x), -sign))
