"""Verification layer of the realization: the defining relation suites at
each degree, the level-r basis built from the spanning elements, the
triangular multiplication formula, and the ordered-monomial independence
shadow of the isomorphism with the enveloping algebra.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional

from qschur import symgroup as sg
from qschur.blm import (
    ASpec,
    BLMAlgebra,
    BLMElement,
    Expr,
    Tag,
    exponent_vectors,
    expr_add,
    expr_scale,
    lam_power,
    super_bracket,
    word,
)
from qschur.scalars import EPS, ONE, GaussianRational
from qschur.schur import ConsistencyError, QElement, QSchur
from qschur.superindex import (
    SuperMatrix,
    position_class,
    positions_sorted,
    strict_prec,
    strict_super_matrices,
    super_matrices,
)


# ---------------------------------------------------------------------------
# exact rank / solving helpers over arbitrary hashable keys


def rank_of_columns(columns: list[dict]) -> int:
    """Exact rank of a family of sparse column vectors."""
    reduced: list[tuple[object, dict]] = []
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
        if cur:
            pkey = next(iter(cur))
            inv = ONE / cur[pkey]
            reduced.append((pkey, {k: v * inv for k, v in cur.items()}))
    return len(reduced)


def solve_square(mat: list[list[GaussianRational]], rhs: list[GaussianRational]):
    """Solve an invertible square system by Gaussian elimination."""
    k = len(mat)
    aug = [list(row) + [rhs[i]] for i, row in enumerate(mat)]
    for col in range(k):
        pivot = next((i for i in range(col, k) if aug[i][col]), None)
        if pivot is None:
            raise ConsistencyError("singular square system")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = ONE / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for i in range(k):
            if i != col and aug[i][col]:
                f = aug[i][col]
                aug[i] = [v - f * p for v, p in zip(aug[i], aug[col])]
    return [aug[i][k] for i in range(k)]


# ---------------------------------------------------------------------------
# the level-r basis from the spanning set


def blm_basis_rank(n: int, r: int) -> tuple[int, int]:
    """Size and exact rank of {A(j,r) : A strict, j_n = 0, |A|+|j| <= r}
    in the phi basis.

    Spanning elements with distinct strict parts have disjoint phi
    support, so the rank is the sum over strict parts of the rank of the
    generalized Vandermonde block (lam^j)."""
    size = 0
    rank = 0
    for a in strict_super_matrices(n, r):
        m = r - a.total()
        js = exponent_vectors(n, m)
        size += len(js)
        lams = list(sg.compositions(n, m))
        columns = [
            {lam: GaussianRational(lam_power(lam, j)) for lam in lams if lam_power(lam, j)}
            for j in js
        ]
        rank += rank_of_columns(columns)
    return size, rank


def reexpress(alg: BLMAlgebra, q_elt: QElement) -> BLMElement:
    """Write a level-r element in the coordinates {A(j,r)}.

    Groups the phi keys by strict part, then solves the square Vandermonde
    system per group (lam runs over all compositions of the residual
    degree, including those absent from the element)."""
    n, r = q_elt.n, q_elt.r
    groups: dict[SuperMatrix, dict[tuple[int, ...], GaussianRational]] = {}
    for m, coeff in q_elt.terms.items():
        diag = tuple(m.even[i][i] for i in range(n))
        strict = m.apply_deltas(
            even_deltas=tuple((i + 1, i + 1, -diag[i]) for i in range(n) if diag[i])
        )
        groups.setdefault(strict, {})[diag] = coeff
    zero = GaussianRational(0)
    out = alg.zero()
    for strict, coeffs in groups.items():
        mres = r - strict.total()
        lams = list(sg.compositions(n, mres))
        js = exponent_vectors(n, mres)
        mat = [[GaussianRational(lam_power(lam, j)) for j in js] for lam in lams]
        rhs = [coeffs.get(lam, zero) for lam in lams]
        sol = solve_square(mat, rhs)
        for j, c in zip(js, sol):
            if c:
                out = out + alg.element(strict, j, c)
    return out


# ---------------------------------------------------------------------------
# relation suites


@dataclass
class RelationReport:
    suite: str
    cases: int = 0
    failures: int = 0
    failed: list = field(default_factory=list)

    def record(self, name: str, ok: bool) -> None:
        self.cases += 1
        if not ok:
            self.failures += 1
            self.failed.append(name)

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "cases": self.cases,
            "failures": self.failures,
            "failed": self.failed[:50],
        }


def _pairing(i: int, j: int) -> int:
    """(epsilon_i, alpha_j) = delta_{i,j} - delta_{i,j+1}."""
    return (1 if i == j else 0) - (1 if i == j + 1 else 0)


def _gen_exprs(n: int):
    h = {i: word(("h", i)) for i in range(1, n + 1)}
    hb = {i: word(("hbar", i)) for i in range(1, n + 1)}
    e = {j: word(("e", j)) for j in range(1, n)}
    eb = {j: word(("ebar", j)) for j in range(1, n)}
    f = {j: word(("f", j)) for j in range(1, n)}
    fb = {j: word(("fbar", j)) for j in range(1, n)}
    return h, hb, e, eb, f, fb


def symbolic_relations(suite: str, n: int) -> Iterator[tuple[str, Expr]]:
    """The relation instances expressible as words in the generators; each
    yielded expression must vanish."""
    h, hb, e, eb, f, fb = _gen_exprs(n)
    two = GaussianRational(2)

    def delta(i, j):
        return 1 if i == j else 0

    if suite == "QS":
        for i in h:
            for j in h:
                yield f"QS1[h{i},h{j}]", super_bracket(h[i], h[j])
                yield f"QS1[h{i},hbar{j}]", super_bracket(h[i], hb[j])
        for i in h:
            for j in e:
                yield f"QS2[h{i},e{j}]", expr_add(
                    super_bracket(h[i], e[j]), expr_scale(e[j], -_pairing(i, j))
                )
                yield f"QS2[h{i},ebar{j}]", expr_add(
                    super_bracket(h[i], eb[j]), expr_scale(eb[j], -_pairing(i, j))
                )
                yield f"QS2[h{i},f{j}]", expr_add(
                    super_bracket(h[i], f[j]), expr_scale(f[j], _pairing(i, j))
                )
                yield f"QS2[h{i},fbar{j}]", expr_add(
                    super_bracket(h[i], fb[j]), expr_scale(fb[j], _pairing(i, j))
                )
    # shared blocks: the hbar anticommutators and the QR3/QS3..QR6/QS6 families
    tagQ = "QS" if suite == "QS" else "QR"
    for i in hb:
        for j in hb:
            rhs = expr_scale(h[i], -two) if i == j else {}
            yield f"{tagQ}1[hbar{i},hbar{j}]", expr_add(super_bracket(hb[i], hb[j]), rhs)
    for i in h:
        for j in e:
            yield f"{tagQ}3[hbar{i},e{j}]", expr_add(
                super_bracket(hb[i], e[j]), expr_scale(eb[j], -_pairing(i, j))
            )
            yield f"{tagQ}3[hbar{i},f{j}]", expr_add(
                super_bracket(hb[i], f[j]), expr_scale(fb[j], _pairing(i, j))
            )
            cond = 1 if i in (j, j + 1) else 0
            yield f"{tagQ}3[hbar{i},ebar{j}]", expr_add(
                super_bracket(hb[i], eb[j]), expr_scale(e[j], -cond)
            )
            yield f"{tagQ}3[hbar{i},fbar{j}]", expr_add(
                super_bracket(hb[i], fb[j]), expr_scale(f[j], -cond)
            )
    for i in e:
        for j in e:
            d = delta(i, j)
            yield f"{tagQ}4[e{i},f{j}]", expr_add(
                super_bracket(e[i], f[j]),
                expr_scale(expr_add(h[i], expr_scale(h[i + 1], -1)), -d),
            )
            yield f"{tagQ}4[ebar{i},fbar{j}]", expr_add(
                super_bracket(eb[i], fb[j]),
                expr_scale(expr_add(h[i], h[i + 1]), -d),
            )
            yield f"{tagQ}4[e{i},fbar{j}]", expr_add(
                super_bracket(e[i], fb[j]),
                expr_scale(expr_add(hb[i], expr_scale(hb[i + 1], -1)), -d),
            )
            yield f"{tagQ}4[ebar{i},f{j}]", expr_add(
                super_bracket(eb[i], f[j]),
                expr_scale(expr_add(hb[i], expr_scale(hb[i + 1], -1)), -d),
            )
    for i in e:
        for j in e:
            if abs(i - j) != 1:
                yield f"{tagQ}5[e{i},ebar{j}]", super_bracket(e[i], eb[j])
                yield f"{tagQ}5[ebar{i},ebar{j}]", super_bracket(eb[i], eb[j])
                yield f"{tagQ}5[f{i},fbar{j}]", super_bracket(f[i], fb[j])
                yield f"{tagQ}5[fbar{i},fbar{j}]", super_bracket(fb[i], fb[j])
            if abs(i - j) > 1:
                yield f"{tagQ}5[e{i},e{j}]", super_bracket(e[i], e[j])
                yield f"{tagQ}5[f{i},f{j}]", super_bracket(f[i], f[j])
    for i in range(1, n - 1):
        yield f"{tagQ}5[e{i},e{i+1}]~[ebar,ebar]", expr_add(
            super_bracket(e[i], e[i + 1]),
            expr_scale(super_bracket(eb[i], eb[i + 1]), -1),
        )
        yield f"{tagQ}5[e{i},ebar{i+1}]~[ebar,e]", expr_add(
            super_bracket(e[i], eb[i + 1]),
            expr_scale(super_bracket(eb[i], e[i + 1]), -1),
        )
        yield f"{tagQ}5[f{i+1},f{i}]~[fbar,fbar]", expr_add(
            super_bracket(f[i + 1], f[i]),
            expr_scale(super_bracket(fb[i + 1], fb[i]), -1),
        )
        yield f"{tagQ}5[f{i+1},fbar{i}]~[fbar,f]", expr_add(
            super_bracket(f[i + 1], fb[i]),
            expr_scale(super_bracket(fb[i + 1], f[i]), -1),
        )
    for i in e:
        for j in e:
            if abs(i - j) == 1:
                inner_e = super_bracket(e[i], e[j])
                inner_f = super_bracket(f[i], f[j])
                yield f"{tagQ}6[e{i},[e{i},e{j}]]", super_bracket(e[i], inner_e)
                yield f"{tagQ}6[ebar{i},[e{i},e{j}]]", super_bracket(eb[i], inner_e)
                yield f"{tagQ}6[f{i},[f{i},f{j}]]", super_bracket(f[i], inner_f)
                yield f"{tagQ}6[fbar{i},[f{i},f{j}]]", super_bracket(fb[i], inner_f)


def _family_level(alg: BLMAlgebra, tag: Tag, r: int) -> QElement:
    return alg.eval_level(alg.generator(tag), r)


def _filter_ro(q: QElement, lam) -> QElement:
    return QElement(q.n, q.r, {m: c for m, c in q.terms.items() if m.ro() == lam})


def _filter_co(q: QElement, lam) -> QElement:
    return QElement(q.n, q.r, {m: c for m, c in q.terms.items() if m.co() == lam})


def idempotent_relations(n: int, rmax: int) -> Iterator[tuple[str, bool]]:
    """The level-r relations that involve the idempotents 1_{lam,r}:
    orthogonality, the unit decomposition, commutation with the odd
    Cartan elements, and the weight-shift relations."""
    alg = BLMAlgebra(n)
    for r in range(rmax + 1):
        q = QSchur(n, r)
        lams = list(sg.compositions(n, r))
        idems = {lam: q.phi(SuperMatrix.diagonal(lam)) for lam in lams}
        for lam in lams:
            for mu in lams:
                prod = q.general_product(idems[lam], idems[mu])
                expected = idems[lam] if lam == mu else q.zero()
                yield f"QR1[1_{lam},1_{mu}]@r={r}", prod == expected
        one = q.one()
        for m in q.basis():
            ok = q.general_product(one, q.phi(m)) == q.phi(m)
            ok = ok and q.general_product(q.phi(m), one) == q.phi(m)
            yield f"QR1[unit,phi]@r={r}", ok
        for i in range(1, n + 1):
            hbar = _family_level(alg, ("hbar", i), r)
            for lam in lams:
                left = q.general_product(hbar, idems[lam])
                right = q.general_product(idems[lam], hbar)
                yield f"QR1[hbar{i},1_{lam}]@r={r}", left == right
                if lam[i - 1] == 0:
                    yield f"QR1[hbar{i} kills 1_{lam}]@r={r}", not left
        for j in range(1, n):
            alpha = tuple(
                (1 if t == j - 1 else 0) - (1 if t == j else 0) for t in range(n)
            )
            for kind in ("e", "ebar", "f", "fbar"):
                fam = _family_level(alg, (kind, j), r)
                shift = alpha if kind in ("e", "ebar") else tuple(-x for x in alpha)
                for lam in lams:
                    lhs = q.general_product(fam, idems[lam])
                    target = tuple(l + s for l, s in zip(lam, shift))
                    if all(x >= 0 for x in target):
                        rhs = q.general_product(idems[target], fam)
                    else:
                        rhs = q.zero()
                    yield f"QR2[{kind}{j},1_{lam}]@r={r}", lhs == rhs


def check_relations(suite: str, n: int, rmax: int) -> RelationReport:
    """Evaluate every relation instance of the suite degreewise for all
    r <= rmax; the report lists failures (must stay empty)."""
    if suite not in ("QR", "QS"):
        raise ValueError("suite must be 'QR' or 'QS'")
    alg = BLMAlgebra(n)
    report = RelationReport(suite)
    for name, expr in symbolic_relations(suite, n):
        diff = alg.eval_expr(expr)
        ok = all(not alg.eval_level(diff, r) for r in range(rmax + 1))
        report.record(name, ok)
    if suite == "QR":
        for name, ok in idempotent_relations(n, rmax):
            report.record(name, ok)
    return report


# ---------------------------------------------------------------------------
# triangular multiplication


_SHAPE_OF_TAG = {
    "e": "upper0",
    "ebar": "upper1",
    "hbar": "diag1",
    "f": "lower0",
    "fbar": "lower1",
}


def triangular_factors(a: SuperMatrix) -> list[tuple[str, int, int]]:
    """(tag, index, multiplicity) factors of the ordered product for a
    strict matrix: positions ascend in the total order; upper entries walk
    the (h,h+1) ladder up from h = i, lower entries the (h+1,h) ladder
    down from h = i-1, odd parts contribute one odd step first."""
    n = a.n
    ab = a.absum()
    factors: list[tuple[str, int, int]] = []
    for i, j in positions_sorted(n):
        cls = position_class((i, j))
        m = ab[i - 1][j - 1]
        if m == 0:
            continue
        if cls == 1:
            if a.odd[i - 1][i - 1]:
                factors.append(("hbar", i, 1))
            continue
        if cls == 2:
            if a.odd[i - 1][j - 1]:
                factors.append(("ebar", i, 1))
            if a.even[i - 1][j - 1]:
                factors.append(("e", i, a.even[i - 1][j - 1]))
            for h in range(i + 1, j):
                factors.append(("e", h, m))
        else:
            if a.odd[i - 1][j - 1]:
                factors.append(("fbar", i - 1, 1))
            if a.even[i - 1][j - 1]:
                factors.append(("f", i - 1, a.even[i - 1][j - 1]))
            for h in range(i - 2, j - 1, -1):
                factors.append(("f", h, m))
    return factors


def _apply_gen_level(q: QSchur, tag: str, h: int, elt: QElement) -> QElement:
    """Left-multiply a level-r element by the (un-scaled) generator family
    component matching each term's row sums."""
    out = q.zero()
    for a, coeff in elt.terms.items():
        lam = a.ro()
        if tag == "h":
            out = out + q.phi(a, coeff * GaussianRational(lam[h - 1]))
            continue
        shape = _SHAPE_OF_TAG[tag]
        x = q.shape_x(shape, h, lam)
        if x is None:
            continue
        out = out + q.left_mul(shape, h, a).scale(coeff)
    return out


@dataclass
class TriangularResult:
    matrix: SuperMatrix
    sign: Optional[GaussianRational]
    expansion: dict
    leading_ok: bool
    lower_ok: bool
    levels_ok: bool

    @property
    def ok(self) -> bool:
        return self.leading_ok and self.lower_ok and self.levels_ok

    def to_json(self) -> dict:
        return {
            "matrix": self.matrix.to_json(),
            "sign": None if self.sign is None else self.sign.to_json(),
            "leading_ok": self.leading_ok,
            "lower_ok": self.lower_ok,
            "levels_ok": self.levels_ok,
            "expansion": [
                {"matrix": m.to_json(), "j": list(j), "coeff": c.to_json()}
                for (m, j), c in sorted(
                    self.expansion.items(), key=lambda kv: (kv[0][1], kv[0][0])
                )
            ],
        }


def triangular_product(a: SuperMatrix, R: int | None = None) -> TriangularResult:
    """Compute the ordered generator product degreewise, re-express it in
    the spanning set, and check the triangular shape: +-A(A,0) plus terms
    strictly below A."""
    n = a.n
    if not a.is_strict():
        raise ValueError("triangular products are indexed by strict matrices")
    total = a.total()
    if R is None:
        R = total
    if R < total:
        raise ValueError("truncation R must be at least |A|")
    alg = BLMAlgebra(n)
    factors = triangular_factors(a)
    levels = []
    for r in range(R + 1):
        q = QSchur(n, r)
        elt = q.one()
        for tag, h, mult in reversed(factors):
            for _ in range(mult):
                elt = _apply_gen_level(q, tag, h, elt)
            if mult > 1:
                elt = elt.scale(GaussianRational(Fraction(1, math.factorial(mult))))
        levels.append(elt)
    expansion = reexpress(alg, levels[R]).terms
    combo = BLMElement(n, dict(expansion))
    levels_ok = all(alg.eval_level(combo, r) == levels[r] for r in range(R + 1))
    lead_key = (a, (0,) * n)
    sign = expansion.get(lead_key)
    leading_ok = sign is not None and (sign == ONE or sign == -ONE)
    lower_ok = all(key == lead_key or strict_prec(key[0], a) for key in expansion)
    return TriangularResult(a, sign, dict(expansion), leading_ok, lower_ok, levels_ok)


def triangular_report(n: int, max_total: int) -> RelationReport:
    report = RelationReport("triangular")
    for a in strict_super_matrices(n, max_total):
        res = triangular_product(a)
        report.record(f"triangular[{a.to_json()}]", res.ok)
    return report


# ---------------------------------------------------------------------------
# ordered-monomial (PBW-style) shadow


def pbw_word(a: SuperMatrix) -> list[Tag]:
    """The ordered generator word whose image realizes the monomial
    indexed by a (not necessarily strict) super matrix: lower ladders,
    then Cartan factors, then upper ladders, positions ascending."""
    n = a.n
    ab = a.absum()
    tags: list[Tag] = []
    for i, j in positions_sorted(n):
        cls = position_class((i, j))
        m = ab[i - 1][j - 1]
        if m == 0:
            continue
        if cls == 0:
            if a.odd[i - 1][j - 1]:
                tags.append(("fbar", i - 1))
            tags.extend([("f", i - 1)] * a.even[i - 1][j - 1])
            for h in range(i - 2, j - 1, -1):
                tags.extend([("f", h)] * m)
        elif cls == 1:
            if a.odd[i - 1][i - 1]:
                tags.append(("hbar", i))
            tags.extend([("h", i)] * a.even[i - 1][i - 1])
        else:
            if a.odd[i - 1][j - 1]:
                tags.append(("ebar", i))
            tags.extend([("e", i)] * a.even[i - 1][j - 1])
            for h in range(i + 1, j):
                tags.extend([("e", h)] * m)
    return tags


def pbw_image(alg: BLMAlgebra, a: SuperMatrix) -> BLMElement:
    return alg.eval_word(tuple(pbw_word(a)))


def stacked_coordinates(alg: BLMAlgebra, elt: BLMElement, R: int) -> dict:
    """phi coordinates of the truncated family, keyed by (r, basis key)."""
    out = {}
    for r in range(R + 1):
        q_elt = alg.eval_level(elt, r)
        for m, c in q_elt.terms.items():
            out[(r, m)] = c
    return out


def pbw_independence(n: int, max_total: int, R: int) -> tuple[int, int]:
    """(count, rank) of the images of the ordered monomials u^A over all
    A with |A| <= max_total, at truncation R."""
    alg = BLMAlgebra(n)
    mats = super_matrices_upto(n, max_total)
    columns = [stacked_coordinates(alg, pbw_image(alg, a), R) for a in mats]
    return len(mats), rank_of_columns(columns)


def super_matrices_upto(n: int, max_total: int) -> list[SuperMatrix]:
    out = []
    for r in range(max_total + 1):
        out.extend(super_matrices(n, r))
    return out


def pi_report(n: int, R: int, max_total: int = 2) -> dict:
    """(a) the QS relation suite on the generator images; (b) exact-rank
    independence of the ordered-monomial images at truncation R."""
    relations = check_relations("QS", n, R)
    count, rank = pbw_independence(n, max_total, R)
    return {
        "suite": "pi",
        "relations": relations.to_json(),
        "monomials": count,
        "rank": rank,
        "independent": rank == count,
        "ok": relations.failures == 0 and rank == count,
    }
