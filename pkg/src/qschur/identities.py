"""Registry of the rewriting identities that drive the closed-form
multiplication formulas: shift identities for d_A, Clifford/d_A
commutation, coset-sum shuffles, and the x_mu-absorption chain lemmas.

Identities are data, not code branches: each entry owns an enumerator of
its admissible parameter grid, an admissibility predicate and a builder
returning the two sides as SergeevElements, so the CLI can list, filter
and re-run them individually.  This layer is where a convention bug would
hide, so everything is checked by exact normal-form equality.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterator

from qschur import sergeev as sv
from qschur import symgroup as sg
from qschur.scalars import GaussianRational
from qschur.superindex import mtilde

Params = dict
Matrix = sg.Matrix


@dataclass(frozen=True)
class IdentityCase:
    name: str
    params: Params


@dataclass(frozen=True)
class IdentitySpec:
    name: str
    kind: str  # 'matrix' grids bound by rmax, 'chain' grids by chain_rmax
    enumerate_params: Callable[[int, int], Iterator[Params]]
    admissible: Callable[[Params], bool]
    build: Callable[[Params], tuple[sv.SergeevElement, sv.SergeevElement]]


REGISTRY: dict[str, IdentitySpec] = {}


def _register(name: str, kind: str, enumerate_params, admissible, build):
    REGISTRY[name] = IdentitySpec(name, kind, enumerate_params, admissible, build)


def check_identity(case: IdentityCase) -> str:
    """'pass', 'fail', or 'inadmissible' (hypotheses violated)."""
    spec = REGISTRY[case.name]
    if not spec.admissible(case.params):
        return "inadmissible"
    lhs, rhs = spec.build(case.params)
    return "pass" if lhs == rhs else "fail"


def enumerate_cases(name: str, nmax: int, rmax: int) -> Iterator[IdentityCase]:
    spec = REGISTRY[name]
    for params in spec.enumerate_params(nmax, rmax):
        yield IdentityCase(name, params)


# ---------------------------------------------------------------------------
# shared pieces


def nat_matrices(n: int, r: int) -> Iterator[Matrix]:
    for flat in sg.compositions(n * n, r):
        yield tuple(flat[i * n : (i + 1) * n] for i in range(n))


def _a_k(m: Matrix, h: int, k: int) -> int:
    """sum_{u<k} a_{h+1,u} (1-based h, k)."""
    return sum(m[h][u] for u in range(k - 1))


def _b_k(m: Matrix, h: int, k: int) -> int:
    """sum_{u>k} a_{h,u}."""
    return sum(m[h - 1][u] for u in range(k, len(m)))


def _bump(m: Matrix, h: int, k: int, sign: int) -> Matrix:
    """A +- (E_{h,k} - E_{h+1,k})."""
    rows = [list(row) for row in m]
    rows[h - 1][k - 1] += sign
    rows[h][k - 1] -= sign
    return tuple(tuple(row) for row in rows)


def _perm_elem(w: sg.Perm) -> sv.SergeevElement:
    return sv.SergeevElement.from_perm(w)


def _word_perm(word: list[int], r: int) -> sg.Perm:
    return sg.perm_from_word(word, r)


def _nu(m: Matrix) -> tuple[int, ...]:
    n = len(m)
    return tuple(m[i][j] for j in range(n) for i in range(n))


def _coset_sum(m: Matrix) -> sv.SergeevElement:
    return sv.coset_sum(_nu(m), sg.col_sums(m))


# ---------------------------------------------------------------------------
# Section 3.1-style shift identities for d_A


def _iter_shift_grid(nmax: int, rmax: int, which: str) -> Iterator[Params]:
    for n in range(2, nmax + 1):
        for r in range(1, rmax + 1):
            for m in nat_matrices(n, r):
                for h in range(1, n):
                    for k in range(1, n + 1):
                        bound = m[h][k - 1] if which == "p" else m[h - 1][k - 1]
                        for p in range(bound):
                            yield {"n": n, "A": m, "h": h, "k": k, which: p}


def _shift_up_sides(params):
    m, h, k, p = params["A"], params["h"], params["k"], params["p"]
    r = sum(sg.row_sums(m))
    lam_t = (0,) + sg.prefix_sums(sg.row_sums(m))
    lt = lam_t[h]
    ak, bk = _a_k(m, h, k), _b_k(m, h, k)
    at = mtilde(m, h, k)
    lhs = sg.compose(
        _word_perm(sg.ascending_run(lt + 1, lt + ak + p), r), sg.dmin_of_matrix(m)
    )
    rhs = sg.compose(
        sg.compose(
            _word_perm(sg.descending_run(lt, lt - bk + 1), r),
            sg.dmin_of_matrix(_bump(m, h, k, +1)),
        ),
        _word_perm(sg.ascending_run(at + 1, at + p), r),
    )
    return lhs, rhs


def _shift_down_sides(params):
    m, h, k, q = params["A"], params["h"], params["k"], params["q"]
    r = sum(sg.row_sums(m))
    lt = ((0,) + sg.prefix_sums(sg.row_sums(m)))[h]
    ak, bk = _a_k(m, h, k), _b_k(m, h, k)
    at = mtilde(m, h, k)
    lhs = sg.compose(
        _word_perm(sg.descending_run(lt - 1, lt - bk - q), r), sg.dmin_of_matrix(m)
    )
    rhs = sg.compose(
        sg.compose(
            _word_perm(sg.ascending_run(lt, lt + ak - 1), r),
            sg.dmin_of_matrix(_bump(m, h, k, -1)),
        ),
        _word_perm(sg.descending_run(at - 1, at - q), r),
    )
    return lhs, rhs


_register(
    "prop31i",
    "matrix",
    lambda nmax, rmax: _iter_shift_grid(nmax, rmax, "p"),
    lambda p: 0 <= p["p"] < p["A"][p["h"]][p["k"] - 1],
    lambda p: tuple(map(_perm_elem, _shift_up_sides(p))),
)

_register(
    "prop31ii",
    "matrix",
    lambda nmax, rmax: _iter_shift_grid(nmax, rmax, "q"),
    lambda p: 0 <= p["q"] < p["A"][p["h"] - 1][p["k"] - 1],
    lambda p: tuple(map(_perm_elem, _shift_down_sides(p))),
)


# ---------------------------------------------------------------------------
# Clifford transport along descending chains (Lemma 3.2)


def _iter_lem32(nmax: int, rmax: int) -> Iterator[Params]:
    for r in range(2, rmax + 1):
        for k in range(1, r + 1):
            for l in range(1, r - k + 1):
                windows_per_t = []
                for t in range(1, l + 1):
                    pivot = k + t - 1
                    windows_per_t.append(
                        [
                            (i, j)
                            for i in range(1, pivot)
                            for j in range(pivot, r)
                            if i <= j
                        ]
                    )
                for windows in itertools.product(*windows_per_t):
                    yield {"r": r, "k": k, "l": l, "windows": windows}


def _lem32_admissible(p) -> bool:
    r, k, l = p["r"], p["k"], p["l"]
    if not (1 <= k and k + l <= r):
        return False
    return all(
        i < k + t - 1 <= j and 1 <= i <= j <= r - 1
        for t, (i, j) in enumerate(p["windows"], start=1)
    )


def _lem32_build(p):
    r, k, l = p["r"], p["k"], p["l"]
    chain = sg.identity_perm(r)
    for i, j in p["windows"]:
        chain = sg.compose(chain, _word_perm(sg.descending_run(j, i), r))
    chain_elem = _perm_elem(chain)
    return (
        sv.SergeevElement.c(k, r) * chain_elem,
        chain_elem * sv.SergeevElement.c(k + l, r),
    )


_register("lem32", "matrix", _iter_lem32, _lem32_admissible, _lem32_build)


# ---------------------------------------------------------------------------
# Clifford / d_A commutation (Prop 3.3)


def _prop33i_build(p):
    m, h, k, q = p["A"], p["h"], p["k"], p["p"]
    r = sum(sg.row_sums(m))
    lt = ((0,) + sg.prefix_sums(sg.row_sums(m)))[h]
    ak = _a_k(m, h, k)
    at = mtilde(m, h, k)
    d = _perm_elem(sg.dmin_of_matrix(m))
    return (
        sv.SergeevElement.c(lt + ak + q + 1, r) * d,
        d * sv.SergeevElement.c(at + q + 1, r),
    )


def _prop33ii_build(p):
    m, h, k, q = p["A"], p["h"], p["k"], p["q"]
    r = sum(sg.row_sums(m))
    lt = ((0,) + sg.prefix_sums(sg.row_sums(m)))[h]
    bk = _b_k(m, h, k)
    at = mtilde(m, h, k)
    d = _perm_elem(sg.dmin_of_matrix(m))
    return (
        sv.SergeevElement.c(lt - bk - q, r) * d,
        d * sv.SergeevElement.c(at - q, r),
    )


_register(
    "prop33i",
    "matrix",
    lambda nmax, rmax: _iter_shift_grid(nmax, rmax, "p"),
    lambda p: 0 <= p["p"] < p["A"][p["h"]][p["k"] - 1],
    _prop33i_build,
)

_register(
    "prop33ii",
    "matrix",
    lambda nmax, rmax: _iter_shift_grid(nmax, rmax, "q"),
    lambda p: 0 <= p["q"] < p["A"][p["h"] - 1][p["k"] - 1],
    _prop33ii_build,
)


# ---------------------------------------------------------------------------
# coset-sum shuffle identities (Prop 3.4 and Cor 3.5)


def _iter_hk_grid(nmax: int, rmax: int, row_offset: int) -> Iterator[Params]:
    """(A, h, k) with a_{h+row_offset,k} >= 1."""
    for n in range(2, nmax + 1):
        for r in range(1, rmax + 1):
            for m in nat_matrices(n, r):
                for h in range(1, n):
                    for k in range(1, n + 1):
                        if m[h - 1 + row_offset][k - 1] >= 1:
                            yield {"n": n, "A": m, "h": h, "k": k}


def _prop34_build(p):
    m, h, k = p["A"], p["h"], p["k"]
    r = sum(sg.row_sums(m))
    at = mtilde(m, h, k)
    lhs = sv.staircase(r, at + 1, m[h][k - 1] - 1, +1) * _coset_sum(m)
    rhs = sv.staircase(r, at, m[h - 1][k - 1], -1) * _coset_sum(_bump(m, h, k, +1))
    return lhs, rhs


def _cor35_build(p):
    m, h, k = p["A"], p["h"], p["k"]
    r = sum(sg.row_sums(m))
    at = mtilde(m, h, k)
    lhs = sv.staircase(r, at - 1, m[h - 1][k - 1] - 1, -1) * _coset_sum(m)
    rhs = sv.staircase(r, at, m[h][k - 1], +1) * _coset_sum(_bump(m, h, k, -1))
    return lhs, rhs


_register(
    "prop34",
    "matrix",
    lambda nmax, rmax: _iter_hk_grid(nmax, rmax, 1),
    lambda p: p["A"][p["h"]][p["k"] - 1] >= 1,
    _prop34_build,
)

_register(
    "cor35",
    "matrix",
    lambda nmax, rmax: _iter_hk_grid(nmax, rmax, 0),
    lambda p: p["A"][p["h"] - 1][p["k"] - 1] >= 1,
    _cor35_build,
)


# ---------------------------------------------------------------------------
# chain lemmas (3.6 - 3.10)


def _cint(i, j, r):
    return sv.c_interval(i, j, r)


def _iter_lem36i(nmax: int, rmax: int) -> Iterator[Params]:
    for r in range(2, rmax + 1):
        for u in range(1, r):
            for t in range(1, u):
                yield {"r": r, "u": u, "t": t}


def _iter_lem36ii(nmax: int, rmax: int) -> Iterator[Params]:
    for r in range(2, rmax + 1):
        for u in range(1, r):
            for v in range(1, r - u + 1):
                yield {"r": r, "u": u, "v": v}


_register(
    "lem36i",
    "chain",
    _iter_lem36i,
    lambda p: 1 <= p["t"] < p["u"] and p["u"] + 1 <= p["r"],
    lambda p: (
        _cint(p["u"] - p["t"] + 1, p["u"] + 1, p["r"])
        * sv.staircase(p["r"], p["u"], p["t"], -1),
        sv.staircase(p["r"], p["u"], p["t"], -1)
        * _cint(p["u"] - p["t"] + 1, p["u"] + 1, p["r"]),
    ),
)

_register(
    "lem36ii",
    "chain",
    _iter_lem36ii,
    lambda p: p["v"] >= 1 and p["u"] + p["v"] <= p["r"],
    lambda p: (
        _cint(p["u"], p["u"] + p["v"], p["r"]) * sv.staircase(p["r"], p["u"], p["v"], +1),
        sv.staircase(p["r"], p["u"], p["v"], +1) * _cint(p["u"], p["u"] + p["v"], p["r"]),
    ),
)


def _blocks_contain(mu: sg.Composition, lo: int, hi: int) -> bool:
    """Some mu-block contains the 1-based positions lo..hi."""
    start = 0
    for part in mu:
        if start + 1 <= lo and hi <= start + part:
            return True
        start += part
    return False


def _iter_chain_mu(nmax: int, rmax: int, need_v: bool, need_t: bool, side: str):
    """Grids for the x_mu chain lemmas; ``side`` is 'down' (s_u..s_{u-t+1}
    in S_mu) or 'up' (s_u..s_{u+v-1} in S_mu)."""
    for n in range(1, nmax + 1):
        for r in range(2, rmax + 1):
            for mu in sg.compositions(n, r):
                for u in range(1, r):
                    if side == "down":
                        for t in range(1, u + 1):
                            if not _blocks_contain(mu, u - t + 1, u + 1):
                                continue
                            if need_v:
                                for v in range(1, r - u + 1):
                                    yield {"mu": mu, "u": u, "t": t, "v": v}
                            else:
                                yield {"mu": mu, "u": u, "t": t}
                    else:
                        for v in range(1, r - u + 1):
                            if not _blocks_contain(mu, u, u + v):
                                continue
                            if need_t:
                                for t in range(1, u + 1):
                                    yield {"mu": mu, "u": u, "t": t, "v": v}
                            else:
                                yield {"mu": mu, "u": u, "v": v}


def _down_admissible(p) -> bool:
    u, t = p["u"], p["t"]
    ok = 1 <= t <= u and _blocks_contain(p["mu"], u - t + 1, u + 1)
    if "v" in p:
        ok = ok and 1 <= p["v"] and u + p["v"] <= sum(p["mu"])
    return ok


def _up_admissible(p) -> bool:
    u, v = p["u"], p["v"]
    ok = 1 <= v and _blocks_contain(p["mu"], u, u + v)
    if "t" in p:
        ok = ok and 1 <= p["t"] <= u
    return ok


def _chain_env(p):
    mu = p["mu"]
    r = sum(mu)
    x = sv.x_sum(mu)
    return mu, r, x


def _lem37_build(part):
    def build(p):
        mu, r, x = _chain_env(p)
        u, t = p["u"], p["t"]
        chain = sv.staircase(r, u, t, -1)
        cu1 = sv.SergeevElement.c(u + 1, r)
        if part == "i":
            return x * chain, x.scale(GaussianRational(t + 1))
        if part == "ii":
            return x * cu1 * chain, x * _cint(u - t + 1, u + 1, r)
        if part == "iii":
            v = p["v"]
            lhs = x * cu1 * _cint(u + 1, u + v, r) * chain
            rhs = x.scale(GaussianRational(-(t + 1)))
            if v > 1:
                rhs = rhs + x * _cint(u - t + 1, u + 1, r) * _cint(u + 2, u + v, r)
            return lhs, rhs
        if part == "iv":
            lhs = x * cu1 * _cint(u - t + 1, u, r) * chain
            return lhs, sv.SergeevElement.zero(r)
        v = p["v"]  # part v
        lhs = x * cu1 * _cint(u - t + 1, u, r) * _cint(u + 1, u + v, r) * chain
        rhs = (x * _cint(u - t + 1, u + 1, r)).scale(GaussianRational(t))
        return lhs, rhs

    return build


def _lem38_build(part):
    def build(p):
        mu, r, x = _chain_env(p)
        u, t = p["u"], p["t"]
        chain = sv.staircase(r, u, t, -1)
        if part == "i":
            v = p["v"]
            lhs = x * _cint(u + 1, u + v, r) * chain
            rhs = x * _cint(u - t + 1, u + 1, r)
            if v > 1:
                rhs = rhs + (x * _cint(u + 2, u + v, r)).scale(GaussianRational(t + 1))
            return lhs, rhs
        if part == "ii":
            lhs = x * _cint(u - t + 1, u, r) * chain
            return lhs, (x * _cint(u - t + 1, u + 1, r)).scale(GaussianRational(t))
        v = p["v"]  # part iii
        lhs = x * _cint(u - t + 1, u, r) * _cint(u + 1, u + v, r) * chain
        if v == 1:
            return lhs, sv.SergeevElement.zero(r)
        rhs = (x * _cint(u - t + 1, u + 1, r) * _cint(u + 2, u + v, r)).scale(
            GaussianRational(t)
        )
        return lhs, rhs

    return build


def _lem39_build(part):
    def build(p):
        mu, r, x = _chain_env(p)
        u, v = p["u"], p["v"]
        chain = sv.staircase(r, u, v, +1)
        cu = sv.SergeevElement.c(u, r)
        if part == "i":
            return x * chain, x.scale(GaussianRational(v + 1))
        if part == "ii":
            return x * cu * chain, x * _cint(u, u + v, r)
        if part == "iii":
            lhs = x * cu * _cint(u + 1, u + v, r) * chain
            return lhs, sv.SergeevElement.zero(r)
        t = p["t"]
        if part == "iv":
            lhs = x * cu * _cint(u - t + 1, u, r) * chain
            rhs = x.scale(GaussianRational(-(v + 1)))
            if t > 1:
                rhs = rhs - x * _cint(u - t + 1, u - 1, r) * _cint(u, u + v, r)
            return lhs, rhs
        # part v
        lhs = x * cu * _cint(u - t + 1, u, r) * _cint(u + 1, u + v, r) * chain
        rhs = (x * _cint(u, u + v, r)).scale(GaussianRational(-v))
        return lhs, rhs

    return build


def _lem310_build(part):
    def build(p):
        mu, r, x = _chain_env(p)
        u, v = p["u"], p["v"]
        chain = sv.staircase(r, u, v, +1)
        if part == "i":
            lhs = x * _cint(u + 1, u + v, r) * chain
            return lhs, (x * _cint(u, u + v, r)).scale(GaussianRational(v))
        t = p["t"]
        if part == "ii":
            lhs = x * _cint(u - t + 1, u, r) * chain
            rhs = x * _cint(u, u + v, r)
            if t > 1:
                rhs = rhs + (x * _cint(u - t + 1, u - 1, r)).scale(
                    GaussianRational(v + 1)
                )
            return lhs, rhs
        # part iii
        lhs = x * _cint(u - t + 1, u, r) * _cint(u + 1, u + v, r) * chain
        if t == 1:
            return lhs, sv.SergeevElement.zero(r)
        rhs = (x * _cint(u - t + 1, u - 1, r) * _cint(u, u + v, r)).scale(
            GaussianRational(v)
        )
        return lhs, rhs

    return build


for _part in "i ii iii iv v".split():
    _needs_v = _part in ("iii", "v")
    _register(
        f"lem37{_part}",
        "chain",
        (lambda nv: lambda nmax, rmax: _iter_chain_mu(nmax, rmax, nv, False, "down"))(
            _needs_v
        ),
        _down_admissible,
        _lem37_build(_part),
    )

for _part in "i ii iii".split():
    _needs_v = _part in ("i", "iii")
    _register(
        f"lem38{_part}",
        "chain",
        (lambda nv: lambda nmax, rmax: _iter_chain_mu(nmax, rmax, nv, False, "down"))(
            _needs_v
        ),
        _down_admissible,
        _lem38_build(_part),
    )

for _part in "i ii iii iv v".split():
    _needs_t = _part in ("iv", "v")
    _register(
        f"lem39{_part}",
        "chain",
        (lambda nt: lambda nmax, rmax: _iter_chain_mu(nmax, rmax, True, nt, "up"))(
            _needs_t
        ),
        _up_admissible,
        _lem39_build(_part),
    )

for _part in "i ii iii".split():
    _needs_t = _part in ("ii", "iii")
    _register(
        f"lem310{_part}",
        "chain",
        (lambda nt: lambda nmax, rmax: _iter_chain_mu(nmax, rmax, True, nt, "up"))(
            _needs_t
        ),
        _up_admissible,
        _lem310_build(_part),
    )


# ---------------------------------------------------------------------------
# suite runner


@dataclass
class SuiteReport:
    suite: str
    cases: int = 0
    failures: int = 0
    by_name: dict = field(default_factory=dict)
    failed_cases: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "cases": self.cases,
            "failures": self.failures,
            "by_name": self.by_name,
            "failed_cases": self.failed_cases[:20],
        }


def _eval_chunk(chunk: list[tuple[str, Params]]) -> list[tuple[str, Params]]:
    failed = []
    for name, params in chunk:
        lhs, rhs = REGISTRY[name].build(params)
        if lhs != rhs:
            failed.append((name, params))
    return failed


def run_section3(
    nmax: int = 3,
    rmax: int = 5,
    chain_rmax: int | None = None,
    names: list[str] | None = None,
    jobs: int = 1,
) -> SuiteReport:
    """Run the whole registry (or the named entries) on its admissible grid.

    Matrix-indexed entries use ``rmax``; the chain lemmas use
    ``chain_rmax`` (defaults to rmax + 1, matching the wider grid they are
    validated on)."""
    if chain_rmax is None:
        chain_rmax = rmax + 1
    report = SuiteReport("section3")
    selected = names or sorted(REGISTRY)
    for name in selected:
        spec = REGISTRY[name]
        bound = chain_rmax if spec.kind == "chain" else rmax
        cases = [(name, params) for params in spec.enumerate_params(nmax, bound)]
        if jobs > 1 and len(cases) > 64:
            import multiprocessing as mp

            size = max(1, len(cases) // (jobs * 8))
            chunks = [cases[i : i + size] for i in range(0, len(cases), size)]
            with mp.Pool(jobs) as pool:
                failed = [f for part in pool.map(_eval_chunk, chunks) for f in part]
        else:
            failed = _eval_chunk(cases)
        report.by_name[name] = {"cases": len(cases), "failures": len(failed)}
        report.cases += len(cases)
        report.failures += len(failed)
        report.failed_cases.extend(
            {"name": n, "params": _params_json(p)} for n, p in failed
        )
    return report


def _params_json(params: Params) -> dict:
    out = {}
    for key, val in params.items():
        if key == "A":
            out[key] = [list(row) for row in val]
        elif key == "windows":
            out[key] = [list(w) for w in val]
        elif key == "mu":
            out[key] = list(val)
        else:
            out[key] = val
    return out
