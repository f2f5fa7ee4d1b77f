"""The Sergeev superalgebra H^c_r = S_r x| C_r with exact normal-form
arithmetic.

Normal form: every element is a combination of pairs (w, mask) denoting
w * c^mask with the Clifford monomial on the right in increasing index
order; bit i-1 of ``mask`` means the factor c_i is present.  Defining
relations:

    c_i^2 = -1,  c_i c_j = -c_j c_i  (i != j),
    s_i c_i = c_{i+1} s_i,  s_i c_{i+1} = c_i s_i,  s_i c_j = c_j s_i,

so the conjugation convention is w c_i w^{-1} = c_{w(i)}, i.e. pulling a
mask leftward past v relabels bits by v and pulling rightward by v^{-1}.
Parity of (w, mask) is popcount(mask) mod 2; permutations are even.
"""

from __future__ import annotations

import functools
from typing import Iterable

from qschur import symgroup as sg
from qschur.scalars import ONE, GaussianRational
from qschur.superindex import SuperMatrix

Term = tuple[sg.Perm, int]


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _mask_bits(mask: int) -> list[int]:
    """0-based bit positions, ascending."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def clifford_merge(a: int, b: int) -> tuple[int, int]:
    """Normal-form product c^a * c^b: (sign exponent, merged mask).

    Each bit of b moves left past the higher bits of a (one transposition
    each); coinciding bits square to -1.
    """
    sign = 0
    for j in _mask_bits(b):
        sign += _popcount(a >> (j + 1))
    sign += _popcount(a & b)
    return sign & 1, a ^ b


def conjugate_mask(mask: int, vinv: sg.Perm) -> tuple[int, int]:
    """v^{-1} c^mask v: relabel bits by vinv with the resorting sign."""
    if not mask:
        return 0, 0
    moved = [vinv[i] for i in _mask_bits(mask)]
    sign = sum(
        1 for x in range(len(moved)) for y in range(x + 1, len(moved)) if moved[x] > moved[y]
    )
    new = 0
    for i in moved:
        new |= 1 << i
    return sign & 1, new


def clifford_normalize(factors: Iterable[int], r: int) -> tuple[GaussianRational, int]:
    """Normal form of a product of generators c_{i_1} c_{i_2} ... (1-based
    indices): (sign, mask)."""
    sign = 0
    mask = 0
    for i in factors:
        if not 1 <= i <= r:
            raise ValueError(f"c_{i} is not a generator of C_{r}")
        s, mask = clifford_merge(mask, 1 << (i - 1))
        sign ^= s
    return (-ONE if sign else ONE), mask


class SergeevElement:
    """A finite combination of normal-form pairs (w, mask) over Q(eps)."""

    __slots__ = ("r", "terms")

    def __init__(self, r: int, terms: dict[Term, GaussianRational] | None = None):
        self.r = r
        self.terms = {} if terms is None else terms

    @staticmethod
    def _clean(r: int, terms: dict[Term, GaussianRational]) -> "SergeevElement":
        return SergeevElement(r, {k: c for k, c in terms.items() if c})

    # -- constructors -----------------------------------------------------

    @staticmethod
    def zero(r: int) -> "SergeevElement":
        return SergeevElement(r)

    @staticmethod
    def one(r: int) -> "SergeevElement":
        return SergeevElement(r, {(sg.identity_perm(r), 0): ONE})

    @staticmethod
    def from_perm(w: sg.Perm, coeff: GaussianRational = ONE) -> "SergeevElement":
        return SergeevElement(len(w), {(w, 0): coeff})

    @staticmethod
    def s(i: int, r: int) -> "SergeevElement":
        return SergeevElement.from_perm(sg.simple_reflection(i, r))

    @staticmethod
    def c(i: int, r: int) -> "SergeevElement":
        if not 1 <= i <= r:
            raise ValueError(f"c_{i} is not a generator of C_{r}")
        return SergeevElement(r, {(sg.identity_perm(r), 1 << (i - 1)): ONE})

    # -- linear structure --------------------------------------------------

    def __add__(self, other: "SergeevElement") -> "SergeevElement":
        if self.r != other.r:
            raise ValueError("degree mismatch")
        terms = dict(self.terms)
        for k, c in other.terms.items():
            acc = terms.get(k)
            acc = c if acc is None else acc + c
            if acc:
                terms[k] = acc
            elif k in terms:
                del terms[k]
        return SergeevElement(self.r, terms)

    def __sub__(self, other: "SergeevElement") -> "SergeevElement":
        return self + (-other)

    def __neg__(self) -> "SergeevElement":
        return SergeevElement(self.r, {k: -c for k, c in self.terms.items()})

    def scale(self, a) -> "SergeevElement":
        if not a:
            return SergeevElement.zero(self.r)
        return SergeevElement(self.r, {k: c * a for k, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SergeevElement)
            and self.r == other.r
            and self.terms == other.terms
        )

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for (w, mask), coeff in sorted(self.terms.items()):
            cs = "".join(f"c{i+1}" for i in _mask_bits(mask))
            bits.append(f"({coeff})*{tuple(x + 1 for x in w)}{cs}")
        return " + ".join(bits)

    # -- multiplication ----------------------------------------------------

    def __mul__(self, other: "SergeevElement") -> "SergeevElement":
        if self.r != other.r:
            raise ValueError("degree mismatch")
        r = self.r
        out: dict[Term, GaussianRational] = {}
        left_has_masks = any(alpha for (_, alpha) in self.terms)
        for (v, beta), cb in other.terms.items():
            vinv = sg.inverse(v) if left_has_masks else None
            for (u, alpha), ca in self.terms.items():
                w = tuple(u[x] for x in v)
                if ca is ONE:
                    coeff = cb
                elif cb is ONE:
                    coeff = ca
                else:
                    coeff = ca * cb
                if alpha:
                    s1, alpha_c = conjugate_mask(alpha, vinv)
                    s2, mask = clifford_merge(alpha_c, beta)
                    if s1 ^ s2:
                        coeff = -coeff
                else:
                    mask = beta
                key = (w, mask)
                acc = out.get(key)
                acc = coeff if acc is None else acc + coeff
                if acc:
                    out[key] = acc
                elif key in out:
                    del out[key]
        return SergeevElement(r, out)

    def parity(self) -> int | None:
        """0 or 1 for homogeneous elements, None for mixed ones."""
        seen = {_popcount(mask) & 1 for (_, mask) in self.terms}
        if not seen:
            return 0
        return seen.pop() if len(seen) == 1 else None

    def coeff(self, w: sg.Perm, mask: int) -> GaussianRational:
        return self.terms.get((w, mask), GaussianRational(0))

    def to_json(self) -> list[dict]:
        out = []
        for (w, mask), coeff in sorted(self.terms.items()):
            out.append(
                {
                    "perm": [x + 1 for x in w],
                    "mask": [(mask >> i) & 1 for i in range(self.r)],
                    "coeff": coeff.to_json(),
                }
            )
        return out


# ---------------------------------------------------------------------------
# distinguished elements


@functools.lru_cache(maxsize=4096)
def x_sum(lam: sg.Composition) -> SergeevElement:
    """x_lam = sum of the Young subgroup S_lam.  Treat as immutable."""
    r = sum(lam)
    return SergeevElement(r, {(w, 0): ONE for w in sg.young_subgroup_members(lam)})


def y_sum(lam: sg.Composition) -> SergeevElement:
    """y_lam = alternating sum of S_lam."""
    r = sum(lam)
    terms = {}
    for w in sg.young_subgroup_members(lam):
        terms[(w, 0)] = ONE if sg.length(w) % 2 == 0 else -ONE
    return SergeevElement(r, terms)


def c_interval(i: int, j: int, r: int) -> SergeevElement:
    """c_{i,j} = c_i + c_{i+1} + ... + c_j (1 <= i <= j <= r)."""
    if not 1 <= i <= j <= r:
        raise ValueError(f"c_({i},{j}) is undefined in C_{r}")
    e = sg.identity_perm(r)
    return SergeevElement(r, {(e, 1 << (k - 1)): ONE for k in range(i, j + 1)})


def c_alpha_lambda(lam: sg.Composition, alpha: Iterable[int]) -> SergeevElement:
    """Ordered product of block-interval sums, block i present iff
    alpha_i = 1.  A set bit on an empty block is an error (the interval
    c_{i,j} needs i <= j)."""
    r = sum(lam)
    tilde = (0,) + sg.prefix_sums(lam)
    out = SergeevElement.one(r)
    for idx, bit in enumerate(alpha):
        if bit not in (0, 1):
            raise ValueError("alpha must be a 0/1 vector")
        if not bit:
            continue
        lo, hi = tilde[idx] + 1, tilde[idx + 1]
        if lo > hi:
            raise ValueError(f"alpha_{idx+1}=1 on an empty block of {lam}")
        out = out * c_interval(lo, hi, r)
    return out


def staircase(r: int, start: int, nsteps: int, direction: int) -> SergeevElement:
    """1 + s_a + s_a s_{a+d} + ... with ``nsteps`` products, d = +-1.

    The shared constructor for every chain sum of the rewriting identities
    and the coset sums of the almost-diagonal matrices.
    """
    out = SergeevElement.one(r)
    w = sg.identity_perm(r)
    for k in range(nsteps):
        w = sg.compose(w, sg.simple_reflection(start + direction * k, r))
        out = out + SergeevElement.from_perm(w)
    return out


def coset_sum(nu: sg.Composition, mu: sg.Composition) -> SergeevElement:
    """Sum over D_nu cap S_mu (nu refining mu)."""
    r = sum(mu)
    return SergeevElement(
        r, {(w, 0): ONE for w in sg.min_reps_in_parabolic(nu, mu)}
    )


def t_ingredients(m: SuperMatrix) -> tuple[sg.Perm, SergeevElement, SergeevElement]:
    """(d_M, c_M, sum over D_{nu_M} cap S_{co(M)}) for T_M = x_ro * rest."""
    d = sg.dmin_of_matrix(m.absum())
    c_m = c_alpha_lambda(m.nu(), m.nu_odd())
    sigma = coset_sum(tuple(p for p in m.nu()), m.co())
    return d, c_m, sigma


def t_tail(m: SuperMatrix) -> SergeevElement:
    """d_M c_M sum_sigma -- everything in T_M right of x_{ro(M)}."""
    d, c_m, sigma = t_ingredients(m)
    return SergeevElement.from_perm(d) * c_m * sigma


def t_matrix(m: SuperMatrix) -> SergeevElement:
    """T_M = x_{ro(M)} d_M c_M sum_{sigma in D_{nu_M} cap S_{co(M)}} sigma."""
    return x_sum(m.ro()) * t_tail(m)


def project_coordinates(
    el: SergeevElement, xi: sg.Composition
) -> dict[Term, GaussianRational]:
    """Coordinates of x_xi * el in the basis {x_xi d c^mask : d in D_xi}.

    The coefficient at (d, mask) collects the terms of ``el`` whose
    permutation part lies in the coset S_xi d; reading x_xi * el at the
    normal-form pair (d, mask) gives the same number by uniqueness of the
    sigma*d factorization.
    """
    out: dict[Term, GaussianRational] = {}
    for (w, mask), coeff in el.terms.items():
        d = sg.min_coset_rep(w, xi)
        key = (d, mask)
        acc = out.get(key)
        acc = coeff if acc is None else acc + coeff
        if acc:
            out[key] = acc
        elif key in out:
            del out[key]
    return out
