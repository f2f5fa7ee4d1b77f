import itertools
import math

from hypothesis import given, settings, strategies as st

from qschur import symgroup as sg


def s(i, r):
    return sg.simple_reflection(i, r)


def bfs_word_lengths(r):
    """Independent length oracle: BFS over the Cayley graph of S_r."""
    gens = [s(i, r) for i in range(1, r)]
    dist = {sg.identity_perm(r): 0}
    frontier = [sg.identity_perm(r)]
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                u = sg.compose(g, w)
                if u not in dist:
                    dist[u] = dist[w] + 1
                    nxt.append(u)
        frontier = nxt
    return dist


def test_compose_relations():
    assert sg.compose(s(1, 3), s(1, 3)) == sg.identity_perm(3)
    braid_lhs = sg.compose(sg.compose(s(1, 3), s(2, 3)), s(1, 3))
    braid_rhs = sg.compose(sg.compose(s(2, 3), s(1, 3)), s(2, 3))
    assert braid_lhs == braid_rhs
    w = (2, 0, 1)
    assert sg.compose(sg.identity_perm(3), w) == w


def test_length_matches_bfs_oracle():
    # frozen from the oracle: the longest element of S_3 has length 3
    assert sg.length((2, 1, 0)) == 3
    for r in range(5):
        dist = bfs_word_lengths(r)
        for w, l in dist.items():
            assert sg.length(w) == l
    assert sg.length(sg.identity_perm(4)) == 0
    assert sg.length(s(2, 3)) == 1


def test_young_subgroup_members():
    assert set(sg.young_subgroup_members((3,))) == set(itertools.permutations(range(3)))
    assert list(sg.young_subgroup_members((1, 1, 1))) == [sg.identity_perm(3)]
    assert set(sg.young_subgroup_members((2, 1))) == {sg.identity_perm(3), s(1, 3)}
    for lam in [(2, 2), (0, 3, 1), (1, 2)]:
        members = list(sg.young_subgroup_members(lam))
        assert len(members) == len(set(members))
        assert len(members) == math.prod(math.factorial(p) for p in lam)


def test_min_right_coset_reps():
    assert sg.min_right_coset_reps((3,)) == [sg.identity_perm(3)]
    assert set(sg.min_right_coset_reps((1, 1, 1))) == set(itertools.permutations(range(3)))
    # D_nu cap S_mu for nu=(1,1), mu=(2) in S_2: both elements
    reps = sg.min_reps_in_parabolic((1, 1), (2,))
    assert set(reps) == {(0, 1), (1, 0)}


def test_coset_partition():
    for nu in [(2, 1), (1, 3), (2, 2), (0, 2, 1)]:
        r = sum(nu)
        reps = sg.min_right_coset_reps(nu)
        size = math.prod(math.factorial(p) for p in nu)
        assert len(reps) * size == math.factorial(r)
        # unique factorization w = sigma * d with lengths adding
        seen = {}
        for sigma in sg.young_subgroup_members(nu):
            for d in reps:
                w = sg.compose(sigma, d)
                assert w not in seen
                seen[w] = (sigma, d)
                assert sg.length(w) == sg.length(sigma) + sg.length(d)
        assert len(seen) == math.factorial(r)


def test_min_coset_rep_projection():
    for nu in [(2, 2), (1, 2, 1)]:
        reps = set(sg.min_right_coset_reps(nu))
        for w in itertools.permutations(range(sum(nu))):
            d = sg.min_coset_rep(w, nu)
            assert d in reps
            assert any(
                sg.compose(sigma, d) == w for sigma in sg.young_subgroup_members(nu)
            )


def test_min_double_coset_reps_counts():
    assert sg.min_double_coset_reps((2,), (2,)) == [sg.identity_perm(2)]
    assert set(sg.min_double_coset_reps((1, 1), (1, 1))) == {(0, 1), (1, 0)}
    # lam = mu = (2,2): three matrices with row/col sums (2,2)
    reps = sg.min_double_coset_reps((2, 2), (2, 2))
    assert len(reps) == 3
    mats = {sg.double_coset_matrix(w, (2, 2), (2, 2)) for w in reps}
    assert mats == {((2, 0), (0, 2)), ((1, 1), (1, 1)), ((0, 2), (2, 0))}


def test_matrix_triple_examples():
    lam, d, mu = sg.matrix_to_triple(((1, 1), (1, 1)))
    assert (lam, mu) == ((2, 2), (2, 2))
    assert d == s(2, 4)  # brute-forced: unique length-1 representative
    lam, d, mu = sg.matrix_to_triple(((0, 1), (1, 0)))
    assert (lam, d, mu) == ((1, 1), s(1, 2), (1, 1))
    for diag in [(3,), (2, 1), (1, 0, 2)]:
        n = len(diag)
        m = tuple(
            tuple(diag[i] if i == j else 0 for j in range(n)) for i in range(n)
        )
        lam, d, mu = sg.matrix_to_triple(m)
        assert lam == mu == diag and d == sg.identity_perm(sum(diag))


def all_matrices(n, r):
    for flat in itertools.product(range(r + 1), repeat=n * n):
        if sum(flat) == r:
            yield tuple(tuple(flat[i * n : (i + 1) * n]) for i in range(n))


def test_matrix_triple_bijection_small():
    for n, r in [(2, 3), (3, 3)]:
        for m in all_matrices(n, r):
            lam, d, mu = sg.matrix_to_triple(m)
            assert sg.is_min_double_rep(d, lam, mu)
            assert sg.triple_to_matrix(lam, d, mu) == m


def test_dmin_matches_brute_force_small():
    for n, rmax in [(2, 4), (3, 3)]:
        for r in range(rmax + 1):
            for lam in sg.compositions(n, r):
                for mu in sg.compositions(n, r):
                    table = sg.double_coset_min_table(lam, mu)
                    for m, w in table.items():
                        assert sg.dmin_of_matrix(m) == w


def test_sigma_table_invariant():
    for m in all_matrices(2, 4):
        t = sg.SigmaTable.of(m)
        for i in range(t.n + 1):
            for j in range(1, t.n + 1):
                assert t.sigma[i][j] >= t.atilde[i][j]


def test_d_of_matrix_examples():
    assert sg.d_of_matrix(((2, 0), (0, 1))) == sg.identity_perm(3)
    assert sg.d_of_matrix(((0, 1), (1, 0))) == s(1, 2)
    m = ((1, 1), (1, 1))
    assert sg.d_of_matrix(m) == sg.matrix_to_triple(m)[1]


def test_d_of_matrix_matches_brute_force_small():
    for n, total in [(2, 4), (3, 3)]:
        for r in range(total + 1):
            for m in all_matrices(n, r):
                lam, mu = sg.row_sums(m), sg.col_sums(m)
                d = sg.d_of_matrix(m)
                assert sg.is_min_double_rep(d, lam, mu)
                assert sg.double_coset_matrix(d, lam, mu) == m
                assert d == sg.dmin_of_matrix(m)


perm_strategy = st.integers(min_value=0, max_value=5).flatmap(
    lambda r: st.permutations(list(range(r)))
)


@given(perm_strategy)
@settings(max_examples=60)
def test_inverse_involution(w):
    w = tuple(w)
    assert sg.compose(w, sg.inverse(w)) == sg.identity_perm(len(w))
    assert sg.length(w) == sg.length(sg.inverse(w))
