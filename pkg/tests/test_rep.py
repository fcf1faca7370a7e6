import itertools
import math

import pytest
from hypothesis import given, strategies as st

from modinv.errors import CapExceededError
from modinv.gf import prime_field
from modinv.linalg import block_diag, identity, matmul
from modinv.rep import (
    a4_char3_module,
    alternating_group_4,
    automorphism_order,
    conjugation_automorphism,
    cyclic_group,
    direct_product,
    direct_sum,
    fixed_subspace,
    format_permutation,
    group_from_matrices,
    group_from_permutations,
    induce,
    inversion_automorphism,
    klein_four,
    left_regular_permutations,
    normalizer,
    normalizer_twist_module,
    p_complement,
    p_times_a_module,
    parse_permutation,
    regular_representation,
    restrict,
    smallest_prime_divisor,
    sylow_subgroup,
    symmetric_group,
    trivial_representation,
    verify_zqzd_decomposition,
    zqzd_decomposition,
    zqzd_group,
    zqzd_summand,
)

GROUPS = {
    "Z1": lambda: cyclic_group(1),
    "Z4": lambda: cyclic_group(4),
    "Z6": lambda: cyclic_group(6),
    "V4": klein_four,
    "S3": lambda: symmetric_group(3),
    "A4": alternating_group_4,
    "S4": lambda: symmetric_group(4),
    "D4": lambda: group_from_permutations(["(1,2,3,4)", "(1,3)"]),
}


def p_part(n, p):
    q = 1
    while n % p == 0:
        n, q = n // p, q * p
    return q


@pytest.mark.parametrize("gens,order", [(["(1,2)", "(1,2,3)"], 6), (["(1,2,3,4)"], 4), (["(1,2)(3,4)", "(1,2,3)"], 12)])
def test_permutation_group_orders(gens, order):
    assert group_from_permutations(gens).order == order


@pytest.mark.parametrize("name", sorted(GROUPS))
def test_group_axioms(name):
    g = GROUPS[name]()
    n = g.order
    for a in range(n):
        assert g.cayley[0][a] == a == g.cayley[a][0]
        assert g.cayley[a][g.inv(a)] == 0
    for a, b, c in itertools.product(range(min(n, 8)), repeat=3):
        assert g.cayley[g.cayley[a][b]][c] == g.cayley[a][g.cayley[b][c]]


@pytest.mark.parametrize("name", sorted(GROUPS))
def test_left_regular_permutations_rebuild_group(name):
    g = GROUPS[name]()
    perms = left_regular_permutations(g)
    h = group_from_permutations(perms)
    assert h.order == g.order


def test_permutation_text_round_trip():
    for img in itertools.permutations(range(4)):
        assert parse_permutation(format_permutation(img), 4) == img
    with pytest.raises(ValueError):
        parse_permutation("(1,1)")


def test_group_cap():
    with pytest.raises(CapExceededError) as err:
        group_from_permutations(["(1,2)", "(1,2,3,4,5)"], cap=100)
    assert err.value.cap == "group-order"


@pytest.mark.parametrize("name", sorted(GROUPS))
@pytest.mark.parametrize("p", [2, 3, 5])
def test_sylow_against_brute_force(name, p):
    g = GROUPS[name]()
    syl = sylow_subgroup(g, p)
    assert syl.order == p_part(g.order, p)
    # closed under multiplication, every element a p-element
    for a in syl.members:
        assert g.element_order(a) == p_part(g.element_order(a), p)
        for b in syl.members:
            assert g.cayley[a][b] in syl
    # normaliser by definition
    members = set(syl.members)
    brute = {x for x in range(g.order) if {g.cayley[g.cayley[x][h]][g.inv(x)] for h in members} == members}
    assert set(normalizer(g, syl).members) == brute


def test_sylow_and_normalizer_examples(s3, a4):
    assert sylow_subgroup(s3, 3).order == 3
    assert sylow_subgroup(a4, 2).order == 4
    assert sylow_subgroup(s3, 5).order == 1
    assert normalizer(s3, sylow_subgroup(s3, 2)).order == 2
    assert normalizer(a4, sylow_subgroup(a4, 2)).order == 12
    assert normalizer(s3, s3.whole()).order == 6


def test_p_complement(s3, a4):
    assert p_complement(s3, 2).order == 3
    assert p_complement(s3, 3) is None
    assert p_complement(a4, 3) is not None and p_complement(a4, 3).order == 4
    assert p_complement(a4, 2) is None
    assert p_complement(cyclic_group(6), 2).order == 3
    assert smallest_prime_divisor(15) == 3


def test_regular_representation(s3, f2):
    z2 = regular_representation(cyclic_group(2), f2)
    assert z2.matrices[1] == ((0, 1), (1, 0))
    reg = regular_representation(s3, f2)
    assert reg.dim == 6
    for m in reg.matrices:
        assert all(sum(row) == 1 for row in m)
        assert all(sum(col) == 1 for col in zip(*m))
    assert fixed_subspace(reg) == [(1,) * 6]


@pytest.mark.parametrize("name", ["Z4", "V4", "S3", "A4"])
def test_exhaustive_homomorphism(name, f3):
    reg = regular_representation(GROUPS[name](), f3)
    reg.check_homomorphism(exhaustive=True)


def test_matrix_groups(f4):
    g, rep = group_from_matrices([identity(2)], prime_field(5))
    assert g.order == 1
    zeta = f4.gen.code
    assert group_from_matrices([((zeta,),)], f4)[0].order == 3
    a4rep = a4_char3_module()
    assert a4rep.group.order == 12
    assert fixed_subspace(a4rep) == []


def test_non_homomorphism_rejected(s3, f2):
    swap = ((0, 1), (1, 0))
    with pytest.raises(ValueError):
        # (2,3) and (1,2,3) both mapped to the swap: order 3 generator to an order 2 matrix
        from modinv.rep import Representation

        Representation.from_generators(s3, f2, [swap, swap])


def test_direct_sum(f2):
    z2 = regular_representation(cyclic_group(2), f2)
    zero = trivial_representation(z2.group, f2, dim=0)
    assert direct_sum(z2, zero) == z2
    s = direct_sum(z2, z2)
    assert s.dim == 4
    assert s.matrices[1] == block_diag(z2.matrices[1], z2.matrices[1])


def test_restrict(s3, f2):
    reg = regular_representation(s3, f2)
    assert restrict(reg, s3.whole()) == reg
    a3 = s3.generated([x for x in range(6) if s3.element_order(x) == 3])
    r = restrict(reg, a3)
    assert r.group.order == 3 and r.dim == 6
    triv = restrict(reg, s3.trivial())
    assert all(m == identity(6) for m in triv.matrices)


def _trace(m, field):
    t = 0
    for i in range(len(m)):
        t = field.add(t, m[i][i])
    return t


def _induced_character(h_rep, g, h):
    """Frobenius formula over a left transversal; independent of the block construction."""
    f = h_rep.field
    local = h.from_parent
    trans = h.left_transversal()
    chars = []
    for x in range(g.order):
        t = 0
        for s in trans:
            y = g.cayley[g.cayley[g.inv(s)][x]][s]
            if y in h:
                t = f.add(t, _trace(h_rep.matrices[local[y]], f))
        chars.append(t)
    return chars


@pytest.mark.parametrize(
    "group,sub,p",
    [("S3", ["(1,2,3)"], 2), ("S3", ["(1,2)"], 3), ("Z4", None, 2), ("A4", ["(1,2)(3,4)", "(1,3)(2,4)"], 3), ("S4", ["(1,2,3,4)"], 3)],
)
def test_induce_matches_character_formula(group, sub, p):
    g = GROUPS[group]()
    if sub is None:
        h = g.generated([g.pow(g.generators[0], 2)])
    else:
        index = {lab: i for i, lab in enumerate(g.labels)}
        h = g.generated([index[parse_permutation(s, len(g.labels[0]))] for s in sub])
    field = prime_field(p)
    for w in (trivial_representation(h.group, field), regular_representation(h.group, field)):
        ind = induce(w, g, h)
        assert ind.dim == w.dim * h.index
        assert [_trace(m, field) for m in ind.matrices] == _induced_character(w, g, h)
        # W sits inside the restriction as the identity-coset block
        res = restrict(ind, h)
        for x in range(h.order):
            m = res.matrices[x]
            assert tuple(tuple(r[: w.dim]) for r in m[: w.dim]) == w.matrices[x]


def test_induce_examples(s3, f2):
    a3 = s3.generated([x for x in range(6) if s3.element_order(x) == 3])
    assert induce(trivial_representation(a3.group, f2), s3, a3).dim == 2
    assert induce(trivial_representation(s3, f2), s3, s3.whole()).dim == 1
    z4 = cyclic_group(4)
    z2 = z4.generated([z4.pow(z4.generators[0], 2)])
    assert induce(trivial_representation(z2.group, f2), z4, z2).dim == 2


def test_zqzd_summand_formula():
    v = zqzd_summand(3, 2, 2, 1)
    f = v.field
    assert f.size == 4 and v.dim == 2
    g, h = v.generator_matrices
    zeta = f.gen.code
    assert g == ((0, 1), (1, 0))
    assert h == ((zeta, 0), (0, f.mul(zeta, zeta)))
    v0 = zqzd_summand(3, 2, 2, 0)
    assert v0.generator_matrices[1] == identity(2)
    reg, summands, _ = zqzd_decomposition(3, 2, 2)
    assert sum(s.dim for s in summands) == reg.dim == 6
    # conjugation relation g h g^-1 = h^k
    gh = matmul(matmul(g, h, f), g, f)
    assert gh == matmul(h, h, f)


@pytest.mark.parametrize("q,d,p", [(3, 2, 2), (5, 4, 2), (5, 2, 2), (7, 3, 3), (7, 6, 2), (7, 6, 3)])
def test_zqzd_decomposition(q, d, p):
    assert zqzd_group(q, d).order == q * d
    assert verify_zqzd_decomposition(q, d, p)


def test_p_times_a_module(f4):
    v = p_times_a_module(cyclic_group(2), [3], 2)
    assert v.dim == 2 and v.group.order == 6 and v.field.size == 4
    v.check_homomorphism(exhaustive=True)
    w = p_times_a_module(cyclic_group(1), [3], 2)
    assert w.dim == 1 and w.group.order == 3
    with pytest.raises(ValueError):
        p_times_a_module(cyclic_group(3), [3], 2)


def test_normalizer_twist_module():
    z3 = cyclic_group(3)
    v = normalizer_twist_module(z3, inversion_automorphism(z3), 2, 3)
    assert v.dim == 3 and v.group.order == 6
    v.check_homomorphism(exhaustive=True)
    t = v.generator_matrices[-1]
    assert matmul(t, t, v.field) == identity(3)
    plain = normalizer_twist_module(z3, list(range(3)), 1, 3)
    assert plain.dim == 3 and plain.group.order == 3
    assert plain.matrices == regular_representation(z3, plain.field).matrices
    v4 = klein_four()
    auto = conjugation_automorphism(v4, "(1,2,3)")
    assert automorphism_order(auto) == 3
    a4_like = normalizer_twist_module(v4, auto, 3, 2)
    assert a4_like.group.order == 12
    with pytest.raises(ValueError):
        normalizer_twist_module(z3, inversion_automorphism(z3), 3, 3)


@given(st.integers(1, 12), st.sampled_from([2, 3, 5]))
def test_regular_fixed_space_is_one_dimensional(n, p):
    reg = regular_representation(cyclic_group(n), prime_field(p))
    assert fixed_subspace(reg) == [(1,) * n]


def test_direct_product_order():
    assert direct_product(cyclic_group(2), symmetric_group(3)).order == 12
    assert math.prod([2, 3]) == 6
