"""Module families: cyclic-by-cyclic summands, P x A modules, normaliser twists."""

from __future__ import annotations

import math
from typing import Sequence

from sympy import isprime

from .. import linalg as la
from ..gf import make_field, prime_field, primitive_root_of_unity
from .groups import (
    Group,
    _is_p_power,
    automorphism_order,
    check_automorphism,
    direct_product,
    group_from_closure,
    group_from_permutations,
    semidirect_cyclic,
)
from .modules import (
    Representation,
    _permutation_matrix,
    direct_sum_many,
    group_from_matrices,
    regular_representation,
)


def order_d_residue(q: int, d: int) -> int:
    """Smallest positive k with multiplicative order exactly d modulo q."""
    for k in range(1, q):
        x, n = k, 1
        while x != 1:
            x = x * k % q
            n += 1
        if n == d:
            return k
    raise ValueError(f"no residue of order {d} modulo {q}")


def zqzd_group(q: int, d: int) -> Group:
    """``Z_q x| Z_d`` as affine maps of Z/q: generator g is ``x -> kx``, h is ``x -> x+1``.

    Generators are ``[g, h]`` with ``g h g^-1 = h^k``.
    """
    if not isprime(q) or d < 1 or (q - 1) % d:
        raise ValueError("need q prime and d dividing q-1")
    k = order_d_residue(q, d)
    g = tuple(k * x % q for x in range(q))
    h = tuple((x + 1) % q for x in range(q))
    return group_from_permutations([g, h])


def zqzd_summand(q: int, d: int, p: int, i: int) -> Representation:
    """The d-dimensional summand V_i of the regular module of ``Z_q x| Z_d`` in characteristic p.

    g shifts coordinates cyclically; h acts by ``diag(zeta^(i k^-j))``.
    """
    if not isprime(p) or d % p:
        raise ValueError("need p prime dividing d")
    if not 0 <= i < q:
        raise ValueError("summand index must lie in 0..q-1")
    group = zqzd_group(q, d)
    k = order_d_residue(q, d)
    field = make_field(p, [q])
    zeta = primitive_root_of_unity(field, q).code
    shift = _permutation_matrix([(j + 1) % d for j in range(d)])
    diag = [[0] * d for _ in range(d)]
    for j in range(d):
        diag[j][j] = field.pow(zeta, i * pow(k, -j, q) % q)
    return Representation.from_generators(group, field, [shift, diag])


def zqzd_decomposition(q: int, d: int, p: int):
    """Regular module, the summands V_0..V_{q-1}, and the change of basis between them.

    Column ``i*d + j`` of the returned matrix is ``w_{i,j} = sum_r zeta^(-ir) v_{g^j h^r}``.
    """
    summands = [zqzd_summand(q, d, p, i) for i in range(q)]
    group, field = summands[0].group, summands[0].field
    reg = regular_representation(group, field)
    g, h = group.generators
    zeta = primitive_root_of_unity(field, q).code
    n = q * d
    basis = [[0] * n for _ in range(n)]
    for i in range(q):
        for j in range(d):
            gj = group.pow(g, j)
            for r in range(q):
                x = group.cayley[gj][group.pow(h, r)]
                basis[x][i * d + j] = field.pow(zeta, -i * r % q)
    return reg, summands, tuple(tuple(row) for row in basis)


def verify_zqzd_decomposition(q: int, d: int, p: int) -> bool:
    """Check that the change of basis is invertible and conjugates V_reg onto the sum of the V_i."""
    reg, summands, b = zqzd_decomposition(q, d, p)
    f = reg.field
    if la.rank(b, f) != len(b):
        return False
    total = direct_sum_many(summands)
    for x in reg.group.generators:
        if la.matmul(reg.matrices[x], b, f) != la.matmul(b, total.matrices[x], f):
            return False
    return True


def p_times_a_module(p_group: Group, a_orders: Sequence[int], char_p: int) -> Representation:
    """The |P|-dimensional module of ``P x A``: P regular, A by a character of order exp(A)."""
    if not isprime(char_p):
        raise ValueError("characteristic must be prime")
    if not _is_p_power(p_group.order, char_p):
        raise ValueError("P must be a p-group")
    if any(a < 1 or math.gcd(a, char_p) != 1 for a in a_orders):
        raise ValueError("orders of the abelian factor must be coprime to p")
    e = math.lcm(1, *a_orders)
    field = make_field(char_p, [e])
    zeta = primitive_root_of_unity(field, e).code
    factors = [a for a in a_orders if a > 1]
    a_group = _abelian_group(factors)
    group = direct_product(p_group, a_group)
    reg = regular_representation(p_group, field)
    n = p_group.order
    mats = [reg.matrices[s] for s in p_group.generators if s]
    for a in factors:
        c = field.pow(zeta, e // a)
        mats.append(tuple(tuple(c if i == j else 0 for j in range(n)) for i in range(n)))
    return Representation.from_generators(group, field, mats)


def _abelian_group(orders: Sequence[int]) -> Group:
    m = len(orders)
    if m == 0:
        return group_from_closure([()], lambda x, y: (), ())
    gens = [tuple(1 if i == j else 0 for i in range(m)) for j in range(m)]
    return group_from_closure(gens, lambda x, y: tuple((a + b) % o for a, b, o in zip(x, y, orders)), (0,) * m)


def normalizer_twist_module(p_group: Group, auto_t: Sequence[int], r: int, char_p: int) -> Representation:
    """|P|-dimensional module of ``P x| <t>``: P regular, ``t^i v_g = zeta^-i v_{t^i g t^-i}``.

    ``auto_t`` is the index permutation of P induced by t; its order must divide r.
    """
    if not isprime(char_p):
        raise ValueError("characteristic must be prime")
    if math.gcd(r, char_p) != 1:
        raise ValueError("r must be coprime to p")
    if not _is_p_power(p_group.order, char_p):
        raise ValueError("P must be a p-group")
    auto_t = list(auto_t)
    check_automorphism(p_group, auto_t)
    if r % automorphism_order(auto_t):
        raise ValueError("the automorphism's order does not divide r")
    field = make_field(char_p, [r])
    zeta_inv = field.inv(primitive_root_of_unity(field, r).code)
    group = semidirect_cyclic(p_group, auto_t, r)
    reg = regular_representation(p_group, field)
    mats = [reg.matrices[s] for s in p_group.generators if s]
    if r > 1:
        mats.append(_permutation_matrix(auto_t, [zeta_inv] * p_group.order))
    return Representation.from_generators(group, field, mats)


A4_CHAR3_GENERATORS = (
    ((0, 0, 1), (1, 0, 0), (0, 1, 0)),
    ((2, 0, 0), (0, 2, 0), (0, 0, 1)),
)


def a4_char3_module() -> Representation:
    """3-dim A4 module over F_3: cyclic permutation matrix and diag(2, 2, 1)."""
    return group_from_matrices(A4_CHAR3_GENERATORS, prime_field(3))[1]
