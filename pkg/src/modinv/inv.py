"""Graded invariant spaces, Reynolds operator, transfer and the relative norm / lift constructions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import linalg as la
from .errors import NotInvariantError
from .poly import (
    Polynomial,
    act,
    act_monomial,
    monomials_of_degree,
    sum_polynomials,
    variable_map,
)


@dataclass(frozen=True)
class GradedInvariantBasis:
    rep: object
    degree: int
    basis: tuple[Polynomial, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def __len__(self):
        return len(self.basis)


def is_invariant(v, f: Polynomial, elements: Sequence[int] | None = None) -> bool:
    """True when every generator (or every listed element) fixes f."""
    for g in v.group.generators if elements is None else elements:
        if act(v, g, f) != f:
            return False
    return True


def _generator_maps(v):
    maps = []
    for s in v.group.generators:
        vm = variable_map(v, s)
        if vm is None:
            return None
        maps.append(vm)
    return maps


def _orbit_basis(v, monos, maps) -> list[Polynomial]:
    field = v.field
    seen = set()
    out = []
    for m in monos:
        if m in seen:
            continue
        coeff = {m: 1}
        queue = [m]
        consistent = True
        while queue:
            cur = queue.pop()
            c = coeff[cur]
            for vm in maps:
                nxt, s = act_monomial(vm, cur, field)
                val = field.mul(c, s)
                old = coeff.get(nxt)
                if old is None:
                    coeff[nxt] = val
                    queue.append(nxt)
                elif old != val:
                    consistent = False
        seen.update(coeff)
        if consistent:
            # m is the largest monomial of its orbit (first seen in descending order)
            out.append(Polynomial(field, v.dim, coeff))
    return out


def _linalg_basis(v, monos) -> list[Polynomial]:
    field = v.field
    index = {m: i for i, m in enumerate(monos)}
    rows: dict[tuple[int, int], dict[int, int]] = {}
    for gi, s in enumerate(v.group.generators):
        for j, m in enumerate(monos):
            img = act(v, s, Polynomial.monomial(field, m))
            col = dict((index[k], c) for k, c in img.terms.items())
            col[j] = field.sub(col.get(j, 0), 1)
            for i, c in col.items():
                if c:
                    rows.setdefault((gi, i), {})[j] = c
    kernel = la.kernel_sparse(rows.values(), len(monos), field)
    return [Polynomial(field, v.dim, {monos[j]: c for j, c in vec.items()}) for vec in kernel]


def invariant_basis(v, d: int, method: str = "auto", cap: int | None = None) -> GradedInvariantBasis:
    """Reduced echelon basis of the degree-d invariants, pivots in grevlex order.

    ``method`` is ``orbit`` (monomial actions only), ``linalg`` or ``auto``.
    """
    if d < 0:
        raise ValueError("degree must be non-negative")
    if v.dim == 0:
        return GradedInvariantBasis(v, d, ())
    monos = monomials_of_degree(v.dim, d, cap)
    maps = _generator_maps(v) if method in ("auto", "orbit") else None
    if method == "orbit" and maps is None:
        raise ValueError("orbit method needs a monomial action")
    if method not in ("auto", "orbit", "linalg"):
        raise ValueError(f"unknown method {method!r}")
    basis = _orbit_basis(v, monos, maps) if maps is not None else _linalg_basis(v, monos)
    order = {m: i for i, m in enumerate(monos)}
    basis.sort(key=lambda f: order[f.leading_monomial()])
    return GradedInvariantBasis(v, d, tuple(basis))


def invariants_up_to(v, d: int, method: str = "auto", cap: int | None = None) -> list[GradedInvariantBasis]:
    """Bases for degrees 1..d; constants are excluded."""
    return [invariant_basis(v, e, method, cap) for e in range(1, d + 1)]


def reynolds(v, f: Polynomial) -> Polynomial:
    field = v.field
    order = v.group.order
    if order % field.p == 0:
        raise ValueError("group order divisible by characteristic")
    total = sum_polynomials(field, v.dim, (act(v, g, f) for g in range(order)))
    return total.scale(field.inv(field.from_int(order)))


def transfer(v, h, f: Polynomial) -> Polynomial:
    """Sum of ``g_i . f`` over the left transversal of h; f must be h-invariant."""
    if not is_invariant(v, f, [h.to_parent[s] for s in h.group.generators]):
        raise NotInvariantError("input is not invariant under the subgroup")
    return sum_polynomials(v.field, v.dim, (act(v, t, f) for t in h.left_transversal()))


def _check_subgroup_invariants(v, h, fs):
    gens = [h.to_parent[s] for s in h.group.generators]
    for f in fs:
        if f.constant_term():
            raise ValueError("inputs must have zero constant term")
        if not is_invariant(v, f, gens):
            raise NotInvariantError(f"{f} is not invariant under the subgroup")


def relative_norm_sigma_set(v, h, fs: Sequence[Polynomial]) -> list[Polynomial]:
    """Distinct nonzero coefficients of ``prod_i g_i(sum_j f_j T^(j-1))`` as a polynomial in T."""
    fs = list(fs)
    if not fs:
        return []
    _check_subgroup_invariants(v, h, fs)
    field, n = v.field, v.dim
    zero = Polynomial.zero(field, n)
    product = [Polynomial.constant(field, n, 1)]
    for t in h.left_transversal():
        factor = [act(v, t, f) for f in fs]
        new = [zero] * (len(product) + len(factor) - 1)
        for a, pa in enumerate(product):
            if not pa:
                continue
            for b, fb in enumerate(factor):
                if fb:
                    new[a + b] = new[a + b] + pa * fb
        product = new
    out = []
    seen = set()
    for c in product:
        if c and c not in seen:
            seen.add(c)
            out.append(c)
    return out


def slot_permutation(g_elem: int, n_sub, group) -> list[int]:
    """Transversal permutation ``i -> i'`` with ``g g_i N = g_{i'} N``."""
    reps = n_sub.left_transversal()
    members = set(n_sub.members)
    inv = group.inverses
    out = []
    for t in reps:
        x = group.cayley[g_elem][t]
        for i2, t2 in enumerate(reps):
            if group.cayley[inv[t2]][x] in members:
                out.append(i2)
                break
    return out


def relative_lift(v, n_sub, fs: Sequence[Polynomial], h: Polynomial) -> Polynomial:
    """``h(g_1(f_1), ..., g_r(f_1), g_1(f_2), ...)``; slot ``j*r + i`` holds ``g_i(f_j)``.

    h must be invariant under the slot permutations induced by the generators of G.
    """
    group = v.group
    if n_sub.parent != group:
        raise ValueError("subgroup does not belong to the module's group")
    if not n_sub.is_normal():
        raise ValueError("subgroup is not normal")
    fs = list(fs)
    gens = [n_sub.to_parent[s] for s in n_sub.group.generators]
    for f in fs:
        if not is_invariant(v, f, gens):
            raise NotInvariantError(f"{f} is not invariant under the normal subgroup")
    reps = n_sub.left_transversal()
    r, nf = len(reps), len(fs)
    if h.nvars != r * nf:
        raise ValueError(f"h must have {r * nf} variables, one per slot")
    if h.field != v.field:
        raise ValueError("h is over a different field")
    for g in group.generators:
        perm = slot_permutation(g, n_sub, group)
        images = [None] * (r * nf)
        for j in range(nf):
            for i in range(r):
                images[j * r + i] = Polynomial.variable(h.field, h.nvars, j * r + perm[i])
        if h.substitute(images) != h:
            raise NotInvariantError("h is not invariant under the slot action")
    values = [None] * (r * nf)
    for j, f in enumerate(fs):
        for i, t in enumerate(reps):
            values[j * r + i] = act(v, t, f)
    return h.substitute(values)
