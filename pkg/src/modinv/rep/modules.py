"""Matrix representations of finite groups over a FieldSpec."""

from __future__ import annotations

import functools
from typing import Sequence

from .. import caps
from .. import linalg as la
from ..errors import CapExceededError, FieldMismatchError
from ..gf import FieldSpec
from .groups import Group, Subgroup, group_from_closure

Matrix = la.Matrix


def _monomial_form(m: Matrix):
    """``(targets, scalars)`` with column j mapped to ``scalars[j] * e_{targets[j]}``, or None."""
    n = len(m)
    targets = [-1] * n
    scalars = [0] * n
    for i, row in enumerate(m):
        for j, c in enumerate(row):
            if c:
                if targets[j] != -1:
                    return None
                targets[j] = i
                scalars[j] = c
    if -1 in targets or len(set(targets)) != n:
        return None
    return tuple(targets), tuple(scalars)


class Representation:
    """A homomorphism from ``group`` to GL(dim, field), stored for every element."""

    def __init__(self, group: Group, field: FieldSpec, matrices: Sequence[Matrix], validate: bool = True):
        self.group = group
        self.field = field
        self.matrices = tuple(tuple(tuple(r) for r in m) for m in matrices)
        if len(self.matrices) != group.order:
            raise ValueError("need one matrix per group element")
        self.dim = len(self.matrices[0])
        if validate:
            self.check_homomorphism()

    @classmethod
    def from_generators(cls, group: Group, field: FieldSpec, gen_matrices: Sequence[Matrix]) -> "Representation":
        """Extend generator images along the group's spanning tree, then verify."""
        gen_matrices = [tuple(tuple(field.as_code(c) for c in row) for row in m) for m in gen_matrices]
        if len(gen_matrices) != len(group.generators):
            raise ValueError("need one matrix per generator")
        dim = len(gen_matrices[0]) if gen_matrices else 0
        _check_dim(dim)
        for m in gen_matrices:
            if len(m) != dim or any(len(r) != dim for r in m):
                raise ValueError("generator matrices must be square of equal size")
        mats: list = [None] * group.order
        mats[0] = la.identity(dim)
        for y, link in group.spanning_tree[1:]:
            x, s = link
            mats[y] = _mul(mats[x], gen_matrices[s], field)
        rep = cls(group, field, mats, validate=False)
        for s, g in enumerate(group.generators):
            if rep.matrices[g] != gen_matrices[s]:
                raise ValueError(f"generator {s} is not compatible with the group relations")
        rep.check_homomorphism()
        return rep

    def __eq__(self, other):
        return (
            isinstance(other, Representation)
            and self.field == other.field
            and self.group == other.group
            and self.matrices == other.matrices
        )

    def __hash__(self):
        return hash((self.group, self.field, self.dim))

    def __repr__(self):
        return f"Representation(dim={self.dim}, order={self.group.order}, field={self.field!r})"

    def matrix(self, g: int) -> Matrix:
        return self.matrices[g]

    @property
    def generator_matrices(self) -> list[Matrix]:
        return [self.matrices[g] for g in self.group.generators]

    @functools.cached_property
    def monomial_forms(self):
        """Per element monomial form (see :func:`_monomial_form`), or None if any element is non-monomial."""
        forms = [_monomial_form(m) for m in self.matrices]
        return None if any(f is None for f in forms) else tuple(forms)

    @property
    def is_monomial(self) -> bool:
        return self.monomial_forms is not None

    def check_homomorphism(self, exhaustive: bool = False) -> None:
        """Raise ValueError unless rho(a) rho(b) = rho(ab).

        The default checks every element against every generator, which implies the
        law for all pairs by induction on word length; ``exhaustive`` checks all pairs.
        """
        g, f = self.group, self.field
        if self.matrices[0] != la.identity(self.dim):
            raise ValueError("identity element is not represented by the identity matrix")
        seconds = range(g.order) if exhaustive else g.generators
        for a in range(g.order):
            for b in seconds:
                if _mul(self.matrices[a], self.matrices[b], f) != self.matrices[g.cayley[a][b]]:
                    raise ValueError(f"not a homomorphism: rho({a}) rho({b}) != rho({a}*{b})")


def _check_dim(dim: int, cap: int | None = None) -> None:
    cap = caps.resolve(cap, caps.MODULE_DIM)
    if dim > cap:
        raise CapExceededError("module-dim", cap, f"module dimension {dim} exceeds cap {cap}")


def _mul(a: Matrix, b: Matrix, field: FieldSpec) -> Matrix:
    fa, fb = _monomial_form(a), _monomial_form(b)
    if fa is None or fb is None:
        return la.matmul(a, b, field)
    n = len(a)
    ta, sa = fa
    tb, sb = fb
    out = [[0] * n for _ in range(n)]
    for j in range(n):
        k = tb[j]
        out[ta[k]][j] = field.mul(sa[k], sb[j])
    return tuple(tuple(r) for r in out)


def _permutation_matrix(targets: Sequence[int], scalars: Sequence[int] | None = None) -> Matrix:
    n = len(targets)
    out = [[0] * n for _ in range(n)]
    for j, i in enumerate(targets):
        out[i][j] = 1 if scalars is None else scalars[j]
    return tuple(tuple(r) for r in out)


def trivial_representation(g: Group, field: FieldSpec, dim: int = 1) -> Representation:
    return Representation(g, field, [la.identity(dim)] * g.order, validate=False)


def regular_representation(g: Group, field: FieldSpec, cap: int | None = None) -> Representation:
    """rho(h) sends the basis vector v_x to v_{hx}."""
    _check_dim(g.order, cap)
    mats = [_permutation_matrix(g.cayley[h]) for h in range(g.order)]
    rep = Representation(g, field, mats, validate=False)
    rep.check_homomorphism()
    return rep


def _same_context(a: Representation, b: Representation) -> None:
    if a.field != b.field:
        raise FieldMismatchError("representations are over different fields")
    if a.group != b.group:
        raise ValueError("representations are of different groups")


def direct_sum(a: Representation, b: Representation) -> Representation:
    _same_context(a, b)
    _check_dim(a.dim + b.dim)
    mats = [la.block_diag(x, y) for x, y in zip(a.matrices, b.matrices)]
    return Representation(a.group, a.field, mats, validate=False)


def direct_sum_many(reps: Sequence[Representation]) -> Representation:
    out = reps[0]
    for r in reps[1:]:
        out = direct_sum(out, r)
    return out


def restrict(v: Representation, h: Subgroup) -> Representation:
    if h.parent != v.group:
        raise ValueError("subgroup does not belong to the representation's group")
    mats = [v.matrices[x] for x in h.to_parent]
    return Representation(h.group, v.field, mats, validate=False)


def induce(h_rep: Representation, g: Group, h: Subgroup, cap: int | None = None) -> Representation:
    """Induced module on the basis ``g_i (x) v_k`` for the left transversal ``g_1 = e, g_2, ...``."""
    if h.parent != g:
        raise ValueError("subgroup does not belong to the group")
    if h_rep.group != h.group:
        raise ValueError("representation is not a representation of the subgroup")
    reps = h.left_transversal()
    r, n = len(reps), h_rep.dim
    _check_dim(r * n, cap)
    coset = {}
    for i, t in enumerate(reps):
        for y in h.members:
            coset[g.cayley[t][y]] = (i, h.from_parent[y])
    mats = []
    for x in range(g.order):
        out = [[0] * (r * n) for _ in range(r * n)]
        for i, t in enumerate(reps):
            j, loc = coset[g.cayley[x][t]]
            block = h_rep.matrices[loc]
            for a in range(n):
                row = out[j * n + a]
                for b in range(n):
                    row[i * n + b] = block[a][b]
        mats.append(tuple(tuple(rw) for rw in out))
    rep = Representation(g, h_rep.field, mats, validate=False)
    rep.check_homomorphism()
    return rep


def fixed_subspace(v: Representation) -> list[tuple[int, ...]]:
    """Reduced row-echelon basis of the vectors fixed by every generator."""
    f = v.field
    rows = []
    for m in v.generator_matrices:
        for i in range(v.dim):
            row = {j: c for j, c in enumerate(m[i]) if c}
            row[i] = f.sub(row.get(i, 0), 1)
            if not row[i]:
                del row[i]
            if row:
                rows.append(row)
    basis = la.kernel_sparse(rows, v.dim, f)
    return [tuple(b.get(j, 0) for j in range(v.dim)) for b in basis]


def group_from_matrices(gens: Sequence[Matrix], field: FieldSpec, cap: int | None = None):
    """Matrix group generated by ``gens`` together with its tautological representation."""
    if not gens:
        raise ValueError("at least one generator is required")
    mats = [tuple(tuple(field.as_code(c) for c in row) for row in m) for m in gens]
    dim = len(mats[0])
    for m in mats:
        if len(m) != dim or any(len(r) != dim for r in m):
            raise ValueError("generator matrices must be square of equal size")
        if la.rank(m, field) != dim:
            raise ValueError("generator matrix is singular")
    _check_dim(dim)
    group = group_from_closure(mats, lambda a, b: _mul(a, b, field), la.identity(dim), cap)
    rep = Representation(group, field, group.labels, validate=False)
    return group, rep
