"""Finite groups given by Cayley tables, built as closures of generators."""

from __future__ import annotations

import functools
import random
import re
from collections import deque
from typing import Callable, Hashable, Iterable, Sequence

from .. import caps
from ..errors import CapExceededError


def closure(gens: Sequence[Hashable], mul: Callable, identity: Hashable, cap: int | None = None):
    """Breadth-first closure of ``gens`` under right multiplication.

    Returns ``(labels, cayley)``; index 0 is the identity and new elements are
    numbered in the order they are discovered.
    """
    cap = caps.resolve(cap, caps.GROUP_ORDER)
    labels = [identity]
    index = {identity: 0}
    right = []
    parent = [None]
    pos = 0
    while pos < len(labels):
        x = labels[pos]
        row = []
        for s, g in enumerate(gens):
            y = mul(x, g)
            j = index.get(y)
            if j is None:
                if len(labels) >= cap:
                    raise CapExceededError("group-order", cap, f"group closure exceeds {cap} elements")
                j = len(labels)
                index[y] = j
                labels.append(y)
                parent.append((pos, s))
            row.append(j)
        right.append(row)
        pos += 1
    n = len(labels)
    cayley = []
    for a in range(n):
        row = [0] * n
        row[0] = a
        for b in range(1, n):
            pb, s = parent[b]
            row[b] = right[row[pb]][s]
        cayley.append(tuple(row))
    gen_idx = tuple(index[g] for g in gens)
    return labels, tuple(cayley), gen_idx


class Group:
    """A finite group on the index set ``0..order-1`` with 0 the identity.

    ``cayley[a][b]`` is the index of ``a*b``.  ``generators`` lists generator
    indices; ``labels`` optionally keeps the concrete element each index came from
    (a permutation image tuple, a matrix, a pair, ...).
    """

    def __init__(self, cayley, generators: Iterable[int], labels=None, validate: bool = True):
        self.cayley = tuple(tuple(r) for r in cayley)
        self.generators = tuple(generators)
        self.labels = tuple(labels) if labels is not None else None
        n = len(self.cayley)
        if n == 0:
            raise ValueError("a group has at least one element")
        if validate:
            self.check_axioms()
        inv = [0] * n
        for a in range(n):
            inv[a] = self.cayley[a].index(0)
        self.inverses = tuple(inv)
        if len(self.spanning_tree) != n:
            raise ValueError("the generators do not generate the group")

    @property
    def order(self) -> int:
        return len(self.cayley)

    def __len__(self):
        return len(self.cayley)

    def __eq__(self, other):
        return isinstance(other, Group) and self.cayley == other.cayley and self.generators == other.generators

    def __hash__(self):
        return self._hash

    @functools.cached_property
    def _hash(self):
        return hash((self.cayley, self.generators))

    def __repr__(self):
        return f"Group(order={self.order}, generators={list(self.generators)})"

    def mul(self, a: int, b: int) -> int:
        return self.cayley[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inverses[a], -e
        x = 0
        for _ in range(e % self.element_order(a)):
            x = self.cayley[x][a]
        return x

    def element_order(self, a: int) -> int:
        x, n = a, 1
        while x != 0:
            x = self.cayley[x][a]
            n += 1
        return n

    def conjugate(self, x: int, a: int) -> int:
        """``x * a * x^-1``."""
        return self.cayley[self.cayley[x][a]][self.inverses[x]]

    def is_abelian(self) -> bool:
        c = self.cayley
        return all(c[a][b] == c[b][a] for a in range(self.order) for b in range(a))

    @functools.cached_property
    def spanning_tree(self) -> tuple:
        """For every element ``y != 0``: ``(x, s)`` with ``y = x * generators[s]``, in BFS order."""
        seen = {0: None}
        order = [0]
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for s, g in enumerate(self.generators):
                y = self.cayley[x][g]
                if y not in seen:
                    seen[y] = (x, s)
                    order.append(y)
                    queue.append(y)
        return tuple((y, seen[y]) for y in order)

    def check_axioms(self, exhaustive_limit: int = 128, samples: int = 20000, seed: int = 0) -> None:
        c = self.cayley
        n = len(c)
        if any(len(r) != n for r in c):
            raise ValueError("Cayley table is not square")
        full = tuple(range(n))
        if c[0] != full or any(c[a][0] != a for a in range(n)):
            raise ValueError("index 0 is not the identity")
        for r in c:
            if tuple(sorted(r)) != full:
                raise ValueError("Cayley table row is not a permutation")
        if n <= exhaustive_limit:
            triples = ((a, b, x) for a in range(n) for b in range(n) for x in range(n))
        else:
            rng = random.Random(seed)
            triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(samples))
        for a, b, x in triples:
            if c[c[a][b]][x] != c[a][c[b][x]]:
                raise ValueError(f"Cayley table is not associative at {(a, b, x)}")

    def subgroup(self, members: Iterable[int]) -> "Subgroup":
        return Subgroup(self, members)

    def generated(self, elements: Iterable[int]) -> "Subgroup":
        return Subgroup(self, _index_closure(self, elements))

    def whole(self) -> "Subgroup":
        return Subgroup(self, range(self.order))

    def trivial(self) -> "Subgroup":
        return Subgroup(self, (0,))


def _index_closure(g: Group, elements: Iterable[int]) -> set[int]:
    gens = [e for e in elements]
    seen = {0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = g.cayley[x][s]
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


class Subgroup:
    """A subgroup of ``parent`` given by its sorted member indices."""

    def __init__(self, parent: Group, members: Iterable[int]):
        self.parent = parent
        self.members = tuple(sorted(set(members)))
        mset = set(self.members)
        if 0 not in mset:
            raise ValueError("subgroup must contain the identity")
        c = parent.cayley
        for a in self.members:
            if parent.inv(a) not in mset or any(c[a][b] not in mset for b in self.members):
                raise ValueError("member set is not closed under the group law")
        self._set = frozenset(mset)

    @property
    def order(self) -> int:
        return len(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, x: int) -> bool:
        return x in self._set

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.parent == other.parent and self.members == other.members

    def __hash__(self):
        return hash(self.members)

    def __repr__(self):
        return f"Subgroup(order={self.order} of {self.parent.order})"

    @property
    def index(self) -> int:
        return self.parent.order // self.order

    def is_normal(self) -> bool:
        g = self.parent
        return all(g.conjugate(x, a) in self._set for x in g.generators for a in self.members)

    @functools.cached_property
    def _local(self):
        g = self.parent
        gens = []
        covered = {0}
        for x in self.members:
            if x not in covered:
                gens.append(x)
                covered = _index_closure(g, gens)
        order = [0]
        pos = {0: 0}
        i = 0
        while i < len(order):
            x = order[i]
            for s in gens:
                y = g.cayley[x][s]
                if y not in pos:
                    pos[y] = len(order)
                    order.append(y)
            i += 1
        cayley = tuple(tuple(pos[g.cayley[a][b]] for b in order) for a in order)
        labels = [g.labels[a] for a in order] if g.labels is not None else list(order)
        local = Group(cayley, [pos[s] for s in gens], labels, validate=False)
        return local, tuple(order), pos

    @property
    def group(self) -> Group:
        """This subgroup as a group in its own right (BFS order from greedy generators)."""
        return self._local[0]

    @property
    def to_parent(self) -> tuple[int, ...]:
        """Local index -> parent index."""
        return self._local[1]

    @property
    def from_parent(self) -> dict[int, int]:
        return self._local[2]

    def left_transversal(self) -> list[int]:
        """Smallest-index representative of each left coset ``xH``; starts with the identity."""
        g = self.parent
        covered = set()
        reps = []
        for x in range(g.order):
            if x not in covered:
                reps.append(x)
                covered.update(g.cayley[x][h] for h in self.members)
        return reps


# -- permutations -----------------------------------------------------------

_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_permutation(text: str, degree: int | None = None) -> tuple[int, ...]:
    """Parse cycle notation such as ``(1,2)(3,4)`` or ``(123)`` into a 0-based image tuple.

    Without commas every digit is its own point.
    """
    text = text.strip()
    cycles = []
    rest = _CYCLE.sub("", text).strip()
    if rest and rest not in ("()", "id", "e"):
        raise ValueError(f"bad permutation {text!r}")
    for body in _CYCLE.findall(text):
        body = body.strip()
        if not body:
            continue
        pts = [int(t) for t in body.split(",")] if "," in body else [int(ch) for ch in body.replace(" ", "")]
        if any(x < 1 for x in pts) or len(set(pts)) != len(pts):
            raise ValueError(f"bad cycle ({body}) in {text!r}")
        cycles.append(pts)
    n = max([max(c) for c in cycles] + [degree or 0, 1])
    img = list(range(n))
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            img[a - 1] = b - 1
    return tuple(img)


def format_permutation(img: Sequence[int]) -> str:
    """Cycle notation with comma separated points, ``()`` for the identity."""
    seen = set()
    out = []
    for start in range(len(img)):
        if start in seen or img[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        x = img[start]
        while x != start:
            cyc.append(x)
            seen.add(x)
            x = img[x]
        out.append("(" + ",".join(str(p + 1) for p in cyc) + ")")
    return "".join(out) or "()"


def _as_image(perm, degree: int | None = None) -> tuple[int, ...]:
    if isinstance(perm, str):
        return parse_permutation(perm, degree)
    img = tuple(int(x) for x in perm)
    if sorted(img) == list(range(1, len(img) + 1)):
        return tuple(x - 1 for x in img)
    if sorted(img) == list(range(len(img))):
        return img
    raise ValueError(f"{perm!r} is not a permutation")


def compose(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    """``(a*b)(i) = a(b(i))``: apply ``b`` first."""
    return tuple(a[i] for i in b)


def group_from_permutations(gens: Sequence, cap: int | None = None) -> Group:
    """Closure of permutation generators on ``{1..n}`` (cycle strings or image lists)."""
    if not gens:
        raise ValueError("at least one generator is required")
    imgs = [_as_image(g) for g in gens]
    n = max(len(i) for i in imgs)
    imgs = [i + tuple(range(len(i), n)) for i in imgs]
    labels, cayley, gen_idx = closure(imgs, compose, tuple(range(n)), cap)
    return Group(cayley, gen_idx, labels, validate=False)


def group_from_closure(gens: Sequence[Hashable], mul: Callable, identity: Hashable, cap: int | None = None) -> Group:
    labels, cayley, gen_idx = closure(gens, mul, identity, cap)
    return Group(cayley, gen_idx, labels, validate=False)


def left_regular_permutations(g: Group) -> list[tuple[int, ...]]:
    """Image tuples of left multiplication by each generator."""
    return [tuple(g.cayley[s][x] for x in range(g.order)) for s in g.generators]


# -- subgroups of interest --------------------------------------------------

def _p_part(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


def _is_p_power(n: int, p: int) -> bool:
    return _p_part(n, p) == n


def sylow_subgroup(g: Group, p: int) -> Subgroup:
    """A Sylow p-subgroup found by one greedy pass over p-elements in index order.

    Every rejection stays valid as the subgroup grows, and a p-subgroup that is
    not Sylow always has an extending element, so one pass reaches full order.
    """
    target = _p_part(g.order, p)
    current = {0}
    if target == 1:
        return g.trivial()
    for x in range(1, g.order):
        if x in current or not _is_p_power(g.element_order(x), p):
            continue
        cand = _index_closure(g, list(current) + [x])
        if _is_p_power(len(cand), p):
            current = cand
            if len(current) == target:
                break
    if len(current) != target:
        raise AssertionError("greedy Sylow search stalled")  # contradicts Sylow's theorems
    return Subgroup(g, current)


def normalizer(g: Group, h: Subgroup) -> Subgroup:
    hs = h._set
    members = [x for x in range(g.order) if all(g.conjugate(x, a) in hs for a in h.members)]
    return Subgroup(g, members)


def p_complement(g: Group, p: int) -> Subgroup | None:
    """The normal p-complement when ``g`` is p-nilpotent, else None."""
    prime_to_p = [x for x in range(g.order) if g.element_order(x) % p]
    if len(prime_to_p) * _p_part(g.order, p) != g.order:
        return None
    try:
        return Subgroup(g, prime_to_p)
    except ValueError:
        return None


def smallest_prime_divisor(n: int) -> int:
    for d in range(2, n + 1):
        if n % d == 0:
            return d
    raise ValueError("no prime divisor of 1")


# -- named groups -----------------------------------------------------------

def cyclic_group(n: int) -> Group:
    if n == 1:
        return group_from_permutations(["()"])
    return group_from_permutations([tuple(list(range(1, n)) + [0])])


def symmetric_group(n: int) -> Group:
    if n <= 2:
        return cyclic_group(max(n, 1))
    return group_from_permutations(["(1,2)", "(" + ",".join(str(i) for i in range(1, n + 1)) + ")"])


def alternating_group_4() -> Group:
    return group_from_permutations(["(1,2)(3,4)", "(1,2,3)"])


def klein_four() -> Group:
    return group_from_permutations(["(1,2)(3,4)", "(1,3)(2,4)"])


def subgroup_from_permutations(g: Group, perms: Sequence) -> Subgroup:
    """Subgroup of a permutation group generated by the given permutations."""
    if g.labels is None:
        raise ValueError("group has no permutation labels")
    degree = len(g.labels[0])
    index = {lab: i for i, lab in enumerate(g.labels)}
    idx = []
    for perm in perms:
        img = _as_image(perm, degree)
        img = img + tuple(range(len(img), degree))
        if img not in index:
            raise ValueError(f"{perm!r} is not an element of the group")
        idx.append(index[img])
    return g.generated(idx)


def direct_product(a: Group, b: Group) -> Group:
    """``a x b`` on pair labels ``(i, j)``; generators of ``a`` come first."""
    gens = [(s, 0) for s in a.generators if s] + [(0, t) for t in b.generators if t]
    return group_from_closure(gens, lambda x, y: (a.cayley[x[0]][y[0]], b.cayley[x[1]][y[1]]), (0, 0))


def semidirect_cyclic(p_group: Group, auto: Sequence[int], r: int) -> Group:
    """``P x| <t>`` with ``t`` of order ``r`` acting as the index permutation ``auto``.

    Labels are pairs ``(a, i)`` for ``a * t^i``; ``t`` is the last generator.
    """
    powers = [tuple(range(p_group.order))]
    for _ in range(1, r):
        prev = powers[-1]
        powers.append(tuple(auto[x] for x in prev))

    def mul(x, y):
        a, i = x
        b, j = y
        return (p_group.cayley[a][powers[i][b]], (i + j) % r)

    gens = [(s, 0) for s in p_group.generators if s]
    if r > 1:
        gens.append((0, 1))
    return group_from_closure(gens, mul, (0, 0))


def check_automorphism(g: Group, auto: Sequence[int]) -> None:
    n = g.order
    if sorted(auto) != list(range(n)) or auto[0] != 0:
        raise ValueError("map is not a bijection fixing the identity")
    c = g.cayley
    for a in range(n):
        for b in range(n):
            if auto[c[a][b]] != c[auto[a]][auto[b]]:
                raise ValueError("map is not a group automorphism")


def automorphism_order(auto: Sequence[int]) -> int:
    cur = list(auto)
    n = 1
    ident = list(range(len(auto)))
    while cur != ident:
        cur = [auto[x] for x in cur]
        n += 1
    return n


def inversion_automorphism(g: Group) -> list[int]:
    if not g.is_abelian():
        raise ValueError("inversion is an automorphism only of abelian groups")
    return list(g.inverses)


def conjugation_automorphism(g: Group, perm) -> list[int]:
    """Index permutation ``a -> x a x^-1`` of a permutation group normalised by ``perm``."""
    degree = len(g.labels[0])
    x = _as_image(perm, degree)
    x = x + tuple(range(len(x), degree))
    xinv = [0] * degree
    for i, j in enumerate(x):
        xinv[j] = i
    index = {lab: i for i, lab in enumerate(g.labels)}
    out = []
    for lab in g.labels:
        img = compose(compose(x, lab), tuple(xinv))
        if img not in index:
            raise ValueError("permutation does not normalise the group")
        out.append(index[img])
    return out
