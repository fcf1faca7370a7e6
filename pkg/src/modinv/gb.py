"""Buchberger's algorithm over a FieldSpec (grevlex) and origin certification.

Polynomials are handled internally as plain ``dict`` term maps; a monomial's grevlex
rank is packed into one int so reduction can use a heap.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Sequence

from . import caps
from .errors import CapExceededError, FieldMismatchError
from .gf import FieldSpec
from .poly import Polynomial, monomial_divides, monomial_lcm

_W = 1 << 20  # exponent bound for key packing


def _key(m) -> int:
    k = sum(m)
    for e in reversed(m):
        k = k * _W + (_W - 1 - e)
    return k


def _lead(terms: dict):
    return max(terms, key=_key)


class _Reducer:
    """Leading-monomial index of a growing basis."""

    def __init__(self, field: FieldSpec):
        self.field = field
        self.polys: list[dict] = []
        self.leads: list[tuple] = []
        self.active: list[bool] = []

    def add(self, terms: dict, lead) -> int:
        self.polys.append(terms)
        self.leads.append(lead)
        self.active.append(True)
        return len(self.polys) - 1

    def divisor(self, m):
        for i, lm in enumerate(self.leads):
            if self.active[i] and all(a <= b for a, b in zip(lm, m)):
                return i
        return None

    def reduce(self, terms: dict, full: bool = True, skip: int | None = None) -> dict:
        """Normal form of ``terms``; with ``full`` False only the leading term is reduced away."""
        field = self.field
        sub, mul = field.sub, field.mul
        f = dict(terms)
        heap = [(-_key(m), m) for m in f]
        heapq.heapify(heap)
        rem: dict = {}
        while heap:
            _, m = heapq.heappop(heap)
            c = f.get(m)
            if c is None or m in rem:
                continue
            j = None
            for i, lm in enumerate(self.leads):
                if i != skip and self.active[i] and all(a <= b for a, b in zip(lm, m)):
                    j = i
                    break
            if j is None:
                if not full:
                    rem[m] = c
                    for m2, c2 in f.items():
                        if m2 != m:
                            rem[m2] = c2
                    return rem
                rem[m] = c
                del f[m]
                continue
            g = self.polys[j]
            lm = self.leads[j]
            q = tuple(a - b for a, b in zip(m, lm))
            # basis elements are monic
            for gm, gc in g.items():
                t = tuple(a + b for a, b in zip(q, gm))
                old = f.get(t)
                v = sub(old or 0, mul(c, gc))
                if v:
                    f[t] = v
                    if old is None:
                        heapq.heappush(heap, (-_key(t), t))
                elif old is not None:
                    del f[t]
        return rem


def _monic(terms: dict, field: FieldSpec):
    lead = _lead(terms)
    c = terms[lead]
    if c != 1:
        inv = field.inv(c)
        terms = {m: field.mul(inv, v) for m, v in terms.items()}
    return terms, lead


def _spoly(f: dict, lf, g: dict, lg, field: FieldSpec) -> dict:
    lcm = monomial_lcm(lf, lg)
    qf = tuple(a - b for a, b in zip(lcm, lf))
    qg = tuple(a - b for a, b in zip(lcm, lg))
    out = {tuple(a + b for a, b in zip(qf, m)): c for m, c in f.items()}
    sub = field.sub
    for m, c in g.items():
        t = tuple(a + b for a, b in zip(qg, m))
        v = sub(out.get(t, 0), c)
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return out


@dataclass(frozen=True, eq=False)
class GroebnerBasis:
    """Reduced, monic Gröbner basis under grevlex, sorted by ascending leading monomial."""

    field: FieldSpec
    nvars: int
    elements: tuple[Polynomial, ...]
    order: str = "grevlex"

    def __eq__(self, other):
        return (
            isinstance(other, GroebnerBasis)
            and self.field == other.field
            and self.nvars == other.nvars
            and self.elements == other.elements
        )

    def __hash__(self):
        return hash((self.field, self.nvars, self.elements))

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    @property
    def leading_monomials(self) -> list[tuple]:
        return [f.leading_monomial() for f in self.elements]

    def is_unit_ideal(self) -> bool:
        return any(f.degree == 0 for f in self.elements)

    def normal_form(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self)

    def contains(self, f: Polynomial) -> bool:
        return normal_form(f, self).is_zero()

    def pure_power_exponents(self) -> list[int | None]:
        """Per variable, the exponent a of a leading monomial ``x_i^a``, if any."""
        out: list[int | None] = [None] * self.nvars
        for lm in self.leading_monomials:
            nz = [i for i, e in enumerate(lm) if e]
            if len(nz) == 1:
                i = nz[0]
                if out[i] is None or lm[i] < out[i]:
                    out[i] = lm[i]
        return out

    def is_zero_dimensional(self) -> bool:
        return self.is_unit_ideal() or all(e is not None for e in self.pure_power_exponents())

    def __str__(self):
        return "\n".join(str(f) for f in self.elements)


def _check_gens(gens: Sequence[Polynomial]):
    if not gens:
        raise ValueError("need at least one generator")
    field, nvars = gens[0].field, gens[0].nvars
    for g in gens:
        if g.field != field:
            raise FieldMismatchError("generators over different fields")
        if g.nvars != nvars:
            raise ValueError("generators in different numbers of variables")
    return field, nvars


def buchberger(gens: Sequence[Polynomial], cap: int | None = None) -> GroebnerBasis:
    """Reduced Gröbner basis of the ideal generated by ``gens``.

    Pairs and input generators are processed together in order of (sugar) degree, then
    lcm; pairs are dropped by the coprime-leading-monomial criterion and the chain
    criterion.
    """
    field, nvars = _check_gens(gens)
    limit = caps.resolve(cap, caps.GROEBNER_SIZE)
    red = _Reducer(field)
    sugar: list[int] = []
    queue: list = []
    counter = 0  # tie breaker: preserves input order for equal keys
    for g in gens:
        if g.terms:
            heapq.heappush(queue, (g.degree, _key(g.leading_monomial()), counter, "gen", dict(g.terms)))
            counter += 1
    done: set[tuple[int, int]] = set()

    def add_element(terms: dict, deg: int):
        nonlocal counter
        terms, lead = _monic(terms, field)
        idx = red.add(terms, lead)
        sugar.append(deg)
        if len(red.polys) > limit:
            raise CapExceededError("groebner-size", limit, f"basis grew past {limit} elements")
        for j in range(idx):
            if not red.active[j]:
                continue
            lcm = monomial_lcm(red.leads[j], lead)
            s = max(sugar[j] + sum(lcm) - sum(red.leads[j]), deg + sum(lcm) - sum(lead))
            heapq.heappush(queue, (s, _key(lcm), counter, "pair", (j, idx)))
            counter += 1
        # elements whose leading monomial the new one divides become redundant as reducers
        for j in range(idx):
            if red.active[j] and monomial_divides(lead, red.leads[j]):
                red.active[j] = False
        if not any(lead):
            return True
        return False

    while queue:
        s, _, _, kind, data = heapq.heappop(queue)
        if kind == "gen":
            h = red.reduce(data)
            if h and add_element(h, s):
                break
            continue
        i, j = data
        done.add((i, j))
        li, lj = red.leads[i], red.leads[j]
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue
        lcm = monomial_lcm(li, lj)
        chain = False
        for k in range(len(red.leads)):
            if k in (i, j) or not red.active[k]:
                continue
            if (
                monomial_divides(red.leads[k], lcm)
                and (min(i, k), max(i, k)) in done
                and (min(j, k), max(j, k)) in done
            ):
                chain = True
                break
        if chain:
            continue
        sp = _spoly(red.polys[i], li, red.polys[j], lj, field)
        if not sp:
            continue
        h = red.reduce(sp)
        if h and add_element(h, s):
            break
    return _reduced_basis(red, field, nvars)


def _reduced_basis(red: _Reducer, field: FieldSpec, nvars: int) -> GroebnerBasis:
    # minimal basis: drop elements whose leading monomial another element divides
    idx = list(range(len(red.polys)))
    if any(not any(red.leads[i]) for i in idx):
        return GroebnerBasis(field, nvars, (Polynomial.constant(field, nvars, 1),))
    keep = []
    seen_leads = set()
    for i in sorted(idx, key=lambda i: _key(red.leads[i])):
        li = red.leads[i]
        if li in seen_leads:
            continue
        if any(monomial_divides(red.leads[j], li) for j in keep):
            continue
        keep.append(i)
        seen_leads.add(li)
    final = _Reducer(field)
    for i in keep:
        final.add(red.polys[i], red.leads[i])
    out = []
    for pos in range(len(keep)):
        terms = final.polys[pos]
        lead = final.leads[pos]
        tail = {m: c for m, c in terms.items() if m != lead}
        tail = final.reduce(tail, skip=pos) if tail else {}
        tail[lead] = 1
        out.append(Polynomial(field, nvars, tail))
    return GroebnerBasis(field, nvars, tuple(out))


def normal_form(f: Polynomial, basis: GroebnerBasis) -> Polynomial:
    """Remainder of complete division of f by the basis."""
    if f.nvars != basis.nvars:
        raise ValueError("polynomial and basis have different numbers of variables")
    if f.field != basis.field:
        raise FieldMismatchError("polynomial and basis over different fields")
    red = _Reducer(basis.field)
    for g in basis.elements:
        red.add(g.terms, g.leading_monomial())
    return Polynomial(basis.field, basis.nvars, red.reduce(f.terms))


def _extend(f: Polynomial, extra: int = 1) -> Polynomial:
    return Polynomial(f.field, f.nvars + extra, {m + (0,) * extra: c for m, c in f.terms.items()})


def radical_membership(f: Polynomial, gens: Sequence[Polynomial], cap: int | None = None) -> bool:
    """Whether f vanishes on the common zeros of ``gens`` over the algebraic closure.

    Adjoins a last variable t and tests ``1 in <gens, 1 - t f>``.
    """
    field, nvars = _check_gens(list(gens) + [f])
    if f.is_zero():
        return True
    n1 = nvars + 1
    t = Polynomial.variable(field, n1, nvars)
    extended = [_extend(g) for g in gens] + [Polynomial.constant(field, n1, 1) - t * _extend(f)]
    return buchberger(extended, cap).is_unit_ideal()


@dataclass(frozen=True)
class VariableVerdict:
    """``exponent`` is the least e with ``x_i^e`` in the ideal, when it was determined."""

    index: int
    in_radical: bool
    exponent: int | None = None


@dataclass(frozen=True)
class OriginReport:
    verdict: bool
    variables: tuple[VariableVerdict, ...]
    method: str
    basis: GroebnerBasis | None = None

    def __bool__(self):
        return self.verdict


def standard_monomials(basis: GroebnerBasis, limit: int | None = None) -> list[tuple]:
    """Monomials outside the leading ideal; requires a zero-dimensional basis."""
    if not basis.is_zero_dimensional():
        raise ValueError("infinitely many standard monomials")
    if basis.is_unit_ideal():
        return []
    leads = basis.leading_monomials
    n = basis.nvars
    one = (0,) * n
    seen = {one}
    frontier = [one]
    while frontier:
        nxt = []
        for m in frontier:
            for i in range(n):
                t = m[:i] + (m[i] + 1,) + m[i + 1 :]
                if t in seen or any(monomial_divides(lm, t) for lm in leads):
                    continue
                seen.add(t)
                nxt.append(t)
                if limit is not None and len(seen) > limit:
                    raise CapExceededError("quotient-dim", limit, "quotient algebra too large")
        frontier = nxt
    return sorted(seen, key=_key)


def _nilpotency_exponent(basis: GroebnerBasis, i: int, bound: int) -> int | None:
    """Least e <= bound with ``x_i^e`` in the ideal, computed as iterated normal forms."""
    field, n = basis.field, basis.nvars
    red = _Reducer(field)
    for g in basis.elements:
        red.add(g.terms, g.leading_monomial())
    unit = tuple(1 if j == i else 0 for j in range(n))
    r = {unit: 1}
    for e in range(1, bound + 1):
        r = red.reduce(r)
        if not r:
            return e
        r = {tuple(a + b for a, b in zip(m, unit)): c for m, c in r.items()}
    return None


def cuts_out_origin(
    gens: Sequence[Polynomial],
    nvars: int | None = None,
    per_variable: bool = True,
    cap: int | None = None,
) -> OriginReport:
    """Whether the only common zero of ``gens`` over the algebraic closure is the origin.

    One Gröbner basis decides it.  A positive-dimensional zero set is infinite, so
    the answer is no.  Otherwise ``A = k[x]/I`` is finite dimensional and ``x_i`` lies in
    the radical exactly when multiplication by ``x_i`` is nilpotent on A, i.e. when
    ``x_i^dim(A)`` reduces to zero; the least such exponent is reported.  For a
    non-zero-dimensional ideal the per-variable verdicts come from
    :func:`radical_membership`, unless ``per_variable`` is False.
    """
    gens = [g for g in gens]
    if gens:
        field, n = _check_gens(gens)
        if nvars is not None and nvars != n:
            raise ValueError("nvars does not match the generators")
    elif nvars is None:
        raise ValueError("nvars is required when there are no generators")
    else:
        n = nvars
    for g in gens:
        if g.constant_term():
            raise ValueError(f"generator {g} has a nonzero constant term")
    gens = [g for g in gens if g]
    if n == 0:
        return OriginReport(True, (), "trivial")
    if not gens:
        return OriginReport(False, tuple(VariableVerdict(i, False) for i in range(n)), "trivial")
    basis = buchberger(gens, cap)
    if basis.is_zero_dimensional():
        if all(g.is_homogeneous() for g in gens):
            # a homogeneous zero-dimensional ideal is primary to the maximal ideal at 0;
            # the pure power bounds every nilpotency exponent from above
            bounds = [sum(e for e in basis.pure_power_exponents())] * n
        else:
            dim = len(standard_monomials(basis))
            bounds = [dim] * n
        exps = [_nilpotency_exponent(basis, i, bounds[i]) for i in range(n)]
        variables = tuple(VariableVerdict(i, e is not None, e) for i, e in enumerate(exps))
        verdict = all(v.in_radical for v in variables)
        return OriginReport(verdict, variables if per_variable else (), "quotient-nilpotency", basis)
    if not per_variable:
        return OriginReport(False, (), "positive-dimensional", basis)
    variables = []
    for i in range(n):
        x = Polynomial.variable(basis.field, n, i)
        member = radical_membership(x, gens, cap)
        variables.append(VariableVerdict(i, member))
    return OriginReport(False, tuple(variables), "positive-dimensional", basis)
