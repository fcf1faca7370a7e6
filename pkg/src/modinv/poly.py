"""Sparse multivariate polynomials over a FieldSpec, graded reverse lex order, group action.

A monomial is an exponent tuple.  Term order is grevlex with ``x1 > x2 > ... > xn``:
compare total degree first, then the monomial with the smaller exponent in the last
differing variable is the larger one.
"""

from __future__ import annotations

import math
import re
from typing import Iterable, Mapping, Sequence

from . import caps
from .errors import CapExceededError, FieldMismatchError
from .gf import FieldElement, FieldSpec

Monomial = tuple[int, ...]

# degree reported for the zero polynomial
ZERO_DEGREE = -1


def grevlex_key(m: Monomial):
    """Sort key, larger key means larger monomial."""
    return (sum(m), tuple(-e for e in reversed(m)))


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def monomial_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def count_monomials(nvars: int, d: int) -> int:
    return math.comb(nvars + d - 1, d)


def monomials_of_degree(nvars: int, d: int, cap: int | None = None) -> list[Monomial]:
    """All degree-d monomials in nvars variables, grevlex descending."""
    if nvars < 1 or d < 0:
        raise ValueError("need nvars >= 1 and d >= 0")
    limit = caps.resolve(cap, caps.MONOMIALS)
    count = count_monomials(nvars, d)
    if count > limit:
        raise CapExceededError("monomials", limit, f"{count} monomials of degree {d} in {nvars} variables")
    out: list[Monomial] = []

    # Descending grevlex: the last variable's exponent increases first, then recurse
    # on the remaining variables with the remaining degree, again descending.
    def rec(prefix_len: int, deg: int, suffix: tuple[int, ...]):
        if prefix_len == 1:
            out.append((deg,) + suffix)
            return
        for e in range(deg + 1):
            rec(prefix_len - 1, deg - e, (e,) + suffix)

    rec(nvars, d, ())
    return out


class Polynomial:
    """Immutable sparse polynomial: ``terms`` maps exponent tuples to nonzero codes."""

    __slots__ = ("field", "nvars", "terms", "_hash")

    def __init__(self, field: FieldSpec, nvars: int, terms: Mapping[Monomial, int] | None = None):
        self.field = field
        self.nvars = nvars
        clean = {}
        if terms:
            for m, c in terms.items():
                if len(m) != nvars:
                    raise ValueError(f"monomial {m} does not have {nvars} exponents")
                c = field.as_code(c)
                if c:
                    clean[tuple(m)] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, field, nvars, terms):
        # trusted constructor, terms already clean
        p = cls.__new__(cls)
        p.field, p.nvars, p.terms, p._hash = field, nvars, terms, None
        return p

    @classmethod
    def zero(cls, field: FieldSpec, nvars: int) -> "Polynomial":
        return cls._raw(field, nvars, {})

    @classmethod
    def constant(cls, field: FieldSpec, nvars: int, c) -> "Polynomial":
        c = field.as_code(c)
        return cls._raw(field, nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def variable(cls, field: FieldSpec, nvars: int, i: int) -> "Polynomial":
        """The variable ``x_{i+1}`` (i is 0-based)."""
        if not 0 <= i < nvars:
            raise IndexError("variable index out of range")
        return cls._raw(field, nvars, {tuple(1 if j == i else 0 for j in range(nvars)): 1})

    @classmethod
    def monomial(cls, field: FieldSpec, m: Sequence[int], c=1) -> "Polynomial":
        c = field.as_code(c)
        return cls._raw(field, len(m), {tuple(m): c} if c else {})

    # basic queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    @property
    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=ZERO_DEGREE)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def constant_term(self) -> int:
        return self.terms.get((0,) * self.nvars, 0)

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        """Terms in descending monomial order."""
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms, key=grevlex_key)

    def leading_coefficient(self) -> int:
        return self.terms[self.leading_monomial()]

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        inv = self.field.inv(self.leading_coefficient())
        return self.scale(inv)

    def homogeneous_component(self, d: int) -> "Polynomial":
        return Polynomial._raw(self.field, self.nvars, {m: c for m, c in self.terms.items() if sum(m) == d})

    # arithmetic
    def _check(self, other: "Polynomial") -> None:
        if other.field != self.field:
            raise FieldMismatchError("polynomials over different fields")
        if other.nvars != self.nvars:
            raise ValueError("polynomials in different numbers of variables")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, str, FieldElement)) and not isinstance(other, bool):
            return Polynomial.constant(self.field, self.nvars, self.field.code(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        add = self.field.add
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = add(out.get(m, 0), c)
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial._raw(self.field, self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        neg = self.field.neg
        return Polynomial._raw(self.field, self.nvars, {m: neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c: int) -> "Polynomial":
        """Multiply by the field code c."""
        if not c:
            return Polynomial.zero(self.field, self.nvars)
        if c == 1:
            return self
        mul = self.field.mul
        return Polynomial._raw(self.field, self.nvars, {m: mul(c, v) for m, v in self.terms.items()})

    def mul_term(self, m: Monomial, c: int) -> "Polynomial":
        mul = self.field.mul
        return Polynomial._raw(
            self.field, self.nvars, {monomial_mul(m, k): mul(c, v) for k, v in self.terms.items()}
        )

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(other.terms) < len(self.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        add, mul = self.field.add, self.field.mul
        out: dict = {}
        for ma, ca in a.items():
            for mb, cb in b.items():
                m = tuple(x + y for x, y in zip(ma, mb))
                v = add(out.get(m, 0), mul(ca, cb))
                if v:
                    out[m] = v
                else:
                    del out[m]
        return Polynomial._raw(self.field, self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = Polynomial.constant(self.field, self.nvars, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.field == other.field and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r}, nvars={self.nvars})"

    def __str__(self):
        return format_polynomial(self)

    # evaluation and substitution
    def evaluate(self, point: Sequence) -> int:
        """Value at ``point`` as a field code."""
        return evaluate(self, point)

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Replace ``x_j`` by ``images[j]``; images may live in a different number of variables."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        if not images:
            return self
        target = images[0]
        for im in images:
            if im.field != self.field:
                raise FieldMismatchError("substitution images over a different field")
            if im.nvars != target.nvars:
                raise ValueError("substitution images in different numbers of variables")
        powers: list[dict[int, Polynomial]] = [{} for _ in images]

        def power(j: int, e: int) -> Polynomial:
            cache = powers[j]
            if e not in cache:
                cache[e] = images[j] if e == 1 else power(j, e - 1) * images[j]
            return cache[e]

        out = Polynomial.zero(self.field, target.nvars)
        for m, c in self.terms.items():
            t = Polynomial.constant(self.field, target.nvars, c)
            for j, e in enumerate(m):
                if e:
                    t = t * power(j, e)
            out = out + t
        return out


def evaluate(f: Polynomial, point: Sequence) -> int:
    if len(point) != f.nvars:
        raise ValueError(f"point has {len(point)} coordinates, polynomial has {f.nvars} variables")
    field = f.field
    pt = [field.as_code(x) for x in point]
    add, mul, pw = field.add, field.mul, field.pow
    total = 0
    for m, c in f.terms.items():
        v = c
        for x, e in zip(pt, m):
            if e:
                v = mul(v, pw(x, e))
                if not v:
                    break
        total = add(total, v)
    return total


def linear_form(field: FieldSpec, coeffs: Sequence[int]) -> Polynomial:
    n = len(coeffs)
    return Polynomial._raw(
        field, n, {tuple(1 if j == i else 0 for j in range(n)): c for i, c in enumerate(coeffs) if c}
    )


# group action


def variable_map(v, g: int):
    """For monomial ``rho(g^-1)``: a tuple of ``(k, c)`` with ``g . x_j = c * x_k``; else None."""
    m = v.matrices[v.group.inverses[g]]
    out = []
    for row in m:
        nz = [(k, c) for k, c in enumerate(row) if c]
        if len(nz) != 1:
            return None
        out.append(nz[0])
    if len({k for k, _ in out}) != len(out):
        return None
    return tuple(out)


def act_monomial(vmap, m: Monomial, field: FieldSpec) -> tuple[Monomial, int]:
    """Image ``c * m'`` of a monomial under a variable map."""
    n = len(m)
    out = [0] * n
    c = 1
    for j, e in enumerate(m):
        if e:
            k, s = vmap[j]
            out[k] += e
            if s != 1:
                c = field.mul(c, field.pow(s, e))
    return tuple(out), c


def act(v, g: int, f: Polynomial) -> Polynomial:
    """``(g . f)(x) = f(rho(g^-1) x)``."""
    if f.nvars != v.dim:
        raise ValueError("polynomial and module dimensions differ")
    if f.field != v.field:
        raise FieldMismatchError("polynomial and module over different fields")
    if g == 0:
        return f
    field = v.field
    vmap = variable_map(v, g)
    if vmap is not None:
        add, mul = field.add, field.mul
        out: dict = {}
        for m, c in f.terms.items():
            m2, s = act_monomial(vmap, m, field)
            val = add(out.get(m2, 0), mul(c, s))
            if val:
                out[m2] = val
            else:
                out.pop(m2, None)
        return Polynomial._raw(field, f.nvars, out)
    rows = v.matrices[v.group.inverses[g]]
    return f.substitute([linear_form(field, row) for row in rows])


def orbit_sum(v, members, m: Monomial) -> Polynomial:
    """Sum of the distinct images ``c * m'`` of ``m`` under the subgroup ``members``.

    Requires a monomial action.  If some element stabilises ``m`` only up to a
    nontrivial scalar, the sum over the whole subgroup vanishes and so does the result.
    """
    m = tuple(m)
    if len(m) != v.dim:
        raise ValueError("monomial and module dimensions differ")
    gens = [members.to_parent[s] for s in members.group.generators]
    maps = []
    for g in gens:
        vm = variable_map(v, g)
        if vm is None:
            raise ValueError("orbit sums need a monomial action")
        maps.append(vm)
    field = v.field
    coeff = {m: 1}
    queue = [m]
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
                return Polynomial.zero(field, v.dim)
    return Polynomial._raw(field, v.dim, coeff)


# printing and parsing


def _format_monomial(m: Monomial) -> str:
    parts = []
    for i, e in enumerate(m):
        if e == 1:
            parts.append(f"x{i + 1}")
        elif e:
            parts.append(f"x{i + 1}^{e}")
    return "*".join(parts)


def format_polynomial(f: Polynomial) -> str:
    if not f.terms:
        return "0"
    out = []
    for m, c in f.sorted_terms():
        mono = _format_monomial(m)
        coef = f.field.format(c)
        if "+" in coef:
            coef = f"({coef})"
        if not mono:
            out.append(coef)
        elif c == 1:
            out.append(mono)
        else:
            out.append(f"{coef}*{mono}")
    return "+".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+)|(x)(\d+)|(z)|(\S))")


class _PolyParser:
    def __init__(self, text: str, field: FieldSpec, nvars: int):
        self.field, self.nvars, self.text = field, nvars, text
        self.tokens: list[tuple[str, object, int]] = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            mt = _TOKEN.match(text, pos)
            if mt is None:
                break
            if mt.group(1) is not None:
                self.tokens.append(("int", int(mt.group(1)), mt.start(1)))
            elif mt.group(2) is not None:
                self.tokens.append(("var", int(mt.group(3)), mt.start(2)))
            elif mt.group(4) is not None:
                self.tokens.append(("z", None, mt.start(4)))
            else:
                self.tokens.append((mt.group(5), None, mt.start(5)))
            pos = mt.end()
        self.i = 0

    def error(self, msg: str):
        col = self.tokens[self.i][2] if self.i < len(self.tokens) else len(self.text)
        raise ValueError(f"{msg} at column {col + 1} in {self.text!r}")

    def peek(self):
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def parse(self) -> Polynomial:
        if not self.tokens:
            self.error("empty polynomial")
        out = self.expr()
        if self.i != len(self.tokens):
            self.error("unexpected token")
        return out

    def expr(self) -> Polynomial:
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        out = self.term()
        if sign < 0:
            out = -out
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            out = out + t if op == "+" else out - t
        return out

    def term(self) -> Polynomial:
        out = self.power()
        while self.peek() == "*":
            self.take()
            out = out * self.power()
        return out

    def power(self) -> Polynomial:
        base = self.atom()
        if self.peek() == "^":
            self.take()
            if self.peek() != "int":
                self.error("expected exponent")
            base = base ** self.take()[1]
        return base

    def atom(self) -> Polynomial:
        kind = self.peek()
        f, n = self.field, self.nvars
        if kind == "int":
            return Polynomial.constant(f, n, f.from_int(self.take()[1]))
        if kind == "z":
            if f.k == 1:
                self.error("z is not available in a prime field")
            self.take()
            return Polynomial.constant(f, n, f.p)
        if kind == "var":
            idx = self.take()[1]
            if not 1 <= idx <= n:
                self.i -= 1
                self.error(f"variable x{idx} outside x1..x{n}")
            return Polynomial.variable(f, n, idx - 1)
        if kind == "(":
            self.take()
            out = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.take()
            return out
        self.error("unexpected token" if kind else "unexpected end of input")


def parse_polynomial(text: str, field: FieldSpec, nvars: int) -> Polynomial:
    """Inverse of :func:`format_polynomial`; also accepts ``-``, parentheses and unexpanded products."""
    return _PolyParser(text, field, nvars).parse()


def sum_polynomials(field: FieldSpec, nvars: int, polys: Iterable[Polynomial]) -> Polynomial:
    add = field.add
    out: dict = {}
    for p in polys:
        for m, c in p.terms.items():
            v = add(out.get(m, 0), c)
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return Polynomial._raw(field, nvars, out)
