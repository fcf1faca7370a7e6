"""Exact arithmetic in F_p and F_{p^k}.

Elements are encoded as integer *codes*: the residue vector ``(c_0, ..., c_{k-1})``
of a polynomial in the extension generator ``z`` maps to ``sum(c_i * p**i)``.
Containers elsewhere in the package (matrices, vectors, polynomial coefficients)
hold codes directly; :class:`FieldElement` wraps a single code together with its
field for scalar-level work.
"""

from __future__ import annotations

import functools
import math
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from sympy import factorint, isprime
from sympy.ntheory import n_order

from .errors import FieldMismatchError

# Fields up to this size get exp/log tables.
_TABLE_LIMIT = 1 << 16
# Fields up to this size (odd p, k > 1) also get an addition table.
_ADD_TABLE_LIMIT = 256


# -- polynomials over F_p as low-to-high coefficient lists -----------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], m: Sequence[int], p: int) -> list[int]:
    """Remainder of ``a`` modulo monic ``m``."""
    a = list(a)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i]
        if c:
            base = i - dm
            for j in range(dm + 1):
                a[base + j] = (a[base + j] - c * m[j]) % p
    return _trim(a[:dm]) if len(a) > dm else _trim(a)


def _pmul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _pdivmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    a = _trim(list(a))
    b = _trim(list(b))
    inv_lead = pow(b[-1], p - 2, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        c = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        q[shift] = c
        for j, y in enumerate(b):
            a[shift + j] = (a[shift + j] - c * y) % p
        _trim(a)
    return _trim(q), a


def _psub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def _pinv_mod(a: list[int], m: Sequence[int], p: int) -> list[int]:
    """Inverse of ``a`` modulo ``m`` by the extended Euclidean algorithm."""
    r0, r1 = _trim(list(m)), _trim(list(a))
    s0, s1 = [], [1]
    while r1:
        q, r = _pdivmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _psub(s0, _pmul(q, s1, p), p)
    if len(r0) != 1:
        raise ZeroDivisionError("element is not invertible")
    c = pow(r0[0], p - 2, p)
    return [x * c % p for x in s0]


def _ppowmod(base: list[int], e: int, m: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(base, m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        base = _pmod(_pmul(base, base, p), m, p)
        e >>= 1
    return result


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pdivmod(a, b, p)[1]
    return a


def _monic_polys(p: int, degree: int) -> Iterable[list[int]]:
    """All monic polynomials of ``degree`` in coefficient order (code order of the lower part)."""
    for code in range(p**degree):
        coeffs = []
        for _ in range(degree):
            code, c = divmod(code, p)
            coeffs.append(c)
        yield coeffs + [1]


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Irreducibility of a monic polynomial over F_p.

    Trial division by every monic polynomial of degree at most half the degree;
    when that search space is large, Ben-Or's gcd test is used instead.
    """
    f = _trim(list(poly))
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    half = n // 2
    if sum(p**d for d in range(1, half + 1)) <= 20000:
        for d in range(1, half + 1):
            for g in _monic_polys(p, d):
                if not _pdivmod(f, g, p)[1]:
                    return False
        return True
    x = [0, 1]
    xp = x
    for _ in range(half):
        xp = _ppowmod(xp, p, f, p)
        if len(_pgcd(f, _psub(xp, x, p), p)) > 1:
            return False
    return True


def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree ``k`` (``X`` for ``k = 1``)."""
    for cand in _monic_polys(p, k):
        if is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError("no irreducible polynomial found")  # unreachable


def _prime_factors(n: int) -> list[int]:
    return sorted(factorint(n)) if n > 1 else []


class FieldSpec:
    """The finite field F_p[z]/(modulus) of size ``p**k``."""

    __slots__ = ("p", "k", "modulus", "size", "_exp", "_log", "_addt", "_order_primes")

    def __init__(self, p: int, k: int, modulus: Sequence[int]):
        if not isprime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if p >= 1 << 31:
            raise ValueError("characteristic must be below 2**31")
        modulus = tuple(int(c) for c in modulus)
        if k < 1 or len(modulus) != k + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree k")
        if any(not 0 <= c < p for c in modulus):
            raise ValueError("modulus coefficients must lie in [0, p)")
        if not is_irreducible(modulus, p):
            raise ValueError(f"modulus {modulus} is reducible over F_{p}")
        self.p = p
        self.k = k
        self.modulus = modulus
        self.size = p**k
        self._exp = self._log = self._addt = None
        self._order_primes = _prime_factors(self.size - 1)
        if k > 1 and self.size <= _TABLE_LIMIT:
            self._build_tables()

    # -- identity -----------------------------------------------------------

    def _key(self):
        return (self.p, self.k, self.modulus)

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        if self.k == 1:
            return f"FieldSpec(F_{self.p})"
        return f"FieldSpec(F_{self.p}^{self.k}, modulus={list(self.modulus)})"

    # -- encoding -----------------------------------------------------------

    def decode(self, code: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.k):
            code, c = divmod(code, p)
            out.append(c)
        return out

    def encode(self, coeffs: Sequence[int]) -> int:
        coeffs = _pmod([int(c) % self.p for c in coeffs], self.modulus, self.p)
        code = 0
        for c in reversed(coeffs):
            code = code * self.p + c
        return code

    def _build_tables(self) -> None:
        q = self.size
        self._exp = self._log = None  # generic arithmetic during the search
        gen = next(c for c in range(2, q) if self.multiplicative_order(c) == q - 1)
        exp = [0] * (2 * (q - 1))
        log = [0] * q
        x = 1
        for i in range(q - 1):
            exp[i] = exp[i + q - 1] = x
            log[x] = i
            x = self._mul_generic(x, gen)
        self._exp, self._log = exp, log
        if self.p != 2 and q <= _ADD_TABLE_LIMIT:
            self._addt = [[self._add_generic(a, b) for b in range(q)] for a in range(q)]

    # -- arithmetic on codes ------------------------------------------------

    def _add_generic(self, a: int, b: int) -> int:
        p = self.p
        out, scale = 0, 1
        while a or b:
            a, x = divmod(a, p)
            b, y = divmod(b, p)
            out += ((x + y) % p) * scale
            scale *= p
        return out

    def _mul_generic(self, a: int, b: int) -> int:
        return self.encode(_pmul(self.decode(a), self.decode(b), self.p))

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self._addt is not None:
            return self._addt[a][b]
        return self._add_generic(a, b)

    def neg(self, a: int) -> int:
        if self.k == 1:
            return -a % self.p
        if self.p == 2:
            return a
        return self.mul(self.p - 1, a)  # code p-1 is the residue vector (p-1, 0, ..., 0)

    def sub(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a - b) % self.p
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        if not a or not b:
            return 0
        if self._exp is not None:
            return self._exp[self._log[a] + self._log[b]]
        return self._mul_generic(a, b)

    def inv(self, a: int) -> int:
        if not a:
            raise ZeroDivisionError("division by zero in finite field")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        if self._exp is not None:
            return self._exp[(self.size - 1 - self._log[a]) % (self.size - 1)]
        return self.encode(_pinv_mod(_trim(self.decode(a)), self.modulus, self.p))

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if self.k == 1:
            return pow(a, e, self.p)
        if e == 0:
            return 1
        if not a:
            return 0
        if self._exp is not None:
            return self._exp[self._log[a] * e % (self.size - 1)]
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def from_int(self, n: int) -> int:
        """Image of the integer ``n`` under the prime-field embedding."""
        return n % self.p

    def multiplicative_order(self, a: int) -> int:
        if not a:
            raise ValueError("zero has no multiplicative order")
        m = self.size - 1
        for r in self._order_primes:
            while m % r == 0 and self.pow(a, m // r) == 1:
                m //= r
        return m

    # -- conveniences ---------------------------------------------------------

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    @property
    def gen(self) -> "FieldElement":
        """The class of ``z`` (equal to 0 when ``k = 1``, since the modulus is ``X``)."""
        return FieldElement(self, self.encode([0, 1]))

    def element(self, value) -> "FieldElement":
        return FieldElement(self, self.code(value))

    def code(self, value) -> int:
        """Normalise an int, residue vector, string or FieldElement to a code."""
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatchError(f"{value!r} does not belong to {self!r}")
            return value.code
        if isinstance(value, bool):
            raise TypeError("booleans are not field elements")
        if isinstance(value, int):
            return self.from_int(value)
        if isinstance(value, str):
            return self.parse(value)
        return self.encode(list(value))

    def as_code(self, value) -> int:
        """Like :meth:`code`, but an int in ``0..size-1`` is taken as a raw code.

        Used for matrix entries, where ints are already encoded elements.
        """
        if isinstance(value, int) and not isinstance(value, bool) and 0 <= value < self.size:
            return value
        return self.code(value)

    def codes(self) -> range:
        """All codes in the fixed enumeration order (lexicographic, top coefficient first)."""
        return range(self.size)

    # -- text -----------------------------------------------------------------

    def format(self, code: int) -> str:
        """Print a code in the ``z``-polynomial grammar, e.g. ``2*z^3+z+1``."""
        coeffs = self.decode(code)
        parts = []
        for e in range(self.k - 1, -1, -1):
            c = coeffs[e]
            if not c:
                continue
            if e == 0:
                parts.append(str(c))
            else:
                zpart = "z" if e == 1 else f"z^{e}"
                parts.append(zpart if c == 1 else f"{c}*{zpart}")
        return "+".join(parts) if parts else "0"

    def parse(self, text: str) -> int:
        """Parse the ``z``-polynomial grammar; ``-`` and parentheses are accepted."""
        return _ZParser(self, text).parse()


class _ZParser:
    _token = re.compile(r"\s*(?:(\d+)|(z)|([-+*^()]))")

    def __init__(self, field: FieldSpec, text: str):
        self.field = field
        self.text = text
        self.tokens = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = self._token.match(text, pos)
            if not m:
                raise ValueError(f"bad field element {self.text!r} at column {pos + 1}")
            self.tokens.append(m.group(m.lastindex))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> int:
        if not self.tokens:
            raise ValueError("empty field element")
        v = self.expr()
        if self.peek() is not None:
            raise ValueError(f"trailing input in field element {self.text!r}")
        return v

    def expr(self) -> int:
        f = self.field
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
        v = self.term()
        if sign < 0:
            v = f.neg(v)
        while self.peek() in ("+", "-"):
            op = self.take()
            t = self.term()
            v = f.add(v, t) if op == "+" else f.sub(v, t)
        return v

    def term(self) -> int:
        v = self.power()
        while self.peek() == "*":
            self.take()
            v = self.field.mul(v, self.power())
        return v

    def power(self) -> int:
        base = self.atom()
        if self.peek() == "^":
            self.take()
            tok = self.take()
            if tok is None or not tok.isdigit():
                raise ValueError(f"bad exponent in {self.text!r}")
            return self.field.pow(base, int(tok))
        return base

    def atom(self) -> int:
        f = self.field
        tok = self.take()
        if tok is None:
            raise ValueError(f"unexpected end of {self.text!r}")
        if tok.isdigit():
            return f.from_int(int(tok))
        if tok == "z":
            if f.k == 1:
                raise ValueError("symbol z is undefined in a prime field")
            return f.encode([0, 1])
        if tok == "(":
            v = self.expr()
            if self.take() != ")":
                raise ValueError(f"unbalanced parenthesis in {self.text!r}")
            return v
        raise ValueError(f"unexpected {tok!r} in {self.text!r}")


@dataclass(frozen=True)
class FieldElement:
    field: FieldSpec
    code: int

    @property
    def coeffs(self) -> list[int]:
        return self.field.decode(self.code)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatchError("operands belong to different fields")
            return other.code
        if isinstance(other, int) and not isinstance(other, bool):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.add(self.code, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub(self.code, b))

    def __rsub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub(b, self.code))

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.mul(self.code, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.div(self.code, b))

    def __rtruediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.div(b, self.code))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.code))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.code, e))

    def __bool__(self):
        return self.code != 0

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.code))

    def __str__(self):
        return self.field.format(self.code)

    def __repr__(self):
        return f"FieldElement({self.field.format(self.code)!r} in F_{self.field.size})"


def arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    """Apply ``op`` (``add``, ``sub``, ``mul`` or ``div``) to two elements of one field."""
    if a.field != b.field:
        raise FieldMismatchError("operands belong to different fields")
    f = a.field
    try:
        fn = {"add": f.add, "sub": f.sub, "mul": f.mul, "div": f.div}[op]
    except KeyError:
        raise ValueError(f"unknown operation {op!r}") from None
    return FieldElement(f, fn(a.code, b.code))


@functools.lru_cache(maxsize=None)
def field_from_modulus(p: int, k: int, modulus: tuple[int, ...]) -> FieldSpec:
    return FieldSpec(p, k, modulus)


@functools.lru_cache(maxsize=None)
def prime_field(p: int) -> FieldSpec:
    return field_from_modulus(p, 1, (0, 1))


@functools.lru_cache(maxsize=None)
def extension_field(p: int, k: int) -> FieldSpec:
    """F_{p^k} with the lexicographically smallest monic irreducible modulus."""
    if not isprime(p):
        raise ValueError(f"characteristic {p} is not prime")
    if k == 1:
        return prime_field(p)
    return field_from_modulus(p, k, smallest_irreducible(p, k))


def make_field(p: int, root_orders: Iterable[int] = ()) -> FieldSpec:
    """Smallest F_{p^k} containing primitive n-th roots of unity for every requested n."""
    if not isprime(p):
        raise ValueError(f"characteristic {p} is not prime")
    k = 1
    for n in root_orders:
        if n < 1:
            raise ValueError(f"root order {n} must be positive")
        if n % p == 0:
            raise ValueError(f"no primitive {n}-th root of unity exists in characteristic {p}")
        if n > 1:
            k = math.lcm(k, n_order(p, n))
    return extension_field(p, k)


def multiplicative_order(a: FieldElement) -> int:
    return a.field.multiplicative_order(a.code)


def primitive_root_of_unity(field: FieldSpec, n: int) -> FieldElement:
    """First element, in code order, of multiplicative order exactly ``n``."""
    if n < 1 or (field.size - 1) % n:
        raise ValueError(f"{n} does not divide |F^*| = {field.size - 1}")
    for c in range(1, field.size):
        if field.pow(c, n) == 1 and field.multiplicative_order(c) == n:
            return FieldElement(field, c)
    raise AssertionError("unreachable: F^* is cyclic")
