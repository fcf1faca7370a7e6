"""sigma(G,V) and delta(G,V) by Gröbner certification, plus bound reports."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .errors import BoundViolationError
from .gb import cuts_out_origin
from .gf import prime_field
from .inv import invariant_basis
from .poly import Polynomial, evaluate, linear_form, orbit_sum
from .rep.groups import Group, Subgroup, normalizer, p_complement, smallest_prime_divisor, sylow_subgroup
from .rep.modules import Representation, fixed_subspace, regular_representation


@dataclass(frozen=True)
class DegreeLog:
    d: int
    invariant_dims: tuple[int, ...]
    cuts_out_origin: bool


@dataclass(frozen=True)
class DegreeCertificate:
    kind: str
    value: int
    group_order: int
    characteristic: int
    per_degree: tuple[DegreeLog, ...]
    witnesses: tuple[Polynomial, ...]

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "value": self.value,
            "group_order": self.group_order,
            "characteristic": self.characteristic,
            "per_degree": [
                {"d": e.d, "invariant_dims": list(e.invariant_dims), "cuts_out_origin": e.cuts_out_origin}
                for e in self.per_degree
            ],
            "witnesses": [str(w) for w in self.witnesses],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _search(v: Representation, kind: str, transform, nvars: int, cap: int | None) -> DegreeCertificate:
    order = v.group.order
    gens: list[Polynomial] = []
    dims: list[int] = []
    log: list[DegreeLog] = []
    witnesses: list[Polynomial] = []
    for d in range(1, order + 1):
        basis = invariant_basis(v, d, cap=cap)
        dims.append(basis.dim)
        witnesses.extend(basis.basis)
        gens.extend(g for g in (transform(f) for f in basis.basis) if g)
        verdict = bool(gens) and cuts_out_origin(gens, nvars, per_variable=False).verdict
        log.append(DegreeLog(d, tuple(dims), verdict))
        if verdict:
            return DegreeCertificate(kind, d, order, v.field.p, tuple(log), tuple(witnesses))
    raise BoundViolationError(f"{kind} exceeds the group order {order}")


def sigma(v: Representation, cap: int | None = None) -> DegreeCertificate:
    """Least d such that the invariants of degree 1..d have only the origin as common zero."""
    if v.dim == 0:
        return DegreeCertificate("sigma", 0, v.group.order, v.field.p, (), ())
    return _search(v, "sigma", lambda f: f, v.dim, cap)


def delta(v: Representation, cap: int | None = None) -> DegreeCertificate:
    """Least d such that the invariants of degree 1..d have no common zero in V^G other than 0.

    V^G is parametrised as ``x = sum_j t_j b_j`` over its echelon basis, and the
    restricted invariants are certified in the t-variables.
    """
    fixed = fixed_subspace(v)
    if not fixed:
        return DegreeCertificate("delta", 0, v.group.order, v.field.p, (), ())
    m = len(fixed)
    images = [linear_form(v.field, [b[k] for b in fixed]) for k in range(v.dim)]
    return _search(v, "delta", lambda f: f.substitute(images), m, cap)


@dataclass(frozen=True)
class FastDelta:
    value: int
    witness: Polynomial
    evaluation: int


def delta_vreg_fast(g: Group, p: int) -> FastDelta:
    """delta of the regular module read off a Sylow subgroup, with the orbit-sum witness."""
    field = prime_field(p)
    syl = sylow_subgroup(g, p)
    v = regular_representation(g, field)
    m = tuple(1 if x in syl else 0 for x in range(g.order))
    witness = orbit_sum(v, g.whole(), m)
    value = evaluate(witness, [1] * g.order)
    expected = field.from_int(g.order // syl.order)
    if value != expected or not value:
        raise BoundViolationError(f"orbit-sum witness evaluates to {value}, expected {expected}")
    return FastDelta(syl.order, witness, value)


def check_lemma_nt(p: int, q: int, s: int) -> bool:
    """Brute force: a = 1 mod q and a^p = 1 mod q^s force a = 1 mod q^s."""
    if p < 1 or q < 1 or s < 1:
        raise ValueError("p, q, s must be positive")
    if math.gcd(p, q) != 1:
        raise ValueError("p and q must be coprime")
    qs = q**s
    for a in range(qs):
        if a % q == 1 % q and pow(a, p, qs) == 1 % qs and a % qs != 1 % qs:
            return False
    return True


# bound reports


@dataclass
class ModuleResult:
    """Certificates for one module.  ``role`` marks special modules: ``regular`` or ``normalizer-twist``."""

    label: str
    sigma: DegreeCertificate | None = None
    delta: DegreeCertificate | None = None
    role: str = "module"


@dataclass(frozen=True)
class BoundCheck:
    name: str
    label: str
    lhs: int
    relation: str
    rhs: int

    @property
    def holds(self) -> bool:
        return {"<=": self.lhs <= self.rhs, ">=": self.lhs >= self.rhs, "==": self.lhs == self.rhs}[self.relation]

    def __str__(self):
        return f"{'ok  ' if self.holds else 'FAIL'} {self.name} [{self.label}]: {self.lhs} {self.relation} {self.rhs}"


@dataclass
class BoundsReport:
    group_order: int
    characteristic: int
    sylow_order: int
    normalizer_order: int
    normalizer_quotient_cyclic: bool
    p_nilpotent: bool
    sylow_normal: bool
    checks: list[BoundCheck] = dc_field(default_factory=list)
    notes: list[str] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.holds for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "group_order": self.group_order,
            "characteristic": self.characteristic,
            "sylow_order": self.sylow_order,
            "normalizer_order": self.normalizer_order,
            "normalizer_quotient_cyclic": self.normalizer_quotient_cyclic,
            "p_nilpotent": self.p_nilpotent,
            "sylow_normal": self.sylow_normal,
            "checks": [
                {"name": c.name, "label": c.label, "lhs": c.lhs, "relation": c.relation, "rhs": c.rhs, "holds": c.holds}
                for c in self.checks
            ],
            "notes": list(self.notes),
        }

    def __str__(self):
        return "\n".join([str(c) for c in self.checks] + self.notes)


def _quotient_is_cyclic(n: Subgroup, p_sub: Subgroup) -> bool:
    """Whether ``n / p_sub`` is cyclic, for p_sub normal in n."""
    g = n.parent
    k = n.order // p_sub.order
    members = set(p_sub.members)
    for x in n.members:
        # order of xP in the quotient
        y, e = x, 1
        while y not in members:
            y = g.cayley[y][x]
            e += 1
        if e == k:
            return True
    return k == 1


def bounds_report(
    g: Group,
    p: int,
    modules: Sequence[ModuleResult],
    relations: Sequence[tuple[str, str, int, str, int]] = (),
    raise_on_violation: bool = True,
) -> BoundsReport:
    """Check every applicable inequality on the supplied certificates.

    ``relations`` are extra ``(name, label, lhs, relation, rhs)`` checks, e.g. the
    restriction and induction comparisons computed by the caller.
    """
    syl = sylow_subgroup(g, p)
    norm = normalizer(g, syl)
    complement = p_complement(g, p)
    report = BoundsReport(
        group_order=g.order,
        characteristic=p,
        sylow_order=syl.order,
        normalizer_order=norm.order,
        normalizer_quotient_cyclic=_quotient_is_cyclic(norm, syl),
        p_nilpotent=complement is not None,
        sylow_normal=syl.is_normal(),
    )
    add = report.checks.append
    l = smallest_prime_divisor(g.order) if g.order > 1 else 1
    for mod in modules:
        s = mod.sigma.value if mod.sigma else None
        d = mod.delta.value if mod.delta else None
        if s is not None:
            add(BoundCheck("sigma <= |G|", mod.label, s, "<=", g.order))
            if report.p_nilpotent and not report.sylow_normal:
                add(BoundCheck("sigma <= |G|/l (p-nilpotent, Sylow not normal)", mod.label, s, "<=", g.order // l))
            if mod.role == "normalizer-twist" and report.normalizer_quotient_cyclic:
                add(BoundCheck("sigma >= |N_G(P)| (twist module)", mod.label, s, ">=", norm.order))
        if d is not None:
            add(BoundCheck("delta <= |P|", mod.label, d, "<=", syl.order))
            if mod.role == "regular":
                add(BoundCheck("delta(V_reg) == |P|", mod.label, d, "==", syl.order))
        if s is not None and d is not None:
            add(BoundCheck("delta <= sigma", mod.label, d, "<=", s))
    for name, label, lhs, rel, rhs in relations:
        add(BoundCheck(name, label, lhs, rel, rhs))
    report.notes.append(
        "N_G(P)/P is " + ("cyclic" if report.normalizer_quotient_cyclic else "not cyclic") + " (informational)"
    )
    regular = [m for m in modules if m.role == "regular" and m.sigma]
    if regular:
        report.notes.append(f"sigma(G, V_reg) = {regular[0].sigma.value}; reported as sigma(G) via V_reg only")
    if raise_on_violation and not report.ok:
        bad = "; ".join(str(c) for c in report.checks if not c.holds)
        raise BoundViolationError(bad)
    return report
