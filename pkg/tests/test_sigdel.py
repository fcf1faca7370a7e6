import itertools
import json
import math

import pytest

from modinv import sigdel
from modinv.errors import BoundViolationError
from modinv.gf import extension_field, prime_field
from modinv.inv import invariants_up_to
from modinv.poly import Polynomial, evaluate
from modinv.rep import (
    a4_char3_module,
    alternating_group_4,
    cyclic_group,
    direct_sum,
    regular_representation,
    symmetric_group,
    trivial_representation,
)
from modinv.sigdel import (
    ModuleResult,
    bounds_report,
    check_lemma_nt,
    delta,
    delta_vreg_fast,
    sigma,
)

F2 = prime_field(2)
F3 = prime_field(3)


def lifted_invariants(v, d, field):
    fs = [f for b in invariants_up_to(v, d) for f in b.basis]
    return [Polynomial(field, v.dim, f.terms) for f in fs]


def has_nonzero_common_zero(polys, field, n):
    return any(
        any(pt) and all(evaluate(p, pt) == 0 for p in polys) for pt in itertools.product(range(field.size), repeat=n)
    )


@pytest.mark.parametrize(
    "make,expected",
    [
        (lambda: regular_representation(cyclic_group(2), F2), 2),
        (lambda: regular_representation(symmetric_group(3), F2), 3),
        (a4_char3_module, 4),
        (lambda: regular_representation(cyclic_group(4), F2), 4),
        (lambda: regular_representation(cyclic_group(3), F3), 3),
        (lambda: trivial_representation(cyclic_group(3), F2), 1),
    ],
)
def test_sigma_values(make, expected):
    v = make()
    cert = sigma(v)
    assert cert.value == expected
    assert cert.per_degree[-1].cuts_out_origin
    assert not any(e.cuts_out_origin for e in cert.per_degree[:-1])


@pytest.mark.parametrize(
    "make,big",
    [
        (lambda: regular_representation(cyclic_group(2), F2), prime_field(2)),
        (lambda: regular_representation(symmetric_group(3), F2), extension_field(2, 2)),
        (a4_char3_module, extension_field(3, 2)),
        (lambda: regular_representation(cyclic_group(3), F3), extension_field(3, 2)),
    ],
)
def test_sigma_lower_bound_by_points(make, big):
    # the invariants of degree < sigma share a nonzero zero over a small extension
    v = make()
    s = sigma(v).value
    assert has_nonzero_common_zero(lifted_invariants(v, s - 1, big), big, v.dim)


@pytest.mark.parametrize(
    "make,expected",
    [
        (lambda: regular_representation(symmetric_group(3), F3), 3),
        (lambda: regular_representation(symmetric_group(3), F2), 2),
        (a4_char3_module, 0),
        (lambda: trivial_representation(cyclic_group(2), F2, dim=2), 1),
    ],
)
def test_delta_values(make, expected):
    assert delta(make()).value == expected


@pytest.mark.parametrize(
    "group,p,value,evaluation",
    [(symmetric_group(3), 3, 3, 2), (alternating_group_4(), 2, 4, 1), (symmetric_group(3), 5, 1, 1), (cyclic_group(4), 2, 4, 1)],
)
def test_delta_vreg_fast(group, p, value, evaluation):
    fast = delta_vreg_fast(group, p)
    assert fast.value == value == delta(regular_representation(group, prime_field(p))).value
    assert fast.evaluation == evaluation
    assert fast.witness.degree == value


@pytest.mark.parametrize("make", [lambda: regular_representation(cyclic_group(4), F2), a4_char3_module, lambda: regular_representation(symmetric_group(3), F3)])
def test_delta_at_most_sigma(make):
    v = make()
    assert delta(v).value <= sigma(v).value <= v.group.order


def test_direct_sum_law():
    g = symmetric_group(3)
    reg = regular_representation(g, F2)
    triv = trivial_representation(g, F2)
    from modinv.rep import induce

    a3 = g.generated([x for x in range(6) if g.element_order(x) == 3])
    ind = induce(trivial_representation(a3.group, F2), g, a3)
    for a, b in [(triv, ind), (ind, ind), (triv, triv)]:
        s = direct_sum(a, b)
        assert sigma(s).value == max(sigma(a).value, sigma(b).value)
        assert delta(s).value == max(delta(a).value, delta(b).value)


def test_certificate_json_schema():
    cert = sigma(regular_representation(symmetric_group(3), F2))
    doc = json.loads(cert.to_json())
    assert set(doc) == {"kind", "value", "group_order", "characteristic", "per_degree", "witnesses"}
    assert doc["kind"] == "sigma" and doc["value"] == 3 and doc["group_order"] == 6 and doc["characteristic"] == 2
    assert [e["d"] for e in doc["per_degree"]] == [1, 2, 3]
    assert all(set(e) == {"d", "invariant_dims", "cuts_out_origin"} for e in doc["per_degree"])
    # Burnside counts of monomial orbits in degrees 1, 2, 3
    assert doc["per_degree"][-1]["invariant_dims"] == [1, 5, 10]
    assert all(isinstance(w, str) for w in doc["witnesses"])
    # reproducible byte for byte
    assert cert.to_json() == sigma(regular_representation(symmetric_group(3), F2)).to_json()


def test_search_past_group_order_raises(monkeypatch):
    from modinv.gb import OriginReport

    monkeypatch.setattr(sigdel, "cuts_out_origin", lambda *a, **k: OriginReport(False, (), "stub"))
    with pytest.raises(BoundViolationError):
        sigma(regular_representation(cyclic_group(2), F2))


def test_congruence_lift_brute_force():
    assert check_lemma_nt(2, 3, 2)
    assert check_lemma_nt(3, 2, 3)
    for p, q in itertools.product(range(1, 8), repeat=2):
        if math.gcd(p, q) == 1:
            assert check_lemma_nt(p, q, 1)
    with pytest.raises(ValueError):
        check_lemma_nt(2, 4, 2)


def test_bounds_report_s3_char2():
    g = symmetric_group(3)
    reg = regular_representation(g, F2)
    mod = ModuleResult("reg", sigma(reg), delta(reg), role="regular")
    report = bounds_report(g, 2, [mod])
    assert report.ok and report.p_nilpotent and not report.sylow_normal
    tight = [c for c in report.checks if "|G|/l" in c.name]
    assert len(tight) == 1 and (tight[0].lhs, tight[0].rhs) == (3, 3)
    assert any(c.name.startswith("delta(V_reg)") and c.lhs == 2 for c in report.checks)
    doc = report.to_dict()
    assert doc["sylow_order"] == 2 and doc["normalizer_order"] == 2


def test_bounds_report_raises_on_violation():
    g = symmetric_group(3)
    reg = regular_representation(g, F2)
    good = sigma(reg)
    bad = sigdel.DegreeCertificate("sigma", 7, 6, 2, good.per_degree, good.witnesses)
    with pytest.raises(BoundViolationError):
        bounds_report(g, 2, [ModuleResult("bad", bad, None)])
    report = bounds_report(g, 2, [ModuleResult("bad", bad, None)], raise_on_violation=False)
    assert not report.ok


def test_twist_bound_recorded():
    from modinv.rep import inversion_automorphism, normalizer_twist_module

    z3 = cyclic_group(3)
    v = normalizer_twist_module(z3, inversion_automorphism(z3), 2, 3)
    cert = sigma(v)
    assert cert.value == 6
    report = bounds_report(v.group, 3, [ModuleResult("twist", cert, delta(v), role="normalizer-twist")])
    assert any(c.relation == ">=" and c.rhs == 6 for c in report.checks)
    assert report.normalizer_quotient_cyclic


def test_zero_dimensional_module():
    v = trivial_representation(cyclic_group(2), F2, dim=0)
    assert sigma(v).value == 0 and delta(v).value == 0

