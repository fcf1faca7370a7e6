import pytest

from modinv.gf import make_field, prime_field
from modinv.repspec import RepSpecError, emit_repspec, parse_repspec
from modinv.rep import (
    a4_char3_module,
    alternating_group_4,
    cyclic_group,
    conjugation_automorphism,
    induce,
    inversion_automorphism,
    klein_four,
    normalizer_twist_module,
    p_times_a_module,
    regular_representation,
    symmetric_group,
    trivial_representation,
    zqzd_summand,
)

S3_REGULAR = """\
# S3 in characteristic 2
[meta]
label = s3-char2

[field]
p = 2

[group]
perm = (1,2)
perm = (1,2,3)

[representation]
regular
"""

A4_MATRICES = """\
[field]
p = 3
[group]
matrix = [[0, 0, 1], [1, 0, 0], [0, 1, 0]]
matrix = [[2, 0, 0], [0, 2, 0], [0, 0, 1]]
"""


def test_parse_examples():
    spec = parse_repspec(S3_REGULAR)
    assert spec.label == "s3-char2"
    assert spec.rep.dim == 6 and spec.group.order == 6
    a4 = parse_repspec(A4_MATRICES)
    assert a4.group.order == 12 and a4.rep.dim == 3
    assert a4.rep == a4_char3_module()


def test_field_with_roots_and_explicit_modulus():
    spec = parse_repspec("[field]\np = 2\nroots = 3\n[group]\nmatrix = [[z]]\n")
    assert spec.rep.field.size == 4 and spec.group.order == 3
    spec = parse_repspec("[field]\np = 2\nk = 2\nmodulus = 1, 1, 1\n[group]\nmatrix = [[z+1]]\n")
    assert spec.group.order == 3


@pytest.mark.parametrize(
    "text,line",
    [
        ("[field]\np = 2\n[group]\nperm = (1,2)\n[representation]\nmatrix = [[0, 1], [1, 1]]\n", 5),
        ("[field]\np = 4\n[group]\nmatrix = [[1]]\n", 2),
        ("[field]\np = 3\n[group]\nmatrix = [[1, 2]\n", 4),
        ("[group]\nperm = (1,2)\n", 1),
        ("[field]\np = 2\n[group]\nperm = (1,2\n[representation]\nregular\n", 4),
        ("[field]\np = 2\n[group]\nperm = (1,2)\n[representation]\nmatrix = [[0, 1], [1, 0]]\nmatrix = [[1]]\n", 5),
        ("[field]\np = 3\n[group]\nmatrix = [[0]]\n", 4),
    ],
)
def test_diagnostics_are_line_anchored(text, line):
    with pytest.raises(RepSpecError) as err:
        parse_repspec(text)
    assert err.value.line == line
    assert str(err.value).startswith(f"line {line}, column ")


def test_wrong_order_matrix_is_homomorphism_error():
    text = "[field]\np = 3\n[group]\nperm = (1,2,3)\n[representation]\nmatrix = [[2]]\n"
    with pytest.raises(RepSpecError, match="compatible|homomorphism"):
        parse_repspec(text)


def _constructions():
    f2, f3 = prime_field(2), prime_field(3)
    s3 = symmetric_group(3)
    a3 = s3.generated([x for x in range(6) if s3.element_order(x) == 3])
    z3 = cyclic_group(3)
    v4 = klein_four()
    return {
        "s3-reg": regular_representation(s3, f2),
        "a4-reg": regular_representation(alternating_group_4(), f3),
        "a4-matrix": a4_char3_module(),
        "zqzd": zqzd_summand(3, 2, 2, 1),
        "zqzd5": zqzd_summand(5, 4, 2, 3),
        "p-times-a": p_times_a_module(cyclic_group(2), [3], 2),
        "twist": normalizer_twist_module(z3, inversion_automorphism(z3), 2, 3),
        "twist-a4": normalizer_twist_module(v4, conjugation_automorphism(v4, "(1,2,3)"), 3, 2),
        "induced": induce(trivial_representation(a3.group, make_field(2, [3])), s3, a3),
        "trivial": trivial_representation(cyclic_group(4), f3, dim=2),
    }


@pytest.mark.parametrize("name", sorted(_constructions()))
def test_round_trip(name):
    rep = _constructions()[name]
    text = emit_repspec(rep, label=name)
    spec = parse_repspec(text)
    assert spec.rep == rep
    assert spec.label == name
    assert emit_repspec(spec.rep, label=name) == text


def test_emitter_uses_regular_directive():
    text = emit_repspec(regular_representation(symmetric_group(3), prime_field(2)))
    assert "\nregular\n" in text
