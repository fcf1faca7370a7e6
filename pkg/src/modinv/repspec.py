"""Line-oriented text format for a (Group, Representation) pair.

Example::

    [meta]
    label = s3_char2

    [field]
    p = 2
    roots = 3            # or: k = 2 / modulus = 1, 1, 1

    [group]
    perm = (1,2)
    perm = (1,2,3)

    [representation]
    regular              # or: natural, or one "matrix = [[...], ...]" per generator

A group given by ``matrix`` generators needs no representation block; it acts
tautologically.  ``#`` starts a comment.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import CapExceededError, ModInvError
from .gf import FieldSpec, extension_field, field_from_modulus, is_irreducible, make_field
from .rep.groups import (
    Group,
    format_permutation,
    group_from_permutations,
    left_regular_permutations,
    parse_permutation,
)
from .rep.modules import (
    Representation,
    _permutation_matrix,
    group_from_matrices,
    regular_representation,
)

SECTIONS = ("meta", "field", "group", "representation")


class RepSpecError(ModInvError, ValueError):
    def __init__(self, line: int, column: int, message: str):
        self.line, self.column = line, column
        super().__init__(f"line {line}, column {column}: {message}")


@dataclass
class _Entry:
    key: str
    value: str | None
    line: int
    column: int  # 1-based column of the value (or key for directives)


@dataclass
class _Parsed:
    sections: dict[str, list[_Entry]] = dc_field(default_factory=dict)
    header_lines: dict[str, int] = dc_field(default_factory=dict)


def _lex(text: str) -> _Parsed:
    out = _Parsed()
    current = None
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        stripped = line.strip()
        if not stripped:
            continue
        col = len(line) - len(line.lstrip()) + 1
        if stripped.startswith("["):
            if not stripped.endswith("]"):
                raise RepSpecError(ln, col, "unterminated section header")
            name = stripped[1:-1].strip()
            if name not in SECTIONS:
                raise RepSpecError(ln, col + 1, f"unknown section [{name}]")
            if name in out.sections:
                raise RepSpecError(ln, col, f"duplicate section [{name}]")
            out.sections[name] = []
            out.header_lines[name] = ln
            current = name
            continue
        if current is None:
            raise RepSpecError(ln, col, "entry outside of any section")
        if "=" in stripped:
            key, _, value = stripped.partition("=")
            vcol = line.index("=") + 2 + (len(value) - len(value.lstrip()))
            key, value = key.strip(), value.strip()
            if not key:
                raise RepSpecError(ln, col, "missing key before '='")
            if not value:
                raise RepSpecError(ln, vcol, f"missing value for {key}")
            out.sections[current].append(_Entry(key, value, ln, vcol))
        else:
            out.sections[current].append(_Entry(stripped, None, ln, col))
    return out


def _int(entry: _Entry) -> int:
    try:
        return int(entry.value)
    except ValueError:
        raise RepSpecError(entry.line, entry.column, f"expected an integer for {entry.key}") from None


def _int_list(entry: _Entry) -> list[int]:
    try:
        return [int(x) for x in entry.value.replace(",", " ").split()]
    except ValueError:
        raise RepSpecError(entry.line, entry.column, f"expected integers for {entry.key}") from None


def _parse_field(entries: list[_Entry], header: int) -> FieldSpec:
    keys = {}
    for e in entries:
        if e.key not in ("p", "k", "modulus", "roots") or e.value is None:
            raise RepSpecError(e.line, e.column, f"unknown field entry {e.key!r}")
        if e.key in keys:
            raise RepSpecError(e.line, e.column, f"duplicate entry {e.key}")
        keys[e.key] = e
    if "p" not in keys:
        raise RepSpecError(header, 1, "field block needs p")
    p_entry = keys["p"]
    p = _int(p_entry)
    try:
        if "modulus" in keys:
            mod = _int_list(keys["modulus"])
            k = len(mod) - 1
            if "k" in keys and _int(keys["k"]) != k:
                raise RepSpecError(keys["k"].line, keys["k"].column, "k does not match the modulus degree")
            if k < 1 or mod[-1] != 1 or any(not 0 <= c < p for c in mod):
                e = keys["modulus"]
                raise RepSpecError(e.line, e.column, "modulus must be monic with coefficients in 0..p-1")
            if k > 1 and not is_irreducible(mod, p):
                e = keys["modulus"]
                raise RepSpecError(e.line, e.column, "modulus is not irreducible")
            if k == 1 and tuple(mod) != (0, 1):
                e = keys["modulus"]
                raise RepSpecError(e.line, e.column, "the prime field uses the modulus X, i.e. 0, 1")
            field = field_from_modulus(p, k, tuple(mod))
        elif "k" in keys:
            field = extension_field(p, _int(keys["k"]))
        else:
            field = make_field(p, _int_list(keys["roots"]) if "roots" in keys else [])
    except RepSpecError:
        raise
    except (ValueError, ModInvError) as exc:
        raise RepSpecError(p_entry.line, p_entry.column, str(exc)) from None
    if "roots" in keys and ("k" in keys or "modulus" in keys):
        e = keys["roots"]
        roots = _int_list(e)
        if any((field.size - 1) % n for n in roots):
            raise RepSpecError(e.line, e.column, "field does not contain the requested roots of unity")
    return field


def _split_top(text: str, start: int) -> list[tuple[str, int]]:
    """Split at top-level commas; returns (piece, offset) pairs."""
    parts, depth, cur = [], 0, start
    for i, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append((text[cur - start : i], cur))
            cur = i + 1 + start
    parts.append((text[cur - start :], cur))
    return parts


def _parse_matrix(entry: _Entry, field: FieldSpec) -> tuple[tuple[int, ...], ...]:
    text = entry.value
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise RepSpecError(entry.line, entry.column, "matrix must be a bracketed list of rows")
    inner = s[1:-1]
    rows = []
    depth = 0
    pos = 0
    start = None
    for i, ch in enumerate(inner):
        if ch == "[":
            if depth == 0:
                start = i + 1
            depth += 1
        elif ch == "]":
            depth -= 1
            if depth < 0:
                raise RepSpecError(entry.line, entry.column + i + 1, "unbalanced ']'")
            if depth == 0:
                rows.append((inner[start:i], start))
        elif depth == 0 and ch not in ", \t":
            raise RepSpecError(entry.line, entry.column + i + 1, f"unexpected {ch!r} between rows")
        pos = i
    if depth:
        raise RepSpecError(entry.line, entry.column + pos + 1, "unbalanced '['")
    if not rows:
        raise RepSpecError(entry.line, entry.column, "empty matrix")
    out = []
    for body, off in rows:
        row = []
        for piece, poff in _split_top(body, off):
            piece_s = piece.strip()
            col = entry.column + 1 + poff + (len(piece) - len(piece.lstrip()))
            if not piece_s:
                raise RepSpecError(entry.line, col, "empty matrix entry")
            try:
                row.append(field.parse(piece_s))
            except (ValueError, ModInvError) as exc:
                raise RepSpecError(entry.line, col, str(exc)) from None
        out.append(tuple(row))
    n = len(out)
    if any(len(r) != n for r in out):
        raise RepSpecError(entry.line, entry.column, "matrix must be square")
    return tuple(out)


def _semantic(entry_line: int, exc: Exception):
    # cap violations keep their type so callers can name the cap
    if isinstance(exc, CapExceededError):
        return exc
    return RepSpecError(entry_line, 1, str(exc))


@dataclass
class RepSpec:
    group: Group
    rep: Representation
    label: str | None = None


def parse_repspec(text: str) -> RepSpec:
    parsed = _lex(text)
    for name in ("field", "group"):
        if name not in parsed.sections:
            raise RepSpecError(1, 1, f"missing [{name}] section")
    label = None
    for e in parsed.sections.get("meta", []):
        if e.key == "label" and e.value is not None:
            label = e.value
        elif e.value is None:
            raise RepSpecError(e.line, e.column, f"unexpected directive {e.key!r} in [meta]")
    field = _parse_field(parsed.sections["field"], parsed.header_lines["field"])

    group_entries = parsed.sections["group"]
    if not group_entries:
        raise RepSpecError(parsed.header_lines["group"], 1, "group block needs generators")
    kinds = {e.key for e in group_entries}
    for e in group_entries:
        if e.key not in ("perm", "matrix") or e.value is None:
            raise RepSpecError(e.line, e.column, f"unknown group entry {e.key!r}")
    if len(kinds) > 1:
        e = group_entries[-1]
        raise RepSpecError(e.line, 1, "mix of perm and matrix generators")
    rep_entries = parsed.sections.get("representation")

    if kinds == {"matrix"}:
        mats = [_parse_matrix(e, field) for e in group_entries]
        try:
            group, taut = group_from_matrices(mats, field)
        except (ValueError, ModInvError) as exc:
            raise _semantic(group_entries[0].line, exc) from None
        if rep_entries is None:
            return RepSpec(group, taut, label)
    else:
        perms = []
        for e in group_entries:
            try:
                perms.append(parse_permutation(e.value))
            except ValueError as exc:
                raise RepSpecError(e.line, e.column, str(exc)) from None
        try:
            group = group_from_permutations(perms)
        except (ValueError, ModInvError) as exc:
            raise _semantic(group_entries[0].line, exc) from None
        if rep_entries is None:
            raise RepSpecError(parsed.header_lines["group"], 1, "permutation group needs a [representation] block")

    header = parsed.header_lines["representation"]
    if not rep_entries:
        raise RepSpecError(header, 1, "empty [representation] block")
    directives = [e for e in rep_entries if e.value is None]
    matrices = [e for e in rep_entries if e.key == "matrix" and e.value is not None]
    for e in rep_entries:
        if e.value is not None and e.key != "matrix":
            raise RepSpecError(e.line, e.column, f"unknown representation entry {e.key!r}")
        if e.value is None and e.key not in ("regular", "natural"):
            raise RepSpecError(e.line, e.column, f"unknown directive {e.key!r}")
    if directives and matrices or len(directives) > 1:
        raise RepSpecError(rep_entries[1].line, 1, "give either one directive or generator matrices")
    try:
        if directives:
            d = directives[0]
            if d.key == "regular":
                rep = regular_representation(group, field)
            else:
                if group.labels is None or not isinstance(group.labels[0][0], int):
                    raise RepSpecError(d.line, d.column, "natural module needs permutation generators")
                mats = [_permutation_matrix(group.labels[s]) for s in group.generators]
                rep = Representation.from_generators(group, field, mats)
        else:
            if len(matrices) != len(group.generators):
                raise RepSpecError(
                    header, 1, f"need {len(group.generators)} matrices, one per generator, got {len(matrices)}"
                )
            mats = [_parse_matrix(e, field) for e in matrices]
            rep = Representation.from_generators(group, field, mats)
    except RepSpecError:
        raise
    except (ValueError, ModInvError) as exc:
        raise _semantic(header, exc) from None
    return RepSpec(group, rep, label)


def _format_matrix(m, field: FieldSpec) -> str:
    return "[" + ", ".join("[" + ", ".join(field.format(c) for c in row) + "]" for row in m) + "]"


def _permutation_labels(group: Group):
    """Cycle strings for the generators if the group's labels are permutations reproducing it."""
    labels = group.labels
    if labels is None:
        return None
    lab = labels[0]
    if not (isinstance(lab, tuple) and lab and all(isinstance(x, int) for x in lab)):
        return None
    if sorted(lab) != list(range(len(lab))):
        return None
    texts = [format_permutation(labels[s]) for s in group.generators]
    try:
        again = group_from_permutations([parse_permutation(t, len(lab)) for t in texts])
    except (ValueError, ModInvError):
        return None
    return texts if again == group else None


def _is_tautological(rep: Representation) -> bool:
    labels = rep.group.labels
    if labels is None or not (isinstance(labels[0], tuple) and labels[0] and isinstance(labels[0][0], tuple)):
        return False
    if tuple(labels) != rep.matrices:
        return False
    try:
        again, _ = group_from_matrices([labels[s] for s in rep.group.generators], rep.field)
    except (ValueError, ModInvError):
        return False
    return again == rep.group


def emit_repspec(rep: Representation, label: str | None = None) -> str:
    """Text that :func:`parse_repspec` turns back into an equal representation."""
    group, field = rep.group, rep.field
    lines = []
    if label:
        lines += ["[meta]", f"label = {label}", ""]
    lines += [
        "[field]",
        f"p = {field.p}",
        f"k = {field.k}",
        "modulus = " + ", ".join(str(c) for c in field.modulus),
        "",
        "[group]",
    ]
    if _is_tautological(rep):
        lines += [f"matrix = {_format_matrix(group.labels[s], field)}" for s in group.generators]
        return "\n".join(lines) + "\n"
    perms = _permutation_labels(group)
    if perms is None:
        perms = [format_permutation(p) for p in left_regular_permutations(group)]
    lines += [f"perm = {p}" for p in perms]
    lines += ["", "[representation]"]
    if rep == regular_representation(group, field, cap=max(group.order, 1)):
        lines.append("regular")
    else:
        lines += [f"matrix = {_format_matrix(m, field)}" for m in rep.generator_matrices]
    return "\n".join(lines) + "\n"

