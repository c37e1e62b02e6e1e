"""Line-based input formats (grammar in docs/formats.md).

Every line is stripped; blank lines and text after ``#`` are ignored.
Errors carry the 1-based line number of the offending line.
"""

from __future__ import annotations

import re
from pathlib import Path

from ._util import Guard, fmt
from .core import FinCategory, FinPoset, builtin, validate_category
from .errors import InputError, ParseError, TdcatError
from .presheaf import Copresheaf, Presheaf

_ID = r"[^\s{},#]+"
_OBJECT = re.compile(rf"^object\s+({_ID})$")
_ARROW = re.compile(rf"^arrow\s+({_ID})\s*:\s*({_ID})\s*->\s*({_ID})$")
_COMPOSE = re.compile(rf"^compose\s+({_ID})\s*\.\s*({_ID})\s*=\s*({_ID})$")
_ELEMENT = re.compile(rf"^element\s+({_ID})$")
_LE = re.compile(rf"^le\s+({_ID})\s+({_ID})$")
_CATEGORY = re.compile(r"^category\s+(\S+)$")
_BUILTIN = re.compile(r"^builtin\s+(\S+)(?:\s+(\d+))?$")
_VARIANCE = re.compile(r"^variance\s+(presheaf|copresheaf)$")
_SAMPLE = re.compile(rf"^sample\s+({_ID})$")
_AT = re.compile(rf"^at\s+({_ID})\s*=\s*\{{(.*)\}}$")
_MAP = re.compile(rf"^map\s+({_ID})\s*:\s*({_ID})\s*->\s*({_ID})$")


def _lines(text: str):
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield n, line


def _read(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None


# ---------------------------------------------------------------------------
# categories


def parse_category(text: str, name: str = "", path=None, guard: Guard | None = None) -> FinCategory:
    objects, arrows, comps = [], [], []
    for n, line in _lines(text):
        if m := _OBJECT.match(line):
            objects.append(m[1])
        elif m := _ARROW.match(line):
            arrows.append((m[1], m[2], m[3]))
        elif m := _COMPOSE.match(line):
            comps.append((m[1], m[2], m[3]))
        else:
            raise ParseError(f"expected 'object', 'arrow' or 'compose', got {line!r}", n, path)
    return validate_category(objects, arrows, comps, name=name, guard=guard)


def parse_builtin_ref(ref: str):
    """``builtin:<name>[:<n>]`` -> ``(name, n)``, else None."""
    if not ref.startswith("builtin:"):
        return None
    parts = ref.split(":")
    if len(parts) not in (2, 3) or not parts[1]:
        raise InputError(f"malformed builtin reference {ref!r}; use builtin:<name>[:<n>]")
    try:
        n = int(parts[2]) if len(parts) == 3 else 0
    except ValueError:
        raise InputError(f"malformed size in {ref!r}") from None
    return parts[1], n


def load_category(ref, guard: Guard | None = None) -> FinCategory:
    """A category file path or ``builtin:<name>[:<n>]``."""
    b = parse_builtin_ref(str(ref))
    if b is not None:
        return builtin(b[0], b[1], guard)
    path = Path(ref)
    return parse_category(_read(path), name=path.stem, path=str(path), guard=guard)


# ---------------------------------------------------------------------------
# posets


def parse_poset(text: str, path=None) -> FinPoset:
    elements, pairs, where = [], [], {}
    for n, line in _lines(text):
        if m := _ELEMENT.match(line):
            if m[1] in where:
                raise ParseError(f"duplicate element {m[1]!r}", n, path)
            where[m[1]] = n
            elements.append(m[1])
        elif m := _LE.match(line):
            pairs.append((n, m[1], m[2]))
        else:
            raise ParseError(f"expected 'element <id>' or 'le <a> <b>', got {line!r}", n, path)
    for n, a, b in pairs:
        for x in (a, b):
            if x not in where:
                raise ParseError(f"unknown element {x!r}", n, path)
    try:
        return FinPoset.from_relation(elements, [(a, b) for _, a, b in pairs])
    except TdcatError as e:
        raise ParseError(str(e), None, path) from None


def load_poset(ref) -> FinPoset:
    path = Path(ref)
    return parse_poset(_read(path), path=str(path))


def poset_to_text(P: FinPoset) -> str:
    lines = [f"element {fmt(x)}" for x in P.labels]
    lines += [f"le {fmt(P.labels[i])} {fmt(P.labels[j])}" for i, j in P.covers()]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# presheaf samples


def parse_samples(text: str, base: FinCategory | None = None, path=None, variance: str = "presheaf",
                  guard: Guard | None = None) -> list:
    """Samples of (co)presheaves.

    The base comes from ``base`` or from a ``category <path>`` /
    ``builtin <name> [n]`` line; when both are present they must agree.
    Maps of identity arrows are implicit.
    """
    samples: list[tuple[int, str, dict, dict]] = []
    current = None
    declared = None
    for n, line in _lines(text):
        if m := _CATEGORY.match(line):
            ref = Path(m[1])
            if path is not None and not ref.is_absolute():
                ref = Path(path).parent / ref
            declared = (n, load_category(ref, guard))
        elif m := _BUILTIN.match(line):
            declared = (n, builtin(m[1], int(m[2] or 0), guard))
        elif m := _VARIANCE.match(line):
            variance = m[1]
        elif m := _SAMPLE.match(line):
            current = (n, m[1], {}, {})
            samples.append(current)
        elif m := _AT.match(line):
            if current is None:
                raise ParseError("'at' before any 'sample'", n, path)
            items = [x.strip() for x in m[2].split(",") if x.strip()]
            if len(set(items)) != len(items):
                raise ParseError("duplicate element in value set", n, path)
            if m[1] in current[2]:
                raise ParseError(f"value set of {m[1]!r} given twice", n, path)
            current[2][m[1]] = (n, items)
        elif m := _MAP.match(line):
            if current is None:
                raise ParseError("'map' before any 'sample'", n, path)
            current[3].setdefault(m[1], {})
            if m[2] in current[3][m[1]]:
                raise ParseError(f"map of {m[1]!r} at {m[2]!r} given twice", n, path)
            current[3][m[1]][m[2]] = (n, m[3])
        else:
            raise ParseError(f"unrecognized line {line!r}", n, path)
    if declared is not None and base is not None and declared[1].fingerprint() != base.fingerprint():
        raise ParseError("sample file names a different category than the command", declared[0], path)
    C = base if base is not None else (declared[1] if declared else None)
    if C is None:
        raise ParseError("no category: add a 'category <path>' or 'builtin <name> [n]' line", None, path)
    kind = Presheaf if variance == "presheaf" else Copresheaf
    return [_build_sample(C, kind, s, path) for s in samples]


def _build_sample(C: FinCategory, kind, sample, path):
    line, name, at, maps = sample
    values = {}
    for obj, (n, items) in at.items():
        try:
            values[C.obj(obj)] = items
        except (KeyError, TdcatError):
            raise ParseError(f"unknown object {obj!r}", n, path) from None
    tables = {}
    for arrow, table in maps.items():
        first = min(n for n, _ in table.values())
        try:
            f = C.arrow(arrow)
        except (KeyError, TdcatError):
            raise ParseError(f"unknown arrow {arrow!r}", first, path) from None
        tables[f] = {x: y for x, (_, y) in table.items()}
    for f in range(C.n_arrows):
        if C.is_identity(f) or f in tables:
            continue
        start = C.tgt[f] if kind is Presheaf else C.src[f]
        if values.get(start):
            raise ParseError(f"sample {name!r}: no map given for arrow {C.arrows[f]}", line, path)
        tables[f] = {}
    try:
        return kind(C, values, tables, check=True, name=name)
    except TdcatError as e:
        raise ParseError(f"sample {name!r}: {e}", line, path) from None


def load_samples(ref, base: FinCategory | None = None, variance: str = "presheaf",
                 guard: Guard | None = None) -> list:
    path = Path(ref)
    return parse_samples(_read(path), base=base, path=str(path), variance=variance, guard=guard)
