"""The ``.lat`` text format.

A file is a sequence of lines::

    # the three-element chain
    object chain3
    kind: dlat
    elements: 0 m 1
    covers: 0<m m<1

``kind`` is one of ``poset``, ``mlat``, ``lattice``, ``dlat``.  Cover pairs
may be separated by spaces or commas, and spaces around ``<`` are ignored.
Pairs that are not covers are accepted; the order is their transitive
closure.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from .errors import CycleDetected, KindMismatch, NotALattice, ParseError
from .order import BoundedLattice, FinitePoset, MeetSemilattice, is_distributive, poset_from_covers

KINDS = ("poset", "mlat", "lattice", "dlat")
_NAME = re.compile(r"^[^\s#<,]+$")


@dataclass(frozen=True)
class LatFile:
    name: str
    kind: str
    labels: tuple[str, ...]
    covers: tuple[tuple[str, str], ...]
    carrier: FinitePoset


def _build(kind: str, p: FinitePoset) -> FinitePoset:
    try:
        if kind == "poset":
            return p
        if kind == "mlat":
            return MeetSemilattice(p.labels, p.down)
        lat = BoundedLattice(p.labels, p.down)
    except NotALattice as exc:
        raise KindMismatch(f"declared {kind} but {exc}") from None
    if kind == "dlat" and not is_distributive(lat):
        raise KindMismatch("declared dlat but the lattice is not distributive")
    return lat


def parse_lat(text: str) -> LatFile:
    fields: dict[str, tuple[int, str]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("object") and (len(line) == 6 or line[6].isspace()):
            key, value = "object", line[6:].strip()
        elif ":" in line:
            key, value = (s.strip() for s in line.split(":", 1))
        else:
            raise ParseError(lineno, f"expected 'key: value', got {line!r}")
        if key not in ("object", "kind", "elements", "covers"):
            raise ParseError(lineno, f"unknown key {key!r}")
        if key in fields:
            raise ParseError(lineno, f"duplicate key {key!r}")
        fields[key] = (lineno, value)

    for key in ("object", "kind", "elements"):
        if key not in fields:
            raise ParseError(len(text.splitlines()) or 1, f"missing {key!r}")
    line, name = fields["object"]
    if not _NAME.match(name):
        raise ParseError(line, f"bad object name {name!r}")
    line, kind = fields["kind"]
    if kind not in KINDS:
        raise ParseError(line, f"unknown kind {kind!r} (expected one of {', '.join(KINDS)})")
    line, elements = fields["elements"]
    labels = elements.replace(",", " ").split()
    if not labels:
        raise ParseError(line, "no elements")
    for s in labels:
        if not _NAME.match(s):
            raise ParseError(line, f"bad element label {s!r}")
    if len(set(labels)) != len(labels):
        dup = next(s for i, s in enumerate(labels) if s in labels[:i])
        raise ParseError(line, f"duplicate element {dup!r}")

    covers = []
    if "covers" in fields:
        line, body = fields["covers"]
        body = re.sub(r"\s*<\s*", "<", body).replace(",", " ")
        for tok in body.split():
            parts = tok.split("<")
            if len(parts) != 2 or not all(parts):
                raise ParseError(line, f"bad cover {tok!r} (expected a<b)")
            lo, hi = parts
            for s in parts:
                if s not in labels:
                    raise ParseError(line, f"unknown element {s!r}")
            if lo == hi:
                raise ParseError(line, f"self-cover {tok!r}")
            covers.append((lo, hi))
    else:
        line = fields["elements"][0]
    try:
        p = poset_from_covers(labels, covers)
    except CycleDetected as exc:
        raise ParseError(line, f"covers contain a cycle ({exc})") from None
    return LatFile(name, kind, tuple(labels), tuple(covers), _build(kind, p))


def load_lat(path) -> LatFile:
    return parse_lat(Path(path).read_text(encoding="utf-8"))


def strongest_kind(x: FinitePoset) -> str:
    if isinstance(x, BoundedLattice):
        return "dlat" if is_distributive(x) else "lattice"
    if isinstance(x, MeetSemilattice):
        return "mlat"
    return "poset"


def emit_lat(name: str, x: FinitePoset, kind: str | None = None) -> str:
    kind = kind or strongest_kind(x)
    pairs = " ".join(f"{x.labels[a]}<{x.labels[b]}" for a, b in x.covers())
    lines = [f"object {name}", f"kind: {kind}", "elements: " + " ".join(x.labels)]
    if pairs:
        lines.append("covers: " + pairs)
    return "\n".join(lines) + "\n"
