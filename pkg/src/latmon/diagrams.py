"""Pointwise equations between homs and split (co)equalizer diagrams."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import IdentityViolated, SourceTargetMismatch
from .order import Hom


@dataclass(frozen=True)
class LawCheck:
    """Outcome of one equation; ``witness`` is the first element where it fails."""

    name: str
    holds: bool
    witness: str | None = None

    def as_dict(self) -> dict:
        return {"name": self.name, "holds": self.holds, "witness": self.witness}


def equal(name: str, lhs, rhs) -> LawCheck:
    """Compare two homs (or zero-argument callables producing them) pointwise.

    Composites that are ill-typed count as a failed equation rather than an
    error, so tampered diagrams are reported instead of crashing.
    """
    try:
        lhs = lhs() if callable(lhs) and not isinstance(lhs, Hom) else lhs
        rhs = rhs() if callable(rhs) and not isinstance(rhs, Hom) else rhs
    except SourceTargetMismatch as exc:
        return LawCheck(name, False, f"ill-typed: {exc}")
    if lhs.source != rhs.source or lhs.target != rhs.target:
        return LawCheck(name, False, "ill-typed: sides have different carriers")
    for i, (u, v) in enumerate(zip(lhs.map, rhs.map)):
        if u != v:
            return LawCheck(name, False, lhs.source.labels[i])
    return LawCheck(name, True)


def is_identity(name: str, f) -> LawCheck:
    try:
        f = f() if callable(f) and not isinstance(f, Hom) else f
    except SourceTargetMismatch as exc:
        return LawCheck(name, False, f"ill-typed: {exc}")
    return equal(name, f, Hom.identity(f.source)) if f.source == f.target else \
        LawCheck(name, False, "ill-typed: not an endomorphism")


def leq_pointwise(name: str, lhs: Hom, rhs: Hom) -> LawCheck:
    for i, (u, v) in enumerate(zip(lhs.map, rhs.map)):
        if not lhs.target.leq(u, v):
            return LawCheck(name, False, lhs.source.labels[i])
    return LawCheck(name, True)


@dataclass(frozen=True)
class SplitDiagram:
    """A split coequalizer ``A ⇉(f,g) B →q C`` with ``t: B→A``, ``s: C→B``.

    For ``orientation == "equalizer"`` the arrows are reversed:
    ``C →q B ⇉(f,g) A`` with ``s: B→C`` and ``t: A→B``.  ``names`` gives the
    display name of (f, g, t, q, s).
    """

    orientation: str
    f: Hom
    g: Hom
    t: Hom
    q: Hom
    s: Hom
    names: tuple[str, str, str, str, str] = ("f", "g", "t", "q", "s")

    def identities(self) -> list[LawCheck]:
        f, g, t, q, s = self.f, self.g, self.t, self.q, self.s
        nf, ng, nt, nq, ns = self.names
        if self.orientation == "coequalizer":
            return [
                equal(f"{nq}·{nf} = {nq}·{ng}", lambda: q @ f, lambda: q @ g),
                is_identity(f"{nq}·{ns} = 1", lambda: q @ s),
                is_identity(f"{nf}·{nt} = 1", lambda: f @ t),
                equal(f"{ns}·{nq} = {ng}·{nt}", lambda: s @ q, lambda: g @ t),
            ]
        if self.orientation == "equalizer":
            return [
                equal(f"{nf}·{nq} = {ng}·{nq}", lambda: f @ q, lambda: g @ q),
                is_identity(f"{ns}·{nq} = 1", lambda: s @ q),
                is_identity(f"{nt}·{nf} = 1", lambda: t @ f),
                equal(f"{nq}·{ns} = {nt}·{ng}", lambda: q @ s, lambda: t @ g),
            ]
        raise ValueError(f"unknown orientation {self.orientation!r}")

    def verify(self) -> list[LawCheck]:
        checks = self.identities()
        for c in checks:
            if not c.holds:
                raise IdentityViolated(c.name, c.witness)
        return checks

    def holds(self) -> bool:
        return all(c.holds for c in self.identities())

    def swapped(self) -> SplitDiagram:
        """The diagram with ``s`` and ``t`` exchanged (a negative control)."""
        nf, ng, nt, nq, ns = self.names
        return SplitDiagram(self.orientation, self.f, self.g, self.s, self.q, self.t, (nf, ng, ns, nq, nt))


def apply_functor(monad, diagram: SplitDiagram) -> SplitDiagram:
    """Image of a split diagram under T; split diagrams are absolute."""
    from .monads import apply_hom

    homs = [apply_hom(monad, h) for h in (diagram.f, diagram.g, diagram.t, diagram.q, diagram.s)]
    names = tuple(f"T({n})" for n in diagram.names)
    return SplitDiagram(diagram.orientation, *homs, names=names)
