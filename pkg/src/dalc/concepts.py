"""ALC concept language: expression trees, axioms, knowledge bases, and the
purely syntactic transformations (negation normal form, subconcept closure,
materialisation) everything else is built on.

Concepts are immutable trees compared structurally; they are safe to use as
dict keys and set members, and safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union


@dataclass(frozen=True)
class Top:
    def __repr__(self) -> str:
        return "Top"


@dataclass(frozen=True)
class Bottom:
    def __repr__(self) -> str:
        return "Bottom"


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Not:
    operand: "Concept"


@dataclass(frozen=True)
class And:
    left: "Concept"
    right: "Concept"


@dataclass(frozen=True)
class Or:
    left: "Concept"
    right: "Concept"


@dataclass(frozen=True)
class Exists:
    role: str
    filler: "Concept"


@dataclass(frozen=True)
class Forall:
    role: str
    filler: "Concept"


Concept = Union[Top, Bottom, Atom, Not, And, Or, Exists, Forall]

TOP = Top()
BOTTOM = Bottom()


@dataclass(frozen=True)
class GCI:
    """Strict subsumption axiom: every instance of ``lhs`` is one of ``rhs``."""

    lhs: Concept
    rhs: Concept


@dataclass(frozen=True)
class DCI:
    """Defeasible subsumption axiom: typical instances of ``lhs`` are ``rhs``."""

    lhs: Concept
    rhs: Concept


Axiom = Union[GCI, DCI]


@dataclass(frozen=True)
class KnowledgeBase:
    """A finite TBox of GCIs plus a finite DTBox of DCIs, in source order."""

    tbox: tuple[GCI, ...] = ()
    dtbox: tuple[DCI, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "tbox", tuple(self.tbox))
        object.__setattr__(self, "dtbox", tuple(self.dtbox))

    @property
    def axioms(self) -> tuple[Axiom, ...]:
        return self.tbox + self.dtbox


def nnf(c: Concept) -> Concept:
    """Rewrite to negation normal form: Not applies to atoms only.

    Equivalence-preserving under the set-theoretic semantics (De Morgan and
    the quantifier dualities), and idempotent.
    """
    if isinstance(c, (Top, Bottom, Atom)):
        return c
    if isinstance(c, And):
        return And(nnf(c.left), nnf(c.right))
    if isinstance(c, Or):
        return Or(nnf(c.left), nnf(c.right))
    if isinstance(c, Exists):
        return Exists(c.role, nnf(c.filler))
    if isinstance(c, Forall):
        return Forall(c.role, nnf(c.filler))
    # Not: push inward by one constructor and recurse.
    inner = c.operand
    if isinstance(inner, Atom):
        return c
    if isinstance(inner, Top):
        return BOTTOM
    if isinstance(inner, Bottom):
        return TOP
    if isinstance(inner, Not):
        return nnf(inner.operand)
    if isinstance(inner, And):
        return Or(nnf(Not(inner.left)), nnf(Not(inner.right)))
    if isinstance(inner, Or):
        return And(nnf(Not(inner.left)), nnf(Not(inner.right)))
    if isinstance(inner, Exists):
        return Forall(inner.role, nnf(Not(inner.filler)))
    if isinstance(inner, Forall):
        return Exists(inner.role, nnf(Not(inner.filler)))
    raise TypeError("not a concept: %r" % (c,))


def direct_subconcepts(c: Concept) -> tuple[Concept, ...]:
    if isinstance(c, (Top, Bottom, Atom)):
        return ()
    if isinstance(c, Not):
        return (c.operand,)
    if isinstance(c, (And, Or)):
        return (c.left, c.right)
    return (c.filler,)


def subconcept_closure(cs: Iterable[Concept]) -> frozenset[Concept]:
    """Smallest superset of ``cs`` closed under direct subconcepts and a
    single negation of each member."""
    closed: set[Concept] = set()
    stack = list(cs)
    while stack:
        c = stack.pop()
        if c in closed:
            continue
        closed.add(c)
        stack.extend(direct_subconcepts(c))
    # One negation layer; negations of negations collapse to the operand,
    # which subconcept closure already put in the set.
    negations = {Not(c) for c in closed if not isinstance(c, Not)}
    return frozenset(closed | negations)


def materialise(dcis: Sequence[DCI]) -> list[Concept]:
    """The classical stand-ins for defeasible axioms: one ``¬lhs ⊔ rhs`` per
    DCI, in input order."""
    return [Or(Not(d.lhs), d.rhs) for d in dcis]


def conjoin(cs: Sequence[Concept]) -> Concept:
    """Right-nested conjunction of ``cs``; the empty conjunction is Top."""
    if not cs:
        return TOP
    out = cs[-1]
    for c in reversed(cs[:-1]):
        out = And(c, out)
    return out


def atom_names(items: Iterable[Concept | Axiom]) -> frozenset[str]:
    names: set[str] = set()
    for item in items:
        for c in _walk(item):
            if isinstance(c, Atom):
                names.add(c.name)
    return frozenset(names)


def role_names(items: Iterable[Concept | Axiom]) -> frozenset[str]:
    names: set[str] = set()
    for item in items:
        for c in _walk(item):
            if isinstance(c, (Exists, Forall)):
                names.add(c.role)
    return frozenset(names)


def _walk(item: Concept | Axiom):
    if isinstance(item, (GCI, DCI)):
        yield from _walk(item.lhs)
        yield from _walk(item.rhs)
        return
    stack = [item]
    while stack:
        c = stack.pop()
        yield c
        stack.extend(direct_subconcepts(c))
