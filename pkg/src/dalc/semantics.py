"""Finite-model semantics: preferential and ranked interpretations over small
domains, satisfaction, height maps, unions, bounded model search, and the
KLM-postulate checker.

This module is the brute-force oracle the reasoner is validated against, so
it deliberately evaluates everything from first principles (set-theoretic
extensions, minima under the preference order) rather than reusing any part
of the tableau machinery.

Extensions are represented internally as bit masks over the domain
``{0, .., n-1}``; element ``i`` corresponds to bit ``1 << i``.

Bounded search
--------------

``search_model`` and ``search_countermodel`` decide, exhaustively, whether a
ranked interpretation with at most ``max_domain`` elements satisfies (or
refutes) a knowledge base.  Enumerating raw role graphs is hopeless even at
domain size 4, so the search enumerates *abstract configurations* instead:
an atom extension per concept name, a convex height map, and one bit per
element for every quantified subconcept occurring in the axioms.  A
configuration is kept only when some role graph realises exactly those bits
(a per-element check), which makes the abstraction exact: every concrete
ranked interpretation projects onto a realisable configuration with the same
axiom values, and every realisable configuration is materialised back into a
concrete witness.  Results are therefore identical to naive enumeration —
``tests/test_semantics.py`` cross-checks this against ``_search_naive`` on
small vocabularies — but reachable within the acceptance-time budget.

The enumeration order is deterministic: domain size ascending, bit patterns
(atom extensions then quantifier bits, as one ascending integer) in blocks,
and height vectors in lexicographic order within each block.  The first
witness found is reproducible across runs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Optional, Sequence, Union

import numpy as np

from .concepts import (
    And,
    Atom,
    Axiom,
    BOTTOM,
    Concept,
    DCI,
    Exists,
    Forall,
    GCI,
    KnowledgeBase,
    Not,
    Or,
    TOP,
    Top,
    Bottom,
    atom_names,
    role_names,
)
from .ranks import Rank

_CHUNK_BITS = 20  # rows are enumerated in blocks of at most 2**_CHUNK_BITS


# ---------------------------------------------------------------------------
# Interpretation structures


@dataclass(frozen=True)
class FiniteInterpretation:
    """A classical interpretation over domain ``{0, .., domain_size-1}``."""

    domain_size: int
    atom_ext: Mapping[str, frozenset[int]]
    role_ext: Mapping[str, frozenset[tuple[int, int]]]
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.domain_size < 1:
            raise ValueError("domain must be non-empty")
        object.__setattr__(
            self, "atom_ext", {a: frozenset(e) for a, e in self.atom_ext.items()}
        )
        object.__setattr__(
            self,
            "role_ext",
            {r: frozenset((x, y) for x, y in e) for r, e in self.role_ext.items()},
        )
        for a, e in self.atom_ext.items():
            if any(x < 0 or x >= self.domain_size for x in e):
                raise ValueError(f"atom {a} extension outside domain")
        for r, e in self.role_ext.items():
            if any(
                x < 0 or x >= self.domain_size or y < 0 or y >= self.domain_size
                for x, y in e
            ):
                raise ValueError(f"role {r} extension outside domain")

    @property
    def full_mask(self) -> int:
        return (1 << self.domain_size) - 1

    def _succ_mask(self, role: str, x: int) -> int:
        key = ("succ", role)
        table = self._cache.get(key)
        if table is None:
            table = [0] * self.domain_size
            for a, b in self.role_ext.get(role, ()):
                table[a] |= 1 << b
            self._cache[key] = table
        return table[x]


@dataclass(frozen=True)
class PreferentialInterpretation:
    """A finite interpretation plus a smooth strict partial order on elements
    (``(x, y)`` in ``order`` reads ``x`` is more typical than ``y``)."""

    base: FiniteInterpretation
    order: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        object.__setattr__(self, "order", frozenset(self.order))
        pairs = self.order
        for x, y in pairs:
            if (y, x) in pairs or x == y:
                raise ValueError(f"order is not a strict partial order at ({x}, {y})")
        for x, y in pairs:
            for y2, z in pairs:
                if y2 == y and (x, z) not in pairs:
                    raise ValueError(f"order is not transitive at ({x}, {y}, {z})")


@dataclass(frozen=True)
class RankedInterpretation:
    """A finite interpretation plus a convex height map (layer per element)."""

    base: FiniteInterpretation
    heights: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "heights", tuple(self.heights))
        if len(self.heights) != self.base.domain_size:
            raise ValueError("one height per domain element required")
        top = max(self.heights)
        present = set(self.heights)
        if min(self.heights) < 0 or present != set(range(top + 1)):
            raise ValueError(f"height map {self.heights} is not convex")

    @property
    def layer_masks(self) -> tuple[int, ...]:
        key = ("layers", self.heights)
        masks = self.base._cache.get(key)
        if masks is None:
            masks = [0] * (max(self.heights) + 1)
            for x, h in enumerate(self.heights):
                masks[h] |= 1 << x
            masks = tuple(masks)
            self.base._cache[key] = masks
        return masks

    def layers(self) -> list[frozenset[int]]:
        return [_bits(m) for m in self.layer_masks]

    def as_preferential(self) -> PreferentialInterpretation:
        order = frozenset(
            (x, y)
            for x in range(self.base.domain_size)
            for y in range(self.base.domain_size)
            if self.heights[x] < self.heights[y]
        )
        return PreferentialInterpretation(self.base, order)

    def to_json_dict(self) -> dict:
        return {
            "domain": self.base.domain_size,
            "atoms": {a: sorted(e) for a, e in sorted(self.base.atom_ext.items())},
            "roles": {
                r: sorted([x, y] for x, y in e)
                for r, e in sorted(self.base.role_ext.items())
            },
            "heights": list(self.heights),
        }


Interpretation = Union[FiniteInterpretation, PreferentialInterpretation, RankedInterpretation]


def _bits(mask: int) -> frozenset[int]:
    out = set()
    i = 0
    while mask:
        if mask & 1:
            out.add(i)
        mask >>= 1
        i += 1
    return frozenset(out)


def _base_of(i: Interpretation) -> FiniteInterpretation:
    return i if isinstance(i, FiniteInterpretation) else i.base


def _ext_mask(base: FiniteInterpretation, c: Concept) -> int:
    cached = base._cache.get(c)
    if cached is not None:
        return cached
    full = base.full_mask
    if isinstance(c, Top):
        m = full
    elif isinstance(c, Bottom):
        m = 0
    elif isinstance(c, Atom):
        m = 0
        for x in base.atom_ext.get(c.name, ()):
            m |= 1 << x
    elif isinstance(c, Not):
        m = full & ~_ext_mask(base, c.operand)
    elif isinstance(c, And):
        m = _ext_mask(base, c.left) & _ext_mask(base, c.right)
    elif isinstance(c, Or):
        m = _ext_mask(base, c.left) | _ext_mask(base, c.right)
    elif isinstance(c, Exists):
        fm = _ext_mask(base, c.filler)
        m = 0
        for x in range(base.domain_size):
            if base._succ_mask(c.role, x) & fm:
                m |= 1 << x
    elif isinstance(c, Forall):
        fm = _ext_mask(base, c.filler)
        m = 0
        for x in range(base.domain_size):
            if base._succ_mask(c.role, x) & ~fm == 0:
                m |= 1 << x
    else:
        raise TypeError(f"not a concept: {c!r}")
    base._cache[c] = m
    return m


def extension(i: Interpretation, c: Concept) -> frozenset[int]:
    """The set-theoretic extension of ``c``; absent atoms/roles read as empty."""
    return _bits(_ext_mask(_base_of(i), c))


def _min_mask_ranked(i: RankedInterpretation, c: Concept) -> int:
    ext = _ext_mask(i.base, c)
    if ext == 0:
        return 0
    for layer in i.layer_masks:
        m = ext & layer
        if m:
            return m
    raise AssertionError("non-empty extension must meet some layer")


def min_elements(i: Union[PreferentialInterpretation, RankedInterpretation], c: Concept) -> frozenset[int]:
    """Elements of ``extension(i, c)`` minimal under the preference order.

    Non-empty whenever the extension is non-empty (smoothness is automatic
    on finite domains).
    """
    if isinstance(i, RankedInterpretation):
        return _bits(_min_mask_ranked(i, c))
    ext = extension(i, c)
    return frozenset(
        x for x in ext if not any(y != x and (y, x) in i.order for y in ext)
    )


def height_of_concept(i: RankedInterpretation, c: Concept) -> Rank:
    """The layer index of the minimal instances of ``c``; infinite iff empty."""
    ext = _ext_mask(i.base, c)
    if ext == 0:
        return Rank.infinite()
    for h, layer in enumerate(i.layer_masks):
        if ext & layer:
            return Rank.finite(h)
    raise AssertionError("unreachable")


def satisfies(i: Union[PreferentialInterpretation, RankedInterpretation], a: Axiom) -> bool:
    """GCI: extension inclusion.  DCI: minimal lhs-instances lie in the rhs."""
    base = _base_of(i)
    if isinstance(a, GCI):
        return _ext_mask(base, a.lhs) & ~_ext_mask(base, a.rhs) & base.full_mask == 0
    if isinstance(i, RankedInterpretation):
        return _min_mask_ranked(i, a.lhs) & ~_ext_mask(base, a.rhs) & base.full_mask == 0
    ext_rhs = extension(i, a.rhs)
    return min_elements(i, a.lhs) <= ext_rhs


def satisfies_all(i, axioms: Iterable[Axiom]) -> bool:
    return all(satisfies(i, a) for a in axioms)


# ---------------------------------------------------------------------------
# Height maps from modular orders (and back)


class NotModularError(ValueError):
    def __init__(self, message: str, triple: tuple):
        super().__init__(message)
        self.triple = triple


def heights_from_order(domain_size: int, order: Iterable[tuple[int, int]]) -> tuple[int, ...]:
    """The unique convex height map inducing the given modular order.

    The construction strips successive layers of minimal elements.  Input
    must be an irreflexive, transitive relation whose incomparability
    relation is transitive; violations are rejected with the offending
    pair or triple named.
    """
    pairs = frozenset((x, y) for x, y in order)
    for x, y in pairs:
        if x == y:
            raise NotModularError(f"order is irreflexive everywhere except ({x}, {x})", (x, x))
        if not (0 <= x < domain_size and 0 <= y < domain_size):
            raise ValueError(f"pair ({x}, {y}) outside domain of size {domain_size}")
    for x, y in pairs:
        for y2, z in pairs:
            if y2 == y and (x, z) not in pairs:
                raise NotModularError(
                    f"order is not transitive: ({x}, {y}) and ({y}, {z}) without ({x}, {z})",
                    (x, y, z),
                )

    def incomparable(x: int, y: int) -> bool:
        return (x, y) not in pairs and (y, x) not in pairs

    for x in range(domain_size):
        for y in range(domain_size):
            for z in range(domain_size):
                if x != y and y != z and x != z:
                    if incomparable(x, y) and incomparable(y, z) and not incomparable(x, z):
                        raise NotModularError(
                            "incomparability is not transitive on "
                            f"({x}, {y}, {z}): {x} and {z} are comparable",
                            (x, y, z),
                        )

    heights = [0] * domain_size
    remaining = set(range(domain_size))
    level = 0
    while remaining:
        minima = {
            x for x in remaining if not any((y, x) in pairs for y in remaining)
        }
        for x in minima:
            heights[x] = level
        remaining -= minima
        level += 1
    return tuple(heights)


def order_from_heights(heights: Sequence[int]) -> frozenset[tuple[int, int]]:
    return frozenset(
        (x, y)
        for x in range(len(heights))
        for y in range(len(heights))
        if heights[x] < heights[y]
    )


# ---------------------------------------------------------------------------
# Unions


def disjoint_union(interps: Sequence[PreferentialInterpretation]) -> PreferentialInterpretation:
    """Tagged union of preferential interpretations: component ``s`` element
    ``x`` becomes ``offset_s + x``; atoms, roles and the order stay within
    components."""
    if not interps:
        raise ValueError("disjoint union of an empty collection")
    offsets = []
    total = 0
    for p in interps:
        offsets.append(total)
        total += p.base.domain_size
    atoms: dict[str, set[int]] = {}
    roles: dict[str, set[tuple[int, int]]] = {}
    order: set[tuple[int, int]] = set()
    for off, p in zip(offsets, interps):
        for a, e in p.base.atom_ext.items():
            atoms.setdefault(a, set()).update(off + x for x in e)
        for r, e in p.base.role_ext.items():
            roles.setdefault(r, set()).update((off + x, off + y) for x, y in e)
        order.update((off + x, off + y) for x, y in p.order)
    base = FiniteInterpretation(
        total,
        {a: frozenset(e) for a, e in atoms.items()},
        {r: frozenset(e) for r, e in roles.items()},
    )
    return PreferentialInterpretation(base, frozenset(order))


def ranked_union(interps: Sequence[RankedInterpretation]) -> RankedInterpretation:
    """Disjoint union of domains with every element keeping its height, so
    layers of equal index are merged."""
    if not interps:
        raise ValueError("ranked union of an empty collection")
    offsets = []
    total = 0
    for r in interps:
        offsets.append(total)
        total += r.base.domain_size
    atoms: dict[str, set[int]] = {}
    roles: dict[str, set[tuple[int, int]]] = {}
    heights: list[int] = []
    for off, r in zip(offsets, interps):
        for a, e in r.base.atom_ext.items():
            atoms.setdefault(a, set()).update(off + x for x in e)
        for ro, e in r.base.role_ext.items():
            roles.setdefault(ro, set()).update((off + x, off + y) for x, y in e)
        heights.extend(r.heights)
    base = FiniteInterpretation(
        total,
        {a: frozenset(e) for a, e in atoms.items()},
        {r: frozenset(e) for r, e in roles.items()},
    )
    return RankedInterpretation(base, tuple(heights))


# ---------------------------------------------------------------------------
# Bounded exhaustive search


@dataclass(frozen=True)
class SearchResult:
    """Outcome of a bounded search.  ``interpretation`` is None when nothing
    was found within the bound, which proves nothing beyond the bound (the
    search is one-sided)."""

    interpretation: Optional[RankedInterpretation]
    enumerated: int

    @property
    def found(self) -> bool:
        return self.interpretation is not None


@lru_cache(maxsize=None)
def convex_height_vectors(n: int) -> tuple[tuple[int, ...], ...]:
    out = []
    for hv in itertools.product(range(n), repeat=n):
        top = max(hv)
        if set(hv) == set(range(top + 1)):
            out.append(hv)
    return tuple(out)


@lru_cache(maxsize=None)
def _min_height_tables(n: int) -> np.ndarray:
    """tables[k][mask] = least height under height vector k among the
    elements in ``mask``, or ``n`` (above every height) for the empty mask."""
    hvs = convex_height_vectors(n)
    tables = np.full((len(hvs), 1 << n), n, dtype=np.uint8)
    for k, hv in enumerate(hvs):
        for mask in range(1, 1 << n):
            tables[k][mask] = min(hv[i] for i in range(n) if mask & (1 << i))
    return tables


def _quantified_subconcepts(axioms: Sequence[Axiom]) -> list[Concept]:
    seen = []
    stack = []
    for a in axioms:
        stack.extend([a.lhs, a.rhs])
    found: set[Concept] = set()
    while stack:
        c = stack.pop()
        if isinstance(c, (Exists, Forall)) and c not in found:
            found.add(c)
        if isinstance(c, Not):
            stack.append(c.operand)
        elif isinstance(c, (And, Or)):
            stack.extend([c.left, c.right])
        elif isinstance(c, (Exists, Forall)):
            stack.append(c.filler)
    # repr is structural for the frozen dataclasses, so this order is stable
    return sorted(found, key=repr)


class _ConfigSpace:
    """Vectorised evaluation of all abstract configurations for one domain
    size: per-row atom masks, quantifier bits, realisability, and axiom
    constraints."""

    def __init__(self, n: int, atoms: Sequence[str], quantified: Sequence[Concept]):
        self.n = n
        self.full = (1 << n) - 1
        self.atoms = list(atoms)
        self.quantified = list(quantified)
        self.qbits = len(quantified) * n
        self.abits = len(atoms) * n
        self.total_rows = 1 << (self.qbits + self.abits)

    def chunk_ranges(self):
        step = 1 << min(_CHUNK_BITS, self.qbits + self.abits)
        for lo in range(0, self.total_rows, step):
            yield lo, min(lo + step, self.total_rows)

    def build(self, lo: int, hi: int) -> dict:
        rows = np.arange(lo, hi, dtype=np.int64)
        qcfg = rows & ((1 << self.qbits) - 1)
        acfg = rows >> self.qbits
        masks: dict[Concept, np.ndarray] = {}
        for k, a in enumerate(self.atoms):
            masks[Atom(a)] = ((acfg >> (k * self.n)) & self.full).astype(np.int64)
        for m, q in enumerate(self.quantified):
            masks[q] = ((qcfg >> (m * self.n)) & self.full).astype(np.int64)
        return masks

    def eval(self, masks: dict, c: Concept) -> np.ndarray:
        cached = masks.get(c)
        if cached is not None:
            return cached
        if isinstance(c, Top):
            v = np.full(len(next(iter(masks.values()))) if masks else 1, self.full, dtype=np.int64)
        elif isinstance(c, Bottom):
            v = np.zeros(len(next(iter(masks.values()))) if masks else 1, dtype=np.int64)
        elif isinstance(c, Atom):
            # atom outside the enumerated vocabulary: empty extension
            v = np.zeros_like(next(iter(masks.values())))
        elif isinstance(c, Not):
            v = self.full & ~self.eval(masks, c.operand)
        elif isinstance(c, And):
            v = self.eval(masks, c.left) & self.eval(masks, c.right)
        elif isinstance(c, Or):
            v = self.eval(masks, c.left) | self.eval(masks, c.right)
        else:
            raise AssertionError(
                f"quantified subconcept {c!r} missing from configuration space"
            )
        masks[c] = v
        return v

    def realizable(self, masks: dict) -> np.ndarray:
        """Rows for which some role graph yields exactly the quantifier bits."""
        nrows = len(next(iter(masks.values()))) if masks else 1
        ok = np.ones(nrows, dtype=bool)
        by_role: dict[str, list[Concept]] = {}
        for q in self.quantified:
            by_role.setdefault(q.role, []).append(q)
        for role, qs in sorted(by_role.items()):
            fillers = [(q, self.eval(masks, q.filler)) for q in qs]
            for i in range(self.n):
                bit = 1 << i
                allowed = np.full(nrows, self.full, dtype=np.int64)
                for q, fm in fillers:
                    has = (masks[q] & bit) != 0
                    if isinstance(q, Forall):
                        allowed = np.where(has, allowed & fm, allowed)
                    else:
                        allowed = np.where(has, allowed, allowed & (self.full & ~fm))
                for q, fm in fillers:
                    has = (masks[q] & bit) != 0
                    if isinstance(q, Exists):
                        ok &= ~has | ((allowed & fm) != 0)
                    else:
                        ok &= has | ((allowed & (self.full & ~fm)) != 0)
        return ok

    def materialize(
        self, acfg: int, qcfg: int, heights: tuple[int, ...], roles: Sequence[str]
    ) -> RankedInterpretation:
        """Reconstruct a concrete witness from one abstract configuration."""
        n, full = self.n, self.full
        atom_ext = {
            a: _bits((acfg >> (k * n)) & full) for k, a in enumerate(self.atoms)
        }
        qmask = {
            q: (qcfg >> (m * n)) & full for m, q in enumerate(self.quantified)
        }

        def ev(c: Concept) -> int:
            if isinstance(c, Top):
                return full
            if isinstance(c, Bottom):
                return 0
            if isinstance(c, Atom):
                m = 0
                for x in atom_ext.get(c.name, ()):
                    m |= 1 << x
                return m
            if isinstance(c, Not):
                return full & ~ev(c.operand)
            if isinstance(c, And):
                return ev(c.left) & ev(c.right)
            if isinstance(c, Or):
                return ev(c.left) | ev(c.right)
            return qmask[c]

        role_ext: dict[str, set[tuple[int, int]]] = {r: set() for r in roles}
        by_role: dict[str, list[Concept]] = {}
        for q in self.quantified:
            by_role.setdefault(q.role, []).append(q)
        for role, qs in by_role.items():
            for i in range(n):
                bit = 1 << i
                allowed = full
                for q in qs:
                    if isinstance(q, Forall) and qmask[q] & bit:
                        allowed &= ev(q.filler)
                    if isinstance(q, Exists) and not qmask[q] & bit:
                        allowed &= full & ~ev(q.filler)
                for q in qs:
                    if isinstance(q, Exists) and qmask[q] & bit:
                        target = allowed & ev(q.filler)
                    elif isinstance(q, Forall) and not qmask[q] & bit:
                        target = allowed & (full & ~ev(q.filler))
                    else:
                        continue
                    if target == 0:
                        raise AssertionError("materializing an unrealizable row")
                    role_ext[role].add((i, (target & -target).bit_length() - 1))
        base = FiniteInterpretation(
            n, atom_ext, {r: frozenset(e) for r, e in role_ext.items()}
        )
        return RankedInterpretation(base, heights)


def _search(
    must_hold: Sequence[Axiom],
    must_fail: Optional[Axiom],
    atoms: Sequence[str],
    roles: Sequence[str],
    max_domain: int,
    limit: int = 1,
) -> tuple[list[RankedInterpretation], int]:
    """Scan all ranked interpretations up to ``max_domain`` (via the abstract
    configuration space) for models of ``must_hold`` that, when requested,
    falsify ``must_fail``.  Returns up to ``limit`` witnesses plus the number
    of candidate configurations examined."""
    relevant = list(must_hold) + ([must_fail] if must_fail is not None else [])
    quantified = _quantified_subconcepts(relevant)
    gcis = [a for a in must_hold if isinstance(a, GCI)]
    dcis = [a for a in must_hold if isinstance(a, DCI)]
    found: list[RankedInterpretation] = []
    examined = 0

    for n in range(1, max_domain + 1):
        space = _ConfigSpace(n, atoms, quantified)
        hvs = convex_height_vectors(n)
        tables = _min_height_tables(n)
        for lo, hi in space.chunk_ranges():
            masks = space.build(lo, hi)
            alive = space.realizable(masks)
            for g in gcis:
                alive &= (space.eval(masks, g.lhs) & ~space.eval(masks, g.rhs) & space.full) == 0
            if must_fail is not None and isinstance(must_fail, GCI):
                alive &= (
                    space.eval(masks, must_fail.lhs)
                    & ~space.eval(masks, must_fail.rhs)
                    & space.full
                ) != 0
            dci_parts = []
            for d in dcis:
                lhs = space.eval(masks, d.lhs)
                rhs = space.eval(masks, d.rhs)
                dci_parts.append((lhs & rhs, lhs & ~rhs & space.full))
            fail_parts = None
            if must_fail is not None and isinstance(must_fail, DCI):
                lhs = space.eval(masks, must_fail.lhs)
                rhs = space.eval(masks, must_fail.rhs)
                fail_parts = (lhs & rhs, lhs & ~rhs & space.full)
            if not alive.any():
                examined += (hi - lo) * len(hvs)
                continue
            for k, hv in enumerate(hvs):
                tbl = tables[k]
                sat = alive.copy()
                for good, bad in dci_parts:
                    sat &= (bad == 0) | (tbl[good] < tbl[bad])
                if fail_parts is not None:
                    good, bad = fail_parts
                    sat &= (bad != 0) & (tbl[bad] <= tbl[good])
                hits = np.flatnonzero(sat)
                if hits.size == 0:
                    examined += hi - lo
                    continue
                for idx in hits:
                    row = lo + int(idx)
                    qcfg = row & ((1 << space.qbits) - 1)
                    acfg = row >> space.qbits
                    witness = space.materialize(acfg, qcfg, hv, roles)
                    if not satisfies_all(witness, must_hold):
                        raise AssertionError("materialized witness fails the axioms")
                    if must_fail is not None and satisfies(witness, must_fail):
                        raise AssertionError("materialized witness satisfies the query")
                    found.append(witness)
                    if len(found) >= limit:
                        examined += int(idx) + 1
                        return found, examined
                examined += hi - lo
    return found, examined


def _vocabulary(kb: KnowledgeBase, extra: Sequence[Axiom] = ()) -> tuple[list[str], list[str]]:
    items = list(kb.axioms) + list(extra)
    return sorted(atom_names(items)), sorted(role_names(items))


def search_model(kb: KnowledgeBase, max_domain: int) -> SearchResult:
    """First ranked model of ``kb`` with at most ``max_domain`` elements, or
    absent.  Absence does not prove unsatisfiability (one-sided)."""
    atoms, roles = _vocabulary(kb)
    found, examined = _search(kb.axioms, None, atoms, roles, max_domain)
    return SearchResult(found[0] if found else None, examined)


def search_countermodel(kb: KnowledgeBase, query: Axiom, max_domain: int) -> SearchResult:
    """First ranked model of ``kb`` violating ``query`` within the bound, or
    absent (one-sided in the same way)."""
    atoms, roles = _vocabulary(kb, (query,))
    found, examined = _search(kb.axioms, query, atoms, roles, max_domain)
    return SearchResult(found[0] if found else None, examined)


def enumerate_models(kb: KnowledgeBase, max_domain: int, limit: int) -> list[RankedInterpretation]:
    """Up to ``limit`` ranked models of ``kb`` in enumeration order."""
    atoms, roles = _vocabulary(kb)
    found, _ = _search(kb.axioms, None, atoms, roles, max_domain, limit=limit)
    return found


def _iter_ranked_interpretations(
    atoms: Sequence[str], roles: Sequence[str], max_domain: int
):
    """Naive reference enumeration (every atom extension, role extension and
    convex height map).  Exponential in everything; used to cross-validate
    the configuration-space search on tiny vocabularies."""
    for n in range(1, max_domain + 1):
        elems = range(n)
        atom_choices = [frozenset(s) for k in range(n + 1) for s in itertools.combinations(elems, k)]
        pair_list = [(x, y) for x in elems for y in elems]
        role_choices = [
            frozenset(s)
            for k in range(len(pair_list) + 1)
            for s in itertools.combinations(pair_list, k)
        ]
        for atom_ext in itertools.product(atom_choices, repeat=len(atoms)):
            for role_ext in itertools.product(role_choices, repeat=len(roles)):
                base = FiniteInterpretation(
                    n,
                    dict(zip(atoms, atom_ext)),
                    dict(zip(roles, role_ext)),
                )
                for hv in convex_height_vectors(n):
                    yield RankedInterpretation(base, hv)


def _search_naive(
    kb: KnowledgeBase, query: Optional[Axiom], max_domain: int
) -> Optional[RankedInterpretation]:
    atoms, roles = _vocabulary(kb, (query,) if query is not None else ())
    for r in _iter_ranked_interpretations(atoms, roles, max_domain):
        if satisfies_all(r, kb.axioms) and (query is None or not satisfies(r, query)):
            return r
    return None


# ---------------------------------------------------------------------------
# Random generation (seeded by the caller)


def random_ranked_interpretation(rng, domain_size: int, atoms: Sequence[str], roles: Sequence[str]) -> RankedInterpretation:
    atom_ext = {
        a: frozenset(x for x in range(domain_size) if rng.random() < 0.5)
        for a in atoms
    }
    role_ext = {
        r: frozenset(
            (x, y)
            for x in range(domain_size)
            for y in range(domain_size)
            if rng.random() < 0.3
        )
        for r in roles
    }
    raw = [rng.randrange(domain_size) for _ in range(domain_size)]
    levels = {h: i for i, h in enumerate(sorted(set(raw)))}
    heights = tuple(levels[h] for h in raw)
    return RankedInterpretation(
        FiniteInterpretation(domain_size, atom_ext, role_ext), heights
    )


def random_concept(rng, atoms: Sequence[str], roles: Sequence[str], depth: int) -> Concept:
    if depth <= 0:
        leaf = rng.randrange(len(atoms) + 2)
        if leaf == len(atoms):
            return TOP
        if leaf == len(atoms) + 1:
            return BOTTOM
        return Atom(atoms[leaf])
    kind = rng.randrange(6 if roles else 4)
    if kind == 0:
        return random_concept(rng, atoms, roles, 0)
    if kind == 1:
        return Not(random_concept(rng, atoms, roles, depth - 1))
    if kind == 2:
        return And(
            random_concept(rng, atoms, roles, depth - 1),
            random_concept(rng, atoms, roles, depth - 1),
        )
    if kind == 3:
        return Or(
            random_concept(rng, atoms, roles, depth - 1),
            random_concept(rng, atoms, roles, depth - 1),
        )
    ctor = Exists if kind == 4 else Forall
    return ctor(
        roles[rng.randrange(len(roles))],
        random_concept(rng, atoms, roles, depth - 1),
    )


# ---------------------------------------------------------------------------
# KLM postulate checking


@dataclass(frozen=True)
class Violation:
    rule: str
    instance: tuple


POSTULATES = (
    "cons",
    "ref",
    "lle",
    "and",
    "or",
    "rw",
    "cm",
    "rm",
    "cm_exists",
    "cm_forall",
    "rm_exists",
    "rm_forall",
    "norm",
    "strict_as_defeasible",
)


def check_postulates(
    i: RankedInterpretation,
    samples: Sequence[Concept],
    which: Sequence[str] = POSTULATES,
    roles: Optional[Sequence[str]] = None,
) -> list[Violation]:
    """Instantiate the selected closure rules over every tuple of sampled
    concepts and report all violations.  Ranked interpretations induce
    rational subsumption relations, so the report is expected to be empty;
    a non-empty report flags a defect in the semantics implementation."""
    if roles is None:
        roles = sorted(i.base.role_ext.keys())
    out: list[Violation] = []
    which = set(which)

    def dci(lhs: Concept, rhs: Concept) -> bool:
        return satisfies(i, DCI(lhs, rhs))

    def gci(lhs: Concept, rhs: Concept) -> bool:
        return satisfies(i, GCI(lhs, rhs))

    if "cons" in which and dci(TOP, BOTTOM):
        out.append(Violation("cons", ()))
    for c in samples:
        if "ref" in which and not dci(c, c):
            out.append(Violation("ref", (c,)))
        if "norm" in which and dci(c, BOTTOM):
            for r in roles:
                if not dci(Exists(r, c), BOTTOM):
                    out.append(Violation("norm", (c, r)))
    if "strict_as_defeasible" in which:
        for c, d in itertools.product(samples, repeat=2):
            if gci(c, d) != dci(And(c, Not(d)), BOTTOM):
                out.append(Violation("strict_as_defeasible", (c, d)))
    ternary = {"lle", "and", "or", "rw", "cm", "rm"} & which
    if ternary:
        for c, d, e in itertools.product(samples, repeat=3):
            if "lle" in ternary and extension(i, c) == extension(i, d):
                if dci(c, e) and not dci(d, e):
                    out.append(Violation("lle", (c, d, e)))
            if "and" in ternary and dci(c, d) and dci(c, e) and not dci(c, And(d, e)):
                out.append(Violation("and", (c, d, e)))
            if "or" in ternary and dci(c, e) and dci(d, e) and not dci(Or(c, d), e):
                out.append(Violation("or", (c, d, e)))
            if "rw" in ternary and dci(c, d) and gci(d, e) and not dci(c, e):
                out.append(Violation("rw", (c, d, e)))
            if "cm" in ternary and dci(c, d) and dci(c, e) and not dci(And(c, d), e):
                out.append(Violation("cm", (c, d, e)))
            if "rm" in ternary and dci(c, d) and not dci(c, Not(e)) and not dci(And(c, e), d):
                out.append(Violation("rm", (c, d, e)))
    quantified = {"cm_exists", "cm_forall", "rm_exists", "rm_forall"} & which
    if quantified:
        for r in roles:
            for c, d, e in itertools.product(samples, repeat=3):
                ex, fa = Exists(r, c), Forall(r, c)
                if (
                    "cm_exists" in quantified
                    and dci(ex, e)
                    and dci(ex, Forall(r, d))
                    and not dci(Exists(r, And(c, d)), e)
                ):
                    out.append(Violation("cm_exists", (c, d, e, r)))
                if (
                    "cm_forall" in quantified
                    and dci(fa, e)
                    and dci(fa, Forall(r, d))
                    and not dci(Forall(r, And(c, d)), e)
                ):
                    out.append(Violation("cm_forall", (c, d, e, r)))
                # The negated premises below are the complements of the
                # conclusions' antecedents (¬∃r.(C⊓D) and ¬∀r.(C⊓D)); that is
                # what makes these rules rational-monotonicity instances.
                # Weakening the filler to ¬D admits counterexamples (see
                # test_quantified_rm_premise_needs_the_conjunction).
                if (
                    "rm_exists" in quantified
                    and dci(ex, e)
                    and not dci(ex, Forall(r, Not(And(c, d))))
                    and not dci(Exists(r, And(c, d)), e)
                ):
                    out.append(Violation("rm_exists", (c, d, e, r)))
                if (
                    "rm_forall" in quantified
                    and dci(fa, e)
                    and not dci(fa, Exists(r, Not(And(c, d))))
                    and not dci(Forall(r, And(c, d)), e)
                ):
                    out.append(Violation("rm_forall", (c, d, e, r)))
    return out
