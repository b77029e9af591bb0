"""Rational closure: exceptionality, DCI ranking, rank normal form, and
query answering, built entirely on classical entailment.

The ranking procedure iterates the exceptionality operator to a fixpoint,
promotes the fixpoint (the infinite-rank axioms) into the TBox, and repeats
until the fixpoint is empty.  The resulting knowledge base is in rank normal
form and, together with the exceptionality sequence, answers any query with
at most ``n + 2`` further classical checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .concepts import (
    And,
    Axiom,
    BOTTOM,
    Concept,
    DCI,
    GCI,
    KnowledgeBase,
    Not,
    TOP,
    conjoin,
    materialise,
)
from .ranks import Rank
from .tableau import DEFAULT_CONFIG, EntailmentStats, TableauConfig, entails


@dataclass(frozen=True)
class Ranking:
    """Output of ``compute_ranking``.

    ``e_seq`` is the exceptionality sequence E0 ⊇ E1 ⊇ ... ⊇ En of the final
    normalisation pass (the empty fixpoint beyond it is left implicit), and
    ``partition`` its consecutive differences D0, .., Dn.  ``moved_to_tbox``
    collects the infinite-rank DCIs whose strict versions were promoted into
    ``tstar``.
    """

    tstar: tuple[GCI, ...]
    dstar: tuple[DCI, ...]
    e_seq: tuple[tuple[DCI, ...], ...]
    partition: tuple[tuple[DCI, ...], ...]
    moved_to_tbox: tuple[DCI, ...]
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def levels(self) -> int:
        return len(self.e_seq)


@dataclass(frozen=True)
class QueryResult:
    """Verdict plus provenance: the level that decided the query (infinite
    when the TBox-only fallback fired), the classical checks spent by the
    query itself, and whether the normalized TBox is inconsistent (in which
    case every verdict is trivially true)."""

    verdict: bool
    decided_at: Rank
    checks_spent: int
    kb_inconsistent: bool = False


def exceptional(
    tstar: Sequence[GCI],
    dprime: Sequence[DCI],
    cfg: TableauConfig = DEFAULT_CONFIG,
    stats: Optional[EntailmentStats] = None,
) -> tuple[DCI, ...]:
    """The DCIs of ``dprime`` whose antecedent is incompatible with the
    materialisation of ``dprime`` under ``tstar``; order preserved."""
    mat = conjoin(materialise(list(dprime)))
    return tuple(
        d for d in dprime if entails(tstar, GCI(mat, Not(d.lhs)), cfg, stats)
    )


def compute_ranking(
    kb: KnowledgeBase,
    cfg: TableauConfig = DEFAULT_CONFIG,
    stats: Optional[EntailmentStats] = None,
) -> Ranking:
    """Iterate exceptionality to a fixpoint, promote the fixpoint into the
    TBox, and repeat until the fixpoint is empty."""
    tstar = list(kb.tbox)
    dstar = list(kb.dtbox)
    moved: list[DCI] = []
    while True:
        seq: list[tuple[DCI, ...]] = [tuple(dstar)]
        while True:
            nxt = exceptional(tstar, seq[-1], cfg, stats)
            if nxt == seq[-1]:
                break
            seq.append(nxt)
        fixpoint = seq[-1]
        if not fixpoint:
            e_seq = tuple(seq[:-1])
            break
        tstar.extend(GCI(d.lhs, d.rhs) for d in fixpoint)
        moved.extend(fixpoint)
        infinite = set(fixpoint)
        dstar = [d for d in dstar if d not in infinite]
    partition = tuple(
        tuple(d for d in e_seq[j] if d not in set(e_seq[j + 1]))
        if j + 1 < len(e_seq)
        else e_seq[j]
        for j in range(len(e_seq))
    )
    return Ranking(
        tstar=tuple(tstar),
        dstar=tuple(dstar),
        e_seq=e_seq,
        partition=partition,
        moved_to_tbox=tuple(moved),
    )


def _level_materialisation(r: Ranking, i: int) -> Concept:
    mats = r._cache.setdefault("materialisations", {})
    if i not in mats:
        mats[i] = conjoin(materialise(list(r.e_seq[i])))
    return mats[i]


def concept_rank(
    r: Ranking,
    c: Concept,
    cfg: TableauConfig = DEFAULT_CONFIG,
    stats: Optional[EntailmentStats] = None,
) -> Rank:
    """The least level whose materialisation is compatible with ``c`` under
    the normalized TBox.

    Levels run through E0..En and then the implicit empty fixpoint (whose
    materialisation is Top), so a concept exceptional at every listed level
    but satisfiable w.r.t. the TBox alone gets the finite rank n+1 rather
    than infinity; only TBox-unsatisfiable concepts are infinite.  This is
    what makes the rank-comparison form of rational closure agree with the
    query procedure on every input.
    """
    for i in range(len(r.e_seq)):
        mat = _level_materialisation(r, i)
        if not entails(r.tstar, GCI(And(mat, c), BOTTOM), cfg, stats):
            return Rank.finite(i)
    if not entails(r.tstar, GCI(c, BOTTOM), cfg, stats):
        return Rank.finite(len(r.e_seq))
    return Rank.infinite()


def axiom_rank(
    r: Ranking,
    a: Axiom,
    cfg: TableauConfig = DEFAULT_CONFIG,
    stats: Optional[EntailmentStats] = None,
) -> Rank:
    """Rank of a DCI is the rank of its antecedent; rank of a GCI ``C ⊑ D``
    is the rank of ``C ⊓ ¬D``."""
    if isinstance(a, DCI):
        return concept_rank(r, a.lhs, cfg, stats)
    return concept_rank(r, And(a.lhs, Not(a.rhs)), cfg, stats)


def tstar_inconsistent(
    r: Ranking,
    cfg: TableauConfig = DEFAULT_CONFIG,
    stats: Optional[EntailmentStats] = None,
) -> bool:
    """Whether the normalized TBox entails ⊤ ⊑ ⊥ (no modular model exists).

    Computed once per Ranking and cached; a diagnostic, not part of the
    per-query check budget.
    """
    if "inconsistent" not in r._cache:
        r._cache["inconsistent"] = entails(r.tstar, GCI(TOP, BOTTOM), cfg, stats)
    return r._cache["inconsistent"]


def rationally_deducible(
    r: Ranking,
    q: Axiom,
    cfg: TableauConfig = DEFAULT_CONFIG,
    stats: Optional[EntailmentStats] = None,
) -> QueryResult:
    """Decide membership of ``q`` in the rational closure.

    For a DCI ``C ⊑~ D``: find the first level whose materialisation is
    compatible with ``C`` and test the strengthened subsumption there; if
    every level is incompatible, fall back to the plain TBox subsumption.
    A GCI query reduces to that same fallback.
    """
    if stats is None:
        stats = EntailmentStats()
    inconsistent = tstar_inconsistent(r, cfg, stats)
    start = stats.checks
    if isinstance(q, GCI):
        verdict = entails(r.tstar, q, cfg, stats)
        decided = Rank.infinite()
    else:
        for i in range(len(r.e_seq)):
            mat = _level_materialisation(r, i)
            if not entails(r.tstar, GCI(mat, Not(q.lhs)), cfg, stats):
                verdict = entails(r.tstar, GCI(And(mat, q.lhs), q.rhs), cfg, stats)
                decided = Rank.finite(i)
                break
        else:
            verdict = entails(r.tstar, GCI(q.lhs, q.rhs), cfg, stats)
            decided = Rank.infinite()
    return QueryResult(verdict, decided, stats.checks - start, inconsistent)
