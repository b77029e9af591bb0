"""Command-line front end.

    dalc rank KB.dkb            compute and display the ranking
    dalc query KB.dkb -q AXIOM  answer a rational-closure query
    dalc check KB.dkb           consistency report
    dalc oracle KB.dkb [-q AXIOM] [--max-domain N]
                                bounded model / countermodel search

Verdicts go to stdout as data; the exit status only reports errors
(1 = parse error, 2 = resource limit, 0 otherwise).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .closure import compute_ranking, rationally_deducible, tstar_inconsistent
from .concepts import Atom, BOTTOM, GCI, KnowledgeBase
from .parser import ParseError, axiom_to_json, parse_kb, parse_query, render_axiom
from .semantics import search_countermodel, search_model
from .tableau import EntailmentStats, ResourceLimitError, TableauConfig, entails


@dataclass
class CliConfig:
    command: str
    path: str
    query: Optional[str]
    json_out: bool
    max_nodes: int
    max_depth: int
    max_domain: int
    seed: int


def build_arg_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="dalc", description="Defeasible ALC reasoner (rational closure)."
    )
    sub = ap.add_subparsers(dest="command", required=True)
    for name, doc in (
        ("rank", "compute and display the DCI ranking"),
        ("query", "answer a rational-closure query"),
        ("check", "consistency report for the knowledge base"),
        ("oracle", "bounded ranked-model search (one-sided)"),
    ):
        p = sub.add_parser(name, help=doc)
        p.add_argument("path", help="knowledge base file (.dkb)")
        p.add_argument("-q", "--query", default=None, help="axiom to query")
        p.add_argument("--json", action="store_true", dest="json_out")
        p.add_argument("--max-nodes", type=int, default=100_000)
        p.add_argument("--max-depth", type=int, default=512)
        p.add_argument("--max-domain", type=int, default=4)
        p.add_argument(
            "--seed", type=int, default=0, help="reserved for sampling diagnostics"
        )
    return ap


def _load(cfg: CliConfig) -> KnowledgeBase:
    text = Path(cfg.path).read_text(encoding="utf-8")
    return parse_kb(text, cfg.path).kb


def cmd_rank(cfg: CliConfig) -> int:
    kb = _load(cfg)
    tableau_cfg = TableauConfig(cfg.max_nodes, cfg.max_depth)
    stats = EntailmentStats()
    ranking = compute_ranking(kb, tableau_cfg, stats)
    ranking_checks = stats.checks
    tstar_inconsistent(ranking, tableau_cfg, stats)
    if cfg.json_out:
        print(
            json.dumps(
                {
                    "tstar": [axiom_to_json(a) for a in ranking.tstar],
                    "promoted": [axiom_to_json(d) for d in ranking.moved_to_tbox],
                    "partition": [
                        [axiom_to_json(d) for d in part] for part in ranking.partition
                    ],
                    "stats": {"entailment_checks": ranking_checks},
                }
            )
        )
        return 0
    promoted = {GCI(d.lhs, d.rhs) for d in ranking.moved_to_tbox}
    print("T* (normalized TBox):")
    if not ranking.tstar:
        print("  (empty)")
    for a in ranking.tstar:
        marker = "   [promoted from DTBox]" if a in promoted else ""
        print(f"  {render_axiom(a)}{marker}")
    print("Partition of D*:")
    if not ranking.partition:
        print("  (empty)")
    for i, part in enumerate(ranking.partition):
        print(f"  D{i} (rank {i}):")
        for d in part:
            print(f"    {render_axiom(d)}")
    print(
        "Entailment checks: ranking=%d, diagnostics=%d"
        % (ranking_checks, stats.checks - ranking_checks)
    )
    return 0


def cmd_query(cfg: CliConfig) -> int:
    kb = _load(cfg)
    q = parse_query(cfg.query)
    tableau_cfg = TableauConfig(cfg.max_nodes, cfg.max_depth)
    stats = EntailmentStats()
    ranking = compute_ranking(kb, tableau_cfg, stats)
    tstar_inconsistent(ranking, tableau_cfg, stats)
    result = rationally_deducible(ranking, q, tableau_cfg, stats)
    if cfg.json_out:
        decided = (
            "infinity" if result.decided_at.is_infinite else result.decided_at.value
        )
        print(
            json.dumps(
                {
                    "verdict": result.verdict,
                    "decided_at": decided,
                    "checks": result.checks_spent,
                    "kb_inconsistent": result.kb_inconsistent,
                }
            )
        )
        return 0
    print("IN rational closure" if result.verdict else "NOT IN rational closure")
    if result.decided_at.is_infinite:
        print("decided at rank: infinity (TBox fallback)")
    else:
        print(f"decided at rank: {result.decided_at.value}")
    print(f"checks spent: {result.checks_spent}")
    if result.kb_inconsistent:
        print("normalized TBox inconsistent: every query is trivially true")
    return 0


def cmd_check(cfg: CliConfig) -> int:
    kb = _load(cfg)
    tableau_cfg = TableauConfig(cfg.max_nodes, cfg.max_depth)
    stats = EntailmentStats()
    ranking = compute_ranking(kb, tableau_cfg, stats)
    inconsistent = tstar_inconsistent(ranking, tableau_cfg, stats)
    atoms = sorted(
        {a.name for ax in kb.axioms for a in _atoms_of(ax)}
    )
    unsat = [
        a
        for a in atoms
        if entails(ranking.tstar, GCI(Atom(a), BOTTOM), tableau_cfg, stats)
    ]
    if cfg.json_out:
        print(
            json.dumps(
                {
                    "consistent": not inconsistent,
                    "infinite_rank": [axiom_to_json(d) for d in ranking.moved_to_tbox],
                    "unsatisfiable_atoms": unsat,
                }
            )
        )
        return 0
    print("normalized TBox consistent: %s" % ("no" if inconsistent else "yes"))
    print("DCIs of infinite rank:")
    if not ranking.moved_to_tbox:
        print("  (none)")
    for d in ranking.moved_to_tbox:
        print(f"  {render_axiom(d)}")
    print("unsatisfiable concept names:")
    if not unsat:
        print("  (none)")
    for a in unsat:
        print(f"  {a}")
    return 0


def _atoms_of(ax):
    from .concepts import _walk

    for c in _walk(ax):
        if isinstance(c, Atom):
            yield c


def cmd_oracle(cfg: CliConfig) -> int:
    kb = _load(cfg)
    if cfg.query is not None:
        q = parse_query(cfg.query)
        result = search_countermodel(kb, q, cfg.max_domain)
        kind = "countermodel"
    else:
        result = search_model(kb, cfg.max_domain)
        kind = "model"
    if cfg.json_out:
        print(
            json.dumps(
                {
                    "found": result.found,
                    "kind": kind,
                    "interpretation": (
                        result.interpretation.to_json_dict() if result.found else None
                    ),
                    "enumerated": result.enumerated,
                    "one_sided": True,
                }
            )
        )
        return 0
    if result.found:
        print(f"{kind} found within domain bound {cfg.max_domain}:")
        print(json.dumps(result.interpretation.to_json_dict()))
    else:
        print(
            f"no {kind} within domain bound {cfg.max_domain} "
            "(one-sided: larger models may exist)"
        )
    print(f"configurations examined: {result.enumerated}")
    return 0


COMMANDS = {
    "rank": cmd_rank,
    "query": cmd_query,
    "check": cmd_check,
    "oracle": cmd_oracle,
}


def main(argv: Optional[list[str]] = None) -> int:
    ns = build_arg_parser().parse_args(argv)
    if ns.command == "query" and ns.query is None:
        print("error: query command requires -q", file=sys.stderr)
        return 1
    cfg = CliConfig(
        command=ns.command,
        path=ns.path,
        query=ns.query,
        json_out=ns.json_out,
        max_nodes=ns.max_nodes,
        max_depth=ns.max_depth,
        max_domain=ns.max_domain,
        seed=ns.seed,
    )
    try:
        return COMMANDS[cfg.command](cfg)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return 1
    except ResourceLimitError as e:
        print(f"resource limit: {e}", file=sys.stderr)
        return 2
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
