"""Brute-force oracle for two-sided arrow ideals, independent of tdcat.ideals.

Uses only the composition table of a category.  Small categories (<= 16
arrows) are scanned over all 2^n arrow subsets; larger ones by a BFS over
ideals where each step adds one arrow and saturates under composition.
Writes tests/data/ideal_counts.json, which the test suite compares against.

    python scripts/ideal_oracle.py [--out tests/data/ideal_counts.json]
"""

from __future__ import annotations

import argparse
import json
from pathlib import Path

from tdcat.core import builtin

CATEGORIES = [("terminal", 0), ("walking-arrow", 0), ("chain", 1), ("chain", 2),
              ("simplex", 1), ("simplex", 2), ("simplex", 3),
              ("globe", 1), ("globe", 2), ("globe", 3)]
SUBSET_LIMIT = 16


def composable(C):
    return [(g, f, C.compose(g, f)) for f in range(C.n_arrows) for g in range(C.n_arrows)
            if C.src[g] == C.tgt[f]]


def saturate(pairs, members: set) -> frozenset:
    members = set(members)
    changed = True
    while changed:
        changed = False
        for g, f, h in pairs:
            if (g in members or f in members) and h not in members:
                members.add(h)
                changed = True
    return frozenset(members)


def closed(pairs, members) -> bool:
    return all(h in members for g, f, h in pairs if g in members or f in members)


def idempotent(pairs, members) -> bool:
    square = {h for g, f, h in pairs if g in members and f in members}
    return square == set(members)


def ideals_by_subsets(C, pairs):
    n = C.n_arrows
    return {frozenset(i for i in range(n) if m >> i & 1) for m in range(1 << n)
            if closed(pairs, {i for i in range(n) if m >> i & 1})}


def ideals_by_bfs(C, pairs):
    seen = {frozenset()}
    frontier = [frozenset()]
    while frontier:
        nxt = []
        for I in frontier:
            for f in range(C.n_arrows):
                if f not in I:
                    J = saturate(pairs, I | {f})
                    if J not in seen:
                        seen.add(J)
                        nxt.append(J)
        frontier = nxt
    return seen


def record(name: str, n: int) -> dict:
    C = builtin(name, n)
    pairs = composable(C)
    if C.n_arrows <= SUBSET_LIMIT:
        ideals, method = ideals_by_subsets(C, pairs), "subsets"
    else:
        ideals, method = ideals_by_bfs(C, pairs), "bfs"
    idem = sorted((I for I in ideals if idempotent(pairs, I)), key=lambda I: (len(I), sorted(I)))
    return {"category": name, "n": n, "arrows": C.n_arrows, "method": method,
            "ideals_total": len(ideals), "idempotent": len(idem),
            "idempotent_sizes": [len(I) for I in idem],
            "idempotent_members": [sorted(C.arrows[f] for f in I) for I in idem]}


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "tests/data/ideal_counts.json"))
    args = ap.parse_args(argv)
    rows = [record(name, n) for name, n in CATEGORIES]
    Path(args.out).write_text(json.dumps({"generator": "scripts/ideal_oracle.py", "categories": rows},
                                         indent=1, sort_keys=True) + "\n")
    for r in rows:
        print(f"{r['category']}({r['n']}): arrows={r['arrows']} ideals={r['ideals_total']} "
              f"idempotent={r['idempotent']} sizes={r['idempotent_sizes']} [{r['method']}]")


if __name__ == "__main__":
    main()
