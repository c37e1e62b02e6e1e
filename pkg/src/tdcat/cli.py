"""Command-line front end: ``tdcat <subcommand> ...``.

Exit codes: 0 when every check passes, 2 when a mathematical check fails
(the witness is in the report), 3 on input or size-guard errors.
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from collections import OrderedDict
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from ._util import DEFAULT_GUARD, Guard, fmt
from .core import BUILTIN_NAMES, FinCategory, FinPoset, builtin, category_to_text, chain_poset
from .errors import InputError, NotALattice, NotJoinDense, TdcatError
from .formats import load_category, load_poset, load_samples, poset_to_text
from .report import Report, fingerprint_text

DEFAULT_SEED = 1729
EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 2, 3


@dataclass
class RunConfig:
    subcommand: str
    inputs: list
    guard: Guard = DEFAULT_GUARD
    format: str = "text"
    seed: int = DEFAULT_SEED
    dot: str | None = None
    figure: str | None = None
    timing: bool = False
    samples: str | None = None
    extra: dict = field(default_factory=dict)


class _Clock:
    def __init__(self):
        self.laps: OrderedDict[str, float] = OrderedDict()

    def lap(self, name: str, start: float) -> None:
        self.laps[name] = time.perf_counter() - start


def _new_report(cfg: RunConfig, fingerprint: str, seed=None) -> Report:
    return Report(command=cfg.subcommand, version=__version__, input_fingerprint=fingerprint, seed=seed)


def _finish(rep: Report, cfg: RunConfig, clock: _Clock) -> Report:
    if cfg.timing:
        rep.timing = dict(clock.laps)
    return rep


def _write(path, text: str) -> str:
    Path(path).write_text(text)
    return str(path)


def _poset_dot(P: FinPoset, name: str = "poset") -> str:
    lines = [f'digraph "{name}" {{', "  rankdir=BT;"]
    lines += [f'  "{fmt(x)}";' for x in P.labels]
    lines += [f'  "{fmt(P.labels[a])}" -> "{fmt(P.labels[b])}";' for a, b in P.covers()]
    return "\n".join(lines + ["}"]) + "\n"


def _category_dot(C: FinCategory) -> str:
    lines = [f'digraph "{C.name or "category"}" {{']
    lines += [f'  "{o}";' for o in C.objects]
    lines += [f'  "{C.objects[C.src[f]]}" -> "{C.objects[C.tgt[f]]}" [label="{C.arrows[f]}"];'
              for f in range(C.n_arrows) if not C.is_identity(f)]
    return "\n".join(lines + ["}"]) + "\n"


def _emit_dot(rep: Report, cfg: RunConfig, text: str) -> None:
    """Keep the DOT drawing for ``--format dot`` and write it to ``--dot``."""
    cfg.extra["dot_text"] = text
    if cfg.dot:
        rep.artifacts.append(_write(cfg.dot, text))


def _group_log(rep: Report, log: list, prefix: str = "") -> None:
    """One report check per distinct check name, with the first failure as detail."""
    groups: OrderedDict[str, list] = OrderedDict()
    for entry in sorted(log, key=lambda e: (e["check"], e["sample"])):
        groups.setdefault(entry["check"], []).append(entry)
    for name, entries in groups.items():
        bad = [e for e in entries if not e["ok"]]
        detail = {"samples": len(entries)}
        if bad:
            detail.update(failing_sample=bad[0]["sample"], sizes=bad[0].get("sizes"), failures=len(bad))
        rep.check(prefix + name, not bad, detail)


# ---------------------------------------------------------------------------
# subcommands


def analyze_poset(P: FinPoset, cfg: RunConfig) -> Report:
    from .order import ccd_check, continuity_check, distributivity_witness, duality_check, scott_opens, way_below

    clock = _Clock()
    rep = _new_report(cfg, fingerprint_text(poset_to_text(P)))
    rep.put("elements", list(P.labels))
    t = time.perf_counter()
    ccd = ccd_check(P, cfg.guard)
    clock.lap("ccd_check", t)
    rep.put("complete", ccd.complete)
    rep.put("ccd", ccd.ccd)
    rep.put("lex_ccd", ccd.lex_ccd)
    if ccd.witness is not None:
        rep.put("ccd_witness", ccd.witness)
    if ccd.lex_witness is not None:
        rep.put("lex_witness", ccd.lex_witness)
    if ccd.ccd:
        rep.put("totally_below", {fmt(P.labels[v]): list(ccd.totally_below_set(v)) for v in range(len(P))})
    t = time.perf_counter()
    try:
        witness = distributivity_witness(P)
        rep.put("lattice", True)
        rep.put("distributive", witness is None)
        if witness is not None:
            rep.put("distributivity_witness", witness)
        rep.check("ccd agrees with distributivity", ccd.ccd == (witness is None))
    except NotALattice as e:
        rep.put("lattice", False)
        rep.put("not_lattice_pair", {"pair": e.pair, "missing": e.missing})
    rep.check("complete iff lattice", ccd.complete == rep.data["lattice"])
    clock.lap("distributivity_oracle", t)
    t = time.perf_counter()
    wb = way_below(P, cfg.guard)
    leq = {(P.labels[i], P.labels[j]) for i in range(len(P)) for j in range(len(P)) if P.leq(i, j)}
    rep.put("way_below", sorted(wb.relation, key=lambda p: (P.index(p[1]), P.index(p[0]))))
    rep.check("way-below equals <=", wb.relation == leq)
    clock.lap("way_below", t)
    t = time.perf_counter()
    cont = continuity_check(P, cfg.guard)
    rep.put("continuous", cont.continuous)
    rep.check("continuous with wavy map = way-below", cont.continuous and cont.agrees_with_way_below,
              cont.witness)
    clock.lap("continuity_check", t)
    t = time.perf_counter()
    frame = scott_opens(P, cfg.guard)
    rep.put("scott_opens", len(frame.masks))
    dual = duality_check(P, cfg.guard)
    rep.put("frame_points", len(dual.points))
    rep.check("Scott opens are ccd", dual.opens_ccd)
    rep.check("frame points isomorphic to the poset", dual.points_isomorphic, dual.counterexamples or None)
    clock.lap("duality_check", t)
    _emit_dot(rep, cfg, _poset_dot(P))
    if cfg.figure:
        from .plotting import hasse_figure
        hi = [] if not ccd.ccd else [v for v in range(len(P)) if P.top() == v]
        rep.artifacts.append(hasse_figure([fmt(x) for x in P.labels], P.covers(), cfg.figure,
                                          title=f"ccd={ccd.ccd} lex={ccd.lex_ccd}", highlight=hi))
    return _finish(rep, cfg, clock)


def enumerate_ideals_cmd(C: FinCategory, cfg: RunConfig) -> Report:
    from .ideals import dimension_ideal, enumerate_idempotent_ideals

    clock = _Clock()
    rep = _new_report(cfg, C.fingerprint())
    t = time.perf_counter()
    L = enumerate_idempotent_ideals(C, cfg.guard)
    clock.lap("enumerate", t)
    rep.put("category", C.name)
    rep.put("arrows", C.n_arrows)
    rep.put("ideals_total", L.total_ideals)
    rep.put("idempotent_ideals", len(L))
    rep.put("sizes", [len(I) for I in L.ideals])
    rep.put("chain", L.is_chain())
    rep.put("ideals", [{"index": k, "size": len(I), "arrows": I.names()} for k, I in enumerate(L.ideals)])
    rep.check("two-sided closure", all(I.closure_failure() is None for I in L.ideals))
    rep.check("I.I <= I", all(I.square() <= I.members for I in L.ideals))
    rep.check("I.I = I", all(I.square() == I.members for I in L.ideals))
    rep.check("bounded", len(L) >= 1 and len(L.ideals[0]) == 0 and len(L.ideals[-1]) == C.n_arrows)
    if all(o.isdigit() for o in C.objects) and C.name.split("(")[0] in ("simplex", "globe"):
        found = []
        for d in range(C.n_objects):
            I = dimension_ideal(C, d)
            found.append(I.members in {J.members for J in L.ideals})
        rep.put("dimension_ideal_sizes", [len(dimension_ideal(C, d)) for d in range(C.n_objects)])
        rep.check("every dimension ideal enumerated", all(found))
    _emit_dot(rep, cfg, L.to_dot())
    if cfg.figure:
        from .plotting import hasse_figure
        rep.artifacts.append(hasse_figure([f"I{k}:{len(I)}" for k, I in enumerate(L.ideals)], L.covers(),
                                          cfg.figure, title=f"idempotent ideals of {C.name}"))
    return _finish(rep, cfg, clock)


def td_witness_cmd(C: FinCategory, cfg: RunConfig) -> Report:
    from .kan import td_witness
    from .presheaf import standard_samples

    clock = _Clock()
    samples = standard_samples(C)
    fp = [C.fingerprint()]
    if cfg.samples:
        samples += load_samples(cfg.samples, base=C, variance="presheaf", guard=cfg.guard)
        fp.append(Path(cfg.samples).read_text())
    rep = _new_report(cfg, fingerprint_text(*fp))
    t = time.perf_counter()
    W = td_witness(C, samples, cfg.guard)
    clock.lap("td_witness", t)
    rep.put("category", C.name)
    rep.put("samples", [F.name for F in samples])
    rep.put("checked_instances", len(W.log))
    rep.put("failures", len(W.failures))
    _group_log(rep, W.log)
    _emit_dot(rep, cfg, _category_dot(C))
    return _finish(rep, cfg, clock)


def wavy_cmd(P: FinPoset, cfg: RunConfig) -> Report:
    from .presheaf import Copresheaf, standard_samples
    from .wavy import cartesian_spot_check, fixed_points, wavy_profunctor

    clock = _Clock()
    t = time.perf_counter()
    W = wavy_profunctor(P, cfg.guard)
    clock.lap("wavy_profunctor", t)
    A = W.base
    samples = standard_samples(A, Copresheaf)
    fp = [poset_to_text(P)]
    if cfg.samples:
        samples += load_samples(cfg.samples, base=A, variance="copresheaf", guard=cfg.guard)
        fp.append(Path(cfg.samples).read_text())
    rep = _new_report(cfg, fingerprint_text(*fp))
    rep.put("elements", list(P.labels))
    rep.put("wavy_pairs", sum(len(v) for v in W.V.values.values()))
    for name, ok in W.checks.items():
        rep.check(name, ok, W.witnesses.get("flat") if name == "columns flat" else None)
    t = time.perf_counter()
    reps = samples[:A.n_objects]
    cart = [cartesian_spot_check(W, F, G) for i, F in enumerate(reps) for G in reps[i:]]
    bad = next((c for c in cart if not c.cartesian), None)
    rep.check("cartesian on representables", bad is None, bad.witness if bad else None)
    clock.lap("cartesian_spot_check", t)
    t = time.perf_counter()
    R = fixed_points(W, samples, cfg.guard)
    clock.lap("fixed_points", t)
    rep.put("fixed", {k: v for k, v in R.fixed.items()})
    _group_log(rep, R.log)
    _group_log(rep, R.triple.log, prefix="triple: ")
    _emit_dot(rep, cfg, _poset_dot(P))
    if cfg.figure:
        from .plotting import hasse_figure
        rep.artifacts.append(hasse_figure([fmt(x) for x in P.labels], P.covers(), cfg.figure, title="wavy base"))
    return _finish(rep, cfg, clock)


def transfer_cmd(cfg: RunConfig) -> Report:
    from .order import random_transfer_triples, retraction_triple, transfer_ccd

    clock = _Clock()
    count, max_size = cfg.extra["count"], cfg.extra["max_size"]
    t = time.perf_counter()
    if cfg.inputs:
        E = load_poset(cfg.inputs[0])
        sub = cfg.extra.get("sub")
        if not sub:
            raise InputError("transfer with a poset file needs --sub <comma-separated elements>")
        names = [s for s in sub.split(",") if s]
        for s in names:
            if s not in E.labels:
                raise InputError(f"unknown element {s!r} in --sub")
        trip = retraction_triple(E, E.mask_of(names))
        rep = _new_report(cfg, fingerprint_text(poset_to_text(E), ",".join(sorted(names))))
        if trip is None:
            rep.put("triple", None)
            rep.check("subposet admits q -| r -| s", False, {"sub": sorted(names)})
            return _finish(rep, cfg, clock)
        triples = [trip]
    else:
        rep = _new_report(cfg, fingerprint_text(f"random:{count}:{max_size}"), seed=cfg.seed)
        triples = random_transfer_triples(random.Random(cfg.seed), count, max_size)
    n = holds = lex_app = lex_holds = d_ccd = 0
    first_bad = None
    for q, r, s in triples:
        tr = transfer_ccd(q, r, s, cfg.guard)
        n += 1
        holds += tr.holds
        d_ccd += tr.target.ccd
        lex_app += tr.lex_applicable
        lex_holds += tr.lex_holds
        if first_bad is None and not (tr.holds and tr.lex_holds):
            first_bad = {"D": list(q.dom.labels), "E": list(q.cod.labels), "q": q.as_dict()}
    clock.lap("transfer", t)
    rep.put("triples", n)
    rep.put("D_ccd", d_ccd)
    rep.put("lex_applicable", lex_app)
    rep.check("E ccd implies D ccd", holds == n, first_bad)
    rep.check("E lex ccd and q lex implies D lex ccd", lex_holds == n, first_bad)
    return _finish(rep, cfg, clock)


def generator_restrict_cmd(E: FinPoset, cfg: RunConfig) -> Report:
    from .order import generator_restriction, join_dense_subsets

    clock = _Clock()
    gens = cfg.extra.get("generators")
    rep = _new_report(cfg, fingerprint_text(poset_to_text(E), gens or "*"))
    t = time.perf_counter()
    if gens:
        names = [g for g in gens.split(",") if g]
        for g in names:
            if g not in E.labels:
                raise InputError(f"unknown element {g!r} in --generators")
        masks = [E.mask_of(names)]
    else:
        masks = join_dense_subsets(E)
    try:
        results = [generator_restriction(E, m, cfg.guard) for m in masks]
    except NotJoinDense as e:
        raise InputError(f"--generators is not join-dense: {e}") from None
    clock.lap("generator_restriction", t)
    rep.put("subsets_checked", len(results))
    rep.put("ccd", results[0].ccd if results else None)
    rep.put("tensor_exists", [r.tensor is not None for r in results])
    if len(results) == 1:
        r = results[0]
        rep.put("generators", list(r.generators))
        if r.tensor is not None:
            Dn = r.tensor.cod
            rep.put("t_prime", {fmt(E.labels[v]): list(Dn.labels[r.tensor(v)]) for v in range(len(E))})
    bad = next((r for r in results if not r.consistent), None)
    rep.check("c' -| y' with c' = join", all(r.colim is not None and r.colim_is_join for r in results))
    rep.check("t' exists iff E ccd, and t' = totally-below restricted", bad is None,
              {"generators": list(bad.generators)} if bad else None)
    _emit_dot(rep, cfg, _poset_dot(E))
    return _finish(rep, cfg, clock)


# ---------------------------------------------------------------------------
# argument handling


def _guard(args) -> Guard:
    return DEFAULT_GUARD.with_overrides(max_objects=args.guard_objects, max_arrows=args.guard_arrows,
                                        max_subsets=args.max_subsets)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json", "machine-report", "tsv", "dot"], default="text",
                        help="report format on stdout (dot prints the DOT drawing instead of the report)")
    common.add_argument("--output", "-o", help="write the report to this file instead of stdout")
    common.add_argument("--dot", help="write a DOT drawing to this file")
    common.add_argument("--figure", help="render a Hasse diagram to this image file (png, svg, pdf)")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for randomized sweeps")
    common.add_argument("--guard-objects", type=int, help="maximum number of objects")
    common.add_argument("--guard-arrows", type=int, help="maximum number of arrows")
    common.add_argument("--max-subsets", type=int, help="maximum number of ideals enumerated")
    common.add_argument("--samples", help="extra sample (co)presheaves file")
    common.add_argument("--timing", action="store_true", help="include per-phase timing in the report")

    p = argparse.ArgumentParser(prog="tdcat", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"tdcat {__version__}")
    sub = p.add_subparsers(dest="subcommand", required=True)
    s = sub.add_parser("analyze-poset", parents=[common], help="ccd, continuity, Scott opens and duality checks")
    s.add_argument("poset")
    s = sub.add_parser("enumerate-ideals", parents=[common], help="idempotent arrow ideals of a category")
    s.add_argument("category", help="category file or builtin:<name>[:<n>]")
    s = sub.add_parser("td-witness", parents=[common], help="verify t -| c -| y for presheaves on a category")
    s.add_argument("category", help="category file or builtin:<name>[:<n>]")
    s = sub.add_parser("wavy", parents=[common], help="wavy-arrow comonad and fixed points of a poset")
    s.add_argument("poset")
    s = sub.add_parser("transfer", parents=[common], help="transfer of ccd along q -| r -| s")
    s.add_argument("poset", nargs="?", help="E; with --sub, check the triple of that subposet")
    s.add_argument("--sub", help="comma-separated elements of D inside E")
    s.add_argument("--count", type=int, default=1000, help="number of random triples")
    s.add_argument("--max-size", type=int, default=5, help="maximum size of E")
    s = sub.add_parser("generator-restrict", parents=[common], help="restriction to a join-dense generator")
    s.add_argument("poset")
    s.add_argument("--generators", help="comma-separated generators (default: every join-dense subset)")
    s = sub.add_parser("builtin", help="print a built-in category (or chain poset) file")
    s.add_argument("name", choices=BUILTIN_NAMES)
    s.add_argument("n", type=int, nargs="?", default=0)
    s.add_argument("--poset", action="store_true", help="print the chain in poset format")
    return p


def run(args) -> tuple[int, str]:
    """Execute parsed arguments; returns (exit code, stdout text)."""
    if args.subcommand == "builtin":
        if args.poset:
            if args.name != "chain":
                raise InputError("--poset is only available for the chain")
            return EXIT_OK, poset_to_text(chain_poset(args.n))
        return EXIT_OK, category_to_text(builtin(args.name, args.n))
    cfg = RunConfig(args.subcommand, [], _guard(args), args.format, args.seed, args.dot, args.figure,
                    args.timing, args.samples)
    if args.subcommand == "analyze-poset":
        rep = analyze_poset(load_poset(args.poset), cfg)
    elif args.subcommand == "enumerate-ideals":
        rep = enumerate_ideals_cmd(load_category(args.category, cfg.guard), cfg)
    elif args.subcommand == "td-witness":
        rep = td_witness_cmd(load_category(args.category, cfg.guard), cfg)
    elif args.subcommand == "wavy":
        rep = wavy_cmd(load_poset(args.poset), cfg)
    elif args.subcommand == "transfer":
        cfg.inputs = [args.poset] if args.poset else []
        cfg.extra = {"count": args.count, "max_size": args.max_size, "sub": args.sub}
        rep = transfer_cmd(cfg)
    else:
        cfg.extra = {"generators": args.generators}
        rep = generator_restrict_cmd(load_poset(args.poset), cfg)
    if args.format in ("json", "machine-report"):
        text = rep.to_json()
    elif args.format == "tsv":
        text = rep.to_tsv()
    elif args.format == "dot":
        if "dot_text" not in cfg.extra:
            raise InputError(f"{args.subcommand} has no DOT drawing")
        text = cfg.extra["dot_text"]
    else:
        text = rep.to_text()
    if args.output:
        _write(args.output, text)
        text = ""
    return (EXIT_OK if rep.passed else EXIT_FAIL), text


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code, text = run(args)
    except InputError as e:
        print(f"tdcat: error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except TdcatError as e:
        print(f"tdcat: check failed: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_FAIL
    sys.stdout.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
