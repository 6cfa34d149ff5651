"""Command-line entry point for batch verification runs.

Subcommands:

* ``check``        evaluate a theory on one structure literal file
* ``equiv``        verify the definitional equivalence exhaustively
* ``lemmas``       check every lemma obligation on all models of its theory
* ``models``       list the models of a theory at one size
* ``countermodel`` search for a structure separating a theory from a target
* ``export``       write TPTP problem files for the lemma obligations

Exit codes: 0 success, 1 obligation failure, 2 usage/parse error,
3 capacity exceeded.  ``--format json`` output is byte-stable across runs
and worker counts; timings are included only with ``--timings``.
"""

from __future__ import annotations

import argparse
import sys

from . import export as export_mod
from . import search, structures, theory
from .semantics import Evaluator
from .structures import CapacityError, StructureFormatError, canonical_gem, induced_fusion
from .syntax import ParseError

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3


def _bounds(args) -> search.SearchBounds:
    return search.SearchBounds(
        max_n_part=getattr(args, "max_part", 4),
        max_n_fusion=getattr(args, "max_fusion", 3),
        random_samples=getattr(args, "samples", 10000),
        seed=getattr(args, "seed", 0),
    )


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        sys.stdout.write(search.report_json(payload))
    else:
        sys.stdout.write(text)


def cmd_check(args) -> int:
    with open(args.structure) as fh:
        s = structures.load_structure(fh.read())
    t = theory.theory_by_name(args.theory)
    report = search.check_theory(s, t)
    lines = [f"structure: {report.structure}", f"theory: {t.name}"]
    for r in report.results:
        mark = "pass" if r.passed else "FAIL"
        extra = ""
        if r.witness is not None:
            extra = f"  witness {search._witness_dict(r.witness)}"
        lines.append(f"  {r.name:<10} {mark}{extra}")
    _emit(args, report.to_dict(timings=args.timings), "\n".join(lines) + "\n")
    return EXIT_OK if report.all_passed else EXIT_FAIL


def cmd_equiv(args) -> int:
    rep = search.verify_equivalence(_bounds(args), workers=args.workers)
    lines = ["definitional equivalence check"]
    for row in rep.part_rows:
        lines.append(
            f"  part   n={row['n']}: {row['models']}/{row['candidates']} models, "
            f"fusion axioms {row['fusion_axioms_pass']}, def_pf {row['def_pf_pass']}, "
            f"round trip {row['round_trip_pass']}")
    for row in rep.fusion_rows:
        lines.append(
            f"  fusion n={row['n']}: {row['models']}/{row['candidates']} models, "
            f"part axioms {row['part_axioms_pass']}, def_uf {row['def_uf_pass']}, "
            f"round trip {row['round_trip_pass']}, "
            f"empty-plurality models {row['with_empty_plurality']}")
    lines.append(f"violations: {len(rep.violations)}")
    _emit(args, rep.to_dict(timings=args.timings), "\n".join(lines) + "\n")
    return EXIT_OK if rep.all_ok else EXIT_FAIL


def _lemma_models(side: str, bounds: search.SearchBounds, workers: int,
                  canonical_k: int) -> list:
    if side == "gem_p":
        out = [("all gem_p models", m)
               for n in range(bounds.max_n_part + 1)
               for m in search.filter_models("part", n, theory.gem_p(),
                                             workers=workers)]
        if canonical_k:
            out.append((f"canonical k={canonical_k}", canonical_gem(canonical_k)))
        return out
    out = [("all gem_f models", m)
           for n in range(bounds.max_n_fusion + 1)
           for m in search.filter_models("fusion", n, theory.gem_f(),
                                         workers=workers)]
    if canonical_k:
        out.append((f"canonical k={canonical_k}, fusion side",
                    induced_fusion(canonical_gem(canonical_k))))
    return out


def cmd_lemmas(args) -> int:
    suite = theory.lemma_suite()
    if args.name is not None:
        suite = theory.Theory("lemmas", (suite.get(args.name),))
    bounds = _bounds(args)
    models = {side: _lemma_models(side, bounds, args.workers, args.canonical_k)
              for side in sorted({nf.side for nf in suite})}
    evaluators = {side: [(label, Evaluator(m)) for label, m in ms]
                  for side, ms in models.items()}
    rows = []
    all_ok = True
    for nf in suite:
        failures = []
        for label, ev in evaluators[nf.side]:
            outcome = ev.check(nf)
            if not outcome.value:
                if outcome.witness is not None and \
                        not ev.refutes(nf.sentence, outcome.witness):
                    raise RuntimeError(f"unsound witness for {nf.name}")
                failures.append({
                    "structure": structures.summarize(ev.ctx.structure),
                    "scope": label,
                    "witness": search._witness_dict(outcome.witness),
                })
        ok = not failures
        all_ok &= ok
        rows.append({"name": nf.name, "side": nf.side,
                     "models_checked": len(evaluators[nf.side]),
                     "passed": ok, "failures": failures})
    payload = {"max_n_part": bounds.max_n_part, "max_n_fusion": bounds.max_n_fusion,
               "canonical_k": args.canonical_k, "rows": rows}
    lines = [f"{r['name']:<10} [{r['side']}] "
             f"{'pass' if r['passed'] else 'FAIL'} "
             f"({r['models_checked']} models)" for r in rows]
    _emit(args, payload, "\n".join(lines) + "\n")
    return EXIT_OK if all_ok else EXIT_FAIL


def cmd_models(args) -> int:
    t = theory.theory_by_name(args.theory)
    models = search.filter_models(args.kind, args.n, t, workers=args.workers)
    payload = {
        "theory": t.name,
        "kind": args.kind,
        "n": args.n,
        "candidates": 1 << search.relation_bits(args.kind, args.n),
        "models": len(models),
        "failures": [],
        "seed": args.seed,
        "structures": [structures.summarize(m) for m in models],
    }
    text = "\n".join(payload["structures"] + [f"{len(models)} models"]) + "\n"
    _emit(args, payload, text)
    return EXIT_OK


def cmd_countermodel(args) -> int:
    base = theory.theory_by_name(args.theory)
    for name in args.drop or []:
        base = base.drop(name)
    try:
        target = base.get(args.target)
    except KeyError:
        target = theory.find_named(args.target)
    if args.kind == "part":
        bounds = search.SearchBounds(max_n_part=args.max_n, max_n_fusion=0,
                                     random_samples=args.samples, seed=args.seed)
    else:
        bounds = search.SearchBounds(max_n_part=0, max_n_fusion=args.max_n,
                                     random_samples=args.samples, seed=args.seed)
    res = search.find_countermodel(args.kind, base, target, bounds,
                                   strategy=args.strategy, workers=args.workers)
    text = f"{res.verdict}\n"
    if res.structure is not None:
        text += structures.dump_structure(res.structure)
    _emit(args, res.to_dict(timings=args.timings), text)
    return EXIT_OK


def cmd_export(args) -> int:
    if args.all:
        paths = export_mod.emit_all(args.out)
        sys.stdout.write("".join(f"{p}\n" for p in paths))
        return EXIT_OK
    if args.name is None:
        sys.stderr.write("export needs --all or --name\n")
        return EXIT_USAGE
    nf = theory.lemma_suite().get(args.name)
    t = theory.gem_f() if nf.side == "gem_f" else theory.gem_p()
    text = export_mod.emit_obligation(nf.name, t, nf)
    if args.out:
        from pathlib import Path
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / f"{nf.name}.p").write_text(text)
        sys.stdout.write(f"{out / (nf.name + '.p')}\n")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _add_common(p, workers=True):
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--timings", action="store_true",
                   help="include elapsed_ms in JSON output (nondeterministic)")
    if workers:
        p.add_argument("--workers", type=int, default=4)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gemcheck", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="check a structure file against a theory")
    p.add_argument("structure")
    p.add_argument("theory", choices=theory.theory_names())
    _add_common(p, workers=False)
    p.set_defaults(fn=cmd_check, workers=1)

    p = sub.add_parser("equiv", help="verify the definitional equivalence")
    p.add_argument("--max-part", type=int, default=4)
    p.add_argument("--max-fusion", type=int, default=3)
    _add_common(p)
    p.set_defaults(fn=cmd_equiv)

    p = sub.add_parser("lemmas", help="check the lemma obligations")
    p.add_argument("--max-part", type=int, default=4)
    p.add_argument("--max-fusion", type=int, default=3)
    p.add_argument("--canonical-k", type=int, default=3,
                   help="also check on the canonical model of this many atoms (0 disables)")
    p.add_argument("--name", help="check a single lemma")
    _add_common(p)
    p.set_defaults(fn=cmd_lemmas)

    p = sub.add_parser("models", help="list models of a theory at one size")
    p.add_argument("--kind", choices=("part", "fusion"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--theory", required=True, choices=theory.theory_names())
    _add_common(p)
    p.set_defaults(fn=cmd_models)

    p = sub.add_parser("countermodel",
                       help="search for a model of a theory falsifying a target")
    p.add_argument("--kind", choices=("part", "fusion"), required=True)
    p.add_argument("--theory", required=True, choices=theory.theory_names())
    p.add_argument("--drop", action="append", metavar="AXIOM",
                   help="remove an obligation from the base theory (repeatable)")
    p.add_argument("--target", required=True)
    p.add_argument("--max-n", type=int, default=2)
    p.add_argument("--strategy", choices=("exhaustive", "random"),
                   default="exhaustive")
    p.add_argument("--samples", type=int, default=10000)
    _add_common(p)
    p.set_defaults(fn=cmd_countermodel)

    p = sub.add_parser("export", help="write TPTP problem files")
    p.add_argument("--all", action="store_true")
    p.add_argument("--name")
    p.add_argument("--out", default="obligations")
    _add_common(p, workers=False)
    p.set_defaults(fn=cmd_export, workers=1)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    if getattr(args, "workers", 1) < 1:
        sys.stderr.write("error: --workers must be >= 1\n")
        return EXIT_USAGE
    sizes = [getattr(args, key, 0) for key in
             ("max_part", "max_fusion", "max_n", "n", "canonical_k", "samples")]
    if any(v < 0 for v in sizes):
        sys.stderr.write("error: sizes and sample counts must be >= 0\n")
        return EXIT_USAGE
    try:
        return args.fn(args)
    except (ParseError, StructureFormatError, KeyError, FileNotFoundError,
            ValueError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE
    except CapacityError as e:
        sys.stderr.write(f"capacity: {e}\n")
        return EXIT_CAPACITY


if __name__ == "__main__":
    sys.exit(main())
