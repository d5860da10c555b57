"""Command-line driver.

Every subcommand prints a single JSON document on standard output and exits
with status 0 exactly when all verdicts in that document pass. Rerunning a
command with identical flags reproduces the output byte for byte; nothing
time- or path-dependent enters the JSON. Figures and the CSV summary of the
`report` subcommand go to files instead.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from pathlib import Path

from . import checks
from .covers import (
    DEFAULT_EPSILON,
    cap_cover,
    empirical_nerve,
    lift_chain,
    load_cover,
    sample_sphere,
    save_cover,
    verify_cover,
)
from .deleted_square import deleted_square, orbit_complex, orbit_label, product_label
from .simplicial import skeleton_complex

MAX_LISTING_CELLS = 200_000


def _dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True)


def _emit(doc: dict, passed: bool) -> int:
    print(_dumps(doc))
    return 0 if passed else 1


def _cmd_q(args) -> int:
    entry = checks.q_entry(args.h)
    return _emit({"command": "q", "entry": entry.to_dict(), "verdict": "pass"}, True)


def _cmd_table(args) -> int:
    entries = [e.to_dict() for e in checks.q_table(args.h_max)]
    return _emit({"command": "table", "entries": entries, "verdict": "pass"}, True)


def _cmd_cover_build(args) -> int:
    if args.method == "caps":
        cover = cap_cover(args.dim)
    else:
        if args.dim < 2:
            raise ValueError("lifted covers start at sphere dimension 2")
        cover = lift_chain(args.dim, args.epsilon)[-1]
    save_cover(cover, args.out)
    doc = {
        "command": "cover_build",
        "sphere_dim": cover.sphere_dim,
        "method": args.method,
        "epsilon": cover.epsilon,
        "n_sets": cover.n_sets,
        "out": str(args.out),
        "verdict": "pass",
    }
    return _emit(doc, True)


def _cmd_cover_verify(args) -> int:
    cover = load_cover(args.infile)
    samples = sample_sphere(cover.sphere_dim, args.samples, args.seed)
    report = verify_cover(cover, samples)
    doc = {
        "command": "cover_verify",
        "sphere_dim": cover.sphere_dim,
        "n_sets": cover.n_sets,
        "report": report.to_dict(),
        "verdict": "pass" if report.passed else "fail",
    }
    if args.nerve:
        doc["nerve"] = empirical_nerve(cover, samples).to_dict()
    return _emit(doc, report.passed)


def _cmd_check(args) -> int:
    check = checks.run_check(
        args.id,
        k=args.k,
        h=args.h,
        h_max=args.h_max,
        epsilon=args.epsilon,
        samples=args.samples,
        seed=args.seed,
        parity=args.parity,
        allow_k4=args.allow_k4,
    )
    return _emit({"command": "check"} | check.to_dict(), check.passed)


def _cmd_complex(args) -> int:
    K = skeleton_complex(args.n, args.k)
    D = deleted_square(K)
    complex_, label = (orbit_complex(D), orbit_label) if args.orbit else (D, product_label)
    if complex_.n_cells > MAX_LISTING_CELLS:
        raise ValueError(
            f"listing would contain {complex_.n_cells} cells; refusing above "
            f"{MAX_LISTING_CELLS}"
        )
    doc = {
        "command": "complex",
        "n_vertices": args.n,
        "skeleton_dim": args.k,
        "orbit": bool(args.orbit),
        "complex": complex_.to_listing(label),
        "verdict": "pass",
    }
    return _emit(doc, True)


_REPORT_CHECKS = (
    ("q-table", {"h_max": 10}),
    ("remark4.4", {"parity": "both"}),
    ("thm4.3-odd", {"k": 2}),
    ("thm4.3-odd", {"k": 3}),
    ("thm4.3-even", {"k": 2}),
    ("thm4.3-even", {"k": 3}),
    ("cap-cover", {"h": 1}),
    ("cap-cover", {"h": 2}),
    ("cap-cover", {"h": 3}),
    ("cap-cover", {"h": 4}),
    ("cap-cover", {"h": 5}),
    ("cap-cover", {"h": 6}),
    ("lemma4.1-lift", {"h": 4}),
)


def _row_detail(check: checks.TheoremCheck) -> str:
    ev = check.evidence
    if check.id == "q-table":
        return f"{len(ev['entries'])} entries"
    if check.id in {"thm4.3-odd", "thm4.3-even"}:
        d = ev["deleted_square"]
        return (
            f"dim={d['dim']}; cells={sum(d['cells_per_dim'])}; "
            f"orbit top homology vanishes={ev['orbit']['top_homology_vanishes']}"
        )
    if check.id == "remark4.4":
        return "exceptional low-dimensional cases confirmed"
    if check.id == "cap-cover":
        r = ev["report"]
        return (
            f"{ev['n_sets']} sets; max multiplicity {r['max_multiplicity']}; "
            f"covered={r['covered']}; antipodal_free={r['antipodal_free']}"
        )
    if check.id == "lemma4.1-lift":
        mults = [lv["report"]["max_multiplicity"] for lv in ev["levels"]]
        return f"levels S1..S{len(mults)}; max multiplicities {mults}"
    return ""


def _cmd_report(args) -> int:
    from . import plotting

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    rows = []
    results: dict[tuple[str, str], checks.TheoremCheck] = {}
    all_pass = True
    for check_id, params in _REPORT_CHECKS:
        call = dict(params)
        if check_id in {"cap-cover", "lemma4.1-lift"}:
            call["samples"] = args.samples
            call["seed"] = args.seed
        started = time.perf_counter()
        check = checks.run_check(check_id, **call)
        elapsed = time.perf_counter() - started
        all_pass = all_pass and check.passed
        key = (check_id, json.dumps(params, sort_keys=True))
        results[key] = check
        rows.append({
            "check_id": check_id,
            "parameters": " ".join(f"{k}={v}" for k, v in sorted(params.items())),
            "verdict": check.verdict,
            "elapsed_seconds": f"{elapsed:.3f}",
            "detail": _row_detail(check),
        })

    csv_path = out_dir / "report.csv"
    with csv_path.open("w", newline="") as fh:
        writer = csv.DictWriter(
            fh, fieldnames=["check_id", "parameters", "verdict", "elapsed_seconds", "detail"]
        )
        writer.writeheader()
        writer.writerows(rows)

    figures: list[str] = []
    if not args.no_figures:
        qt = results[("q-table", json.dumps({"h_max": 10}, sort_keys=True))]
        figures.append(str(plotting.save_q_table_figure(
            qt.evidence["entries"], out_dir / "q_table.png")))
        for k in (2, 3):
            ck = results[("thm4.3-odd", json.dumps({"k": k}, sort_keys=True))]
            figures.append(str(plotting.save_homology_figure(
                ck.evidence["deleted_square"], ck.evidence["orbit"],
                out_dir / f"homology_odd_k{k}.png",
                f"skeleton of dimension {k} on {2 * k + 1} vertices")))
            ce = results[("thm4.3-even", json.dumps({"k": k}, sort_keys=True))]
            figures.append(str(plotting.save_homology_figure(
                ce.evidence["deleted_square"], ce.evidence["orbit"],
                out_dir / f"homology_even_k{k}.png",
                f"skeleton of dimension {k + 1} on {2 * k + 2} vertices")))
        for h in (2, 4):
            cc = results[("cap-cover", json.dumps({"h": h}, sort_keys=True))]
            figures.append(str(plotting.save_multiplicity_figure(
                cc.evidence["report"]["multiplicity_counts"],
                out_dir / f"cap_cover_multiplicity_h{h}.png",
                f"cap cover of the {h}-sphere")))
        lift = results[("lemma4.1-lift", json.dumps({"h": 4}, sort_keys=True))]
        last = lift.evidence["levels"][-1]
        figures.append(str(plotting.save_multiplicity_figure(
            last["report"]["multiplicity_counts"],
            out_dir / "lifted_cover_multiplicity_s4.png",
            "lifted cover of the 4-sphere")))
        map_samples = sample_sphere(2, min(args.samples, 10000), args.seed)
        figures.append(str(plotting.save_s2_multiplicity_map(
            lift_chain(2, DEFAULT_EPSILON)[-1], map_samples,
            out_dir / "lifted_cover_map_s2.png",
            "lifted cover of the 2-sphere")))

    doc = {
        "command": "report",
        "out_dir": str(out_dir),
        "csv": str(csv_path),
        "figures": figures,
        "checks": [
            {"id": cid, "parameters": params, "verdict": row["verdict"]}
            for (cid, params), row in zip(results.keys(), rows)
        ],
        "verdict": "pass" if all_pass else "fail",
    }
    return _emit(doc, all_pass)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spherecover",
        description="Build and verify antipodal-free sphere covers and the "
        "mod-2 homology certificates behind their multiplicity bounds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_q = sub.add_parser("q", help="minimal multiplicity and cover size for one h")
    p_q.add_argument("--h", type=int, required=True)
    p_q.set_defaults(func=_cmd_q)

    p_table = sub.add_parser("table", help="table of minimal values for h = 0..h-max")
    p_table.add_argument("--h-max", type=int, default=10)
    p_table.set_defaults(func=_cmd_table)

    p_cover = sub.add_parser("cover", help="build or verify cover files")
    cover_sub = p_cover.add_subparsers(dest="cover_command", required=True)

    p_build = cover_sub.add_parser("build", help="write a cover file")
    p_build.add_argument("--dim", type=int, required=True)
    p_build.add_argument("--method", choices=("caps", "lift"), default="caps")
    p_build.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON)
    p_build.add_argument("--out", required=True)
    p_build.set_defaults(func=_cmd_cover_build)

    p_verify = cover_sub.add_parser("verify", help="verify a cover file by sampling")
    p_verify.add_argument("--in", dest="infile", required=True)
    p_verify.add_argument("--samples", type=int, default=checks.DEFAULT_SAMPLES)
    p_verify.add_argument("--seed", type=int, default=checks.DEFAULT_SEED)
    p_verify.add_argument("--nerve", action="store_true")
    p_verify.set_defaults(func=_cmd_cover_verify)

    p_check = sub.add_parser("check", help="run one named check suite")
    p_check.add_argument("--id", required=True,
                         help="one of: " + ", ".join(checks.CHECK_IDS))
    p_check.add_argument("--k", type=int)
    p_check.add_argument("--h", type=int)
    p_check.add_argument("--h-max", type=int)
    p_check.add_argument("--epsilon", type=float)
    p_check.add_argument("--samples", type=int)
    p_check.add_argument("--seed", type=int)
    p_check.add_argument("--parity", choices=("odd", "even", "both"))
    p_check.add_argument("--allow-k4", action="store_true")
    p_check.set_defaults(func=_cmd_check)

    p_complex = sub.add_parser(
        "complex", help="dump a deleted square or its orbit complex as JSON"
    )
    p_complex.add_argument("--n", type=int, required=True, help="vertex count")
    p_complex.add_argument("--k", type=int, required=True, help="skeleton dimension")
    p_complex.add_argument("--orbit", action="store_true")
    p_complex.set_defaults(func=_cmd_complex)

    p_report = sub.add_parser(
        "report", help="run the full suite; write CSV and figures to a directory"
    )
    p_report.add_argument("--out-dir", required=True)
    p_report.add_argument("--samples", type=int, default=checks.DEFAULT_SAMPLES)
    p_report.add_argument("--seed", type=int, default=checks.DEFAULT_SEED)
    p_report.add_argument("--no-figures", action="store_true")
    p_report.set_defaults(func=_cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
