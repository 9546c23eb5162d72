"""Command-line front end.

    mwforge invariants --preset example2 --d 1..6
    mwforge points --p 3 --n 1
    mwforge heights --p 3 --n 1 --oracle --iters 4
    mwforge casebook ex2-ranks --d 15

Exit codes: 0 success, 2 usage or validation error, 3 verification failure.
Output is deterministic for a given command line.
"""

from __future__ import annotations

import argparse
import sys

from mwforge import berger, casebook, explicit_points, heights
from mwforge.fields import is_prime
from mwforge.report import dumps_json, tsv_table

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VERIFY = 3
MAX_D_VALUES = 10_000


class UsageError(Exception):
    pass


def parse_d_range(text: str) -> list[int]:
    """``"7"``, ``"1..12"`` (inclusive) or a comma list such as ``"2,5,7"``."""
    text = text.strip()
    try:
        if ".." in text:
            lo, hi = (int(s) for s in text.split("..", 1))
            values = list(range(lo, hi + 1))
        else:
            values = [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise UsageError(f"cannot parse d range {text!r}") from None
    if not values:
        raise UsageError(f"empty d range {text!r}")
    if len(values) > MAX_D_VALUES:
        raise UsageError(f"d range has {len(values)} values; at most {MAX_D_VALUES}")
    if min(values) < 1:
        raise UsageError("d must be positive")
    return values


def _emit(args, payload: dict, tsv: str) -> None:
    text = dumps_json(payload) if args.format == "json" else tsv
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _check_pn(p: int, n: int) -> None:
    if not is_prime(p):
        raise UsageError(f"p={p} is not prime")
    if n < 1:
        raise UsageError("n must be at least 1")
    if p ** (2 * n) > explicit_points.MAX_FIELD_SIZE:
        raise UsageError(f"p^(2n) exceeds {explicit_points.MAX_FIELD_SIZE}")


def _report_tsv(reports) -> str:
    rows = []
    for r in reports:
        for e in r.entries or [{}]:
            item = ", ".join(f"{k}={v}" for k, v in e.items() if k != "ok")
            rows.append({"check": r.name, "item": item, "ok": e.get("ok", r.ok) if r.applicable else "n/a"})
    return tsv_table(["check", "item", "ok"], rows)


# ---------------------------------------------------------------------------
# subcommands


def _load_data(args) -> berger.BergerData:
    if args.input:
        try:
            data = berger.BergerData.load(args.input)
        except OSError as exc:
            raise UsageError(f"cannot read {args.input}: {exc}") from None
        except ValueError as exc:
            raise UsageError(f"invalid JSON in {args.input}: {exc}") from None
    else:
        data = berger.preset(args.preset)
    if args.p is not None:
        data = berger.BergerData(**{**data.to_json(), "p": args.p})
    return data.validate()


def _hom_rank(text: str | None, d: int, data) -> int | None:
    if text is None:
        return None
    if text.lstrip("-").isdigit():
        return int(text)
    if text in ("generic", "cm", "char0"):
        return berger.hom_rank_preset(text, d)
    raise UsageError(f"--hom-rank must be an integer or one of generic, cm, char0; got {text!r}")


def cmd_invariants(args) -> int:
    data = _load_data(args)
    rows = []
    for d in parse_d_range(args.d):
        rep = berger.invariant_report(d, data, _hom_rank(args.hom_rank, d, data))
        rows.append(
            {
                "d": d,
                "e_df": rep.e_df,
                "e_dg": rep.e_dg,
                "genus": rep.genus,
                "c1": rep.c1,
                "c2": rep.c2,
                "trace_dim": rep.trace_dim,
                "hom_rank": rep.hom_rank,
                "rank": rep.rank,
            }
        )
    payload = {"data": data.to_json(), "rows": rows}
    _emit(args, payload, tsv_table(list(rows[0]), rows))
    return EXIT_OK


def cmd_points(args) -> int:
    _check_pn(args.p, args.n)
    fam = explicit_points.build_family(args.p, args.n)
    reports = [
        explicit_points.verify_on_curve(fam),
        explicit_points.verify_weierstrass_identity(fam),
        explicit_points.verify_relations(fam),
        explicit_points.torsion_report(fam),
        explicit_points.verify_galois_permutation(fam),
    ]
    x, y = explicit_points.base_point(fam.ctx, fam.p, fam.n)
    payload = {
        "p": fam.p,
        "n": fam.n,
        "d": fam.d,
        "field": f"F_{fam.ctx.order}",
        "zeta": str(fam.zeta),
        "P": {"x": str(x), "y": str(y)},
        "checks": reports,
    }
    _emit(args, payload, _report_tsv(reports))
    failed = [r.name for r in reports if not r.ok]
    if failed:
        print(f"verification failed: {', '.join(failed)}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def _relation_vectors(p: int, d: int) -> list[tuple[int, ...]]:
    vecs = [tuple([1] * d)]
    if p != 2:
        vecs.append(tuple((-1) ** i for i in range(d)))
    return vecs


def heights_payload(p: int, n: int, oracle: bool = False, iters: int = 4):
    """Closed-form Gram analysis, optionally with the oracle comparison; returns (payload, failures)."""
    d = p**n + 1
    G = heights.gram_closed_form(p, d)
    lat = heights.lattice_rank(G)
    want_rank = d - 1 if p == 2 else d - 2
    relations = _relation_vectors(p, d)
    kernel_ok = heights.same_span(lat.kernel, relations)
    astar = heights.identify_scaled_astar(G, p, d)
    failures = []
    if lat.rank != want_rank:
        failures.append(f"rank {lat.rank} != {want_rank}")
    if not kernel_ok:
        failures.append("kernel differs from the relation vectors")
    if not astar:
        failures.append("not a scaled A* lattice")
    payload = {
        "p": p,
        "n": n,
        "d": d,
        "gram": heights.render_json(G),
        "rank": lat.rank,
        "expected_rank": want_rank,
        "kernel": [list(v) for v in lat.kernel],
        "kernel_matches_relations": kernel_ok,
        "astar": astar,
        "astar_scale": d - 1,
    }
    if oracle:
        cal = explicit_points.build_family(2, 1)
        kappa = heights.calibrate_kappa(
            heights.gram_closed_form(2, 3), heights.oracle_gram(cal.E, cal.points, iters)
        )
        fam = explicit_points.build_family(p, n)
        O = heights.oracle_gram(fam.E, fam.points, iters)
        cmp = heights.compare_oracle(G, O, kappa)
        payload["oracle"] = {
            "iters": iters,
            "kappa": kappa,
            "kappa_decimal": heights.decimal6(kappa),
            "gram": heights.render_json(O),
            "max_deviation": heights.decimal6(cmp["max_deviation"]),
            "deviations": [[heights.decimal6(v) for v in row] for row in cmp["deviations"]],
            "within_tol": cmp["within_tol"],
            "rounding_exact": cmp["rounding_exact"],
        }
        if not cmp["within_tol"]:
            failures.append("oracle deviation above 0.1")
        if not cmp["rounding_exact"]:
            failures.append("rounded oracle differs from d * Gram")
    return payload, failures


def cmd_heights(args) -> int:
    _check_pn(args.p, args.n)
    payload, failures = heights_payload(args.p, args.n, args.oracle, args.iters)
    d = payload["d"]
    G = heights.gram_closed_form(args.p, d)
    summary = [
        {"key": "d", "value": d},
        {"key": "rank", "value": payload["rank"]},
        {"key": "kernel", "value": "; ".join(",".join(map(str, v)) for v in payload["kernel"])},
        {"key": "astar", "value": payload["astar"]},
    ]
    if args.oracle:
        o = payload["oracle"]
        summary += [
            {"key": "kappa", "value": o["kappa"]},
            {"key": "max_deviation", "value": o["max_deviation"]},
            {"key": "rounding_exact", "value": o["rounding_exact"]},
        ]
    tsv = heights.render_tsv(G) + "\n" + tsv_table(["key", "value"], summary)
    _emit(args, payload, tsv)
    if failures:
        print("verification failed: " + "; ".join(failures), file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


CASEBOOK_SCENARIOS = ("ex1", "ex1-curve", "ex2-identities", "ex2-ranks", "ex2-genus", "x-squared")
_ALIASES = {"example1": "ex1", "example2": "ex2-identities"}


def cmd_casebook(args) -> int:
    name = _ALIASES.get(args.scenario, args.scenario)
    if name not in CASEBOOK_SCENARIOS:
        raise UsageError(f"unknown scenario {args.scenario!r}; choose from {', '.join(CASEBOOK_SCENARIOS)}")
    if name == "ex1":
        if (args.p is None) != (args.n is None):
            raise UsageError("give both --p and --n, or neither")
        grid = casebook.DEFAULT_GRID
        if args.p is not None:
            _check_pn(args.p, args.n)
            grid = ((args.p, args.n),)
        rep = casebook.ex1_report(grid)
    elif name == "ex1-curve":
        rep = casebook.ex1_curve_report()
    elif name == "ex2-identities":
        rep = casebook.ex2_invariant_identities()
    elif name == "ex2-ranks":
        ds = parse_d_range(args.d) if args.d else casebook.EX2_RANK_DS
        rep = casebook.ex2_rank_table(ds)
    elif name == "ex2-genus":
        rep = casebook.ex2_genus_table(max(parse_d_range(args.d)) if args.d else 24)
    else:
        rep = casebook.x_squared_report(parse_d_range(args.d) if args.d else range(1, 25))
    _emit(args, {"scenario": name, "report": rep}, _report_tsv([rep]))
    if not rep.ok:
        print(f"verification failed: {rep.name}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mwforge", description=__doc__.split("\n\n")[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "tsv"), default="json")
    common.add_argument("--out", help="write the report here instead of standard output")
    sub = parser.add_subparsers(dest="command", required=True)

    p_inv = sub.add_parser("invariants", parents=[common], help="per-d invariants and the rank formula")
    src = p_inv.add_mutually_exclusive_group(required=True)
    src.add_argument("--preset", choices=sorted(berger.PRESETS))
    src.add_argument("--input", help="multiplicity data as JSON")
    p_inv.add_argument("--d", default="1..12", help='"lo..hi", a single value, or a comma list')
    p_inv.add_argument("--p", type=int, help="characteristic (0 or a prime); overrides the data")
    p_inv.add_argument("--hom-rank", help="integer, or generic / cm / char0")
    p_inv.set_defaults(func=cmd_invariants)

    for name, func, helptext in (
        ("points", cmd_points, "build and verify the explicit point family"),
        ("heights", cmd_heights, "Gram matrix, rank, kernel and lattice identification"),
    ):
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.add_argument("--p", type=int, required=True)
        sp.add_argument("--n", type=int, default=1)
        sp.set_defaults(func=func)
        if name == "heights":
            sp.add_argument("--oracle", action="store_true", help="compare with the doubling-limit oracle")
            sp.add_argument("--iters", type=int, default=4, help="doublings for the oracle (at most 6)")

    p_case = sub.add_parser("casebook", parents=[common], help="worked scenarios")
    p_case.add_argument("scenario", help=", ".join(CASEBOOK_SCENARIOS))
    p_case.add_argument("--d")
    p_case.add_argument("--p", type=int)
    p_case.add_argument("--n", type=int)
    p_case.set_defaults(func=cmd_casebook)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not 0 <= getattr(args, "iters", 0) <= 6:
        parser.error("--iters must be between 0 and 6")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except berger.BergerDataError as exc:
        print(f"error: invalid data: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except explicit_points.FamilyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
