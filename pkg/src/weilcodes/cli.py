"""Command-line interface: evaluate character sums, build codes, run
deterministic sweeps and verification batteries, and exhibit counterexamples
to the superseded branch evaluation.

Exit codes: 0 success, 1 usage error, 2 verification mismatch, 3 cost
refusal.  Reports are byte-deterministic: fixed iteration order, no
timestamps.  Sweep records go to stdout (JSON-lines or CSV), summaries to
stderr.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from .gf2 import ALT_MODULI, CostRefusal, DEFAULT_MODULI, Field, make_field
from .expsum import (
    SIGN_AMBIGUOUS,
    SumParams,
    brute_force_sum,
    closed_form_sum,
    legacy_incorrect_sum,
    solve_linearized,
)
from .codes import (
    CodeSpec,
    build_defining_set,
    distributions_match,
    dual_distance_at_least_2,
    length_formula,
    pless_check,
    secret_sharing_check,
    weight_distribution_oracle,
    weight_distribution_theorem,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_MISMATCH = 2
EXIT_COST = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 1, not argparse's default 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _parse_e_range(text: str) -> list[int]:
    lo, _, hi = text.partition("..")
    try:
        lo_i = int(lo, 10)
        hi_i = int(hi, 10) if hi else lo_i
    except ValueError:
        raise ValueError(f"malformed e range {text!r}: expected N or N..M") from None
    if lo_i > hi_i:
        raise ValueError(f"empty e range {text!r}")
    return list(range(lo_i, hi_i + 1))


def _field_for(e: int, modulus_hex: str | None, table: str = "default") -> Field:
    if modulus_hex is not None:
        return make_field(e, int(modulus_hex, 16))
    if table == "alt":
        if e not in ALT_MODULI:
            raise ValueError(f"no alternate modulus is pinned for e={e}")
        return make_field(e, ALT_MODULI[e])
    return make_field(e, DEFAULT_MODULI[e])


def _bool_str(v) -> str:
    if v is None:
        return ""
    return "true" if v else "false"


def _emit_records(records: list[dict], fmt: str, out) -> None:
    if fmt == "csv":
        if not records:
            return
        writer = csv.writer(out, lineterminator="\n")
        cols = list(records[0].keys())
        writer.writerow(cols)
        for r in records:
            writer.writerow(
                [_bool_str(v) if isinstance(v, bool) or v is None else v for v in (r[c] for c in cols)]
            )
    else:
        for r in records:
            out.write(json.dumps(r) + "\n")


# --- sum ---


def _sum_record(field: Field, alpha: int, a: int, b: int, resolve: bool, oracle: bool) -> dict:
    params = SumParams(field, alpha, a, b)
    val = closed_form_sum(params)
    rec = {
        "e": field.e,
        "alpha": alpha,
        "modulus_hex": field.modulus_hex,
        "generator_hex": field.generator_hex,
        "a_hex": format(a, "x"),
        "b_hex": format(b, "x"),
        "case_tag": val.case_tag,
        "kind": val.kind,
        "closed_form": val.value,
        "magnitude": val.magnitude,
        "resolved": False,
        "oracle": None,
        "match": None,
    }
    if oracle or (resolve and val.kind == SIGN_AMBIGUOUS):
        got = brute_force_sum(params)
        rec["oracle"] = got
        if val.kind == SIGN_AMBIGUOUS:
            rec["match"] = abs(got) == val.magnitude
            if resolve:
                rec["closed_form"] = got if rec["match"] else None
                rec["resolved"] = True
        else:
            rec["match"] = got == val.value
    return rec


def cmd_sum(args) -> int:
    field = _field_for(args.e, args.modulus)
    a = field.parse_element(args.a)
    b = field.parse_element(args.b)
    rec = _sum_record(field, args.alpha, a, b, args.resolve_signs, args.paranoid)
    if args.format == "json":
        print(json.dumps(rec))
    elif args.format == "csv":
        _emit_records([rec], "csv", sys.stdout)
    else:
        print(
            f"sum: e={rec['e']} alpha={rec['alpha']} modulus={rec['modulus_hex']} "
            f"generator={rec['generator_hex']} a={rec['a_hex']} b={rec['b_hex']}"
        )
        print(f"case: {rec['case_tag']}")
        if rec["kind"] == SIGN_AMBIGUOUS and not rec["resolved"]:
            print(f"closed form: +-{rec['magnitude']} (sign unresolved)")
        else:
            print(f"closed form: {rec['closed_form']}")
        if rec["oracle"] is not None:
            print(f"oracle: {rec['oracle']}")
            print(f"match: {_bool_str(rec['match'])}")
    return EXIT_MISMATCH if rec["match"] is False else EXIT_OK


# --- code ---


def cmd_code(args) -> int:
    field = _field_for(args.e, args.modulus)
    spec = CodeSpec(field, args.h, field.parse_element(args.a), field.parse_element(args.b))
    wd = weight_distribution_theorem(spec)
    ss = secret_sharing_check(spec)
    doc = wd.to_json_dict(spec)
    match = None
    if args.paranoid:
        oracle = weight_distribution_oracle(spec)
        match = distributions_match(wd, oracle)
        doc["oracle_rows"] = [{"w": w, "A": a} for w, a in oracle.entries]
        doc["oracle_match"] = match
    if args.format == "json":
        print(json.dumps(doc))
    elif args.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["w", "A"])
        for w, a in wd.entries:
            writer.writerow([w, a])
    else:
        s = doc["spec"]
        print(
            f"code: e={s['e']} h={s['h']} modulus={s['modulus_hex']} "
            f"generator={s['generator_hex']} a={s['a_hex']} b={s['b_hex']}"
        )
        print(f"[n, k, delta] = [{wd.n}, {wd.k}, {wd.delta}]")
        print(f"enumerator: {wd.polynomial()}")
        print("rows: " + " ".join(f"{w}:{a}" for w, a in wd.entries))
        print(f"provenance: {wd.provenance}")
        print(
            f"secret sharing: condition {ss.condition_tag} "
            f"applicable={_bool_str(ss.applicable)} ratio_ok={_bool_str(ss.ratio_ok)}"
        )
        if match is not None:
            print(f"oracle: {'match' if match else 'MISMATCH'}")
    return EXIT_MISMATCH if match is False else EXIT_OK


# --- sweep workers (module level so ProcessPoolExecutor can pickle them) ---


def _sum_instance(task: tuple) -> tuple[list[dict], dict]:
    e, modulus, alpha, resolve = task
    field = make_field(e, modulus)
    records = []
    counts = {"checked": 0, "matched": 0, "ambiguous": 0, "mismatched": 0}
    for a in field.nonzero_elements():
        for b in field.elements():
            rec = _sum_record(field, alpha, a, b, resolve, True)
            records.append(rec)
            counts["checked"] += 1
            if not rec["match"]:
                counts["mismatched"] += 1
            elif rec["kind"] == SIGN_AMBIGUOUS:
                counts["ambiguous"] += 1
            else:
                counts["matched"] += 1
    return records, counts


def _code_instance(task: tuple) -> tuple[list[dict], dict]:
    e, modulus, h, paranoid = task
    field = make_field(e, modulus)
    records = []
    counts = {"checked": 0, "matched": 0, "degenerate": 0, "mismatched": 0}
    for a in field.nonzero_elements():
        for b in field.elements():
            spec = CodeSpec(field, h, a, b)
            wd = weight_distribution_theorem(spec)
            ds = build_defining_set(spec)
            ss = secret_sharing_check(spec)
            length_ok = wd.n == ds.n
            pless_ok = pless_check(wd)
            dual_ok = dual_distance_at_least_2(ds)
            ss_sound = ss.ratio_ok or not ss.applicable
            oracle_match = None
            if paranoid:
                oracle_match = distributions_match(
                    wd, weight_distribution_oracle(spec, ds)
                )
            ok = length_ok and pless_ok and dual_ok and ss_sound and oracle_match is not False
            degenerate = wd.delta == 0
            records.append(
                {
                    "e": e,
                    "h": h,
                    "modulus_hex": field.modulus_hex,
                    "generator_hex": field.generator_hex,
                    "a_hex": format(a, "x"),
                    "b_hex": format(b, "x"),
                    "provenance": wd.provenance,
                    "n": wd.n,
                    "k": wd.k,
                    "delta": wd.delta,
                    "length_ok": length_ok,
                    "pless_ok": pless_ok,
                    "dual_ok": dual_ok,
                    "ss_condition": ss.condition_tag,
                    "ss_applicable": ss.applicable,
                    "ss_ratio_ok": ss.ratio_ok,
                    "degenerate": degenerate,
                    "oracle_match": oracle_match,
                    "match": ok,
                }
            )
            counts["checked"] += 1
            if degenerate:
                counts["degenerate"] += 1
            if ok:
                counts["matched"] += 1
            else:
                counts["mismatched"] += 1
    return records, counts


def _legacy_domain(field: Field, alpha: int):
    """(a, b, solution) triples where the superseded branch is defined."""
    d = math.gcd(field.e, alpha)
    if (field.e // d) % 2:
        return
    s = (1 << d) + 1
    for a in field.nonzero_elements():
        if not field.is_power_residue(a, s):
            continue
        for b in field.nonzero_elements():
            sol = solve_linearized(field, alpha, a, field.pow(b, 1 << alpha))
            if sol.solvable:
                yield a, b


def _legacy_instance(task: tuple) -> tuple[list[dict], dict]:
    e, modulus, alpha = task
    field = make_field(e, modulus)
    d = math.gcd(e, alpha)
    records = []
    counts = {"checked": 0, "matched": 0, "ambiguous": 0, "mismatched": 0}
    for a, b in _legacy_domain(field, alpha):
        params = SumParams(field, alpha, a, b)
        legacy = legacy_incorrect_sum(params).value
        corrected = closed_form_sum(params).value
        oracle = brute_force_sum(params)
        records.append(
            {
                "e": e,
                "alpha": alpha,
                "modulus_hex": field.modulus_hex,
                "generator_hex": field.generator_hex,
                "a_hex": format(a, "x"),
                "b_hex": format(b, "x"),
                "tr_nonzero": field.trace_t(a, d) != 0,
                "legacy": legacy,
                "corrected": corrected,
                "oracle": oracle,
                "legacy_match": legacy == oracle,
                "corrected_match": corrected == oracle,
            }
        )
        counts["checked"] += 1
        if legacy == oracle:
            counts["matched"] += 1
        else:
            counts["mismatched"] += 1
    return records, counts


def _run_instances(worker, tasks: list[tuple], jobs: int):
    if jobs <= 1:
        return [worker(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(worker, tasks))


def cmd_sweep(args) -> int:
    erange = _parse_e_range(args.e)
    tasks = []
    if args.kind == "sum":
        for e in erange:
            modulus = int(args.modulus, 16) if args.modulus and len(erange) == 1 else DEFAULT_MODULI[e]
            alphas = [args.alpha] if args.alpha else list(range(1, e))
            tasks += [(e, modulus, alpha, args.resolve_signs) for alpha in alphas]
        worker = _sum_instance
    elif args.kind == "legacy":
        for e in erange:
            modulus = int(args.modulus, 16) if args.modulus and len(erange) == 1 else DEFAULT_MODULI[e]
            alphas = [args.alpha] if args.alpha else list(range(1, e))
            tasks += [(e, modulus, alpha) for alpha in alphas]
        worker = _legacy_instance
    else:
        for e in erange:
            modulus = int(args.modulus, 16) if args.modulus and len(erange) == 1 else DEFAULT_MODULI[e]
            hs = [args.h] if args.h else [h for h in range(1, e) if e % h == 0]
            tasks += [(e, modulus, h, args.paranoid) for h in hs]
        worker = _code_instance

    totals: dict[str, int] = {}
    for records, counts in _run_instances(worker, tasks, args.jobs):
        _emit_records(records, args.format, sys.stdout)
        for key, val in counts.items():
            totals[key] = totals.get(key, 0) + val
    print(
        f"sweep kind={args.kind} " + " ".join(f"{k}={v}" for k, v in totals.items()),
        file=sys.stderr,
    )
    return EXIT_MISMATCH if totals.get("mismatched") else EXIT_OK


def cmd_counterexample(args) -> int:
    field = _field_for(args.e, args.modulus)
    d = math.gcd(field.e, args.alpha)
    if (field.e // d) % 2:
        raise ValueError(
            f"counterexamples need e/gcd(e, alpha) even; got e={field.e}, alpha={args.alpha}"
        )
    rows = []
    for a, b in _legacy_domain(field, args.alpha):
        if field.trace_t(a, d) == 0:
            continue
        params = SumParams(field, args.alpha, a, b)
        rows.append(
            {
                "e": field.e,
                "alpha": args.alpha,
                "modulus_hex": field.modulus_hex,
                "generator_hex": field.generator_hex,
                "a_hex": format(a, "x"),
                "b_hex": format(b, "x"),
                "legacy": legacy_incorrect_sum(params).value,
                "corrected": closed_form_sum(params).value,
                "oracle": brute_force_sum(params),
            }
        )
        if len(rows) >= args.count:
            break
    if not rows:
        print("no counterexamples found in the searched range")
        return EXIT_OK
    if args.format == "json":
        for r in rows:
            print(json.dumps(r))
    elif args.format == "csv":
        _emit_records(rows, "csv", sys.stdout)
    else:
        for r in rows:
            print(
                f"a={r['a_hex']} b={r['b_hex']}: legacy={r['legacy']} "
                f"corrected={r['corrected']} oracle={r['oracle']}"
            )
    bad = [r for r in rows if r["corrected"] != r["oracle"]]
    return EXIT_MISMATCH if bad else EXIT_OK


def cmd_verify(args) -> int:
    erange = _parse_e_range(args.e)
    failed = False
    for e in erange:
        modulus = DEFAULT_MODULI[e]
        sum_tasks = [(e, modulus, alpha, False) for alpha in range(1, e)]
        totals: dict[str, int] = {}
        for _, counts in _run_instances(_sum_instance, sum_tasks, args.jobs):
            for k, v in counts.items():
                totals[k] = totals.get(k, 0) + v
        print(f"sums e={e}: " + " ".join(f"{k}={v}" for k, v in totals.items()))
        failed = failed or bool(totals.get("mismatched"))

        code_tasks = [(e, modulus, h, True) for h in range(1, e) if e % h == 0]
        totals = {}
        for _, counts in _run_instances(_code_instance, code_tasks, args.jobs):
            for k, v in counts.items():
                totals[k] = totals.get(k, 0) + v
        print(f"codes e={e}: " + " ".join(f"{k}={v}" for k, v in totals.items()))
        failed = failed or bool(totals.get("mismatched"))
    print("VERIFY: " + ("FAILED" if failed else "OK"))
    return EXIT_MISMATCH if failed else EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="weilcodes", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, alpha=False, h=False):
        p.add_argument("--e", type=int, required=True, help="extension degree")
        if alpha:
            p.add_argument("--alpha", type=int, required=True, help="exponent parameter")
        if h:
            p.add_argument("--h", type=int, required=True, help="proper divisor of e")
        p.add_argument("--modulus", help="modulus as hex (default: pinned table)")
        p.add_argument("--a", required=True, help="element a: hex or g^k")
        p.add_argument("--b", default="0", help="element b: hex or g^k (default 0)")

    p = sub.add_parser("sum", help="evaluate one character sum")
    common(p, alpha=True)
    p.add_argument("--format", choices=["pretty", "json", "csv"], default="pretty")
    p.add_argument("--resolve-signs", action="store_true",
                   help="resolve sign-ambiguous values with the brute-force oracle")
    p.add_argument("--paranoid", action="store_true",
                   help="always run the brute-force oracle and compare")
    p.set_defaults(func=cmd_sum)

    p = sub.add_parser("code", help="build one code and its weight distribution")
    common(p, h=True)
    p.add_argument("--format", choices=["pretty", "json", "csv"], default="pretty")
    p.add_argument("--paranoid", action="store_true",
                   help="also run the counting oracle and compare")
    p.set_defaults(func=cmd_code)

    p = sub.add_parser("sweep", help="sweep parameter ranges, one record per instance")
    p.add_argument("--kind", choices=["sum", "code", "legacy"], required=True)
    p.add_argument("--e", default="4..6", help="degree or range N..M (default 4..6)")
    p.add_argument("--alpha", type=int, help="restrict to one alpha (sum/legacy)")
    p.add_argument("--h", type=int, help="restrict to one h (code)")
    p.add_argument("--modulus", help="modulus as hex (single-degree ranges only)")
    p.add_argument("--format", choices=["jsonl", "csv"], default="jsonl")
    p.add_argument("--resolve-signs", action="store_true")
    p.add_argument("--paranoid", action="store_true",
                   help="code sweeps: also compare against the counting oracle")
    p.add_argument("--jobs", type=int, default=1, help="parallel worker processes")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("counterexample",
                       help="exhibit inputs where the superseded branch value is wrong")
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--alpha", type=int, default=1)
    p.add_argument("--modulus", help="modulus as hex")
    p.add_argument("--count", type=int, default=5)
    p.add_argument("--format", choices=["pretty", "json", "csv"], default="pretty")
    p.set_defaults(func=cmd_counterexample)

    p = sub.add_parser("verify", help="run the full verification battery")
    p.add_argument("--e", default="4..6", help="degree or range N..M (default 4..6)")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except CostRefusal as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_COST
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    try:
        code = main()
        sys.stdout.flush()
    except BrokenPipeError:
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        code = EXIT_OK
    sys.exit(code)


if __name__ == "__main__":
    entry()
