"""Command-line surface: inspection, computation, and a golden-fixture
verification runner.

Usage errors exit with status 2 (argparse); computation errors print a
structured message and exit 1; ``verify`` exits nonzero when any computed
value disagrees with a fixture, printing the expected/computed pair.
"""

from __future__ import annotations

import argparse
import json
import sys

from .bredon import (
    cohomology_mackey,
    homology_mackey,
    identify,
    suspension_homotopy,
)
from .catalog import named
from .chart import golden_page, render_ascii, render_svg, validate_differentials
from .functors import (
    MackeyFunctor,
    check_axioms,
    covering_pairs,
    data_equal,
    expression_functor,
    is_isomorphic,
    match_expression,
)
from .golden import degree_table, slice_table
from .grouplat import canonical_group_name, group
from .inflation import phi_inflate, psi_inflate, q_push
from .repcw import parse_rep, sphere_complex
from .slices import e2_page, r_tower, slice_list, slice_tower


def functor_json(m: MackeyFunctor) -> dict:
    g = m.group()
    levels = {}
    for s in g.subgroups():
        lvl = m.levels[s.name]
        levels[s.name] = {
            "rank": lvl.rank,
            "torsion": list(lvl.invariant_factors),
        }
    res = {}
    tr = {}
    for low, high in covering_pairs(g):
        res[f"{low}<{high}"] = [list(r) for r in m.res[(low, high)].matrix]
        tr[f"{low}<{high}"] = [list(r) for r in m.tr[(low, high)].matrix]
    weyl = {}
    for (sub, elem), h in sorted(m.weyl.items()):
        weyl[f"{sub}:{elem}"] = [list(r) for r in h.matrix]
    return {
        "schema": 1,
        "group": m.group_name,
        "name": m.name,
        "levels": levels,
        "res": res,
        "tr": tr,
        "weyl": weyl,
    }


def print_functor(m: MackeyFunctor, as_json: bool) -> None:
    if as_json:
        print(json.dumps(functor_json(m), indent=2, sort_keys=True))
        return
    g = m.group()
    label = m.name or identify(m) or "(unrecognized)"
    print(f"{label} over {m.group_name}")
    for s in reversed(g.subgroups()):
        print(f"  {s.name:>3}: {m.levels[s.name]}")
    for low, high in covering_pairs(g):
        r = m.res[(low, high)].matrix
        t = m.tr[(low, high)].matrix
        print(f"  res {high}->{low}: {r}   tr {low}->{high}: {t}")
    for (sub, elem), h in sorted(m.weyl.items()):
        print(f"  weyl {sub},{elem}: {h.matrix}")


def _parse_degrees(text: str) -> range:
    if ".." in text:
        a, b = text.split("..")
        return range(int(a), int(b) + 1)
    d = int(text)
    return range(d, d + 1)


def cmd_show(args) -> int:
    m = named(args.group, args.name)
    print_functor(m, args.json)
    return 0


def cmd_inflate(args) -> int:
    src = canonical_group_name(args.src)
    tgt = canonical_group_name(args.to)
    if args.kind == "push":
        big = group(src)
        qm = next(
            big.quotient(n)
            for n in big.subgroups()
            if big.quotient(n).target == tgt and 1 < n.order < big.order
        )
        out = q_push(qm, named(src, args.name))
    else:
        big = group(tgt)
        qm = next(
            big.quotient(n)
            for n in big.subgroups()
            if big.quotient(n).target == src and 1 < n.order < big.order
        )
        f = psi_inflate if args.kind == "psi" else phi_inflate
        out = f(qm, named(src, args.name))
    print_functor(out.with_name(identify(out) or ""), args.json)
    return 0


def _print_graded(results, as_json: bool) -> None:
    if as_json:
        payload = {
            str(n): functor_json(f) for n, (f, nm) in sorted(results.items())
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
        return
    for n in sorted(results):
        f, nm = results[n]
        if not f.is_trivial():
            print(f"  {n:>3}: {nm or '(unrecognized) ' + str(f)}")


def cmd_homology(args) -> int:
    coeff = expression_functor(canonical_group_name(args.group), args.coeff)
    results = suspension_homotopy(
        canonical_group_name(args.group), args.rep, coeff,
        _parse_degrees(args.degrees),
    )
    _print_graded(results, args.json)
    return 0


def cmd_cohomology(args) -> int:
    gname = canonical_group_name(args.group)
    coeff = expression_functor(gname, args.coeff)
    c = sphere_complex(parse_rep(gname, args.rep))
    results = {
        n: cohomology_mackey(c, coeff, n) for n in _parse_degrees(args.degrees)
    }
    _print_graded(results, args.json)
    return 0


def cmd_slices(args) -> int:
    gname = canonical_group_name(args.group)
    slices = slice_list(gname, args.n)
    if args.json:
        print(json.dumps([
            {"t": d.t, "suspension": d.suspension(), "coefficient": d.coeff}
            for d in slices
        ], indent=2))
        return 0
    for d in slices:
        print(f"  P^{d.t} = {d.expression()}")
    if args.tower and gname == "Q8" and args.n in (5, 6, 7, 8):
        print("tower stages:")
        for layer, stage in slice_tower(gname, args.n).layers:
            print(f"  P^{layer.t} = {layer.expression()}   over {stage}")
    return 0


def cmd_tower(args) -> int:
    if args.r is not None:
        tower = r_tower(args.r, args.j)
    else:
        tower = slice_tower(canonical_group_name(args.group), args.n)
    for layer, stage in tower.layers:
        suffix = f"   over {stage}" if stage else ""
        print(f"  P^{layer.t} = {layer.expression()}{suffix}")
    return 0


def cmd_e2(args) -> int:
    page = e2_page(canonical_group_name(args.group), args.n)
    if args.json:
        payload = {
            f"{x},{y}": names_ for (x, y), names_ in sorted(page.entries.items())
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
        return 0
    print(render_ascii(page))
    return 0


def cmd_chart(args) -> int:
    page = golden_page(canonical_group_name(args.group), args.n)
    if args.ascii or not args.out:
        print(render_ascii(page))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(render_svg(page))
        print(f"wrote {args.out}")
    return 0


# ---------------------------------------------------------------------------
# verification suites


def _verify_table(gname, filename, keys, degrees_of, failures):
    table = degree_table(filename)
    for key in keys:
        rep, coeff_name = key.split()
        coeff = expression_functor(gname, coeff_name)
        row = table[key]
        got = suspension_homotopy(gname, rep, coeff, degrees_of(row))
        for n in degrees_of(row):
            want = row.get(n, "0")
            f, nm = got[n]
            if not match_expression(f, "" if want == "0" else want):
                failures.append(
                    f"{filename}:{key} degree {n}: expected {want}, "
                    f"computed {nm or f}"
                )
                print(f"  MISMATCH {key} @ {n}: expected {want}, got {nm or f}")


def _row_span(row):
    lo, hi = min(row), max(row)
    return range(lo, hi + 1)


def suite_axioms(args, failures):
    from .catalog import catalog

    for gname in ("T", "C2", "C4", "K4", "Q8"):
        for nm, f in sorted(catalog(gname).items()):
            report = check_axioms(f)
            if not report.ok:
                failures.append(f"axioms {gname}:{nm}: {report.failures[:3]}")


def suite_sphere_h(args, failures):
    from .repcw import unit_sphere_complex

    table = degree_table("sphere_h.txt")
    c = unit_sphere_complex("Q8", "H")
    coeff = named("Q8", "Z")
    for n in range(0, 4):
        f, nm = homology_mackey(c, coeff, n)
        want = table["S(H) homology"].get(n, "0")
        if (nm or "0") != want:
            failures.append(f"S(H) homology @ {n}: expected {want}, got {nm}")
    for n in range(0, 4):
        f, nm = cohomology_mackey(c, coeff, n)
        want = table["S(H) cohomology"].get(n, "0")
        if (nm or "0") != want:
            failures.append(f"S(H) cohomology @ {n}: expected {want}, got {nm}")


def suite_h_powers(args, failures):
    keys = [f"{k}H Z".replace("1H", "H") for k in range(1, args.max_k + 1)]
    _verify_table("Q8", "qrho_grid.txt", keys, _row_span, failures)


def suite_qrho_grid(args, failures):
    keys = [("rhoQ Z" if k == 1 else f"{k}rhoQ Z") for k in range(1, args.max_k + 1)]
    _verify_table("Q8", "qrho_grid.txt", keys, _row_span, failures)


def suite_neg_qrho(args, failures):
    keys = [
        ("-rhoQ Z" if k == 1 else f"-{k}rhoQ Z")
        for k in range(1, min(args.max_k, 2) + 1)
    ]
    _verify_table("Q8", "qrho_grid.txt", keys,
                  lambda row: range(min(row), 0), failures)


def suite_krho_grid(args, failures):
    keys = [
        ("rhoK Z" if k == 1 else f"{k}rhoK Z")
        for k in range(1, min(args.max_k + 1, 4))
    ]
    _verify_table("K4", "krho_grid.txt", keys, _row_span, failures)


def suite_krho_mod2(args, failures):
    keys = ["rhoK F", "2rhoK F"][: args.max_k]
    _verify_table("K4", "krho_mod2_grid.txt", keys, _row_span, failures)


def suite_aux(args, failures):
    table = degree_table("aux_mixed.txt")
    _verify_table("Q8", "aux_mixed.txt", sorted(table), _row_span, failures)


def suite_inflation(args, failures):
    from .catalog import catalog

    q8 = group("Q8")
    qm = q8.quotient(q8.subgroup("Z"))
    pairs = [("Z(2,1)", "Z(3,2)"), ("Z*", "Z(3,1)")]
    for src, tgt in pairs:
        if not data_equal(psi_inflate(qm, named("K4", src)), named("Q8", tgt)):
            failures.append(f"module inflation of {src} is not {tgt}")
    for nm, f in sorted(catalog("K4").items()):
        if not f.is_zmodule:
            continue
        if not data_equal(q_push(qm, psi_inflate(qm, f)), f):
            failures.append(f"push after inflation is not the identity on {nm}")
        if f.levels["e"].is_trivial:
            if not is_isomorphic(psi_inflate(qm, f), phi_inflate(qm, f)):
                failures.append(f"inflations disagree on {nm}")


def suite_ses(args, failures):
    from .catalog import seven_sequences
    from .functors import ses_check

    for idx, (i, p) in enumerate(seven_sequences(), start=1):
        if not ses_check(i, p):
            failures.append(f"short exact sequence {idx} fails")


def suite_slices(args, failures):
    table = slice_table("slices_q8.txt")
    for n in sorted(table):
        got = sorted((d.t, d.shift, d.rep, d.coeff) for d in slice_list("Q8", n))
        if got != sorted(table[n]):
            failures.append(f"slice list over Q8 at n={n} differs")
    table = slice_table("slices_c4.txt")
    for n in sorted(table):
        got = sorted((d.t, d.shift, d.rep, d.coeff) for d in slice_list("C4", n))
        if got != sorted(table[n]):
            failures.append(f"slice list over C4 at n={n} differs")


def suite_slice_homotopy(args, failures):
    table = degree_table("slice_homotopy.txt")
    keys = [
        k for k in sorted(table)
        if _rho_power(k) <= args.max_j
    ]
    _verify_table("Q8", "slice_homotopy.txt", keys, _row_span, failures)


def _rho_power(key: str) -> int:
    rep = key.split()[0]
    for tok in rep.split("+"):
        if tok.endswith("rhoQ"):
            head = tok[: -len("rhoQ")]
            return int(head) if head else 1
    return 0


def suite_charts(args, failures):
    for n in range(0, 9):
        page = e2_page("Q8", n)
        want = golden_page("Q8", n)
        gold = {}
        for (x, y), names_ in want.entries.items():
            keep = [
                nm for i, nm in enumerate(names_, start=1)
                if "misprint" not in want.flags.get((x, y, i), set())
            ]
            if keep:
                gold[(x, y)] = sorted(keep)
        comp = {k: sorted(v) for k, v in page.entries.items()}
        if comp != gold:
            for key in sorted(set(comp) | set(gold)):
                if comp.get(key) != gold.get(key):
                    failures.append(
                        f"page n={n} cell {key}: chart {gold.get(key)}, "
                        f"computed {comp.get(key)}"
                    )
    for n in range(0, 13):
        report = validate_differentials(golden_page("Q8", n))
        if not report.ok:
            failures.append(f"differential pattern n={n}: {report.violations}")


SUITES = {
    "axioms": suite_axioms,
    "sphere-h": suite_sphere_h,
    "h-powers": suite_h_powers,
    "qrho-grid": suite_qrho_grid,
    "neg-qrho": suite_neg_qrho,
    "krho-grid": suite_krho_grid,
    "krho-mod2-grid": suite_krho_mod2,
    "aux": suite_aux,
    "inflation": suite_inflation,
    "ses": suite_ses,
    "slices": suite_slices,
    "slice-homotopy": suite_slice_homotopy,
    "charts": suite_charts,
}


def cmd_verify(args) -> int:
    chosen = [args.suite] if args.suite else list(SUITES)
    any_fail = False
    for name in chosen:
        if name not in SUITES:
            print(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
            return 2
        failures: list[str] = []
        SUITES[name](args, failures)
        status = "ok" if not failures else "FAIL"
        print(f"{status} {name}" + (f" ({len(failures)} mismatches)" if failures else ""))
        for f in failures:
            print(f"    {f}")
        any_fail = any_fail or bool(failures)
    return 1 if any_fail else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="mackey",
        description="Exact Mackey-functor homology of representation "
        "spheres, slice data, and spectral-sequence charts.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("show", help="display a named Mackey functor")
    s.add_argument("--group", required=True)
    s.add_argument("--name", required=True)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_show)

    s = sub.add_parser("inflate", help="inflate or push along a quotient")
    s.add_argument("--kind", choices=("psi", "phi", "push"), required=True)
    s.add_argument("--from", dest="src", required=True)
    s.add_argument("--to", required=True)
    s.add_argument("--name", required=True)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_inflate)

    s = sub.add_parser("homology", help="homotopy of a suspension")
    s.add_argument("--group", required=True)
    s.add_argument("--rep", required=True)
    s.add_argument("--coeff", default="Z")
    s.add_argument("--degrees", default="0..8")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_homology)

    s = sub.add_parser("cohomology", help="cohomology of a sphere complex")
    s.add_argument("--group", required=True)
    s.add_argument("--rep", required=True)
    s.add_argument("--coeff", default="Z")
    s.add_argument("--degrees", default="0..8")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_cohomology)

    s = sub.add_parser("slices", help="slice list of an integer suspension")
    s.add_argument("--group", required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--tower", action="store_true")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_slices)

    s = sub.add_parser("tower", help="slice towers")
    s.add_argument("--group", default="q8")
    s.add_argument("--n", type=int)
    s.add_argument("--r", type=int)
    s.add_argument("--j", type=int, default=1)
    s.set_defaults(func=cmd_tower)

    s = sub.add_parser("e2", help="compute a spectral-sequence page")
    s.add_argument("--group", required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_e2)

    s = sub.add_parser("chart", help="render a recorded chart")
    s.add_argument("--group", required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--out")
    s.add_argument("--ascii", action="store_true")
    s.set_defaults(func=cmd_chart)

    s = sub.add_parser("verify", help="run golden-fixture suites")
    s.add_argument("--suite")
    s.add_argument("--max-k", type=int, default=2)
    s.add_argument("--max-j", type=int, default=1)
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BrokenPipeError:
        return 0
    except Exception as exc:  # computation errors exit 1, structured
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
