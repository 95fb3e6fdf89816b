"""``curvelab`` command line.

Exit codes: 0 success (or "equivalent"), 1 "not equivalent", 2 bad input,
3 failed internal check.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from itertools import combinations

from . import carrousel_geom as geom
from . import probe as probe_mod
from .carrousel_tree import (
    UltrametricError,
    canonical_code,
    carrousel_to_dot,
    carrousel_to_json,
    carrousel_to_text,
    curve_eggers,
    curve_tree,
    eggers_to_dot,
    eggers_to_json,
    eggers_to_text,
    equivalent,
    explain_difference,
)
from .contact import coincidence_exponent, intersection_multiplicity, q_map, verify_ultrametric
from .parsing import read_curve
from .projection import (
    find_generic_direction,
    format_direction,
    is_generic,
    project,
    read_space_curve,
)
from .puiseux import (
    CurveError,
    InvariantError,
    characteristic_exponents,
    essential_exponents,
    render_branch,
    render_curve,
)
from .scalar import GaussianRational, format_rational
from .splice import (
    bottom_weight_derivation,
    build_splice,
    edge_determinants,
    generic_branch_checks,
    linking_number,
    splice_to_dot,
    splice_to_json,
    splice_to_text,
    stub_checks,
)

EXIT_OK, EXIT_NOT_EQUIVALENT, EXIT_INPUT, EXIT_INVARIANT = 0, 1, 2, 3


class VerifyError(InvariantError):
    pass


def _rats(values) -> list[str]:
    return [format_rational(v) for v in values]


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


# ------------------------------------------------------------ verification


def verify_report(c) -> list[str]:
    """Run every cross-check on ``c``; raises :class:`VerifyError` on failure."""
    lines = []
    failures = []
    qm = q_map(c)
    bad = verify_ultrametric(qm)
    lines.append(f"ultrametric: {'ok' if not bad else f'{len(bad)} violating triples'}")
    if bad:
        failures.append("ultrametric inequality fails")
    d = build_splice(curve_eggers(c, qm))
    for a, b in combinations(range(len(c)), 2):
        lk = linking_number(d, d.arrow_of(a).id, d.arrow_of(b).id)
        im = intersection_multiplicity(c, a, b, qm)
        ok = lk == im
        lines.append(f"linking(arrow {a + 1}, arrow {b + 1}) = {lk}, intersection multiplicity = {im}: "
                     f"{'ok' if ok else 'MISMATCH'}")
        if not ok:
            failures.append(f"linking mismatch for branches {a + 1}, {b + 1}")
    dets = [det for _, det in edge_determinants(d)]
    ok = all(det > 0 for det in dets)
    lines.append(f"edge determinants: {', '.join(map(str, sorted(dets))) or 'none'}: {'ok' if ok else 'NOT POSITIVE'}")
    if not ok:
        failures.append("non-positive edge determinant")
    for stub, branch, lk, im in stub_checks(c, d):
        ok = lk == im
        lines.append(f"stub {stub} vs branch {branch + 1}: linking {lk}, curvette multiplicity {im}: "
                     f"{'ok' if ok else 'MISMATCH'}")
        if not ok:
            failures.append(f"stub {stub} check fails")
    for v in d.nodes():
        if v.id != d.root:
            lines.append(f"bottom weight {v.m_prime} above {v.q[0]}/{v.q[1]}: {bottom_weight_derivation(d, v.id)}")
    for chk in generic_branch_checks(c, d):
        v = d.vertices[chk.node]
        q = f"{v.q[0]}/{v.q[1]}"
        status = "confirmed" if chk.ok else "CONTRADICTED"
        lines.append(
            f"bottom weight {v.m_prime} at {q} {status}: test branch {render_branch(chk.test)} "
            f"meets branch {chk.branch + 1} with multiplicity {chk.multiplicity} = "
            f"{chk.r}*{chk.stub_linking}"
        )
        if not chk.ok:
            failures.append(f"test branch check at {q} fails")
    if failures:
        raise VerifyError("; ".join(failures) + "\n" + "\n".join(lines))
    return lines


# ------------------------------------------------------------ subcommands


def cmd_invariants(args) -> int:
    c = read_curve(args.file)
    qm = q_map(c)
    branches = []
    for b in c.branches:
        branches.append(
            {
                "branch": render_branch(b),
                "multiplicity": b.n,
                "essential_exponents": essential_exponents(b),
                "characteristic_exponents": _rats(characteristic_exponents(b)),
            }
        )
    pairs = []
    for a, b in combinations(range(len(c)), 2):
        pairs.append(
            {
                "branches": [a + 1, b + 1],
                "coincidence": format_rational(coincidence_exponent(c, a, b, qm)),
                "intersection_multiplicity": intersection_multiplicity(c, a, b, qm),
            }
        )
    qvals = _rats(sorted(qm.values()))
    if args.json:
        print(_dump({"multiplicity": c.multiplicity, "branches": branches, "q_values": qvals, "pairs": pairs}))
    else:
        print(f"multiplicity: {c.multiplicity}")
        for i, b in enumerate(branches, start=1):
            print(f"branch {i}: {b['branch']}")
            print(f"  multiplicity: {b['multiplicity']}")
            print(f"  essential exponents: {', '.join(map(str, b['essential_exponents'])) or '-'}")
            print(f"  characteristic exponents: {', '.join(b['characteristic_exponents']) or '-'}")
        print(f"q-values: {', '.join(qvals) or '-'}")
        for p in pairs:
            a, b = p["branches"]
            print(f"branches {a}, {b}: coincidence {p['coincidence']}, "
                  f"intersection multiplicity {p['intersection_multiplicity']}")
    _maybe_verify(args, c)
    return EXIT_OK


def _maybe_verify(args, c):
    if not getattr(args, "verify", False):
        return
    lines = verify_report(c)
    # keep stdout parseable for --json and --dot
    out = sys.stderr if (args.json or getattr(args, "dot", False)) else sys.stdout
    print("verify:", file=out)
    for line in lines:
        print(f"  {line}", file=out)


def _structure(args, build, to_text, to_json, to_dot) -> int:
    c = read_curve(args.file)
    obj = build(c)
    if args.json:
        print(_dump(to_json(obj)))
    elif args.dot:
        sys.stdout.write(to_dot(obj))
    else:
        print(to_text(obj))
    _maybe_verify(args, c)
    return EXIT_OK


def cmd_tree(args) -> int:
    def text(t):
        return carrousel_to_text(t) + f"\ncode: {canonical_code(t)}"

    return _structure(args, curve_tree, text, carrousel_to_json, carrousel_to_dot)


def cmd_eggers(args) -> int:
    return _structure(args, curve_eggers, eggers_to_text, eggers_to_json, eggers_to_dot)


def cmd_splice(args) -> int:
    return _structure(args, lambda c: build_splice(curve_eggers(c)), splice_to_text, splice_to_json, splice_to_dot)


def cmd_equiv(args) -> int:
    c1, c2 = read_curve(args.file), read_curve(args.file2)
    same = equivalent(c1, c2)
    reason = None if same else explain_difference(c1, c2)
    if args.json:
        print(_dump({"equivalent": same, "reason": reason}))
    else:
        print("equivalent" if same else f"not equivalent ({reason})")
    return EXIT_OK if same else EXIT_NOT_EQUIVALENT


def _parse_direction(text: str) -> list[GaussianRational]:
    try:
        return [GaussianRational(Fraction(p.strip())) for p in text.split(",")]
    except ValueError:
        raise ValueError(f"bad direction {text!r}; expected rationals b2,...,bN") from None


def cmd_project(args) -> int:
    sc = read_space_curve(args.file)
    if args.direction is not None:
        d = _parse_direction(args.direction)
    else:
        d = find_generic_direction(sc)
    verdict = is_generic(sc, d)
    pr = project(sc, d)
    code = canonical_code(curve_tree(pr.curve)) if (args.find_generic or args.direction is None) else None
    if args.json:
        out = {"direction": [str(GaussianRational.coerce(v)) for v in d], "verdict": verdict.to_json(),
               "curve": render_curve(pr.curve).splitlines(), "warnings": pr.warnings}
        if code is not None:
            out["topology"] = code
        print(_dump(out))
    else:
        print(f"direction: {format_direction(d)}")
        print(f"verdict: {verdict}")
        print("projected curve:")
        for line in render_curve(pr.curve).splitlines():
            print(f"  {line}")
        if code is not None:
            print(f"topology: {code}")
    for w in pr.warnings:
        print(f"warning: {w}", file=sys.stderr)
    return EXIT_OK


def cmd_carrousel(args) -> int:
    c = read_curve(args.file)
    if args.file2 is None:
        dec = geom.decompose(c)
        print(_dump(geom.decomposition_to_json(dec)) if args.json else geom.inventory_text(dec))
        return EXIT_OK
    c2 = read_curve(args.file2)
    try:
        pairing = geom.align_decompositions(c, c2)
    except geom.NotEquivalentError:
        print(f"not equivalent ({explain_difference(c, c2) or 'no branch matching'})")
        return EXIT_NOT_EQUIVALENT
    ins = [{"curve": s, "branch": b + 1, "exponent": format_rational(e)} for s, b, e in pairing.insertions]
    rows = [(a.id, b.id, a.kind, format_rational(a.rate)) for a, b in pairing.pairs]
    if args.json:
        print(_dump({
            "left": geom.decomposition_to_json(pairing.left),
            "right": geom.decomposition_to_json(pairing.right),
            "pairs": [{"left": a, "right": b} for a, b, _, _ in rows],
            "insertions": ins,
        }))
    else:
        print(geom.inventory_text(pairing.left))
        for i in ins:
            print(f"inserted zero term x^({i['exponent']}) in curve {i['curve']}, branch {i['branch']}")
        for a, b, kind, rate in rows:
            print(f"piece {a} -> piece {b} ({kind}, rate {rate})")
    return EXIT_OK


def _parse_at(text: str) -> list[Fraction]:
    try:
        ts = [Fraction(p.strip()) for p in text.split(",") if p.strip()]
    except ValueError:
        raise ValueError(f"bad --at list {text!r}") from None
    if not ts or any(t <= 0 for t in ts):
        raise ValueError("--at values must be positive")
    return ts


def _svg_path(pattern: str, t: Fraction, many: bool) -> str:
    label = f"{float(t):g}"
    if "{t}" in pattern:
        return pattern.replace("{t}", label)
    if not many:
        return pattern
    stem, dot, ext = pattern.rpartition(".")
    return f"{stem}-{label}.{ext}" if dot else f"{pattern}-{label}"


def cmd_sections(args) -> int:
    c = read_curve(args.file)
    ts = _parse_at(args.at)
    dec = geom.decompose(c)
    report = []
    for t in ts:
        svg = geom.render_section(dec, t)
        problems = geom.check_section(dec, float(t))
        entry = {"t": format_rational(t), "problems": problems}
        if args.svg:
            path = _svg_path(args.svg, t, len(ts) > 1)
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(svg)
            entry["svg"] = path
        pts = [geom.sheet_point(dec, j, float(t)) - dec.shear * float(t) for j in range(len(dec.sheets))]
        entry["points"] = [
            {"branch": s.branch + 1, "k": s.k, "re": probe_mod.fmt6(z.real), "im": probe_mod.fmt6(z.imag)}
            for s, z in zip(dec.sheets, pts)
        ]
        report.append(entry)
        for p in problems:
            print(f"warning: {p}", file=sys.stderr)
    if args.json:
        print(_dump({"sections": report}))
        return EXIT_OK
    for entry in report:
        where = f" -> {entry['svg']}" if "svg" in entry else ""
        print(f"t = {entry['t']}: {len(entry['points'])} points{where}")
        if "svg" not in entry:
            for p in entry["points"]:
                im = p["im"]
                sign, im = ("-", im[1:]) if im.startswith("-") else ("+", im)
                print(f"  branch {p['branch']} sheet {p['k']}: {p['re']} {sign} {im}i")
    return EXIT_OK


def _parse_grid(text: str) -> probe_mod.SampleGrid:
    parts = text.split(",")
    if len(parts) != 3:
        raise ValueError("--grid expects tmin,tmax,count")
    try:
        tmin, tmax, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise ValueError(f"bad --grid {text!r}") from None
    return probe_mod.SampleGrid.geometric(tmax=tmax, tmin=tmin, count=count)


def cmd_probe(args) -> int:
    c = read_curve(args.file)
    grid = _parse_grid(args.grid) if args.grid else probe_mod.DEFAULT_GRID
    qm = q_map(c)
    est = probe_mod.estimate_qmap(c, grid)
    mu = len(qm)
    rows = []
    for j, k in combinations(range(mu), 2):
        rows.append((j, k, float(est.q[j, k]), qm[j, k]))
    err = max((abs(f - float(e)) for _, _, f, e in rows), default=0.0)
    rec_code, rec_err = None, None
    try:
        rec = probe_mod.recover_tree_numeric(probe_mod.sample_grid(c, grid), grid, args.denbound)
        rec_code = canonical_code(rec.tree)
    except UltrametricError as exc:
        rec_err = str(exc)
    sym_code = canonical_code(curve_tree(c, qm))
    stats = None
    if args.file2:
        stats = probe_mod.bilipschitz_ratio_experiment(c, read_curve(args.file2), grid=grid)
    if args.json:
        out = {
            "qmap": [{"j": j, "k": k, "fitted": probe_mod.fmt6(f), "exact": format_rational(e)} for j, k, f, e in rows],
            "max_error": probe_mod.fmt6(err),
            "recovered": rec_code,
            "recovery_error": rec_err,
            "symbolic": sym_code,
            "match": rec_code == sym_code,
        }
        if stats is not None:
            out["ratios"] = stats.to_json()["pairs"]
        print(_dump(out))
    else:
        print("fitted contact exponents:")
        for j, k, f, e in rows:
            print(f"  sheets {j}, {k}: {probe_mod.fmt6(f)} (exact {format_rational(e)})")
        print(f"max error: {probe_mod.fmt6(err)}")
        if rec_code is None:
            print(f"recovered tree: failed ({rec_err})")
        else:
            print(f"recovered tree: {rec_code}")
            print(f"symbolic tree: {'same' if rec_code == sym_code else sym_code}")
        if stats is not None:
            for p in stats.pairs:
                print(
                    f"ratio branch {p.branch[0] + 1}/{p.branch[1] + 1} sheets {p.sheets[0]},{p.sheets[1]} "
                    f"at {format_rational(p.i0)}: fitted {probe_mod.fmt6(p.fitted)}, predicted "
                    f"{probe_mod.fmt6(p.predicted)}, range [{probe_mod.fmt6(p.min)}, {probe_mod.fmt6(p.max)}]"
                )
    return EXIT_OK


# ------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="curvelab", description="Invariants of plane and space curve germs.")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    s = sub.add_parser("invariants", help="multiplicities, exponents, contact data")
    s.add_argument("file")
    s.add_argument("--json", action="store_true")
    s.add_argument("--verify", action="store_true")
    s.set_defaults(func=cmd_invariants)

    for name, func, what in (
        ("tree", cmd_tree, "carrousel tree"),
        ("eggers", cmd_eggers, "Eggers tree"),
        ("splice", cmd_splice, "splice diagram"),
    ):
        s = sub.add_parser(name, help=what)
        s.add_argument("file")
        fmt = s.add_mutually_exclusive_group()
        fmt.add_argument("--json", action="store_true")
        fmt.add_argument("--dot", action="store_true")
        s.add_argument("--verify", action="store_true")
        s.set_defaults(func=func)

    s = sub.add_parser("equiv", help="decide topological equivalence")
    s.add_argument("file")
    s.add_argument("file2")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_equiv)

    s = sub.add_parser("project", help="plane projection of a space curve")
    s.add_argument("file")
    how = s.add_mutually_exclusive_group()
    how.add_argument("--direction", metavar="b2,...,bN")
    how.add_argument("--find-generic", action="store_true")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_project)

    s = sub.add_parser("carrousel", help="carrousel decomposition (and alignment with a second curve)")
    s.add_argument("file")
    s.add_argument("file2", nargs="?")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_carrousel)

    s = sub.add_parser("sections", help="pictures of sections x = t")
    s.add_argument("file")
    s.add_argument("--at", required=True, metavar="LIST")
    s.add_argument("--svg", metavar="PATH")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_sections)

    s = sub.add_parser("probe", help="numerical exponent estimates")
    s.add_argument("file")
    s.add_argument("file2", nargs="?")
    s.add_argument("--grid", metavar="tmin,tmax,count")
    s.add_argument("--denbound", type=int, default=24, metavar="D")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_probe)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (InvariantError, UltrametricError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (CurveError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
