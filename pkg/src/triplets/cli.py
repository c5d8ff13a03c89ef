"""Command-line entry point.

Exit status: 0 on success / feasible / OK, 1 on an infeasible grading or a
failed check, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from fractions import Fraction

from . import algebra as alg
from . import lie
from . import solver
from .monomials import SignedMonomial
from .verify import Options, SUITES, canonical_dumps, run_suite


class InputError(Exception):
    pass


def _builtin_tables() -> dict:
    return {
        "H": lambda: alg.build_quaternions()[0],
        "O": alg.build_octonions,
        "Cl3": lambda: alg.build_clifford(3),
        "Cl2-": lambda: alg.build_clifford(2, alg.SquareConvention((-1, -1))),
    }


_CLIFFORD = re.compile(r"^Cl([1-8])(-?)$")


def builtin_table(name: str) -> alg.StructureTable | None:
    table = _builtin_tables().get(name)
    if table is not None:
        return table()
    m = _CLIFFORD.match(name)
    if m:
        n = int(m.group(1))
        q = (-1,) * n if m.group(2) else (1,) * n
        return alg.build_clifford(n, alg.SquareConvention(q))
    return None


def read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg} (char {exc.pos})") from exc


def load_table(source: str) -> alg.StructureTable:
    t = builtin_table(source)
    if t is not None:
        return t
    obj = read_json(source)
    try:
        return alg.table_from_json(obj)
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"{source}: invalid structure table: {exc}") from exc


def load_grading(path: str):
    obj = read_json(path)
    try:
        return alg.grading_from_json(obj)
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"{path}: invalid grading: {exc}") from exc


def load_lie(source: str) -> lie.LieStructure:
    if source in lie.BUILTIN_LIE:
        return lie.BUILTIN_LIE[source]()
    obj = read_json(source)
    try:
        return lie.lie_from_json(obj)
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"{source}: invalid Lie structure: {exc}") from exc


def emit_json(obj, out):
    out.write(canonical_dumps(obj) + "\n")


def triplet_text(source: str, t: alg.StructureTable):
    """Cell renderer in signed-monomial notation for H and Clifford builtins, else None."""
    if source == "H":
        images = alg.quaternion_images()
    elif _CLIFFORD.match(source):
        n = int(_CLIFFORD.match(source).group(1))
        images = [SignedMonomial(1, w, n) for w in alg.clifford_words(n)]
    else:
        return None

    def render(cell):
        if not cell:
            return "0"
        parts = []
        for c, k in cell:
            m = images[k] if c > 0 else -images[k]
            text = str(m)
            if abs(c) != 1:
                text = f"{text[0]}{abs(c)}*{text[1:]}"
            parts.append(text)
        return " ".join(parts)

    return render


# subcommands

def cmd_table(args, out):
    t = load_table(args.algebra)
    if args.json:
        emit_json(alg.table_to_json(t), out)
        return 0
    out.write(alg.render_table(t) + "\n")
    if args.triplets:
        render = triplet_text(args.algebra, t)
        if render is None:
            raise InputError("--triplets is only available for H and Clifford builtins")
        out.write("\n" + alg.render_table(t, render) + "\n")
    return 0


def cmd_check_grading(args, out):
    source = args.builtin or args.table or args.algebra
    if source is None:
        raise InputError("check-grading needs an algebra (positional, --builtin or --table)")
    t = load_table(source)
    g = load_grading(args.grading)
    if len(g) != t.dim:
        raise InputError(f"grading has {len(g)} entries, table has dimension {t.dim}")
    v = alg.check_graded_commutative(t, g)
    if args.json:
        emit_json({"ok": v is None, "violation": None if v is None else v.to_json(t)}, out)
    elif v is None:
        out.write("OK\n")
    else:
        out.write(f"VIOLATION {v.kind} at ({t.names[v.i]}, {t.names[v.j]}): expected {_fmt(v.expected)}, found {_fmt(v.found)}\n")
    return 0 if v is None else 1


def _fmt(v):
    return str(v) if not isinstance(v, int) else f"{v:+d}"


def _solve_payload(t, result):
    if isinstance(result, solver.Grading):
        return {"feasible": True, "grading": result.to_json(), "witness": None}
    payload = {
        "feasible": False,
        "grading": None,
        "witness": None if result.witness is None else result.witness.to_json(t),
    }
    if result.witness is None:
        payload["certificate"] = list(result.certificate)
    return payload


def cmd_solve_grading(args, out):
    t = load_table(args.algebra)
    try:
        result = solver.solve_grading(t)
    except solver.UnsupportedTable as exc:
        raise InputError(f"UNSUPPORTED_TABLE: {exc}") from exc
    payload = _solve_payload(t, result)
    if args.oracle:
        found = {}
        for m in range(1, args.max_width + 1):
            g = solver.exhaustive_grading_search(t, m)
            found[str(m)] = None if g is None else g.to_json()
        payload["oracle"] = found
    if args.json:
        emit_json(payload, out)
    elif payload["feasible"]:
        g = result
        out.write(f"FEASIBLE: grading of width {g.width}\n")
        for name, vec in zip(t.names, g.grades):
            out.write(f"  sigma({name}) = {vec}\n")
        out.write("parity matrix:\n")
        for row in solver.parity_matrix_of(g):
            out.write("  " + " ".join(map(str, row)) + "\n")
    else:
        out.write("INFEASIBLE\n")
        if result.witness is not None:
            w = result.witness
            out.write(f"  witness: l1={t.names[w.l1]} l2={t.names[w.l2]} l3={t.names[w.l3]} l4={t.names[w.l4]}\n")
            out.write(f"  {w.chain(t)}\n")
        else:
            out.write("  contradictory constraints (sum reads 0 = 1):\n")
            for line in result.certificate:
                out.write(f"    {line}\n")
    if args.oracle and not args.json:
        for m, g in payload["oracle"].items():
            out.write(f"brute force m={m}: {'found' if g else 'NONE'}\n")
    return 0 if payload["feasible"] else 1


def cmd_obstruct(args, out):
    t = load_table(args.algebra)
    try:
        result = solver.solve_grading(t)
    except solver.UnsupportedTable as exc:
        raise InputError(f"UNSUPPORTED_TABLE: {exc}") from exc
    if isinstance(result, solver.Grading):
        if args.json:
            emit_json({"obstructed": False, "witness": None}, out)
        else:
            out.write("no obstruction: the table admits a grading\n")
        return 0
    w = result.witness
    verified = w is not None and solver.verify_witness(t, w)
    if args.json:
        emit_json({
            "certificate": list(result.certificate),
            "obstructed": True,
            "verified": verified,
            "witness": None if w is None else w.to_json(t),
        }, out)
    else:
        if w is not None:
            out.write(f"OBSTRUCTION l1={t.names[w.l1]} l2={t.names[w.l2]} l3={t.names[w.l3]} l4={t.names[w.l4]}"
                      f" ({'re-verified' if verified else 'NOT verified'})\n  {w.chain(t)}\n")
        for line in result.certificate:
            out.write(f"  {line}\n")
    return 1


def cmd_double(args, out):
    t = load_table(args.algebra)
    inv = alg.Involution.standard(t.dim)
    try:
        gamma = Fraction(args.gamma)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad --gamma: {args.gamma}") from exc
    doubled, _ = alg.cayley_dickson_double(t, inv, gamma)
    if args.json:
        emit_json(alg.table_to_json(doubled), out)
    else:
        out.write(alg.render_table(doubled) + "\n")
    return 0


def cmd_quaternionize(args, out):
    s = load_lie(args.lie)
    problem = lie.validate_lie(s)
    if problem is not None:
        if args.json:
            emit_json({"ok": False, "violation": problem.describe(s)}, out)
        else:
            out.write(f"input is not a Lie algebra: {problem.describe(s)}\n")
        return 1
    q = lie.quaternionize(s)
    checks = {
        "graded_antisymmetry": lie.check_antisymmetry(q),
        "graded_jacobi": lie.check_graded_jacobi(q),
        "grading_linearity": lie.check_grading_linearity(q),
    }
    rng = random.Random(args.seed)
    seeds = [{i: 1} for i in range(q.dim)] + [lie.random_rational_vector(rng, q.dim) for _ in range(args.samples)]
    closure_dims = sorted({len(lie.ideal_closure(q, seed)) for seed in seeds})
    center_dim = len(lie.center(q))
    ok = all(v is None for v in checks.values())
    if args.json:
        emit_json({
            "checks": {k: (None if v is None else v.describe(q)) for k, v in checks.items()},
            "ok": ok,
            "simplicity_evidence": {
                "center_dim": center_dim,
                "closure_dims": closure_dims,
                "seeds": len(seeds),
            },
            "structure": lie.lie_to_json(q),
        }, out)
    else:
        out.write(f"quaternionized algebra: dimension {q.dim}\n")
        for k, v in checks.items():
            out.write(f"  {k}: {'OK' if v is None else v.describe(q)}\n")
        out.write(f"  center dimension: {center_dim}\n")
        out.write(f"  ideal closure dimensions over {len(seeds)} seeds: {closure_dims}\n")
    return 0 if ok else 1


def cmd_verify(args, out):
    results = run_suite(args.suite, Options(seed=args.seed, max_width=args.max_width))
    if args.json:
        emit_json([{"check": r.name, "detail": r.detail, "ok": r.ok, "suite": r.suite} for r in results], out)
    else:
        for r in results:
            out.write(r.line() + "\n")
    return 0 if all(r.ok for r in results) else 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--max-width", type=int, default=4, help="width cap for the brute-force grading oracle")
    common.add_argument("--seed", type=int, default=0, help="seed for pseudorandom sampling checks")

    p = _Parser(prog="triplets", description="Graded-commutative quaternions and friends.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    t = sub.add_parser("table", parents=[common], help="print a multiplication table")
    t.add_argument("algebra", help="builtin (H, O, Cl3, Cl2-, ClN, ClN-) or table JSON path")
    t.add_argument("--triplets", action="store_true", help="also show cells as signed monomials")
    t.set_defaults(func=cmd_table)

    c = sub.add_parser("check-grading", parents=[common], help="check a grading against a table")
    c.add_argument("algebra", nargs="?", help="builtin name or table JSON path")
    c.add_argument("--builtin", help="builtin algebra name")
    c.add_argument("--table", help="table JSON path")
    c.add_argument("--grading", required=True, help="grading JSON path")
    c.set_defaults(func=cmd_check_grading)

    s = sub.add_parser("solve-grading", parents=[common], help="find a Z_2^m grading or an obstruction")
    s.add_argument("algebra")
    s.add_argument("--oracle", action="store_true", help="also run the brute-force search for m = 1..max-width")
    s.set_defaults(func=cmd_solve_grading)

    o = sub.add_parser("obstruct", parents=[common], help="extract an obstruction witness")
    o.add_argument("algebra")
    o.set_defaults(func=cmd_obstruct)

    d = sub.add_parser("double", parents=[common], help="Cayley-Dickson double of a table")
    d.add_argument("algebra")
    d.add_argument("--gamma", default="-1", help="doubling parameter (rational, default -1)")
    d.set_defaults(func=cmd_double)

    q = sub.add_parser("quaternionize", parents=[common], help="tensor a Lie algebra with H and check it")
    q.add_argument("lie", help="builtin (sl2, so3) or Lie structure JSON path")
    q.add_argument("--samples", type=int, default=50, help="random ideal-closure seeds")
    q.set_defaults(func=cmd_quaternionize)

    v = sub.add_parser("verify", parents=[common], help="run exhaustive invariant suites")
    v.add_argument("suite", choices=["all"] + list(SUITES))
    v.set_defaults(func=cmd_verify)
    return p


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.max_width < 1 or args.max_width > solver.MAX_SEARCH_WIDTH:
        sys.stderr.write(f"triplets: error: --max-width must be in 1..{solver.MAX_SEARCH_WIDTH}\n")
        return 2
    try:
        return args.func(args, out)
    except InputError as exc:
        sys.stderr.write(f"triplets: error: {exc}\n")
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
