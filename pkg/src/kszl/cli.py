"""Command-line front end.

Every command prints either a short human-readable summary or, with
``--json``, a report following the ``kszl-report/1`` schema.  Exit codes:
0 success, 1 negative verdict, 2 input error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import shlex
import sys
import time

from kszl import __version__
from kszl.constructions import (
    dual_of_square_zero_extension_check,
    localize_z2_degree0,
    ore_extension,
    quadratic_dual,
    trivial_extension,
    zhang_twist,
)
from kszl.engine import DEFAULT_MAX_DEGREE, DEFAULT_WORD_BUDGET, truncate
from kszl.errors import BudgetError, CheckFailed, InputError, UnknownAlgebra
from kszl.exactcore import format_scalar
from kszl.morphisms import frobenius_data, invert, nakayama_regular, verify_iso, verify_map
from kszl.presentation import (
    format_linear,
    format_relation,
    fresh_name,
    identity_map,
    minus_one,
    parse_file,
    print_map,
    print_presentation,
)
from kszl.presentation.dsl import format_poly
from kszl.resolution import DEFAULT_HOMOLOGICAL, betti_table, koszul_certificate, syzygy_presentation
from kszl import skew3

SCHEMA = "kszl-report/1"

EXIT_OK, EXIT_VERDICT, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class Outcome:
    """What a command hands back to the dispatcher."""

    def __init__(self, results, text, verdicts=(), ok=True):
        self.results = results
        self.text = text
        self.verdicts = list(verdicts)
        self.ok = ok


def _verdict(name, value, window):
    return {"name": name, "value": value, "window": window}


# serialisation helpers

def _presentation_json(P):
    return {
        "name": P.name,
        "field": P.field.describe(),
        "generators": list(P.generators),
        "relations": [format_relation(P, r) for r in P.relations],
        "dim_relations": P.dim_relations,
    }


def _map_json(f):
    return {g: format_linear(f.image(j), f.target.generators) for j, g in enumerate(f.source.generators)}


def _trimmed_dims(T):
    """Dims up to the first vanishing degree (all later ones vanish too)."""
    dims = list(T.dims)
    if 0 in dims:
        return dims[: dims.index(0) + 1]
    return dims


def _module_element(T, cols):
    """Format {generator k: {word: coeff}} as a combination of e0, e1, ... times words."""
    width = 1 + max(cols, default=0)
    names = [f"e{k}" for k in range(width)] + list(T.presentation.generators)
    terms = [((k,) + tuple(width + g for g in w), c)
             for k in sorted(cols) for w, c in sorted(cols[k].items())]
    return format_poly(terms, names)


# loading

def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def _load(args):
    text = _read(args.file)
    args._digest_parts.append(text)
    algebras, maps = parse_file(text)
    if not algebras:
        raise UnknownAlgebra(f"{args.file} defines no algebra")
    name = getattr(args, "algebra", None)
    if name is None:
        P = next(iter(algebras.values()))
    elif name in algebras:
        P = algebras[name]
    else:
        raise UnknownAlgebra(f"no algebra named {name!r} in {args.file}")
    return P, algebras, maps


def _get_map(maps, name, file):
    if name not in maps:
        raise InputError(f"no map named {name!r} in {file}")
    return maps[name]


def _automorphism(args, P, maps):
    """The automorphism selected by --map / --nakayama / --minus-one, possibly inverted."""
    if args.nakayama is not None:
        sigma = nakayama_regular(P, args.nakayama, args.word_budget)
    elif args.map:
        sigma = _get_map(maps, args.map, args.file)
        if sigma.source != P or sigma.target != P:
            raise InputError(f"map {sigma.name} is not an endomorphism of {P.name}")
    elif args.minus_one:
        sigma = minus_one(P)
    else:
        sigma = identity_map(P)
    if args.inverse:
        sigma = invert(sigma)
    return sigma


# commands

def cmd_show(args):
    P, algebras, maps = _load(args)
    text = "".join(print_presentation(A) for A in algebras.values())
    text += "".join(print_map(f) for f in maps.values())
    results = {
        "algebras": [_presentation_json(A) for A in algebras.values()],
        "maps": {name: {"source": f.source.name, "target": f.target.name, "images": _map_json(f)}
                 for name, f in maps.items()},
    }
    return Outcome(results, text.rstrip("\n"))


def cmd_hilbert(args):
    P, _, _ = _load(args)
    T = truncate(P, args.max_degree, args.word_budget)
    dims = _trimmed_dims(T)
    finite = T.socle_degree() is not None
    results = {"algebra": P.name, "dims": dims, "finite_dimensional": finite,
               "socle_degree": T.socle_degree()}
    return Outcome(results, f"{P.name}: dims {dims}" + (" (finite)" if finite else ""),
                   [_verdict("finite_dimensional", finite, {"max_degree": args.max_degree})])


def cmd_dual(args):
    P, _, _ = _load(args)
    D = quadratic_dual(P)
    T = truncate(D, args.max_degree, args.word_budget)
    results = {"dual": _presentation_json(D), "dims": _trimmed_dims(T)}
    return Outcome(results, print_presentation(D) + f"dims {results['dims']}")


def _construction(args, build):
    P, _, maps = _load(args)
    sigma = _automorphism(args, P, maps)
    Q = build(P, sigma)
    T = truncate(Q, min(args.max_degree, 6), args.word_budget)
    results = {"automorphism": _map_json(sigma), "result": _presentation_json(Q), "dims": _trimmed_dims(T)}
    return Outcome(results, print_presentation(Q) + f"dims {results['dims']}")


def cmd_twist(args):
    return _construction(args, lambda P, s: zhang_twist(P, s))


def cmd_ore(args):
    return _construction(args, lambda P, s: ore_extension(P, s, args.new or fresh_name(P)))


def cmd_trivext(args):
    return _construction(args, lambda P, s: trivial_extension(P, s, args.new))


def cmd_dual_square_check(args):
    P, _, _ = _load(args)
    rep = dual_of_square_zero_extension_check(P, args.new)
    results = {
        "dual_of_extension": _presentation_json(rep.dual_of_extension),
        "skew_extension_of_dual": _presentation_json(rep.skew_extension_of_dual),
        "extension_identity": rep.extension_identity,
        "polynomial_identity": rep.polynomial_identity,
    }
    text = (f"A^! = S^![z;-1]: {rep.extension_identity}\n"
            f"S[x]^! = S^![z;-1]/(z^2): {rep.polynomial_identity}")
    window = {"degree": 2}
    return Outcome(results, text, [_verdict("extension_identity", rep.extension_identity, window),
                                   _verdict("polynomial_identity", rep.polynomial_identity, window)],
                   rep.passed)


def cmd_localize(args):
    P, _, _ = _load(args)
    D = P if args.given_dual else quadratic_dual(P)
    table, rep = localize_z2_degree0(D, args.word_budget)
    results = {
        "dual": _presentation_json(D),
        "lambda_dims": table.dims,
        "lambda_basis": list(table.labels),
        "pairs_checked": rep.pairs_checked,
        "failures": [list(f) for f in rep.failures],
        "unit_ok": rep.unit_ok,
        "central_square": rep.central_square,
        "normal_generator": rep.normal_generator,
        "associativity_failures": rep.associativity_failures,
    }
    text = (f"Lambda dims {table.dims}; Psi checked on {rep.pairs_checked} pairs, "
            f"{len(rep.failures)} failures; passed: {rep.passed}")
    window = {"socle_degree": rep.socle_degree, "exhaustive": True}
    return Outcome(results, text, [_verdict("psi_isomorphism", rep.passed, window)], rep.passed)


def cmd_nakayama(args):
    P, _, _ = _load(args)
    if args.dim is not None:
        nu = nakayama_regular(P, args.dim, args.word_budget)
        results = {"nu": _map_json(nu)}
        return Outcome(results, print_map(nu).rstrip("\n"),
                       [_verdict("automorphism", True, {"dual_socle_degree": args.dim})])
    T = truncate(P, args.max_degree, args.word_budget)
    data = frobenius_data(T)
    results = {"eta": _map_json(data.nakayama), "socle_degree": data.socle_degree}
    return Outcome(results, print_map(data.nakayama).rstrip("\n"),
                   [_verdict("frobenius", True, {"socle_degree": data.socle_degree})])


def cmd_verify_map(args):
    P, _, maps = _load(args)
    f = _get_map(maps, args.map, args.file)
    g = verify_map(f)
    results = {"map": f.name, "verified": g.verified, "automorphism": g.automorphism}
    return Outcome(results, f"{f.name}: well defined; automorphism: {g.automorphism}",
                   [_verdict("verified", True, {"degree": 2})])


def cmd_verify_iso(args):
    P, _, maps = _load(args)
    f = _get_map(maps, args.map, args.file)
    cert = verify_iso(f)
    inv = {g: format_linear([cert.inverse[i, j] for i in range(cert.inverse.nrows)], f.source.generators)
           for j, g in enumerate(f.target.generators)}
    results = {"map": f.name, "isomorphism": True, "inverse": inv, "replay": cert.replay()}
    return Outcome(results, f"{f.name}: graded isomorphism {f.source.name} -> {f.target.name}",
                   [_verdict("isomorphism", True, {"degree": 2})], cert.replay())


def cmd_betti(args):
    P, _, _ = _load(args)
    T = truncate(P, args.max_degree, args.word_budget)
    b = betti_table(T, args.homological)
    return Outcome(b.to_json(), b.grid())


def cmd_koszul(args):
    P, _, _ = _load(args)
    T = truncate(P, args.max_degree, args.word_budget)
    v = koszul_certificate(T, args.homological)
    results = {
        "verdict": v.describe(),
        "koszul": v.koszul,
        "fails_at": list(v.fails_at) if v.fails_at else None,
        "dual_dims": list(v.dual_dims),
        "dual_dims_match": v.dual_dims_match,
        "hilbert_identity": v.hilbert_identity,
        "betti": v.betti.to_json(),
    }
    text = v.describe() + f"\n{v.betti.grid()}"
    window = v.window
    ok = v.koszul and v.dual_dims_match and v.hilbert_identity
    return Outcome(results, text, [_verdict("koszul", v.koszul, window),
                                   _verdict("dual_dims_match", v.dual_dims_match, window),
                                   _verdict("hilbert_identity", v.hilbert_identity, window)], ok)


def cmd_syzygy(args):
    P, _, _ = _load(args)
    T = truncate(P, args.max_degree, args.word_budget)
    s = syzygy_presentation(T, args.stage)
    results = {
        "stage": s.stage,
        "generator_degrees": list(s.generator_degrees),
        "embedding": [_module_element(T, c) for c in s.embedding],
        "relations": [_module_element(T, c) for c in s.relations],
        "relation_degrees": list(s.relation_degrees),
        "free": s.free,
        "complex_ok": s.complex_ok,
        "minimal": s.minimal,
    }
    lines = [f"Omega^{s.stage} k({s.stage}): generators in degrees {list(s.generator_degrees)}"]
    if s.embedding:
        lines.append("images: " + "; ".join(results["embedding"]))
    lines.append("relations: " + ("; ".join(results["relations"]) if s.relations else "none (free)"))
    window = {"max_degree": args.max_degree}
    return Outcome(results, "\n".join(lines),
                   [_verdict("complex", s.complex_ok, window), _verdict("minimal", s.minimal, window)],
                   s.complex_ok and s.minimal)


def _skew_pair_json(a, b):
    return {"a": [format_scalar(x) for x in a.values], "b": [format_scalar(x) for x in b.values]}


def _classify_rows(path, args):
    text = _read(path)
    args._digest_parts.append(text)
    rows = []
    for lineno, row in enumerate(csv.reader(io.StringIO(text)), 1):
        if not row or row[0].strip().startswith("#"):
            continue
        if len(row) != 6:
            raise InputError(f"{path}:{lineno}: expected 6 columns, got {len(row)}")
        try:
            a = skew3.SkewParams.parse(",".join(row[:3]))
            b = skew3.SkewParams.parse(",".join(row[3:]))
        except InputError as exc:
            raise InputError(f"{path}:{lineno}: {exc}") from exc
        rows.append((a, b))
    return rows


def cmd_skew3(args):
    if args.action == "classify":
        if args.csv:
            pairs = _classify_rows(args.csv, args)
        else:
            if args.a is None or args.b is None:
                raise InputError("skew3 classify needs --a and --b, or --csv")
            pairs = [(skew3.SkewParams.parse(args.a), skew3.SkewParams.parse(args.b))]
        out = []
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["a1", "a2", "a3", "b1", "b2", "b3", "isomorphic", "stable_cm_equivalent", "graded_morita"])
        for a, b in pairs:
            v = skew3.classify(a, b)
            out.append({**_skew_pair_json(a, b), **v.to_json()})
            w.writerow([format_scalar(x) for x in a.values + b.values] + [str(t).lower() for t in v.triple()])
        results = out[0] if len(out) == 1 and not args.csv else {"rows": out}
        return Outcome(results, buf.getvalue().rstrip("\n"))
    if args.action == "cross":
        if args.a is not None and args.b is not None:
            pairs = [(skew3.SkewParams.parse(args.a), skew3.SkewParams.parse(args.b))]
        else:
            pairs = skew3.random_pairs(args.count, args.seed)
        rows, agree = [], 0
        for a, b in pairs:
            r = skew3.cross_validate(a, b, args.max_degree, args.word_budget)
            agree += r.agree
            rows.append({**_skew_pair_json(a, b), "closed_form": r.closed_form.stable_cm_equivalent,
                         "pipeline": r.pipeline_stable_cm, "agree": r.agree,
                         "twisted_a": [format_scalar(x) for x in r.twisted_a],
                         "twisted_b": [format_scalar(x) for x in r.twisted_b]})
        ok = agree == len(pairs)
        results = {"pairs": rows, "agreement": f"{agree}/{len(pairs)}"}
        return Outcome(results, f"agreement {agree}/{len(pairs)}",
                       [_verdict("agreement", ok, {"pairs": len(pairs), "seed": args.seed})], ok)
    # hunt
    res = skew3.find_counterexamples(args.mode, args.budget, args.seed)
    pairs = [{**_skew_pair_json(a, b), **skew3.classify(a, b).to_json()} for a, b in res.pairs]
    results = {"mode": res.mode, "trials": res.trials, "inconclusive": res.inconclusive, "pairs": pairs}
    text = "\n".join(f"a=({','.join(p['a'])}) b=({','.join(p['b'])})" for p in pairs) or "no pair found (inconclusive)"
    return Outcome(results, text,
                   [_verdict("found", not res.inconclusive, {"budget": args.budget, "seed": args.seed})],
                   not res.inconclusive)


def cmd_batch(args):
    text = _read(args.file)
    args._digest_parts.append(text)
    lines, worst, failures = [], 0, 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            argv = shlex.split(line)
        except ValueError as exc:
            argv, code, report = None, EXIT_INPUT, {"error": f"cannot split line: {exc}"}
        else:
            if argv and argv[0] == "kszl":
                argv = argv[1:]
            if argv and argv[0] == "batch":
                code, report = EXIT_INPUT, {"error": "nested batch files are not allowed"}
            else:
                code, report = run(argv + ["--json"], stdout=io.StringIO(), stderr=io.StringIO())
        lines.append({"line": lineno, "command": line, "exit": code, "report": report})
        if code:
            failures += 1
            worst = max(worst, code)
            if args.fail_fast:
                break
    results = {"lines": lines, "summary": {"total": len(lines), "passed": len(lines) - failures,
                                           "failed": failures}}
    text = "\n".join(f"line {e['line']}: exit {e['exit']}  {e['command']}" for e in lines)
    text += ("\n" if lines else "") + f"{len(lines) - failures}/{len(lines)} passed"
    outcome = Outcome(results, text, ok=failures == 0)
    outcome.exit = worst
    return outcome


# parser

def _common(parser, file=True):
    if file:
        parser.add_argument("file", help="DSL file")
        parser.add_argument("--algebra", help="algebra to use (default: the first one in the file)")
    parser.add_argument("--max-degree", type=int, default=DEFAULT_MAX_DEGREE)
    parser.add_argument("--homological", type=int, default=DEFAULT_HOMOLOGICAL)
    parser.add_argument("--word-budget", type=int, default=DEFAULT_WORD_BUDGET)
    parser.add_argument("--json", action="store_true", help="emit a JSON report")
    parser.add_argument("--seed", type=int, default=0)


def _automorphism_options(parser):
    parser.add_argument("--map", help="automorphism defined in the file")
    parser.add_argument("--nakayama", type=int, metavar="D",
                        help="use the Nakayama automorphism (dual socle degree D)")
    parser.add_argument("--minus-one", action="store_true", help="use a -> (-1)^deg a a")
    parser.add_argument("--inverse", action="store_true", help="invert the selected automorphism")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(f"{self.prog}: {message}")


def build_parser():
    p = _Parser(prog="kszl", description="Exact computations with graded quadratic algebras.")
    p.add_argument("--version", action="version", version=f"kszl {__version__}")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    simple = {
        "show": (cmd_show, "print the presentations and maps in a file"),
        "hilbert": (cmd_hilbert, "Hilbert series prefix"),
        "dual": (cmd_dual, "quadratic dual"),
        "betti": (cmd_betti, "Betti table of the trivial module"),
    }
    for name, (fn, help_) in simple.items():
        sp = sub.add_parser(name, help=help_)
        _common(sp)
        sp.set_defaults(func=fn)
    for name, fn, help_ in (("twist", cmd_twist, "Zhang twist"), ("ore", cmd_ore, "Ore extension"),
                            ("trivext", cmd_trivext, "trivial extension A[x;s]/(x^2)")):
        sp = sub.add_parser(name, help=help_)
        _common(sp)
        _automorphism_options(sp)
        sp.add_argument("--new", help="name of the adjoined generator")
        sp.set_defaults(func=fn)
    sp = sub.add_parser("dual-square-check", help="compare duals of square-zero extensions")
    _common(sp)
    sp.add_argument("--new", help="name of the adjoined generator")
    sp.set_defaults(func=cmd_dual_square_check)
    sp = sub.add_parser("localize", help="degree-zero part of the localization at z^2 and the sign map")
    _common(sp)
    sp.add_argument("--given-dual", action="store_true", help="the algebra in the file already is S^!")
    sp.set_defaults(func=cmd_localize)
    sp = sub.add_parser("nakayama", help="Nakayama automorphism")
    _common(sp)
    sp.add_argument("--dim", type=int, help="socle degree of the dual (regular case)")
    sp.set_defaults(func=cmd_nakayama)
    for name, fn in (("verify-map", cmd_verify_map), ("verify-iso", cmd_verify_iso)):
        sp = sub.add_parser(name, help="check a map from the file")
        _common(sp)
        sp.add_argument("--map", required=True)
        sp.set_defaults(func=fn)
    sp = sub.add_parser("koszul", help="bounded Koszulity verdict")
    _common(sp)
    sp.set_defaults(func=cmd_koszul)
    sp = sub.add_parser("syzygy", help="presentation of a syzygy of the trivial module")
    _common(sp)
    sp.add_argument("--stage", type=int, default=1)
    sp.set_defaults(func=cmd_syzygy)

    sp = sub.add_parser("skew3", help="three-variable skew polynomial algebras")
    _common(sp, file=False)
    sp.add_argument("action", choices=("classify", "cross", "hunt"))
    sp.add_argument("--a", help="a1,a2,a3")
    sp.add_argument("--b", help="b1,b2,b3")
    sp.add_argument("--csv", help="CSV file of rows a1,a2,a3,b1,b2,b3 (classify)")
    sp.add_argument("--count", type=int, default=100, help="random pairs for cross")
    sp.add_argument("--mode", choices=("cm_not_iso", "morita_not_cm"), default="cm_not_iso")
    sp.add_argument("--budget", type=int, default=10_000)
    sp.set_defaults(func=cmd_skew3)

    sp = sub.add_parser("batch", help="run one command per line")
    _common(sp)
    sp.add_argument("--fail-fast", action="store_true")
    sp.set_defaults(func=cmd_batch)
    return p


def _digest(parts):
    h = hashlib.sha256()
    for part in parts:
        data = part.encode("utf-8")
        h.update(len(data).to_bytes(8, "big"))
        h.update(data)
    return h.hexdigest()


def run(argv, stdout=None, stderr=None):
    """Run one command; return (exit code, report dict).  Nothing is raised."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    start = time.perf_counter()
    argv = list(argv)
    report = {"schema": SCHEMA, "command": argv, "version": __version__}
    args = None
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise InputError("no command given (try kszl --help)")
        args._digest_parts = [" ".join(a for a in argv if a != "--json")]
        outcome = args.func(args)
        code = getattr(outcome, "exit", None)
        if code is None:
            code = EXIT_OK if outcome.ok else EXIT_VERDICT
        report.update(results=outcome.results, verdicts=outcome.verdicts)
        text = outcome.text
    except InputError as exc:
        code, text = EXIT_INPUT, None
        report["error"] = {"kind": type(exc).__name__, "message": str(exc)}
    except BudgetError as exc:
        code, text = EXIT_BUDGET, None
        report["error"] = {"kind": type(exc).__name__, "message": str(exc)}
    except CheckFailed as exc:
        code, text = EXIT_VERDICT, None
        report["error"] = {"kind": type(exc).__name__, "message": str(exc)}
    except SystemExit as exc:  # --help / --version
        return (exc.code or 0), report
    if "error" in report:
        print(f"kszl: {report['error']['kind']}: {report['error']['message']}", file=stderr)
    parts = getattr(args, "_digest_parts", [" ".join(argv)])
    report["inputs_sha256"] = _digest(parts)
    report["exit"] = code
    report["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    if args is not None and getattr(args, "json", False):
        print(json.dumps(report, sort_keys=True, indent=2, default=str), file=stdout)
    elif text is not None:
        print(text, file=stdout)
    return code, report


def main(argv=None):
    code, _ = run(sys.argv[1:] if argv is None else argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
