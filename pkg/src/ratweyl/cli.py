"""Command-line interface: ``ratweyl <subcommand> [flags]``.

Structured output is JSON on stdout (or the ``--json`` file), graphs go to
the ``--dot`` file, and a short human-readable summary goes to stderr.
Exit codes: 0 success, 1 domain error, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from .atlas import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    build_atlas,
    check_z2_symmetry,
    count_rational,
    coxeter_report,
)
from .decompose import (
    DEFAULT_MAX_ITER,
    DegenerateWitness,
    PreconditionError,
    fixer_witness,
    iterate,
    ortho_cycle_witness,
    sample_generic,
)
from .matgroup import NotGeneric, QMatrix, random_upper_borel, representative
from .rationality import gamma, has_loop, nu_sequence, rationality_certificate, relative_nu
from .roots import ConfigurationError, LieType, build_root_system
from .weyl import diagram_automorphism, from_word, longest_element


class UsageError(Exception):
    pass


class DomainError(Exception):
    def __init__(self, message, payload=None):
        super().__init__(message)
        self.payload = payload


# ------------------------------------------------------------------ serialization

def word_str(word) -> str:
    return " ".join(f"s{i}" for i in word) or "e"


def atlas_json(atlas) -> dict:
    t = atlas.lie_type
    return {
        "type": t.family,
        "rank": t.rank,
        "count": atlas.count,
        "vertices": [list(v.word) for v in atlas.vertices],
        "edges": [[i, j, lab] for i, j, lab in atlas.edges],
    }


def atlas_dot(atlas) -> str:
    lines = [f"graph \"Gamma({atlas.lie_type})\" {{"]
    for k, v in enumerate(atlas.vertices):
        lines.append(f'  v{k} [label="{word_str(v.word)}"];')
    for i, j, lab in atlas.edges:
        lines.append(f'  v{i} -- v{j} [label="{lab}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def gamma_dot(rs, graph) -> str:
    lines = ["digraph Gamma {"]
    for a in graph.vertices:
        lines.append(f'  r{a} [label="{rs.label(a)}"];')
    for a, b in graph.edges:
        lines.append(f"  r{a} -> r{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _labels(rs, idx_set):
    return [rs.label(k) for k in sorted(idx_set)]


# ------------------------------------------------------------------ argument helpers

def _parse_word(text):
    if text is None or text.strip() == "":
        return ()
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"bad word {text!r}; expected comma-separated indices") from None


def _root_system(args):
    if args.type is None or args.rank is None:
        raise UsageError("--type and --rank are required")
    try:
        return build_root_system(LieType(args.type.upper(), args.rank))
    except ConfigurationError as e:
        raise UsageError(str(e)) from None


def _element(rs, text):
    try:
        return from_word(rs, _parse_word(text))
    except ValueError as e:
        raise UsageError(str(e)) from None


def _load_matrix(path):
    try:
        return QMatrix(json.loads(Path(path).read_text()))
    except (OSError, ValueError, TypeError, ZeroDivisionError) as e:
        raise UsageError(f"cannot read matrix {path}: {e}") from None


def _gl_size(args, matrix=None):
    if args.type is not None and args.type.upper() != "A":
        raise UsageError("matrix realizations are available in type A (GL_n) only")
    if matrix is not None:
        if args.rank is not None and args.rank + 1 != matrix.n:
            raise UsageError("--rank does not match the matrix size")
        return matrix.n
    if args.rank is None:
        raise UsageError("--rank (or --matrix) is required")
    return args.rank + 1


def _emit(args, obj):
    text = json.dumps(obj, indent=2) + "\n"
    if args.json:
        Path(args.json).write_text(text)
    else:
        sys.stdout.write(text)


def _say(msg):
    print(msg, file=sys.stderr)


# ------------------------------------------------------------------ subcommands

def cmd_roots(args):
    rs = _root_system(args)
    out = {
        "type": rs.lie_type.family,
        "rank": rs.rank,
        "cartan": [list(r) for r in rs.cartan],
        "positive_roots": [
            {"index": k, "coeffs": list(c), "label": rs.label(k), "height": sum(c)}
            for k, c in enumerate(rs.positive_roots)
        ],
        "highest_root": list(rs.highest_root),
        "epsilon": list(diagram_automorphism(rs)),
        "longest_word": list(longest_element(rs).word),
    }
    _emit(args, out)
    _say(f"{rs.lie_type}: {rs.npos} positive roots, |W| = {rs.order}")


def cmd_rational(args):
    rs = _root_system(args)
    u = _element(rs, args.word)
    cert = rationality_certificate(rs, u)
    loop = has_loop(rs, u)
    out = {
        "type": rs.lie_type.family,
        "rank": rs.rank,
        "word": list(_parse_word(args.word)),
        "reduced_word": list(u.word),
        "length": u.length,
        "rational": cert.rational,
        "nu": [_labels(rs, t) for t in cert.nu.terms],
        "limit": _labels(rs, cert.nu.limit),
        "cycle": None if cert.cycle is None else [rs.label(k) for k in cert.cycle],
        "loop_witness": None if loop is None else rs.label(rs.root_index(loop)),
    }
    if args.dot:
        Path(args.dot).write_text(gamma_dot(rs, gamma(rs, u)))
    _emit(args, out)
    _say(f"{word_str(u.word)} is {'rational' if cert.rational else 'not rational'}")


def cmd_nurel(args):
    rs = _root_system(args)
    u = _element(rs, args.word)
    v = _element(rs, args.vword) if args.vword is not None else longest_element(rs)
    rel = relative_nu(rs, u, v)
    out = {
        "type": rs.lie_type.family,
        "rank": rs.rank,
        "u": list(u.word),
        "v": list(v.word),
        "terms": [_labels(rs, t) for t in rel.terms],
        "cycle_start": rel.cycle_start,
        "empty_limit": rel.empty_limit,
    }
    _emit(args, out)
    _say(f"relative nu-sequence: {len(rel.terms)} distinct terms, empty limit: {rel.empty_limit}")


def cmd_count(args):
    rs = _root_system(args)
    n = count_rational(rs, workers=args.workers, budget=args.budget)
    print(n)
    _say(f"{rs.lie_type}: {n} rational elements out of {rs.order}")


def cmd_atlas(args):
    rs = _root_system(args)
    atlas = build_atlas(rs, budget=args.budget, workers=args.workers, edge_side=args.edge_side)
    out = atlas_json(atlas)
    if args.dot:
        Path(args.dot).write_text(atlas_dot(atlas))
    _emit(args, out)
    ones = sum(1 for v in atlas.valencies if v == 1)
    _say(f"Gamma({rs.lie_type}): {atlas.count} vertices, {len(atlas.edges)} edges, "
         f"{len(atlas.components)} component(s), {ones} of valency 1, "
         f"eps-symmetric: {check_z2_symmetry(atlas)}")


def cmd_coxeter(args):
    rs = _root_system(args)
    rep = coxeter_report(rs)
    out = {
        "type": rs.lie_type.family,
        "rank": rs.rank,
        "coxeter_count": rep["coxeter_count"],
        "rational_coxeter": [list(c.word) for c in rep["rational_coxeter"]],
        "valencies": rep["valencies"],
    }
    _emit(args, out)
    _say(f"{len(rep['rational_coxeter'])} of {rep['coxeter_count']} Coxeter elements are rational")


def _matrix_or_sample(args, sampler):
    if args.matrix:
        m = _load_matrix(args.matrix)
        return m, _gl_size(args, m)
    n = _gl_size(args)
    return sampler(n, random.Random(args.seed)), n


def cmd_decompose(args):
    g, n = _matrix_or_sample(args, sample_generic)
    u_word = _parse_word(args.word)
    v_word = _parse_word(args.vword) if args.vword is not None else None
    rs = build_root_system("A", n - 1)
    for w in (u_word, v_word or ()):
        if any(not 1 <= i <= rs.rank for i in w):
            raise UsageError(f"word {w} has indices outside 1..{rs.rank}")
    trace = iterate(g, u_word, v_word=v_word, max_iter=args.max_iter)
    v = trace.verdict
    out = {
        "verdict": str(v),
        "iterations": v.value if v.kind == "Stabilized" else len(trace.p_terms) - 1,
        "N": trace.solution.n_part.to_json_obj() if trace.solution else None,
        "B": trace.solution.b_part.to_json_obj() if trace.solution else None,
        "u_rep": representative(n, u_word).to_json_obj(),
        "g": g.to_json_obj(),
    }
    _emit(args, out)
    _say(f"u = {word_str(u_word)} in GL_{n}: {v}")
    if v.kind != "Stabilized" and args.strict:
        raise DomainError(str(v))


def cmd_witness(args):
    b, n = _matrix_or_sample(args, random_upper_borel)
    u_word = _parse_word(args.word)
    try:
        if args.kind == "fixer":
            if args.alpha is None:
                raise UsageError("--alpha is required for --kind fixer")
            w = fixer_witness(b, u_word, args.alpha)
        else:
            cycle = _parse_word(args.cycle)
            if not cycle:
                raise UsageError("--cycle is required for --kind ortho")
            w = ortho_cycle_witness(b, u_word, cycle)
    except (PreconditionError, DegenerateWitness) as e:
        raise DomainError(str(e), {"error": type(e).__name__, "message": str(e)}) from None
    _emit(args, {"kind": args.kind, "b": b.to_json_obj(), "u": list(u_word),
                 "n": w.to_json_obj(), "collision": True})
    _say(f"fiber witness found for u = {word_str(u_word)}")


COMMANDS = {
    "roots": cmd_roots,
    "rational": cmd_rational,
    "nurel": cmd_nurel,
    "count": cmd_count,
    "atlas": cmd_atlas,
    "coxeter": cmd_coxeter,
    "decompose": cmd_decompose,
    "witness": cmd_witness,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", choices=list("ABCDEFGabcdefg"), metavar="{A,B,C,D,E,F,G}")
    common.add_argument("--rank", type=int)
    common.add_argument("--word", help="comma-separated simple indices, e.g. 1,2,1")
    common.add_argument("--vword", help="base element v (nurel, decompose)")
    common.add_argument("--matrix", help="JSON matrix file; entries integers or 'p/q' strings")
    common.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER)
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    common.add_argument("--dot", help="write a DOT graph to this path")
    common.add_argument("--json", help="write JSON here instead of stdout")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--edge-side", choices=["left", "right"], default="left")
    common.add_argument("--strict", action="store_true",
                        help="exit 1 when decompose does not stabilize")
    common.add_argument("--kind", choices=["fixer", "ortho"], default="fixer")
    common.add_argument("--alpha", type=int, help="simple index fixed by u (fixer witness)")
    common.add_argument("--cycle", help="comma-separated simple indices (ortho witness)")

    parser = argparse.ArgumentParser(prog="ratweyl", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "roots": "dump a root system",
        "rational": "rationality of one element, with its nu-sequence",
        "nurel": "nu-sequence relative to a base element",
        "count": "number of rational elements of W",
        "atlas": "the graph of rational elements (JSON/DOT)",
        "coxeter": "rational Coxeter elements and their valencies",
        "decompose": "solve g = N B u N^-1 in GL_n",
        "witness": "fiber witness for a non-solution",
    }
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.workers < 1:
        parser.error("--workers must be >= 1")
    if args.max_iter < 0:
        parser.error("--max-iter must be >= 0")
    try:
        COMMANDS[args.command](args)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        _say(f"ratweyl: error: {e}")
        return 2
    except BudgetExceeded as e:
        _say(f"ratweyl: {e}")
        return 1
    except DomainError as e:
        if e.payload is not None:
            sys.stdout.write(json.dumps(e.payload) + "\n")
        _say(f"ratweyl: {e}")
        return 1
    except NotGeneric as e:
        _say(f"ratweyl: NotGeneric: {e}")
        return 1
    except (ValueError, TypeError, OSError) as e:
        # malformed words, matrices, ranks or unreadable files
        parser.print_usage(sys.stderr)
        _say(f"ratweyl: error: {e}")
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
