"""Command-line pipeline: build -> triangulate -> compute -> report.

Every subcommand reads and writes the plain-text formats of the library
modules.  Results can be cached in a content-addressed directory given by
``--cache-dir`` or ``GCM_CACHE``; a cache hit returns the stored text
unchanged.

Exit codes: 0 success, 1 usage or input error, 2 resource limit,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Callable

from . import bistellar, formulas, graphs, homcomplex, homology, producttri, simplicial, spheres
from .errors import InvariantViolation, ResourceLimitError
from .graphs import Graph
from .homcomplex import HomComplex
from .simplicial import Answer, SimplicialComplex

CACHE_VERSION = "1"

EXIT_OK, EXIT_USAGE, EXIT_RESOURCE, EXIT_INVARIANT = 0, 1, 2, 3

Outputs = dict[str, str]


# ---------------------------------------------------------------- inputs

_GRAPH_KINDS = {
    "cycle": graphs.cycle,
    "complete": graphs.complete,
    "edgeless": graphs.edgeless,
    "cocycle": lambda m: graphs.complement(graphs.cycle(m)),
}


def load_graph(spec: str) -> Graph:
    """A graph file, or a builtin such as ``cycle:5``, ``complete:4``, ``cocycle:7``."""
    if not Path(spec).exists() and ":" in spec:
        kind, _, arg = spec.partition(":")
        if kind not in _GRAPH_KINDS:
            raise ValueError(f"unknown graph kind {kind!r}; use one of {sorted(_GRAPH_KINDS)}")
        return _GRAPH_KINDS[kind](int(arg))
    return graphs.read_graph(spec)


def _read_text(path: str | None) -> str:
    if path is None or path == "-":
        if sys.stdin.isatty():
            raise ValueError("no input file given and stdin is a terminal")
        return sys.stdin.read()
    return Path(path).read_text()


def _looks_like_cells(text: str) -> bool:
    return any(line.startswith("# hom") for line in text.splitlines()[:5])


class Source:
    """A complex given either directly or as a Hom-complex cell file (triangulated on demand)."""

    def __init__(self, args):
        if getattr(args, "cells", None) is not None:
            text, is_cells = _read_text(args.cells), True
        elif getattr(args, "complex", None) is not None:
            text, is_cells = _read_text(args.complex), False
        else:
            text = _read_text(None)
            is_cells = _looks_like_cells(text)
        self.hom: HomComplex | None = homcomplex.parse_cells(text) if is_cells else None
        self._complex = None if is_cells else simplicial.parse_complex(text)

    @property
    def complex(self) -> SimplicialComplex:
        if self._complex is None:
            self._complex = producttri.product_triangulation(self.hom)
        return self._complex

    def canonical(self) -> str:
        if self.hom is not None:
            return homcomplex.format_cells(self.hom)
        return simplicial.format_complex(self._complex)


# ---------------------------------------------------------------- cache + output

def _cache_dir(args) -> Path | None:
    d = args.cache_dir or os.environ.get("GCM_CACHE")
    return Path(d) if d else None


def cached(args, op: str, params: dict, canonical_input: str,
           compute: Callable[[], Outputs]) -> Outputs:
    root = _cache_dir(args)
    if root is None:
        return compute()
    blob = json.dumps({"v": CACHE_VERSION, "op": op, "params": params, "input": canonical_input},
                      sort_keys=True)
    key = hashlib.sha256(blob.encode()).hexdigest()
    path = root / key[:2] / f"{key}.json"
    if path.exists():
        try:
            return json.loads(path.read_text())
        except (OSError, ValueError):
            pass  # unreadable entries are recomputed
    out = compute()
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(f".tmp{os.getpid()}")
    tmp.write_text(json.dumps(out, sort_keys=True))
    tmp.replace(path)
    return out


def emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------- subcommands

def cmd_hom(args) -> int:
    g = load_graph(args.graph)
    mode = "all_cells" if args.all_cells else "facets_only"
    params = {"colors": args.colors, "mode": mode, "name": args.graph}

    def compute():
        hc = homcomplex.hom_to_complete(g, args.colors, mode)
        return {"main": homcomplex.format_cells(hc, graph_name=args.graph)}

    emit(args, cached(args, "hom", params, graphs.format_graph(g), compute)["main"])
    return EXIT_OK


def cmd_tri(args) -> int:
    src = Source(args)
    if src.hom is None:
        raise ValueError("tri needs a cell file (--cells)")

    def compute():
        return {"main": simplicial.format_complex(src.complex),
                "vertex_table": producttri.format_vertex_table(src.hom)}

    out = cached(args, "tri", {}, src.canonical(), compute)
    if args.vertex_table:
        Path(args.vertex_table).write_text(out["vertex_table"])
    emit(args, out["main"])
    return EXIT_OK


def cmd_homology(args) -> int:
    src = Source(args)

    def compute():
        return {"main": homology.homology_integer(src.complex).report()}

    emit(args, cached(args, "homology", {}, src.canonical(), compute)["main"])
    return EXIT_OK


def _parse_coeff(text: str):
    t = text.lower()
    if t in ("int", "z"):
        return "int"
    if t in ("q", "rational"):
        return "rational"
    if t.startswith("p") and t[1:].isdigit():
        return int(t[1:])
    raise ValueError(f"--coeff must be int, q or pN, got {text!r}")


def cmd_betti(args) -> int:
    coeff = _parse_coeff(args.coeff)
    src = Source(args)

    def compute():
        if coeff == "int":
            b = homology.homology_integer(src.complex).betti()
        else:
            b = homology.betti(src.complex, coeff)
        return {"main": f"coeff={args.coeff} betti={','.join(map(str, b))}\n"}

    emit(args, cached(args, "betti", {"coeff": str(coeff)}, src.canonical(), compute)["main"])
    return EXIT_OK


def _reduce_one(job):
    k, seed, budget = job
    log = bistellar.ReductionLog()
    r = bistellar.reduce(k, seed=seed, budget=budget, log=log)
    return tuple(r.f_vector()), seed, simplicial.format_complex(r), log.format()


def cmd_reduce(args) -> int:
    src = Source(args)
    k = src.complex
    params = {"seed": args.seed, "budget": args.budget, "restarts": args.restarts}

    def compute():
        jobs = [(k, args.seed + i, args.budget) for i in range(max(1, args.restarts))]
        if args.threads > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(args.threads) as pool:
                results = list(pool.map(_reduce_one, jobs))
        else:
            results = [_reduce_one(j) for j in jobs]
        f, seed, text, log = min(results)   # schedule independent: ties broken by seed
        return {"main": text, "log": f"# seed={seed} f={','.join(map(str, f))}\n" + log}

    out = cached(args, "reduce", params, src.canonical(), compute)
    if args.log:
        Path(args.log).write_text(out["log"])
    emit(args, out["main"])
    return EXIT_OK


def _links_text(src: Source, seed: int, budget: int) -> str:
    k = src.complex
    lines = ["# vertex\tf-vector\tsphere" + ("\tjoin" if src.hom is not None else "")]
    verdicts = {a: 0 for a in Answer}
    join_ok = 0
    for v in k.vertices:
        lk = simplicial.link(k, (v,)).compact()
        a = simplicial.is_pl_sphere(lk, seed=seed, budget=budget)
        verdicts[a] += 1
        row = f"{v}\t{','.join(map(str, lk.f_vector()))}\t{a.value}"
        if src.hom is not None:
            phi = src.hom.vertices[v]
            poset = homcomplex.vertex_link(src.hom, phi).complex
            via_join = homcomplex.vertex_link_via_join(src.hom.g, src.hom.n_colors, phi)
            same = simplicial.isomorphic(poset.compact(), via_join.compact())
            join_ok += same
            row += "\tok" if same else "\tFAIL"
        lines.append(row)
    summary = (f"# links={len(k.vertices)} spheres={verdicts[Answer.YES]} "
               f"non_spheres={verdicts[Answer.NO]} unknown={verdicts[Answer.UNKNOWN]}")
    if src.hom is not None:
        summary += f" join_ok={join_ok}"
    lines.append(summary)
    return "\n".join(lines) + "\n"


def cmd_links(args) -> int:
    src = Source(args)
    params = {"seed": args.seed, "budget": args.budget}

    def compute():
        return {"main": _links_text(src, args.seed, args.budget)}

    emit(args, cached(args, "links", params, src.canonical(), compute)["main"])
    return EXIT_OK


def cmd_manifold(args) -> int:
    src = Source(args)
    params = {"seed": args.seed, "budget": args.budget}

    def compute():
        a = bistellar.is_manifold(src.complex, seed=args.seed, budget=args.budget)
        return {"main": f"manifold={a.value}\n"}

    emit(args, cached(args, "manifold", params, src.canonical(), compute)["main"])
    return EXIT_OK


def cmd_enumerate(args) -> int:
    params = {"n": args.n, "flag": args.flag, "prime": args.prime}

    def compute():
        found = spheres.enumerate_2spheres(args.n)
        if args.flag:
            found = spheres.flag_filter(found)
        if args.prime:
            found = spheres.prime_filter(found).prime
        out = {"main": spheres.format_index(args.n, found)}
        for i, k in enumerate(found):
            out[f"sphere_{args.n}_{i}.complex"] = simplicial.format_complex(k)
        return out

    out = cached(args, "enumerate", params, "", compute)
    if args.out:
        d = Path(args.out)
        d.mkdir(parents=True, exist_ok=True)
        for name, text in out.items():
            if name != "main":
                (d / name).write_text(text)
        (d / "index.tsv").write_text(out["main"])
    sys.stdout.write(out["main"])
    return EXIT_OK


def _int_range(text: str) -> list[int]:
    lo, _, hi = text.partition("-")
    return list(range(int(lo), int(hi or lo) + 1))


def cmd_formulas(args) -> int:
    rs = _int_range(args.r)
    ss = _int_range(args.s) if args.s else None
    if min(rs) < 1 or (ss is not None and min(ss) < 1):
        raise ValueError("r and s must be positive")
    if ss is None and min(rs) < 2:
        raise ValueError("surface counts need r >= 2")
    emit(args, formulas.formula_table(rs, ss))
    return EXIT_OK


def report_text(src: Source, seed: int, budget: int) -> str:
    lines = []
    if src.hom is not None:
        hc = src.hom
        lines.append(f"vertices={len(hc.vertices)} facets={len(hc.facets)} "
                     f"dimension={hc.dimension} components={len(homcomplex.components(hc))}")
    k = src.complex
    f = k.f_vector()
    if src.hom is None:
        lines.append(f"vertices={f[0] if f else 0} facets={len(k.facets)} dimension={k.dimension}")
    lines.append(f"f={','.join(map(str, f))}")
    lines.append(f"euler={k.euler()}")
    pm = k.is_pure() and k.dimension >= 1 and simplicial.is_closed_pseudomanifold(k)
    lines.append(f"pseudomanifold={str(pm).lower()}")
    lines.append(f"orientable={homology.orientable(k).value if k.dimension >= 1 else 'not_pseudomanifold'}")
    lines.append(f"manifold={bistellar.is_manifold(k, seed=seed, budget=budget).value}")
    return "\n".join(lines) + "\n" + homology.homology_integer(k).report()


def cmd_report(args) -> int:
    src = Source(args)
    params = {"seed": args.seed, "budget": args.budget}

    def compute():
        return {"main": report_text(src, args.seed, args.budget)}

    emit(args, cached(args, "report", params, src.canonical(), compute)["main"])
    return EXIT_OK


# ---------------------------------------------------------------- parser

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="output file (default: stdout)")
    common.add_argument("--cache-dir", help="result cache directory (default: $GCM_CACHE)")
    common.add_argument("--threads", type=int, default=1, help="worker processes")

    complex_in = argparse.ArgumentParser(add_help=False)
    complex_in.add_argument("--complex", help="simplicial complex file ('-' for stdin)")
    complex_in.add_argument("--cells", help="Hom-complex cell file, triangulated on the fly")

    search = argparse.ArgumentParser(add_help=False)
    search.add_argument("--seed", type=int, default=0)
    search.add_argument("--budget", type=int, default=bistellar.DEFAULT_BUDGET,
                        help="bistellar move budget")

    p = _Parser(prog="gcm", description="Graph colouring manifolds: Hom complexes and their invariants.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("hom", parents=[common], help="build Hom(G, K_n) and write its cells")
    s.add_argument("--graph", required=True, help="graph file or builtin (cycle:5, complete:4, cocycle:7)")
    s.add_argument("--colors", type=int, required=True)
    group = s.add_mutually_exclusive_group()
    group.add_argument("--facets", action="store_true", help="maximal cells only (default)")
    group.add_argument("--all-cells", action="store_true")
    s.set_defaults(func=cmd_hom)

    s = sub.add_parser("tri", parents=[common, complex_in], help="staircase triangulation of a cell file")
    s.add_argument("--vertex-table", help="write the index -> colouring table here")
    s.set_defaults(func=cmd_tri)

    s = sub.add_parser("homology", parents=[common, complex_in], help="integer homology")
    s.set_defaults(func=cmd_homology)

    s = sub.add_parser("betti", parents=[common, complex_in], help="Betti numbers")
    s.add_argument("--coeff", default="q", help="int, q, or pN for the field with N elements")
    s.set_defaults(func=cmd_betti)

    s = sub.add_parser("reduce", parents=[common, complex_in, search], help="bistellar reduction")
    s.add_argument("--restarts", type=int, default=1, help="independent runs with seeds seed, seed+1, ...")
    s.add_argument("--log", help="write the move log of the best run here")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("links", parents=[common, complex_in, search], help="vertex links and sphere checks")
    s.set_defaults(func=cmd_links)

    s = sub.add_parser("manifold", parents=[common, complex_in, search], help="manifold check via vertex links")
    s.set_defaults(func=cmd_manifold)

    s = sub.add_parser("enumerate", parents=[common], help="triangulated 2-spheres on n vertices")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--flag", action="store_true", help="keep flag spheres only")
    s.add_argument("--prime", action="store_true", help="keep prime spheres only")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("formulas", parents=[common], help="closed-form counts")
    s.add_argument("--r", default="2-6", help="r or a range lo-hi")
    s.add_argument("--s", help="s or a range; prints f(r,s) instead of surface counts")
    s.set_defaults(func=cmd_formulas)

    s = sub.add_parser("report", parents=[common, complex_in, search],
                       help="f-vector, homology, orientability and manifold status")
    s.set_defaults(func=cmd_report)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE
    try:
        return args.func(args)
    except ResourceLimitError as e:
        print(f"resource limit: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except InvariantViolation as e:
        print(f"invariant violation: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
