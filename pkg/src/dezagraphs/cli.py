"""Command-line front end; graph6 in, graph6 or text/JSON out.

Exit status: 0 on success, 1 for I/O, argument and graph6 errors, 2 when a
graph fails a precondition of the requested operation.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from typing import Optional

from . import _kernels
from .analysis import decompose, find_special_involutions
from .constructions import (
    SrgWithInvolution,
    conference_srg,
    construction1,
    construction2,
    dual_seidel_switch,
    hoffman_singleton,
    k2_multipartite,
    paley,
    paley_frobenius_involution,
)
from .errors import DezaError, GateError, Graph6Error
from .graph import Graph, Permutation, are_isomorphic, classify, graph6_decode, graph6_encode, is_ddg
from .spectra import eigenvalue_multiplicity, is_walk_regular

BASES = ("paley2", "conference", "hs")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: error: {message}")


def _base(args) -> SrgWithInvolution:
    if args.base == "hs":
        s = hoffman_singleton()
    else:
        if args.q is None:
            raise _UsageError(f"--q is required for base {args.base}")
        s = paley_frobenius_involution(args.q) if args.base == "paley2" else conference_srg(args.q)
    return s.complement() if args.complement else s


def _generate(args) -> Graph:
    fam = args.family
    if fam == "paley":
        if args.q is None:
            raise _UsageError("--q is required for paley")
        return paley(args.q)
    if fam == "k2mp":
        return k2_multipartite(args.parts, args.part_size)
    if fam == "hs" and args.base is None:
        return hoffman_singleton().graph
    if fam in ("paley2", "conference"):
        args.base = fam
        return _base(args).graph
    if args.base is None:
        raise _UsageError(f"--base is required for {fam}")
    s = _base(args)
    if fam == "c1":
        return construction1(s)
    if s.involution is None:
        raise GateError(f"{s.name} carries no special involution")
    if fam == "c2":
        return construction2(s)
    return dual_seidel_switch(s.graph, s.involution)


def _read_graph(source: Optional[str], stdin) -> Graph:
    if source is None or source == "-":
        text = stdin.read()
    elif os.path.exists(source):
        with open(source, "rb") as fh:
            text = fh.read().decode("ascii", errors="replace")
    else:
        text = source
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise Graph6Error("no graph6 input")
    return graph6_decode(lines[0])


def _emit(out, payload, as_json: bool, text: str) -> None:
    if as_json:
        out.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        out.write(text.rstrip("\n") + "\n")


def _cmd_gen(args, out) -> None:
    g = _generate(args)
    if args.shuffle:
        images = list(range(g.n))
        random.Random(args.seed).shuffle(images)
        g = g.permuted(Permutation(tuple(images)))
    g6 = graph6_encode(g).decode("ascii")
    _emit(out, {"graph6": g6, "n": g.n}, args.json, g6)


def _cmd_check(args, out, stdin) -> None:
    g = _read_graph(args.graph, stdin)
    if args.what == "classify":
        rep = classify(g)
        _emit(out, rep.to_dict(), args.json, rep.describe())
    elif args.what == "ddg":
        w = is_ddg(g)
        payload = {"ddg": w.is_ddg, "child": w.child, "class_sizes": list(w.class_sizes), "thin": w.thin}
        text = f"ddg: {str(w.is_ddg).lower()}"
        if w.is_ddg:
            text += f" (child {w.child}, {len(w.class_sizes)} classes, thin: {str(w.thin).lower()})"
        _emit(out, payload, args.json, text)
    elif args.what == "walkreg":
        r = is_walk_regular(g)
        payload = {"walk_regular": r.walk_regular, "first_failure": r.first_failure}
        text = f"walk-regular: {str(r.walk_regular).lower()}"
        if not r.walk_regular:
            text += f" (first failing length {r.first_failure})"
        _emit(out, payload, args.json, text)
    else:
        mult = eigenvalue_multiplicity(g, args.lam)
        _emit(out, {"eigenvalue": args.lam, "multiplicity": mult}, args.json, f"multiplicity of {args.lam}: {mult}")


def _cmd_involutions(args, out, stdin) -> None:
    g = _read_graph(args.graph, stdin)
    found = find_special_involutions(g, mode=args.mode, limit=args.limit, up_to_conjugacy=not args.all)
    rows = [
        {"images": list(p.images), "fixed": len(p.fixed_points()), "transpositions": len(p.transpositions())}
        for p in found
    ]
    lines = [f"involutions: {len(found)}"]
    lines += [f"{r['fixed']} fixed: {' '.join(map(str, r['images']))}" for r in rows]
    _emit(out, {"count": len(found), "involutions": rows}, args.json, "\n".join(lines))


def _cmd_decompose(args, out, stdin) -> None:
    g = _read_graph(args.graph, stdin)
    rep = decompose(g)
    payload = rep.to_dict()
    payload["srg_graph6"] = graph6_encode(rep.srg).decode("ascii")
    passed = sum(rep.lemma_checks.values())
    text = "\n".join(
        [
            f"tag: {rep.tag}",
            "srg: SRG(%d,%d,%d,%d)" % rep.srg_params,
            f"srg graph6: {payload['srg_graph6']}",
            f"involution moves: {2 * len(rep.involution.transpositions())}",
            f"lemma checks: {passed}/{len(rep.lemma_checks)} passed",
            f"reconstructed: {str(rep.reconstructed_equal).lower()}",
        ]
    )
    _emit(out, payload, args.json, text)


def _cmd_iso(args, out, stdin) -> None:
    g1 = _read_graph(args.first, stdin)
    g2 = _read_graph(args.second, stdin)
    r = are_isomorphic(g1, g2)
    payload = {"isomorphic": r.isomorphic, "mapping": list(r.mapping.images) if r.mapping else None}
    _emit(out, payload, args.json, f"isomorphic: {str(r.isomorphic).lower()}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("-o", "--output", help="write output here instead of stdout")
    common.add_argument("--seed", type=int, default=0, help="seed for any randomness (default 0)")
    common.add_argument("--max-n", type=int, help="override size bounds (same as DEZA_MAX_N)")

    p = _Parser(prog="dezagraphs", description="Deza graphs with parameters (n,k,k-1,a) and beta = 1.")
    p.add_argument("--backend", choices=("cython", "python"), help="force a kernel backend")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("gen", parents=[common], help="generate a graph, written as graph6")
    gen.add_argument("family", choices=("paley", "paley2", "conference", "hs", "c1", "c2", "k2mp", "dss"))
    gen.add_argument("--q", type=int, help="field order (paley: r; paley2/conference: q)")
    gen.add_argument("--base", choices=BASES, help="SRG fed to c1, c2 or dss")
    gen.add_argument("--complement", action="store_true", help="complement the base SRG")
    gen.add_argument("--parts", type=int, default=3)
    gen.add_argument("--part-size", type=int, default=2)
    gen.add_argument("--shuffle", action="store_true", help="relabel vertices randomly (uses --seed)")

    chk = sub.add_parser("check", parents=[common], help="classify, DDG, walk-regularity, eigenvalues")
    chk.add_argument("what", choices=("classify", "ddg", "walkreg", "eig"))
    chk.add_argument("graph", nargs="?", help="graph6 file, inline graph6, or - for stdin")
    chk.add_argument("--lam", type=int, default=1, help="integer eigenvalue for eig")

    inv = sub.add_parser("involutions", parents=[common], help="special involutive automorphisms")
    inv.add_argument("graph", nargs="?")
    inv.add_argument("--mode", choices=("non-adjacent", "adjacent"), default="non-adjacent")
    inv.add_argument("--all", action="store_true", help="list every involution, not one per conjugacy class")
    inv.add_argument("--limit", type=int)

    dec = sub.add_parser("decompose", parents=[common], help="recover the SRG and involution")
    dec.add_argument("graph", nargs="?")

    iso = sub.add_parser("iso", parents=[common], help="isomorphism test")
    iso.add_argument("first")
    iso.add_argument("second")
    return p


def run(argv=None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = sys.stdin if stdin is None else stdin
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    try:
        args = build_parser().parse_args(argv)
    except _UsageError as e:
        stderr.write(f"{e}\n")
        return 1
    except SystemExit as e:  # --help
        return int(e.code or 0)
    saved_bound = os.environ.get("DEZA_MAX_N")
    if args.max_n is not None:
        os.environ["DEZA_MAX_N"] = str(args.max_n)
    out = stdout
    try:
        if args.backend is not None:
            _kernels.set_backend(args.backend)
        if args.output:
            out = open(args.output, "w")
        if args.command == "gen":
            _cmd_gen(args, out)
        elif args.command == "check":
            _cmd_check(args, out, stdin)
        elif args.command == "involutions":
            _cmd_involutions(args, out, stdin)
        elif args.command == "decompose":
            _cmd_decompose(args, out, stdin)
        else:
            _cmd_iso(args, out, stdin)
    except (_UsageError, ImportError) as e:
        stderr.write(f"dezagraphs: error: {e}\n")
        return 1
    except (Graph6Error, OSError) as e:
        stderr.write(f"dezagraphs: error: {e}\n")
        return 1
    except GateError as e:
        stderr.write(f"dezagraphs: precondition failed: {e}\n")
        return 2
    except (DezaError, ValueError) as e:
        stderr.write(f"dezagraphs: invalid input: {e}\n")
        return 2
    finally:
        if out is not stdout:
            out.close()
        _kernels.set_backend(None)
        if saved_bound is None:
            os.environ.pop("DEZA_MAX_N", None)
        else:
            os.environ["DEZA_MAX_N"] = saved_bound
    return 0


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
