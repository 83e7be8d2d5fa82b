"""Command-line front end.

    quiverkit hn --quiver kronecker:4 --dim 2,3 --theta 3,-2
    quiverkit chow hilbert --quiver kronecker:4 --dim 2,3 --theta 3,-2 --chi -1,1 --n 12

Every subcommand prints either a short text rendering or, with
``--format json``, a single JSON report.  Exit codes: 0 success, 2 invalid
input, 3 unsupported regime, 4 internal inconsistency.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence

from .errors import ConsistencyError, UnsupportedRegimeError, UsageError
from .hn import HNSystem, betti_numbers
from .quiver import Quiver, QuiverError, make_kronecker, make_three_vertex, quiver_from_document
from .schofield import SubdimensionLattice, is_schur_root, sampled_ext_oracle
from .stability import Stability, has_semistables, has_stables
from .teleman import BundleSpec, quantization_verdict, teleman_bound

EXIT_OK, EXIT_USAGE, EXIT_UNSUPPORTED, EXIT_INCONSISTENT = 0, 2, 3, 4
JSON_SAFE_INT = 2 ** 53


class _Parser(argparse.ArgumentParser):
    # argparse exits on its own; route that through UsageError so main() owns exit codes
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def parse_quiver(source: str) -> Quiver:
    """``kronecker:m``, ``three-vertex:a,b,c`` or a path to a quiver JSON file."""
    kind, sep, arg = source.partition(":")
    if sep and kind in ("kronecker", "three-vertex"):
        try:
            nums = [int(x) for x in arg.split(",")]
        except ValueError:
            raise QuiverError(f"cannot parse quiver spec '{source}'") from None
        if kind == "kronecker" and len(nums) == 1:
            return make_kronecker(nums[0])
        if kind == "three-vertex" and len(nums) == 3:
            return make_three_vertex(*nums)
        raise QuiverError(f"wrong number of parameters in quiver spec '{source}'")
    if not os.path.isfile(source):
        raise QuiverError(f"'{source}' is neither a builtin quiver spec nor a readable file")
    try:
        with open(source, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise QuiverError(f"malformed quiver JSON in '{source}': {exc}") from None
    return quiver_from_document(doc)


def parse_vector(text: Optional[str], what: str) -> Optional[List[int]]:
    if text is None:
        return None
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"{what} must be comma-separated integers, got '{text}'") from None


def jsonable(x: Any) -> Any:
    """Tuples to lists, Fractions to "p/q", ints beyond 2^53 to decimal strings."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return str(x) if abs(x) > JSON_SAFE_INT else x
    if isinstance(x, float):
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    return str(x)


def _fmt(x: Any) -> str:
    if isinstance(x, tuple):
        inner = ", ".join(_fmt(v) for v in x)
        return f"({inner},)" if len(x) == 1 and not isinstance(x[0], int) else f"({inner})"
    if isinstance(x, list):
        return "[" + ", ".join(_fmt(v) for v in x) + "]"
    if isinstance(x, bool):
        return "true" if x else "false"
    return str(x)


def _table(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    widths = [max(len(h), *(len(r[k]) for r in rows)) if rows else len(h) for k, h in enumerate(header)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
    for r in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
    return "\n".join(lines)


class Context:
    """Parsed and validated inputs shared by the subcommand handlers."""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.quiver = parse_quiver(args.quiver)
        self.d = self._vec(args.dim, "--dim")
        self.theta = self._vec(getattr(args, "theta", None), "--theta")
        self.denom = self._vec(getattr(args, "denom", None), "--denom")
        self.chi = self._vec(getattr(args, "chi", None), "--chi")
        if self.d is not None and (any(x < 0 for x in self.d) or not any(self.d)):
            raise QuiverError("--dim must be a nonzero nonnegative dimension vector")
        if self.denom is not None and self.theta is None:
            raise UsageError("--denom needs --theta")
        self.stability = Stability.of(self.theta, self.denom) if self.theta is not None else None
        self._hn: Optional[HNSystem] = None
        self._lattice: Optional[SubdimensionLattice] = None

    def _vec(self, text, flag):
        v = parse_vector(text, flag)
        return None if v is None else self.quiver.vector(v, flag)

    _FLAGS = {"d": "--dim", "stability": "--theta", "chi": "--chi"}

    def need(self, *names: str):
        for name in names:
            if getattr(self, name) is None:
                raise UsageError(f"this command needs {self._FLAGS.get(name, name)}")

    @property
    def lattice(self) -> SubdimensionLattice:
        if self._lattice is None:
            self.need("d")
            self._lattice = SubdimensionLattice(self.quiver, self.d)
        return self._lattice

    @property
    def hn(self) -> HNSystem:
        if self._hn is None:
            self.need("d", "stability")
            self._hn = HNSystem(self.quiver, self.d, self.stability, self.lattice)
        return self._hn

    def echo(self) -> Dict[str, Any]:
        return {
            "quiver": [list(r) for r in self.quiver.arrows],
            "d": self.d,
            "theta": self.theta,
            "denom": self.denom,
            "chi": self.chi,
        }


# -- handlers: each returns (payload, text) ----------------------------------

def cmd_gen_subdims(ctx: Context):
    subs = ctx.lattice.general_subdimensions(ctx.d)
    return subs, "\n".join(_fmt(e) for e in subs)


def cmd_hom_ext(ctx: Context):
    ctx.need("d")
    e = ctx._vec(ctx.args.dim2, "--dim2")
    if e is None or any(x < 0 for x in e):
        raise UsageError("hom-ext needs a nonnegative --dim2")
    Q = ctx.quiver
    lattice = SubdimensionLattice(Q, tuple(max(a, b) for a, b in zip(ctx.d, e)))
    ext = lattice.general_ext(ctx.d, e)
    out: Dict[str, Any] = {"hom": lattice.general_hom(ctx.d, e), "ext": ext, "euler": Q.euler_form(ctx.d, e)}
    text = f"hom = {out['hom']}\next = {ext}\neuler = {out['euler']}"
    if ctx.args.oracle:
        sampled = sampled_ext_oracle(Q, ctx.d, e, trials=ctx.args.trials, seed=ctx.args.seed)
        out["sampled_ext"] = sampled
        text += f"\nsampled ext = {sampled}"
    return out, text


def cmd_canon(ctx: Context):
    dec = ctx.lattice.canonical_decomposition(ctx.d)
    return dec, " + ".join(_fmt(e) for e in dec)


def cmd_is_root(ctx: Context):
    ctx.need("d")
    r = ctx.quiver.is_root(ctx.d)
    return r, _fmt(r)


def cmd_is_schur(ctx: Context):
    ctx.need("d")
    r = is_schur_root(ctx.quiver, ctx.d)
    return r, _fmt(r)


def cmd_stables(ctx: Context):
    ctx.need("d", "stability")
    r = has_stables(ctx.quiver, ctx.d, ctx.stability, ctx.lattice)
    return r, _fmt(r)


def cmd_semistables(ctx: Context):
    ctx.need("d", "stability")
    r = has_semistables(ctx.quiver, ctx.d, ctx.stability, ctx.lattice)
    return r, _fmt(r)


def cmd_hn(ctx: Context):
    types = ctx.hn.proper_types() if ctx.args.proper else ctx.hn.types()
    payload = [{"type": t, "codim": ctx.hn.codim(t)} for t in types]
    text = "\n".join(_fmt(t) for t in types)
    return payload, text


def cmd_betti(ctx: Context):
    b = betti_numbers(ctx.quiver, ctx.d, ctx.stability, ctx.hn)
    return b, _fmt(b)


def cmd_teleman_bounds(ctx: Context):
    rows = [(t, teleman_bound(ctx.quiver, ctx.stability, t)) for t in ctx.hn.proper_types()]
    payload = [{"type": t, "eta": eta} for t, eta in rows]
    return payload, _table(["HN type", "eta"], [[_fmt(t), str(eta)] for t, eta in rows])


def _bundles(ctx: Context) -> List[BundleSpec]:
    if not ctx.args.bundle:
        raise UsageError("at least one --bundle is required")
    return [BundleSpec.parse(b) for b in ctx.args.bundle]


def cmd_teleman_weights(ctx: Context):
    bundles = _bundles(ctx)
    Q, s = ctx.quiver, ctx.stability
    payload, rows = [], []
    for t in ctx.hn.proper_types():
        weights = [b.weights(Q, s, t, ctx.chi) for b in bundles]
        eta = teleman_bound(Q, s, t)
        payload.append({"type": t, "eta": eta, "weights": {str(b): w for b, w in zip(bundles, weights)}})
        rows.append([_fmt(t), str(eta)] + [_fmt(w) for w in weights])
    header = ["HN type", "eta"] + [f"W({b})" for b in bundles]
    return payload, _table(header, rows)


def cmd_quantize(ctx: Context):
    bundles = _bundles(ctx)
    payload, blocks = [], []
    for b in bundles:
        rows, ok = quantization_verdict(ctx.quiver, ctx.d, ctx.stability, b, ctx.chi, ctx.hn)
        payload.append({
            "bundle": str(b),
            "vanishing": ok,
            "strata": [{"type": r.hn_type, "max_weight": r.max_weight, "eta": r.eta, "ok": r.ok} for r in rows],
        })
        table = _table(
            ["HN type", "max weight", "eta", "ok"],
            [[_fmt(r.hn_type), "-" if r.max_weight is None else str(r.max_weight), str(r.eta), _fmt(r.ok)]
             for r in rows],
        )
        blocks.append(f"{b}: higher cohomology vanishes = {_fmt(ok)}\n{table}")
    return payload, "\n\n".join(blocks)


def cmd_chow(ctx: Context):
    from .chow import ModuliContext

    ctx.need("d", "stability")
    if ctx.chi is None:
        raise UsageError("chow needs --chi (a character with chi . d = 1)")
    mc = ModuliContext(ctx.quiver, ctx.d, ctx.stability, ctx.chi)
    what = ctx.args.chow_command
    if what == "dims":
        r = mc.graded_basis().dimensions()
    elif what == "hilbert":
        character = ctx._vec(ctx.args.character, "--character") or ctx.stability.theta
        if ctx.args.n < 1:
            raise UsageError("--n must be positive")
        r = mc.hilbert_values(character, ctx.args.n)
    elif what == "degree":
        r = mc.degree_anticanonical()
    elif what == "gens":
        r = list(mc.ring.names)
    elif what == "index":
        r = mc.index()
    elif what == "picard-rank":
        r = mc.picard_rank()
    else:
        r = mc.dimension()
    return r, _fmt(r)


HANDLERS: Dict[str, Callable[[Context], Any]] = {
    "gen-subdims": cmd_gen_subdims,
    "hom-ext": cmd_hom_ext,
    "canon": cmd_canon,
    "is-root": cmd_is_root,
    "is-schur": cmd_is_schur,
    "stables": cmd_stables,
    "semistables": cmd_semistables,
    "hn": cmd_hn,
    "betti": cmd_betti,
    "teleman-bounds": cmd_teleman_bounds,
    "teleman-weights": cmd_teleman_weights,
    "quantize": cmd_quantize,
    "chow": cmd_chow,
}

CHOW_COMMANDS = ("dims", "hilbert", "degree", "index", "picard-rank", "dimension", "gens")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--quiver", required=True, help="kronecker:m, three-vertex:a,b,c or a JSON file")
    common.add_argument("--dim", help="dimension vector, e.g. 2,3")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--threads", type=int, default=1, help="accepted for compatibility; work is serial")

    stab = _Parser(add_help=False)
    stab.add_argument("--theta", help="stability parameter")
    stab.add_argument("--denom", help="positive slope denominator weights (default all 1)")
    stab.add_argument("--chi", help="normalising character with chi . d = 1")

    parser = _Parser(prog="quiverkit", description="Invariants of quiver moduli spaces.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("gen-subdims", parents=[common], help="general subdimension vectors of d")
    p = sub.add_parser("hom-ext", parents=[common], help="general hom and ext from d to --dim2")
    p.add_argument("--dim2", required=True)
    p.add_argument("--oracle", action="store_true", help="also run the sampling oracle")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=50)
    sub.add_parser("canon", parents=[common], help="canonical decomposition")
    sub.add_parser("is-root", parents=[common])
    sub.add_parser("is-schur", parents=[common])
    sub.add_parser("stables", parents=[common, stab])
    sub.add_parser("semistables", parents=[common, stab])
    p = sub.add_parser("hn", parents=[common, stab], help="Harder-Narasimhan types")
    p.add_argument("--proper", action="store_true", help="omit the trivial type")
    sub.add_parser("betti", parents=[common, stab])
    sub.add_parser("teleman-bounds", parents=[common, stab])
    for name in ("teleman-weights", "quantize"):
        p = sub.add_parser(name, parents=[common, stab])
        p.add_argument("--bundle", action="append",
                       help="universal:i, endo:i,j, line:c0,c1,... or canonical (repeatable)")
    p = sub.add_parser("chow", parents=[common, stab], help="intersection theory on the moduli space")
    p.add_argument("chow_command", choices=CHOW_COMMANDS)
    p.add_argument("--n", type=int, default=12, help="number of Hilbert values, n = 0..N-1")
    p.add_argument("--character", help="line bundle character for hilbert (default theta)")
    return parser


VECTOR_FLAGS = ("--dim", "--dim2", "--theta", "--denom", "--chi", "--character", "--bundle")


def _glue_values(argv: Sequence[str]) -> List[str]:
    # "--theta -3,2" would read -3,2 as an option; rewrite it as "--theta=-3,2"
    out: List[str] = []
    it = iter(argv)
    for tok in it:
        if tok in VECTOR_FLAGS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def run(argv: Sequence[str]) -> Dict[str, Any]:
    """Parse argv, compute, and return the report (raises on failure)."""
    args = build_parser().parse_args(_glue_values(argv))
    if args.threads < 1:
        raise UsageError("--threads must be positive")
    start = time.perf_counter()
    ctx = Context(args)
    payload, text = HANDLERS[args.command](ctx)
    command = args.command + (f" {args.chow_command}" if args.command == "chow" else "")
    return {
        "command": command,
        "input": ctx.echo(),
        "result": payload,
        "text": text,
        "format": args.format,
        "wall_time": round(time.perf_counter() - start, 6),
    }


def render_json(report: Dict[str, Any]) -> str:
    body = {k: v for k, v in report.items() if k not in ("text", "format")}
    return json.dumps(jsonable(body), sort_keys=True)


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        report = run(argv or ["-h"])
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except UnsupportedRegimeError as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except ConsistencyError as exc:
        print(f"inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(render_json(report) if report["format"] == "json" else report["text"])
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
