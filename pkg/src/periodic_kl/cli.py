"""Command-line front end.

Subcommands
-----------
- ``blocks``      alcove lattice points with dot-action stabilizers
- ``selfcheck``   inversion identity, Koszul round trip, order cross-check
- ``mult``        graded multiplicity queries (simple-in-verma,
                  verma-in-projective with truncation, baby)
- ``hecke``       algebra operations (mul, bar, kl) on basis elements
- ``orders``      Hasse diagram of a semi-infinite window as a JSON edge list
- ``table``       periodic/generic polynomial tables over a window

Elements use the textual form ``t(a1,...,ar)*w[i1 i2 ...]`` everywhere.
Output is deterministic byte for byte for a fixed configuration: elements
are listed in a canonical order and JSON is emitted with sorted keys.

Exit codes: 0 success, 2 usage or configuration error, 3 resource bound
exceeded, 4 internal consistency failure (must never happen).

The self-dual class vectors (the expensive part) can be cached on disk with
``--cache-dir`` or the ``PERIODIC_KL_CACHE`` environment variable; cache
files carry a format version and the full (type, rank, l) key.  ``--jobs``
is accepted for interface stability but computations run sequentially; the
table computation is dominated by the shared class solve, which is
memoized, so extra processes would not help at the supported scales.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import Optional, Sequence

from .hecke import HeckeAlgebra, ResourceError
from .laurent import LaurentPoly
from .multiplicity import MultiplicityTables, enumerate_blocks
from .orders import SemiInfiniteOrder, SemiInfinitePoset, standard_window
from .periodic import CertificationError, PeriodicModule
from .rootdata import RootDatum, Weight, root_datum, validate_l
from .weyl import AffineWeyl

FORMAT_VERSION = 1


class UsageError(Exception):
    pass


# -- configuration ------------------------------------------------------------------


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--type", required=True, help="Cartan type letter (A, B, C, G)")
    parser.add_argument("--rank", required=True, type=int)
    parser.add_argument("--l", required=True, type=int, help="root-of-unity order")
    parser.add_argument("--force", action="store_true",
                        help="proceed despite validate_l warnings")
    parser.add_argument("--format", choices=["json", "csv", "text"], default="json")
    parser.add_argument("-o", "--output", default=None, help="output path (default stdout)")
    parser.add_argument("--cache-dir", default=None,
                        help="cache directory (or set PERIODIC_KL_CACHE)")
    parser.add_argument("--jobs", type=int, default=1, help="parallelism degree (advisory)")


def _build_context(args) -> tuple[RootDatum, AffineWeyl]:
    try:
        rd = root_datum(args.type.upper(), args.rank, args.l)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    violations, warnings = validate_l(rd)
    if violations:
        raise UsageError("invalid l: " + "; ".join(violations))
    if warnings and not args.force:
        raise UsageError(
            "; ".join(warnings) + " (pass --force to proceed)"
        )
    if args.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    return rd, AffineWeyl(rd)


def _cache_dir(args) -> Optional[str]:
    return args.cache_dir or os.environ.get("PERIODIC_KL_CACHE")


def _module(args, group: AffineWeyl) -> PeriodicModule:
    mod = PeriodicModule(group)
    cache = _cache_dir(args)
    if cache:
        _load_class_cache(mod, cache, args)
    return mod


def _cache_path(args, cache: str) -> str:
    name = f"classes-{args.type.upper()}{args.rank}-l{args.l}-v{FORMAT_VERSION}.json"
    return os.path.join(cache, name)


def _load_class_cache(mod: PeriodicModule, cache: str, args) -> None:
    path = _cache_path(args, cache)
    if not os.path.exists(path):
        return
    with open(path) as fh:
        data = json.load(fh)
    if data.get("format_version") != FORMAT_VERSION:
        return
    g = mod.group
    for idx_str, terms in data["classes"].items():
        terms_map = {
            g.parse_element(el): LaurentPoly.from_json(coeffs) for el, coeffs in terms
        }
        mod._class_cache[int(idx_str)] = mod.from_terms(terms_map)


def _save_class_cache(mod: PeriodicModule, args) -> None:
    cache = _cache_dir(args)
    if not cache:
        return
    os.makedirs(cache, exist_ok=True)
    g = mod.group
    data = {
        "format_version": FORMAT_VERSION,
        "type": args.type.upper(),
        "rank": args.rank,
        "l": args.l,
        "classes": {
            str(idx): [
                [g.format_element(x), p.to_json()]
                for x, p in sorted(el.terms.items(), key=lambda kv: (kv[0].trans.coords, kv[0].w.index))
            ]
            for idx, el in sorted(mod._class_cache.items())
        },
    }
    with open(_cache_path(args, cache), "w") as fh:
        json.dump(data, fh, sort_keys=True)
        fh.write("\n")


def _window(args, group: AffineWeyl):
    coset = None
    if args.coset != "all":
        try:
            coset = tuple(int(c) for c in args.coset.split(","))
        except ValueError:
            raise UsageError(f"bad coset tag {args.coset!r}") from None
        if len(coset) != group.rd.rank:
            raise UsageError(f"coset tag needs {group.rd.rank} components")
    if args.height < 0:
        raise UsageError("window height must be >= 0")
    return standard_window(group, args.height, coset)


def _emit(args, payload_json: dict, text: str, csv_rows: Optional[list[list[str]]] = None) -> None:
    if args.format == "json":
        out = json.dumps(payload_json, sort_keys=True, indent=2) + "\n"
    elif args.format == "csv":
        if csv_rows is None:
            raise UsageError("csv format is not available for this subcommand")
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerows(csv_rows)
        out = buf.getvalue()
    else:
        out = text if text.endswith("\n") else text + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _parse_weight(group: AffineWeyl, text: str) -> Weight:
    try:
        coords = tuple(int(c) for c in text.split(","))
    except ValueError:
        raise UsageError(f"bad weight {text!r}") from None
    if len(coords) != group.rd.rank:
        raise UsageError(f"weight needs {group.rd.rank} coordinates")
    return Weight(coords)


def _parse_elt(group: AffineWeyl, text: str):
    try:
        return group.parse_element(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _sorted_elements(group: AffineWeyl, elements):
    return sorted(elements, key=lambda z: (z.trans.coords, z.w.index))


# -- subcommands -------------------------------------------------------------------------


def _cmd_blocks(args) -> int:
    rd, group = _build_context(args)
    labels = enumerate_blocks(group)
    payload = {
        "type": args.type.upper(),
        "rank": args.rank,
        "l": args.l,
        "blocks": [
            {
                "representative": list(b.representative.coords),
                "walls": list(b.walls),
                "regular": b.regular,
                "stabilizer_generators": [group.format_element(x) for x in b.stabilizer_generators],
            }
            for b in labels
        ],
    }
    rows = [["representative", "walls", "regular", "stabilizer_generators"]]
    lines = []
    for b in labels:
        rep = ",".join(str(c) for c in b.representative.coords)
        walls = " ".join(b.walls)
        gens = " ".join(group.format_element(x) for x in b.stabilizer_generators)
        rows.append([rep, walls, str(b.regular).lower(), gens])
        lines.append(f"({rep})  regular={str(b.regular).lower():5}  walls=[{walls}]  stabilizer=[{gens}]")
    _emit(args, payload, "\n".join(lines), rows)
    return 0


def _cmd_selfcheck(args) -> int:
    rd, group = _build_context(args)
    order = SemiInfiniteOrder(group)
    mod = _module(args, group)
    window = _window(args, group)
    checks: list[tuple[str, bool]] = []

    mu = order.sufficient_mu(window)
    order_ok = all(
        order.leq(a, b) == order.leq_via_translation(a, b, mu)
        for a in window
        for b in window
        if a.omega_component == b.omega_component
    )
    checks.append(("order generated == translation characterization", order_ok))

    bad = mod.inversion_report(window)
    checks.append(("signed inversion identity q * p = delta", not bad))

    koszul_ok = True
    for x in window:
        sd = mod.selfdual(x)
        for y in sd.terms:
            if mod.koszul_of_series(y, x) != sd.coefficient(y):
                koszul_ok = False
    checks.append(("Koszul operator inverts the geometric series", koszul_ok))

    _save_class_cache(mod, args)
    lines = [f"{'ok' if ok else 'FAIL'}  {name}" for name, ok in checks]
    text = "\n".join(lines)
    payload = {"checks": [{"name": n, "ok": ok} for n, ok in checks]}
    _emit(args, payload, text)
    if not all(ok for _, ok in checks):
        raise CertificationError("selfcheck failed: " + text)
    return 0


def _cmd_mult(args) -> int:
    rd, group = _build_context(args)
    mod = _module(args, group)
    tables = MultiplicityTables(mod)
    x = _parse_elt(group, args.x)
    y = _parse_elt(group, args.y)
    if args.which == "simple-in-verma":
        value = tables.simple_in_verma(x, y)
    elif args.which == "verma-in-projective":
        if args.nu is None:
            raise UsageError("verma-in-projective needs --nu")
        value = tables.verma_in_projective(x, y, _parse_weight(group, args.nu))
    else:
        value = tables.baby_verma_in_projective(x, y)
    _save_class_cache(mod, args)
    payload = {
        "op": args.which,
        "x": group.format_element(x),
        "y": group.format_element(y),
        "nu": args.nu,
        "value": value.to_json(),
        "value_str": str(value),
    }
    _emit(args, payload, str(value))
    return 0


def _cmd_hecke(args) -> int:
    rd, group = _build_context(args)
    alg = HeckeAlgebra(group)
    x = _parse_elt(group, args.x)
    if args.which == "mul":
        if args.y is None:
            raise UsageError("hecke mul needs --y")
        y = _parse_elt(group, args.y)
        result = alg.multiply(alg.basis(x), alg.basis(y))
    elif args.which == "bar":
        result = alg.bar_basis(x)
    else:
        result = alg.kl_basis(x)
    payload = {"op": args.which, "x": group.format_element(x),
               "y": args.y, "terms": result.to_json()}
    lines = [f"{entry['element']}: {LaurentPoly.from_json(entry['polynomial'])}" for entry in result.to_json()]
    _emit(args, payload, "\n".join(lines))
    return 0


def _cmd_orders(args) -> int:
    rd, group = _build_context(args)
    order = SemiInfiniteOrder(group)
    window = _window(args, group)
    poset = SemiInfinitePoset.build(order, _sorted_elements(group, window))
    edges = [
        [group.format_element(a), group.format_element(b)] for a, b in poset.hasse_edges()
    ]
    edges.sort()
    payload = {
        "window": [group.format_element(z) for z in poset.window],
        "edges": edges,
    }
    text = "\n".join(f"{a} < {b}" for a, b in edges)
    rows = [["lower", "upper"]] + edges
    _emit(args, payload, text, rows)
    return 0


_TABLE_KINDS = {
    "p": "periodic_p",
    "q": "generic_q",
    "qprime": "generic_qprime",
    "simple-in-verma": "simple_in_verma",
    "verma-in-projective": "verma_in_projective_truncated",
    "baby": "babyverma_in_projective",
}


def _cmd_table(args) -> int:
    rd, group = _build_context(args)
    mod = _module(args, group)
    window = _sorted_elements(group, _window(args, group))
    kind = _TABLE_KINDS[args.which]
    nu = None
    if args.which == "verma-in-projective":
        if args.nu is None:
            raise UsageError("verma-in-projective tables need --nu")
        nu = _parse_weight(group, args.nu)
    if args.which in ("p", "q", "qprime"):
        raw = mod.polynomial_table(kind, window)
        entries_map = raw.entries  # keyed (y, x)
    else:
        tables = MultiplicityTables(mod)
        raw = tables.table(kind, window, nu=nu)
        entries_map = {(y, x): p for (x, y), p in raw.entries.items()}
    _save_class_cache(mod, args)
    entries = [
        {
            "y": group.format_element(y),
            "x": group.format_element(x),
            "polynomial": p.to_json(),
        }
        for (y, x), p in sorted(
            entries_map.items(),
            key=lambda kv: (kv[0][1].trans.coords, kv[0][1].w.index,
                            kv[0][0].trans.coords, kv[0][0].w.index),
        )
    ]
    payload = {
        "kind": kind,
        "type": args.type.upper(),
        "rank": args.rank,
        "l": args.l,
        "window": {"height": args.height, "coset": args.coset},
        "truncation": args.nu,
        "elements": [group.format_element(z) for z in window],
        "entries": entries,
        "omitted_entries_are": "zero",
        "format_version": FORMAT_VERSION,
    }
    rows = [["y", "x", "polynomial"]]
    lines = []
    for entry in entries:
        poly = str(LaurentPoly.from_json(entry["polynomial"]))
        rows.append([entry["y"], entry["x"], poly])
        lines.append(f"p[{entry['y']}, {entry['x']}] = {poly}")
    _emit(args, payload, "\n".join(lines), rows)
    return 0


# -- entry point ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="periodic-kl",
        description="Exact periodic/generic Kazhdan-Lusztig polynomials and multiplicity tables",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_blocks = sub.add_parser("blocks", help="alcove block labels and stabilizers")
    _add_common(p_blocks)
    p_blocks.set_defaults(func=_cmd_blocks)

    p_check = sub.add_parser("selfcheck", help="run the certified identity checks")
    _add_common(p_check)
    p_check.add_argument("--height", type=int, required=True)
    p_check.add_argument("--coset", default="all")
    p_check.set_defaults(func=_cmd_selfcheck)

    p_mult = sub.add_parser("mult", help="graded multiplicity queries")
    p_mult.add_argument("which", choices=["simple-in-verma", "verma-in-projective", "baby"])
    _add_common(p_mult)
    p_mult.add_argument("--x", required=True, help="element t(a1,...)*w[i1 ...]")
    p_mult.add_argument("--y", required=True)
    p_mult.add_argument("--nu", default=None, help="truncation weight coordinates a1,...,ar")
    p_mult.set_defaults(func=_cmd_mult)

    p_hecke = sub.add_parser("hecke", help="Hecke algebra operations")
    p_hecke.add_argument("which", choices=["mul", "bar", "kl"])
    _add_common(p_hecke)
    p_hecke.add_argument("--x", required=True)
    p_hecke.add_argument("--y", default=None)
    p_hecke.set_defaults(func=_cmd_hecke)

    p_orders = sub.add_parser("orders", help="semi-infinite order utilities")
    p_orders.add_argument("which", choices=["hasse"])
    _add_common(p_orders)
    p_orders.add_argument("--height", type=int, required=True)
    p_orders.add_argument("--coset", default="all")
    p_orders.set_defaults(func=_cmd_orders)

    p_table = sub.add_parser("table", help="polynomial and multiplicity tables over a window")
    p_table.add_argument("which", choices=sorted(_TABLE_KINDS))
    _add_common(p_table)
    p_table.add_argument("--height", type=int, required=True)
    p_table.add_argument("--coset", default="all")
    p_table.add_argument("--nu", default=None, help="truncation weight for verma-in-projective")
    p_table.set_defaults(func=_cmd_table)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceError as exc:
        print(f"resource bound exceeded: {exc}", file=sys.stderr)
        return 3
    except (CertificationError, AssertionError) as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
