"""The ``spflag`` command line: stable JSON in and out.

Exit codes: 0 — success, JSON answer on stdout; 2 — validation problem,
one JSON error object on stderr; 3 — the command needs a finite-type
input but classification found infinitely many orbits, witness JSON on
stderr.

Dimension vectors are written ``"2,2;2,2;1,1,1,1"`` (components separated
by semicolons, parts by commas).  Flag objects are read from JSON files
(or ``-`` for stdin) in the schema produced by ``object_to_json``.  All
randomized internals consume the ``--seed`` flag, so output is a pure
function of the arguments.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from functools import partial

from .census import orbit_census
from .classifier import (
    classify,
    kac_bound,
    sp_flag_dim,
    sp_group_dim,
    tits_q,
    total_sp_flag_dim,
)
from .compositions import DimVector
from .decomposer import (
    DecompositionUnknownError,
    UnmatchedSummandError,
    find_isomorphism,
    sp_decompose,
    sp_orbit_equal,
)
from .enumerator import (
    InfiniteTypeError,
    orbit_count,
    orbit_families,
    orbit_representative,
)
from .flagobj import is_symplectic_object, object_from_json, object_to_json


__all__ = ["main"]

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_INFINITE = 3


class _Invalid(Exception):
    """Validation failure destined for a JSON error payload on stderr."""

    def __init__(self, message: str, error: str = "invalid_input") -> None:
        super().__init__(message)
        self.payload = {"error": error, "message": message}


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # JSON instead of usage text
        raise _Invalid(message, error="invalid_arguments")


def _print_json(payload: dict, stream=None) -> None:
    print(json.dumps(payload, separators=(",", ":")), file=stream or sys.stdout)


def _parse_dims(text: str) -> DimVector:
    try:
        return DimVector.parse(text)
    except ValueError as exc:
        raise _Invalid(f"bad dimension vector {text!r}: {exc}") from None


def _load_object(path: str, field_tag: str):
    try:
        if path == "-":
            data = json.load(sys.stdin)
        else:
            with open(path, "r", encoding="utf-8") as fh:
                data = json.load(fh)
    except OSError as exc:
        raise _Invalid(f"cannot read {path!r}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise _Invalid(f"{path!r} is not valid JSON: {exc}") from None
    if isinstance(data, dict) and "field" not in data and "object" in data:
        # accept `rep` output (and entries of `--reps` files) unwrapped
        data = data["object"]
    try:
        obj = object_from_json(data)
    except ValueError as exc:
        raise _Invalid(f"{path!r}: {exc}") from None
    if obj.field.tag != field_tag:
        raise _Invalid(
            f"{path!r} is over {obj.field.tag}, but --field is {field_tag}"
        )
    return obj


def _witness_payload(result) -> dict:
    payload = {"infinite_witness": result.witness.kind}
    payload["summand"] = str(result.witness.summand)
    if result.witness.flag_dim is not None:
        payload["flag_dim"] = result.witness.flag_dim
        payload["group_dim"] = result.witness.group_dim
    return payload


# ---------------------------------------------------------------------------
# Command handlers
# ---------------------------------------------------------------------------


def _cmd_classify(args) -> int:
    result = classify(_parse_dims(args.dims))
    if result.finite:
        _print_json({"type": result.finite_type})
    else:
        _print_json(_witness_payload(result))
    return EXIT_OK


def _cmd_qform(args) -> int:
    d = _parse_dims(args.dims)
    _print_json({"q": tits_q(d), "kac": kac_bound(d).value})
    return EXIT_OK


def _cmd_dims(args) -> int:
    d = _parse_dims(args.dims)
    try:
        per_flag = [sp_flag_dim(c) for c in d]
    except ValueError as exc:
        raise _Invalid(str(exc)) from None
    _print_json(
        {
            "flag_dims": per_flag,
            "total_flag_dim": total_sp_flag_dim(d),
            "group_dim": sp_group_dim(d.weight // 2),
        }
    )
    return EXIT_OK


def _cmd_count(args) -> int:
    d = _parse_dims(args.dims)
    _print_json({"orbits": str(orbit_count(d))})
    return EXIT_OK


def _cmd_enumerate(args) -> int:
    d = _parse_dims(args.dims)
    limit = args.limit
    families = []
    for i, family in enumerate(orbit_families(d)):
        if limit is not None and i >= limit:
            break
        _print_json({"index": i, **family.to_json()})
        if args.reps is not None:
            families.append(family)
    if args.reps is not None:
        build = partial(orbit_representative, seed=args.seed)
        if args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                reps = list(pool.map(build, families))
        else:
            reps = [build(f) for f in families]
        payload = {str(i): object_to_json(rep) for i, rep in enumerate(reps)}
        try:
            with open(args.reps, "w", encoding="utf-8") as fh:
                json.dump(payload, fh, indent=1, sort_keys=True)
        except OSError as exc:
            raise _Invalid(f"cannot write {args.reps!r}: {exc}") from None
    return EXIT_OK


def _cmd_rep(args) -> int:
    d = _parse_dims(args.dims)
    target = args.family
    if target < 0:
        raise _Invalid("--family must be non-negative")
    for i, family in enumerate(orbit_families(d)):
        if i == target:
            rep = orbit_representative(family, seed=args.seed)
            _print_json(
                {
                    "family": target,
                    **family.to_json(),
                    "object": object_to_json(rep),
                }
            )
            return EXIT_OK
    raise _Invalid(f"family index {target} out of range")


def _cmd_decompose(args) -> int:
    if args.field != "Q":
        raise _Invalid("decomposition is implemented over Q only")
    obj = _load_object(args.object, args.field)
    if not is_symplectic_object(obj):
        raise _Invalid("object is not a symplectic flag object")
    try:
        summands = sp_decompose(obj, seed=args.seed)
    except UnmatchedSummandError as exc:
        raise _Invalid(str(exc), error="unmatched_summand") from None
    except DecompositionUnknownError as exc:
        raise _Invalid(str(exc), error="decomposition_unknown") from None
    _print_json(
        {
            "summands": [
                {
                    "dims": str(s.dims),
                    "class_index": s.class_index,
                    "kind": s.label.kind,
                    "multiplicity": s.multiplicity,
                }
                for s in summands
            ]
        }
    )
    return EXIT_OK


def _cmd_identify(args) -> int:
    if args.field != "Q":
        raise _Invalid("orbit identification is implemented over Q only")
    x = _load_object(args.first, args.field)
    y = _load_object(args.second, args.field)
    for name, obj in (("first", x), ("second", y)):
        if not is_symplectic_object(obj):
            raise _Invalid(f"{name} object is not a symplectic flag object")
    try:
        equal = sp_orbit_equal(x, y, seed=args.seed)
    except UnmatchedSummandError as exc:
        raise _Invalid(str(exc), error="unmatched_summand") from None
    except DecompositionUnknownError as exc:
        raise _Invalid(str(exc), error="decomposition_unknown") from None
    certificate = None
    if equal:
        iso = find_isomorphism(x, y, seed=args.seed)
        if iso is not None:
            certificate = iso.to_json()
    _print_json({"equal": equal, "certificate": certificate})
    return EXIT_OK


def _cmd_census(args) -> int:
    d = _parse_dims(args.dims)
    start = time.monotonic()
    try:
        result = orbit_census(d, args.q)
    except ValueError as exc:
        raise _Invalid(str(exc)) from None
    runtime_ms = int((time.monotonic() - start) * 1000)
    _print_json(
        {
            "tuples": result.num_tuples,
            "orbits": result.num_orbits,
            "runtime_ms": runtime_ms,
            "group_order": result.group_order,
        }
    )
    return EXIT_OK


_HANDLERS = {
    "classify": _cmd_classify,
    "qform": _cmd_qform,
    "dims": _cmd_dims,
    "count": _cmd_count,
    "enumerate": _cmd_enumerate,
    "rep": _cmd_rep,
    "decompose": _cmd_decompose,
    "identify": _cmd_identify,
    "census": _cmd_census,
}


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="spflag",
        description=(
            "Exact classification, counting, enumeration and identification "
            "of symplectic orbits on products of flag varieties."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--seed", type=int, default=0, help="seed for all randomized internals")
        return p

    p = add("classify", "finite/infinite classification of a dimension vector")
    p.add_argument("dims")

    p = add("qform", "quadratic form value and what it bounds")
    p.add_argument("dims")

    p = add("dims", "flag variety and group dimensions")
    p.add_argument("dims")

    p = add("count", "exact number of orbits (finite type only)")
    p.add_argument("dims")

    p = add("enumerate", "stream orbit families as JSON lines")
    p.add_argument("dims")
    p.add_argument("--limit", type=int, default=None, help="stop after N families")
    p.add_argument("--reps", default=None, metavar="PATH", help="also write representatives to PATH")
    p.add_argument(
        "--jobs",
        type=int,
        default=1,
        help="parallel workers for representative construction (census runs single-process)",
    )

    p = add("rep", "explicit representative of one orbit family")
    p.add_argument("dims")
    p.add_argument("--family", type=int, required=True, help="0-based family index")

    p = add("decompose", "indecomposable summands of a symplectic object")
    p.add_argument("object", help="object JSON file, or - for stdin")
    p.add_argument("--field", default="Q", choices=["Q", "F2", "F3", "F5"])

    p = add("identify", "decide whether two objects lie on one orbit")
    p.add_argument("first", help="object JSON file")
    p.add_argument("second", help="object JSON file")
    p.add_argument("--field", default="Q", choices=["Q", "F2", "F3", "F5"])

    p = add("census", "exhaustive finite-field orbit count")
    p.add_argument("dims")
    p.add_argument("--q", type=int, required=True, help="field size (2, 3 or 5)")

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _HANDLERS[args.command](args)
    except _Invalid as exc:
        _print_json(exc.payload, stream=sys.stderr)
        return EXIT_INVALID
    except InfiniteTypeError as exc:
        _print_json(_witness_payload(exc.result), stream=sys.stderr)
        return EXIT_INFINITE
    except ValueError as exc:
        _print_json({"error": "invalid_input", "message": str(exc)}, stream=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
