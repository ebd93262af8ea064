"""
Command-line surface.

Commands: validate, solve-wa, perms, divisive, classify, torsion, ring,
puzzles, poincare.  Weight vectors are passed as JSON arrays of decimal
integers; (k, n) are explicit flags.  Output is JSON (default) or CSV
(``--format csv``, ring tables only), written to stdout or ``--output``.

Exit codes: 0 success, 2 invalid input, 3 not found in the searched
scope, 4 capacity exceeded.  Given the same arguments the output bytes
are identical across runs; parallelism (``--jobs``) only fans out pure
per-cell computations and never reorders output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import plucker, puzzles, structure, symbols, torsion
from .errors import (
    CapacityError,
    InternalInconsistencyError,
    InvalidWeightVectorError,
    NotDivisiveError,
    ParameterError,
)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NOT_FOUND = 3
EXIT_CAPACITY = 4


def _parse_vector(text: str, k: int, n: int) -> tuple:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParameterError(f"weight vector is not valid JSON: {exc}") from exc
    if not isinstance(data, list) or not all(isinstance(x, int) for x in data):
        raise ParameterError("weight vector must be a JSON array of integers")
    return tuple(plucker._check_weight_vector_shape(data, k, n))


def _require_valid(b, k: int, n: int) -> None:
    if not plucker.validate_weight_vector(b, k, n):
        raise InvalidWeightVectorError("not a valid weight vector")


# -- ring table workers (module level for multiprocessing) -----------------


def _ring_cell(task):
    b, k, n, i, j, level = task
    if level == "equivariant":
        cell = structure.weighted_equivariant_constants(b, k, n, i, j)
        return (i, j, {str(l): p.render() for l, p in sorted(cell.items())})
    cell = structure.ordinary_constants(b, k, n, i, j)
    return (i, j, {str(l): v for l, v in sorted(cell.items())})


def _map_tasks(tasks, jobs: int):
    if jobs <= 1 or len(tasks) <= 1:
        return [_ring_cell(t) for t in tasks]
    try:
        import multiprocessing

        with multiprocessing.get_context("fork").Pool(jobs) as pool:
            return pool.map(_ring_cell, tasks)
    except (ImportError, OSError):
        return [_ring_cell(t) for t in tasks]


# -- command handlers --------------------------------------------------------


def _cmd_validate(args) -> tuple:
    b = _parse_vector(args.b, args.k, args.n)
    return EXIT_OK, {"valid": plucker.validate_weight_vector(b, args.k, args.n)}


def _cmd_solve_wa(args) -> tuple:
    b = _parse_vector(args.b, args.k, args.n)
    sol = plucker.solve_wa(b, args.k, args.n)
    return EXIT_OK, {"W": list(sol.W), "a": sol.a}


def _cmd_perms(args) -> tuple:
    perms = plucker.enumerate_plucker_permutations(args.k, args.n, args.scope)
    return EXIT_OK, {
        "k": args.k,
        "n": args.n,
        "scope": args.scope,
        "count": len(perms),
        "permutations": [
            {"perm": list(w.perm), "signs": list(w.signs)} for w in perms
        ],
    }


def _cmd_divisive(args) -> tuple:
    b = _parse_vector(args.b, args.k, args.n)
    _require_valid(b, args.k, args.n)
    witness = plucker.is_divisive(b, args.k, args.n, args.scope)
    if witness is None:
        return EXIT_NOT_FOUND, {
            "divisive": False,
            "note": "no witness found in the searched scope",
        }
    presented = plucker.apply_permutation(witness, b, args.k, args.n)
    return EXIT_OK, {
        "divisive": True,
        "witness": list(witness.perm),
        "presented": list(presented),
    }


def _cmd_classify(args) -> tuple:
    b = _parse_vector(args.b, args.k, args.n)
    c = _parse_vector(args.c, args.k, args.n)
    _require_valid(b, args.k, args.n)
    _require_valid(c, args.k, args.n)
    found = plucker.equivalence(b, c, args.k, args.n, args.scope)
    if found is None:
        return EXIT_NOT_FOUND, {
            "equivalent": False,
            "note": "no (permutation, scalar) pair found in the searched scope",
        }
    witness, scalar = found
    return EXIT_OK, {
        "equivalent": True,
        "permutation": list(witness.perm),
        "scalar": str(scalar),
    }


def _cmd_torsion(args) -> tuple:
    b = _parse_vector(args.b, args.k, args.n)
    primes = None
    if args.primes:
        try:
            primes = [int(p) for p in args.primes.split(",") if p]
        except ValueError as exc:
            raise ParameterError("--primes must be comma-separated integers") from exc
    report = torsion.torsion_report(b, args.k, args.n, primes, args.scope)
    return EXIT_OK, report


def _cmd_ring(args) -> tuple:
    b = _parse_vector(args.b, args.k, args.n)
    _require_valid(b, args.k, args.n)
    level = "ordinary" if args.ordinary else "equivariant"
    presented = b
    witness = None
    if not plucker.is_descending_divisible(b):
        found = plucker.divisive_presentation(b, args.k, args.n)
        if found is None:
            raise NotDivisiveError(
                "ring computation requires a divisive weight vector"
            )
        witness, presented = found
    m1 = symbols.lattice(args.k, args.n).m + 1
    tasks = [
        (presented, args.k, args.n, i, j, level)
        for i in range(m1)
        for j in range(i, m1)
    ]
    cells = {(i, j): cell for i, j, cell in _map_tasks(tasks, args.jobs)}
    table = {}
    for i in range(m1):
        for j in range(m1):
            cell = cells[(i, j) if i <= j else (j, i)]
            table[f"{i},{j}"] = cell
    payload = {
        "k": args.k,
        "n": args.n,
        "b": list(b),
        "level": level,
        "table": table,
    }
    if witness is not None:
        payload["presentation_permutation"] = list(witness.perm)
        payload["presented_b"] = list(presented)
    if args.format == "csv":
        lines = ["i,j,l,value"]
        for key in table:
            i, j = key.split(",")
            for l, value in table[key].items():
                lines.append(f"{i},{j},{l},{value}")
        return EXIT_OK, "\n".join(lines) + "\n"
    return EXIT_OK, payload


def _cmd_puzzles(args) -> tuple:
    found = puzzles.puzzles_for(
        args.k, args.n, args.i, args.j, args.l,
        conjugated=(args.orientation == "conjugated"),
    )
    entries = []
    for puz in found:
        if args.orientation == "conjugated":
            pairs = puz.conjugated_pairs()
            weight = puz.conjugated_weight()
        else:
            pairs = [list(p) for p in puz.equivariant]
            weight = puz.weight()
        entry = {
            "equivariant_pieces": [list(p) for p in pairs],
            "weight": weight.render(),
        }
        if args.render:
            entry["tiling"] = puzzles.render_ascii(puz)
        entries.append(entry)
    total = puzzles.conjugated_product(args.k, args.n, args.i, args.j).get(
        args.l
    ) if args.orientation == "conjugated" else None
    payload = {
        "k": args.k,
        "n": args.n,
        "boundary": [args.i, args.j, args.l],
        "orientation": args.orientation,
        "count": len(found),
        "puzzles": entries,
    }
    if total is not None:
        payload["total_weight"] = total.render()
    return EXIT_OK, payload


def _cmd_poincare(args) -> tuple:
    return EXIT_OK, torsion.poincare_ranks(args.k, args.n)


def _add_kn(parser) -> None:
    parser.add_argument("--k", type=int, required=True)
    parser.add_argument("--n", type=int, required=True)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wgrass",
        description="Exact cohomology computations for weighted Grassmann orbifolds.",
    )
    parser.add_argument("--output", help="write the result to a file")
    parser.add_argument(
        "--jobs",
        type=int,
        default=os.cpu_count() or 1,
        help="parallel workers for table cells (default: logical cores)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="constant pair-sum test")
    p.add_argument("b")
    _add_kn(p)
    p.set_defaults(handler=_cmd_validate)

    p = sub.add_parser("solve-wa", help="integer exponent data (W, a)")
    p.add_argument("b")
    _add_kn(p)
    p.set_defaults(handler=_cmd_solve_wa)

    p = sub.add_parser("perms", help="enumerate Plucker permutations")
    _add_kn(p)
    p.add_argument("--scope", choices=["full", "sn", "identity"], default="full")
    p.set_defaults(handler=_cmd_perms)

    p = sub.add_parser("divisive", help="search a divisibility-chain witness")
    p.add_argument("b")
    _add_kn(p)
    p.add_argument("--scope", default="auto")
    p.set_defaults(handler=_cmd_divisive)

    p = sub.add_parser("classify", help="scalar/permutation equivalence test")
    p.add_argument("b")
    p.add_argument("c")
    _add_kn(p)
    p.add_argument("--scope", default="auto")
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("torsion", help="torsion certificates and report")
    p.add_argument("b")
    _add_kn(p)
    p.add_argument("--primes", help="comma-separated primes (default: divisors)")
    p.add_argument("--scope", default="auto")
    p.set_defaults(handler=_cmd_torsion)

    p = sub.add_parser("ring", help="structure-constant table")
    p.add_argument("b")
    _add_kn(p)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--equivariant", action="store_true", default=True)
    group.add_argument("--ordinary", action="store_true", default=False)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(handler=_cmd_ring)

    p = sub.add_parser("puzzles", help="enumerate puzzles for one boundary")
    _add_kn(p)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument(
        "--orientation", choices=["conjugated", "raw"], default="conjugated"
    )
    p.add_argument("--render", action="store_true")
    p.set_defaults(handler=_cmd_puzzles)

    p = sub.add_parser("poincare", help="cell counts per complex dimension")
    _add_kn(p)
    p.set_defaults(handler=_cmd_poincare)

    return parser


def _emit(payload, output) -> None:
    if isinstance(payload, str):
        text = payload
    else:
        text = json.dumps(payload, indent=2) + "\n"
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code, payload = args.handler(args)
    except CapacityError as exc:
        _emit({"error": str(exc), "kind": "capacity"}, args.output)
        return EXIT_CAPACITY
    except (ParameterError, InvalidWeightVectorError, NotDivisiveError) as exc:
        _emit({"error": str(exc), "kind": "invalid-input"}, args.output)
        return EXIT_INVALID
    except InternalInconsistencyError as exc:
        _emit({"error": str(exc), "kind": "internal"}, args.output)
        return 1
    _emit(payload, args.output)
    return code


if __name__ == "__main__":
    sys.exit(main())
