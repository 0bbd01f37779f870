"""Command-line surface: describe / compute verbs / verify.

Exit codes: 0 success, 1 usage error, 2 input validation error, 3 property
suite failure.  Every number emitted is exact: integers, or fractions
rendered "p/q"; identical configurations produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .abelian import DimensionMismatch, InvariantViolation
from .coweights import dominant_image_monoid, enumerate_dominant_classes
from .dual import fixed_group_descriptor, parse_profile
from .galois import (
    DiagramAutomorphism,
    TwistedRootDatum,
    coinvariants,
    group_order,
    kottwitz_components,
    relative_simple_roots,
)
from .rep import (
    NonDominantWeightError,
    UnsupportedDecompositionError,
    branch_to_fixed_group,
    decompose_tensor,
    total_dimension,
)
from .rootdatum import BasedRootDatum, InvalidDatumError, full_root_system
from .presets import UnknownPresetError, preset
from .satake import (
    NonDominantError,
    closure_poset,
    conv_cell,
    corr,
    format_class,
    mv_cell,
    poset_to_dot,
    poset_to_json,
)
from .suites import SUITE_NAMES, run_suite
from .weyl import relative_weyl

SCHEMA_VERSION = "1"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_PROPERTY = 3


class UsageExit(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageExit(message)


class InputError(Exception):
    pass


def _fmt_number(x):
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return str(x)


def parse_class(text: str):
    """ "1,0" or "1,0;1" -> ((1, 0), (1,)) coinvariant normal form."""
    try:
        if ";" in text:
            free_s, tors_s = text.split(";", 1)
            torsion = tuple(int(x) for x in tors_s.split(",") if x != "")
        else:
            free_s, torsion = text, ()
        free = tuple(int(x) for x in free_s.split(",") if x != "")
        return (free, torsion)
    except ValueError as e:
        raise InputError(f"cannot parse class {text!r}: {e}") from None


def parse_vector(text: str):
    try:
        return tuple(int(x) for x in text.split(",") if x != "")
    except ValueError as e:
        raise InputError(f"cannot parse vector {text!r}: {e}") from None


def load_datum_file(path: str) -> TwistedRootDatum:
    try:
        with open(path) as fh:
            raw = fh.read()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}") from None
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}") from None
    return datum_from_dict(data, where=path)


def datum_from_dict(data, where="input") -> TwistedRootDatum:
    if not isinstance(data, dict) or "base" not in data:
        raise InputError(f"{where}: missing field 'base'")
    base = data["base"]
    for key in ("rank", "simple_roots", "simple_coroots"):
        if key not in base:
            raise InputError(f"{where}: missing field 'base.{key}'")
    try:
        datum = BasedRootDatum.make(
            int(base["rank"]), base["simple_roots"], base["simple_coroots"],
            name=str(data.get("name", "")),
        )
    except (TypeError, ValueError, DimensionMismatch) as e:
        raise InputError(f"{where}: bad base datum: {e}") from None
    gens = []
    for idx, g in enumerate(data.get("generators", [])):
        for key in ("lattice_map", "root_permutation"):
            if key not in g:
                raise InputError(f"{where}: missing field 'generators[{idx}].{key}'")
        try:
            gens.append(
                DiagramAutomorphism.make(g["lattice_map"], g["root_permutation"])
            )
        except (TypeError, ValueError, DimensionMismatch, InvariantViolation) as e:
            raise InputError(f"{where}: bad generator {idx}: {e}") from None
    return TwistedRootDatum.make(datum, tuple(gens), name=str(data.get("name", "")))


def _resolve_datum(args) -> TwistedRootDatum:
    if getattr(args, "file", None):
        return load_datum_file(args.file)
    if not args.preset:
        raise InputError("pass a preset name or --file PATH")
    try:
        return preset(args.preset)
    except UnknownPresetError as e:
        raise InputError(f"unknown preset {e}") from None


def build_parser() -> _Parser:
    p = _Parser(prog="twisted-satake", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, with_bound=False):
        sp.add_argument("preset", nargs="?", help="preset name (or use --file)")
        sp.add_argument("--file", help="JSON twisted-datum file")
        sp.add_argument("--format", choices=("table", "json", "dot"), default="table")
        sp.add_argument("--coeff", default="char0",
                        help="coefficient profile: char0 | Zl:<p> | Fl:<p>")
        if with_bound:
            sp.add_argument("--bound", type=int, default=6,
                            help="rho-height bound on classes")
        sp.add_argument("--coord-bound", type=int, default=None,
                        help="coordinate box for data with central directions")

    common(sub.add_parser("describe", help="datum summary"))
    common(sub.add_parser("schubert", help="Schubert strata and closure order"), with_bound=True)

    mv = sub.add_parser("mv", help="attractor-intersection cell")
    common(mv)
    mv.add_argument("--mu", required=True)
    mv.add_argument("--lam", required=True)

    cv = sub.add_parser("conv", help="convolution cell")
    common(cv)
    cv.add_argument("--mu", required=True)
    cv.add_argument("--mu2", required=True)
    cv.add_argument("--lam", required=True)
    cv.add_argument("--lam2", required=True)

    br = sub.add_parser("branch", help="restrict an irreducible to the fixed group")
    common(br)
    br.add_argument("--weight", required=True, help="dominant character, comma separated")

    tn = sub.add_parser("tensor", help="folded tensor decomposition")
    tn.add_argument("preset", nargs="?")
    tn.add_argument("lam", help="dominant folded class")
    tn.add_argument("mu", help="dominant folded class")
    tn.add_argument("--file", help="JSON twisted-datum file")
    tn.add_argument("--format", choices=("table", "json", "dot"), default="table")
    tn.add_argument("--coeff", default="char0")
    tn.add_argument("--coord-bound", type=int, default=None)

    common(sub.add_parser("dominant-image", help="image of the dominant projection"),
           with_bound=True)

    cr = sub.add_parser("corr", help="constant-term normalization shift")
    common(cr)
    cr.add_argument("--levi", default="all", help="orbit indices 'all', 'none', or '0,1'")
    cr.add_argument("--vector", required=True, help="lattice vector, comma separated")

    vf = sub.add_parser("verify", help="run property suites")
    common(vf)
    vf.add_argument("suite", choices=SUITE_NAMES + ("all",))

    return p


def _emit(args, payload, extra_text_lines):
    if args.format == "json":
        doc = {"schema_version": SCHEMA_VERSION, "command": args.command, **payload}
        print(json.dumps(doc, sort_keys=True))
    else:
        for line in extra_text_lines:
            print(line)


def cmd_describe(args, t):
    rel = relative_simple_roots(t)
    c = coinvariants(t)
    desc = fixed_group_descriptor(t, parse_profile(args.coeff))
    system = full_root_system(t.base)
    payload = {
        "name": t.name or "(anonymous)",
        "rank": t.rank,
        "absolute_roots": len(system.roots),
        "inertia_order": group_order(t),
        "orbits": [
            {"indices": list(orbit), "type": kind}
            for orbit, kind in zip(rel.simple_orbit_list, rel.orbit_type)
        ],
        "coinvariants": str(c.group),
        "pi1_coinvariants": str(kottwitz_components(t)),
        "relative_weyl_order": relative_weyl(t).order,
        "fixed_group": {
            "label": desc.label,
            "folded_cartan": (
                {
                    "type": desc.folded_cartan.type_label,
                    "simple_roots": [list(r) for r in desc.folded_cartan.simple_roots],
                    "simple_coroots": [list(r) for r in desc.folded_cartan.simple_coroots],
                }
                if desc.folded_cartan
                else None
            ),
            "smooth_over_Z_ell": desc.smooth_over_Z_ell,
            "quasi_reductive_nonreductive_at_2": desc.quasi_reductive_nonreductive_at_2,
            "ell2_quasi_reductive_mechanism": desc.has_adjacent_pair_orbit,
            "connected_char0": desc.connected_char0,
        },
    }
    lines = [
        f"datum: {payload['name']}  rank {t.rank}  roots {payload['absolute_roots']}  |I| {payload['inertia_order']}",
        "orbits: " + (", ".join(
            f"{{{','.join(str(i) for i in o['indices'])}}}:{o['type']}" for o in payload["orbits"]
        ) or "(none)"),
        f"coinvariants X_*(T)_I: {payload['coinvariants']}",
        f"pi1(G)_I: {payload['pi1_coinvariants']}",
        f"relative Weyl order: {payload['relative_weyl_order']}",
        f"fixed group: label={payload['fixed_group']['label']} "
        f"smooth/Z_ell={payload['fixed_group']['smooth_over_Z_ell']} "
        f"ell2-quasi-reductive={payload['fixed_group']['ell2_quasi_reductive_mechanism']} "
        f"connected(char0)={payload['fixed_group']['connected_char0']}",
    ]
    _emit(args, {"result": payload}, lines)
    return EXIT_OK


def cmd_schubert(args, t):
    kwargs = {"coord_bound": args.coord_bound} if args.coord_bound is not None else {}
    poset = closure_poset(t, max_height=2 * args.bound, **kwargs)
    if args.format == "dot":
        print(poset_to_dot(poset))
        return EXIT_OK
    if args.format == "json":
        doc = {
            "schema_version": SCHEMA_VERSION,
            "command": "schubert",
            "result": json.loads(poset_to_json(poset)),
        }
        print(json.dumps(doc, sort_keys=True))
        return EXIT_OK
    for s in poset.strata:
        print(f"stratum {format_class(s.label):12s} dim {s.dim:4d} component {format_class(s.component)}")
    return EXIT_OK


def cmd_mv(args, t):
    cell = mv_cell(t, parse_class(args.mu), parse_class(args.lam))
    payload = {
        "mu": format_class(cell.mu), "lam": format_class(cell.lam),
        "nonempty": cell.nonempty, "dim": cell.dim,
    }
    text = (
        f"cell S_{payload['mu']} within closure of {payload['lam']}: "
        + (f"nonempty, dim {cell.dim}" if cell.nonempty else "empty")
    )
    _emit(args, {"result": payload}, [text])
    return EXIT_OK


def cmd_conv(args, t):
    cell = conv_cell(
        t, parse_class(args.mu), parse_class(args.mu2),
        parse_class(args.lam), parse_class(args.lam2),
    )
    payload = {
        "mu": format_class(cell.mu), "mu2": format_class(cell.mu2),
        "lam": format_class(cell.lam), "lam2": format_class(cell.lam2),
        "nonempty": cell.nonempty, "dim": cell.dim,
    }
    text = "convolution cell: " + (f"nonempty, dim {cell.dim}" if cell.nonempty else "empty")
    _emit(args, {"result": payload}, [text])
    return EXIT_OK


def _summands_text(result):
    ordered = sorted(result.summands, reverse=True)
    return " + ".join(
        (f"{m} V({format_class(cls)})" if m != 1 else f"V({format_class(cls)})")
        for cls, m in ordered
    ) or "0"


def cmd_branch(args, t):
    profile = parse_profile(args.coeff)
    weight = parse_vector(args.weight)
    try:
        result = branch_to_fixed_group(t, weight, profile)
    except UnsupportedDecompositionError as e:
        payload = {
            "error": str(e),
            "restriction": (
                [[format_class(k), m] for k, m in e.restriction.entries]
                if e.restriction is not None else None
            ),
        }
        if args.format == "json":
            print(json.dumps({"schema_version": SCHEMA_VERSION, "command": "branch",
                              "result": payload}, sort_keys=True))
        else:
            print(f"unsupported decomposition: {e}")
            if e.restriction is not None:
                for k, m in e.restriction.entries:
                    print(f"  weight {format_class(k)} multiplicity {m}")
        return EXIT_OK
    payload = {
        "summands": [[format_class(cls), m] for cls, m in result.summands],
        "restriction": [[format_class(k), m] for k, m in result.restriction.entries],
        "total_dimension": total_dimension(result.restriction),
    }
    _emit(args, {"result": payload}, [_summands_text(result)])
    return EXIT_OK


def cmd_tensor(args, t):
    profile = parse_profile(args.coeff)
    result = decompose_tensor(t, parse_class(args.lam), parse_class(args.mu), profile)
    payload = {"summands": [[format_class(cls), m] for cls, m in result.summands]}
    _emit(args, {"result": payload}, [_summands_text(result)])
    return EXIT_OK


def cmd_dominant_image(args, t):
    kwargs = {"coord_bound": args.coord_bound} if args.coord_bound is not None else {}
    image = dominant_image_monoid(t, 2 * args.bound, **kwargs)
    cone = enumerate_dominant_classes(t, 2 * args.bound, **kwargs)
    payload = {
        "image": [format_class(c) for c in image],
        "dominant_cone": [format_class(c) for c in cone],
        "surjective_within_bound": set(image) == set(cone),
    }
    lines = [
        "image: {" + ", ".join(payload["image"]) + "}",
        "cone:  {" + ", ".join(payload["dominant_cone"]) + "}",
        f"surjective within bound: {payload['surjective_within_bound']}",
    ]
    _emit(args, {"result": payload}, lines)
    return EXIT_OK


def cmd_corr(args, t):
    rel = relative_simple_roots(t)
    if args.levi == "all":
        orbits = tuple(range(rel.relative_rank))
    elif args.levi == "none":
        orbits = ()
    else:
        orbits = tuple(int(x) for x in args.levi.split(",") if x != "")
    value = corr(t, orbits, parse_vector(args.vector))
    _emit(args, {"result": {"corr": value}}, [f"corr = {value}"])
    return EXIT_OK


def cmd_verify(args, t_or_error):
    if isinstance(t_or_error, Exception):
        records = [{
            "suite": "load", "name": "datum-invariants", "passed": False,
            "detail": str(t_or_error),
        }]
    else:
        results = run_suite(t_or_error, args.suite)
        records = [
            {"suite": r.suite, "name": r.name, "passed": r.passed, "detail": r.detail}
            for r in results
        ]
    failed = [r for r in records if not r["passed"]]
    if args.format == "json":
        print(json.dumps({
            "schema_version": SCHEMA_VERSION, "command": "verify",
            "result": {"checks": records, "passed": not failed},
        }, sort_keys=True))
    else:
        for r in records:
            status = "ok  " if r["passed"] else "FAIL"
            detail = f"  ({r['detail']})" if r["detail"] else ""
            print(f"{status} {r['suite']}/{r['name']}{detail}")
        print(f"{'pass' if not failed else 'fail'}: {len(records) - len(failed)}/{len(records)} checks")
    return EXIT_OK if not failed else EXIT_PROPERTY


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageExit as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE

    try:
        if getattr(args, "bound", None) is not None and args.bound <= 0:
            raise InputError("--bound must be positive")
        if getattr(args, "coord_bound", None) is not None and args.coord_bound <= 0:
            raise InputError("--coord-bound must be positive")
        try:
            t = _resolve_datum(args)
        except (InputError, InvalidDatumError, InvariantViolation) as e:
            # verify reports datum violations as failing checks, not input errors
            if args.command == "verify" and not isinstance(e, InputError):
                return cmd_verify(args, e)
            raise

        dispatch = {
            "describe": cmd_describe,
            "schubert": cmd_schubert,
            "mv": cmd_mv,
            "conv": cmd_conv,
            "branch": cmd_branch,
            "tensor": cmd_tensor,
            "dominant-image": cmd_dominant_image,
            "corr": cmd_corr,
            "verify": cmd_verify,
        }
        return dispatch[args.command](args, t)
    except (InputError, InvalidDatumError, NonDominantError, NonDominantWeightError,
            DimensionMismatch, ValueError) as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
