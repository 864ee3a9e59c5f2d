"""Command line front end.

Jobs are described by a single JSON document (file or stdin) carrying
the field, curve, and point with every coefficient as an exact string
("123" or "p/q"), plus an optional "parameters" object.  Flags
override document parameters.  Each subcommand maps onto one library
operation; results are printed as aligned key/value lines or, with
--json, as a single JSON object with reals at 12 significant digits.

Exit codes: 0 success (torsion counts as success, with total 0 and a
torsion marker), 1 malformed input, 2 computation failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field as _dfield

from gmpy2 import mpq

from .algebra import NumberField
from .curve import Curve, Point, clear_denominators
from .eds import EDSequence
from .errors import (
    EdsError,
    ParseError,
    TorsionPoint,
    ValidationError,
    ZeroTerm,
)
from .height import (
    METHOD_DPOWER,
    METHOD_GCD,
    archimedean_height,
    canonical_height,
    compute_E,
    extrapolate,
    local_decompose,
    tate_height,
)
from .lehmer import SearchConfig, growth_estimate, search
from .util import is_power_of_two

COMMANDS = (
    "height", "arch", "decompose", "tate-check", "eds-growth",
    "lehmer-search", "psi",
)

_SEED_CAVEAT = "abstract seeds need not arise from an actual curve point"

# ---- input parsing ----


@dataclass
class JobSpec:
    """A parsed and validated job: exact objects plus loose parameters."""

    field: NumberField
    curve: Curve | None = None
    point: Point | None = None
    seed: tuple | None = None
    params: dict = _dfield(default_factory=dict)
    notices: tuple = ()


def _parse_q(value, where):
    if isinstance(value, bool) or isinstance(value, float):
        raise ParseError(
            f"{where}: coefficients must be exact strings or integers, "
            f"got {value!r}"
        )
    if isinstance(value, int):
        return mpq(value)
    if isinstance(value, str):
        try:
            return mpq(value)
        except ValueError:
            raise ParseError(
                f"{where}: cannot parse {value!r} as an integer or p/q"
            ) from None
    raise ParseError(f"{where}: unexpected coefficient {value!r}")


def _parse_vec(value, where):
    if isinstance(value, (list, tuple)):
        return [_parse_q(c, where) for c in value]
    return [_parse_q(value, where)]


_PARAM_KEYS = (
    "n", "pow2", "method", "precision_bits", "primes", "threads", "k",
    "extrapolate", "coeff_bound", "extend_to", "prune", "max_candidates",
)


def parse_input(text):
    """JSON job document -> JobSpec; clears point denominators with a
    notice when needed."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(
            f"invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}"
        ) from None
    if not isinstance(doc, dict):
        raise ParseError("top-level document must be a JSON object")
    fobj = doc.get("field")
    if not isinstance(fobj, dict) or "minpoly" not in fobj:
        raise ParseError('missing "field" object with a "minpoly" list')
    mon = _parse_vec(fobj["minpoly"], "field.minpoly")
    for c in mon:
        if c.denominator != 1:
            raise ParseError("field.minpoly: integer coefficients required")
    field = NumberField([int(c) for c in mon])

    curve = None
    if "curve" in doc:
        cobj = doc["curve"]
        if not isinstance(cobj, dict):
            raise ParseError('"curve" must be an object with a1..a6')
        a = {}
        for name in ("a1", "a2", "a3", "a4", "a6"):
            a[name] = field.element(_parse_vec(cobj.get(name, "0"),
                                               f"curve.{name}"))
        curve = Curve(field, a["a1"], a["a2"], a["a3"], a["a4"], a["a6"])

    point = None
    notices = []
    if "point" in doc:
        pobj = doc["point"]
        if not isinstance(pobj, dict):
            raise ParseError('"point" must be an object')
        if pobj.get("infinity"):
            point = Point.infinity()
        else:
            if "x" not in pobj or "y" not in pobj:
                raise ParseError('"point" needs "x" and "y" (or "infinity")')
            if curve is None:
                raise ParseError("a point needs a curve")
            x = field.element(_parse_vec(pobj["x"], "point.x"))
            y = field.element(_parse_vec(pobj["y"], "point.y"))
            point = curve.point(x, y)
            if not (x.is_integral and y.is_integral):
                curve, point, u = clear_denominators(curve, point)
                notices.append(f"cleared point denominators (u = {u})")

    seed = None
    if "seed" in doc:
        sobj = doc["seed"]
        if not isinstance(sobj, dict):
            raise ParseError('"seed" must be an object with u2, u3, u4')
        vecs = []
        for name in ("u2", "u3", "u4"):
            if name not in sobj:
                raise ParseError(f'"seed" is missing "{name}"')
            vecs.append(field.element(_parse_vec(sobj[name], f"seed.{name}")))
        seed = tuple(vecs)

    params = {}
    pobj = doc.get("parameters", {})
    if not isinstance(pobj, dict):
        raise ParseError('"parameters" must be an object')
    for key in _PARAM_KEYS:
        if key in pobj:
            params[key] = pobj[key]

    return JobSpec(field=field, curve=curve, point=point, seed=seed,
                   params=params, notices=tuple(notices))


# ---- output shaping ----


def _sig12(x):
    """Round to 12 significant digits so output is stable across runs."""
    if x is None:
        return None
    return float(f"{x:.12g}")


def _fmt(x):
    return "none" if x is None else f"{x:.12g}"


def _render(payload, order):
    lines = []
    for key in order:
        if key not in payload:
            continue
        value = payload[key]
        if value is None:
            continue
        if isinstance(value, float):
            value = _fmt(value)
        lines.append(f"{key:<13} {value}")
    return lines


def _estimate_payload(est, warnings):
    return {
        "hhat": _sig12(est.total),
        "arch": _sig12(est.arch),
        "nonarch": _sig12(est.nonarch),
        "n": est.n_used,
        "d": est.degree,
        "method": est.method,
        "torsion": est.torsion,
        "warnings": list(warnings) + list(est.warnings),
    }


def _emit(payload, order, json_out):
    if json_out:
        return json.dumps(payload)
    lines = _render(payload, order)
    for w in payload.get("warnings", ()):
        lines.append(f"{'note':<13} {w}")
    if payload.get("torsion"):
        lines.append(f"{'torsion':<13} true")
    return "\n".join(lines)


# ---- command dispatch ----


def _require(spec, *, curve=False, point=False, seed=False):
    if curve and spec.curve is None:
        raise ValidationError("this command needs a curve in the document")
    if point and spec.point is None:
        raise ValidationError("this command needs a point in the document")
    if seed and spec.seed is None:
        raise ValidationError(
            "this command needs seed terms (document \"seed\" or --seed-terms)"
        )


def _method_of(params):
    name = params.get("method")
    if name in (None, "gcd"):
        return METHOD_GCD
    if name == "dpower":
        return METHOD_DPOWER
    raise ValidationError(f"unknown method {name!r}")


def _index_of(params, default):
    if params.get("pow2") is not None:
        p = int(params["pow2"])
        if p < 1:
            raise ValidationError("--pow2 exponent must be at least 1")
        return 2**p
    if params.get("n") is not None:
        return int(params["n"])
    return default


def _precision_of(params):
    if params.get("precision_bits") is not None:
        return int(params["precision_bits"])
    env = os.environ.get("EDSH_PRECISION_BITS")
    if env:
        try:
            return int(env)
        except ValueError:
            raise ValidationError(
                f"EDSH_PRECISION_BITS must be an integer, got {env!r}"
            ) from None
    return 128


def _threads_of(params):
    if params.get("threads") is not None:
        return int(params["threads"])
    return os.cpu_count() or 1


def _cmd_height(spec, json_out):
    _require(spec, curve=True, point=True)
    method = _method_of(spec.params)
    pair = spec.params.get("extrapolate")
    if pair:
        n1, n2 = pair
        e1 = canonical_height(spec.curve, spec.point, n1, method)
        e2 = canonical_height(spec.curve, spec.point, n2, method)
        if e1.torsion or e2.torsion:
            value, torsion = 0.0, True
        else:
            value, torsion = extrapolate(e1.total, n1, e2.total, n2), False
        payload = {
            "hhat": _sig12(value),
            "hhat_n1": _sig12(e1.total),
            "hhat_n2": _sig12(e2.total),
            "n": [n1, n2],
            "d": spec.curve.field.degree,
            "method": method,
            "torsion": torsion,
            "warnings": list(spec.notices),
        }
        order = ("hhat", "hhat_n1", "hhat_n2", "n", "d", "method")
        return 0, _emit(payload, order, json_out)
    n = _index_of(spec.params, 100)
    est = canonical_height(spec.curve, spec.point, n, method)
    payload = _estimate_payload(est, spec.notices)
    return 0, _emit(payload, ("hhat", "arch", "nonarch", "n", "d", "method"),
                    json_out)


def _cmd_arch(spec, json_out):
    _require(spec, curve=True, point=True)
    n = _index_of(spec.params, 256)
    bits = _precision_of(spec.params)
    try:
        value, n_used = archimedean_height(
            spec.curve, spec.point, n, bits, _threads_of(spec.params)
        )
    except TorsionPoint:
        payload = {
            "hhat": 0.0, "arch": None, "n": n, "d": spec.field.degree,
            "method": "float-track", "torsion": True,
            "warnings": list(spec.notices),
        }
        return 0, _emit(payload, ("hhat", "arch", "n", "d", "method"),
                        json_out)
    payload = {
        "arch": _sig12(value), "n": n_used, "d": spec.field.degree,
        "method": "float-track", "precision_bits": bits, "torsion": False,
        "warnings": list(spec.notices),
    }
    return 0, _emit(payload, ("arch", "n", "d", "method", "precision_bits"),
                    json_out)


def _cmd_decompose(spec, json_out):
    _require(spec, curve=True, point=True)
    primes = spec.params.get("primes")
    if not primes:
        raise ValidationError("decompose requires --primes p1,p2,...")
    n = _index_of(spec.params, 100)
    est = canonical_height(spec.curve, spec.point, n, METHOD_DPOWER)
    if est.torsion:
        payload = _estimate_payload(est, spec.notices)
        return 0, _emit(payload, ("hhat", "n", "d", "method"), json_out)
    parts = local_decompose(spec.curve, spec.point, n, primes)
    payload = _estimate_payload(est, spec.notices)
    payload["per_prime"] = {str(q): _sig12(v) for q, v in parts.items()}
    if json_out:
        return 0, json.dumps(payload)
    lines = _render(payload, ("hhat", "arch", "nonarch", "n", "d", "method"))
    for q, v in parts.items():
        lines.append(f"{f'q = {q}':<13} {_fmt(v)}")
    for w in payload["warnings"]:
        lines.append(f"{'note':<13} {w}")
    return 0, "\n".join(lines)


def _cmd_tate_check(spec, json_out):
    _require(spec, curve=True, point=True)
    n = _index_of(spec.params, 128)
    k = int(spec.params.get("k", 8))
    method = _method_of(spec.params)
    est = canonical_height(spec.curve, spec.point, n, method)
    oracle = tate_height(spec.curve, spec.point, k, _precision_of(spec.params))
    payload = {
        "hhat": _sig12(est.total),
        "tate": _sig12(oracle.total),
        "difference": _sig12(abs(est.total - oracle.total)),
        "n": est.n_used,
        "k": oracle.n_used,
        "d": est.degree,
        "method": est.method,
        "torsion": est.torsion or oracle.torsion,
        "warnings": list(spec.notices),
    }
    return 0, _emit(payload, ("hhat", "tate", "difference", "n", "k", "d",
                              "method"), json_out)


def _cmd_psi(spec, json_out):
    _require(spec, curve=True, point=True)
    n = _index_of(spec.params, None)
    if n is None:
        raise ValidationError("psi requires --n (or --pow2)")
    fast = is_power_of_two(n) and n >= 8
    try:
        e_n = compute_E(spec.curve, spec.point, n, fast=fast)
        torsion = False
    except TorsionPoint:
        e_n = 0
        torsion = True
    payload = {
        "E_n": str(e_n), "n": n, "d": spec.field.degree, "torsion": torsion,
        "warnings": list(spec.notices),
    }
    return 0, _emit(payload, ("E_n", "n", "d"), json_out)


def _cmd_eds_growth(spec, json_out):
    _require(spec, seed=True)
    n = _index_of(spec.params, 128)
    seq = EDSequence.from_initial_terms(spec.field, *spec.seed)
    warnings = list(spec.notices) + [_SEED_CAVEAT]
    try:
        est = growth_estimate(seq, n)
    except ZeroTerm as e:
        payload = {
            "hhat": 0.0, "n": n, "d": spec.field.degree,
            "method": METHOD_GCD, "torsion": True,
            "warnings": warnings + [f"zero term at index {e.index}"],
        }
        return 0, _emit(payload, ("hhat", "n", "d", "method"), json_out)
    payload = _estimate_payload(est, warnings)
    return 0, _emit(payload, ("hhat", "arch", "nonarch", "n", "d", "method"),
                    json_out)


def _vec_strings(element):
    return [str(c) for c in element.cs]


def _cmd_lehmer_search(spec, json_out):
    cfg = SearchConfig(
        field=spec.field,
        coeff_bound=int(spec.params.get("coeff_bound", 1)),
        extend_to=int(spec.params.get("extend_to", 128)),
        prune_threshold=float(spec.params.get("prune", 0.05)),
        max_candidates=int(spec.params.get("max_candidates", 25)),
    )
    result = search(cfg, threads=_threads_of(spec.params))
    warnings = list(spec.notices) + [_SEED_CAVEAT]
    if json_out:
        payload = {
            "candidates": [
                {
                    "u2": _vec_strings(c.initial_terms[0]),
                    "u3": _vec_strings(c.initial_terms[1]),
                    "u4": _vec_strings(c.initial_terms[2]),
                    "hhat": _sig12(c.estimate.total),
                    "normalized": _sig12(c.normalized),
                }
                for c in result
            ],
            "n": cfg.extend_to,
            "d": spec.field.degree,
            "enumerated": result.enumerated,
            "degenerate": result.degenerate,
            "pruned": result.pruned,
            "torsion": False,
            "warnings": warnings,
        }
        return 0, json.dumps(payload)
    lines = [
        f"enumerated  {result.enumerated}",
        f"degenerate  {result.degenerate}",
        f"pruned      {result.pruned}",
    ]
    for rank, c in enumerate(result, start=1):
        u2, u3, u4 = (",".join(_vec_strings(e)) for e in c.initial_terms)
        lines.append(
            f"{rank:3d}  {c.normalized:.12g}  u2=[{u2}] u3=[{u3}] u4=[{u4}]"
        )
    for w in warnings:
        lines.append(f"{'note':<13} {w}")
    return 0, "\n".join(lines)


_DISPATCH = {
    "height": _cmd_height,
    "arch": _cmd_arch,
    "decompose": _cmd_decompose,
    "tate-check": _cmd_tate_check,
    "eds-growth": _cmd_eds_growth,
    "lehmer-search": _cmd_lehmer_search,
    "psi": _cmd_psi,
}


def run_command(cmd, spec, json_out=False):
    """Dispatch a parsed job; returns (exit_code, output_text)."""
    if cmd not in _DISPATCH:
        raise ValidationError(f"unknown command {cmd!r}")
    return _DISPATCH[cmd](spec, json_out)


# ---- argument handling ----


def _parse_int_pair(text, flag):
    parts = text.split(",")
    if len(parts) != 2:
        raise ValidationError(f"{flag} needs two comma-separated indices")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise ValidationError(f"{flag}: {text!r} is not a pair of integers") \
            from None


def _parse_primes(text):
    out = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        try:
            out.append(int(token))
        except ValueError:
            raise ValidationError(
                f"--primes: {token!r} is not an integer"
            ) from None
    if not out:
        raise ValidationError("--primes given but empty")
    return out


def _parse_seed_terms(text, field):
    parts = text.split(";")
    if len(parts) != 3:
        raise ValidationError(
            "--seed-terms needs three ;-separated terms, e.g. '1,1;1;0,2'"
        )
    vecs = []
    for i, part in enumerate(parts):
        coeffs = [_parse_q(tok.strip(), f"--seed-terms u{i + 2}")
                  for tok in part.split(",")]
        vecs.append(field.element(coeffs))
    return tuple(vecs)


def build_parser():
    ap = argparse.ArgumentParser(
        prog="edsheight",
        description=(
            "Canonical heights on elliptic curves over number fields "
            "through elliptic divisibility sequences."
        ),
    )
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("input", nargs="?", default="-",
                    help="JSON job document (path, or '-' for stdin)")
    ap.add_argument("--n", type=int, help="sequence index")
    ap.add_argument("--pow2", type=int, metavar="N",
                    help="use index 2^N (block doubling path)")
    ap.add_argument("--method", choices=("gcd", "dpower"))
    ap.add_argument("--precision-bits", type=int)
    ap.add_argument("--primes", help="comma-separated primes for decompose")
    ap.add_argument("--extrapolate", metavar="N1,N2",
                    help="height at two indices plus the 1/n^2 limit")
    ap.add_argument("--threads", type=int)
    ap.add_argument("--json", action="store_true",
                    help="machine-readable output")
    ap.add_argument("--k", type=int, help="tate-check doubling count")
    ap.add_argument("--seed-terms", metavar="U2;U3;U4",
                    help="eds-growth initial terms, coefficients comma-split")
    ap.add_argument("--coeff-bound", type=int)
    ap.add_argument("--extend-to", type=int)
    ap.add_argument("--prune", type=float)
    ap.add_argument("--max-candidates", type=int)
    return ap


def _merge_flags(spec, args):
    flags = {
        "n": args.n,
        "pow2": args.pow2,
        "method": args.method,
        "precision_bits": args.precision_bits,
        "threads": args.threads,
        "k": args.k,
        "coeff_bound": args.coeff_bound,
        "extend_to": args.extend_to,
        "prune": args.prune,
        "max_candidates": args.max_candidates,
    }
    for key, value in flags.items():
        if value is not None:
            spec.params[key] = value
    if args.primes is not None:
        spec.params["primes"] = _parse_primes(args.primes)
    if args.extrapolate is not None:
        spec.params["extrapolate"] = _parse_int_pair(args.extrapolate,
                                                     "--extrapolate")
    if args.seed_terms is not None:
        spec.seed = _parse_seed_terms(args.seed_terms, spec.field)
    if "extrapolate" in spec.params and args.extrapolate is None:
        pair = spec.params["extrapolate"]
        if not (isinstance(pair, (list, tuple)) and len(pair) == 2):
            raise ValidationError('"extrapolate" parameter needs two indices')
        spec.params["extrapolate"] = (int(pair[0]), int(pair[1]))


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.input == "-":
            text = sys.stdin.read()
        else:
            try:
                with open(args.input, "r", encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as e:
                raise ValidationError(f"cannot read {args.input}: {e}") \
                    from None
        spec = parse_input(text)
        _merge_flags(spec, args)
        code, output = run_command(args.command, spec, args.json)
    except ValidationError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except EdsError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if output:
        print(output)
    return code


if __name__ == "__main__":
    sys.exit(main())
