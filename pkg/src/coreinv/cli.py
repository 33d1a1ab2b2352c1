"""Command-line front door: compute, verify, test weighted-EP, run oracle sweeps.

Exit codes separate three outcomes: 0 for a completed computation (including a
negative mathematical answer), 1 for a failed verification or oracle mismatch,
and 2 for malformed or invalid input. Output is deterministic JSON.
"""

from __future__ import annotations

import argparse
import json
import sys

from .characterize import (
    Flavor,
    InvalidCertificateError,
    Side,
    core_from_pu,
    core_from_qw,
    core_from_s,
    core_from_t,
    decomposition_from_json,
    dual_from_pu,
    dual_from_qw,
    dual_from_s,
    dual_from_t,
    is_weighted_ep,
    unit_for,
)
from .ginverse import (
    GInverseKind,
    NotInvertible,
    certificate_from_json,
    certificate_to_json,
    e_core,
    e_core_via_power,
    f_dual_core,
    f_dual_core_via_power,
    group_inverse,
    inv_13e,
    inv_14f,
    not_invertible_to_json,
    verify,
    weighted_mp,
)
from .matrix import Mat, Weight, mat_from_json, mat_to_json
from .oracle import SpaceTooLargeError, cross_check_sweep
from .scalar import SUPPORTED_PRIMES


def _load_json(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _emit(obj, out: str | None):
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_matrix(path: str) -> Mat:
    return mat_from_json(_load_json(path))


def _load_weight(path: str | None, dim, field) -> Weight:
    if path is None:
        return Weight.identity(field, dim)
    w = Weight(mat_from_json(_load_json(path)))
    if w.value.n != dim or w.value.field != field:
        raise ValueError("weight does not match the matrix dimension/backend")
    return w


def cmd_compute(args) -> int:
    a = _load_matrix(args.a)
    e = _load_weight(args.e, a.n, a.field)
    f = _load_weight(args.f, a.n, a.field)
    kind = GInverseKind(args.kind)
    n = args.n
    if kind is GInverseKind.GROUP:
        result = group_inverse(a)
    elif kind is GInverseKind.ONE_THREE_E:
        result = inv_13e(a, e)
    elif kind is GInverseKind.ONE_FOUR_F:
        result = inv_14f(a, f)
    elif kind is GInverseKind.WEIGHTED_MP:
        result = weighted_mp(a, e, f)
    elif kind is GInverseKind.E_CORE:
        result = e_core_via_power(a, e, n) if n is not None and n >= 2 else e_core(a, e)
    else:
        result = (
            f_dual_core_via_power(a, f, n) if n is not None and n >= 2 else f_dual_core(a, f)
        )
    if isinstance(result, NotInvertible):
        _emit(not_invertible_to_json(result), args.out)
    else:
        _emit(certificate_to_json(result), args.out)
    return 0


def _verify_certificate(args, payload, a: Mat) -> int:
    cert = certificate_from_json(payload)
    e = _load_weight(args.e, a.n, a.field)
    f = _load_weight(args.f, a.n, a.field)
    report = verify(cert.kind, a, cert.value, e=e, f=f)
    _emit(
        {
            "kind": cert.kind.value,
            "ok": report.ok,
            "equations": {label: ok for label, ok in report.results},
            "failed": list(report.failed),
        },
        args.out,
    )
    return 0 if report.ok else 1


def _verify_decomposition(args, payload, a: Mat) -> int:
    d = decomposition_from_json(payload)
    if d.side is Side.CORE:
        w = _load_weight(args.e, a.n, a.field)
        direct = e_core(a, w)
        rebuild = {
            Flavor.IDEM_P: lambda: core_from_pu(a, w, d),
            Flavor.IDEM_Q: lambda: core_from_qw(a, w, d),
            Flavor.ELEM_S: lambda: core_from_s(a, w, d.element, d.n),
            Flavor.ELEM_T: lambda: core_from_t(a, w, d.element, d.n),
        }[d.flavor]
    else:
        w = _load_weight(args.f, a.n, a.field)
        direct = f_dual_core(a, w)
        rebuild = {
            Flavor.IDEM_P: lambda: dual_from_pu(a, w, d),
            Flavor.IDEM_Q: lambda: dual_from_qw(a, w, d),
            Flavor.ELEM_S: lambda: dual_from_s(a, w, d.element, d.n),
            Flavor.ELEM_T: lambda: dual_from_t(a, w, d.element, d.n),
        }[d.flavor]
    try:
        if d.flavor in (Flavor.ELEM_S, Flavor.ELEM_T):
            if d.unit != unit_for(a, d.element, d.n, d.flavor, d.side):
                raise InvalidCertificateError("unit does not match its defining formula")
        reconstructed = rebuild()
    except InvalidCertificateError as exc:
        _emit({"ok": False, "error": str(exc)}, args.out)
        return 1
    ok = not isinstance(direct, NotInvertible) and reconstructed == direct.value
    _emit(
        {
            "ok": ok,
            "reconstructed": mat_to_json(reconstructed),
            "direct": None if isinstance(direct, NotInvertible) else mat_to_json(direct.value),
        },
        args.out,
    )
    return 0 if ok else 1


def cmd_verify(args) -> int:
    a = _load_matrix(args.a)
    payload = _load_json(args.cert)
    if not isinstance(payload, dict):
        raise ValueError("certificate must be a JSON object")
    if "flavor" in payload:
        return _verify_decomposition(args, payload, a)
    return _verify_certificate(args, payload, a)


def cmd_ep(args) -> int:
    a = _load_matrix(args.a)
    e = _load_weight(args.e, a.n, a.field)
    f = _load_weight(args.f, a.n, a.field)
    report = is_weighted_ep(a, e, f)

    def side(result):
        if isinstance(result, NotInvertible):
            return not_invertible_to_json(result)
        return certificate_to_json(result)

    _emit(
        {
            "weighted_ep": report.weighted_ep,
            "e_core": side(report.e_core),
            "f_dual_core": side(report.f_dual_core),
            "p": None if report.p is None else mat_to_json(report.p),
        },
        args.out,
    )
    return 0


def cmd_oracle(args) -> int:
    if args.sample is not None and args.seed is None:
        print("error: --sample requires an explicit --seed", file=sys.stderr)
        return 2
    try:
        report = cross_check_sweep(
            args.p, args.dim, n=args.n or 1, sample=args.sample, seed=args.seed
        )
    except SpaceTooLargeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(report, args.out)
    return 0 if not report["mismatches"] else 1


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coreinv",
        description="Exact weighted core / dual core / group / weighted Moore-Penrose"
        " inverses of square matrices, with verifiable certificates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, need_kind=False):
        if need_kind:
            p.add_argument(
                "--kind",
                required=True,
                choices=[k.value for k in GInverseKind],
                help="which inverse to compute",
            )
        p.add_argument("--a", required=True, help="path to the matrix JSON")
        p.add_argument("--e", help="path to the weight e (defaults to the identity)")
        p.add_argument("--f", help="path to the weight f (defaults to the identity)")
        p.add_argument("--out", help="write the JSON result here instead of stdout")

    p_compute = sub.add_parser("compute", help="compute an inverse certificate")
    add_common(p_compute, need_kind=True)
    p_compute.add_argument(
        "--n",
        type=int,
        choices=range(1, 9),
        metavar="N",
        help="power-representation exponent (1..8); n >= 2 selects the power path",
    )
    p_compute.set_defaults(func=cmd_compute)

    p_verify = sub.add_parser(
        "verify", help="replay a certificate (inverse or decomposition) against a"
    )
    add_common(p_verify)
    p_verify.add_argument("--cert", required=True, help="path to the certificate JSON")
    p_verify.set_defaults(func=cmd_verify)

    p_ep = sub.add_parser("ep", help="test whether a is weighted-EP for (e, f)")
    add_common(p_ep)
    p_ep.add_argument("--n", type=int, choices=range(1, 9), metavar="N")
    p_ep.set_defaults(func=cmd_ep)

    p_oracle = sub.add_parser("oracle", help="differential sweep against brute force")
    p_oracle.add_argument("--p", type=int, required=True, choices=SUPPORTED_PRIMES)
    p_oracle.add_argument("--dim", type=int, required=True)
    p_oracle.add_argument("--n", type=int, choices=range(1, 9), metavar="N")
    p_oracle.add_argument("--sample", type=int, help="sampled mode: instances per sweep")
    p_oracle.add_argument("--seed", type=int, help="seed for sampled mode (required)")
    p_oracle.add_argument("--out")
    p_oracle.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, TypeError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint():  # console-script shim
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
