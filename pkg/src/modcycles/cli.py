"""Command-line front end.

Reads cycle/symbol JSON or inline polynomial text, runs the checkers and
witness generators, and emits deterministic JSON reports.  Exit codes:
0 success/Valid, 1 verification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .fields import FieldError, make_field
from .polyring import PolyError, VarSet, parse_poly, parse_ratfunc, parse_unipoly
from .cycles import (
    CoordModel,
    CycleError,
    HypersurfaceCycle,
    ModulusDatum,
    ModulusVerdict,
    boundary,
    check_face_condition,
    check_modulus_codim1,
    check_modulus_zerocycle,
    curve_boundary,
    psi_convert,
)
from .milnor import (
    FunctionField,
    MilnorError,
    Valuation,
    k2_presentation_oracle,
    symbol_reduce,
    tame_symbol,
    total_delta,
    totaro_mult_curve,
    totaro_steinberg_curve,
    verify_mult_curve,
    verify_steinberg_curve,
    verify_xi_curve,
    xi_curve,
    MilnorElement,
    MilnorSymbol,
)
from .witnesses import (
    WitnessError,
    bounding_surface,
    generator_cycle,
    rho,
    verify_certificate,
    zero_cycle_vanishing_witness,
    WitnessCertificate,
)
from . import serialize as ser
from .suites import run_suites

from .polyring import RatFunc
from .fields import UniPoly


class InputError(Exception):
    pass


def _parse_field(text: str):
    if text in ("Q", "q"):
        return make_field(0)
    parts = text.split(":")
    if parts[0] in ("Fp", "fp") and len(parts) == 2:
        return make_field(int(parts[1]))
    if parts[0] in ("Fq", "fq") and len(parts) == 3:
        p = int(parts[1])
        mu = parse_unipoly(parts[2], make_field(p), var="u")
        return make_field(p, mu)
    raise InputError(f"cannot parse field {text!r}; use Q, Fp:p, or Fq:p:mu")


def _parse_model(text: str) -> CoordModel:
    try:
        return CoordModel(text.upper())
    except ValueError:
        raise InputError(f"model must be 'original' or 'psi', got {text!r}") from None


def _parse_modulus(text: str, spec) -> ModulusDatum:
    exps = [int(x) for x in text.split(",") if x.strip()]
    return ModulusDatum.monomial(spec, exps)


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def _load_cycle(args):
    """Cycle plus modulus from --file or --inline plus flags."""
    if args.file:
        data = _load_json(args.file)
        if "terms" in data:
            Z, D = ser.cycle_from_json(data)
        else:
            Z, D = ser.zerocycle_from_json(data)
        if D is None and getattr(args, "modulus", None):
            D = _parse_modulus(args.modulus, Z.spec)
        return Z, D
    if args.inline:
        if not args.field:
            raise InputError("--inline needs --field")
        spec = _parse_field(args.field)
        if not args.modulus:
            raise InputError("--inline needs --modulus to fix the t-variable count")
        D = _parse_modulus(args.modulus, spec)
        model = _parse_model(args.model)
        vars = VarSet(D.r, args.n)
        poly = parse_poly(args.inline, spec, vars)
        return HypersurfaceCycle.from_poly(poly, model), D
    raise InputError("provide --file or --inline")


def _emit(report: dict, args) -> None:
    text = json.dumps(report, indent=2) + "\n"
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- subcommand handlers -------------------------------------------------------


def cmd_check_cycle(args) -> int:
    Z, D = _load_cycle(args)
    report = {}
    face = check_face_condition(Z)
    report["face"] = "pass" if face.passed else "fail"
    if face.violations:
        report["violations"] = [v.to_json() for v in face.violations]
    ok = face.passed
    if isinstance(Z, HypersurfaceCycle):
        if D is not None:
            mod = check_modulus_codim1(Z, D)
            report["modulus"] = mod.verdict.value
            ok = ok and mod.verdict is ModulusVerdict.CERTIFIED
    else:
        if D is not None:
            good = check_modulus_zerocycle(Z, D)
            report["modulus"] = bool(good)
            ok = ok and good
    _emit(report, args)
    return 0 if ok else 1


def cmd_boundary(args) -> int:
    if args.curve:
        data = _load_json(args.curve)
        C = ser.curve_from_json(data)
        emb = None
        if "embedding" in data:
            emb = ser.embedding_from_json(data["embedding"], C.spec)
        out = curve_boundary(C, embedding=emb, flip_inner=args.flip_sign)
        _emit(ser.zerocycle_to_json(out), args)
        return 0
    Z, D = _load_cycle(args)
    if not isinstance(Z, HypersurfaceCycle):
        raise InputError("0-cycles have no boundary; use --curve for curves")
    out = boundary(Z, flip_inner=args.flip_sign,
                   level0_flag=args.level0_degeneracy == "on")
    _emit(ser.cycle_to_json(out, D), args)
    return 0


def cmd_rho(args) -> int:
    Z, D = _load_cycle(args)
    value = rho(Z, D)
    _emit({"rho": ser.element_to_json(value)}, args)
    return 0


def cmd_witness_bounding(args) -> int:
    Z, D = _load_cycle(args)
    if D is None:
        raise InputError("a modulus is required")
    cert = bounding_surface(Z, D, level0_flag=args.level0_degeneracy == "on")
    _emit(cert.to_json(), args)
    return 0 if cert.valid else 1


def cmd_witness_zero_cycle(args) -> int:
    Z, D = _load_cycle(args)
    if D is None:
        raise InputError("a modulus is required")
    pts = Z.items()
    if len(pts) != 1 or pts[0][1] != 1:
        raise InputError("the witness generator takes a single point with multiplicity 1")
    cert = zero_cycle_vanishing_witness(
        pts[0][0], D, n=Z.n, model=Z.model,
        variant=args.variant.replace("-", "_"),
    )
    _emit(cert.to_json(), args)
    return 0 if cert.valid else 1


def cmd_generator(args) -> int:
    spec = _parse_field(args.field)
    a = spec.element(Fraction(args.a)) if spec.char == 0 else spec.element(int(args.a))
    Z, cert = generator_cycle(a, args.r, level0_flag=args.level0_degeneracy == "on")
    report = {
        "cycle": ser.cycle_to_json(Z, ModulusDatum.monomial(spec, [1] * args.r)),
        "rho": ser.element_to_json(rho(Z, ModulusDatum.monomial(spec, [1] * args.r))),
        "certificate": cert.to_json(),
    }
    _emit(report, args)
    return 0 if cert.valid else 1


def cmd_ktheory(args) -> int:
    if args.kaction == "k2-table":
        table = []
        ok = True
        for q in range(2, args.max_q + 1):
            try:
                pres = k2_presentation_oracle(q)
            except MilnorError:
                continue
            table.append(pres.to_json())
            ok = ok and pres.trivial
        _emit({"k2": table}, args)
        return 0 if ok else 1
    data = _load_json(args.file)
    elem = ser.milnor_element_from_json(data)
    if args.kaction == "reduce":
        red = symbol_reduce(elem, certificate_mode=args.certificate)
        report = {"result": ser.milnor_element_to_json(red.result)}
        if red.theorem_backed:
            report["theorem_backed"] = "Steinberg"
        if red.oracle is not None:
            report["oracle"] = red.oracle.to_json()
        _emit(report, args)
        return 0
    if args.kaction == "tame":
        ff = elem.field
        if not isinstance(ff, FunctionField):
            raise InputError("tame symbols need a function-field element")
        if args.infinity:
            v = Valuation(ff, None)
        elif args.pi:
            v = Valuation(ff, parse_unipoly(args.pi, ff.base).monic())
        else:
            raise InputError("give --pi or --infinity")
        out = tame_symbol(v, elem)
        _emit({"place": ser.place_to_json(v),
               "residue": ser.milnor_element_to_json(out)}, args)
        return 0
    if args.kaction == "delta":
        out = total_delta(elem)
        _emit({"residues": [
            {"place": ser.place_to_json(v), "value": ser.milnor_element_to_json(e)}
            for v, e in out.items()
        ]}, args)
        return 0
    raise InputError(f"unknown ktheory action {args.kaction!r}")


def cmd_curves(args) -> int:
    spec = _parse_field(args.field)
    if args.curve_kind == "totaro":
        entries = [spec.element(Fraction(x)) for x in args.entries.split(",")]
        if args.relation == "steinberg":
            f1, extra = entries[0], entries[1:]
            curve = totaro_steinberg_curve(f1, extra)
            out = verify_steinberg_curve(curve, f1, extra)
        else:
            if len(entries) != 2:
                raise InputError("the multiplicativity curve takes exactly f,g")
            curve = totaro_mult_curve(entries[0], entries[1])
            out = verify_mult_curve(curve, entries[0], entries[1])
        report = {
            "curve": ser.curve_to_json(curve),
            "boundary": ser.zerocycle_to_json(out.actual),
            "identity": bool(out.ok),
            "sign": out.sign,
        }
        _emit(report, args)
        return 0 if out.ok else 1
    if args.curve_kind == "xi":
        fs = [parse_ratfunc(x, spec) for x in args.entries.split(";")]
        u = parse_ratfunc(args.unit, spec)
        pi = parse_unipoly(args.pi, spec).monic()
        curve = xi_curve(fs, u, pi, args.power)
        ff = FunctionField(spec)
        sym = MilnorElement(ff, [(1, MilnorSymbol(ff, fs + [u * RatFunc.from_poly(pi) ** args.power]))])
        out = verify_xi_curve(curve, sym)
        report = {
            "curve": ser.curve_to_json(curve),
            "boundary": ser.zerocycle_to_json(out.actual),
            "identity": bool(out.ok),
            "sign": out.sign,
        }
        _emit(report, args)
        return 0 if out.ok else 1
    if args.curve_kind == "boundary":
        data = _load_json(args.file)
        C = ser.curve_from_json(data)
        emb = ser.embedding_from_json(data["embedding"], C.spec) if "embedding" in data else None
        out = curve_boundary(C, embedding=emb)
        _emit(ser.zerocycle_to_json(out), args)
        return 0
    raise InputError(f"unknown curves action {args.curve_kind!r}")


def cmd_convert_model(args) -> int:
    Z, D = _load_cycle(args)
    target = _parse_model(args.to)
    out = psi_convert(Z, target)
    if isinstance(out, HypersurfaceCycle):
        _emit(ser.cycle_to_json(out, D), args)
    else:
        _emit(ser.zerocycle_to_json(out, D), args)
    return 0


def cmd_suite(args) -> int:
    only = args.only.split(",") if args.only else None
    report = run_suites(args.seed, sizes=args.sizes, only=only)
    _emit(report, args)
    return 0 if report["all_passed"] else 1


def cmd_verify(args) -> int:
    data = _load_json(args.file)
    cert = WitnessCertificate.from_json(data)
    ok = verify_certificate(cert)
    _emit({"valid": bool(ok)}, args)
    return 0 if ok else 1


# -- argument wiring -----------------------------------------------------------


def _add_io(p, modulus=True, inline=True):
    p.add_argument("--file", help="input JSON path")
    if inline:
        p.add_argument("--inline", help="inline polynomial text")
        p.add_argument("--field", help="Q | Fp:p | Fq:p:mu")
        p.add_argument("--model", default="psi", help="original | psi")
        p.add_argument("--n", type=int, default=1, help="number of cube variables")
    if modulus:
        p.add_argument("--modulus", help="comma-separated monomial exponents")
    p.add_argument("--out", help="write the report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="modcycles",
        description="exact cycle calculus with modulus: checkers, boundaries, "
                    "residues, K-theory, and re-verifiable witnesses",
    )
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-cycle", help="face and modulus admissibility report")
    _add_io(p)
    p.set_defaults(fn=cmd_check_cycle)

    p = sub.add_parser("boundary", help="cubical boundary of a cycle or curve")
    _add_io(p)
    p.add_argument("--curve", help="curve JSON path (instead of a cycle)")
    p.add_argument("--flip-sign", action="store_true", help="opposite inner sign convention")
    p.add_argument("--level0-degeneracy", choices=("on", "off"), default="on")
    p.set_defaults(fn=cmd_boundary)

    p = sub.add_parser("rho", help="the residue invariant of a level-1 cycle")
    _add_io(p)
    p.set_defaults(fn=cmd_rho)

    p = sub.add_parser("witness-bounding", help="bounding-surface certificate at level 0")
    _add_io(p)
    p.add_argument("--level0-degeneracy", choices=("on", "off"), default="on")
    p.set_defaults(fn=cmd_witness_bounding)

    p = sub.add_parser("witness-zero-cycle", help="0-cycle vanishing witness")
    _add_io(p, inline=False)
    p.add_argument("--variant", choices=("plain", "product-base"), default="plain")
    p.set_defaults(fn=cmd_witness_zero_cycle)

    p = sub.add_parser("generator", help="generator cycle with rho = a")
    p.add_argument("--a", required=True, help="the target residue value")
    p.add_argument("--r", type=int, default=2, help="number of t-variables")
    p.add_argument("--field", required=True)
    p.add_argument("--level0-degeneracy", choices=("on", "off"), default="on")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_generator)

    p = sub.add_parser("ktheory", help="symbol reduction, tame symbols, residues, K2 table")
    p.add_argument("kaction", choices=("reduce", "tame", "delta", "k2-table"))
    p.add_argument("--file", help="symbol/element JSON path")
    p.add_argument("--pi", help="monic irreducible place")
    p.add_argument("--infinity", action="store_true", help="the place at infinity")
    p.add_argument("--certificate", action="store_true", help="oracle-backed reduction")
    p.add_argument("--max-q", type=int, default=16)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_ktheory)

    p = sub.add_parser("curves", help="witness curves and curve boundaries")
    p.add_argument("curve_kind", choices=("totaro", "xi", "boundary"))
    p.add_argument("--relation", choices=("steinberg", "mult"), default="steinberg")
    p.add_argument("--field", default="Q")
    p.add_argument("--entries", help="comma-separated field entries, or ';'-separated rational functions for xi")
    p.add_argument("--unit", help="the unit u for xi")
    p.add_argument("--pi", help="the uniformizer for xi")
    p.add_argument("--power", type=int, default=1, help="the exponent r for xi")
    p.add_argument("--file", help="curve JSON for 'boundary'")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_curves)

    p = sub.add_parser("convert-model", help="move a cycle between coordinate models")
    _add_io(p)
    p.add_argument("--to", required=True, help="original | psi")
    p.set_defaults(fn=cmd_convert_model)

    p = sub.add_parser("suite", help="run the seeded property suites")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--sizes", choices=("small", "full"), default="full")
    p.add_argument("--only", help="comma-separated suite names")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_suite)

    p = sub.add_parser("verify", help="re-verify a witness certificate")
    p.add_argument("--file", required=True)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_verify)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except (InputError, FieldError, PolyError, CycleError, MilnorError,
            WitnessError, ser.SerializationError, ValueError) as exc:
        sys.stdout.write(json.dumps(
            {"error": {"type": type(exc).__name__, "message": str(exc)}},
            indent=2) + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
