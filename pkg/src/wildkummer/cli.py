"""Command-line front end.

Exit codes: 0 verified or constructed, 1 a mathematical check failed,
2 a resource limit was hit, 3 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Callable, Sequence

from . import action, formalgroup, kummer, local
from .field import FieldDesc, FieldError, parse_field_spec
from .groebner import GBCache, Limits, ResourceLimitExceeded
from .poly import PolyError, PolyRing

EXIT_OK, EXIT_FAIL, EXIT_LIMIT, EXIT_USAGE = 0, 1, 2, 3

STATUS = {EXIT_OK: "PASS", EXIT_FAIL: "FAIL", EXIT_LIMIT: "RESOURCE_LIMIT", EXIT_USAGE: "USAGE_ERROR"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


class Outcome:
    """What a subcommand hands back for printing."""

    def __init__(self, result, certificate=None, text: str = "", code: int = EXIT_OK):
        self.result = result
        self.certificate = certificate
        self.text = text
        self.code = code


# -- argument plumbing ------------------------------------------------------------------

def _common(p: argparse.ArgumentParser, *, curve: bool = False, ext_default: int = 1) -> None:
    p.add_argument("--char", type=int, default=2, help="field characteristic")
    p.add_argument("--ext", type=int, default=ext_default, help="extension degree k of GF(p^k)")
    p.add_argument("--modulus", help="defining polynomial coefficients, low to high, comma separated")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--cache-dir", help="Gröbner basis cache directory")
    p.add_argument("--no-cache", action="store_true", help="do not read or write the cache")
    p.add_argument("--timeout", type=float, default=None, help="seconds per Gröbner computation")
    p.add_argument("--degree-cap", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    if curve:
        p.add_argument("--g", type=int, default=2, help="number of elliptic factors")
        p.add_argument("--supersingular", type=int, default=0, help="how many factors are supersingular")
        p.add_argument("--j", help="j-invariants of the ordinary factors, comma separated")


def _action_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--vars", help="variable names, comma separated")
    p.add_argument("--sigma", help="images such as 'y=y+x', comma separated")
    p.add_argument("--ideal", help="ideal generators, comma separated")
    p.add_argument("--order", type=int, default=None, help="group order p (defaults to the characteristic)")
    p.add_argument("--degree", type=int, default=4)
    p.add_argument("--shaped", action="store_true", help="preset B_i -> B_i + A_i^e_i with the matching curve ideal")
    p.add_argument("--e", default="1", help="exponents for --shaped, comma separated")
    p.add_argument("--swap-example", action="store_true", help="preset: coordinate swap modulo (X + Y)")
    p.add_argument("--campbell-hughes", type=int, metavar="G", default=None,
                   help="preset: y_i -> y_i + x_i on 2G variables, no ideal")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="wildkummer", description="Invariants of wild involutions and Kummer singularities.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    _common(sub.add_parser("generators", help="invariant generators f_M"), curve=True)
    _common(sub.add_parser("relations", help="relation ideal J"), curve=True)
    _common(sub.add_parser("verify-containment", help="J is contained in ker(psi)"), curve=True)
    p = sub.add_parser("verify-kernel", help="ker(psi) = J by elimination")
    _common(p, curve=True)
    p.add_argument("--allow-heavy", action="store_true", help="permit g >= 3")
    _common(sub.add_parser("embdim", help="embedding dimension at the singular point"), curve=True)
    _common(sub.add_parser("minimal-presentation", help="presentation without the trivial generators"), curve=True)
    p = sub.add_parser("singularity", help="formal normal forms for g = 2")
    _common(p, curve=True)
    p.add_argument("--all", action="store_true", help="check every number of supersingular factors")
    p.add_argument("--order", type=int, default=local.DEFAULT_ORDER, help="truncation order")
    p = sub.add_parser("formal-groups", help="formal group decompositions")
    _common(p)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--torsion", type=int, default=None, help="exponent r for 2^r points of order <= 2")
    p = sub.add_parser("verify-shioda", help="rational parametrization of the supersingular surface")
    _common(p, ext_default=2)
    p.add_argument("--omega", help="cube root of unity to use (field syntax)")
    p.add_argument("--swap", action="store_true", help="substitute with V1 and V2 exchanged")
    _common(sub.add_parser("verify-threefold", help="function field identities for g = 3"))
    _common(sub.add_parser("verify-lemma-phi", help="identities of the supersingular chart"))
    p = sub.add_parser("invariants", help="bounded-degree basis of invariants")
    _common(p)
    _action_flags(p)
    p.add_argument("--check-generation", action="store_true",
                   help="with --campbell-hughes, test the listed generators up to --degree")
    p = sub.add_parser("check-surjectivity", help="do quotient invariants lift, up to a degree")
    _common(p)
    _action_flags(p)
    p.add_argument("--lift-degree", type=int, default=None)
    return parser


def _field(args) -> FieldDesc:
    return parse_field_spec(args.char, args.ext, args.modulus)


def _limits(args, default: Limits | None = None) -> Limits:
    cache = getattr(args, "cache", None)
    timeout = args.timeout if args.timeout is not None else (default.timeout if default else None)
    cap = args.degree_cap if args.degree_cap is not None else (default.degree_cap if default else None)
    return Limits(timeout=timeout, degree_cap=cap, workers=args.workers, cache=cache)


def _config(args, field: FieldDesc) -> kummer.CurveConfig:
    j = None
    if args.j:
        j = [field.parse(t.strip()) for t in args.j.split(",")]
    return kummer.CurveConfig.make(args.g, supersingular=args.supersingular, j=j, field=field)


def _split(text: str | None) -> list[str]:
    return [t.strip() for t in (text or "").split(",") if t.strip()]


def _action_from_args(args, field: FieldDesc):
    presets = sum(bool(x) for x in (args.shaped, args.swap_example, args.campbell_hughes is not None))
    if presets > 1:
        raise UsageError("choose at most one preset")
    if args.shaped:
        return action.shaped_action(field, [int(e) for e in _split(args.e)])
    if args.swap_example:
        return action.swap_example(field)
    if args.campbell_hughes is not None:
        return action.campbell_hughes_generators(field, args.campbell_hughes)
    if not args.vars or not args.sigma:
        raise UsageError("give --vars and --sigma, or a preset")
    ring = PolyRing(field, args.vars)
    images = {}
    for item in _split(args.sigma):
        name, sep, rhs = item.partition("=")
        if not sep:
            raise UsageError(f"bad --sigma entry {item!r}; expected name=polynomial")
        images[name.strip()] = ring.parse(rhs)
    act = action.make_action(ring, args.order or field.p, images)
    return act, [ring.parse(t) for t in _split(args.ideal)]


# -- subcommands ------------------------------------------------------------------------

def cmd_generators(args) -> Outcome:
    cfg = _config(args, _field(args))
    traces = kummer.invariant_generators(cfg)
    gens = {kummer.t_name(m, cfg.g): str(f) for m, f in traces.items()}
    for i in range(1, cfg.g + 1):
        gens[f"X{i}" if i <= cfg.r else f"V{i}"] = f"x{i}" if i <= cfg.r else f"v{i}"
    text = "\n".join(f"{k} -> {v}" for k, v in gens.items())
    return Outcome({"config": cfg.describe(), "generators": gens}, text=text)


def cmd_relations(args) -> Outcome:
    cfg = _config(args, _field(args))
    rs = kummer.relation_set(cfg)
    lines = [r.to_line() for r in rs.relations()]
    return Outcome({"config": cfg.describe(), "counts": rs.counts(), "relations": lines},
                   text="\n".join(lines))


def cmd_verify_containment(args) -> Outcome:
    cfg = _config(args, _field(args))
    cert = kummer.verify_containment(cfg, limits=_limits(args), raise_on_failure=False)
    n = len(cert.entries)
    bad = [e for e in cert.entries if not e["zero"]]
    text = f"{'PASS' if cert.passed else 'FAIL'}: {n - len(bad)}/{n} relations reduce to 0 modulo I"
    for e in bad:
        text += f"\n  {e['family']}[{e['label']}] -> {e['normal_form']}"
    return Outcome({"passed": cert.passed, "relations_checked": n}, cert.to_dict(), text,
                   EXIT_OK if cert.passed else EXIT_FAIL)


def cmd_verify_kernel(args) -> Outcome:
    cfg = _config(args, _field(args))
    if cfg.g >= 3 and not args.allow_heavy:
        raise UsageError(f"verify-kernel with g={cfg.g} needs --allow-heavy")
    cert = kummer.verify_kernel(cfg, allow_heavy=args.allow_heavy, raise_on_failure=False,
                                limits=_limits(args, kummer.KERNEL_LIMITS))
    text = (f"{'PASS' if cert.passed else 'FAIL'}: ker(psi) {'=' if cert.passed else '!='} J "
            f"({len(cert.kernel)} kernel generators, {len(cert.comparison.b_mod_a)} generators of J)")
    for w in cert.comparison.witnesses():
        text += f"\n  witness: {w}"
    return Outcome({"passed": cert.passed, "kernel_generators": len(cert.kernel)}, cert.to_dict(), text,
                   EXIT_OK if cert.passed else EXIT_FAIL)


def cmd_embdim(args) -> Outcome:
    cfg = _config(args, _field(args))
    cert = kummer.embedding_dimension(kummer.relation_set(cfg))
    return Outcome({"embedding_dimension": cert.value}, cert.to_dict(), str(cert.value))


def cmd_minimal_presentation(args) -> Outcome:
    cfg = _config(args, _field(args))
    mp = kummer.minimal_presentation(kummer.relation_set(cfg))
    rels = [f"{lab}: {f}" for lab, f in zip(mp.labels, mp.relations)]
    text = "variables: " + ", ".join(mp.ring.names) + "\n" + "\n".join(rels)
    return Outcome({"variables": list(mp.ring.names), "relations": rels}, text=text)


def cmd_singularity(args) -> Outcome:
    field = _field(args)
    if args.g != 2:
        raise UsageError("singularity normal forms are implemented for g = 2")
    j = [field.parse(t.strip()) for t in args.j.split(",")] if args.j else None
    cases = [0, 1, 2] if args.all else [2 - args.supersingular]
    certs = []
    for s in cases:
        r = 2 - s
        jj = j[:r] if j is not None else None
        certs.append(local.verify_normal_form(r, jj, args.order, field, raise_on_failure=False))
    ok = all(c.passed for c in certs)
    text = "\n".join(
        f"{'PASS' if c.passed else 'FAIL'} r={c.r} {c.singularity}: relation {c.relation}; "
        f"normal form {c.normal_form}; unit {c.unit}" for c in certs
    )
    return Outcome({"passed": ok, "types": [c.singularity for c in certs]},
                   [c.to_dict() for c in certs], text, EXIT_OK if ok else EXIT_FAIL)


def cmd_formal_groups(args) -> Outcome:
    if args.torsion is not None:
        d = formalgroup.decomposition_from_torsion(args.dim, args.torsion)
        text = d.label() + ("  [isomorphism class not determined by isogeny label]" if d.ambiguous else "")
        return Outcome({"decomposition": d.to_dict()}, text=text)
    ds = formalgroup.enumerate_decompositions(args.dim)
    lines = [d.label() + ("  [ambiguous]" if d.ambiguous else "") for d in ds]
    return Outcome({"count": len(ds), "decompositions": [d.to_dict() for d in ds]}, text="\n".join(lines))


def cmd_verify_shioda(args) -> Outcome:
    field = _field(args)
    omega = field.parse(args.omega) if args.omega else None
    cert = kummer.shioda_parametrization_check(field, omega, swap=args.swap, raise_on_failure=False)
    text = f"{'PASS' if cert.passed else 'FAIL'}: numerator = {cert.numerator}"
    return Outcome({"passed": cert.passed}, cert.to_dict(), text, EXIT_OK if cert.passed else EXIT_FAIL)


def _identity_outcome(checks) -> Outcome:
    ok = all(c.passed for c in checks)
    text = "\n".join(f"{'PASS' if c.passed else 'FAIL'} {c.name}: NF = {c.normal_form}" for c in checks)
    return Outcome({"passed": ok, "identities": len(checks)}, [c.to_dict() for c in checks], text,
                   EXIT_OK if ok else EXIT_FAIL)


def cmd_verify_threefold(args) -> Outcome:
    return _identity_outcome(kummer.function_field_identities(_field(args), limits=_limits(args),
                                                              raise_on_failure=False))


def cmd_verify_lemma_phi(args) -> Outcome:
    return _identity_outcome(kummer.lemma_phi_check(_field(args), raise_on_failure=False))


def cmd_invariants(args) -> Outcome:
    field = _field(args)
    act, ideal = _action_from_args(args, field)
    limits = _limits(args)
    if args.check_generation:
        if args.campbell_hughes is None:
            raise UsageError("--check-generation needs --campbell-hughes")
        rep = action.check_generation(act, ideal, args.degree, limits=limits)
        text = (f"{'PASS' if rep.generated else 'FAIL'}: {rep.dim_invariants} basis invariants of degree "
                f"<= {rep.degree}, {len(rep.missing)} outside the subalgebra")
        for m in rep.missing[:5]:
            text += f"\n  missing: {m}"
        return Outcome(rep.to_dict(), text=text, code=EXIT_OK if rep.generated else EXIT_FAIL)
    if args.campbell_hughes is not None:
        ideal = []
    basis = action.invariant_basis_bounded(act, args.degree, ideal, limits=limits)
    lines = [str(b) for b in basis]
    return Outcome({"degree": args.degree, "dimension": len(basis), "basis": lines}, text="\n".join(lines))


def cmd_check_surjectivity(args) -> Outcome:
    field = _field(args)
    act, ideal = _action_from_args(args, field)
    if args.campbell_hughes is not None:
        ideal = []
    rep = action.check_quotient_surjectivity(act, ideal, args.degree, lift_degree=args.lift_degree,
                                             limits=_limits(args))
    text = (f"{'PASS' if rep.surjective else 'FAIL'}: {rep.dim_image}/{rep.dim_invariants} invariant "
            f"classes of degree <= {rep.degree} lift (lift degree {rep.lift_degree})")
    for w in rep.witnesses:
        text += f"\n  witness: {w}"
    return Outcome(rep.to_dict(), text=text, code=EXIT_OK if rep.surjective else EXIT_FAIL)


COMMANDS: dict[str, Callable] = {
    "generators": cmd_generators,
    "relations": cmd_relations,
    "verify-containment": cmd_verify_containment,
    "verify-kernel": cmd_verify_kernel,
    "embdim": cmd_embdim,
    "minimal-presentation": cmd_minimal_presentation,
    "singularity": cmd_singularity,
    "formal-groups": cmd_formal_groups,
    "verify-shioda": cmd_verify_shioda,
    "verify-threefold": cmd_verify_threefold,
    "verify-lemma-phi": cmd_verify_lemma_phi,
    "invariants": cmd_invariants,
    "check-surjectivity": cmd_check_surjectivity,
}

USAGE_ERRORS = (
    UsageError, FieldError, PolyError, kummer.KummerError, kummer.HeavyComputationRefused,
    action.ActionError, local.SeriesError, formalgroup.FormalGroupError,
)


def _emit(args, argv, outcome: Outcome, elapsed: float, hits: int, out) -> None:
    if getattr(args, "format", "text") == "json":
        field = None
        try:
            field = _field(args).describe()
        except Exception:  # field flags themselves may be the usage error
            pass
        doc = {
            "command": list(argv),
            "field": field,
            "result": outcome.result,
            "certificate": outcome.certificate,
            "status": STATUS[outcome.code],
            "wall_time": round(elapsed, 6),
            "cache_hits": hits,
        }
        out.write(json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n")
    elif outcome.text:
        out.write(outcome.text + "\n")


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    out = out or sys.stdout
    err = err or sys.stderr
    start = time.perf_counter()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    args.cache = None if args.no_cache else GBCache(args.cache_dir)
    try:
        outcome = COMMANDS[args.command](args)
    except USAGE_ERRORS as exc:
        outcome = Outcome(None, text="", code=EXIT_USAGE)
        err.write(f"usage error: {exc}\n")
    except ResourceLimitExceeded as exc:
        outcome = Outcome(None, text="", code=EXIT_LIMIT)
        err.write(f"resource limit: {exc}\n")
    except kummer.VerificationFailed as exc:
        cert = exc.certificate
        payload = cert.to_dict() if hasattr(cert, "to_dict") else None
        outcome = Outcome({"passed": False}, payload, f"FAIL: {exc}", EXIT_FAIL)
    elapsed = time.perf_counter() - start
    hits = args.cache.hits if args.cache is not None else 0
    _emit(args, argv, outcome, elapsed, hits, out)
    return outcome.code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
