"""Command line: ``smallcovers gen|verify|report|census``.

Reports are ``key=value`` lines sorted by key.  Exit codes: 0 success,
1 a check failed, 2 bad input or parameters, 3 search exhausted.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .charfn import enumerate_charfns, format_charfn, parse_beta_arg, read_charfn
from .lift import (
    barycentric_lift,
    equilibrium_check,
    format_action,
    format_projection,
    format_zones,
    is_equivariant,
    lift_vertex_count,
    parse_action,
    parse_projection,
    parse_zones,
    project_check,
    translation_action,
)
from .polytope import make_polytope, read_polytope
from .projective import rpn_tri
from .search import SearchExhausted
from .simplicial import (
    ParseError,
    betti_mod2,
    format_cplx,
    integral_homology,
    is_pseudomanifold,
    mod2_from_integral,
    orientable,
    parse_cplx,
    verify_closed_manifold,
)
from .surfaces import audit_lower_bound, surface_2m, surface_2m4
from .threefolds import DEFAULT_CONFLICTS, TARGETS, build_target

CHECKS = ("manifold", "equivariance", "equilibrium", "homology", "duality", "projection")


class UsageError(Exception):
    """Bad parameters or unreadable input: exit code 2."""


def _bool(x) -> str:
    return "true" if x else "false"


def _emit(report: dict, out=None) -> str:
    text = "".join(f"{k}={report[k]}\n" for k in sorted(report))
    (out or sys.stdout).write(text)
    return text


def _homology_text(profile, k: int) -> str:
    return profile.describe(k).replace(" ", "")


def complex_report(X, homology: bool = True) -> dict:
    """Invariants of a complex: f-vector, chi, mod-2 Betti numbers and,
    optionally, integral homology."""
    r = {
        "dim": X.dim,
        "f": ",".join(map(str, X.f_vector())),
        "chi": X.euler_characteristic(),
    }
    b = betti_mod2(X)
    r["b2"] = ",".join(map(str, b))
    pm = is_pseudomanifold(X, with_boundary=True)
    r["orientable"] = _bool(orientable(X)) if pm else "n/a"
    if homology:
        prof = integral_homology(X)
        for k in range(X.dim + 1):
            r[f"h{k}"] = _homology_text(prof, k)
        r["uct"] = _bool(mod2_from_integral(prof) == b)
    return r


def _manifold_keys(X, r: dict) -> bool:
    rep = verify_closed_manifold(X)
    r["manifold"] = _bool(rep.ok)
    r["certificate"] = rep.certificate
    if X.dim == 2:
        r["closed_surface"] = _bool(rep.ok)
    if not rep.ok:
        r["manifold_reason"] = rep.reason
        if rep.witness is not None:
            r["manifold_witness"] = rep.witness
    return rep.ok


# --- polytope and beta arguments -----------------------------------------


def _polytope(spec: str):
    """``polygon:5``, ``simplex:3``, ``prism`` or a path to a polytope file."""
    kind, _, arg = spec.partition(":")
    if kind in ("polygon", "simplex", "prism"):
        try:
            return make_polytope(kind, int(arg) if arg else None)
        except (TypeError, ValueError) as e:
            raise UsageError(f"bad polytope {spec!r}: {e}") from None
    try:
        return read_polytope(spec)
    except (OSError, ValueError) as e:
        raise UsageError(f"cannot read polytope {spec!r}: {e}") from None


def _beta(args):
    try:
        if args.beta_file:
            return read_charfn(args.beta_file)
        if args.beta:
            return parse_beta_arg(args.beta)
    except (OSError, ValueError) as e:
        raise UsageError(str(e)) from None
    raise UsageError("a characteristic function is required (--beta or --beta-file)")


# --- gen --------------------------------------------------------------------


def _write(out: Path, files: dict, report: dict) -> None:
    out.mkdir(parents=True, exist_ok=True)
    for name in sorted(files):
        (out / name).write_text(files[name], encoding="utf-8")
    (out / "report.txt").write_text("".join(f"{k}={report[k]}\n" for k in sorted(report)), encoding="utf-8")


def _fillings_text(fillings: dict) -> str:
    return "".join(f"{k}: {fillings[k]}\n" for k in sorted(fillings))


def _gen_surface(args):
    beta = _beta(args)
    try:
        build = (surface_2m4 if args.kind == "eq2m4" else surface_2m)(args.m, beta)
    except ValueError as e:
        raise UsageError(str(e)) from None
    X = build.complex
    r = complex_report(X, args.homology)
    r["construction"] = f"surface-{build.kind}"
    _manifold_keys(X, r)
    r["equivariant"] = _bool(is_equivariant(X, build.action))
    audit = audit_lower_bound(build)
    r["projection"] = _bool(audit.projection_ok)
    r["lower_bound"] = audit.bound
    r["lower_bound_margin"] = audit.margin
    files = {
        "complex.cplx": format_cplx(X),
        "action.txt": format_action(build.action),
        "projection.txt": format_projection(build.projection),
        "polytope.txt": f"polygon:{args.m}\n",
        "beta.txt": format_charfn(beta),
    }
    if build.zones:
        files["zones.txt"] = format_zones(build.zones, X)
        r["equilibrium"] = _bool(equilibrium_check(X, build.zones, build.equilibrium, 2).ok)
    return files, r


def _gen_lift(args):
    P = _polytope(args.polytope)
    beta = _beta(args)
    try:
        L = barycentric_lift(P, beta)
    except ValueError as e:
        raise UsageError(str(e)) from None
    X = L.complex
    r = complex_report(X, args.homology)
    r["construction"] = "barycentric-lift"
    _manifold_keys(X, r)
    r["equivariant"] = _bool(is_equivariant(X, L.action))
    r["vertex_formula"] = lift_vertex_count(P)
    zones = L.zones()
    r["equilibrium"] = _bool(equilibrium_check(X, zones, L.equilibrium(), P.dim).ok)
    files = {
        "complex.cplx": format_cplx(X),
        "action.txt": format_action(L.action),
        "zones.txt": format_zones(zones),
        "projection.txt": format_projection(L.projection),
        "beta.txt": format_charfn(beta),
    }
    return files, r


def _gen_rpn(args):
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    try:
        build = rpn_tri(args.n, args.budget)
    except ValueError as e:
        raise UsageError(str(e)) from None
    X = build.complex
    r = complex_report(X, args.homology)
    r["construction"] = f"rp{args.n}"
    _manifold_keys(X, r)
    r["equivariant"] = _bool(is_equivariant(X, build.action))
    r["equilibrium"] = _bool(equilibrium_check(X, build.zones, build.equilibrium, args.n).ok)
    files = {
        "complex.cplx": format_cplx(X),
        "action.txt": format_action(build.action),
        "zones.txt": format_zones(build.zones, X),
        "fillings.txt": _fillings_text(build.filling),
    }
    return files, r


def _gen_threefold(args):
    try:
        build = build_target(args.target, args.budget)
    except ValueError as e:
        raise UsageError(str(e)) from None
    X = build.complex
    r = complex_report(X, args.homology)
    r["construction"] = build.spec.name
    _manifold_keys(X, r)
    r["equivariant"] = _bool(is_equivariant(X, translation_action(build.spec.beta, X.vertices)))
    r["equilibrium"] = _bool(equilibrium_check(X, build.zones, build.equilibrium, 3).ok)
    r["solver_rounds"] = build.rounds
    files = {
        "complex.cplx": format_cplx(X),
        "zones.txt": format_zones(build.zones, X),
        "fillings.txt": _fillings_text(build.fillings),
        "beta.txt": format_charfn(build.spec.beta),
    }
    return files, r


def cmd_gen(args) -> int:
    files, report = GENERATORS[args.what](args)
    _write(Path(args.out), files, report)
    _emit(report)
    return 0


GENERATORS = {"surface": _gen_surface, "lift": _gen_lift, "rpn": _gen_rpn, "threefold": _gen_threefold}


# --- verify / report ----------------------------------------------------------


def _read_text(path, what) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise UsageError(f"cannot read {what} {path}: {e.strerror}") from None


def _load_complex(path):
    try:
        return parse_cplx(_read_text(path, "complex"))
    except ParseError as e:
        raise UsageError(f"{path}: {e}") from None
    except ValueError as e:
        raise UsageError(f"{path}: {e}") from None


def cmd_verify(args) -> int:
    X = _load_complex(args.complex)
    wanted = CHECKS if not args.checks else tuple(c.strip() for c in args.checks.split(",") if c.strip())
    unknown = [c for c in wanted if c not in CHECKS]
    if unknown:
        raise UsageError(f"unknown check(s) {', '.join(unknown)}; choose from {', '.join(CHECKS)}")
    try:
        action = parse_action(_read_text(args.action, "action")) if args.action else None
        zones = parse_zones(_read_text(args.zones, "zones"), X) if args.zones else None
        P = _polytope(args.polytope) if args.polytope else None
        proj = parse_projection(_read_text(args.projection, "projection"), P) if args.projection and P else None
    except ValueError as e:
        raise UsageError(str(e)) from None
    if args.projection and P is None:
        raise UsageError("--projection needs --polytope")

    r = {"f": ",".join(map(str, X.f_vector())), "chi": X.euler_characteristic()}
    if is_pseudomanifold(X, with_boundary=True):
        r["orientable"] = _bool(orientable(X))
    failed = []
    explicit = bool(args.checks)

    def skip(name, why):
        if explicit:
            raise UsageError(f"check {name} needs {why}")

    for check in wanted:
        if check == "manifold":
            if not _manifold_keys(X, r):
                failed.append(check)
        elif check == "equivariance":
            if action is None:
                skip(check, "--action")
                continue
            try:
                ok = is_equivariant(X, action)
            except ValueError as e:
                ok = False
                r["equivariant_reason"] = str(e)
            r["equivariant"] = _bool(ok)
            if not ok:
                failed.append(check)
        elif check == "equilibrium":
            if zones is None:
                skip(check, "--zones")
                continue
            eq = sorted(v for v in X.vertices if str(v).startswith("F∅|"))
            rep = equilibrium_check(X, zones, eq, X.dim)
            r["equilibrium"] = _bool(rep.ok)
            if not rep.ok:
                r["equilibrium_reason"] = rep.reason
                if rep.witness is not None:
                    r["equilibrium_witness"] = rep.witness
                failed.append(check)
        elif check == "homology":
            prof = integral_homology(X)
            b = betti_mod2(X)
            r["b2"] = ",".join(map(str, b))
            euler = sum((-1) ** k * x for k, x in enumerate(b)) == X.euler_characteristic()
            uct = mod2_from_integral(prof) == b
            r["homology"] = _bool(euler and uct)
            if not (euler and uct):
                failed.append(check)
        elif check == "duality":
            b = betti_mod2(X)
            ok = b == b[::-1]
            r["duality"] = _bool(ok)
            if not ok:
                failed.append(check)
        elif check == "projection":
            if proj is None or action is None:
                skip(check, "--projection, --polytope and --action")
                continue
            try:
                rep = project_check(X, action, P, proj)
                ok, why = rep.ok, rep.reason
            except (ValueError, KeyError) as e:
                ok, why = False, str(e)
            r["projection"] = _bool(ok)
            if not ok:
                r["projection_reason"] = why
                failed.append(check)
    r["verified"] = _bool(not failed)
    _emit(r)
    return 1 if failed else 0


def cmd_report(args) -> int:
    X = _load_complex(args.complex)
    _emit(complex_report(X, homology=True))
    return 0


def cmd_census(args) -> int:
    P = _polytope(args.polytope)
    try:
        betas = enumerate_charfns(P, args.cutoff)
    except ValueError as e:
        raise UsageError(str(e)) from None
    chis, f0s = {}, {}
    for beta in betas:
        L = barycentric_lift(P, beta)
        chis.setdefault(L.euler_characteristic(), []).append(beta)
        f0s.setdefault(L.vertex_count(), []).append(beta)
    r = {
        "betas": len(betas),
        "chi": ",".join(map(str, sorted(chis))),
        "f0": ",".join(map(str, sorted(f0s))),
        "f0_formula": lift_vertex_count(P),
        "independent": _bool(len(chis) <= 1 and len(f0s) <= 1),
    }
    if args.list:
        for i, beta in enumerate(betas):
            chi = next(c for c, bs in chis.items() if beta in bs)
            r[f"beta{i:05d}"] = ",".join(beta.as_rows()) + f" chi={chi}"
    _emit(r)
    return 0 if r["independent"] == "true" else 1


# --- argument parsing ---------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="smallcovers", description="Triangulations of small covers.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="build a triangulation and write it to a directory")
    gsub = g.add_subparsers(dest="what", required=True)

    def common(q, budget=None):
        q.add_argument("--out", required=True, help="output directory")
        q.add_argument("--homology", action=argparse.BooleanOptionalAction, default=True,
                       help="include integral homology in the report")
        if budget is not None:
            q.add_argument("--budget", type=_positive, default=budget, help="search limit")

    s = gsub.add_parser("surface", help="equivariant surface over an m-gon")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--beta", help="comma separated vectors, e.g. 10,01,10,01")
    s.add_argument("--beta-file")
    s.add_argument("--kind", choices=("eq2m4", "eq2m"), default="eq2m4")
    common(s)

    li = gsub.add_parser("lift", help="barycentric lift of a polytope")
    li.add_argument("--polytope", required=True, help="polygon:M, simplex:N, prism or a file")
    li.add_argument("--beta")
    li.add_argument("--beta-file")
    common(li)

    rp = gsub.add_parser("rpn", help="equilibrium triangulation of RP^n")
    rp.add_argument("--n", type=int, required=True)
    common(rp, budget=200_000)

    t = gsub.add_parser("threefold", help="one of the 3-manifold targets")
    t.add_argument("--target", required=True, choices=TARGETS)
    common(t, budget=DEFAULT_CONFLICTS)

    v = sub.add_parser("verify", help="run checks on a .cplx file")
    v.add_argument("complex")
    v.add_argument("--action")
    v.add_argument("--zones")
    v.add_argument("--projection")
    v.add_argument("--polytope", help="needed with --projection")
    v.add_argument("--checks", help=f"comma separated subset of {','.join(CHECKS)}")

    r = sub.add_parser("report", help="invariants of a .cplx file")
    r.add_argument("complex")

    c = sub.add_parser("census", help="lift every characteristic function of a polytope")
    c.add_argument("--polytope", required=True)
    c.add_argument("--cutoff", type=_positive, default=2_000_000)
    c.add_argument("--list", action="store_true", help="one line per characteristic function")
    return p


def _positive(text: str) -> int:
    try:
        x = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if x < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return x


COMMANDS = {"gen": cmd_gen, "verify": cmd_verify, "report": cmd_report, "census": cmd_census}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except SearchExhausted as e:
        print(f"error: search exhausted: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
