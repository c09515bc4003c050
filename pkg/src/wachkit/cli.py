"""Command-line front end. JSON on stdout, diagnostics on stderr.

Exit status: 0 success, 1 usage error, 2 verification failure.
"""

from __future__ import annotations

import functools
import json
import sys

import click
import sympy

from . import characters as ch
from . import families as fm
from . import filtered as fl
from . import gamma_solver as gs
from . import reduction as rd
from .errors import WachkitError
from .padic import PrecisionBudget
from .series import GammaElement

EXIT_USAGE, EXIT_VERIFY = 1, 2


class VerificationExit(Exception):
    def __init__(self, payload):
        self.payload = payload


def _ints(text: str | None, name: str) -> tuple[int, ...] | None:
    if text is None:
        return None
    try:
        return tuple(int(t) for t in text.split(",") if t.strip() != "")
    except ValueError:
        raise click.UsageError(f"--{name} expects comma-separated integers") from None


def _emit(ctx: click.Context, payload):
    fmt = ctx.obj["format"]
    if fmt == "json":
        click.echo(json.dumps(payload, sort_keys=True, indent=2))
    else:
        click.echo(_table(payload))


def _table(payload) -> str:
    if isinstance(payload, dict) and "rows" in payload and isinstance(payload["rows"], list):
        rows = payload["rows"]
        head = [f"{k}: {_cell(v)}" for k, v in sorted(payload.items()) if k != "rows"]
        return "\n".join(head + [_rows(rows)])
    if isinstance(payload, dict):
        width = max((len(k) for k in payload), default=0)
        return "\n".join(f"{k.ljust(width)}  {_cell(v)}" for k, v in sorted(payload.items()))
    return _cell(payload)


def _rows(rows) -> str:
    if not rows:
        return ""
    cols = sorted({k for r in rows for k in r})
    cells = [[_cell(r.get(c)) for c in cols] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths))]
    lines += ["  ".join(v.ljust(w) for v, w in zip(row, widths)) for row in cells]
    return "\n".join(lines)


def _cell(v) -> str:
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True)
    return str(v)


def _common(fn):
    """Let the shared flags also follow the subcommand name."""

    @click.option("--prec-p", "sub_prec_p", type=int, default=None)
    @click.option("--prec-pi", "sub_prec_pi", type=int, default=None)
    @click.option("--format", "sub_fmt", type=click.Choice(["json", "table"]), default=None)
    @functools.wraps(fn)
    def wrapper(*args, sub_prec_p, sub_prec_pi, sub_fmt, **kw):
        ctx = click.get_current_context()
        for key, val in (("prec_p", sub_prec_p), ("prec_pi", sub_prec_pi), ("format", sub_fmt)):
            if val is not None:
                ctx.obj[key] = val
        p = kw.get("p")
        if p is not None and (p < 2 or not sympy.isprime(p)):
            raise click.UsageError(f"--p must be a prime, got {p}")
        return fn(*args, **kw)

    return wrapper


def _weights(p, f, weights):
    k = _ints(weights, "weights")
    if k is None:
        raise click.UsageError("--weights is required")
    if f is not None and f != len(k):
        raise click.UsageError(f"--f={f} disagrees with {len(k)} weights")
    if any(v < 0 for v in k):
        raise click.UsageError("weights must be nonnegative")
    return k


def _budget(ctx, p):
    try:
        return PrecisionBudget(p, ctx.obj["prec_p"], ctx.obj["prec_pi"])
    except ValueError as e:
        raise click.UsageError(str(e)) from None


def _gammas(p, gamma):
    if gamma is None:
        return gs.gamma_samples(p)
    vals = _ints(gamma, "gamma")
    try:
        return [GammaElement(a, p) for a in vals]
    except WachkitError as e:
        raise click.UsageError(str(e)) from None


def _spec(ctx, p, f, weights, types, alpha, ell=None):
    k = _weights(p, f, weights)
    if types is None:
        raise click.UsageError("--types is required")
    try:
        tv = fm.TypeVector.parse(types)
    except ValueError as e:
        raise click.UsageError(str(e)) from None
    al = _ints(alpha, "alpha") or (0,) * len(k)
    try:
        return fm.FamilySpec.from_alpha(p, k, tv, al, ell=ell, budget=_budget(ctx, p))
    except (ValueError, WachkitError) as e:
        raise click.UsageError(str(e)) from None


@click.group()
@click.option("--prec-p", type=int, default=8, envvar="WACHKIT_PREC_P", show_default=True,
              help="p-adic precision M (values mod p^M).")
@click.option("--prec-pi", type=int, default=12, envvar="WACHKIT_PREC_PI", show_default=True,
              help="pi-adic precision N (series mod pi^N).")
@click.option("--format", "fmt", type=click.Choice(["json", "table"]), default="json")
@click.pass_context
def cli(ctx, prec_p, prec_pi, fmt):
    """Wach modules, Gamma-actions and reductions of crystalline representations."""
    ctx.obj = {"prec_p": prec_p, "prec_pi": prec_pi, "format": fmt}


@cli.command("char")
@_common
@click.option("--p", type=int, required=True)
@click.option("--f", type=int)
@click.option("--weights", required=True, help="k_0,...,k_{f-1}")
@click.option("--gamma", help="comma-separated values of chi(gamma)")
@click.pass_context
def char_cmd(ctx, p, f, weights, gamma):
    """Build and verify the rank-one Wach module of chi_k."""
    k = _weights(p, f, weights)
    budget = _budget(ctx, p)
    x = ch.CrystChar(len(k), k)
    W = ch.rank1_wach(x, budget)
    gammas = _gammas(p, gamma)
    rows = []
    for g in gammas:
        rows.append({"gamma": g.a, "commutation": W.residual_order(g),
                     "cocycle": W.cocycle_order(g, gammas[0])})
    ok = all(r["commutation"] >= budget.N and r["cocycle"] >= budget.N for r in rows)
    payload = {"char": x.to_json(), "pretty": x.pretty(), "N": budget.N, "M": budget.M,
               "rows": rows, "passed": ok}
    _emit(ctx, payload)
    if not ok:
        raise VerificationExit(payload)


@cli.command("family-build")
@_common
@click.option("--p", type=int, required=True)
@click.option("--f", type=int)
@click.option("--weights", required=True)
@click.option("--types", required=True, help="type vector (P_1,...,P_{f-1},P_0), e.g. 1,2")
@click.option("--alpha", help="alpha_0,...,alpha_{f-1}")
@click.pass_context
def family_build(ctx, p, f, weights, types, alpha):
    """Emit Pi(a) and the filtered module D(a)."""
    spec = _spec(ctx, p, f, weights, types, alpha)
    try:
        fam = fm.build_family(spec)
    except WachkitError as e:
        raise click.UsageError(f"{type(e).__name__}: {e}") from None
    M = spec.budget.M
    Pi = [[[str(e.mod_coeffs(M)) for e in row] for row in m] for m in fam.Pi]
    verdict = fl.classify(fam.D) if fl.weak_admissible(fam.D) else None
    payload = {
        "spec": spec.to_json(),
        "class": fm.class_membership(spec.types),
        "z": [z.mod_coeffs(M).to_json()["coeffs"][: spec.ell] for z in fam.z],
        "Pi": Pi,
        "D": fam.D.to_json(),
        "verdict": verdict.to_json() if verdict else {"admissible": False},
    }
    _emit(ctx, payload)


def _solve_report(ctx, spec, gammas):
    try:
        fam = gs.prepare(spec, gammas=gammas)
    except WachkitError as e:
        raise click.UsageError(f"{type(e).__name__}: {e}") from None
    rows = []
    for g in gammas:
        g2 = gammas[0]
        G1, G2, G12 = (gs.solve_gamma(fam, h) for h in (g, g2, g.compose(g2)))
        rep = gs.verify(fam, G1, G2, G12)
        rows.append({"gamma": g.a, "order": G1.order,
                     "residual_orders": {"commutation": rep.commutation[0], "cocycle": rep.cocycle}})
    ok = all(min(r["residual_orders"].values()) >= spec.budget.N for r in rows)
    return rows, ok


@cli.command("family-verify")
@_common
@click.option("--p", type=int, required=True)
@click.option("--f", type=int)
@click.option("--weights", required=True)
@click.option("--types", required=True)
@click.option("--alpha")
@click.option("--gamma")
@click.pass_context
def family_verify(ctx, p, f, weights, types, alpha, gamma):
    """Run the Gamma-solver to the pi-budget for sampled gamma."""
    spec = _spec(ctx, p, f, weights, types, alpha)
    rows, ok = _solve_report(ctx, spec, _gammas(p, gamma))
    payload = {"spec": spec.to_json(), "N": spec.budget.N, "rows": rows, "passed": ok}
    _emit(ctx, payload)
    if not ok:
        raise VerificationExit(payload)


@cli.command("solve-gamma")
@_common
@click.option("--p", type=int, required=True)
@click.option("--f", type=int)
@click.option("--weights", required=True)
@click.option("--types", required=True)
@click.option("--alpha")
@click.option("--gamma", required=True, help="chi(gamma), a p-adic unit")
@click.option("--show-matrix", is_flag=True)
@click.pass_context
def solve_gamma_cmd(ctx, p, f, weights, types, alpha, gamma, show_matrix):
    """Solve for G_gamma and report residual orders."""
    spec = _spec(ctx, p, f, weights, types, alpha)
    g = _gammas(p, gamma)[0]
    try:
        fam = gs.prepare(spec, gammas=[g])
    except WachkitError as e:
        raise click.UsageError(f"{type(e).__name__}: {e}") from None
    G = gs.solve_gamma(fam, g)
    G2 = gs.solve_gamma(fam, g.compose(g))
    rep = gs.verify(fam, G, G, G2)
    payload = {"gamma": g.a, "order": G.order,
               "residual_orders": {"commutation": rep.commutation[0], "cocycle": rep.cocycle}}
    if show_matrix:
        payload["matrix"] = [[[str(e) for e in row] for row in m] for m in G.mat]
    _emit(ctx, payload)
    if min(payload["residual_orders"].values()) < spec.budget.N:
        raise VerificationExit(payload)


@cli.command("wadm")
@_common
@click.pass_context
def wadm(ctx):
    """Classify a filtered module read as JSON from stdin."""
    try:
        D = fl.FiltMod2.from_json(json.load(sys.stdin))
    except (ValueError, KeyError, TypeError) as e:
        raise click.UsageError(f"bad module JSON: {e}") from None
    verdict = fl.ClassificationVerdict(False)
    if fl.weak_admissible(D):
        verdict = fl.classify(D)
    payload = verdict.to_json()
    if D.weights and any(D.weights) and verdict.admissible:
        payload["trace_reducible"] = fl.trace_reducibility(D)
    _emit(ctx, payload)


@cli.command("reduce")
@_common
@click.option("--p", type=int, required=True)
@click.option("--f", type=int)
@click.option("--weights", required=True)
@click.option("--l", "ell", required=True,
              help="level-2f vector (induced case) or level-f vector ell (split case)")
@click.pass_context
def reduce_cmd(ctx, p, f, weights, ell):
    """Semisimplified mod-p reduction."""
    k = _weights(p, f, weights)
    l = _ints(ell, "l")
    f = len(k)
    try:
        if len(l) == 2 * f:
            if ch.weights_of(l) != k:
                raise click.UsageError("--l does not match --weights")
            res = rd.reduce_induced(l, p, f)
        elif len(l) == f:
            lp = tuple(ki - li for ki, li in zip(k, l))
            if any(min(a, b) != 0 or min(a, b) < 0 for a, b in zip(l, lp)):
                raise click.UsageError("each ell_i must be 0 or k_i")
            res = rd.reduce_split(l, lp, p)
        else:
            raise click.UsageError("--l must have length f or 2f")
    except WachkitError as e:
        raise click.UsageError(str(e)) from None
    _emit(ctx, res.to_json())


@cli.command("classify")
@_common
@click.option("--p", type=int, required=True)
@click.option("--f", type=int)
@click.option("--weights", required=True)
@click.pass_context
def classify_cmd(ctx, p, f, weights):
    """List the irreducible induced classes with their reductions."""
    k = _weights(p, f, weights)
    try:
        reps = ch.enumerate_induced_classes(k)
    except WachkitError as e:
        raise click.UsageError(str(e)) from None
    rows = []
    for l in reps:
        red = rd.reduce_induced(l, p)
        rows.append({"l": list(l), "types": str(fm.types_for_induced(l)),
                     "exps": list(red.exps), "irreducible": red.irreducible})
    rows.sort(key=lambda r: r["l"], reverse=True)
    _emit(ctx, {"weights": list(k), "count": len(rows), "rows": rows})


@cli.command("enumerate")
@_common
@click.option("--f", type=int, required=True)
@click.option("--p", type=int, default=3)
@click.pass_context
def enumerate_cmd(ctx, f, p):
    """Sweep all 4^f type vectors: class membership and trace scalarity."""
    from itertools import product

    if f < 1:
        raise click.UsageError("--f must be positive")
    rows = []
    for t in product((1, 2, 3, 4), repeat=f):
        tv = fm.TypeVector(t)
        _, scalar = fm.symbolic_Qf(tv, (1,) * f, p=p)
        rows.append({"types": str(tv), "class": fm.class_membership(tv) or "-",
                     "qbar": fm.qbar(tv) or "0", "trace_scalar": scalar})
    consistent = all(r["trace_scalar"] == (r["class"] in ("C1", "C2")) for r in rows)
    _emit(ctx, {"f": f, "count": len(rows), "consistent": consistent, "rows": rows})
    if not consistent:
        raise VerificationExit(rows)


def main(argv=None) -> int:
    try:
        cli.main(args=argv, prog_name="wachkit", standalone_mode=False)
    except click.UsageError as e:
        click.echo(json.dumps({"error": "usage", "message": e.format_message()}), err=True)
        return EXIT_USAGE
    except click.exceptions.Abort:
        return EXIT_USAGE
    except VerificationExit:
        return EXIT_VERIFY
    except WachkitError as e:
        click.echo(json.dumps({"error": type(e).__name__, "message": str(e)}), err=True)
        return EXIT_VERIFY
    return 0


def entry():  # pragma: no cover
    sys.exit(main())
