"""Command-line front end.

Usage: ``chentype [GLOBAL OPTIONS] COMMAND [OPTIONS]``.  Every global flag can
also be set through an environment variable ``CHENTYPE_<FLAG>`` (for example
``CHENTYPE_SEED=3``); command options use ``CHENTYPE_<COMMAND>_<OPTION>``.

Reports
-------
All commands print one document ``{version, seed, config, results}``.  With
``--format json`` (the default) it is sorted, indented JSON.  ``csv`` prints
one row per result with nested values JSON-encoded.  ``text`` prints an
indented key/value listing.  Reports contain no timestamps, so identical
configuration and seed give byte-identical output.

Claim results carry ``claim_id, verdict, expected, computed, anchor,
residuals``; ``residuals`` holds the per-claim numeric and structural detail.

Chart documents
---------------
``--chart PATH`` reads a flat ``key = value`` text file.  Blank lines and
lines starting with ``#`` are ignored.  Keys:

``kind``
    ``tube``, ``anchor-ring``, ``sphere`` or ``generic`` (required).
``r``, ``kappa``, ``radius``
    Parameters as integer, decimal or ``p/q`` strings, read as exact
    rationals.  ``kappa`` applies to the anchor ring only; ``radius`` to the
    sphere only.
``profile``
    Tube only: ``default`` or ``random`` (random spine drawn from the seed).
``x``, ``y``, ``z``
    Generic charts only: ambient coordinates as arithmetic in ``u``, ``phi``,
    ``r``, ``cos(u)``, ``sin(u)``, ``cos(phi)``, ``sin(phi)`` and rational
    numbers, using ``+ - * /`` and integer powers ``**``.

Example::

    kind = generic
    r = 1
    x = r*cos(phi)*cos(u)
    y = 2*r*cos(phi)*sin(u)
    z = r*sin(phi)/3

Exit codes
----------
0 success; 1 a claim failed (or errored) without being a documented
discrepancy; 2 degenerate form or degenerate sampling; 3 parse error in a
chart document or option; 4 expression budget exceeded without ``--numeric``;
5 unknown claim id.
"""

from __future__ import annotations

import ast
import csv
import io
import json
import functools
import math
from fractions import Fraction

import click
import numpy as np

from . import __version__
from .beltrami import DEFAULT_BUDGET, BeltramiOp, iterate
from .errors import (
    ChartParseError,
    DegenerateForm,
    DivisionNearZero,
    ExpressionBudgetExceeded,
    IllConditionedSamples,
    NonRationalStructure,
    SymbolicUnavailable,
    UnknownClaim,
)
from .finitetype import MISMATCH, NUMERIC_ONLY_PASS, PASS, RANK_TOL, type_evidence
from .frames import FrameVec
from .geometry import (
    ANCHOR_RING,
    GENERIC,
    KINDS,
    SPHERE,
    TUBE,
    FundForm,
    curvatures,
    fundamental_form,
    gauss_map,
    make_anchor_ring,
    make_generic,
    make_sphere,
    make_tube,
)
from .numeric import PointJets, chart_profile, numeric_iterate
from .symexpr import (
    COS_PHI,
    COS_U,
    R,
    SIN_PHI,
    SIN_U,
    U,
    NumericProfile,
    canonicalize,
    random_profile,
)

ENV_PREFIX = "CHENTYPE"
FORMATS = ("json", "csv", "text")
EXIT_FAIL, EXIT_DEGENERATE, EXIT_PARSE, EXIT_BUDGET, EXIT_UNKNOWN = 1, 2, 3, 4, 5


class CliExit(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


# ------------------------------------------------------------------ parsing


def parse_rational(text: str) -> Fraction:
    """Exact rational from an integer, decimal or p/q string."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ChartParseError(f"not a rational number: {text!r}") from exc


_NAMES = {"u": U, "phi": None, "r": R}
_CALLS = {("cos", "u"): COS_U, ("sin", "u"): SIN_U, ("cos", "phi"): COS_PHI, ("sin", "phi"): SIN_PHI}


def parse_coordinate(text: str):
    """Expression tree for one generic-chart coordinate."""
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise ChartParseError(f"cannot parse {text!r}: {exc.msg}") from exc

    def walk(node):
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)) and not isinstance(node.value, bool):
            return Fraction(ast.get_source_segment(text.strip(), node))
        if isinstance(node, ast.Name) and node.id in _NAMES and _NAMES[node.id] is not None:
            return _NAMES[node.id]
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and len(node.args) == 1 \
                and isinstance(node.args[0], ast.Name) and (node.func.id, node.args[0].id) in _CALLS:
            return _CALLS[(node.func.id, node.args[0].id)]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = walk(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            a, b = walk(node.left), walk(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Div):
                if isinstance(b, Fraction):
                    if b == 0:
                        raise ChartParseError("division by zero")
                    return a * (1 / b)
                return a / b
            if isinstance(node.op, ast.Pow) and isinstance(b, Fraction) and b.denominator == 1:
                return a ** int(b)
        raise ChartParseError(f"unsupported element in {text!r}: {ast.dump(node)[:60]}")

    out = walk(tree.body)
    try:
        canonicalize(out)
    except NonRationalStructure as exc:
        raise ChartParseError(f"{text!r}: {exc}") from exc
    return out


def read_chart_document(text: str) -> dict:
    """Key/value pairs of a chart document."""
    doc = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ChartParseError(f"line {lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key or not value:
            raise ChartParseError(f"line {lineno}: empty key or value")
        if key in doc:
            raise ChartParseError(f"line {lineno}: duplicate key {key!r}")
        doc[key] = value
    return doc


_ALLOWED_KEYS = {
    TUBE: {"kind", "r", "profile"},
    ANCHOR_RING: {"kind", "r", "kappa"},
    SPHERE: {"kind", "radius"},
    GENERIC: {"kind", "r", "x", "y", "z"},
}


def build_chart(doc: dict):
    """(chart, profile choice) from a parsed chart document."""
    kind = doc.get("kind")
    if kind not in KINDS:
        raise ChartParseError(f"unknown or missing kind: {kind!r}")
    extra = set(doc) - _ALLOWED_KEYS[kind]
    if extra:
        raise ChartParseError(f"keys not valid for {kind}: {sorted(extra)}")
    num = {k: parse_rational(v) for k, v in doc.items() if k in ("r", "kappa", "radius")}
    profile = doc.get("profile", "default")
    if profile not in ("default", "random"):
        raise ChartParseError(f"unknown profile {profile!r}")
    if kind == TUBE:
        return make_tube(r=num.get("r")), profile
    if kind == ANCHOR_RING:
        return make_anchor_ring(kappa=num.get("kappa"), r=num.get("r")), profile
    if kind == SPHERE:
        return make_sphere(radius=num.get("radius")), profile
    missing = {"x", "y", "z"} - set(doc)
    if missing:
        raise ChartParseError(f"generic chart needs {sorted(missing)}")
    params = {"r": num["r"]} if "r" in num else {}
    return make_generic(*(parse_coordinate(doc[c]) for c in "xyz"), params), profile


def select_chart(surface, chart_path, r, kappa, radius, profile):
    if chart_path is not None:
        try:
            with open(chart_path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ChartParseError(f"cannot read {chart_path}: {exc.strerror}") from exc
        return build_chart(read_chart_document(text))
    if surface is None:
        return None, profile
    doc = {"kind": surface, "profile": profile}
    for key, value in (("r", r), ("kappa", kappa), ("radius", radius)):
        if value is not None:
            doc[key] = value
    if surface != TUBE:
        doc.pop("profile")
    return build_chart(doc)


def numeric_profile(chart, choice: str, seed: int, u: float = 0.0, phi: float = 1.0) -> NumericProfile:
    prof = chart_profile(chart, u, phi)
    if chart.kind == TUBE and choice == "random":
        rnd = random_profile(np.random.default_rng(seed))
        prof = NumericProfile(prof.r, u, phi, rnd.kappa, rnd.tau)
    return prof


def _symbolic_params(chart) -> dict:
    """Exact values that can be substituted into displayed forms."""
    p = chart.params
    if chart.kind == SPHERE and "R" in p:
        return {"r": Fraction(p["R"])}
    out = {}
    if "r" in p:
        out["r"] = Fraction(p["r"])
    if chart.kind == ANCHOR_RING and "kappa" in p:
        out["kappa"] = Fraction(p["kappa"])
    return out


# ------------------------------------------------------------------ output


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (bool, str)) or x is None:
        return x
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else str(x)
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, np.ndarray):
        return _plain(x.tolist())
    return str(x)


def render(doc: dict, fmt: str) -> str:
    doc = _plain(doc)
    if fmt == "json":
        return json.dumps(doc, indent=2, sort_keys=True)
    if fmt == "csv":
        rows = doc["results"]
        keys = sorted({k for row in rows for k in row})
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["version", "seed", *keys])
        for row in rows:
            cells = [row.get(k, "") for k in keys]
            cells = [c if isinstance(c, str) else json.dumps(c, sort_keys=True) for c in cells]
            writer.writerow([doc["version"], doc["seed"], *cells])
        return buf.getvalue().rstrip("\n")
    lines = []

    def emit(value, indent):
        pad = "  " * indent
        if isinstance(value, dict):
            for k in sorted(value):
                v = value[k]
                if isinstance(v, (dict, list)) and v:
                    lines.append(f"{pad}{k}:")
                    emit(v, indent + 1)
                else:
                    lines.append(f"{pad}{k}: {v}")
        elif isinstance(value, list):
            for i, v in enumerate(value):
                if isinstance(v, (dict, list)):
                    lines.append(f"{pad}- [{i}]")
                    emit(v, indent + 1)
                else:
                    lines.append(f"{pad}- {v}")

    emit(doc, 0)
    return "\n".join(lines)


class Settings:
    def __init__(self, seed, fmt, tol, samples, numeric, strict, budget):
        if tol <= 0:
            raise click.BadParameter("tolerance must be positive", param_hint="--tol")
        self.seed, self.fmt, self.tol, self.samples = seed, fmt, tol, samples
        self.numeric, self.strict, self.budget = numeric, strict, budget

    def config(self, command: str, **extra) -> dict:
        base = {"command": command, "format": self.fmt, "tol": self.tol, "samples": self.samples,
                "numeric": self.numeric, "strict": self.strict, "budget": self.budget}
        base.update(extra)
        return base

    def emit(self, command: str, results: list, **extra):
        doc = {"version": __version__, "seed": self.seed, "config": self.config(command, **extra),
               "results": results}
        click.echo(render(doc, self.fmt))


def _fail(exc: Exception):
    """Map engine errors to the exit-code contract."""
    if isinstance(exc, CliExit):
        code = exc.code
    elif isinstance(exc, (ChartParseError, NonRationalStructure)):
        code = EXIT_PARSE
    elif isinstance(exc, (DegenerateForm, IllConditionedSamples, DivisionNearZero)):
        code = EXIT_DEGENERATE
    elif isinstance(exc, ExpressionBudgetExceeded):
        code = EXIT_BUDGET
    elif isinstance(exc, UnknownClaim):
        code = EXIT_UNKNOWN
    else:
        raise exc
    click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
    raise SystemExit(code)


def surface_options(fn):
    opts = [
        click.option("--surface", type=click.Choice([TUBE, ANCHOR_RING, SPHERE]), default=None,
                     help="Built-in surface."),
        click.option("--chart", "chart_path", type=click.Path(dir_okay=False), default=None,
                     help="Chart document (overrides --surface)."),
        click.option("--r", "r", default=None, help="Tube radius (exact rational string)."),
        click.option("--kappa", default=None, help="Anchor-ring spine curvature."),
        click.option("--radius", default=None, help="Sphere radius."),
        click.option("--profile", type=click.Choice(["default", "random"]), default="default",
                     help="Numeric spine profile for tubes."),
    ]
    for opt in reversed(opts):
        fn = opt(fn)
    return fn


def _surface_echo(chart, profile) -> dict:
    if chart is None:
        return {"kind": None}
    out = {"kind": chart.kind, "params": {k: str(v) for k, v in sorted(chart.params.items())}}
    if chart.kind == TUBE:
        out["profile"] = profile
    if chart.kind == SPHERE:
        out["note"] = "the symbol r in displayed forms is the sphere radius R"
    if chart.kind == GENERIC:
        out["position"] = [str(canonicalize(c)) for c in chart.position.components]
    return out


# ------------------------------------------------------------------ commands


GLOBAL_KEYS = ("seed", "fmt", "tol", "samples", "numeric", "strict", "budget")


def _global_options(defaults: bool):
    """Global flags; on subcommands they default to None and override the group values."""
    def d(value):
        return value if defaults else None

    opts = [
        click.option("--seed", type=int, default=d(0), help="Random seed (recorded in every report)."),
        click.option("--format", "fmt", type=click.Choice(FORMATS), default=d("json"), help="Report format."),
        click.option("--tol", type=float, default=d(RANK_TOL), help="Rank tolerance."),
        click.option("--samples", type=int, default=d(100), help="Sample points for numeric work."),
        click.option("--numeric", is_flag=True, default=d(False),
                     help="Fall back to numeric iteration instead of failing."),
        click.option("--strict", is_flag=True, default=d(False),
                     help="Documented discrepancies also fail the exit code."),
        click.option("--budget", type=int, default=d(DEFAULT_BUDGET),
                     help="Maximum numerator size of symbolic iterates."),
    ]

    def wrap(fn):
        for opt in reversed(opts):
            fn = opt(fn)
        return fn

    return wrap


def command(name=None):
    """Subcommand decorator merging per-command global flags into the shared settings."""
    def wrap(fn):
        @functools.wraps(fn)
        @click.pass_context
        def inner(ctx, **kw):
            local = {k: kw.pop(k) for k in GLOBAL_KEYS}
            base = ctx.obj
            merged = {k: getattr(base, k) if local[k] in (None, False) else local[k] for k in GLOBAL_KEYS}
            return fn(Settings(**merged), **kw)

        return main.command(name)(_global_options(False)(inner))

    return wrap


@click.group(context_settings={"auto_envvar_prefix": ENV_PREFIX, "help_option_names": ["-h", "--help"]})
@_global_options(True)
@click.version_option(__version__, prog_name="chentype")
@click.pass_context
def main(ctx, seed, fmt, tol, samples, numeric, strict, budget):
    """Beltrami operators of fundamental forms on tubes, anchor rings and spheres.

    Global flags may be given before or after the command name.
    """
    ctx.obj = Settings(seed, fmt, tol, samples, numeric, strict, budget)


def run(argv=None):
    """Console entry point; usage errors exit with the parse-error code."""
    try:
        code = main.main(args=argv, prog_name="chentype", standalone_mode=False)
    except click.exceptions.Abort:
        raise SystemExit(1)
    except click.UsageError as exc:
        exc.show()
        raise SystemExit(EXIT_PARSE)
    except click.ClickException as exc:
        exc.show()
        raise SystemExit(exc.exit_code)
    raise SystemExit(code or 0)


def _form_dict(form: FundForm, subs: dict) -> dict:
    names = ("g11", "g12", "g22") if form.which == "I" else ("b11", "b12", "b22") if form.which == "II" \
        else ("e11", "e12", "e22")
    out = {n: c.factored_str() for n, c in zip(names, form.components)}
    out["det"] = form.det.factored_str()
    if subs:
        out["substituted"] = {n: _substituted(c, subs) for n, c in zip(names, form.components)}
    return out


def _substituted(form, subs: dict) -> str:
    """Display with r, kappa replaced by their values and delta kept as a factor."""
    j, q = form.factor_delta()
    body = str(q.substitute_constants(subs))
    if not j:
        return body
    head = "delta" if j == 1 else f"delta^{j}"
    return head if body == "1" else f"{head}*({body})"


def _numeric_forms(chart, prof) -> dict:
    pt = PointJets(chart, prof, 2)
    out = {}
    for which in ("I", "II", "III"):
        g = [x.value for x in pt.form(which)]
        out[which] = {"components": g, "det": g[0] * g[2] - g[1] * g[1]}
    I, II = out["I"], out["II"]
    a, b, c = I["components"]
    e, f, g = II["components"]
    out["K"] = II["det"] / I["det"]
    out["H"] = (a * g - 2 * b * f + c * e) / (2 * I["det"])
    return out


@command()
@surface_options
@click.option("--u", "u0", type=float, default=0.0, help="Chart point for numeric values.")
@click.option("--phi", "phi0", type=float, default=1.0)
def forms(st: Settings, surface, chart_path, r, kappa, radius, profile, u0, phi0):
    """First, second and third fundamental forms with K and H."""
    try:
        chart, profile = select_chart(surface or TUBE, chart_path, r, kappa, radius, profile)
        prof = numeric_profile(chart, profile, st.seed, u0, phi0)
        subs = _symbolic_params(chart)
        res = {"surface": _surface_echo(chart, profile)}
        try:
            for which in ("I", "II", "III"):
                res[which] = _form_dict(fundamental_form(chart, which), subs)
            curv = curvatures(chart)
            res["K"], res["H"] = str(curv.K), str(curv.H)
            if subs:
                res["K_substituted"] = str(curv.K.substitute_constants(subs))
                res["H_substituted"] = str(curv.H.substitute_constants(subs))
            res["mode"] = "symbolic"
        except SymbolicUnavailable:
            res["I"] = _form_dict(fundamental_form(chart, "I"), subs)
            res["mode"] = "numeric"
        res["numeric"] = {"u": u0, "phi": phi0, **_numeric_forms(chart, prof)}
        st.emit("forms", [res], surface=_surface_echo(chart, profile), u=u0, phi=phi0)
    except Exception as exc:  # noqa: BLE001 - mapped to exit codes
        _fail(exc)


def _vec_dict(v) -> dict:
    names = ("t", "h", "b") if isinstance(v, FrameVec) else ("x", "y", "z")
    out = {}
    for n, c in zip(names, v.components):
        c = canonicalize(c)
        out[n] = {"value": str(c), "pole_orders": {"delta": c.pole_order("delta"),
                                                  "cos_phi": c.pole_order("cos_phi")}}
    return out


@command()
@surface_options
@click.option("--target", type=click.Choice(["position", "gaussmap"]), default="gaussmap", show_default=True)
@click.option("--k", "k", type=click.IntRange(1, None), default=1, show_default=True)
@click.option("--form", "which", type=click.Choice(["I", "II", "III"]), default="II", show_default=True)
@click.option("--u", "u0", type=float, default=0.0)
@click.option("--phi", "phi0", type=float, default=1.0)
def laplace(st: Settings, surface, chart_path, r, kappa, radius, profile, target, k, which, u0, phi0):
    """Iterates of the Beltrami operator on the position vector or the Gauss map."""
    try:
        chart, profile = select_chart(surface or TUBE, chart_path, r, kappa, radius, profile)
        prof = numeric_profile(chart, profile, st.seed, u0, phi0)
        results = []
        mode = "symbolic"
        try:
            field = chart.position if target == "position" else gauss_map(chart)
            its = iterate(BeltramiOp(chart, which), field, k, budget=st.budget)
            subs = _symbolic_params(chart)
            for j, v in enumerate(its, 1):
                entry = {"k": j, "components": _vec_dict(v)}
                if subs:
                    entry["substituted"] = [str(canonicalize(c).substitute_constants(subs)) for c in v.components]
                results.append(entry)
        except (SymbolicUnavailable, ExpressionBudgetExceeded) as exc:
            if isinstance(exc, ExpressionBudgetExceeded) and not st.numeric:
                raise
            mode = "numeric"
        vals = numeric_iterate(chart, prof, "position" if target == "position" else "normal", k, which)
        if mode == "numeric":
            results = [{"k": j, "ambient_value": list(v)} for j, v in enumerate(vals, 1)]
        else:
            for entry, v in zip(results, vals):
                entry["ambient_value"] = list(v)
        for entry in results:
            entry["mode"] = mode
        st.emit("laplace", results, surface=_surface_echo(chart, profile), target=target, k=k, form=which,
                u=u0, phi=phi0)
    except Exception as exc:  # noqa: BLE001
        _fail(exc)


def _passes(report, strict: bool) -> bool:
    if report.verdict in (PASS, NUMERIC_ONLY_PASS):
        return True
    return report.verdict == MISMATCH and report.details.get("known_discrepancy") and not strict


@command()
@surface_options
@click.option("--claims", "claim_list", default=None, help="Comma-separated claim ids (default: all for the surface).")
def verify(st: Settings, surface, chart_path, r, kappa, radius, profile, claim_list):
    """Run claims from the registry; exit 0 iff every claim passes or is a documented discrepancy."""
    from .claims import resolve, run_claims

    try:
        ids = None
        if claim_list:
            ids = [c.strip() for c in claim_list.split(",") if c.strip()]
            resolve(ids)
        chart, profile = select_chart(surface, chart_path, r, kappa, radius, profile)
        reports = run_claims(chart, ids, seed=st.seed, samples=st.samples, budget=st.budget)
        st.emit("verify", [rep.to_dict() for rep in reports], surface=_surface_echo(chart, profile),
                claims=ids)
        if not all(_passes(rep, st.strict) for rep in reports):
            raise SystemExit(EXIT_FAIL)
    except SystemExit:
        raise
    except Exception as exc:  # noqa: BLE001
        _fail(exc)


@command("finite-type")
@surface_options
@click.option("--k-max", type=click.IntRange(1, None), default=5, show_default=True)
def finite_type(st: Settings, surface, chart_path, r, kappa, radius, profile, k_max):
    """Rank, annihilator and pole-order evidence on the Gauss-map iterates."""
    try:
        chart, profile = select_chart(surface or TUBE, chart_path, r, kappa, radius, profile)
        prof = numeric_profile(chart, profile, st.seed)
        ev = type_evidence(chart, k_max, prof, samples=st.samples, seed=st.seed,
                           numeric=True if st.numeric else None, tol=st.tol)
        res = ev.to_dict()
        res["surface"] = _surface_echo(chart, profile)
        st.emit("finite-type", [res], surface=_surface_echo(chart, profile), k_max=k_max)
    except Exception as exc:  # noqa: BLE001
        _fail(exc)


@command("list-claims")
def list_claims(st: Settings):
    """Registered claim ids with their surfaces and anchors."""
    from .claims import ALIASES, KNOWN_DISCREPANCIES, REGISTRY

    rows = [{"claim_id": c.claim_id, "surfaces": list(c.kinds), "anchor": c.anchor,
             "known_discrepancy": c.claim_id in KNOWN_DISCREPANCIES} for c in REGISTRY]
    rows += [{"claim_id": a, "surfaces": [ANCHOR_RING], "anchor": "alias for " + ", ".join(m),
              "known_discrepancy": False} for a, m in ALIASES.items()]
    st.emit("list-claims", rows)


@command("list-surfaces")
def list_surfaces(st: Settings):
    """Built-in surfaces and their parameters."""
    rows = [
        {"kind": TUBE, "parameters": ["r"], "position": "spine + r cos(phi) h + r sin(phi) b",
         "normal": "-cos(phi) h - sin(phi) b"},
        {"kind": ANCHOR_RING, "parameters": ["kappa", "r"], "position": "tube over a circle of curvature kappa",
         "normal": "-cos(phi) h - sin(phi) b"},
        {"kind": SPHERE, "parameters": ["radius"], "position": "R (cos phi cos u, cos phi sin u, sin phi)",
         "normal": "-x / R"},
        {"kind": GENERIC, "parameters": ["r", "x", "y", "z"], "position": "user coordinates (chart document)",
         "normal": "numeric only"},
    ]
    st.emit("list-surfaces", rows)


if __name__ == "__main__":  # pragma: no cover
    run()
