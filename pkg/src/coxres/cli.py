"""Command-line front end.

    coxres cox-quotient  --fixture case1
    coxres resolve       --fixture q8 --p0 p0.json
    coxres resolve-brute --preset case1-crepant
    coxres smooth-check  report.json
    coxres age-table     group.json
    coxres finite-gale   --fixture case7
    coxres gale          matrix.json
    coxres f-faces       --fixture case2
    coxres trop          ideal.json

Exit status: 0 when every verdict is Yes (or the command has nothing to
verify), 2 when some verdict is Unverified, 1 on errors and on a definite No.
Machine-readable reports follow ``REPORT_SCHEMA`` and are byte-identical across
runs with the same inputs and options.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .cyclotomic import CyclotomicNumber, as_scalar, lcm
from .fixtures import PRESETS, fixture_names, load_fixture, parse_scalar
from .groebner import Budget, BudgetExceeded, Ideal
from .groups import GroupTooLarge, MatrixGroup
from .lattice import cokernel_gale, finite_gale_dual
from .pipeline import (
    NO,
    YES,
    PipelineError,
    PseudoReflectionError,
    ambient_data,
    brute_force_resolve,
    cox_quotient,
    extend_generators,
    f_faces,
    resolve_candidate,
    smoothness_check,
    verify_presentation,
)
from .polyhedral import Fan
from .polynomials import PolyRing
from .tropical import tropical_prevariety

__all__ = ["main", "run", "JobSpec", "SchemaError", "parse_group", "serialize_group", "REPORT_SCHEMA", "GROUP_SCHEMA"]

REPORT_SCHEMA = "coxres.report/1"
GROUP_SCHEMA = "coxres.group/1"

EXIT_OK, EXIT_ERROR, EXIT_UNVERIFIED = 0, 1, 2


class SchemaError(ValueError):
    """An input file does not match its schema."""


# ---------------------------------------------------------------------------
# group files
#
# {"schema": "coxres.group/1", "field_order": n, "ambient_dim": d,
#  "generators": [matrix, ...], "derived_generators": [...] (optional),
#  "p0": [[...]] (optional, rows), "vectors": [[...]] (optional)}
#
# A matrix entry is either a coefficient list [c0, c1, ...] meaning
# sum c_k zeta_n^k (each c_k an int or a "p/q" string) or a scalar string such
# as "-z3^2" or "1/2".


def _entry(x, n: int):
    if isinstance(x, list):
        return as_scalar(CyclotomicNumber(n, [Fraction(c) for c in x]))
    if isinstance(x, (int, str)):
        return parse_scalar(x)
    raise SchemaError(f"matrix entry {x!r} is neither a coefficient list nor a scalar")


def _coeff_text(c: Fraction):
    return c.numerator if c.denominator == 1 else str(c)


def _serialize_entry(x, n: int) -> list:
    x = as_scalar(x)
    if isinstance(x, CyclotomicNumber):
        coeffs = x.coerce(n).coeffs
    else:
        coeffs = (Fraction(x),)
    coeffs = list(coeffs)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return [_coeff_text(c) for c in coeffs]


def _matrices(data, key: str, n: int, d: int | None) -> list:
    mats = data.get(key)
    if not isinstance(mats, list) or not mats:
        raise SchemaError(f"{key!r} must be a nonempty list of matrices")
    out = []
    for k, m in enumerate(mats):
        if not isinstance(m, list) or not m or any(not isinstance(r, list) for r in m):
            raise SchemaError(f"{key}[{k}] is not a matrix")
        size = d or len(m)
        if len(m) != size or any(len(r) != size for r in m):
            raise SchemaError(f"{key}[{k}] is not a square {size} x {size} matrix")
        out.append([[_entry(x, n) for x in r] for r in m])
    return out


def parse_group(data: dict) -> dict:
    """Validate a group document; return ``{"group", "derived", "p0", "vectors", "field_order"}``."""
    if not isinstance(data, dict):
        raise SchemaError("group file must hold a JSON object")
    schema = data.get("schema", GROUP_SCHEMA)
    if schema != GROUP_SCHEMA:
        raise SchemaError(f"unsupported schema {schema!r}")
    n = data.get("field_order", 1)
    if not isinstance(n, int) or n < 1:
        raise SchemaError("field_order must be a positive integer")
    d = data.get("ambient_dim")
    if d is not None and (not isinstance(d, int) or d < 1):
        raise SchemaError("ambient_dim must be a positive integer")
    gens = _matrices(data, "generators", n, d)
    d = d or len(gens[0])
    if any(len(m) != d for m in gens):
        raise SchemaError("generator matrices have different sizes")
    derived = _matrices(data, "derived_generators", n, d) if data.get("derived_generators") else None
    out = {"field_order": n, "generators": gens, "derived_generators": derived}
    for key in ("p0", "vectors"):
        val = data.get(key)
        if val is not None:
            if not isinstance(val, list) or any(not isinstance(r, list) or any(not isinstance(x, int) for x in r) for r in val):
                raise SchemaError(f"{key!r} must be an integer matrix")
        out[key] = val
    return out


def serialize_group(gens, field_order: int | None = None, derived=None, p0=None, vectors=None) -> dict:
    """Inverse of ``parse_group`` (coefficient-list form)."""
    n = field_order
    if n is None:
        n = 1
        for m in gens:
            for r in m:
                for x in r:
                    x = as_scalar(x)
                    if isinstance(x, CyclotomicNumber):
                        n = lcm(n, x.order)
    doc = {
        "schema": GROUP_SCHEMA,
        "field_order": n,
        "ambient_dim": len(gens[0]),
        "generators": [[[_serialize_entry(x, n) for x in r] for r in m] for m in gens],
    }
    if derived:
        doc["derived_generators"] = [[[_serialize_entry(x, n) for x in r] for r in m] for m in derived]
    if p0 is not None:
        doc["p0"] = [list(r) for r in p0]
    if vectors is not None:
        doc["vectors"] = [list(v) for v in vectors]
    return doc


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc


def _int_matrix(path: str, key: str) -> list:
    data = _read_json(path)
    if isinstance(data, dict):
        data = data.get(key, data.get("matrix"))
    if not isinstance(data, list) or any(not isinstance(r, list) or any(not isinstance(x, int) for x in r) for r in data):
        raise SchemaError(f"{path}: expected an integer matrix")
    return data


# ---------------------------------------------------------------------------
# jobs


class JobSpec(argparse.Namespace):
    """Parsed command line: ``command`` plus options (see ``build_parser``)."""


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="coxres", description="Cox rings of quotient singularities and their resolutions.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, group_input=True):
        if group_input:
            p.add_argument("input", nargs="?", help="group file (JSON)")
            p.add_argument("--fixture", help=f"built-in group: {', '.join(fixture_names())}")
            p.add_argument("--preset", choices=sorted(PRESETS), help="pinned options for a reference run")
        p.add_argument("--format", choices=["text", "json"], default="text")
        p.add_argument("--out", help="directory for report.json and summary.txt")
        p.add_argument("--budget", type=int, help="maximum Groebner basis size")
        p.add_argument("--max-degree", type=int, help="degree bound for invariant generators")

    for name in ("cox-quotient", "finite-gale", "f-faces", "age-table"):
        common(sub.add_parser(name))
    for name in ("resolve", "resolve-brute"):
        p = sub.add_parser(name)
        common(p)
        p.add_argument("--p0", help="P0 override (integer matrix, rows)")
        p.add_argument("--verify", dest="verify", action="store_true", default=True)
        p.add_argument("--no-verify", dest="verify", action="store_false")
        p.add_argument("--seconds", type=float, help="time budget for the chart checks")
        if name == "resolve-brute":
            p.add_argument("--vectors", help="subdivision vectors (integer matrix, one per row)")
            p.add_argument("--max-size", type=int, help="largest subset tried")
    p = sub.add_parser("smooth-check")
    common(p, group_input=False)
    p.add_argument("input", help="report file written by resolve / resolve-brute")
    p = sub.add_parser("gale")
    common(p, group_input=False)
    p.add_argument("input", help="integer matrix P (rows), as JSON")
    p = sub.add_parser("trop")
    common(p, group_input=False)
    p.add_argument("input", nargs="?", help='ideal file {"nvars": s, "field_order": n, "relations": [...]}')
    p.add_argument("--fixture", help="use the Cox ideal of a built-in group")
    p.add_argument("--convention", choices=["max", "min"], default="max")
    return ap


def _budget(job) -> Budget | None:
    return Budget(max_basis=job.budget) if getattr(job, "budget", None) else None


def _group(job) -> tuple[MatrixGroup, dict]:
    preset = PRESETS[job.preset] if getattr(job, "preset", None) else None
    extra = {}
    if job.input:
        doc = parse_group(_read_json(job.input))
        group = MatrixGroup(doc["generators"], name=Path(job.input).stem)
        extra = {k: doc.get(k) for k in ("p0", "vectors")}
        if doc["derived_generators"]:
            given = MatrixGroup(doc["derived_generators"])
            if set(given.elements) != set(group.derived_subgroup().elements):
                raise SchemaError("derived_generators do not generate the derived subgroup of the group")
    elif job.fixture or preset:
        group = load_fixture(job.fixture or preset.fixture)
    else:
        raise SchemaError("give a group file or --fixture/--preset")
    if preset is not None and job.fixture and load_fixture(job.fixture).name != load_fixture(preset.fixture).name:
        raise SchemaError(f"preset {job.preset} belongs to fixture {preset.fixture}")
    return group, {"preset": preset, **extra}


def _presentation(job, group, ctx):
    preset = ctx["preset"]
    base = preset.base_generators if preset else None
    pres = cox_quotient(group, base_generators=base, budget=_budget(job), max_degree=job.max_degree)
    if preset and preset.extra_generators:
        pres = extend_generators(pres, preset.extra_generators)
    return pres


def _p0(job, ctx):
    if getattr(job, "p0", None):
        return _int_matrix(job.p0, "p0")
    if ctx.get("p0") is not None:
        return ctx["p0"]
    preset = ctx["preset"]
    return preset.p0() if preset else None


def _verdict_status(smooth: str, verdicts) -> int:
    values = [smooth] + ([v for v, _ in verdicts.variables_prime] if verdicts else [])
    if verdicts is not None:
        values += [YES if verdicts.codim2 else NO, YES if verdicts.torus_part_smooth else NO]
    if all(v == YES for v in values):
        return EXIT_OK
    if any(v == NO for v in values):
        return EXIT_ERROR
    return EXIT_UNVERIFIED


def _cmd_cox_quotient(job):
    group, ctx = _group(job)
    pres = _presentation(job, group, ctx)
    body = {"group": group.name, "order": group.order, "field_order": pres.ring.order, **pres.to_dict()}
    lines = [f"group {group.name}: order {group.order}", f"class group: {pres.spec}", f"degree matrix: {pres.q} mod {pres.moduli}"]
    lines += [f"T{i + 1} = {g}" for i, g in enumerate(pres.generators or [])]
    lines += [f"relation: {g}" for g in pres.relations]
    return body, "\n".join(lines), EXIT_OK


def _cmd_finite_gale(job):
    group, ctx = _group(job)
    pres = _presentation(job, group, ctx)
    p0 = finite_gale_dual(pres.q, pres.moduli) if pres.q else ambient_data(pres)[0]
    body = {"group": group.name, "degree_matrix": pres.q, "moduli": pres.moduli, "P0": p0}
    text = "P0 =\n" + "\n".join("  " + " ".join(f"{x:3d}" for x in r) for r in p0)
    return body, text, EXIT_OK


def _cmd_f_faces(job):
    group, ctx = _group(job)
    pres = _presentation(job, group, ctx)
    faces = f_faces(pres.ideal)
    body = {"group": group.name, "relations": [str(g) for g in pres.relations], "f_faces": [[i + 1 for i in f] for f in faces]}
    text = "\n".join("{" + ", ".join(f"T{i + 1}" for i in f) + "}" for f in faces)
    return body, text, EXIT_OK


def _cmd_age_table(job):
    group, _ = _group(job)
    rows = group.age_table()
    table = [{**r, "age": str(r["age"])} for r in rows]
    junior = group.junior_classes()
    body = {"group": group.name, "order": group.order, "special_linear": group.is_special_linear(), "classes": table, "junior_classes": junior}
    lines = [f"{'size':>4} {'order':>5} {'exponents':>14} age"]
    lines += [f"{r['size']:>4} {r['order']:>5} {str(r['eigenvalue_exponents']):>14} {r['age']}" for r in rows]
    lines.append(f"junior classes: {junior}")
    return body, "\n".join(lines), EXIT_OK


def _report_body(group, pres, rep):
    body = {"group": group.name, "field_order": pres.ring.order, "presentation": pres.to_dict(), **rep.to_dict()}
    return body


def _cmd_resolve(job):
    group, ctx = _group(job)
    pres = _presentation(job, group, ctx)
    rep = resolve_candidate(pres, _p0(job, ctx), verify=job.verify, smooth_seconds=job.seconds)
    return _finish_resolution(job, group, pres, rep)


def _cmd_resolve_brute(job):
    group, ctx = _group(job)
    pres = _presentation(job, group, ctx)
    vectors = None
    if job.vectors:
        vectors = _int_matrix(job.vectors, "vectors")
    elif ctx.get("vectors") is not None:
        vectors = ctx["vectors"]
    elif ctx["preset"] and ctx["preset"].vectors:
        vectors = [list(v) for v in ctx["preset"].vectors]
    rep = brute_force_resolve(pres, _p0(job, ctx), vectors=vectors, max_size=job.max_size, smooth_seconds=job.seconds)
    return _finish_resolution(job, group, pres, rep)


def _finish_resolution(job, group, pres, rep):
    body = _report_body(group, pres, rep)
    if rep.stage != "done" or rep.error:
        return body, rep.summary(), EXIT_ERROR
    if not getattr(job, "verify", True):
        return body, rep.summary(), EXIT_UNVERIFIED
    return body, rep.summary(), _verdict_status(rep.smooth, rep.verdicts)


def _cmd_smooth_check(job):
    doc = _read_json(job.input)
    if isinstance(doc, dict) and doc.get("schema") == REPORT_SCHEMA:
        doc = doc.get("result", {})
    try:
        p = doc["P"]
        rels = doc["relations"]
        fan_doc = doc["fan"]
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"{job.input}: missing report field {exc}") from exc
    if p is None or rels is None or fan_doc is None:
        raise SchemaError(f"{job.input}: report has no resolution data")
    s = len(p[0])
    ring = PolyRing(s, doc.get("field_order", 1))
    ideal = Ideal(ring, [ring.parse(r) for r in rels], Budget(max_basis=job.budget) if job.budget else None)
    fan = Fan.from_rays([tuple(r) for r in fan_doc["rays"]], fan_doc["cones"], len(p))
    verdicts = verify_presentation(ideal)
    smooth, details = smoothness_check(ideal, p, fan)
    body = {"input": Path(job.input).name, "verdicts": verdicts.to_dict(), "smooth": smooth, "smooth_details": details}
    prime = ", ".join(f"T{i + 1}:{v}" for i, (v, _) in enumerate(verdicts.variables_prime))
    text = f"variables prime: {prime}\ncodim2: {verdicts.codim2}, torus part smooth: {verdicts.torus_part_smooth}\nsmooth: {smooth} ({details['reason']})"
    return body, text, _verdict_status(smooth, verdicts)


def _cmd_gale(job):
    p = _int_matrix(job.input, "P")
    q, spec, moduli = cokernel_gale(p)
    body = {"P": p, "Q": q, "moduli": moduli, "class_group": str(spec)}
    text = f"class group: {spec}\nQ =\n" + "\n".join("  " + " ".join(f"{x:3d}" for x in r) + (f"  mod {m}" if m else "") for r, m in zip(q, moduli))
    return body, text, EXIT_OK


def _cmd_trop(job):
    if job.fixture:
        pres = cox_quotient(load_fixture(job.fixture), budget=_budget(job), max_degree=job.max_degree)
        gens = pres.relations
    elif job.input:
        doc = _read_json(job.input)
        if not isinstance(doc, dict) or "relations" not in doc:
            raise SchemaError(f"{job.input}: expected an object with 'relations'")
        nvars = doc.get("nvars")
        ring = PolyRing(nvars, doc.get("field_order", 1)) if nvars else None
        if ring is None:
            raise SchemaError(f"{job.input}: 'nvars' is required")
        gens = [ring.parse(r) for r in doc["relations"]]
    else:
        raise SchemaError("give an ideal file or --fixture")
    t = tropical_prevariety(gens, job.convention)
    body = {"convention": t.convention, "exact": t.exact, "provenance": t.provenance, "fan": t.fan.to_dict()}
    lines = [f"{t.provenance} ({'exact' if t.exact else 'superset of the tropical variety'}), {t.convention} convention"]
    lines.append(f"lineality: {[list(v) for v in t.fan.lineality]}")
    lines += [f"cone {[list(t.fan.rays[i]) for i in c]}" for c in t.fan.maximal_cones]
    return body, "\n".join(lines), EXIT_OK


_COMMANDS = {
    "cox-quotient": _cmd_cox_quotient,
    "resolve": _cmd_resolve,
    "resolve-brute": _cmd_resolve_brute,
    "smooth-check": _cmd_smooth_check,
    "age-table": _cmd_age_table,
    "gale": _cmd_gale,
    "finite-gale": _cmd_finite_gale,
    "f-faces": _cmd_f_faces,
    "trop": _cmd_trop,
}


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else str(x)
    if isinstance(x, CyclotomicNumber):
        return str(x)
    if isinstance(x, float) and x in (float("inf"), float("-inf")):
        return str(x)
    return x


def dumps(body: dict) -> str:
    return json.dumps(_jsonable(body), sort_keys=True, indent=2) + "\n"


def _options(job) -> dict:
    """Options that shape the result, recorded for reproducibility."""
    keys = ("fixture", "preset", "p0", "vectors", "verify", "budget", "max_degree", "seconds", "max_size", "convention")
    out = {k: getattr(job, k) for k in keys if getattr(job, k, None) is not None}
    for k in ("p0", "vectors"):
        if k in out:
            out[k] = Path(out[k]).name
    return out


def run(job: JobSpec, stdout=None) -> int:
    """Execute a parsed job; write outputs; return the exit status."""
    stdout = stdout or sys.stdout
    try:
        body, text, status = _COMMANDS[job.command](job)
    except SchemaError as exc:
        print(f"error: invalid input: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except GroupTooLarge as exc:
        print(f"error: group generation did not close (infinite or too large): {exc}", file=sys.stderr)
        return EXIT_ERROR
    except PseudoReflectionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except PipelineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except BudgetExceeded as exc:
        print(f"error: budget exhausted: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    doc = {"schema": REPORT_SCHEMA, "command": job.command, "exit_status": status, "options": _options(job), "result": body}
    machine = dumps(doc)
    if job.out:
        out = Path(job.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.json").write_text(machine)
        (out / "summary.txt").write_text(text + "\n")
    stdout.write(machine if job.format == "json" else text + "\n")
    return status


def main(argv=None) -> int:
    job = build_parser().parse_args(argv, namespace=JobSpec())
    return run(job)


if __name__ == "__main__":
    sys.exit(main())
