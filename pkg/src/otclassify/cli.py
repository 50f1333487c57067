"""Command-line interface.

Subcommands: field-info, units-check, aut, classify, compare, cohomology,
export-lattice, unit-search, corpus.  Every command reads a job (file or
inline --poly/--unit), emits one canonical JSON report on stdout, and obeys
the exit-code contract:

    0  success
    2  schema error (malformed input)
    3  inconclusive (certification failed within the precision budget)
    4  precondition violation (reducible polynomial, non-admissible units, ...)
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from importlib import resources

from . import embeddings as emb
from .classify import (
    EmbeddingChoice,
    OrderedChoice,
    are_biholomorphic,
    enumerate_choices,
    export_lattice,
    orbit_report,
    witness_between,
)
from .cohomology import Character, h10_nonvanishing, hpq_nonvanishing
from .errors import (
    Ambiguous,
    DegreeTooSmall,
    DependentGenerators,
    Inconclusive,
    NoMatch,
    NotAdmissible,
    NotAUnit,
    NotIrreducible,
    NotMonic,
    NotSimpleType,
    NotTotallyPositive,
    OTError,
    PrecisionExhausted,
    SchemaError,
    TooLarge,
)
from .galois import automorphisms, stabilizer_A_U
from .numberfield import parse_field
from .reports import (
    JobSpec,
    canonical_json,
    embeddings_doc,
    enclosure_doc,
    field_doc,
    frac_str,
    load_job,
    order_caveat,
    parse_frac,
    parse_job,
    report_skeleton,
    verdict_doc,
)
from .units import (
    UnitSubgroup,
    exponent_solve,
    is_admissible,
    is_simple_type,
    is_totally_positive,
    is_unit,
    make_subgroup,
    unit_search,
)
from . import intervals
from .numberfield import norm

EXIT_OK = 0
EXIT_SCHEMA = 2
EXIT_INCONCLUSIVE = 3
EXIT_PRECONDITION = 4

_INCONCLUSIVE = (Inconclusive, PrecisionExhausted, Ambiguous, NoMatch)
_PRECONDITION = (NotMonic, NotIrreducible, DegreeTooSmall, NotAUnit,
                 NotTotallyPositive, DependentGenerators, NotAdmissible,
                 NotSimpleType, TooLarge)


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.handler(args)
    except SchemaError as exc:
        _fail(args, "schema", str(exc))
        return EXIT_SCHEMA
    except _PRECONDITION as exc:
        _fail(args, "precondition", str(exc))
        return EXIT_PRECONDITION
    except _INCONCLUSIVE as exc:
        _fail(args, "inconclusive", str(exc))
        return EXIT_INCONCLUSIVE
    if report is None:  # corpus command prints its own lines
        return EXIT_OK
    if isinstance(report, tuple):
        report, code = report
    else:
        code = EXIT_OK
    text = canonical_json(report)
    sys.stdout.write(text)
    if getattr(args, "json_out", None):
        with open(args.json_out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return code


def _fail(args, kind, message):
    doc = {"schema": "otclassify/error-v1", "error": kind, "message": message}
    sys.stdout.write(canonical_json(doc))


def _build_parser():
    p = argparse.ArgumentParser(
        prog="otclassify",
        description="Classify conjugate complex structures on "
                    "Oeljeklaus-Toma manifolds from number-field data.")
    sub = p.add_subparsers(required=True, metavar="command")

    def add(name, handler, help_text, needs_job=True):
        q = sub.add_parser(name, help=help_text)
        q.set_defaults(handler=handler)
        if needs_job:
            q.add_argument("job", nargs="?", help="job document (JSON file)")
            q.add_argument("--poly", help="inline polynomial, e.g. '-1,0,-2,0,1'")
            q.add_argument("--unit", action="append", default=[],
                           help="inline unit coordinates, e.g. '0,1,0' (repeatable)")
            q.add_argument("--order-basis", help="JSON file with an n x n "
                           "rational matrix to use as the order basis")
        q.add_argument("--prec", type=int, default=None,
                       help="starting precision in bits (default 128)")
        q.add_argument("--precision-cap", type=int, default=None,
                       help="hard precision cap in bits (default 16384)")
        q.add_argument("--json-out", help="also write the report to this file")
        return q

    add("field-info", cmd_field_info, "signature and labeled embedding table")
    q = add("units-check", cmd_units_check,
            "unit, positivity, admissibility and simple-type checks")
    add("aut", cmd_aut, "automorphism group and, with units, the stabilizer A_U")
    add("classify", cmd_classify,
        "full pipeline: orbits of embedding choices under A_U")
    q = add("compare", cmd_compare, "decide biholomorphism of two choices")
    q.add_argument("--t", required=True, help="bitmask of the first choice, "
                   "e.g. '0' or '01' (bit j-1 selects the conjugate of pair j)")
    q.add_argument("--t-prime", required=True, help="bitmask of the second choice")
    q.add_argument("--sufficient-only", action="store_true",
                   help="allow the one-sided test when (K,U) is not simple type")
    q = add("cohomology", cmd_cohomology, "flat-bundle cohomology non-vanishing")
    q.add_argument("--word", required=True,
                   help="character word, e.g. 's1 s1' or 't1^2 tc1'")
    q.add_argument("--p", type=int, required=True)
    q.add_argument("--q", type=int, required=True)
    q.add_argument("--reading", choices=["as-printed", "strict-ijk"],
                   default="as-printed")
    q.add_argument("--tau", help="ordered choice, comma-separated embedding "
                   "indices (default: first of each pair)")
    q = add("export-lattice", cmd_export_lattice,
            "affine generator data of the lattice action")
    q.add_argument("--tau", help="ordered choice, comma-separated embedding indices")
    q = add("unit-search", cmd_unit_search,
            "best-effort search for independent totally positive units")
    q.add_argument("--bound", type=int, default=3)
    q.add_argument("--count", type=int, default=None,
                   help="target number of generators (default s)")
    q = add("corpus", cmd_corpus, "run the golden-file suite", needs_job=False)
    q.add_argument("--regold", action="store_true",
                   help="rewrite the golden files with current output")
    return p


def _job_from_args(args) -> JobSpec:
    if args.job:
        base = load_job(args.job)
    else:
        if not args.poly:
            raise SchemaError("provide a job file or --poly")
        try:
            poly = [int(c) for c in args.poly.split(",")]
        except ValueError as exc:
            raise SchemaError(f"bad --poly: {exc}") from None
        units = [[c.strip() for c in u.split(",")] for u in args.unit]
        doc = {"polynomial": poly, "units": units}
        if args.order_basis:
            with open(args.order_basis, "r", encoding="utf-8") as fh:
                doc["order_basis"] = json.load(fh)
        base = parse_job(doc)
    prec = args.prec if args.prec is not None else base.precision
    cap = args.precision_cap if args.precision_cap is not None else base.precision_cap
    if cap < prec:
        raise SchemaError("precision_cap must be >= precision")
    return JobSpec(base.polynomial, base.units, base.order_basis,
                   prec, cap, base.flags)


def _field_of(job: JobSpec):
    return parse_field(job.polynomial, order_basis=job.order_basis)


def _subgroup_of(job: JobSpec, field) -> UnitSubgroup:
    gens = [field.element(u) for u in job.units]
    return make_subgroup(gens, precision_cap=job.precision_cap)


def _ot_warning(field, report):
    if field.s < 1 or field.t < 1:
        report["caveats"].append(
            f"signature ({field.s},{field.t}): the OT construction requires "
            "s >= 1 and t >= 1; algebraic results only")


# --- command handlers ---------------------------------------------------------

def cmd_field_info(args):
    job = _job_from_args(args)
    field = _field_of(job)
    data = emb.embedding_data(field)
    report = report_skeleton("field-info", job)
    report["field"] = field_doc(field)
    report["embeddings"] = embeddings_doc(field, data, job.precision)
    report["caveats"].extend(order_caveat(field))
    _ot_warning(field, report)
    return report


def cmd_units_check(args):
    job = _job_from_args(args)
    field = _field_of(job)
    report = report_skeleton("units-check", job)
    report["field"] = field_doc(field)
    report["caveats"].extend(order_caveat(field))
    checks = []
    for coords in job.units:
        e = field.element(coords)
        entry = {"coordinates": [frac_str(c) for c in coords]}
        entry["in_order"] = verdict_doc(field.in_order(e), "exact")
        entry["norm"] = frac_str(norm(e))
        entry["is_unit"] = verdict_doc(is_unit(e), "exact")
        if not e.is_zero():
            tp = is_totally_positive(e)
            entry["totally_positive"] = verdict_doc(tp, "certified-interval")
            if is_unit(e) and tp:
                lv = emb.log_vector(e, job.precision)
                entry["log_vector"] = [enclosure_doc(x) for x in lv.entries]
                entry["log_sum"] = enclosure_doc(lv.sum_enclosure())
        checks.append(entry)
    report["units"] = checks
    try:
        U = _subgroup_of(job, field)
        report["subgroup"] = {
            "rank": U.rank,
            "admissible": verdict_doc(is_admissible(U, field),
                                      "certified-interval"),
            "simple_type": verdict_doc(is_simple_type(U, field), "exact"),
        }
    except (NotAUnit, NotTotallyPositive, DependentGenerators) as exc:
        report["subgroup"] = {"error": str(exc)}
    _ot_warning(field, report)
    return report


def _aut_doc(G):
    return {
        "order": G.order,
        "elements": [{"image": [frac_str(c) for c in a.image.coords],
                      "perm": list(a.perm)} for a in G.elements],
        "cayley": [list(r) for r in G.cayley],
        "warnings": list(G.warnings),
    }


def cmd_aut(args):
    job = _job_from_args(args)
    field = _field_of(job)
    G = automorphisms(field, precision=job.precision, cap=job.precision_cap)
    report = report_skeleton("aut", job)
    report["field"] = field_doc(field)
    report["aut"] = _aut_doc(G)
    if job.units:
        U = _subgroup_of(job, field)
        A = stabilizer_A_U(G, U)
        report["a_u"] = _aut_doc(A)
    _ot_warning(field, report)
    return report


def cmd_classify(args):
    job = _job_from_args(args)
    field = _field_of(job)
    report = report_skeleton("classify", job)
    report["field"] = field_doc(field)
    data = emb.embedding_data(field)
    report["embeddings"] = embeddings_doc(field, data, job.precision)
    report["caveats"].extend(order_caveat(field))
    _ot_warning(field, report)
    code = EXIT_OK
    U = _subgroup_of(job, field)
    adm = is_admissible(U, field, precision_cap=job.precision_cap)
    simple = is_simple_type(U, field)
    report["units"] = {
        "rank": U.rank,
        "admissible": verdict_doc(adm, "certified-interval"),
        "simple_type": verdict_doc(simple, "exact"),
    }
    if not adm:
        report["caveats"].append("unit subgroup is not admissible; "
                                 "orbit counts refer only to the label action")
    if not simple:
        report["caveats"].append(
            "(K,U) is not of simple type: orbit classes still bound the "
            "number of biholomorphism classes from above, but the "
            "biholomorphism criterion is only sufficient")
    G = automorphisms(field, precision=job.precision, cap=job.precision_cap)
    if G.warnings:
        report["caveats"].extend(G.warnings)
        code = EXIT_INCONCLUSIVE
    A = stabilizer_A_U(G, U)
    rep = orbit_report(A, field)
    report["aut"] = _aut_doc(G)
    report["a_u"] = {"order": A.order,
                     "elements": [G.elements.index(a) for a in A.elements]}
    report["orbits"] = {
        "count": rep.count,
        "classes": [[str(c) for c in orbit] for orbit in rep.orbits],
        "witnesses": {str(EmbeddingChoice(field.t, bits)):
                      {"representative": str(EmbeddingChoice(field.t, rep_bits)),
                       "automorphism": w}
                      for bits, (rep_bits, w) in sorted(rep.witnesses.items())},
    }
    return (report, code)


def _parse_mask(text, t) -> EmbeddingChoice:
    text = text.strip()
    if len(text) != t or any(ch not in "01" for ch in text):
        raise SchemaError(f"bitmask must be {t} characters of 0/1")
    bits = sum(1 << i for i, ch in enumerate(text) if ch == "1")
    return EmbeddingChoice(t, bits)


def cmd_compare(args):
    job = _job_from_args(args)
    field = _field_of(job)
    sufficient = bool(args.sufficient_only
                      or job.flags.get("sufficient_only", False))
    U = _subgroup_of(job, field)
    T = _parse_mask(args.t, field.t)
    Tp = _parse_mask(args.t_prime, field.t)
    G = automorphisms(field, precision=job.precision, cap=job.precision_cap)
    A = stabilizer_A_U(G, U)
    verdict = are_biholomorphic(field, U, A, T, Tp, sufficient_only=sufficient)
    report = report_skeleton("compare", job)
    report["field"] = field_doc(field)
    report["choices"] = {"t": str(T), "t_prime": str(Tp)}
    status = "certified-interval" if verdict.verdict != "unknown" else "inconclusive"
    report["biholomorphic"] = verdict_doc(verdict.verdict, status)
    if verdict.witness is not None:
        report["witness"] = {
            "image": [frac_str(c) for c in verdict.witness.image.coords],
            "image_poly": str(verdict.witness.image.poly()),
            "perm": list(verdict.witness.perm),
        }
    if verdict.verdict == "unknown":
        report["caveats"].append(
            "no witness found; without simple type the criterion is only "
            "sufficient, so this is not a proof of inequivalence")
    return report


def _parse_word(text) -> list:
    factors = []
    for token in text.split():
        body, _, exp = token.partition("^")
        e = int(exp) if exp else 1
        kind = "tc" if body.startswith("tc") else body[0]
        if kind not in ("s", "t", "tc"):
            raise SchemaError(f"bad character token {token!r}")
        try:
            idx = int(body[len(kind):])
        except ValueError:
            raise SchemaError(f"bad character token {token!r}") from None
        factors.append(((kind, idx), e))
    return factors


def _parse_tau(text, field) -> OrderedChoice:
    if not text:
        return OrderedChoice.canonical(field)
    try:
        idx = tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise SchemaError(f"bad --tau: {exc}") from None
    tau = OrderedChoice(idx)
    try:
        tau.validate(field)
    except ValueError as exc:
        raise SchemaError(str(exc)) from None
    return tau


def cmd_cohomology(args):
    job = _job_from_args(args)
    field = _field_of(job)
    U = _subgroup_of(job, field)
    tau = _parse_tau(args.tau, field)
    reading = args.reading or job.flags.get("reading", "as-printed")
    theta = Character.make(_parse_word(args.word), U)
    report = report_skeleton("cohomology", job)
    report["field"] = field_doc(field)
    report["character"] = {"word": args.word, "p": args.p, "q": args.q}
    if (args.p, args.q) == (1, 0):
        value = h10_nonvanishing(theta, field, tau,
                                 precision_cap=job.precision_cap)
        report["nonvanishing"] = verdict_doc(value, "certified-interval")
    else:
        res = hpq_nonvanishing(theta, args.p, args.q, field, tau,
                               reading=reading,
                               precision_cap=job.precision_cap)
        report["nonvanishing"] = verdict_doc(res.value, "certified-interval")
        report["nonvanishing"]["experimental"] = True
        report["nonvanishing"]["reading"] = res.reading
        if res.witness is not None:
            report["nonvanishing"]["witness"] = {
                "I": list(res.witness[0]), "J": list(res.witness[1]),
                "K": list(res.witness[2]),
            }
        report["caveats"].append(
            "EXPERIMENTAL: the general (p,q) criterion implements a guessed "
            "reading of an internally inconsistent statement; only the "
            "(1,0) membership test is treated as ground truth")
    return report


def cmd_export_lattice(args):
    job = _job_from_args(args)
    field = _field_of(job)
    U = _subgroup_of(job, field)
    tau = _parse_tau(args.tau, field)
    data = export_lattice(field, U, tau, precision=job.precision)
    report = report_skeleton("export-lattice", job)
    report["field"] = field_doc(field)
    report["lattice"] = {
        "tau": list(tau.indices),
        "order_basis": data.basis_kind,
        "rotations": [
            {"real": [enclosure_doc(r) for r in reals],
             "complex": [enclosure_doc(b) for b in boxes]}
            for reals, boxes in data.rotations
        ],
        "translations": [
            {"real": [enclosure_doc(r) for r in reals],
             "complex": [enclosure_doc(b) for b in boxes]}
            for reals, boxes in data.translations
        ],
        "precision": data.precision,
    }
    report["caveats"].extend(order_caveat(field))
    return report


def cmd_unit_search(args):
    job = _job_from_args(args)
    field = _field_of(job)
    count = args.count if args.count is not None else max(field.s, 1)
    found = unit_search(field, args.bound, count)
    report = report_skeleton("unit-search", job)
    report["field"] = field_doc(field)
    report["search"] = {
        "bound": args.bound,
        "count_target": count,
        "generators": [[frac_str(c) for c in g.coords] for g in found],
    }
    report["caveats"].append(
        "best-effort search: the returned units need not be fundamental "
        "and the subgroup they generate may be a proper subgroup of the "
        "totally positive units")
    _ot_warning(field, report)
    return report


def cmd_corpus(args):
    failures = 0
    base = resources.files("otclassify").joinpath("corpus")
    entries = sorted(p.name for p in base.iterdir() if p.name.endswith(".job.json"))
    if not entries:
        print("no corpus entries found")
        return None
    for name in entries:
        stem = name[: -len(".job.json")]
        job_doc = json.loads(base.joinpath(name).read_text(encoding="utf-8"))
        command = job_doc.pop("command", "classify")
        argv = job_doc.pop("argv", [])
        job = parse_job(job_doc)
        handler = {
            "classify": cmd_classify,
            "field-info": cmd_field_info,
            "aut": cmd_aut,
            "units-check": cmd_units_check,
        }[command]
        ns = argparse.Namespace(job=None, poly=",".join(str(c) for c in job.polynomial),
                                unit=[",".join(frac_str(c) for c in u) for u in job.units],
                                order_basis=None, prec=job.precision,
                                precision_cap=job.precision_cap, json_out=None)
        for extra in argv:
            key, _, val = extra.partition("=")
            setattr(ns, key, val)
        out = handler(ns)
        if isinstance(out, tuple):
            out = out[0]
        text = canonical_json(out)
        golden_path = base.joinpath(f"{stem}.golden.json")
        if args.regold:
            with resources.as_file(golden_path) as real:
                real.write_text(text, encoding="utf-8")
            print(f"REGOLD {stem}")
            continue
        try:
            expected = golden_path.read_text(encoding="utf-8")
        except FileNotFoundError:
            print(f"FAIL   {stem} (missing golden file)")
            failures += 1
            continue
        if text == expected:
            print(f"PASS   {stem}")
        else:
            print(f"FAIL   {stem} (report differs from golden file)")
            failures += 1
    if failures:
        sys.exit(1)
    return None


if __name__ == "__main__":
    sys.exit(main())
