"""Command-line front end.

Exit codes: 0 success, 1 a check reported failures, 2 parse error or
invalid splitting, 3 flag mismatch (or no carrier), 4 indeterminate
(budget exhausted).  The oracle state budget can be overridden with the
SIGMA3_BUDGET environment variable; `--budget` wins over both.
"""

from __future__ import annotations

import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import click

from . import __version__, catalog, classify as cl
from .descriptor import format_descriptor, parse_descriptor, parse_descriptors
from .errors import (
    FlagMismatch,
    Indeterminate,
    InvalidSplitting,
    NoCarrier,
    NotAdmissible,
    ParseError,
    Sigma3Error,
    UnknownComposite,
    UnsupportedTable,
)
from .wedgemap import AttachingVector, WedgeSpace

JSON_SCHEMA = "sigma3.classify/1"
BUDGET_ENV = "SIGMA3_BUDGET"

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_FLAGS, EXIT_INDETERMINATE = 0, 1, 2, 3, 4


def exit_code(exc: BaseException) -> int:
    if isinstance(exc, (ParseError, InvalidSplitting, NotAdmissible, UnsupportedTable, UnknownComposite, ValueError)):
        return EXIT_INPUT
    if isinstance(exc, (FlagMismatch, NoCarrier)):
        return EXIT_FLAGS
    if isinstance(exc, Indeterminate):
        return EXIT_INDETERMINATE
    return EXIT_FAIL


def _die(exc):
    click.echo(f"error: {exc}", err=True)
    sys.exit(exit_code(exc))


@click.group()
@click.version_option(__version__, prog_name="sigma3")
def main():
    """Triple suspensions of simply connected 6-manifolds: tables, canonical forms, classification."""


# ---------------------------------------------------------------------------
# tables and composites


@main.command()
@click.argument("complex_literal")
@click.argument("degree", type=int)
def table(complex_literal, degree):
    """Print the homotopy group pi_DEGREE of an elementary complex, e.g. `table Ceta7 8`."""
    try:
        click.echo(str(catalog.pi(catalog.parse_complex(complex_literal), degree)))
    except (Sigma3Error, ValueError) as exc:
        _die(exc)


@main.command()
@click.argument("tag")
@click.argument("source")
@click.argument("target")
@click.argument("element")
@click.option("--degree", "-n", type=int, default=8, show_default=True, help="Degree of the source homotopy group.")
@click.option("-k", type=int, default=1, help="Integer for the `mult` tag.")
def compose(tag, source, target, element, degree, k):
    """Post-compose ELEMENT of pi_n(SOURCE) with the morphism TAG: SOURCE -> TARGET.

    Example: `compose q P7(2^1) S7 1*etatilde` prints `1*eta`.
    """
    try:
        f = catalog.morph(tag, source, target, k)
        e = catalog.pi(f.source, degree).parse_element(element)
        click.echo(catalog.pi(f.target, degree).format_element(catalog.apply(f, e, degree)))
    except (Sigma3Error, ValueError) as exc:
        _die(exc)


# ---------------------------------------------------------------------------
# canonical forms


@main.command()
@click.argument("wedge_literal")
@click.argument("vector_literal")
@click.option("--trace", is_flag=True, help="Print one line per applied rule.")
def reduce(wedge_literal, vector_literal, trace):
    """Canonical form of an attaching vector, e.g. `reduce "[P7(2^2)]" "[1*i_eta2 + 1*etatilde]"`."""
    from .reduce import canonicalize

    try:
        w = WedgeSpace.parse(wedge_literal)
        v = AttachingVector.parse(w, vector_literal)
        steps = [] if trace else None
        out = canonicalize(v, trace=steps)
    except Sigma3Error as exc:
        _die(exc)
    click.echo(out.format())
    for step in steps or ():
        click.echo(f"  {step}")


# ---------------------------------------------------------------------------
# classification


_CLASSIFIERS = {"2": cl.classify_2local, "3": cl.classify_3local, "total": cl.classify_total}


def _candidate_json(dec: cl.WedgeDecomposition):
    cone = None
    if dec.cone_part is not None:
        w, v = dec.cone_part
        cone = {"wedge": w.literal(), "vector": v.format()}
    return {
        "tag": dec.tag,
        "member": dec.member,
        "shell": dec.shell,
        "free": [x.literal() for x in dec.free_part],
        "cone": cone,
        "j0": dec.j0,
        "j0_prime": dec.j0_prime,
        "render": dec.render(),
        "explicit": dec.render_explicit(),
    }


def classify_record(inv, local: str):
    """(exit code, candidates or error message) for one validated descriptor."""
    try:
        return EXIT_OK, _CLASSIFIERS[local](inv)
    except Sigma3Error as exc:
        return exit_code(exc), str(exc)


def _run_record(args):
    text, local = args
    try:
        inv = parse_descriptor(text)
    except Sigma3Error as exc:
        return None, exit_code(exc), str(exc)
    code, out = classify_record(inv, local)
    return inv, code, out


def _emit(inv, code, out, local, as_json, explicit):
    if as_json:
        rec = {"locality": local, "status": code}
        if inv is not None:
            rec["descriptor"] = format_descriptor(inv)
        if code == EXIT_OK:
            rec["candidates"] = [_candidate_json(d) for d in out]
        else:
            rec["error"] = out
        return rec
    if code != EXIT_OK:
        click.echo(f"error: {out}", err=True)
        return None
    for d in out:
        click.echo(d.render_explicit() if explicit else d.render())
    return None


@main.command(name="classify")
@click.argument("descriptor", type=click.File("r"))
@click.option("--local", "local", type=click.Choice(["2", "3", "total"]), default="total", show_default=True)
@click.option("--json", "as_json", is_flag=True, help=f"Machine-readable output (schema {JSON_SCHEMA}).")
@click.option("--explicit", is_flag=True, help="Spell out every wedge summand instead of the shell form.")
@click.option("--batch", is_flag=True, help="DESCRIPTOR holds several records separated by `---` lines.")
@click.option("--jobs", "-j", type=int, default=1, show_default=True, help="Worker processes in batch mode.")
def classify_cmd(descriptor, local, as_json, explicit, batch, jobs):
    """Candidate decompositions for the manifold described in DESCRIPTOR (`-` for stdin)."""
    text = descriptor.read()
    if batch:
        records = [r for r, _ in parse_descriptors(text, validate=False)]
    else:
        records = [text]
    args = [(r, local) for r in records]
    if batch and jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_run_record, args))
    else:
        results = [_run_record(a) for a in args]
    worst = EXIT_OK
    payload = []
    for i, (inv, code, out) in enumerate(results, 1):
        if batch and not as_json:
            click.echo(f"# record {i}")
        rec = _emit(inv, code, out, local, as_json, explicit)
        if rec is not None:
            payload.append(rec)
        worst = max(worst, code)
    if as_json:
        doc = {"schema": JSON_SCHEMA, "records" if batch else "record": payload if batch else payload[0]}
        click.echo(json.dumps(doc, indent=2, sort_keys=True))
    sys.exit(worst)


# ---------------------------------------------------------------------------
# oracle and audits


def _default_budget():
    from .oracle import DEFAULT_STATE_BUDGET

    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_STATE_BUDGET
    try:
        return int(raw)
    except ValueError:
        _die(ParseError(f"{BUDGET_ENV} must be an integer, got {raw!r}"))


@main.command()
@click.argument("wedge_literal")
@click.option("--budget", type=int, default=None, help=f"State budget (default: ${BUDGET_ENV} or 10^6).")
@click.option("--max-length", type=int, default=None, help="Longest morphism chain used for moves.")
@click.option("--all-vectors", is_flag=True, help="Enumerate every coefficient tuple, not just admissible ones.")
def oracle(wedge_literal, budget, max_length, all_vectors):
    """Orbits of attaching vectors on a small wedge, checked against the canonical forms."""
    from .oracle import OracleConfig, cross_check
    from .search import DEFAULT_MAX_LENGTH

    cfg = OracleConfig(
        max_length=max_length or DEFAULT_MAX_LENGTH,
        budget=budget if budget is not None else _default_budget(),
        admissible_only=not all_vectors,
    )
    try:
        report = cross_check(WedgeSpace.parse(wedge_literal), config=cfg)
    except Sigma3Error as exc:
        _die(exc)
    click.echo(report.format())
    click.echo("note: 'same orbit' is sound; distinct orbits only mean no generated move identifies them")
    sys.exit(EXIT_OK if report.ok else EXIT_FAIL)


@main.command()
@click.argument("descriptor", type=click.File("r"), required=False)
@click.option("--bound", type=int, default=2, show_default=True, help="Exponent bound for the rule pack.")
def audit(descriptor, bound):
    """Verify the rule pack, or audit the homology of every candidate for DESCRIPTOR."""
    if descriptor is None:
        from .reduce import rule_pack

        prec, plus = rule_pack(bound)
        bad = [r for r in list(prec) + list(plus) if not r.verify()]
        click.echo(f"prec rules {len(prec)}")
        click.echo(f"plus rules {len(plus)}")
        click.echo(f"failures {len(bad)}")
        for r in bad:
            click.echo(f"  {r}")
        sys.exit(EXIT_OK if not bad else EXIT_FAIL)
    try:
        inv = parse_descriptor(descriptor.read())
    except Sigma3Error as exc:
        _die(exc)
    worst = EXIT_OK
    for local, fn in _CLASSIFIERS.items():
        code, out = classify_record(inv, local)
        if code != EXIT_OK:
            click.echo(f"[{local}] error: {out}")
            continue
        for d in out:
            ok = cl.homology_audit(d, inv)
            worst = max(worst, EXIT_OK if ok else EXIT_FAIL)
            click.echo(f"[{local}] {'ok  ' if ok else 'FAIL'} {d.render()}")
    sys.exit(worst)


if __name__ == "__main__":  # pragma: no cover
    main()
