"""Command-line front end.

Exit codes: 0 on success, 1 on mathematical failure (violation or negative
verdict), 2 on input errors.
"""
from __future__ import annotations

import json
import sys
from fractions import Fraction

import click

from .abelian import ab_eps_membership, class_sums
from .boolean import eps_subgroup_membership, graev_norm_bruteforce, graev_norm_fast
from .errors import CapExceeded, InputError, NafreeError
from .freegroup import eps_tilde_membership, quotient_hom
from .report import CLAIMS, run_report
from .serialize import (
    dump_json,
    encode_boolean_word,
    encode_certificate,
    format_rational,
    load_workspace,
    parse_abelian_word,
    parse_boolean_word,
    parse_free_word,
)

EXIT_MATH_FAIL = 1
EXIT_INPUT = 2


def _load(file, basepoint):
    try:
        return load_workspace(file, basepoint)
    except InputError as exc:
        click.echo(f"input error: {exc}", err=True)
        sys.exit(EXIT_INPUT)


@click.group()
def main():
    """Exact computations with free non-archimedean groups at desk scale."""


@main.command()
@click.argument("file", type=click.Path())
def validate(file):
    """Validate the space, chains and actions in a workspace file.

    Mathematical violations (broken strong triangle, overlapping blocks,
    non-isometric actions) exit 1; unreadable or malformed input exits 2.
    """
    from .serialize import parse_chain, parse_space
    from .spaces import validate_ultrametric

    try:
        with open(file) as fh:
            raw = json.load(fh)
        if "space" not in raw:
            raise InputError("workspace needs a 'space' object")
        space_obj = raw["space"]
        rows = [
            [Fraction(json_rational(v)) for v in row] for row in space_obj.get("dist", [])
        ]
    except (OSError, json.JSONDecodeError, InputError, ValueError, TypeError) as exc:
        click.echo(f"input error: {exc}", err=True)
        sys.exit(EXIT_INPUT)
    failures = []
    try:
        bad = validate_ultrametric(rows)
    except InputError as exc:
        click.echo(f"input error: {exc}", err=True)
        sys.exit(EXIT_INPUT)
    space = None
    if bad is not None:
        failures.append(f"space: {bad}")
    else:
        try:
            space = parse_space(space_obj)
        except InputError as exc:
            click.echo(f"input error: {exc}", err=True)
            sys.exit(EXIT_INPUT)
        click.echo(f"space: {space.size} points, ok")
    if space is not None:
        for name, obj in raw.get("chains", {}).items():
            try:
                chain = parse_chain(obj, space)
                click.echo(f"chain {name}: {len(chain)} levels, ok")
            except (InputError, NafreeError) as exc:
                failures.append(f"chain {name}: {exc}")
        ws = None
        try:
            ws = load_workspace(file, None)
        except NafreeError as exc:
            failures.append(str(exc))
        if ws is not None:
            for name, act in ws.actions.items():
                click.echo(f"action {name}: group of order {act.group.order}, isometric, ok")
    for f in failures:
        click.echo(f"violation: {f}")
    if failures:
        sys.exit(EXIT_MATH_FAIL)
    click.echo("ok")


def json_rational(v):
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise InputError(f"not a rational: {v!r}")
    return v


@main.command()
@click.argument("file", type=click.Path())
@click.argument("word")
@click.option("--check", is_flag=True, help="also run the brute-force oracle")
@click.option("--cap", type=int, default=12, show_default=True, help="enumeration cap")
@click.option("--basepoint", default=None, help="override the zero-extension basepoint")
@click.option("--json", "as_json", is_flag=True, help="machine-readable output")
def norm(file, word, check, cap, basepoint, as_json):
    """Graev ultra-norm of a Boolean WORD (JSON array of point names)."""
    ws = _load(file, basepoint)
    try:
        u = parse_boolean_word(json.loads(word), ws.space)
    except (json.JSONDecodeError, InputError) as exc:
        click.echo(f"input error: {exc}", err=True)
        sys.exit(EXIT_INPUT)
    cert = graev_norm_fast(u, ws.aug)
    payload = encode_certificate(cert, ws.aug)
    if check:
        try:
            brute = graev_norm_bruteforce(u, ws.aug, cap)
            agree = brute.value == cert.value
            payload["oracle"] = {"value": format_rational(brute.value), "agrees": agree}
        except CapExceeded as exc:
            payload["oracle"] = {"skipped": str(exc)}
            agree = True
    else:
        agree = True
    if as_json:
        click.echo(dump_json(payload), nl=False)
    else:
        click.echo(f"word: {json.loads(word)}")
        click.echo(f"norm: {payload['value']}  (algorithm: {payload['algorithm']})")
        click.echo(f"witness pairing: {payload['witness']}")
        if check:
            click.echo(f"oracle: {payload['oracle']}")
    if not agree:
        sys.exit(EXIT_MATH_FAIL)


@main.command()
@click.argument("file", type=click.Path())
@click.argument("word")
@click.option("--group", "-g", type=click.Choice(["B", "A", "F"]), required=True)
@click.option("--chain", default="balls", show_default=True)
@click.option("--level", type=int, default=-1, help="chain level index (default finest)")
@click.option("--json", "as_json", is_flag=True)
def member(file, word, group, chain, level, as_json):
    """Membership of WORD in the epsilon-subgroup at a chain level.

    WORD is JSON: B = array of names, A = {name: coeff}, F = letter array
    with trailing apostrophe for inverses.
    """
    ws = _load(file, None)
    if chain not in ws.chains:
        click.echo(f"input error: unknown chain {chain!r}", err=True)
        sys.exit(EXIT_INPUT)
    levels = ws.chains[chain].levels
    if not -len(levels) <= level < len(levels):
        click.echo(f"input error: level {level} out of range", err=True)
        sys.exit(EXIT_INPUT)
    part = levels[level][1]
    try:
        obj = json.loads(word)
        if group == "B":
            u = parse_boolean_word(obj, ws.space)
            verdict = eps_subgroup_membership(u, part)
            evidence = {
                "parity": [
                    len(b & u.points) % 2 == 0 for b in part.blocks
                ]
            }
        elif group == "A":
            w = parse_abelian_word(obj, ws.space)
            verdict = ab_eps_membership(w, part)
            evidence = {"class_sums": list(class_sums(w, part))}
        else:
            w = parse_free_word(obj, ws.space)
            verdict = eps_tilde_membership(w, part)
            img = quotient_hom(w, part)
            evidence = {"quotient_image_length": len(img)}
    except (json.JSONDecodeError, InputError) as exc:
        click.echo(f"input error: {exc}", err=True)
        sys.exit(EXIT_INPUT)
    blocks = [sorted(ws.space.names[p] for p in b) for b in part.blocks]
    payload = {"member": verdict, "blocks": blocks, **evidence}
    if as_json:
        click.echo(dump_json(payload), nl=False)
    else:
        click.echo(f"blocks: {blocks}")
        click.echo(f"evidence: {evidence}")
        click.echo("member" if verdict else "not a member")
    if not verdict:
        sys.exit(EXIT_MATH_FAIL)


@main.command()
@click.argument("file", type=click.Path())
@click.option("--only", default=None, help=f"run one claim: {', '.join(CLAIMS)}")
@click.option("--json", "as_json", is_flag=True)
def report(file, only, as_json):
    """Run the claim-by-claim property suite on the workspace."""
    ws = _load(file, None)
    try:
        rows = run_report(ws, only)
    except NafreeError as exc:
        click.echo(f"input error: {exc}", err=True)
        sys.exit(EXIT_INPUT)
    if as_json:
        click.echo(dump_json(rows), nl=False)
    else:
        width = max(len(c) for c in rows)
        for claim, row in rows.items():
            status = "pass" if row["passed"] else "FAIL"
            click.echo(f"{claim:<{width}}  {status}  {row['detail']}")
    if not all(row["passed"] for row in rows.values()):
        sys.exit(EXIT_MATH_FAIL)


if __name__ == "__main__":
    main()
