"""Command line front end.

A thin client over the service handlers: requests are built as the same
pydantic models the FastAPI app consumes, executed in-process by default or
against a running server with --server.  Exit codes: 0 success, 1 input
validation error, 2 internal inconsistency / verification failure.
"""

from __future__ import annotations

import sys

import click

from .schemas import EvaluateRequest, FormulaRequest, VerifyRequest


def _parse_roots(text: str):
    """Semicolon-separated vectors with comma-separated integer coordinates."""
    vecs = []
    for chunk in text.replace(" ", "").split(";"):
        if not chunk:
            continue
        vecs.append([int(x) for x in chunk.split(",")])
    if not vecs:
        raise click.UsageError("no vectors in --roots")
    return vecs


def _spec_kwargs(root_system, roots, chambers, algorithm):
    if (root_system is None) == (roots is None):
        raise click.UsageError("give exactly one of --root-system or --roots")
    return {
        "root_system": root_system,
        "roots": _parse_roots(roots) if roots else None,
        "strategy": chambers,
        "algorithm": algorithm,
    }


def _call(endpoint: str, request, server: str | None):
    if server:
        import httpx

        resp = httpx.post(f"{server.rstrip('/')}/api/{endpoint}",
                          json=request.model_dump(), timeout=None)
        if resp.status_code == 422:
            raise click.UsageError(resp.json().get("detail", "validation error"))
        resp.raise_for_status()
        return resp.json()
    from . import service

    handler = {"formula": service.handle_formula,
               "evaluate": service.handle_evaluate,
               "verify": service.handle_verify}[endpoint]
    return handler(request)


def _write(text: str, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        click.echo(text)


_shared = [
    click.option("--root-system", default=None, help="named preset, e.g. B3 or G2"),
    click.option("--roots", default=None,
                 help='explicit vectors: "1,0;0,1;1,1"'),
    click.option("--chambers", type=click.Choice(["arbitrary", "proper", "amalgamated"]),
                 default="proper", show_default=True),
    click.option("--algorithm", type=click.Choice(["pf", "elementary"]),
                 default="pf", show_default=True),
    click.option("--server", default=None, metavar="URL",
                 help="send the request to a running vecpart service"),
]


def shared_options(fn):
    for opt in reversed(_shared):
        fn = opt(fn)
    return fn


@click.group()
def main():
    """Closed-form quasipolynomial formulas for vector partition functions."""


@main.command()
@shared_options
@click.option("--format", "fmt", type=click.Choice(["text", "json", "latex"]),
              default="text", show_default=True)
@click.option("--seed", type=int, default=7, show_default=True,
              help="seed for the random substitution check points")
@click.option("--out", default=None, metavar="FILE", help="write output to a file")
def formula(root_system, roots, chambers, algorithm, server, fmt, seed, out):
    """Compute the chamber complex and per-chamber quasipolynomials."""
    from .engine import InternalInconsistencyError

    try:
        req = FormulaRequest(seed=seed,
                             **_spec_kwargs(root_system, roots, chambers, algorithm))
        doc = _call("formula", req, server)
    except (ValueError, click.UsageError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    except InternalInconsistencyError as exc:
        click.echo(f"internal inconsistency: {exc}", err=True)
        sys.exit(2)
    if fmt == "json":
        import json

        _write(json.dumps(doc, indent=2), out)
    else:
        from .render import emit, from_json_dict

        _write(emit(from_json_dict(doc), fmt), out)


@main.command("eval")
@shared_options
@click.option("--point", required=True, metavar="C1,...,CN")
@click.option("--out", default=None, metavar="FILE")
def eval_cmd(root_system, roots, chambers, algorithm, server, point, out):
    """Evaluate the vector partition function at one integer point."""
    from .engine import InternalInconsistencyError

    try:
        coords = [int(x) for x in point.replace(" ", "").split(",")]
        req = EvaluateRequest(point=coords,
                              **_spec_kwargs(root_system, roots, chambers, algorithm))
        doc = _call("evaluate", req, server)
    except (ValueError, click.UsageError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    except InternalInconsistencyError as exc:
        click.echo(f"internal inconsistency: {exc}", err=True)
        sys.exit(2)
    _write(str(doc["value"]), out)


@main.command()
@shared_options
@click.option("--box", type=int, default=8, show_default=True,
              help="verify on the grid 0 <= gamma_i <= box")
@click.option("--out", default=None, metavar="FILE")
def verify(root_system, roots, chambers, algorithm, server, box, out):
    """Compare the formulas against brute-force counting on a grid."""
    from .engine import InternalInconsistencyError

    try:
        req = VerifyRequest(box=box, **_spec_kwargs(root_system, roots, chambers, algorithm))
        doc = _call("verify", req, server)
    except (ValueError, click.UsageError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    except InternalInconsistencyError as exc:
        click.echo(f"internal inconsistency: {exc}", err=True)
        sys.exit(2)
    if doc["matches"]:
        _write(f"all {doc['checked']} grid points match oracle", out)
    else:
        mm = doc["first_mismatch"]
        _write(f"MISMATCH at {tuple(mm['point'])}: formula {mm['formula']} "
               f"vs oracle {mm['oracle']} (after {doc['checked']} points)", out)
        sys.exit(2)


@main.command()
@click.option("--root-system", default=None)
@click.option("--roots", default=None)
@click.option("--stage", type=click.Choice(["initial", "semi", "full"]),
              default="full", show_default=True)
@click.option("--format", "fmt", type=click.Choice(["text", "latex"]),
              default="text", show_default=True)
@click.option("--out", default=None, metavar="FILE")
def decompose(root_system, roots, stage, fmt, out):
    """Print the partial fraction decomposition of the generating function."""
    from .partfrac import decompose as run_decompose
    from .render import decomposition_latex, decomposition_text
    from .schemas import ProblemSpec

    try:
        spec = ProblemSpec(root_system=root_system,
                           roots=_parse_roots(roots) if roots else None)
        delta = spec.resolved_delta()
    except (ValueError, click.UsageError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    start, semi, full = run_decompose(delta)
    chosen = {"initial": start, "semi": semi, "full": full}[stage]
    emitter = decomposition_latex if fmt == "latex" else decomposition_text
    _write(emitter(chosen), out)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host, port):
    """Run the HTTP service (uvicorn)."""
    import uvicorn

    uvicorn.run("vecpart.service:app", host=host, port=port)


if __name__ == "__main__":
    main()
