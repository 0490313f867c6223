"""Command-line front end.

Every subcommand parses its inputs, calls one library function and prints
sorted-key JSON on standard output.  Exit status is 0 on success, 1 when
verification finds counterexamples and 2 on any input error, in which case
the JSON body is a machine-readable error object.
"""

from __future__ import annotations

import json
import logging
import sys
from pathlib import Path as FsPath

import click

from . import equivalence as eq
from .errors import BadInput, DtildeError
from .quiver_core import Quiver, canonical_quiver, mutate, validate_quiver
from .rep_core import (
    Direction,
    ModuleCoordinate,
    Representation,
    build_module,
    classify_component,
    ext1_dim,
    hom_dim,
    tau,
)
from .surface_core import (
    Curve,
    Triangulation,
    Turn,
    canonical_triangulation,
    dimension_vector,
    elementary_moves,
    intersection_number,
    rho,
    validate_triangulation,
)

log = logging.getLogger("dtilde")


class Failed(Exception):
    """Carries a JSON body that is printed with exit status 1."""

    def __init__(self, body):
        self.body = body


def emit(body) -> None:
    click.echo(json.dumps(body, sort_keys=True))


def load_json(arg: str):
    """Inline JSON text or the path of a JSON file."""
    text = arg.strip()
    if not text.startswith(("{", "[")):
        path = FsPath(arg)
        if not path.is_file():
            raise BadInput(f"not inline JSON and no such file: {arg}")
        text = path.read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise BadInput(f"invalid JSON in {arg}: {exc}") from None


def load_quiver(arg: str) -> Quiver:
    if arg.startswith("canonical:"):
        return canonical_quiver(_int_suffix(arg))
    q = Quiver.from_json(load_json(arg))
    validate_quiver(q)
    return q


def load_triangulation(arg: str) -> Triangulation:
    if arg.startswith("canonical:"):
        return canonical_triangulation(_int_suffix(arg))[0]
    return validate_triangulation(Triangulation.from_json(load_json(arg)))


def _int_suffix(arg: str) -> int:
    try:
        return int(arg.split(":", 1)[1])
    except ValueError:
        raise BadInput(f"expected canonical:<n>, got {arg}") from None


def load_module(arg: str, q: Quiver | None) -> Representation:
    """A representation, or a module coordinate built over q."""
    data = load_json(arg)
    if "component" in data:
        if q is None:
            raise BadInput("a module coordinate needs --quiver")
        return build_module(q, ModuleCoordinate.from_json(data))
    m = Representation.from_json(data)
    if q is not None and m.quiver != q:
        raise BadInput("representation is over a different quiver than --quiver")
    return m


def load_curve(arg: str, t: Triangulation) -> Curve:
    """A curve, or a module coordinate mapped to its curve over t."""
    data = load_json(arg)
    if "component" in data:
        return eq.module_to_curve(ModuleCoordinate.from_json(data), t).curve
    return Curve.from_json(data, t.n)


def _rep_body(m: Representation) -> dict:
    body = {"representation": m.to_json()}
    if not m.is_zero:
        body["coordinate"] = classify_component(m).to_json()
    return body


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("-v", "--verbose", is_flag=True, help="Log progress to standard error.")
def main(verbose: bool) -> None:
    """Modules of affine D_n path algebras and tagged edges on a twice-punctured disk."""
    logging.basicConfig(level=logging.INFO if verbose else logging.WARNING, stream=sys.stderr)


@main.command("quiver-mutate")
@click.option("--quiver", "quiver_arg", required=True, help="Quiver JSON, file or canonical:n.")
@click.option("--vertex", type=int, required=True)
def quiver_mutate(quiver_arg, vertex):
    q = load_quiver(quiver_arg)
    emit(mutate(q, vertex).to_json())


@main.command()
@click.option("--quiver", "quiver_arg", help="Quiver, needed when modules are given as coordinates.")
@click.option("--m", "m_arg", required=True)
@click.option("--n", "n_arg", required=True)
def hom(quiver_arg, m_arg, n_arg):
    q = load_quiver(quiver_arg) if quiver_arg else None
    emit({"hom": hom_dim(load_module(m_arg, q), load_module(n_arg, q))})


@main.command()
@click.option("--quiver", "quiver_arg", help="Quiver, needed when modules are given as coordinates.")
@click.option("--m", "m_arg", required=True)
@click.option("--n", "n_arg", required=True)
def ext(quiver_arg, m_arg, n_arg):
    q = load_quiver(quiver_arg) if quiver_arg else None
    emit({"ext": ext1_dim(load_module(m_arg, q), load_module(n_arg, q))})


@main.command("tau")
@click.option("--quiver", "quiver_arg")
@click.option("--m", "m_arg", required=True)
@click.option("--inverse", is_flag=True)
def tau_cmd(quiver_arg, m_arg, inverse):
    q = load_quiver(quiver_arg) if quiver_arg else None
    m = load_module(m_arg, q)
    emit(_rep_body(tau(m, Direction.INVERSE if inverse else Direction.FORWARD)))


@main.command("rho")
@click.option("--tri", "tri_arg", required=True, help="Triangulation JSON, file or canonical:n.")
@click.option("--curve", "curve_arg", required=True)
@click.option("--inverse", is_flag=True)
def rho_cmd(tri_arg, curve_arg, inverse):
    t = load_triangulation(tri_arg)
    c = load_curve(curve_arg, t)
    emit(rho(c, Turn.INVERSE if inverse else Turn.FORWARD).to_json())


@main.command("int")
@click.option("--tri", "tri_arg", required=True)
@click.option("--a", "a_arg", required=True)
@click.option("--b", "b_arg", required=True)
def int_cmd(tri_arg, a_arg, b_arg):
    t = load_triangulation(tri_arg)
    emit({"int": intersection_number(load_curve(a_arg, t), load_curve(b_arg, t))})


@main.command()
@click.option("--tri", "tri_arg", required=True)
@click.option("--curve", "curve_arg", required=True)
def dimvec(tri_arg, curve_arg):
    t = load_triangulation(tri_arg)
    emit({"dim_vector": list(dimension_vector(load_curve(curve_arg, t), t))})


@main.command()
@click.option("--tri", "tri_arg", required=True)
@click.option("--curve", "curve_arg", required=True)
def moves(tri_arg, curve_arg):
    t = load_triangulation(tri_arg)
    emit({"moves": [mv.to_json() for mv in elementary_moves(load_curve(curve_arg, t), t)]})


@main.command()
@click.option("--tri", "tri_arg", required=True)
@click.option("--curve", "curve_arg", help="Curve for the geometric mesh.")
@click.option("--module", "module_arg", help="Module coordinate for the algebraic mesh.")
def mesh(tri_arg, curve_arg, module_arg):
    t = load_triangulation(tri_arg)
    if (curve_arg is None) == (module_arg is None):
        raise BadInput("give exactly one of --curve and --module")
    if curve_arg is not None:
        result = eq.expand_mesh(load_curve(curve_arg, t), eq.MeshSide.GEOMETRIC, t)
    else:
        coord = ModuleCoordinate.from_json(load_json(module_arg))
        result = eq.expand_mesh(coord, eq.MeshSide.ALGEBRAIC, t)
    emit(result.to_json())


@main.command()
@click.option("--n", "n", type=int, required=True)
@click.option("--depth", type=int, default=4, show_default=True)
@click.option("--quasi-max", type=int, default=3, show_default=True)
@click.option("--colors", default="0,1,inf,2,-1", show_default=True, help="Comma-separated tube colors.")
def verify(n, depth, quasi_max, colors):
    if depth < 1 or quasi_max < 1:
        raise BadInput("depth and quasi-max must be positive")
    log.info("verifying n=%d depth=%d quasi_max=%d colors=%s", n, depth, quasi_max, colors)
    report = eq.verify_intersection_dimension(n, depth, quasi_max, [c for c in colors.split(",") if c])
    log.info("%d pairs checked, %d failures", report.pairs_checked, len(report.failures))
    if not report.ok:
        raise Failed(report.to_json())
    emit(report.to_json())


@main.command()
@click.option("--tri", "tri_arg", help="Triangulation drawn in red.")
@click.option("--n", "n", type=int, help="Rank when no triangulation is drawn.")
@click.option("--curve", "curve_args", multiple=True, help="Curve drawn in blue; repeatable.")
@click.option("--out", "out", required=True, type=click.Path(dir_okay=False))
def svg(tri_arg, n, curve_args, out):
    from .figures import render_svg

    if tri_arg is None and n is None:
        raise BadInput("give --tri or --n")
    t = load_triangulation(tri_arg) if tri_arg else None
    ctx = t if t is not None else canonical_triangulation(n)[0]
    curves = [load_curve(a, ctx) for a in curve_args]
    FsPath(out).write_text(render_svg(t, curves, ctx.n))
    emit({"svg": str(out), "curves": len(curves)})


def run(argv=None) -> int:
    """Run the command line and return its exit status."""
    try:
        main.main(args=argv, standalone_mode=False)
    except Failed as exc:
        emit(exc.body)
        return 1
    except DtildeError as exc:
        emit(exc.to_json())
        return 2
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        emit({"error": "BadInput", "message": exc.format_message()})
        return 2
    except click.exceptions.Abort:
        return 2
    except (KeyError, TypeError, ValueError) as exc:
        emit({"error": "BadInput", "message": f"{type(exc).__name__}: {exc}"})
        return 2
    return 0


def entry() -> None:
    sys.exit(run())
