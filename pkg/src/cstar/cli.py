"""``cstar-calc``: command-line front end.

Exit status 0 on success, 1 on domain errors (JSON on stderr), 2 on
malformed input.
"""

import json
import sys

import click

from . import connectivity as conn
from . import quiver as qv
from .degeneration import DegenerationDiagram, diagram_from_dict, special_fiber, validate_diagram
from .errors import CStarError, ParseError, PreconditionViolated
from .multidivisor import Multidivisor, multidivisor_from_dict, smoothness_failures, to_fan, validate
from .picard_transport import degenerate_to_toric, lattice, transport_matrix
from .render import render
from .toric_core import ToricSurface, as_surface, canonical_form, validate_toric
from .toric_systems import (
    ToricSystem,
    augment,
    catalog_A,
    catalog_At,
    catalog_mismatches,
    enumerate_systems_F,
    is_compatible,
    is_exceptional,
    is_strongly_exceptional,
    make_system,
    mutate_L1,
    system_failures,
    tame_certificate,
    toric_blowup_at,
    toricsys_for_target,
    transport_system,
    tv_of,
)


class ValidationFailed(CStarError):
    code = "validation_failed"


# ---------------------------------------------------------------- input


def read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError("%s: %s" % (path, exc)) from None


def _int_list(xs):
    if not isinstance(xs, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in xs):
        raise ParseError("expected a list of integers, got %r" % (xs,))
    return tuple(xs)


def load_object(data):
    """Toric surface, multidivisor, diagram or path from parsed JSON."""
    if not isinstance(data, dict):
        raise ParseError("expected a JSON object")
    if "toric" in data or "b" in data:
        return as_surface(_int_list(data.get("toric", data.get("b"))))
    if "steps" in data:
        try:
            return conn.path_from_dict(data)
        except (KeyError, TypeError) as exc:
            raise ParseError("malformed path: %s" % exc) from None
    if "edges" in data:
        return diagram_from_dict(data)
    if "slices" in data or "minus" in data or "plus" in data:
        return multidivisor_from_dict(data)
    raise ParseError("unrecognized object; expected toric, slices, edges or steps")


def load_system(data):
    if not isinstance(data, dict):
        raise ParseError("expected a JSON object")
    if "catalog" in data:
        cat = data["catalog"]
        try:
            r, i, fam = int(cat["r"]), int(cat["i"]), cat.get("family", "A")
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError("malformed catalog entry: %s" % exc) from None
        S = load_object(data["surface"]) if "surface" in data else as_surface((0, r, 0, -r))
        return (catalog_A if fam == "A" else catalog_At)(S, i)
    try:
        S = load_object(data["surface"])
        entries = [_int_list(e) for e in data["entries"]]
    except (KeyError, TypeError) as exc:
        raise ParseError("malformed system: %s" % exc) from None
    return make_system(S, entries)


def _surface_json(S):
    if isinstance(S, ToricSurface):
        return {"toric": list(S.b)}
    return S.to_dict()


def system_json(A):
    return {
        "surface": _surface_json(A.surface),
        "entries": [list(e) for e in A.entries],
        "basis": lattice(A.surface).basis_manifest(),
        "tv": list(tv_of(A).b),
    }


def emit(obj, out=None, fmt="json"):
    text = obj if isinstance(obj, str) else json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _need(obj, *types):
    if not isinstance(obj, types):
        names = ", ".join(t.__name__ for t in types)
        raise ParseError("expected %s, got %s" % (names, type(obj).__name__))
    return obj


IN = click.option("--in", "inp", required=True, type=click.Path(exists=True, dir_okay=False))
OUT = click.option("--out", "out", type=click.Path(dir_okay=False))


# ---------------------------------------------------------------- commands


@click.group()
@click.version_option(package_name="artifact")
def cli():
    """Exact tools for rational C*-surfaces and their homogeneous deformations."""


@cli.command("validate")
@IN
@OUT
def cmd_validate(inp, out):
    """Check a surface, multidivisor or diagram."""
    obj = load_object(read_json(inp))
    if isinstance(obj, ToricSurface):
        rep = validate_toric(obj).to_dict()
    elif isinstance(obj, Multidivisor):
        r = validate(obj)
        rep = r.to_dict()
        if r.ok:
            fails = smoothness_failures(obj)
            rep["smooth"] = not fails
            rep["smoothness_failures"] = fails
    elif isinstance(obj, DegenerationDiagram):
        rep = validate_diagram(obj).to_dict()
    else:
        conn.check_path(obj)
        rep = {"ok": True, "failures": [], "steps": len(obj)}
    emit(rep, out)
    if not rep["ok"]:
        raise ValidationFailed("; ".join(rep["failures"]))


@cli.command("smooth")
@IN
@OUT
def cmd_smooth(inp, out):
    """Smoothness of a multidivisor."""
    M = _need(load_object(read_json(inp)), Multidivisor)
    r = validate(M)
    if not r.ok:
        raise ValidationFailed("; ".join(r.failures))
    fails = smoothness_failures(M)
    emit({"smooth": not fails, "failures": fails}, out)


@cli.command("fan")
@IN
@OUT
def cmd_fan(inp, out):
    """Toric fan of a toric multidivisor."""
    obj = load_object(read_json(inp))
    if isinstance(obj, ToricSurface):
        emit({"b": list(obj.b), "rays": [list(r) for r in obj.rays]}, out)
        return
    model = to_fan(_need(obj, Multidivisor))
    emit(
        {
            "b": list(model.surface.b),
            "rays": [list(r) for r in model.rays],
            "labels": [repr(k) for k in model.labels],
            "canonical": list(canonical_form(model.surface.b)),
        },
        out,
    )


@cli.command("degenerate")
@IN
@OUT
def cmd_degenerate(inp, out):
    """Degenerate to a toric surface by merging slices."""
    obj = load_object(read_json(inp))
    chain = []
    if isinstance(obj, DegenerationDiagram):
        chain.append(obj)
        obj = special_fiber(obj)
    M = _need(obj, Multidivisor)
    more, X = degenerate_to_toric(M)
    chain += more
    emit({"chain": [d.to_dict() for d in chain], "toric": list(X.b), "canonical": list(canonical_form(X.b))}, out)


def _path_report(path, system):
    rep = {"path": path.to_dict(), "length": len(path)}
    if system is not None:
        A = load_system(read_json(system))
        imgs = conn.transport_along_path(path, A)
        rep["systems"] = [system_json(B) for B in imgs]
        rep["tv_constant"] = len({tuple(s["tv"]) for s in rep["systems"]}) == 1
    return rep


@cli.command("connect")
@click.option("--a", "a", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--b", "b", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--system", type=click.Path(exists=True, dir_okay=False))
@click.option("--shorten", is_flag=True, help="Cancel steps undone by the next step.")
@click.option("--format", "fmt", type=click.Choice(["json", "svg"]), default="json")
@OUT
def cmd_connect(a, b, system, shorten, fmt, out):
    """Deformation path between two surfaces of equal Picard rank."""
    X, Y = load_object(read_json(a)), load_object(read_json(b))
    if isinstance(X, ToricSurface) and isinstance(Y, ToricSurface):
        path = conn.connect_toric(X, Y)
    else:
        path = conn.connect(_need(X, ToricSurface, Multidivisor), _need(Y, ToricSurface, Multidivisor))
    if shorten:
        path = conn.shorten(path)
    if fmt == "svg":
        emit(render(path), out)
    else:
        emit(_path_report(path, system), out)


@cli.command("transport")
@IN
@click.option("--system", type=click.Path(exists=True, dir_okay=False))
@OUT
def cmd_transport(inp, system, out):
    """Transport matrix of a diagram, optionally applied to a toric system."""
    d = _need(load_object(read_json(inp)), DegenerationDiagram)
    tm = transport_matrix(d)
    rep = {
        "matrix": [list(r) for r in tm.matrix],
        "source_basis": tm.source.basis_manifest(),
        "target_basis": tm.target.basis_manifest(),
    }
    if system is not None:
        A = _onto(load_system(read_json(system)), d.M)
        B = transport_system(d, A)
        rep["system"] = system_json(B)
    emit(rep, out)


def _onto(A, S):
    """Move a system to the isomorphic surface ``S`` (general fiber of a diagram)."""
    if A.surface == S:
        return A
    if not conn.same_surface(A.surface, S):
        raise PreconditionViolated("system does not live on the general fiber of the diagram")
    f = conn.identify(A.surface, S)
    return ToricSystem(S, tuple(f(a) for a in A.entries))


# ---------------------------------------------------------------- toric systems


@cli.group("system")
def cmd_system():
    """Toric systems: check, tv, augment, mutate, tame, compat, catalog, target."""


SYS = click.option("--system", "system", required=True, type=click.Path(exists=True, dir_okay=False))


@cmd_system.command("check")
@SYS
@OUT
def sys_check(system, out):
    A = load_system(read_json(system))
    fails = system_failures(A.surface, A.entries)
    rep = {"toric_system": not fails, "failures": fails}
    if not fails and _is_toric(A.surface):
        rep["exceptional"] = is_exceptional(A)
        rep["strongly_exceptional"] = is_strongly_exceptional(A)
    emit(rep, out)


def _is_toric(S):
    from .multidivisor import is_toric

    return isinstance(S, ToricSurface) or is_toric(S)


@cmd_system.command("tv")
@SYS
@OUT
def sys_tv(system, out):
    A = load_system(read_json(system))
    X = tv_of(A)
    emit({"tv": list(X.b), "canonical": list(canonical_form(X.b))}, out)


@cmd_system.command("augment")
@SYS
@click.option("--ray", type=int, required=True, help="Blow up between rays j and j+1 of the toric surface.")
@click.option("--position", type=int, required=True, help="Augmentation position i (1-based).")
@OUT
def sys_augment(system, ray, position, out):
    A = load_system(read_json(system))
    S = _need(A.surface, ToricSurface)
    emit(system_json(augment(A, toric_blowup_at(S, ray), position)), out)


@cmd_system.command("mutate")
@SYS
@click.option("--power", type=int, default=1)
@OUT
def sys_mutate(system, power, out):
    emit(system_json(mutate_L1(load_system(read_json(system)), power)), out)


@cmd_system.command("tame")
@SYS
@OUT
def sys_tame(system, out):
    cert = tame_certificate(load_system(read_json(system)))
    emit({"tame": cert is not None, "certificate": cert.to_dict() if cert else None}, out)


@cmd_system.command("compat")
@SYS
@click.option("--diagram", required=True, type=click.Path(exists=True, dir_okay=False))
@OUT
def sys_compat(system, diagram, out):
    A = load_system(read_json(system))
    d = _need(load_object(read_json(diagram)), DegenerationDiagram)
    A = _onto(A, d.M)
    emit({"compatible": is_compatible(d, A)}, out)


@cmd_system.command("catalog")
@click.option("--r", "r", type=int, required=True)
@click.option("--bound", type=int, default=6, show_default=True)
@OUT
def sys_catalog(r, bound, out):
    found = enumerate_systems_F(r, bound)
    miss = catalog_mismatches(r, bound)
    emit({"r": r, "bound": bound, "systems": len(found), "outside_catalog": [list(map(list, m)) for m in miss]}, out)


@cmd_system.command("target")
@click.option("--a", "a", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--b", "b", required=True, type=click.Path(exists=True, dir_okay=False))
@OUT
def sys_target(a, b, out):
    X = load_object(read_json(a))
    Y = _need(load_object(read_json(b)), ToricSurface)
    emit(system_json(toricsys_for_target(X, Y)), out)


# ---------------------------------------------------------------- quiver, render, corpus


@cli.command("quiver")
@click.option("--system", type=click.Path(exists=True, dir_okay=False))
@click.option("--r", "r", type=int)
@click.option("--alpha", type=int)
@click.option("--i", "i", type=int)
@click.option("--format", "fmt", type=click.Choice(["json", "dot"]), default="json")
@OUT
def cmd_quiver(system, r, alpha, i, fmt, out):
    """Hom matrix of a system, or the Hirzebruch quiver family (--r --alpha --i)."""
    if system is not None:
        A = load_system(read_json(system))
        from .toric_systems import sequence_from_system

        E = sequence_from_system(A)
        q = qv.quiver_of(A.surface, A)
        if fmt == "dot":
            emit(q.to_dot(), out)
        else:
            emit({"hom": qv.hom_matrix(A.surface, E), "quiver": q.to_dict()}, out)
        return
    if None in (r, alpha, i):
        raise click.UsageError("give --system or all of --r --alpha --i")
    fam = qv.hirzebruch_quiver_family(r, alpha, i)
    if fmt == "dot":
        emit(fam.general.to_dot(), out)
    else:
        emit(fam.to_dict(), out)


@cli.command("render")
@IN
@click.option("--format", "fmt", type=click.Choice(["svg", "json"]), default="svg")
@OUT
def cmd_render(inp, fmt, out):
    """SVG drawing of a multidivisor, diagram or path."""
    obj = load_object(read_json(inp))
    if fmt == "json":
        emit(obj.to_dict(), out)
        return
    if isinstance(obj, ToricSurface):
        obj = to_fan_model(obj)
    emit(render(obj), out)


def to_fan_model(X):
    from .multidivisor import from_fan

    for p in range(X.n_rays):
        if X.b[p] < 0:
            return from_fan(X, p, 0)[0]
    raise PreconditionViolated("toric surface has no negative curve to slice along; pass a multidivisor")


@cli.command("corpus")
@click.option("--seed", type=int, default=1, show_default=True)
@click.option("--count", type=int, default=20, show_default=True)
@OUT
def cmd_corpus(seed, count, out):
    """Random smooth multidivisors (deterministic for a given seed)."""
    from .corpus import random_multidivisors

    ms = random_multidivisors(count=count, seed=seed)
    emit([M.to_dict() for M in ms], out)


# ---------------------------------------------------------------- entry point


def main(argv=None):
    try:
        cli.main(args=argv, prog_name="cstar-calc", standalone_mode=False)
    except click.exceptions.Abort:
        sys.exit(1)
    except click.ClickException as exc:
        exc.show()
        sys.exit(2)
    except ParseError as exc:
        click.echo(json.dumps({"error": "parse_error", "message": str(exc)}), err=True)
        sys.exit(2)
    except CStarError as exc:
        click.echo(json.dumps(exc.to_dict()), err=True)
        sys.exit(1)
    sys.exit(0)


if __name__ == "__main__":
    main()
