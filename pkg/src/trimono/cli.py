"""Command-line interface: ``trimono <subcommand> [--in FILE | --builtin NAME] [--out FILE] [--json]``.

Exit codes: 0 ok, 2 invalid input, 3 a proved theorem failed (a bug).
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from collections import Counter
from typing import Optional, Sequence

from . import __version__
from .catalog import builtin, builtin_names, builtin_surface
from .cover import (
    face_coloring,
    face_vertex_colored_cover,
    riemann_hurwitz,
    unfolding,
)
from .enumeration import sphere_corpus, verify_corpus
from .errors import TheoremViolation, TrimonoError
from .geometry import develop, holonomy_around_vertex
from .germs import space_of_germs
from .highdim import (
    LabeledComplex,
    PureComplex,
    link_pair_check,
    non_sphere_link_points,
    odd_subcomplex,
    parity_check,
    unfolding_d,
    z2_nullhomologous_check,
)
from .monodromy import coloring_monodromy_image, odd_vertices, sym3_name, vertex_coloring
from .platonic import (
    exceptional_vertices,
    is_cyclic_group,
    platonic_coloring,
    platonic_monodromy_image,
)
from .serialize import coloring_json, dumps, read_complex
from .surface import (
    SimplicialSurface,
    boundary_cycles,
    euler_characteristic,
    genus,
    is_orientable,
)

EXIT_OK, EXIT_INVALID, EXIT_THEOREM = 0, 2, 3


class InputError(Exception):
    """Bad command-line input that is not a complex validation failure."""


# -- input -----------------------------------------------------------------------


def load_input(args):
    if args.builtin and args.infile:
        raise InputError("give either --in or --builtin, not both")
    if args.builtin:
        try:
            return builtin(args.builtin)
        except KeyError as err:
            raise InputError(err.args[0]) from err
    if args.infile:
        return read_complex(args.infile)
    raise InputError("an input is required: --in FILE or --builtin NAME")


def load_surface(args) -> SimplicialSurface:
    c = load_input(args)
    if not isinstance(c, SimplicialSurface):
        raise InputError(f"{args.command} needs a two-dimensional surface")
    return c


def _surface_from(name_or_path: str) -> SimplicialSurface:
    try:
        return builtin_surface(name_or_path)
    except KeyError:
        c = read_complex(name_or_path)
        if not isinstance(c, SimplicialSurface):
            raise InputError(f"{name_or_path} is not a surface")
        return c


def _ks(text: str) -> tuple:
    try:
        ks = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError as err:
        raise InputError(f"bad k list {text!r}") from err
    bad = [k for k in ks if k not in (2, 3, 4, 5)]
    if bad:
        raise InputError(f"k must be in 2..5, got {bad}")
    return ks


# -- reports ----------------------------------------------------------------------


def surface_report(s: SimplicialSurface) -> dict:
    closed = s.is_closed
    orientable = is_orientable(s)
    degrees = Counter(s.degree(v) for v in s.vertices)
    rep = {
        "vertices": s.num_vertices,
        "edges": s.num_edges,
        "triangles": s.num_triangles,
        "euler_characteristic": euler_characteristic(s),
        "orientable": orientable,
        "closed": closed,
        "connected": s.is_connected,
        "boundary_components": len(boundary_cycles(s)),
        "degree_histogram": {str(d): c for d, c in sorted(degrees.items())},
        "odd_vertices": sorted(odd_vertices(s)),
        "exceptional_vertices": {str(k): list(exceptional_vertices(s, k)) for k in (2, 3, 4, 5)},
    }
    if closed and orientable and s.is_connected:
        rep["genus"] = genus(s)
    mono = {"2": sym3_name(coloring_monodromy_image(s))} if s.is_connected else {}
    colorable = {"vertex_3_colorable": vertex_coloring(s) is not None}
    if closed:
        colorable["face_2_colorable"] = face_coloring(s) is not None
    if s.is_connected:
        for k in (3, 4, 5):
            img = platonic_monodromy_image(s, k)
            mono[str(k)] = {"order": len(img), "cyclic": is_cyclic_group(img)}
            colorable[f"platonic_{k}_colorable"] = platonic_coloring(s, k) is not None
    rep["monodromy"] = mono
    rep["colorable"] = colorable
    return rep


def complex_report(c: PureComplex) -> dict:
    odd = odd_subcomplex(c)
    rep = {
        "dim": c.d,
        "facets": len(c.facets),
        "vertices": len(c.vertices),
        "euler_characteristic": c.euler_characteristic(),
        "closed": c.is_closed(),
        "odd_faces": [list(f) for f in sorted(odd.faces)],
        "odd_boundary_identity": z2_nullhomologous_check(c),
        "parity_law": parity_check(c),
    }
    if c.d == 3:
        lp = link_pair_check(c)
        rep["link_pair"] = {
            "checked": [[tau, [list(e) for e in pair]] for tau, pair in lp.checked],
            "not_spheres": lp.not_spheres,
            "vacuous": lp.vacuous,
        }
    return rep


def cover_summary(cover) -> dict:
    lhs, rhs = riemann_hurwitz(cover)
    comps = cover.components()
    t = cover.total
    return {
        "total_vertices": t.num_vertices,
        "total_edges": t.num_edges,
        "total_triangles": t.num_triangles,
        "euler_characteristic": euler_characteristic(t),
        "component_count": len(comps),
        "component_degrees": [c.degree for c in comps],
        "branch_index_histogram": {
            str(i): n for i, n in sorted(Counter(cover.branch_indices.values()).items())
        },
        "riemann_hurwitz": [lhs, rhs],
    }


# -- subcommands -----------------------------------------------------------------


def cmd_analyze(args) -> dict:
    c = load_input(args)
    if isinstance(c, SimplicialSurface):
        return surface_report(c)
    if isinstance(c, LabeledComplex):
        u = unfolding_d(c)
        return {"dim": c.d, "facets": len(c.facets), "unfolding_components": u.components(),
                "unfolding_non_sphere_links": len(non_sphere_link_points(u))}
    return complex_report(c)


def cmd_color(args) -> dict:
    s = load_surface(args)
    if args.k == 2:
        col = vertex_coloring(s)
        return {"colorable": col is not None, **(coloring_json(col) if col else {})}
    col = platonic_coloring(s, args.k)
    return {"colorable": col is not None, "k": args.k, **(coloring_json(col) if col else {})}


def cmd_unfold(args) -> dict:
    c = load_input(args)
    if isinstance(c, SimplicialSurface):
        cover = face_vertex_colored_cover(c) if args.faces else unfolding(c)
        out = cover_summary(cover)
        if args.full:
            out["cover"] = cover.to_json()
        return out
    u = unfolding_d(c)
    chi = u.vertex_link_euler()
    return {
        "dim": u.d,
        "facets": len(u.states),
        "vertices": len(u.vertices),
        "component_count": u.components(),
        "link_euler_histogram": {str(k): n for k, n in sorted(Counter(chi.values()).items())},
    }


def cmd_germs(args) -> dict:
    a = load_surface(args)
    if not args.with_:
        raise InputError("germs needs --with NAME_OR_FILE")
    b = _surface_from(args.with_)
    g = space_of_germs(a, b)
    comps = []
    for part in g.components():
        t = part.total
        comps.append(
            {
                "vertices": t.num_vertices,
                "edges": t.num_edges,
                "triangles": t.num_triangles,
                "genus": genus(t) if is_orientable(t) else None,
                "degrees": {str(d): n for d, n in sorted(Counter(t.degree(v) for v in t.vertices).items())},
                "left_degree": part.left.degree,
                "right_degree": part.right.degree,
                "riemann_hurwitz_left": list(riemann_hurwitz(part.left)),
                "riemann_hurwitz_right": list(riemann_hurwitz(part.right)),
            }
        )
    out = {"component_count": len(comps), "components": comps}
    if args.full:
        out["germs"] = g.to_json()
    return out


def cmd_develop(args) -> dict:
    s = load_surface(args)
    pl = develop(s, args.k)
    hol = {}
    for v in sorted(s.vertices):
        if s.is_interior(v):
            hol[str(v)] = holonomy_around_vertex(s, args.k, v).angle
    return {
        "k": args.k,
        "consistent": pl.is_consistent(s),
        "placement": pl.to_json(),
        "holonomy_angles": hol,
    }


def cmd_enumerate_verify(args) -> dict:
    rep = verify_corpus(args.n, _ks(args.k), cache_dir=args.cache)
    out = rep.to_json()
    if rep.theorem_violations or (args.strict_remark and rep.remark_findings):
        raise TheoremViolation(json.dumps(out, sort_keys=True))
    return out


def cmd_gen(args):
    if args.spheres:
        lines = []
        for code, s in sphere_corpus(args.spheres, cache_dir=args.cache):
            lines.append(code + "\t" + json.dumps(s.to_json(), sort_keys=True))
        return "\n".join(lines) + "\n"
    return load_input(args).to_json()


COMMANDS = {
    "analyze": cmd_analyze,
    "color": cmd_color,
    "unfold": cmd_unfold,
    "germs": cmd_germs,
    "develop": cmd_develop,
    "enumerate-verify": cmd_enumerate_verify,
    "gen": cmd_gen,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--in", dest="infile", metavar="FILE", help="complex as JSON {dim, facets}")
    common.add_argument("--builtin", metavar="NAME", help="one of: " + ", ".join(builtin_names()))
    common.add_argument("--out", metavar="FILE", help="write output here instead of stdout")
    common.add_argument("--json", action="store_true", help="JSON output (default for artifacts)")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="trimono", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("analyze", parents=[common], help="invariants, monodromy and colorability")
    c = sub.add_parser("color", parents=[common], help="vertex 3-coloring or platonic coloring")
    c.add_argument("--k", type=int, default=2, choices=(2, 3, 4, 5))
    u = sub.add_parser("unfold", parents=[common], help="unfolding (minimal vertex-colorable cover)")
    u.add_argument("--faces", action="store_true", help="also color faces black/white")
    u.add_argument("--full", action="store_true", help="include the cover itself")
    g = sub.add_parser("germs", parents=[common], help="space of germs with a second surface")
    g.add_argument("--with", dest="with_", metavar="NAME_OR_FILE")
    g.add_argument("--full", action="store_true")
    d = sub.add_parser("develop", parents=[common], help="spherical developing map and holonomy")
    d.add_argument("--k", type=int, default=4, choices=(2, 3, 4, 5))
    e = sub.add_parser("enumerate-verify", parents=[common], help="check the theorems on all small spheres")
    e.add_argument("--n", type=int, default=8)
    e.add_argument("--k", default="2,3,4,5")
    e.add_argument("--cache", metavar="DIR")
    e.add_argument("--strict-remark", action="store_true", help="also fail on the strengthened remark")
    gen = sub.add_parser("gen", parents=[common], help="emit a builtin as JSON, or all spheres as JSONL")
    gen.add_argument("--spheres", type=int, metavar="N")
    gen.add_argument("--cache", metavar="DIR")
    return p


def _render(result, as_json: bool) -> str:
    if isinstance(result, str):
        return result
    if as_json or not isinstance(result, dict):
        return dumps(result)
    lines = []
    for key in sorted(result):
        val = result[key]
        text = json.dumps(json.loads(dumps(val)), sort_keys=True) if isinstance(val, (dict, list)) else dumps(val).strip()
        lines.append(f"{key}: {text}")
    return "\n".join(lines) + "\n"


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        result = COMMANDS[args.command](args)
    except TheoremViolation as err:
        print(f"theorem violation: {err}", file=sys.stderr)
        return EXIT_THEOREM
    except (TrimonoError, InputError, OSError, ValueError) as err:
        print(f"error: {type(err).__name__}: {err}", file=sys.stderr)
        return EXIT_INVALID
    # gen emits artifacts that --in must be able to read back
    text = _render(result, args.json or args.command == "gen")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
