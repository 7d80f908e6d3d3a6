"""Command-line reports: ``classify``, ``nerve``, ``transport``, ``isocheck``.

Every report is a dict ``{tool, version, command, params, results}``. It is
printed as an aligned text table by default or as JSON with ``--json``.
``ORBITCOVER_WIDTH`` sets the wrap width of the text form (default 100).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import textwrap
from math import gcd
from typing import Sequence

from . import __version__
from .compositions import affine_orbits, enumerate_compositions, parse_composition, rotation_classes, same_affine_orbit
from .covers import OrbitCover, orbit_cover, parse_cover_spec, transport_morphism
from .errors import DomainError, ParseError
from .nerve import build_nerve, harmonic_regions, homology, nerve_isomorphic
from .scale_core import Scale, format_scale, parse_scale

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_DOMAIN = 4

TOOL = "orbitcover"


def _report(command: str, params: dict, results: dict) -> dict:
    return {"tool": TOOL, "version": __version__, "command": command, "params": params, "results": results}


def _nerve_summary(cover: OrbitCover) -> dict:
    cx = build_nerve(cover)
    return {"f_vector": list(cx.f_vector()), **homology(cx).to_record()}


def _chord(ch: Sequence[int]) -> str:
    return "{" + ",".join(str(x) for x in ch) + "}"


def _fmt_tuple(values: Sequence) -> str:
    return "(" + ",".join(str(v) for v in values) + ")"


def _fmt_torsion(torsion: Sequence[Sequence[int]]) -> str:
    parts = [f"H{p}: " + "+".join(f"Z/{d}" for d in t) for p, t in enumerate(torsion) if t]
    return "; ".join(parts) if parts else "none"


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_classify(n: int, k: int) -> dict:
    comps = enumerate_compositions(n, k)
    classes = rotation_classes(n, k)
    primitive = gcd(n, k) == 1
    z_n = Scale.of(n, range(n))
    orbits = []
    for orbit in affine_orbits(n, k):
        reps = orbit.representatives
        orbits.append(
            {
                "classes": [str(c) for c in orbit.classes],
                "witnesses": [
                    {"from": str(a), "to": str(b), "unit": u}
                    for (a, b), u in orbit.witnesses.items()
                    if a != b
                ],
                "nerve": _nerve_summary(orbit_cover(z_n, reps[0], 0)) if primitive else None,
            }
        )
    return _report(
        "classify",
        {"n": n, "k": k},
        {
            "compositions_count": len(comps),
            "compositions": [str(s) for s in comps],
            "rotation_classes_count": len(classes),
            "rotation_classes": [
                {"representative": str(c.representative), "members": [str(m) for m in c.members]}
                for c in classes
            ],
            "primitive": primitive,
            "affine_orbits_count": len(orbits),
            "affine_orbits": orbits,
        },
    )


def _resolve_root(scale: Scale, first: int, root: int | None, mode_index: int | None) -> int:
    if root is not None and mode_index is not None:
        raise DomainError("give either a root or a mode index, not both")
    if mode_index is not None:
        return scale.mode(mode_index).tonic
    if root is not None:
        return scale.check(root)
    return first


def cmd_nerve(scale_text: str, sigma_text: str, root: int | None = None, mode_index: int | None = None) -> dict:
    scale, first = parse_scale(scale_text)
    sigma = parse_composition(sigma_text)
    root = _resolve_root(scale, first, root, mode_index)
    cover = orbit_cover(scale, sigma, root)
    cx = build_nerve(cover)
    hom = homology(cx)
    regions = None
    if cover.is_primitive:
        regions = [{"element": x, "region": sorted(r)} for x, r in harmonic_regions(cover).items()]
    return _report(
        "nerve",
        {"scale": format_scale(scale, first), "sigma": str(sigma), "root": root},
        {
            "cover": cover.to_record(),
            "primitive": cover.is_primitive,
            "f_vector": list(cx.f_vector()),
            **hom.to_record(),
            "harmonic_regions": regions,
            "complex": cx.to_record(),
        },
    )


def read_sequence(path: str) -> list[int]:
    """One residue per line; ``#`` starts a comment; blank lines are skipped."""
    values = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            body = line.split("#", 1)[0].strip()
            if not body:
                continue
            try:
                values.append(int(body))
            except ValueError:
                raise ParseError(f"{path}:{lineno}: {body!r} is not a pitch class") from None
    return values


def cmd_transport(
    source_text: str,
    sigma_text: str,
    u: int,
    v: int,
    target_text: str,
    sequence_path: str | None = None,
    root: int | None = None,
    target_root: int | None = None,
    mode_index: int | None = None,
) -> dict:
    source, first = parse_scale(source_text)
    target, target_first = parse_scale(target_text)
    sigma = parse_composition(sigma_text)
    root = _resolve_root(source, first, root, mode_index)
    target_root = target_first if target_root is None else target.check(target_root)
    cover = orbit_cover(source, sigma, root)
    morphism, image = transport_morphism(cover, u, v, target, target_root)
    mapping = morphism.scale_map.mapping
    results = {
        "map": [[x, mapping[x]] for x in source.ascending_from(root)],
        "source_cover": cover.to_record(),
        "target_cover": image.to_record(),
        "index_map": [[i, j] for i, j in sorted(morphism.index_map.items())],
        "sequence": None,
    }
    if sequence_path is not None:
        seq = read_sequence(sequence_path)
        for x in seq:
            if x not in source:
                raise DomainError(f"{x} in {sequence_path} is not in the source scale")
        results["sequence"] = {"input": seq, "output": [mapping[x] for x in seq]}
    params = {
        "source": format_scale(source, first),
        "sigma": str(sigma),
        "u": u,
        "v": v,
        "target": format_scale(target, target_first),
        "root": root,
        "target_root": target_root,
        "sequence_file": os.path.basename(sequence_path) if sequence_path else None,
    }
    return _report("transport", params, results)


def cmd_isocheck(spec_a: str, spec_b: str) -> dict:
    a, b = parse_cover_spec(spec_a), parse_cover_spec(spec_b)
    na, nb = build_nerve(a), build_nerve(b)
    witness = nerve_isomorphic(na, nb)
    applicable = a.is_primitive and b.is_primitive and (a.n, a.k) == (b.n, b.k)
    unit = same_affine_orbit(a.sigma, b.sigma) if applicable else None
    affine = (unit is not None) if applicable else None
    return _report(
        "isocheck",
        {"a": spec_a.strip(), "b": spec_b.strip()},
        {
            "isomorphic": witness is not None,
            "witness": [[i, j] for i, j in sorted(witness.items())] if witness is not None else None,
            "f_vectors": [list(na.f_vector()), list(nb.f_vector())],
            "affine_criterion": {"applicable": applicable, "related": affine, "unit": unit},
            "agree": None if affine is None else affine == (witness is not None),
        },
    )


# ---------------------------------------------------------------------------
# text rendering
# ---------------------------------------------------------------------------


def _width() -> int:
    try:
        return max(40, int(os.environ.get("ORBITCOVER_WIDTH", "100")))
    except ValueError:
        return 100


def _wrap(text: str, indent: str = "  ", hang: str = "    ") -> list[str]:
    return textwrap.wrap(text, width=_width(), initial_indent=indent, subsequent_indent=hang,
                         break_on_hyphens=False) or [indent]


def render_text(report: dict) -> str:
    p, r = report["params"], report["results"]
    head = " ".join(f"{key}={val}" for key, val in p.items() if val is not None)
    lines = [f"{report['tool']} {report['version']} | {report['command']} {head}"]
    render = _RENDERERS[report["command"]]
    lines += render(r)
    return "\n".join(lines) + "\n"


def _render_classify(r: dict) -> list[str]:
    out = [f"compositions: {r['compositions_count']}"]
    out += _wrap(" ".join(r["compositions"]))
    out.append(f"rotation classes: {r['rotation_classes_count']}")
    for c in r["rotation_classes"]:
        out += _wrap(f"[{c['representative']}] = {{" + ", ".join(c["members"]) + "}")
    out.append(f"affine orbits: {r['affine_orbits_count']}" + ("" if r["primitive"] else " (not primitive)"))
    for i, o in enumerate(r["affine_orbits"], 1):
        out += _wrap(f"O{i} = {{" + ", ".join(o["classes"]) + "}")
        if o["witnesses"]:
            out += _wrap("witnesses: " + "; ".join(f"{w['from']}->{w['to']} u={w['unit']}" for w in o["witnesses"]),
                         indent="    ", hang="      ")
        if o["nerve"] is not None:
            nv = o["nerve"]
            out += _wrap(
                f"nerve: f={_fmt_tuple(nv['f_vector'])} betti={_fmt_tuple(nv['betti'])} "
                f"torsion={_fmt_torsion(nv['torsion'])} euler={nv['euler']}",
                indent="    ", hang="      ",
            )
    return out


def _render_nerve(r: dict) -> list[str]:
    cover = r["cover"]
    out = [f"cover {_fmt_tuple(cover['sigma'])} at {cover['root']}" + ("" if r["primitive"] else " (not primitive)")]
    for i, m in enumerate(cover["members"]):
        out.append(f"  C{i} = {_chord(m)}")
    out.append(f"f-vector: {_fmt_tuple(r['f_vector'])}")
    out.append(f"betti: {_fmt_tuple(r['betti'])}")
    out.append(f"torsion: {_fmt_torsion(r['torsion'])}")
    out.append(f"euler: {r['euler']}")
    if r["harmonic_regions"] is not None:
        out.append("harmonic regions:")
        for row in r["harmonic_regions"]:
            out.append(f"  {row['element']:>3} -> " + _chord(f"C{i}" for i in row["region"]))
    return out


def _render_transport(r: dict) -> list[str]:
    out = ["map:"]
    out += [f"  {x:>3} -> {y}" for x, y in r["map"]]
    src, tgt = r["source_cover"], r["target_cover"]
    out.append(f"cover {_fmt_tuple(src['sigma'])} -> {_fmt_tuple(tgt['sigma'])}:")
    for i, j in r["index_map"]:
        out.append(f"  C{i} {_chord(src['members'][i])} -> C{j} {_chord(tgt['members'][j])}")
    if r["sequence"] is not None:
        out += _wrap("sequence in:  " + " ".join(str(x) for x in r["sequence"]["input"]), indent="", hang="  ")
        out += _wrap("sequence out: " + " ".join(str(x) for x in r["sequence"]["output"]), indent="", hang="  ")
    return out


def _render_isocheck(r: dict) -> list[str]:
    out = [f"f-vectors: {_fmt_tuple(r['f_vectors'][0])} vs {_fmt_tuple(r['f_vectors'][1])}"]
    out.append(f"nerves isomorphic: {'yes' if r['isomorphic'] else 'no'}")
    if r["witness"] is not None:
        out += _wrap("witness: " + ", ".join(f"{i}->{j}" for i, j in r["witness"]), indent="  ")
    crit = r["affine_criterion"]
    if crit["applicable"]:
        verdict = f"yes (u={crit['unit']})" if crit["related"] else "no"
        out.append(f"affine criterion: {verdict}")
        out.append(f"methods agree: {'yes' if r['agree'] else 'NO'}")
    else:
        out.append("affine criterion: not applicable")
    return out


_RENDERERS = {
    "classify": _render_classify,
    "nerve": _render_nerve,
    "transport": _render_transport,
    "isocheck": _render_isocheck,
}


def render_json(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse exits with 2 already; keep the message terse
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog=TOOL, description="Orbit covers of scales: classification, nerves, transport.")
    parser.add_argument("--version", action="version", version=f"{TOOL} {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON record instead of text")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("classify", parents=[common], help="rotation classes and affine orbits of (n, k)")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)

    p = sub.add_parser("nerve", parents=[common], help="nerve, homology and harmonic regions of a cover")
    p.add_argument("scale", help='scale as "N: e1,e2,..."')
    p.add_argument("sigma", help='composition as "(i1,...,ik)"')
    p.add_argument("root_pos", nargs="?", type=int, metavar="ROOT", help="root element (default: first listed)")
    p.add_argument("--root", type=int)
    p.add_argument("--mode-index", type=int, help="root the cover at the tonic of this mode")

    p = sub.add_parser("transport", parents=[common], help="carry a cover along j -> u j + v")
    p.add_argument("source")
    p.add_argument("sigma")
    p.add_argument("u", type=int)
    p.add_argument("v", type=int)
    p.add_argument("target")
    p.add_argument("sequence", nargs="?", help="file with one pitch class per line")
    p.add_argument("--root", type=int, help="source root (default: first listed element)")
    p.add_argument("--target-root", type=int, help="target degree origin (default: first listed element)")
    p.add_argument("--mode-index", type=int, help="root the source cover at the tonic of this mode")

    p = sub.add_parser("isocheck", parents=[common], help="compare the nerves of two covers")
    p.add_argument("a", help='cover as "N: e1,... | (i1,...) [| root]"')
    p.add_argument("b")
    return parser


def run(argv: Sequence[str] | None = None) -> tuple[int, str]:
    """Execute a command; returns ``(exit status, text to print)``."""
    args = build_parser().parse_args(argv)
    if args.command == "classify":
        report = cmd_classify(args.n, args.k)
    elif args.command == "nerve":
        if args.root_pos is not None and args.root is not None:
            raise DomainError("give the root once")
        root = args.root if args.root is not None else args.root_pos
        report = cmd_nerve(args.scale, args.sigma, root, args.mode_index)
    elif args.command == "transport":
        report = cmd_transport(
            args.source, args.sigma, args.u, args.v, args.target, args.sequence,
            args.root, args.target_root, args.mode_index,
        )
    else:
        report = cmd_isocheck(args.a, args.b)
    return EXIT_OK, render_json(report) if args.json else render_text(report)


def main(argv: Sequence[str] | None = None) -> int:
    try:
        status, text = run(argv)
    except ParseError as exc:
        print(f"{TOOL}: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (DomainError, OSError) as exc:
        print(f"{TOOL}: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    sys.stdout.write(text)
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
