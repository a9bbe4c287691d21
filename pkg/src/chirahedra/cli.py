"""Command-line interface: build | classify | verify | survey | export."""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction

from .errors import ChirahedraError, DegenerateParams, Refuted
from .groups import FamilyId, build_group, lattice_of

EXIT_REFUTED = 1
EXIT_DEGENERATE = 2
EXIT_PARSE = 3

FAMILIES = ["p1", "p2", "p3", "p66", "q46", "twi_33star", "twi_34", "twi_33",
            "sonerot_33star", "sonerot_34"]


class ParseError(ChirahedraError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write("%s: error: %s\n" % (self.prog, message))
        sys.exit(EXIT_PARSE)


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError("not a rational: %r" % text) from e


def parse_params(text: str) -> tuple:
    return tuple(parse_rational(t) for t in text.split(","))


def parse_grid(text: str, arity: int = 2) -> list:
    """"lo..hi/den" -> all tuples of k/den with lo <= k <= hi, the zero tuple excluded."""
    try:
        rng, _, den = text.partition("/")
        lo, _, hi = rng.partition("..")
        lo, hi, den = int(lo), int(hi), int(den or 1)
    except ValueError as e:
        raise ParseError("bad grid %r (want lo..hi/den)" % text) from e
    if den <= 0 or lo > hi:
        raise ParseError("bad grid %r" % text)
    vals = [Fraction(k, den) for k in range(lo, hi + 1)]
    if arity == 1:
        return [(v,) for v in vals if v != 0]
    return [(x, y) for x in vals for y in vals if (x, y) != (0, 0)]


def _fmt_params(params) -> str:
    return ",".join(str(p) for p in params)


# -- survey -----------------------------------------------------------------

@dataclass
class SurveyRow:
    family: str
    params: str
    verdict: str
    lattice: str
    vertex_classes: int
    vertex_stars: int
    face_classes: int
    multiplicity: int


def survey_row(family, params) -> SurveyRow:
    from .analysis import classify, face_translation_classes
    from .groups import vertex_labels
    from .wythoff import detect_multiplicity

    G = build_group(family, params)
    VL = vertex_labels(G)
    classes = {VL.reduce(p) for p in VL.position}
    stars = {frozenset(VL.star(l)) for l in range(VL.count)}
    return SurveyRow(G.family.value, _fmt_params(G.params), str(classify(family, params)),
                     str(lattice_of(G)), len(classes), len(stars),
                     face_translation_classes(family, params).count,
                     detect_multiplicity(G, VL).multiplicity)


def _survey_job(args):
    family, params = args
    try:
        return asdict(survey_row(family, params))
    except ChirahedraError as e:
        return {"family": family, "params": _fmt_params(params), "error": str(e)}


def _verify_job(args):
    from .lemmas import run_lemma

    lemma, family, params = args
    out = {"lemma": lemma, "family": family, "params": _fmt_params(params)}
    try:
        out["detail"] = run_lemma(lemma, family, params)
        out["ok"] = True
    except ChirahedraError as e:
        out["ok"] = False
        out["error"] = "%s: %s" % (type(e).__name__, e)
    return out


def _map(fn, jobs, n):
    if n <= 1:
        return [fn(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=n) as ex:
        return list(ex.map(fn, jobs, chunksize=4))


def _write(text: str, out):
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- commands -----------------------------------------------------------------

def cmd_build(args):
    from .io import dumps_patch
    from .wythoff import construct_patch

    G = build_group(args.family, parse_params(args.params))
    _write(dumps_patch(construct_patch(G, parse_rational(args.radius))), args.out)
    return 0


def cmd_classify(args):
    from .analysis import classify

    print(classify(args.family, parse_params(args.params)))
    return 0


def cmd_verify(args):
    fam = FamilyId.parse(args.family)
    grid = parse_grid(args.grid, 1 if fam.one_parameter else 2)
    rows = _map(_verify_job, [(args.lemma, fam.value, p) for p in grid], args.jobs)
    text = "".join(json.dumps(r, sort_keys=True, ensure_ascii=False) + "\n" for r in rows)
    _write(text, args.out)
    bad = sum(1 for r in rows if not r["ok"])
    sys.stderr.write("%s %s: %d/%d points verified\n"
                     % (args.lemma, fam.value, len(rows) - bad, len(rows)))
    return EXIT_REFUTED if bad else 0


def cmd_survey(args):
    fam = FamilyId.parse(args.family)
    grid = parse_grid(args.grid, 1 if fam.one_parameter else 2)
    rows = _map(_survey_job, [(fam.value, p) for p in grid], args.jobs)
    _write(json.dumps(rows, indent=1, sort_keys=True, ensure_ascii=False) + "\n", args.out)
    return 0


def cmd_export(args):
    from .io import export_obj, loads_patch

    with open(args.input, encoding="utf-8") as fh:
        try:
            patch = loads_patch(fh.read())
        except (ValueError, KeyError, TypeError) as e:
            raise ParseError("cannot read patch %s: %s" % (args.input, e)) from e
    _write(export_obj(patch, args.turns), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="chirahedra", description="Exact chiral apeirohedra in three-space.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("build", help="build a patch and write it as JSON")
    b.add_argument("--family", required=True, type=str.lower, choices=FAMILIES[:5])
    b.add_argument("--params", required=True, help="A,B as rationals, e.g. 1,3/2")
    b.add_argument("--radius", default="4")
    b.add_argument("--out")
    b.set_defaults(func=cmd_build)

    c = sub.add_parser("classify", help="chiral / regular / degenerate verdict")
    c.add_argument("--family", required=True, type=str.lower, choices=FAMILIES)
    c.add_argument("--params", required=True)
    c.set_defaults(func=cmd_classify)

    from .lemmas import LEMMAS
    v = sub.add_parser("verify", help="check a lemma on a parameter grid")
    v.add_argument("--lemma", required=True, choices=sorted(LEMMAS))
    v.add_argument("--family", required=True, type=str.lower, choices=FAMILIES)
    v.add_argument("--grid", default="-3..3/1")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("survey", help="one summary row per grid point")
    s.add_argument("--family", required=True, type=str.lower, choices=FAMILIES[:5])
    s.add_argument("--grid", default="-3..3/1")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--out")
    s.set_defaults(func=cmd_survey)

    e = sub.add_parser("export", help="convert a patch JSON file to OBJ")
    e.add_argument("--in", dest="input", required=True)
    e.add_argument("--format", default="obj", choices=["obj"])
    e.add_argument("--turns", type=int, default=1)
    e.add_argument("--out")
    e.set_defaults(func=cmd_export)
    return p


def _glue_values(argv):
    """Let --grid/--params take values that start with '-', e.g. --grid -3..3/1."""
    out = []
    it = iter(argv)
    for tok in it:
        if tok in ("--grid", "--params", "--radius"):
            nxt = next(it, None)
            out.append(tok if nxt is None else "%s=%s" % (tok, nxt))
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_glue_values(argv))
    try:
        return args.func(args)
    except DegenerateParams as e:
        sys.stderr.write("degenerate parameters: %s\n" % e)
        return EXIT_DEGENERATE
    except (ParseError, ValueError) as e:
        sys.stderr.write("parse error: %s\n" % e)
        return EXIT_PARSE
    except Refuted as e:
        sys.stderr.write("refuted: %s\n" % e)
        return EXIT_REFUTED


if __name__ == "__main__":
    sys.exit(main())
