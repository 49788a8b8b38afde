"""
Command-line interface.

Input is one JSON document::

    {"quiver": {"vertices": 3, "arrows": [[0, 1], [1, 2]]}, "field": "F2",
     "subcategories": {"T": ["2", "2/3"]},
     "twins": {"w": {"inner": ["1"], "outer": ["1", "3"]}},
     "chains": {"eta": [["0", "*"], ["1/3", ["1"]], ["2/3", []]]}}

Vertices are 0-based in ``arrows``; labels are dimension vectors (``"110"``)
or composition-factor names (``"1/2"``). ``"*"`` means every indecomposable of
the context. A chain may instead be ``{"twins": name, "steps": [...]}`` to
live in that heart.
"""

from __future__ import annotations

import argparse
import json
import logging
import re
import sys
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from pathlib import Path

from . import hn
from .cache import load_category, resolve_path
from .errors import ContractError, ParseError, StructuralError, TorsionLabError
from .exactla import Field
from .hearts import heart, lattice_interval_iso, quasi_abelian_check, trivial_twins, twins_from_classes
from .modcat import RepCategory
from .quiver import Quiver
from .subcat import Context, TwinPair
from .suites import SUITES, SuiteConfig, run as run_suite, suite_monocat

log = logging.getLogger("torsionlab")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


# ------------------------------------------------------------- problem spec

@dataclass
class ProblemSpec:
    vertices: int
    arrows: list
    field: str = "F2"
    subcategories: dict = dc_field(default_factory=dict)
    twins: dict = dc_field(default_factory=dict)
    chains: dict = dc_field(default_factory=dict)
    params: dict = dc_field(default_factory=dict)

    @classmethod
    def from_dict(cls, data: dict) -> "ProblemSpec":
        if not isinstance(data, dict):
            raise ParseError("top level must be a JSON object")
        q = data.get("quiver")
        if isinstance(q, str):
            quiver = _named_quiver(q)
            vertices, arrows = quiver.vertex_count, [list(a) for a in quiver.arrows]
            fld = data.get("field", "F2")
        elif isinstance(q, dict):
            try:
                vertices = int(q["vertices"])
                arrows = [[int(s), int(t)] for s, t in q.get("arrows", [])]
            except (KeyError, TypeError, ValueError) as exc:
                raise ParseError(f"malformed quiver description: {exc}") from None
            fld = data.get("field", q.get("field", "F2"))
        else:
            raise ParseError("missing 'quiver' (object or name such as \"A3\")")
        try:
            Field.parse(str(fld))
        except ValueError as exc:
            raise ParseError(str(exc)) from None
        subs = {str(k): _labels(v) for k, v in data.get("subcategories", {}).items()}
        twins = {}
        for k, v in data.get("twins", {}).items():
            if not isinstance(v, dict) or "inner" not in v or "outer" not in v:
                raise ParseError(f"twin pair {k!r} needs 'inner' and 'outer'")
            twins[str(k)] = {"inner": _labels(v["inner"]), "outer": _labels(v["outer"])}
        chains = {}
        for k, v in data.get("chains", {}).items():
            if isinstance(v, dict):
                chains[str(k)] = {"twins": str(v.get("twins")), "steps": _steps(v.get("steps", []), k)}
            else:
                chains[str(k)] = _steps(v, k)
        params = data.get("params", {})
        if not isinstance(params, dict):
            raise ParseError("'params' must be an object")
        return cls(vertices, arrows, Field.parse(str(fld)).name, subs, twins, chains, params)

    def to_dict(self) -> dict:
        return {"quiver": {"vertices": self.vertices, "arrows": self.arrows}, "field": self.field,
                "subcategories": self.subcategories, "twins": self.twins, "chains": self.chains,
                "params": self.params}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    @classmethod
    def parse(cls, text: str) -> "ProblemSpec":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
        return cls.from_dict(data)

    def quiver(self) -> Quiver:
        return Quiver(self.vertices, tuple(tuple(a) for a in self.arrows))


def _labels(v):
    if v == "*" or (isinstance(v, str) and v):
        return v
    if not isinstance(v, list):
        raise ParseError(f"expected a label list, got {v!r}")
    return [str(x) for x in v]


def _steps(v, name):
    if not isinstance(v, list) or not v:
        raise ParseError(f"chain {name!r} needs a non-empty list of [breakpoint, labels] steps")
    out = []
    for step in v:
        if not (isinstance(step, list) and len(step) == 2):
            raise ParseError(f"chain {name!r}: each step is [breakpoint, labels]")
        try:
            b = Fraction(str(step[0]))
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"chain {name!r}: bad breakpoint {step[0]!r}") from None
        out.append([str(b), _labels(step[1])])
    return out


def _named_quiver(name: str) -> Quiver:
    m = re.fullmatch(r"\s*([AaDd])(\d+)\s*", name)
    if not m:
        raise ParseError(f"unknown quiver name {name!r}")
    n = int(m.group(2))
    if m.group(1).upper() == "A" and n >= 1:
        return Quiver.linear_a(n)
    if m.group(1).upper() == "D" and n == 4:
        return Quiver.d4()
    raise ParseError(f"unsupported quiver name {name!r}")


# ----------------------------------------------------------------- session

class Session:
    """Resolved problem: category, named subcategories, twins and chains."""

    def __init__(self, spec: ProblemSpec, field_override: str | None, cache_path):
        self.spec = spec
        fld = Field.parse(field_override) if field_override else Field.parse(spec.field)
        self.cat: RepCategory = load_category(spec.quiver(), fld, cache_path)
        self.full = Context.full(self.cat)

    def members(self, labels, ctx: Context | None = None) -> frozenset:
        ctx = ctx or self.full
        if labels == "*":
            return ctx.members
        if isinstance(labels, str):
            if labels in self.spec.subcategories:
                return self.members(self.spec.subcategories[labels], ctx)
            raise ParseError(f"unknown subcategory name {labels!r}")
        return self.cat.resolve_set(labels)

    def twins(self, name: str | None) -> tuple[str, TwinPair]:
        if name is None:
            if not self.spec.twins:
                return "trivial", trivial_twins(self.cat)
            name = sorted(self.spec.twins)[0]
        if name == "trivial":
            return name, trivial_twins(self.cat)
        if name not in self.spec.twins:
            raise ParseError(f"unknown twin pair {name!r}")
        d = self.spec.twins[name]
        inner, outer = self.members(d["inner"]), self.members(d["outer"])
        for t in (inner, outer):
            if not self.full.is_torsion_class(t):
                raise ContractError(f"{self.cat.show(t)} is not a torsion class")
        if not inner <= outer:
            raise ContractError(f"twin pair {name!r} is not nested")
        return name, twins_from_classes(self.cat, inner, outer)

    def chain(self, name: str) -> hn.Chain:
        if name not in self.spec.chains:
            raise ParseError(f"unknown chain {name!r}")
        c = self.spec.chains[name]
        ctx = self.full
        steps = c
        if isinstance(c, dict):
            _, tw = self.twins(c["twins"])
            ctx = heart(self.cat, tw)
            steps = c["steps"]
        return hn.chain(ctx, [(Fraction(b), self.members(labels, ctx)) for b, labels in steps])

    def module(self, text: str):
        ids = [self.cat.resolve(part) for part in text.split("+")]
        return ids, self.cat.sum_of(ids)


# ---------------------------------------------------------------- commands

def _names(cat, ids) -> list[str]:
    return cat.names(ids)


def cmd_indecs(s: Session, args):
    cat = s.cat
    rows = [{"index": i, "name": cat.pretty[i], "dims": list(cat.indecs[i].dims)} for i in range(cat.size)]
    payload = {"field": cat.field.name, "indecomposables": rows, "hom_dims": [list(r) for r in cat.hom_dims]}
    lines = [f"{cat.size} indecomposables over {cat.field.name}"]
    for r in rows:
        lines.append(f"  {r['index']:>2}  {r['name']:<8} dims={''.join(map(str, r['dims']))}")
    lines.append("Hom dimensions (row X, column Y: dim Hom(X, Y)):")
    for i, row in enumerate(cat.hom_dims):
        lines.append(f"  {cat.pretty[i]:<8} " + " ".join(str(x) for x in row))
    return payload, lines, EXIT_OK


def _hasse(classes: list[frozenset]) -> list[tuple[int, int]]:
    edges = []
    for i, a in enumerate(classes):
        for j, b in enumerate(classes):
            if a < b and not any(a < c < b for c in classes):
                edges.append((i, j))
    return sorted(edges)


def dot_text(cat, classes: list[frozenset], edges) -> str:
    out = ["digraph tors {", "  rankdir=BT;"]
    for i, c in enumerate(classes):
        out.append(f'  n{i} [label="{cat.show(c)}"];')
    for a, b in edges:
        out.append(f"  n{a} -> n{b};")
    out.append("}")
    return "\n".join(out) + "\n"


def cmd_tors(s: Session, args):
    cat = s.cat
    pairs = s.full.enumerate_torsion_classes()
    classes = [p.torsion for p in pairs]
    edges = _hasse(classes)
    if args.dot:
        Path(args.dot).write_text(dot_text(cat, classes, edges))
    payload = {"torsion_pairs": [{"index": i, "torsion": _names(cat, p.torsion), "torsionfree": _names(cat, p.torsionfree)}
                                 for i, p in enumerate(pairs)],
               "covering_edges": [list(e) for e in edges]}
    lines = [f"{len(pairs)} torsion pairs, {len(edges)} covering relations"]
    for i, p in enumerate(pairs):
        lines.append(f"  {i:>3}  T = {cat.show(p.torsion)}   F = {cat.show(p.torsionfree)}")
    return payload, lines, EXIT_OK


def cmd_heart(s: Session, args):
    cat = s.cat
    name, tw = s.twins(args.twins)
    ctx = heart(cat, tw)
    tors = ctx.enumerate_torsion_classes()
    problems = quasi_abelian_check(ctx)
    payload = {"twins": name, "inner": _names(cat, tw.inner.torsion), "outer": _names(cat, tw.outer.torsion),
               "heart": _names(cat, ctx.members),
               "torsion_classes": [_names(cat, p.torsion) for p in tors], "problems": problems}
    lines = [f"twins {name}: C = {cat.show(tw.inner.torsion)}, C' = {cat.show(tw.outer.torsion)}",
             f"heart = {cat.show(ctx.members)}", f"{len(tors)} torsion classes in the heart:"]
    lines += [f"  {cat.show(p.torsion)}" for p in tors]
    lines.append("quasi-abelian stability: " + ("ok" if not problems else f"{len(problems)} problems"))
    return payload, lines, EXIT_OK if not problems else EXIT_FAIL


def cmd_bijection(s: Session, args):
    cat = s.cat
    name, tw = s.twins(args.twins)
    iso = lattice_interval_iso(cat, tw)
    rows = sorted(((sorted(a), sorted(b)) for a, b in iso.forward.items()), key=lambda r: (len(r[0]), r[0]))
    payload = {"twins": name, "ok": iso.ok, "problems": iso.problems,
               "map": [{"ambient": _names(cat, a), "heart": _names(cat, b)} for a, b in rows]}
    lines = [f"twins {name}: {len(iso.ambient)} ambient classes <-> {len(iso.heart)} heart classes"]
    lines += [f"  {cat.show(a)}  ->  {cat.show(b)}" for a, b in rows]
    lines.append("bijection: " + ("ok" if iso.ok else "; ".join(iso.problems)))
    return payload, lines, EXIT_OK if iso.ok else EXIT_FAIL


def cmd_hn(s: Session, args):
    cat = s.cat
    if not args.chain:
        if not s.spec.chains:
            raise ParseError("no chain given and none in the input")
        args.chain = sorted(s.spec.chains)[0]
    eta = s.chain(args.chain)
    ids, m = s.module(args.module)
    filt = hn.hn_filtration(eta, m)
    steps = [{"label": str(r), "factor": _names(cat, cat.decompose(f)), "step": _names(cat, cat.decompose(st.rep))}
             for r, f, st in zip(filt.labels, filt.factors, filt.steps)]
    payload = {"chain": args.chain, "module": _names(cat, ids), "steps": steps}
    lines = [f"HN filtration of {' + '.join(_names(cat, ids))} for chain {args.chain}:"]
    for k, st in enumerate(steps, 1):
        lines.append(f"  M{k} = {' + '.join(st['step'])}   factor {' + '.join(st['factor'])} in slice {st['label']}")
    code = EXIT_OK
    if args.check_unique:
        uniq = hn.hn_unique_check(eta, m)
        payload["unique"] = uniq
        lines.append("uniqueness oracle: " + ("ok" if uniq else "FAILED"))
        code = EXIT_OK if uniq else EXIT_FAIL
    return payload, lines, code


def cmd_metric(s: Session, args):
    names = sorted(s.spec.chains)
    chains = {n: s.chain(n) for n in names}
    rows, lines = [], ["distances:"]
    for i, a in enumerate(names):
        for b in names[i:]:
            if chains[a].ctx != chains[b].ctx:
                continue
            d = hn.distance(chains[a], chains[b])
            rows.append({"a": a, "b": b, "d": str(d)})
            lines.append(f"  d({a}, {b}) = {d}")
    return {"distances": rows}, lines, EXIT_OK


def cmd_monocat_verify(s: Session, args):
    name, tw = s.twins(args.twins)
    res = suite_monocat(SuiteConfig(s.cat.field, args.exhaustive), [tw], s.cat)
    return {"twins": name, "ok": res.ok, "lines": res.lines}, [f"twins {name}"] + res.lines, EXIT_OK if res.ok else EXIT_FAIL


def cmd_verify(args, fld: Field):
    results = run_suite(args.suite, SuiteConfig(fld, args.exhaustive))
    lines, payload = [], []
    for r in results:
        lines.append(f"[{'PASS' if r.ok else 'FAIL'}] {r.name}")
        lines += ["  " + x for x in r.lines]
        payload.append({"suite": r.name, "ok": r.ok, "lines": r.lines})
    ok = all(r.ok for r in results)
    return {"suites": payload, "ok": ok}, lines, EXIT_OK if ok else EXIT_FAIL


COMMANDS = {
    "indecs": cmd_indecs,
    "tors": cmd_tors,
    "heart": cmd_heart,
    "bijection": cmd_bijection,
    "hn": cmd_hn,
    "metric": cmd_metric,
    "monocat-verify": cmd_monocat_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="F2, F3, F5, F7 or Q (overrides the input)")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--exhaustive", action="store_true", help="larger sweeps")
    common.add_argument("--cache", help="cache file (default: $TORSIONLAB_CACHE or next to the input)")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="torsionlab", description="Torsion classes, hearts and HN filtrations over Dynkin quivers.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("input", nargs="?", help="problem JSON (default: A3 over F2)")
        sp.add_argument("--quiver", default="A3", help="quiver name when no input is given (A1..An, D4)")
        if name == "tors":
            sp.add_argument("--dot", help="write the Hasse diagram to this file")
        if name in ("heart", "bijection", "monocat-verify"):
            sp.add_argument("--twins", help="name of a twin pair in the input ('trivial' for the whole category)")
        if name == "hn":
            sp.add_argument("--chain", help="chain name from the input")
            sp.add_argument("--module", required=True, help="indecomposable labels joined by '+'")
            sp.add_argument("--check-unique", action="store_true", help="run the brute-force uniqueness oracle")
    vp = sub.add_parser("verify", parents=[common])
    vp.add_argument("suite", choices=sorted(SUITES) + ["all"])
    return p


def _load_spec(args) -> ProblemSpec:
    if args.input:
        try:
            text = Path(args.input).read_text()
        except OSError as exc:
            raise ParseError(f"cannot read {args.input}: {exc.strerror}") from None
        return ProblemSpec.parse(text)
    return ProblemSpec.from_dict({"quiver": args.quiver})


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        if args.command == "verify":
            fld = Field.parse(args.field) if args.field else Field(2)
            payload, lines, code = cmd_verify(args, fld)
        else:
            spec = _load_spec(args)
            session = Session(spec, args.field, resolve_path(args.cache, args.input))
            payload, lines, code = COMMANDS[args.command](session, args)
    except (ParseError, ContractError, StructuralError, ValueError) as exc:
        print(f"torsionlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TorsionLabError as exc:
        print(f"torsionlab: verification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if args.json:
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write("\n".join(lines) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
