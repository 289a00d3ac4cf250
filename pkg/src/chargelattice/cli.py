"""Command-line front end: load a JSON instance, run one operation, print a report.

Exit status is 0 on success, 1 when the instance or a check fails (the
report then names the witness), and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from . import catalog
from .charge import (
    Charge,
    chain_charge,
    explicit_charge,
    point_mass_charge,
    symbolic_charge,
)
from .cofinite import CofiniteAlgebra, CofiniteSet
from .density import Density, DensitySpace, density_charge, measure_of_density, pointwise_sup, sup_density_measures
from .errors import (
    AttainsBothInfinities,
    ChargeLatticeError,
    InstanceError,
    NotAdditive,
    NotASemiRing,
    ViolatingSubset,
)
from .hahn import Impossible, epsilon_hahn, verify_hahn
from .intervals import GridIntervals, Interval, NatIntervals
from .lattice import ba_norm, inf_family, jordan, meet_details, sup_family
from .setsys import FiniteSemiRing, power_set, validate_semiring
from .xreal import ExtReal, parse, to_xreal

BACKENDS = ("explicit", "nat-intervals", "grid-intervals", "cofinite", "density")

NAMED_SEQUENCES = {
    "alternating-harmonic": lambda k: Fraction((-1) ** k, k),
    "harmonic": lambda k: Fraction(1, k),
    "ones": lambda k: Fraction(1),
}


# -- instance loading --------------------------------------------------------


def _named(name: str, text: str) -> str:
    return text if name == text else f"{name} = {text}"


def _value(raw, loc: str) -> ExtReal:
    if isinstance(raw, bool) or not isinstance(raw, (int, str)):
        raise InstanceError(loc, f"expected an integer or a string like '3/4' or '+inf', got {raw!r}")
    try:
        return to_xreal(raw) if isinstance(raw, int) else parse(raw)
    except ChargeLatticeError as exc:
        raise InstanceError(loc, str(exc)) from None


def _rational(raw, loc: str) -> Fraction:
    v = _value(raw, loc)
    if not v.is_finite:
        raise InstanceError(loc, "expected a finite value")
    return v.fraction


def _label(raw) -> str:
    return str(raw)


def _expect(doc: dict, key: str, kind, loc: str):
    if key not in doc:
        raise InstanceError(f"{loc}.{key}", "missing")
    val = doc[key]
    if not isinstance(val, kind):
        raise InstanceError(f"{loc}.{key}", f"expected {getattr(kind, '__name__', kind)}")
    return val


class Instance:
    """A loaded and validated instance document."""

    def __init__(self, doc: Any):
        if not isinstance(doc, dict):
            raise InstanceError("$", "expected a JSON object")
        kind = _expect(doc, "backend", str, "$")
        if kind not in BACKENDS:
            raise InstanceError("$.backend", f"unknown backend {kind!r}; expected one of {', '.join(BACKENDS)}")
        self.kind = kind
        self.space: DensitySpace | None = None
        self.densities: dict[str, Density] = {}
        self.backend = getattr(self, "_backend_" + kind.replace("-", "_"))(doc)
        self.members = self._members(doc.get("members"))
        self.charges: dict[str, Charge] = {}
        if kind == "density":
            self._densities(doc)
        else:
            raw = doc.get("charges", {})
            if not isinstance(raw, dict):
                raise InstanceError("$.charges", "expected an object")
            for name, node in raw.items():
                self.charges[name] = self._charge(name, node, f"$.charges.{name}")
        self.families = self._families(doc.get("families", {}))

    # backends

    def _backend_explicit(self, doc) -> FiniteSemiRing:
        ground = [_label(x) for x in _expect(doc, "ground", list, "$")]
        if len(set(ground)) != len(ground):
            raise InstanceError("$.ground", "duplicate labels")
        fam = doc.get("family", "powerset")
        if fam == "powerset":
            return power_set(ground)
        if not isinstance(fam, list):
            raise InstanceError("$.family", "expected \"powerset\" or a list of label lists")
        sets = []
        for i, s in enumerate(fam):
            if not isinstance(s, list):
                raise InstanceError(f"$.family[{i}]", "expected a list of labels")
            labels = [_label(x) for x in s]
            bad = [x for x in labels if x not in ground]
            if bad:
                raise InstanceError(f"$.family[{i}]", f"label {bad[0]!r} is not in the ground set")
            sets.append(labels)
        return validate_semiring(ground, sets)

    def _backend_nat_intervals(self, doc) -> NatIntervals:
        first = doc.get("first", 1)
        if not isinstance(first, int) or isinstance(first, bool):
            raise InstanceError("$.first", "expected an integer")
        return NatIntervals(first)

    def _backend_grid_intervals(self, doc) -> GridIntervals:
        raw = _expect(doc, "grid", list, "$")
        pts = [_rational(x, f"$.grid[{i}]") for i, x in enumerate(raw)]
        if any(a >= b for a, b in zip(pts, pts[1:])) or len(pts) < 2:
            raise InstanceError("$.grid", "expected at least two strictly increasing points")
        return GridIntervals(pts)

    def _backend_cofinite(self, doc) -> CofiniteAlgebra:
        return CofiniteAlgebra()

    def _backend_density(self, doc) -> FiniteSemiRing:
        ground = [_label(x) for x in _expect(doc, "ground", list, "$")]
        wraw = doc.get("weights")
        if wraw is None:
            weights = {s: Fraction(1) for s in ground}
        elif isinstance(wraw, dict):
            weights = {_label(k): _rational(v, f"$.weights.{k}") for k, v in wraw.items()}
        elif isinstance(wraw, list) and len(wraw) == len(ground):
            weights = {s: _rational(v, f"$.weights[{i}]") for i, (s, v) in enumerate(zip(ground, wraw))}
        else:
            raise InstanceError("$.weights", "expected an object or a list as long as the ground set")
        cells = doc.get("cells", [])
        if not isinstance(cells, list):
            raise InstanceError("$.cells", "expected a list of label lists")
        try:
            self.space = DensitySpace(tuple(ground), weights, tuple(tuple(_label(x) for x in c) for c in cells))
        except ValueError as exc:
            raise InstanceError("$", str(exc)) from None
        return self.space.semiring

    # members

    def _member(self, node, loc: str):
        be = self.backend
        if self.kind in ("explicit", "density"):
            if not isinstance(node, list):
                raise InstanceError(loc, "expected a list of labels")
            labels = [_label(x) for x in node]
            try:
                m = be.mask(labels)
            except (KeyError, ValueError) as exc:
                raise InstanceError(loc, f"unknown label: {exc}") from None
            if self.kind == "explicit" and not be.is_member(m):
                raise InstanceError(loc, f"{be.fmt(m)} is not a member of the semi-ring")
            return m
        if self.kind in ("nat-intervals", "grid-intervals"):
            if not (isinstance(node, list) and len(node) == 2):
                raise InstanceError(loc, "expected [lo, hi]")
            lo, hi = (_rational(x, f"{loc}[{i}]") for i, x in enumerate(node))
            if self.kind == "nat-intervals":
                if lo.denominator != 1 or hi.denominator != 1:
                    raise InstanceError(loc, "endpoints must be integers")
                lo, hi = int(lo), int(hi)
            try:
                return be.interval(lo, hi)
            except ChargeLatticeError as exc:
                raise InstanceError(loc, str(exc)) from None
        if not (isinstance(node, dict) and len(node) == 1 and set(node) <= {"finite", "cofinite"}):
            raise InstanceError(loc, 'expected {"finite": [...]} or {"cofinite": [...]}')
        (key, pts), = node.items()
        if not isinstance(pts, list) or any(isinstance(k, bool) or not isinstance(k, int) or k < 1 for k in pts):
            raise InstanceError(loc, "expected a list of naturals (1, 2, ...)")
        return CofiniteSet.finite(pts) if key == "finite" else CofiniteSet.co(pts)

    def _members(self, raw) -> dict:
        if raw is None:
            if self.kind in ("explicit", "density"):
                be = self.backend
                return {be.fmt(m): m for m in be.members()} if self.kind == "explicit" else {"all": be.full}
            if self.kind == "grid-intervals":
                be = self.backend
                return {be.fmt(a): a for a in be.members() if not a.is_empty}
            return {}
        if not isinstance(raw, dict):
            raise InstanceError("$.members", "expected an object of named members")
        return {name: self._member(node, f"$.members.{name}") for name, node in raw.items()}

    # charges

    def _charge(self, name: str, node, loc: str) -> Charge:
        be = self.backend
        if not isinstance(node, dict):
            raise InstanceError(loc, "expected an object")
        try:
            if self.kind == "explicit":
                if "values" in node:
                    table = {}
                    if not isinstance(node["values"], list):
                        raise InstanceError(f"{loc}.values", "expected a list of [labels, value] pairs")
                    for i, item in enumerate(node["values"]):
                        if not (isinstance(item, list) and len(item) == 2):
                            raise InstanceError(f"{loc}.values[{i}]", "expected [labels, value]")
                        m = self._member(item[0], f"{loc}.values[{i}][0]")
                        table[m] = _value(item[1], f"{loc}.values[{i}][1]")
                    return explicit_charge(be, table, name)
                if "masses" in node:
                    masses = {_label(k): _value(v, f"{loc}.masses.{k}") for k, v in node["masses"].items()}
                    unknown = [k for k in masses if k not in be.ground]
                    if unknown:
                        raise InstanceError(f"{loc}.masses.{unknown[0]}", "label is not in the ground set")
                    return point_mass_charge(be, masses, name)
                raise InstanceError(loc, 'expected "values" or "masses"')
            if self.kind == "nat-intervals":
                w = node.get("weights")
                if isinstance(w, str):
                    if w not in NAMED_SEQUENCES:
                        raise InstanceError(f"{loc}.weights", f"unknown sequence; expected one of {', '.join(NAMED_SEQUENCES)}")
                    return chain_charge(be, NAMED_SEQUENCES[w], name)
                if isinstance(w, dict):
                    return chain_charge(be, {int(k): _value(v, f"{loc}.weights.{k}") for k, v in w.items()}, name)
                raise InstanceError(f"{loc}.weights", "expected a sequence name or an object of point weights")
            if self.kind == "grid-intervals":
                pts = be.grid
                if "weights" in node:
                    w = [_value(v, f"{loc}.weights[{i}]") for i, v in enumerate(node["weights"])]
                elif "density" in node:
                    dens = node["density"]
                    w = [_value(v, f"{loc}.density[{i}]") * (pts[i + 1] - pts[i]) for i, v in enumerate(dens)]
                else:
                    raise InstanceError(loc, 'expected "weights" or "density"')
                if len(w) != len(pts) - 1:
                    raise InstanceError(loc, f"expected {len(pts) - 1} cell values, got {len(w)}")
                return chain_charge(be, w, name)
            rule = node.get("rule")
            masses = {}
            for k, v in node.get("masses", {}).items():
                if not k.isdigit() or int(k) < 1:
                    raise InstanceError(f"{loc}.masses.{k}", "expected a natural")
                masses[int(k)] = _value(v, f"{loc}.masses.{k}")
            return symbolic_charge(rule, masses, name)
        except InstanceError:
            raise
        except NotAdditive as exc:
            blocks = " + ".join(be.fmt(c) for c in exc.partition.blocks)
            msg = f"not additive on {be.fmt(exc.member)}: value {exc.lhs} but {blocks} sums to {exc.rhs}"
            raise InstanceError(loc, msg) from exc
        except AttainsBothInfinities as exc:
            raise InstanceError(loc, str(exc)) from exc
        except (ChargeLatticeError, ValueError) as exc:
            raise InstanceError(loc, str(exc)) from exc

    def _densities(self, doc) -> None:
        raw = doc.get("densities", {})
        if not isinstance(raw, dict):
            raise InstanceError("$.densities", "expected an object")
        pts = self.space.points
        for name, node in raw.items():
            loc = f"$.densities.{name}"
            if isinstance(node, list):
                if len(node) != len(pts):
                    raise InstanceError(loc, f"expected {len(pts)} values")
                vals = {s: _value(v, f"{loc}[{i}]") for i, (s, v) in enumerate(zip(pts, node))}
            elif isinstance(node, dict):
                vals = {_label(k): _value(v, f"{loc}.{k}") for k, v in node.items()}
                unknown = [k for k in vals if k not in pts]
                if unknown:
                    raise InstanceError(f"{loc}.{unknown[0]}", "not a point of the space")
            else:
                raise InstanceError(loc, "expected a list or an object")
            try:
                f = Density(vals)
            except ValueError as exc:
                raise InstanceError(loc, str(exc)) from None
            self.densities[name] = f
            self.charges[name] = density_charge(self.space, f, name)

    def _families(self, raw) -> dict[str, list[str]]:
        if not isinstance(raw, dict):
            raise InstanceError("$.families", "expected an object")
        out = {}
        for name, names in raw.items():
            if not isinstance(names, list) or not names:
                raise InstanceError(f"$.families.{name}", "expected a nonempty list of charge names")
            for i, n in enumerate(names):
                if n not in self.charges:
                    raise InstanceError(f"$.families.{name}[{i}]", f"unknown charge {n!r}")
            out[name] = list(names)
        return out

    # helpers

    def fmt(self, a) -> str:
        return self.backend.fmt(a)

    def charge(self, name: str) -> Charge:
        if name not in self.charges:
            raise UsageError(f"unknown charge {name!r}; known: {', '.join(self.charges) or 'none'}")
        return self.charges[name]

    def member(self, name: str):
        if name not in self.members:
            raise UsageError(f"unknown member {name!r}; known: {', '.join(self.members) or 'none'}")
        return self.members[name]

    def selected_members(self, names: Sequence[str] | None) -> dict:
        if names:
            return {n: self.member(n) for n in names}
        if not self.members:
            raise UsageError("the instance names no members; add a members block or pass --member")
        return self.members

    def family(self, fam: str | None, charges: Sequence[str] | None) -> list[Charge]:
        if fam:
            if fam not in self.families:
                raise UsageError(f"unknown family {fam!r}")
            return [self.charges[n] for n in self.families[fam]]
        if charges:
            return [self.charge(n) for n in charges]
        if len(self.families) == 1:
            return [self.charges[n] for n in next(iter(self.families.values()))]
        if self.charges:
            return list(self.charges.values())
        raise UsageError("no family given")


class UsageError(Exception):
    pass


def load_instance(path: str) -> Instance:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"line {exc.lineno} column {exc.colno}", f"invalid JSON: {exc.msg}") from None
    return Instance(doc)


# -- reports -----------------------------------------------------------------


def _text(v) -> Any:
    if isinstance(v, ExtReal):
        return str(v)
    if isinstance(v, Fraction):
        return str(ExtReal(v))
    if isinstance(v, dict):
        return {str(k): _text(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_text(x) for x in v]
    if v is None or isinstance(v, (bool, str, int)):
        return v
    return str(v)


def _render_plain(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.extend(_render_plain(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, dict) and v:
                sub = _render_plain(v, indent + 1)
                lines.append(f"{pad}- {sub[0].lstrip()}")
                lines.extend(sub[1:])
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(f"{pad}{_scalar(obj)}")
    return lines


def _scalar(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v is None:
        return "-"
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_scalar(x)}" for k, x in v.items()) + "}"
    return str(v)


def emit(report: dict, fmt: str, out) -> None:
    report = _text(report)
    if fmt == "json":
        out.write(json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n")
        return
    summary = report.pop("summary", None)
    if summary is not None:
        out.write(f"{summary}\n")
    out.write("\n".join(_render_plain(report)) + ("\n" if report else ""))


# -- commands ----------------------------------------------------------------


def _partition_text(inst: Instance, blocks) -> str:
    if blocks is None:
        return None
    return " + ".join(inst.fmt(b) for b in blocks) or "{}"


def cmd_validate(inst: Instance, args) -> dict:
    return {
        "summary": "semi-ring: ok, charges: ok",
        "backend": inst.kind,
        "members": len(inst.members),
        "charges": {name: ch.polarity.value for name, ch in inst.charges.items()},
    }


def cmd_partitions(inst: Instance, args) -> dict:
    a = inst.member(args.member)
    be = inst.backend
    limit = args.limit
    rows = []
    for i, p in enumerate(be.partitions(a, args.max_blocks)):
        if i >= limit:
            rows.append("... (truncated)")
            break
        rows.append(_partition_text(inst, p.blocks))
    return {"member": _named(args.member, inst.fmt(a)), "count": len(rows), "partitions": rows}


def cmd_ring(inst: Instance, args) -> dict:
    be = inst.backend
    rows = []
    if isinstance(be, FiniteSemiRing):
        for m, r in be.ring_table().items():
            rows.append({"set": be.fmt(m), "blocks": _partition_text(inst, r.blocks)})
    elif isinstance(be, GridIntervals):
        for r in be.generate_ring():
            rows.append({"blocks": _partition_text(inst, r.blocks)})
    elif isinstance(be, NatIntervals):
        if args.bound is None:
            raise UsageError("ring on nat-intervals needs --bound")
        for r in be.generate_ring(args.bound):
            rows.append({"blocks": _partition_text(inst, r.blocks)})
    else:
        raise UsageError("the cofinite algebra is already a ring; nothing to enumerate")
    return {"count": len(rows), "ring": rows}


def _lattice_rows(inst: Instance, res, members: dict) -> list:
    rows = []
    for name, a in members.items():
        opt = res.optimum(a)
        rows.append({
            "member": _named(name, inst.fmt(a)),
            "value": opt.value,
            "exactness": str(opt.exactness),
            "partition": _partition_text(inst, opt.witness),
        })
    return rows


def cmd_sup(inst: Instance, args) -> dict:
    fam = inst.family(args.family, args.charges)
    res = sup_family(fam, args.depth)
    return {"operation": "sup", "family": [c.name for c in fam], "members": _lattice_rows(inst, res, inst.selected_members(args.member))}


def cmd_inf(inst: Instance, args) -> dict:
    fam = inst.family(args.family, args.charges)
    res = inf_family(fam, args.depth)
    return {"operation": "inf", "family": [c.name for c in fam], "members": _lattice_rows(inst, res, inst.selected_members(args.member))}


def cmd_jordan(inst: Instance, args) -> dict:
    mu = inst.charge(args.charge)
    pos, negp, var = jordan(mu, args.depth)
    rows = []
    for name, a in inst.selected_members(args.member).items():
        rows.append({
            "member": _named(name, inst.fmt(a)),
            "mu": mu(a),
            "mu+": pos(a),
            "mu-": negp(a),
            "|mu|": var(a),
            "exactness": str(var.exactness(a)),
        })
    return {"charge": mu.name, "members": rows}


def cmd_variation(inst: Instance, args) -> dict:
    mu = inst.charge(args.charge)
    var = jordan(mu, args.depth).variation
    return {"charge": mu.name, "members": _lattice_rows(inst, var, inst.selected_members(args.member))}


def cmd_norm(inst: Instance, args) -> dict:
    mu = inst.charge(args.charge)
    threshold = None if args.threshold is None else _value(args.threshold, "--threshold")
    n = ba_norm(mu, threshold)
    return {"charge": mu.name, "norm": n.value, "exactness": str(n.exactness), "diverged": n.diverged}


def cmd_meet(inst: Instance, args) -> dict:
    mu = inst.charge(args.charge)
    parts = jordan(mu, args.depth)
    rows = []
    for name, a in inst.selected_members(args.member).items():
        d = meet_details(mu, a, args.depth, parts)
        rows.append({
            "member": _named(name, inst.fmt(a)),
            "verdict": d.verdict.value,
            "mu+": d.positive,
            "mu-": d.negative,
            "meet": d.meet,
            "exactness": str(d.exactness),
        })
    return {"charge": mu.name, "members": rows}


def cmd_hahn(inst: Instance, args) -> dict:
    mu = inst.charge(args.charge)
    if not args.member or len(args.member) != 1:
        raise UsageError("hahn needs exactly one --member")
    a = inst.member(args.member[0])
    eps = _rational(args.epsilon, "--epsilon")
    if eps <= 0:
        raise UsageError("--epsilon must be positive")
    parts = jordan(mu, args.depth)
    cert = epsilon_hahn(mu, a, eps, args.depth, parts)
    head = {"charge": mu.name, "member": _named(args.member[0], inst.fmt(a)), "epsilon": eps}
    if isinstance(cert, Impossible):
        head.update({"result": "impossible", "mu+": cert.positive, "mu-": cert.negative, "meet": "+inf"})
        return head
    verify_hahn(mu, cert, parts)
    head.update({
        "result": "certificate",
        "H": _partition_text(inst, cert.h.blocks),
        "complement": _partition_text(inst, cert.complement.blocks),
        "partition": _partition_text(inst, cert.partition.blocks),
        "min-sum": cert.slack,
        "verified": True,
    })
    return head


def cmd_density_sup(inst: Instance, args) -> dict:
    if inst.kind != "density":
        raise UsageError("density-sup needs a density instance")
    names = args.charges or list(inst.densities)
    fam = []
    for n in names:
        if n not in inst.densities:
            raise UsageError(f"unknown density {n!r}")
        fam.append(inst.densities[n])
    if not fam:
        raise UsageError("the instance has no densities")
    fsup = pointwise_sup(fam)
    rows = []
    for name, m in inst.selected_members(args.member).items():
        pts = inst.space.semiring.labels(m)
        lhs = sup_density_measures(inst.space, fam, pts)
        rhs = measure_of_density(inst.space, fsup, pts)
        rows.append({"member": _named(name, inst.fmt(m)), "sup of measures": lhs, "integral of sup": rhs, "equal": lhs == rhs})
    return {"densities": names, "members": rows}


def cmd_example(args) -> dict:
    if args.list:
        return {"examples": [f"{i}: {catalog.build(i).title}" for i in catalog.fixture_ids()]}
    if not args.id:
        raise UsageError("example needs an id or --list")
    if args.id not in catalog.FIXTURES:
        raise UsageError(f"unknown example {args.id!r}; see example --list")
    fx = catalog.build(args.id)
    outcomes = catalog.run(fx, strict=False)
    rows = [
        {"query": o.query, "expected": o.expected, "got": o.got, "ok": o.ok, "basis": o.basis}
        for o in outcomes
    ]
    failed = sum(not o.ok for o in outcomes)
    return {
        "summary": f"{fx.id}: {len(outcomes) - failed}/{len(outcomes)} queries reproduced",
        "example": fx.title,
        "queries": rows,
        "_failed": failed,
    }


COMMANDS = {
    "validate": cmd_validate,
    "partitions": cmd_partitions,
    "ring": cmd_ring,
    "sup": cmd_sup,
    "inf": cmd_inf,
    "jordan": cmd_jordan,
    "variation": cmd_variation,
    "norm": cmd_norm,
    "meet": cmd_meet,
    "hahn": cmd_hahn,
    "density-sup": cmd_density_sup,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chargelattice", description="Lattice operations on charges over semi-rings.")
    parser.add_argument("--format", choices=("plain", "json"), default="plain", help="report format")
    sub = parser.add_subparsers(dest="command", required=True)

    def instance_cmd(name: str, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        p.add_argument("--input", required=True, help="instance JSON file")
        p.add_argument("--format", choices=("plain", "json"), default=argparse.SUPPRESS)
        p.add_argument("--member", action="append", help="named member (repeatable; default: all named members)")
        p.add_argument("--depth", type=int, default=None, help="run-partition depth on the cofinite algebra")
        return p

    instance_cmd("validate", "check the semi-ring axioms and every charge")
    p = instance_cmd("partitions", "list the partitions of a member")
    p.add_argument("--max-blocks", type=int, default=None)
    p.add_argument("--limit", type=int, default=1000)
    p = instance_cmd("ring", "list the generated ring")
    p.add_argument("--bound", type=int, default=None, help="largest endpoint on nat-intervals")
    for name in ("sup", "inf"):
        p = instance_cmd(name, f"{name} of a family of charges")
        p.add_argument("--family", default=None)
        p.add_argument("--charge", dest="charges", action="append", help="family member (repeatable)")
    for name, help in (("jordan", "positive part, negative part and variation"),
                       ("variation", "variation with witness partitions"),
                       ("meet", "meet of the Jordan parts"),
                       ("norm", "supremum of the variation over all members")):
        p = instance_cmd(name, help)
        p.add_argument("--charge", required=True)
        if name == "norm":
            p.add_argument("--threshold", default=None, help="report divergence once the norm exceeds this")
    p = instance_cmd("hahn", "epsilon-Hahn decomposition of a member")
    p.add_argument("--charge", required=True)
    p.add_argument("--epsilon", required=True, help="positive rational, e.g. 1/2")
    p = instance_cmd("density-sup", "supremum of density measures against the integral of the pointwise sup")
    p.add_argument("--density", dest="charges", action="append", help="family member (repeatable; default: all)")
    p = sub.add_parser("example", help="run a catalogued worked example")
    p.add_argument("id", nargs="?")
    p.add_argument("--list", action="store_true")
    p.add_argument("--format", choices=("plain", "json"), default=argparse.SUPPRESS)
    return parser


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "example":
            report = cmd_example(args)
            failed = report.pop("_failed", 0)
            emit(report, args.format, out)
            return 1 if failed else 0
        inst = load_instance(args.input)
        report = COMMANDS[args.command](inst, args)
        emit(report, args.format, out)
        return 0
    except UsageError as exc:
        err.write(f"chargelattice: error: {exc}\n")
        return 2
    except ChargeLatticeError as exc:
        emit(_failure(exc), args.format, out)
        err.write(f"chargelattice: {type(exc).__name__}: {exc}\n")
        return 1


def _failure(exc: ChargeLatticeError) -> dict:
    report = {"summary": "invalid", "error": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, NotASemiRing):
        report["axiom"] = exc.axiom
        report["witness"] = [list(w) for w in exc.witness]
    elif isinstance(exc, InstanceError):
        report["location"] = exc.location
    elif isinstance(exc, ViolatingSubset):
        report["witness"] = {"subset": exc.subset, "value": exc.value, "side": exc.side}
    return report


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
