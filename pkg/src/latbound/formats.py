"""Line-oriented text formats for instances, reports and campaign summaries.

Instance file::

    # comment
    dimension: 2
    symmetric: false        (optional)
    seed: 42                (optional)
    [lattice]
    1 0                     one generator per row
    0 1
    [vertices]
    0 0                     one vertex per row
    2 3

Rationals are written ``p``, ``p/q`` or ``-p/q``; entries are separated by
whitespace or commas.
"""
from __future__ import annotations

from .arith import fmt, parse_rational
from .bounds import BoundValue
from .errors import ContractError, ParseError
from .geometry import Polytope
from .harness import BoundReport, CampaignSummary, Instance, LimitTable
from .interval import DEFAULT_PRECISION
from .lattice import LatticeBasis


def _row(line: str, lineno: int) -> tuple:
    parts = line.replace(",", " ").split()
    try:
        return tuple(parse_rational(p) for p in parts)
    except ContractError as exc:
        raise ParseError(str(exc), lineno) from None


def parse_instance(text: str) -> Instance:
    header = {}
    sections = {"lattice": [], "vertices": []}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip()
            if current not in sections:
                raise ParseError(f"unknown section [{current}]", lineno)
            continue
        if current is None:
            if ":" not in line:
                raise ParseError(f"expected 'key: value', got {line!r}", lineno)
            key, value = (s.strip() for s in line.split(":", 1))
            header[key] = (value, lineno)
        else:
            sections[current].append((_row(line, lineno), lineno))

    if "dimension" not in header:
        raise ParseError("missing 'dimension'")
    dim_text, dim_line = header["dimension"]
    try:
        d = int(dim_text)
    except ValueError:
        raise ParseError(f"bad dimension {dim_text!r}", dim_line) from None
    if d < 1:
        raise ParseError("dimension must be positive", dim_line)
    for name in ("lattice", "vertices"):
        for row, lineno in sections[name]:
            if len(row) != d:
                raise ParseError(f"{name} row has {len(row)} entries, expected {d}", lineno)
    if len(sections["lattice"]) != d:
        raise ParseError(f"[lattice] needs {d} generators, got {len(sections['lattice'])}")
    if not sections["vertices"]:
        raise ParseError("[vertices] is empty")
    try:
        lattice = LatticeBasis.from_generators([r for r, _ in sections["lattice"]])
    except ContractError as exc:
        raise ParseError(str(exc), sections["lattice"][0][1]) from None

    sym_text, sym_line = header.get("symmetric", ("false", None))
    if sym_text.lower() not in ("true", "false"):
        raise ParseError(f"symmetric must be true or false, got {sym_text!r}", sym_line)
    seed = None
    if "seed" in header:
        try:
            seed = int(header["seed"][0])
        except ValueError:
            raise ParseError("bad seed", header["seed"][1]) from None
    body = Polytope(d, tuple(r for r, _ in sections["vertices"]))
    return Instance(body, lattice, sym_text.lower() == "true", seed)


def _vec(v) -> str:
    return " ".join(fmt(x) for x in v)


def emit_instance(inst: Instance) -> str:
    lines = [f"dimension: {inst.dimension}",
             f"symmetric: {str(inst.symmetric).lower()}"]
    if inst.seed is not None:
        lines.append(f"seed: {inst.seed}")
    lines.append("[lattice]")
    lines += [_vec(g) for g in inst.lattice.generators]
    lines.append("[vertices]")
    lines += [_vec(v) for v in inst.body.vertices]
    return "\n".join(lines) + "\n"


def parse_polygon(text: str) -> Polytope:
    """Plain vertex list, one ``x y`` pair per line."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            row = _row(line, lineno)
            if len(row) != 2:
                raise ParseError("polygon vertices need two coordinates", lineno)
            rows.append(row)
    if not rows:
        raise ParseError("polygon file has no vertices")
    return Polytope(2, tuple(rows))


def render_value(value: BoundValue, precision=DEFAULT_PRECISION) -> str:
    if value.kind == "exact":
        return fmt(value.value)
    enc = value.enclosure(precision)
    mid = (enc.lo + enc.hi) / 2
    return f"[{fmt(enc.lo)}, {fmt(enc.hi)}] ≈{float(mid):.12g}"


def _flag(x) -> str:
    return "none" if x is None else str(x).lower()


def emit_report(report: BoundReport, timing: bool = False, k_reduce: bool = True) -> str:
    inst = report.instance
    prof = report.minima
    lines = ["[instance]", f"dimension: {inst.dimension}",
             f"symmetric: {str(inst.symmetric).lower()}",
             f"seed: {_flag(inst.seed)}",
             f"vertices: {len(inst.body.vertices)}",
             f"det: {fmt(inst.lattice.det_abs)}",
             "[result]", f"count: {report.count}",
             "lambda: " + ", ".join(fmt(x) for x in prof.lambdas)]
    for i, w in enumerate(prof.witnesses, start=1):
        lines.append(f"witness.{i}: " + ", ".join(fmt(x) for x in w))
    lines += [f"k_sym: {_flag(prof.k_sym)}", f"k_asym: {_flag(prof.k_asym)}", "[bounds]"]
    for e in report.entries:
        if not k_reduce and e.name.endswith(".k"):
            continue
        parts = []
        if e.value is not None:
            parts.append(f"value={render_value(e.value)}")
        if e.mu is not None:
            parts.append("mu=" + ", ".join(fmt(m) for m in e.mu))
        parts.append(f"applicable={_flag(e.applicable)}")
        if e.verdict is not None:
            parts.append(f"verdict={e.verdict}")
        parts.append(f"satisfied={_flag(e.satisfied)}")
        if e.equality:
            parts.append("equality=true")
        lines.append(f"{e.name}: " + "; ".join(parts))
    lines.append("[comparisons]")
    for c in report.comparisons:
        if not k_reduce and (c.left.endswith(".k") or c.right.endswith(".k")):
            continue
        lines.append(f"{c.left} vs {c.right}: {c.verdict}")
    lines += ["[checks]",
              f"corollary_beats_malikiosis: {_flag(report.corollary_claim)}",
              f"factorwise_claim: {_flag(report.factorwise_claim)}",
              f"minkowski: {_flag(report.minkowski)}"]
    if timing:
        lines += ["[timing]", f"seconds: {report.seconds:.4f}"]
    return "\n".join(lines) + "\n"


def emit_summary(summary: CampaignSummary, timing: bool = False) -> str:
    lines = ["[campaign]", f"seed: {summary.seed}", f"trials: {summary.trials}",
             f"symmetric_trials: {summary.symmetric_trials}"]
    for d in sorted(summary.by_dimension):
        lines.append(f"dimension.{d}: {summary.by_dimension[d]}")
    lines.append("[bounds]")
    for name in sorted(summary.applicable):
        lines.append(f"{name}: applicable={summary.applicable[name]}; "
                     f"satisfied={summary.satisfied[name]}; "
                     f"equalities={summary.equalities.get(name, 0)}")
    lines += ["[claims]",
              f"corollary_applicable: {summary.corollary_applicable}",
              f"corollary_beats_malikiosis: {summary.corollary_beats_malikiosis}",
              f"factorwise_holds: {summary.factorwise_holds}",
              f"indeterminate_comparisons: {summary.indeterminate_comparisons}",
              f"claims_hold: {str(summary.claims_hold).lower()}",
              "[minkowski]",
              f"checked: {summary.minkowski_checked}",
              f"equalities: {summary.minkowski_equalities}"]
    if timing:
        lines += ["[timing]", f"seconds: {summary.seconds:.2f}"]
    return "\n".join(lines) + "\n"


def emit_limit_table(table: LimitTable) -> str:
    lines = ["[limit]", f"volume_target: {fmt(table.volume_target)}",
             f"bound_target: {fmt(table.bound_target)}",
             f"tolerance: {fmt(table.tolerance)}", "[rows]",
             "# r | count | r^d*count | r^d*conjecture_bound"]
    for row in table.rows:
        lines.append(f"{fmt(row.r)} | {row.count} | {fmt(row.scaled_count)} | {fmt(row.scaled_bound)}")
    if table.warning:
        lines.append(f"# warning: {table.warning}")
    lines += ["[verdict]",
              f"count_deviation: {fmt(table.count_deviation)} ≈{float(table.count_deviation):.6g}",
              f"bound_deviation: {fmt(table.bound_deviation)} ≈{float(table.bound_deviation):.6g}",
              f"converged: {str(table.converged).lower()}"]
    return "\n".join(lines) + "\n"


def rational_list(text: str) -> tuple:
    return tuple(parse_rational(p) for p in text.replace(",", " ").split())

