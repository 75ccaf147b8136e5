"""Command-line front end: read JSON descriptions, run one operation, emit a report."""
from __future__ import annotations

import argparse
import csv
import io
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from . import serialize as ser
from .config import COMMANDS, FORMATS, Budget, RunConfig
from .errors import BudgetExceeded, DomainError, ParseError
from .measure.algebra import FiniteAlgebra
from .measure.carriers import INTERVAL

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_DOMAIN = 3
EXIT_BUDGET = 4

# Commands whose natural output is a table of numbers.
CSV_DEFAULT = ("entropy", "h-seq")

INPUT_ROLES = ("system", "system2", "algebra", "given", "event", "event2",
               "partition", "partition2")


@dataclass
class Report:
    """A command's result as a JSON object plus a flat table view."""

    data: dict
    header: list[str] = field(default_factory=list)
    rows: list[list] = field(default_factory=list)

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return ser.to_json(self.data) + "\n"
        if fmt == "csv":
            buf = io.StringIO()
            writer = csv.writer(buf, lineterminator="\n")
            writer.writerow(self.header)
            writer.writerows(self.rows)
            return buf.getvalue()
        cells = [self.header] + [[str(c) for c in r] for r in self.rows]
        widths = [max(len(row[i]) for row in cells) for i in range(len(self.header))]
        lines = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in cells]
        return "\n".join(lines) + "\n"


def _kv(data: dict) -> Report:
    """Table view of a flat report: one ``key,value`` row per scalar field."""
    rows = [[k, v] for k, v in data.items() if not isinstance(v, (dict, list))]
    return Report(data, ["key", "value"], rows)


# ---------------------------------------------------------------------------
# Input access


class Inputs:
    def __init__(self, raw: dict):
        self.raw = raw

    def need(self, role: str):
        if role not in self.raw:
            raise ParseError(f"--{role.replace('2', '-2') if role.endswith('2') else role} "
                             f"is required for this command")
        return self.raw[role]

    def has(self, role: str) -> bool:
        return role in self.raw

    def system(self, role: str = "system"):
        return ser.load_system(self.need(role))

    def algebra(self, role: str = "algebra") -> FiniteAlgebra:
        return ser.load_algebra(self.need(role))

    def given(self, carrier) -> FiniteAlgebra:
        if not self.has("given"):
            return FiniteAlgebra.trivial(carrier)
        C = ser.load_algebra(self.raw["given"])
        if C.carrier != carrier:
            raise DomainError("--given algebra lives on a different carrier")
        return C

    def events(self, role: str) -> list:
        raw = self.need(role)
        items = raw if isinstance(raw, list) else [raw]
        return [ser.load_event(e) for e in items]


def _need_param(value, flag: str):
    if value is None:
        raise ParseError(f"{flag} is required for this command")
    return value


# ---------------------------------------------------------------------------
# Commands


def cmd_tower(cfg: RunConfig, inp: Inputs) -> Report:
    from .towers import rokhlin_tower
    S = inp.system()
    t = rokhlin_tower(S, _need_param(cfg.n, "-n"), _need_param(cfg.eps, "--eps"), cfg.budget)
    rep = Report(ser.dump_tower(t), ["level", "measure"])
    rep.rows = [[i, ser.dump_rational(l.measure())] for i, l in enumerate(t.levels)]
    rep.rows.append(["residual", ser.dump_rational(t.residual)])
    return rep


def cmd_witness(cfg: RunConfig, inp: Inputs) -> Report:
    from .towers import aperiodicity_witness, check_witness
    S = inp.system()
    n = _need_param(cfg.n, "-n")
    eps = _need_param(cfg.eps, "--eps")
    b = aperiodicity_witness(S, n, eps, cfg.budget)
    chk = check_witness(S.transformation, b, n)
    return _kv({"n": n, "eps": ser.dump_rational(eps), "witness": ser.dump_event(b),
                "measure": ser.dump_rational(b.measure()),
                "overlap": ser.dump_rational(chk.overlap),
                "imbalance": ser.dump_rational(chk.imbalance)})


def cmd_cycle_approx(cfg: RunConfig, inp: Inputs) -> Report:
    from .towers import cycle_approximation, cycle_distance
    S = inp.system()
    N = _need_param(cfg.N, "-N")
    cert = cycle_approximation(S, N, cfg.budget)
    enc = cycle_distance(S, cert, cfg.budget)
    data = {"N": N, "bound": ser.dump_rational(Fraction(2, N)),
            "certified": ser.dump_rational(cert.bound),
            "true-rho": ser.dump_rational(enc.lo) if enc.exact else ser.dump_enclosure(enc),
            "certificate": ser.dump_certificate(cert)}
    return _kv(data)


def cmd_conjugate(cfg: RunConfig, inp: Inputs) -> Report:
    from .transformations import reduce_to_iet
    from .towers import approximate_conjugation, conjugacy_with_parameters
    S1, S2 = inp.system(), inp.system("system2")
    e1, e2 = reduce_to_iet(S1.transformation), reduce_to_iet(S2.transformation)
    if e1 is not None and e2 is not None:
        b = inp.events("event") if inp.has("event") else []
        d = inp.events("event2") if inp.has("event2") else []
        gamma = conjugacy_with_parameters(e1, e2, b, d)
        return _kv({"mode": "exact", "gamma": ser.dump_map(gamma)})
    eps = _need_param(cfg.eps, "--eps")
    res = approximate_conjugation(S1, S2, eps, cfg.budget)
    return _kv({"mode": "approximate", "eps": ser.dump_rational(eps),
                "certificate": ser.dump_rational(res.certificate), "N": res.N,
                "gamma": ser.dump_map(res.gamma), "conjugate": ser.dump_map(res.conjugate)})


def _entropy_row(h) -> list:
    return [h.decimal(), len(h.cells)]


def cmd_entropy(cfg: RunConfig, inp: Inputs) -> Report:
    from .entropy import entropy, h_sequence
    A = inp.algebra()
    C = inp.given(A.carrier)
    h = entropy(A, C, cfg.precision)
    data = {"H": ser.dump_entropy(h)}
    rows = [["H(A/C)"] + _entropy_row(h)]
    if inp.has("system"):
        seq = h_sequence(inp.system(), A, cfg.n or 1, cfg.precision, cfg.budget)
        last = seq.conditional[-1]
        data["conditional"] = ser.dump_entropy(last)
        rows.append([f"H(A/past_{len(seq.conditional)})"] + _entropy_row(last))
    return Report(data, ["quantity", "value", "cells"], rows)


def cmd_h_seq(cfg: RunConfig, inp: Inputs) -> Report:
    from .entropy import h_sequence
    seq = h_sequence(inp.system(), inp.algebra(), _need_param(cfg.n, "-n"),
                     cfg.precision, cfg.budget)
    rows, out = [], []
    for k, (c, d, cnt) in enumerate(zip(seq.cesaro, seq.conditional, seq.cell_counts), 1):
        rows.append([k, c.decimal(), d.decimal(), cnt])
        out.append({"k": k, "cesaro": ser.dump_entropy(c), "conditional": ser.dump_entropy(d),
                    "exact_cell_count": cnt})
    return Report({"sequence": out}, ["k", "cesaro", "conditional", "exact_cell_count"], rows)


def cmd_distance(cfg: RunConfig, inp: Inputs) -> Report:
    if inp.has("system2"):
        from .transformations import rho_maps
        S1, S2 = inp.system(), inp.system("system2")
        gap = cfg.eps if cfg.eps else Fraction(1, 1 << 20)
        enc = rho_maps(S1.transformation, S2.transformation, gap, cfg.budget)
        return _kv({"rho": ser.dump_enclosure(enc), "lo": ser.dump_rational(enc.lo),
                    "hi": ser.dump_rational(enc.hi), "exact": enc.exact})
    from .conditioning import realize_distance, type_distance
    a, b = inp.events("partition"), inp.events("partition2")
    C = inp.given(a[0].carrier)
    d = type_distance(a, b, C)
    data = {"type-distance": ser.dump_rational(d)}
    if len(C.atoms) == 1 and a[0].carrier == INTERVAL:
        r = realize_distance(a, b)
        data["realized"] = {"a": [ser.dump_event(e) for e in r.a],
                            "b": [ser.dump_event(e) for e in r.b],
                            "distance": ser.dump_rational(r.distance)}
    return _kv(data)


def cmd_independent(cfg: RunConfig, inp: Inputs) -> Report:
    if inp.has("system"):
        from .entropy import is_transformally_independent_upto
        n = _need_param(cfg.n, "-n")
        ok = is_transformally_independent_upto(inp.system(), inp.algebra(), n, cfg.budget)
        return _kv({"transformally-independent": ok, "n": n})
    from .conditioning import is_independent
    a = inp.events("event")
    B = inp.algebra()
    C = inp.given(B.carrier)
    return _kv({"independent": is_independent(a, C, B)})


def cmd_decompose(cfg: RunConfig, inp: Inputs) -> Report:
    from .towers import periodic_decomposition
    d = periodic_decomposition(inp.system().transformation)
    rep = Report(ser.dump_decomposition(d), ["part", "measure"])
    rep.rows = [[f"z{i}", ser.dump_rational(z.measure())] for i, z in sorted(d.periodic_parts.items())]
    rep.rows.append(["aperiodic", ser.dump_rational(d.aperiodic_part.measure())])
    return rep


def cmd_product(cfg: RunConfig, inp: Inputs) -> Report:
    from .towers import product_system
    from .transformations import is_certified_aperiodic
    P = product_system(inp.system(), inp.system("system2"))
    data = ser.dump_system(P)
    data["aperiodic"] = is_certified_aperiodic(P.transformation)
    return Report(data, ["key", "value"], [["aperiodic", data["aperiodic"]]])


def cmd_cb(cfg: RunConfig, inp: Inputs) -> Report:
    from .conditioning import canonical_base
    a = inp.events("event")
    C = inp.given(a[0].carrier) if inp.has("given") else inp.algebra()
    cb = canonical_base(a, C)
    rep = Report(ser.dump_algebra(cb), ["atom", "measure"])
    rep.rows = [[i, ser.dump_rational(x.measure())] for i, x in enumerate(cb.atoms)]
    return rep


HANDLERS: dict[str, Callable[[RunConfig, Inputs], Report]] = {
    "tower": cmd_tower, "witness": cmd_witness, "cycle-approx": cmd_cycle_approx,
    "conjugate": cmd_conjugate, "entropy": cmd_entropy, "h-seq": cmd_h_seq,
    "distance": cmd_distance, "independent": cmd_independent, "decompose": cmd_decompose,
    "product": cmd_product, "cb": cmd_cb,
}
assert set(HANDLERS) == set(COMMANDS)


def run(config: RunConfig, inputs: dict) -> tuple[int, str]:
    """Run one command on parsed JSON inputs; returns ``(exit status, output text)``.

    Errors are reported as text with the status of their class.
    """
    try:
        report = HANDLERS[config.command](config, Inputs(inputs))
        return EXIT_OK, report.render(config.output_format)
    except ParseError as exc:
        return EXIT_PARSE, f"parse error: {exc}\n"
    except BudgetExceeded as exc:
        return EXIT_BUDGET, f"budget exceeded: {exc}\n"
    except DomainError as exc:
        return EXIT_DOMAIN, f"domain error: {exc}\n"


# ---------------------------------------------------------------------------
# Argument parsing


def _rational(text: str) -> Fraction:
    try:
        return ser.load_rational(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ergoalg",
        description="Exact computations with measure algebras and their automorphisms.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--system", help="JSON system (map) description")
    common.add_argument("--system-2", dest="system2", help="second system")
    common.add_argument("--algebra", help="JSON finite algebra")
    common.add_argument("--given", help="conditioning algebra (default: trivial)")
    common.add_argument("--event", help="JSON event or list of events")
    common.add_argument("--event-2", dest="event2", help="second event tuple")
    common.add_argument("--partition", help="JSON list of events forming a partition")
    common.add_argument("--partition-2", dest="partition2", help="second partition")
    common.add_argument("-n", type=int, help="tower height, iterate count or sequence length")
    common.add_argument("-N", type=int, help="cycle period")
    common.add_argument("--eps", type=_rational, help="tolerance as p/q")
    common.add_argument("--precision", type=int, default=53, help="bits for logarithms")
    common.add_argument("--depth-budget", type=int, default=None,
                        help="refinement depth cap (default: $ERGOALG_DEPTH_BUDGET or 64)")
    common.add_argument("--format", choices=FORMATS, default=None, dest="output_format")
    common.add_argument("--seed", type=int, default=0,
                        help="search-order seed (constructions are deterministic)")
    helps = {
        "tower": "Rokhlin tower of height n with residual below eps",
        "witness": "aperiodicity witness for (n, eps)",
        "cycle-approx": "period-N cycle close to the map",
        "conjugate": "conjugacy of cycles or approximate conjugacy of aperiodic maps",
        "entropy": "conditional entropy H(A/C)",
        "h-seq": "Cesàro and conditional entropy sequences",
        "distance": "distance between maps or type distance of partitions",
        "independent": "independence over a finite algebra",
        "decompose": "split into periodic parts and aperiodic part",
        "product": "product of two systems",
        "cb": "canonical base of a tuple over an algebra",
    }
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        depth = args.depth_budget
        if depth is None:
            depth = Budget.from_env().refine_depth
        fmt = args.output_format or ("csv" if args.command in CSV_DEFAULT else "json")
        paths = {role: getattr(args, role) for role in INPUT_ROLES
                 if getattr(args, role) is not None}
        config = RunConfig(command=args.command, inputs=paths, output_format=fmt,
                           precision=args.precision, depth_budget=depth, eps=args.eps,
                           N=args.N, n=args.n, seed=args.seed)
        inputs = {role: ser.read_json(path) for role, path in paths.items()}
    except ParseError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    status, text = run(config, inputs)
    (sys.stdout if status == EXIT_OK else sys.stderr).write(text)
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
