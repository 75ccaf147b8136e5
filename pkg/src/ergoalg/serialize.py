"""JSON encoding of rationals, events, maps, algebras and results.

Rationals are always written as ``"p/q"`` strings. Every ``dump_*`` has a
matching ``load_*`` and the pair round-trips to a structurally equal value.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .errors import DomainError, ParseError
from .measure import diagram as dd
from .measure.algebra import FiniteAlgebra
from .measure.carriers import INTERVAL, Carrier, CylinderCarrier, IntervalCarrier, ProductCarrier
from .measure.cylinders import CylinderEvent
from .measure.intervals import IntervalEvent
from .measure.rectangles import RectEvent
from .transformations.base import Enclosure, System, Transformation
from .transformations.iet import FiniteIET
from .transformations.odometer import OdometerMap
from .transformations.shift import BernoulliShift
from .transformations.symbolic import Compose, Conjugate, Inverse, ProductMap

# Cylinder events over wider windows, or with more words, use the diagram form.
WORDS_MAX_WIDTH = 12
WORDS_MAX_COUNT = 4096


# ---------------------------------------------------------------------------
# Rationals


def dump_rational(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def load_rational(raw) -> Fraction:
    if isinstance(raw, bool) or isinstance(raw, float):
        raise ParseError(f"rationals must be 'p/q' strings or integers, got {raw!r}")
    if isinstance(raw, int):
        return Fraction(raw)
    if not isinstance(raw, str):
        raise ParseError(f"expected a rational string, got {raw!r}")
    text = raw.strip()
    if "." in text or "e" in text.lower():
        raise ParseError(f"rationals must be exact 'p/q' strings, got {raw!r}")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {raw!r}") from exc


def _int(raw, what: str) -> int:
    if isinstance(raw, bool) or not isinstance(raw, int):
        raise ParseError(f"{what} must be an integer, got {raw!r}")
    return raw


def _obj(raw, what: str) -> dict:
    if not isinstance(raw, dict):
        raise ParseError(f"{what} must be a JSON object, got {type(raw).__name__}")
    return raw


def _list(raw, what: str) -> list:
    if not isinstance(raw, list):
        raise ParseError(f"{what} must be a JSON array, got {type(raw).__name__}")
    return raw


def _wrap(fn, raw, what: str):
    """Run a loader, reporting invalid content as a parse error."""
    try:
        return fn(raw)
    except ParseError:
        raise
    except (DomainError, KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"invalid {what}: {exc}") from exc


# ---------------------------------------------------------------------------
# Carriers


def dump_carrier(c: Carrier) -> dict:
    if isinstance(c, IntervalCarrier):
        return {"kind": "interval"}
    if isinstance(c, CylinderCarrier):
        return {"kind": "cylinder", "probs": [dump_rational(p) for p in c.probs]}
    if isinstance(c, ProductCarrier):
        return {"kind": "product", "factors": [dump_carrier(c.left), dump_carrier(c.right)]}
    raise DomainError(f"cannot serialize carrier {c!r}")


def load_carrier(raw) -> Carrier:
    if raw == "interval":
        return INTERVAL
    raw = _obj(raw, "carrier")
    kind = raw.get("kind")
    if kind == "interval":
        return INTERVAL
    if kind == "cylinder":
        probs = tuple(load_rational(p) for p in _list(raw.get("probs"), "probs"))
        return _wrap(CylinderCarrier, probs, "cylinder carrier")
    if kind == "product":
        left, right = _list(raw.get("factors"), "factors")
        return _wrap(lambda lr: ProductCarrier(*lr),
                     (load_carrier(left), load_carrier(right)), "product carrier")
    raise ParseError(f"unknown carrier kind {kind!r}")


# ---------------------------------------------------------------------------
# Events


def _dump_dag(node: dd.Node) -> dict:
    index: dict[int, int] = {}
    nodes: list = []

    def ref(n: dd.Node):
        if n is dd.TRUE:
            return "T"
        if n is dd.FALSE:
            return "F"
        if n.uid not in index:
            edges = [[s, ref(c)] for s, c in n.edges]
            index[n.uid] = len(nodes)
            nodes.append(edges)
        return index[n.uid]

    root = ref(node)
    return {"nodes": nodes, "root": root}


def _load_dag(raw: dict, alphabet: int) -> dd.Node:
    built: list[dd.Node] = []
    for edges in _list(raw.get("nodes"), "dag nodes"):
        kids = []
        for s, r in _list(edges, "dag edges"):
            kids.append((_int(s, "skip"), _dag_ref(r, built)))
        if len(kids) != alphabet:
            raise ParseError("dag node arity does not match the alphabet")
        shift, node = dd.mk(tuple(kids))
        if shift != 0 or node.edges is None:
            raise ParseError("dag is not reduced")
        built.append(node)
    return _dag_ref(raw.get("root"), built)


def _dag_ref(r, built):
    if r == "T":
        return dd.TRUE
    if r == "F":
        return dd.FALSE
    r = _int(r, "dag reference")
    if not 0 <= r < len(built):
        raise ParseError("dag reference points forward or out of range")
    return built[r]


def dump_event(e) -> dict:
    if isinstance(e, IntervalEvent):
        return {"carrier": "interval",
                "intervals": [[dump_rational(lo), dump_rational(hi)] for lo, hi in e.intervals]}
    if isinstance(e, CylinderEvent):
        out: dict[str, Any] = {"carrier": "cylinder",
                               "probs": [dump_rational(p) for p in e.carrier.probs]}
        window = e.window
        if window is None:
            out["window"] = [0, -1]
            out["words"] = [""] if e.is_full else []
            return out
        width = window[1] - window[0] + 1
        count = None
        if width <= WORDS_MAX_WIDTH:
            count = len(e.words())
        if count is not None and count <= WORDS_MAX_COUNT:
            out["window"] = list(window)
            out["words"] = e.words()
        else:
            out["offset"] = e.offset
            out["dag"] = _dump_dag(e.node)
        return out
    if isinstance(e, RectEvent):
        return {"carrier": "product",
                "factors": [dump_carrier(e.carrier.left), dump_carrier(e.carrier.right)],
                "rectangles": [[dump_event(l), dump_event(r)] for l, r in e.sorted_rectangles()]}
    raise DomainError(f"cannot serialize event {e!r}")


def load_event(raw, carrier: Carrier | None = None):
    raw = _obj(raw, "event")
    kind = raw.get("carrier")
    if kind == "interval":
        pairs = [(load_rational(lo), load_rational(hi))
                 for lo, hi in (_list(p, "interval") for p in _list(raw.get("intervals"), "intervals"))]
        out = _wrap(IntervalEvent.from_intervals, pairs, "interval event")
    elif kind == "cylinder":
        probs = tuple(load_rational(p) for p in _list(raw.get("probs"), "probs"))
        space = _wrap(CylinderCarrier, probs, "cylinder carrier")
        if "dag" in raw:
            node = _load_dag(_obj(raw["dag"], "dag"), space.alphabet_size)
            offset = _int(raw.get("offset", 0), "offset")
            out = _wrap(lambda n: CylinderEvent.from_ref(space, (offset, n)), node, "cylinder event")
        else:
            window = _list(raw.get("window"), "window")
            if len(window) != 2:
                raise ParseError("window must be [lo, hi]")
            lo, hi = (_int(w, "window bound") for w in window)
            words = _list(raw.get("words"), "words")
            out = _wrap(lambda w: CylinderEvent.from_words(space, (lo, hi), w), words,
                        "cylinder event")
    elif kind == "product":
        left, right = _list(raw.get("factors"), "factors")
        space = _wrap(lambda lr: ProductCarrier(*lr),
                      (load_carrier(left), load_carrier(right)), "product carrier")
        rects = [(load_event(l), load_event(r))
                 for l, r in (_list(x, "rectangle") for x in _list(raw.get("rectangles"), "rectangles"))]
        out = _wrap(lambda rs: RectEvent.from_rectangles(space, rs), rects, "product event")
    else:
        raise ParseError(f"unknown event carrier {kind!r}")
    if carrier is not None and out.carrier != carrier:
        raise ParseError("event carrier does not match the expected carrier")
    return out


# ---------------------------------------------------------------------------
# Algebras


def dump_algebra(A: FiniteAlgebra) -> dict:
    return {"atoms": [dump_event(a) for a in A.atoms]}


def load_algebra(raw) -> FiniteAlgebra:
    """An algebra from its atoms; ``{"generators": [...]}`` builds the generated algebra."""
    if isinstance(raw, list):
        raw = {"atoms": raw}
    raw = _obj(raw, "algebra")
    if "generators" in raw:
        from .measure.algebra import generated_algebra
        events = [load_event(e) for e in _list(raw["generators"], "generators")]
        if not events:
            carrier = load_carrier(raw.get("carrier", "interval"))
            return FiniteAlgebra.trivial(carrier)
        return _wrap(generated_algebra, events, "algebra")
    atoms = [load_event(e) for e in _list(raw.get("atoms"), "atoms")]
    return _wrap(lambda xs: FiniteAlgebra(tuple(xs)), atoms, "algebra")


# ---------------------------------------------------------------------------
# Transformations


def dump_map(T: Transformation) -> dict:
    if isinstance(T, OdometerMap):
        return {"odometer": {"base": T.base}}
    if isinstance(T, FiniteIET):
        return {"iet": {"pieces": [[[dump_rational(lo), dump_rational(hi)], dump_rational(c)]
                                   for lo, hi, c in T.pieces]}}
    if isinstance(T, BernoulliShift):
        return {"bernoulli": {"probs": [dump_rational(p) for p in T.probs], "power": T.power}}
    if isinstance(T, Inverse):
        return {"inverse": dump_map(T.inner)}
    if isinstance(T, Compose):
        return {"compose": {"outer": dump_map(T.outer), "inner": dump_map(T.inner)}}
    if isinstance(T, Conjugate):
        return {"conjugate": {"inner": dump_map(T.inner), "by": dump_map(T.by)}}
    if isinstance(T, ProductMap):
        return {"product": {"left": dump_map(T.left), "right": dump_map(T.right)}}
    raise DomainError(f"cannot serialize map {type(T).__name__}")


def _load_piece(raw) -> tuple:
    """``[[lo, hi], offset]``, or the flat ``[lo, hi, offset]``."""
    raw = _list(raw, "piece")
    if len(raw) == 2:
        src = _list(raw[0], "piece source")
        if len(src) != 2:
            raise ParseError("an IET piece source is [lo, hi]")
        raw = [src[0], src[1], raw[1]]
    if len(raw) != 3:
        raise ParseError("IET pieces are [[lo, hi], offset]")
    return tuple(load_rational(x) for x in raw)


def load_map(raw) -> Transformation:
    raw = _obj(raw, "map")
    if len(raw) != 1:
        raise ParseError(f"a map has exactly one kind key, got {sorted(raw)}")
    (kind, body), = raw.items()
    if kind == "odometer":
        base = _int(_obj(body, "odometer").get("base", 2), "base")
        return _wrap(OdometerMap, base, "odometer")
    if kind == "iet":
        pieces = [_load_piece(p) for p in _list(_obj(body, "iet").get("pieces"), "pieces")]
        return _wrap(lambda ps: FiniteIET(tuple(ps)), pieces, "IET")
    if kind == "rotation":
        return _wrap(FiniteIET.rotation, load_rational(body), "rotation")
    if kind == "identity":
        return FiniteIET.identity()
    if kind == "bernoulli":
        body = _obj(body, "bernoulli")
        probs = [load_rational(p) for p in _list(body.get("probs"), "probs")]
        power = _int(body.get("power", 1), "power")
        return _wrap(lambda ps: BernoulliShift.on(ps, power), probs, "Bernoulli shift")
    if kind == "inverse":
        return _wrap(Inverse, load_map(body), "inverse")
    if kind == "compose":
        body = _obj(body, "compose")
        return _wrap(lambda oi: Compose(*oi), (load_map(body.get("outer")),
                                              load_map(body.get("inner"))), "composition")
    if kind == "conjugate":
        body = _obj(body, "conjugate")
        inner = body.get("inner", body.get("map"))
        return _wrap(lambda mb: Conjugate(*mb), (load_map(inner),
                                                load_map(body.get("by"))), "conjugate")
    if kind == "product":
        body = _obj(body, "product")
        return _wrap(lambda lr: ProductMap(*lr), (load_map(body.get("left")),
                                                 load_map(body.get("right"))), "product")
    raise ParseError(f"unknown map kind {kind!r}")


def dump_system(S: System | Transformation) -> dict:
    T = S.transformation if isinstance(S, System) else S
    return {"carrier": dump_carrier(T.carrier), "transformation": dump_map(T)}


def load_system(raw) -> System:
    """A system file: ``{"transformation": map}`` or a bare map object."""
    raw = _obj(raw, "system")
    if "transformation" in raw:
        T = load_map(raw["transformation"])
        if "carrier" in raw and load_carrier(raw["carrier"]) != T.carrier:
            raise ParseError("declared carrier does not match the map")
    else:
        T = load_map(raw)
    return System(T)


# ---------------------------------------------------------------------------
# Results


def dump_enclosure(e: Enclosure) -> dict:
    return {"lo": dump_rational(e.lo), "hi": dump_rational(e.hi)}


def load_enclosure(raw) -> Enclosure:
    raw = _obj(raw, "enclosure")
    return _wrap(lambda r: Enclosure(load_rational(r["lo"]), load_rational(r["hi"])), raw,
                 "enclosure")


def dump_tower(t) -> dict:
    return {"height": t.height, "base": dump_event(t.base),
            "levels": [dump_event(l) for l in t.levels], "residual": dump_rational(t.residual)}


def load_tower(raw):
    from .towers.rokhlin import Tower
    raw = _obj(raw, "tower")
    levels = tuple(load_event(e) for e in _list(raw.get("levels"), "levels"))
    return _wrap(lambda r: Tower(load_event(r["base"]), _int(r["height"], "height"), levels,
                                 load_rational(r["residual"])), raw, "tower")


def dump_certificate(c) -> dict:
    return {"cycle": dump_map(c.cycle), "period": c.period, "base": dump_event(c.base),
            "bound": dump_rational(c.bound)}


def load_certificate(raw):
    from .towers.cycles import CycleCertificate
    raw = _obj(raw, "certificate")
    return _wrap(lambda r: CycleCertificate(load_map(r["cycle"]), _int(r["period"], "period"),
                                            load_event(r["base"]), load_rational(r["bound"])),
                 raw, "certificate")


def dump_step_function(g) -> dict:
    return {"atoms": [dump_event(a) for a in g.algebra.atoms],
            "values": [dump_rational(v) for v in g.values]}


def load_step_function(raw):
    from .conditioning import StepFunction
    raw = _obj(raw, "step function")
    algebra = load_algebra({"atoms": raw.get("atoms")})
    values = tuple(load_rational(v) for v in _list(raw.get("values"), "values"))
    return _wrap(lambda v: StepFunction(algebra, v), values, "step function")


def dump_type_datum(t) -> dict:
    return {sig: dump_step_function(g) for sig, g in t.table}


def load_type_datum(raw):
    from .conditioning import TypeDatum
    raw = _obj(raw, "type datum")
    table = tuple((sig, load_step_function(g)) for sig, g in raw.items())
    if not table:
        raise ParseError("empty type datum")
    return _wrap(lambda t: TypeDatum(t[0][1].algebra, t), table, "type datum")


def dump_entropy(h) -> dict:
    return {"value": h.decimal(), "precision": h.precision,
            "exact_probs": [dump_rational(j) for j in h.exact_probs],
            "cells": [[dump_rational(j), dump_rational(g)] for j, g in h.cells]}


def dump_decomposition(d) -> dict:
    return {"periodic_parts": {str(i): dump_event(z) for i, z in sorted(d.periodic_parts.items())},
            "aperiodic_part": dump_event(d.aperiodic_part)}


def load_decomposition(raw):
    from .towers.periodic import Decomposition
    raw = _obj(raw, "decomposition")
    parts = {int(k): load_event(v) for k, v in _obj(raw.get("periodic_parts"), "parts").items()}
    return Decomposition(parts, load_event(raw.get("aperiodic_part")))


# ---------------------------------------------------------------------------
# Files


def read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}") from exc


def to_json(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True)
