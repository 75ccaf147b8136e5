"""Events of a Bernoulli shift space, backed by decision diagrams.

A :class:`CylinderEvent` is a finite union of cylinder sets. Internally it
is an ``(offset, node)`` pair: ``node`` is the root of a reduced diagram
and ``offset`` is the coordinate its root tests. The coordinate window is
therefore minimal by construction: the first and last coordinates it spans
are ones the event actually depends on.
"""
from __future__ import annotations

import string
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Union

from ..errors import CarrierMismatch, DomainError
from . import diagram as dd
from .carriers import CylinderCarrier

SYMBOLS = string.digits + string.ascii_lowercase

Word = Union[str, Sequence[int]]


def _parse_word(word: Word, width: int, alphabet: int) -> tuple[int, ...]:
    if isinstance(word, str):
        try:
            syms = tuple(SYMBOLS.index(ch) for ch in word)
        except ValueError:
            raise DomainError(f"word {word!r} uses symbols outside {SYMBOLS[:alphabet]!r}")
    else:
        syms = tuple(int(s) for s in word)
    if len(syms) != width:
        raise DomainError(f"word {word!r} has length {len(syms)}, window needs {width}")
    if any(not 0 <= s < alphabet for s in syms):
        raise DomainError(f"word {word!r} uses symbols outside the alphabet")
    return syms


@dataclass(frozen=True, eq=True)
class CylinderEvent:
    carrier: CylinderCarrier
    offset: int
    node: dd.Node

    def __post_init__(self):
        if self.node.edges is None and self.offset != 0:
            object.__setattr__(self, "offset", 0)
        if self.node.edges is not None and len(self.node.edges) != self.carrier.alphabet_size:
            raise DomainError("diagram arity does not match the alphabet")

    # -- construction -------------------------------------------------
    @classmethod
    def full(cls, carrier: CylinderCarrier) -> "CylinderEvent":
        return cls(carrier, 0, dd.TRUE)

    @classmethod
    def empty(cls, carrier: CylinderCarrier) -> "CylinderEvent":
        return cls(carrier, 0, dd.FALSE)

    @classmethod
    def from_ref(cls, carrier: CylinderCarrier, ref: dd.Ref) -> "CylinderEvent":
        pos, node = ref
        return cls(carrier, pos if node.edges is not None else 0, node)

    @classmethod
    def from_words(cls, carrier: CylinderCarrier, window: tuple[int, int],
                   words: Iterable[Word]) -> "CylinderEvent":
        """Union of the cylinders ``[x_lo..x_hi = w]`` for ``w`` in ``words``."""
        lo, hi = (int(w) for w in window)
        width = hi - lo + 1
        if width < 0:
            raise DomainError(f"bad window {window!r}")
        parsed = [_parse_word(w, width, carrier.alphabet_size) for w in words]
        if width == 0:
            return cls.full(carrier) if parsed else cls.empty(carrier)
        rel, node = dd.from_words(parsed, width, carrier.alphabet_size)
        return cls.from_ref(carrier, (lo + rel, node))

    @classmethod
    def from_pattern(cls, carrier: CylinderCarrier, pattern: Mapping[int, int]) -> "CylinderEvent":
        """The cylinder fixing ``x_k = pattern[k]`` for every listed coordinate."""
        if not pattern:
            return cls.full(carrier)
        lo, hi = min(pattern), max(pattern)
        fixed = {k - lo: s for k, s in pattern.items()}

        def step(state, pos, sym):
            want = fixed.get(pos)
            if want is not None and want != sym:
                return False
            return state

        ref = dd.from_automaton(0, hi - lo + 1, carrier.alphabet_size, step, lambda s: True)
        return cls.from_ref(carrier, (lo + ref[0], ref[1]))

    # -- queries --------------------------------------------------------
    @property
    def is_empty(self) -> bool:
        return self.node is dd.FALSE

    @property
    def is_full(self) -> bool:
        return self.node is dd.TRUE

    @property
    def window(self) -> Optional[tuple[int, int]]:
        if self.node.edges is None:
            return None
        return self.offset, self.offset + dd.depth(self.node)

    def words(self) -> list[str]:
        """Accepted words over :attr:`window`, as symbol strings."""
        if self.node.edges is None:
            return [""] if self.is_full else []
        lo, hi = self.window
        syms = dd.words(self.node, hi - lo + 1, self.carrier.alphabet_size)
        return sorted("".join(SYMBOLS[s] for s in w) for w in syms)

    def measure(self) -> Fraction:
        return dd.measure(self.node, self.carrier.probs)

    def contains(self, point: Mapping[int, int]) -> bool:
        """Membership of a sequence given as a mapping coordinate -> symbol."""
        return dd.evaluate(self.node, lambda k: point[self.offset + k])

    def diagram_size(self) -> int:
        return dd.size(self.node)

    def key(self):
        window = self.window
        if window is None or window[1] - window[0] < 12:
            return ("cylinder", window or (0, -1), tuple(self.words()))
        return ("cylinder", window, self.node.uid)

    # -- boolean algebra ----------------------------------------------
    def _combine(self, other, op: str) -> "CylinderEvent":
        if not isinstance(other, CylinderEvent) or other.carrier != self.carrier:
            raise CarrierMismatch(f"cylinder event vs {getattr(other, 'carrier', other)}")
        ref = dd.apply(op, (self.offset, self.node), (other.offset, other.node))
        return CylinderEvent.from_ref(self.carrier, ref)

    def __and__(self, other):
        return self._combine(other, "and")

    def __or__(self, other):
        return self._combine(other, "or")

    def __xor__(self, other):
        return self._combine(other, "xor")

    def __sub__(self, other):
        return self._combine(other, "diff")

    def __invert__(self):
        return CylinderEvent(self.carrier, self.offset, dd.negate(self.node))

    def shifted(self, k: int) -> "CylinderEvent":
        """Translate every coordinate by ``k``."""
        if self.node.edges is None:
            return self
        return CylinderEvent(self.carrier, self.offset + k, self.node)

    def __repr__(self):
        if self.node.edges is None:
            return f"CylinderEvent({'X' if self.is_full else '∅'})"
        lo, hi = self.window
        if hi - lo < 8:
            return f"CylinderEvent([{lo},{hi}]: {','.join(self.words())})"
        return f"CylinderEvent([{lo},{hi}]: {self.diagram_size()} nodes)"
