"""Expression trees of maps: inverses, compositions, conjugates, products."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ..config import Budget, resolve_budget
from ..errors import BudgetExceeded, CarrierMismatch, DomainError
from ..measure.carriers import CylinderCarrier, IntervalCarrier, ProductCarrier
from ..measure.rectangles import RectEvent
from .base import Transformation
from .iet import FiniteIET, compose as compose_iet
from .odometer import OdometerMap
from .shift import BernoulliShift


@dataclass(frozen=True)
class Inverse(Transformation):
    inner: Transformation

    @property
    def carrier(self):
        return self.inner.carrier

    def image(self, a):
        return self.inner.preimage(a)

    def preimage(self, a):
        return self.inner.image(a)

    def node_count(self) -> int:
        return 1 + self.inner.node_count()


@dataclass(frozen=True)
class Compose(Transformation):
    """``outer ∘ inner``: apply ``inner`` first."""

    outer: Transformation
    inner: Transformation

    def __post_init__(self):
        if self.outer.carrier != self.inner.carrier:
            raise CarrierMismatch("composition of maps on different carriers")

    @property
    def carrier(self):
        return self.inner.carrier

    def image(self, a):
        return self.outer.image(self.inner.image(a))

    def preimage(self, a):
        return self.inner.preimage(self.outer.preimage(a))

    def node_count(self) -> int:
        return 1 + self.outer.node_count() + self.inner.node_count()


@dataclass(frozen=True)
class Conjugate(Transformation):
    """``by⁻¹ ∘ inner ∘ by``."""

    inner: Transformation
    by: Transformation

    def __post_init__(self):
        if self.inner.carrier != self.by.carrier:
            raise CarrierMismatch("conjugation by a map on a different carrier")

    @property
    def carrier(self):
        return self.inner.carrier

    def image(self, a):
        return self.by.preimage(self.inner.image(self.by.image(a)))

    def preimage(self, a):
        return self.by.preimage(self.inner.preimage(self.by.image(a)))

    def node_count(self) -> int:
        return 1 + self.inner.node_count() + self.by.node_count()


@dataclass(frozen=True)
class ProductMap(Transformation):
    """``left × right`` acting on rectangle events."""

    left: Transformation
    right: Transformation

    def __post_init__(self):
        ProductCarrier(self.left.carrier, self.right.carrier)  # nesting check

    @property
    def carrier(self):
        return ProductCarrier(self.left.carrier, self.right.carrier)

    def image(self, a: RectEvent) -> RectEvent:
        self.check_event(a)
        return a.map_components(self.left.image, self.right.image)

    def preimage(self, a: RectEvent) -> RectEvent:
        self.check_event(a)
        return a.map_components(self.left.preimage, self.right.preimage)

    def node_count(self) -> int:
        return 1 + self.left.node_count() + self.right.node_count()


# ---------------------------------------------------------------------------
# Generic entry points


def ensure_size(T: Transformation, budget: Optional[Budget] = None) -> None:
    limit = resolve_budget(budget).symbolic_nodes
    if T.node_count() > limit:
        raise BudgetExceeded(f"map expression has {T.node_count()} nodes, budget is {limit}")


def inverse(T: Transformation) -> Transformation:
    if isinstance(T, FiniteIET):
        return T.inverse()
    if isinstance(T, BernoulliShift):
        return T.inverse()
    if isinstance(T, Inverse):
        return T.inner
    if isinstance(T, ProductMap):
        return ProductMap(inverse(T.left), inverse(T.right))
    return Inverse(T)


def map_event(T: Transformation, a, direction: str = "forward", budget: Optional[Budget] = None):
    """Exact image (``forward``) or preimage (``inverse``) of an event."""
    ensure_size(T, budget)
    T.check_event(a)
    if direction == "forward":
        return T.image(a)
    if direction == "inverse":
        return T.preimage(a)
    raise DomainError(f"direction must be 'forward' or 'inverse', got {direction!r}")


def iterate_image(T: Transformation, k: int, a, budget: Optional[Budget] = None):
    """``T^k(a)``; negative ``k`` iterates the inverse."""
    ensure_size(T, budget)
    T.check_event(a)
    if isinstance(T, BernoulliShift):
        return a.shifted(T.power * k)
    if isinstance(T, FiniteIET) and abs(k) > 4:
        return T.power(k).image(a)
    step = T.image if k >= 0 else T.preimage
    for _ in range(abs(k)):
        a = step(a)
    return a


def orbit(T: Transformation, a, n: int) -> list:
    """``[a, T a, ..., T^{n-1} a]``."""
    out = [a]
    for _ in range(n - 1):
        out.append(T.image(out[-1]))
    return out


def reduce_to_iet(T: Transformation) -> Optional[FiniteIET]:
    """The map as a single IET when its tree only involves IETs."""
    if isinstance(T, FiniteIET):
        return T
    if isinstance(T, Inverse):
        inner = reduce_to_iet(T.inner)
        return None if inner is None else inner.inverse()
    if isinstance(T, Compose):
        outer, inner = reduce_to_iet(T.outer), reduce_to_iet(T.inner)
        if outer is None or inner is None:
            return None
        return compose_iet(outer, inner)
    if isinstance(T, Conjugate):
        inner, by = reduce_to_iet(T.inner), reduce_to_iet(T.by)
        if inner is None or by is None:
            return None
        return compose_iet(by.inverse(), compose_iet(inner, by))
    return None


def shift_power(T: Transformation) -> Optional[int]:
    """Normal form of a map on a cylinder carrier as a power of the shift."""
    if isinstance(T, BernoulliShift):
        return T.power
    if isinstance(T, Inverse):
        k = shift_power(T.inner)
        return None if k is None else -k
    if isinstance(T, Compose):
        a, b = shift_power(T.outer), shift_power(T.inner)
        return None if a is None or b is None else a + b
    if isinstance(T, Conjugate):
        a, b = shift_power(T.inner), shift_power(T.by)
        return None if a is None or b is None else a
    return None


def split_product(T: Transformation) -> Optional[tuple[Transformation, Transformation]]:
    """Factor a map on a product carrier into its two components."""
    if isinstance(T, ProductMap):
        return T.left, T.right
    if isinstance(T, Inverse):
        s = split_product(T.inner)
        return None if s is None else (inverse(s[0]), inverse(s[1]))
    if isinstance(T, Compose):
        a, b = split_product(T.outer), split_product(T.inner)
        if a is None or b is None:
            return None
        return Compose(a[0], b[0]), Compose(a[1], b[1])
    if isinstance(T, Conjugate):
        a, b = split_product(T.inner), split_product(T.by)
        if a is None or b is None:
            return None
        return Conjugate(a[0], b[0]), Conjugate(a[1], b[1])
    return None


def is_certified_aperiodic(T: Transformation) -> bool:
    """Whether aperiodicity follows from the map's structure alone.

    Odometers and non-trivial shift powers are aperiodic; inverses and
    conjugates of aperiodic maps are aperiodic, and so is a product with an
    aperiodic factor.
    """
    if isinstance(T, OdometerMap):
        return True
    if isinstance(T.carrier, CylinderCarrier):
        k = shift_power(T)
        return k is not None and k != 0
    if isinstance(T, Inverse):
        return is_certified_aperiodic(T.inner)
    if isinstance(T, Conjugate):
        return is_certified_aperiodic(T.inner)
    if isinstance(T.carrier, ProductCarrier):
        s = split_product(T)
        return s is not None and (is_certified_aperiodic(s[0]) or is_certified_aperiodic(s[1]))
    return False


def fixed_set(T: Transformation, i: int):
    """Exact event ``{x : T^i x = x}``.

    IET trees are reduced and evaluated exactly; structurally aperiodic maps
    have a null fixed set.
    """
    if i < 1:
        raise DomainError("fixed_set needs a positive exponent")
    if isinstance(T.carrier, IntervalCarrier):
        iet = reduce_to_iet(T)
        if iet is not None:
            return iet.fixed_set(i)
    if is_certified_aperiodic(T):
        return T.carrier.empty()
    raise DomainError("cannot reduce this map to an IET or certify it aperiodic")
