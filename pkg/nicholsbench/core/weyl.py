"""Weyl-groupoid reflections and enumeration of positive roots."""
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Deque, Dict, List, Optional, Set, Tuple

from nicholsbench.core.braiding import (
    BraidingMatrix,
    MultiDegree,
    bicharacter,
    degree_sort_key,
    m_ij,
)
from nicholsbench.core.errors import InvalidOperandError, UndefinedCartanEntryError

logger = logging.getLogger(__name__)

DEFAULT_CAP = 500

FINITE = "finite"
DIVERGED = "diverged"
UNDEFINED_M = "undefined_m"

# a linear map Z^theta -> Z^theta, stored as the images of the simple roots
DegreeMap = Tuple[MultiDegree, ...]


def reflection_images(
    q: BraidingMatrix, i: int, constant_scan: int = 64
) -> DegreeMap:
    """Images s_i(alpha_1), ..., s_i(alpha_theta).

    Raises:
        UndefinedCartanEntryError: If some m_ij does not exist
    """
    theta = q.theta
    if not 1 <= i <= theta:
        raise InvalidOperandError(f"vertex {i} out of range 1..{theta}")
    images = []
    for j in range(1, theta + 1):
        image = [0] * theta
        if j == i:
            image[i - 1] = -1
        else:
            m = m_ij(q, i, j, constant_scan)
            if m is None:
                raise UndefinedCartanEntryError(i, j)
            image[j - 1] = 1
            image[i - 1] = m
        images.append(tuple(image))
    return tuple(images)


def reflect(q: BraidingMatrix, i: int, constant_scan: int = 64) -> BraidingMatrix:
    """The reflected braiding q'_jk = chi(s_i alpha_j, s_i alpha_k).

    Raises:
        UndefinedCartanEntryError: If some m_ij does not exist
    """
    return _transport(q, reflection_images(q, i, constant_scan))


def _transport(q: BraidingMatrix, images: DegreeMap) -> BraidingMatrix:
    return BraidingMatrix(
        q.field,
        tuple(tuple(bicharacter(q, a, b) for b in images) for a in images),
    )


def _apply(w: DegreeMap, a: MultiDegree) -> MultiDegree:
    theta = len(a)
    return tuple(sum(a[j] * w[j][k] for j in range(theta)) for k in range(theta))


def _compose(w: DegreeMap, s: DegreeMap) -> DegreeMap:
    """The map w o s."""
    return tuple(_apply(w, image) for image in s)


@dataclass
class RootSystemResult:
    """Outcome of a positive-root enumeration."""

    status: str
    cap: int
    roots: List[MultiDegree] = field(default_factory=list)
    witness: Optional[Tuple[int, int]] = None
    objects: int = 0
    states: int = 0

    @property
    def is_finite(self) -> bool:
        return self.status == FINITE

    def to_dict(self) -> Dict:
        return {
            "status": self.status,
            "cap": self.cap,
            "roots": [list(root) for root in self.roots],
            "count": len(self.roots),
            "witness": list(self.witness) if self.witness else None,
            "objects": self.objects,
            "states": self.states,
        }


class _ReflectionCache:
    """Reflections keyed by (Dynkin diagram, vertex); the diagram fixes the result's diagram."""

    def __init__(self, constant_scan: int):
        self.constant_scan = constant_scan
        self._cache: Dict[Tuple, Tuple[BraidingMatrix, DegreeMap]] = {}

    def get(self, q: BraidingMatrix, i: int) -> Tuple[BraidingMatrix, DegreeMap]:
        key = (q.diagram().key(), i)
        if key not in self._cache:
            images = reflection_images(q, i, self.constant_scan)
            self._cache[key] = (_transport(q, images), images)
        return self._cache[key]


def positive_roots(
    q: BraidingMatrix, cap: int = DEFAULT_CAP, constant_scan: int = 64
) -> RootSystemResult:
    """Breadth-first enumeration of the positive roots of q.

    States are pairs (object, w) where w sends degrees at the object to
    degrees at q. Every w(alpha_j) met is a root; the positive ones are
    collected. Enumeration stops with status "diverged" once the roots or
    objects exceed ``cap`` or the states exceed ``cap * theta``.

    Args:
        q: Braiding matrix
        cap: Enumeration cap, at least theta
        constant_scan: Bound for m_ij when a label is a constant of infinite order

    Returns:
        RootSystemResult with status finite, diverged or undefined_m
    """
    theta = q.theta
    if cap < theta:
        raise InvalidOperandError(f"cap {cap} is smaller than theta={theta}")
    identity: DegreeMap = tuple(
        tuple(1 if k == j else 0 for k in range(theta)) for j in range(theta)
    )
    cache = _ReflectionCache(constant_scan)
    roots: Set[MultiDegree] = set(identity)
    objects: Set[Tuple] = {q.diagram().key()}
    seen: Set[Tuple] = {(q.diagram().key(), identity)}
    frontier: Deque[Tuple[BraidingMatrix, DegreeMap]] = deque([(q, identity)])
    state_cap = cap * theta

    def result(status: str, witness: Optional[Tuple[int, int]] = None) -> RootSystemResult:
        return RootSystemResult(
            status=status,
            cap=cap,
            roots=sorted(roots, key=degree_sort_key) if status == FINITE else [],
            witness=witness,
            objects=len(objects),
            states=len(seen),
        )

    while frontier:
        current, w = frontier.popleft()
        for i in range(1, theta + 1):
            try:
                reflected, images = cache.get(current, i)
            except UndefinedCartanEntryError as exc:
                logger.info("Reflection blocked at m_%d%d", *exc.witness)
                return result(UNDEFINED_M, exc.witness)
            moved = _compose(w, images)
            key = (reflected.diagram().key(), moved)
            if key in seen:
                continue
            seen.add(key)
            objects.add(key[0])
            for image in moved:
                if all(x >= 0 for x in image):
                    roots.add(image)
            if len(roots) > cap or len(objects) > cap or len(seen) > state_cap:
                logger.warning(
                    "Root enumeration passed cap %d (%d roots, %d objects, %d states)",
                    cap,
                    len(roots),
                    len(objects),
                    len(seen),
                )
                return result(DIVERGED)
            frontier.append((reflected, moved))
    logger.debug("Root system closed with %d roots over %d objects", len(roots), len(objects))
    return result(FINITE)
