"""The five exceptional rank-3 braidings with eminent pre-Nichols algebras.

Each factory returns a fully instantiated CatalogEntry. Braidings use the
representative q_ij = (edge label) for i < j and q_ji = 1, so the relation
scalars q(i,j) refer to that matrix.
"""
import logging
import re
from typing import Callable, Dict, List, Optional

from nicholsbench.catalog.entry import CatalogEntry, EntryConfig
from nicholsbench.core.braiding import (
    D21A_FIRST,
    D21A_SECOND,
    D21A_TRIANGLE,
    SUPER_A_J2,
    SUPER_A_J123,
    BraidingMatrix,
)
from nicholsbench.core.coeff import bind_scalars, ground_field
from nicholsbench.core.errors import CatalogError, InvalidOperandError

logger = logging.getLogger(__name__)

DEFAULT_M = 3
DEFAULT_L = 2
GKDIM = 3

CHAIN_RELATIONS = ["x(2)^2", "x(1,3)", "x(1,1,2)", "x(3,3,2)"]
X_12_23 = "[x(1,2,3), x(2)]"

CHAIN_SERIES = (
    "(1+t1*t2)*(1+t1*t2*t3)*(1+t2)*(1+t2*t3)",
    "(1-t1)*(1-t1*t2^2*t3)*(1-t3)",
)
ALL_MINUS_ONE_SERIES = (
    "(1+t1)*(1+t2)*(1+t3)*(1+t1*t2*t3)",
    "(1-t1*t2)*(1-t1*t3)*(1-t2*t3)",
)


_NAME = re.compile(r"(?<![A-Za-z0-9_])[A-Za-z_][A-Za-z0-9_]*(?![A-Za-z0-9_]|\s*\()")


def _rename(text: str, renames: Dict[str, str]) -> str:
    if not renames:
        return text
    return _NAME.sub(lambda m: renames.get(m.group(0), m.group(0)), text)


def _entry(
    config: EntryConfig,
    params: Dict[str, str],
    vertices: List[str],
    edges: Dict,
    relations: List[str],
) -> CatalogEntry:
    """Build the braiding and add the eminent relations.

    Parameter values write the transcendental as ``{t}``. A parameter named
    like the transcendental gets a trailing underscore, in every text.
    """
    name = config.transcendental
    renames: Dict[str, str] = {}
    if name in params:
        fresh = name + "_"
        while fresh in params:
            fresh += "_"
        renames[name] = fresh
        logger.debug("Parameter %s of %s renamed to %s", name, config.tag, fresh)
    texts = {
        renames.get(param, param): _rename(text, renames).format(t=name)
        for param, text in params.items()
    }
    field = ground_field(config.M, name)
    try:
        values = bind_scalars(field, texts)
        braiding = BraidingMatrix.from_diagram(
            field,
            [field.parse(_rename(text, renames), values) for text in vertices],
            {pair: field.parse(_rename(text, renames), values) for pair, text in edges.items()},
        )
    except InvalidOperandError as exc:
        raise CatalogError(f"cannot build {config.tag}: {exc}") from exc
    entry = CatalogEntry(config, braiding, texts)
    for relation in relations:
        entry.add_relation(_rename(relation, renames))
    return entry


def _add_chain_pbw(entry: CatalogEntry) -> CatalogEntry:
    return (
        entry.add_pbw_generator("x(3)")
        .add_pbw_generator("x(2,3)", 1)
        .add_pbw_generator("x(2)", 1)
        .add_pbw_generator(X_12_23)
        .add_pbw_generator("x(1,2,3)", 1)
        .add_pbw_generator("x(1,2)", 1)
        .add_pbw_generator("x(1)")
    )


def create_superA3_j2(transcendental: str = "t") -> CatalogEntry:
    """Super type A(2|1) with one odd vertex in the middle.

    Diagram: q --q^-1-- (-1) --q-- q^-1 with q = t.

    Returns:
        CatalogEntry for SuperA3-J2
    """
    config = EntryConfig(
        tag=SUPER_A_J2,
        description="Super type A, odd middle vertex, generic parameter",
        transcendental=transcendental,
        gkdim=GKDIM,
    )
    entry = _entry(
        config,
        {"q": "{t}"},
        ["q", "-1", "1/q"],
        {(1, 2): "1/q", (2, 3): "q"},
        CHAIN_RELATIONS,
    )
    entry.set_central(X_12_23)
    _add_chain_pbw(entry)
    return entry.set_series(*CHAIN_SERIES)


def create_superA3_j123(transcendental: str = "t") -> CatalogEntry:
    """Super type A with all three vertices odd.

    Diagram: (-1) --q-- (-1) --q^-1-- (-1) with q = t. The central element is
    x_13: x_213 is already an eminent relation.
    """
    config = EntryConfig(
        tag=SUPER_A_J123,
        description="Super type A, all vertices odd, generic parameter",
        transcendental=transcendental,
        gkdim=GKDIM,
    )
    entry = _entry(
        config,
        {"q": "{t}"},
        ["-1", "-1", "-1"],
        {(1, 2): "q", (2, 3): "1/q"},
        ["x(1)^2", "x(2)^2", "x(3)^2", "x(2,1,3)", X_12_23],
    )
    entry.set_central("x(1,3)")
    (
        entry.add_pbw_generator("x(3)", 1)
        .add_pbw_generator("x(2,3)")
        .add_pbw_generator("x(2)", 1)
        .add_pbw_generator("x(1,3)")
        .add_pbw_generator("x(1,2,3)", 1)
        .add_pbw_generator("x(1,2)")
        .add_pbw_generator("x(1)", 1)
    )
    return entry.set_series(*ALL_MINUS_ONE_SERIES)


def _check_order(name: str, value: int, least: int):
    if not isinstance(value, int) or value < least:
        raise CatalogError(f"{name} must be an integer >= {least}, got {value!r}")


def create_d21a_first(M: int = DEFAULT_M, transcendental: str = "t") -> CatalogEntry:
    """D(2|1; alpha) chain with q a primitive M-th root of unity.

    Diagram: q --q^-1-- (-1) --r^-1-- r with q = zeta_M and r = t.
    """
    _check_order("M", M, 3)
    config = EntryConfig(
        tag=D21A_FIRST,
        description="D(2|1;alpha) chain, q a root of unity, r and s generic",
        M=M,
        transcendental=transcendental,
        gkdim=GKDIM,
    )
    entry = _entry(
        config,
        {"q": "z", "r": "{t}"},
        ["q", "-1", "r"],
        {(1, 2): "1/q", (2, 3): "1/r"},
        CHAIN_RELATIONS,
    )
    entry.set_central(f"x(1)^{M}")
    _add_chain_pbw(entry)
    return entry.set_series(*CHAIN_SERIES)


def create_d21a_second(L: int = DEFAULT_L, transcendental: str = "t") -> CatalogEntry:
    """D(2|1; alpha) chain with s = (qr)^-1 a primitive L-th root of unity.

    Diagram: q --q^-1-- (-1) --r^-1-- r with q = t, s = zeta_L and
    r = (qs)^-1. The field is Q(zeta_L)(t).
    """
    _check_order("L", L, 2)
    config = EntryConfig(
        tag=D21A_SECOND,
        description="D(2|1;alpha) chain, s a root of unity, q and r generic",
        M=L,
        L=L,
        transcendental=transcendental,
        gkdim=GKDIM,
    )
    entry = _entry(
        config,
        {"q": "{t}", "s": "z", "r": "1/(q*s)"},
        ["q", "-1", "r"],
        {(1, 2): "1/q", (2, 3): "1/r"},
        CHAIN_RELATIONS,
    )
    entry.set_central(f"({X_12_23})^{L}")
    _add_chain_pbw(entry)
    return entry.set_series(*CHAIN_SERIES)


def create_d21a_triangle(M: int = DEFAULT_M, transcendental: str = "t") -> CatalogEntry:
    """D(2|1; alpha) triangle: three odd vertices, edges q, r, s with qrs = 1.

    q = zeta_M labels the edge 1-2, r = t the edge 1-3 and s = (qr)^-1 the
    edge 2-3.
    """
    _check_order("M", M, 3)
    config = EntryConfig(
        tag=D21A_TRIANGLE,
        description="D(2|1;alpha) triangle, q a root of unity, r and s generic",
        M=M,
        transcendental=transcendental,
        gkdim=GKDIM,
    )
    entry = _entry(
        config,
        {"q": "z", "r": "{t}", "s": "1/(q*r)"},
        ["-1", "-1", "-1"],
        {(1, 2): "q", (1, 3): "r", (2, 3): "s"},
        [
            "x(1)^2",
            "x(2)^2",
            "x(3)^2",
            "x(1,2,3) - q(1,2)*(1-s)*x(2)x(1,3) - ((1-s)/(q(3,2)*(1-r)))*[x(1,3), x(2)]",
        ],
    )
    entry.set_central(f"x(1,2)^{M}")
    (
        entry.add_pbw_generator("x(3)", 1)
        .add_pbw_generator("x(2,3)")
        .add_pbw_generator("x(2)", 1)
        .add_pbw_generator("x(1,2,3)", 1)
        .add_pbw_generator("x(1,3)")
        .add_pbw_generator("x(1,2)")
        .add_pbw_generator("x(1)", 1)
    )
    return entry.set_series(*ALL_MINUS_ONE_SERIES)


_FACTORIES: Dict[str, Callable[..., CatalogEntry]] = {
    SUPER_A_J2: create_superA3_j2,
    SUPER_A_J123: create_superA3_j123,
    D21A_FIRST: create_d21a_first,
    D21A_SECOND: create_d21a_second,
    D21A_TRIANGLE: create_d21a_triangle,
}


def available_tags() -> List[str]:
    return list(_FACTORIES)


def entry(
    tag: str,
    M: Optional[int] = None,
    L: Optional[int] = None,
    transcendental: Optional[str] = None,
) -> CatalogEntry:
    """Instantiate a catalog entry by tag.

    Args:
        tag: One of :func:`available_tags`
        M: Root-of-unity order for D21a-4.1 and D21a-4.3
        L: Root-of-unity order for D21a-4.2
        transcendental: Name of the transcendental (default "t")

    Raises:
        CatalogError: For unknown tags or invalid M or L
    """
    if tag not in _FACTORIES:
        raise CatalogError(f"unknown catalog tag '{tag}'; available: {', '.join(_FACTORIES)}")
    kwargs: Dict = {"transcendental": transcendental or "t"}
    if tag in (D21A_FIRST, D21A_TRIANGLE):
        kwargs["M"] = DEFAULT_M if M is None else M
    elif tag == D21A_SECOND:
        kwargs["L"] = DEFAULT_L if L is None else L
    elif M is not None or L is not None:
        logger.debug("Ignoring M/L for %s", tag)
    logger.debug("Building catalog entry %s with %s", tag, kwargs)
    return _FACTORIES[tag](**kwargs)
