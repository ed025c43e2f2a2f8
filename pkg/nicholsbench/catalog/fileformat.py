"""Sectioned text format for presentations and catalog entries.

Example::

    [meta]
    tag = SuperA3-J2
    gkdim = 3
    [field]
    M = 1
    transcendental = t
    [params]
    q = t
    [braiding]
    theta = 3
    q(1,1) = q
    q(1,2) = 1/q
    [relations]
    x(2)^2
    x(1,3)
    [pbw]
    x(3) : inf
    x(2,3) : 1
    [series]
    numerator = (1+t1*t2)*(1+t2)
    denominator = (1-t1)*(1-t3)
    [central]
    z = [x(1,2,3), x(2)]

``#`` starts a comment. Off-diagonal braiding entries that are not listed
are 1; every diagonal entry must be given. Values may be wrapped in double
quotes.
"""
import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from nicholsbench.catalog.entry import CatalogEntry, EntryConfig, PBWSpec
from nicholsbench.core.braiding import BraidingMatrix
from nicholsbench.core.coeff import bind_scalars, ground_field
from nicholsbench.core.errors import NicholsBenchError, PresentationFileError
from nicholsbench.core.relexpr import RelExpr, parse_rel_expr
from nicholsbench.core.series import RationalSeries

logger = logging.getLogger(__name__)

SECTIONS = (
    "meta",
    "field",
    "params",
    "braiding",
    "relations",
    "nichols",
    "pbw",
    "series",
    "central",
)

_SECTION = re.compile(r"^\[\s*([A-Za-z_]+)\s*\]$")
_ENTRY_KEY = re.compile(r"^q\(\s*(\d+)\s*,\s*(\d+)\s*\)$")


class MetaSection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    tag: str = "custom"
    description: str = ""
    L: Optional[int] = Field(default=None, ge=1)
    gkdim: Optional[int] = Field(default=None, ge=0)


class FieldSection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    M: int = Field(default=1, ge=1)
    transcendental: str = Field(default="t", pattern=r"^[A-Za-z_][A-Za-z0-9_]*$")

    @field_validator("transcendental")
    @classmethod
    def _not_reserved(cls, value: str) -> str:
        if value in ("x", "ad", "z"):
            raise ValueError(f"'{value}' is reserved by the relation syntax")
        return value


class BraidingSection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    theta: int = Field(ge=1)
    entries: Dict[Tuple[int, int], str] = Field(default_factory=dict)

    @field_validator("entries")
    @classmethod
    def _nonempty_values(cls, value: Dict[Tuple[int, int], str]) -> Dict[Tuple[int, int], str]:
        for key, text in value.items():
            if not text:
                raise ValueError(f"q{key} has an empty value")
        return value


class SeriesSection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    numerator: str
    denominator: str = "1"


class CentralSection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    z: str


@dataclass
class _Line:
    number: int
    text: str


@dataclass
class _Section:
    name: str
    line: int
    lines: List[_Line] = field(default_factory=list)

    def pairs(self) -> Dict[str, Tuple[str, int]]:
        values: Dict[str, Tuple[str, int]] = {}
        for line in self.lines:
            key, sep, value = line.text.partition("=")
            if not sep:
                raise PresentationFileError(f"expected 'key = value' in [{self.name}]", line.number)
            key = key.strip()
            if key in values:
                raise PresentationFileError(f"duplicate key '{key}' in [{self.name}]", line.number)
            values[key] = (_unquote(value.strip()), line.number)
        return values


def _unquote(value: str) -> str:
    if len(value) >= 2 and value[0] == value[-1] == '"':
        return value[1:-1]
    return value


def _split_sections(text: str) -> Dict[str, _Section]:
    sections: Dict[str, _Section] = {}
    current: Optional[_Section] = None
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        header = _SECTION.match(line)
        if header:
            name = header.group(1).lower()
            if name not in SECTIONS:
                raise PresentationFileError(f"unknown section [{name}]", number)
            if name in sections:
                raise PresentationFileError(f"section [{name}] appears twice", number)
            current = sections[name] = _Section(name, number)
            continue
        if current is None:
            raise PresentationFileError("content before the first section header", number)
        current.lines.append(_Line(number, line))
    return sections


def _validate(model, section: Optional[_Section], data: Dict):
    line = section.line if section else None
    try:
        return model.model_validate(data)
    except ValidationError as exc:
        name = section.name if section else model.__name__
        errors = "; ".join(
            f"{'.'.join(map(str, error['loc']))}: {error['msg']}" for error in exc.errors()
        )
        raise PresentationFileError(f"invalid [{name}] section: {errors}", line) from None


def _plain(section: Optional[_Section]) -> Dict[str, str]:
    if section is None:
        return {}
    return {key: value for key, (value, _) in section.pairs().items()}


def _braiding_section(section: Optional[_Section]) -> BraidingSection:
    if section is None:
        raise PresentationFileError("missing [braiding] section")
    data: Dict = {"entries": {}}
    for key, (value, number) in section.pairs().items():
        match = _ENTRY_KEY.match(key)
        if key == "theta":
            data["theta"] = value
        elif match:
            data["entries"][(int(match.group(1)), int(match.group(2)))] = value
        else:
            raise PresentationFileError(f"unknown braiding key '{key}'", number)
    braiding = _validate(BraidingSection, section, data)
    numbers = _entry_lines(section)
    for (i, j) in braiding.entries:
        if not (1 <= i <= braiding.theta and 1 <= j <= braiding.theta):
            raise PresentationFileError(
                f"entry q({i},{j}) out of range for theta={braiding.theta}", numbers[(i, j)]
            )
    for i in range(1, braiding.theta + 1):
        if (i, i) not in braiding.entries:
            raise PresentationFileError(f"diagonal entry q({i},{i}) is missing", section.line)
    return braiding


def _entry_lines(section: Optional[_Section]) -> Dict[Tuple[int, int], int]:
    lines: Dict[Tuple[int, int], int] = {}
    for line in section.lines if section else []:
        match = _ENTRY_KEY.match(line.text.partition("=")[0].strip())
        if match:
            lines[(int(match.group(1)), int(match.group(2)))] = line.number
    return lines


def _relation(line: _Line) -> RelExpr:
    try:
        return parse_rel_expr(line.text)
    except NicholsBenchError as exc:
        raise PresentationFileError(str(exc), line.number) from None


def _pbw_line(line: _Line) -> Tuple[RelExpr, Optional[int]]:
    expr, sep, height = line.text.rpartition(":")
    if not sep:
        raise PresentationFileError("expected 'expr : height' in [pbw]", line.number)
    height = height.strip().lower()
    if height in ("inf", "infinity"):
        return _relation(_Line(line.number, expr.strip())), None
    if not height.isdigit():
        raise PresentationFileError(f"invalid PBW height '{height}'", line.number)
    return _relation(_Line(line.number, expr.strip())), int(height)


def parse_entry(text: str) -> CatalogEntry:
    """Build a catalog entry from presentation file text.

    Raises:
        PresentationFileError: With the line number of the first problem
    """
    sections = _split_sections(text)
    meta = _validate(MetaSection, sections.get("meta"), _plain(sections.get("meta")))
    ground = _validate(FieldSection, sections.get("field"), _plain(sections.get("field")))
    param_section = sections.get("params")
    params = _plain(param_section)
    if ground.transcendental in params:
        raise PresentationFileError(
            f"parameter '{ground.transcendental}' clashes with the transcendental",
            param_section.line if param_section else None,
        )
    layout = _braiding_section(sections.get("braiding"))
    field_ = ground_field(ground.M, ground.transcendental)
    try:
        values = bind_scalars(field_, params)
    except NicholsBenchError as exc:
        raise PresentationFileError(
            str(exc), param_section.line if param_section else None
        ) from None
    rows = [[field_.one() for _ in range(layout.theta)] for _ in range(layout.theta)]
    numbers = _entry_lines(sections.get("braiding"))
    for (i, j), literal in layout.entries.items():
        try:
            rows[i - 1][j - 1] = field_.parse(literal, values)
        except NicholsBenchError as exc:
            raise PresentationFileError(str(exc), numbers.get((i, j))) from None
    try:
        braiding = BraidingMatrix.from_rows(field_, rows)
    except NicholsBenchError as exc:
        raise PresentationFileError(str(exc), sections["braiding"].line) from None

    config = EntryConfig(
        tag=meta.tag,
        description=meta.description,
        M=ground.M,
        L=meta.L,
        transcendental=ground.transcendental,
        gkdim=meta.gkdim,
    )
    entry = CatalogEntry(config, braiding, params)
    for line in sections["relations"].lines if "relations" in sections else []:
        entry.add_relation(_relation(line))
    central = sections.get("central")
    if central is not None:
        z = _validate(CentralSection, central, _plain(central)).z
        entry.set_central(_relation(_Line(central.lines[0].number, z)))
    for line in sections["nichols"].lines if "nichols" in sections else []:
        entry.add_nichols_relation(_relation(line))
    for line in sections["pbw"].lines if "pbw" in sections else []:
        entry.add_pbw_generator(*_pbw_line(line))
    series = sections.get("series")
    if series is not None:
        closed = _validate(SeriesSection, series, _plain(series))
        try:
            entry.set_series(closed.numerator, closed.denominator)
        except NicholsBenchError as exc:
            raise PresentationFileError(str(exc), series.line) from None
    logger.debug("Parsed entry %s of rank %d", entry.tag, entry.theta)
    return entry


def load_entry(source: Union[str, Path]) -> CatalogEntry:
    """Read a presentation file from disk."""
    path = Path(source)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise PresentationFileError(f"cannot read {path}: {exc.strerror}") from None
    return parse_entry(text)


def dump_entry(entry: CatalogEntry) -> str:
    """Render an entry in the presentation file format."""
    out = ["[meta]", f"tag = {entry.tag}"]
    if entry.config.description:
        out.append(f"description = {entry.config.description}")
    if entry.config.L is not None:
        out.append(f"L = {entry.config.L}")
    if entry.config.gkdim is not None:
        out.append(f"gkdim = {entry.config.gkdim}")
    out += [
        "",
        "[field]",
        f"M = {entry.field.M}",
        f"transcendental = {entry.field.transcendental_name}",
    ]
    if entry.param_texts:
        out += ["", "[params]"]
        out += [f"{name} = {text}" for name, text in entry.param_texts.items()]
    out += ["", "[braiding]", f"theta = {entry.theta}"]
    for i in range(1, entry.theta + 1):
        for j in range(1, entry.theta + 1):
            value = entry.braiding.entry(i, j)
            if i == j or not value.is_one:
                out.append(f"q({i},{j}) = {value}")
    if entry.eminent_relations:
        out += ["", "[relations]"]
        out += [relation.to_text() for relation in entry.eminent_relations]
    extra = entry.nichols_relations[len(entry.eminent_relations) :]
    if entry.central is not None and extra and extra[0] == entry.central:
        extra = extra[1:]
    if extra:
        out += ["", "[nichols]"]
        out += [relation.to_text() for relation in extra]
    if len(entry.pbw):
        out += ["", "[pbw]"]
        for generator in entry.pbw.generators:
            height = "inf" if generator.height is None else str(generator.height)
            out.append(f"{generator.expr.to_text()} : {height}")
    if entry.series is not None:
        numerator, denominator = entry.series.to_text()
        out += ["", "[series]", f"numerator = {numerator}", f"denominator = {denominator}"]
    if entry.central is not None:
        out += ["", "[central]", f"z = {entry.central.to_text()}"]
    return "\n".join(out) + "\n"


def _bare_section(text: str, name: str) -> _Section:
    """Content of a standalone file that may omit its single section header."""
    if not any(_SECTION.match(raw.split("#", 1)[0].strip()) for raw in text.splitlines()):
        text = f"[{name}]\n{text}"
        offset = 1
    else:
        offset = 0
    sections = _split_sections(text)
    if set(sections) - {name}:
        raise PresentationFileError(f"expected only a [{name}] section")
    section = sections.get(name, _Section(name, 1))
    section.line -= offset
    for line in section.lines:
        line.number -= offset
    return section


def parse_pbw_spec(text: str) -> PBWSpec:
    """Read ``expr : height`` lines (an optional ``[pbw]`` header is allowed)."""
    spec = PBWSpec()
    for line in _bare_section(text, "pbw").lines:
        expr, bound = _pbw_line(line)
        spec.add(expr, bound)
    return spec


def parse_series(text: str, theta: int) -> RationalSeries:
    """Read ``numerator = ...`` and ``denominator = ...`` (optional ``[series]`` header)."""
    section = _bare_section(text, "series")
    closed = _validate(SeriesSection, section, _plain(section))
    try:
        return RationalSeries.from_text(theta, closed.numerator, closed.denominator)
    except NicholsBenchError as exc:
        raise PresentationFileError(str(exc), section.line) from None
