"""
Facet files.

One facet per line as whitespace-separated vertex labels. ``#`` starts a
comment; a comment of the form ``# construction: <family> key=value ...``
records how the complex was generated. An optional ``dim=<k>`` line is
checked against the parsed complex.

Labels that look like integers are read as integers, everything else as a
string token. Serialization is canonical: labels sorted within each line,
lines sorted, so parse followed by serialize is stable.
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Tuple, Union

from complex_core import Label, SimplicialComplex, from_facets, label_key
from constructions import ConstructionSpec
from errors import MalformedInputError

logger = logging.getLogger(__name__)

PROVENANCE_PREFIX = "construction:"

_INTEGER = re.compile(r"^-?\d+$")
_HEADER = re.compile(r"^dim\s*=\s*(\S+)$")


@dataclass(frozen=True)
class ComplexFile:
    complex: SimplicialComplex
    dim: Optional[int] = None
    provenance: Optional[ConstructionSpec] = None
    source: str = "<string>"


def parse_label(token: str) -> Label:
    return int(token) if _INTEGER.match(token) else token


def label_token(label: Label) -> str:
    """Write a label as a single whitespace-free token; tuple labels become ``{a,b,...}``."""
    if isinstance(label, tuple):
        return "{" + ",".join(label_token(part) for part in label) + "}"
    token = str(label)
    if not token or any(ch.isspace() for ch in token) or "#" in token:
        raise MalformedInputError(f"label {label!r} cannot be written as a token")
    return token


def loads(text: str, source: str = "<string>") -> ComplexFile:
    facets: List[List[Label]] = []
    dim: Optional[int] = None
    provenance: Optional[ConstructionSpec] = None
    for number, raw in enumerate(text.splitlines(), start=1):
        body, _, comment = raw.partition("#")
        comment = comment.strip()
        if comment.startswith(PROVENANCE_PREFIX):
            if provenance is not None:
                raise MalformedInputError(f"{source}:{number}: second construction comment")
            provenance = ConstructionSpec.from_token(comment[len(PROVENANCE_PREFIX):])
        body = body.strip()
        if not body:
            continue
        header = _HEADER.match(body)
        if header:
            if dim is not None or facets:
                raise MalformedInputError(f"{source}:{number}: dim header must come once, before the facets")
            try:
                dim = int(header.group(1))
            except ValueError:
                raise MalformedInputError(f"{source}:{number}: bad dimension {header.group(1)!r}")
            if dim < -1:
                raise MalformedInputError(f"{source}:{number}: dimension {dim} < -1")
            continue
        if "=" in body:
            raise MalformedInputError(f"{source}:{number}: unexpected header {body!r}")
        tokens = body.split()
        try:
            facets.append([parse_label(t) for t in tokens])
        except ValueError as exc:
            raise MalformedInputError(f"{source}:{number}: {exc}")
    if not facets:
        if dim != -1:
            raise MalformedInputError(f"{source}: no facets")
        return ComplexFile(SimplicialComplex.empty(), dim, provenance, source)
    try:
        delta = from_facets(facets)
    except MalformedInputError as exc:
        raise MalformedInputError(f"{source}: {exc}")
    if dim is not None and delta.dim != dim:
        raise MalformedInputError(f"{source}: header says dim={dim} but the facets have dimension {delta.dim}")
    logger.debug("read %s: %d vertices, %d facets", source, delta.n, len(delta.facet_masks))
    return ComplexFile(delta, dim, provenance, source)


def load(path: Union[str, Path]) -> ComplexFile:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise MalformedInputError(f"{path}: not UTF-8 text ({exc})")
    return loads(text, str(path))


def facet_lines(delta: SimplicialComplex) -> List[str]:
    lines: List[Tuple[tuple, str]] = []
    for facet in delta.facets:
        tokens = sorted((label_token(delta.labels[v]) for v in facet), key=lambda t: label_key(parse_label(t)))
        lines.append((tuple(label_key(parse_label(t)) for t in tokens), " ".join(tokens)))
    return [line for _, line in sorted(lines) if line]


def dumps(delta: SimplicialComplex, provenance: Optional[ConstructionSpec] = None) -> str:
    if delta.is_void:
        raise MalformedInputError("the void complex has no facet file")
    out = [f"dim={delta.dim}"]
    if provenance is not None:
        out.append(f"# {PROVENANCE_PREFIX} {provenance.to_token()}")
    out.extend(facet_lines(delta))
    return "\n".join(out) + "\n"


def dump(delta: SimplicialComplex, path: Union[str, Path], provenance: Optional[ConstructionSpec] = None) -> None:
    Path(path).write_text(dumps(delta, provenance), encoding="utf-8")
    logger.info("wrote %d facets to %s", len(delta.facet_masks), path)
