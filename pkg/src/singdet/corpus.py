"""Bundled corpus: small link diagrams and Seifert data used by the tests,
the verification suites and the CLI.

File format (one link per file):
    # optional comment lines
    name: <identifier>
    pd: X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)
    seifert:          <- unsymmetrized Seifert matrix A, matrix text format
    2
    -1 1
    0 -1
    matrix:           <- symmetrized matrix M directly (entries without a
    ...                  geometric A use this instead of seifert:)

Every entry carries at least one of pd/seifert/matrix.  Values bundled here
are cross-checked by the test suite itself (dual-route identities), never
trusted from outside.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from importlib import resources

from .diagrams import LinkDiagram, parse_pd
from .exactlinalg import IntegerSymmetricMatrix, parse_matrix
from .seifert import SeifertData

ENV_CORPUS = "SINGDET_CORPUS"


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    diagram: LinkDiagram | None
    seifert: SeifertData | None
    matrix: IntegerSymmetricMatrix | None

    @property
    def symmetrized(self) -> IntegerSymmetricMatrix | None:
        if self.matrix is not None:
            return self.matrix
        if self.seifert is not None:
            return self.seifert.M
        return None


def parse_entry(text: str, fallback_name: str = "") -> CorpusEntry:
    name = fallback_name
    pd_line = None
    blocks: dict[str, list[str]] = {}
    current: list[str] | None = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("name:"):
            name = line.split(":", 1)[1].strip()
            current = None
        elif line.startswith("pd:"):
            pd_line = line.split(":", 1)[1].strip()
            current = None
        elif line.startswith("seifert:"):
            current = blocks.setdefault("seifert", [])
        elif line.startswith("matrix:"):
            current = blocks.setdefault("matrix", [])
        elif current is not None:
            current.append(line)
        else:
            raise ValueError(f"unparsed corpus line: {line!r}")
    diagram = parse_pd(pd_line) if pd_line else None
    seifert = SeifertData(parse_matrix("\n".join(blocks["seifert"]))) if "seifert" in blocks else None
    matrix = (
        IntegerSymmetricMatrix(parse_matrix("\n".join(blocks["matrix"])))
        if "matrix" in blocks
        else None
    )
    if diagram is None and seifert is None and matrix is None:
        raise ValueError(f"corpus entry {name!r} is empty")
    return CorpusEntry(name, diagram, seifert, matrix)


def corpus_root() -> str | None:
    return os.environ.get(ENV_CORPUS)


def load_corpus(root: str | None = None) -> dict[str, CorpusEntry]:
    """All bundled entries, or the ones in `root`/$SINGDET_CORPUS if set."""
    root = root or corpus_root()
    entries = {}
    if root:
        for fn in sorted(os.listdir(root)):
            if not fn.endswith(".txt"):
                continue
            with open(os.path.join(root, fn)) as fh:
                e = parse_entry(fh.read(), fn[:-4])
            entries[e.name] = e
        return entries
    pkg = resources.files(__package__) / "corpus"
    for item in sorted(pkg.iterdir(), key=lambda p: p.name):
        if not item.name.endswith(".txt"):
            continue
        e = parse_entry(item.read_text(), item.name[:-4])
        entries[e.name] = e
    return entries


def corpus_knots(max_crossings: int | None = None) -> dict[str, CorpusEntry]:
    """Bundled entries that are knots with diagrams, optionally capped."""
    out = {}
    for name, e in load_corpus().items():
        if e.diagram is None or e.diagram.component_count != 1:
            continue
        if max_crossings is not None and e.diagram.n > max_crossings:
            continue
        out[name] = e
    return out
