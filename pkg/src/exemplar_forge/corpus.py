"""Ingestion of tagged sentences, bracketed parse trees, and embedding files.

File formats
------------
POS corpus: UTF-8 text, one token per line as ``surface<TAB>UPOS<TAB>lemma``,
blank line ends a sentence. The first line of a block may be ``# id = <id>``;
blocks without one get sequential integer ids.

Parse trees: one bracketed expression per line, same ``# id =`` convention.

Embeddings: first line ``dim <d>``, then ``id v1 ... vd`` per line. Vectors are
L2-normalized on load.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Mapping

import numpy as np

UPOS_TAGS = frozenset(
    {
        "NOUN", "VERB", "AUX", "ADJ", "ADV", "PRON", "DET", "ADP", "NUM",
        "PART", "CCONJ", "SCONJ", "INTJ", "PROPN", "PUNCT", "SYM", "X",
    }
)

_ID_COMMENT = re.compile(r"^#\s*id\s*=\s*(\S+)\s*$")


class CorpusFormatError(ValueError):
    """Malformed input file; the message names the offending line or offset."""


@dataclass(frozen=True)
class Token:
    surface: str
    upos: str
    lemma: str

    def __post_init__(self):
        if not self.surface or any(ch.isspace() for ch in self.surface):
            raise ValueError(f"token surface must be non-empty without whitespace: {self.surface!r}")
        if self.upos not in UPOS_TAGS:
            raise ValueError(f"unknown POS tag {self.upos!r}")
        if not self.lemma or any(ch.isspace() for ch in self.lemma):
            raise ValueError(f"token lemma must be non-empty without whitespace: {self.lemma!r}")


@dataclass(frozen=True)
class TaggedSentence:
    id: str
    tokens: tuple[Token, ...]

    def __post_init__(self):
        if not self.id:
            raise ValueError("sentence id must be non-empty")
        if not self.tokens:
            raise ValueError(f"sentence {self.id!r} has no tokens")

    @property
    def is_question(self) -> bool:
        """True iff the last punctuation token is a question mark."""
        for token in reversed(self.tokens):
            if token.upos == "PUNCT":
                return token.surface == "?"
        return False

    @property
    def surfaces(self) -> tuple[str, ...]:
        return tuple(t.surface for t in self.tokens)

    def __len__(self) -> int:
        return len(self.tokens)


@dataclass(frozen=True)
class ParseTree:
    label: str
    children: tuple["ParseTree", ...] = ()

    def __post_init__(self):
        if not self.label:
            raise ValueError("tree node label must be non-empty")

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def iter_nodes(self) -> Iterator["ParseTree"]:
        yield self
        for child in self.children:
            yield from child.iter_nodes()

    def node_count(self) -> int:
        return sum(1 for _ in self.iter_nodes())

    def leaves(self) -> list[str]:
        if self.is_leaf:
            return [self.label]
        out: list[str] = []
        for child in self.children:
            out.extend(child.leaves())
        return out


@dataclass(frozen=True)
class PairRecord:
    source: TaggedSentence
    target: TaggedSentence

    def __post_init__(self):
        if self.source.id == self.target.id:
            raise ValueError(f"pair source and target share id {self.source.id!r}")


@dataclass(frozen=True)
class EmbeddingTable:
    dim: int
    entries: Mapping[str, np.ndarray] = field(repr=False)

    def __contains__(self, key: str) -> bool:
        return key in self.entries

    def __getitem__(self, key: str) -> np.ndarray:
        try:
            return self.entries[key]
        except KeyError:
            raise KeyError(f"no embedding for id {key!r}") from None

    def ids(self) -> list[str]:
        return list(self.entries)


def _iter_lines(stream: Iterable[str] | str | Path) -> Iterator[str]:
    if isinstance(stream, (str, Path)):
        with open(stream, encoding="utf-8") as handle:
            yield from handle
    else:
        yield from stream


def parse_pos_corpus(stream: Iterable[str] | str | Path) -> list[TaggedSentence]:
    """Parse a POS corpus file or iterable of lines into sentences."""
    sentences: list[TaggedSentence] = []
    seen_ids: set[str] = set()
    block_id: str | None = None
    tokens: list[Token] = []
    auto_id = 0

    def flush(lineno: int):
        nonlocal block_id, tokens, auto_id
        if block_id is None and not tokens:
            return
        if not tokens:
            raise CorpusFormatError(f"line {lineno}: sentence block {block_id!r} has no tokens")
        sid = block_id if block_id is not None else str(auto_id)
        if sid in seen_ids:
            raise CorpusFormatError(f"line {lineno}: duplicate sentence id {sid!r}")
        seen_ids.add(sid)
        sentences.append(TaggedSentence(sid, tuple(tokens)))
        auto_id += 1
        block_id = None
        tokens = []

    lineno = 0
    for lineno, raw in enumerate(_iter_lines(stream), start=1):
        line = raw.rstrip("\n")
        if not line.strip():
            flush(lineno)
            continue
        if line.startswith("#"):
            match = _ID_COMMENT.match(line)
            if match is None:
                raise CorpusFormatError(f"line {lineno}: unrecognized comment {line!r}")
            if tokens:
                raise CorpusFormatError(f"line {lineno}: id comment inside a sentence block")
            if block_id is not None:
                raise CorpusFormatError(f"line {lineno}: duplicate id comment")
            block_id = match.group(1)
            continue
        fields = line.split("\t")
        if len(fields) != 3:
            raise CorpusFormatError(
                f"line {lineno}: expected 3 tab-separated fields, got {len(fields)}"
            )
        surface, upos, lemma = fields
        if upos not in UPOS_TAGS:
            raise CorpusFormatError(f"line {lineno}: unknown POS tag {upos!r}")
        try:
            tokens.append(Token(surface, upos, lemma))
        except ValueError as exc:
            raise CorpusFormatError(f"line {lineno}: {exc}") from None
    flush(lineno + 1)
    return sentences


def format_pos_corpus(sentences: Iterable[TaggedSentence]) -> str:
    """Inverse of parse_pos_corpus: render sentences with explicit id comments."""
    blocks = []
    for sentence in sentences:
        lines = [f"# id = {sentence.id}"]
        lines.extend(f"{t.surface}\t{t.upos}\t{t.lemma}" for t in sentence.tokens)
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"


def parse_ptb_tree(text: str) -> ParseTree:
    """Parse one bracketed constituency expression into a ParseTree."""
    pos = 0
    size = len(text)

    def skip_ws():
        nonlocal pos
        while pos < size and text[pos].isspace():
            pos += 1

    def read_word() -> str:
        nonlocal pos
        start = pos
        while pos < size and not text[pos].isspace() and text[pos] not in "()":
            pos += 1
        return text[start:pos]

    def read_node() -> ParseTree:
        nonlocal pos
        skip_ws()
        if pos >= size:
            raise CorpusFormatError(f"offset {pos}: unbalanced parentheses (unexpected end)")
        if text[pos] != "(":
            word = read_word()
            if not word:
                raise CorpusFormatError(f"offset {pos}: expected a token or '('")
            return ParseTree(word)
        open_at = pos
        pos += 1
        skip_ws()
        label = read_word()
        if not label:
            raise CorpusFormatError(f"offset {open_at}: node with empty label")
        children: list[ParseTree] = []
        while True:
            skip_ws()
            if pos >= size:
                raise CorpusFormatError(f"offset {open_at}: unbalanced parentheses (unclosed node)")
            if text[pos] == ")":
                pos += 1
                break
            children.append(read_node())
        if not children:
            raise CorpusFormatError(f"offset {open_at}: node {label!r} has no children")
        return ParseTree(label, tuple(children))

    tree = read_node()
    skip_ws()
    if pos != size:
        raise CorpusFormatError(f"offset {pos}: unbalanced parentheses (trailing content)")
    return tree


def format_ptb_tree(tree: ParseTree) -> str:
    if tree.is_leaf:
        return tree.label
    inner = " ".join(format_ptb_tree(child) for child in tree.children)
    return f"({tree.label} {inner})"


def parse_tree_file(stream: Iterable[str] | str | Path) -> dict[str, ParseTree]:
    """Read a one-tree-per-line file into an id -> tree map."""
    trees: dict[str, ParseTree] = {}
    pending_id: str | None = None
    auto_id = 0
    for lineno, raw in enumerate(_iter_lines(stream), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            match = _ID_COMMENT.match(line)
            if match is None:
                raise CorpusFormatError(f"line {lineno}: unrecognized comment {line!r}")
            if pending_id is not None:
                raise CorpusFormatError(f"line {lineno}: duplicate id comment")
            pending_id = match.group(1)
            continue
        try:
            tree = parse_ptb_tree(line)
        except CorpusFormatError as exc:
            raise CorpusFormatError(f"line {lineno}: {exc}") from None
        tid = pending_id if pending_id is not None else str(auto_id)
        if tid in trees:
            raise CorpusFormatError(f"line {lineno}: duplicate tree id {tid!r}")
        trees[tid] = tree
        pending_id = None
        auto_id += 1
    if pending_id is not None:
        raise CorpusFormatError(f"id comment {pending_id!r} without a following tree")
    return trees


def format_tree_file(trees: Mapping[str, ParseTree]) -> str:
    lines = []
    for tid, tree in trees.items():
        lines.append(f"# id = {tid}")
        lines.append(format_ptb_tree(tree))
    return "\n".join(lines) + "\n"


def load_embeddings(stream: Iterable[str] | str | Path) -> EmbeddingTable:
    """Load and L2-normalize an embedding file."""
    lines = _iter_lines(stream)
    header = None
    for header in lines:
        if header.strip():
            break
    if header is None or not header.strip():
        raise CorpusFormatError("embedding file is empty")
    parts = header.split()
    if len(parts) != 2 or parts[0] != "dim":
        raise CorpusFormatError(f"bad header {header.strip()!r}, expected 'dim <d>'")
    try:
        dim = int(parts[1])
    except ValueError:
        raise CorpusFormatError(f"bad dimension {parts[1]!r}") from None
    if dim <= 0:
        raise CorpusFormatError(f"dimension must be positive, got {dim}")

    entries: dict[str, np.ndarray] = {}
    for raw in lines:
        if not raw.strip():
            continue
        fields = raw.split()
        key = fields[0]
        if len(fields) - 1 != dim:
            raise CorpusFormatError(f"id {key!r}: expected {dim} components, got {len(fields) - 1}")
        if key in entries:
            raise CorpusFormatError(f"duplicate embedding id {key!r}")
        try:
            vec = np.array([float(x) for x in fields[1:]], dtype=np.float64)
        except ValueError as exc:
            raise CorpusFormatError(f"id {key!r}: {exc}") from None
        norm = math.sqrt(float(vec @ vec))
        if norm == 0.0 or not math.isfinite(norm):
            raise CorpusFormatError(f"id {key!r}: vector norm must be finite and nonzero")
        vec = vec / norm
        vec.flags.writeable = False
        entries[key] = vec
    return EmbeddingTable(dim=dim, entries=entries)


def format_embeddings(table: EmbeddingTable) -> str:
    lines = [f"dim {table.dim}"]
    for key, vec in table.entries.items():
        lines.append(key + " " + " ".join(repr(float(x)) for x in vec))
    return "\n".join(lines) + "\n"


def load_pairs(stream: Iterable[str] | str | Path) -> list[tuple[str, ...]]:
    """Read a TSV of ids (2 or 3 columns); '#' lines are ignored."""
    rows: list[tuple[str, ...]] = []
    for lineno, raw in enumerate(_iter_lines(stream), start=1):
        line = raw.rstrip("\n")
        if not line.strip() or line.startswith("#"):
            continue
        fields = tuple(line.split("\t"))
        if len(fields) not in (2, 3):
            raise CorpusFormatError(f"line {lineno}: expected 2 or 3 tab-separated ids")
        rows.append(fields)
    return rows


def sentences_by_id(sentences: Iterable[TaggedSentence]) -> dict[str, TaggedSentence]:
    out: dict[str, TaggedSentence] = {}
    for sentence in sentences:
        if sentence.id in out:
            raise ValueError(f"duplicate sentence id {sentence.id!r}")
        out[sentence.id] = sentence
    return out
