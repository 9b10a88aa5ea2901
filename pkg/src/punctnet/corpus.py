"""Text cleaning and punctuation-aware tokenization.

Punctuation marks are first-class tokens: sentence-ending marks (dot,
question mark, exclamation mark, ellipsis), commas, colons, semicolons,
and chapter breaks each get a canonical ``#``-prefixed surface so they can
be counted and ranked exactly like words.
"""

from __future__ import annotations

import json
import re
import unicodedata
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, NamedTuple, Sequence

import numpy as np


class TokenKind(Enum):
    WORD = "word"
    DOT = "dot"
    QUESTION = "question"
    EXCLAMATION = "exclamation"
    ELLIPSIS = "ellipsis"
    COMMA = "comma"
    COLON = "colon"
    SEMICOLON = "semicolon"
    CHAPTER = "chapter"
    FULLSTOP = "fullstop"  # aggregated sentence enders, see aggregate_fullstops


# Canonical surfaces for non-word tokens.
MARK_SURFACES: dict[TokenKind, str] = {
    TokenKind.DOT: "#dot",
    TokenKind.QUESTION: "#qu",
    TokenKind.EXCLAMATION: "#ex",
    TokenKind.ELLIPSIS: "#ell",
    TokenKind.COMMA: "#com",
    TokenKind.COLON: "#col",
    TokenKind.SEMICOLON: "#scol",
    TokenKind.CHAPTER: "#chap",
    TokenKind.FULLSTOP: "#fs",
}
SURFACE_KINDS: dict[str, TokenKind] = {s: k for k, s in MARK_SURFACES.items()}

SENTENCE_END_KINDS = frozenset(
    {TokenKind.DOT, TokenKind.QUESTION, TokenKind.EXCLAMATION, TokenKind.ELLIPSIS}
)

CHAPTER_SENTINEL = "#chap"


class Token(NamedTuple):
    surface: str
    kind: TokenKind

    @property
    def is_word(self) -> bool:
        return self.kind is TokenKind.WORD


class SourceSpan(NamedTuple):
    title: str
    start: int
    stop: int


@dataclass
class Corpus:
    """An ordered token sequence with provenance metadata.

    ``sources`` partitions ``[0, len(tokens))`` into per-text spans.
    ``dropped`` counts input symbols the tokenizer discarded.
    """

    tokens: list[Token]
    sources: list[SourceSpan]
    language: str = ""
    dropped: dict[str, int] = field(default_factory=dict)
    _codes: "CodedCorpus | None" = field(default=None, repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.tokens)

    def surfaces(self) -> list[str]:
        return [t.surface for t in self.tokens]

    def kind_counts(self) -> dict[str, int]:
        return {k.value: c for k, c in Counter(t.kind for t in self.tokens).items()}

    def source_slice(self, index: int) -> "Corpus":
        """The tokens of one constituent source text."""
        try:
            span = self.sources[index]
        except IndexError:
            raise IndexError(f"corpus has {len(self.sources)} sources; no index {index}") from None
        return Corpus(
            tokens=self.tokens[span.start : span.stop],
            sources=[SourceSpan(span.title, 0, span.stop - span.start)],
            language=self.language,
        )

    def coded(self) -> "CodedCorpus":
        """Integer-coded view; vocabulary ordered by first occurrence."""
        if self._codes is None:
            index: dict[str, int] = {}
            vocab: list[str] = []
            kinds: list[TokenKind] = []
            codes = np.empty(len(self.tokens), dtype=np.int32)
            for pos, tok in enumerate(self.tokens):
                code = index.get(tok.surface)
                if code is None:
                    code = len(vocab)
                    index[tok.surface] = code
                    vocab.append(tok.surface)
                    kinds.append(tok.kind)
                codes[pos] = code
            self._codes = CodedCorpus(codes=codes, vocab=vocab, kinds=kinds, index=index)
        return self._codes


@dataclass
class CodedCorpus:
    codes: np.ndarray  # int32 token ids in text order
    vocab: list[str]  # id -> surface, first-occurrence order
    kinds: list[TokenKind]  # id -> kind
    index: dict[str, int]  # surface -> id


@dataclass
class CleaningConfig:
    """Language-specific cleaning rules applied before tokenization.

    ``abbreviations`` are strings ending in '.' whose dot is removed
    ("Mrs." -> "Mrs").  ``chapter_patterns`` are regexes matched against
    whole lines; matching lines are replaced by a sentinel that tokenizes
    to a chapter-break token.  ``strip_chars`` are deleted outright.
    """

    language: str = ""
    abbreviations: tuple[str, ...] = ()
    chapter_patterns: tuple[str, ...] = ()
    strip_chars: str = "\"'“”‘’«»‹›()[]{}*_#"
    strip_dashes: bool = True

    def __post_init__(self) -> None:
        if len(set(self.abbreviations)) != len(self.abbreviations):
            raise ValueError("duplicate abbreviation entries")
        for a in self.abbreviations:
            if not a.endswith("."):
                raise ValueError(f"abbreviation {a!r} does not end in '.'")
        self._chapter_res = [re.compile(p) for p in self.chapter_patterns]
        if self.abbreviations:
            alt = "|".join(re.escape(a[:-1]) for a in sorted(self.abbreviations, key=len, reverse=True))
            self._abbrev_re = re.compile(rf"(?<!\w)({alt})\.")
        else:
            self._abbrev_re = None


ENGLISH_ABBREVIATIONS = (
    "Mr.", "Mrs.", "Ms.", "Dr.", "St.", "Prof.", "Rev.", "Capt.", "Col.",
    "Gen.", "Lieut.", "Sgt.", "Hon.", "Esq.", "Jr.", "Sr.", "Messrs.",
    "Mme.", "Mlle.", "No.", "vs.", "etc.", "i.e.", "e.g.",
)

DEFAULT_CHAPTER_PATTERNS = (
    r"^\s*(?:CHAPTER|Chapter|BOOK|Book|PART|Part)\s+([IVXLCDM]+|\d+)\b.*$",
    r"^\s*\*\s*\*\s*\*.*$",
)


def default_cleaning_config(language: str = "en") -> CleaningConfig:
    abbrevs = ENGLISH_ABBREVIATIONS if language.startswith("en") else ()
    return CleaningConfig(
        language=language,
        abbreviations=abbrevs,
        chapter_patterns=DEFAULT_CHAPTER_PATTERNS,
    )


def load_cleaning_config(path: str | Path) -> CleaningConfig:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    return CleaningConfig(
        language=data.get("language", ""),
        abbreviations=tuple(data.get("abbreviations", ())),
        chapter_patterns=tuple(data.get("chapter_patterns", ())),
        strip_chars=data.get("strip_chars", CleaningConfig.strip_chars),
        strip_dashes=data.get("strip_dashes", True),
    )


_SPACED_ELLIPSIS_RE = re.compile(r"\.(?:[ \t]+\.){2,}")
_DASH_RE = re.compile(r"--+|[‐‑‒–—―]")
_APOSTROPHE_RE = re.compile(r"(?<=\w)’(?=\w)")
_APOSTROPHE_SENTINEL = "\x00"


def clean_text(raw: str, cfg: CleaningConfig) -> str:
    """Normalize raw text for tokenization.

    Chapter-heading lines become sentinel lines, abbreviation dots are
    removed, dashes become spaces (unless kept), and typographic marks in
    the strip list are deleted.
    """
    if not raw:
        return ""
    text = unicodedata.normalize("NFKC", raw.replace("\r\n", "\n").replace("\r", "\n"))
    strip_table = str.maketrans("", "", cfg.strip_chars)
    out: list[str] = []
    for line in text.split("\n"):
        if any(r.match(line) for r in cfg._chapter_res):
            out.append(CHAPTER_SENTINEL)
            continue
        line = _SPACED_ELLIPSIS_RE.sub("...", line)
        if cfg._abbrev_re is not None:
            line = cfg._abbrev_re.sub(r"\1", line)
        if cfg.strip_dashes:
            line = _DASH_RE.sub(" ", line)
        # Word-internal apostrophes are part of the word; quote-like ones
        # fall to the strip list.  A sentinel shields them while stripping.
        line = _APOSTROPHE_RE.sub("'", line)
        line = re.sub(r"(?<=\w)'(?=\w)", _APOSTROPHE_SENTINEL, line)
        out.append(line.translate(strip_table).replace(_APOSTROPHE_SENTINEL, "'"))
    return "\n".join(out)


# Sentence-ending marks may come in runs ("?!", "!!!"); a run is one token.
_SCAN_RE = re.compile(
    r"(?P<word>[^\W\d_][\w'’-]*|\d+)"
    r"|(?P<ender>[.?!…]+)"
    r"|(?P<comma>,)|(?P<colon>:)|(?P<scolon>;)"
    r"|(?P<other>\S)",
)


def _classify_ender(run: str) -> TokenKind:
    if run.startswith("…") or run.startswith("..."):
        return TokenKind.ELLIPSIS
    first = run[0]
    if first == ".":
        return TokenKind.DOT
    if first == "?":
        return TokenKind.QUESTION
    return TokenKind.EXCLAMATION


def tokenize(cleaned: str, *, title: str = "", language: str = "") -> Corpus:
    """Tokenize cleaned text into words and punctuation tokens.

    Words are lowercased; hyphens and apostrophes are word-internal.
    Unknown symbols are dropped and tallied in ``Corpus.dropped``.
    """
    tokens: list[Token] = []
    dropped: Counter[str] = Counter()
    append = tokens.append
    for line in cleaned.split("\n"):
        if line.strip() == CHAPTER_SENTINEL:
            append(Token(MARK_SURFACES[TokenKind.CHAPTER], TokenKind.CHAPTER))
            continue
        for m in _SCAN_RE.finditer(line):
            word = m.group("word")
            if word is not None:
                surface = word.lower().strip("-'’").replace("’", "'")
                if surface:
                    append(Token(surface, TokenKind.WORD))
                continue
            ender = m.group("ender")
            if ender is not None:
                kind = _classify_ender(ender)
                append(Token(MARK_SURFACES[kind], kind))
            elif m.group("comma"):
                append(Token(MARK_SURFACES[TokenKind.COMMA], TokenKind.COMMA))
            elif m.group("colon"):
                append(Token(MARK_SURFACES[TokenKind.COLON], TokenKind.COLON))
            elif m.group("scolon"):
                append(Token(MARK_SURFACES[TokenKind.SEMICOLON], TokenKind.SEMICOLON))
            else:
                dropped[m.group("other")] += 1
    return Corpus(
        tokens=tokens,
        sources=[SourceSpan(title, 0, len(tokens))],
        language=language,
        dropped=dict(dropped),
    )


def aggregate_fullstops(corpus: Corpus) -> Corpus:
    """Replace every sentence-ending token with the aggregated ``#fs`` token."""
    fs = Token(MARK_SURFACES[TokenKind.FULLSTOP], TokenKind.FULLSTOP)
    tokens = [fs if t.kind in SENTENCE_END_KINDS else t for t in corpus.tokens]
    return Corpus(
        tokens=tokens,
        sources=list(corpus.sources),
        language=corpus.language,
        dropped=dict(corpus.dropped),
    )


def merge_corpora(corpora: Sequence[Corpus]) -> Corpus:
    """Concatenate corpora sharing a language tag into one corpus."""
    if not corpora:
        raise ValueError("cannot merge an empty list of corpora")
    languages = {c.language for c in corpora}
    if len(languages) > 1:
        raise ValueError(f"mixed language tags: {sorted(languages)}")
    tokens: list[Token] = []
    sources: list[SourceSpan] = []
    dropped: Counter[str] = Counter()
    for c in corpora:
        offset = len(tokens)
        tokens.extend(c.tokens)
        sources.extend(SourceSpan(s.title, s.start + offset, s.stop + offset) for s in c.sources)
        dropped.update(c.dropped)
    return Corpus(tokens=tokens, sources=sources, language=corpora[0].language, dropped=dict(dropped))


def read_text_file(path: str | Path) -> str:
    """Read a UTF-8 text file; decode failures report the byte offset."""
    data = Path(path).read_bytes()
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ValueError(f"{path}: cannot decode as UTF-8 at byte {exc.start}") from exc


def write_tokens(corpus: Corpus, path: str | Path) -> None:
    """Write the token stream, one surface per line, plus a JSON sidecar."""
    path = Path(path)
    with path.open("w", encoding="utf-8") as fh:
        for tok in corpus.tokens:
            fh.write(tok.surface)
            fh.write("\n")
    meta = {
        "language": corpus.language,
        "token_count": len(corpus.tokens),
        "kind_counts": corpus.kind_counts(),
        "sources": [{"title": s.title, "start": s.start, "stop": s.stop} for s in corpus.sources],
        "dropped": dict(sorted(corpus.dropped.items())),
    }
    sidecar_path(path).write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def sidecar_path(tokens_path: str | Path) -> Path:
    p = Path(tokens_path)
    return p.with_name(p.name + ".meta.json")


def read_tokens(path: str | Path) -> Corpus:
    """Read a token stream written by :func:`write_tokens`."""
    path = Path(path)
    tokens: list[Token] = []
    with path.open("r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            surface = line.rstrip("\n")
            if not surface:
                continue
            if surface.startswith("#"):
                kind = SURFACE_KINDS.get(surface)
                if kind is None:
                    raise ValueError(f"{path}:{lineno}: unknown mark token {surface!r}")
                tokens.append(Token(surface, kind))
            else:
                tokens.append(Token(surface, TokenKind.WORD))
    language = ""
    sources = [SourceSpan(path.stem, 0, len(tokens))]
    dropped: dict[str, int] = {}
    meta_path = sidecar_path(path)
    if meta_path.exists():
        meta = json.loads(meta_path.read_text(encoding="utf-8"))
        language = meta.get("language", "")
        dropped = meta.get("dropped", {})
        spans = meta.get("sources")
        if spans:
            sources = [SourceSpan(s["title"], s["start"], s["stop"]) for s in spans]
    return Corpus(tokens=tokens, sources=sources, language=language, dropped=dropped)


def corpus_from_surfaces(surfaces: Iterable[str], language: str = "", title: str = "") -> Corpus:
    """Build a corpus from bare surfaces, inferring mark kinds from '#' prefixes."""
    tokens = []
    for s in surfaces:
        kind = SURFACE_KINDS.get(s, TokenKind.WORD) if s.startswith("#") else TokenKind.WORD
        if s.startswith("#") and s not in SURFACE_KINDS:
            raise ValueError(f"unknown mark surface {s!r}")
        tokens.append(Token(s, kind))
    return Corpus(tokens=tokens, sources=[SourceSpan(title, 0, len(tokens))], language=language)
