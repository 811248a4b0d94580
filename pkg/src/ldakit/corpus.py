"""Corpus construction: text cleaning, tokenization, stopwords, stemming,
and id-encoding of documents.

The cleaning stages run in a fixed order chosen so each regex still has
something to match: URLs, then user mentions, then hashtags, then every
character outside a-z/A-Z becomes a space (this also drops digits), then
lowercasing and whitespace normalization. Every removal substitutes a
space rather than the empty string so fragments of adjacent tokens never
fuse into a new token; together with case-insensitive URL matching this
makes clean_text idempotent.
"""

from __future__ import annotations

import csv
import json
import re
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional, Sequence

import numpy as np

from . import porter

_URL_RE = re.compile(r"http\S+", re.IGNORECASE)
_MENTION_RE = re.compile(r"@[A-Za-z0-9]+")
_HASHTAG_RE = re.compile(r"#[A-Za-z0-9]+")
_NON_ALPHA_RE = re.compile(r"[^a-zA-Z]")

# Common English function words, lowercase surface forms. Used when no
# stopword file is supplied.
DEFAULT_STOPWORDS = frozenset("""
a about above after again against all am an and any are aren't as at be
because been before being below between both but by can cannot can't could
couldn't did didn't do does doesn't doing don't down during each few for from
further had hadn't has hasn't have haven't having he he'd he'll he's her here
here's hers herself him himself his how how's i i'd i'll i'm i've if in into
is isn't it it's its itself let's me more most mustn't my myself no nor not of
off on once only or other ought our ours ourselves out over own same shan't
she she'd she'll she's should shouldn't so some such than that that's the
their theirs them themselves then there there's these they they'd they'll
they're they've this those through to too under until up very was wasn't we
we'd we'll we're we've were weren't what what's when when's where where's
which while who who's whom why why's will with won't would wouldn't you you'd
you'll you're you've your yours yourself yourselves
""".split())


class RawDocument(NamedTuple):
    doc_id: str
    text: str


@dataclass
class Vocabulary:
    """Bijective word <-> dense-id map; ids follow first-occurrence order."""

    words: list[str] = field(default_factory=list)
    index: dict[str, int] = field(default_factory=dict)

    def add(self, word: str) -> int:
        wid = self.index.get(word)
        if wid is None:
            wid = len(self.words)
            self.words.append(word)
            self.index[word] = wid
        return wid

    def id_of(self, word: str) -> Optional[int]:
        return self.index.get(word)

    def word_of(self, wid: int) -> str:
        return self.words[wid]

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, word: str) -> bool:
        return word in self.index


@dataclass
class Corpus:
    """Id-encoded documents plus their vocabulary. Read-only after build."""

    documents: list[tuple[str, np.ndarray]]
    vocabulary: Vocabulary
    dropped: list[tuple[str, str]] = field(default_factory=list)
    total_tokens: int = 0

    @property
    def num_docs(self) -> int:
        return len(self.documents)

    @property
    def num_words(self) -> int:
        return len(self.vocabulary)

    @property
    def doc_ids(self) -> list[str]:
        return [doc_id for doc_id, _ in self.documents]

    def lengths(self) -> np.ndarray:
        return np.array([len(toks) for _, toks in self.documents], dtype=np.int64)

    def flatten(self) -> tuple[np.ndarray, np.ndarray]:
        """All token ids concatenated in document order, plus offsets
        such that document d occupies tokens[offsets[d]:offsets[d+1]]."""
        offsets = np.zeros(self.num_docs + 1, dtype=np.int64)
        np.cumsum(self.lengths(), out=offsets[1:])
        if self.total_tokens == 0:
            return np.zeros(0, dtype=np.int32), offsets
        tokens = np.concatenate([toks for _, toks in self.documents])
        return tokens.astype(np.int32, copy=False), offsets


def clean_text(text: str) -> str:
    """Strip URLs, mentions, hashtags and every non-letter; lowercase and
    normalize whitespace. Total function; idempotent."""
    text = _URL_RE.sub(" ", text)
    text = _MENTION_RE.sub(" ", text)
    text = _HASHTAG_RE.sub(" ", text)
    text = _NON_ALPHA_RE.sub(" ", text)
    return " ".join(text.lower().split())


def tokenize(text: str, dictionary: Optional[set[str]] = None) -> list[str]:
    """Whitespace-split a cleaned string, dropping tokens shorter than two
    characters. `dictionary`, when given, keeps only listed words."""
    tokens = [t for t in text.split() if len(t) >= 2]
    if dictionary is not None:
        tokens = [t for t in tokens if t in dictionary]
    return tokens


def stem(token: str) -> str:
    """Porter-stemmed form of a lowercase token."""
    return porter.stem(token)


def remove_stopwords(tokens: Sequence[str], stoplist) -> list[str]:
    """Order-preserving stopword filter; runs before stemming so the
    stoplist's surface forms match."""
    return [t for t in tokens if t not in stoplist]


def preprocess_text(
    text: str,
    stoplist=DEFAULT_STOPWORDS,
    stemming: bool = True,
    dictionary: Optional[set[str]] = None,
) -> list[str]:
    """Full pipeline: clean -> tokenize -> stopwords -> stem."""
    tokens = remove_stopwords(tokenize(clean_text(text), dictionary), stoplist)
    if stemming:
        tokens = [stem(t) for t in tokens]
    return tokens


def build_corpus(
    raw_docs: Iterable[RawDocument],
    stoplist=DEFAULT_STOPWORDS,
    stemming: bool = True,
    dictionary: Optional[set[str]] = None,
) -> Corpus:
    """Run the preprocessing pipeline over a batch and id-encode the result.

    Documents that end up empty are excluded from `documents` and recorded
    in `dropped` with a reason, as are per-record failures (duplicate ids,
    unreadable text); the batch always continues. Vocabulary ids are
    assigned in first-occurrence order over the sequential document order,
    so identical input yields a bit-identical corpus.
    """
    vocab = Vocabulary()
    documents: list[tuple[str, np.ndarray]] = []
    dropped: list[tuple[str, str]] = []
    seen_ids: set[str] = set()
    total = 0
    for doc in raw_docs:
        doc_id = str(doc.doc_id)
        if doc_id in seen_ids:
            dropped.append((doc_id, "duplicate doc_id"))
            continue
        seen_ids.add(doc_id)
        try:
            tokens = preprocess_text(doc.text, stoplist, stemming, dictionary)
        except Exception as exc:  # malformed record; keep going
            dropped.append((doc_id, f"preprocessing failed: {exc}"))
            continue
        if not tokens:
            dropped.append((doc_id, "empty after preprocessing"))
            continue
        ids = np.array([vocab.add(t) for t in tokens], dtype=np.int32)
        documents.append((doc_id, ids))
        total += len(ids)
    return Corpus(documents=documents, vocabulary=vocab, dropped=dropped,
                  total_tokens=total)


def read_stopword_file(path) -> set[str]:
    """One word per line; blank lines and '#'-prefixed comments ignored."""
    stoplist: set[str] = set()
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            word = line.strip()
            if word and not word.startswith("#"):
                stoplist.add(word.lower())
    return stoplist


def read_documents_csv(
    path, id_col: str = "id", text_col: str = "text"
) -> tuple[list[RawDocument], list[tuple[str, str]]]:
    """Read (id, text) rows from a headered CSV. Returns the documents plus
    a list of (row tag, reason) for rows that could not be read."""
    docs: list[RawDocument] = []
    bad: list[tuple[str, str]] = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or id_col not in reader.fieldnames \
                or text_col not in reader.fieldnames:
            raise ValueError(
                f"CSV must have '{id_col}' and '{text_col}' columns, "
                f"found {reader.fieldnames}")
        for lineno, row in enumerate(reader, start=2):
            doc_id, text = row.get(id_col), row.get(text_col)
            if doc_id is None or text is None:
                bad.append((f"line {lineno}", "missing id or text field"))
                continue
            docs.append(RawDocument(doc_id, text))
    return docs, bad


def read_documents_jsonl(
    path, id_field: str = "id", text_field: str = "text"
) -> tuple[list[RawDocument], list[tuple[str, str]]]:
    """Read one JSON object per line with id and text fields."""
    docs: list[RawDocument] = []
    bad: list[tuple[str, str]] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
                docs.append(RawDocument(str(obj[id_field]), str(obj[text_field])))
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                bad.append((f"line {lineno}", f"malformed record: {exc}"))
    return docs, bad
