"""Lexical and syntactic analysis of review text.

Sentence splitting, tokenizing, exaggeration shortening, statistical
spell correction (edit distance <= 2 + frequency argmax), stop-word
removal, suffix-stripping stemming and a lexicon+suffix part-of-speech
tagger over a closed tag set.

All operations are pure functions over immutable lexicons.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

DATA_DIR = Path(__file__).parent / "data"

TAG_SET = frozenset(
    {"NN", "NNS", "NP", "VB", "VBZ", "JJ", "RB", "DT", "IN", "EX", "CC", "CD", "OTHER"}
)

# Negation words that must survive stop-word removal so that the
# semantics stage can see e.g. "no internet".
NEGATORS = frozenset({"no", "not", "never", "n't"})

ALPHABET = "abcdefghijklmnopqrstuvwxyz"

MIN_STEM_LENGTH = 3

_TOKEN_RE = re.compile(r"[A-Za-z0-9]+|[^\sA-Za-z0-9]")
_DUP_PUNCT_RE = re.compile(r"([.!?,;])\1+")
_SENTENCE_SPLIT_RE = re.compile(r"(?<=[.!?])\s+")
_REPEAT_RUN_RE = re.compile(r"(.)\1{2,}")


@dataclass(frozen=True)
class Token:
    surface: str
    position: int


@dataclass(frozen=True)
class TaggedToken:
    token: Token
    tag: str
    stem: str


@dataclass(frozen=True)
class Sentence:
    tokens: tuple[TaggedToken, ...]
    raw: str


class FrequencyLexicon:
    """Word -> corpus frequency map backing the statistical spell corrector."""

    def __init__(self, counts: dict[str, int]):
        self.counts = {w.lower(): int(c) for w, c in counts.items() if c >= 1}
        self.total_count = sum(self.counts.values())

    def __contains__(self, word: str) -> bool:
        return word.lower() in self.counts

    def frequency(self, word: str) -> int:
        return self.counts.get(word.lower(), 0)

    @classmethod
    def from_file(cls, path) -> "FrequencyLexicon":
        counts = {}
        for line in Path(path).read_text(encoding="utf-8").splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            word, _, count = line.partition("\t")
            counts[word] = counts.get(word, 0) + (int(count) if count else 1)
        return cls(counts)

    @classmethod
    def from_corpus(cls, texts, seed: "FrequencyLexicon | None" = None) -> "FrequencyLexicon":
        counts = Counter(seed.counts if seed else {})
        for text in texts:
            counts.update(w.lower() for w in re.findall(r"[a-zA-Z]+", text))
        return cls(dict(counts))


class StopwordList:
    """Removable stop words plus negators that are never removed."""

    def __init__(self, words, preserved_negators=NEGATORS):
        self.preserved_negators = frozenset(w.lower() for w in preserved_negators)
        self.words = frozenset(w.lower() for w in words) - self.preserved_negators

    def is_removable(self, word: str) -> bool:
        return word.lower() in self.words

    @classmethod
    def from_file(cls, path, preserved_negators=NEGATORS) -> "StopwordList":
        words = [
            line.strip()
            for line in Path(path).read_text(encoding="utf-8").splitlines()
            if line.strip() and not line.startswith("#")
        ]
        return cls(words, preserved_negators)


def default_stopwords() -> StopwordList:
    return StopwordList.from_file(DATA_DIR / "stopwords.txt")


def default_frequency_lexicon() -> FrequencyLexicon:
    return FrequencyLexicon.from_file(DATA_DIR / "word_frequencies.tsv")


def load_tag_lexicon(path) -> dict[str, str]:
    """Read a "word<TAB>tag" file into a lookup dict."""
    lexicon = {}
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        word, _, tag = line.partition("\t")
        tag = tag.strip().upper()
        if tag not in TAG_SET:
            raise ValueError(f"unknown POS tag {tag!r} for word {word!r}")
        lexicon[word.strip().lower()] = tag
    return lexicon


def default_tag_lexicon() -> dict[str, str]:
    return load_tag_lexicon(DATA_DIR / "tag_lexicon.tsv")


def split_sentences(text: str) -> list[str]:
    """Split on terminal punctuation after collapsing duplicated marks."""
    collapsed = _DUP_PUNCT_RE.sub(r"\1", text)
    parts = [p.strip() for p in _SENTENCE_SPLIT_RE.split(collapsed)]
    return [p for p in parts if p]


def tokenize(sentence: str) -> list[Token]:
    """Alphanumeric runs become single tokens; punctuation splits off."""
    return [
        Token(surface=m.group(0), position=i)
        for i, m in enumerate(_TOKEN_RE.finditer(sentence))
    ]


def shorten_exaggeration(word: str, lexicon: FrequencyLexicon) -> str:
    """Collapse letter runs longer than two for out-of-lexicon words."""
    if not _REPEAT_RUN_RE.search(word) or word in lexicon:
        return word
    return _REPEAT_RUN_RE.sub(r"\1", word)


def edits1(word: str):
    """All strings one edit away (deletes, transposes, replaces, inserts)."""
    splits = [(word[:i], word[i:]) for i in range(len(word) + 1)]
    deletes = (left + right[1:] for left, right in splits if right)
    transposes = (
        left + right[1] + right[0] + right[2:] for left, right in splits if len(right) > 1
    )
    replaces = (left + c + right[1:] for left, right in splits if right for c in ALPHABET)
    inserts = (left + c + right for left, right in splits for c in ALPHABET)
    return set(deletes) | set(transposes) | set(replaces) | set(inserts)


def correct_spelling(word: str, lexicon: FrequencyLexicon) -> str:
    """Return the word if known, else the most frequent close candidate.

    Candidates at edit distance 1 are preferred over distance 2; ties on
    frequency break to the lexicographically smallest candidate.
    """
    lowered = word.lower()
    if lowered in lexicon:
        return word
    one = {w for w in edits1(lowered) if w in lexicon}
    if one:
        return min(one, key=lambda w: (-lexicon.frequency(w), w))
    two = {e2 for e1 in edits1(lowered) for e2 in edits1(e1) if e2 in lexicon}
    if two:
        return min(two, key=lambda w: (-lexicon.frequency(w), w))
    return word


def remove_stopwords(tokens: list[Token], stops: StopwordList) -> list[Token]:
    """Drop removable stop words; negators always survive."""
    return [t for t in tokens if not stops.is_removable(t.surface)]


def stem(word: str) -> str:
    """Suffix-stripping stemmer (plural -s/-es, -ing, -ed), fixpoint-iterated."""
    if not word:
        raise ValueError("cannot stem an empty word")
    current = word
    while True:
        reduced = _strip_one_suffix(current)
        if reduced == current:
            return current
        current = reduced


def _strip_one_suffix(word: str) -> str:
    lower = word.lower()
    if lower.endswith(("shes", "ches", "sses", "xes", "zes")) and len(word) - 2 >= MIN_STEM_LENGTH:
        return word[:-2]
    if (
        lower.endswith("s")
        and not lower.endswith(("ss", "us", "is"))
        and len(word) - 1 >= MIN_STEM_LENGTH
    ):
        return word[:-1]
    if lower.endswith("ing") and len(word) - 3 >= MIN_STEM_LENGTH:
        return word[:-3]
    if lower.endswith("ed") and len(word) - 2 >= MIN_STEM_LENGTH:
        return word[:-2]
    return word


def pos_tag(tokens: list[Token], tag_lexicon: dict[str, str]) -> list[TaggedToken]:
    """Lexicon lookup first, then suffix heuristics, final fallback NN."""
    noun_stems = {w for w, t in tag_lexicon.items() if t in ("NN", "NP")}
    tagged = []
    for token in tokens:
        word = token.surface
        lower = word.lower()
        if lower in tag_lexicon:
            tag = tag_lexicon[lower]
        elif word.isdigit():
            tag = "CD"
        elif not any(c.isalnum() for c in word):
            tag = "OTHER"
        elif lower.endswith("ly"):
            tag = "RB"
        elif lower.endswith(("ous", "ful", "less", "ive")):
            tag = "JJ"
        elif lower.endswith("s") and stem(lower) in noun_stems:
            tag = "NNS"
        else:
            tag = "NN"
        word_stem = stem(lower) if any(c.isalpha() for c in word) else lower
        tagged.append(TaggedToken(token=token, tag=tag, stem=word_stem))
    return tagged


@dataclass(frozen=True)
class AnalyzedReview:
    """Per-review output of the full lexical/syntactic pipeline."""

    sentences: tuple[Sentence, ...]
    # Cleaned term stream, one list per sentence: lowercased, spell
    # corrected, stop words removed (negators kept), stemmed.
    sentence_terms: tuple[tuple[str, ...], ...]

    @property
    def terms(self) -> list[str]:
        return [t for sent in self.sentence_terms for t in sent]


class TextPipeline:
    """Bundles the lexicons and runs the whole per-review analysis."""

    def __init__(self, frequency_lexicon=None, stopwords=None, tag_lexicon=None):
        self.stopwords = stopwords or default_stopwords()
        self.tag_lexicon = tag_lexicon or default_tag_lexicon()
        if frequency_lexicon is None:
            # Every taggable word (and noun plurals) counts as known so the
            # spell corrector only touches genuinely unknown words.
            counts = dict(default_frequency_lexicon().counts)
            for word, tag in self.tag_lexicon.items():
                counts.setdefault(word, 1)
                if tag == "NN":
                    counts.setdefault(word + "s", 1)
            frequency_lexicon = FrequencyLexicon(counts)
        self.frequency_lexicon = frequency_lexicon

    def analyze(self, text: str) -> AnalyzedReview:
        sentences = []
        sentence_terms = []
        for raw in split_sentences(text):
            tokens = []
            for token in tokenize(raw):
                surface = token.surface
                if any(c.isalpha() for c in surface):
                    surface = shorten_exaggeration(surface, self.frequency_lexicon)
                    surface = correct_spelling(surface, self.frequency_lexicon)
                tokens.append(Token(surface=surface, position=token.position))
            tagged = pos_tag(tokens, self.tag_lexicon)
            sentences.append(Sentence(tokens=tuple(tagged), raw=raw))

            terms = []
            for tt in tagged:
                word = tt.token.surface.lower()
                if not any(c.isalpha() for c in word):
                    continue
                if self.stopwords.is_removable(word):
                    continue
                terms.append(word if word in NEGATORS else tt.stem)
            sentence_terms.append(tuple(terms))
        return AnalyzedReview(sentences=tuple(sentences), sentence_terms=tuple(sentence_terms))
