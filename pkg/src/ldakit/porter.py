"""Porter suffix-stripping stemmer (the classic 1980 rule tables).

Self-contained so the preprocessing pipeline has no external model or data
dependency. Input is expected to be a lowercase alphabetic token; anything
of length <= 2 is returned unchanged.
"""

from __future__ import annotations

_VOWELS = frozenset("aeiou")


def _cons(word: str, i: int) -> bool:
    # 'y' counts as a vowel when it follows a consonant ("syzygy"),
    # as a consonant at the start of a word or after a vowel ("toy").
    ch = word[i]
    if ch in _VOWELS:
        return False
    if ch == "y":
        return i == 0 or not _cons(word, i - 1)
    return True


def _measure(stem: str) -> int:
    """Number of vowel->consonant transitions, the m of [C](VC)^m[V]."""
    m = 0
    prev_vowel = False
    for i in range(len(stem)):
        if _cons(stem, i):
            if prev_vowel:
                m += 1
            prev_vowel = False
        else:
            prev_vowel = True
    return m


def _has_vowel(stem: str) -> bool:
    return any(not _cons(stem, i) for i in range(len(stem)))


def _ends_double_cons(word: str) -> bool:
    return len(word) >= 2 and word[-1] == word[-2] and _cons(word, len(word) - 1)


def _ends_cvc(word: str) -> bool:
    n = len(word)
    return (
        n >= 3
        and _cons(word, n - 3)
        and not _cons(word, n - 2)
        and _cons(word, n - 1)
        and word[-1] not in "wxy"
    )


def _step1a(w: str) -> str:
    if w.endswith("sses"):
        return w[:-2]
    if w.endswith("ies"):
        return w[:-2]
    if w.endswith("ss"):
        return w
    if w.endswith("s"):
        return w[:-1]
    return w


def _step1b(w: str) -> str:
    if w.endswith("eed"):
        return w[:-1] if _measure(w[:-3]) > 0 else w
    if w.endswith("ed") and _has_vowel(w[:-2]):
        return _step1b_cleanup(w[:-2])
    if w.endswith("ing") and _has_vowel(w[:-3]):
        return _step1b_cleanup(w[:-3])
    return w


def _step1b_cleanup(w: str) -> str:
    # Fires only after an -ed/-ing removal.
    if w.endswith(("at", "bl", "iz")):
        return w + "e"
    if _ends_double_cons(w) and w[-1] not in "lsz":
        return w[:-1]
    if _measure(w) == 1 and _ends_cvc(w):
        return w + "e"
    return w


def _step1c(w: str) -> str:
    if w.endswith("y") and _has_vowel(w[:-1]):
        return w[:-1] + "i"
    return w


# Longest suffixes first wherever one rule's suffix ends with another's.
_STEP2 = (
    ("ational", "ate"),
    ("tional", "tion"),
    ("enci", "ence"),
    ("anci", "ance"),
    ("izer", "ize"),
    ("abli", "able"),
    ("alli", "al"),
    ("entli", "ent"),
    ("eli", "e"),
    ("ousli", "ous"),
    ("ization", "ize"),
    ("ation", "ate"),
    ("ator", "ate"),
    ("alism", "al"),
    ("iveness", "ive"),
    ("fulness", "ful"),
    ("ousness", "ous"),
    ("aliti", "al"),
    ("iviti", "ive"),
    ("biliti", "ble"),
)

_STEP3 = (
    ("icate", "ic"),
    ("ative", ""),
    ("alize", "al"),
    ("iciti", "ic"),
    ("ical", "ic"),
    ("ful", ""),
    ("ness", ""),
)


def _apply_table(w: str, table, m_min: int) -> str:
    for suffix, repl in table:
        if w.endswith(suffix):
            stem_ = w[: len(w) - len(suffix)]
            if _measure(stem_) > m_min:
                return stem_ + repl
            return w
    return w


def _step4(w: str) -> str:
    for suffix in ("al", "ance", "ence", "er", "ic", "able", "ible", "ant",
                   "ement", "ment", "ent"):
        if w.endswith(suffix):
            stem_ = w[: len(w) - len(suffix)]
            return stem_ if _measure(stem_) > 1 else w
    if w.endswith("ion"):
        stem_ = w[:-3]
        if stem_ and stem_[-1] in "st" and _measure(stem_) > 1:
            return stem_
        return w
    for suffix in ("ou", "ism", "ate", "iti", "ous", "ive", "ize"):
        if w.endswith(suffix):
            stem_ = w[: len(w) - len(suffix)]
            return stem_ if _measure(stem_) > 1 else w
    return w


def _step5a(w: str) -> str:
    if w.endswith("e"):
        m = _measure(w[:-1])
        if m > 1:
            return w[:-1]
        if m == 1 and not _ends_cvc(w[:-1]):
            return w[:-1]
    return w


def _step5b(w: str) -> str:
    if _measure(w) > 1 and _ends_double_cons(w) and w.endswith("l"):
        return w[:-1]
    return w


def stem(word: str) -> str:
    """Stem a single lowercase token."""
    if len(word) <= 2:
        return word
    w = _step1c(_step1b(_step1a(word)))
    w = _apply_table(w, _STEP2, 0)
    w = _apply_table(w, _STEP3, 0)
    return _step5b(_step5a(_step4(w)))
