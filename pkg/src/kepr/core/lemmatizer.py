"""Rule-table lemmatizer.

Irregular forms are looked up first; otherwise the first suffix rule whose
stem keeps at least three characters is applied.
"""

from functools import lru_cache

MIN_STEM = 3

# Irregular forms, plus words a suffix rule would mangle (mapped to themselves).
EXCEPTIONS = {
    "men": "man",
    "women": "woman",
    "children": "child",
    "feet": "foot",
    "teeth": "tooth",
    "geese": "goose",
    "mice": "mouse",
    "people": "person",
    "oxen": "ox",
    "knives": "knife",
    "wives": "wife",
    "lives": "life",
    "leaves": "leaf",
    "loaves": "loaf",
    "shelves": "shelf",
    "wolves": "wolf",
    "halves": "half",
    "is": "be",
    "are": "be",
    "was": "be",
    "were": "be",
    "been": "be",
    "has": "have",
    "had": "have",
    "does": "do",
    "did": "do",
    "went": "go",
    "gone": "go",
    "ran": "run",
    "ate": "eat",
    "eaten": "eat",
    "drank": "drink",
    "bought": "buy",
    "brought": "bring",
    "thought": "think",
    "made": "make",
    "kept": "keep",
    "left": "leave",
    "told": "tell",
    "goes": "go",
    "shoes": "shoe",
    "canoes": "canoe",
    "oboes": "oboe",
    "movies": "movie",
    "cookies": "cookie",
    "brownies": "brownie",
    "zombies": "zombie",
    "clothes": "clothes",
    "glasses": "glasses",
    "news": "news",
    "series": "series",
    "species": "species",
    "something": "something",
    "anything": "anything",
    "nothing": "nothing",
    "everything": "everything",
    "thing": "thing",
    "morning": "morning",
    "evening": "evening",
    "ceiling": "ceiling",
    "clothing": "clothing",
    "wedding": "wedding",
    "building": "building",
    "spring": "spring",
    "string": "string",
    "during": "during",
    "hundred": "hundred",
}

# (suffix, replacement) in the order they are tried.
SUFFIX_RULES = (
    ("ies", "y"),
    ("sses", "ss"),
    ("xes", "x"),
    ("zes", "z"),
    ("ches", "ch"),
    ("shes", "sh"),
    ("oes", "o"),
    ("s", ""),
    ("ing", ""),
    ("ed", ""),
)

# Plural -s is never stripped from these endings (glass, bus, basis).
_KEEP_S_ENDINGS = ("ss", "us", "is")
_VOWELS = set("aeiou")
_UNDOUBLED = set("lsz")


def _restore_verb_stem(stem: str) -> str:
    """Undo consonant doubling (running -> run) or restore a silent e (making -> make)."""
    if len(stem) > MIN_STEM and stem[-1] == stem[-2] and stem[-1] not in _VOWELS | _UNDOUBLED:
        return stem[:-1]
    if (
        len(stem) == MIN_STEM
        and stem[0] not in _VOWELS
        and stem[1] in _VOWELS
        and stem[2] not in _VOWELS | set("wxy")
    ):
        return stem + "e"
    return stem


@lru_cache(maxsize=65536)
def lemmatize(token: str) -> str:
    """Lemma of a lowercase token."""
    if token in EXCEPTIONS:
        return EXCEPTIONS[token]

    for suffix, replacement in SUFFIX_RULES:
        if not token.endswith(suffix):
            continue
        if suffix == "s" and token.endswith(_KEEP_S_ENDINGS):
            continue
        if suffix == "ed" and token.endswith("eed"):
            continue
        stem = token[: -len(suffix)] + replacement
        if len(stem) < MIN_STEM:
            continue
        if suffix in ("ing", "ed"):
            return _restore_verb_stem(stem)
        return stem
    return token
