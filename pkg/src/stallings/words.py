"""Free-group words over a finite alphabet.

A letter is a nonzero ``int``: ``+g`` is generator ``g`` and ``-g`` its
inverse. Generators are numbered from 1. A :class:`Word` is always stored
freely reduced.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator

Letter = int


class WordParseError(ValueError):
    """Malformed word text. ``column`` is 1-based."""

    def __init__(self, message: str, column: int | None = None):
        self.column = column
        if column is not None:
            message = f"column {column}: {message}"
        super().__init__(message)


def _check_letter(x: int, alphabet_size: int | None = None) -> None:
    if not isinstance(x, int) or x == 0:
        raise ValueError(f"invalid letter {x!r}: generator index must be >= 1")
    if alphabet_size is not None and abs(x) > alphabet_size:
        raise ValueError(f"generator {abs(x)} out of range for alphabet of size {alphabet_size}")


def free_reduce(raw: Iterable[Letter]) -> Word:
    """Cancel adjacent ``x, -x`` pairs with a stack; returns the reduced word."""
    stack: list[int] = []
    for x in raw:
        _check_letter(x)
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    return Word._trusted(tuple(stack))


class Word:
    """Freely reduced element of a free group.

    Supports ``u * v`` (reduced product), ``~w`` (inverse), ``w ** n``,
    ``len``, iteration, indexing, hashing and ordering (shortlex).
    """

    __slots__ = ("letters",)

    letters: tuple[int, ...]

    def __init__(self, letters: Iterable[Letter] = ()):
        object.__setattr__(self, "letters", free_reduce(letters).letters)

    @classmethod
    def _trusted(cls, letters: tuple[int, ...]) -> Word:
        w = object.__new__(cls)
        object.__setattr__(w, "letters", letters)
        return w

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    def __reduce__(self):
        return (Word, (self.letters,))

    @classmethod
    def identity(cls) -> Word:
        return _EMPTY

    @classmethod
    def parse(cls, text: str) -> Word:
        return parse_word(text)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return Word._trusted(self.letters[i])
        return self.letters[i]

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __eq__(self, other) -> bool:
        if isinstance(other, Word):
            return self.letters == other.letters
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.letters)

    def __lt__(self, other: Word) -> bool:
        return (len(self), self.letters) < (len(other), other.letters)

    def __mul__(self, other: Word) -> Word:
        return concat(self, other)

    def __invert__(self) -> Word:
        return invert(self)

    def __pow__(self, n: int) -> Word:
        if n < 0:
            return invert(self) ** -n
        core, conj = cyclically_reduce(self)
        # conj . core^n . conj^-1 is already reduced
        return Word._trusted(conj.letters + core.letters * n + invert(conj).letters) if n else _EMPTY

    def max_generator(self) -> int:
        return max((abs(x) for x in self.letters), default=0)

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"


_EMPTY = Word._trusted(())


def invert(w: Word) -> Word:
    return Word._trusted(tuple(-x for x in reversed(w.letters)))


def concat(u: Word, v: Word) -> Word:
    a, b = u.letters, v.letters
    k = 0
    m = min(len(a), len(b))
    while k < m and a[len(a) - 1 - k] == -b[k]:
        k += 1
    return Word._trusted(a[: len(a) - k] + b[k:])


def cyclically_reduce(w: Word) -> tuple[Word, Word]:
    """Split ``w`` as ``conjugator * core * conjugator**-1``.

    ``core`` is cyclically reduced and ``conjugator`` is the longest prefix
    allowing the split.
    """
    s = w.letters
    i, j = 0, len(s) - 1
    while i < j and s[i] == -s[j]:
        i += 1
        j -= 1
    return Word._trusted(s[i : j + 1]), Word._trusted(s[:i])


def is_cyclically_reduced(w: Word) -> bool:
    return len(w) < 2 or w.letters[0] != -w.letters[-1]


# -- text format -----------------------------------------------------------
#
# compact: 'a'..'z' are generators 1..26, uppercase their inverses
# long:    whitespace-separated tokens 'x<g>' / 'X<g>'
# identity: '1'


def letter_to_char(x: Letter) -> str:
    g = abs(x)
    if g > 26:
        raise ValueError(f"generator {g} has no compact form")
    c = chr(ord("a") + g - 1)
    return c if x > 0 else c.upper()


def char_to_letter(c: str) -> Letter:
    if "a" <= c <= "z":
        return ord(c) - ord("a") + 1
    if "A" <= c <= "Z":
        return -(ord(c) - ord("A") + 1)
    raise ValueError(f"not a letter: {c!r}")


def format_word(w: Word, alphabet_size: int | None = None) -> str:
    if not w:
        return "1"
    limit = alphabet_size if alphabet_size is not None else w.max_generator()
    if limit <= 26:
        return "".join(letter_to_char(x) for x in w.letters)
    return " ".join(f"x{x}" if x > 0 else f"X{-x}" for x in w.letters)


def parse_word(text: str, alphabet_size: int | None = None) -> Word:
    """Parse compact (``"abA"``) or long (``"x3 X7"``) word text."""
    s = text.strip()
    if s == "1" or s == "":
        return _EMPTY
    letters: list[int] = []
    offset = len(text) - len(text.lstrip())
    if s[0] in "xX" and len(s) > 1 and s[1].isdigit():
        col = offset
        for token in s.split():
            col = text.index(token, col)
            if len(token) < 2 or token[0] not in "xX" or not token[1:].isdigit():
                raise WordParseError(f"bad token {token!r}", col + 1)
            g = int(token[1:])
            if g == 0:
                raise WordParseError("generator index must be >= 1", col + 1)
            letters.append(g if token[0] == "x" else -g)
            col += len(token)
    else:
        for i, c in enumerate(s):
            if not c.isascii() or not c.isalpha():
                raise WordParseError(f"unexpected character {c!r}", offset + i + 1)
            letters.append(char_to_letter(c))
    if alphabet_size is not None:
        for x in letters:
            if abs(x) > alphabet_size:
                raise WordParseError(
                    f"generator {abs(x)} out of range for alphabet of size {alphabet_size}"
                )
    return free_reduce(letters)


def signed_letters(alphabet_size: int) -> list[Letter]:
    """All 2n directions in the fixed order ``1, -1, 2, -2, ...``."""
    out = []
    for g in range(1, alphabet_size + 1):
        out.append(g)
        out.append(-g)
    return out


def letter_key(x: Letter) -> tuple[int, int]:
    return (abs(x), 0 if x > 0 else 1)
