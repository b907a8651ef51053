"""Ring and module backends for the noncommutative recurrence solvers.

Three concrete backends share one informal contract:

* ``Matrix`` / ``ColumnVector`` -- dense square matrices over exact
  rationals (``fractions.Fraction``) or 64-bit floats, acting on column
  vectors of the same dimension and entry kind;
* exact rational scalars -- plain ``Fraction`` (or ``int``) values serve
  as both ring element and vector;
* ``FreeElement`` / ``FreeVector`` -- integer-coefficient formal sums of
  words over the two-letter alphabet, the symbolic backend on which
  closed-form identities can be checked monomial by monomial.

Every ring element supplies a zero, an identity, commutative addition
and (generally noncommutative) multiplication; vectors supply a zero,
addition and a left action of ring elements.  All values are immutable
after construction and all operations are pure functions, so elements
may be shared freely between threads.

The generic entry points :func:`compose`, :func:`apply`,
:func:`ring_one`, :func:`ring_zero` and :func:`vector_zero` dispatch on
the backend type; mixing backends (or matrix dimensions, or exact and
float entries) raises :class:`BackendMismatchError`.
"""
from __future__ import annotations

import math
from fractions import Fraction

# Word letters.  Letter 0 stands for a left factor L0, letter 1 for a
# factor L1; position 0 in a word is the leftmost factor of the product.
L0_LETTER = 0
L1_LETTER = 1
LETTER_CHARS = "AB"

# Tolerances for the float-matrix backend.
FLOAT_REL_TOL = 1e-9
FLOAT_ABS_TOL = 1e-12


class BackendMismatchError(TypeError):
    """Raised when two values do not live in the same backend.

    Covers mixed backend kinds, mixed matrix dimensions and mixed
    exact/float entry fields.
    """

    def __init__(self, message, left=None, right=None):
        super().__init__(message)
        self.left = left
        self.right = right


# ---------------------------------------------------------------------------
# Words over the two-letter alphabet
# ---------------------------------------------------------------------------

def word_to_str(word):
    """Render a word as its canonical 'A'/'B' text form ('' for the empty word)."""
    return "".join(LETTER_CHARS[letter] for letter in word)


def word_from_str(text):
    """Parse the canonical 'A'/'B' text form back into a word tuple."""
    try:
        return tuple(LETTER_CHARS.index(ch) for ch in text)
    except ValueError:
        raise ValueError(f"invalid word text {text!r}: letters must be 'A' or 'B'") from None


def _format_terms(terms, unit_label, vector_label=None):
    """Shared pretty-printer for free elements and free vectors.

    Terms are ordered by word length then lexicographically, matching
    the usual graded presentation (e.g. ``AB + BA`` or ``B·y1``).
    """
    if not terms:
        return "0"
    parts = []
    for word in sorted(terms, key=lambda w: (len(w), w)):
        coeff = terms[word]
        pieces = []
        if abs(coeff) != 1:
            pieces.append(str(abs(coeff)))
        if word:
            pieces.append(word_to_str(word))
        if vector_label is not None:
            pieces.append(vector_label)
        if not pieces or pieces == [str(abs(coeff))]:
            pieces.append(unit_label)
        if parts:
            parts.append(" - " if coeff < 0 else " + ")
        elif coeff < 0:
            parts.append("-")
        parts.append("·".join(pieces))
    return "".join(parts)


def _merged(left, right, sign=1):
    """Merge two word->coefficient maps, dropping cancelled terms."""
    out = dict(left)
    for word, coeff in right.items():
        total = out.get(word, 0) + sign * coeff
        if total:
            out[word] = total
        elif word in out:
            del out[word]
    return out


def _concat_product(left, right):
    """Bilinear extension of word concatenation to coefficient maps."""
    out = {}
    for w1, c1 in left.items():
        for w2, c2 in right.items():
            word = w1 + w2
            total = out.get(word, 0) + c1 * c2
            if total:
                out[word] = total
            elif word in out:
                del out[word]
    return out


def _canonical_terms(terms):
    bad = [w for w in terms if not all(letter in (0, 1) for letter in w)]
    if bad:
        raise ValueError(f"invalid word {bad[0]!r}: letters must be 0 or 1")
    return {tuple(word): coeff for word, coeff in terms.items() if coeff}


class FreeElement:
    """Element of the free word algebra on two generators.

    Stored as a map from words (tuples over ``{0, 1}``) to nonzero
    integer coefficients; the empty map is zero and ``{(): 1}`` is the
    identity.  Multiplication concatenates words bilinearly, so two
    elements are equal exactly when their term maps coincide.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        object.__setattr__(self, "terms", _canonical_terms(terms or {}))

    def __setattr__(self, name, value):
        raise AttributeError("FreeElement is immutable")

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({(): 1})

    @classmethod
    def letter(cls, letter):
        if letter not in (0, 1):
            raise ValueError(f"letter must be 0 or 1, got {letter!r}")
        return cls({(letter,): 1})

    @classmethod
    def generators(cls):
        """The pair (A, B) of one-letter generators."""
        return cls.letter(L0_LETTER), cls.letter(L1_LETTER)

    def __add__(self, other):
        if not isinstance(other, FreeElement):
            return NotImplemented
        return FreeElement(_merged(self.terms, other.terms))

    def __sub__(self, other):
        if not isinstance(other, FreeElement):
            return NotImplemented
        return FreeElement(_merged(self.terms, other.terms, sign=-1))

    def __neg__(self):
        return FreeElement({w: -c for w, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return FreeElement({w: c * other for w, c in self.terms.items()} if other else {})
        if not isinstance(other, FreeElement):
            return NotImplemented
        return FreeElement(_concat_product(self.terms, other.terms))

    def __rmul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return self.__mul__(other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, FreeElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def monomial_count(self):
        return len(self.terms)

    def coefficient(self, word):
        return self.terms.get(tuple(word), 0)

    def to_coeff_map(self):
        """JSON-friendly form: {'A'/'B' word text: integer coefficient}."""
        return {word_to_str(w): c for w, c in sorted(self.terms.items())}

    @classmethod
    def from_coeff_map(cls, mapping):
        return cls({word_from_str(text): coeff for text, coeff in mapping.items()})

    def __str__(self):
        return _format_terms(self.terms, "I")

    def __repr__(self):
        return f"FreeElement({self})"


class FreeVector:
    """Formal sum of words applied to the abstract initial vector.

    ``FreeVector.generator()`` is the initial vector itself; acting with
    a :class:`FreeElement` prepends its words.  Rendered with a
    ``·y1`` suffix, e.g. ``B·y1`` or ``A·y1 + BB·y1``.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        object.__setattr__(self, "terms", _canonical_terms(terms or {}))

    def __setattr__(self, name, value):
        raise AttributeError("FreeVector is immutable")

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def generator(cls):
        return cls({(): 1})

    def __add__(self, other):
        if not isinstance(other, FreeVector):
            return NotImplemented
        return FreeVector(_merged(self.terms, other.terms))

    def __sub__(self, other):
        if not isinstance(other, FreeVector):
            return NotImplemented
        return FreeVector(_merged(self.terms, other.terms, sign=-1))

    def __eq__(self, other):
        if not isinstance(other, FreeVector):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def to_coeff_map(self):
        return {word_to_str(w): c for w, c in sorted(self.terms.items())}

    @classmethod
    def from_coeff_map(cls, mapping):
        return cls({word_from_str(text): coeff for text, coeff in mapping.items()})

    def __str__(self):
        return _format_terms(self.terms, "y1", vector_label="y1")

    def __repr__(self):
        return f"FreeVector({self})"


# ---------------------------------------------------------------------------
# Dense square matrices over Fraction or float
# ---------------------------------------------------------------------------

def _coerce_entries(entries, context):
    """Normalize a flat iterable of entries to all-Fraction or all-float.

    Integers are exact and join either field; mixing Fraction and float
    entries is rejected rather than silently losing exactness.
    """
    values = list(entries)
    has_float = any(isinstance(v, float) for v in values)
    has_fraction = any(isinstance(v, Fraction) for v in values)
    if has_float and has_fraction:
        raise ValueError(f"{context}: cannot mix exact and float entries")
    for v in values:
        if isinstance(v, bool) or not isinstance(v, (int, float, Fraction)):
            raise ValueError(f"{context}: invalid entry {v!r}")
    if has_float:
        return [float(v) for v in values], False
    return [Fraction(v) for v in values], True


class Matrix:
    """Square matrix backend element.

    Entries are either all exact rationals (kept in canonical reduced
    form by ``Fraction``) or all floats; the two fields never mix.
    ``a * b`` is the matrix product when ``b`` is a :class:`Matrix` and
    the action on a :class:`ColumnVector` otherwise.  ``==`` is exact
    entrywise equality; use :meth:`isclose` for float comparisons.
    """

    __slots__ = ("rows", "n", "exact")

    def __init__(self, rows):
        rows = [list(r) for r in rows]
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ValueError("matrix must be square with at least one row")
        flat, exact = _coerce_entries((v for r in rows for v in r), "matrix")
        object.__setattr__(self, "rows", tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n)))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "exact", exact)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def identity(cls, n, exact=True):
        one = Fraction(1) if exact else 1.0
        zero = Fraction(0) if exact else 0.0
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n, exact=True):
        zero = Fraction(0) if exact else 0.0
        return cls([[zero] * n for _ in range(n)])

    def _check_compatible(self, other):
        if self.n != other.n:
            raise BackendMismatchError(
                f"matrix dimension mismatch: {self.n} vs {other.n}", self, other)
        if self.exact != other.exact:
            raise BackendMismatchError(
                "cannot mix exact and float matrix backends", self, other)

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_compatible(other)
        return Matrix([[a + b for a, b in zip(ra, rb)]
                       for ra, rb in zip(self.rows, other.rows)])

    def __sub__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_compatible(other)
        return Matrix([[a - b for a, b in zip(ra, rb)]
                       for ra, rb in zip(self.rows, other.rows)])

    def __mul__(self, other):
        if isinstance(other, Matrix):
            self._check_compatible(other)
            cols = tuple(zip(*other.rows))
            return Matrix([[sum(a * b for a, b in zip(row, col)) for col in cols]
                           for row in self.rows])
        if isinstance(other, ColumnVector):
            if self.n != other.n or self.exact != other.exact:
                raise BackendMismatchError(
                    "matrix/vector dimension or field mismatch", self, other)
            return ColumnVector([sum(a * b for a, b in zip(row, other.entries))
                                 for row in self.rows])
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.n == other.n and self.exact == other.exact
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.n, self.exact, self.rows))

    def isclose(self, other, rel_tol=FLOAT_REL_TOL, abs_tol=FLOAT_ABS_TOL):
        """Entrywise tolerant comparison (the float backend's equality)."""
        if not isinstance(other, Matrix) or self.n != other.n:
            return False
        return all(
            math.isclose(float(a), float(b), rel_tol=rel_tol, abs_tol=abs_tol)
            for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb))

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(format_entry(v) for v in row) + "]"
                               for row in self.rows) + "]"

    def __repr__(self):
        return f"Matrix({self})"


class ColumnVector:
    """Column vector acted on by matrices of the same dimension and field."""

    __slots__ = ("entries", "n", "exact")

    def __init__(self, entries):
        flat, exact = _coerce_entries(entries, "vector")
        if not flat:
            raise ValueError("vector must have at least one entry")
        object.__setattr__(self, "entries", tuple(flat))
        object.__setattr__(self, "n", len(flat))
        object.__setattr__(self, "exact", exact)

    def __setattr__(self, name, value):
        raise AttributeError("ColumnVector is immutable")

    @classmethod
    def zeros(cls, n, exact=True):
        zero = Fraction(0) if exact else 0.0
        return cls([zero] * n)

    def __add__(self, other):
        if not isinstance(other, ColumnVector):
            return NotImplemented
        if self.n != other.n or self.exact != other.exact:
            raise BackendMismatchError("vector dimension or field mismatch", self, other)
        return ColumnVector([a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other):
        if not isinstance(other, ColumnVector):
            return NotImplemented
        if self.n != other.n or self.exact != other.exact:
            raise BackendMismatchError("vector dimension or field mismatch", self, other)
        return ColumnVector([a - b for a, b in zip(self.entries, other.entries)])

    def __eq__(self, other):
        if not isinstance(other, ColumnVector):
            return NotImplemented
        return (self.n == other.n and self.exact == other.exact
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.n, self.exact, self.entries))

    def isclose(self, other, rel_tol=FLOAT_REL_TOL, abs_tol=FLOAT_ABS_TOL):
        if not isinstance(other, ColumnVector) or self.n != other.n:
            return False
        return all(math.isclose(float(a), float(b), rel_tol=rel_tol, abs_tol=abs_tol)
                   for a, b in zip(self.entries, other.entries))

    def __str__(self):
        return "[" + ", ".join(format_entry(v) for v in self.entries) + "]"

    def __repr__(self):
        return f"ColumnVector({self})"


def format_entry(value):
    """Render one matrix/vector entry ('p/q' for rationals, repr for floats)."""
    if isinstance(value, Fraction):
        return str(value)
    return repr(value)


# ---------------------------------------------------------------------------
# Generic backend dispatch
# ---------------------------------------------------------------------------

def word_to_element(word, L0, L1, counter=None):
    """Evaluate a word as the left-to-right product of its factors.

    The empty word maps to the identity; a word of length k costs
    max(k-1, 0) ring multiplications.  ``counter`` is any object with a
    ``tick()`` method (see ``permsum.MultCounter``) and receives one
    tick per multiplication performed.
    """
    check_same_backend(L0, L1)
    factors = (L0, L1)
    if not word:
        return ring_one(L0)
    product = factors[word[0]]
    for letter in word[1:]:
        product = compose(product, factors[letter])
        if counter is not None:
            counter.tick()
    return product


def is_scalar(value):
    """True for exact rational scalars (the 1-dimensional exact backend)."""
    return isinstance(value, Fraction) or (
        isinstance(value, int) and not isinstance(value, bool))


def check_same_backend(a, b):
    """Raise :class:`BackendMismatchError` unless a and b share a backend."""
    if is_scalar(a) and is_scalar(b):
        return
    if isinstance(a, FreeElement) and isinstance(b, FreeElement):
        return
    if isinstance(a, Matrix) and isinstance(b, Matrix):
        a._check_compatible(b)
        return
    raise BackendMismatchError(
        f"elements from different backends: {type(a).__name__} vs {type(b).__name__}", a, b)


def check_apply_compat(ring_element, vector):
    """Raise unless ``vector`` lives in the module acted on by ``ring_element``."""
    if is_scalar(ring_element) and is_scalar(vector):
        return
    if isinstance(ring_element, FreeElement) and isinstance(vector, FreeVector):
        return
    if isinstance(ring_element, Matrix) and isinstance(vector, ColumnVector):
        if ring_element.n == vector.n and ring_element.exact == vector.exact:
            return
        raise BackendMismatchError(
            "matrix/vector dimension or field mismatch", ring_element, vector)
    raise BackendMismatchError(
        f"cannot apply {type(ring_element).__name__} to {type(vector).__name__}",
        ring_element, vector)


def compose(a, b):
    """Ring product a·b (matrix product / word concatenation / scalar product)."""
    check_same_backend(a, b)
    if is_scalar(a):
        return Fraction(a) * Fraction(b)
    return a * b


def apply(ring_element, vector):
    """Left action of a ring element on a module vector."""
    check_apply_compat(ring_element, vector)
    if is_scalar(ring_element):
        return Fraction(ring_element) * Fraction(vector)
    if isinstance(ring_element, FreeElement):
        return FreeVector(_concat_product(ring_element.terms, vector.terms))
    return ring_element * vector


def ring_one(element):
    """The multiplicative identity of ``element``'s backend."""
    if is_scalar(element):
        return Fraction(1)
    if isinstance(element, FreeElement):
        return FreeElement.one()
    if isinstance(element, Matrix):
        return Matrix.identity(element.n, exact=element.exact)
    raise BackendMismatchError(f"not a ring element: {element!r}", element)


def ring_zero(element):
    """The additive identity of ``element``'s backend."""
    if is_scalar(element):
        return Fraction(0)
    if isinstance(element, FreeElement):
        return FreeElement.zero()
    if isinstance(element, Matrix):
        return Matrix.zeros(element.n, exact=element.exact)
    raise BackendMismatchError(f"not a ring element: {element!r}", element)


def vector_zero(vector):
    """The zero vector of ``vector``'s module."""
    if is_scalar(vector):
        return Fraction(0)
    if isinstance(vector, FreeVector):
        return FreeVector.zero()
    if isinstance(vector, ColumnVector):
        return ColumnVector.zeros(vector.n, exact=vector.exact)
    raise BackendMismatchError(f"not a module vector: {vector!r}", vector)
