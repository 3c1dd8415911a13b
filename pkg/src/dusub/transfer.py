"""DUA sets and the five-set transfer-function algebra.

A transfer function has the shape::

    f(x) = B | (x - D) | C | ((x - CS) & P)

Per element this is one of three things: always present (in ``B | C``),
passed through from ``x``, or always absent.  That three-way view gives an
exact composition; :func:`closed_form_compose` keeps the textbook
rewriting, which is known to drop elements, as a checked diagnostic.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import ClosedFormMismatchWarning, UniverseMismatchError


class DuaSet:
    """Immutable subset of a fixed universe ``{0, ..., size-1}``.

    Stored as an integer bit mask.  Binary operators require both operands to
    share a universe size.
    """

    __slots__ = ("bits", "size")

    def __init__(self, size: int, bits: int = 0):
        if bits >> size:
            raise ValueError(f"bit mask exceeds universe of size {size}")
        object.__setattr__(self, "size", size)
        object.__setattr__(self, "bits", bits)

    def __setattr__(self, name, value):
        raise AttributeError("DuaSet is immutable")

    @classmethod
    def empty(cls, size: int) -> "DuaSet":
        return cls(size, 0)

    @classmethod
    def full(cls, size: int) -> "DuaSet":
        return cls(size, (1 << size) - 1)

    @classmethod
    def of(cls, size: int, indices: Iterable[int]) -> "DuaSet":
        bits = 0
        for i in indices:
            if not 0 <= i < size:
                raise IndexError(f"index {i} outside universe of size {size}")
            bits |= 1 << i
        return cls(size, bits)

    def _check(self, other: "DuaSet") -> None:
        if self.size != other.size:
            raise UniverseMismatchError(self.size, other.size)

    def __and__(self, other: "DuaSet") -> "DuaSet":
        self._check(other)
        return DuaSet(self.size, self.bits & other.bits)

    def __or__(self, other: "DuaSet") -> "DuaSet":
        self._check(other)
        return DuaSet(self.size, self.bits | other.bits)

    def __sub__(self, other: "DuaSet") -> "DuaSet":
        self._check(other)
        return DuaSet(self.size, self.bits & ~other.bits)

    def __le__(self, other: "DuaSet") -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    def __ge__(self, other: "DuaSet") -> bool:
        return other <= self

    def __lt__(self, other: "DuaSet") -> bool:
        return self <= other and self.bits != other.bits

    def __gt__(self, other: "DuaSet") -> bool:
        return other < self

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DuaSet):
            return NotImplemented
        return self.size == other.size and self.bits == other.bits

    def __hash__(self) -> int:
        return hash((self.size, self.bits))

    def __contains__(self, index: int) -> bool:
        return 0 <= index < self.size and bool(self.bits >> index & 1)

    def __iter__(self) -> Iterator[int]:
        bits = self.bits
        while bits:
            low = bits & -bits
            yield low.bit_length() - 1
            bits ^= low

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __bool__(self) -> bool:
        return self.bits != 0

    def __repr__(self) -> str:
        return f"DuaSet({self.size}, {{{', '.join(map(str, self))}}})"


def meet(x: DuaSet, y: DuaSet) -> DuaSet:
    return x & y


@dataclass(frozen=True)
class TransferFunction:
    born: DuaSet
    disabled: DuaSet
    covered: DuaSet
    cur_sleepy: DuaSet
    pot_covered: DuaSet

    def __post_init__(self) -> None:
        size = self.born.size
        for s in (self.disabled, self.covered, self.cur_sleepy, self.pot_covered):
            if s.size != size:
                raise UniverseMismatchError(size, s.size)

    @property
    def size(self) -> int:
        return self.born.size

    def __call__(self, x: DuaSet) -> DuaSet:
        return apply(self, x)

    # Per-element classification: always in, passed through from x, always out.
    def always(self) -> DuaSet:
        return self.born | self.covered

    def passes(self) -> DuaSet:
        keeps = DuaSet.full(self.size) - self.disabled
        guarded = self.pot_covered - self.cur_sleepy
        return (keeps | guarded) - self.always()

    def kills(self) -> DuaSet:
        return DuaSet.full(self.size) - self.always() - self.passes()


def apply(f: TransferFunction, x: DuaSet) -> DuaSet:
    if x.size != f.size:
        raise UniverseMismatchError(f.size, x.size)
    return f.born | (x - f.disabled) | f.covered | ((x - f.cur_sleepy) & f.pot_covered)


def identity(size: int) -> TransferFunction:
    e = DuaSet.empty(size)
    return TransferFunction(e, e, e, e, e)


def closed_form_compose(f1: TransferFunction, f2: TransferFunction) -> TransferFunction:
    """The five-set renaming for ``f2 . f1`` as derived by hand.

    Not equivalent to sequential application in general: an element of
    ``D1 & P1`` outside ``CS1`` survives ``f1`` and then ``f2`` but is
    dropped here.  Use :func:`compose` for the exact result.
    """
    b = f2.born | (f1.born - f2.disabled)
    d = f1.disabled | f2.disabled
    c = (
        (f1.covered - f2.disabled)
        | f2.covered
        | (((f1.covered | f1.born) - f2.cur_sleepy) & f2.pot_covered)
    )
    cs = f1.disabled | f2.disabled | f1.cur_sleepy | f2.cur_sleepy
    p = f1.pot_covered | f2.pot_covered
    return TransferFunction(b, d, c, cs, p)


def equivalent(f: TransferFunction, g: TransferFunction) -> bool:
    """Exact pointwise equality over every input set."""
    if f.size != g.size:
        raise UniverseMismatchError(f.size, g.size)
    return f.always() == g.always() and f.passes() == g.passes()


def closed_form_errata(f1: TransferFunction, f2: TransferFunction) -> DuaSet:
    """Elements on which the closed form and ``f2(f1(x))`` can disagree.

    Empty when the closed form is exact for this pair.  Any ``x`` containing
    a returned element is a concrete counterexample input.
    """
    exact = compose(f1, f2, check=False)
    closed = closed_form_compose(f1, f2)
    return (
        DuaSet(f1.size, exact.always().bits ^ closed.always().bits)
        | DuaSet(f1.size, exact.passes().bits ^ closed.passes().bits)
    )


def compose(f1: TransferFunction, f2: TransferFunction, *, check: bool = True) -> TransferFunction:
    """Function equivalent to applying ``f1`` first, then ``f2``.

    The result is exact by construction.  With ``check`` set, a
    :class:`ClosedFormMismatchWarning` is emitted when the hand-derived
    closed form would have produced a different function.
    """
    if f1.size != f2.size:
        raise UniverseMismatchError(f1.size, f2.size)
    always = f2.always() | (f1.always() & f2.passes())
    passes = f1.passes() & f2.passes()
    killed = DuaSet.full(f1.size) - always - passes
    empty = DuaSet.empty(f1.size)
    result = TransferFunction(always, killed, empty, empty, empty)
    if check and closed_form_errata(f1, f2):
        warnings.warn(
            ClosedFormMismatchWarning(
                "closed-form composition differs from sequential application; "
                "returning the exact composition"
            ),
            stacklevel=2,
        )
    return result


def is_distributive_witness(f: TransferFunction, y: DuaSet, z: DuaSet) -> bool:
    return apply(f, y & z) == apply(f, y) & apply(f, z)
