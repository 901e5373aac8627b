"""Exact supercommutative polynomial arithmetic over the rationals.

Functions on a polynomial chart of superdimension n|m form the algebra
Q[x_1..x_n] (x) Lambda[xi_1..xi_m]: ordinary polynomials in the even
(commuting) variables times Grassmann monomials in the odd
(anticommuting) ones.  Elements are stored sparsely as a map from
monomials to nonzero Fraction coefficients, so equality to zero is
decidable by representation and every identity in this package is
checked exactly, with no floating point anywhere.

A monomial is a pair ``(even exponent tuple, odd index bitmask)``.  Odd
factors are kept sorted by variable index; reordering signs follow the
Koszul rule (each transposition of adjacent odd symbols contributes -1)
and are computed by transposition counting when bitmasks merge.  A
repeated odd index annihilates the term (xi^2 = 0).

The textual rendering is canonical (fixed monomial order, explicit
signs), so string comparisons and golden files are byte-stable.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .errors import (
    InhomogeneousError,
    UnknownVariableError,
    VariableMismatchError,
)

Rational = Fraction | int

EVEN_VALUE = 0
ODD_VALUE = 1


class Parity(Enum):
    """Z/2 grading of a variable, function or tensor."""

    EVEN = 0
    ODD = 1

    def __add__(self, other: "Parity") -> "Parity":
        return Parity((self.value + other.value) % 2)

    def flipped(self) -> "Parity":
        return Parity(1 - self.value)

    def __str__(self) -> str:
        return "even" if self is Parity.EVEN else "odd"

    @staticmethod
    def of(value: int) -> "Parity":
        return Parity(value % 2)


@dataclass(frozen=True)
class VariableSpec:
    """A named coordinate with a parity."""

    name: str
    parity: Parity


class VariableList:
    """Ordered list of variables over which polynomials live.

    Precomputes the even/odd position bookkeeping used by the monomial
    representation: even variables are numbered by their slot in the
    exponent tuple, odd variables by their bit position in the odd mask.
    """

    __slots__ = ("specs", "_index", "even_positions", "odd_positions",
                 "_even_slot", "_odd_slot", "parities")

    def __init__(self, specs: Iterable[VariableSpec]):
        self.specs = tuple(specs)
        names = [s.name for s in self.specs]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        self._index = {s.name: i for i, s in enumerate(self.specs)}
        self.parities = tuple(s.parity.value for s in self.specs)
        self.even_positions = tuple(i for i, s in enumerate(self.specs)
                                    if s.parity is Parity.EVEN)
        self.odd_positions = tuple(i for i, s in enumerate(self.specs)
                                   if s.parity is Parity.ODD)
        self._even_slot = {p: k for k, p in enumerate(self.even_positions)}
        self._odd_slot = {p: k for k, p in enumerate(self.odd_positions)}

    def __len__(self) -> int:
        return len(self.specs)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, VariableList) and self.specs == other.specs

    def __hash__(self) -> int:
        return hash(self.specs)

    def __repr__(self) -> str:
        return "VariableList(" + ", ".join(
            f"{s.name}:{s.parity}" for s in self.specs) + ")"

    def position(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariableError(f"unknown variable {name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def spec(self, name: str) -> VariableSpec:
        return self.specs[self.position(name)]

    @property
    def n_even(self) -> int:
        return len(self.even_positions)

    @property
    def n_odd(self) -> int:
        return len(self.odd_positions)

    def even_slot(self, position: int) -> int:
        return self._even_slot[position]

    def odd_slot(self, position: int) -> int:
        return self._odd_slot[position]


# A monomial key: (tuple of even exponents, odd bitmask).
Monomial = tuple[tuple[int, ...], int]


def _merge_odd(a: int, b: int) -> tuple[int, int]:
    """Merge two sorted odd index sets given as bitmasks.

    Returns (mask, sign); sign is 0 when the sets overlap (xi^2 = 0).
    The sign counts the inversions needed to interleave the two sorted
    sequences, i.e. pairs (i in a, j in b) with i > j.
    """
    if a & b:
        return 0, 0
    sign = 1
    bb = b
    while bb:
        low = bb & -bb
        if ((a >> low.bit_length()).bit_count()) & 1:
            sign = -sign
        bb ^= low
    return a | b, sign


def _mask_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class SuperPolynomial:
    """Element of Q[x] (x) Lambda[xi] over a fixed variable list.

    Values are immutable after construction; all operations are pure
    functions returning new instances, which makes sharing across
    threads safe.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, vars: VariableList, terms: Mapping[Monomial, Fraction]):
        self.vars = vars
        self.terms: dict[Monomial, Fraction] = {
            mono: coeff for mono, coeff in terms.items() if coeff != 0
        }

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, vars: VariableList) -> "SuperPolynomial":
        return cls(vars, {})

    @classmethod
    def constant(cls, vars: VariableList, value: Rational) -> "SuperPolynomial":
        coeff = Fraction(value)
        if coeff == 0:
            return cls.zero(vars)
        return cls(vars, {((0,) * vars.n_even, 0): coeff})

    @classmethod
    def one(cls, vars: VariableList) -> "SuperPolynomial":
        return cls.constant(vars, 1)

    @classmethod
    def variable(cls, vars: VariableList, name: str) -> "SuperPolynomial":
        pos = vars.position(name)
        spec = vars.specs[pos]
        if spec.parity is Parity.EVEN:
            exps = [0] * vars.n_even
            exps[vars.even_slot(pos)] = 1
            return cls(vars, {(tuple(exps), 0): Fraction(1)})
        mask = 1 << vars.odd_slot(pos)
        return cls(vars, {((0,) * vars.n_even, mask): Fraction(1)})

    # -- basic queries ------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self) -> Fraction:
        return self.terms.get(((0,) * self.vars.n_even, 0), Fraction(0))

    def parity(self) -> Parity | None:
        """Shared parity of all monomials, or None when inhomogeneous."""
        seen: int | None = None
        for (_, mask) in self.terms:
            p = mask.bit_count() & 1
            if seen is None:
                seen = p
            elif seen != p:
                return None
        return Parity(seen) if seen is not None else Parity.EVEN

    def parity_part(self, parity: Parity) -> "SuperPolynomial":
        want = parity.value
        return SuperPolynomial(self.vars, {
            mono: c for mono, c in self.terms.items()
            if (mono[1].bit_count() & 1) == want
        })

    def require_homogeneous(self, role: str = "operand") -> Parity:
        p = self.parity()
        if p is None:
            raise InhomogeneousError(
                f"{role} must be parity-homogeneous: {self.render()}")
        return p

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(exps) + mask.bit_count() for exps, mask in self.terms)

    def degree_in(self, names: Iterable[str]) -> int:
        """Largest combined degree of the given variables in any monomial."""
        even_slots = []
        odd_mask = 0
        for name in names:
            pos = self.vars.position(name)
            if self.vars.parities[pos] == EVEN_VALUE:
                even_slots.append(self.vars.even_slot(pos))
            else:
                odd_mask |= 1 << self.vars.odd_slot(pos)
        best = 0
        for exps, mask in self.terms:
            deg = sum(exps[k] for k in even_slots) + (mask & odd_mask).bit_count()
            best = max(best, deg)
        return best

    def body(self) -> "SuperPolynomial":
        """Projection setting every odd variable to zero."""
        return SuperPolynomial(self.vars, {
            mono: c for mono, c in self.terms.items() if mono[1] == 0
        })

    # -- arithmetic ---------------------------------------------------

    def _check_vars(self, other: "SuperPolynomial") -> None:
        if self.vars is not other.vars and self.vars != other.vars:
            raise VariableMismatchError(
                f"operands over different variable lists: "
                f"{self.vars!r} vs {other.vars!r}")

    def __add__(self, other: "SuperPolynomial") -> "SuperPolynomial":
        self._check_vars(other)
        out = dict(self.terms)
        for mono, c in other.terms.items():
            acc = out.get(mono)
            if acc is None:
                out[mono] = c
            else:
                acc = acc + c
                if acc == 0:
                    del out[mono]
                else:
                    out[mono] = acc
        return SuperPolynomial(self.vars, out)

    def __neg__(self) -> "SuperPolynomial":
        return SuperPolynomial(self.vars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "SuperPolynomial") -> "SuperPolynomial":
        return self + (-other)

    def scale(self, value: Rational) -> "SuperPolynomial":
        coeff = Fraction(value)
        if coeff == 0:
            return SuperPolynomial.zero(self.vars)
        return SuperPolynomial(self.vars, {m: c * coeff for m, c in self.terms.items()})

    def __mul__(self, other: "SuperPolynomial") -> "SuperPolynomial":
        self._check_vars(other)
        out: dict[Monomial, Fraction] = {}
        for (exps_a, mask_a), ca in self.terms.items():
            for (exps_b, mask_b), cb in other.terms.items():
                mask, sign = _merge_odd(mask_a, mask_b)
                if sign == 0:
                    continue
                exps = tuple(x + y for x, y in zip(exps_a, exps_b))
                mono = (exps, mask)
                acc = out.get(mono)
                coeff = ca * cb if sign > 0 else -(ca * cb)
                if acc is None:
                    out[mono] = coeff
                else:
                    acc = acc + coeff
                    if acc == 0:
                        del out[mono]
                    else:
                        out[mono] = acc
        return SuperPolynomial(self.vars, out)

    def __pow__(self, exponent: int) -> "SuperPolynomial":
        if exponent < 0:
            raise ValueError("negative exponents are not supported")
        result = SuperPolynomial.one(self.vars)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SuperPolynomial):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.vars, frozenset(self.terms.items())))

    # -- graded derivatives --------------------------------------------

    def left_derivative(self, name: str) -> "SuperPolynomial":
        """Left derivative: for odd v the factor xi_v is moved to the
        leftmost position (picking up the Koszul sign) and struck."""
        pos = self.vars.position(name)
        out: dict[Monomial, Fraction] = {}
        if self.vars.parities[pos] == EVEN_VALUE:
            slot = self.vars.even_slot(pos)
            for (exps, mask), c in self.terms.items():
                e = exps[slot]
                if e == 0:
                    continue
                new = list(exps)
                new[slot] = e - 1
                mono = (tuple(new), mask)
                out[mono] = out.get(mono, Fraction(0)) + c * e
        else:
            bit = self.vars.odd_slot(pos)
            sel = 1 << bit
            below = sel - 1
            for (exps, mask), c in self.terms.items():
                if not (mask & sel):
                    continue
                sign = -1 if ((mask & below).bit_count() & 1) else 1
                mono = (exps, mask ^ sel)
                out[mono] = out.get(mono, Fraction(0)) + (c if sign > 0 else -c)
        return SuperPolynomial(self.vars, out)

    def right_derivative(self, name: str) -> "SuperPolynomial":
        """Right derivative: odd factors are struck from the rightmost
        position instead; equal to the left derivative on even v."""
        pos = self.vars.position(name)
        if self.vars.parities[pos] == EVEN_VALUE:
            return self.left_derivative(name)
        bit = self.vars.odd_slot(pos)
        sel = 1 << bit
        out: dict[Monomial, Fraction] = {}
        for (exps, mask), c in self.terms.items():
            if not (mask & sel):
                continue
            above = mask >> (bit + 1)
            sign = -1 if (above.bit_count() & 1) else 1
            mono = (exps, mask ^ sel)
            out[mono] = out.get(mono, Fraction(0)) + (c if sign > 0 else -c)
        return SuperPolynomial(self.vars, out)

    # -- rendering -----------------------------------------------------

    def _sort_key(self, mono: Monomial):
        exps, mask = mono
        return (sum(exps) + mask.bit_count(), exps, tuple(_mask_bits(mask)))

    def render(self) -> str:
        """Canonical textual form: monomials in a fixed total order,
        explicit signs, '*' between factors, '^' for powers >= 2."""
        if not self.terms:
            return "0"
        parts: list[str] = []
        for mono in sorted(self.terms, key=self._sort_key):
            coeff = self.terms[mono]
            factors: list[str] = []
            exps, mask = mono
            for slot, e in enumerate(exps):
                if e == 0:
                    continue
                name = self.vars.specs[self.vars.even_positions[slot]].name
                factors.append(name if e == 1 else f"{name}^{e}")
            for bit in _mask_bits(mask):
                factors.append(self.vars.specs[self.vars.odd_positions[bit]].name)
            magnitude = abs(coeff)
            if not factors:
                text = str(magnitude)
            elif magnitude == 1:
                text = "*".join(factors)
            else:
                text = str(magnitude) + "*" + "*".join(factors)
            if not parts:
                parts.append(text if coeff > 0 else "-" + text)
            else:
                parts.append(("+ " if coeff > 0 else "- ") + text)
        return " ".join(parts)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"SuperPolynomial({self.render()})"


def extend_to(poly: SuperPolynomial, target: VariableList) -> SuperPolynomial:
    """Re-express a polynomial over a larger variable list.

    Every variable of the source list must appear in the target with the
    same parity.  Odd variables must keep their relative order (true for
    the chart -> multivector/form extensions used here), so no signs
    arise.
    """
    src = poly.vars
    even_map = []
    for pos in src.even_positions:
        tpos = target.position(src.specs[pos].name)
        even_map.append(target.even_slot(tpos))
    odd_map = []
    for pos in src.odd_positions:
        tpos = target.position(src.specs[pos].name)
        odd_map.append(target.odd_slot(tpos))
    if odd_map != sorted(odd_map):
        raise VariableMismatchError("odd variable order not preserved by extension")
    out: dict[Monomial, Fraction] = {}
    for (exps, mask), c in poly.terms.items():
        new_exps = [0] * target.n_even
        for slot, e in enumerate(exps):
            new_exps[even_map[slot]] = e
        new_mask = 0
        for bit in _mask_bits(mask):
            new_mask |= 1 << odd_map[bit]
        out[(tuple(new_exps), new_mask)] = c
    return SuperPolynomial(target, out)


def restrict_to(poly: SuperPolynomial, target: VariableList) -> SuperPolynomial:
    """Inverse of :func:`extend_to` for polynomials not involving the
    extra variables; raises if any term does."""
    src = poly.vars
    allowed_even = set()
    allowed_odd = 0
    for tpos, spec in enumerate(target.specs):
        pos = src.position(spec.name)
        if spec.parity is Parity.EVEN:
            allowed_even.add(src.even_slot(pos))
        else:
            allowed_odd |= 1 << src.odd_slot(pos)
    for (exps, mask), _ in poly.terms.items():
        for slot, e in enumerate(exps):
            if e and slot not in allowed_even:
                raise VariableMismatchError(
                    "polynomial involves variables outside the target list")
        if mask & ~allowed_odd:
            raise VariableMismatchError(
                "polynomial involves variables outside the target list")
    out: dict[Monomial, Fraction] = {}
    even_map = {src.even_slot(src.position(s.name)): target.even_slot(i)
                for i, s in enumerate(target.specs) if s.parity is Parity.EVEN}
    odd_map = {src.odd_slot(src.position(s.name)): target.odd_slot(i)
               for i, s in enumerate(target.specs) if s.parity is Parity.ODD}
    for (exps, mask), c in poly.terms.items():
        new_exps = [0] * target.n_even
        for slot, e in enumerate(exps):
            if e:
                new_exps[even_map[slot]] = e
        new_mask = 0
        for bit in _mask_bits(mask):
            new_mask |= 1 << odd_map[bit]
        out[(tuple(new_exps), new_mask)] = c
    return SuperPolynomial(target, out)
