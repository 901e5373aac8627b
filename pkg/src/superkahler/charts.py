"""Charts: named coordinate systems of superdimension n|m.

A chart fixes the ordered coordinate list (even variables first) and
provides the two derived variable lists used by the calculus layer:

* multivector variables ``(u_1..u_{n+m}, ~u_1..~u_{n+m})`` where the
  conjugate ``~u_a`` has parity ``p(u_a)+1`` (multivector fields are
  polynomials on this doubled list, of fixed degree in the conjugates);
* form variables ``(u_1..u_{n+m}, d(u_1)..d(u_{n+m}))`` where ``d(u_a)``
  likewise has flipped parity.

The derived names use characters the expression grammar cannot produce,
so they can never collide with user coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Parity, SuperPolynomial, VariableList, VariableSpec


@dataclass(frozen=True)
class SuperDim:
    """Pair n|m of even and odd dimensions."""

    n: int
    m: int

    def __post_init__(self):
        if self.n < 0 or self.m < 0:
            raise ValueError("dimensions must be non-negative")

    def __str__(self) -> str:
        return f"{self.n}|{self.m}"

    @staticmethod
    def parse(text: str) -> "SuperDim":
        """Accepts both 'n|m' and the shell-friendly 'n.m'."""
        for sep in ("|", "."):
            if sep in text:
                a, _, b = text.partition(sep)
                try:
                    return SuperDim(int(a), int(b))
                except ValueError:
                    break
        raise ValueError(f"invalid superdimension {text!r}, expected n|m or n.m")


def conjugate_name(name: str) -> str:
    return f"~{name}"


def differential_name(name: str) -> str:
    return f"d({name})"


class Chart:
    """Ordered coordinate list with even variables before odd ones."""

    __slots__ = ("variables", "sdim", "_mv_vars", "_form_vars")

    def __init__(self, variables: list[VariableSpec] | tuple[VariableSpec, ...]):
        evens = [v for v in variables if v.parity is Parity.EVEN]
        odds = [v for v in variables if v.parity is Parity.ODD]
        self.variables = VariableList(evens + odds)
        self.sdim = SuperDim(len(evens), len(odds))
        self._mv_vars: VariableList | None = None
        self._form_vars: VariableList | None = None

    @staticmethod
    def from_names(even: list[str], odd: list[str]) -> "Chart":
        return Chart([VariableSpec(n, Parity.EVEN) for n in even]
                     + [VariableSpec(n, Parity.ODD) for n in odd])

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Chart) and self.variables == other.variables

    def __hash__(self) -> int:
        return hash(self.variables)

    def __repr__(self) -> str:
        return f"Chart({self.sdim}: " + " ".join(
            s.name for s in self.variables.specs) + ")"

    @property
    def dim(self) -> int:
        return self.sdim.n + self.sdim.m

    def coordinate_names(self) -> list[str]:
        return [s.name for s in self.variables.specs]

    def parity_of_coordinate(self, index: int) -> int:
        return self.variables.parities[index]

    def multivector_variables(self) -> VariableList:
        """Coordinates followed by their parity-flipped conjugates."""
        if self._mv_vars is None:
            extra = [VariableSpec(conjugate_name(s.name), s.parity.flipped())
                     for s in self.variables.specs]
            self._mv_vars = VariableList(list(self.variables.specs) + extra)
        return self._mv_vars

    def form_variables(self) -> VariableList:
        """Coordinates followed by their parity-flipped differentials."""
        if self._form_vars is None:
            extra = [VariableSpec(differential_name(s.name), s.parity.flipped())
                     for s in self.variables.specs]
            self._form_vars = VariableList(list(self.variables.specs) + extra)
        return self._form_vars

    def function(self, source: int | str) -> SuperPolynomial:
        """Coordinate function or constant over this chart's variables."""
        if isinstance(source, str):
            return SuperPolynomial.variable(self.variables, source)
        return SuperPolynomial.constant(self.variables, source)

    def zero(self) -> SuperPolynomial:
        return SuperPolynomial.zero(self.variables)

    def one(self) -> SuperPolynomial:
        return SuperPolynomial.one(self.variables)
