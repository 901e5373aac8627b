"""Multivector fields, differential forms, and the graded calculus.

Multivector fields are polynomials on the parity-reversed cotangent
bundle of a chart: functions of the coordinates ``u_a`` and their
conjugates ``~u_a`` of flipped parity; the polynomial degree in the
conjugates is the tensor degree (bivectors have degree 2).  Differential
forms are polynomials in ``u_a`` and ``d(u_a)``, graded by degree in the
differentials.

The Buttin bracket (Schouten bracket, antibracket) is the canonical odd
Poisson bracket on multivector fields:

    {P, Q} = sum_a  dP/du_a|_r * dQ/d~u_a|_l  -  dP/d~u_a|_r * dQ/du_a|_l

with right derivatives on the left slot and left derivatives on the
right slot.  Together with {u_a, ~u_b} = delta_ab this normalization
satisfies the shifted antisymmetry, shifted Jacobi identity and graded
Leibniz rules checked by the property tests; the bracket raises parity
by one.

The exterior differential acts from the left, d = sum_a d(u_a) * d/du_a|_l,
so that d(fg) = (df)g + (-1)^p(f) f (dg) on functions and d o d = 0.

Degree-2 objects (2-forms and bivectors) are interchangeable with their
Gram matrices.  The storage convention is value = 1/2 * sum_ab g[a][b] *
e_a * e_b with coefficients multiplied from the left, which forces the
shifted symmetry g[a][b] = (-1)^((p_a+1)(p_b+1)) g[b][a] on the Gram
matrix; both conversion directions below are exact inverses of each
other.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    Monomial,
    Parity,
    SuperPolynomial,
    VariableList,
    _mask_bits,
    extend_to,
    restrict_to,
)
from .charts import Chart, conjugate_name, differential_name
from .errors import ChartMismatchError, InhomogeneousError, ShapeMismatchError

Matrix = tuple[tuple[SuperPolynomial, ...], ...]


def _terms_all_degree(value: SuperPolynomial, names: list[str], k: int) -> bool:
    vars = value.vars
    even_slots = []
    odd_mask = 0
    for name in names:
        pos = vars.position(name)
        if vars.parities[pos] == 0:
            even_slots.append(vars.even_slot(pos))
        else:
            odd_mask |= 1 << vars.odd_slot(pos)
    for exps, mask in value.terms:
        deg = sum(exps[s] for s in even_slots) + (mask & odd_mask).bit_count()
        if deg != k:
            return False
    return True


# ---------------------------------------------------------------------------
# wrapper types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MultivectorField:
    """Polynomial on the doubled list (u, ~u) attached to a chart."""

    value: SuperPolynomial
    chart: Chart

    def __post_init__(self):
        if self.value.vars != self.chart.multivector_variables():
            raise ChartMismatchError("value not over the chart's multivector variables")

    def degree(self) -> int:
        names = [conjugate_name(s.name) for s in self.chart.variables.specs]
        return self.value.degree_in(names)

    def is_homogeneous_degree(self, k: int) -> bool:
        """True when every term has conjugate-degree exactly k (the zero
        field qualifies for every k)."""
        names = [conjugate_name(s.name) for s in self.chart.variables.specs]
        return _terms_all_degree(self.value, names, k)

    def tensor_parity(self) -> Parity | None:
        """Parity as a tensor: parity of the value shifted by the degree.

        A degree-k term f * ~u_{a_1} .. ~u_{a_k} has value parity
        p(f) + sum(p_{a_i}) + k while its component f carries tensor
        parity p(T) = p(f) + sum(p_{a_i}); hence p(T) = p(value) + k.
        """
        p = self.value.parity()
        if p is None:
            return None
        return Parity((p.value + self.degree()) % 2)

    def is_zero(self) -> bool:
        return self.value.is_zero()


@dataclass(frozen=True)
class DifferentialForm:
    """Polynomial on the list (u, d(u)) attached to a chart."""

    value: SuperPolynomial
    chart: Chart

    def __post_init__(self):
        if self.value.vars != self.chart.form_variables():
            raise ChartMismatchError("value not over the chart's form variables")

    def degree(self) -> int:
        names = [differential_name(s.name) for s in self.chart.variables.specs]
        return self.value.degree_in(names)

    def tensor_parity(self) -> Parity | None:
        p = self.value.parity()
        if p is None:
            return None
        return Parity((p.value + self.degree()) % 2)

    def is_zero(self) -> bool:
        return self.value.is_zero()


@dataclass(frozen=True)
class VectorField:
    """Vector field given by its coordinate components X^a (one per
    coordinate, functions on the chart); X = sum_a d/du_a * X^a."""

    components: tuple[SuperPolynomial, ...]
    parity: Parity
    chart: Chart

    def __post_init__(self):
        if len(self.components) != self.chart.dim:
            raise ShapeMismatchError("component count != chart dimension")


@dataclass(frozen=True)
class Connection:
    """Christoffel symbols Gamma^c_{ab} of a torsion-free connection."""

    christoffel: tuple[tuple[tuple[SuperPolynomial, ...], ...], ...]
    chart: Chart

    def gamma(self, c: int, a: int, b: int) -> SuperPolynomial:
        return self.christoffel[c][a][b]


# ---------------------------------------------------------------------------
# Buttin bracket
# ---------------------------------------------------------------------------

def _bracket_core(p: SuperPolynomial, q: SuperPolynomial, chart: Chart) -> SuperPolynomial:
    mv = chart.multivector_variables()
    out = SuperPolynomial.zero(mv)
    for spec in chart.variables.specs:
        u = spec.name
        cu = conjugate_name(u)
        out = out + p.right_derivative(u) * q.left_derivative(cu)
        out = out - p.right_derivative(cu) * q.left_derivative(u)
    return out


def buttin_bracket(p: MultivectorField, q: MultivectorField) -> MultivectorField:
    """Canonical odd Poisson bracket; inputs must be homogeneous."""
    if p.chart != q.chart:
        raise ChartMismatchError("bracket operands on different charts")
    if p.value.parity() is None or q.value.parity() is None:
        raise InhomogeneousError("buttin_bracket requires parity-homogeneous inputs")
    return MultivectorField(_bracket_core(p.value, q.value, p.chart), p.chart)


def multivector_from_function(f: SuperPolynomial, chart: Chart) -> MultivectorField:
    return MultivectorField(extend_to(f, chart.multivector_variables()), chart)


def bracket_from_bivector(b: MultivectorField, f: SuperPolynomial,
                          g: SuperPolynomial) -> SuperPolynomial:
    """Derived bracket {f, g}_B = {{f, B}, g} on chart functions.

    The result is again a function of the coordinates only; its parity
    is p(f) + p(g) + p(B) for homogeneous inputs.
    """
    if not b.is_homogeneous_degree(2):
        raise ShapeMismatchError("derived bracket needs a bivector (degree 2)")
    chart = b.chart
    mv = chart.multivector_variables()
    fm = extend_to(f, mv)
    gm = extend_to(g, mv)
    inner = _bracket_core(fm, b.value, chart)
    outer = _bracket_core(inner, gm, chart)
    return restrict_to(outer, chart.variables)


def derived_jacobiator(b: MultivectorField, f: SuperPolynomial,
                       g: SuperPolynomial, h: SuperPolynomial) -> SuperPolynomial:
    """Parity-shifted Jacobiator of the derived bracket.

    For homogeneous f, g the defect of the Leibniz-Jacobi identity

        {f,{g,h}} - {{f,g},h} - (-1)^((p_f+p_B)(p_g+p_B)) {g,{f,h}}

    vanishes identically whenever {B, B} = 0.
    """
    pb = b.tensor_parity()
    if pb is None:
        raise InhomogeneousError("bivector must be parity-homogeneous")
    pf = f.require_homogeneous("first argument")
    pg = g.require_homogeneous("second argument")
    d = lambda x, y: bracket_from_bivector(b, x, y)
    sign = -1 if ((pf.value + pb.value) * (pg.value + pb.value)) % 2 else 1
    term = d(g, d(f, h)).scale(sign)
    return d(f, d(g, h)) - d(d(f, g), h) - term


# ---------------------------------------------------------------------------
# de Rham differential
# ---------------------------------------------------------------------------

def de_rham(omega: DifferentialForm) -> DifferentialForm:
    """Exterior differential, acting from the left; raises form degree
    by one and squares to zero."""
    chart = omega.chart
    fv = chart.form_variables()
    out = SuperPolynomial.zero(fv)
    for spec in chart.variables.specs:
        du = SuperPolynomial.variable(fv, differential_name(spec.name))
        out = out + du * omega.value.left_derivative(spec.name)
    return DifferentialForm(out, chart)


def form_from_function(f: SuperPolynomial, chart: Chart) -> DifferentialForm:
    return DifferentialForm(extend_to(f, chart.form_variables()), chart)


# ---------------------------------------------------------------------------
# degree-2 objects <-> Gram matrices
# ---------------------------------------------------------------------------

def _conjugate_polys(chart: Chart, vars: VariableList, namer) -> list[SuperPolynomial]:
    return [SuperPolynomial.variable(vars, namer(s.name))
            for s in chart.variables.specs]


def _gram_to_value(gram: Matrix, chart: Chart, vars: VariableList, namer) -> SuperPolynomial:
    """value = 1/2 sum_ab gram[a][b] * e_a * e_b with e = conjugates or
    differentials; entries are functions on the chart."""
    dim = chart.dim
    if len(gram) != dim or any(len(row) != dim for row in gram):
        raise ShapeMismatchError("Gram matrix does not match the chart dimension")
    e = _conjugate_polys(chart, vars, namer)
    total = SuperPolynomial.zero(vars)
    half = Fraction(1, 2)
    for a in range(dim):
        for b in range(dim):
            entry = gram[a][b]
            if entry.is_zero():
                continue
            coeff = extend_to(entry, vars)
            total = total + (coeff * e[a] * e[b]).scale(half)
    return total


def _shift_sign(pa: int, pb: int) -> int:
    return -1 if ((pa + 1) * (pb + 1)) % 2 else 1


def _value_to_gram(value: SuperPolynomial, chart: Chart, vars: VariableList,
                   namer) -> Matrix:
    """Exact inverse of :func:`_gram_to_value` on degree-2 values.

    Relies on the variable ordering (coordinates before conjugates), so
    each stored monomial already reads coefficient-first: splitting off
    the two conjugate factors needs no extra Koszul sign.
    """
    dim = chart.dim
    parities = chart.variables.parities
    # positions of the conjugate variables inside `vars`
    conj_even_slot: dict[int, int] = {}
    conj_odd_bit: dict[int, int] = {}
    for a, spec in enumerate(chart.variables.specs):
        pos = vars.position(namer(spec.name))
        if vars.parities[pos] == 0:
            conj_even_slot[a] = vars.even_slot(pos)
        else:
            conj_odd_bit[a] = vars.odd_slot(pos)
    even_slot_to_a = {slot: a for a, slot in conj_even_slot.items()}
    odd_bit_to_a = {bit: a for a, bit in conj_odd_bit.items()}

    grams: list[list[SuperPolynomial]] = [
        [SuperPolynomial.zero(chart.variables) for _ in range(dim)] for _ in range(dim)
    ]

    def add(a: int, b: int, coeff_mono: Monomial, coeff: Fraction) -> None:
        poly = restrict_to(SuperPolynomial(vars, {coeff_mono: coeff}), chart.variables)
        grams[a][b] = grams[a][b] + poly
        if a != b:
            sign = _shift_sign(parities[a], parities[b])
            grams[b][a] = grams[b][a] + (poly if sign > 0 else -poly)

    for (exps, mask), coeff in value.terms.items():
        even_hits = [(slot, e) for slot, e in enumerate(exps)
                     if e and slot in even_slot_to_a]
        odd_hits = [bit for bit in _mask_bits(mask) if bit in odd_bit_to_a]
        total = sum(e for _, e in even_hits) + len(odd_hits)
        if total != 2:
            raise ShapeMismatchError(
                f"not a homogeneous degree-2 object (found degree {total} term)")
        new_exps = list(exps)
        new_mask = mask
        for slot, _ in even_hits:
            new_exps[slot] = 0
        for bit in odd_hits:
            new_mask ^= 1 << bit
        cmono = (tuple(new_exps), new_mask)
        if len(odd_hits) == 2:
            # conjugates appear in mask (bit) order, which is chart order
            a_bit, b_bit = sorted(odd_hits)
            add(odd_bit_to_a[a_bit], odd_bit_to_a[b_bit], cmono, coeff)
        elif len(odd_hits) == 1 and len(even_hits) == 1:
            # the even conjugate commutes freely; the shifted symmetry
            # fills the mirror slot consistently
            a = even_slot_to_a[even_hits[0][0]]
            b = odd_bit_to_a[odd_hits[0]]
            add(a, b, cmono, coeff)
        elif len(even_hits) == 2:
            a, b = sorted(even_slot_to_a[slot] for slot, _ in even_hits)
            add(a, b, cmono, coeff)
        else:  # single even conjugate squared
            a = even_slot_to_a[even_hits[0][0]]
            grams[a][a] = grams[a][a] + restrict_to(
                SuperPolynomial(vars, {cmono: coeff * 2}), chart.variables)
    return tuple(tuple(row) for row in grams)


def bivector_from_gram(gram: Matrix, chart: Chart) -> MultivectorField:
    value = _gram_to_value(gram, chart, chart.multivector_variables(), conjugate_name)
    return MultivectorField(value, chart)


def gram_of_bivector(b: MultivectorField) -> Matrix:
    return _value_to_gram(b.value, b.chart, b.chart.multivector_variables(),
                          conjugate_name)


def form_from_gram(gram: Matrix, chart: Chart) -> DifferentialForm:
    value = _gram_to_value(gram, chart, chart.form_variables(), differential_name)
    return DifferentialForm(value, chart)


def gram_of_form(omega: DifferentialForm) -> Matrix:
    return _value_to_gram(omega.value, omega.chart, omega.chart.form_variables(),
                          differential_name)


def bracket_gram(b: MultivectorField) -> Matrix:
    """Matrix of coordinate brackets P_ab = {u_a, u_b}_B."""
    chart = b.chart
    coords = [chart.function(s.name) for s in chart.variables.specs]
    return tuple(
        tuple(bracket_from_bivector(b, ua, ub) for ub in coords) for ua in coords
    )


def bivector_from_bracket_gram(p: Matrix, bivector_parity: Parity,
                               chart: Chart) -> MultivectorField:
    """Bivector whose derived bracket realizes the given coordinate
    table: solves {u_a, u_b}_B = p[a][b] for the storage Gram matrix.

    beta[a][b] = -(-1)^((p_a+1)(p_B+p_a+p_b)) p[a][b]; valid whenever p
    has the symmetry of a parity-p_B derived bracket.
    """
    parities = chart.variables.parities
    pb = bivector_parity.value
    dim = chart.dim
    beta = []
    for a in range(dim):
        row = []
        for b in range(dim):
            sign = -1 if ((parities[a] + 1) * (pb + parities[a] + parities[b])) % 2 == 0 else 1
            row.append(p[a][b] if sign > 0 else -p[a][b])
        beta.append(tuple(row))
    return bivector_from_gram(tuple(beta), chart)
