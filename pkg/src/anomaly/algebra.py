"""Exact graded polynomial algebra over named even-degree generators.

Coefficients are `fractions.Fraction` values throughout; no floats enter any
computation.  Every polynomial carries an even truncation degree and drops
monomials above it, so all arithmetic happens in a truncated graded ring.
Arithmetic between operands with different truncations truncates to the
smaller one.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

Rational = Fraction

_ZERO = Fraction(0)


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected int or Fraction, got {value!r}")


class GeneratorTable:
    """Ordered table of polynomial generators with even cohomological degrees.

    Names are unique; `cL`, when present, must be the only degree-2 generator
    so that substitutions targeting cL^2 stay unambiguous.
    """

    __slots__ = ("generators", "degrees", "_index")  # names derives from generators

    def __init__(self, generators: Iterable[tuple[str, int]]):
        gens = tuple((str(name), int(degree)) for name, degree in generators)
        names = [name for name, _ in gens]
        if len(set(names)) != len(names):
            raise ValueError("generator names must be unique")
        for name, degree in gens:
            if degree <= 0 or degree % 2 != 0:
                raise ValueError(f"generator {name!r} needs a positive even degree, got {degree}")
        if "cL" in names:
            degree2 = [name for name, degree in gens if degree == 2]
            if degree2 != ["cL"]:
                raise ValueError("cL must be the only degree-2 generator when present")
        self.generators = gens
        self.degrees = tuple(degree for _, degree in gens)
        self._index = {name: i for i, (name, _) in enumerate(gens)}

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.generators)

    def __len__(self) -> int:
        return len(self.generators)

    def __contains__(self, name) -> bool:
        return name in self._index

    def __eq__(self, other):
        return isinstance(other, GeneratorTable) and self.generators == other.generators

    def __hash__(self):
        return hash(self.generators)

    def __repr__(self):
        inner = ", ".join(f"{name}:{degree}" for name, degree in self.generators)
        return f"GeneratorTable({inner})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown generator {name!r}") from None

    def degree_of(self, name: str) -> int:
        return self.degrees[self.index(name)]

    def monomial_degree(self, expts: tuple[int, ...]) -> int:
        return sum(e * d for e, d in zip(expts, self.degrees))

    def family_size(self, family: str) -> int:
        """Number of consecutive generators family1, family2, ... present."""
        i = 1
        while f"{family}{i}" in self._index:
            i += 1
        return i - 1

    def monomial_string(self, expts: tuple[int, ...]) -> str:
        parts = []
        for (name, _), e in zip(self.generators, expts):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts)

    def parse_monomial(self, text: str) -> tuple[int, ...]:
        """Inverse of monomial_string; accepts e.g. "pX1^2*pX2" or "1"."""
        expts = [0] * len(self.generators)
        text = text.strip()
        if text in ("", "1"):
            return tuple(expts)
        for factor in text.split("*"):
            factor = factor.strip()
            if "^" in factor:
                name, _, power = factor.partition("^")
                e = int(power)
            else:
                name, e = factor, 1
            if e < 1:
                raise ValueError(f"bad exponent in monomial factor {factor!r}")
            expts[self.index(name.strip())] += e
        return tuple(expts)


def pontryagin_table(dim: int, *, aux: bool = False, line: bool = False) -> GeneratorTable:
    """Standard generator table for a dimension-`dim` computation.

    Generators pX1..pX_{dim//4} of degree 4i; with `aux` also pV1..pV_{dim//4};
    with `line` also the degree-2 class cL.
    """
    if dim < 4:
        raise ValueError("dimension must be at least 4")
    gens = [(f"pX{i}", 4 * i) for i in range(1, dim // 4 + 1)]
    if aux:
        gens += [(f"pV{i}", 4 * i) for i in range(1, dim // 4 + 1)]
    if line:
        gens.append(("cL", 2))
    return GeneratorTable(gens)


class GradedPoly:
    """Truncated polynomial with Fraction coefficients over a GeneratorTable.

    Terms are keyed by exponent tuples parallel to the table; zero
    coefficients and terms above the truncation degree are never stored.
    Instances are treated as immutable.
    """

    __slots__ = ("table", "truncation", "terms")

    def __init__(self, table: GeneratorTable, truncation: int, terms: Mapping[tuple[int, ...], Fraction] | None = None):
        truncation = int(truncation)
        if truncation < 0 or truncation % 2 != 0:
            raise ValueError(f"truncation must be a nonnegative even integer, got {truncation}")
        self.table = table
        self.truncation = truncation
        clean: dict[tuple[int, ...], Fraction] = {}
        if terms:
            for expts, coeff in terms.items():
                coeff = as_rational(coeff)
                if not coeff:
                    continue
                expts = tuple(int(e) for e in expts)
                if len(expts) != len(table):
                    raise ValueError("exponent tuple does not match the generator table")
                if table.monomial_degree(expts) <= truncation:
                    clean[expts] = coeff
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, table, truncation) -> "GradedPoly":
        return cls(table, truncation)

    @classmethod
    def constant(cls, table, truncation, value) -> "GradedPoly":
        return cls(table, truncation, {(0,) * len(table): as_rational(value)})

    @classmethod
    def one(cls, table, truncation) -> "GradedPoly":
        return cls.constant(table, truncation, 1)

    @classmethod
    def generator(cls, table, name, truncation) -> "GradedPoly":
        expts = [0] * len(table)
        expts[table.index(name)] = 1
        return cls(table, truncation, {tuple(expts): Fraction(1)})

    # -- ring structure ----------------------------------------------------

    def _check_table(self, other: "GradedPoly"):
        if self.table != other.table:
            raise ValueError("polynomials live over different generator tables")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GradedPoly.constant(self.table, self.truncation, other)
        self._check_table(other)
        trunc = min(self.truncation, other.truncation)
        terms = dict(self.terms)
        for expts, coeff in other.terms.items():
            terms[expts] = terms.get(expts, _ZERO) + coeff
        return GradedPoly(self.table, trunc, terms)

    __radd__ = __add__

    def __neg__(self):
        return GradedPoly(self.table, self.truncation, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GradedPoly.constant(self.table, self.truncation, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = as_rational(other)
            return GradedPoly(self.table, self.truncation, {e: c * v for e, v in self.terms.items()})
        if not isinstance(other, GradedPoly):
            return NotImplemented
        self._check_table(other)
        trunc = min(self.truncation, other.truncation)
        degree = self.table.monomial_degree
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            d1 = degree(e1)
            for e2, c2 in other.terms.items():
                if d1 + degree(e2) > trunc:
                    continue
                key = tuple(a + b for a, b in zip(e1, e2))
                prev = out.get(key)
                out[key] = c1 * c2 if prev is None else prev + c1 * c2
        return GradedPoly(self.table, trunc, out)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        c = as_rational(scalar)
        if not c:
            raise ZeroDivisionError("division of a polynomial by zero")
        return self * (1 / c)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        result = GradedPoly.one(self.table, self.truncation)
        for _ in range(n):
            result = result * self
            if result.is_zero():
                break
        return result

    def __eq__(self, other):
        return (
            isinstance(other, GradedPoly)
            and self.table == other.table
            and self.truncation == other.truncation
            and self.terms == other.terms
        )

    __hash__ = None

    # -- inspection --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.table), _ZERO)

    def coefficient(self, monomial: Mapping[str, int] | str) -> Fraction:
        if isinstance(monomial, str):
            expts = self.table.parse_monomial(monomial)
        else:
            e = [0] * len(self.table)
            for name, power in monomial.items():
                e[self.table.index(name)] = int(power)
            expts = tuple(e)
        return self.terms.get(expts, _ZERO)

    def homogeneous_component(self, d: int) -> "GradedPoly":
        degree = self.table.monomial_degree
        return GradedPoly(self.table, self.truncation, {e: c for e, c in self.terms.items() if degree(e) == d})

    def degrees_present(self) -> list[int]:
        degree = self.table.monomial_degree
        return sorted({degree(e) for e in self.terms})

    def truncate(self, truncation: int) -> "GradedPoly":
        return GradedPoly(self.table, min(self.truncation, truncation), self.terms)

    # -- substitution ------------------------------------------------------

    def substitute(self, images: Mapping[str, "GradedPoly"], truncation: int | None = None) -> "GradedPoly":
        """Replace generators by polynomials; unmapped generators pass through.

        All image polynomials must share one generator table, which becomes
        the table of the result; unmapped generators must exist there by name.
        """
        target = None
        for poly in images.values():
            if target is None:
                target = poly.table
            elif poly.table != target:
                raise ValueError("substitution images live over different generator tables")
        if target is None:
            target = self.table
        trunc = self.truncation if truncation is None else truncation
        for poly in images.values():
            trunc = min(trunc, poly.truncation)

        cache: list[GradedPoly | None] = [None] * len(self.table)

        def image_of(i: int) -> GradedPoly:
            if cache[i] is None:
                name = self.table.generators[i][0]
                if name in images:
                    cache[i] = GradedPoly(target, trunc, images[name].terms)
                else:
                    cache[i] = GradedPoly.generator(target, name, trunc)
            return cache[i]

        acc = GradedPoly.zero(target, trunc)
        for expts, coeff in self.terms.items():
            term = GradedPoly.constant(target, trunc, coeff)
            for i, e in enumerate(expts):
                if e:
                    term = term * image_of(i) ** e
                    if term.is_zero():
                        break
            acc = acc + term
        return acc

    # -- rendering ---------------------------------------------------------

    def render(self) -> str:
        """Canonical text form: terms sorted by (degree, exponents)."""
        if not self.terms:
            return "0"
        degree = self.table.monomial_degree
        items = sorted(self.terms.items(), key=lambda kv: (degree(kv[0]), kv[0]))
        parts: list[str] = []
        for expts, coeff in items:
            mono = self.table.monomial_string(expts)
            mag = abs(coeff)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not parts:
                parts.append(body if coeff > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"GradedPoly({self.render()})"


def top_component(x: GradedPoly, d: int) -> GradedPoly:
    """Degree-d homogeneous component of x (the {.}^{(d)} extraction)."""
    return x.homogeneous_component(d)


def power_sum_in_pontryagin(table: GeneratorTable, family: str, m: int, truncation: int | None = None) -> GradedPoly:
    """m-th power sum of squared roots, written in the family's generators.

    With the family generators playing the elementary symmetric functions of
    the squared roots, returns the degree-4m polynomial expressing the m-th
    power sum via the Newton recursion.  Generators whose degree exceeds the
    truncation act as zero.
    """
    if m <= 0:
        raise ValueError("power sum index must be positive")
    size = table.family_size(family)
    if size == 0:
        raise ValueError(f"unknown generator family {family!r}")
    if truncation is None:
        truncation = max(table.degrees)
    zero = GradedPoly.zero(table, truncation)
    elem: list[GradedPoly] = []
    for i in range(1, m + 1):
        if 4 * i > truncation:
            elem.append(zero)
        elif i <= size:
            elem.append(GradedPoly.generator(table, f"{family}{i}", truncation))
        else:
            raise ValueError(f"family {family!r} is missing generator {family}{i} below the truncation")
    sums: list[GradedPoly] = []
    for k in range(1, m + 1):
        acc = (k if (k - 1) % 2 == 0 else -k) * elem[k - 1]
        for i in range(1, k):
            contrib = elem[i - 1] * sums[k - i - 1]
            acc = acc + (contrib if (i - 1) % 2 == 0 else -contrib)
        sums.append(acc)
    return sums[m - 1]


def exp_truncated(x: GradedPoly) -> GradedPoly:
    """exp of a polynomial with zero constant term (nilpotent under truncation)."""
    if x.constant_term:
        raise ValueError("exp_truncated needs a zero constant term")
    result = GradedPoly.one(x.table, x.truncation)
    term = result
    n = 1
    while True:
        term = term * x / n
        if term.is_zero():
            return result
        result = result + term
        n += 1


def log_truncated(x: GradedPoly) -> GradedPoly:
    """log of a polynomial with constant term 1."""
    if x.constant_term != 1:
        raise ValueError("log_truncated needs constant term 1")
    y = x - 1
    result = GradedPoly.zero(x.table, x.truncation)
    term = GradedPoly.one(x.table, x.truncation)
    n = 1
    while True:
        term = term * y
        if term.is_zero():
            return result
        result = result + (term / n if (n - 1) % 2 == 0 else term / -n)
        n += 1
