"""Exact sparse bivariate polynomials over the rationals, and the quadratic
extension ring adjoining a formal square root of x^2 + 4y.

A polynomial stores a mapping from exponent pairs ``(i, j)`` (for ``x^i *
y^j``) to nonzero :class:`fractions.Fraction` coefficients.  Zero
coefficients are never stored, so two polynomials are equal exactly when
their term mappings coincide, and ``==`` is a decision procedure for
polynomial identity.

:class:`QuadExtElem` represents ``a + b*D`` with ``D^2 = x^2 + 4y``.  The
element ``D`` plays the role of the root difference of the characteristic
equation ``t^2 = x*t + y``, which lets root powers and square-root-valued
substitution arguments be manipulated without leaving exact arithmetic.

All values are immutable; every operation returns a fresh value.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Union

Monomial = tuple[int, int]

_CoeffLike = Union[int, Fraction]


def _as_fraction(value: _CoeffLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"not a rational coefficient: {value!r}")


class BivarPoly:
    """Sparse bivariate polynomial in x and y with rational coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Monomial, _CoeffLike] | None = None) -> None:
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for (i, j), raw in terms.items():
                if not isinstance(i, int) or not isinstance(j, int) or i < 0 or j < 0:
                    raise ValueError(f"exponents must be nonnegative integers, got ({i}, {j})")
                coeff = _as_fraction(raw)
                if coeff:
                    clean[(i, j)] = coeff
        self._terms = clean

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls) -> BivarPoly:
        return cls()

    @classmethod
    def one(cls) -> BivarPoly:
        return cls({(0, 0): 1})

    @classmethod
    def const(cls, value: _CoeffLike) -> BivarPoly:
        return cls({(0, 0): value})

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        """Copy of the term mapping; the polynomial itself stays immutable."""
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or self._terms.keys() == {(0, 0)}

    def constant_value(self) -> Fraction:
        """The coefficient of x^0 y^0 (the whole value for constants)."""
        return self._terms.get((0, 0), Fraction(0))

    # -- ring structure ---------------------------------------------------

    @staticmethod
    def _coerce(other: object) -> BivarPoly | None:
        if isinstance(other, BivarPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return BivarPoly.const(other)
        return None

    def __add__(self, other: object) -> BivarPoly:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        out = dict(self._terms)
        for mono, coeff in rhs._terms.items():
            total = out.get(mono, 0) + coeff
            if total:
                out[mono] = total
            else:
                out.pop(mono, None)
        result = BivarPoly.__new__(BivarPoly)
        result._terms = out
        return result

    __radd__ = __add__

    def __neg__(self) -> BivarPoly:
        result = BivarPoly.__new__(BivarPoly)
        result._terms = {mono: -coeff for mono, coeff in self._terms.items()}
        return result

    def __sub__(self, other: object) -> BivarPoly:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: object) -> BivarPoly:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return rhs + (-self)

    def __mul__(self, other: object) -> BivarPoly:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        out: dict[Monomial, Fraction] = {}
        for (i, j), ca in self._terms.items():
            for (p, q), cb in rhs._terms.items():
                mono = (i + p, j + q)
                total = out.get(mono, 0) + ca * cb
                if total:
                    out[mono] = total
                else:
                    out.pop(mono, None)
        result = BivarPoly.__new__(BivarPoly)
        result._terms = out
        return result

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> BivarPoly:
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError(f"exponent must be a nonnegative integer, got {exponent!r}")
        if len(self._terms) == 1:
            # single monomial: power it directly instead of squaring
            ((i, j), coeff), = self._terms.items()
            return BivarPoly({(i * exponent, j * exponent): coeff**exponent})
        result = BivarPoly.one()
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other: object) -> bool:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self._terms == rhs._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- substitution and evaluation ---------------------------------------

    def substitute(self, x_value, y_value):
        """Image under the ring homomorphism x -> x_value, y -> y_value.

        The arguments may be polynomials, extension elements, or plain
        rationals; the result lives in whatever ring they generate.
        """
        if not self._terms:
            return ZERO
        x_powers = _power_table(x_value, max(i for i, _ in self._terms))
        y_powers = _power_table(y_value, max(j for _, j in self._terms))
        acc = None
        for (i, j), coeff in self._terms.items():
            term = x_powers[i] * y_powers[j] * coeff
            acc = term if acc is None else acc + term
        return acc

    def eval_at(self, x0: _CoeffLike, y0: _CoeffLike) -> Fraction:
        """Exact rational value at the point (x0, y0)."""
        x0 = Fraction(x0)
        y0 = Fraction(y0)
        total = Fraction(0)
        for (i, j), coeff in self._terms.items():
            total += coeff * x0**i * y0**j
        return total

    # -- rendering ----------------------------------------------------------

    def __str__(self) -> str:
        return canonical_text(self)

    def __repr__(self) -> str:
        return f"BivarPoly({canonical_text(self)})"


def _power_table(value, top: int) -> list:
    powers = [value**0]
    for _ in range(top):
        powers.append(powers[-1] * value)
    return powers


X = BivarPoly({(1, 0): 1})
Y = BivarPoly({(0, 1): 1})
ZERO = BivarPoly.zero()
ONE = BivarPoly.one()

#: Discriminant of t^2 = x*t + y; the square of the adjoined element D.
DISCRIMINANT = BivarPoly({(2, 0): 1, (0, 1): 4})


class QuadExtElem:
    """Element a + b*D of Q[x, y][D] / (D^2 - (x^2 + 4y)).

    Multiplication reduces D^2 to the discriminant:
    ``(a + bD)(c + dD) = (ac + bd*(x^2+4y)) + (ad + bc)D``.
    Elements with zero D part embed the base polynomial ring, and compare
    equal to the corresponding :class:`BivarPoly`.
    """

    __slots__ = ("_a", "_b")

    def __init__(self, a: BivarPoly | _CoeffLike = ZERO, b: BivarPoly | _CoeffLike = ZERO) -> None:
        a_poly = BivarPoly._coerce(a)
        b_poly = BivarPoly._coerce(b)
        if a_poly is None or b_poly is None:
            raise TypeError("components must be polynomials or rationals")
        self._a = a_poly
        self._b = b_poly

    @property
    def a(self) -> BivarPoly:
        return self._a

    @property
    def b(self) -> BivarPoly:
        return self._b

    def is_base(self) -> bool:
        """True when the D part vanishes, i.e. the value is a plain polynomial."""
        return self._b.is_zero()

    def conjugate(self) -> QuadExtElem:
        return QuadExtElem(self._a, -self._b)

    @staticmethod
    def _coerce(other: object) -> QuadExtElem | None:
        if isinstance(other, QuadExtElem):
            return other
        base = BivarPoly._coerce(other)
        if base is not None:
            return QuadExtElem(base)
        return None

    def __add__(self, other: object) -> QuadExtElem:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return QuadExtElem(self._a + rhs._a, self._b + rhs._b)

    __radd__ = __add__

    def __neg__(self) -> QuadExtElem:
        return QuadExtElem(-self._a, -self._b)

    def __sub__(self, other: object) -> QuadExtElem:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: object) -> QuadExtElem:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return rhs + (-self)

    def __mul__(self, other: object) -> QuadExtElem:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        a, b, c, d = self._a, self._b, rhs._a, rhs._b
        return QuadExtElem(a * c + b * d * DISCRIMINANT, a * d + b * c)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> QuadExtElem:
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError(f"exponent must be a nonnegative integer, got {exponent!r}")
        result = QuadExtElem(ONE)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other: object) -> bool:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self._a == rhs._a and self._b == rhs._b

    def __hash__(self) -> int:
        if self._b.is_zero():
            return hash(self._a)
        return hash((self._a, self._b))

    def __bool__(self) -> bool:
        return bool(self._a) or bool(self._b)

    def __str__(self) -> str:
        return canonical_text(self)

    def __repr__(self) -> str:
        return f"QuadExtElem({canonical_text(self._a)}, {canonical_text(self._b)})"


#: The adjoined square root of x^2 + 4y.
DELTA = QuadExtElem(ZERO, ONE)

#: Values every generator and identity evaluator works over.
RingValue = Union[BivarPoly, QuadExtElem]


def _term_text(mono: Monomial, magnitude: Fraction) -> str:
    i, j = mono
    factors: list[str] = []
    if magnitude != 1 or (i == 0 and j == 0):
        factors.append(str(magnitude))
    if i:
        factors.append("x" if i == 1 else f"x^{i}")
    if j:
        factors.append("y" if j == 1 else f"y^{j}")
    return "*".join(factors)


def canonical_text(value) -> str:
    """Deterministic rendering; equal values produce identical strings.

    Term order is x-exponent descending, then y-exponent descending, so that
    e.g. ``x - y^2`` puts the x term first.  Unit coefficients and unit
    exponents are elided; rationals print as ``p/q``.
    """
    if isinstance(value, QuadExtElem):
        return f"({canonical_text(value.a)}) + ({canonical_text(value.b)})*D"
    if isinstance(value, (int, Fraction)):
        return str(value)
    if not isinstance(value, BivarPoly):
        raise TypeError(f"cannot render {value!r}")
    if value.is_zero():
        return "0"
    pieces: list[str] = []
    for mono, coeff in sorted(value._terms.items(), key=lambda kv: (-kv[0][0], -kv[0][1])):
        negative = coeff < 0
        body = _term_text(mono, -coeff if negative else coeff)
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f" - {body}" if negative else f" + {body}")
    return "".join(pieces)
