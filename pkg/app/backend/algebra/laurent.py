"""
Exact Laurent polynomials with integer coefficients.

``LaurentPoly`` is a sparse exponent -> coefficient map in one variable;
``BivariatePoly`` is the (i, j) -> coefficient analogue used for Poincaré
polynomials. Both are immutable and never store zero coefficients. Python
integers are arbitrary precision, so no arithmetic here can overflow.
"""

import re
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Tuple, Union

from app.backend.errors import AlgebraError

Number = Union[int, Fraction]

_TERM = re.compile(r'([+-])?\s*(\d+)?\s*\*?\s*(?:([a-zA-Z])(?:\^\(?(-?\d+)\)?)?)?')


class LaurentPoly:
    __slots__ = ('_terms', 'var')

    def __init__(self, terms: Union[Mapping[int, int], Iterable[Tuple[int, int]], None] = None, var: str = 't'):
        clean: Dict[int, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else (terms or ())
        for exp, coeff in items:
            value = clean.get(int(exp), 0) + int(coeff)
            if value:
                clean[int(exp)] = value
            else:
                clean.pop(int(exp), None)
        self._terms = clean
        self.var = var

    # -- constructors -----------------------------------------------------

    @classmethod
    def constant(cls, c: int, var: str = 't') -> 'LaurentPoly':
        return cls({0: c}, var)

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1, var: str = 't') -> 'LaurentPoly':
        return cls({exp: coeff}, var)

    @classmethod
    def zero(cls, var: str = 't') -> 'LaurentPoly':
        return cls({}, var)

    @classmethod
    def one(cls, var: str = 't') -> 'LaurentPoly':
        return cls({0: 1}, var)

    # -- access ---------------------------------------------------------------

    @property
    def terms(self) -> Dict[int, int]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[int, int]]:
        return iter(sorted(self._terms.items(), reverse=True))

    def coefficient(self, exp: int) -> int:
        return self._terms.get(exp, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def min_degree(self) -> int:
        self._require_nonzero('min_degree')
        return min(self._terms)

    def max_degree(self) -> int:
        self._require_nonzero('max_degree')
        return max(self._terms)

    def leading_coefficient(self) -> int:
        return self._terms[self.max_degree()]

    def _require_nonzero(self, what: str) -> None:
        if not self._terms:
            raise AlgebraError(f"{what} of the zero polynomial")

    # -- ring operations ------------------------------------------------------

    def _coerce(self, other) -> 'LaurentPoly':
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(other, self.var)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        merged = dict(self._terms)
        for exp, coeff in other._terms.items():
            merged[exp] = merged.get(exp, 0) + coeff
        return LaurentPoly(merged, self.var)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._terms.items()}, self.var)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        product: Dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                product[e1 + e2] = product.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(product, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self._terms) == 1:
                (exp, coeff), = self._terms.items()
                if coeff in (1, -1):
                    return LaurentPoly({exp * k: coeff ** (-k)}, self.var)
            raise AlgebraError("negative power of a non-unit")
        result = LaurentPoly.one(self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __bool__(self):
        return bool(self._terms)

    # -- transformations --------------------------------------------------------

    def shift(self, k: int) -> 'LaurentPoly':
        """Multiply by var^k."""
        return LaurentPoly({e + k: c for e, c in self._terms.items()}, self.var)

    def scale_exponents(self, k: int) -> 'LaurentPoly':
        """Substitute var -> var^k."""
        return LaurentPoly({e * k: c for e, c in self._terms.items()}, self.var)

    def with_var(self, var: str) -> 'LaurentPoly':
        return LaurentPoly(self._terms, var)

    def divmod_exact(self, divisor: 'LaurentPoly') -> 'LaurentPoly':
        """Exact quotient; raises AlgebraError when ``divisor`` does not divide ``self``."""
        divisor._require_nonzero('division by')
        if not self._terms:
            return LaurentPoly.zero(self.var)
        dlo, dhi = divisor.min_degree(), divisor.max_degree()
        dlead = divisor._terms[dhi]
        remainder = dict(self._terms)
        quotient: Dict[int, int] = {}
        while remainder:
            top = max(remainder)
            if top - dhi < min(remainder) - dlo:
                raise AlgebraError("inexact Laurent division")
            coeff, rest = divmod(remainder[top], dlead)
            if rest:
                raise AlgebraError("inexact Laurent division")
            shift = top - dhi
            quotient[shift] = coeff
            for e, c in divisor._terms.items():
                value = remainder.get(e + shift, 0) - coeff * c
                if value:
                    remainder[e + shift] = value
                else:
                    remainder.pop(e + shift, None)
        return LaurentPoly(quotient, self.var)

    # -- text -----------------------------------------------------------------

    def to_text(self) -> str:
        if not self._terms:
            return '0'
        pieces = []
        for exp, coeff in self.items():
            magnitude = abs(coeff)
            if exp == 0:
                body = str(magnitude)
            else:
                power = self.var if exp == 1 else f'{self.var}^{exp}'
                body = power if magnitude == 1 else f'{magnitude}*{power}'
            if not pieces:
                pieces.append(('-' if coeff < 0 else '') + body)
            else:
                pieces.append(('- ' if coeff < 0 else '+ ') + body)
        return ' '.join(pieces)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f'LaurentPoly({self.to_text()!r})'


def parse_laurent(text: str, var: str = 't') -> LaurentPoly:
    """Inverse of ``LaurentPoly.to_text`` (also accepts ``3t^2`` and ``t^(-1)``)."""
    source = (text or '').strip()
    if source in ('', '0'):
        return LaurentPoly.zero(var)
    terms: Dict[int, int] = {}
    pos = 0
    compact = source.replace(' ', '')
    while pos < len(compact):
        match = _TERM.match(compact, pos)
        if not match or match.end() == pos:
            raise AlgebraError(f"cannot parse polynomial near {compact[pos:]!r}")
        sign, digits, symbol, exp = match.groups()
        if digits is None and symbol is None:
            raise AlgebraError(f"cannot parse polynomial near {compact[pos:]!r}")
        if symbol is not None and symbol != var:
            raise AlgebraError(f"unexpected variable {symbol!r}, expected {var!r}")
        coeff = int(digits) if digits is not None else 1
        if sign == '-':
            coeff = -coeff
        power = 0 if symbol is None else (int(exp) if exp is not None else 1)
        terms[power] = terms.get(power, 0) + coeff
        pos = match.end()
    return LaurentPoly(terms, var)


def add(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p + q


def mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p * q


def negate(p: LaurentPoly) -> LaurentPoly:
    return -p


def evaluate(p: LaurentPoly, x: Number) -> Fraction:
    """Exact value at a nonzero rational point."""
    x = Fraction(x)
    if x == 0:
        raise AlgebraError("cannot evaluate a Laurent polynomial at 0")
    return sum((Fraction(c) * x ** e for e, c in p.terms.items()), Fraction(0))


def invert_variable(p: LaurentPoly) -> LaurentPoly:
    return p.scale_exponents(-1)


def normalize_up_to_units(p: LaurentPoly) -> LaurentPoly:
    """Representative of p * (+-t^k) with lowest exponent 0 and positive leading coefficient."""
    if p.is_zero():
        raise AlgebraError("cannot normalize the zero polynomial")
    q = p.shift(-p.min_degree())
    return -q if q.leading_coefficient() < 0 else q


def degree_span(p: LaurentPoly) -> int:
    if p.is_zero():
        raise AlgebraError("degree span of the zero polynomial")
    return p.max_degree() - p.min_degree()


class BivariatePoly:
    """Sparse integer polynomial in (u, q) with Laurent exponents."""

    __slots__ = ('_terms', 'vars')

    def __init__(self, terms: Union[Mapping[Tuple[int, int], int], None] = None, vars: Tuple[str, str] = ('u', 'q')):
        clean: Dict[Tuple[int, int], int] = {}
        for (i, j), coeff in (terms or {}).items():
            value = clean.get((i, j), 0) + int(coeff)
            if value:
                clean[(i, j)] = value
            else:
                clean.pop((i, j), None)
        self._terms = clean
        self.vars = vars

    @property
    def terms(self) -> Dict[Tuple[int, int], int]:
        return dict(self._terms)

    def __add__(self, other: 'BivariatePoly') -> 'BivariatePoly':
        merged = dict(self._terms)
        for key, coeff in other._terms.items():
            merged[key] = merged.get(key, 0) + coeff
        return BivariatePoly(merged, self.vars)

    def __mul__(self, other: 'BivariatePoly') -> 'BivariatePoly':
        product: Dict[Tuple[int, int], int] = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in other._terms.items():
                key = (i1 + i2, j1 + j2)
                product[key] = product.get(key, 0) + c1 * c2
        return BivariatePoly(product, self.vars)

    def __eq__(self, other):
        return isinstance(other, BivariatePoly) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def specialize_first(self, value: int) -> LaurentPoly:
        """Set the first variable to an integer unit (+-1), leaving a Laurent polynomial in the second."""
        if value not in (1, -1):
            raise AlgebraError("only u = 1 or u = -1 keeps integer Laurent coefficients")
        terms: Dict[int, int] = {}
        for (i, j), coeff in self._terms.items():
            terms[j] = terms.get(j, 0) + coeff * value ** (i % 2)
        return LaurentPoly(terms, self.vars[1])

    def to_text(self) -> str:
        if not self._terms:
            return '0'
        u, q = self.vars
        pieces = []
        for (i, j), coeff in sorted(self._terms.items(), key=lambda kv: (kv[0][1], kv[0][0])):
            factors = [f'{u}^{i}' if i != 1 else u] if i else []
            if j:
                factors.append(f'{q}^{j}' if j != 1 else q)
            body = '*'.join(factors) or '1'
            magnitude = abs(coeff)
            if magnitude != 1 or not factors:
                body = f'{magnitude}*{body}' if factors else str(magnitude)
            prefix = ('-' if coeff < 0 else '') if not pieces else ('- ' if coeff < 0 else '+ ')
            pieces.append(prefix + body)
        return ' '.join(pieces)

    def __str__(self):
        return self.to_text()
