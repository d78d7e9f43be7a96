"""Finite fields GF(p^m) of odd characteristic and their quadratic extensions.

Elements are stored as integer indices.  For ``GF(p^m)`` the index encodes the
coefficient tuple ``(c0, c1, ..., c_{m-1})`` of the residue polynomial
``c0 + c1 t + ... + c_{m-1} t^{m-1}`` in lexicographic order, ``c0`` being
the most significant digit.  For a quadratic extension ``GF(q)[alpha]`` with
``alpha^2 = d`` the element ``x + y*alpha`` has index ``x*q + y``.  Index order
is the canonical enumeration order used for vertex labels downstream.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import FieldError

#: Largest field order built by default.
MAX_ORDER = 2**20


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, m)`` with ``q == p**m``; raise FieldError otherwise."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    p = prime_factors(q)[0]
    m = 0
    r = q
    while r % p == 0:
        r //= p
        m += 1
    if r != 1:
        raise FieldError(f"{q} is not a prime power")
    return p, m


class _FiniteField:
    """Shared machinery: log tables, square table, element wrappers.

    Subclasses provide ``order``, ``characteristic`` and the raw index
    operations ``_add``, ``_neg`` and ``_mul_slow``.
    """

    order: int
    characteristic: int

    def _build_tables(self) -> None:
        q = self.order
        self._primitive = self._find_primitive()
        one = self._one
        exp = [0] * (q - 1)
        log = [-1] * q
        x = one
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = self._mul_slow(x, self._primitive)
        if x != one or -1 in log[1:]:
            raise FieldError(f"internal error: element {self._primitive} is not primitive")
        self._exp = exp
        self._log = log
        squares = np.zeros(q, dtype=bool)
        squares[exp[0::2]] = True
        self._squares = squares
        if int(squares.sum()) != (q - 1) // 2:
            raise FieldError("internal error: wrong number of nonzero squares")

    def _pow_slow(self, a: int, e: int) -> int:
        result = self._one
        while e:
            if e & 1:
                result = self._mul_slow(result, a)
            a = self._mul_slow(a, a)
            e >>= 1
        return result

    def _find_primitive(self) -> int:
        q = self.order
        cofactors = [(q - 1) // r for r in prime_factors(q - 1)]
        one = self._one
        for g in range(1, q):
            if self._pow_slow(g, q - 1) != one:
                continue
            if all(self._pow_slow(g, c) != one for c in cofactors):
                return g
        raise FieldError("internal error: no primitive element found")

    # -- index-level arithmetic ------------------------------------------
    def sub(self, a: int, b: int) -> int:
        return self._add(a, self._neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._exp[(-self._log[a]) % (self.order - 1)]

    def power(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return self._one if e == 0 else 0
        return self._exp[(self._log[a] * e) % (self.order - 1)]

    def is_square_index(self, a: int) -> bool:
        return bool(self._squares[a])

    @property
    def square_table(self) -> np.ndarray:
        """Boolean membership table of the nonzero squares, indexed by element."""
        view = self._squares.view()
        view.flags.writeable = False
        return view

    # -- element wrappers ------------------------------------------------
    def __call__(self, value: int) -> FieldElement:
        if not 0 <= value < self.order:
            raise FieldError(f"index {value} out of range for a field of order {self.order}")
        return FieldElement(self, value)

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, self._one)

    def elements(self) -> Iterator[FieldElement]:
        for i in range(self.order):
            yield FieldElement(self, i)

    def primitive_element(self) -> FieldElement:
        return FieldElement(self, self._primitive)

    def _add(self, a: int, b: int) -> int:  # pragma: no cover - abstract
        raise NotImplementedError

    def _neg(self, a: int) -> int:  # pragma: no cover - abstract
        raise NotImplementedError

    def _mul_slow(self, a: int, b: int) -> int:  # pragma: no cover - abstract
        raise NotImplementedError


class Field(_FiniteField):
    """The field GF(p^m) as GF(p)[t] modulo a monic irreducible polynomial.

    The modulus is the lexicographically smallest monic irreducible of degree
    ``m``, comparing the non-leading coefficients from ``t^{m-1}`` down to the
    constant term.
    """

    def __init__(self, p: int, m: int = 1, max_order: int = MAX_ORDER):
        if not is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if p == 2:
            raise FieldError("characteristic 2 is not supported")
        if m < 1:
            raise FieldError(f"degree must be positive, got {m}")
        if p**m > max_order:
            raise FieldError(f"field order {p}^{m} exceeds the bound {max_order}")
        self.characteristic = p
        self.degree = m
        self.order = p**m
        self._place = [p ** (m - 1 - i) for i in range(m)]
        self.modulus = _smallest_irreducible(p, m)
        self._coeffs = list(itertools.product(range(p), repeat=m))
        self._one = self._place[0]
        self._build_tables()

    def __repr__(self) -> str:
        return f"Field(GF({self.characteristic}^{self.degree}))"

    def coeffs(self, a: int) -> tuple[int, ...]:
        """Coefficients ``(c0, ..., c_{m-1})`` of the element with index ``a``."""
        return self._coeffs[a]

    def index(self, coeffs) -> int:
        if len(coeffs) != self.degree:
            raise FieldError(f"expected {self.degree} coefficients")
        return sum((c % self.characteristic) * w for c, w in zip(coeffs, self._place))

    def from_int(self, value: int) -> int:
        """Index of the prime-field element ``value mod p``."""
        return self.index((value % self.characteristic,) + (0,) * (self.degree - 1))

    def _add(self, a: int, b: int) -> int:
        if self.degree == 1:
            return (a + b) % self.characteristic
        p = self.characteristic
        return sum(((x + y) % p) * w for x, y, w in zip(self._coeffs[a], self._coeffs[b], self._place))

    def _neg(self, a: int) -> int:
        if self.degree == 1:
            return (-a) % self.characteristic
        p = self.characteristic
        return sum(((-x) % p) * w for x, w in zip(self._coeffs[a], self._place))

    def _mul_slow(self, a: int, b: int) -> int:
        p, m = self.characteristic, self.degree
        x = self._coeffs[a]
        y = self._coeffs[b]
        prod = [0] * (2 * m - 1)
        for i in range(m):
            if x[i]:
                for j in range(m):
                    prod[i + j] += x[i] * y[j]
        # reduce with t^m = -(c0 + c1 t + ... )
        for deg in range(2 * m - 2, m - 1, -1):
            c = prod[deg] % p
            if c:
                for i, mc in enumerate(self.modulus):
                    prod[deg - m + i] -= c * mc
            prod[deg] = 0
        return sum((prod[i] % p) * self._place[i] for i in range(m))

    def sub_matrix(self) -> np.ndarray:
        """Index matrix ``D[i, j] = e_i - e_j`` for all pairs of elements."""
        digits = np.asarray(self._coeffs, dtype=np.int64)
        d = (digits[:, None, :] - digits[None, :, :]) % self.characteristic
        return d @ np.asarray(self._place, dtype=np.int64)


def _poly_rem_is_zero(f: list[int], g: list[int], p: int) -> bool:
    """True iff the monic polynomial ``g`` divides ``f`` over GF(p).

    Both are coefficient lists in ascending degree.
    """
    r = list(f)
    dg = len(g) - 1
    for deg in range(len(r) - 1, dg - 1, -1):
        c = r[deg] % p
        if c:
            for i in range(dg + 1):
                r[deg - dg + i] = (r[deg - dg + i] - c * g[i]) % p
    return all(c % p == 0 for c in r[:dg])


def _is_irreducible(coeffs: tuple[int, ...], p: int) -> bool:
    m = len(coeffs)
    f = list(coeffs) + [1]
    for d in range(1, m // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if _poly_rem_is_zero(f, list(low) + [1], p):
                return False
    return True


def _smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Non-leading coefficients ``(c0, ..., c_{m-1})`` of the chosen modulus."""
    if m == 1:
        return (0,)
    for high_first in itertools.product(range(p), repeat=m):
        coeffs = tuple(reversed(high_first))
        if coeffs[0] == 0:
            continue
        if _is_irreducible(coeffs, p):
            return coeffs
    raise FieldError(f"internal error: no irreducible polynomial of degree {m} over GF({p})")


class QuadraticExtension(_FiniteField):
    """GF(q^2) = {x + y*alpha} with alpha a root of t^2 - d, d a non-square of GF(q).

    ``d`` defaults to the first non-square of the base field in enumeration order.
    """

    def __init__(self, base: Field, d: int | None = None, max_order: int = MAX_ORDER):
        q = base.order
        if q * q > max_order:
            raise FieldError(f"extension order {q}^2 exceeds the bound {max_order}")
        if d is None:
            d = next(i for i in range(1, q) if not base.is_square_index(i))
        elif d == 0 or base.is_square_index(d):
            raise FieldError("d must be a non-square of the base field")
        self.base = base
        self.d = d
        self.characteristic = base.characteristic
        self.order = q * q
        self._one = self.index(base._one, 0)
        self._build_tables()

    def __repr__(self) -> str:
        return f"QuadraticExtension({self.base!r}, d={self.d})"

    def pair(self, a: int) -> tuple[int, int]:
        return divmod(a, self.base.order)

    def index(self, x: int, y: int) -> int:
        return x * self.base.order + y

    def embed(self, x: int) -> int:
        """Index of the base-field element ``x`` inside the extension."""
        return self.index(x, 0)

    @property
    def alpha(self) -> FieldElement:
        return FieldElement(self, self.index(0, self.base._one))

    def _add(self, a: int, b: int) -> int:
        x1, y1 = self.pair(a)
        x2, y2 = self.pair(b)
        B = self.base
        return self.index(B._add(x1, x2), B._add(y1, y2))

    def _neg(self, a: int) -> int:
        x, y = self.pair(a)
        return self.index(self.base._neg(x), self.base._neg(y))

    def _mul_slow(self, a: int, b: int) -> int:
        B = self.base
        x1, y1 = self.pair(a)
        x2, y2 = self.pair(b)
        x = B._add(B.mul(x1, x2), B.mul(self.d, B.mul(y1, y2)))
        y = B._add(B.mul(x1, y2), B.mul(x2, y1))
        return self.index(x, y)

    def frobenius_index(self, a: int) -> int:
        x, y = self.pair(a)
        return self.index(x, self.base._neg(y))

    def norm_index(self, a: int) -> int:
        """Base-field index of ``x^2 - d*y^2``."""
        B = self.base
        x, y = self.pair(a)
        return B.sub(B.mul(x, x), B.mul(self.d, B.mul(y, y)))


@dataclass(frozen=True, eq=False)
class FieldElement:
    field: _FiniteField
    value: int

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise FieldError("elements belong to different fields")
            return other.value
        if isinstance(other, int) and isinstance(self.field, Field):
            return self.field.from_int(other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return other.field is self.field and other.value == self.value
        if isinstance(other, int) and isinstance(self.field, Field):
            return self.value == self.field.from_int(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((id(self.field), self.value))

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field._add(self.value, b))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, self.field._neg(self.value))

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub(self.value, b))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.mul(self.value, self.field.inv(b)))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.power(self.value, e))

    def inverse(self) -> FieldElement:
        return FieldElement(self.field, self.field.inv(self.value))

    @property
    def coeffs(self) -> tuple[int, ...]:
        if isinstance(self.field, QuadraticExtension):
            return self.field.pair(self.value)
        return self.field.coeffs(self.value)

    def multiplicative_order(self) -> int:
        if self.value == 0:
            raise ZeroDivisionError("zero has no multiplicative order")
        n = self.field.order - 1
        o = n
        for r in prime_factors(n):
            while o % r == 0 and self.field.power(self.value, o // r) == self.field._one:
                o //= r
        return o

    def __repr__(self) -> str:
        if isinstance(self.field, QuadraticExtension):
            x, y = self.field.pair(self.value)
            return f"<{x}+{y}a in GF({self.field.base.order}^2)>"
        return f"<{self.coeffs} in GF({self.field.order})>"


def make_field(p: int, m: int = 1, max_order: int = MAX_ORDER) -> Field:
    return Field(p, m, max_order=max_order)


def field_of_order(q: int, max_order: int = MAX_ORDER) -> Field:
    p, m = prime_power(q)
    return Field(p, m, max_order=max_order)


def is_square(e: FieldElement) -> bool:
    """True iff the nonzero element ``e`` is the square of a field element."""
    if e.value == 0:
        raise FieldError("squareness is only defined on nonzero elements")
    return e.field.is_square_index(e.value)


def _require_extension(e: FieldElement) -> QuadraticExtension:
    if not isinstance(e.field, QuadraticExtension):
        raise FieldError("element does not lie in a quadratic extension")
    return e.field


def frobenius(e: FieldElement) -> FieldElement:
    """``e**q`` for ``e`` in GF(q^2), computed as the conjugate ``x - y*alpha``."""
    F = _require_extension(e)
    return FieldElement(F, F.frobenius_index(e.value))


def norm(e: FieldElement) -> FieldElement:
    """``e**(q+1) = x^2 - d*y^2`` as an element of the base field."""
    F = _require_extension(e)
    return FieldElement(F.base, F.norm_index(e.value))


def primitive_element(f: _FiniteField) -> FieldElement:
    return f.primitive_element()
