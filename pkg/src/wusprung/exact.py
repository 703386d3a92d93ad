"""Exact arithmetic kernel: rationals, polynomials in omega, truncated series.

Rationals are :class:`fractions.Fraction` (always reduced, denominator > 0).
:class:`OmegaPoly` is the commutative ring Q[w] and :class:`TruncSeries` is a
dense truncated power series over either ring.  Every series operation takes
an explicit truncation order ``N`` and is exact for all degrees <= N::

    >>> u = TruncSeries.variable(5)
    >>> series_revert(u + u**3, 5)
    TruncSeries([0, 1, 0, -1, 0, 3])
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

BigRational = Fraction

Scalar = Union[int, Fraction]


class RingMismatchError(TypeError):
    """Raised when series over different coefficient rings are combined."""


class NotInvertibleError(ArithmeticError):
    """Raised when an operation needs a ring unit and does not get one."""


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected int or Fraction, got {type(value).__name__}")


class OmegaPoly:
    """Polynomial in the formal symbol ``w`` with rational coefficients.

    ``coeffs[i]`` is the coefficient of ``w**i``; trailing zeros are trimmed,
    so the zero polynomial has ``coeffs == ()`` and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("OmegaPoly is immutable")

    @classmethod
    def constant(cls, c: Scalar) -> OmegaPoly:
        return cls([c])

    @classmethod
    def omega(cls) -> OmegaPoly:
        return cls([0, 1])

    @classmethod
    def zero(cls) -> OmegaPoly:
        return cls()

    @classmethod
    def one(cls) -> OmegaPoly:
        return cls([1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, power: int) -> Fraction:
        if 0 <= power < len(self.coeffs):
            return self.coeffs[power]
        return Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_unit(self) -> bool:
        return self.degree == 0

    def _coerce(self, other) -> OmegaPoly | None:
        if isinstance(other, OmegaPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return OmegaPoly([other])
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return OmegaPoly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> OmegaPoly:
        return OmegaPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return OmegaPoly(c * other for c in self.coeffs)
        if not isinstance(other, OmegaPoly):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return OmegaPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return OmegaPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        # only division by a nonzero rational (or a constant polynomial)
        if isinstance(other, OmegaPoly):
            if not other.is_unit():
                raise NotInvertibleError(f"{other} is not a unit of Q[w]")
            other = other.coeffs[0]
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        if other == 0:
            raise ZeroDivisionError("division of OmegaPoly by zero")
        return OmegaPoly(c / other for c in self.coeffs)

    def inverse(self) -> OmegaPoly:
        if not self.is_unit():
            raise NotInvertibleError(f"{self} is not a unit of Q[w]")
        return OmegaPoly([1 / self.coeffs[0]])

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("OmegaPoly", self.coeffs))

    def __call__(self, w: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * w + float(c)
        return acc

    def terms(self) -> list[tuple[int, Fraction]]:
        return [(p, c) for p, c in enumerate(self.coeffs) if c != 0]

    def __str__(self) -> str:
        return format_omega_poly(self)

    def __repr__(self) -> str:
        return f"OmegaPoly([{', '.join(str(c) for c in self.coeffs)}])"


def format_rational(q: Fraction) -> str:
    return str(q) if q.denominator != 1 else str(q.numerator)


def format_omega_poly(p: OmegaPoly, symbol: str = "w") -> str:
    """Ascending-power term list, e.g. ``8/15*w^2 + 28/9*w^3``."""
    parts: list[str] = []
    for power, c in p.terms():
        if power == 0:
            body = format_rational(abs(c))
        else:
            mono = symbol if power == 1 else f"{symbol}^{power}"
            body = mono if abs(c) == 1 else f"{format_rational(abs(c))}*{mono}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts) if parts else "0"


def parse_omega_poly(text: str, symbol: str = "w") -> OmegaPoly:
    """Inverse of :func:`format_omega_poly`."""
    s = text.replace(" ", "")
    if s in ("", "0"):
        return OmegaPoly()
    if s[0] not in "+-":
        s = "+" + s
    coeffs: dict[int, Fraction] = {}
    i = 0
    while i < len(s):
        sign = -1 if s[i] == "-" else 1
        j = i + 1
        while j < len(s) and s[j] not in "+-":
            j += 1
        term = s[i + 1 : j]
        i = j
        if symbol in term:
            head, _, tail = term.partition(symbol)
            power = int(tail[1:]) if tail.startswith("^") else 1
            c = Fraction(head.rstrip("*")) if head else Fraction(1)
        else:
            power, c = 0, Fraction(term)
        coeffs[power] = coeffs.get(power, Fraction(0)) + sign * c
    top = max(coeffs)
    return OmegaPoly(coeffs.get(k, 0) for k in range(top + 1))


# --- ring helpers -----------------------------------------------------------

Ring = type  # Fraction or OmegaPoly


def _ring_of(value) -> Ring:
    if isinstance(value, OmegaPoly):
        return OmegaPoly
    if isinstance(value, (int, Fraction)):
        return Fraction
    raise TypeError(f"unsupported coefficient type {type(value).__name__}")


def _zero(ring: Ring):
    return OmegaPoly() if ring is OmegaPoly else Fraction(0)


def _one(ring: Ring):
    return OmegaPoly.one() if ring is OmegaPoly else Fraction(1)


def _lift(value, ring: Ring):
    if ring is OmegaPoly and not isinstance(value, OmegaPoly):
        return OmegaPoly([value])
    if ring is Fraction:
        return _as_fraction(value)
    return value


def _is_unit(value) -> bool:
    if isinstance(value, OmegaPoly):
        return value.is_unit()
    return value != 0


def _inverse(value):
    if isinstance(value, OmegaPoly):
        return value.inverse()
    if value == 0:
        raise NotInvertibleError("zero is not invertible")
    return 1 / Fraction(value)


def _is_zero(value) -> bool:
    return value.is_zero() if isinstance(value, OmegaPoly) else value == 0


class TruncSeries:
    """Truncated power series ``c0 + c1 u + ... + cN u^N``.

    Coefficients live in one ring (rationals or :class:`OmegaPoly`).  The
    stored length is ``order + 1``; unknown higher terms are simply absent.
    """

    __slots__ = ("coeffs", "ring")

    def __init__(self, coeffs: Sequence, order: int | None = None, ring: Ring | None = None):
        cs = list(coeffs)
        if ring is None:
            ring = _ring_of(cs[0]) if cs else Fraction
            if any(isinstance(c, OmegaPoly) for c in cs):
                ring = OmegaPoly
        if order is None:
            order = max(len(cs) - 1, 0)
        if order < 0:
            raise ValueError("truncation order must be >= 0")
        cs = cs[: order + 1] + [0] * (order + 1 - len(cs))
        object.__setattr__(self, "coeffs", tuple(_lift(c, ring) for c in cs))
        object.__setattr__(self, "ring", ring)

    def __setattr__(self, name, value):
        raise AttributeError("TruncSeries is immutable")

    @classmethod
    def variable(cls, order: int, ring: Ring = Fraction) -> TruncSeries:
        return cls([0, 1], order, ring)

    @classmethod
    def constant(cls, c, order: int, ring: Ring | None = None) -> TruncSeries:
        return cls([c], order, ring)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int):
        if k < 0:
            raise IndexError(k)
        if k > self.order:
            raise IndexError(f"coefficient {k} is beyond truncation order {self.order}")
        return self.coeffs[k]

    def __len__(self):
        return len(self.coeffs)

    def truncate(self, order: int) -> TruncSeries:
        return TruncSeries(self.coeffs, order, self.ring)

    def lift(self, ring: Ring) -> TruncSeries:
        if ring is self.ring:
            return self
        if ring is Fraction:
            raise RingMismatchError("cannot lower an OmegaPoly series to rationals")
        return TruncSeries(self.coeffs, self.order, ring)

    def _check(self, other: TruncSeries) -> None:
        if other.ring is not self.ring:
            raise RingMismatchError(
                f"series over {self.ring.__name__} and {other.ring.__name__}"
            )

    def __add__(self, other):
        if isinstance(other, TruncSeries):
            self._check(other)
            n = min(self.order, other.order)
            return TruncSeries(
                [a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs[: n + 1])],
                n,
                self.ring,
            )
        if isinstance(other, (int, Fraction, OmegaPoly)):
            cs = list(self.coeffs)
            cs[0] = cs[0] + other
            return TruncSeries(cs, self.order, self.ring)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> TruncSeries:
        return TruncSeries([-c for c in self.coeffs], self.order, self.ring)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncSeries):
            return series_mul(self, other, min(self.order, other.order))
        if isinstance(other, (int, Fraction, OmegaPoly)):
            ring = OmegaPoly if isinstance(other, OmegaPoly) else self.ring
            if ring is not self.ring:
                raise RingMismatchError("scale a rational series by OmegaPoly: lift it first")
            return TruncSeries([c * other for c in self.coeffs], self.order, ring)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, OmegaPoly)):
            return self * other
        return NotImplemented

    def __pow__(self, n: int) -> TruncSeries:
        if n < 0:
            return series_recip(self, self.order) ** (-n)
        out = TruncSeries.constant(_one(self.ring), self.order, self.ring)
        for _ in range(n):
            out = series_mul(out, self, self.order)
        return out

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.ring is other.ring and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ring.__name__, self.coeffs))

    def __repr__(self) -> str:
        return f"TruncSeries([{', '.join(str(c) for c in self.coeffs)}])"


def _same_ring(*series: TruncSeries) -> Ring:
    ring = series[0].ring
    for s in series[1:]:
        if s.ring is not ring:
            raise RingMismatchError(f"series over {ring.__name__} and {s.ring.__name__}")
    return ring


def _need(s: TruncSeries, N: int, what: str) -> None:
    if s.order < N:
        raise ValueError(f"{what} is known only to order {s.order}, need {N}")


def series_mul(a: TruncSeries, b: TruncSeries, N: int) -> TruncSeries:
    """Cauchy product of ``a`` and ``b`` truncated at degree ``N``."""
    ring = _same_ring(a, b)
    _need(a, N, "left factor")
    _need(b, N, "right factor")
    ac, bc = a.coeffs, b.coeffs
    out = []
    for n in range(N + 1):
        acc = _zero(ring)
        for k in range(n + 1):
            x, y = ac[k], bc[n - k]
            if _is_zero(x) or _is_zero(y):
                continue
            acc = acc + x * y
        out.append(acc)
    return TruncSeries(out, N, ring)


def series_recip(a: TruncSeries, N: int) -> TruncSeries:
    """Multiplicative inverse; the constant term must be a ring unit."""
    _need(a, N, "series")
    a0 = a.coeffs[0]
    if not _is_unit(a0):
        raise NotInvertibleError(f"constant term {a0} is not a unit")
    inv0 = _inverse(a0)
    ring = a.ring
    r = [inv0]
    for n in range(1, N + 1):
        acc = _zero(ring)
        for k in range(1, n + 1):
            if not _is_zero(a.coeffs[k]):
                acc = acc + a.coeffs[k] * r[n - k]
        r.append(-(acc * inv0))
    return TruncSeries(r, N, ring)


def series_cbrt(a: TruncSeries, N: int) -> TruncSeries:
    """Cube root of a series with constant term exactly 1.

    Uses the power recurrence for ``a**(1/3)``:
    ``n c_n = sum_{k=1..n} ((alpha + 1) k - n) a_k c_{n-k}`` with alpha = 1/3.
    """
    _need(a, N, "series")
    if a.coeffs[0] != 1:
        raise NotInvertibleError(f"cube root needs constant term 1, got {a.coeffs[0]}")
    ring = a.ring
    alpha = Fraction(1, 3)
    c = [_one(ring)]
    for n in range(1, N + 1):
        acc = _zero(ring)
        for k in range(1, n + 1):
            if not _is_zero(a.coeffs[k]):
                acc = acc + a.coeffs[k] * c[n - k] * ((alpha + 1) * k - n)
        c.append(acc * Fraction(1, n))
    return TruncSeries(c, N, ring)


def series_compose(f: TruncSeries, g: TruncSeries, N: int) -> TruncSeries:
    """``f(g(u))`` truncated at degree ``N``; ``g`` must vanish at 0."""
    ring = _same_ring(f, g)
    _need(g, N, "inner series")
    if not _is_zero(g.coeffs[0]):
        raise ValueError("inner series must have zero constant term")
    top = min(f.order, N)
    acc = TruncSeries.constant(f.coeffs[top], N, ring)
    for k in range(top - 1, -1, -1):
        acc = series_mul(acc, g, N) + f.coeffs[k]
    return acc


def series_revert(f: TruncSeries, N: int) -> TruncSeries:
    """Compositional inverse ``g`` with ``f(g(u)) = u + O(u^(N+1))``.

    Lagrange inversion: ``[u^n] g = (1/n) [u^(n-1)] (u / f(u))^n`` where
    ``u / f(u)`` is the reciprocal of ``f`` shifted down one degree.
    """
    _need(f, N, "series")
    ring = f.ring
    if not _is_zero(f.coeffs[0]):
        raise ValueError("series to revert must have zero constant term")
    if N == 0:
        return TruncSeries([0], 0, ring)
    if not _is_unit(f.coeffs[1]):
        raise NotInvertibleError(f"linear coefficient {f.coeffs[1]} is not a unit")
    # u/f(u) is needed to order N-1
    shifted = TruncSeries(f.coeffs[1:], N - 1, ring)
    phi = series_recip(shifted, N - 1)
    out = [_zero(ring)]
    power = phi
    for n in range(1, N + 1):
        out.append(power.coeffs[n - 1] * Fraction(1, n))
        if n < N:
            power = series_mul(power, phi, N - 1)
    return TruncSeries(out, N, ring)
