"""Exact scalars, dense univariate polynomials and root finding.

Everything here is the arithmetic substrate of the package. Exact values are
``fractions.Fraction`` (real), :class:`QComplex` (Gaussian rationals) and
:class:`Surd` (elements ``a + b*sqrt(d)`` of a quadratic extension). Inexact
values are plain ``float``/``complex``; the type itself carries the exactness
flag, see :func:`is_exact`.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence

import mpmath

from .errors import DegreeError, DomainError

__all__ = [
    "QComplex", "Surd", "Polynomial", "CubicRoots", "I",
    "as_fraction", "is_exact", "to_complex", "differentiate",
    "falling_factorial", "generalized_binomial", "solve_cubic",
    "cardano_roots", "polynomial_roots", "squarefree_decomposition",
    "polish_root", "det_exact", "nullspace_exact", "charpoly_exact",
    "interpolate",
]


def as_fraction(x) -> Fraction:
    """Exact rational from int, Fraction, or a 'p/q' / finite decimal string."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, _RationalABC):
        return Fraction(x.numerator, x.denominator)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational literal: {x!r}") from exc
    if isinstance(x, QComplex) and x.im == 0:
        return x.re
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def _is_square(x: Fraction) -> bool:
    if x < 0:
        return False
    n, d = x.numerator, x.denominator
    return math.isqrt(n) ** 2 == n and math.isqrt(d) ** 2 == d


def _exact_sqrt(x: Fraction) -> Fraction:
    return Fraction(math.isqrt(x.numerator), math.isqrt(x.denominator))


# ---------------------------------------------------------------------------
# Gaussian rationals
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QComplex:
    """Complex number with exact rational real and imaginary parts."""

    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", as_fraction(self.re))
        object.__setattr__(self, "im", as_fraction(self.im))

    @staticmethod
    def _coerce(other):
        if isinstance(other, QComplex):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return QComplex(other, 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) + other
            return NotImplemented
        return QComplex(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return QComplex(-self.re, -self.im)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) - other
            return NotImplemented
        return QComplex(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) * other
            return NotImplemented
        return QComplex(self.re * o.re - self.im * o.im,
                        self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) / other
            return NotImplemented
        den = o.re * o.re + o.im * o.im
        if den == 0:
            raise ZeroDivisionError("QComplex division by zero")
        num = self * o.conjugate()
        return QComplex(num.re / den, num.im / den)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return QComplex(1) / (self ** (-k))
        out, base = QComplex(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self):
        return QComplex(self.re, -self.im)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) == other
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __abs__(self):
        return abs(complex(self))

    @property
    def real(self):
        return self.re

    @property
    def imag(self):
        return self.im

    def __repr__(self):
        if self.im == 0:
            return f"{self.re}"
        sign = "+" if self.im >= 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}i)"


I = QComplex(0, 1)


# ---------------------------------------------------------------------------
# Quadratic surds a + b*sqrt(d)
# ---------------------------------------------------------------------------

def _scalar(x):
    return isinstance(x, (int, Fraction, QComplex)) and not isinstance(x, bool)


@dataclass(frozen=True)
class Surd:
    """Exact element ``a + b*sqrt(d)`` with rational radicand ``d``.

    ``a`` and ``b`` may be Fractions or QComplex. Build with :meth:`sqrt`,
    which collapses perfect squares so that equality tests stay exact.
    """

    a: object
    b: object
    d: Fraction

    @classmethod
    def sqrt(cls, d, scale=1):
        """``scale * sqrt(d)``, exact."""
        d = as_fraction(d)
        if _is_square(d):
            return cls(Fraction(0) + scale * _exact_sqrt(d), Fraction(0), Fraction(0))
        if d < 0 and _is_square(-d):
            return cls(QComplex(0, 1) * scale * _exact_sqrt(-d), Fraction(0), Fraction(0))
        return cls(Fraction(0), scale, d)

    def _coerce(self, other):
        if isinstance(other, Surd):
            if other.b == 0:
                return Surd(other.a, Fraction(0), self.d)
            if self.b == 0 or self.d == 0:
                return other
            if other.d != self.d:
                raise ValueError("surds over different radicands")
            return other
        if _scalar(other):
            return Surd(other, Fraction(0), self.d)
        return None

    def _radicand(self, o):
        return self.d if self.b != 0 else o.d

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) + other
            return NotImplemented
        return Surd(self.a + o.a, self.b + o.b, self._radicand(o))

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) * other
            return NotImplemented
        d = self._radicand(o)
        return Surd(self.a * o.a + self.b * o.b * d, self.a * o.b + self.b * o.a, d)

    __rmul__ = __mul__

    def conjugate_surd(self):
        return Surd(self.a, -self.b, self.d)

    def __truediv__(self, other):
        if _scalar(other):
            if other == 0:
                raise ZeroDivisionError("Surd division by zero")
            return Surd(self.a / other, self.b / other, self.d)
        o = self._coerce(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) / other
            return NotImplemented
        d = self._radicand(o)
        norm = o.a * o.a - o.b * o.b * d
        if norm == 0:
            raise ZeroDivisionError("Surd division by zero")
        return (self * o.conjugate_surd()) / norm

    def __rtruediv__(self, other):
        if _scalar(other):
            return Surd(other, Fraction(0), self.d) / self
        return NotImplemented

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, (float, complex)) else None
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) == other
            return NotImplemented
        # d is never a perfect square when b != 0, so the basis {1, sqrt d} is free
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __complex__(self):
        return complex(self.a) + complex(self.b) * cmath.sqrt(float(self.d))

    def __float__(self):
        z = complex(self)
        if abs(z.imag) > 1e-12 * (1 + abs(z.real)):
            raise TypeError("Surd value is not real")
        return z.real

    def __abs__(self):
        return abs(complex(self))

    @property
    def is_rational(self):
        return self.b == 0

    def __repr__(self):
        if self.b == 0:
            return f"{self.a}"
        return f"({self.a} + {self.b}*sqrt({self.d}))"


def is_exact(x) -> bool:
    if isinstance(x, bool):
        return False
    return isinstance(x, (int, Fraction, QComplex, Surd))


def to_complex(x) -> complex:
    if isinstance(x, mpmath.mpc) or isinstance(x, mpmath.mpf):
        return complex(x)
    return complex(x)


def _is_zero(c) -> bool:
    return c == 0


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------

class Polynomial:
    """Dense univariate polynomial, ``coeffs[i]`` multiplies ``r**i``.

    Coefficients may be any numbers closed under + and * (Fraction,
    QComplex, Surd, float, complex). The instance is immutable.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = list(coeffs)
        while cs and _is_zero(cs[-1]):
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def monomial(cls, k: int, c=Fraction(1)) -> "Polynomial":
        if k < 0:
            return cls()
        return cls([Fraction(0)] * k + [c])

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls([c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    @staticmethod
    def _lift(other):
        if isinstance(other, Polynomial):
            return other
        return Polynomial([other])

    def __add__(self, other):
        o = self._lift(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return Polynomial(self[i] + o[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return Polynomial(c * other for c in self.coeffs)
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if _is_zero(a):
                continue
            for k, b in enumerate(other.coeffs):
                out[i + k] = out[i + k] + a * b
        return Polynomial(out)

    def __rmul__(self, other):
        return Polynomial(other * c for c in self.coeffs)

    def __pow__(self, k: int):
        out = Polynomial([Fraction(1)])
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self, order: int = 1) -> "Polynomial":
        if order < 0:
            raise ValueError("derivative order must be >= 0")
        cs = list(self.coeffs)
        for _ in range(order):
            cs = [i * cs[i] for i in range(1, len(cs))]
        return Polynomial(cs)

    def shift(self, k: int) -> "Polynomial":
        """Multiply by ``r**k`` (k >= 0)."""
        return Polynomial([Fraction(0)] * k + list(self.coeffs))

    def map(self, fn) -> "Polynomial":
        return Polynomial(fn(c) for c in self.coeffs)

    def leading(self):
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def monic(self) -> "Polynomial":
        lc = self.leading()
        return Polynomial(c / lc for c in self.coeffs)

    def __divmod__(self, other: "Polynomial"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs) + 1
        if dq <= 0:
            return Polynomial(), Polynomial(rem)
        quo = [Fraction(0)] * dq
        lc = other.leading()
        for i in range(dq - 1, -1, -1):
            c = rem[i + other.degree] / lc
            quo[i] = c
            if _is_zero(c):
                continue
            for k, b in enumerate(other.coeffs):
                rem[i + k] = rem[i + k] - c * b
        return Polynomial(quo), Polynomial(rem[: other.degree])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        return self == Polynomial([other])

    def __hash__(self):
        return hash(self.coeffs)

    def max_abs(self) -> float:
        return max((abs(complex(c)) for c in self.coeffs), default=0.0)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if _is_zero(c):
                continue
            terms.append(f"{c}" if i == 0 else f"{c}*r" if i == 1 else f"{c}*r^{i}")
        return " + ".join(terms)


def differentiate(p: Polynomial, order: int) -> Polynomial:
    return p.derivative(order)


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


# ---------------------------------------------------------------------------
# Factorial family
# ---------------------------------------------------------------------------

def falling_factorial(k, m: int) -> Fraction:
    """``k(k-1)...(k-m+1)``; for ``m < 0`` the ratio Gamma(k+1)/Gamma(k-m+1)."""
    k = as_fraction(k)
    if m >= 0:
        out = Fraction(1)
        for i in range(m):
            out *= k - i
        return out
    # Gamma(k+1)/Gamma(k+1+|m|) = 1/((k+1)(k+2)...(k+|m|))
    lo = k + 1
    if lo.denominator == 1 and lo <= 0:
        raise DomainError(f"falling factorial ({k})_{m}: Gamma pole at {lo}")
    den = Fraction(1)
    for i in range(1, -m + 1):
        den *= k + i
    return 1 / den


def generalized_binomial(x, p: int) -> Fraction:
    if p < 0:
        raise DomainError("binomial lower index must be >= 0")
    return falling_factorial(as_fraction(x), p) / math.factorial(p)


# ---------------------------------------------------------------------------
# Roots
# ---------------------------------------------------------------------------

def squarefree_decomposition(p: Polynomial) -> list[tuple[Polynomial, int]]:
    """Yun's algorithm over Q: ``p = c * prod f_i**i`` with f_i squarefree."""
    if p.degree < 1:
        return []
    out = []
    a = p.monic()
    b = a.derivative()
    c = poly_gcd(a, b)
    w = a // c
    i = 1
    while w.degree > 0:
        y = poly_gcd(w, c)
        z = w // y
        if z.degree > 0:
            out.append((z.monic(), i))
        i += 1
        w = y
        c = c // y
    return out


def _integer_form(p: Polynomial) -> list[int]:
    lcm = 1
    for c in p.coeffs:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    return [int(c * lcm) for c in p.coeffs]


def _numeric_roots(p: Polynomial, dps: int = 50) -> list:
    with mpmath.workdps(dps):
        coeffs = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(p.coeffs)]
        if len(coeffs) == 2:
            return [-coeffs[1] / coeffs[0]]
        return list(mpmath.polyroots(coeffs, maxsteps=400, extraprec=4 * dps))


def _split_rational_roots(p: Polynomial):
    """Exact rational roots of a squarefree rational polynomial, plus the cofactor.

    Candidates come from high-precision numerics: a rational root p/q of an
    integer polynomial has q dividing the leading coefficient, so rounding
    ``x * lead`` gives the only candidate numerator; each candidate is then
    confirmed by exact evaluation.
    """
    found = []
    if p.degree < 1:
        return found, p
    if p[0] == 0:
        found.append(Fraction(0))
        p = p // Polynomial([Fraction(0), Fraction(1)])
    if p.degree < 1:
        return found, p
    lead = abs(_integer_form(p)[-1])
    for z in _numeric_roots(p):
        z = mpmath.mpc(z)
        if abs(z.imag) > mpmath.mpf(10) ** -20 * (1 + abs(z)):
            continue
        x = z.real
        cand = {Fraction(int(mpmath.nint(x * lead)), lead),
                Fraction(str(mpmath.nstr(x, 40))).limit_denominator(10 ** 12)}
        for c in cand:
            if c not in found and p(c) == 0:
                found.append(c)
                break
    for c in found:
        if c != 0:
            p = p // Polynomial([-c, Fraction(1)])
    return found, p


def cardano_roots(b2, b1, b0) -> list[complex]:
    """Roots of the monic cubic ``z^3 + b2 z^2 + b1 z + b0`` by the s+- formulas."""
    b2, b1, b0 = complex(b2), complex(b1), complex(b0)
    q = b1 / 3 - b2 * b2 / 9
    t = (b1 * b2 - 3 * b0) / 6 - b2 ** 3 / 27
    rad = cmath.sqrt(q ** 3 + t * t)
    u = t + rad if abs(t + rad) >= abs(t - rad) else t - rad
    if u == 0:
        sp = sm = 0j
    else:
        sp = u ** (1 / 3)
        sm = -q / sp
    shift = b2 / 3
    half = 0.5 * (sp + sm)
    im = 0.5j * math.sqrt(3) * (sp - sm)
    roots = [sp + sm - shift, -half - shift + im, -half - shift - im]
    # Newton polish against cancellation in the radicals
    polished = []
    for z in roots:
        for _ in range(3):
            f = ((z + b2) * z + b1) * z + b0
            df = (3 * z + 2 * b2) * z + b1
            if df == 0:
                break
            step = f / df
            z -= step
            if abs(step) <= 1e-17 * (1 + abs(z)):
                break
        polished.append(z)
    return polished


def _realify(z: complex, scale: float = 1.0):
    if abs(z.imag) <= 1e-13 * (1 + scale):
        return float(z.real)
    return complex(z)


def _exact_quadratic(p: Polynomial):
    c, b, a = p.coeffs
    disc = b * b - 4 * a * c
    if _is_square(disc):
        s = _exact_sqrt(disc)
        return [(-b + s) / (2 * a), (-b - s) / (2 * a)]
    if disc < 0 and _is_square(-disc):
        s = _exact_sqrt(-disc)
        return [QComplex(-b / (2 * a), s / (2 * a)), QComplex(-b / (2 * a), -s / (2 * a))]
    return None


def _inexact_roots(p: Polynomial) -> list:
    if p.degree < 1:
        return []
    if p.degree == 2:
        ex = _exact_quadratic(p)
        if ex is not None:
            return ex
    scale = max(abs(float(c)) for c in p.coeffs) / abs(float(p.leading()))
    if p.degree == 3:
        m = p.monic()
        return [_realify(z, scale) for z in cardano_roots(m[2], m[1], m[0])]
    out = []
    for z in _numeric_roots(p):
        z = complex(z)
        out.append(_realify(z, scale))
    return out


def sort_key(z):
    c = complex(z)
    return (round(c.real, 12), round(c.imag, 12))


def polynomial_roots(p: Polynomial) -> list[tuple[object, int]]:
    """All roots of a rational polynomial with multiplicities.

    Rational roots come back as Fractions, Gaussian-rational roots as
    QComplex, everything else as float/complex. Sorted by (real, imag).
    """
    if p.degree < 0:
        raise DegreeError("the zero polynomial has no finite root set")
    p = p.map(as_fraction)
    out = []
    for factor, mult in squarefree_decomposition(p):
        rats, rest = _split_rational_roots(factor)
        out.extend((r, mult) for r in rats)
        out.extend((z, mult) for z in _inexact_roots(rest))
    out.sort(key=lambda t: sort_key(t[0]))
    return out


def polish_root(p: Polynomial, z0, dps: int = 50):
    """Newton-refine an approximate root of a rational polynomial in mpmath."""
    with mpmath.workdps(dps):
        coeffs = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(p.coeffs)]
        z = mpmath.mpc(complex(z0))
        for _ in range(100):
            f, df = mpmath.polyval(coeffs, z, derivative=True)
            if df == 0:
                break
            step = f / df
            z -= step
            if abs(step) <= mpmath.mpf(10) ** (-dps + 5) * (1 + abs(z)):
                break
        return z


@dataclass(frozen=True)
class CubicRoots:
    roots: tuple
    multiplicities: tuple
    all_real: bool

    @property
    def values(self) -> list:
        out = []
        for z, m in zip(self.roots, self.multiplicities):
            out.extend([z] * m)
        return out

    @property
    def exact(self) -> bool:
        return all(is_exact(z) for z in self.roots)


def solve_cubic(a3, a2, a1, a0) -> CubicRoots:
    a3, a2, a1, a0 = (as_fraction(c) for c in (a3, a2, a1, a0))
    if a3 == 0:
        raise DegreeError("leading coefficient of a cubic must be nonzero")
    pairs = polynomial_roots(Polynomial([a0, a1, a2, a3]))
    roots = tuple(z for z, _ in pairs)
    mults = tuple(m for _, m in pairs)
    all_real = all(
        isinstance(z, (Fraction, float)) or (isinstance(z, QComplex) and z.im == 0)
        for z in roots
    )
    return CubicRoots(roots, mults, all_real)


# ---------------------------------------------------------------------------
# Exact linear algebra on small dense rational matrices
# ---------------------------------------------------------------------------

def det_exact(M: Sequence[Sequence]) -> Fraction:
    A = [list(row) for row in M]
    n = len(A)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            A[col], A[piv] = A[piv], A[col]
            det = -det
        p = A[col][col]
        det *= p
        for r in range(col + 1, n):
            f = A[r][col] / p
            if f != 0:
                for c in range(col, n):
                    A[r][c] -= f * A[col][c]
    return det


def nullspace_exact(M: Sequence[Sequence]) -> list[list]:
    """Basis of the right null space by exact row reduction."""
    A = [list(row) for row in M]
    rows, cols = len(A), len(A[0]) if A else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        pv = A[r][c]
        A[r] = [x / pv for x in A[r]]
        for i in range(rows):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * cols
        v[fcol] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -A[i][fcol]
        basis.append(v)
    return basis


def charpoly_exact(M: Sequence[Sequence]) -> Polynomial:
    """``det(x I - M)`` by Faddeev-LeVerrier over Q."""
    n = len(M)
    A = [[as_fraction(x) for x in row] for row in M]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    Mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # Mk <- A*Mk + c_{n-k+1} I
        AM = [[sum(A[i][t] * Mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        for i in range(n):
            AM[i][i] += coeffs[n - k + 1]
        Mk = AM
        AMk = [[sum(A[i][t] * Mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        coeffs[n - k] = -sum(AMk[i][i] for i in range(n)) / k
    return Polynomial(coeffs)


def interpolate(xs: Sequence, ys: Sequence) -> Polynomial:
    """Exact Lagrange interpolation through (xs[i], ys[i])."""
    out = Polynomial()
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        basis = Polynomial([Fraction(1)])
        den = Fraction(1)
        for k, xk in enumerate(xs):
            if k != i:
                basis = basis * Polynomial([-xk, Fraction(1)])
                den *= xi - xk
        out = out + basis * (yi / den)
    return out
