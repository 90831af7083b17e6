"""Symbolic coefficient field and generalized exponential polynomials.

The closed forms of the partition-function moments live in Q(t) with
t = 2^(beta^2): every exponent is p*beta^2 + q for integers p, q, hence
every power of two is t^p * 2^q.  A ``GenPoly`` maps exponent pairs to
rational-function coefficients and represents a finite sum

    sum over (p, q) of  c_{p,q}(t) * 2^((p*beta^2 + q) * n).

Also provides closed-form evaluation of plain and polynomially weighted
geometric sums over ring elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, Tuple

from .rings import RingContext

Coeffs = Tuple[Fraction, ...]


class DegenerateExponent(ArithmeticError):
    """A geometric sum with unit ratio has no closed form; the sum is n."""


def _trim(cs) -> Coeffs:
    cs = list(cs)
    while cs and not cs[-1]:
        cs.pop()
    return tuple(cs)


def _padd(a: Coeffs, b: Coeffs) -> Coeffs:
    n = max(len(a), len(b))
    return _trim((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                 for i in range(n))


def _pneg(a: Coeffs) -> Coeffs:
    return tuple(-x for x in a)


def _pmul(a: Coeffs, b: Coeffs) -> Coeffs:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _pdivmod(a: Coeffs, b: Coeffs) -> Tuple[Coeffs, Coeffs]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    inv_lead = Fraction(1) / b[-1]
    while len(rem) >= len(b):
        c = rem[-1] * inv_lead
        d = len(rem) - len(b)
        q[d] = c
        for i, y in enumerate(b):
            rem[d + i] -= c * y
        while rem and not rem[-1]:
            rem.pop()
        if not rem:
            break
    return _trim(q), _trim(rem)


def _pmonic(a: Coeffs) -> Coeffs:
    if not a or a[-1] == 1:
        return a
    inv = Fraction(1) / a[-1]
    return tuple(x * inv for x in a)


def _pgcd(a: Coeffs, b: Coeffs) -> Coeffs:
    # Monic normalization each step keeps the coefficient growth in check.
    a, b = _pmonic(a), _pmonic(b)
    while b:
        _, r = _pdivmod(a, b)
        a, b = b, _pmonic(r)
    return a


def _peval(a: Coeffs, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


class RatFun:
    """Reduced ratio of two polynomials in t over the rationals.

    Normal form: numerator and denominator share no common factor and the
    denominator is monic, so equal values have equal representations.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=(Fraction(1),)) -> None:
        num = _trim(Fraction(c) for c in num)
        den = _trim(Fraction(c) for c in den)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if num:
            g = _pgcd(num, den)
            if len(g) > 1:
                num, _ = _pdivmod(num, g)
                den, _ = _pdivmod(den, g)
        else:
            den = (Fraction(1),)
        lead = den[-1]
        if lead != 1:
            inv = Fraction(1) / lead
            num = tuple(c * inv for c in num)
            den = tuple(c * inv for c in den)
        self.num = num
        self.den = den

    @classmethod
    def from_fraction(cls, c) -> "RatFun":
        return cls((Fraction(c),))

    @classmethod
    def zero(cls) -> "RatFun":
        return cls(())

    @classmethod
    def one(cls) -> "RatFun":
        return cls((Fraction(1),))

    @classmethod
    def t_power(cls, p: int, scale=Fraction(1)) -> "RatFun":
        """scale * t**p, with negative p putting the power below the line."""
        scale = Fraction(scale)
        if p >= 0:
            return cls((Fraction(0),) * p + (scale,))
        return cls((scale,), (Fraction(0),) * (-p) + (Fraction(1),))

    def is_zero(self) -> bool:
        return not self.num

    def __add__(self, other):
        if not isinstance(other, RatFun):
            return NotImplemented
        num = _padd(_pmul(self.num, other.den), _pmul(other.num, self.den))
        return RatFun(num, _pmul(self.den, other.den))

    def __sub__(self, other):
        if not isinstance(other, RatFun):
            return NotImplemented
        num = _padd(_pmul(self.num, other.den), _pneg(_pmul(other.num, self.den)))
        return RatFun(num, _pmul(self.den, other.den))

    def __neg__(self):
        return RatFun(_pneg(self.num), self.den)

    def __mul__(self, other):
        if not isinstance(other, RatFun):
            return NotImplemented
        return RatFun(_pmul(self.num, other.num), _pmul(self.den, other.den))

    def __truediv__(self, other):
        if not isinstance(other, RatFun):
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFun(_pmul(self.num, other.den), _pmul(self.den, other.num))

    def __eq__(self, other):
        if not isinstance(other, RatFun):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def evaluate_parts(self, t):
        """(numerator, denominator) at t, for callers doing their own
        pole handling.  t may be a Fraction, mpf, or Radical."""
        return _peval(self.num, t), _peval(self.den, t)

    def evaluate(self, t):
        num, den = self.evaluate_parts(t)
        return num / den

    def to_fraction(self) -> Fraction:
        if len(self.num) > 1 or len(self.den) > 1:
            raise ValueError(f"{self!r} is not constant")
        if not self.num:
            return Fraction(0)
        return self.num[0] / self.den[0]

    def __repr__(self) -> str:
        def fmt(cs):
            if not cs:
                return "0"
            parts = []
            for i in range(len(cs) - 1, -1, -1):
                c = cs[i]
                if not c:
                    continue
                if i == 0:
                    parts.append(f"{c}")
                elif i == 1:
                    parts.append(f"{c}*t" if c != 1 else "t")
                else:
                    parts.append(f"{c}*t^{i}" if c != 1 else f"t^{i}")
            return " + ".join(parts)

        if self.den == (Fraction(1),):
            return fmt(self.num)
        return f"({fmt(self.num)})/({fmt(self.den)})"


@dataclass(frozen=True)
class ExpPair:
    """Exponent p*beta^2 + q of a power of two, kept in symbolic form."""

    p: int
    q: int

    def plus(self, other: "ExpPair") -> "ExpPair":
        return ExpPair(self.p + other.p, self.q + other.q)

    def minus(self, other: "ExpPair") -> "ExpPair":
        return ExpPair(self.p - other.p, self.q - other.q)

    def neg(self) -> "ExpPair":
        return ExpPair(-self.p, -self.q)

    def scaled(self, c: int) -> "ExpPair":
        return ExpPair(self.p * c, self.q * c)

    def value_at(self, beta_sq):
        return self.p * beta_sq + self.q

    def is_zero(self) -> bool:
        return self.p == 0 and self.q == 0


def two_pow_sym(e: ExpPair) -> RatFun:
    """2^(e.p*beta^2 + e.q) as an element of Q(t)."""
    return RatFun.t_power(e.p, Fraction(2) ** e.q)


class GenPoly:
    """Finite sum of terms c_{p,q}(t) * 2^((p*beta^2+q)*n)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Dict[ExpPair, RatFun] | None = None) -> None:
        self.terms = {e: c for e, c in (terms or {}).items() if not c.is_zero()}

    @classmethod
    def zero(cls) -> "GenPoly":
        return cls()

    @classmethod
    def single(cls, exponent: ExpPair, coeff: RatFun) -> "GenPoly":
        return cls({exponent: coeff})

    def items(self) -> Iterator[Tuple[ExpPair, RatFun]]:
        return iter(sorted(self.terms.items(), key=lambda kv: (kv[0].p, kv[0].q)))

    def __len__(self) -> int:
        return len(self.terms)

    def __add__(self, other):
        if not isinstance(other, GenPoly):
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return GenPoly(out)

    def __mul__(self, other):
        if not isinstance(other, GenPoly):
            return NotImplemented
        out: Dict[ExpPair, RatFun] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1.plus(e2)
                c = c1 * c2
                out[e] = out[e] + c if e in out else c
        return GenPoly(out)

    def scale(self, coeff: RatFun) -> "GenPoly":
        return GenPoly({e: c * coeff for e, c in self.terms.items()})

    def coefficient_sum(self) -> RatFun:
        """Value of the sum at n = 0."""
        total = RatFun.zero()
        for c in self.terms.values():
            total = total + c
        return total

    def __eq__(self, other):
        if not isinstance(other, GenPoly):
            return NotImplemented
        return self.terms == other.terms

    def __repr__(self) -> str:
        if not self.terms:
            return "GenPoly(0)"
        bits = [f"[{c!r}] * 2^(({e.p}b+{e.q})n)" for e, c in self.items()]
        return "GenPoly(" + " + ".join(bits) + ")"


def geometric_sum(step: ExpPair, n: int | None = None):
    """Sum of 2^((p*beta^2+q)*lam) for lam in [0, n).

    With symbolic n (the default) the closed form (r^n - 1)/(r - 1) is
    returned as a two-term GenPoly; a zero step has no closed form and
    raises DegenerateExponent.  With an integer n the partial sum is
    evaluated in Q(t) and returned as a RatFun, including the degenerate
    step where the sum is simply n.
    """
    if n is not None:
        if n < 0:
            raise ValueError("n must be nonnegative")
        if step.is_zero():
            return RatFun.from_fraction(n)
        ratio = two_pow_sym(step)
        total = RatFun.zero()
        power = RatFun.one()
        for _ in range(n):
            total = total + power
            power = power * ratio
        return total
    if step.is_zero():
        raise DegenerateExponent(
            "unit-ratio geometric sum degenerates to n itself")
    inv = RatFun.one() / (two_pow_sym(step) - RatFun.one())
    return GenPoly({step: inv, ExpPair(0, 0): -inv})


def weighted_geometric_sum(step: ExpPair, s: int, n: int, ring: RingContext):
    """Exact value of sum over lam in [0, n) of (n-lam-1)^s * b^lam,
    where b = 2^(step.p*beta^2 + step.q) in the given ring.

    Supports s in {0, 1, 2} via closed forms, with the b = 1 degenerate
    cases handled separately (those are plain power sums of integers).
    """
    if s not in (0, 1, 2):
        raise ValueError(f"unsupported weight power {s}")
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return ring.zero
    with ring.workprec():
        b = ring.two_pow(step.p, step.q)
        one = ring.one
        if b == one:
            if s == 0:
                return ring.from_int(n)
            if s == 1:
                return ring.from_int(n * (n - 1) // 2)
            return ring.from_int((n - 1) * n * (2 * n - 1) // 6)
        bn = b ** n
        d = b - one
        if s == 0:
            return (bn - one) / d
        if s == 1:
            return (bn - n * b + ring.from_int(n - 1)) / (d * d)
        # s == 2: expand (n-1-lam)^2 over the power-sum identities for
        # sum(lam * b^lam) and sum(lam^2 * b^lam) on lam in [0, n).  Both
        # identities carry (1 - b) denominators, hence the sign flip on a2.
        top = n - 1
        s0 = (bn - one) / d
        a1 = (b - n * bn + (n - 1) * bn * b) / (d * d)
        a2 = -(b * (one + b) - (n * n) * bn + (2 * n * n - 2 * n - 1) * bn * b
               - ((n - 1) ** 2) * bn * b * b) / (d * d * d)
        return ring.from_int(top * top) * s0 - ring.from_int(2 * top) * a1 + a2
