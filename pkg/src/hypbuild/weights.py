"""Exact elements of the additive group generated by {log p : p prime}.

Every metric quantity in this package (edge lengths, chamber distances,
Gromov products, Busemann values, cross ratios) is an integer or
half-integer combination of logarithms of primes.  Such a combination is
zero only when all coefficients are zero (Q-linear independence of logs
of distinct primes), so equality can be decided exactly from the
exponent vector alone.  Ordering of distinct values is decided
numerically; a zero-vector check guards the only exactly-tied case, and
near-ties escalate to high-precision evaluation before deciding.
"""

from __future__ import annotations

import math
from fractions import Fraction

_NEAR_TIE = 1e-9
_MPMATH_DPS = 60


def _factorize(n):
    """Prime factorization of a positive integer as a dict prime -> exponent."""
    if n <= 0:
        raise ValueError("can only factorize positive integers, got %r" % (n,))
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


class WeightVector:
    """value = 1/2 * sum over primes of halves[p] * log p.

    Exponents are stored in half-units, so integer multiples of log p
    have even entries and the spec's half-unit flag is simply "some
    entry is odd".  Instances are immutable and hashable.
    """

    __slots__ = ("_halves", "_hash")

    def __init__(self, halves=None):
        items = {}
        if halves:
            for p, n in halves.items():
                if n:
                    items[p] = n
        self._halves = items
        self._hash = hash(frozenset(items.items()))

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero():
        return WeightVector()

    @staticmethod
    def log_int(q):
        """log q for a positive integer q (log 1 = 0)."""
        return WeightVector({p: 2 * e for p, e in _factorize(q).items()})

    @staticmethod
    def half_log_int(q):
        return WeightVector({p: e for p, e in _factorize(q).items()})

    # -- structure ------------------------------------------------------

    @property
    def half_unit(self):
        """True when the value is a half-integer (not integer) combination."""
        return any(n % 2 for n in self._halves.values())

    def exponents(self):
        """Exponent map prime -> Fraction (integer-unit scale)."""
        return {p: Fraction(n, 2) for p, n in self._halves.items()}

    def is_zero(self):
        return not self._halves

    def is_nonnegative(self):
        return self.is_zero() or self.value() > 0

    def multiple_of_half_log(self, q):
        """Is this an integer multiple of (1/2) log q?  Returns the
        multiple as an int, or None."""
        base = _factorize(q)
        if not self._halves:
            return 0
        ratios = set()
        if set(self._halves) != set(base):
            return None
        for p, e in base.items():
            n = self._halves[p]
            if n % e:
                return None
            ratios.add(n // e)
        if len(ratios) != 1:
            return None
        return ratios.pop()

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        out = dict(self._halves)
        for p, n in other._halves.items():
            out[p] = out.get(p, 0) + n
        return WeightVector(out)

    def __sub__(self, other):
        out = dict(self._halves)
        for p, n in other._halves.items():
            out[p] = out.get(p, 0) - n
        return WeightVector(out)

    def __neg__(self):
        return WeightVector({p: -n for p, n in self._halves.items()})

    def halve(self):
        """Exact multiplication by 1/2; requires all entries even."""
        if self.half_unit:
            raise ValueError("halving %r would leave half-unit scale" % (self,))
        return WeightVector({p: n // 2 for p, n in self._halves.items()})

    def scale(self, k):
        """Multiply by an integer k."""
        return WeightVector({p: k * n for p, n in self._halves.items()})

    # -- comparisons ----------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, WeightVector):
            return NotImplemented
        return self._halves == other._halves

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        diff = self - other
        if diff.is_zero():
            return False
        v = diff.value()
        if abs(v) < _NEAR_TIE:
            v = diff._value_mp()
        return v < 0

    def __le__(self, other):
        return self == other or self < other

    def __gt__(self, other):
        return other < self

    def __ge__(self, other):
        return other <= self

    # -- numerics -------------------------------------------------------

    def value(self):
        return 0.5 * sum(n * math.log(p) for p, n in self._halves.items())

    def _value_mp(self):
        import mpmath

        with mpmath.workdps(_MPMATH_DPS):
            total = mpmath.mpf(0)
            for p, n in self._halves.items():
                total += n * mpmath.log(p)
            return float(total / 2)

    # -- presentation ---------------------------------------------------

    def __repr__(self):
        if not self._halves:
            return "0"
        parts = []
        for p in sorted(self._halves):
            n = self._halves[p]
            coeff = Fraction(n, 2)
            if coeff == 1:
                parts.append("log %d" % p)
            else:
                parts.append("%s*log %d" % (coeff, p))
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self):
        """Stable serialization: {prime: exponent-as-string} in integer units."""
        return {str(p): str(Fraction(n, 2)) for p, n in sorted(self._halves.items())}
