"""Linear forms in ordered infinitesimals for symbolic perturbation.

A value ``a + sum_k c_k * eps_k`` with ``eps_0 >> eps_1 >> ... > 0`` all
infinitesimal.  The bisector engine only adds, subtracts and scales by
unperturbed constants, so these forms are closed under everything it does
and comparisons stay exact.
"""
from __future__ import annotations

from gmpy2 import mpq

_INF = float("inf")


class Eps:
    __slots__ = ("a", "e")

    def __init__(self, a, e=None):
        self.a = mpq(a)
        self.e = {k: mpq(c) for k, c in (e or {}).items() if c}

    @classmethod
    def unit(cls, k, scale=1) -> "Eps":
        return cls(0, {k: mpq(scale)})

    @property
    def base(self):
        return self.a

    def _coerce(self, other):
        if isinstance(other, Eps):
            return other
        return Eps(other)

    def __add__(self, other):
        if isinstance(other, float):
            return other
        o = self._coerce(other)
        e = dict(self.e)
        for k, c in o.e.items():
            e[k] = e.get(k, 0) + c
        return Eps(self.a + o.a, e)

    __radd__ = __add__

    def __neg__(self):
        return Eps(-self.a, {k: -c for k, c in self.e.items()})

    def __sub__(self, other):
        if isinstance(other, float):
            return -other
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Eps):
            if other.e and self.e:
                raise TypeError("product of two perturbed values")
            if not other.e:
                other = other.a
            else:
                return other * self.a
        return Eps(self.a * other, {k: c * other for k, c in self.e.items()})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Eps):
            if other.e:
                raise TypeError("division by a perturbed value")
            other = other.a
        return Eps(self.a / other, {k: c / other for k, c in self.e.items()})

    def sign(self) -> int:
        if self.a:
            return 1 if self.a > 0 else -1
        if not self.e:
            return 0
        return 1 if self.e[min(self.e)] > 0 else -1

    def _cmp(self, other) -> int:
        if isinstance(other, float):
            if other == _INF:
                return -1
            if other == -_INF:
                return 1
            raise TypeError("floats are not compared with exact values")
        return (self - other).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        try:
            return self._cmp(other) == 0
        except TypeError:
            return NotImplemented

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        if not self.e:
            return hash(self.a)
        return hash((self.a, frozenset(self.e.items())))

    def __bool__(self):
        return self.sign() != 0

    def __repr__(self):
        terms = " ".join(f"{'+' if c > 0 else '-'} {abs(c)}e{k}" for k, c in sorted(self.e.items()))
        return f"Eps({self.a} {terms})" if terms else f"Eps({self.a})"


def base(x):
    """Drop the infinitesimal part."""
    return x.a if isinstance(x, Eps) else x


def perturb_points(coords, order) -> list:
    """Offset the point ranked ``r`` by ``(eps_2r, eps_2r+1)``.

    ``order`` lists point indices by rank; earlier ranks receive the larger
    infinitesimals.
    """
    out = [None] * len(coords)
    for r, i in enumerate(order):
        x, y = coords[i]
        out[i] = (Eps(x, {2 * r: 1}), Eps(y, {2 * r + 1: 1}))
    return out
