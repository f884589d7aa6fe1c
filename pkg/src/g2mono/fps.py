"""Truncated formal power series over exact rationals.

All operations are exact (fractions.Fraction) and truncated at a fixed
order.  This is deliberately a small, boring toolkit: enough to expand
metric coefficients, exponentiate, compose and revert series, nothing
more.
"""

from __future__ import annotations

from fractions import Fraction


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        # floats are accepted but converted exactly; callers who want
        # rational results should pass Fraction/int/str themselves
        return Fraction(x)
    return Fraction(x)


class FormalSeries:
    """A polynomial c0 + c1 x + ... + cN x^N standing in for a power
    series truncated at order N."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs, order: int | None = None):
        cs = [_as_fraction(c) for c in coeffs]
        if order is not None:
            cs = cs[: order + 1]
            cs += [Fraction(0)] * (order + 1 - len(cs))
        if not cs:
            cs = [Fraction(0)]
        self.coeffs = cs

    # -- basics -------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i <= self.order else Fraction(0)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FormalSeries):
            return NotImplemented
        n = max(self.order, other.order)
        return all(self[i] == other[i] for i in range(n + 1))

    def __repr__(self) -> str:
        return f"FormalSeries({[str(c) for c in self.coeffs]})"

    def truncate(self, order: int) -> "FormalSeries":
        return FormalSeries(self.coeffs, order)

    @staticmethod
    def zero(order: int) -> "FormalSeries":
        return FormalSeries([0], order)

    @staticmethod
    def one(order: int) -> "FormalSeries":
        return FormalSeries([1], order)

    @staticmethod
    def x(order: int) -> "FormalSeries":
        return FormalSeries([0, 1], order)

    # -- ring operations ---------------------------------------------

    def _join(self, other) -> tuple["FormalSeries", int]:
        if not isinstance(other, FormalSeries):
            other = FormalSeries([other], self.order)
        return other, min(self.order, other.order)

    def __add__(self, other) -> "FormalSeries":
        other, n = self._join(other)
        return FormalSeries([self[i] + other[i] for i in range(n + 1)])

    __radd__ = __add__

    def __neg__(self) -> "FormalSeries":
        return FormalSeries([-c for c in self.coeffs])

    def __sub__(self, other) -> "FormalSeries":
        other, n = self._join(other)
        return FormalSeries([self[i] - other[i] for i in range(n + 1)])

    def __rsub__(self, other) -> "FormalSeries":
        return (-self).__add__(other)

    def __mul__(self, other) -> "FormalSeries":
        if not isinstance(other, FormalSeries):
            c = _as_fraction(other)
            return FormalSeries([c * a for a in self.coeffs])
        n = min(self.order, other.order)
        out = [Fraction(0)] * (n + 1)
        for i in range(n + 1):
            ci = self[i]
            if ci == 0:
                continue
            for j in range(n + 1 - i):
                cj = other[j]
                if cj:
                    out[i + j] += ci * cj
        return FormalSeries(out)

    __rmul__ = __mul__

    def inverse(self) -> "FormalSeries":
        """Multiplicative inverse; requires nonzero constant term."""
        if self[0] == 0:
            raise ZeroDivisionError("series has zero constant term")
        n = self.order
        inv0 = 1 / self[0]
        out = [inv0] + [Fraction(0)] * n
        for k in range(1, n + 1):
            acc = Fraction(0)
            for j in range(1, k + 1):
                acc += self[j] * out[k - j]
            out[k] = -inv0 * acc
        return FormalSeries(out)

    def __truediv__(self, other) -> "FormalSeries":
        if not isinstance(other, FormalSeries):
            return self * (Fraction(1) / _as_fraction(other))
        return self * other.inverse()

    # -- calculus -----------------------------------------------------

    def differentiate(self) -> "FormalSeries":
        if self.order == 0:
            return FormalSeries([0])
        return FormalSeries([i * self[i] for i in range(1, self.order + 1)])

    def integrate(self) -> "FormalSeries":
        """Antiderivative with zero constant term; order grows by one."""
        return FormalSeries(
            [Fraction(0)] + [self[i] / (i + 1) for i in range(self.order + 1)]
        )

    def shift(self, k: int) -> "FormalSeries":
        """Multiply by x^k (k may be negative; low-order terms must vanish)."""
        if k >= 0:
            return FormalSeries([Fraction(0)] * k + self.coeffs)
        if any(self[i] != 0 for i in range(-k)):
            raise ValueError("shift would drop nonzero low-order terms")
        return FormalSeries(self.coeffs[-k:])

    # -- transcendental -----------------------------------------------

    def exp(self) -> "FormalSeries":
        """exp of a series with zero constant term."""
        if self[0] != 0:
            raise ValueError("exp requires zero constant term")
        n = self.order
        out = [Fraction(1)] + [Fraction(0)] * n
        # e' = a' e  =>  k e_k = sum_{j=1..k} j a_j e_{k-j}
        for k in range(1, n + 1):
            acc = Fraction(0)
            for j in range(1, k + 1):
                aj = self[j]
                if aj:
                    acc += j * aj * out[k - j]
            out[k] = acc / k
        return FormalSeries(out)

    def pow(self, p) -> "FormalSeries":
        """Raise to a rational power; requires constant term 1."""
        p = _as_fraction(p)
        if self[0] != 1:
            raise ValueError("pow requires constant term 1")
        n = self.order
        out = [Fraction(1)] + [Fraction(0)] * n
        # f = a^p with a0=1:  k f_k = sum_{j=1..k} (j p - (k - j)) a_j f_{k-j}
        for k in range(1, n + 1):
            acc = Fraction(0)
            for j in range(1, k + 1):
                aj = self[j]
                if aj:
                    acc += (j * p - (k - j)) * aj * out[k - j]
            out[k] = acc / k
        return FormalSeries(out)

    def compose(self, inner: "FormalSeries") -> "FormalSeries":
        """self(inner(x)); inner must have zero constant term."""
        if inner[0] != 0:
            raise ValueError("composition requires inner constant term 0")
        n = min(self.order, inner.order)
        out = FormalSeries([self[n]], n)
        for i in range(n - 1, -1, -1):  # Horner
            out = out * inner + self[i]
        return out.truncate(n)

    def reversion(self) -> "FormalSeries":
        """Compositional inverse g with self(g(x)) = x.

        Requires coefficients (0, nonzero, ...).  Solved term by term.
        """
        if self[0] != 0 or self[1] == 0:
            raise ValueError("reversion requires series of the form a1 x + ...")
        n = self.order
        g = FormalSeries([0, 1 / self[1]], n)
        for k in range(2, n + 1):
            # residual of self(g) - x at order k is linear in g_k with
            # coefficient a1
            err = self.compose(g)[k]
            g = FormalSeries(
                [g[i] for i in range(k)] + [-err / self[1]], n
            )
        return g

    # -- numerics -----------------------------------------------------

    def __call__(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        return acc
