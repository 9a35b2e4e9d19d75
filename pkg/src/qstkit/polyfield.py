"""Exact multivariate polynomials over Gaussian rationals.

Small fixed-arity polynomial arithmetic (up to four variables, exact
Fraction coefficients) used by the first-order Seiberg-Witten machinery,
where pointwise products and derivatives have to be symbolically exact.
"""

from __future__ import annotations

from fractions import Fraction


class Poly:
    """Polynomial in nvars variables; terms map exponent tuples to (re, im)."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        self.terms = {}
        if terms:
            for e, c in terms.items():
                re, im = (c if isinstance(c, tuple) else (c, 0))
                re, im = Fraction(re), Fraction(im)
                if re or im:
                    r0, i0 = self.terms.get(e, (Fraction(0), Fraction(0)))
                    self.terms[e] = (r0 + re, i0 + im)
        self.terms = {e: c for e, c in self.terms.items() if c[0] or c[1]}

    @staticmethod
    def zero(nvars):
        return Poly(nvars)

    @staticmethod
    def const(nvars, value):
        return Poly(nvars, {(0,) * nvars: value})

    @staticmethod
    def var(nvars, i):
        e = [0] * nvars
        e[i] = 1
        return Poly(nvars, {tuple(e): 1})

    def degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def __add__(self, other):
        out = dict(self.terms)
        for e, (re, im) in other.terms.items():
            r0, i0 = out.get(e, (Fraction(0), Fraction(0)))
            out[e] = (r0 + re, i0 + im)
        return Poly(self.nvars, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, s):
        re, im = (s if isinstance(s, tuple) else (s, 0))
        re, im = Fraction(re), Fraction(im)
        out = {}
        for e, (r, i) in self.terms.items():
            out[e] = (r * re - i * im, r * im + i * re)
        return Poly(self.nvars, out)

    def __mul__(self, other):
        out = {}
        for e1, (r1, i1) in self.terms.items():
            for e2, (r2, i2) in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                r0, i0 = out.get(e, (Fraction(0), Fraction(0)))
                out[e] = (r0 + r1 * r2 - i1 * i2, i0 + r1 * i2 + i1 * r2)
        return Poly(self.nvars, out)

    def deriv(self, i):
        out = {}
        for e, (r, im) in self.terms.items():
            if e[i] == 0:
                continue
            n = e[i]
            e2 = list(e)
            e2[i] -= 1
            out[tuple(e2)] = (r * n, im * n)
        return Poly(self.nvars, out)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, Poly) and (self - other).is_zero()

    def eval(self, xs):
        total = complex(0)
        for e, (r, im) in self.terms.items():
            v = complex(r) + 1j * complex(im)
            for x, n in zip(xs, e):
                v *= x ** n
            total += v
        return total

    def __repr__(self):
        if not self.terms:
            return "0"
        names = "xyzw"
        bits = []
        for e in sorted(self.terms):
            r, im = self.terms[e]
            mono = "".join(f"{names[i]}^{n}" if n > 1 else names[i]
                           for i, n in enumerate(e) if n)
            coef = f"{r}" if not im else f"({r}+{im}i)"
            bits.append(f"{coef}{mono or ''}")
        return " + ".join(bits)
