"""Exact sparse Laurent polynomials in one variable (A) and two (a, z).

Coefficients are Python ints, exponents are ints (negative allowed). Zero
coefficients are never stored, so equality is plain dict equality.
"""

from __future__ import annotations

from .errors import GridweaveError, ZERO_POLY


class LaurentPoly:
    """Laurent polynomial in a single variable."""

    __slots__ = ("c",)

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            for e, v in (coeffs.items() if isinstance(coeffs, dict) else coeffs):
                if v:
                    c[e] = c.get(e, 0) + v
                    if not c[e]:
                        del c[e]
        self.c = c

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({0: 1})

    @classmethod
    def monomial(cls, exp, coeff=1):
        return cls({exp: coeff})

    def is_zero(self):
        return not self.c

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        return isinstance(other, LaurentPoly) and self.c == other.c

    def __hash__(self):
        return hash(frozenset(self.c.items()))

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        out = dict(self.c)
        for e, v in other.c.items():
            w = out.get(e, 0) + v
            if w:
                out[e] = w
            else:
                out.pop(e, None)
        r = LaurentPoly.__new__(LaurentPoly)
        r.c = out
        return r

    def __neg__(self):
        r = LaurentPoly.__new__(LaurentPoly)
        r.c = {e: -v for e, v in self.c.items()}
        return r

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return LaurentPoly()
            r = LaurentPoly.__new__(LaurentPoly)
            r.c = {e: v * other for e, v in self.c.items()}
            return r
        out = {}
        for e1, v1 in self.c.items():
            for e2, v2 in other.c.items():
                e = e1 + e2
                w = out.get(e, 0) + v1 * v2
                if w:
                    out[e] = w
                else:
                    out.pop(e, None)
        r = LaurentPoly.__new__(LaurentPoly)
        r.c = out
        return r

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            # only unit monomials are invertible in the Laurent ring
            if len(self.c) != 1:
                raise ValueError("negative power of a non-monomial")
            ((e, v),) = self.c.items()
            if v not in (1, -1):
                raise ValueError("negative power needs a unit coefficient")
            return LaurentPoly({e * k: -1 if (v == -1 and k % 2) else 1})
        out = LaurentPoly.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shifted(self, d):
        """Multiply by A^d."""
        r = LaurentPoly.__new__(LaurentPoly)
        r.c = {e + d: v for e, v in self.c.items()}
        return r

    def min_exp(self):
        if not self.c:
            raise GridweaveError(ZERO_POLY, "zero polynomial has no exponents")
        return min(self.c)

    def max_exp(self):
        if not self.c:
            raise GridweaveError(ZERO_POLY, "zero polynomial has no exponents")
        return max(self.c)

    def terms(self):
        return sorted(self.c.items())

    def __str__(self):
        if not self.c:
            return "0"
        return " + ".join(f"{v}*A^{e}" for e, v in self.terms())

    __repr__ = __str__


class LaurentPoly2:
    """Laurent polynomial in two variables a, z; keys are (a_exp, z_exp)."""

    __slots__ = ("c",)

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            for k, v in (coeffs.items() if isinstance(coeffs, dict) else coeffs):
                if v:
                    k = (int(k[0]), int(k[1]))
                    c[k] = c.get(k, 0) + v
                    if not c[k]:
                        del c[k]
        self.c = c

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({(0, 0): 1})

    @classmethod
    def monomial(cls, a_exp, z_exp, coeff=1):
        return cls({(a_exp, z_exp): coeff})

    def is_zero(self):
        return not self.c

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly2({(0, 0): other})
        return isinstance(other, LaurentPoly2) and self.c == other.c

    def __hash__(self):
        return hash(frozenset(self.c.items()))

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly2({(0, 0): other})
        out = dict(self.c)
        for k, v in other.c.items():
            w = out.get(k, 0) + v
            if w:
                out[k] = w
            else:
                out.pop(k, None)
        r = LaurentPoly2.__new__(LaurentPoly2)
        r.c = out
        return r

    def __neg__(self):
        r = LaurentPoly2.__new__(LaurentPoly2)
        r.c = {k: -v for k, v in self.c.items()}
        return r

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly2({(0, 0): other})
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return LaurentPoly2()
            r = LaurentPoly2.__new__(LaurentPoly2)
            r.c = {k: v * other for k, v in self.c.items()}
            return r
        out = {}
        for (a1, z1), v1 in self.c.items():
            for (a2, z2), v2 in other.c.items():
                k = (a1 + a2, z1 + z2)
                w = out.get(k, 0) + v1 * v2
                if w:
                    out[k] = w
                else:
                    out.pop(k, None)
        r = LaurentPoly2.__new__(LaurentPoly2)
        r.c = out
        return r

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            if len(self.c) != 1:
                raise ValueError("negative power of a non-monomial")
            (((a, z), v),) = self.c.items()
            if v not in (1, -1):
                raise ValueError("negative power needs a unit coefficient")
            return LaurentPoly2({(a * k, z * k): -1 if (v == -1 and k % 2) else 1})
        out = LaurentPoly2.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shifted(self, da, dz=0):
        r = LaurentPoly2.__new__(LaurentPoly2)
        r.c = {(a + da, z + dz): v for (a, z), v in self.c.items()}
        return r

    def min_z_exp(self):
        if not self.c:
            raise GridweaveError(ZERO_POLY, "zero polynomial has no exponents")
        return min(z for _, z in self.c)

    def breadth_a(self):
        if not self.c:
            raise GridweaveError(ZERO_POLY, "zero polynomial has no breadth")
        exps = [a for a, _ in self.c]
        return max(exps) - min(exps)

    def substitute(self, a_poly: LaurentPoly, z_poly: LaurentPoly) -> LaurentPoly:
        """Evaluate at a = a_poly, z = z_poly (single-variable results).

        a_poly must be a unit monomial when negative a-exponents occur, and
        z exponents must be nonnegative (clear z^-1 terms first by
        multiplying with a power of z).
        """
        out = LaurentPoly.zero()
        for (ae, ze), v in self.c.items():
            if ze < 0:
                raise ValueError("negative z exponent; clear denominators first")
            term = LaurentPoly({0: v})
            if ae >= 0:
                for _ in range(ae):
                    term = term * a_poly
            else:
                if len(a_poly.c) != 1:
                    raise ValueError("a substitution with negative exponent needs a monomial")
                ((e, c),) = a_poly.c.items()
                if c not in (1, -1):
                    raise ValueError("non-unit monomial")
                inv = LaurentPoly({-e: c})  # c^-1 = c for units
                for _ in range(-ae):
                    term = term * inv
            for _ in range(ze):
                term = term * z_poly
            out = out + term
        return out

    def terms(self):
        return sorted(self.c.items())

    def __str__(self):
        if not self.c:
            return "0"
        return " + ".join(f"{v}*a^{a}*z^{z}" for (a, z), v in self.terms())

    __repr__ = __str__


def breadth(poly, variable: str = "A") -> int:
    """Exponent span of a nonzero polynomial in the named variable."""
    if isinstance(poly, LaurentPoly):
        if poly.is_zero():
            raise GridweaveError(ZERO_POLY, "breadth of zero polynomial")
        return poly.max_exp() - poly.min_exp()
    if isinstance(poly, LaurentPoly2):
        if poly.is_zero():
            raise GridweaveError(ZERO_POLY, "breadth of zero polynomial")
        idx = 0 if variable == "a" else 1
        exps = [k[idx] for k in poly.c]
        return max(exps) - min(exps)
    raise TypeError(f"breadth: unsupported {type(poly)!r}")
