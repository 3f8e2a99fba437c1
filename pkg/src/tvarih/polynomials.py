"""Laurent polynomials in one variable t with exact rational coefficients."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping


class LaurentPolynomial:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, object] | Iterable = ()):
        if isinstance(coeffs, Mapping):
            items = coeffs.items()
        else:
            items = enumerate(coeffs)
        clean = {}
        for e, c in items:
            c = Fraction(c)
            if c:
                clean[int(e)] = clean.get(int(e), Fraction(0)) + c
        self.coeffs = {e: c for e, c in clean.items() if c}

    @classmethod
    def monomial(cls, e: int, c=1) -> "LaurentPolynomial":
        return cls({e: c})

    @classmethod
    def const(cls, c) -> "LaurentPolynomial":
        return cls({0: c})

    # arithmetic
    def _coerce(self, other) -> "LaurentPolynomial":
        if isinstance(other, LaurentPolynomial):
            return other
        return LaurentPolynomial({0: other})

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict[int, Fraction] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self.coeffs) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (e, c), = self.coeffs.items()
            return LaurentPolynomial({e * k: Fraction(c) ** k})
        out = LaurentPolynomial.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, LaurentPolynomial):
            try:
                other = LaurentPolynomial.const(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def __bool__(self):
        return bool(self.coeffs)

    # structure
    def coeff(self, e: int) -> Fraction:
        return self.coeffs.get(e, Fraction(0))

    @property
    def degree(self) -> int:
        return max(self.coeffs) if self.coeffs else -1

    @property
    def low_degree(self) -> int:
        return min(self.coeffs) if self.coeffs else 0

    def substitute_power(self, k: int) -> "LaurentPolynomial":
        """p(t) -> p(t^k); k = -1 gives p(1/t)."""
        return LaurentPolynomial({e * k: c for e, c in self.coeffs.items()})

    def shift(self, k: int) -> "LaurentPolynomial":
        return LaurentPolynomial({e + k: c for e, c in self.coeffs.items()})

    def truncate(self, max_degree: int) -> "LaurentPolynomial":
        return LaurentPolynomial({e: c for e, c in self.coeffs.items() if e <= max_degree})

    def evaluate(self, x):
        return sum((c * Fraction(x) ** e for e, c in self.coeffs.items()), Fraction(0))

    def is_palindromic(self, center_degree: int) -> bool:
        """p(t) = t^center_degree p(1/t)."""
        return self == self.substitute_power(-1).shift(center_degree)

    def is_polynomial(self) -> bool:
        return all(e >= 0 for e in self.coeffs)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs.values())

    def has_nonnegative_coefficients(self) -> bool:
        return all(c >= 0 for c in self.coeffs.values())

    def to_list(self) -> list[int]:
        """Dense coefficient list from t^0 upward (polynomials only)."""
        if not self.is_polynomial():
            raise ValueError("negative exponents present")
        return [_num(self.coeff(e)) for e in range(self.degree + 1)]

    def to_json(self) -> dict[str, object]:
        return {str(e): _num(c) for e, c in sorted(self.coeffs.items())}

    def __repr__(self):
        return f"LaurentPolynomial({self})"

    def __str__(self):
        """Highest degree first, e.g. 't^6 + t^4 + t^2 + 1'."""
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs, reverse=True):
            c = self.coeffs[e]
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if e == 0:
                body = str(a)
            else:
                mono = "t" if e == 1 else f"t^{e}"
                body = mono if a == 1 else f"{a}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def ascending(self) -> str:
        """Lowest degree first, e.g. '1 + t^2'."""
        if not self.coeffs:
            return "0"
        terms = []
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            a = abs(c)
            mono = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
            body = str(a) if not mono else (mono if a == 1 else f"{a}*{mono}")
            terms.append(("-" if c < 0 else "+", body))
        s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            s += f" {sign} {body}"
        return s


def _num(c: Fraction):
    return int(c) if c.denominator == 1 else str(c)


T = LaurentPolynomial.monomial(1)
ONE = LaurentPolynomial.const(1)
ZERO = LaurentPolynomial()


def poly(*coeffs) -> LaurentPolynomial:
    """poly(1, 0, 1) == 1 + t^2."""
    return LaurentPolynomial(coeffs)


def parse(text: str) -> LaurentPolynomial:
    """Parse strings like '1 + 2*t^2 - t' (also accepts 't**2' and '2t^2')."""
    s = text.replace(" ", "").replace("**", "^").replace("−", "-")
    if not s:
        raise ValueError("empty polynomial")
    if s[0] not in "+-":
        s = "+" + s
    out = LaurentPolynomial()
    i = 0
    while i < len(s):
        sign = -1 if s[i] == "-" else 1
        j = i + 1
        while j < len(s) and s[j] not in "+-":
            if s[j] == "^" and j + 1 < len(s) and s[j + 1] == "-":
                j += 1
            j += 1
        term = s[i + 1:j]
        if "t" in term:
            cpart, _, epart = term.partition("t")
            cpart = cpart.rstrip("*") or "1"
            e = int(epart[1:]) if epart.startswith("^") else 1
        else:
            cpart, e = term, 0
        out = out + LaurentPolynomial({e: sign * Fraction(cpart)})
        i = j
    return out
