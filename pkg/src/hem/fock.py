"""Exact Fock-space polynomials with Heisenberg and Sugawara-Virasoro actions.

Coefficients are computed in the polynomial ring Q(i)[a, Q] where ``a`` is the
formal momentum and ``Q`` the background charge.  The map Q -> b + 1/b embeds
this ring into the coefficient field Q(i)(a, b) (``CoefField``); exact identity
checks are carried out in the field.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

import sympy
from sympy.polys.domains import QQ, QQ_I
from sympy.polys.fields import field
from sympy.polys.rings import ring

from .core import Partition, PoleError, SectorError, UsageError

RING, _a, _Q = ring("a,Q", QQ_I)
FIELD, _fa, _fb = field("a,b", QQ_I)

HOLO = "holo"
ANTIHOLO = "antiholo"
BULK = "bulk"
BOUNDARY = "boundary"

_HALF_I = RING(QQ_I(0, QQ(1, 2)))
_I = RING(QQ_I(0, 1))
_DELTA = _a / 2 * (_Q - _a / 2)

# A monomial is a sorted tuple of (mode n, bar flag, exponent); bar=1 is phibar_n.
Monomial = tuple[tuple[int, int, int], ...]
ONE: Monomial = ()


class CoefField:
    """Element P/D of Q(i)(a, b); immutable, equality by cross-multiplication."""

    __slots__ = ("_value",)

    def __init__(self, value) -> None:
        self._value = FIELD(value)

    @classmethod
    def from_ring(cls, element, a_value=None) -> "CoefField":
        """Embed an element of Q(i)[a, Q] using Q = b + 1/b, optionally with a field value for ``a``."""
        a_field = _fa if a_value is None else FIELD(a_value)
        q_field = _fb + 1 / _fb
        total = FIELD(0)
        for (i, j), c in element.terms():
            total += FIELD(c) * a_field**i * q_field**j
        return cls(total)

    @classmethod
    def alpha(cls) -> "CoefField":
        return cls(_fa)

    @classmethod
    def b(cls) -> "CoefField":
        return cls(_fb)

    @classmethod
    def Q(cls) -> "CoefField":
        return cls(_fb + 1 / _fb)

    @property
    def numerator(self):
        return self._canonical()[0]

    @property
    def denominator(self):
        return self._canonical()[1]

    def _canonical(self):
        num, den = self._value.numer, self._value.denom
        lc = den.LC
        return num.quo_ground(lc), den.quo_ground(lc)

    def _coerce(self, other) -> "CoefField":
        return other if isinstance(other, CoefField) else CoefField(other)

    def __add__(self, other) -> "CoefField":
        return CoefField(self._value + self._coerce(other)._value)

    __radd__ = __add__

    def __sub__(self, other) -> "CoefField":
        return CoefField(self._value - self._coerce(other)._value)

    def __rsub__(self, other) -> "CoefField":
        return CoefField(self._coerce(other)._value - self._value)

    def __mul__(self, other) -> "CoefField":
        return CoefField(self._value * self._coerce(other)._value)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "CoefField":
        other = self._coerce(other)
        if other.is_zero:
            raise PoleError("division by the zero element of the coefficient field")
        return CoefField(self._value / other._value)

    def __rtruediv__(self, other) -> "CoefField":
        return self._coerce(other) / self

    def __neg__(self) -> "CoefField":
        return CoefField(-self._value)

    def __pow__(self, k: int) -> "CoefField":
        return CoefField(self._value**k)

    @property
    def is_zero(self) -> bool:
        return self._value.numer.is_zero

    def __eq__(self, other) -> bool:
        if not isinstance(other, CoefField):
            try:
                other = CoefField(other)
            except Exception:
                return NotImplemented
        p1, q1 = self._value.numer, self._value.denom
        p2, q2 = other._value.numer, other._value.denom
        return p1 * q2 == p2 * q1

    def __hash__(self) -> int:
        num, den = self._canonical()
        return hash((num, den))

    def evaluate(self, alpha: complex, b: complex, label: str = "coefficient") -> complex:
        num, den = self._canonical()
        d = _eval_poly(den, alpha, b)
        if d == 0:
            raise PoleError(f"{label}: denominator {den.as_expr()} vanishes at a={alpha}, b={b}")
        return _eval_poly(num, alpha, b) / d

    def __str__(self) -> str:
        num, den = self._canonical()
        if den.is_one or num.is_zero:
            return _format_expr(num.as_expr())
        return f"({_format_expr(num.as_expr())})/({_format_expr(den.as_expr())})"

    __repr__ = __str__


def _eval_poly(poly, alpha: complex, b: complex) -> complex:
    total = 0j
    for (i, j), c in poly.terms():
        total += _to_complex(c) * alpha**i * b**j
    return total


def _to_complex(c) -> complex:
    return complex(float(QQ.to_sympy(c.x)), float(QQ.to_sympy(c.y)))


def _format_expr(expr) -> str:
    return str(expr).replace("**", "^").replace(" ", "")


def _var_name(n: int, bar: int) -> str:
    return f"phib{n}" if bar else f"phi{n}"


def _mono_level(mono: Monomial) -> int:
    return sum(n * e for n, _, e in mono)


def _mono_mul_var(mono: Monomial, n: int, bar: int) -> Monomial:
    items = dict(((m, b), e) for m, b, e in mono)
    items[(n, bar)] = items.get((n, bar), 0) + 1
    return tuple((m, b, e) for (m, b), e in sorted(items.items()))


def _mono_diff(mono: Monomial, n: int, bar: int) -> tuple[int, Monomial]:
    for idx, (m, b, e) in enumerate(mono):
        if m == n and b == bar:
            rest = mono[:idx] + (((m, b, e - 1),) if e > 1 else ()) + mono[idx + 1 :]
            return e, rest
    return 0, mono


def _mono_str(mono: Monomial) -> str:
    if not mono:
        return "1"
    return "*".join(_var_name(n, b) + (f"^{e}" if e > 1 else "") for n, b, e in mono)


def monomial_str(mono: Monomial) -> str:
    """Printable name of a monomial, e.g. ``phi2*phib2``."""
    return _mono_str(mono)


def _mono_sort_key(mono: Monomial):
    # graded reverse-lexicographic on (phi1, phib1, phi2, phib2, ...)
    exps = {}
    for n, b, e in mono:
        exps[2 * (n - 1) + b] = e
    width = max(exps) + 1 if exps else 0
    vec = tuple(exps.get(k, 0) for k in range(width))
    return (-_mono_level(mono), -len(vec), tuple(-v for v in reversed(vec)))


class FockPoly:
    """Immutable polynomial in the Fock variables with coefficients in Q(i)[a, Q]."""

    __slots__ = ("_terms", "_sector")

    def __init__(self, terms: Mapping[Monomial, object], sector: str = BULK) -> None:
        if sector not in (BULK, BOUNDARY):
            raise UsageError(f"unknown sector {sector!r}")
        clean = {}
        for mono, c in terms.items():
            c = RING(c)
            if not c.is_zero:
                if sector == BOUNDARY and any(b for _, b, _ in mono):
                    raise SectorError("boundary polynomials have no phibar variables")
                clean[mono] = c
        self._terms = clean
        self._sector = sector

    @classmethod
    def one(cls, sector: str = BULK) -> "FockPoly":
        return cls({ONE: 1}, sector)

    @classmethod
    def zero(cls, sector: str = BULK) -> "FockPoly":
        return cls({}, sector)

    @classmethod
    def var(cls, n: int, bar: bool = False, sector: str = BULK) -> "FockPoly":
        return cls({((n, int(bar), 1),): 1}, sector)

    @property
    def sector(self) -> str:
        return self._sector

    @property
    def terms(self) -> dict[Monomial, object]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Monomial, object]]:
        return iter(sorted(self._terms.items(), key=lambda kv: _mono_sort_key(kv[0])))

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def level(self) -> int:
        """Maximal monomial level (0 for the zero polynomial)."""
        return max((_mono_level(m) for m in self._terms), default=0)

    def levels(self) -> set[int]:
        return {_mono_level(m) for m in self._terms}

    def coefficient(self, mono: Monomial):
        return self._terms.get(mono, RING(0))

    def field_coefficients(self) -> dict[Monomial, CoefField]:
        return {m: CoefField.from_ring(c) for m, c in self._terms.items()}

    def _check(self, other: "FockPoly") -> None:
        if other._sector != self._sector:
            raise SectorError("cannot combine bulk and boundary polynomials")

    def __add__(self, other: "FockPoly") -> "FockPoly":
        self._check(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, RING(0)) + c
        return FockPoly(out, self._sector)

    def __sub__(self, other: "FockPoly") -> "FockPoly":
        return self + (-1) * other

    def __neg__(self) -> "FockPoly":
        return (-1) * self

    def __mul__(self, other) -> "FockPoly":
        if isinstance(other, FockPoly):
            self._check(other)
            out: dict[Monomial, object] = {}
            for m1, c1 in self._terms.items():
                for m2, c2 in other._terms.items():
                    m = m1
                    for n, b, e in m2:
                        for _ in range(e):
                            m = _mono_mul_var(m, n, b)
                    out[m] = out.get(m, RING(0)) + c1 * c2
            return FockPoly(out, self._sector)
        c = RING(other)
        return FockPoly({m: c * v for m, v in self._terms.items()}, self._sector)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, FockPoly):
            return NotImplemented
        return self._sector == other._sector and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self._sector, frozenset(self._terms.items())))

    def is_i_free(self) -> bool:
        return all(c.y == 0 for poly in self._terms.values() for c in poly.coeffs())

    def content(self):
        """Gcd of all coefficients, normalized to a positive leading coefficient."""
        g = RING(0)
        for c in self._terms.values():
            g = c if g.is_zero else g.gcd(c)
        return g

    def pretty(self) -> str:
        """Human-readable form with factored coefficients, e.g. ``2*(a+Q)*phi2 - phi1^2``."""
        if self.is_zero:
            return "0"
        g = self.content()
        pieces = []
        if len(self._terms) > 1 and not (g - 1).is_zero and not (g + 1).is_zero and _is_nonconstant(g):
            inner = FockPoly({m: c.exquo(g) for m, c in self._terms.items()}, self._sector)
            return f"{format_coefficient(g)}*({inner.pretty()})"
        for mono, c in self.items():
            pieces.append(_term_str(c, mono))
        text = pieces[0]
        for p in pieces[1:]:
            text += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return text

    def to_json(self) -> str:
        data = {_mono_str(m): format_coefficient(c) for m, c in self._terms.items()}
        return json.dumps({"sector": self._sector, "terms": data}, sort_keys=True)

    def __repr__(self) -> str:
        return f"FockPoly[{self._sector}]({self.pretty()})"


def _is_nonconstant(poly) -> bool:
    return any(any(e) for e in poly.monoms())


def _term_str(c, mono: Monomial) -> str:
    coef = format_coefficient(c)
    if not mono:
        return coef
    if coef == "1":
        return _mono_str(mono)
    if coef == "-1":
        return "-" + _mono_str(mono)
    return f"{coef}*{_mono_str(mono)}"


def _poly_str(poly) -> str:
    """Expanded polynomial in a, Q with terms sorted by degree, ``a`` before ``Q``."""
    terms = sorted(poly.terms(), key=lambda t: (-(t[0][0] + t[0][1]), -t[0][0]))
    out = ""
    for k, ((i, j), c) in enumerate(terms):
        cs = str(QQ_I.to_sympy(c)).replace(" ", "").replace("**", "^")
        negative = cs.startswith("-") and "+" not in cs[1:] and "-" not in cs[1:]
        if negative:
            cs = cs[1:]
        if "+" in cs or "-" in cs:
            cs = f"({cs})"
        vars_ = [v for v in ("a" + (f"^{i}" if i > 1 else "") if i else "", "Q" + (f"^{j}" if j > 1 else "") if j else "") if v]
        body = "*".join(([cs] if cs != "1" or not vars_ else []) + vars_)
        if k == 0:
            out = ("-" if negative else "") + body
        else:
            out += ("-" if negative else "+") + body
    return out or "0"


def format_coefficient(c) -> str:
    """Factored string form of a ring coefficient, e.g. ``2*a*(a^2+a*Q+1)``."""
    c = RING(c)
    if c.is_zero:
        return "0"
    lead, factors = c.factor_list()
    lead_s = str(QQ_I.to_sympy(lead)).replace(" ", "").replace("**", "^")
    parts = []
    for f, k in factors:
        s = _poly_str(f)
        if len(f.terms()) > 1:
            s = f"({s})"
        parts.append(s + (f"^{k}" if k > 1 else ""))
    if not parts:
        return lead_s
    if lead_s == "1":
        return "*".join(parts)
    if lead_s == "-1":
        return "-" + "*".join(parts)
    if "+" in lead_s or "-" in lead_s[1:]:
        lead_s = f"({lead_s})"
    return "*".join([lead_s] + parts)


# ----------------------------------------------------------------------------
# operators


def _check_side(side: str, sector: str) -> None:
    if side not in (HOLO, ANTIHOLO):
        raise UsageError(f"unknown side {side!r}")
    if side == ANTIHOLO and sector == BOUNDARY:
        raise SectorError("the boundary sector has a single (holomorphic) representation")


@lru_cache(maxsize=None)
def _heisenberg_monomial(n: int, side: str, sector: str, mono: Monomial) -> tuple[tuple[Monomial, object], ...]:
    """Raw action of a_n = A_n / (i/2) on a monomial (the i/2 is applied by the caller)."""
    if n == 0:
        return ((mono, _a),)
    out: dict[Monomial, object] = {}
    mine = 1 if side == ANTIHOLO else 0
    other = 1 - mine if sector == BULK else 0
    if n > 0:
        k, m2 = _mono_diff(mono, n, mine)
        if k:
            out[m2] = RING(k)
    else:
        k = -n
        # creation part: derivative in the conjugate variable minus 2k times the own variable
        d, m2 = _mono_diff(mono, k, other)
        if d:
            out[m2] = out.get(m2, RING(0)) + d
        m3 = _mono_mul_var(mono, k, mine)
        out[m3] = out.get(m3, RING(0)) - 2 * k
    return tuple((m, c) for m, c in out.items() if not c.is_zero)


def _accumulate(target: dict, mono: Monomial, value) -> None:
    if mono in target:
        target[mono] = target[mono] + value
    else:
        target[mono] = value


def apply_heisenberg(n: int, side: str, p: FockPoly) -> FockPoly:
    """Apply A_n (side ``holo``) or its conjugate (side ``antiholo``) to ``p``."""
    _check_side(side, p.sector)
    out: dict[Monomial, object] = {}
    for mono, c in p._terms.items():
        for m2, k in _heisenberg_monomial(n, side, p.sector, mono):
            _accumulate(out, m2, _HALF_I * k * c)
    return FockPoly(out, p.sector)


def sugawara_bound(level: int, n: int) -> int:
    """Largest |m| contributing to the normal-ordered sum of L_n on level <= ``level``.

    For m > level, A_m kills the input.  For m < -(level + |n|) the creation part
    of A_m produces phi_{|m|}, which A_{n-m} (n-m > level, n != 0) cannot remove,
    and the derivative part vanishes, so every such term is zero.
    """
    return level + abs(n) + 1


@lru_cache(maxsize=None)
def _virasoro_monomial(n: int, side: str, sector: str, mono: Monomial) -> tuple[tuple[Monomial, object], ...]:
    p = FockPoly({mono: 1}, sector)
    lvl = _mono_level(mono)
    out = FockPoly.zero(sector)
    if n == 0:
        out = p * _DELTA
        for m in range(1, lvl + 1):
            out = out + 2 * apply_heisenberg(-m, side, apply_heisenberg(m, side, p))
    else:
        out = apply_heisenberg(n, side, p) * (_I * (_a - (n + 1) * _Q))
        bound = sugawara_bound(lvl, n)
        for m in range(-bound, bound + 1):
            if m in (0, n):
                continue
            out = out + apply_heisenberg(n - m, side, apply_heisenberg(m, side, p))
    return tuple(out._terms.items())


def apply_virasoro(n: int, side: str, p: FockPoly) -> FockPoly:
    """Apply the free-field Virasoro generator L_n (or its conjugate) to ``p``."""
    _check_side(side, p.sector)
    out: dict[Monomial, object] = {}
    for mono, c in p._terms.items():
        for m2, k in _virasoro_monomial(n, side, p.sector, mono):
            _accumulate(out, m2, k * c)
    return FockPoly(out, p.sector)


@dataclass(frozen=True)
class OperatorExpr:
    """Linear combination of words in A, At, L, Lt; each word acts right-to-left."""

    terms: tuple[tuple[object, tuple[tuple[str, int], ...]], ...]

    @classmethod
    def word(cls, *letters: tuple[str, int], scalar=1) -> "OperatorExpr":
        return cls(((RING(scalar), tuple(letters)),))

    def __add__(self, other: "OperatorExpr") -> "OperatorExpr":
        return OperatorExpr(self.terms + other.terms)

    def __mul__(self, other: "OperatorExpr") -> "OperatorExpr":
        return OperatorExpr(
            tuple((c1 * c2, w1 + w2) for c1, w1 in self.terms for c2, w2 in other.terms)
        )

    def scale(self, scalar) -> "OperatorExpr":
        return OperatorExpr(tuple((RING(scalar) * c, w) for c, w in self.terms))

    def apply(self, p: FockPoly) -> FockPoly:
        total = FockPoly.zero(p.sector)
        for scalar, word in self.terms:
            q = p
            for name, n in reversed(word):
                q = _LETTERS[name](n, q)
            total = total + q * scalar
        return total


_LETTERS = {
    "A": lambda n, p: apply_heisenberg(n, HOLO, p),
    "At": lambda n, p: apply_heisenberg(n, ANTIHOLO, p),
    "L": lambda n, p: apply_virasoro(n, HOLO, p),
    "Lt": lambda n, p: apply_virasoro(n, ANTIHOLO, p),
}


def level2_operator(side: str = HOLO) -> OperatorExpr:
    """S = a^2 L_{-2} + L_{-1}^2 on the chosen side."""
    name = "L" if side == HOLO else "Lt"
    return OperatorExpr.word((name, -2), scalar=_a**2) + OperatorExpr.word((name, -1), (name, -1))


def descendant(nu: Partition, nu_tilde: Partition = Partition(()), sector: str = BULK) -> FockPoly:
    """L_{-nu} Lt_{-nu_tilde} 1 with L_{-nu} = L_{-nu_l} ... L_{-nu_1}."""
    if sector == BOUNDARY and nu_tilde.length:
        raise SectorError("the boundary sector has no antiholomorphic descendants")
    p = FockPoly.one(sector)
    for k in nu_tilde:
        p = apply_virasoro(-k, ANTIHOLO, p)
    for k in nu:
        p = apply_virasoro(-k, HOLO, p)
    # bulk descendants mix monomial degrees, so the grading is checked through L_0 and Lt_0
    sides = ((HOLO, nu.level),) if sector == BOUNDARY else ((HOLO, nu.level), (ANTIHOLO, nu_tilde.level))
    for side, lvl in sides:
        if apply_virasoro(0, side, p) != p * (_DELTA + lvl):
            raise ArithmeticError(f"descendant is not an L_0 eigenvector at level {lvl} on side {side}")
    return p


def singular_vector_level2(sector: str = BULK, order: str = "holo_first") -> FockPoly:
    """St S 1 in the bulk sector (S applied first by default) or S 1 on the boundary."""
    one = FockPoly.one(sector)
    if sector == BOUNDARY:
        return level2_operator(HOLO).apply(one)
    if order == "holo_first":
        return level2_operator(ANTIHOLO).apply(level2_operator(HOLO).apply(one))
    if order == "antiholo_first":
        return level2_operator(HOLO).apply(level2_operator(ANTIHOLO).apply(one))
    raise UsageError(f"unknown order {order!r}")


def expected_singular_vector(sector: str = BULK) -> dict[Monomial, CoefField]:
    """Factored closed form of the level-2 singular vector, in the coefficient field."""
    a, b = CoefField.alpha(), CoefField.b()
    a12, a21 = -1 / b, -b
    if sector == BOUNDARY:
        return {((2, 0, 1),): 2 * a * (a - a12) * (a - a21)}
    pref = a**2 * (a - a12) ** 2 * (a - a21) ** 2
    return {((2, 0, 1), (2, 1, 1)): 4 * pref, ONE: -pref}


def equals_in_field(p: FockPoly, expected: Mapping[Monomial, CoefField]) -> bool:
    """Exact comparison of ``p`` with a field-valued polynomial."""
    got = p.field_coefficients()
    keys = set(got) | set(expected)
    zero = CoefField(0)
    return all(got.get(k, zero) == expected.get(k, zero) for k in keys)


def basis_monomials(level: int, sector: str = BULK) -> list[Monomial]:
    """All monomials of exactly the given level."""
    vars_ = [(n, b) for n in range(1, level + 1) for b in ((0, 1) if sector == BULK else (0,))]
    out: list[Monomial] = []

    def rec(idx: int, remaining: int, acc: list[tuple[int, int, int]]) -> None:
        if remaining == 0:
            out.append(tuple(acc))
            return
        if idx == len(vars_):
            return
        n, b = vars_[idx]
        for e in range(remaining // n, -1, -1):
            rec(idx + 1, remaining - e * n, acc + ([(n, b, e)] if e else []))

    rec(0, level, [])
    return out


def basis_up_to(level: int, sector: str = BULK) -> list[Monomial]:
    return [m for k in range(level + 1) for m in basis_monomials(k, sector)]


def central_charge():
    return 1 + 6 * _Q**2


def commutator_check(
    m: int, n: int, basis_level: int, sector: str = BULK, side: str = HOLO
) -> bool:
    """Exact check of [L_m, L_n] = (m-n)L_{m+n} + c/12 (m^3-m) delta on all monomials."""
    if basis_level > 4:
        raise UsageError("basis_level must be at most 4")
    if max(abs(m), abs(n)) > basis_level + 2:
        raise UsageError("|m|, |n| must not exceed basis_level + 2")
    central = central_charge() * QQ(m**3 - m, 12) if m + n == 0 else RING(0)
    for mono in basis_up_to(basis_level, sector):
        p = FockPoly({mono: 1}, sector)
        lhs = apply_virasoro(m, side, apply_virasoro(n, side, p)) - apply_virasoro(
            n, side, apply_virasoro(m, side, p)
        )
        rhs = (m - n) * apply_virasoro(m + n, side, p) + p * central
        if lhs != rhs:
            return False
    return True


def heisenberg_check(m: int, n: int, basis_level: int, sector: str = BULK, side: str = HOLO) -> bool:
    """Exact check of [A_m, A_n] = (m/2) delta_{m+n,0}."""
    expected = RING(QQ(m, 2)) if m + n == 0 else RING(0)
    for mono in basis_up_to(basis_level, sector):
        p = FockPoly({mono: 1}, sector)
        lhs = apply_heisenberg(m, side, apply_heisenberg(n, side, p)) - apply_heisenberg(
            n, side, apply_heisenberg(m, side, p)
        )
        if lhs != p * expected:
            return False
    return True


def sectors_commute(m: int, n: int, basis_level: int) -> bool:
    """Exact check of [L_m, Lt_n] = 0 in the bulk sector."""
    for mono in basis_up_to(basis_level, BULK):
        p = FockPoly({mono: 1}, BULK)
        lhs = apply_virasoro(m, HOLO, apply_virasoro(n, ANTIHOLO, p))
        rhs = apply_virasoro(n, ANTIHOLO, apply_virasoro(m, HOLO, p))
        if lhs != rhs:
            return False
    return True


@dataclass(frozen=True)
class NumericPoly:
    """Fock polynomial with complex coefficients."""

    terms: tuple[tuple[Monomial, complex], ...]
    sector: str = BULK

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def as_dict(self) -> dict[str, complex]:
        return {_mono_str(m): c for m, c in self.terms}

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c:.12g})*{_mono_str(m)}" for m, c in self.terms)


def substitute(p: FockPoly, alpha_value: complex, b_value: complex, zero_tol: float = 0.0) -> NumericPoly:
    """Evaluate all coefficients at numeric a and b (with Q = b + 1/b)."""
    out = []
    for mono, c in p.items():
        value = CoefField.from_ring(c).evaluate(alpha_value, b_value, label=f"coefficient of {_mono_str(mono)}")
        if abs(value) > zero_tol:
            out.append((mono, complex(value)))
    return NumericPoly(tuple(out), p.sector)


def at_kac(p: FockPoly, r: int, s: int) -> dict[str, CoefField]:
    """Exact coefficients of ``p`` at the Kac momentum ``a = (1-r) b + (1-s)/b``."""
    if r < 1 or s < 1:
        raise UsageError(f"Kac labels are positive integers, got ({r}, {s})")
    kac = (1 - r) * _fb + (1 - s) / _fb
    return {_mono_str(mono): CoefField.from_ring(c, kac) for mono, c in p.items()}


def monomial(spec: Iterable[tuple[int, bool]] | str) -> Monomial:
    """Build a monomial from ``[(n, bar), ...]`` or a string like ``"phi2*phib2"``."""
    pairs: list[tuple[int, int]] = []
    if isinstance(spec, str):
        if spec.strip() == "1":
            return ONE
        for tok in spec.split("*"):
            tok = tok.strip()
            base, _, exp = tok.partition("^")
            e = int(exp) if exp else 1
            if base.startswith("phib"):
                pairs += [(int(base[4:]), 1)] * e
            elif base.startswith("phi"):
                pairs += [(int(base[3:]), 0)] * e
            else:
                raise UsageError(f"bad monomial token {tok!r}")
    else:
        pairs = [(n, int(b)) for n, b in spec]
    mono: Monomial = ONE
    for n, b in pairs:
        mono = _mono_mul_var(mono, n, b)
    return mono


def symbol_a():
    return _a


def symbol_Q():
    return _Q


def ring_from_sympy(expr) -> object:
    """Convert a sympy expression in symbols ``a`` and ``Q`` into the working ring."""
    if isinstance(expr, str):
        expr = sympy.sympify(expr, locals={"a": sympy.Symbol("a"), "Q": sympy.Symbol("Q"), "I": sympy.I})
    return RING.from_expr(sympy.sympify(expr))
