"""Exact graded rings presented by generators and square rules.

Everything here is a finite-dimensional slice of a graded commutative ring
over Q[g], where g is a free integer parameter (a genus, in the intended
applications).  A ring presentation names its generators, assigns each a
positive degree, and optionally attaches a "square rule" gen**2 -> rhs to
some of them.  Normal forms are computed by a terminating rewrite system:
every ruled generator appears with exponent at most 1 in a normal form.

Coefficients are univariate polynomials in g with Fraction coefficients
(ParamPoly).  No floats anywhere.

The canonical text format orders monomials by total degree descending,
ties broken by the reversed exponent tuple ascending, which reproduces
strings like

    (g+2)*z*zeta_p - a2 - a2p*z

and is the golden format the verification tests freeze.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

_ROOT_SWEEP_LIMIT = 10 ** 6


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


class ParamPoly:
    """Polynomial in the parameter g over Q, dense little-endian tuple."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, c):
        return cls((_as_fraction(c),))

    @classmethod
    def coerce(cls, x):
        if isinstance(x, ParamPoly):
            return x
        return cls.const(x)

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_const(self):
        return len(self.coeffs) <= 1

    def const_value(self):
        if not self.is_const():
            raise ValueError(f"not a constant: {self}")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def leading(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def term_count(self):
        return sum(1 for c in self.coeffs if c != 0)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ParamPoly.const(other)
        if not isinstance(other, ParamPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __neg__(self):
        return ParamPoly(tuple(-c for c in self.coeffs))

    def __add__(self, other):
        if not isinstance(other, (int, Fraction, ParamPoly)):
            return NotImplemented
        other = ParamPoly.coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return ParamPoly(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, (int, Fraction, ParamPoly)):
            return NotImplemented
        return self + (-ParamPoly.coerce(other))

    def __rsub__(self, other):
        if not isinstance(other, (int, Fraction, ParamPoly)):
            return NotImplemented
        return ParamPoly.coerce(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, (int, Fraction, ParamPoly)):
            return NotImplemented
        other = ParamPoly.coerce(other)
        if not self.coeffs or not other.coeffs:
            return ParamPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return ParamPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        acc = ParamPoly.const(1)
        for _ in range(n):
            acc = acc * self
        return acc

    def divmod(self, other):
        """Long division; other must be nonzero."""
        other = ParamPoly.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        quo = [Fraction(0)] * max(0, len(rem) - len(other.coeffs) + 1)
        d = len(other.coeffs) - 1
        lead = other.coeffs[-1]
        while len(rem) - 1 >= d and any(c != 0 for c in rem):
            while rem and rem[-1] == 0:
                rem.pop()
            if len(rem) - 1 < d:
                break
            k = len(rem) - 1 - d
            f = rem[-1] / lead
            quo[k] = f
            for i, c in enumerate(other.coeffs):
                rem[k + i] -= f * c
        return ParamPoly(quo), ParamPoly(rem)

    def exact_div(self, other):
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ValueError(f"inexact division: ({self}) / ({other})")
        return q

    def __call__(self, value):
        v = _as_fraction(value)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * v + c
        return acc

    def nonneg_integer_roots(self):
        """All integer roots n >= 0, by sweeping up to the Cauchy bound."""
        if self.is_zero():
            raise ValueError("zero polynomial vanishes at every g")
        if self.degree < 1:
            return []
        lead = abs(self.coeffs[-1])
        rest = max((abs(c) for c in self.coeffs[:-1]), default=Fraction(0))
        bound = 1 + rest / lead
        limit = int(bound) + 1
        if limit > _ROOT_SWEEP_LIMIT:
            raise ValueError(f"root bound {limit} too large to sweep")
        return [n for n in range(limit + 1) if self(n) == 0]

    def nonvanishing_for_nonneg_g(self):
        """True when p(n) != 0 for every integer n >= 0, provably."""
        return not self.is_zero() and not self.nonneg_integer_roots()

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                gpow = "g" if k == 1 else f"g**{k}"
                body = gpow if mag == 1 else f"{mag}*{gpow}"
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+" if c > 0 else "-") + body)
        return "".join(parts)

    __repr__ = __str__


#: The parameter itself, as a polynomial.
G = ParamPoly((Fraction(0), Fraction(1)))


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int

    def __post_init__(self):
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", self.name):
            raise ValueError(f"bad generator name {self.name!r}")
        if self.name == "g":
            raise ValueError("'g' is reserved for the parameter")
        if self.degree < 1:
            raise ValueError(f"generator {self.name} needs positive degree")


class RingPresentation:
    """Generators, degrees, and square rules gen**2 -> rhs.

    Termination of the rewrite system is checked at construction: order the
    ruled generators as they appear in the generator list and read each
    monomial's ruled exponents as a lexicographic measure.  A rule for the
    i-th ruled generator may mention that generator to exponent at most 1
    and no ruled generator earlier than position i, so every rewrite
    strictly drops the measure.

    rules_enabled=False gives the free cover of the presentation (same
    generators, rewriting off); ChowElement.reduce() maps back.
    """

    def __init__(self, generators, square_rules=None, truncation_degree=None,
                 rules_enabled=True, rewrite_order=None):
        self.generators = tuple(generators)
        names = [gq.name for gq in self.generators]
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator names")
        self._index = {gq.name: i for i, gq in enumerate(self.generators)}
        self.degrees = tuple(gq.degree for gq in self.generators)
        if truncation_degree is not None and truncation_degree < 1:
            raise ValueError("truncation degree must be positive")
        self.truncation_degree = truncation_degree
        self.rules_enabled = bool(rules_enabled)

        rules = {}
        for name, rhs in (square_rules or {}).items():
            if name not in self._index:
                raise ValueError(f"rule for unknown generator {name!r}")
            clean = {}
            for exps, coeff in rhs.items():
                exps = tuple(exps)
                if len(exps) != len(self.generators) or any(e < 0 for e in exps):
                    raise ValueError(f"bad monomial {exps} in rule for {name}")
                coeff = ParamPoly.coerce(coeff)
                if coeff.is_zero():
                    continue
                clean[exps] = coeff
            rules[name] = clean
        self.square_rules = rules
        self.ruled = tuple(n for n in names if n in rules)

        if rewrite_order is None:
            rewrite_order = self.ruled
        if tuple(sorted(rewrite_order)) != tuple(sorted(self.ruled)):
            raise ValueError("rewrite_order must permute the ruled generators")
        self.rewrite_order = tuple(rewrite_order)

        self._measure_pos = {n: i for i, n in enumerate(self.ruled)}
        self._validate_rules()
        self._specialized = {}

    def _validate_rules(self):
        for name, rhs in self.square_rules.items():
            gi = self._index[name]
            want = 2 * self.degrees[gi]
            pos = self._measure_pos[name]
            for exps, _ in rhs.items():
                if self.monomial_degree(exps) != want:
                    raise ValueError(
                        f"rule {name}**2 is not homogeneous of degree {want}")
                if exps[gi] > 1:
                    raise ValueError(
                        f"rule for {name} mentions {name}**{exps[gi]}, "
                        "which would loop")
                for other in self.ruled[:pos]:
                    if exps[self._index[other]] != 0:
                        raise ValueError(
                            f"rule for {name} mentions earlier ruled "
                            f"generator {other}; rewriting would not terminate")

    # -- structure --

    def monomial_degree(self, exps):
        return sum(e * d for e, d in zip(exps, self.degrees))

    def _measure(self, exps):
        return tuple(exps[self._index[n]] for n in self.ruled)

    def _sort_key(self, exps):
        return (-self.monomial_degree(exps), tuple(reversed(exps)))

    def index_of(self, name):
        return self._index[name]

    def has_generator(self, name):
        return name in self._index

    def __eq__(self, other):
        if not isinstance(other, RingPresentation):
            return NotImplemented
        return (self.generators == other.generators
                and self.square_rules == other.square_rules
                and self.truncation_degree == other.truncation_degree
                and self.rules_enabled == other.rules_enabled)

    def __hash__(self):
        return hash((self.generators, self.truncation_degree,
                     self.rules_enabled))

    def __repr__(self):
        kind = "quotient" if self.rules_enabled else "free"
        return (f"RingPresentation({kind}, "
                f"[{', '.join(gq.name for gq in self.generators)}], "
                f"trunc={self.truncation_degree})")

    def free(self):
        if not self.rules_enabled:
            return self
        return self._with_flags(rules_enabled=False)

    def quotient(self):
        if self.rules_enabled:
            return self
        return self._with_flags(rules_enabled=True)

    def with_rewrite_order(self, order):
        return self._with_flags(rewrite_order=tuple(order))

    def _with_flags(self, rules_enabled=None, rewrite_order=None):
        return RingPresentation(
            self.generators, self.square_rules,
            truncation_degree=self.truncation_degree,
            rules_enabled=self.rules_enabled if rules_enabled is None
            else rules_enabled,
            rewrite_order=self.rewrite_order if rewrite_order is None
            else rewrite_order)

    def specialize(self, g_value):
        """Presentation with g fixed to a rational number."""
        g_value = _as_fraction(g_value)
        hit = self._specialized.get(g_value)
        if hit is not None:
            return hit
        rules = {
            name: {exps: ParamPoly.const(coeff(g_value))
                   for exps, coeff in rhs.items()}
            for name, rhs in self.square_rules.items()
        }
        spec = RingPresentation(
            self.generators, rules,
            truncation_degree=self.truncation_degree,
            rules_enabled=self.rules_enabled,
            rewrite_order=self.rewrite_order)
        self._specialized[g_value] = spec
        return spec

    # -- element constructors --

    def element(self, terms):
        return ChowElement(self, terms)

    def zero(self):
        return ChowElement(self, {})

    def one(self):
        return self.const(1)

    def const(self, c):
        zero_exps = (0,) * len(self.generators)
        return ChowElement(self, {zero_exps: ParamPoly.coerce(c)})

    def g(self):
        return self.const(G)

    def gen(self, name):
        i = self._index[name]
        exps = tuple(1 if j == i else 0 for j in range(len(self.generators)))
        return ChowElement(self, {exps: ParamPoly.const(1)})

    def monomials_of_degree(self, d):
        """All normal-form monomials of total degree d, canonically sorted.

        Ruled generators are capped at exponent 1 (anything larger is not a
        normal form); free generators range as far as the degree allows.
        """
        if d < 0:
            return []
        caps = []
        for gq in self.generators:
            if gq.name in self.square_rules:
                caps.append(min(1, d // gq.degree))
            else:
                caps.append(d // gq.degree)
        found = []

        def rec(i, remaining, acc):
            if i == len(self.generators):
                if remaining == 0:
                    found.append(tuple(acc))
                return
            deg = self.degrees[i]
            for e in range(min(caps[i], remaining // deg) + 1):
                acc.append(e)
                rec(i + 1, remaining - e * deg, acc)
                acc.pop()

        rec(0, d, [])
        found.sort(key=self._sort_key)
        return found

    def parse(self, text):
        return _Parser(self, text).parse()

    # -- normalization --

    def _normalize(self, raw_terms):
        out = {}
        stack = []
        for exps, coeff in raw_terms.items():
            exps = tuple(exps)
            if len(exps) != len(self.generators) or any(e < 0 for e in exps):
                raise ValueError(f"bad monomial {exps}")
            stack.append((exps, ParamPoly.coerce(coeff)))
        while stack:
            exps, coeff = stack.pop()
            if coeff.is_zero():
                continue
            if (self.truncation_degree is not None
                    and self.monomial_degree(exps) > self.truncation_degree):
                continue
            rewritten = False
            if self.rules_enabled:
                for name in self.rewrite_order:
                    i = self._index[name]
                    if exps[i] >= 2:
                        base = list(exps)
                        base[i] -= 2
                        old_measure = self._measure(exps)
                        for r_exps, r_coeff in self.square_rules[name].items():
                            new = tuple(a + b for a, b in zip(base, r_exps))
                            assert self._measure(new) < old_measure, \
                                "rewrite failed to drop the termination measure"
                            stack.append((new, coeff * r_coeff))
                        rewritten = True
                        break
            if rewritten:
                continue
            prev = out.get(exps)
            total = coeff if prev is None else prev + coeff
            if total.is_zero():
                out.pop(exps, None)
            else:
                out[exps] = total
        return out


class ChowElement:
    """Element of a RingPresentation, stored as monomial -> ParamPoly."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "terms", ring._normalize(terms))

    def __setattr__(self, *a):
        raise AttributeError("ChowElement is immutable")

    # -- ring sanity --

    def _coerce_other(self, other):
        if isinstance(other, ChowElement):
            if other.ring != self.ring:
                raise ValueError("elements live in different presentations")
            return other
        if isinstance(other, (int, Fraction, ParamPoly)):
            return self.ring.const(other)
        return None

    # -- arithmetic --

    def __add__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        merged = dict(self.terms)
        for exps, coeff in other.terms.items():
            merged[exps] = merged.get(exps, ParamPoly()) + coeff
        return ChowElement(self.ring, merged)

    __radd__ = __add__

    def __neg__(self):
        return ChowElement(self.ring,
                           {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, ParamPoly)):
            c = ParamPoly.coerce(other)
            return ChowElement(self.ring,
                               {e: k * c for e, k in self.terms.items()})
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        acc = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                acc[key] = acc.get(key, ParamPoly()) + c1 * c2
        return ChowElement(self.ring, acc)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = _as_fraction(other)
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (Fraction(1) / other)
        raise TypeError("can only divide by a nonzero rational constant")

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        acc = self.ring.one()
        for _ in range(n):
            acc = acc * self
        return acc

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, ParamPoly)):
            other = self.ring.const(other)
        if not isinstance(other, ChowElement):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    # -- grading --

    def degree(self):
        """Top degree present, or None for the zero element."""
        if not self.terms:
            return None
        return max(self.ring.monomial_degree(e) for e in self.terms)

    def is_homogeneous(self):
        degs = {self.ring.monomial_degree(e) for e in self.terms}
        return len(degs) <= 1

    def graded_part(self, d):
        picked = {e: c for e, c in self.terms.items()
                  if self.ring.monomial_degree(e) == d}
        return ChowElement(self.ring, picked)

    def graded_pieces(self):
        degs = sorted({self.ring.monomial_degree(e) for e in self.terms})
        return [(d, self.graded_part(d)) for d in degs]

    # -- structure ops --

    def reduce(self):
        """Normal form in the quotient presentation (rules on)."""
        return ChowElement(self.ring.quotient(), dict(self.terms))

    def in_free(self):
        return ChowElement(self.ring.free(), dict(self.terms))

    def evaluate(self, g_value):
        """Substitute a rational number for g."""
        spec = self.ring.specialize(g_value)
        g_value = _as_fraction(g_value)
        return ChowElement(
            spec, {e: ParamPoly.const(c(g_value))
                   for e, c in self.terms.items()})

    def coefficient(self, **powers):
        """Coefficient of the monomial given by name=exponent keywords."""
        exps = [0] * len(self.ring.generators)
        for name, e in powers.items():
            exps[self.ring.index_of(name)] = e
        return self.terms.get(tuple(exps), ParamPoly())

    def split_linear(self, name):
        """Write self as p0 + gen*p1; requires exponent <= 1 throughout."""
        i = self.ring.index_of(name)
        p0, p1 = {}, {}
        for exps, coeff in self.terms.items():
            if exps[i] == 0:
                p0[exps] = coeff
            elif exps[i] == 1:
                lowered = list(exps)
                lowered[i] = 0
                p1[tuple(lowered)] = coeff
            else:
                raise ValueError(
                    f"{name}**{exps[i]} present; not linear in {name}")
        return ChowElement(self.ring, p0), ChowElement(self.ring, p1)

    def substitute_generator(self, name, replacement):
        """Replace a generator by another element of the same ring."""
        replacement = self._coerce_other(replacement)
        if replacement is None:
            raise TypeError("replacement must coerce into the ring")
        i = self.ring.index_of(name)
        total = self.ring.zero()
        for exps, coeff in self.terms.items():
            e = exps[i]
            stripped = list(exps)
            stripped[i] = 0
            base = ChowElement(self.ring, {tuple(stripped): coeff})
            total = total + base * replacement ** e
        return total

    # -- text --

    def canonical(self):
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(),
                       key=lambda kv: self.ring._sort_key(kv[0]))
        pieces = []
        for exps, coeff in items:
            sign, body = self._term_string(exps, coeff)
            if not pieces:
                pieces.append(body if sign > 0 else "-" + body)
            else:
                pieces.append(("+ " if sign > 0 else "- ") + body)
        return " ".join(pieces)

    def _term_string(self, exps, coeff):
        sign = 1 if coeff.leading() > 0 else -1
        mag = coeff if sign > 0 else -coeff
        factors = []
        for i in range(len(exps) - 1, -1, -1):
            e = exps[i]
            if e == 0:
                continue
            name = self.ring.generators[i].name
            factors.append(name if e == 1 else f"{name}**{e}")
        mono = "*".join(factors)
        if not mono:
            if mag.term_count() > 1:
                return sign, f"({mag})"
            return sign, str(mag)
        if mag == 1:
            return sign, mono
        coeff_str = str(mag) if mag.term_count() == 1 else f"({mag})"
        return sign, f"{coeff_str}*{mono}"

    __str__ = canonical

    def __repr__(self):
        return self.canonical()


_TOKEN = re.compile(r"\s*(\*\*|[()+\-*/]|[0-9]+|[A-Za-z_][A-Za-z0-9_]*)")


class _Parser:
    """Recursive descent for the canonical element format (and a bit more)."""

    def __init__(self, ring, text):
        self.ring = ring
        self.text = text
        self.tokens = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m:
                if text[pos:].strip():
                    raise ValueError(f"bad character at {pos}: {text[pos]!r}")
                break
            self.tokens.append(m.group(1))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        if tok is None:
            raise ValueError("unexpected end of input")
        self.i += 1
        return tok

    def parse(self):
        value = self.expr()
        if self.peek() is not None:
            raise ValueError(f"trailing input at token {self.peek()!r}")
        return value

    def expr(self):
        sign = 1
        while self.peek() in ("+", "-"):
            if self.take() == "-":
                sign = -sign
        value = self.term() * sign
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.power()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.power()
            if op == "*":
                value = value * rhs
            else:
                if rhs.terms and set(rhs.terms) != {(0,) * len(self.ring.generators)}:
                    raise ValueError("can only divide by a rational constant")
                c = rhs.terms.get((0,) * len(self.ring.generators), ParamPoly())
                value = value / c.const_value()
        return value

    def power(self):
        base = self.atom()
        if self.peek() == "**":
            self.take()
            tok = self.take()
            if not tok.isdigit():
                raise ValueError(f"exponent must be an integer, got {tok!r}")
            base = base ** int(tok)
        return base

    def atom(self):
        tok = self.take()
        if tok == "(":
            inner = self.expr()
            if self.take() != ")":
                raise ValueError("expected ')'")
            return inner
        if tok == "-":
            return -self.atom()
        if tok.isdigit():
            return self.ring.const(int(tok))
        if tok == "g":
            return self.ring.g()
        if self.ring.has_generator(tok):
            return self.ring.gen(tok)
        raise ValueError(f"unknown name {tok!r}")
