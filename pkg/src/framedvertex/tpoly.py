"""Sparse multivariate polynomials in t_0 .. t_{n-1} over Q(f).

Terms are stored as a map from exponent tuples to nonzero ``FRational``
coefficients.  Values are immutable by convention: every operation returns
a new polynomial.  Variable slots are 0-based throughout.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ArityMismatch, IndexOutOfRange, NotDivisible
from .ratfunc import FR_ONE, FR_ZERO, FRational, _as_frational


class TPolynomial:
    __slots__ = ("_arity", "_terms")

    def __init__(self, arity, terms=()):
        if arity < 0:
            raise ValueError("arity must be non-negative")
        self._arity = arity
        clean = {}
        items = terms.items() if hasattr(terms, "items") else terms
        for exps, coeff in items:
            exps = tuple(exps)
            if len(exps) != arity or any(e < 0 for e in exps):
                raise ValueError("bad exponent vector %r for arity %d" % (exps, arity))
            coeff = _as_frational(coeff)
            if coeff is NotImplemented:
                raise TypeError("coefficients must be FRational-like")
            if coeff.is_zero:
                continue
            prev = clean.get(exps)
            if prev is None:
                clean[exps] = coeff
            else:
                s = prev + coeff
                if s.is_zero:
                    del clean[exps]
                else:
                    clean[exps] = s
        self._terms = clean

    @classmethod
    def _raw(cls, arity, terms):
        self = object.__new__(cls)
        self._arity = arity
        self._terms = terms
        return self

    @classmethod
    def zero(cls, arity):
        return cls._raw(arity, {})

    @classmethod
    def constant(cls, arity, coeff):
        coeff = _as_frational(coeff)
        if coeff.is_zero:
            return cls.zero(arity)
        return cls._raw(arity, {(0,) * arity: coeff})

    @classmethod
    def variable(cls, arity, slot):
        if not 0 <= slot < arity:
            raise IndexOutOfRange("slot %d outside arity %d" % (slot, arity))
        exps = tuple(1 if i == slot else 0 for i in range(arity))
        return cls._raw(arity, {exps: FR_ONE})

    @classmethod
    def monomial(cls, arity, exps, coeff):
        return cls(arity, [(tuple(exps), coeff)])

    # -- accessors ------------------------------------------------------------

    @property
    def arity(self):
        return self._arity

    @property
    def is_zero(self):
        return not self._terms

    def coefficient(self, exps):
        return self._terms.get(tuple(exps), FR_ZERO)

    def terms(self):
        """Iterator over (exponent tuple, coefficient) pairs."""
        return iter(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def degree_in(self, slot):
        self._check_slot(slot)
        if not self._terms:
            return -1
        return max(e[slot] for e in self._terms)

    def total_degree(self):
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def _check_slot(self, slot):
        if not 0 <= slot < self._arity:
            raise IndexOutOfRange("slot %d outside arity %d" % (slot, self._arity))

    # -- ring operations --------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, TPolynomial):
            c = _as_frational(other)
            if c is NotImplemented:
                return NotImplemented
            other = TPolynomial.constant(self._arity, c)
        if other._arity != self._arity:
            raise ArityMismatch("arity %d vs %d" % (self._arity, other._arity))
        if not self._terms:
            return other
        if not other._terms:
            return self
        out = dict(self._terms)
        for exps, c in other._terms.items():
            prev = out.get(exps)
            if prev is None:
                out[exps] = c
            else:
                s = prev + c
                if s.is_zero:
                    del out[exps]
                else:
                    out[exps] = s
        return TPolynomial._raw(self._arity, out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return TPolynomial._raw(
            self._arity, {e: -c for e, c in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, TPolynomial):
            c = _as_frational(other)
            if c is NotImplemented:
                return NotImplemented
            if c.is_zero:
                return TPolynomial.zero(self._arity)
            return TPolynomial._raw(
                self._arity, {e: x * c for e, x in self._terms.items()})
        if other._arity != self._arity:
            raise ArityMismatch("arity %d vs %d" % (self._arity, other._arity))
        if not self._terms or not other._terms:
            return TPolynomial.zero(self._arity)
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        out = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                p = c1 * c2
                prev = out.get(e)
                if prev is None:
                    out[e] = p
                else:
                    s = prev + p
                    if s.is_zero:
                        del out[e]
                    else:
                        out[e] = s
        return TPolynomial._raw(self._arity, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = TPolynomial.constant(self._arity, FR_ONE)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __eq__(self, other):
        if not isinstance(other, TPolynomial):
            return NotImplemented
        return self._arity == other._arity and self._terms == other._terms

    def __hash__(self):
        return hash((self._arity, frozenset(self._terms.items())))

    def __bool__(self):
        return bool(self._terms)

    # -- calculus / substitution ---------------------------------------------

    def partial_derivative(self, slot):
        self._check_slot(slot)
        out = {}
        for exps, c in self._terms.items():
            k = exps[slot]
            if k == 0:
                continue
            e = exps[:slot] + (k - 1,) + exps[slot + 1:]
            v = c * k
            prev = out.get(e)
            out[e] = v if prev is None else prev + v
        return TPolynomial._raw(self._arity,
                                {e: c for e, c in out.items() if not c.is_zero})

    def substitute(self, slot, target):
        """Replace variable ``slot`` by variable ``target``; arity drops by one.

        Remaining variables keep their order, so indices above ``slot``
        shift down by one.
        """
        self._check_slot(slot)
        self._check_slot(target)
        if slot == target:
            raise IndexOutOfRange("cannot substitute a variable into itself")
        t_new = target if target < slot else target - 1
        out = {}
        for exps, c in self._terms.items():
            rest = list(exps[:slot] + exps[slot + 1:])
            rest[t_new] += exps[slot]
            e = tuple(rest)
            prev = out.get(e)
            if prev is None:
                out[e] = c
            else:
                s = prev + c
                if s.is_zero:
                    del out[e]
                else:
                    out[e] = s
        return TPolynomial._raw(self._arity - 1, out)

    def embed(self, arity, slot_map):
        """Map this polynomial into a larger ring along explicit slots.

        ``slot_map[k]`` is the destination of variable ``k``; the map must
        be injective into ``range(arity)``.
        """
        slot_map = tuple(slot_map)
        if len(slot_map) != self._arity:
            raise ArityMismatch("slot map length %d, arity %d"
                                % (len(slot_map), self._arity))
        if len(set(slot_map)) != len(slot_map):
            raise ValueError("slot map must be injective")
        for s in slot_map:
            if not 0 <= s < arity:
                raise IndexOutOfRange("destination slot %d outside arity %d"
                                      % (s, arity))
        out = {}
        for exps, c in self._terms.items():
            e = [0] * arity
            for k, v in enumerate(exps):
                e[slot_map[k]] = v
            out[tuple(e)] = c
        return TPolynomial._raw(arity, out)

    def map_coefficients(self, fn):
        out = {}
        for e, c in self._terms.items():
            v = fn(c)
            if not v.is_zero:
                out[e] = v
        return TPolynomial._raw(self._arity, out)

    def specialize_f(self, f0):
        """Evaluate every coefficient at a rational framing value.

        Returns a plain dict from exponent tuple to Fraction.
        """
        f0 = Fraction(f0)
        out = {}
        for e, c in self._terms.items():
            v = c.evaluate(f0)
            if v:
                out[e] = v
        return out

    # -- exact division -----------------------------------------------------------

    def exact_divide_difference(self, i, j):
        """Divide exactly by (t_i - t_j).

        The numerator must vanish on the diagonal t_i = t_j; otherwise a
        nonzero synthetic-division remainder is left and ``NotDivisible``
        is raised.
        """
        self._check_slot(i)
        self._check_slot(j)
        if i == j:
            raise IndexOutOfRange("divide-difference needs distinct slots")
        if not self._terms:
            return self
        # coefficients of powers of t_i, as polynomials in the other slots
        by_k = {}
        for exps, c in self._terms.items():
            k = exps[i]
            e0 = exps[:i] + (0,) + exps[i + 1:]
            by_k.setdefault(k, {})[e0] = c
        dmax = max(by_k)
        quotient = {}
        carry = {}  # q_k as a term dict while sweeping k downward
        for k in range(dmax - 1, -1, -1):
            # q_k = a_{k+1} + t_j * q_{k+1}
            term = dict(by_k.get(k + 1, {}))
            for e, c in carry.items():
                ej = e[:j] + (e[j] + 1,) + e[j + 1:]
                prev = term.get(ej)
                if prev is None:
                    term[ej] = c
                else:
                    s = prev + c
                    if s.is_zero:
                        del term[ej]
                    else:
                        term[ej] = s
            for e, c in term.items():
                quotient[e[:i] + (k,) + e[i + 1:]] = c
            carry = term
        # remainder = a_0 + t_j * q_0
        rem = dict(by_k.get(0, {}))
        for e, c in carry.items():
            ej = e[:j] + (e[j] + 1,) + e[j + 1:]
            prev = rem.get(ej)
            if prev is None:
                rem[ej] = c
            else:
                s = prev + c
                if s.is_zero:
                    del rem[ej]
                else:
                    rem[ej] = s
        if rem:
            raise NotDivisible(
                "numerator does not vanish on the diagonal t_%d = t_%d" % (i, j))
        return TPolynomial._raw(self._arity,
                                {e: c for e, c in quotient.items()
                                 if not c.is_zero})

    # -- rendering -----------------------------------------------------------------

    def render_lines(self):
        """Canonical text lines, graded-lexicographically sorted exponents."""
        lines = []
        for exps in sorted(self._terms, key=lambda e: (sum(e), e)):
            lines.append("%s : %s" % (",".join(map(str, exps)),
                                      self._terms[exps].as_text()))
        return lines

    def __repr__(self):
        if not self._terms:
            return "TPolynomial(%d, 0)" % self._arity
        return "TPolynomial(%d, {%s})" % (self._arity, "; ".join(self.render_lines()))


def exact_divide_difference(numer, i, j):
    """Module-level alias for :meth:`TPolynomial.exact_divide_difference`."""
    return numer.exact_divide_difference(i, j)
