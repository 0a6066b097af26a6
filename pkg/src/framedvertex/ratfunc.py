"""Exact arithmetic over Q and Q(f).

Rational numbers are stdlib :class:`fractions.Fraction`.  ``FPolynomial``
is a univariate polynomial in the framing variable ``f`` with rational
coefficients, stored internally as integer coefficients over a common
positive integer denominator.  ``FRational`` is a quotient of two such
polynomials kept in canonical form: the denominator is monic, coprime to
the numerator, and equality is plain structural equality.

Everything here is exact; no floating point is used anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import DivisionByZero, PoleAtFraming

Rational = Fraction


# ---------------------------------------------------------------------------
# integer-coefficient polynomial helpers
#
# A polynomial is a tuple of ints, ascending degree, last entry nonzero;
# () is the zero polynomial.
# ---------------------------------------------------------------------------

def _ptrim(c):
    n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    return tuple(c[:n])


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return _ptrim(out)


def _pneg(a):
    return tuple(-x for x in a)


def _pscale(a, k):
    if k == 0:
        return ()
    return tuple(x * k for x in a)


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return tuple(out)


def _pcontent(a):
    g = 0
    for x in a:
        g = gcd(g, x)
        if g == 1:
            return 1
    return g


def _psplit(a):
    """Split nonzero ``a`` into (signed content, primitive positive-lead part)."""
    c = _pcontent(a)
    if a[-1] < 0:
        c = -c
    if c == 1:
        return 1, a
    return c, tuple(x // c for x in a)


def _peval_int(a, x):
    acc = 0
    for coef in reversed(a):
        acc = acc * x + coef
    return acc


def _pdivexact(a, b):
    """Exact quotient a // b for int polynomials; the division must be exact."""
    if not a:
        return ()
    la, lb = len(a), len(b)
    if la < lb:
        raise ArithmeticError("inexact polynomial division")
    q = [0] * (la - lb + 1)
    r = list(a)
    for k in range(la - lb, -1, -1):
        top = r[k + lb - 1]
        if top == 0:
            continue
        c, rem = divmod(top, b[-1])
        if rem:
            raise ArithmeticError("inexact polynomial division")
        q[k] = c
        for i, bx in enumerate(b):
            r[k + i] -= c * bx
    if any(r):
        raise ArithmeticError("inexact polynomial division")
    return tuple(q)


def _prem(a, b):
    """Pseudo-remainder of a by b (up to a unit), as an int polynomial."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(r) - 1 >= db and r:
        s = r[-1]
        off = len(r) - 1 - db
        r = [lb * x for x in r]
        for i, bx in enumerate(b):
            r[off + i] -= s * bx
        while r and r[-1] == 0:
            r.pop()
    return tuple(r)


_F1 = (1, 1)  # the polynomial f + 1

_P61 = (1 << 61) - 1  # Mersenne prime for the coprimality certificate


def _coprime_mod_p(a, b):
    """Certify gcd(a, b) = 1 via a single modular Euclid run.

    Sound: if p divides neither leading coefficient, a nonconstant
    rational gcd survives reduction mod p with full degree, so a constant
    gcd mod p proves coprimality.  Returns False when nothing is proved.
    """
    p = _P61
    if a[-1] % p == 0 or b[-1] % p == 0:
        return False
    am = [x % p for x in a]
    bm = [x % p for x in b]
    while bm and bm[-1] == 0:
        bm.pop()
    while True:
        if not bm:
            return False
        if len(bm) == 1:
            return True
        db = len(bm) - 1
        lb = bm[-1]
        r = am
        # inverse-free scaled reduction: r <- lb*r - top*f^off*bm
        while len(r) - 1 >= db:
            top = r.pop()
            if top:
                off = len(r) - db
                for i in range(off):
                    r[i] = r[i] * lb % p
                for i in range(db):
                    r[off + i] = (r[off + i] * lb - top * bm[i]) % p
            while r and r[-1] == 0:
                r.pop()
        am, bm = bm, r


def _pp_gcd(a, b):
    """Gcd of two nonzero primitive positive-lead int polynomials.

    Returns a primitive positive-lead polynomial.  Denominators arising in
    this package are almost always f^j (f+1)^k times an integer, so powers
    of f and f+1 are stripped cheaply before falling back to a primitive
    polynomial remainder sequence.
    """
    if len(a) == 1 or len(b) == 1:
        return (1,)
    acc = ()
    # common powers of f show up as shared low-order zero coefficients
    za = 0
    while a[za] == 0:
        za += 1
    zb = 0
    while b[zb] == 0:
        zb += 1
    z = min(za, zb)
    if z:
        a = a[z:]
        b = b[z:]
        acc = (0,) * z + (1,)
    # common powers of (f + 1)
    while len(a) > 1 and len(b) > 1 and _peval_int(a, -1) == 0 and _peval_int(b, -1) == 0:
        a = _pdivexact(a, _F1)
        b = _pdivexact(b, _F1)
        acc = _pmul(acc, _F1) if acc else _F1
    if len(a) == 1 or len(b) == 1:
        return acc if acc else (1,)
    # common f / (f+1) structure is gone; if either remainder is a pure
    # c f^j (f+1)^k monomial, nothing further can be shared
    if _is_ff1_monomial(a) or _is_ff1_monomial(b):
        return acc if acc else (1,)
    if _coprime_mod_p(a, b):
        return acc if acc else (1,)
    g = _prs_gcd(a, b)
    if acc:
        g = _pmul(acc, g)
    return g


def _is_ff1_monomial(x):
    """True when x = c * f^j * (f+1)^k."""
    i = 0
    while x[i] == 0:
        i += 1
    x = x[i:]
    while len(x) > 1 and _peval_int(x, -1) == 0:
        x = _pdivexact(x, _F1)
    return len(x) == 1


def _prs_gcd(a, b):
    """Primitive PRS gcd for nonconstant primitive polynomials."""
    if len(a) < len(b):
        a, b = b, a
    while True:
        if len(b) == 1:
            return (1,)
        r = _prem(a, b)
        if not r:
            return b
        _, r = _psplit(r)
        a, b = b, r


# ---------------------------------------------------------------------------
# text rendering / parsing of integer-form polynomials
# ---------------------------------------------------------------------------

def _render_int_poly(c):
    if not c:
        return "0"
    parts = []
    for k in range(len(c) - 1, -1, -1):
        x = c[k]
        if x == 0:
            continue
        sign = "-" if x < 0 else "+"
        m = abs(x)
        if k == 0:
            body = str(m)
        else:
            var = "f" if k == 1 else "f^%d" % k
            body = var if m == 1 else "%d*%s" % (m, var)
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    out = [first_body if first_sign == "+" else "-" + first_body]
    for sign, body in parts[1:]:
        out.append(sign)
        out.append(body)
    return "".join(out)


def _is_atom(c):
    """True when the int polynomial renders as a single positive term."""
    nonzero = [k for k, x in enumerate(c) if x]
    return len(nonzero) == 1 and c[nonzero[0]] > 0


def _parse_int_poly(text):
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        depth = 0
        for i, ch in enumerate(text):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
                if depth == 0 and i != len(text) - 1:
                    break
        else:
            text = text[1:-1].strip()
    if text == "0":
        return ()
    coeffs = {}
    i, n = 0, len(text)
    while i < n:
        sign = 1
        while i < n and text[i] in "+-":
            if text[i] == "-":
                sign = -sign
            i += 1
        j = i
        while j < n and text[j].isdigit():
            j += 1
        mag = int(text[i:j]) if j > i else None
        i = j
        if i < n and text[i] == "*":
            i += 1
        if i < n and text[i] == "f":
            i += 1
            if i < n and text[i] == "^":
                i += 1
                j = i
                while j < n and text[j].isdigit():
                    j += 1
                if j == i:
                    raise ValueError("bad exponent in %r" % text)
                k = int(text[i:j])
                i = j
            else:
                k = 1
        else:
            k = 0
            if mag is None:
                raise ValueError("bad term in %r" % text)
        coeffs[k] = coeffs.get(k, 0) + sign * (1 if mag is None else mag)
    if not coeffs:
        return ()
    out = [0] * (max(coeffs) + 1)
    for k, v in coeffs.items():
        out[k] = v
    return _ptrim(out)


# ---------------------------------------------------------------------------
# FPolynomial
# ---------------------------------------------------------------------------

class FPolynomial:
    """Univariate polynomial in f over Q, canonical and immutable.

    Stored as integer coefficients ``ic`` (ascending degree, trimmed) over a
    positive integer denominator ``d`` with gcd(content(ic), d) = 1.
    """

    __slots__ = ("_ic", "_d")

    def __init__(self, coefficients=()):
        ic, d = _coeffs_to_int_form(coefficients)
        self._ic = ic
        self._d = d

    @classmethod
    def _raw(cls, ic, d):
        self = object.__new__(cls)
        self._ic = ic
        self._d = d
        return self

    @classmethod
    def _build(cls, ic, d):
        """Normalize an (int coeffs, int denominator) pair."""
        if d == 0:
            raise DivisionByZero("zero denominator in polynomial scalar")
        ic = _ptrim(ic)
        if not ic:
            return _FP_ZERO
        if d < 0:
            ic = _pneg(ic)
            d = -d
        g = _pcontent(ic)
        g = gcd(g, d)
        if g > 1:
            ic = tuple(x // g for x in ic)
            d //= g
        return cls._raw(ic, d)

    @classmethod
    def variable(cls):
        return _FP_F

    @classmethod
    def one(cls):
        return _FP_ONE

    @classmethod
    def zero(cls):
        return _FP_ZERO

    @classmethod
    def from_text(cls, text):
        return cls._build(_parse_int_poly(text), 1)

    # -- properties ---------------------------------------------------------

    @property
    def coefficients(self):
        return tuple(Fraction(x, self._d) for x in self._ic)

    @property
    def degree(self):
        """Degree, with -1 for the zero polynomial."""
        return len(self._ic) - 1

    @property
    def is_zero(self):
        return not self._ic

    @property
    def leading_coefficient(self):
        if not self._ic:
            return Fraction(0)
        return Fraction(self._ic[-1], self._d)

    @property
    def is_monic(self):
        return bool(self._ic) and self._ic[-1] == self._d

    def coefficient(self, k):
        if 0 <= k < len(self._ic):
            return Fraction(self._ic[k], self._d)
        return Fraction(0)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = _as_fpoly(other)
        if other is NotImplemented:
            return NotImplemented
        if self._d == other._d:
            return FPolynomial._build(_padd(self._ic, other._ic), self._d)
        return FPolynomial._build(
            _padd(_pscale(self._ic, other._d), _pscale(other._ic, self._d)),
            self._d * other._d,
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_fpoly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        if not self._ic:
            return self
        return FPolynomial._raw(_pneg(self._ic), self._d)

    def __mul__(self, other):
        other = _as_fpoly(other)
        if other is NotImplemented:
            return NotImplemented
        return FPolynomial._build(_pmul(self._ic, other._ic), self._d * other._d)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = _FP_ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def divmod(self, other):
        """Quotient and remainder over Q."""
        if other.is_zero:
            raise DivisionByZero("polynomial division by zero")
        q = _FP_ZERO
        r = self
        while not r.is_zero and r.degree >= other.degree:
            k = r.degree - other.degree
            c = r.leading_coefficient / other.leading_coefficient
            t = FPolynomial._build(
                (0,) * k + (c.numerator,), c.denominator)
            q = q + t
            r = r - t * other
        return q, r

    def gcd(self, other):
        """Monic gcd over Q."""
        if self.is_zero:
            return other.monic() if not other.is_zero else _FP_ZERO
        if other.is_zero:
            return self.monic()
        _, pa = _psplit(self._ic)
        _, pb = _psplit(other._ic)
        g = _pp_gcd(pa, pb)
        return FPolynomial._build(g, 1).monic()

    def monic(self):
        if self.is_zero or self.is_monic:
            return self
        return FPolynomial._build(self._ic, self._ic[-1])

    def derivative(self):
        if len(self._ic) <= 1:
            return _FP_ZERO
        return FPolynomial._build(
            tuple(k * x for k, x in enumerate(self._ic))[1:], self._d)

    def eval(self, x):
        """Exact evaluation at a Fraction (or int)."""
        x = Fraction(x)
        acc = Fraction(0)
        for coef in reversed(self._ic):
            acc = acc * x + coef
        return acc / self._d

    # -- comparisons / hashing ----------------------------------------------

    def __eq__(self, other):
        other = _as_fpoly(other)
        if other is NotImplemented:
            return NotImplemented
        return self._ic == other._ic and self._d == other._d

    def __hash__(self):
        return hash((self._ic, self._d))

    def __bool__(self):
        return bool(self._ic)

    def __repr__(self):
        return "FPolynomial(%s)" % str(self)

    def __str__(self):
        body = _render_int_poly(self._ic)
        if self._d == 1:
            return body
        if _is_atom(self._ic):
            return "%s/%d" % (body, self._d)
        return "(%s)/%d" % (body, self._d)


def _coeffs_to_int_form(coefficients):
    fracs = [Fraction(c) for c in coefficients]
    if not fracs:
        return (), 1
    d = 1
    for c in fracs:
        d = d * c.denominator // gcd(d, c.denominator)
    ic = _ptrim([c.numerator * (d // c.denominator) for c in fracs])
    if not ic:
        return (), 1
    g = gcd(_pcontent(ic), d)
    if g > 1:
        ic = tuple(x // g for x in ic)
        d //= g
    return ic, d


def _as_fpoly(x):
    if isinstance(x, FPolynomial):
        return x
    if isinstance(x, int):
        return FPolynomial._build((x,), 1)
    if isinstance(x, Fraction):
        return FPolynomial._build((x.numerator,), x.denominator)
    return NotImplemented


_FP_ZERO = FPolynomial._raw((), 1)
_FP_ONE = FPolynomial._raw((1,), 1)
_FP_F = FPolynomial._raw((0, 1), 1)


# ---------------------------------------------------------------------------
# FRational
# ---------------------------------------------------------------------------

class FRational:
    """Element of Q(f) in canonical form.

    Internally ``(np, nd, dp)``: the value is ``(np/nd) / (dp/lc(dp))``
    where ``np`` is an integer polynomial carrying the sign, ``nd`` a
    positive integer with gcd(content(np), nd) = 1, and ``dp`` a primitive
    positive-lead integer polynomial coprime to ``np``.  The exposed
    denominator is therefore always monic, so equality of values is
    equality of representations.
    """

    __slots__ = ("_np", "_nd", "_dp")

    def __init__(self, num=0, den=1):
        num = _as_fpoly(num)
        den = _as_fpoly(den)
        if num is NotImplemented or den is NotImplemented:
            raise TypeError("FRational expects polynomial-like arguments")
        v = _normalize(num._ic, num._d, den._ic, den._d)
        self._np, self._nd, self._dp = v

    @classmethod
    def _raw(cls, np, nd, dp):
        self = object.__new__(cls)
        self._np = np
        self._nd = nd
        self._dp = dp
        return self

    # -- constructors --------------------------------------------------------

    @classmethod
    def from_int(cls, k):
        if k == 0:
            return FR_ZERO
        if k == 1:
            return FR_ONE
        return cls._raw((k,), 1, (1,))

    @classmethod
    def from_fraction(cls, q):
        q = Fraction(q)
        if not q:
            return FR_ZERO
        return cls._raw((q.numerator,), q.denominator, (1,))

    @classmethod
    def variable(cls):
        return FR_F

    @classmethod
    def poly(cls, int_coeffs, den=1):
        """Polynomial value from ascending integer (or Fraction) coefficients."""
        return cls(FPolynomial(int_coeffs), _as_fpoly(den))

    @classmethod
    def from_text(cls, text):
        """Parse the canonical text form, e.g. ``"(f^2+f+1)/24"``."""
        text = text.strip()
        depth = 0
        split = -1
        for i, ch in enumerate(text):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch == "/" and depth == 0:
                split = i
                break
        if split < 0:
            return cls(FPolynomial._build(_parse_int_poly(text), 1), _FP_ONE)
        num = FPolynomial._build(_parse_int_poly(text[:split]), 1)
        den = FPolynomial._build(_parse_int_poly(text[split + 1:]), 1)
        return cls(num, den)

    # -- views ---------------------------------------------------------------

    @property
    def num(self):
        return FPolynomial._build(self._np, self._nd)

    @property
    def den(self):
        """Monic denominator."""
        return FPolynomial._raw(self._dp, self._dp[-1])

    @property
    def is_zero(self):
        return not self._np

    @property
    def is_constant(self):
        return len(self._np) <= 1 and len(self._dp) == 1

    def as_fraction(self):
        """The value as a Fraction; only valid for constants."""
        if len(self._dp) != 1 or len(self._np) > 1:
            raise ValueError("not a constant: %s" % self)
        if not self._np:
            return Fraction(0)
        return Fraction(self._np[0], self._nd * self._dp[0])

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        other = _as_frational(other)
        if other is NotImplemented:
            return NotImplemented
        if not self._np:
            return other
        if not other._np:
            return self
        if self._dp == other._dp:
            num = _padd(_pscale(self._np, other._nd), _pscale(other._np, self._nd))
            return _from_raw(num, self._nd * other._nd, self._dp, self._dp[-1])
        lc1 = self._dp[-1]
        lc2 = other._dp[-1]
        a = _pscale(_pmul(self._np, other._dp), other._nd * lc1)
        b = _pscale(_pmul(other._np, self._dp), self._nd * lc2)
        return _from_raw(_padd(a, b), self._nd * other._nd * lc1 * lc2,
                         _pmul(self._dp, other._dp), lc1 * lc2)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_frational(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        if not self._np:
            return self
        return FRational._raw(_pneg(self._np), self._nd, self._dp)

    def __mul__(self, other):
        other = _as_frational(other)
        if other is NotImplemented:
            return NotImplemented
        if not self._np or not other._np:
            return FR_ZERO
        return _from_raw(_pmul(self._np, other._np), self._nd * other._nd,
                         _pmul(self._dp, other._dp), self._dp[-1] * other._dp[-1])

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_frational(other)
        if other is NotImplemented:
            return NotImplemented
        if not other._np:
            raise DivisionByZero("division by zero in Q(f)")
        if not self._np:
            return FR_ZERO
        return _from_raw(_pmul(self._np, other._dp), self._nd * other._dp[-1],
                         _pmul(self._dp, other._np), self._dp[-1] * other._nd)

    def __rtruediv__(self, other):
        other = _as_frational(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def inverse(self):
        return FR_ONE / self

    def __pow__(self, k):
        if k < 0:
            return (FR_ONE / self) ** (-k)
        out = FR_ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def derivative(self):
        """d/df by the quotient rule, normalized."""
        if not self._np or (len(self._np) == 1 and len(self._dp) == 1):
            return FR_ZERO
        dn = _ptrim(tuple(k * x for k, x in enumerate(self._np))[1:])
        dd = _ptrim(tuple(k * x for k, x in enumerate(self._dp))[1:])
        num = _padd(_pmul(dn, self._dp), _pneg(_pmul(self._np, dd)))
        return _from_raw(num, self._nd, _pmul(self._dp, self._dp), self._dp[-1])

    def evaluate(self, f0):
        """Exact evaluation at a rational framing value."""
        f0 = Fraction(f0)
        den = _peval_frac(self._dp, f0)
        if den == 0:
            raise PoleAtFraming(
                "denominator %s vanishes at f = %s" % (self.den, f0))
        num = _peval_frac(self._np, f0)
        return (num * self._dp[-1]) / (self._nd * den)

    # -- text ----------------------------------------------------------------

    def as_text(self):
        """Canonical text form with integer-coefficient polynomials."""
        if not self._np:
            return "0"
        num_ic = _pscale(self._np, self._dp[-1])
        den_ic = _pscale(self._dp, self._nd)
        g = gcd(_pcontent(num_ic), _pcontent(den_ic))
        if g > 1:
            num_ic = tuple(x // g for x in num_ic)
            den_ic = tuple(x // g for x in den_ic)
        num_txt = _render_int_poly(num_ic)
        if den_ic == (1,):
            return num_txt
        if not _is_atom(num_ic):
            num_txt = "(%s)" % num_txt
        den_txt = _render_int_poly(den_ic)
        if not _is_atom(den_ic) or (len(den_ic) > 1 and den_ic[-1] != 1):
            den_txt = "(%s)" % den_txt
        return "%s/%s" % (num_txt, den_txt)

    # -- comparisons / hashing -------------------------------------------------

    def __eq__(self, other):
        other = _as_frational(other)
        if other is NotImplemented:
            return NotImplemented
        return (self._np == other._np and self._nd == other._nd
                and self._dp == other._dp)

    def __hash__(self):
        return hash((self._np, self._nd, self._dp))

    def __bool__(self):
        return bool(self._np)

    def __repr__(self):
        return "FRational(%r)" % self.as_text()

    def __str__(self):
        return self.as_text()


def _peval_frac(ic, x):
    acc = Fraction(0)
    for coef in reversed(ic):
        acc = acc * x + coef
    return acc


def _normalize(nic, nd, dic, dd):
    """Reduce ((nic/nd) / (dic/dd)) to the canonical (np, nd, dp) triple."""
    dic = _ptrim(dic)
    if not dic:
        raise DivisionByZero("zero denominator in Q(f)")
    nic = _ptrim(nic)
    if not nic:
        return (), 1, (1,)
    cn, pn = _psplit(nic)
    cd, pd = _psplit(dic)
    if pd != (1,) and pn != (1,):
        g = _pp_gcd(pn, pd)
        if g != (1,):
            pn = _pdivexact(pn, g)
            pd = _pdivexact(pd, g)
    # value = (cn*dd)/(nd*cd) * pn/pd ; the stored triple reads back as
    # (np/nd) * lc(dp) / dp, so divide the scalar by lc(pd)
    num_s = cn * dd
    den_s = nd * cd * pd[-1]
    if den_s < 0:
        num_s, den_s = -num_s, -den_s
    g = gcd(abs(num_s), den_s)
    if g > 1:
        num_s //= g
        den_s //= g
    return _pscale(pn, num_s), den_s, pd


def _from_raw(nic, nd, dic, dd):
    v = _normalize(nic, nd, dic, dd)
    return FRational._raw(*v)


def _as_frational(x):
    if isinstance(x, FRational):
        return x
    if isinstance(x, int):
        return FRational.from_int(x)
    if isinstance(x, Fraction):
        return FRational.from_fraction(x)
    if isinstance(x, FPolynomial):
        return FRational(x, _FP_ONE)
    return NotImplemented


FR_ZERO = FRational._raw((), 1, (1,))
FR_ONE = FRational._raw((1,), 1, (1,))
FR_F = FRational._raw((0, 1), 1, (1,))
FR_F1 = FRational._raw((1, 1), 1, (1,))  # f + 1
