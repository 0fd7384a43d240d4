"""Sparse multivariate polynomials over Q(i)."""
from __future__ import annotations

import heapq

from . import kernels
from .coeff import GaussianRational, ONE, coerce, conjugate
from .symbols import (
    GUARD, SLOT_BITS, SLOT_MASK, Symbol, by_index, grlex_key, pack, total_degree, unpack,
)

_SCALAR_TYPES = (int, GaussianRational)


def _is_scalar(v) -> bool:
    return isinstance(v, _SCALAR_TYPES) or type(v).__name__ in ("mpq", "mpz", "Fraction")


class Polynomial:
    """Immutable sparse polynomial: packed monomial -> nonzero coefficient."""

    __slots__ = ("terms", "_hash", "_mask")

    def __init__(self, terms: dict | None = None):
        self.terms = {} if terms is None else terms
        self._hash = None
        self._mask = None

    # -- construction -------------------------------------------------------
    @classmethod
    def constant(cls, c) -> "Polynomial":
        c = coerce(c)
        return cls({0: c}) if c else cls()

    @classmethod
    def variable(cls, sym: Symbol, e: int = 1) -> "Polynomial":
        return cls({e << sym.shift: ONE})

    @classmethod
    def from_terms(cls, terms: dict) -> "Polynomial":
        return cls({m: c for m, c in terms.items() if c})

    # -- queries ------------------------------------------------------------
    def __len__(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def constant_value(self):
        return self.terms.get(0, coerce(0))

    def is_real(self) -> bool:
        return not any(isinstance(c, GaussianRational) for c in self.terms.values())

    @property
    def slot_mask(self) -> int:
        """Bitmask with bit k set when symbol k occurs."""
        if self._mask is None:
            acc = 0
            for m in self.terms:
                acc |= m
            mask = 0
            k = 0
            while acc:
                if acc & SLOT_MASK:
                    mask |= 1 << k
                acc >>= SLOT_BITS
                k += 1
            self._mask = mask
        return self._mask

    def slots(self) -> list[int]:
        mask = self.slot_mask
        out = []
        k = 0
        while mask:
            if mask & 1:
                out.append(k)
            mask >>= 1
            k += 1
        return out

    def symbols(self) -> list[Symbol]:
        return [by_index(k) for k in self.slots()]

    def has(self, sym: Symbol) -> bool:
        return bool(self.slot_mask >> sym.index & 1)

    def degree(self, sym: Symbol) -> int:
        if not self.terms:
            return -1
        sh = sym.shift
        return max((m >> sh) & SLOT_MASK for m in self.terms)

    def degree_in(self, syms) -> int:
        """Total degree in the given subset of symbols."""
        if not self.terms:
            return -1
        shifts = [s.shift for s in syms]
        return max(sum((m >> sh) & SLOT_MASK for sh in shifts) for m in self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(total_degree(m) for m in self.terms)

    def leading_term(self):
        """(monomial, coefficient) of the graded-lex leading term."""
        m = max(self.terms, key=grlex_key)
        return m, self.terms[m]

    def leading_coefficient(self):
        return self.leading_term()[1]

    # -- arithmetic ---------------------------------------------------------
    def __neg__(self) -> "Polynomial":
        return Polynomial({m: -c for m, c in self.terms.items()})

    def __add__(self, o) -> "Polynomial":
        if not isinstance(o, Polynomial):
            if not _is_scalar(o):
                return NotImplemented
            o = Polynomial.constant(o)
        if len(self.terms) < len(o.terms):
            a, b = o.terms, self.terms
        else:
            a, b = self.terms, o.terms
        out = dict(a)
        kernels.add_scaled(out, b, ONE)
        return Polynomial(out)

    __radd__ = __add__

    def __sub__(self, o) -> "Polynomial":
        if not isinstance(o, Polynomial):
            if not _is_scalar(o):
                return NotImplemented
            o = Polynomial.constant(o)
        out = dict(self.terms)
        kernels.add_scaled(out, o.terms, -ONE)
        return Polynomial(out)

    def __rsub__(self, o) -> "Polynomial":
        return (-self) + o

    def __mul__(self, o) -> "Polynomial":
        if isinstance(o, Polynomial):
            if not self.terms or not o.terms:
                return Polynomial()
            if len(o.terms) == 1:
                (mo, co), = o.terms.items()
                if mo == 0:
                    return self.scale(co)
                return Polynomial({m + mo: c * co for m, c in self.terms.items()})
            if len(self.terms) == 1:
                return o * self
            return Polynomial(kernels.mul_terms(self.terms, o.terms))
        if not _is_scalar(o):
            return NotImplemented
        return self.scale(o)

    __rmul__ = __mul__

    def scale(self, c) -> "Polynomial":
        c = coerce(c)
        if not c:
            return Polynomial()
        if c == 1:
            return self
        return Polynomial({m: v * c for m, v in self.terms.items()})

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        if k == 0:
            return Polynomial.constant(1)
        if len(self.terms) == 1:
            (m, c), = self.terms.items()
            return Polynomial({m * k: c ** k})
        out = self
        for _ in range(k - 1):
            out = out * self
        return out

    def mul_monomial(self, mono: int, c=ONE) -> "Polynomial":
        return Polynomial({m + mono: v * c for m, v in self.terms.items()})

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        lc = self.leading_coefficient()
        if lc == 1:
            return self
        inv = 1 / lc
        return Polynomial({m: c * inv for m, c in self.terms.items()})

    def conjugate(self) -> "Polynomial":
        return Polynomial({m: conjugate(c) for m, c in self.terms.items()})

    # -- comparison ---------------------------------------------------------
    def __eq__(self, o) -> bool:
        if isinstance(o, Polynomial):
            return self.terms == o.terms
        if _is_scalar(o):
            return self.terms == Polynomial.constant(o).terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- structure ----------------------------------------------------------
    def diff(self, sym: Symbol) -> "Polynomial":
        sh = sym.shift
        unit = 1 << sh
        out = {}
        for m, c in self.terms.items():
            e = (m >> sh) & SLOT_MASK
            if e:
                out[m - unit] = c * e
        return Polynomial(out)

    def collect(self, sym: Symbol) -> dict[int, "Polynomial"]:
        """Coefficients with respect to ``sym``: exponent -> polynomial free of sym."""
        sh = sym.shift
        parts: dict[int, dict] = {}
        for m, c in self.terms.items():
            e = (m >> sh) & SLOT_MASK
            parts.setdefault(e, {})[m - (e << sh)] = c
        return {e: Polynomial(t) for e, t in parts.items()}

    @classmethod
    def from_collected(cls, parts: dict[int, "Polynomial"], sym: Symbol) -> "Polynomial":
        out = {}
        sh = sym.shift
        for e, p in parts.items():
            off = e << sh
            for m, c in p.terms.items():
                out[m + off] = c
        return cls(out)

    def monomial_content(self) -> int:
        """Largest monomial dividing every term."""
        it = iter(self.terms)
        try:
            first = next(it)
        except StopIteration:
            return 0
        mins = unpack(first)
        for m in it:
            if not mins:
                break
            for k in list(mins):
                e = (m >> (SLOT_BITS * k)) & SLOT_MASK
                if e < mins[k]:
                    if e == 0:
                        del mins[k]
                    else:
                        mins[k] = e
        return pack(mins)

    def div_monomial(self, mono: int) -> "Polynomial":
        return Polynomial({m - mono: c for m, c in self.terms.items()})

    def exact_div(self, other: "Polynomial") -> "Polynomial | None":
        """Quotient when ``other`` divides ``self`` exactly, else None."""
        if not other.terms:
            raise ZeroDivisionError("polynomial division by zero")
        if not self.terms:
            return Polynomial()
        if len(other.terms) == 1:
            (mo, co), = other.terms.items()
            if mo == 0:
                return self.scale(1 / co)
            for m in self.terms:
                if ((m | GUARD) - mo) & GUARD != GUARD:
                    return None
            inv = 1 / co
            return Polynomial({m - mo: c * inv for m, c in self.terms.items()})
        # quick rejections on the extreme monomials of the internal order
        lmb = max(other.terms)
        lma = max(self.terms)
        if ((lma | GUARD) - lmb) & GUARD != GUARD:
            return None
        tmb = min(other.terms)
        tma = min(self.terms)
        if ((tma | GUARD) - tmb) & GUARD != GUARD:
            return None
        bound = _degree_bound(self.terms, other.terms)
        if bound is None:
            return None
        inv = 1 / other.terms[lmb]
        rest = [(m, c) for m, c in other.terms.items() if m != lmb]
        rem = dict(self.terms)
        heap = [-m for m in rem]
        heapq.heapify(heap)
        quo = {}
        pop = heapq.heappop
        push = heapq.heappush
        while heap:
            m = -pop(heap)
            c = rem.pop(m, None)
            if not c:
                continue
            if ((m | GUARD) - lmb) & GUARD != GUARD:
                return None
            qm = m - lmb
            if ((bound | GUARD) - qm) & GUARD != GUARD:
                return None
            qc = c * inv
            quo[qm] = qc
            for mb, cb in rest:
                mm = qm + mb
                old = rem.get(mm)
                if old is None:
                    rem[mm] = -qc * cb
                    push(heap, -mm)
                else:
                    rem[mm] = old - qc * cb
        return Polynomial(quo)

    def substitute_constants(self, values: dict) -> "Polynomial":
        """Substitute exact constants for some symbols (Symbol -> coefficient)."""
        if not values:
            return self
        items = [(s.shift, coerce(v)) for s, v in values.items()]
        keep = ~sum(SLOT_MASK << sh for sh, _ in items)
        cache: dict = {}
        out: dict = {}
        for m, c in self.terms.items():
            val = c
            for sh, v in items:
                e = (m >> sh) & SLOT_MASK
                if e:
                    key = (sh, e)
                    pw = cache.get(key)
                    if pw is None:
                        pw = cache[key] = v ** e
                    val = val * pw
            if val:
                mm = m & keep
                old = out.get(mm)
                out[mm] = val if old is None else old + val
        return Polynomial({m: c for m, c in out.items() if c})

    def coefficients(self):
        return self.terms.values()

    def sorted_terms(self):
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda mc: grlex_key(mc[0]), reverse=True)

    def __repr__(self) -> str:
        from .text import format_poly
        return f"Polynomial({format_poly(self)})"

    def __str__(self) -> str:
        from .text import format_poly
        return format_poly(self)


def _max_degrees(terms) -> dict[int, int]:
    out: dict[int, int] = {}
    for m in terms:
        k = 0
        while m:
            e = m & SLOT_MASK
            if e and e > out.get(k, 0):
                out[k] = e
            m >>= SLOT_BITS
            k += 1
    return out


def _degree_bound(a_terms, b_terms) -> int | None:
    """Slot-wise degA - degB as a monomial, or None if some slot is negative."""
    da = _max_degrees(a_terms)
    db = _max_degrees(b_terms)
    out = {}
    for k, e in db.items():
        if da.get(k, 0) < e:
            return None
    for k, e in da.items():
        d = e - db.get(k, 0)
        if d:
            out[k] = d
    return pack(out)


ZERO_POLY = Polynomial()
ONE_POLY = Polynomial.constant(1)
