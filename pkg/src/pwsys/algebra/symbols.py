"""Global symbol table and packed monomial layout.

Monomials are stored as Python integers: the exponent of the symbol with
index ``k`` lives in bits ``[16k, 16k+16)``.  Bit 15 of every slot is a guard
bit that stays clear in valid monomials (exponents are below 2**15), which
makes slot-wise divisibility a single subtraction.
"""
from __future__ import annotations

SLOT_BITS = 16
SLOT_MASK = (1 << SLOT_BITS) - 1
MAX_EXPONENT = (1 << (SLOT_BITS - 1)) - 1
MAX_SLOTS = 64
GUARD = sum(1 << (SLOT_BITS * k + SLOT_BITS - 1) for k in range(MAX_SLOTS))

# fixed order: phase, time, parameters, degeneration symbol, then auxiliaries
BASE_NAMES = (
    "x", "y", "z", "w", "t",
    "a0", "a1", "a2", "a3", "a4",
    "eps_sqrt",
    # base symbols and radical auxiliaries used by the reduction pipelines
    "T", "r", "n", "rT", "rt1", "rtt", "rho",
    # fresh coefficient for negative controls
    "c",
    # parameters of the canonical target Hamiltonians
    "b0", "b1", "b2", "b3", "b4",
)


class Symbol:
    """A named indeterminate with a fixed position in the global order."""

    __slots__ = ("name", "index", "shift")

    def __init__(self, name: str, index: int):
        self.name = name
        self.index = index
        self.shift = SLOT_BITS * index

    @property
    def monomial(self) -> int:
        return 1 << self.shift

    def __repr__(self) -> str:
        return self.name

    def __lt__(self, other: "Symbol") -> bool:
        return self.index < other.index

    def __reduce__(self):
        return (symbol, (self.name,))


_TABLE: dict[str, Symbol] = {}
_BY_INDEX: list[Symbol] = []


def register(name: str) -> Symbol:
    """Return the symbol called ``name``, appending it to the order if new."""
    sym = _TABLE.get(name)
    if sym is not None:
        return sym
    if not name.isidentifier() or name == "I":
        raise ValueError(f"invalid symbol name {name!r}")
    if len(_BY_INDEX) >= MAX_SLOTS:
        raise ValueError("symbol table is full")
    sym = Symbol(name, len(_BY_INDEX))
    _TABLE[name] = sym
    _BY_INDEX.append(sym)
    return sym


def symbol(name: str) -> Symbol:
    try:
        return _TABLE[name]
    except KeyError:
        raise KeyError(f"unknown symbol {name!r}") from None


def symbols(names: str) -> tuple[Symbol, ...]:
    return tuple(symbol(n) for n in names.replace(",", " ").split())


def by_index(k: int) -> Symbol:
    return _BY_INDEX[k]


def table() -> tuple[Symbol, ...]:
    return tuple(_BY_INDEX)


for _n in BASE_NAMES:
    register(_n)

PHASE = symbols("x y z w")
TIME = symbol("t")
PARAMS = symbols("a0 a1 a2 a3 a4")
EPS_SQRT = symbol("eps_sqrt")


# -- monomial helpers -------------------------------------------------------

def exponent(m: int, sym: Symbol) -> int:
    return (m >> sym.shift) & SLOT_MASK


def unpack(m: int) -> dict[int, int]:
    """Slot index -> exponent for the nonzero slots of ``m``."""
    out = {}
    k = 0
    while m:
        e = m & SLOT_MASK
        if e:
            out[k] = e
        m >>= SLOT_BITS
        k += 1
    return out


def pack(exps: dict[int, int]) -> int:
    m = 0
    for k, e in exps.items():
        if e < 0 or e > MAX_EXPONENT:
            raise OverflowError(f"exponent {e} out of range")
        m |= e << (SLOT_BITS * k)
    return m


def total_degree(m: int) -> int:
    d = 0
    while m:
        d += m & SLOT_MASK
        m >>= SLOT_BITS
    return d


def divides(a: int, b: int) -> bool:
    """True when monomial ``a`` divides monomial ``b``."""
    return ((b | GUARD) - a) & GUARD == GUARD


def slots_of(m: int) -> int:
    """Bitmask of occupied slots of a monomial (bit k set for symbol k)."""
    mask = 0
    k = 0
    while m:
        if m & SLOT_MASK:
            mask |= 1 << k
        m >>= SLOT_BITS
        k += 1
    return mask


def grlex_key(m: int) -> tuple:
    """Sort key for graded lex with x the most significant symbol."""
    exps = []
    while m:
        exps.append(m & SLOT_MASK)
        m >>= SLOT_BITS
    exps.extend([0] * (len(_BY_INDEX) - len(exps)))
    return (sum(exps), tuple(exps))
