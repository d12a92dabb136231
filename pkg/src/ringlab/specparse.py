"""Parser for ring specs such as ``zmod:12`` or ``prod(gf:2^2,nilzero:3)``.

Grammar::

    spec    := "prod(" spec "," spec ")"
             | "zmod:" INT | "gf:" INT "^" INT | "gr:" INT "^" INT "," INT
             | "corbas:" INT "," INT "," INT | "mat:" INT "^" INT "," INT
             | "bell" | "nilzero:" INT ("," INT)*
"""

from __future__ import annotations

from .constructions import (
    make_bell_klein,
    make_corbas,
    make_galois_field,
    make_galois_ring,
    make_matrix_ring,
    make_nil_zero,
    make_zmod,
)
from .core import FiniteRing, check_size, direct_product


class RingSpecSyntaxError(ValueError):
    def __init__(self, message: str, text: str, position: int):
        self.text, self.position = text, position
        super().__init__(f"{message} at position {position} in {text!r}")


class _Parser:
    def __init__(self, text: str, max_size: int | None):
        self.text = text
        self.pos = 0
        self.max_size = max_size

    def error(self, message):
        raise RingSpecSyntaxError(message, self.text, self.pos)

    def peek(self, s: str) -> bool:
        return self.text.startswith(s, self.pos)

    def expect(self, s: str) -> None:
        if not self.peek(s):
            self.error(f"expected {s!r}")
        self.pos += len(s)

    def integer(self) -> int:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected an integer")
        return int(self.text[start:self.pos])

    def prime_power(self) -> tuple[int, int]:
        p = self.integer()
        self.expect("^")
        return p, self.integer()

    def ring(self) -> FiniteRing:
        cap = self.max_size
        if self.peek("prod("):
            self.expect("prod(")
            left = self.ring()
            self.expect(",")
            right = self.ring()
            self.expect(")")
            return direct_product(left, right, cap)
        if self.peek("zmod:"):
            self.expect("zmod:")
            n = self.integer()
            if n < 1:
                self.error("modulus must be positive")
            return make_zmod(n, cap)
        if self.peek("gf:"):
            self.expect("gf:")
            p, k = self.prime_power()
            self._positive(k)
            return make_galois_field(p, k, max_size=cap)
        if self.peek("gr:"):
            self.expect("gr:")
            p, k = self.prime_power()
            self.expect(",")
            d = self.integer()
            self._positive(k, d)
            return make_galois_ring(p, k, d, cap)
        if self.peek("corbas:"):
            self.expect("corbas:")
            p = self.integer()
            self.expect(",")
            k = self.integer()
            self.expect(",")
            s = self.integer()
            self._positive(k)
            return make_corbas(p, k, s, cap)
        if self.peek("mat:"):
            self.expect("mat:")
            p, k = self.prime_power()
            self.expect(",")
            n = self.integer()
            self._positive(k, n)
            return make_matrix_ring(p, k, n, cap)
        if self.peek("bell"):
            self.expect("bell")
            return make_bell_klein()
        if self.peek("nilzero:"):
            self.expect("nilzero:")
            orders = [self.integer()]
            while self.peek(",") and self.pos + 1 < len(self.text) and self.text[self.pos + 1].isdigit():
                self.expect(",")
                orders.append(self.integer())
            self._positive(*orders)
            return make_nil_zero(orders, cap)
        self.error("unknown ring family")

    def _positive(self, *values):
        if any(v < 1 for v in values):
            self.error("parameters must be positive")


def parse_ring_spec(text: str, max_size: int | None = None) -> FiniteRing:
    """Build the ring described by ``text``.

    Raises RingSpecSyntaxError, NotPrimeError or RingSizeError.
    """
    parser = _Parser(text.strip(), max_size)
    ring = parser.ring()
    if parser.pos != len(parser.text):
        parser.error("trailing input")
    check_size(ring.size, max_size)
    return ring
