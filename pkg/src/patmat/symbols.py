"""The three-symbol alphabet {0, *, ?} and its arithmetic.

`0` stands for an entry fixed at zero, `*` for an entry that is nonzero
but otherwise unknown, and `?` for a completely arbitrary entry.  Addition
and multiplication are defined so that the symbol of a sum/product is
consistent with every numeric value the operands may take: zero plus
anything keeps the other symbol, two nonzeros may cancel (hence * + * = ?),
zero annihilates products, and a product of two nonzeros is nonzero.
"""

from __future__ import annotations

import enum

__all__ = ["Symbol", "ZERO", "STAR", "QUEST", "add_symbol", "mul_symbol"]


class Symbol(enum.Enum):
    ZERO = "0"
    STAR = "*"
    QUEST = "?"

    @property
    def token(self) -> str:
        return self.value

    @classmethod
    def from_token(cls, token: str) -> "Symbol":
        try:
            return cls(token)
        except ValueError:
            raise ValueError(f"not a pattern symbol: {token!r}") from None

    def __repr__(self) -> str:  # compact in test diffs
        return f"<{self.value}>"


ZERO = Symbol.ZERO
STAR = Symbol.STAR
QUEST = Symbol.QUEST

# Addition table: zero is the identity, two nonzeros may cancel.
_ADD = {
    (ZERO, ZERO): ZERO,
    (ZERO, STAR): STAR,
    (ZERO, QUEST): QUEST,
    (STAR, ZERO): STAR,
    (STAR, STAR): QUEST,
    (STAR, QUEST): QUEST,
    (QUEST, ZERO): QUEST,
    (QUEST, STAR): QUEST,
    (QUEST, QUEST): QUEST,
}

# Multiplication table: zero absorbs, * is the identity.
_MUL = {
    (ZERO, ZERO): ZERO,
    (ZERO, STAR): ZERO,
    (ZERO, QUEST): ZERO,
    (STAR, ZERO): ZERO,
    (STAR, STAR): STAR,
    (STAR, QUEST): QUEST,
    (QUEST, ZERO): ZERO,
    (QUEST, STAR): QUEST,
    (QUEST, QUEST): QUEST,
}


def add_symbol(a: Symbol, b: Symbol) -> Symbol:
    """Symbol of x + y for x admitted by `a` and y admitted by `b`."""
    return _ADD[a, b]


def mul_symbol(a: Symbol, b: Symbol) -> Symbol:
    """Symbol of x * y for x admitted by `a` and y admitted by `b`."""
    return _MUL[a, b]
