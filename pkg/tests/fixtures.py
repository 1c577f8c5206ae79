"""Matrices transcribed by hand, shared across test modules."""

from __future__ import annotations

from ghrank import GhMatrix, field_of_order

# H(3, 3) with kernel 2, obtained from S^2 over GF(3) by one switch
SWITCHED_9 = [
    [0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 1, 2, 1, 2, 0, 0, 1, 2],
    [0, 2, 1, 0, 2, 1, 0, 2, 1],
    [0, 0, 0, 1, 1, 1, 2, 2, 2],
    [0, 1, 2, 2, 0, 1, 2, 0, 1],
    [0, 2, 1, 1, 0, 2, 2, 1, 0],
    [0, 0, 0, 2, 2, 2, 1, 1, 1],
    [0, 1, 2, 0, 1, 2, 1, 2, 0],
    [0, 2, 1, 2, 1, 0, 1, 0, 2],
]

# H(3, 2), rank 5
ORDER_6 = [
    [0, 0, 0, 0, 0, 0],
    [0, 0, 1, 1, 2, 2],
    [0, 1, 2, 0, 1, 2],
    [0, 1, 0, 2, 2, 1],
    [0, 2, 1, 2, 1, 0],
    [0, 2, 2, 1, 0, 1],
]

KERNEL_VECTOR_9 = (0, 0, 0, 1, 1, 1, 2, 2, 2)


def switched_9() -> GhMatrix:
    return GhMatrix(field_of_order(3), SWITCHED_9)


def order_6() -> GhMatrix:
    return GhMatrix(field_of_order(3), ORDER_6)
