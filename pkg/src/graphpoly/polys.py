"""Dense polynomial helpers over any coefficient type (int, Fraction, complex).

Polynomials are plain lists, index = degree, trailing zeros trimmed.
"""

from __future__ import annotations


def trim(coeffs: list) -> list:
    out = list(coeffs)
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def poly_add(a: list, b: list) -> list:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = out[i] + c
    return trim(out)


def poly_sub(a: list, b: list) -> list:
    return poly_add(a, [-c for c in b])


def poly_mul(a: list, b: list) -> list:
    if not a or not b:
        return [0]
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca == 0:
            continue
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return trim(out)


def poly_eval(coeffs: list, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc
