"""Polynomial string syntax: names, integer coefficients, + - * ^ and parentheses."""

from __future__ import annotations

import ast


class ParseError(ValueError):
    pass


def _tree(s: str):
    try:
        return ast.parse(s.replace("^", "**").strip(), mode="eval").body
    except SyntaxError as e:
        raise ParseError(f"cannot parse {s!r}: {e.msg}") from None


def _walk(node, leaf, ops):
    add, mul, neg, pw, div = ops
    if isinstance(node, ast.BinOp):
        a = _walk(node.left, leaf, ops)
        if isinstance(node.op, ast.Pow):
            if not isinstance(node.right, ast.Constant) or not isinstance(node.right.value, int):
                raise ParseError("exponents must be integer literals")
            return pw(a, node.right.value)
        b = _walk(node.right, leaf, ops)
        if isinstance(node.op, ast.Add):
            return add(a, b)
        if isinstance(node.op, ast.Sub):
            return add(a, neg(b))
        if isinstance(node.op, ast.Mult):
            return mul(a, b)
        if isinstance(node.op, ast.Div) and div is not None:
            return div(a, b)
        raise ParseError(f"unsupported operator {type(node.op).__name__}")
    if isinstance(node, ast.UnaryOp):
        v = _walk(node.operand, leaf, ops)
        if isinstance(node.op, ast.USub):
            return neg(v)
        if isinstance(node.op, ast.UAdd):
            return v
        raise ParseError("unsupported unary operator")
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return leaf(node.value)
    if isinstance(node, ast.Name):
        return leaf(node.id)
    raise ParseError(f"unsupported syntax: {ast.dump(node)}")


def parse_scalar(s: str, field):
    """Parse an element of ``field`` (transcendental names allowed, '/' allowed)."""

    def leaf(x):
        if isinstance(x, int):
            return field(x)
        if x not in field.names:
            raise ParseError(f"unknown name {x!r}")
        return field.gen(x)

    return _walk(_tree(s), leaf, (lambda a, b: a + b, lambda a, b: a * b, lambda a: -a,
                                  lambda a, e: a ** e, lambda a, b: a / b))


def parse_poly(s: str, ring):
    """Parse a polynomial of ``ring`` (a PolyRing); field transcendentals act as scalars."""
    field = ring.field

    def leaf(x):
        if isinstance(x, int):
            return ring.const(field(x))
        if x in ring.names:
            return ring.var(x)
        if x in field.names:
            return ring.const(field.gen(x))
        raise ParseError(f"unknown name {x!r}")

    return _walk(_tree(s), leaf, (lambda a, b: a + b, lambda a, b: a * b, lambda a: -a,
                                  lambda a, e: a ** e, None))
