"""Shared expression grammar.

Integer literals, the identifiers supplied by the caller, + - * / ^, unary
minus and parentheses.  Calls (such as ``O(t^5)``) and bracketed places
(``[x^2+x+1]``) are only accepted when the caller provides a handler.
Parsing goes through Python's ``ast`` after rewriting ``^`` to ``**``.
"""

import ast

from ..errors import ParseError


def _translate(text):
    out = []
    pos = []
    for i, ch in enumerate(text):
        if ch == "^":
            out.append("**")
            pos.extend([i, i])
        else:
            out.append(ch)
            pos.append(i)
    pos.append(len(text))
    return "".join(out), pos


def parse(text):
    """Parse to an ast expression node; returns (node, translated, position map)."""
    if not text.strip():
        raise ParseError("empty expression", "", 0)
    src, pos = _translate(text)
    try:
        tree = ast.parse(src.strip(), mode="eval")
    except SyntaxError as e:
        off = (e.offset or 1) - 1
        lead = len(src) - len(src.lstrip())
        i = min(max(off + lead, 0), len(src))
        orig = pos[i] if i < len(pos) else len(text)
        tok = text[orig:orig + 1] or "<end>"
        raise ParseError("syntax error", tok, orig) from None
    lead = len(src) - len(src.lstrip())
    return tree.body, src, [pos[min(i + lead, len(pos) - 1)] for i in range(len(src) + 1)]


class Evaluator:
    def __init__(self, text, env, const, calls=None, place=None):
        self.text = text
        self.env = env
        self.const = const
        self.calls = calls or {}
        self.place = place

    def fail(self, node, msg):
        seg = ast.get_source_segment(self.src, node) or ""
        seg = seg.replace("**", "^")
        raise ParseError(msg, seg, self.pos[node.col_offset])

    def run(self):
        node, self.src, self.pos = parse(self.text)
        return self.eval(node)

    def int_value(self, node):
        if isinstance(node, ast.Constant) and type(node.value) is int:
            return node.value
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = self.int_value(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and isinstance(node.op, (ast.Add, ast.Sub, ast.Mult)):
            a, b = self.int_value(node.left), self.int_value(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            return a * b
        self.fail(node, "exponent must be an integer")

    def eval(self, node):
        if isinstance(node, ast.Constant):
            if type(node.value) is not int:
                self.fail(node, "unexpected literal")
            return self.const(node.value)
        if isinstance(node, ast.Name):
            if node.id not in self.env:
                self.fail(node, "unknown identifier")
            return self.env[node.id]
        if isinstance(node, ast.UnaryOp):
            if isinstance(node.op, ast.USub):
                return -self.eval(node.operand)
            if isinstance(node.op, ast.UAdd):
                return self.eval(node.operand)
            self.fail(node, "unsupported operator")
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                base = self.eval(node.left)
                e = self.int_value(node.right)
                try:
                    return base ** e
                except ZeroDivisionError:
                    self.fail(node, "negative power of zero")
            a = self.eval(node.left)
            b = self.eval(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Div):
                try:
                    return a / b
                except ZeroDivisionError:
                    self.fail(node, "division by zero")
            self.fail(node, "unsupported operator")
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name):
            h = self.calls.get(node.func.id)
            if h is None or node.keywords:
                self.fail(node, "unsupported call")
            return h(self, node.args)
        if isinstance(node, ast.List) and self.place is not None:
            if len(node.elts) != 1:
                self.fail(node, "a place is written [poly] or [inf]")
            return self.place(self, node.elts[0])
        self.fail(node, "unsupported syntax")


def evaluate(text, env, const, calls=None, place=None):
    return Evaluator(text, env, const, calls, place).run()


def split_top(text, sep):
    """Split on sep outside parentheses/brackets."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts
