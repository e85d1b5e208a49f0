"""TSURF v1 text format.

::

    TSURF 1
    polygons <count>
    poly <id> <k> <x0> <y0> ... <x_{k-1}> <y_{k-1}>
    glue <p1> <e1> <p2> <e2>

Coordinates use the shortest round-trip decimal form, so a write/read cycle
is bit exact.  Each glued pair appears once, sorted lexicographically.
"""

from __future__ import annotations

from pathlib import Path

from .surface import TranslationSurface


class ParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def dumps(s: TranslationSurface) -> str:
    lines = ["TSURF 1", f"polygons {len(s.polygons)}"]
    for p, poly in enumerate(s.polygons):
        coords = " ".join(repr(float(c)) for pt in poly for c in pt)
        lines.append(f"poly {p} {len(poly)} {coords}")
    for (p, e), (q, f) in s.glue_pairs():
        lines.append(f"glue {p} {e} {q} {f}")
    return "\n".join(lines) + "\n"


def _ints(tokens, lineno):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(lineno, f"expected integers, got {' '.join(tokens)!r}") from None


def loads(text: str) -> TranslationSurface:
    rows = [(i + 1, ln.split()) for i, ln in enumerate(text.splitlines())]
    rows = [(i, toks) for i, toks in rows if toks]
    if not rows or rows[0][1] != ["TSURF", "1"]:
        raise ParseError(rows[0][0] if rows else 1, "missing 'TSURF 1' header")
    if len(rows) < 2 or rows[1][1][0] != "polygons" or len(rows[1][1]) != 2:
        raise ParseError(rows[1][0] if len(rows) > 1 else 2, "expected 'polygons <count>'")
    (count,) = _ints(rows[1][1][1:], rows[1][0])
    polys = {}
    pairs = []
    seen = set()
    for lineno, toks in rows[2:]:
        kind = toks[0]
        if kind == "poly":
            if len(toks) < 3:
                raise ParseError(lineno, "truncated poly line")
            pid, k = _ints(toks[1:3], lineno)
            if pid in polys:
                raise ParseError(lineno, f"duplicate polygon id {pid}")
            if len(toks) != 3 + 2 * k:
                raise ParseError(lineno, f"polygon {pid} declares {k} vertices but has {len(toks) - 3} coordinates")
            try:
                vals = [float(t) for t in toks[3:]]
            except ValueError:
                raise ParseError(lineno, "bad coordinate") from None
            polys[pid] = [(vals[2 * i], vals[2 * i + 1]) for i in range(k)]
        elif kind == "glue":
            if len(toks) != 5:
                raise ParseError(lineno, "glue needs four integers")
            p, e, q, f = _ints(toks[1:], lineno)
            for x in ((p, e), (q, f)):
                if x in seen:
                    raise ParseError(lineno, f"edge {x} glued twice")
                seen.add(x)
            pairs.append(((p, e), (q, f)))
        else:
            raise ParseError(lineno, f"unknown record {kind!r}")
    if sorted(polys) != list(range(count)):
        raise ParseError(rows[1][0], f"expected polygon ids 0..{count - 1}")
    for (p, e), (q, f) in pairs:
        for pid, edge in ((p, e), (q, f)):
            if pid not in polys or not 0 <= edge < len(polys[pid]):
                raise ParseError(rows[-1][0], f"glue refers to missing edge ({pid}, {edge})")
    return TranslationSurface.from_pairs([polys[i] for i in range(count)], pairs)


def write(s: TranslationSurface, path) -> None:
    Path(path).write_text(dumps(s))


def read(path) -> TranslationSurface:
    return loads(Path(path).read_text())
