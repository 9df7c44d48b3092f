"""Line-oriented text formats for Lie algebras and finite metric groups.

Lie algebra file::

    lie_algebra heis
    dim 3
    basis X Y Z
    bracket [X,Y] = 1*Z
    metric identity
    end

Finite metric group file::

    metric_group z2
    order 2
    elements e a
    table
    e a
    a e
    metric
    0 1
    1 0
    end

``#`` starts a comment.  Coefficients are integers or ``p/q``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from ..exactla import Mat
from ..finitegrp import FiniteMetricGroup, validate_group
from ..invariants import MetricTensor, NotPositiveDefiniteError
from ..liecore import LieAlgebra, validate


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.message, self.line, self.col = message, line, col
        super().__init__(f"line {line}, column {col}: {message}" if line else message)


class ValidationError(ValueError):
    def __init__(self, message: str, transcript: list[str]):
        self.transcript = transcript
        super().__init__(message + "".join(f"\n  {t}" for t in transcript))


@dataclass(frozen=True)
class LieFile:
    name: str
    algebra: LieAlgebra
    metric: MetricTensor | None


_RAT = r"[+-]?\d+(?:/\d+)?"
_ID = r"[A-Za-z_][A-Za-z0-9_']*"
_BRACKET = re.compile(rf"\[\s*({_ID})\s*,\s*({_ID})\s*\]\s*=\s*(.*)$")
_TERM = re.compile(rf"\s*(?:({_RAT})\s*\*\s*)?({_ID})\s*")


def _lines(text: str):
    """Yield (lineno, column_offset, content) for non-blank lines, comments stripped."""
    for no, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].rstrip()
        stripped = body.lstrip()
        if stripped:
            yield no, len(body) - len(stripped) + 1, stripped


def parse_rat(tok: str, line: int = 0, col: int = 0) -> Fraction:
    if not re.fullmatch(_RAT, tok):
        raise ParseError(f"expected a rational number, got {tok!r}", line, col)
    try:
        return Fraction(tok)
    except ZeroDivisionError:
        raise ParseError(f"zero denominator in {tok!r}", line, col) from None


def _rat_row(content: str, width: int, line: int, col: int) -> list[Fraction]:
    toks = content.split()
    if len(toks) != width:
        raise ParseError(f"expected {width} entries, got {len(toks)}", line, col)
    out = []
    pos = 0
    for t in toks:
        pos = content.index(t, pos)
        out.append(parse_rat(t, line, col + pos))
        pos += len(t)
    return out


def _parse_terms(rhs: str, index: dict[str, int], line: int, col: int) -> dict[int, Fraction]:
    rhs = rhs.strip()
    if re.fullmatch(r"[+-]?0+(?:/\d+)?", rhs):
        return {}
    out: dict[int, Fraction] = {}
    pos = 0
    first = True
    while pos < len(rhs):
        sign = Fraction(1)
        m = re.match(r"\s*([+-])\s*", rhs[pos:])
        if m:
            sign = Fraction(-1 if m.group(1) == "-" else 1)
            pos += m.end()
        elif not first:
            raise ParseError("expected '+' or '-' between terms", line, col + pos)
        m = _TERM.match(rhs, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot parse term {rhs[pos:]!r}", line, col + pos)
        coeff = parse_rat(m.group(1), line, col + pos) if m.group(1) else Fraction(1)
        ident = m.group(2)
        if ident not in index:
            raise ParseError(f"unknown basis element {ident!r}", line, col + m.start(2))
        k = index[ident]
        out[k] = out.get(k, Fraction(0)) + sign * coeff
        pos = m.end()
        first = False
    if first:
        raise ParseError("empty bracket value", line, col)
    return out


def parse_metric_rows(lines, n: int, start_line: int) -> MetricTensor:
    rows = []
    for _ in range(n):
        try:
            no, col, content = next(lines)
        except StopIteration:
            raise ParseError(f"metric needs {n} rows", start_line, 1) from None
        rows.append(_rat_row(content, n, no, col))
    try:
        return MetricTensor(Mat.from_rows(rows, cols=n))
    except NotPositiveDefiniteError as exc:
        raise ValidationError("invalid metric", [str(exc)]) from None


def parse_lie(text: str) -> LieFile:
    lines = _lines(text)
    name = None
    dim = None
    basis: list[str] | None = None
    sc: dict[tuple[int, int], dict[int, Fraction]] = {}
    metric = None
    seen_end = False
    for no, col, content in lines:
        kw, _, rest = content.partition(" ")
        rest = rest.strip()
        if name is None:
            if kw != "lie_algebra" or not rest:
                raise ParseError("file must start with 'lie_algebra <name>'", no, col)
            name = rest
            continue
        if kw == "dim":
            if dim is not None:
                raise ParseError("duplicate 'dim'", no, col)
            if not rest.isdigit():
                raise ParseError(f"dimension must be a non-negative integer, got {rest!r}", no, col + 4)
            dim = int(rest)
        elif kw == "basis":
            if dim is None:
                raise ParseError("'basis' before 'dim'", no, col)
            basis = rest.split()
            if len(basis) != dim:
                raise ParseError(f"basis lists {len(basis)} elements for dim {dim}", no, col)
            bad = [b for b in basis if not re.fullmatch(_ID, b)]
            if bad or len(set(basis)) != dim:
                raise ParseError("basis identifiers must be distinct names", no, col)
        elif kw == "bracket" or content.startswith("["):
            if basis is None:
                raise ParseError("bracket before 'basis'", no, col)
            body = rest if kw == "bracket" else content
            offset = col + (len(content) - len(body))
            m = _BRACKET.match(body)
            if not m:
                raise ParseError("expected '[A,B] = <terms>'", no, offset)
            index = {b: i for i, b in enumerate(basis)}
            a, b = m.group(1), m.group(2)
            for ident, start in ((a, m.start(1)), (b, m.start(2))):
                if ident not in index:
                    raise ParseError(f"unknown basis element {ident!r}", no, offset + start)
            i, j = index[a], index[b]
            if i >= j:
                raise ParseError(f"bracket [{a},{b}] must list the earlier basis element first", no, offset)
            if (i, j) in sc:
                raise ParseError(f"bracket [{a},{b}] given twice", no, offset)
            sc[(i, j)] = _parse_terms(m.group(3), index, no, offset + m.start(3))
        elif kw == "metric":
            if basis is None:
                raise ParseError("metric before 'basis'", no, col)
            if metric is not None:
                raise ParseError("duplicate metric block", no, col)
            if rest == "identity":
                metric = MetricTensor.identity(dim)
            elif rest == "rows":
                metric = parse_metric_rows(lines, dim, no)
            else:
                raise ParseError("expected 'metric identity' or 'metric rows'", no, col)
        elif kw == "end":
            seen_end = True
            break
        else:
            raise ParseError(f"unknown keyword {kw!r}", no, col)
    if name is None:
        raise ParseError("empty input")
    if basis is None:
        raise ParseError("missing 'dim'/'basis' declarations")
    if not seen_end:
        raise ParseError("missing 'end'")
    for no, col, _ in lines:
        raise ParseError("content after 'end'", no, col)
    g = LieAlgebra(dim, sc, basis)
    violations = validate(g)
    if violations:
        raise ValidationError(
            f"{name}: Jacobi identity fails",
            [
                f"[{basis[v.i]},[{basis[v.j]},{basis[v.k]}]] + cyclic = "
                + " ".join(str(x) for x in v.residual)
                for v in violations
            ],
        )
    return LieFile(name, g, metric)


def parse_metric_file(text: str, n: int) -> MetricTensor:
    """A standalone metric: 'metric identity', 'metric rows' plus rows, or just n rows."""
    lines = _lines(text)
    first = next(lines, None)
    if first is None:
        raise ParseError("empty metric file")
    no, col, content = first
    if content == "metric identity":
        return MetricTensor.identity(n)
    if content == "metric rows":
        return parse_metric_rows(lines, n, no)

    def chained():
        yield first
        yield from lines

    return parse_metric_rows(chained(), n, no)


def parse_fmg(text: str) -> FiniteMetricGroup:
    lines = _lines(text)
    name = order = elements = table = dist = None
    seen_end = False
    for no, col, content in lines:
        kw, _, rest = content.partition(" ")
        rest = rest.strip()
        if name is None:
            if kw != "metric_group" or not rest:
                raise ParseError("file must start with 'metric_group <name>'", no, col)
            name = rest
            continue
        if kw == "order":
            if not rest.isdigit() or int(rest) < 1:
                raise ParseError(f"order must be a positive integer, got {rest!r}", no, col)
            order = int(rest)
        elif kw == "elements":
            if order is None:
                raise ParseError("'elements' before 'order'", no, col)
            elements = rest.split()
            if len(elements) != order or len(set(elements)) != order:
                raise ParseError(f"need {order} distinct element names", no, col)
        elif kw == "table":
            if elements is None:
                raise ParseError("'table' before 'elements'", no, col)
            index = {e: i for i, e in enumerate(elements)}
            table = []
            for _ in range(order):
                try:
                    rno, rcol, row = next(lines)
                except StopIteration:
                    raise ParseError(f"table needs {order} rows", no, col) from None
                toks = row.split()
                if len(toks) != order:
                    raise ParseError(f"expected {order} entries, got {len(toks)}", rno, rcol)
                unknown = [t for t in toks if t not in index]
                if unknown:
                    raise ParseError(f"unknown element {unknown[0]!r}", rno, rcol + row.index(unknown[0]))
                table.append([index[t] for t in toks])
        elif kw == "metric":
            if elements is None:
                raise ParseError("'metric' before 'elements'", no, col)
            dist = []
            for _ in range(order):
                try:
                    rno, rcol, row = next(lines)
                except StopIteration:
                    raise ParseError(f"metric needs {order} rows", no, col) from None
                dist.append(_rat_row(row, order, rno, rcol))
        elif kw == "end":
            seen_end = True
            break
        else:
            raise ParseError(f"unknown keyword {kw!r}", no, col)
    if name is None:
        raise ParseError("empty input")
    if table is None or dist is None:
        raise ParseError("missing 'table' or 'metric' block")
    if not seen_end:
        raise ParseError("missing 'end'")
    for no, col, _ in lines:
        raise ParseError("content after 'end'", no, col)
    m = FiniteMetricGroup(elements, table, dist, 0, name)
    violations = validate_group(m)
    if violations:
        raise ValidationError(f"{name}: not a valid metric group", violations)
    return m


def detect_kind(text: str) -> str:
    for _, _, content in _lines(text):
        kw = content.split()[0]
        if kw == "lie_algebra":
            return "lie-algebra"
        if kw == "metric_group":
            return "finite-group"
        break
    raise ParseError("expected 'lie_algebra' or 'metric_group' header", 1, 1)


def serialize_lie(name: str, g: LieAlgebra, metric: MetricTensor | None = None) -> str:
    out = [f"lie_algebra {name}", f"dim {g.dim}", "basis " + " ".join(g.names)]
    for (i, j), coeffs in g.sc.items():
        terms = " + ".join(f"{c}*{g.names[k]}" for k, c in coeffs.items())
        out.append(f"bracket [{g.names[i]},{g.names[j]}] = {terms}")
    if metric is not None:
        if metric.q == Mat.identity(g.dim):
            out.append("metric identity")
        else:
            out.append("metric rows")
            out.extend(" ".join(str(x) for x in r) for r in metric.q.to_rows())
    out.append("end")
    return "\n".join(out) + "\n"


def serialize_fmg(m: FiniteMetricGroup) -> str:
    lab = m.labels
    if m.identity != 0:
        raise ValueError("the file format requires the identity to be the first element")
    out = [f"metric_group {m.name or 'group'}", f"order {m.order}", "elements " + " ".join(lab), "table"]
    out.extend(" ".join(lab[x] for x in r) for r in m.table)
    out.append("metric")
    out.extend(" ".join(str(x) for x in r) for r in m.dist)
    out.append("end")
    return "\n".join(out) + "\n"
