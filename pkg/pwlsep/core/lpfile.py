# -*- coding: utf-8 -*-
# pwlsep is distributed under the terms of the (new) BSD License.

"""
Reading and writing MilpModel objects in the LP file format understood by
the common MILP solvers (CPLEX, Gurobi, HiGHS, SCIP, CBC).

Numbers are written as exact decimals when the rational allows it; other
rationals are written as floats with a warning, since the format has no
fraction syntax.
"""

import io
import re
import logging
from fractions import Fraction

from .model import MilpModel, Variable, LinearRow

logger = logging.getLogger(__name__)

TERMS_PER_LINE = 8

_HEADERS = {
    "maximize": "max",
    "maximum": "max",
    "max": "max",
    "minimize": "min",
    "minimum": "min",
    "min": "min",
    "subject to": "rows",
    "such that": "rows",
    "st": "rows",
    "s.t.": "rows",
    "bounds": "bounds",
    "bound": "bounds",
    "binaries": "binaries",
    "binary": "binaries",
    "bin": "binaries",
    "generals": "generals",
    "general": "generals",
    "end": "end",
}

_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<label>[A-Za-z_][\w.\[\]]*)\s*:"
    r"|(?P<sense><=|>=|=<|=>|=|<|>)"
    r"|(?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)"
    r"|(?P<sign>[-+])"
    r"|(?P<name>[A-Za-z_][\w.\[\]]*)"
    r")"
)

_SENSE_NAMES = {"<=": "<=", "=<": "<=", "<": "<=", ">=": ">=", "=>": ">=", ">": ">=", "=": "="}


## Writing


def format_number(value):
    """ format_number(value)

    Render a rational for an LP file: an integer or exact decimal when
    possible, else the float repr (and a warning is logged).
    """
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    den, twos, fives = value.denominator, 0, 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        logger.warning("Writing %s inexactly as %r." % (value, float(value)))
        return repr(float(value))
    digits = max(twos, fives)
    scaled = abs(value.numerator * 10 ** digits // value.denominator)
    text = str(scaled).rjust(digits + 1, "0")
    text = text[:-digits] + "." + text[-digits:]
    return ("-" if value < 0 else "") + text


def _expression(coeffs):
    """ Yield the terms of a linear expression, e.g. "+ 3 p_0_0_1".
    """
    first = True
    for name, c in coeffs.items():
        sign = "-" if c < 0 else "+"
        magnitude = abs(c)
        coef = "" if magnitude == 1 else format_number(magnitude) + " "
        if first:
            yield ("- " if c < 0 else "") + coef + name
        else:
            yield sign + " " + coef + name
        first = False


def _wrap(head, terms):
    lines, line = [], [head] if head else []
    for n, term in enumerate(terms):
        if n and n % TERMS_PER_LINE == 0:
            lines.append(" ".join(line))
            line = ["  "]
        line.append(term)
    lines.append(" ".join(line))
    return lines


def lp_format_text(model):
    """ lp_format_text(model)

    The LP file text of a MilpModel.
    """
    lines = ["\\ %s" % model.name]
    for key, value in model.metadata.items():
        if isinstance(value, Fraction):
            value = format_number(value)
        lines.append("\\ %s: %s" % (key, value))
    lines.append("Maximize" if model.sense == "max" else "Minimize")
    terms = list(_expression(model.objective)) or ["0 " + model.variables[0].name]
    lines.extend(" " + line for line in _wrap("obj:", terms))
    lines.append("Subject To")
    for row in model.rows:
        terms = list(_expression(row.coeffs))
        terms.append("%s %s" % (row.sense, format_number(row.rhs)))
        lines.extend(" " + line for line in _wrap(row.name + ":", terms))
    lines.append("Bounds")
    for var in model.variables:
        if var.kind == "binary":
            continue
        if var.lower is None and var.upper is None:
            lines.append(" %s free" % var.name)
        elif var.lower is None:
            lines.append(" -inf <= %s <= %s" % (var.name, format_number(var.upper)))
        elif var.upper is None:
            if var.lower != 0:
                lines.append(" %s >= %s" % (var.name, format_number(var.lower)))
        else:
            lines.append(
                " %s <= %s <= %s"
                % (format_number(var.lower), var.name, format_number(var.upper))
            )
    binaries = model.binaries
    if binaries:
        lines.append("Binaries")
        for n in range(0, len(binaries), TERMS_PER_LINE):
            lines.append(" " + " ".join(binaries[n : n + TERMS_PER_LINE]))
    lines.append("End")
    return "\n".join(lines) + "\n"


def export_lp_format(model, path):
    """ export_lp_format(model, path)

    Write the model in LP format to a filename or a text file object.
    """
    text = lp_format_text(model)
    if isinstance(path, str):
        with io.open(path, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        path.write(text)
    logger.info(
        "Exported model with %i variables and %i rows"
        % (len(model.variables), len(model.rows))
    )
    return path


## Reading


def _tokenize(text):
    tokens, pos = [], 0
    text = text.rstrip()
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None or match.end() == pos:
            raise ValueError("Cannot parse LP text near %r." % text[pos : pos + 20])
        kind = match.lastgroup
        tokens.append((kind, match.group(kind)))
        pos = match.end()
    return tokens


def _parse_expression(tokens, pos):
    """ Parse terms from tokens[pos:] up to a sense token or the end.
    Returns (coeffs, new position).
    """
    coeffs, sign, coef = {}, 1, None
    while pos < len(tokens):
        kind, value = tokens[pos]
        if kind in ("sense", "label"):
            break
        if kind == "sign":
            sign = sign * (-1 if value == "-" else 1)
        elif kind == "number":
            if coef is not None:
                raise ValueError("Two numbers in a row in LP expression.")
            coef = Fraction(value)
        elif kind == "name":
            c = sign * (1 if coef is None else coef)
            coeffs[value] = coeffs.get(value, 0) + c
            sign, coef = 1, None
        pos += 1
    if coef is not None:
        raise ValueError("Constant terms in LP expressions are not supported.")
    return coeffs, pos


def _parse_number(tokens, pos):
    sign = 1
    while pos < len(tokens) and tokens[pos][0] == "sign":
        sign *= -1 if tokens[pos][1] == "-" else 1
        pos += 1
    if pos >= len(tokens):
        raise ValueError("Expected a number at the end of LP text.")
    kind, value = tokens[pos]
    if kind == "name" and value.lower() in ("inf", "infinity"):
        return (None, pos + 1)
    if kind != "number":
        raise ValueError("Expected a number in LP text, got %r." % value)
    return sign * Fraction(value), pos + 1


def _parse_bound(line, bounds):
    tokens = _tokenize(line)
    if len(tokens) == 2 and tokens[0][0] == "name" and tokens[1][1].lower() == "free":
        bounds[tokens[0][1]] = (None, None)
        return
    names = [v for k, v in tokens if k == "name" and v.lower() not in ("inf", "infinity")]
    if len(names) != 1:
        raise ValueError("Cannot parse bound %r." % line.strip())
    name = names[0]
    lower, upper = bounds.get(name, (Fraction(0), None))
    if tokens[0] == ("name", name):
        sense = _SENSE_NAMES[tokens[1][1]]
        number, _ = _parse_number(tokens, 2)
        if sense == "<=":
            upper = number
        elif sense == ">=":
            lower = number
        else:
            lower = upper = number
    else:
        number, pos = _parse_number(tokens, 0)
        sense = _SENSE_NAMES[tokens[pos][1]]
        if sense == "<=":
            lower = number
        elif sense == ">=":
            upper = number
        else:
            lower = upper = number
        pos += 2
        if pos < len(tokens):
            sense = _SENSE_NAMES[tokens[pos][1]]
            number, _ = _parse_number(tokens, pos + 1)
            if sense == "<=":
                upper = number
            else:
                lower = number
    bounds[name] = (lower, upper)


def parse_lp_format(text):
    """ parse_lp_format(text)

    Parse LP file text into a MilpModel. Supports the subset written by
    export_lp_format: one objective, linear rows, bounds (including
    "free"), and binaries. Variables follow the LP default bounds
    [0, inf) unless declared otherwise.
    """
    sections = {}
    order = []
    sense = None
    current = None
    for raw in text.splitlines():
        line = raw.split("\\", 1)[0]
        key = line.strip().lower()
        if not key:
            continue
        if key in _HEADERS:
            current = _HEADERS[key]
            if current in ("max", "min"):
                sense = current
                current = "objective"
            if current == "end":
                break
            if current == "generals":
                raise ValueError("General integer variables are not supported.")
            sections.setdefault(current, [])
            continue
        if current is None:
            raise ValueError("LP text does not start with an objective section.")
        sections[current].append(line)
    if sense is None:
        raise ValueError("LP text has no Maximize/Minimize section.")

    def note(name):
        if name not in order:
            order.append(name)

    # Objective
    tokens = _tokenize(" ".join(sections.get("objective", [])))
    pos = 1 if tokens and tokens[0][0] == "label" else 0
    objective, pos = _parse_expression(tokens, pos)
    if pos != len(tokens):
        raise ValueError("Unexpected tokens after the objective.")
    for name in objective:
        note(name)

    # Rows
    rows = []
    tokens = _tokenize(" ".join(sections.get("rows", [])))
    pos = 0
    while pos < len(tokens):
        name = "r_%i" % len(rows)
        if tokens[pos][0] == "label":
            name = tokens[pos][1]
            pos += 1
        coeffs, pos = _parse_expression(tokens, pos)
        if pos >= len(tokens) or tokens[pos][0] != "sense":
            raise ValueError("Row %s has no sense." % name)
        row_sense = _SENSE_NAMES[tokens[pos][1]]
        rhs, pos = _parse_number(tokens, pos + 1)
        if rhs is None:
            raise ValueError("Row %s has an infinite right-hand side." % name)
        for var in coeffs:
            note(var)
        rows.append((name, coeffs, row_sense, rhs))

    # Bounds
    bounds = {}
    for line in sections.get("bounds", []):
        _parse_bound(line, bounds)
        for var in bounds:
            note(var)

    binaries = []
    for line in sections.get("binaries", []):
        for name in line.split():
            binaries.append(name)
            note(name)

    model = MilpModel("lp", "max" if sense == "max" else "min")
    for name in order:
        if name in binaries:
            model.add_variable(Variable(name, "binary"))
        else:
            lower, upper = bounds.get(name, (Fraction(0), None))
            model.add_variable(Variable(name, "continuous", lower, upper))
    for name, coeffs, row_sense, rhs in rows:
        model.add_row(LinearRow(name, coeffs, row_sense, rhs))
    model.objective = {name: c for name, c in objective.items() if c}
    return model


def read_lp_format(path):
    """ read_lp_format(path)

    Parse an LP file from disk.
    """
    with io.open(path, "r", encoding="utf-8") as f:
        return parse_lp_format(f.read())
