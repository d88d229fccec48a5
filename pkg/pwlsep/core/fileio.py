# -*- coding: utf-8 -*-
# pwlsep is distributed under the terms of the (new) BSD License.

"""
Instance and result files.

Instances are stored as JSON:

    {"dimension": d, "points": [[...], ...], "labels": ["B", "R", ...],
     "blue_groups": nB, "red_groups": nR}

with coordinates as integers or "num/den" strings. Point lists can also
be imported from CSV files with columns x1..xd and a label column.
"""

import io
import os
import csv
import json
import logging

from .model import Instance, InstanceError, Assignment

logger = logging.getLogger(__name__)


def _open(uri, mode):
    if isinstance(uri, str):
        return io.open(os.path.expanduser(uri), mode, encoding="utf-8", newline="")
    return None


def dumps_json(data):
    """ Deterministic JSON text: sorted keys, two-space indent, trailing
    newline.
    """
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def write_json(data, uri):
    """ write_json(data, uri)

    Write JSON-ready data to a filename or text file object.
    """
    f = _open(uri, "w")
    if f is None:
        uri.write(dumps_json(data))
        return
    with f:
        f.write(dumps_json(data))


def read_json(uri):
    f = _open(uri, "r")
    try:
        if f is None:
            return json.load(uri)
        with f:
            return json.load(f)
    except ValueError as err:
        raise InstanceError("Invalid JSON in %s: %s" % (uri, err))


def read_instance(uri, blue_groups=None, red_groups=None):
    """ read_instance(uri, blue_groups=None, red_groups=None)

    Read an instance from a .json or .csv file. Budgets given here
    override the ones in the file (CSV files carry none and default to 1).
    """
    if isinstance(uri, str) and not os.path.isfile(os.path.expanduser(uri)):
        raise IOError("No such instance file: %r" % uri)
    if isinstance(uri, str) and uri.lower().endswith(".csv"):
        inst = read_csv_instance(uri)
    else:
        inst = Instance.from_dict(read_json(uri))
    if blue_groups is not None or red_groups is not None:
        inst = inst.with_budgets(
            blue_groups or inst.blue_groups, red_groups or inst.red_groups
        )
    logger.debug("Read %r" % inst)
    return inst


def write_instance(inst, uri):
    """ write_instance(inst, uri)

    Write an instance as JSON.
    """
    write_json(inst.to_dict(), uri)


def read_csv_instance(uri, label_column="label", blue_groups=1, red_groups=1):
    """ read_csv_instance(uri, label_column="label", blue_groups=1, red_groups=1)

    Read points from a CSV file with a header row. Every column except
    the label column is a coordinate, in header order. Labels are "B" or
    "R" (case-insensitive).
    """
    f = _open(uri, "r")
    rows = list(csv.reader(f if f is not None else uri))
    if f is not None:
        f.close()
    rows = [r for r in rows if any(cell.strip() for cell in r)]
    if len(rows) < 2:
        raise InstanceError("CSV instance needs a header row and at least one point.")
    header = [h.strip().lower() for h in rows[0]]
    if label_column not in header:
        raise InstanceError("CSV instance has no %r column." % label_column)
    li = header.index(label_column)
    points, labels = [], []
    for n, row in enumerate(rows[1:], 2):
        if len(row) != len(header):
            raise InstanceError(
                "CSV line %i has %i cells, expected %i." % (n, len(row), len(header))
            )
        labels.append(row[li].strip())
        points.append([cell.strip() for c, cell in enumerate(row) if c != li])
    name = os.path.basename(uri) if isinstance(uri, str) else None
    return Instance(points, labels, blue_groups, red_groups, name)


def write_result(result, uri, as_float=False):
    """ write_result(result, uri, as_float=False)

    Write a SolveResult as JSON.
    """
    write_json(result.to_dict(as_float), uri)


def read_assignment(inst, uri):
    """ read_assignment(inst, uri)

    Read the assignment stored in a result file written by write_result.
    """
    data = read_json(uri)
    try:
        groups = data["assignment"]["groups"]
    except (KeyError, TypeError):
        raise InstanceError("Result file has no assignment.")
    try:
        return Assignment(inst, groups)
    except ValueError as err:
        raise InstanceError("Result does not fit the instance: %s" % err)
