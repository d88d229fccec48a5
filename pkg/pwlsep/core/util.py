# -*- coding: utf-8 -*-
# pwlsep is distributed under the terms of the (new) BSD License.

"""
Various utilities for pwlsep: rational numbers, the attribute dict,
progress indicators, configuration from the environment and exact
linear algebra.
"""

import os
import re
import sys
import time
import logging
from collections import OrderedDict
from fractions import Fraction

logger = logging.getLogger("pwlsep")


## Rationals


def as_rational(value):
    """ as_rational(value)

    Convert an int, a Fraction, a string such as "3", "-7/2" or "0.25",
    or a float to a Fraction. Floats are converted exactly, so prefer
    strings for decimal input.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError("Booleans are not valid rational values.")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if value != value or value in (float("inf"), float("-inf")):
            raise ValueError("Cannot convert %r to a rational." % value)
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise ValueError("Cannot convert %r to a rational." % value)
    # numpy scalars and the like
    if hasattr(value, "item"):
        return as_rational(value.item())
    raise ValueError("Cannot convert %r to a rational." % (value,))


def as_point(coords):
    """ Return the given coordinates as a tuple of Fractions.
    """
    return tuple(as_rational(c) for c in coords)


def format_rational(value, as_float=False):
    """ format_rational(value, as_float=False)

    Format a rational for JSON output: an int when integral, else a
    "num/den" string. With as_float, a Python float is returned instead.
    """
    value = as_rational(value)
    if as_float:
        return float(value)
    if value.denominator == 1:
        return value.numerator
    return "%i/%i" % (value.numerator, value.denominator)


def rank(rows):
    """ rank(rows)

    Exact rank of a list of rational (or integer) vectors, by Gaussian
    elimination over the rationals.
    """
    basis = EchelonBasis()
    for row in rows:
        basis.add(row)
    return basis.rank


class EchelonBasis(object):
    """ EchelonBasis()

    Incrementally maintained row-echelon basis over the rationals. Adding a
    vector reduces it against the basis and keeps the remainder when it is
    nonzero. Used to compute ranks of large vector families with early exit.
    """

    def __init__(self):
        self._rows = []  # list of (pivot column, row)

    @property
    def rank(self):
        """ The number of independent vectors added so far.
        """
        return len(self._rows)

    def add(self, vector):
        """ add(vector)

        Add a vector; returns True when it increased the rank.
        """
        row = [Fraction(v) for v in vector]
        for pivot, brow in self._rows:
            factor = row[pivot]
            if factor:
                row = [a - factor * b for a, b in zip(row, brow)]
        for pivot, value in enumerate(row):
            if value:
                break
        else:
            return False
        row = [v / value for v in row]
        # Keep the basis fully reduced so later reductions stay one pass
        reduced = []
        for p, brow in self._rows:
            factor = brow[pivot]
            if factor:
                brow = [a - factor * b for a, b in zip(brow, row)]
            reduced.append((p, brow))
        reduced.append((pivot, row))
        self._rows = reduced
        return True


## Configuration


def env_int(name, default):
    """ env_int(name, default)

    Get an integer setting from the environment, e.g. PWLSEP_WORKERS.
    Invalid values are reported and ignored.
    """
    value = os.getenv(name, "").strip()
    if not value:
        return default
    try:
        return int(value)
    except ValueError:
        logger.warning("Ignoring invalid value %r for %s." % (value, name))
        return default


def appdata_dir(appname=None):
    """ appdata_dir(appname=None)

    Get the path to the directory where pwlsep may write user specific
    files (test output, cut pool dumps). PWLSEP_USERDIR overrides the home
    directory. If appname is given, a hidden subdir is created there.
    """
    userDir = os.getenv("PWLSEP_USERDIR", None)
    if userDir is None:
        userDir = os.path.expanduser("~")
        if not os.path.isdir(userDir):  # pragma: no cover
            userDir = "/var/tmp"
    path = userDir
    if sys.platform.startswith("win"):  # pragma: no cover
        path = os.getenv("LOCALAPPDATA") or os.getenv("APPDATA") or userDir
    if appname:
        if path == userDir:
            appname = "." + appname.lstrip(".")
        path = os.path.join(path, appname)
        if not os.path.isdir(path):
            os.makedirs(path)
    return path


## Containers


class Dict(OrderedDict):
    """ A dict in which the keys can be get and set as if they were
    attributes. Used for solver statistics and report metadata.

    Keys that are not valid identifiers or that are names of the dict
    class (such as 'items' and 'copy') cannot be get/set as attributes.
    """

    __reserved_names__ = dir(OrderedDict())
    __pure_names__ = dir(dict())

    def __getattribute__(self, key):
        try:
            return object.__getattribute__(self, key)
        except AttributeError:
            if key in self:
                return self[key]
            else:
                raise

    def __setattr__(self, key, val):
        if key in Dict.__reserved_names__:
            if key not in Dict.__pure_names__:
                return OrderedDict.__setattr__(self, key, val)
            else:
                raise AttributeError(
                    "Reserved name, this key can only be set via ``d[%r] = X``" % key
                )
        else:
            self[key] = val

    def __dir__(self):
        isidentifier = lambda x: bool(re.match(r"[a-z_]\w*$", x, re.I))
        names = [k for k in self.keys() if isinstance(k, str) and isidentifier(k)]
        return Dict.__reserved_names__ + names


## Progress


class BaseProgressIndicator(object):
    """ BaseProgressIndicator(name)

    Reports the progress of a batch job (enumeration, theorem suite).
    This base class is silent and can be used as a dummy; subclasses
    implement _start, _stop, _update_progress and _write.

    Usage: call start(), then set_progress()/increase_progress() and
    finally finish() or fail().
    """

    def __init__(self, name):
        self._name = name
        self._action = ""
        self._unit = ""
        self._max = 0
        self._status = 0
        self._progress = 0
        self._last_update = 0

    def start(self, action="", unit="", max=0):
        """ start(action='', unit='', max=0)

        Start the progress; max is the expected total (0 if unknown).
        """
        if self._status == 1:
            self.finish()
        self._action, self._unit, self._max = action, unit, max
        self._status = 1
        self._start()
        self.set_progress(0, True)

    @property
    def status(self):
        """ 0: pending, 1: in progress, 2: finished, 3: failed
        """
        return self._status

    @property
    def progress(self):
        """ The current progress value.
        """
        return self._progress

    def set_progress(self, progress=0, force=False):
        """ set_progress(progress=0, force=False)

        Set the current progress. Visual updates are throttled to one per
        0.1 second unless force is True.
        """
        self._progress = progress
        if not (force or (time.time() - self._last_update > 0.1)):
            return
        self._last_update = time.time()
        if self._max > 0:
            percent = 100.0 * progress / self._max
            text = "%i/%i %s (%2.1f%%)" % (progress, self._max, self._unit, percent)
        else:
            text = "%i %s" % (progress, self._unit)
        self._update_progress(text.strip())

    def increase_progress(self, extra_progress=1):
        """ increase_progress(extra_progress=1)
        """
        self.set_progress(self._progress + extra_progress)

    def finish(self, message=None):
        """ finish(message=None)

        Finish the progress, optionally with a closing message.
        """
        self.set_progress(self._progress, True)
        self._status = 2
        self._stop()
        if message is not None:
            self._write(message)

    def fail(self, message=None):
        """ fail(message=None)

        Stop the progress with a failure.
        """
        self.set_progress(self._progress, True)
        self._status = 3
        self._stop()
        self._write("FAIL " + (message or ""))

    def write(self, message):
        """ write(message)

        Write a message during progress (such as a contradiction).
        """
        return self._write(message)

    def _start(self):
        pass

    def _stop(self):
        pass

    def _update_progress(self, text):
        pass

    def _write(self, message):
        pass


class StdoutProgressIndicator(BaseProgressIndicator):
    """ StdoutProgressIndicator(name)

    A progress indicator that rewrites a single line on stdout.
    """

    def _start(self):
        self._text = ""
        if self._action:
            self._prefix = "%s (%s): " % (self._name, self._action)
        else:
            self._prefix = "%s: " % self._name
        sys.stdout.write(self._prefix)
        sys.stdout.flush()

    def _update_progress(self, text):
        sys.stdout.write("\b" * len(self._text) + text)
        self._text = text
        sys.stdout.flush()

    def _stop(self):
        self._text = ""
        sys.stdout.write("\n")
        sys.stdout.flush()

    def _write(self, message):
        sys.stdout.write(message + "\n")
        sys.stdout.flush()
