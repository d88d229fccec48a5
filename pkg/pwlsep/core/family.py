# -*- coding: utf-8 -*-
# pwlsep is distributed under the terms of the (new) BSD License.

"""

These are the main classes for valid inequalities over the assignment
variables z. A brief overview:

  * pwlsep.core.ZInequality - an inequality Σ a_v z_v ≤ b with provenance.
  * pwlsep.core.CutFamily - a family of inequalities that can generate all
    its members for an instance and separate a fractional point.
  * pwlsep.core.FamilyManager - keeps track of the registered families.
  * pwlsep.core.CutPool - append-only, deduplicated store of cuts.

A z-variable is identified by the tuple (point index, group index); the
group index refers to the blue groups for blue points and to the red
groups for red points.

Plugins implement a CutFamily subclass and register an instance using
``pwlsep.families.add_family()``.
"""

import io
import json
import logging
import threading
from enum import Enum
from fractions import Fraction

from .util import Dict, env_int, format_rational

logger = logging.getLogger(__name__)


class CutKind(Enum):
    CONVEX_INCLUSION = "ConvexInclusion"
    OBSTACLE = "Obstacle"
    OBSTACLE_RANK = "ObstacleRank"
    FARKAS_PROJECTION = "FarkasProjection"
    GENERALIZATION = "Generalization"
    LIFTED = "Lifted"
    MODEL_ROW = "ModelRow"


def z_name(var):
    """ The LP-file name of z-variable (i, g).
    """
    return "z_%i_%i" % var


def as_zmap(inst, zstar, max_denominator=10 ** 6):
    """ as_zmap(inst, zstar, max_denominator=10**6)

    Normalize a z-point to a dict {(i, g): Fraction}. Accepts a mapping or
    a sequence ordered like ``inst.z_vars``. Floats are rounded to nearby
    rationals so that violations compare exactly.
    """
    if hasattr(zstar, "items"):
        items = zstar.items()
    else:
        values = list(zstar)
        if len(values) != inst.n_vars:
            raise ValueError(
                "Expected %i z-values, got %i." % (inst.n_vars, len(values))
            )
        items = zip(inst.z_vars, values)
    zmap = {}
    for var, value in items:
        if isinstance(value, Fraction):
            v = value
        elif isinstance(value, int):
            v = Fraction(value)
        else:
            v = Fraction(float(value)).limit_denominator(max_denominator)
        if v:
            zmap[tuple(var)] = v
    return zmap


class Provenance(object):
    """ Provenance(kind, **data)

    Where an inequality comes from: its family kind plus the generating
    data (sets S, point indices, groups, graph details).
    """

    def __init__(self, kind, **data):
        self.kind = CutKind(kind)
        self.data = Dict(sorted(data.items()))

    def __repr__(self):
        return "<Provenance %s %s>" % (self.kind.value, dict(self.data))

    def to_dict(self):
        out = {"kind": self.kind.value}
        for key, value in self.data.items():
            out[key] = _jsonable(value)
        return out


def _jsonable(value):
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [_jsonable(v) for v in items]
    return value


class ZInequality(object):
    """ ZInequality(coeffs, rhs, provenance)

    The inequality Σ coeffs[v] z_v ≤ rhs over z-variables v = (i, g).
    Zero coefficients are dropped; the support must be nonempty.
    """

    def __init__(self, coeffs, rhs, provenance):
        cleaned = {}
        for var, value in coeffs.items():
            value = Fraction(value)
            if value:
                cleaned[tuple(var)] = cleaned.get(tuple(var), 0) + value
        cleaned = {v: c for v, c in cleaned.items() if c}
        if not cleaned:
            raise ValueError("An inequality needs a nonempty support.")
        self._coeffs = dict(sorted(cleaned.items()))
        self._rhs = Fraction(rhs)
        if not isinstance(provenance, Provenance):
            raise ValueError("ZInequality needs a Provenance object.")
        self._provenance = provenance

    def __repr__(self):
        return "<ZInequality %s: %s <= %s>" % (
            self.kind.value,
            " + ".join("%s %s" % (c, z_name(v)) for v, c in self._coeffs.items()),
            self._rhs,
        )

    def __eq__(self, other):
        return isinstance(other, ZInequality) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    @property
    def coeffs(self):
        """ The coefficient dict keyed by (point index, group index).
        """
        return self._coeffs

    @property
    def rhs(self):
        return self._rhs

    @property
    def provenance(self):
        return self._provenance

    @property
    def kind(self):
        return self._provenance.kind

    @property
    def support(self):
        return tuple(self._coeffs)

    @property
    def key(self):
        """ Deduplication key: family kind plus the inequality itself.
        """
        return (self.kind.value, tuple(self._coeffs.items()), self._rhs)

    def lhs(self, z):
        """ lhs(z)

        The left-hand side at z, a mapping from variables to values.
        """
        return sum(c * z.get(v, 0) for v, c in self._coeffs.items())

    def violation(self, z):
        """ violation(z)

        lhs(z) - rhs; positive when z violates the inequality.
        """
        return self.lhs(z) - self._rhs

    def is_satisfied(self, z):
        return self.violation(z) <= 0

    def to_dict(self, as_float=False):
        return {
            "provenance": self._provenance.to_dict(),
            "coeffs": {
                z_name(v): format_rational(c, as_float) for v, c in self._coeffs.items()
            },
            "rhs": format_rational(self._rhs, as_float),
        }


class PoolConfig(object):
    """ PoolConfig(threshold=1/100, families=None, graph_limit=None,
    max_cuts=50)

    Settings for cut separation.

    Parameters
    ----------
    threshold : Rational
        Minimum violation for a cut to be reported.
    families : list of str | None
        Names of the families to use; None means all registered.
    graph_limit : int | None
        Largest obstacle graph vertex set with exact stability numbers.
        Defaults to PWLSEP_GRAPH_LIMIT or 12.
    max_cuts : int
        At most this many cuts are returned per call.
    """

    def __init__(self, threshold=Fraction(1, 100), families=None, graph_limit=None, max_cuts=50):
        self.threshold = Fraction(threshold)
        self.families = None if families is None else list(families)
        if graph_limit is None:
            graph_limit = env_int("PWLSEP_GRAPH_LIMIT", 12)
        self.graph_limit = int(graph_limit)
        self.max_cuts = int(max_cuts)

    def __repr__(self):
        return "<PoolConfig threshold=%s families=%s>" % (self.threshold, self.families)


class CutFamily(object):
    """ Represents a family of valid inequalities over z

    A family instance knows how to 1) describe itself; 2) generate all
    the members it can find for an instance (for audits and the polytope
    lab); 3) search members violated by a fractional point (for the
    branch-and-cut loop).

    To implement a family, create a subclass and implement ``_generate``
    and ``_separate``; see :mod:`pwlsep.plugins`.

    Parameters
    ----------
    name : str
        A short name of this family, used on the command line.
    description : str
        A one-line description.
    kind : CutKind
        The provenance kind of the inequalities it produces.
    """

    def __init__(self, name, description, kind):
        self._name = name.lower()
        self._description = description
        self._kind = CutKind(kind)

    def __repr__(self):
        return "<CutFamily %s - %s>" % (self.name, self.description)

    def __str__(self):
        return self.doc

    @property
    def doc(self):
        """ The documentation for this family (name + description + docstring).
        """
        return "%s - %s\n\n    %s\n" % (
            self.name,
            self.description,
            (self.__doc__ or "").strip(),
        )

    @property
    def name(self):
        """ The name of this family.
        """
        return self._name

    @property
    def description(self):
        """ A short description of this family.
        """
        return self._description

    @property
    def kind(self):
        """ The CutKind of the produced inequalities.
        """
        return self._kind

    def generate(self, inst, **kwargs):
        """ generate(inst, **kwargs)

        Return a list of all inequalities of this family found for the
        instance, deduplicated and in deterministic order.
        """
        seen, out = set(), []
        for cut in self._generate(inst, **kwargs):
            if cut.key not in seen:
                seen.add(cut.key)
                out.append(cut)
        return out

    def separate(self, inst, zstar, config=None):
        """ separate(inst, zstar, config=None)

        Return inequalities of this family violated by zstar by more than
        the configured threshold, most violated first.
        """
        config = config or PoolConfig()
        zmap = as_zmap(inst, zstar)
        found = {}
        for cut in self._separate(inst, zmap, config):
            violation = cut.violation(zmap)
            if violation > config.threshold and cut.key not in found:
                found[cut.key] = (violation, cut)
        ranked = sorted(found.values(), key=lambda vc: (-vc[0], vc[1].key))
        return [cut for _, cut in ranked]

    def _generate(self, inst, **kwargs):  # pragma: no cover
        return []  # Plugins must implement this

    def _separate(self, inst, zmap, config):  # pragma: no cover
        return []  # Plugins must implement this


class FamilyManager(object):
    """
    There is exactly one FamilyManager object in pwlsep: ``pwlsep.families``.
    Its purpose is to keep track of the registered cut families.

    Families can be looked up by name using indexing. When used as an
    iterator, this object yields the registered families in registration
    order.
    """

    def __init__(self):
        self._families = []

    def __repr__(self):
        return "<pwlsep.FamilyManager with %i registered families>" % len(self)

    def __iter__(self):
        return iter(self._families)

    def __len__(self):
        return len(self._families)

    def __str__(self):
        return "\n".join("%s - %s" % (f.name, f.description) for f in self)

    def __getitem__(self, name):
        if not isinstance(name, str):
            raise ValueError("Looking up a cut family should be done by name.")
        if not name:
            raise ValueError("No cut family matches the empty string.")
        name = name.strip().lower().replace("_", "-")
        for family in self:
            if name == family.name:
                return family
        raise IndexError("No cut family known by name %s." % name)

    def add_family(self, family, overwrite=False):
        """ add_family(family, overwrite=False)

        Register a family. If a family with the same name already exists,
        an error is raised, unless overwrite is True.
        """
        if not isinstance(family, CutFamily):
            raise ValueError("add_family needs argument to be a CutFamily object")
        elif family in self._families:
            raise ValueError("Given CutFamily instance is already registered")
        elif family.name in self.get_family_names():
            if overwrite:
                self._families.remove(self[family.name])
            else:
                raise ValueError(
                    "A CutFamily named %r is already registered, use"
                    " overwrite=True to replace." % family.name
                )
        self._families.append(family)

    def get_family_names(self):
        """ Get the names of all registered families.
        """
        return [f.name for f in self]

    def select(self, names=None):
        """ select(names=None)

        The families with the given names (all when names is None), in
        registration order.
        """
        if names is None:
            return list(self._families)
        wanted = set(self[n].name for n in names)
        return [f for f in self._families if f.name in wanted]

    def show(self):
        """ Show a nicely formatted list of available families.
        """
        print(self)


class CutPool(object):
    """ CutPool()

    Append-only set of inequalities, deduplicated by ZInequality.key.
    Writers are serialized by a lock; each entry remembers the z-point
    (if any) that it was separated from.
    """

    def __init__(self):
        self._cuts = []
        self._violated_by = []
        self._keys = set()
        self._lock = threading.Lock()

    def __repr__(self):
        return "<CutPool with %i cuts>" % len(self)

    def __len__(self):
        return len(self._cuts)

    def __iter__(self):
        return iter(list(self._cuts))

    def __contains__(self, cut):
        return cut.key in self._keys

    def add(self, cut, violated_by=None):
        """ add(cut, violated_by=None)

        Add a cut; returns False if an equal cut is already pooled.
        """
        with self._lock:
            if cut.key in self._keys:
                return False
            self._keys.add(cut.key)
            self._cuts.append(cut)
            self._violated_by.append(None if violated_by is None else dict(violated_by))
            return True

    def entries(self):
        """ List of (cut, violated_by) pairs in insertion order.
        """
        return list(zip(self._cuts, self._violated_by))

    def counts(self):
        """ Number of pooled cuts per CutKind value, sorted by kind.
        """
        out = Dict()
        for kind in sorted(set(c.kind.value for c in self._cuts)):
            out[kind] = sum(1 for c in self._cuts if c.kind.value == kind)
        return out

    def dump(self, file, as_float=False):
        """ dump(file, as_float=False)

        Write the pool as JSON lines {provenance, coeffs, rhs, violated_by}
        to a filename or a text file object.
        """
        if isinstance(file, str):
            with io.open(file, "w", encoding="utf-8") as f:
                return self.dump(f, as_float)
        for cut, zmap in self.entries():
            record = cut.to_dict(as_float)
            if zmap is not None:
                zmap = {
                    z_name(v): format_rational(x, as_float) for v, x in sorted(zmap.items())
                }
            record["violated_by"] = zmap
            file.write(json.dumps(record, sort_keys=True) + "\n")


def separate_cuts(inst, zstar, config=None, manager=None, executor=None):
    """ separate_cuts(inst, zstar, config=None, manager=None, executor=None)

    Run every selected family's separation on zstar and return the
    violated inequalities, most violated first and at most
    ``config.max_cuts`` of them. The result does not depend on whether a
    concurrent.futures executor is given to run the families in parallel.
    """
    if manager is None:
        from .. import families as manager
    config = config or PoolConfig()
    zmap = as_zmap(inst, zstar)
    selected = manager.select(config.families)
    if executor is not None:
        futures = [executor.submit(f.separate, inst, zmap, config) for f in selected]
        results = [fut.result() for fut in futures]
    else:
        results = [f.separate(inst, zmap, config) for f in selected]
    found = {}
    for cuts in results:
        for cut in cuts:
            if cut.key not in found:
                found[cut.key] = (cut.violation(zmap), cut)
    ranked = sorted(found.values(), key=lambda vc: (-vc[0], vc[1].key))
    cuts = [cut for _, cut in ranked[: config.max_cuts]]
    logger.debug("Separated %i cuts from %i families" % (len(cuts), len(selected)))
    return cuts


def generate_cuts(inst, names=None, manager=None):
    """ generate_cuts(inst, names=None, manager=None)

    All inequalities the selected families generate for the instance.
    """
    if manager is None:
        from .. import families as manager
    out = []
    for family in manager.select(names):
        out.extend(family.generate(inst))
    return out
