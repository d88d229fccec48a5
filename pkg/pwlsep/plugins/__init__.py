# -*- coding: utf-8 -*-
# pwlsep is distributed under the terms of the (new) BSD License.

# flake8: noqa

"""

The valid inequalities of pwlsep come in families, and every family is
provided by a plugin. You can write your own plugins to add families; as
long as a family is registered, the solver and the polytope lab use it.


What is a plugin
----------------

A plugin provides a :class:`.CutFamily` object. The family can generate
every inequality it knows for an instance (used by the ``cuts`` command,
the validity audits and the polytope lab) and separate inequalities that
a fractional point violates (used by the branch-and-cut solver).

Each inequality is a :class:`.ZInequality` over the assignment variables
z_ig, and records a :class:`.Provenance`: its kind and the data it was
built from.


Registering
-----------

A family is registered using ``pwlsep.families.add_family()``. Families
are looked up by name, e.g. ``pwlsep.families["obstacle"]``; the
``--cut-families`` option of the command line takes the same names.


What methods to implement
--------------------------

The public API is implemented by the base class. A plugin specifies:

  * A short name, a one-line description and the CutKind of its
    inequalities. These are set when instantiating the family.
  * A docstring with the details, such as the keyword arguments that
    ``generate()`` accepts.
  * ``_generate(inst, **kwargs)``, yielding inequalities. Duplicates are
    removed by the base class.
  * ``_separate(inst, zmap, config)``, yielding candidate inequalities for
    the point zmap (a dict from (i, g) to Fraction). The base class keeps
    those violated by more than ``config.threshold``.

"""

from . import convex_inclusion
from . import obstacle
from . import rank
from . import projection
from . import generalization
