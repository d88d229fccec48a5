"""
Developer tasks for pwlsep, run with invoke (``invoke --list``).

Every public module in this directory contributes its tasks to the
namespace ``ns``; collections are added as they are, loose tasks at the
top level.
"""

import os
import importlib

from invoke import Collection, Task

THIS_DIR = os.path.dirname(os.path.abspath(__file__))
ROOT_DIR = os.path.dirname(THIS_DIR)


def _task_modules():
    for fname in sorted(os.listdir(THIS_DIR)):
        if fname.endswith(".py") and not fname.startswith("_"):
            yield importlib.import_module("." + fname[:-3], __name__)


def _build_namespace():
    namespace = Collection()
    for module in _task_modules():
        members = [getattr(module, name) for name in dir(module)]
        collections = [ob for ob in members if isinstance(ob, Collection)]
        for ob in collections:
            namespace.add_collection(ob)
        grouped = set()
        for ob in collections:
            grouped.update(ob.tasks.values())
        for ob in members:
            if isinstance(ob, Task) and ob not in grouped:
                namespace.add_task(ob)
    return namespace


ns = _build_namespace()
