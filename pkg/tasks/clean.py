import os
import shutil
import fnmatch

from invoke import task

from ._config import ROOT_DIR, NAME

# Build, test and coverage output, relative to the repository root
OUTPUT_DIRS = ["build", "dist", NAME + ".egg-info", "htmlcov", ".pytest_cache"]
OUTPUT_FILES = [".coverage", "MANIFEST"]
CACHE_DIRS = ["__pycache__"]
CACHE_FILES = ["*.pyc", "*.pyo", ".coverage.*"]
SKIP = ["examples", ".git"]


def _walk():
    for root, dirnames, filenames in os.walk(ROOT_DIR):
        dirnames[:] = [d for d in dirnames if d not in SKIP]
        yield root, dirnames, filenames


@task
def clean(ctx):
    """ remove caches, build output, coverage data and the test scratch dir
    """
    ndirs = nfiles = 0
    for root, dirnames, filenames in _walk():
        for dirname in [d for d in dirnames if d in CACHE_DIRS]:
            shutil.rmtree(os.path.join(root, dirname))
            dirnames.remove(dirname)
            ndirs += 1
        for pattern in CACHE_FILES:
            for filename in fnmatch.filter(filenames, pattern):
                os.remove(os.path.join(root, filename))
                nfiles += 1
    print("removed %i cache dirs and %i cache files" % (ndirs, nfiles))

    for name in OUTPUT_DIRS:
        dirname = os.path.join(ROOT_DIR, name)
        if os.path.isdir(dirname):
            shutil.rmtree(dirname)
            print("Removed directory %r" % name)

    for name in OUTPUT_FILES:
        filename = os.path.join(ROOT_DIR, name)
        if os.path.isfile(filename):
            os.remove(filename)
            print("Removed file %r" % name)

    # Scratch dir of pwlsep.testing.get_test_dir()
    userdir = os.getenv("PWLSEP_USERDIR") or os.path.expanduser("~")
    testdir = os.path.join(userdir, "." + NAME, "testdir")
    if os.path.isdir(testdir):
        shutil.rmtree(testdir)
        print("Removed test dir %r" % testdir)
