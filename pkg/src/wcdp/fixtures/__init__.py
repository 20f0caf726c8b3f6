"""Bundled fixture grammars and lexica."""

from importlib import resources


def path(name: str):
    """Filesystem path of a bundled fixture file (e.g. ``toy.gram``)."""
    ref = resources.files(__package__).joinpath(name)
    with resources.as_file(ref) as p:
        return p
