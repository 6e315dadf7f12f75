"""Exact combinatorics of the length-48 frame codes, their code-VOA modules,
the associated q-series identities and the Hamming-frame Griess fragment."""

__version__ = "0.1.0"


def schema(name: str) -> dict:
    """A shipped JSON schema: 'report', 'series' or 'assignments'."""
    import json
    from importlib.resources import files

    return json.loads(files(__name__).joinpath("schemas", f"{name}.schema.json").read_text())
