"""JSON Schemas for every CLI output, shipped as package data."""

import json
from importlib import resources

NAMES = ("report", "commands")


def load(name: str) -> dict:
    """Return the schema ``<name>.schema.json`` as a dict."""
    if name not in NAMES:
        raise KeyError(name)
    return json.loads(resources.files(__package__).joinpath(f"{name}.schema.json").read_text())


def command_schema(command: str) -> dict:
    """Schema for one subcommand's JSON output (``oracle-mc``, ``lct``, ...)."""
    if command == "analyze":
        return load("report")
    defs = load("commands")["$defs"]
    return {"$ref": f"#/$defs/{command}", "$defs": defs}
