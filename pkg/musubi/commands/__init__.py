import importlib
from pkgutil import iter_modules

import click

command_modules = [module.name for module in iter_modules(__path__, f"{__package__}.")]


def discover() -> list[click.Command]:
    """The ``command`` object of every module in this package."""
    commands = []
    for name in command_modules:
        module = importlib.import_module(name)
        commands.append(module.command)
    return commands
