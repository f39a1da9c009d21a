from musubi.core import __description__, __title__, __version__

__all__ = ("__title__", "__description__", "__version__")
