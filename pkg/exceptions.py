"""
Exception hierarchy; every error carries a kind used by reports.ErrorMessages
"""


class MorseError(Exception):
    """Base class for all engine errors"""

    kind = "general"


class PartitionError(MorseError, ValueError):
    kind = "partition"


class SizeMismatchError(MorseError, ValueError):
    kind = "size"


class BraidError(MorseError, ValueError):
    kind = "braid"


class ColorError(MorseError, ValueError):
    """Braid word does not preserve the strand coloring"""

    kind = "color"


class WellDefinednessError(MorseError):
    """Right multiplication does not descend to the induced module"""

    kind = "well_defined"


class GeometryError(MorseError, ValueError):
    kind = "geometry"


class GeometryCheckError(GeometryError):
    """A computed object failed an internal consistency check"""

    kind = "geometry_check"


class ConvergenceError(MorseError):
    kind = "convergence"


class CollisionError(MorseError):
    """Critical values came too close to be told apart"""

    kind = "collision"


class ConfigError(MorseError):
    kind = "config"


__all__ = [
    'MorseError', 'PartitionError', 'SizeMismatchError', 'BraidError',
    'ColorError', 'WellDefinednessError', 'GeometryError', 'GeometryCheckError',
    'ConvergenceError', 'CollisionError', 'ConfigError',
]
