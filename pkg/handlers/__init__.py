# handlers package
from handlers.algebra import AlgebraHandlers, setup_algebra_handlers
from handlers.numerics import NumericsHandlers, setup_numerics_handlers

__all__ = ['AlgebraHandlers', 'setup_algebra_handlers', 'NumericsHandlers', 'setup_numerics_handlers']
