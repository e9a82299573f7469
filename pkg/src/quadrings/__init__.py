"""Formas cuadráticas binarias, álgebras cuadráticas y módulos trazables."""

__version__ = "0.1.0"
