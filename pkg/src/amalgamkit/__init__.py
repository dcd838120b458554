"""Amalgams of type (3,2;2,2) over GF(2): groups, modules, presentations and completions."""

__version__ = "0.1.0"
