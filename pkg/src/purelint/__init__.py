"""purelint: a checker for the pure-functional teaching subset of Python,
with a Datalog atom to relational algebra translator and reference oracles."""

__version__ = "0.1.0"
