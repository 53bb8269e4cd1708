"""Clifford+T synthesis of z-rotations under a fixed T-gate budget.

Subpackages cover exact ring arithmetic, grid enumeration, the relative norm
equation, exact synthesis, the budgeted approximation loop, depolarizing
error modeling, dense circuit simulation, and the experiment pipeline.
"""

__version__ = "0.1.0"
