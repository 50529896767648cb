"""
twmatch: matching variants parameterized by treewidth

Dynamic programs over nice tree decompositions for Induced, Acyclic and
c-Disconnected Matching, brute-force oracles, and a Hitting Set reduction
used as an instance generator.
"""

__version__ = "1.0.0"
