"""
Tree-breadth toolkit.

Decides tree-breadth one on bipartite and planar graphs, computes tree-breadth,
tree-length, path-breadth and path-length exactly on small graphs, and builds
the reduction instances used to show the general problems are hard.
"""

__version__ = '1.0.0'
