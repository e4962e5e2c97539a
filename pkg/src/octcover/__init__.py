"""Two-coloring of ordered planar point sets against prefix wedges, with exact
reductions among octant, triangle and interval hypergraphs and brute-force
certification of every guarantee."""

__version__ = "0.1.0"
