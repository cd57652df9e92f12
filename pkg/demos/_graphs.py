"""Small graphs shared by the demo scripts."""

from digraph_laplacians import parse_digraph

# Seven vertices: a source vertex 1 feeding 2 and 6, a 3-cycle 3->4->5->3
# feeding 7, and a 2-cycle 6<->7 fed by both.
SEVEN = parse_digraph(
    """7
1 2
1 6
6 7
7 6
3 4
4 5
5 3
3 7
"""
)

CYCLE = parse_digraph("3\n1 2\n2 3\n3 1\n")
