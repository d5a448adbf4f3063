"""Group-to-group reblog connectivity against a degree-preserving null.

Prints the role-by-role link matrix in three readings: raw average volume,
density relative to possible pairs, and the ratio of the observed density
to the mean density over seeded degree-preserving rewirings. Ratios above
one mark group pairs that are more intertwined than their degrees alone
would predict.
"""

from devgraph.connectivity import AVG_VOLUME, DENSITY, NULL_RATIO, group_matrix
from devgraph.graph import REBLOG
from devgraph.synth import GROUPS, SynthConfig, planted_graph

g, roles = planted_graph(SynthConfig(seed=3))


def show(mat):
    print(f"\n{mat.mode}")
    print("origin        " + "".join(f"{t[:9]:>11s}" for t in mat.groups))
    for origin, row in zip(mat.groups, mat.values):
        cells = "".join(f"{x:11.3f}" if x == x and x != float("inf")
                        else f"{'inf':>11s}" for x in row)
        print(f"{origin:14s}{cells}")
    for flag in mat.flags:
        print(f"  note: {flag}")


show(group_matrix(g, REBLOG, roles, AVG_VOLUME, group_order=GROUPS))
show(group_matrix(g, REBLOG, roles, DENSITY, group_order=GROUPS))
show(group_matrix(g, REBLOG, roles, NULL_RATIO, group_order=GROUPS,
                  samples=10, seed=3))
