"""Who the consumer classes are, demographically.

Profiles each consumer class from a partially covered demographics table
(age and gender are never known for everyone), then builds the age curve
of active engagement per gender, min-max normalized so the two genders
can be compared by shape rather than by base rate.
"""

from devgraph.demographics import class_demographics, engagement_by_age
from devgraph.diffusion import build_trees, classify_nodes, producer_nodes
from devgraph.synth import (
    SynthConfig,
    engagement_fixture,
    planted_graph,
    synth_demographics,
    synth_events,
)

cfg = SynthConfig(seed=3)
g, roles = planted_graph(cfg)
trees = build_trees(synth_events(cfg, g, roles), producer_nodes(roles))
classes = classify_nodes(g, trees, roles)
demo = synth_demographics(cfg, roles)

stats = class_demographics(classes, demo)
print("class              size  covered  median age  share male")
for name, st in sorted(stats.items(), key=lambda kv: -kv[1].size):
    med = f"{st.median_age:10.1f}" if st.median_age is not None else "         -"
    male = f"{st.male_fraction:10.2f}" if st.male_fraction is not None else "         -"
    print(f"{name:18s} {st.size:4d}  {st.covered:7d}  {med}  {male}")

# the planted rates put the male peak around 40 and the female peak mid-20s
eclasses, edemo = engagement_fixture(per_cell=40)
curves = engagement_by_age(eclasses, edemo)
print("\nage band   male   female   (normalized active share)")
male, female = curves["male"], curves["female"]
for (lo, hi), m, f in zip(male.bands, male.normalized, female.normalized):
    m_s = f"{m:5.2f}" if m is not None else "    -"
    f_s = f"{f:5.2f}" if f is not None else "    -"
    print(f"{lo:3d}-{hi - 1:3d}   {m_s}   {f_s}")
