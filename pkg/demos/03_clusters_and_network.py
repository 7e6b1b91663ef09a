"""Clustering repeated segments and reading a rhythm off the transition network."""

# %% [markdown]
# Segments of a looped rhythm pile up in a few tight clusters. HDBSCAN finds
# them without being told how many there are; every segment that does not
# belong anywhere is marked as noise.

# %%
from pathlib import Path

from rhythmseg import build_network, cluster_segments, extract_segments, path_rhythm
from rhythmseg.synth import RepeatTemplate, gen_repeated

out = Path(__file__).resolve().parent / "output"
out.mkdir(exist_ok=True)

q = 0.5
seq = gen_repeated(RepeatTemplate((3, 3, 2, 4, 1), quantum=q, repeats=200), seed=7)
segs = extract_segments(seq, 2)
labeling = cluster_segments(segs, min_cluster_size=10)
print(f"{len(labeling.clusters)} clusters, {labeling.n_noise} noise segments")

# %% [markdown]
# Each cluster becomes a node labelled by its medoid in whole quanta. An
# edge counts how often a segment of one cluster is followed by a segment
# of another; rare edges are pruned.

# %%
network = build_network(labeling, prune_threshold=15, quantum=q)
for nd in network.nodes:
    print(f"node {nd.id}: {nd.label:>4s}  size {nd.size}")
for e in network.edges:
    print(f"{network.node(e.source).label} -> {network.node(e.target).label}  x{e.count}")

# %% [markdown]
# Walking the network from 3:3 and keeping the last multiple of every next
# node spells out the loop we started from.

# %%
walk = [network.node_by_label(l).id for l in ("3:3", "3:2", "2:4", "4:1")]
print("rhythm along the walk:", path_rhythm(network, walk))

# %% [markdown]
# The same analysis with triples lands in the rhythm triangle. None of the
# triples of this loop are evenly spaced, so the center of the triangle
# stays empty.

# %%
from rhythmseg.viz import pattern_duration_plot, triangle_plot

segs3 = extract_segments(seq, 3)
labeling3 = cluster_segments(segs3, min_cluster_size=10)
network3 = build_network(labeling3, quantum=q)
(out / "repeated_network.svg").write_text(
    pattern_duration_plot(segs, labeling, network, quantum=q, trajectories=True))
(out / "repeated_triangle.svg").write_text(triangle_plot(segs3, labeling3, network3, quantum=q))
print("triple clusters:", sorted(nd.label for nd in network3.nodes))
