"""Segments, patterns and anisochrony on a short hand-made rhythm."""

# %% [markdown]
# A rhythm here is nothing but a list of inter-onset intervals in seconds.
# We cut it into overlapping pairs and look at each pair as a duration
# (how long the two intervals take together) and a pattern (how that time
# is split between them).

# %%
from rhythmseg import IntervalSequence, extract_segments, normalize

seq = IntervalSequence((0.3, 0.3, 0.6, 0.2, 0.4, 0.6), id="demo")
pairs = extract_segments(seq, 2)
for s in pairs:
    pd = normalize(s)
    print(f"{s.values}  ratio {pd.pattern.ratio:.3f}  duration {pd.duration:.2f} s")

# %% [markdown]
# The ratio of a pair is the share of the first interval. Doubling the
# tempo halves every duration but leaves the ratios alone, which is what
# makes the pattern a tempo-free description.

# %%
fast = IntervalSequence(tuple(v / 2 for v in seq.intervals))
print([round(normalize(s).pattern.ratio, 3) for s in extract_segments(fast, 2)])

# %% [markdown]
# Anisochrony measures how far a pattern is from equal intervals on a 0 to
# 1 scale. For pairs it is simply the absolute difference of the two
# shares, and the classic nPVI is 200 times its mean over all pairs.

# %%
from rhythmseg import mean_anisochrony, npvi, segment_anisochrony

print("pair anisochrony:", [round(segment_anisochrony(s), 3) for s in pairs])
print("nPVI:", round(npvi(seq), 4), " 200 x mean:", round(200 * mean_anisochrony(pairs), 4))

# %% [markdown]
# Longer segments live on a larger simplex. Triples of equal intervals sit
# at its center, a triple dominated by one interval sits near a corner.

# %%
from rhythmseg import Pattern, anisochrony, pattern_distance

for w in [(1 / 3, 1 / 3, 1 / 3), (0.25, 0.25, 0.5), (0.9, 0.05, 0.05), (1.0, 0.0, 0.0)]:
    print(w, "anisochrony", round(anisochrony(w), 3),
          "distance to center", round(pattern_distance(w, Pattern.center(3)), 3))
