"""Ad-hoc limited scale-free overlays: growth with local horizons and hard cutoffs, and search on them."""

__version__ = "0.1.0"
