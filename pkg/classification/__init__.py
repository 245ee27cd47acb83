"""Row and type catalog, normalization, fingerprints and finite classification."""
