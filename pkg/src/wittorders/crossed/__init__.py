"""Parameter sets, crossed products, condensation and classification."""
