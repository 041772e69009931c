"""Wu invariants, generalised Simon invariants and chirality certificates
for spatial graph diagrams given as signed crossing lists."""

__version__ = "0.1.0"
