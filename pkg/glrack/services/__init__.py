"""Computational services: algebra, diagrams, presentations, homology, state sums."""
