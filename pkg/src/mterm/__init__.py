"""Greedy m-term approximation toolkit: thresholding and weak greedy
algorithms, brute-force best-approximation oracles, and dyadic weight
analysis for the Haar system in weighted Littlewood-Paley spaces."""

__version__ = "0.1.0"
