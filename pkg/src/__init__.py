"""Influence minimization on probabilistic graphs by node and edge blocking."""
