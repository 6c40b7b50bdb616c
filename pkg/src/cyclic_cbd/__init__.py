"""Contextuality measures for cyclic systems of binary random variables."""
