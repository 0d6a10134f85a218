"""
Hardness lab.

Executable counting reductions: s-t connectedness and bipartite independent
sets are recovered from exact Shapley values and compared with brute force.
"""
