"""Edge group coloring: heuristics, oracles and experiment harness."""
