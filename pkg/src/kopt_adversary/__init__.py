"""Local-search lower-bound constructions for Max-Cut/Flip and TSP/k-opt."""
