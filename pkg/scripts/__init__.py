"""corrdyn: numerical dynamics of holomorphic correspondences."""
