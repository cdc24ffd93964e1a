grid = [[1, 2], [3, 4]]
cell = grid[0][1]  # near-miss: PD01
