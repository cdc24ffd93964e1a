import numpy as np

np.random.seed(42)
noise = np.random.rand(3)  # near-miss: NP03
