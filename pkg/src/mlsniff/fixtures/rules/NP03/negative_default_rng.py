import numpy as np

rng = np.random.default_rng(0)
noise = np.random.normal(size=3)  # near-miss: NP03
