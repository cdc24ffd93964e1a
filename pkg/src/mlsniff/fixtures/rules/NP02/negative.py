import numpy as np

m = np.ones((3, 4))
total = np.sum(m, axis=0)  # near-miss: NP02
avg = m.mean(axis=1)
