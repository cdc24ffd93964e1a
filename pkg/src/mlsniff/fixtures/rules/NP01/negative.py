import numpy as np

values = np.zeros(10)
for i in range(10):
    values[i] = i
stacked = np.concatenate([values, values])  # near-miss: NP01
