import numpy as np

values = np.zeros(0)
for i in range(10):
    values = np.append(values, i)  # expect: NP01
