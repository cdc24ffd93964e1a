import numpy as np

m = np.ones((3, 4))
total = np.sum(m)  # expect: NP02
avg = np.mean(m)  # expect: NP02
col_max = np.max(m, axis=0)
