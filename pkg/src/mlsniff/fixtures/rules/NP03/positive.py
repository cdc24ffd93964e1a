import numpy as np

noise = np.random.rand(3)  # expect: NP03
order = np.random.permutation(10)  # expect: NP03
