import numpy as np

a = np.zeros((3, 1)) + np.zeros((3,))  # expect: NP04
