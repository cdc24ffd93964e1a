import numpy as np

a = np.zeros((3, 1)) + np.ones((4, 1))  # near-miss: NP04
b = np.zeros((3, 1)) + np.zeros(shape)
