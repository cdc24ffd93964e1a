import math


def scale(x):
    return x * 10  # expect: ML01


print(scale(3))  # expect: ML01
