import random

random.seed(7)


def pick(items):
    return random.choice(items)  # near-miss: ML02
