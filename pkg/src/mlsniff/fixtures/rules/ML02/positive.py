import random


def pick(items):
    return random.choice(items)  # expect: ML02
