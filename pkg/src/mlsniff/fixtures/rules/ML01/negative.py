EPOCHS = 50
SECONDS = 60 * 60  # near-miss: ML01


def run(x):
    return x * 2 + 1 - EPOCHS  # near-miss: ML01
