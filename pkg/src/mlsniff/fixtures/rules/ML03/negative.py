LEARNING_RATE = 0.001


def train(model, **params):
    return model


train(None, lr=LEARNING_RATE, optimizer="adam")  # near-miss: ML03
