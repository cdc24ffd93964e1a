def train(model, **params):
    return model


train(None, lr=0.001, epochs=20)  # expect: ML03
