import numpy as np
import torch

noise = torch.randn(4)


def train(model, loader, optimizer):
    """One epoch."""
    for batch in loader:
        loss = model(batch).sum()
        loss.backward()
        optimizer.step()
    return np.sum(model.weights)
