import torch

torch.use_deterministic_algorithms(True)


def train_step(model, batch, optimizer):
    optimizer.zero_grad()
    loss = model(batch).sum()
    loss.backward()  # near-miss: PT01
    optimizer.step()
