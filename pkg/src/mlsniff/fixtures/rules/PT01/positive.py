import torch


def train_step(model, batch, optimizer):
    optimizer.zero_grad()
    loss = model(batch).sum()
    loss.backward()  # expect: PT01
    optimizer.step()
