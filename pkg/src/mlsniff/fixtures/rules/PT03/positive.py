import torch

x = torch.randn(4, 8)  # expect: PT03
mask = torch.randint(0, 2, (4,))  # expect: PT03
