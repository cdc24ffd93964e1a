import torch.nn as nn


class ConvNet(nn.Module):  # expect: PT04
    def __init__(self):
        super().__init__()
        self.conv1 = nn.Conv2d(3, 16, 3)
        self.conv2 = nn.Conv2d(16, 32, 3)
        self.fc = nn.Linear(32, 10)

    def forward(self, x):
        """Apply the network."""
        return self.fc(self.conv2(self.conv1(x)))
