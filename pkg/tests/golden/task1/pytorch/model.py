"""PyTorch implementation of the "task1-cnn" model.

Generated from an NLDS document; layer order follows the validated
data flow. Image tensors are channels-first (N, C, H, W).
"""

import torch
from torch import nn


class Task1Cnn(nn.Module):
    """Modules are declared and applied in data-flow order."""

    def __init__(self):
        super().__init__()
        self.conv_1 = nn.Conv2d(in_channels=3, out_channels=32, kernel_size=(3, 3), stride=1, padding="same")
        self.relu_1 = nn.ReLU()
        self.pool_1 = nn.MaxPool2d(kernel_size=(2, 2))
        self.conv_2 = nn.Conv2d(in_channels=32, out_channels=64, kernel_size=(3, 3), stride=1, padding="same")
        self.tanh_1 = nn.Tanh()
        self.pool_2 = nn.MaxPool2d(kernel_size=(2, 2))
        self.conv_3 = nn.Conv2d(in_channels=64, out_channels=128, kernel_size=(3, 3), stride=1, padding="same")
        self.relu_2 = nn.ReLU()
        self.pool_3 = nn.MaxPool2d(kernel_size=(2, 2))
        self.flatten = nn.Flatten()
        self.dense_1 = nn.Linear(in_features=100352, out_features=256)
        self.dense_2 = nn.Linear(in_features=256, out_features=1000)
        self.softmax = nn.Softmax(dim=-1)

    def forward(self, x_input):
        x_conv_1 = self.conv_1(x_input)
        x_relu_1 = self.relu_1(x_conv_1)
        x_pool_1 = self.pool_1(x_relu_1)
        x_conv_2 = self.conv_2(x_pool_1)
        x_tanh_1 = self.tanh_1(x_conv_2)
        x_pool_2 = self.pool_2(x_tanh_1)
        x_conv_3 = self.conv_3(x_pool_2)
        x_relu_2 = self.relu_2(x_conv_3)
        x_pool_3 = self.pool_3(x_relu_2)
        x_flatten = self.flatten(x_pool_3)
        x_dense_1 = self.dense_1(x_flatten)
        x_dense_2 = self.dense_2(x_dense_1)
        x_softmax = self.softmax(x_dense_2)
        return x_softmax


def build_model():
    return Task1Cnn()


def load_dataset():
    """Return a torch Dataset of (input, target) pairs for dataset."""
    raise NotImplementedError("wire up dataset loading for your environment")


def train(model):
    optimizer = torch.optim.SGD(model.parameters(), lr=0.01, momentum=0.9)
    criterion = nn.CrossEntropyLoss()
    loader = torch.utils.data.DataLoader(
        load_dataset(), batch_size=32, shuffle=True
    )
    model.train()
    for epoch in range(10):
        total_loss = 0.0
        seen = 0
        correct = 0
        for inputs, targets in loader:
            optimizer.zero_grad()
            outputs = model(inputs)
            loss = criterion(outputs, targets)
            loss.backward()
            optimizer.step()
            total_loss += loss.item() * inputs.size(0)
            seen += inputs.size(0)
            correct += (outputs.argmax(dim=-1) == targets).sum().item()
        print(f"epoch {epoch + 1}: loss={total_loss / seen:.4f} accuracy={correct / seen:.4f}")
    return model


if __name__ == "__main__":
    model = build_model()
    print(model)
    train(model)
