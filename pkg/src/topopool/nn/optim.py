"""First-order optimizers over named parameter tensors."""
from __future__ import annotations

import numpy as np


class Adam:
    """Adam with bias correction.

    Parameters whose ``grad`` is None are left untouched; a zero gradient
    produces a zero update, so untouched parameters stay put either way.
    """

    def __init__(self, parameters, lr: float = 0.01, beta1: float = 0.9,
                 beta2: float = 0.999, epsilon: float = 1e-8):
        if lr <= 0:
            raise ValueError("learning rate must be positive")
        if not (0 <= beta1 < 1 and 0 <= beta2 < 1):
            raise ValueError("betas must be in [0, 1)")
        self.parameters = dict(parameters)
        self.lr = float(lr)
        self.beta1 = float(beta1)
        self.beta2 = float(beta2)
        self.epsilon = float(epsilon)
        self.step_count = 0
        self._first = {name: np.zeros_like(p.data) for name, p in self.parameters.items()}
        self._second = {name: np.zeros_like(p.data) for name, p in self.parameters.items()}

    def zero_grad(self):
        for p in self.parameters.values():
            p.zero_grad()

    def step(self):
        self.step_count += 1
        b1, b2 = self.beta1, self.beta2
        correct1 = 1.0 - b1**self.step_count
        correct2 = 1.0 - b2**self.step_count
        for name, p in self.parameters.items():
            g = p.grad
            if g is None:
                continue
            m = self._first[name] = b1 * self._first[name] + (1 - b1) * g
            v = self._second[name] = b2 * self._second[name] + (1 - b2) * (g * g)
            p.data = p.data - self.lr * (m / correct1) / (np.sqrt(v / correct2) + self.epsilon)
