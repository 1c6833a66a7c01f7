"""MLP surrogate of the cost-of-transport landscape.

A small fully connected network with tanh hidden units is trained by
minibatch gradient descent on a four-term loss: Huber data term, squared
input-gradient penalty (keeps the learned landscape smooth enough for
downstream gradient-based search), and L1/L2 weight penalties. tanh is used
because the gradient penalty is itself differentiated, which requires a twice
differentiable activation.

The penalty's parameter gradient is computed exactly by backpropagating
through a forward-mode (tangent) pass: mean ||g||^2 with g = input gradient
equals the directional derivative of the output along c = (2/n) g, with c
held constant; reverse mode over that augmented graph yields the exact
second-order term without any autodiff framework.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, asdict

import numpy as np


class NonFiniteLoss(RuntimeError):
    pass


@dataclass(frozen=True)
class TrainConfig:
    hidden: tuple = (256, 256)
    epochs: int = 10_000
    batch_size: int = 1024
    lr_init: float = 0.1
    lr_end: float = 5e-4
    huber_delta: float = 1.0
    lambda_grad: float = 5e-2
    lambda_l1: float = 5e-4
    lambda_l2: float = 5e-4
    loss_kind: str = "huber"  # "huber" | "squared"


@dataclass
class SurrogateNet:
    """Weights plus the label normalization recorded at training time."""

    layer_sizes: list
    weights: list          # W[i]: (out_i, in_i), row-major
    biases: list           # b[i]: (out_i,)
    y_mean: float = 0.0
    y_std: float = 1.0
    config: TrainConfig = field(default_factory=TrainConfig)
    seed: int = 0
    final_loss: float = float("nan")
    loss_history: list = field(default_factory=list)

    @property
    def n_hidden(self) -> int:
        return len(self.layer_sizes) - 2


def init_net(d_in: int, hidden, seed: int, config: TrainConfig | None = None) -> SurrogateNet:
    """Seeded Xavier-uniform initialization; final bias starts at zero."""
    rng = np.random.default_rng(seed)
    sizes = [d_in, *hidden, 1]
    weights, biases = [], []
    for fan_in, fan_out in zip(sizes[:-1], sizes[1:]):
        bound = math.sqrt(6.0 / (fan_in + fan_out))
        weights.append(rng.uniform(-bound, bound, size=(fan_out, fan_in)))
        biases.append(np.zeros(fan_out))
    return SurrogateNet(sizes, weights, biases,
                        config=config or TrainConfig(hidden=tuple(hidden)), seed=seed)


def _forward_cached(net: SurrogateNet, x: np.ndarray):
    """Activations per layer plus the raw scalar output."""
    a = [np.atleast_2d(np.asarray(x, dtype=float))]
    n_hidden = net.n_hidden
    for i in range(n_hidden):
        z = a[-1] @ net.weights[i].T + net.biases[i]
        a.append(np.tanh(z))
    y = (a[-1] @ net.weights[-1].T + net.biases[-1]).ravel()
    return y, a


def forward(net: SurrogateNet, x) -> np.ndarray:
    """Raw network output (normalized units); accepts a point or a batch."""
    x = np.asarray(x, dtype=float)
    single = x.ndim == 1
    y, _ = _forward_cached(net, x)
    return float(y[0]) if single else y


def predict(net: SurrogateNet, x) -> np.ndarray:
    """De-standardized prediction in label units."""
    raw = forward(net, x)
    return raw * net.y_std + net.y_mean


def input_gradient(net: SurrogateNet, x):
    """Exact gradient of the raw output with respect to the input."""
    x = np.asarray(x, dtype=float)
    single = x.ndim == 1
    _, a = _forward_cached(net, x)
    g = _input_gradient_from_cache(net, a)
    return g[0] if single else g


def _input_gradient_from_cache(net: SurrogateNet, a) -> np.ndarray:
    n = a[0].shape[0]
    L = net.n_hidden
    if L == 0:
        return np.broadcast_to(net.weights[0][0], (n, a[0].shape[1])).copy()
    v = (1.0 - a[L] ** 2) * net.weights[L][0]          # (n, h_L)
    for l in range(L - 1, 0, -1):
        v = (v @ net.weights[l]) * (1.0 - a[l] ** 2)
    return v @ net.weights[0]


def huber(residual, delta: float):
    """Quadratic inside |r| <= delta, linear outside, continuous at the knee."""
    if delta <= 0:
        raise ValueError("delta must be positive")
    r = np.asarray(residual, dtype=float)
    absr = np.abs(r)
    out = np.where(absr <= delta, 0.5 * r * r, delta * (absr - 0.5 * delta))
    return float(out) if out.ndim == 0 else out


def _data_loss_and_e(residual: np.ndarray, cfg: TrainConfig):
    n = residual.size
    if cfg.loss_kind == "squared":
        return float(0.5 * np.mean(residual ** 2)), residual / n
    d = cfg.huber_delta
    loss = float(np.mean(huber(residual, d)))
    e = np.clip(residual, -d, d) / n
    return loss, e


def penalty_value(net: SurrogateNet, x) -> float:
    """Mean squared input-gradient norm over a batch (exact)."""
    g = input_gradient(net, np.atleast_2d(np.asarray(x, dtype=float)))
    return float(np.mean(np.sum(g * g, axis=1)))


def penalty_value_fd(net: SurrogateNet, x, h: float = 1e-5) -> float:
    """Finite-difference fallback for the penalty value (verification mode)."""
    x = np.atleast_2d(np.asarray(x, dtype=float))
    n, d = x.shape
    g = np.empty((n, d))
    for j in range(d):
        step = np.zeros(d)
        step[j] = h
        g[:, j] = (forward(net, x + step) - forward(net, x - step)) / (2 * h)
    return float(np.mean(np.sum(g * g, axis=1)))


def loss_and_grads(net: SurrogateNet, x: np.ndarray, y: np.ndarray, cfg: TrainConfig):
    """Total loss and exact parameter gradients for one batch.

    y is expected in standardized units. Returns (loss, grad_w, grad_b).
    """
    n = x.shape[0]
    L = net.n_hidden
    W, B = net.weights, net.biases
    yhat, a = _forward_cached(net, x)
    s = [1.0 - a[l] ** 2 for l in range(1, L + 1)]      # s[l-1] for hidden layer l

    grad_w = [np.zeros_like(w) for w in W]
    grad_b = [np.zeros_like(b) for b in B]

    # Data term.
    residual = yhat - y
    data_loss, e = _data_loss_and_e(residual, cfg)
    delta = e[:, None]                                   # (n, 1)
    grad_w[-1] += delta.T @ a[L]
    grad_b[-1] += delta.sum(axis=0)
    for l in range(L, 0, -1):
        delta = (delta @ W[l]) * s[l - 1]
        grad_w[l - 1] += delta.T @ a[l - 1]
        grad_b[l - 1] += delta.sum(axis=0)

    # Input-gradient penalty via tangent (forward-mode) pass + reverse pass.
    pen = 0.0
    if cfg.lambda_grad > 0:
        g = _input_gradient_from_cache(net, a)
        pen = float(np.mean(np.sum(g * g, axis=1)))
        c = (2.0 / n) * g                                # held constant
        adot = [c]
        zdot = [None]
        for l in range(1, L + 1):
            zd = adot[l - 1] @ W[l - 1].T
            zdot.append(zd)
            adot.append(s[l - 1] * zd)
        pw = [np.zeros_like(w) for w in W]
        pb = [np.zeros_like(b) for b in B]
        pw[-1] += adot[L].sum(axis=0)[None, :]
        adot_bar = np.broadcast_to(W[-1][0], adot[L].shape)  # dS/d adot[L]
        carry_abar = np.zeros_like(adot[L])
        for l in range(L, 0, -1):
            zbar_dot = adot_bar * s[l - 1]
            sbar = adot_bar * zdot[l]
            abar = carry_abar + sbar * (-2.0 * a[l])
            zbar = abar * s[l - 1]
            pw[l - 1] += zbar_dot.T @ adot[l - 1] + zbar.T @ a[l - 1]
            pb[l - 1] += zbar.sum(axis=0)
            carry_abar = zbar @ W[l - 1]
            if l > 1:
                adot_bar = zbar_dot @ W[l - 1]
        for i in range(len(W)):
            grad_w[i] += cfg.lambda_grad * pw[i]
            grad_b[i] += cfg.lambda_grad * pb[i]

    # Weight penalties (weights only, not biases).
    l1 = sum(float(np.abs(w).sum()) for w in W)
    l2 = sum(float((w * w).sum()) for w in W)
    for i, w in enumerate(W):
        grad_w[i] += cfg.lambda_l1 * np.sign(w) + 2.0 * cfg.lambda_l2 * w

    loss = data_loss + cfg.lambda_grad * pen + cfg.lambda_l1 * l1 + cfg.lambda_l2 * l2
    return loss, grad_w, grad_b


def _cosine_lr(cfg: TrainConfig, epoch: int) -> float:
    if cfg.epochs <= 1:
        return cfg.lr_init
    t = epoch / (cfg.epochs - 1)
    return cfg.lr_end + 0.5 * (cfg.lr_init - cfg.lr_end) * (1.0 + math.cos(math.pi * t))


def train(x: np.ndarray, y: np.ndarray, cfg: TrainConfig, seed: int) -> SurrogateNet:
    """Minibatch gradient descent with a cosine-annealed learning rate.

    x is expected in [0, 1]^d; labels are standardized internally and the
    statistics are recorded on the returned net. Deterministic per seed.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float).ravel()
    if x.ndim != 2 or x.shape[0] == 0:
        raise ValueError("need a non-empty 2-D design matrix")
    if x.shape[0] != y.size:
        raise ValueError("x/y row mismatch")

    y_mean = float(y.mean())
    y_std = float(y.std())
    if y_std == 0.0:
        y_std = 1.0
    y_n = (y - y_mean) / y_std

    rng = np.random.default_rng(seed)
    net = init_net(x.shape[1], cfg.hidden, seed=seed, config=cfg)
    net.y_mean, net.y_std = y_mean, y_std

    n = x.shape[0]
    batch = min(cfg.batch_size, n)
    history = []
    for epoch in range(cfg.epochs):
        lr = _cosine_lr(cfg, epoch)
        perm = rng.permutation(n)
        epoch_losses = []
        for start in range(0, n, batch):
            idx = perm[start:start + batch]
            loss, gw, gb = loss_and_grads(net, x[idx], y_n[idx], cfg)
            if not math.isfinite(loss):
                raise NonFiniteLoss(f"loss became non-finite at epoch {epoch}")
            for i in range(len(net.weights)):
                net.weights[i] -= lr * gw[i]
                net.biases[i] -= lr * gb[i]
            epoch_losses.append(loss)
        history.append(float(np.mean(epoch_losses)))
    net.loss_history = history
    net.final_loss = history[-1] if history else float("nan")
    return net


def net_to_dict(net: SurrogateNet) -> dict:
    return {
        "layer_sizes": list(net.layer_sizes),
        "weights": [w.tolist() for w in net.weights],
        "biases": [b.tolist() for b in net.biases],
        "y_mean": net.y_mean,
        "y_std": net.y_std,
        "config": asdict(net.config) | {"hidden": list(net.config.hidden)},
        "seed": net.seed,
        "final_loss": net.final_loss,
    }


def net_from_dict(d: dict) -> SurrogateNet:
    cfg_d = dict(d["config"])
    cfg_d["hidden"] = tuple(cfg_d["hidden"])
    return SurrogateNet(
        layer_sizes=list(d["layer_sizes"]),
        weights=[np.array(w, dtype=float) for w in d["weights"]],
        biases=[np.array(b, dtype=float) for b in d["biases"]],
        y_mean=d["y_mean"],
        y_std=d["y_std"],
        config=TrainConfig(**cfg_d),
        seed=d["seed"],
        final_loss=d.get("final_loss", float("nan")),
    )


def save_checkpoint(net: SurrogateNet, path) -> None:
    with open(path, "w") as fh:
        json.dump(net_to_dict(net), fh, indent=1, sort_keys=True)
        fh.write("\n")


def load_checkpoint(path) -> SurrogateNet:
    with open(path) as fh:
        return net_from_dict(json.load(fh))


__all__ = [
    "NonFiniteLoss", "TrainConfig", "SurrogateNet", "init_net", "forward",
    "predict", "input_gradient", "huber", "penalty_value", "penalty_value_fd",
    "loss_and_grads", "train", "net_to_dict", "net_from_dict",
    "save_checkpoint", "load_checkpoint",
]
