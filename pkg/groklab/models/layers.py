# Python 3.10.11
# Creado: 24/09/2026
"""Capas con ida y vuelta explícitas

Cada capa expone una función '*_forward' que devuelve la salida y una caché,
y una función '*_backward' que, dada la caché y el gradiente de la salida,
acumula los gradientes de los parámetros en el diccionario 'grads' y
devuelve el gradiente de la entrada. Las matrices se guardan como
(entrada, salida), de modo que una capa lineal es 'x @ W + b'.

"""

from __future__ import annotations

from typing import Any

import numpy as np

from groklab.core.nn import layer_norm_backward, layer_norm_forward, softmax

Params = dict[str, np.ndarray]
Cache = dict[str, Any]


def _accumulate(grads: Params, name: str, value: np.ndarray) -> None:
    grads[name] += value


def linear_forward(x: np.ndarray, weight: np.ndarray, bias: np.ndarray | None) -> np.ndarray:
    out = x @ weight
    if bias is not None:
        out = out + bias
    return out


def linear_backward(
    dout: np.ndarray,
    x: np.ndarray,
    weight: np.ndarray,
    grads: Params,
    prefix: str,
    bias: bool,
) -> np.ndarray:
    d_in, d_out = weight.shape
    _accumulate(grads, f"{prefix}.weight", x.reshape(-1, d_in).T @ dout.reshape(-1, d_out))
    if bias:
        _accumulate(grads, f"{prefix}.bias", dout.reshape(-1, d_out).sum(axis=0))
    return dout @ weight.T


def embed_forward(params: Params, tokens: np.ndarray, position: bool) -> np.ndarray:
    x = params["embed.token"][tokens]
    if position:
        x = x + params["embed.pos"][None, : tokens.shape[1]]
    return x


def embed_backward(dx: np.ndarray, tokens: np.ndarray, grads: Params, position: bool) -> None:
    np.add.at(grads["embed.token"], tokens.ravel(), dx.reshape(-1, dx.shape[-1]))
    if position:
        grads["embed.pos"][: tokens.shape[1]] += dx.sum(axis=0)


def _split_heads(x: np.ndarray, heads: int) -> np.ndarray:
    batch, seq, dim = x.shape
    return x.reshape(batch, seq, heads, dim // heads).transpose(0, 2, 1, 3)


def _merge_heads(x: np.ndarray) -> np.ndarray:
    batch, heads, seq, head_dim = x.shape
    return x.transpose(0, 2, 1, 3).reshape(batch, seq, heads * head_dim)


def attention_forward(
    params: Params, prefix: str, x: np.ndarray, heads: int, bias: bool
) -> tuple[np.ndarray, Cache]:
    """Atención multicabeza con escala 1/sqrt(dim_cabeza)"""
    dim = x.shape[-1]
    scale = 1.0 / np.sqrt(dim // heads)
    qkv = linear_forward(
        x,
        params[f"{prefix}.in_proj.weight"],
        params[f"{prefix}.in_proj.bias"] if bias else None,
    )
    q, k, v = (_split_heads(part, heads) for part in np.split(qkv, 3, axis=-1))
    attn = softmax((q @ k.transpose(0, 1, 3, 2)) * scale)
    ctx = _merge_heads(attn @ v)
    out = linear_forward(
        ctx,
        params[f"{prefix}.out_proj.weight"],
        params[f"{prefix}.out_proj.bias"] if bias else None,
    )
    return out, {"x": x, "q": q, "k": k, "v": v, "attn": attn, "ctx": ctx, "scale": scale}


def attention_backward(
    dout: np.ndarray, params: Params, prefix: str, cache: Cache, heads: int, bias: bool, grads: Params
) -> np.ndarray:
    dctx = linear_backward(
        dout, cache["ctx"], params[f"{prefix}.out_proj.weight"], grads, f"{prefix}.out_proj", bias
    )
    dctx = _split_heads(dctx, heads)
    attn, q, k, v = cache["attn"], cache["q"], cache["k"], cache["v"]
    dattn = dctx @ v.transpose(0, 1, 3, 2)
    dv = attn.transpose(0, 1, 3, 2) @ dctx
    dscores = attn * (dattn - np.sum(dattn * attn, axis=-1, keepdims=True)) * cache["scale"]
    dq = dscores @ k
    dk = dscores.transpose(0, 1, 3, 2) @ q
    dqkv = np.concatenate([_merge_heads(dq), _merge_heads(dk), _merge_heads(dv)], axis=-1)
    return linear_backward(
        dqkv, cache["x"], params[f"{prefix}.in_proj.weight"], grads, f"{prefix}.in_proj", bias
    )


def feedforward_forward(
    params: Params, prefix: str, x: np.ndarray, bias: bool
) -> tuple[np.ndarray, Cache]:
    pre = linear_forward(
        x, params[f"{prefix}.linear1.weight"], params[f"{prefix}.linear1.bias"] if bias else None
    )
    hidden = np.maximum(pre, 0.0)
    out = linear_forward(
        hidden,
        params[f"{prefix}.linear2.weight"],
        params[f"{prefix}.linear2.bias"] if bias else None,
    )
    return out, {"x": x, "pre": pre, "hidden": hidden}


def feedforward_backward(
    dout: np.ndarray, params: Params, prefix: str, cache: Cache, bias: bool, grads: Params
) -> np.ndarray:
    dhidden = linear_backward(
        dout, cache["hidden"], params[f"{prefix}.linear2.weight"], grads, f"{prefix}.linear2", bias
    )
    dpre = dhidden * (cache["pre"] > 0.0)
    return linear_backward(
        dpre, cache["x"], params[f"{prefix}.linear1.weight"], grads, f"{prefix}.linear1", bias
    )


def norm_forward(params: Params, prefix: str, x: np.ndarray) -> tuple[np.ndarray, Cache]:
    out, cache = layer_norm_forward(x, params[f"{prefix}.gamma"], params[f"{prefix}.beta"])
    return out, {"ln": cache}


def norm_backward(dout: np.ndarray, prefix: str, cache: Cache, grads: Params) -> np.ndarray:
    dx, dgamma, dbeta = layer_norm_backward(dout, cache["ln"])
    grads[f"{prefix}.gamma"] += dgamma
    grads[f"{prefix}.beta"] += dbeta
    return dx


def block_forward(
    params: Params, prefix: str, x: np.ndarray, heads: int, bias: bool, norm: bool
) -> tuple[np.ndarray, Cache]:
    """Bloque residual: atención y red feed-forward

    Con 'norm' es un bloque post-norm (LN(x + SA(x)), LN(h + FF(h))); sin él
    las dos sumas residuales se dejan tal cual.

    """
    cache: Cache = {}
    attn, cache["attn"] = attention_forward(params, f"{prefix}.attn", x, heads, bias)
    hidden = x + attn
    if norm:
        hidden, cache["norm1"] = norm_forward(params, f"{prefix}.norm1", hidden)
    ff, cache["ff"] = feedforward_forward(params, f"{prefix}.ff", hidden, bias)
    out = hidden + ff
    if norm:
        out, cache["norm2"] = norm_forward(params, f"{prefix}.norm2", out)
    return out, cache


def block_backward(
    dout: np.ndarray,
    params: Params,
    prefix: str,
    cache: Cache,
    heads: int,
    bias: bool,
    norm: bool,
    grads: Params,
) -> np.ndarray:
    if norm:
        dout = norm_backward(dout, f"{prefix}.norm2", cache["norm2"], grads)
    dhidden = dout + feedforward_backward(dout, params, f"{prefix}.ff", cache["ff"], bias, grads)
    if norm:
        dhidden = norm_backward(dhidden, f"{prefix}.norm1", cache["norm1"], grads)
    return dhidden + attention_backward(
        dhidden, params, f"{prefix}.attn", cache["attn"], heads, bias, grads
    )
