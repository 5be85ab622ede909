"""Layered networks with absorbing sinks.

Nodes are numbered layer-major: input layer first, sinks last. Every matrix in the
package (Hamiltonian, transition matrix, density matrices) follows this order.
"""
import re
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from qswnet.errors import ModelSpecError

REDUCED_TAG = "r"
_TOKEN = re.compile(r"^(\d+)(%s?)$" % REDUCED_TAG)


@dataclass(frozen=True)
class ModelSpec:
    layer_sizes: tuple
    reduced_flags: tuple

    def __post_init__(self):
        object.__setattr__(self, "layer_sizes", tuple(int(s) for s in self.layer_sizes))
        object.__setattr__(self, "reduced_flags", tuple(bool(f) for f in self.reduced_flags))
        if len(self.layer_sizes) < 3:
            raise ModelSpecError("A model needs at least 3 layers (input, intermediate, sinks), got %i"
                                 % len(self.layer_sizes))
        if any(s < 1 for s in self.layer_sizes):
            raise ModelSpecError("Layer sizes must be positive, got %s" % (self.layer_sizes,))
        if len(self.reduced_flags) != len(self.layer_sizes) - 1:
            raise ModelSpecError("Expected one reduced flag per non-sink layer (%i), got %i"
                                 % (len(self.layer_sizes) - 1, len(self.reduced_flags)))

    @property
    def n_layers(self):
        return len(self.layer_sizes)

    @property
    def n_inputs(self):
        return self.layer_sizes[0]

    @property
    def n_sinks(self):
        return self.layer_sizes[-1]

    def __str__(self):
        return format_model_spec(self)


def parse_model_spec(text: str) -> ModelSpec:
    tokens = str(text).strip().split("-")
    sizes, flags = [], []
    for position, token in enumerate(tokens):
        match = _TOKEN.match(token.strip())
        if match is None:
            raise ModelSpecError("Malformed layer token %r in model %r" % (token, text))
        sizes.append(int(match.group(1)))
        flags.append(bool(match.group(2)))
    if len(sizes) < 3:
        raise ModelSpecError("Model %r has fewer than 3 layers" % text)
    if flags[-1]:
        raise ModelSpecError("The sink layer cannot be reduced in model %r" % text)
    return ModelSpec(layer_sizes=tuple(sizes), reduced_flags=tuple(flags[:-1]))


def format_model_spec(spec: ModelSpec) -> str:
    pairs = zip(spec.layer_sizes, spec.reduced_flags)
    tokens = ["%i%s" % (size, REDUCED_TAG if reduced else "") for size, reduced in pairs]
    tokens.append(str(spec.layer_sizes[-1]))
    return "-".join(tokens)


@dataclass(frozen=True, eq=False)
class Topology:
    spec: ModelSpec
    mask: np.ndarray
    sink_pairs: tuple
    layer_of: np.ndarray

    @classmethod
    def from_model(cls, model):
        if not isinstance(model, ModelSpec):
            model = parse_model_spec(model)
        return build_topology(model)

    @property
    def name(self):
        return format_model_spec(self.spec)

    @property
    def n_network(self):
        return self.mask.shape[0]

    @property
    def n_total(self):
        return self.layer_of.shape[0]

    @property
    def n_sinks(self):
        return len(self.sink_pairs)

    @cached_property
    def input_nodes(self):
        return tuple(int(i) for i in np.flatnonzero(self.layer_of == 0))

    @cached_property
    def sinker_nodes(self):
        return tuple(s for s, _ in self.sink_pairs)

    @cached_property
    def sink_nodes(self):
        return tuple(n for _, n in self.sink_pairs)

    def layer_nodes(self, layer):
        return tuple(int(i) for i in np.flatnonzero(self.layer_of == layer))

    def links(self):
        rows, cols = np.nonzero(np.triu(self.mask, 1))
        return list(zip(rows.tolist(), cols.tolist()))

    def summary(self):
        lines = ["model: %s" % self.name,
                 "nodes: %i (network %i, sinks %i)" % (self.n_total, self.n_network, self.n_sinks)]
        for layer in range(self.spec.n_layers):
            kind = "input" if layer == 0 else ("sinks" if layer == self.spec.n_layers - 1 else "intermediate")
            reduced = layer < len(self.spec.reduced_flags) and self.spec.reduced_flags[layer]
            labels = ", ".join(str(i + 1) for i in self.layer_nodes(layer))
            lines.append("layer %i (%s%s): %s" % (layer, kind, ", reduced" if reduced else "", labels))
        lines.append("links: " + ", ".join("%i-%i" % (i + 1, j + 1) for i, j in self.links()))
        lines.append("sink arcs: " + ", ".join("%i->%i" % (s + 1, n + 1) for s, n in self.sink_pairs))
        return "\n".join(lines)


def build_topology(spec: ModelSpec) -> Topology:
    offsets = np.concatenate([[0], np.cumsum(spec.layer_sizes)])
    layers = [np.arange(offsets[i], offsets[i + 1]) for i in range(spec.n_layers)]
    n_total = int(offsets[-1])
    n_network = n_total - spec.n_sinks
    last_hidden = spec.n_layers - 2

    mask = np.zeros((n_network, n_network), dtype=bool)
    for layer in range(spec.n_layers - 1):
        nodes = layers[layer]
        if not spec.reduced_flags[layer]:
            mask[np.ix_(nodes, nodes)] = True
        if layer < last_hidden:
            following = layers[layer + 1]
            mask[np.ix_(nodes, following)] = True
            mask[np.ix_(following, nodes)] = True
    np.fill_diagonal(mask, False)

    sinkers = layers[last_hidden]
    if spec.n_sinks > len(sinkers):
        raise ModelSpecError("Model %s has %i sinks but only %i nodes in its last intermediate layer"
                             % (format_model_spec(spec), spec.n_sinks, len(sinkers)))
    sink_pairs = tuple((int(s), int(n)) for s, n in zip(sinkers, layers[-1]))

    isolated = np.flatnonzero(~mask.any(axis=0))
    if isolated.size:
        nodes = (isolated + 1).tolist()
        raise ModelSpecError("Model %s leaves nodes %s without links" % (format_model_spec(spec), nodes))

    layer_of = np.concatenate([np.full(len(nodes), i) for i, nodes in enumerate(layers)])
    mask.flags.writeable = False
    layer_of.flags.writeable = False
    return Topology(spec=spec, mask=mask, sink_pairs=sink_pairs, layer_of=layer_of)


def classical_transition_from_adjacency(mask) -> np.ndarray:
    """Column-stochastic random-walk matrix T = A·D⁻¹ of an undirected graph."""
    adjacency = np.asarray(mask, dtype=float)
    degree = adjacency.sum(axis=0)
    if np.any(degree == 0):
        raise ModelSpecError("Isolated node(s) %s: no outgoing transition" % (np.flatnonzero(degree == 0) + 1).tolist())
    return adjacency / degree[np.newaxis, :]
