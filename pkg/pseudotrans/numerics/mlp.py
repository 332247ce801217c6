from __future__ import print_function
import copy
import json
import numpy as np
from pseudotrans.errors import DimensionError, ValidationError
from pseudotrans.numerics.losses import softmax

"""
feed-forward classifier with ReLU hidden layers and analytic gradients

    x (B x d) -> [W0, b0] -> relu -> [W1, b1] -> relu -> ... -> [Wn, bn] -> logits (B x K)

parameters are stored per layer as (W, b) with W of shape (out, in),
the flat parameter list used by the optimizers is [W0, b0, W1, b1, ...]
"""


def arch_id(widths):
    """architecture identifier, e.g. [16, 64, 64, 8] => "16-64-64-8" """
    return "-".join(["%d" % w for w in widths])


def relu(x):
    return np.maximum(x, 0.)


class MlpClassifier(object):
    activation = "relu"

    def __init__(self, widths, layers=None, rng=None):
        """
        :param widths: list of layer widths [d, h1, ..., K], at least [d, K]
        :param layers: list of (W, b) tuples, if None the layers are initialized
                       with He gaussian weights and zero biases drawn from rng
        :param rng: numpy.random.Generator used for initialization
        """
        widths = [int(w) for w in widths]
        if len(widths) < 2 or min(widths) < 1:
            raise ValidationError('widths must contain at least an input and an output width, got {}'.format(widths))
        self.widths = widths

        if layers is None:
            if rng is None:
                raise ValidationError('need either layers or rng')
            layers = []
            for nin, nout in zip(widths[:-1], widths[1:]):
                W = rng.standard_normal((nout, nin)) * np.sqrt(2. / nin)
                b = np.zeros(nout)
                layers.append((W, b))

        self.layers = []
        for n, (W, b) in enumerate(layers):
            W = np.asarray(W, float)
            b = np.asarray(b, float)
            if W.shape != (widths[n + 1], widths[n]) or b.shape != (widths[n + 1],):
                raise DimensionError('layer {} : expected W{} b{}, got W{} b{}'.format(
                    n, (widths[n + 1], widths[n]), (widths[n + 1],), W.shape, b.shape))
            self.layers.append((W, b))

        if len(self.layers) != len(widths) - 1:
            raise DimensionError('got {} layers for widths {}'.format(len(self.layers), widths))

    def __str__(self):
        return "{name}(arch={arch}, activation={activation})".format(
            name=self.__class__.__name__, arch=self.arch, activation=self.activation)

    @property
    def arch(self):
        return arch_id(self.widths)

    @property
    def input_dim(self):
        return self.widths[0]

    @property
    def output_dim(self):
        return self.widths[-1]

    def copy(self):
        return copy.deepcopy(self)

    # ------------------------------
    def parameters(self):
        """flat list of parameter arrays [W0, b0, W1, b1, ...] (not copies)"""
        params = []
        for W, b in self.layers:
            params.append(W)
            params.append(b)
        return params

    def set_parameters(self, params):
        assert len(params) == 2 * len(self.layers)
        layers = []
        for n in range(len(self.layers)):
            W, b = params[2 * n], params[2 * n + 1]
            if W.shape != self.layers[n][0].shape or b.shape != self.layers[n][1].shape:
                raise DimensionError('layer {} : parameter shapes changed'.format(n))
            layers.append((W, b))
        self.layers = layers

    # ------------------------------
    def _check_input(self, X):
        X = np.asarray(X, float)
        if X.ndim != 2:
            raise DimensionError('layer 0 : expected a 2D batch, got shape {}'.format(X.shape))
        if X.shape[1] != self.input_dim:
            raise DimensionError('layer 0 : input width {} does not match batch columns {}'.format(
                self.input_dim, X.shape[1]))
        return X

    def forward_cache(self, X):
        """
        :param X: batch, 2D array (B x d)
        :return logits: 2D array (B x K)
        :return cache: list of layer inputs, needed by backward
        """
        a = self._check_input(X)
        cache = []
        nlayer = len(self.layers)
        for n, (W, b) in enumerate(self.layers):
            cache.append(a)
            z = a.dot(W.T) + b
            a = relu(z) if n < nlayer - 1 else z
        return a, cache

    def forward(self, X):
        return self.forward_cache(X)[0]

    def features(self, X):
        """penultimate activations (input of the final layer)"""
        return self.forward_cache(X)[1][-1]

    def predict_proba(self, X):
        return softmax(self.forward(X))

    def predict(self, X):
        # argmax breaks ties toward the lowest index
        return np.argmax(self.forward(X), axis=1)

    # ------------------------------
    def backward(self, X, grad_logits, cache=None):
        """
        gradients of the mean batch loss
        :param X: batch, 2D array (B x d)
        :param grad_logits: per sample derivative of the loss wrt the logits (B x K)
        :param cache: output of forward_cache(X), recomputed if None
        :return: list of gradients matching self.parameters()
        """
        X = self._check_input(X)
        grad_logits = np.asarray(grad_logits, float)
        if grad_logits.shape != (X.shape[0], self.output_dim):
            raise DimensionError('layer {} : loss gradient shape {} does not match {}'.format(
                len(self.layers) - 1, grad_logits.shape, (X.shape[0], self.output_dim)))
        if cache is None:
            _, cache = self.forward_cache(X)

        B = float(X.shape[0])
        grads = [None] * (2 * len(self.layers))
        delta = grad_logits / B
        for n in range(len(self.layers) - 1, -1, -1):
            W, _ = self.layers[n]
            a = cache[n]
            grads[2 * n] = delta.T.dot(a)
            grads[2 * n + 1] = delta.sum(axis=0)
            if n:
                # cache[n] = relu(z_{n-1}), its derivative is 1 where the activation is positive
                delta = delta.dot(W) * (a > 0.)
        return grads

    # ------------------------------
    def swap_final_layer(self, new_K, init_scale, rng):
        """
        new classifier sharing copies of all layers but the last one,
        the last layer is initialized with init_scale * N(0, 1) weights and zero biases
        """
        if new_K < 2:
            raise ValidationError('new_K must be >= 2, got {}'.format(new_K))
        widths = self.widths[:-1] + [int(new_K)]
        layers = [(W.copy(), b.copy()) for W, b in self.layers[:-1]]
        nin = widths[-2]
        layers.append((init_scale * rng.standard_normal((new_K, nin)), np.zeros(new_K)))
        return MlpClassifier(widths, layers=layers)

    # ------------------------------
    def to_dict(self):
        return {"arch": list(self.widths),
                "layers": [{"w": W.ravel().tolist(), "b": b.tolist()} for W, b in self.layers],
                "output_dim": self.output_dim}

    @classmethod
    def from_dict(cls, d):
        widths = [int(w) for w in d['arch']]
        if int(d['output_dim']) != widths[-1]:
            raise ValidationError('output_dim {} does not match arch {}'.format(d['output_dim'], widths))
        layers = []
        for n, l in enumerate(d['layers']):
            W = np.asarray(l['w'], float)
            if W.size != widths[n + 1] * widths[n]:
                raise DimensionError('layer {} : {} weights for shape {}'.format(
                    n, W.size, (widths[n + 1], widths[n])))
            layers.append((W.reshape((widths[n + 1], widths[n])), np.asarray(l['b'], float)))
        return cls(widths, layers=layers)

    def write(self, filename):
        with open(filename, 'w') as fid:
            json.dump(self.to_dict(), fid)


def load_classifier(filename):
    with open(filename, 'r') as fid:
        return MlpClassifier.from_dict(json.load(fid))


def forward(classifier, batch):
    return classifier.forward(batch)


def backward(classifier, batch, loss_grad_logits):
    return classifier.backward(batch, loss_grad_logits)


def swap_final_layer(classifier, new_K, init_scale, rng):
    return classifier.swap_final_layer(new_K, init_scale, rng)
