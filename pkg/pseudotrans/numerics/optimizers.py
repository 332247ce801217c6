import numpy as np
from pseudotrans.errors import ValidationError, DimensionError


class OptimizerState(object):
    """
    state of the Nesterov momentum SGD
        g <- grad + weight_decay * w
        v <- momentum * v + g
        w <- w - lr_e * (g + momentum * v)
    where lr_e = lr * decay_factor ** (number of decay points <= current epoch)
    """

    def __init__(self, params, lr, momentum=0.9, weight_decay=1e-4,
                 decay_epochs=(), decay_factor=0.1):
        """
        :param params: list of parameter arrays, used to shape the velocity buffers
        :param lr: float > 0, initial learning rate (0 accepted to freeze the parameters)
        :param momentum: float in [0, 1)
        :param weight_decay: float >= 0
        :param decay_epochs: epochs (or steps) at which the rate is multiplied by decay_factor
        :param decay_factor: float in (0, 1]
        """
        if lr < 0.:
            raise ValidationError('lr must be >= 0, got {}'.format(lr))
        if not 0. <= momentum < 1.:
            raise ValidationError('momentum must be in [0, 1), got {}'.format(momentum))
        if weight_decay < 0.:
            raise ValidationError('weight_decay must be >= 0, got {}'.format(weight_decay))
        if not 0. < decay_factor <= 1.:
            raise ValidationError('decay_factor must be in (0, 1], got {}'.format(decay_factor))

        self.velocity = [np.zeros_like(p) for p in params]
        self.step = 0
        self.epoch = 0
        self.lr = float(lr)
        self.momentum = float(momentum)
        self.weight_decay = float(weight_decay)
        self.decay_epochs = sorted([int(e) for e in decay_epochs])
        self.decay_factor = float(decay_factor)

    def __str__(self):
        return "{name}(lr={lr}, momentum={momentum}, weight_decay={weight_decay}, " \
               "decay_epochs={decay_epochs}, decay_factor={decay_factor}, step={step})".format(
                name=self.__class__.__name__, lr=self.lr, momentum=self.momentum,
                weight_decay=self.weight_decay, decay_epochs=self.decay_epochs,
                decay_factor=self.decay_factor, step=self.step)

    def current_lr(self):
        ndecay = sum([1 for e in self.decay_epochs if e <= self.epoch])
        return self.lr * self.decay_factor ** ndecay


def sgd_step(params, grads, state):
    """
    one Nesterov SGD update
    :param params: list of parameter arrays
    :param grads: list of gradients with the same shapes
    :param state: OptimizerState, its velocity buffers are updated in place
    :return: list of new parameter arrays (inputs are not modified), state
    """
    if len(params) != len(grads) or len(params) != len(state.velocity):
        raise DimensionError('got {} parameters, {} gradients and {} velocity buffers'.format(
            len(params), len(grads), len(state.velocity)))

    lr = state.current_lr()
    mu = state.momentum
    newparams = []
    for n, (w, g, v) in enumerate(zip(params, grads, state.velocity)):
        if w.shape != g.shape or w.shape != v.shape:
            raise DimensionError('parameter {} : shape {} vs gradient {} vs velocity {}'.format(
                n, w.shape, g.shape, v.shape))
        if state.weight_decay:
            g = g + state.weight_decay * w
        v = mu * v + g
        state.velocity[n] = v
        newparams.append(w - lr * (g + mu * v))
    state.step += 1
    return newparams, state
