class ValidationError(ValueError):
    """an input violates a documented precondition
    (non-simplex label, asymmetric matrix, empty class, unknown option...)"""
    pass


class DimensionError(ValidationError):
    """shape mismatch between an array and the object that consumes it"""
    pass


class TrainingError(Exception):
    """a training loop diverged (non finite loss)"""

    def __init__(self, method, step, lr, last_loss, message="non finite loss"):
        self.method = method
        self.step = step
        self.lr = lr
        self.last_loss = last_loss
        Exception.__init__(
            self, "{method} diverged at step {step} (lr={lr:g}, last finite loss={last_loss}) : {message}".format(
                method=method, step=step, lr=lr, last_loss=last_loss, message=message))
