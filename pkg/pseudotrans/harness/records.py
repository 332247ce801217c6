from __future__ import print_function
import os
import csv
import json
import numpy as np
from pseudotrans.errors import ValidationError

RESULTS_HEADER = ["method", "seed", "accuracy", "fd_pseudo_target", "seconds", "config_hash"]


def _fmt(value):
    """shortest round trip float repr, empty for missing values"""
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _parse_float(s):
    return None if s == "" else float(s)


class RunRecord(object):
    def __init__(self, method, seed, accuracy, fd_pseudo_target=None, seconds=0.,
                 config_hash="", val_accuracy=None, error=None):
        """
        :param accuracy: target test accuracy in [0, 1], nan for a failed run
        :param fd_pseudo_target: frechet distance between the pseudo dataset and the target data,
                                 None for methods that do not use pseudo samples
        :param error: error message of a failed run
        """
        accuracy = float(accuracy)
        if not np.isnan(accuracy) and not 0. <= accuracy <= 1.:
            raise ValidationError('accuracy must be in [0, 1], got {}'.format(accuracy))
        self.method = method
        self.seed = int(seed)
        self.accuracy = accuracy
        self.fd_pseudo_target = None if fd_pseudo_target is None else float(fd_pseudo_target)
        self.seconds = float(seconds)
        self.config_hash = config_hash
        self.val_accuracy = None if val_accuracy is None else float(val_accuracy)
        self.error = error

    def __str__(self):
        fd = "" if self.fd_pseudo_target is None else " fd={:.4f}".format(self.fd_pseudo_target)
        return "{:<20s} seed={:<4d} accuracy={:.4f}{} ({:.1f}s)".format(
            self.method, self.seed, self.accuracy, fd, self.seconds)

    @property
    def failed(self):
        return self.error is not None

    def row(self):
        return [self.method, str(self.seed),
                "nan" if np.isnan(self.accuracy) else _fmt(self.accuracy),
                _fmt(self.fd_pseudo_target), "%.3f" % self.seconds, self.config_hash]

    @classmethod
    def from_row(cls, row):
        d = dict(zip(RESULTS_HEADER, row))
        accuracy = float(d['accuracy'])
        # the error message stays in errors.log
        return cls(method=d['method'], seed=int(d['seed']), accuracy=accuracy,
                   fd_pseudo_target=_parse_float(d['fd_pseudo_target']),
                   seconds=float(d['seconds']), config_hash=d['config_hash'],
                   error="failed" if np.isnan(accuracy) else None)


# ------------------------------
class ResultsFile(object):
    """
    incremental csv writer
    with ResultsFile("results/results.csv") as rf:
        rf.write(record)
    """

    def __init__(self, filename, header=RESULTS_HEADER):
        self.filename = filename
        self.header = header

    def __enter__(self):
        dirname = os.path.dirname(self.filename)
        if dirname and not os.path.isdir(dirname):
            os.makedirs(dirname)
        self.fid = open(self.filename, 'w', newline='')
        self.writer = csv.writer(self.fid, lineterminator='\n')
        self.writer.writerow(self.header)
        self.fid.flush()
        return self

    def __exit__(self, *args):
        self.fid.close()

    def write(self, record):
        self.writerow(record.row())

    def writerow(self, row):
        self.writer.writerow(row)
        self.fid.flush()


def read_results(filename):
    with open(filename, 'r', newline='') as fid:
        reader = csv.reader(fid)
        header = next(reader)
        if header != RESULTS_HEADER:
            raise ValidationError('{} : unexpected header {}'.format(filename, header))
        return [RunRecord.from_row(row) for row in reader]


# ------------------------------
def summarize(records):
    """per method statistics over the successful runs"""
    summary = {}
    for method in sorted(set([r.method for r in records])):
        rs = [r for r in records if r.method == method]
        ok = [r for r in rs if not r.failed]
        acc = np.array([r.accuracy for r in ok])
        val = np.array([r.val_accuracy for r in ok if r.val_accuracy is not None])
        fds = np.array([r.fd_pseudo_target for r in ok if r.fd_pseudo_target is not None])
        summary[method] = {
            "nruns": len(rs),
            "nfailed": len(rs) - len(ok),
            "accuracy_mean": float(acc.mean()) if acc.size else None,
            "accuracy_std": float(acc.std()) if acc.size else None,
            "val_accuracy_mean": float(val.mean()) if val.size else None,
            "fd_pseudo_target_mean": float(fds.mean()) if fds.size else None}
    return summary


def write_summary(filename, records, config_hash):
    with open(filename, 'w') as fid:
        json.dump({"config_hash": config_hash, "methods": summarize(records)}, fid, indent=2, sort_keys=True)


def mean_accuracy(records, method):
    acc = [r.accuracy for r in records if r.method == method and not r.failed]
    return float(np.mean(acc)) if len(acc) else np.nan
