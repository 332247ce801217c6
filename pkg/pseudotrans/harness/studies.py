from __future__ import print_function
import os
import json
import numpy as np
from pseudotrans.errors import ValidationError
from pseudotrans.diagnostics.metrics import frechet_distance, spearman, pearson
from pseudotrans.harness.records import ResultsFile, mean_accuracy
from pseudotrans.harness.experiment import ExperimentContext, run_experiment, build_artifact
from pseudotrans.PseudoTL.files import \
    ALIGNMENTFILE, ALIGNMENTSUMMARYFILE, ALIGNMENTRUNGDIR, SWEEPFILE, SWEEPVALUEDIR, GAPSFILE
from pseudotrans.defaults import DEFAULT_ALIGNMENT_LADDER

ALIGNMENT_HEADER = ["sigma_align", "fd_pseudo_target", "scratch_accuracy", "pssl_accuracy", "gain"]
SWEEP_HEADER = ["method", "seed", "value", "accuracy", "fd_pseudo_target"]
GAPS_HEADER = ["seed", "fd_source_target", "fd_filtered_target", "fd_pseudo_target"]

# methods affected by each sweepable parameter
SWEEP_METHODS = {
    "label_function": ["pssl"],
    "n_pseudo": ["pssl"],
    "ssl_method": ["pssl"],
    "pp_strategy": ["pp"],
    "sigma_align": ["scratch", "pssl"]}


def _mean_fd(records, method):
    fds = [r.fd_pseudo_target for r in records
           if r.method == method and not r.failed and r.fd_pseudo_target is not None]
    return float(np.mean(fds)) if len(fds) else np.nan


def _fmt(value):
    return repr(float(value)) if isinstance(value, (float, np.floating)) else str(value)


# ------------------------------
class AlignmentResult(object):
    def __init__(self, sigmas, fds, gains, spearman, pearson):
        self.sigmas = sigmas
        self.fds = fds
        self.gains = gains
        self.spearman = spearman
        self.pearson = pearson

    def __str__(self):
        lines = ["{:>12s} {:>14s} {:>10s}".format("sigma_align", "fd", "gain")]
        for s, f, g in zip(self.sigmas, self.fds, self.gains):
            lines.append("{:12.4f} {:14.4f} {:10.4f}".format(s, f, g))
        lines.append("spearman {}".format(self.spearman))
        lines.append("pearson  {}".format(self.pearson))
        return "\n".join(lines)

    def to_dict(self):
        return {"sigma_align": list(self.sigmas),
                "fd_pseudo_target": list(self.fds),
                "gain": list(self.gains),
                "spearman": self.spearman.to_dict(),
                "pearson": self.pearson.to_dict()}


def alignment_study(config, ladder=DEFAULT_ALIGNMENT_LADDER, verbose=None):
    """
    for each rung of the alignment ladder, run scratch and pssl, then correlate
    the frechet distance of the pseudo dataset to the target data with the accuracy gain of pssl
    :param config: ExperimentConfig, its task sigma_align is replaced by each rung
    :param ladder: list of sigma_align values, at least 4
    :return: AlignmentResult
    """
    ladder = [float(s) for s in ladder]
    if len(ladder) < 4:
        raise ValidationError('the alignment ladder needs at least 4 rungs, got {}'.format(len(ladder)))

    fds, gains, rows = [], [], []
    for sigma in ladder:
        cfg = config.copy(task=config.task.copy(sigma_align=sigma), methods=["scratch", "pssl"],
                          output_dir=ALIGNMENTRUNGDIR.format(outdir=config.output_dir, sigma=sigma))
        records = run_experiment(cfg, verbose=verbose)
        scratch, pssl = mean_accuracy(records, "scratch"), mean_accuracy(records, "pssl")
        fds.append(_mean_fd(records, "pssl"))
        gains.append(pssl - scratch)
        rows.append([_fmt(sigma), _fmt(fds[-1]), _fmt(scratch), _fmt(pssl), _fmt(gains[-1])])

    result = AlignmentResult(ladder, fds, gains, spearman(fds, gains), pearson(fds, gains))

    with ResultsFile(ALIGNMENTFILE.format(outdir=config.output_dir), header=ALIGNMENT_HEADER) as rf:
        for row in rows:
            rf.writerow(row)
    with open(ALIGNMENTSUMMARYFILE.format(outdir=config.output_dir), 'w') as fid:
        json.dump(result.to_dict(), fid, indent=2, sort_keys=True)
    return result


# ------------------------------
def sweep_config(config, parameter, value):
    """copy of config with one parameter set to value"""
    if parameter == "label_function":
        return config.copy(label_function=value)
    elif parameter == "n_pseudo":
        return config.copy(n_pseudo=int(value))
    elif parameter == "ssl_method":
        return config.copy(ssl=config.ssl.copy(method=value))
    elif parameter == "pp_strategy":
        return config.copy(pp_strategy=value)
    elif parameter == "sigma_align":
        return config.copy(task=config.task.copy(sigma_align=float(value)))
    raise ValidationError('cannot sweep {}, use one of {}'.format(parameter, sorted(SWEEP_METHODS.keys())))


def sweep(config, parameter, values, methods=None, verbose=None):
    """
    run the methods affected by parameter for every value
    :return: list of (value, records)
    """
    if parameter not in SWEEP_METHODS.keys():
        raise ValidationError('cannot sweep {}, use one of {}'.format(parameter, sorted(SWEEP_METHODS.keys())))
    if methods is None:
        methods = SWEEP_METHODS[parameter]

    results = []
    context = None
    with ResultsFile(SWEEPFILE.format(outdir=config.output_dir, parameter=parameter), header=SWEEP_HEADER) as rf:
        for value in values:
            cfg = sweep_config(config, parameter, value).copy(
                methods=list(methods),
                output_dir=SWEEPVALUEDIR.format(outdir=config.output_dir, parameter=parameter, value=value))
            if context is None or parameter == "sigma_align":
                context = ExperimentContext(cfg.with_seed_override(), verbose=verbose)
            records = run_experiment(cfg, context=context, verbose=verbose)
            for r in records:
                rf.writerow([r.method, str(r.seed), str(value),
                             "nan" if r.failed else _fmt(r.accuracy),
                             "" if r.fd_pseudo_target is None else _fmt(r.fd_pseudo_target)])
            results.append((value, records))
    return results


# ------------------------------
def distribution_gaps(config, verbose=None):
    """
    frechet distances to the labeled target data of
        the source data, the confidence filtered source data and the pseudo dataset
    :return: list of dicts, one per seed
    """
    config = config.with_seed_override()
    verbose = config.verbose if verbose is None else verbose
    ctx = ExperimentContext(config, verbose=verbose)

    keep = np.isin(ctx.D_s.labels, ctx.filtered_classes)
    fd_source = frechet_distance(ctx.D_s.features, ctx.D_t.features)
    fd_filtered = frechet_distance(ctx.D_s.features[keep], ctx.D_t.features) if keep.sum() >= 2 else np.nan

    gaps = []
    for seed in config.seeds:
        pcs = build_artifact(ctx, config, "pcs", seed, verbose=verbose)
        gaps.append({"seed": seed,
                     "fd_source_target": fd_source,
                     "fd_filtered_target": fd_filtered,
                     "fd_pseudo_target": pcs['fd']})
        if verbose:
            print("seed {seed} : FD(D_s, D_t)={fd_source_target:.4f} FD(F(D_s), D_t)={fd_filtered_target:.4f} "
                  "FD(D_s<-t, D_t)={fd_pseudo_target:.4f}".format(**gaps[-1]))

    if not os.path.isdir(config.output_dir):
        os.makedirs(config.output_dir)
    with ResultsFile(GAPSFILE.format(outdir=config.output_dir), header=GAPS_HEADER) as rf:
        for g in gaps:
            rf.writerow([str(g['seed'])] + [_fmt(g[k]) for k in GAPS_HEADER[1:]])
    return gaps
