from __future__ import print_function

from pseudotrans.harness.config import ExperimentConfig, load_config, SEED_OVERRIDE_VARIABLE
from pseudotrans.harness.experiment import run_experiment
from pseudotrans.harness.records import summarize
from pseudotrans.PseudoTL.files import RESULTSFILE, SUMMARYFILE
from pseudotrans.defaults import DEFAULT_METHODS, ALL_METHODS, DEFAULT_SEEDS

# ------------------------------ defaults
default_out = "results"
default_methods = DEFAULT_METHODS
default_seeds = DEFAULT_SEEDS

# ------------------------------ autorized_keys
authorized_keys = ["-config", "-out", "-methods", "-seeds", "-h", "-help"]

# ------------------------------ help messages
short_help = "--experiment run every (method, seed) cell of an experiment configuration"

long_help = """\
--experiment         build the task pair, the source classifier and the generator once,
                     then run every (method, seed) cell, results in {results}
    -config  s       experiment configuration file (json), default : built-in settings
    -out     s       output directory, default {default_out}
    -methods s [s..] methods to run in {methods}
                     default {default_methods}
    -seeds   i [i..] seeds, default {default_seeds}
                     the environment variable {override} (e.g. "0,1") overrides this list
    -h, -help        display the help message for this plugin
""".format(results=RESULTSFILE, default_out=default_out, methods=ALL_METHODS,
           default_methods=default_methods, default_seeds=default_seeds,
           override=SEED_OVERRIDE_VARIABLE)

# ------------------------------ example usage
example = """\
## EXPERIMENT
# run scratch and pssl over 2 seeds with 4 workers

PseudoTL -w 4 --experiment -methods scratch pssl -seeds 0 1 -out results
"""


def experiment_config(argv, mapkwargs, verbose):
    """experiment configuration from the plugin options, shared by the harness plugins"""
    config = load_config(argv['-config'][0]) if "-config" in argv.keys() else ExperimentConfig()
    changes = {"nworkers": mapkwargs.get('Nworkers') or 1, "verbose": verbose}
    if "-out" in argv.keys():
        changes['output_dir'] = argv['-out'][0]
    elif "-config" not in argv.keys():
        changes['output_dir'] = default_out
    if "-methods" in argv.keys():
        changes['methods'] = [str(m) for m in argv['-methods']]
    if "-seeds" in argv.keys():
        changes['seeds'] = [int(s) for s in argv['-seeds']]
    return config.copy(**changes)


def experiment(argv, verbose, mapkwargs):

    if '-h' in argv.keys() or "-help" in argv.keys():
        print(long_help)
        return

    for k in argv.keys():
        if k in ['main', "_keyorder"]:
            continue  # private keys

        if k not in authorized_keys:
            raise Exception('option %s is not recognized' % k)

    config = experiment_config(argv, mapkwargs, verbose)
    records = run_experiment(config)

    print("{:<20s} {:>6s} {:>8s} {:>10s} {:>10s}".format("method", "runs", "failed", "accuracy", "std"))
    for method, stats in sorted(summarize(records).items()):
        print("{:<20s} {:6d} {:8d} {:>10s} {:>10s}".format(
            method, stats['nruns'], stats['nfailed'],
            "nan" if stats['accuracy_mean'] is None else "%.4f" % stats['accuracy_mean'],
            "nan" if stats['accuracy_std'] is None else "%.4f" % stats['accuracy_std']))
    if verbose:
        print("=> {}, {}".format(RESULTSFILE.format(outdir=config.output_dir),
                                 SUMMARYFILE.format(outdir=config.output_dir)))
