from __future__ import print_function

from pseudotrans.utils import evalifpossible
from pseudotrans.harness.studies import sweep as run_sweep, SWEEP_METHODS
from pseudotrans.harness.records import mean_accuracy
from pseudotrans.PseudoTL.files import SWEEPFILE
from pseudotrans.PseudoTL.plugins.experiment import experiment_config

# ------------------------------ autorized_keys
authorized_keys = ["-config", "-out", "-seeds", "-methods", "-param", "-values", "-h", "-help"]

# ------------------------------ help messages
short_help = "--sweep      vary one setting and rerun the methods it affects"

long_help = """\
--sweep              run the affected methods for every value of one setting
                     file written : {table}
    -config  s       experiment configuration file (json), default : built-in settings
    -out     s       output directory, default results
    -seeds   i [i..] seeds, overrides the configuration
    -methods s [s..] methods to run, default : the ones affected by -param
    -param   s       setting to vary in {params}
    -values  s [s..] values of the setting
    -h, -help        display the help message for this plugin
""".format(table=SWEEPFILE, params=sorted(SWEEP_METHODS.keys()))

# ------------------------------ example usage
example = """\
## SWEEP
# size of the pseudo dataset

PseudoTL --sweep -param n_pseudo -values 1000 5000 10000 50000

# output label functions

PseudoTL --sweep -param label_function -values softmax temp_softmax argmax sparsemax classwise_mean random
"""


def sweep(argv, verbose, mapkwargs):

    if '-h' in argv.keys() or "-help" in argv.keys():
        print(long_help)
        return

    for k in argv.keys():
        if k in ['main', "_keyorder"]:
            continue  # private keys

        if k not in authorized_keys:
            raise Exception('option %s is not recognized' % k)

    if "-param" not in argv.keys() or "-values" not in argv.keys():
        raise Exception('please provide -param and -values')

    parameter = argv['-param'][0]
    values = [evalifpossible(v) for v in argv['-values']]
    methods = argv.get('-methods')
    config = experiment_config({k: v for k, v in argv.items() if k != "-methods"}, mapkwargs, verbose)
    results = run_sweep(config, parameter, values, methods=methods)

    for value, records in results:
        line = "{} = {:<16s}".format(parameter, str(value))
        for method in sorted(set([r.method for r in records])):
            line += " {} {:.4f}".format(method, mean_accuracy(records, method))
        print(line)
