from __future__ import print_function

import json
from pseudotrans.numerics.mlp import load_classifier
from pseudotrans.synthetics.taskpair import load_dataset
from pseudotrans.diagnostics.metrics import confidence_filter
from pseudotrans.PseudoTL.files import SOURCECLASSIFIERFILE, TARGETTRAINFILE
from pseudotrans.defaults import DEFAULT_FILTER_THRESHOLD

# ------------------------------ defaults
default_threshold = DEFAULT_FILTER_THRESHOLD

# ------------------------------ autorized_keys
authorized_keys = ["-classifier", "-target", "-threshold", "-h", "-help"]

# ------------------------------ help messages
short_help = "--filter     source classes selected by confidence on the target data"

long_help = """\
--filter             print the source classes whose mean confidence over the samples
                     of at least one target class exceeds the threshold (json list)
    -classifier s    source classifier file, default {classifier}
    -target  s       labeled target data file, default {target}
    -threshold f     threshold, default {default_threshold}
    -h, -help        display the help message for this plugin
""".format(classifier=SOURCECLASSIFIERFILE, target=TARGETTRAINFILE, default_threshold=default_threshold)

# ------------------------------ example usage
example = """\
## FILTER
# keep the source classes with a mean confidence above 1%

PseudoTL --filter -threshold 0.01
"""


def filter(argv, verbose):

    if '-h' in argv.keys() or "-help" in argv.keys():
        print(long_help)
        return

    for k in argv.keys():
        if k in ['main', "_keyorder"]:
            continue  # private keys

        if k not in authorized_keys:
            raise Exception('option %s is not recognized' % k)

    C_s = load_classifier(argv['-classifier'][0] if "-classifier" in argv.keys() else SOURCECLASSIFIERFILE)
    D_t = load_dataset(argv['-target'][0] if "-target" in argv.keys() else TARGETTRAINFILE)
    threshold = float(argv['-threshold'][0]) if "-threshold" in argv.keys() else default_threshold
    classes = confidence_filter(C_s, D_t, threshold)
    if verbose:
        print("{} of {} source classes kept".format(len(classes), C_s.output_dim))
    print(json.dumps(classes))
