from __future__ import print_function

from pseudotrans.synthetics.taskpair import load_dataset
from pseudotrans.diagnostics.metrics import frechet_distance
from pseudotrans.PseudoTL.files import PSEUDODATAFILE, TARGETTRAINFILE

# ------------------------------ autorized_keys
authorized_keys = ["-a", "-b", "-h", "-help"]

# ------------------------------ help messages
short_help = "--fid        frechet distance between two datasets"

long_help = """\
--fid                print the frechet distance between the gaussian fits of two data files
    -a       s       first data file, default {a}
    -b       s       second data file, default {b}
    -h, -help        display the help message for this plugin
""".format(a=PSEUDODATAFILE, b=TARGETTRAINFILE)

# ------------------------------ example usage
example = """\
## FID
# distance between the source data and the labeled target data

PseudoTL --fid -a _PseudoTL.source.json -b _PseudoTL.target_train.json
"""


def fid(argv, verbose):

    if '-h' in argv.keys() or "-help" in argv.keys():
        print(long_help)
        return

    for k in argv.keys():
        if k in ['main', "_keyorder"]:
            continue  # private keys

        if k not in authorized_keys:
            raise Exception('option %s is not recognized' % k)

    a = argv['-a'][0] if "-a" in argv.keys() else PSEUDODATAFILE
    b = argv['-b'][0] if "-b" in argv.keys() else TARGETTRAINFILE
    value = frechet_distance(load_dataset(a).features, load_dataset(b).features)
    if verbose:
        print("FD({}, {}) = {!r}".format(a, b, value))
    else:
        print(repr(value))
