from __future__ import print_function

from pseudotrans.harness.studies import distribution_gaps
from pseudotrans.PseudoTL.files import GAPSFILE
from pseudotrans.PseudoTL.plugins.experiment import experiment_config

# ------------------------------ autorized_keys
authorized_keys = ["-config", "-out", "-seeds", "-h", "-help"]

# ------------------------------ help messages
short_help = "--gaps       frechet distances of the source, filtered and pseudo data to the target data"

long_help = """\
--gaps               compare FD(D_s, D_t), FD(filtered D_s, D_t) and FD(pseudo data, D_t)
                     file written : {table}
    -config  s       experiment configuration file (json), default : built-in settings
    -out     s       output directory, default results
    -seeds   i [i..] seeds, overrides the configuration
    -h, -help        display the help message for this plugin
""".format(table=GAPSFILE)

# ------------------------------ example usage
example = """\
## GAPS

PseudoTL --gaps -seeds 0 1 2
"""


def gaps(argv, verbose, mapkwargs):

    if '-h' in argv.keys() or "-help" in argv.keys():
        print(long_help)
        return

    for k in argv.keys():
        if k in ['main', "_keyorder"]:
            continue  # private keys

        if k not in authorized_keys:
            raise Exception('option %s is not recognized' % k)

    config = experiment_config(argv, mapkwargs, verbose)
    print("{:>6s} {:>14s} {:>14s} {:>14s}".format("seed", "source", "filtered", "pseudo"))
    for g in distribution_gaps(config):
        print("{seed:6d} {fd_source_target:14.4f} {fd_filtered_target:14.4f} {fd_pseudo_target:14.4f}".format(**g))
