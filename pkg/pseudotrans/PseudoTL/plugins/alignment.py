from __future__ import print_function

from pseudotrans.harness.studies import alignment_study
from pseudotrans.PseudoTL.files import ALIGNMENTFILE, ALIGNMENTSUMMARYFILE
from pseudotrans.PseudoTL.plugins.experiment import experiment_config
from pseudotrans.defaults import DEFAULT_ALIGNMENT_LADDER

# ------------------------------ defaults
default_ladder = DEFAULT_ALIGNMENT_LADDER

# ------------------------------ autorized_keys
authorized_keys = ["-config", "-out", "-seeds", "-ladder", "-h", "-help"]

# ------------------------------ help messages
short_help = "--alignment  correlate the pseudo/target distance with the gain of pssl over scratch"

long_help = """\
--alignment          rebuild the task for each alignment noise level, run scratch and pssl,
                     report the spearman and pearson correlations between
                     FD(pseudo data, target data) and the accuracy gain
                     files written : {table}, {summary}
    -config  s       experiment configuration file (json), default : built-in settings
    -out     s       output directory, default results
    -seeds   i [i..] seeds, overrides the configuration
    -ladder  f [f..] alignment noise levels (at least 4), default {default_ladder}
    -h, -help        display the help message for this plugin
""".format(table=ALIGNMENTFILE, summary=ALIGNMENTSUMMARYFILE, default_ladder=default_ladder)

# ------------------------------ example usage
example = """\
## ALIGNMENT
# 5 levels of misalignment, 3 seeds each

PseudoTL -w 4 --alignment -ladder 0 0.25 0.5 1 2 -seeds 0 1 2 -out alignment
"""


def alignment(argv, verbose, mapkwargs):

    if '-h' in argv.keys() or "-help" in argv.keys():
        print(long_help)
        return

    for k in argv.keys():
        if k in ['main', "_keyorder"]:
            continue  # private keys

        if k not in authorized_keys:
            raise Exception('option %s is not recognized' % k)

    config = experiment_config(argv, mapkwargs, verbose)
    ladder = [float(s) for s in argv['-ladder']] if "-ladder" in argv.keys() else default_ladder
    print(alignment_study(config, ladder=ladder))
