from __future__ import print_function


class bcolors:
    FAIL = '\033[91m'
    ENDC = '\033[0m'


def printred(*args):
    print(" ".join("%s%s%s" % (bcolors.FAIL, l, bcolors.ENDC) for l in args))
