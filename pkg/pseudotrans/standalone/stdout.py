from __future__ import print_function
import sys
import time


# --------------------------------------
class waitbar(object):
    """single line progress bar, refreshed in place
    with waitbar("pp") as wb:
        for i in range(n):
            wb.refresh((i + 1.) / n)
    """
    def __str__(self):
        s = "%s %s %6.2f%% %s" % (self.title, self.bars(), 100. * self.purcent, self.remain)
        return s

    def bars(self):
        nbars = int(round(self.purcent * self.width))
        nspaces = self.width - nbars
        return "%s" % ("|" * nbars) + "%s" % (" " * nspaces)

    # ____________________________________
    def __init__(self, title="", width=40, reevaluatespeed=5.0, stream=None):
        self.title = title
        self.width = width
        self.purcent = 0.
        self.lastpurcent = 0.
        self.start = time.time()
        self.time = self.start
        self.lasttime = self.start
        self.speed = 0.
        self.remain = "unkn"
        self.stream = sys.stdout if stream is None else stream
        self.string = self.__str__()
        self.reevaluatespeed = reevaluatespeed

        self.stream.write("%s" % self.string)
        self.stream.flush()

    def __enter__(self):
        return self

    def __exit__(self, *args):
        self.close()

    # ____________________________________
    def refresh(self, purcent):
        purcent = min(max(purcent, 0.), 1.)

        self.purcent, self.time = purcent, time.time()
        if self.reevaluatespeed and self.time - self.lasttime > self.reevaluatespeed:
            # reevaluate speed every X seconds
            self.speed = (self.purcent - self.lastpurcent) / (self.time - self.lasttime)
            self.lastpurcent, self.lasttime = self.purcent, self.time
        elif self.start == self.lasttime and self.time > self.lasttime:
            self.speed = (self.purcent - self.lastpurcent) / (self.time - self.lasttime)

        if self.speed:
            tremain = ((1. - self.purcent) / self.speed)
            h = int(tremain / 3600.)
            m = int(tremain % 3600. / 60.)
            s = int(tremain % 60.)
            self.remain = "%2ds" % s
            if m or h:
                self.remain = "%2dmn%s" % (m, self.remain)
            if h:
                self.remain = "%2dh%s" % (h, self.remain)
        else:
            self.remain = "unkn"

        self.remain = " %s" % self.remain
        self.remain = self.remain + " " * (25 - len(self.remain))
        self.stream.write("\b" * len(self.string))

        self.string = self.__str__()
        self.stream.write("%s" % self.string)
        self.stream.flush()

    # ____________________________________
    def close(self):
        self.refresh(1.0)
        self.stream.write("\n")
        self.stream.flush()


# --------------------------------------
class nowaitbar(object):
    """drop-in replacement used when verbose is off"""

    def __init__(self, *args, **kwargs):
        pass

    def __enter__(self):
        return self

    def __exit__(self, *args):
        pass

    def refresh(self, purcent):
        pass

    def close(self):
        pass


def progress(title, verbose):
    return waitbar(title) if verbose else nowaitbar()
