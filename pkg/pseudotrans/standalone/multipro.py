from __future__ import print_function
import multiprocessing as mp
import sys
import time
import traceback

"""
compact job mapper derived from multipro8
    - a feeder process puts jobs from a generator into the input queue
    - N workers get jobs, call the target and put answers in the output queue
    - MapSync re-orders the answers so that they come out in the job order

the fork start method is required : targets may be closures and jobs are
never pickled on their way to the feeder

    def gen():
        for n in range(10):
            yield Job(n, twotimesn=2 * n)

    def fun(n, twotimesn):
        return n + twotimesn

    with MapSync(fun, gen(), Nworkers=4) as ma:
        for jobid, answer, gentime, jobtime in ma:
            print(jobid, answer)
"""


# ---------------- errors and signals
class GeneratorError(Exception):
    """denote an error that occured inside the job generator"""
    pass


class WorkerError(Exception):
    """denote an error that occured inside a worker workspace"""

    def __init__(self, jobid, message):
        self.jobid = jobid
        self.message = message
        Exception.__init__(self, message)

    def __reduce__(self):
        return (WorkerError, (self.jobid, self.message))


class PoisonPill(object):
    """used a a killing signal for communication between processes"""

    def __str__(self):
        return "PoisonPill"


def errormsg(head):
    type, value, trace = sys.exc_info()
    return head + "    " + "    ".join(traceback.format_exception(type, value, trace, limit=5))


# ###################################
class Job(object):
    """ an object to store job arguments and keywordarguments
    use it to pack jobs out of the job-generator
    """
    args, kwargs = (), {}

    def __init__(self, *args, **kwargs):
        self.args = args
        self.kwargs = kwargs


# ----------------
def feed(q, g, nworkers):
    """the target of the feeder process, puts (jobid, job, gentime) packets into q"""
    jobid = 0
    while True:
        try:
            start = time.time()
            job = next(g)
            gentime = (start, time.time())
        except StopIteration:
            break
        except Exception:
            q.put(GeneratorError(errormsg("JobGenerator could not generate job %d\n" % jobid)))
            break

        q.put((jobid, job, gentime))
        jobid += 1

    for _ in range(nworkers):
        q.put(PoisonPill())


# ################################### WORKERS
class Worker(mp.get_context('fork').Process):
    def __init__(self, target, inputqueue, outputqueue):
        super(Worker, self).__init__()
        self.target = target
        self.inputqueue = inputqueue
        self.outputqueue = outputqueue

    def run(self):
        """gets jobs from the inputqueue and runs it until
           it gets the ending signal
        """
        while True:
            packet = self.inputqueue.get()
            if isinstance(packet, PoisonPill):
                self.outputqueue.put(packet)
                return
            elif isinstance(packet, GeneratorError):
                self.outputqueue.put(packet)
                return

            jobid, job, gentime = packet
            assert isinstance(job, Job)
            try:
                start = time.time()
                answer = self.target(*job.args, **job.kwargs)
                jobtime = (start, time.time())
            except Exception:
                message = errormsg("Worker %s failed during job %d\n" % (self.name, jobid))
                self.outputqueue.put(WorkerError(jobid, message))
                continue  # ignore the error and continue getting tasks

            self.outputqueue.put((jobid, answer, gentime, jobtime))


# ###################################
class MapSync(object):
    """
    map funobj over the jobs yielded by generator, in parallel,
    answers are returned in the order of the jobs
    if RaiseIfError is False, a failed job comes out as (jobid, WorkerError, None, None)
    """

    def __init__(self, funobj, generator, Nworkers=None, RaiseIfError=True):
        if Nworkers is None:
            Nworkers = mp.cpu_count()
        assert Nworkers >= 1
        ctx = mp.get_context('fork')
        self.Nworkers = Nworkers
        self.raiseiferror = RaiseIfError
        self.In = ctx.Queue(maxsize=4 * Nworkers)
        self.Out = ctx.Queue()
        self.feeder = ctx.Process(target=feed, args=(self.In, iter(generator), Nworkers))
        self.workers = [Worker(funobj, self.In, self.Out) for _ in range(Nworkers)]
        for i, w in enumerate(self.workers):
            w.name = "Worker-%04d" % (i + 1)
        self.Nactive = Nworkers

    def __enter__(self):
        self.feeder.start()
        for w in self.workers:
            w.start()
        return self

    def __exit__(self, type, value, trace):
        if type is None and self.Nactive == 0:
            self.feeder.join()
            for w in self.workers:
                w.join()
        else:
            # either an error has occured or the user leaves too soon
            self.feeder.terminate()
            for w in self.workers:
                w.terminate()

    def _unordered(self):
        while self.Nactive:
            packet = self.Out.get()
            if isinstance(packet, PoisonPill):
                self.Nactive -= 1
                continue
            elif isinstance(packet, GeneratorError):
                self.Nactive -= 1
                raise packet
            elif isinstance(packet, WorkerError):
                if self.raiseiferror:
                    raise packet
                yield (packet.jobid, packet, None, None)
            else:
                yield packet

    def __iter__(self):
        # jobs that come up too soon are kept in a waiting queue to preserve the input order
        waitqueue = {}
        currentjob = 0
        for packet in self._unordered():
            waitqueue[packet[0]] = packet
            while currentjob in waitqueue:
                yield waitqueue.pop(currentjob)
                currentjob += 1

        for jobid in sorted(waitqueue.keys()):
            # may happen if the generator failed
            yield waitqueue.pop(jobid)


class FakeMapSync(object):
    """
    use it istead of MapSync to switch parallel computing off
    jobs are processed in the main workspace, in order
    """

    def __init__(self, funobj, generator, Nworkers=1, RaiseIfError=True):
        self.funobj = funobj
        self.generator = generator
        self.raiseiferror = RaiseIfError

    def __enter__(self):
        return self

    def __exit__(self, type, value, trace):
        pass

    def __iter__(self):
        for jobid, job in enumerate(self.generator):
            gentime = (time.time(), time.time())
            try:
                start = time.time()
                answer = self.funobj(*job.args, **job.kwargs)
                jobtime = (start, time.time())
            except Exception:
                if self.raiseiferror:
                    raise
                yield jobid, WorkerError(jobid, errormsg("job %d failed\n" % jobid)), None, None
                continue
            yield jobid, answer, gentime, jobtime


def mapper(Nworkers):
    """choose the serial or parallel mapper"""
    if Nworkers is None or Nworkers > 1:
        return MapSync
    return FakeMapSync

