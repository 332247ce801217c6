import os

# artifacts written by the plugins, relative to the working directory
# unless an explicit name is provided on the command line
TASKKEY = "_PseudoTL"
SOURCEDATAFILE = TASKKEY + ".source.json"
TARGETTRAINFILE = TASKKEY + ".target_train.json"
TARGETTESTFILE = TASKKEY + ".target_test.json"
TASKSPECFILE = TASKKEY + ".task.json"
SOURCECLASSIFIERFILE = TASKKEY + ".classifier.json"
GENERATORFILE = TASKKEY + ".generator.json"
PSEUDOLABELFILE = TASKKEY + ".pseudolabels.json"
PSEUDODATAFILE = TASKKEY + ".pseudo.json"
PRETRAINEDFILE = TASKKEY + ".pp.{strategy}.seed{seed:d}.json"
PSSLFILE = TASKKEY + ".pssl.{method}.seed{seed:d}.json"
DISTILLFILE = TASKKEY + ".kd.{method}.seed{seed:d}.json"

# experiment outputs, inside the output directory
RESULTSFILE = os.path.join("{outdir}", "results.csv")
SUMMARYFILE = os.path.join("{outdir}", "summary.json")
CONFIGCOPYFILE = os.path.join("{outdir}", "config.json")
ERRORSFILE = os.path.join("{outdir}", "errors.log")
ALIGNMENTFILE = os.path.join("{outdir}", "alignment.csv")
ALIGNMENTSUMMARYFILE = os.path.join("{outdir}", "alignment.json")
ALIGNMENTRUNGDIR = os.path.join("{outdir}", "sigma_{sigma:.4f}")
SWEEPFILE = os.path.join("{outdir}", "sweep_{parameter}.csv")
SWEEPVALUEDIR = os.path.join("{outdir}", "sweep_{parameter}", "{value}")
GAPSFILE = os.path.join("{outdir}", "gaps.csv")
