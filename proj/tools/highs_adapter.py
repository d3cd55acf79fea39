#!/usr/bin/env python3
"""Solve an LP/MIP file with HiGHS and write the mnpp solution protocol.

Usage: highs_adapter.py MODEL.lp SOLUTION.txt SECONDS

Output: a "# status <word>" line, then one "name value" line per column.
Use as a solver template:
    python3 tools/highs_adapter.py {model} {solution} {seconds}
"""

import sys

import highspy


def main(argv):
    if len(argv) != 4:
        sys.stderr.write(__doc__)
        return 2
    model_path, solution_path, seconds = argv[1], argv[2], float(argv[3])

    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    h.setOptionValue("threads", 1)
    h.setOptionValue("time_limit", seconds)
    # revenue ties are resolved exactly by the caller; keep the search tight
    h.setOptionValue("mip_rel_gap", 1e-9)
    h.setOptionValue("mip_abs_gap", 1e-9)
    if h.readModel(model_path) != highspy.HighsStatus.kOk:
        sys.stderr.write("cannot read %s\n" % model_path)
        return 1
    h.run()

    status = h.getModelStatus()
    info = h.getInfo()
    has_point = info.primal_solution_status == 2  # kSolutionStatusFeasible
    ms = highspy.HighsModelStatus
    if status == ms.kOptimal:
        word = "optimal"
    elif status in (ms.kTimeLimit, ms.kInterrupt, ms.kIterationLimit, ms.kSolutionLimit):
        word = "time_limit"
    elif status in (ms.kInfeasible, ms.kUnboundedOrInfeasible):
        word = "infeasible"
    else:
        word = "error"

    with open(solution_path, "w") as out:
        out.write("# status %s\n" % word)
        if word in ("optimal", "time_limit") and has_point:
            names = h.getLp().col_names_
            values = h.getSolution().col_value
            for name, value in zip(names, values):
                out.write("%s %r\n" % (name, float(value)))
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
