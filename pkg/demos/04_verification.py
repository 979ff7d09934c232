# coding: utf-8

# # Checking the identities
#
# qbessel ships its own battery of identity checks: the q-difference equation,
# the ladder and recurrence relations, Wronskians, coefficient formulas,
# integral representations and classical limits. Each check returns a row
# with a residual and a tolerance.

from qbessel import run_suite, summarize

rows = run_suite("wronskian", q_values=[0.7])
print(rows[0])

# summarize() folds the rows into one line per identity.

for line in summarize(rows):
    print(line)

# A whole pass over one suite with the default q grid:

for line in summarize(run_suite("recurrence")):
    print("%-28s %4d checks  %d failed  worst %.2e" % (
        line["identity"], line["checks"], line["failed"], line["worst_rel"]))

# Not every identity holds. The coefficient suite compares two ways of
# normalizing the large-argument expansion; they only agree close to q=1.

for line in summarize(run_suite("coeffs", q_values=[0.5, 0.95])):
    print("%-28s failed %d/%d  worst %.2e" % (
        line["identity"], line["failed"], line["checks"], line["worst_rel"]))

# The same suites are available from the command line:
#
#     qbessel verify --suite all
