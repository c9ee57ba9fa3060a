"""The command-line interface and its deterministic JSON reports.

Every subcommand writes a single JSON document with keys in a fixed order and
floats rendered via %.17g, so repeated runs are byte-identical.  Exit codes:
0 success, 1 usage/input error, 2 solver or domain failure, 3 the comparison
found a counterexample.
"""

import io
from contextlib import redirect_stdout

from psiest.cli import main

INVOCATIONS = [
    ["estimate", "--family", "laplace_scale", "--param", "mu=0",
     "--data", "[1,-2,3]"],
    ["estimate", "--psi", "x - t", "--theta=-inf,inf", "--data", "[1,2,3]"],
    ["compare", "--family", "expectile", "--param", "alpha=0.7",
     "--family-phi", "expectile", "--param-phi", "alpha=0.3",
     "--data", "[0,1,2,5]", "--condition", "direct"],
    ["mobius-test", "--f", "t", "--g", "(2*t+1)/(t+3)", "--theta", "0,10"],
    ["bounds", "--alpha", "2", "--data", "[0.3,0.6]"],
]

for argv in INVOCATIONS:
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(argv)
    print(f"$ psiest {' '.join(argv)}")
    print(f"(exit {code})")
    print(buf.getvalue())
