"""The command-line tool end to end, driven from Python for portability.

Equivalent shell commands are printed before each step.
"""

import json
import tempfile
from contextlib import redirect_stdout
from io import StringIO
from pathlib import Path

from fixpoint.cli import main


def run(*argv):
    print("$ fixpoint " + " ".join(argv))
    buf = StringIO()
    with redirect_stdout(buf):
        code = main(list(argv))
    print(buf.getvalue().rstrip(), f"\n(exit {code})\n")
    return buf.getvalue()


tmp = Path(tempfile.mkdtemp())
system = tmp / "sys.json"
system.write_text(run("gen", "--n", "6", "--degree-model", "cycle", "--seed", "5"))
run("classify", str(system), "--format", "text")
run("solve", str(system), "--format", "text")
run("simulate", str(system), "--sync", "4", "--start", "101010", "--format", "text")

cnf = tmp / "h.cnf"
cnf.write_text("p cnf 2 2\n1 2 0\n-1 -2 0\n")
star = tmp / "star.json"
run("reduce", "--kind", "star", str(cnf), "--output", str(star))
print("star metadata:", json.loads(star.read_text())["metadata"], "\n")
run("verify", str(star), "--cnf", str(cnf), "--format", "text")
