#!/usr/bin/env python3
"""Deliberately broken solver used to test backend error handling.

    bad_solver.py MODE FILE.cnf
"""

import sys

mode = sys.argv[1]
if mode == "crash":
    sys.exit(3)
if mode == "garbage":
    print("hello")
    sys.exit(0)
if mode == "wrong-model":
    # claims SAT with everything false, whatever the clauses say
    print("s SATISFIABLE")
    print("v 0")
    sys.exit(10)
if mode == "wrong-exit":
    print("s UNSATISFIABLE")
    sys.exit(10)
sys.exit(1)
