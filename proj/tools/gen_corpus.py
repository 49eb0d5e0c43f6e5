#!/usr/bin/env python3
"""Writes the benchmark corpus: five case studies, each with a variant that
must hold and one that must fail.

    python3 tools/gen_corpus.py [OUTDIR]      (default: corpus/)

Every case directory gets left.kr, right.kr, property.hp and manifest.json.
The models are small hand-designed reconstructions; nothing here is tuned to
make a particular solver fast.
"""

import json
import os
import sys


class Model:
    def __init__(self, ap):
        self.ap = list(ap)
        self.states = []
        self.labels = {}
        self.init = []
        self.trans = []

    def add(self, name, labels=(), init=False):
        assert name not in self.labels, name
        self.states.append(name)
        self.labels[name] = sorted(labels)
        if init:
            self.init.append(name)
        return name

    def edge(self, a, b):
        if (a, b) not in self.trans:
            self.trans.append((a, b))

    def text(self, comment):
        out = [f"# {line}" if line else "#" for line in comment.splitlines()]
        out.append("states: " + " ".join(self.states))
        out.append("init: " + " ".join(self.init))
        out.append("ap: " + " ".join(self.ap))
        for s in self.states:
            out.append(f"label {s}: " + " ".join(self.labels[s]))
        for a, b in self.trans:
            out.append(f"trans {a} -> {b}")
        return "\n".join(out) + "\n"

    def check(self):
        for s in self.states:
            assert any(a == s for a, _ in self.trans), f"{s} has no successor"
        for s in self.states:
            for p in self.labels[s]:
                assert p in self.ap, (s, p)


def write_case(root, name, left, right, prop, expected, left_doc, right_doc, **extra):
    left.check()
    right.check()
    d = os.path.join(root, name)
    os.makedirs(d, exist_ok=True)
    with open(os.path.join(d, "left.kr"), "w") as f:
        f.write(left.text(left_doc))
    with open(os.path.join(d, "right.kr"), "w") as f:
        f.write(right.text(right_doc))
    with open(os.path.join(d, "property.hp"), "w") as f:
        f.write(prop + "\n")
    manifest = {"left": "left.kr", "right": "right.kr", "property": "property.hp", "expected": expected}
    manifest.update(extra)
    with open(os.path.join(d, "manifest.json"), "w") as f:
        json.dump(manifest, f, indent=2)
        f.write("\n")


# --- alternating bit protocol -------------------------------------------------

ABP_AP = ["wait", "snd", "rcv", "ack", "ackok", "lost", "alost", "bit"]


def abp_scenarios():
    m = Model(ABP_AP)
    m.add("i", ["wait"], init=True)
    for b in (0, 1):
        bit = ["bit"] if b else []
        m.add(f"s{b}", ["snd"] + bit)
        m.add(f"r{b}", ["rcv"] + bit)
        m.add(f"a{b}", ["ack"] + bit)
        m.add(f"d{b}", ["ackok"] + bit)
    # packet 0 is lost once, or its acknowledgement is
    m.add("l0", ["lost"])
    m.add("al0", ["alost"])
    m.edge("i", "s0")
    for b in (0, 1):
        m.edge(f"s{b}", f"r{b}")
        m.edge(f"r{b}", f"a{b}")
        m.edge(f"a{b}", f"d{b}")
    m.edge("d0", "s1")
    m.edge("d1", "i")
    m.edge("s0", "l0")
    m.edge("l0", "s0")
    m.edge("a0", "al0")
    m.edge("al0", "s0")
    return m


def abp_protocol(handles_loss):
    m = Model(ABP_AP)
    m.add("idle", ["wait"], init=True)
    for b in (0, 1):
        bit = ["bit"] if b else []
        m.add(f"send{b}", ["snd"] + bit)
        m.add(f"recv{b}", ["rcv"] + bit)
        m.add(f"lost{b}", ["lost"])
        m.add(f"ack{b}", ["ack"] + bit)
        m.add(f"acklost{b}", ["alost"])
        m.add(f"done{b}", ["ackok"] + bit)
    m.add("timeout", ["wait"])
    m.edge("idle", "send0")
    for b in (0, 1):
        m.edge(f"send{b}", f"recv{b}")
        m.edge(f"send{b}", f"lost{b}")
        if handles_loss:
            m.edge(f"lost{b}", f"send{b}")
        else:
            m.edge(f"lost{b}", f"lost{b}")  # the sender never retransmits
        m.edge(f"recv{b}", f"ack{b}")
        m.edge(f"ack{b}", f"done{b}")
        m.edge(f"ack{b}", f"acklost{b}")
        m.edge(f"acklost{b}", "timeout")
        m.edge(f"acklost{b}", f"send{b}")
    m.edge("done0", "send1")
    m.edge("done1", "idle")
    m.edge("timeout", "idle")
    return m


# --- matrix multiplication, source vs register-transfer translation ----------

MM_AP = ["pre", "row", "mul", "mem", "next", "done", "post"]
MM_N = 3


def mm_source():
    # C level with padding steps where the translation touches memory
    m = Model(MM_AP)
    m.add("entry", ["pre"], init=True)
    prev = "entry"
    for i in range(MM_N):
        m.add(f"for_i{i}", ["row"])
        m.edge(prev, f"for_i{i}")
        prev = f"for_i{i}"
        for j in range(MM_N):
            m.add(f"c{i}{j}_mul", ["mul"])
            m.add(f"c{i}{j}_pad", ["mem"])
            m.edge(prev, f"c{i}{j}_mul")
            m.edge(f"c{i}{j}_mul", f"c{i}{j}_pad")
            prev = f"c{i}{j}_pad"
        m.add(f"inc_i{i}", ["next"])
        m.edge(prev, f"inc_i{i}")
        prev = f"inc_i{i}"
    m.add("exit", ["done"])
    m.add("ret", ["post"])
    m.edge(prev, "exit")
    m.edge("exit", "ret")
    m.edge("ret", "ret")
    return m


def mm_target(buggy):
    m = Model(MM_AP)
    m.add("L0", ["pre"], init=True)
    prev = "L0"
    pc = 1
    for i in range(MM_N):
        m.add(f"L{pc}", ["row"])
        m.edge(prev, f"L{pc}")
        prev = f"L{pc}"
        pc += 1
        for j in range(MM_N):
            # multiply-accumulate into a register, then store it
            steps = [["mul"], ["mem"]]
            if buggy and i == 1 and j == 2:
                steps = [["mem"], ["mul"]]  # store issued before the last multiply
            for lab in steps:
                m.add(f"L{pc}", lab)
                m.edge(prev, f"L{pc}")
                prev = f"L{pc}"
                pc += 1
        m.add(f"L{pc}", ["next"])
        m.edge(prev, f"L{pc}")
        prev = f"L{pc}"
        pc += 1
    m.add(f"L{pc}", ["done"])
    m.edge(prev, f"L{pc}")
    m.add(f"L{pc + 1}", ["post"])
    m.edge(f"L{pc}", f"L{pc + 1}")
    m.edge(f"L{pc + 1}", f"L{pc + 1}")
    return m


# --- common branch factorization ---------------------------------------------

CBF_AP = ["in", "o1", "o2", "done", "err"]


def cbf_source():
    # if (c) { x = e; A } else { x = e; B }, one copy per input value
    m = Model(CBF_AP)
    for b in (0, 1):
        m.add(f"start{b}", ["in"] if b else [], init=True)
        m.add(f"test{b}", [])
        m.add(f"x_then{b}", [])
        m.add(f"x_else{b}", [])
        m.add(f"A{b}", ["o1"])
        m.add(f"B{b}", ["o2"])
        m.add(f"join{b}", ["o1", "o2"])
        m.edge(f"start{b}", f"test{b}")
        m.edge(f"test{b}", f"x_then{b}")
        m.edge(f"test{b}", f"x_else{b}")
        m.edge(f"x_then{b}", f"A{b}")
        m.edge(f"x_else{b}", f"B{b}")
        m.edge(f"A{b}", f"join{b}")
        m.edge(f"B{b}", f"join{b}")
    m.add("fin", ["done"])
    for b in (0, 1):
        m.edge(f"join{b}", "fin")
    m.edge("fin", "fin")
    return m


def cbf_target(buggy):
    # x = e; if (c) A else B; the handler state is never exercised by the source
    m = Model(CBF_AP)
    m.add("start0", [], init=True)
    m.add("start1", ["in"], init=True)
    m.add("x", [])
    m.add("test", [])
    m.add("A", ["o1"])
    m.add("B", ["o1"] if buggy else ["o2"])  # buggy: the hoisted store clobbers B's output
    m.add("handler", ["err"])
    m.add("join", ["o1", "o2"])
    m.add("fin", ["done"])
    for s in ("start0", "start1"):
        m.edge(s, "x")
    m.edge("x", "test")
    m.edge("test", "A")
    m.edge("test", "B")
    m.edge("test", "handler")
    m.edge("A", "join")
    m.edge("B", "join")
    m.edge("handler", "fin")
    m.edge("join", "fin")
    m.edge("fin", "fin")
    return m


# --- robust path planning on a 3x3 grid --------------------------------------

GRID = 3
# clockwise walk around the border, starting bottom-left (x, y with y upward)
BORDER = [(0, 0), (0, 1), (0, 2), (1, 2), (2, 2), (2, 1), (2, 0), (1, 0)]
GUARDS = [2, 4, 6]  # the three corners other than the start
OBSTACLES = [(0, 2), (2, 0)]


def cell(x, y):
    return f"c{x}{y}"


def rp_agent():
    # moves right or up only; leaves the grid through the goal corner
    ap = [cell(x, y) for x in range(GRID) for y in range(GRID)] + ["home"]
    m = Model(ap)
    cells = [(x, y) for x in range(GRID) for y in range(GRID) if (x, y) not in OBSTACLES]
    for x, y in cells:
        m.add(cell(x, y), [cell(x, y)], init=(x, y) == (0, 0))
    m.add("home", ["home"])
    for x, y in cells:
        for nx, ny in ((x + 1, y), (x, y + 1)):
            if (nx, ny) in cells:
                m.edge(cell(x, y), cell(nx, ny))
    m.edge(cell(GRID - 1, GRID - 1), "home")
    m.edge("home", "home")
    return m


def rp_adversaries(start_phases):
    # the three guards rotate clockwise in formation, one border cell per
    # step; which phase they start in is unknown
    ap = [cell(x, y) for x in range(GRID) for y in range(GRID)]
    m = Model(ap)
    n = len(BORDER)
    for r in range(n):
        occupied = [cell(*BORDER[(g + r) % n]) for g in GUARDS]
        m.add(f"phase{r}", occupied, init=r in start_phases)
    for r in range(n):
        m.edge(f"phase{r}", f"phase{(r + 1) % n}")
    return m


def rp_predicate():
    cells = [cell(x, y) for x in range(GRID) for y in range(GRID)]
    return " & ".join(f"!(l.{c} & r.{c})" for c in cells)


# --- wolf, goat and cabbage ----------------------------------------------------

ITEMS = ["wolf", "goat", "cabbage"]
DEADLINE = 7  # crossings


def gcw_state_name(bits):
    return "s" + "".join("R" if b else "L" for b in bits)


def gcw_plan(wolf_fits_boat):
    # bits: farmer, wolf, goat, cabbage; True = right bank
    m = Model(["wg", "gc", "done"])
    states = []
    for v in range(16):
        bits = tuple(bool(v >> (3 - i) & 1) for i in range(4))
        states.append(bits)
    for bits in states:
        f, w, g, c = bits
        labels = []
        if w == g and f != w:
            labels.append("wg")
        if g == c and f != g:
            labels.append("gc")
        if all(bits):
            labels.append("done")
        m.add(gcw_state_name(bits), labels, init=not any(bits))
    for bits in states:
        name = gcw_state_name(bits)
        if all(bits):
            m.edge(name, name)  # crossing finished
            continue
        f = bits[0]
        nxt = [(not f,) + bits[1:]]
        for i in range(3):
            if bits[i + 1] == f and (wolf_fits_boat or ITEMS[i] != "wolf"):
                moved = list(bits)
                moved[0] = not f
                moved[i + 1] = not f
                nxt.append(tuple(moved))
        for t in nxt:
            m.edge(name, gcw_state_name(t))
    return m


def gcw_requirements():
    # any unattended pair may be checked at any time, and from the deadline
    # on the plan must have finished
    m = Model(["wg", "gc", "late"])
    m.add("watch_wg", ["wg"], init=True)
    m.add("watch_gc", ["gc"], init=True)
    for a in ("watch_wg", "watch_gc"):
        for b in ("watch_wg", "watch_gc"):
            m.edge(a, b)
    for t in range(DEADLINE):
        m.add(f"clock{t}", [], init=t == 0)
    m.add("late", ["late"])
    for t in range(DEADLINE - 1):
        m.edge(f"clock{t}", f"clock{t + 1}")
    m.edge(f"clock{DEADLINE - 1}", "late")
    m.edge("late", "late")
    return m


def main():
    root = sys.argv[1] if len(sys.argv) > 1 else os.path.join(os.path.dirname(__file__), "..", "corpus")
    root = os.path.normpath(root)

    conf = "forall exists. G match-all"
    write_case(root, "abp", abp_scenarios(), abp_protocol(True), conf, "holds",
               "ABP scenarios: normal exchange of both bits, loss of packet 0,\nloss of the first acknowledgement.",
               "Synthesized protocol with retransmission on loss.", mode="ae")
    write_case(root, "abp_bug", abp_scenarios(), abp_protocol(False), conf, "violated",
               "ABP scenarios (as in abp).", "Protocol that gets stuck after a lost packet.", mode="ae")

    write_case(root, "mm", mm_source(), mm_target(False), conf, "holds",
               "3x3 matrix multiplication, source level, padded to the\ntranslation's memory steps.",
               "Register-transfer translation.", mode="ae", max_depth=40)
    write_case(root, "mm_bug", mm_source(), mm_target(True), conf, "violated",
               "3x3 matrix multiplication, source level (as in mm).",
               "Translation that stores c[1][2] before its last multiply.", mode="ae", max_depth=40)

    sc = "forall exists. G ((l.in <-> r.in) & (l.o1 <-> r.o1) & (l.o2 <-> r.o2) & (l.done <-> r.done) & (l.err <-> r.err))"
    write_case(root, "cbf", cbf_source(), cbf_target(False), sc, "holds",
               "Source with the common assignment duplicated in both branches.\nThe input value is fixed by the initial state.",
               "Target with the assignment hoisted above the branch.", mode="ae")
    write_case(root, "cbf_bug", cbf_source(), cbf_target(True), sc, "violated",
               "Source (as in cbf).", "Target whose hoisted assignment clobbers the else-branch output.", mode="ae")

    rp = "exists forall. G (" + rp_predicate() + ")"
    write_case(root, "rp", rp_agent(), rp_adversaries([0, 1]), rp, "holds",
               "Agent on a 3x3 grid, start bottom-left, goal top-right,\nmoves right or up, leaves through the goal.",
               "Three guards rotating clockwise along the border; start phase 0 or 1.", mode="ea")
    write_case(root, "rp_nosol", rp_agent(), rp_adversaries([0, 2]), rp, "violated",
               "Agent (as in rp).", "Guards (as in rp); start phase 0 or 2.", mode="ea")

    ps = "exists forall. G (!(l.wg & r.wg) & !(l.gc & r.gc) & !(r.late & !l.done))"
    write_case(root, "gcw", gcw_plan(True), gcw_requirements(), ps, "holds",
               "Wolf, goat and cabbage: every bank configuration; the farmer crosses\nalone or with one item.",
               f"Requirements: no unattended wolf/goat or goat/cabbage, done after {DEADLINE} crossings.",
               mode="ea")
    write_case(root, "gcw_nosol", gcw_plan(False), gcw_requirements(), ps, "violated",
               "Wolf, goat and cabbage where the wolf does not fit in the boat.",
               "Requirements (as in gcw).", mode="ea")


if __name__ == "__main__":
    main()
