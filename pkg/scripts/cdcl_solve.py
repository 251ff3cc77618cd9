#!/usr/bin/env python3
"""Small self-contained CDCL SAT solver for desk-scale DIMACS files.

Two watched literals, first-UIP clause learning with recursive literal
minimization, activity-based branching with decay, geometric restarts,
phase saving and periodic learnt-clause deletion.  Prints the
conventional verdict line and uses exit codes 10/20 so it can serve as
the solver command of the benchmark harness:

    python3 scripts/cdcl_solve.py {input}
"""

import sys

UNASSIGNED = -1


def parse_dimacs(path):
    num_vars = 0
    clauses = []
    with open(path) as fh:
        pending = []
        for line in fh:
            line = line.strip()
            if not line or line[0] in "c%":
                continue
            if line[0] == "p":
                num_vars = int(line.split()[2])
                continue
            for tok in line.split():
                v = int(tok)
                if v == 0:
                    clauses.append(pending)
                    pending = []
                else:
                    pending.append(v)
    return num_vars, clauses


def lit_index(lit):
    return (lit << 1) if lit > 0 else ((-lit << 1) | 1)


class Solver:
    def __init__(self, num_vars, clauses):
        nv = num_vars
        self.nv = nv
        self.lit_val = [UNASSIGNED] * (2 * nv + 2)  # per literal index
        self.level = [0] * (nv + 1)
        self.reason = [None] * (nv + 1)
        self.activity = [0.0] * (nv + 1)
        self.phase = [False] * (nv + 1)
        self.trail = []
        self.trail_lim = []
        self.qhead = 0
        self.clauses = []          # problem clauses + learnts
        self.learnt_from = 0
        self.cl_activity = []
        self.watches = [[] for _ in range(2 * nv + 2)]
        self.ok = True
        self.var_inc = 1.0
        self.cla_inc = 1.0
        units = []
        for cl in clauses:
            lits = sorted(set(cl), key=abs)
            if any(-l in lits for l in lits):
                continue
            if not lits:
                self.ok = False
                return
            if len(lits) == 1:
                units.append(lits[0])
                continue
            self.add_clause(lits)
        self.learnt_from = len(self.clauses)
        for lit in units:
            v = self.lit_val[lit_index(lit)]
            if v == 0:
                self.ok = False
                return
            if v == UNASSIGNED:
                self.enqueue(lit, None)

    def add_clause(self, lits):
        idx = len(self.clauses)
        self.clauses.append(lits)
        self.cl_activity.append(0.0)
        self.watches[lit_index(lits[0])].append(idx)
        self.watches[lit_index(lits[1])].append(idx)
        return idx

    def enqueue(self, lit, reason):
        var = abs(lit)
        self.lit_val[lit_index(lit)] = 1
        self.lit_val[lit_index(-lit)] = 0
        self.level[var] = len(self.trail_lim)
        self.reason[var] = reason
        self.trail.append(lit)

    def propagate(self):
        lit_val = self.lit_val
        watches = self.watches
        clauses = self.clauses
        trail = self.trail
        while self.qhead < len(trail):
            lit = trail[self.qhead]
            self.qhead += 1
            falsified = -lit
            watchlist = watches[lit_index(falsified)]
            i = 0
            while i < len(watchlist):
                ci = watchlist[i]
                cl = clauses[ci]
                if cl[0] == falsified:
                    cl[0], cl[1] = cl[1], cl[0]
                first = cl[0]
                if lit_val[lit_index(first)] == 1:
                    i += 1
                    continue
                moved = False
                for j in range(2, len(cl)):
                    if lit_val[lit_index(cl[j])] != 0:
                        cl[1], cl[j] = cl[j], cl[1]
                        watches[lit_index(cl[1])].append(ci)
                        watchlist[i] = watchlist[-1]
                        watchlist.pop()
                        moved = True
                        break
                if moved:
                    continue
                if lit_val[lit_index(first)] == 0:
                    self.qhead = len(trail)
                    return ci
                self.enqueue(first, ci)
                i += 1
        return None

    def bump_var(self, var):
        self.activity[var] += self.var_inc
        if self.activity[var] > 1e100:
            for v in range(1, self.nv + 1):
                self.activity[v] *= 1e-100
            self.var_inc *= 1e-100

    def bump_clause(self, ci):
        if ci >= self.learnt_from:
            self.cl_activity[ci] += self.cla_inc
            if self.cl_activity[ci] > 1e20:
                for j in range(self.learnt_from, len(self.cl_activity)):
                    self.cl_activity[j] *= 1e-20
                self.cla_inc *= 1e-20

    def _redundant(self, lit, seen):
        """Literal removable from the learnt clause (simple recursion)."""
        stack = [lit]
        visited = set()
        while stack:
            l = stack.pop()
            reason = self.reason[abs(l)]
            if reason is None:
                return False
            for q in self.clauses[reason]:
                var = abs(q)
                if var == abs(l) or self.level[var] == 0 or seen[var]:
                    continue
                if var in visited:
                    continue
                visited.add(var)
                stack.append(q)
                if len(visited) > 30:
                    return False
        return True

    def analyze(self, confl):
        learnt = []
        seen = [False] * (self.nv + 1)
        counter = 0
        lit = None
        idx = len(self.trail) - 1
        cur_level = len(self.trail_lim)
        reason = self.clauses[confl]
        self.bump_clause(confl)
        while True:
            for q in reason:
                if lit is not None and abs(q) == abs(lit):
                    continue  # the literal this reason implied
                var = abs(q)
                if not seen[var] and self.level[var] > 0:
                    seen[var] = True
                    self.bump_var(var)
                    if self.level[var] >= cur_level:
                        counter += 1
                    else:
                        learnt.append(q)
            while not seen[abs(self.trail[idx])]:
                idx -= 1
            lit = -self.trail[idx]
            var = abs(lit)
            seen[var] = False
            counter -= 1
            idx -= 1
            if counter == 0:
                break
            ci = self.reason[var]
            reason = self.clauses[ci]
            self.bump_clause(ci)
        kept = [q for q in learnt if not self._redundant(q, seen)]
        kept.insert(0, lit)
        if len(kept) == 1:
            return kept, 0
        back = max(self.level[abs(q)] for q in kept[1:])
        for j in range(1, len(kept)):
            if self.level[abs(kept[j])] == back:
                kept[1], kept[j] = kept[j], kept[1]
                break
        return kept, back

    def backtrack(self, level):
        while self.trail_lim and len(self.trail_lim) > level:
            limit = self.trail_lim.pop()
            while len(self.trail) > limit:
                lit = self.trail.pop()
                var = abs(lit)
                self.phase[var] = lit > 0
                self.lit_val[lit_index(lit)] = UNASSIGNED
                self.lit_val[lit_index(-lit)] = UNASSIGNED
                self.reason[var] = None
        self.qhead = len(self.trail)

    def reduce_db(self):
        """Drop the lazier half of the learnt clauses."""
        learnts = [(self.cl_activity[ci], ci)
                   for ci in range(self.learnt_from, len(self.clauses))
                   if not self._locked(ci) and len(self.clauses[ci]) > 2]
        learnts.sort()
        drop = {ci for _, ci in learnts[: len(learnts) // 2]}
        if not drop:
            return
        keep_map = {}
        new_clauses = self.clauses[: self.learnt_from]
        new_activity = self.cl_activity[: self.learnt_from]
        for ci in range(self.learnt_from, len(self.clauses)):
            if ci in drop:
                continue
            keep_map[ci] = len(new_clauses)
            new_clauses.append(self.clauses[ci])
            new_activity.append(self.cl_activity[ci])
        for idx in range(self.learnt_from):
            keep_map[idx] = idx
        self.clauses = new_clauses
        self.cl_activity = new_activity
        for wl in self.watches:
            wl[:] = [keep_map[ci] for ci in wl if ci in keep_map]
        for var in range(1, self.nv + 1):
            r = self.reason[var]
            if r is not None:
                self.reason[var] = keep_map[r]

    def _locked(self, ci):
        cl = self.clauses[ci]
        return (self.lit_val[lit_index(cl[0])] == 1
                and self.reason[abs(cl[0])] == ci)

    def pick(self):
        best, best_a = 0, -1.0
        lit_val = self.lit_val
        activity = self.activity
        for v in range(1, self.nv + 1):
            if lit_val[v << 1] == UNASSIGNED and activity[v] > best_a:
                best, best_a = v, activity[v]
        if best == 0:
            return 0
        return best if self.phase[best] else -best

    def solve(self):
        if not self.ok:
            return False
        if self.propagate() is not None:
            return False
        conflicts_since_restart = 0
        restart_limit = 100
        conflicts_since_reduce = 0
        reduce_limit = 2000
        while True:
            confl = self.propagate()
            if confl is not None:
                conflicts_since_restart += 1
                conflicts_since_reduce += 1
                if not self.trail_lim:
                    return False
                learnt, back = self.analyze(confl)
                self.backtrack(back)
                if len(learnt) == 1:
                    val = self.lit_val[lit_index(learnt[0])]
                    if val == 0:
                        return False
                    if val == UNASSIGNED:
                        self.enqueue(learnt[0], None)
                else:
                    ci = self.add_clause(learnt)
                    self.cl_activity[ci] = self.cla_inc
                    self.enqueue(learnt[0], ci)
                self.var_inc *= 1.05
                self.cla_inc *= 1.001
                continue
            if conflicts_since_restart >= restart_limit:
                conflicts_since_restart = 0
                restart_limit = int(restart_limit * 1.4)
                self.backtrack(0)
                continue
            if conflicts_since_reduce >= reduce_limit:
                conflicts_since_reduce = 0
                reduce_limit = int(reduce_limit * 1.3)
                self.backtrack(0)
                self.reduce_db()
                continue
            lit = self.pick()
            if lit == 0:
                return True
            self.trail_lim.append(len(self.trail))
            self.enqueue(lit, None)


def main():
    if len(sys.argv) != 2:
        print("usage: cdcl_solve.py <cnf>", file=sys.stderr)
        return 2
    num_vars, clauses = parse_dimacs(sys.argv[1])
    result = Solver(num_vars, clauses).solve()
    if result:
        print("s SATISFIABLE")
        return 10
    print("s UNSATISFIABLE")
    return 20


if __name__ == "__main__":
    sys.exit(main())
